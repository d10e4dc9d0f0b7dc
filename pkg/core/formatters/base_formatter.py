"""
Base formatter class implementing Strategy pattern.
All text-mode report formatters inherit from this base class and receive the
report's JSON dictionary, so text and JSON output never disagree.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, Iterable, Optional

from core.constants import TextLayout
from core.models import SigmaInstance, runs_of


def format_k_values(values: Iterable[int]) -> str:
    """
    Spectrum notation: {2} ∪ {4,5} ∪ [7,13], or ∅.

    Runs of one or two values are listed, longer runs become intervals.
    """
    chunks = []
    for lo, hi in runs_of(sorted(values)):
        if lo == hi:
            chunks.append(f"{{{lo}}}")
        elif hi == lo + 1:
            chunks.append(f"{{{lo},{hi}}}")
        else:
            chunks.append(f"[{lo},{hi}]")
    return TextLayout.UNION.join(chunks) if chunks else TextLayout.EMPTY_SET


def instance_label(instance: Dict[str, Any]) -> str:
    """H(n,r,q|sigma) from an instance dictionary."""
    return SigmaInstance.from_dict(instance).label()


def bounds_label(bounds: Dict[str, int]) -> str:
    return f"({bounds['alpha']},{bounds['beta']})"


class ReportFormatter(ABC):
    """
    Base formatter for the report types.
    Implements Strategy pattern for consistent formatting.
    """

    def __init__(self):
        self.header_sep = TextLayout.HEADER_SEPARATOR
        self.section_sep = TextLayout.SECTION_SEPARATOR

    @abstractmethod
    def format(self, data: Dict[str, Any]) -> str:
        """
        Format a report dictionary for a terminal.

        Args:
            data: Report as produced by its to_dict()

        Returns:
            Formatted text
        """

    def add_header(self, title: str) -> str:
        return f"{self.header_sep}\n{title}\n{self.header_sep}\n"

    def add_section(self, title: str) -> str:
        return f"\n{title.upper()}\n{self.section_sep}\n"

    def add_footer(self, message: str = "") -> str:
        footer = f"{self.header_sep}\n"
        if message:
            footer = f"\n{message}\n" + footer
        return footer

    def format_key_value_pairs(self, data: Dict[str, Any], indent: str = "  ") -> str:
        """
        Format dictionary as aligned key-value pairs.

        Args:
            data: Dictionary to format
            indent: Indentation string

        Returns:
            Formatted key-value string
        """
        if not data:
            return ""
        width = max(len(key) for key in data)
        return "\n".join(f"{indent}{key.replace('_', ' '):<{width}}  {value}" for key, value in data.items()) + "\n"

    def format_colouring(self, colouring: Optional[Dict[str, Any]]) -> str:
        """One line per class: colours in slot order."""
        if not colouring:
            return "  (none)\n"
        return "".join(
            f"  class {i:>3}: {' '.join(str(c) for c in row)}\n"
            for i, row in enumerate(colouring['classes'])
        )

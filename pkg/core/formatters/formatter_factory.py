"""
Formatter Factory implementing Factory pattern.
Picks the text formatter for each report type.
"""

from typing import Any, Dict

from core.logger import get_logger
from .base_formatter import ReportFormatter
from .colouring_formatter import CheckFormatter, ConstructionFormatter, WalkFormatter
from .spectrum_formatter import SpectrumFormatter
from .verification_formatter import SweepFormatter, VerificationFormatter

logger = get_logger(__name__)


class DefaultFormatter(ReportFormatter):
    """Key-value rendering for anything without a dedicated formatter"""

    def format(self, data: Dict[str, Any]) -> str:
        text = self.add_header("Report")
        text += self.format_key_value_pairs({k: v for k, v in data.items() if k != 'schema'})
        return text + self.add_footer()


class FormatterFactory:
    """
    Factory class for creating appropriate formatters.
    Implements Factory pattern for report formatting.
    """

    def __init__(self):
        self.formatters: Dict[str, ReportFormatter] = {
            'spectrum': SpectrumFormatter(),
            'verification': VerificationFormatter(),
            'sweep': SweepFormatter(),
            'check': CheckFormatter(),
            'construction': ConstructionFormatter(),
            'walk': WalkFormatter(),
            'default': DefaultFormatter(),
        }
        logger.debug(f"Formatter factory initialized with {len(self.formatters)} formatters")

    def get_formatter(self, report_type: str) -> ReportFormatter:
        """
        Get the formatter for a report type.

        Args:
            report_type: One of the registered names

        Returns:
            Formatter instance; the default one for unknown types
        """
        formatter = self.formatters.get(report_type.lower())
        if formatter is None:
            logger.debug(f"Using default formatter for {report_type}")
            return self.formatters['default']
        return formatter

    def format_data(self, data: Dict[str, Any], report_type: str) -> str:
        """
        Format data using appropriate formatter.

        Falls back to the default formatter when the dedicated one fails on
        unexpected input.
        """
        try:
            return self.get_formatter(report_type).format(data)
        except (KeyError, TypeError, ValueError) as e:
            logger.error(f"Formatting failed for {report_type}: {e}")
            return self.formatters['default'].format(data)


# Singleton instance
_formatter_factory = None


def get_formatter_factory() -> FormatterFactory:
    """Get or create formatter factory instance"""
    global _formatter_factory
    if _formatter_factory is None:
        _formatter_factory = FormatterFactory()
    return _formatter_factory

"""
Text formatters for sigma-spectra reports.
Implements Strategy pattern for consistent formatting.
"""

from .base_formatter import ReportFormatter, format_k_values
from .colouring_formatter import CheckFormatter, ConstructionFormatter, WalkFormatter
from .formatter_factory import FormatterFactory, get_formatter_factory
from .spectrum_formatter import SpectrumFormatter
from .verification_formatter import SweepFormatter, VerificationFormatter

__all__ = [
    'ReportFormatter',
    'format_k_values',
    'SpectrumFormatter',
    'VerificationFormatter',
    'SweepFormatter',
    'CheckFormatter',
    'ConstructionFormatter',
    'WalkFormatter',
    'FormatterFactory',
    'get_formatter_factory',
]

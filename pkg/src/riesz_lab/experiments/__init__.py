from .disk import DiskReport, disk_run, golden_threshold
from .pigeonhole import (
    PigeonholeResult,
    random_pigeonhole_instance,
    sector_of,
    sector_pigeonhole_select,
    sector_sum_lowerbound,
)
from .theorem2 import Theorem2Report, theorem2_run, theorem2_trend
from .translation import ScanReport, TranslationReport, translate_coefficients, translation_diagnostic, weighted_scan

__all__ = [
    "DiskReport",
    "disk_run",
    "golden_threshold",
    "PigeonholeResult",
    "random_pigeonhole_instance",
    "sector_of",
    "sector_pigeonhole_select",
    "sector_sum_lowerbound",
    "Theorem2Report",
    "theorem2_run",
    "theorem2_trend",
    "ScanReport",
    "TranslationReport",
    "translate_coefficients",
    "translation_diagnostic",
    "weighted_scan",
]

"""
Minorations Module - 根判别式下界表
Lower-bound tables turning discriminant bounds into degree bounds
"""

from .table import (
    BEYOND_TABLE,
    TOTALLY_IMAGINARY,
    MinorationTable,
    as_frame,
    dump_table,
    format_decimal,
    load_table,
    load_table_file,
    lower_bound,
    max_admissible_degree,
)
from .pins import REFERENCE_PINS, PinResult, ReferencePin, format_report, pin_report, report_frame

__all__ = [
    "BEYOND_TABLE",
    "TOTALLY_IMAGINARY",
    "MinorationTable",
    "as_frame",
    "dump_table",
    "format_decimal",
    "load_table",
    "load_table_file",
    "lower_bound",
    "max_admissible_degree",
    "REFERENCE_PINS",
    "PinResult",
    "ReferencePin",
    "format_report",
    "pin_report",
    "report_frame",
]

"""
Minoration Table - 根判别式下界表
Unconditional lower bounds on root discriminants, indexed by degree
"""

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import BinaryIO, Dict, List, Optional, Tuple, Union
import logging
import re

import pandas as pd

from core.bounds import ExactBound, Ordering, compare
from core.errors import TableFormatError

logger = logging.getLogger(__name__)

BEYOND_TABLE = "beyond table"
TOTALLY_IMAGINARY = "totally imaginary"
REQUIRED_METADATA = ("source", "field-class")

_DECIMAL = re.compile(r"^\d+(?:\.\d+)?$")
_METADATA = re.compile(r"^#\s*(?P<key>[A-Za-z][\w-]*)\s*:\s*(?P<value>.*?)\s*$")

DegreeBound = Union[int, str]


@dataclass(frozen=True)
class MinorationTable:
    """
    Rows (degree, lower bound): every field of the class with degree >= n
    has root discriminant >= lower_bound(n).
    """
    rows: Tuple[Tuple[int, Fraction], ...]
    source: str
    field_class: str = TOTALLY_IMAGINARY
    date: str = ""
    metadata: Tuple[Tuple[str, str], ...] = field(default=())

    @classmethod
    def empty(cls, source: str = "empty") -> "MinorationTable":
        return cls(rows=(), source=source)

    @property
    def degrees(self) -> List[int]:
        return [degree for degree, _ in self.rows]

    def truncated(self, max_degree: int) -> "MinorationTable":
        """Same table restricted to degrees <= max_degree"""
        return MinorationTable(
            rows=tuple(row for row in self.rows if row[0] <= max_degree),
            source=self.source,
            field_class=self.field_class,
            date=self.date,
            metadata=self.metadata,
        )

    def to_dict(self) -> Dict[str, object]:
        return {
            "source": self.source,
            "field_class": self.field_class,
            "date": self.date,
            "rows": [[degree, format_decimal(bound)] for degree, bound in self.rows],
        }


def format_decimal(value: Fraction) -> str:
    """Shortest exact decimal for a fraction whose denominator divides a power of ten"""
    digits = 0
    while (value * 10 ** digits).denominator != 1:
        digits += 1
        if digits > 60:
            raise TableFormatError(f"{value} has no finite decimal expansion")
    units = int(value * 10 ** digits)
    if digits == 0:
        return str(units)
    return f"{units // 10 ** digits}.{units % 10 ** digits:0{digits}d}"


def load_table(source: Union[bytes, BinaryIO]) -> MinorationTable:
    """
    Parse and validate a minoration table

    Args:
        source: file contents as bytes, or a binary stream

    Returns:
        validated MinorationTable

    Raises:
        TableFormatError: with the offending line number; nothing is partially loaded
    """
    raw = source if isinstance(source, (bytes, bytearray)) else source.read()
    try:
        text = bytes(raw).decode("utf-8")
    except UnicodeDecodeError as exc:
        raise TableFormatError(f"table is not UTF-8: {exc}") from exc

    metadata: List[Tuple[str, str]] = []
    rows: List[Tuple[int, Fraction]] = []
    seen = set()
    line_number = 0

    for line_number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            match = _METADATA.match(stripped)
            if match:
                metadata.append((match.group("key").lower(), match.group("value")))
            continue

        fields = line.rstrip("\r\n").split("\t")
        if len(fields) != 2:
            raise TableFormatError(
                f"expected 'degree<TAB>decimal', got {line.strip()!r}", line_number
            )
        degree_text, bound_text = (f.strip() for f in fields)
        if not degree_text.isdigit():
            raise TableFormatError(f"degree {degree_text!r} is not an integer", line_number)
        if not _DECIMAL.match(bound_text):
            raise TableFormatError(f"lower bound {bound_text!r} is not a decimal", line_number)

        degree = int(degree_text)
        bound = Fraction(bound_text)
        if degree < 2:
            raise TableFormatError(f"degree {degree} is below 2", line_number)
        if bound <= 1:
            raise TableFormatError(f"lower bound {bound_text} at degree {degree} must exceed 1", line_number)
        if degree in seen:
            raise TableFormatError(f"duplicate degree {degree}", line_number)
        if rows and degree < rows[-1][0]:
            raise TableFormatError(
                f"degrees not increasing: degree {degree} follows {rows[-1][0]}", line_number
            )
        if rows and bound < rows[-1][1]:
            raise TableFormatError(
                f"lower bounds not monotone: degree {degree} has {bound_text} "
                f"below the bound of degree {rows[-1][0]}", line_number
            )
        seen.add(degree)
        rows.append((degree, bound))

    values = dict(metadata)
    for key in REQUIRED_METADATA:
        if key not in values:
            raise TableFormatError(f"missing '# {key}:' metadata line", line_number or None)
    if values["field-class"] != TOTALLY_IMAGINARY:
        raise TableFormatError(
            f"field class {values['field-class']!r} is not supported, expected {TOTALLY_IMAGINARY!r}"
        )

    table = MinorationTable(
        rows=tuple(rows),
        source=values["source"],
        field_class=values["field-class"],
        date=values.get("date", ""),
        metadata=tuple(metadata),
    )
    logger.debug(f"Loaded minoration table with {len(rows)} rows from {table.source!r}")
    return table


def load_table_file(path: Union[str, Path]) -> MinorationTable:
    with open(path, "rb") as handle:
        return load_table(handle)


def dump_table(t: MinorationTable) -> str:
    """Serialize in the load_table format; reloading yields an equal table"""
    lines = []
    keys = [key for key, _ in t.metadata]
    for key, value in t.metadata:
        lines.append(f"# {key}: {value}")
    if "source" not in keys:
        lines.append(f"# source: {t.source}")
    if "field-class" not in keys:
        lines.append(f"# field-class: {t.field_class}")
    if t.date and "date" not in keys:
        lines.append(f"# date: {t.date}")
    for degree, bound in t.rows:
        lines.append(f"{degree}\t{format_decimal(bound)}")
    return "\n".join(lines) + "\n"


def lower_bound(t: MinorationTable, n: int) -> Optional[Fraction]:
    """Bound valid for degree n: the row of the largest tabulated degree <= n"""
    result = None
    for degree, bound in t.rows:
        if degree > n:
            break
        result = bound
    return result


def max_admissible_degree(t: MinorationTable, b: ExactBound) -> DegreeBound:
    """
    Largest degree whose tabulated lower bound is strictly below b

    Degrees between rows inherit the bound of the row below them, so the
    answer sits just under the first inadmissible row. Totally imaginary
    fields have even degree, which rounds that answer down to even.

    Args:
        t: minoration table
        b: root-discriminant upper bound

    Returns:
        degree bound, 0 when nothing is admissible, or BEYOND_TABLE
    """
    for index, (degree, bound) in enumerate(t.rows):
        if compare(b, bound) is not Ordering.GREATER:
            if index == 0:
                return 0
            answer = degree - 1
            if t.field_class == TOTALLY_IMAGINARY and answer % 2:
                answer -= 1
            return answer
    return BEYOND_TABLE


def as_frame(t: MinorationTable) -> pd.DataFrame:
    """Tabular view for display"""
    return pd.DataFrame(
        {
            "degree": [degree for degree, _ in t.rows],
            "lower_bound": [format_decimal(bound) for _, bound in t.rows],
            "approx": [float(bound) for _, bound in t.rows],
        }
    )

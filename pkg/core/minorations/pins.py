"""
Reference degree bounds a shipped table must reproduce
表校验：引用的次数上界
"""

from dataclasses import dataclass, asdict
from typing import Dict, List

import pandas as pd

from core.bounds import ExactBound, fontaine_bound
from .table import MinorationTable, max_admissible_degree

EXACT = "exact"
AT_MOST = "at most"


@dataclass(frozen=True)
class ReferencePin:
    """A quoted lookup: bound -> degree, either exactly or as an upper limit"""
    label: str
    bound: ExactBound
    expected: int
    relation: str = EXACT
    divisor: int = 1  # the quote counts only degrees divisible by this


@dataclass(frozen=True)
class PinResult:
    label: str
    bound: str
    expected: int
    relation: str
    divisor: int
    observed: str
    status: str  # pass | fail | conflict

    def to_dict(self) -> Dict[str, object]:
        return asdict(self)


def _build_pins() -> List[ReferencePin]:
    pins = []
    for p, expected in ((5, 12), (7, 18), (11, 50), (13, 88)):
        pins.append(ReferencePin(f"weight one, unramified outside p={p}", fontaine_bound(p, 1), expected))
    for p, expected, divisor in ((5, 4, 4), (7, 6, 6), (11, 24, 1), (13, 40, 1)):
        pins.append(ReferencePin(f"weight one, tame re-derivation p={p}", ExactBound.of(p), expected, EXACT, divisor))
    for p, expected in ((5, 26), (7, 42), (11, 154)):
        pins.append(ReferencePin(f"weight two, unramified outside p={p}", fontaine_bound(p, 2), expected))
    for p, expected in ((5, 6), (7, 10), (11, 24)):
        pins.append(ReferencePin(f"weight two, tame re-derivation p={p}", ExactBound.of(p), expected))
    pins.append(ReferencePin("semi-stable at 2, p=3", fontaine_bound(3, 1, {2}), 22))
    pins.append(ReferencePin("semi-stable at 2, p=5", fontaine_bound(5, 1, {2}), 64))
    pins.append(ReferencePin("auxiliary field tame at 3 only", ExactBound.of(3), 2, AT_MOST))
    pins.append(ReferencePin("auxiliary field tame at 5 only", ExactBound.of(5), 6, AT_MOST))
    return pins


REFERENCE_PINS: List[ReferencePin] = _build_pins()


def _satisfies(pin: ReferencePin, observed) -> bool:
    if not isinstance(observed, int):
        return False
    observed -= observed % pin.divisor
    if pin.relation == AT_MOST:
        return observed <= pin.expected
    return observed == pin.expected


def pin_report(t: MinorationTable, pins: List[ReferencePin] = None) -> List[PinResult]:
    """
    Evaluate every reference lookup against a table

    A pin that fails while another exact pin quoting the same bound over the
    same degrees passes is a conflict between the quotes themselves: no
    table can satisfy both, so it is reported as 'conflict' rather than
    'fail'.

    Args:
        t: the table under test
        pins: defaults to REFERENCE_PINS

    Returns:
        one PinResult per pin, in pin order
    """
    pins = REFERENCE_PINS if pins is None else pins
    observed = {pin.bound: max_admissible_degree(t, pin.bound) for pin in pins}

    results = []
    for pin in pins:
        value = observed[pin.bound]
        if _satisfies(pin, value):
            status = "pass"
        else:
            rivals = [
                other for other in pins
                if other.bound == pin.bound and other is not pin and _satisfies(other, value)
                and other.relation == EXACT and other.divisor == pin.divisor
                and other.expected != pin.expected
            ]
            status = "conflict" if rivals else "fail"
        results.append(PinResult(
            label=pin.label,
            bound=str(pin.bound),
            expected=pin.expected,
            relation=pin.relation,
            divisor=pin.divisor,
            observed=str(value),
            status=status,
        ))
    return results


def report_frame(results: List[PinResult]) -> pd.DataFrame:
    return pd.DataFrame([result.to_dict() for result in results])


def format_report(t: MinorationTable, results: List[PinResult]) -> str:
    """Provenance report: table metadata followed by one line per pin"""
    lines = [
        f"table source: {t.source}",
        f"field class: {t.field_class}",
        f"transcribed: {t.date or 'unknown'}",
    ]
    for result in results:
        among = f" among multiples of {result.divisor}" if result.divisor > 1 else ""
        lines.append(
            f"[{result.status:8}] {result.label}: bound {result.bound} -> "
            f"{result.observed} (quoted {result.relation} {result.expected}{among})"
        )
    return "\n".join(lines)

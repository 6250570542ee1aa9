from fractions import Fraction

import math
import random

import pytest
from sympy import factorint, primerange

from core.bounds import ExactBound, fontaine_bound
from core.errors import TableFormatError
from core.minorations import (
    BEYOND_TABLE,
    REFERENCE_PINS,
    MinorationTable,
    as_frame,
    dump_table,
    format_report,
    load_table,
    lower_bound,
    max_admissible_degree,
    pin_report,
    report_frame,
)
from core.minorations.pins import EXACT, ReferencePin

HEADER = b"# source: unit test\n# field-class: totally imaginary\n"

def _table(body: bytes) -> MinorationTable:
    return load_table(HEADER + body)


@pytest.mark.parametrize(
    "bound, expected",
    [
        (fontaine_bound(5, 1), 12),
        (fontaine_bound(7, 1), 18),
        (fontaine_bound(11, 1), 50),
        (fontaine_bound(13, 1), 88),
        (fontaine_bound(5, 2), 26),
        (fontaine_bound(7, 2), 42),
        (fontaine_bound(11, 2), 154),
        (fontaine_bound(3, 1, {2}), 22),
        (fontaine_bound(5, 1, {2}), 64),
        (fontaine_bound(3, 1), 6),
        (ExactBound.of(3), 2),
        (ExactBound.of(5), 6),
        (ExactBound.of(7), 10),
        (ExactBound.of(11), 24),
        (ExactBound.of(13), 40),
    ],
)
def test_shipped_table_degree_bounds(table: MinorationTable, bound: ExactBound, expected: int) -> None:
    assert max_admissible_degree(table, bound) == expected


def test_reference_pins(table: MinorationTable) -> None:
    results = pin_report(table)
    assert len(results) == len(REFERENCE_PINS)
    by_status = {}
    for result in results:
        by_status.setdefault(result.status, set()).add(result.label)
    assert set(by_status) == {"pass"}, format_report(table, results)


def test_pins_fail_on_empty_table() -> None:
    results = pin_report(MinorationTable.empty())
    assert {result.status for result in results} == {"fail"}
    assert {result.observed for result in results} == {BEYOND_TABLE}


def test_report_frame_and_text(table: MinorationTable) -> None:
    results = pin_report(table)
    frame = report_frame(results)
    assert list(frame.columns) == ["label", "bound", "expected", "relation", "divisor", "observed", "status"]
    assert len(frame) == len(results)
    text = format_report(table, results)
    assert text.splitlines()[0] == f"table source: {table.source}"
    assert "[pass    ] weight one, tame re-derivation p=5: bound 5 -> 6 (quoted exact 4 among multiples of 4)" in text


def test_empty_table_is_beyond() -> None:
    assert max_admissible_degree(MinorationTable.empty(), fontaine_bound(5, 1)) == BEYOND_TABLE


def test_truncated_table_runs_out(table: MinorationTable) -> None:
    short = table.truncated(40)
    assert max(short.degrees) == 40
    assert max_admissible_degree(short, fontaine_bound(13, 1)) == BEYOND_TABLE
    assert max_admissible_degree(short, fontaine_bound(5, 1)) == 12


def test_bound_below_first_row(table: MinorationTable) -> None:
    assert max_admissible_degree(table, ExactBound.of(Fraction(3, 2))) == 0


def test_odd_answers_round_down_to_even() -> None:
    t = _table(b"2\t1.5\n3\t2\n4\t3\n")
    assert max_admissible_degree(t, ExactBound.of(Fraction(5, 2))) == 2


def test_lower_bound_uses_row_below(table: MinorationTable) -> None:
    assert lower_bound(table, 5) == Fraction("3.2128")
    assert lower_bound(table, 4) == Fraction("3.2128")
    assert lower_bound(table, 1) is None


def test_dump_then_load_is_identity(table: MinorationTable) -> None:
    assert load_table(dump_table(table).encode("utf-8")) == table


def test_shipped_table_provenance(table: MinorationTable) -> None:
    assert table.field_class == "totally imaginary"
    assert table.date
    assert table.degrees[:4] == [2, 4, 6, 8]
    frame = as_frame(table)
    assert list(frame.columns) == ["degree", "lower_bound", "approx"]
    assert frame["lower_bound"].iloc[0] == "1.7221"


@pytest.mark.parametrize(
    "body, line, fragment",
    [
        (b"2\t1.5\n4\t1.4\n", 4, "not monotone"),
        (b"2\t1.5\n2\t1.6\n", 4, "duplicate"),
        (b"4\t1.5\n2\t1.6\n", 4, "not increasing"),
        (b"2\tabc\n", 3, "not a decimal"),
        (b"1\t1.5\n", 3, "below 2"),
        (b"2\t0.9\n", 3, "must exceed 1"),
        (b"2 1.5\n", 3, "degree<TAB>decimal"),
    ],
)
def test_malformed_rows_name_their_line(body: bytes, line: int, fragment: str) -> None:
    with pytest.raises(TableFormatError) as excinfo:
        _table(body)
    assert excinfo.value.line_number == line
    assert fragment in str(excinfo.value)


def test_metadata_is_required() -> None:
    with pytest.raises(TableFormatError, match="source"):
        load_table(b"# field-class: totally imaginary\n2\t1.5\n")
    with pytest.raises(TableFormatError, match="not supported"):
        load_table(b"# source: x\n# field-class: totally real\n2\t1.5\n")


def test_non_utf8_is_rejected() -> None:
    with pytest.raises(TableFormatError):
        load_table(HEADER + b"2\t1.5\xff\n")


def test_pin_broken_by_a_table_is_reported_as_fail(table: MinorationTable) -> None:
    # lowering the degree-12 and degree-14 rows lets 5^(5/4) through to degree 14
    lowered = {12: Fraction(7), 14: Fraction("7.2")}
    rows = tuple((d, lowered.get(d, b)) for d, b in table.rows)
    shifted = MinorationTable(rows=rows, source="shifted", field_class=table.field_class)
    statuses = {result.label: result.status for result in pin_report(shifted)}
    assert statuses["weight one, unramified outside p=5"] == "fail"
    assert statuses["weight one, unramified outside p=7"] == "pass"


def test_conflicting_quotes_are_reported_as_conflict(table: MinorationTable) -> None:
    pins = [
        ReferencePin("quote a", ExactBound.of(5), 6),
        ReferencePin("quote b", ExactBound.of(5), 4),
        ReferencePin("quote b over multiples of 4", ExactBound.of(5), 4, EXACT, 4),
    ]
    assert [result.status for result in pin_report(table, pins)] == ["pass", "conflict", "pass"]


def _class_number(disc: int) -> int:
    """Reduced primitive forms (a, b, c) of negative discriminant disc"""
    count = 0
    a = 1
    while 3 * a * a <= -disc:
        for b in range(-a + 1, a + 1):
            if (b * b - disc) % (4 * a):
                continue
            c = (b * b - disc) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(math.gcd(a, b), c) == 1:
                count += 1
        a += 1
    return count


def _fundamental(disc: int) -> bool:
    n = -disc
    if disc % 4 == 1:
        return all(e == 1 for e in factorint(n).values())
    if disc % 4 == 0 and (n // 4) % 4 in (1, 2):
        return all(e == 1 for e in factorint(n // 4).values())
    return False


@pytest.mark.parametrize("disc, h", [(-3, 1), (-4, 1), (-23, 3), (-47, 5), (-71, 7), (-20, 2), (-56, 4)])
def test_class_number_helper(disc: int, h: int) -> None:
    assert _class_number(disc) == h


def test_rows_stay_below_hilbert_class_fields(table: MinorationTable) -> None:
    # the Hilbert class field of Q(sqrt(D)) is totally imaginary of degree 2h with root discriminant sqrt(|D|)
    checked = 0
    for disc in range(-3, -400, -1):
        if not _fundamental(disc):
            continue
        bound = lower_bound(table, 2 * _class_number(disc))
        if bound is None:
            continue
        assert bound * bound <= -disc, f"row for degree {2 * _class_number(disc)} exceeds sqrt({-disc})"
        checked += 1
    assert checked > 80


def test_rows_stay_below_prime_cyclotomic_fields(table: MinorationTable) -> None:
    # Q(zeta_p) has degree p - 1 and |discriminant| p^(p - 2)
    for p in primerange(3, 202):
        bound = lower_bound(table, p - 1)
        assert bound ** (p - 1) <= p ** (p - 2), p


def test_known_minimal_discriminants_respect_the_rows(table: MinorationTable) -> None:
    # smallest |discriminant| of a totally imaginary field of degree 4, 6, 8
    for degree, disc in ((4, 117), (6, 9747), (8, 1257728)):
        assert lower_bound(table, degree) ** degree <= disc


def test_degree_bound_is_monotone_in_the_bound(table: MinorationTable) -> None:
    rng = random.Random(20261019)
    values = sorted(Fraction(rng.randint(10000, 200000), 10000) for _ in range(200))
    degrees = [max_admissible_degree(table, ExactBound.of(v)) for v in values]
    numeric = [d for d in degrees if d != BEYOND_TABLE]
    assert numeric == sorted(numeric)
    # once beyond the table, every larger bound stays beyond it
    if BEYOND_TABLE in degrees:
        first = degrees.index(BEYOND_TABLE)
        assert set(degrees[first:]) == {BEYOND_TABLE}


@pytest.mark.parametrize("cut", [12, 24, 40, 88, 154])
def test_truncation_only_loses_answers(table: MinorationTable, cut: int) -> None:
    short = table.truncated(cut)
    for p in (3, 5, 7, 11, 13):
        for bound in (fontaine_bound(p, 1), fontaine_bound(p, 2), ExactBound.of(p)):
            full, partial = max_admissible_degree(table, bound), max_admissible_degree(short, bound)
            assert partial in (full, BEYOND_TABLE)

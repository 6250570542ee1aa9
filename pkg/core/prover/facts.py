"""
Arithmetic facts used as data, each with its provenance
"""

from dataclasses import dataclass
from typing import Dict, Optional

WASHINGTON = "Washington, Introduction to Cyclotomic Fields, 2nd ed., Thm 11.1"


@dataclass(frozen=True)
class ArithmeticFact:
    statement: str
    source: str


# h(Q(zeta_p)) = 1 exactly for p <= 19
CLASS_NUMBER_ONE: Dict[int, ArithmeticFact] = {
    p: ArithmeticFact(f"Q(zeta_{p}) has class number one", WASHINGTON)
    for p in (2, 3, 5, 7, 11, 13, 17, 19)
}

EXTERNAL_RESULTS: Dict[int, ArithmeticFact] = {
    2: ArithmeticFact(
        "every rho: G_Q -> GL_2(Fbar_2) unramified outside 2 is reducible",
        "Tate, The non-existence of certain Galois extensions of Q unramified outside 2, "
        "Contemp. Math. 174 (1994)",
    ),
    3: ArithmeticFact(
        "every odd rho: G_Q -> GL_2(Fbar_3) unramified outside 3 is reducible",
        "Serre, Sur les representations modulaires de degre 2 de Gal(Qbar/Q), "
        "Duke Math. J. 54 (1987)",
    ),
}


def class_number_one(p: int) -> Optional[ArithmeticFact]:
    return CLASS_NUMBER_ONE.get(p)


def external_result(p: int) -> Optional[ArithmeticFact]:
    return EXTERNAL_RESULTS.get(p)

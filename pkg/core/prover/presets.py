"""
Preset scenarios for the command line and the acceptance checks
"""

from typing import Callable, Dict, Optional, Tuple

from core.errors import ScenarioError
from core.minorations import MinorationTable
from .certificate import Certificate, ProverSettings, Verdict
from .scenario import ABSOLUTELY_IRREDUCIBLE, IRREDUCIBLE, Scenario

ELLIPTIC = "elliptic"


def weight_one(p: int) -> Scenario:
    """Odd, finite flat at p (weight one), unramified outside p"""
    return Scenario(p=p, m=2, r=1, S=(), odd=True, target=IRREDUCIBLE)


def weight_two(p: int, m: int = 2) -> Scenario:
    """Absolutely irreducible, crystalline of weight at most two, unramified outside p"""
    return Scenario(p=p, m=m, r=2, S=(), odd=False, target=ABSOLUTELY_IRREDUCIBLE)


def semistable_at_two(p: int) -> Scenario:
    """Weight one at p, semi-stable at 2, unramified elsewhere"""
    return Scenario(p=p, m=2, r=1, S=(2,), odd=False, target=IRREDUCIBLE, semistable_at_S=True)


SCENARIO_PRESETS: Dict[str, Callable[[int], Scenario]] = {
    "weight-one": weight_one,
    "weight-two": weight_two,
    "semistable-at-2": semistable_at_two,
}

PRESET_NAMES = tuple(SCENARIO_PRESETS) + (ELLIPTIC,)

# theorem-numbered names accepted everywhere a preset name is
PRESET_ALIASES: Dict[str, str] = {
    "thm2.4": "weight-one",
    "thm3.1": "weight-two",
    "thm4.1": "semistable-at-2",
    "remark2.5": ELLIPTIC,
}

# primes for which each preset is expected to close
EXPECTED_NON_EXISTENCE: Dict[str, Tuple[int, ...]] = {
    "weight-one": (2, 3, 5, 7, 11, 13),
    "weight-two": (5, 7, 11),
    "semistable-at-2": (3, 5),
    ELLIPTIC: (5,),
}


def resolve_preset(name: str) -> str:
    """
    Map a preset name or alias to its canonical name

    Raises:
        ScenarioError: unknown preset name
    """
    name = PRESET_ALIASES.get(name, name)
    if name not in PRESET_NAMES:
        known = ", ".join(PRESET_NAMES + tuple(PRESET_ALIASES))
        raise ScenarioError(f"unknown preset {name!r}; choose one of {known}")
    return name


def preset_scenario(name: str, p: int) -> Scenario:
    """
    Look up a scenario preset

    Raises:
        ScenarioError: unknown preset name
    """
    name = resolve_preset(name)
    if name == ELLIPTIC:
        return weight_one(p)
    return SCENARIO_PRESETS[name](p)


def elliptic_curve_certificate(
    table: MinorationTable,
    p: int = 5,
    q: Optional[int] = None,
    settings: Optional[ProverSettings] = None,
) -> Tuple[Verdict, Certificate]:
    """No elliptic curve over Z has good reduction everywhere, via the p-torsion"""
    from .engine import ProofEngine

    return ProofEngine(table, settings).prove_elliptic(p, q)


def prove_preset(
    name: str,
    p: int,
    table: MinorationTable,
    settings: Optional[ProverSettings] = None,
    q: Optional[int] = None,
) -> Tuple[Verdict, Certificate]:
    from .engine import ProofEngine

    name = resolve_preset(name)
    if name == ELLIPTIC:
        return elliptic_curve_certificate(table, p, q, settings)
    return ProofEngine(table, settings).prove(preset_scenario(name, p))

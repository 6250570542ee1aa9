"""
Prover Module - 非存在性证明
Rule engine, certificates and the independent checker
"""

from .scenario import (
    ABSOLUTELY_IRREDUCIBLE,
    IRREDUCIBLE,
    TARGETS,
    Branch,
    Scenario,
    branch_label,
    parse_branch,
)
from .facts import ArithmeticFact, class_number_one, external_result
from .certificate import (
    ELLIPTIC_KIND,
    FORMAT_VERSION,
    INCONCLUSIVE,
    NON_EXISTENCE,
    SCENARIO_KIND,
    Certificate,
    OpenCase,
    ProverSettings,
    Step,
    Verdict,
    canonical_json,
    from_text,
    surviving_degrees,
    to_text,
)
from .rules import RULES, ProofContext, Rule, ambient_for, route_of
from .engine import ProofEngine, smallest_split_prime
from .checker import CheckReport, check_certificate, dependency_graph, with_step
from .presets import (
    ELLIPTIC,
    EXPECTED_NON_EXISTENCE,
    PRESET_ALIASES,
    PRESET_NAMES,
    SCENARIO_PRESETS,
    elliptic_curve_certificate,
    preset_scenario,
    resolve_preset,
    prove_preset,
    semistable_at_two,
    weight_one,
    weight_two,
)

__all__ = [
    "ABSOLUTELY_IRREDUCIBLE",
    "IRREDUCIBLE",
    "TARGETS",
    "Branch",
    "Scenario",
    "branch_label",
    "parse_branch",
    "ArithmeticFact",
    "class_number_one",
    "external_result",
    "ELLIPTIC_KIND",
    "FORMAT_VERSION",
    "INCONCLUSIVE",
    "NON_EXISTENCE",
    "SCENARIO_KIND",
    "Certificate",
    "OpenCase",
    "ProverSettings",
    "Step",
    "Verdict",
    "canonical_json",
    "from_text",
    "surviving_degrees",
    "to_text",
    "RULES",
    "ProofContext",
    "Rule",
    "ambient_for",
    "route_of",
    "ProofEngine",
    "smallest_split_prime",
    "CheckReport",
    "check_certificate",
    "dependency_graph",
    "with_step",
    "ELLIPTIC",
    "EXPECTED_NON_EXISTENCE",
    "PRESET_ALIASES",
    "PRESET_NAMES",
    "SCENARIO_PRESETS",
    "elliptic_curve_certificate",
    "preset_scenario",
    "resolve_preset",
    "prove_preset",
    "semistable_at_two",
    "weight_one",
    "weight_two",
]

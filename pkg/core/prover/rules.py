"""
Rule catalog - 推理规则
Each rule is a pure derivation: (context, input steps, branch, params) -> (claim, witness, citation).
The engine applies them; the checker re-applies them and compares.
"""

from dataclasses import dataclass, field
from math import lcm, prod
from typing import Any, Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple
import hashlib
import logging

from sympy import isprime, n_order

from core.bounds import ExactBound, decimal_digits, fontaine_bound
from core.errors import GroupError, RuleError, SearchCapExceeded
from core.glgroup import (
    INVARIANT_SUBSPACE,
    AmbientSpec,
    Subgroup,
    ambient_order,
    block_projection,
    check_fixed_vector_lemma,
    gl,
    gl_block,
    has_element_of_order,
    identify_group,
    invariant_lines,
    is_absolutely_irreducible,
    is_normal,
    subgroups_dividing_order,
    subgroups_of_order,
    surjects_onto_gl1,
    sylow,
    unipotent_subgroup,
)
from core.glgroup.matrices import det_mod_p
from core.minorations import BEYOND_TABLE, MinorationTable, max_admissible_degree
from core.weil import hasse_interval
from .certificate import (
    INCONCLUSIVE,
    NON_EXISTENCE,
    OpenCase,
    ProverSettings,
    Step,
    to_text,
)
from .facts import class_number_one, external_result
from .scenario import ABSOLUTELY_IRREDUCIBLE, Branch, Scenario, branch_label

logger = logging.getLogger(__name__)

DETERMINANT = "determinant"
ADJOIN = "adjoin"

CITE_CYCLOTOMIC = "Washington, Introduction to Cyclotomic Fields, Ch. 2 (Q(zeta_p) is totally imaginary for p > 2)"
CITE_FONTAINE = "Fontaine, Il n'y a pas de variete abelienne sur Z, Invent. Math. 81 (1985), Thm 1; Schemas propres et lisses sur Z (1993), Thm 2"
CITE_TABLE = "Diaz y Diaz, Tables minorant la racine n-ieme du discriminant d'un corps de degre n, Publ. Math. Orsay (1980)"
CITE_TAME_SIZE = "Serre, Local Fields, IV.2 Cor. 3 (wild inertia at q is a q-group)"
CITE_DIVISIBILITY = "Grothendieck, SGA 7 IX (semi-stable inertia acts unipotently); Lagrange"
CITE_TAME = "Serre, Local Fields, III.6 Prop. 13 (tame different exponent e - 1)"
CITE_CYCLIC = "Serre, Local Fields, IV.2 Cor. 4 (tame inertia is cyclic)"
CITE_GROUP = "exhaustive subgroup search over F_p; Serre, Linear Representations of Finite Groups, 8.3 Prop. 26"
CITE_WILD = "Serre, Linear Representations of Finite Groups, 8.3 Prop. 26 (p-groups in characteristic p fix a vector)"
CITE_CLOSE = "case analysis over the surviving degrees of this branch"
CITE_QED = "case analysis over every ramified subset of S"
CITE_TORSION = "Serre, Proprietes galoisiennes des points d'ordre fini des courbes elliptiques, Invent. Math. 15 (1972)"
CITE_SPLIT = "Washington, Introduction to Cyclotomic Fields, Thm 2.13 (decomposition of q in Q(zeta_p))"
CITE_HASSE = "Silverman, The Arithmetic of Elliptic Curves, V.1.1 (Hasse bound)"
CITE_INJECT = "Silverman, The Arithmetic of Elliptic Curves, VII.3.1 (prime-to-q torsion injects under good reduction)"

Derivation = Tuple[str, Dict[str, Any], str]


@dataclass(frozen=True)
class ProofContext:
    scenario: Scenario
    table: MinorationTable
    settings: ProverSettings = field(default_factory=ProverSettings)


@dataclass(frozen=True)
class Rule:
    id: str
    name: str
    derive: Callable[[ProofContext, Sequence[Step], Branch, Dict[str, Any]], Derivation]
    required: Tuple[str, ...] = ()
    repeated: FrozenSet[str] = frozenset()
    per_branch: bool = True
    location: str = ""  # where the non-existence argument takes this step

    def apply(self, ctx: ProofContext, inputs: Sequence[Step], branch: Branch, params: Dict[str, Any]) -> Derivation:
        """derive, with the argument location appended to the citation"""
        claim, witness, citation = self.derive(ctx, inputs, branch, params)
        if self.location:
            citation = f"{citation} [{self.location}]"
        return claim, witness, citation


# ---------------------------------------------------------------- helpers

def route_of(s: Scenario, branch: Branch) -> str:
    """det rho = chi_p already puts Q(zeta_p) inside K only for m = 2, r = 1 and nothing ramified in S"""
    return DETERMINANT if s.m == 2 and s.r == 1 and not branch else ADJOIN


def ambient_for(s: Scenario, branch: Branch) -> AmbientSpec:
    return gl(s.m, s.p) if route_of(s, branch) == DETERMINANT else gl_block(s.m, s.p)


def _imaginary(s: Scenario) -> bool:
    return s.p > 2


def _int_param(params: Dict[str, Any], key: str) -> int:
    value = params.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise RuleError(f"parameter {key!r} must be an integer, got {value!r}")
    return value


def _input(inputs: Sequence[Step], rule: str) -> Step:
    for step in inputs:
        if step.rule == rule:
            return step
    raise RuleError(f"missing {rule} input")


def _fmt(values: Sequence[int]) -> str:
    return "{" + ", ".join(str(v) for v in values) + "}"


def _p_part(n: int, p: int) -> int:
    part = 1
    while n % p == 0:
        n //= p
        part *= p
    return part


# ---------------------------------------------------------------- R0 .. R8

def derive_cyclotomic(ctx: ProofContext, inputs, branch, params) -> Derivation:
    s = ctx.scenario
    p = s.p
    route = route_of(s, branch)
    spec = ambient_for(s, branch)
    if route == DETERMINANT:
        claim = f"det rho = chi_{p}, so K contains Q(zeta_{p}); the image of rho lies in {spec.label}"
    else:
        claim = f"replace rho by rho + chi_{p}; K' = K(zeta_{p}) has Galois group inside {spec.label}"
    if not _imaginary(s):
        claim += f"; Q(zeta_{p}) = Q is not totally imaginary"
    witness = {
        "scenario": s.to_dict(),
        "branch": list(branch),
        "route": route,
        "ambient": spec.label,
        "ambient_order": ambient_order(spec),
        "gl_order": ambient_order(spec.gl_spec),
        "totally_imaginary": _imaginary(s),
    }
    return claim, witness, CITE_CYCLOTOMIC


def derive_tame_by_size(ctx: ProofContext, inputs, branch, params) -> Derivation:
    s = ctx.scenario
    q = _int_param(params, "q")
    if q not in branch:
        raise RuleError(f"{q} is not ramified in branch {branch_label(branch)}")
    gl_order = ambient_order(gl(s.m, s.p))
    tame = gl_order % q != 0
    if tame:
        claim = (f"{q} does not divide #GL_{s.m}(F_{s.p}) = {gl_order}: inertia at {q} has order prime "
                 f"to {q}, so ramification at {q} is tame")
    else:
        claim = f"{q} divides #GL_{s.m}(F_{s.p}) = {gl_order}: ramification at {q} need not be tame"
    witness = {"q": q, "p": s.p, "gl_order": gl_order, "exceeds_p_plus_1": q > s.p + 1, "tame": tame}
    return claim, witness, CITE_TAME_SIZE


def derive_bound(ctx: ProofContext, inputs, branch, params) -> Derivation:
    s = ctx.scenario
    checked = {step.witness["q"]: step.witness["tame"] for step in inputs if step.rule == "R3b"}
    if sorted(checked) != list(branch):
        raise RuleError(f"expected one tame-by-size step per prime of {branch_label(branch)}")
    for q in branch:
        if not (s.semistable_at_S or checked[q]):
            raise RuleError(f"no discriminant bound at {q}: neither semi-stable nor tame")
    bound = fontaine_bound(s.p, s.r, branch)
    digits = decimal_digits(bound, 2)
    claim = f"|d_K|^(1/n) < {bound} = {digits}..."
    witness = {"bound": str(bound), "decimal": digits, "p": s.p, "r": s.r, "ramified": list(branch)}
    return claim, witness, CITE_FONTAINE


def derive_degree(ctx: ProofContext, inputs, branch, params) -> Derivation:
    s = ctx.scenario
    if not _imaginary(s):
        raise RuleError(f"Q(zeta_{s.p}) is not totally imaginary; the table does not apply")
    bound = ExactBound.parse(_input(inputs, "R1").witness["bound"])
    max_degree = max_admissible_degree(ctx.table, bound)
    if max_degree == BEYOND_TABLE:
        claim = f"root discriminant bound {bound} lies beyond the table: no degree bound"
    else:
        claim = (f"n <= {max_degree}: no totally imaginary field of larger degree has root "
                 f"discriminant below {bound}")
    witness = {"bound": str(bound), "max_degree": max_degree}
    return claim, witness, CITE_TABLE


def derive_divisibility(ctx: ProofContext, inputs, branch, params) -> Derivation:
    s = ctx.scenario
    p = s.p
    max_degree = _input(inputs, "R2").witness["max_degree"]
    if not isinstance(max_degree, int):
        raise RuleError("no integral degree bound to filter")
    spec = ambient_for(s, branch)
    order = ambient_order(spec)
    unipotent = bool(branch) and s.semistable_at_S
    modulus = lcm(p - 1, p) if unipotent else p - 1
    multiples = list(range(modulus, max_degree + 1, modulus))
    candidates = [n for n in multiples if order % n == 0]
    excluded = [n for n in multiples if order % n]

    parts = [f"{p - 1} | n since K contains Q(zeta_{p})"]
    if unipotent:
        primes = ", ".join(str(q) for q in branch)
        parts.append(f"inertia at {primes} is unipotent of order {p}, so {p} | n; hence {modulus} | n")
    for n in excluded:
        text = f"{n} does not divide #{spec.label} = {order}"
        if spec.block:
            text += f" (#GL_{s.m}(F_{p}) = {ambient_order(spec.gl_spec)})"
        parts.append(text)
    parts.append(f"candidates n in {_fmt(candidates)}")
    witness = {
        "modulus": modulus,
        "max_degree": max_degree,
        "ambient_order": order,
        "candidates": candidates,
        "excluded_by_order": excluded,
    }
    return "; ".join(parts), witness, CITE_DIVISIBILITY


def derive_tame(ctx: ProofContext, inputs, branch, params) -> Derivation:
    s = ctx.scenario
    p = s.p
    if not _imaginary(s):
        raise RuleError("tame lookup needs a totally imaginary field")
    candidates = _input(inputs, "R3").witness["candidates"]
    tame_bound = ExactBound.of(p * prod(branch))
    tame_max = max_admissible_degree(ctx.table, tame_bound)
    tame_degrees = [n for n in candidates if n % p]
    wild_degrees = [n for n in candidates if n % p == 0]
    if tame_max == BEYOND_TABLE:
        survivors = list(tame_degrees)
    else:
        survivors = [n for n in tame_degrees if n <= tame_max]
    claim = (f"for {p} not dividing n the extension is tame at {p}: root discriminant < {tame_bound}, "
             f"so n <= {tame_max}; tame degrees {_fmt(tame_degrees)} -> {_fmt(survivors)}; "
             f"wild degrees {_fmt(wild_degrees)}")
    witness = {
        "tame_bound": str(tame_bound),
        "tame_max_degree": tame_max,
        "tame_degrees": tame_degrees,
        "wild_degrees": wild_degrees,
        "tame_survivors": survivors,
    }
    return claim, witness, CITE_TAME


def derive_total_ramification(ctx: ProofContext, inputs, branch, params) -> Derivation:
    s = ctx.scenario
    if branch:
        raise RuleError("total ramification needs the branch unramified outside p")
    if not _imaginary(s):
        raise RuleError("total ramification needs a totally imaginary field")
    fact = class_number_one(s.p)
    if fact is None:
        raise RuleError(f"no class-number-one fact recorded for Q(zeta_{s.p})")
    claim = (f"{fact.statement} and the extension is unramified outside {s.p}: "
             f"it is totally ramified at {s.p}")
    witness = {"p": s.p, "class_number": 1, "fact": fact.statement}
    return claim, witness, f"{fact.source}; {CITE_FONTAINE}"


def derive_cyclic(ctx: ProofContext, inputs, branch, params) -> Derivation:
    s = ctx.scenario
    p = s.p
    n = _int_param(params, "n")
    if n not in _input(inputs, "R4").witness["tame_survivors"]:
        raise RuleError(f"n = {n} is not a surviving tame degree")
    if s.target == ABSOLUTELY_IRREDUCIBLE:
        closed, reason = True, "a cyclic image is abelian, so not absolutely irreducible"
    elif (p - 1) % n == 0:
        closed, reason = True, f"a cyclic image of order dividing {p - 1} is diagonalisable over F_{p}: reducible"
    elif s.odd and s.m == 2 and p > 2:
        closed, reason = True, "complex conjugation has eigenvalues 1, -1 in F_p; its eigenlines are stable under a cyclic image: reducible"
    else:
        closed, reason = False, f"a cyclic image of order {n} may act irreducibly"
    claim = (f"n = {n}: totally and tamely ramified at {p}, unramified elsewhere, so the Galois group "
             f"is cyclic; {reason}")
    witness = {"n": n, "cyclic": True, "closed": closed, "reason": reason}
    return claim, witness, CITE_CYCLIC


def _determinant_surjective(h: Subgroup) -> bool:
    spec = h.ambient
    return len({det_mod_p(x, spec.dim, spec.p) for x in h.elements}) == spec.p - 1


def _candidates(ctx: ProofContext, spec: AmbientSpec, n: int) -> Tuple[List[Subgroup], str]:
    p = ctx.scenario.p
    cap = ctx.settings.search_order_cap
    seed = unipotent_subgroup(spec)
    if _p_part(n, p) > 1 and _p_part(n, p) == seed.order:
        found = subgroups_of_order(spec, n, containing=seed, max_order=cap)
        note = f"seeded by the unipotent Sylow {p}-subgroup of order {seed.order}"
    elif ambient_order(spec) <= ctx.settings.seedless_ambient_cap:
        found = subgroups_of_order(spec, n, max_order=cap)
        note = "unseeded search"
    else:
        raise SearchCapExceeded(
            f"{spec.label} exceeds {ctx.settings.seedless_ambient_cap} elements and n = {n} has no Sylow seed"
        )
    if spec.block:
        kept = [h for h in found if surjects_onto_gl1(h)]
    else:
        kept = [h for h in found if _determinant_surjective(h)]
    return kept, note


def _eliminate(ctx: ProofContext, branch: Branch, h: Subgroup, n: int) -> Optional[str]:
    s = ctx.scenario
    p = s.p
    spec = h.ambient
    image = block_projection(h) if spec.block else h
    if n % p == 0 and _imaginary(s) and (not branch or s.semistable_at_S):
        p_sylow = sylow(h, p)
        if is_normal(h, p_sylow):
            index = n // p_sylow.order
            aux_max = max_admissible_degree(ctx.table, ExactBound.of(p))
            if isinstance(aux_max, int) and index > aux_max:
                return (f"auxiliary field: the fixed field of the normal Sylow {p}-subgroup has degree {index}, "
                        f"is tame at {p} only with root discriminant < {p}, and the table allows degree <= {aux_max}")
    report = check_fixed_vector_lemma(image)
    if report.status == INVARIANT_SUBSPACE:
        return (f"normal {p}-core of order {report.core_order} fixes a stable subspace of dimension "
                f"{report.fixed_dimension}: reducible")
    if s.target == ABSOLUTELY_IRREDUCIBLE:
        if not is_absolutely_irreducible(image):
            return "elements span a proper subalgebra of the matrix algebra: not absolutely irreducible"
    elif s.m == 2:
        lines = invariant_lines(image)
        if lines:
            return f"stable line spanned by {lines[0]}: reducible"
    return None


def derive_group(ctx: ProofContext, inputs, branch, params) -> Derivation:
    s = ctx.scenario
    p = s.p
    n = _int_param(params, "n")
    r4 = _input(inputs, "R4").witness
    if n not in set(r4["tame_survivors"]) | set(r4["wild_degrees"]):
        raise RuleError(f"n = {n} is not a surviving degree")
    spec = ambient_for(s, branch)
    witness: Dict[str, Any] = {
        "n": n,
        "ambient": spec.label,
        "kernel_check": None,
        "search": None,
        "candidates": [],
        "closed": False,
        "reason": "",
    }
    try:
        if spec.block:
            gl_spec = spec.gl_spec
            k = n // (p - 1)
            kernel = subgroups_of_order(gl_spec, k, max_order=ctx.settings.search_order_cap)
            has_element, _ = has_element_of_order(gl_spec, k)
            witness["kernel_check"] = {"order": k, "subgroups": len(kernel), "element_of_order": has_element}
            if not kernel:
                reason = f"the kernel of the GL(1) projection would be a subgroup of {gl_spec.label} of order {k}; none exists"
                if not has_element:
                    reason += f", and {gl_spec.label} contains no element of order {k}"
                witness.update(closed=True, reason=reason)
                return f"n = {n}: {reason}", witness, CITE_GROUP
        groups, note = _candidates(ctx, spec, n)
    except (SearchCapExceeded, GroupError) as exc:
        witness["reason"] = f"search not feasible: {exc}"
        return f"n = {n}: group elimination not attempted ({exc})", witness, CITE_GROUP

    records = []
    for h in groups:
        record = h.to_dict()
        del record["ambient"]
        record["eliminated_by"] = _eliminate(ctx, branch, h, n)
        records.append(record)
    survivors = [record["label"] for record in records if record["eliminated_by"] is None]
    witness["search"] = note
    witness["candidates"] = records
    witness["closed"] = not survivors
    if survivors:
        witness["reason"] = f"surviving candidate groups: {', '.join(survivors)}"
        claim = f"n = {n}: {len(records)} candidate classes in {spec.label} ({note}); {len(survivors)} survive"
    else:
        witness["reason"] = "every candidate image eliminated"
        claim = f"n = {n}: {len(records)} candidate classes in {spec.label} ({note}); all eliminated"
    return claim, witness, CITE_GROUP


def derive_wild(ctx: ProofContext, inputs, branch, params) -> Derivation:
    s = ctx.scenario
    p = s.p
    n = _int_param(params, "n")
    if n not in _input(inputs, "R4").witness["wild_degrees"]:
        raise RuleError(f"n = {n} is not a wild degree")
    if branch or s.m != 2:
        raise RuleError("the wild-degree argument needs m = 2 and the branch unramified outside p")
    gl_spec = gl(s.m, p)
    seed = unipotent_subgroup(gl_spec)
    witness: Dict[str, Any] = {"n": n, "ambient": gl_spec.label, "candidates": [], "closed": False}
    try:
        groups = subgroups_dividing_order(gl_spec, n, containing=seed, max_order=ctx.settings.search_order_cap)
    except (SearchCapExceeded, GroupError) as exc:
        witness["reason"] = f"search not feasible: {exc}"
        return f"wild degree n = {n}: search not attempted ({exc})", witness, CITE_WILD

    records = []
    for h in groups:
        report = check_fixed_vector_lemma(h)
        records.append({
            "label": identify_group(h),
            "order": h.order,
            "core_order": report.core_order,
            "fixed_dimension": report.fixed_dimension,
            "status": report.status,
        })
    escaped = [record["label"] for record in records if record["status"] != INVARIANT_SUBSPACE]
    witness["candidates"] = records
    witness["closed"] = not escaped
    if escaped:
        witness["reason"] = f"fixed-vector argument fails for {', '.join(escaped)}"
        claim = f"wild degree n = {n}: {len(escaped)} of {len(records)} images of rho escape the fixed-vector argument"
    else:
        witness["reason"] = "every image containing a p-element fixes a stable line"
        claim = (f"wild degree n = {n}: every subgroup of {gl_spec.label} containing the unipotent group with "
                 f"order dividing {n} ({len(records)} classes) has a nontrivial normal {p}-core fixing a "
                 f"stable line, so an irreducible image has trivial {p}-part, contradicting {p} | n")
    return claim, witness, CITE_WILD


def external_applicable(s: Scenario, branch: Branch) -> bool:
    if branch or s.m != 2:
        return False
    return s.p == 2 or (s.p == 3 and s.odd)


def derive_external(ctx: ProofContext, inputs, branch, params) -> Derivation:
    s = ctx.scenario
    if not external_applicable(s, branch):
        raise RuleError("no external result covers this branch")
    fact = external_result(s.p)
    claim = f"{fact.statement} (external result, recorded not derived)"
    witness = {"p": s.p, "fact": fact.statement, "external": True}
    return claim, witness, fact.source


# ---------------------------------------------------------------- closing

def derive_close(ctx: ProofContext, inputs, branch, params) -> Derivation:
    label = branch_label(branch)
    reason = params.get("reason")
    if reason is not None and not isinstance(reason, str):
        raise RuleError("reason must be a string")
    rules = {step.rule for step in inputs}
    remaining: List[int] = []
    closed_by: Dict[str, str] = {}
    open_cases: List[OpenCase] = []
    external = "EXT" in rules

    if external:
        pass
    elif "R2" not in rules:
        open_cases.append(OpenCase(label, None, None, reason or "no degree bound"))
    elif _input(inputs, "R2").witness["max_degree"] == BEYOND_TABLE:
        open_cases.append(OpenCase(label, None, None, BEYOND_TABLE))
    else:
        if "R3" not in rules:
            raise RuleError("closing a bounded branch needs its divisibility step")
        remaining = list(_input(inputs, "R3").witness["candidates"])
        if "R4" in rules:
            r4 = _input(inputs, "R4").witness
            remaining = sorted(set(r4["tame_survivors"]) | set(r4["wild_degrees"]))
        reasons: Dict[int, str] = {}
        groups: Dict[int, str] = {}
        for step in inputs:
            if step.rule not in ("R6", "R7", "R8"):
                continue
            n = step.witness["n"]
            if step.witness["closed"]:
                closed_by.setdefault(str(n), step.id)
            else:
                reasons[n] = step.witness["reason"]
                if step.rule == "R7":
                    labels = [c["label"] for c in step.witness["candidates"] if c["eliminated_by"] is None]
                    groups[n] = ", ".join(labels) or None
        for n in remaining:
            if str(n) not in closed_by:
                open_cases.append(OpenCase(label, n, groups.get(n), reasons.get(n, "no rule closed this degree")))

    status = "open" if open_cases else "closed"
    if external:
        claim = f"branch {label} closed by an external result"
    elif open_cases:
        claim = f"branch {label} open: {'; '.join(str(case) for case in open_cases)}"
    elif remaining:
        claim = f"branch {label} closed: degrees {_fmt(remaining)} all eliminated"
    else:
        claim = f"branch {label} closed: no degree survives"
    witness = {
        "status": status,
        "remaining": remaining,
        "closed_by": closed_by,
        "external": external,
        "open_cases": [case.to_dict() for case in open_cases],
    }
    witness.update(params)
    return claim, witness, CITE_CLOSE


def derive_qed(ctx: ProofContext, inputs, branch, params) -> Derivation:
    s = ctx.scenario
    closes = [step for step in inputs if step.rule == "CLOSE"]
    injects = [step for step in inputs if step.rule == "INJECT"]
    if closes and not injects:
        expected = [branch_label(b) for b in s.branches()]
        if [step.branch for step in closes] != expected:
            raise RuleError(f"branches {[step.branch for step in closes]} do not cover {expected}")
        open_cases = [case for step in closes for case in step.witness["open_cases"]]
        external = any(step.witness["external"] for step in closes)
        kind = INCONCLUSIVE if open_cases else NON_EXISTENCE
        if open_cases:
            claim = f"{INCONCLUSIVE}: {len(open_cases)} open cases over {len(closes)} branches"
        else:
            claim = f"{NON_EXISTENCE}: all {len(closes)} branches closed"
            if external:
                claim += " (using an external result)"
        witness = {"verdict": kind, "open_cases": open_cases, "branches": len(closes), "external": external}
        return claim, witness, CITE_QED
    if injects and not closes and len(injects) == 1:
        inject = injects[0].witness
        if inject["contradiction"]:
            kind, open_cases = NON_EXISTENCE, []
            claim = f"{NON_EXISTENCE}: no elliptic curve over Z"
        else:
            kind = INCONCLUSIVE
            open_cases = [OpenCase("*", None, None,
                                   f"{inject['points']} points fit the Hasse bound {inject['max']}").to_dict()]
            claim = f"{INCONCLUSIVE}: the Hasse bound leaves room for the torsion"
        witness = {"verdict": kind, "open_cases": open_cases, "branches": 1, "external": False}
        return claim, witness, CITE_QED
    raise RuleError("QED needs either every CLOSE step or a single INJECT step")


# ---------------------------------------------------------------- elliptic curves over Z

def derive_import(ctx: ProofContext, inputs, branch, params) -> Derivation:
    from .engine import ProofEngine
    from .presets import weight_one

    p = _int_param(params, "p")
    if p != ctx.scenario.p:
        raise RuleError("imported scenario must match the certificate scenario")
    scenario = weight_one(p)
    if scenario != ctx.scenario:
        raise RuleError("certificate scenario is not the weight-one scenario")
    verdict, inner = ProofEngine(ctx.table, ctx.settings).prove(scenario)
    digest = hashlib.sha256(to_text(inner).encode("utf-8")).hexdigest()
    claim = f"re-proved: {scenario.describe()} -> {verdict.kind}"
    witness = {"p": p, "verdict": verdict.kind, "steps": len(inner.steps), "sha256": digest}
    return claim, witness, "this engine, weight-one scenario"


def derive_torsion(ctx: ProofContext, inputs, branch, params) -> Derivation:
    imported = _input(inputs, "IMPORT").witness
    p = imported["p"]
    if imported["verdict"] != NON_EXISTENCE:
        raise RuleError("the weight-one scenario was not refuted")
    points = p * p
    claim = (f"E[{p}] is finite flat with good reduction outside {p}, hence reducible; "
             f"all {points} points of E[{p}] are rational over Q(zeta_{p})")
    return claim, {"p": p, "points": points}, CITE_TORSION


def derive_split(ctx: ProofContext, inputs, branch, params) -> Derivation:
    p = _input(inputs, "TORSION").witness["p"]
    q = _int_param(params, "q")
    if not isprime(q) or q == p:
        raise RuleError(f"q = {q} must be a prime different from {p}")
    order = int(n_order(q, p))
    field_size = q ** order
    claim = f"{q} has order {order} modulo {p}: residue fields of Q(zeta_{p}) above {q} have {field_size} elements"
    if order == 1:
        claim += f" ({q} splits completely)"
    witness = {"q": q, "p": p, "order": order, "residue_field": field_size, "splits_completely": order == 1}
    return claim, witness, CITE_SPLIT


def derive_hasse(ctx: ProofContext, inputs, branch, params) -> Derivation:
    field_size = _input(inputs, "SPLIT").witness["residue_field"]
    interval = hasse_interval(field_size)
    claim = f"#E(F_{field_size}) lies in {interval}"
    return claim, {"field_size": field_size, "min": interval.min, "max": interval.max}, CITE_HASSE


def derive_inject(ctx: ProofContext, inputs, branch, params) -> Derivation:
    points = _input(inputs, "TORSION").witness["points"]
    hasse = _input(inputs, "HASSE").witness
    contradiction = points > hasse["max"]
    if contradiction:
        claim = f"E[p] injects into E(F_{hasse['field_size']}): {points} > {hasse['max']}, contradiction"
    else:
        claim = f"E[p] injects into E(F_{hasse['field_size']}): {points} <= {hasse['max']}, no contradiction"
    return claim, {"points": points, "max": hasse["max"], "contradiction": contradiction}, CITE_INJECT


BRANCH_INPUTS = frozenset({"R1", "R2", "R3", "R3b", "R4", "R5", "R6", "R7", "R8", "EXT"})

RULES: Dict[str, Rule] = {
    rule.id: rule for rule in (
        Rule("R0", "cyclotomic containment", derive_cyclotomic,
             location="thm2.4 proof: det rho = chi_p; thm4.1 proof: adjoin mu_p"),
        Rule("R3b", "tame by size", derive_tame_by_size, required=("R0",),
             location="remark2.3: primes not dividing #GL_m(F_p) ramify tamely"),
        Rule("R1", "discriminant bound", derive_bound, required=("R0",), repeated=frozenset({"R3b"}),
             location="thm2.1"),
        Rule("R2", "degree lookup", derive_degree, required=("R0", "R1"),
             location="thm2.4 proof: Odlyzko bounds from the Diaz y Diaz tables"),
        Rule("R3", "divisibility", derive_divisibility, required=("R0", "R2"),
             location="thm2.4 proof: n must be divisible by p - 1; thm4.1 proof"),
        Rule("R4", "tame upgrade", derive_tame, required=("R0", "R3"),
             location="lemma2.2; thm3.1 proof: degrees prime to p"),
        Rule("R5", "total ramification", derive_total_ramification, required=("R0", "R4"),
             location="thm2.4 proof: Q(zeta_p) has class number one"),
        Rule("R6", "cyclicity", derive_cyclic, required=("R4", "R5"),
             location="thm2.4 proof: the image is cyclic"),
        Rule("R7", "group elimination", derive_group, required=("R0", "R4"),
             location="thm3.1 and thm4.1 proofs: subgroups of the given order"),
        Rule("R8", "wild exceptional degree", derive_wild, required=("R0", "R4"),
             location="lemma3.2"),
        Rule("EXT", "external result", derive_external, required=("R0",),
             location="thm2.4 proof: p = 2, 3"),
        Rule("CLOSE", "branch summary", derive_close, required=("R0",), repeated=BRANCH_INPUTS,
             location="thm4.1 proof: one case per ramified subset"),
        Rule("QED", "verdict", derive_qed, repeated=frozenset({"CLOSE", "INJECT"}), per_branch=False,
             location="thm2.4, thm3.1, thm4.1, remark2.5"),
        Rule("IMPORT", "import weight-one result", derive_import, per_branch=False, location="remark2.5"),
        Rule("TORSION", "rational torsion", derive_torsion, required=("IMPORT",), per_branch=False, location="remark2.5"),
        Rule("SPLIT", "splitting of q", derive_split, required=("TORSION",), per_branch=False, location="remark2.5"),
        Rule("HASSE", "Hasse bound", derive_hasse, required=("SPLIT",), per_branch=False, location="remark2.5"),
        Rule("INJECT", "torsion injection", derive_inject, required=("TORSION", "HASSE"), per_branch=False, location="remark2.5"),
    )
}

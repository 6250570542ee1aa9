"""
Proof Engine - 证明引擎
Drives the rule catalog over every branch of a scenario and records the trace
"""

from typing import Any, Dict, List, Optional, Sequence, Tuple
import logging

from sympy import isprime, nextprime

from core.errors import CertifierError, RuleError
from core.minorations import BEYOND_TABLE, MinorationTable
from .certificate import (
    ELLIPTIC_KIND,
    GLOBAL_BRANCH,
    SCENARIO_KIND,
    Certificate,
    OpenCase,
    ProverSettings,
    Step,
    Verdict,
    normalize,
)
from .rules import RULES, ProofContext, derive_close, external_applicable
from .scenario import Branch, Scenario, branch_label

logger = logging.getLogger(__name__)


class _Trace:
    """Append-only step list; step ids are S1, S2, ... in application order"""

    def __init__(self, ctx: ProofContext):
        self.ctx = ctx
        self.steps: List[Step] = []

    def apply(
        self,
        rule_id: str,
        branch: Branch,
        inputs: Sequence[Step],
        params: Optional[Dict[str, Any]] = None,
    ) -> Step:
        rule = RULES[rule_id]
        params = normalize(params or {})
        claim, witness, citation = rule.apply(self.ctx, list(inputs), branch, params)
        step = Step(
            id=f"S{len(self.steps) + 1}",
            rule=rule_id,
            branch=branch_label(branch) if rule.per_branch else GLOBAL_BRANCH,
            params=params,
            inputs=tuple(s.id for s in inputs),
            claim=claim,
            witness=normalize(witness),
            citation=citation,
        )
        self.steps.append(step)
        logger.debug(f"{step.id} {rule_id} [{step.branch}] {claim}")
        return step


def verdict_from(qed: Step) -> Verdict:
    cases = tuple(
        OpenCase(case["branch"], case["degree"], case["group"], case["reason"])
        for case in qed.witness["open_cases"]
    )
    return Verdict(qed.witness["verdict"], cases)


def smallest_split_prime(p: int) -> int:
    """Smallest prime q = 1 mod p, i.e. split completely in Q(zeta_p)"""
    q = nextprime(p)
    while q % p != 1:
        q = nextprime(q)
    return q


class ProofEngine:
    """
    证明引擎
    Applies rules R0..R8 per ramified subset, closes each branch and concludes.
    """

    def __init__(self, table: MinorationTable, settings: Optional[ProverSettings] = None):
        self.table = table
        self.settings = settings or ProverSettings()
        logger.info("✓ ProofEngine initialized")

    def prove(self, scenario: Scenario) -> Tuple[Verdict, Certificate]:
        """
        Attempt a non-existence proof

        Args:
            scenario: hypotheses on rho

        Returns:
            (verdict, certificate); Inconclusive verdicts list every open case
        """
        ctx = ProofContext(scenario, self.table, self.settings)
        trace = _Trace(ctx)
        closes = []
        for branch in scenario.branches():
            closes.append(self._prove_branch(trace, branch))
        qed = trace.apply("QED", (), closes)
        verdict = verdict_from(qed)
        logger.info(f"{scenario.describe()}: {verdict.kind} in {len(trace.steps)} steps")
        return verdict, Certificate(scenario, tuple(trace.steps), verdict, self.settings, SCENARIO_KIND)

    def _prove_branch(self, trace: _Trace, branch: Branch) -> Step:
        s = trace.ctx.scenario
        r0 = trace.apply("R0", branch, [])
        support: List[Step] = [r0]
        reason: Optional[str] = None
        r2: Optional[Step] = None

        try:
            tames = []
            for q in branch:
                step = trace.apply("R3b", branch, [r0], {"q": q})
                tames.append(step)
                support.append(step)
            r1 = trace.apply("R1", branch, [r0, *tames])
            support.append(r1)
            r2 = trace.apply("R2", branch, [r0, r1])
            support.append(r2)
        except RuleError as exc:
            reason = str(exc)
            logger.info(f"{branch_label(branch)}: no degree bound ({reason})")

        if r2 is not None and r2.witness["max_degree"] != BEYOND_TABLE:
            r3 = trace.apply("R3", branch, [r0, r2])
            r4 = trace.apply("R4", branch, [r0, r3])
            support.extend([r3, r4])
            support.extend(self._eliminate_degrees(trace, branch, r0, r4))

        if external_applicable(s, branch):
            status = derive_close(trace.ctx, support, branch, {})[1]["status"]
            if status == "open":
                support.append(trace.apply("EXT", branch, [r0]))

        params = {"reason": reason} if reason else {}
        close = trace.apply("CLOSE", branch, support, params)
        logger.info(f"{close.branch}: {close.witness['status']}")
        return close

    def _eliminate_degrees(self, trace: _Trace, branch: Branch, r0: Step, r4: Step) -> List[Step]:
        s = trace.ctx.scenario
        tame = r4.witness["tame_survivors"]
        wild = r4.witness["wild_degrees"]
        steps: List[Step] = []

        if branch:
            for n in sorted(set(tame) | set(wild)):
                steps.append(trace.apply("R7", branch, [r0, r4], {"n": n}))
            return steps

        try:
            r5 = trace.apply("R5", branch, [r0, r4])
            steps.append(r5)
        except RuleError as exc:
            logger.info(f"{branch_label(branch)}: no total ramification ({exc})")
            r5 = None

        for n in tame:
            if r5 is not None:
                cyclic = trace.apply("R6", branch, [r4, r5], {"n": n})
                steps.append(cyclic)
                if cyclic.witness["closed"]:
                    continue
            steps.append(trace.apply("R7", branch, [r0, r4], {"n": n}))

        for n in wild:
            rule = "R8" if s.m == 2 else "R7"
            steps.append(trace.apply(rule, branch, [r0, r4], {"n": n}))
        return steps

    def prove_elliptic(self, p: int = 5, q: Optional[int] = None) -> Tuple[Verdict, Certificate]:
        """
        No elliptic curve over Z: all of E[p] is rational over Q(zeta_p), then
        reduce at a prime above q and compare with the Hasse bound

        Args:
            p: torsion prime, whose weight-one scenario must be refuted
            q: reduction prime, default the smallest prime split in Q(zeta_p)

        Returns:
            (verdict, certificate) of kind "elliptic"
        """
        from .presets import weight_one

        q = smallest_split_prime(p) if q is None else q
        if not isprime(q) or q == p:
            raise CertifierError(f"reduction prime q = {q} must be a prime different from {p}")
        scenario = weight_one(p)
        trace = _Trace(ProofContext(scenario, self.table, self.settings))
        imported = trace.apply("IMPORT", (), [], {"p": p})
        torsion = trace.apply("TORSION", (), [imported])
        split = trace.apply("SPLIT", (), [torsion], {"q": q})
        hasse = trace.apply("HASSE", (), [split])
        inject = trace.apply("INJECT", (), [torsion, hasse])
        qed = trace.apply("QED", (), [inject])
        verdict = verdict_from(qed)
        logger.info(f"elliptic curves over Z via p = {p}, q = {q}: {verdict.kind}")
        return verdict, Certificate(scenario, tuple(trace.steps), verdict, self.settings, ELLIPTIC_KIND)

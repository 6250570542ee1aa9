"""
Certificate Checker - 证书校验
Independent replay of a certificate: structure, dependency graph and every derivation
"""

from collections import Counter
from dataclasses import dataclass, replace
from typing import Any, Dict, Optional
import logging

import networkx as nx

from core.errors import CertifierError, ScenarioError
from core.minorations import MinorationTable
from .certificate import (
    ELLIPTIC_KIND,
    GLOBAL_BRANCH,
    SCENARIO_KIND,
    Certificate,
    Step,
    canonical_json,
    normalize,
)
from .rules import RULES, ProofContext
from .scenario import parse_branch

logger = logging.getLogger(__name__)

ELLIPTIC_RULES = frozenset({"IMPORT", "TORSION", "SPLIT", "HASSE", "INJECT", "QED"})
SCENARIO_RULES = frozenset(RULES) - (ELLIPTIC_RULES - {"QED"})


@dataclass(frozen=True)
class CheckReport:
    ok: bool
    failing_step: Optional[str] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> Dict[str, Any]:
        return {"ok": self.ok, "failing_step": self.failing_step, "reason": self.reason}

    def __str__(self) -> str:
        if self.ok:
            return "certificate OK"
        where = f" at {self.failing_step}" if self.failing_step else ""
        return f"certificate REJECTED{where}: {self.reason}"


def _fail(step_id: Optional[str], reason: str) -> CheckReport:
    logger.info(f"Certificate rejected at {step_id}: {reason}")
    return CheckReport(False, step_id, reason)


def dependency_graph(cert: Certificate) -> nx.DiGraph:
    """Edges run from each input to the step consuming it"""
    graph = nx.DiGraph()
    for step in cert.steps:
        graph.add_node(step.id, rule=step.rule)
        for source in step.inputs:
            graph.add_edge(source, step.id)
    return graph


def _check_structure(cert: Certificate) -> Optional[CheckReport]:
    if not cert.steps:
        return _fail(None, "certificate has no steps")
    allowed = ELLIPTIC_RULES if cert.kind == ELLIPTIC_KIND else SCENARIO_RULES
    if cert.kind not in (SCENARIO_KIND, ELLIPTIC_KIND):
        return _fail(None, f"unknown certificate kind {cert.kind!r}")

    seen: Dict[str, Step] = {}
    for index, step in enumerate(cert.steps, start=1):
        if step.id != f"S{index}":
            return _fail(step.id, f"expected step id S{index}")
        if step.rule not in allowed:
            return _fail(step.id, f"rule {step.rule!r} not allowed in a {cert.kind} certificate")
        if len(set(step.inputs)) != len(step.inputs):
            return _fail(step.id, "duplicate inputs")
        for source in step.inputs:
            if source not in seen:
                return _fail(step.id, f"input {source} does not refer to an earlier step")
        seen[step.id] = step

    graph = dependency_graph(cert)
    if not nx.is_directed_acyclic_graph(graph):
        return _fail(None, "dependency graph has a cycle")
    last = cert.steps[-1]
    if last.rule != "QED":
        return _fail(last.id, "last step must be QED")
    if len(cert.steps_of("QED")) != 1:
        return _fail(last.id, "exactly one QED step expected")
    unused = set(graph.nodes) - nx.ancestors(graph, last.id) - {last.id}
    if unused:
        first = min(unused, key=lambda s: int(s[1:]))
        return _fail(first, "step does not contribute to the conclusion")
    return None


def _check_inputs(cert: Certificate, step: Step) -> Optional[str]:
    rule = RULES[step.rule]
    kinds = Counter(cert.step(source).rule for source in step.inputs)
    for kind in rule.required:
        if kinds[kind] != 1 and not (kind in rule.repeated and kinds[kind] >= 1):
            return f"{step.rule} needs exactly one {kind} input, got {kinds[kind]}"
    for kind in kinds:
        if kind not in rule.required and kind not in rule.repeated:
            return f"{step.rule} does not accept {kind} inputs"
    return None


def _check_branch(cert: Certificate, step: Step) -> Optional[str]:
    rule = RULES[step.rule]
    if not rule.per_branch:
        if step.branch != GLOBAL_BRANCH:
            return f"{step.rule} must carry branch {GLOBAL_BRANCH!r}"
        return None
    try:
        branch = parse_branch(step.branch)
    except ScenarioError as exc:
        return str(exc)
    if branch not in cert.scenario.branches():
        return f"{step.branch} is not a subset of S"
    for source in step.inputs:
        if cert.step(source).branch != step.branch:
            return f"input {source} belongs to another branch"
    return None


def _check_params(step: Step) -> Optional[str]:
    for key, value in step.params.items():
        if key not in step.witness or canonical_json(step.witness[key]) != canonical_json(value):
            return f"parameter {key!r} is not echoed in the witness"
    return None


def _recompute(ctx: ProofContext, cert: Certificate, step: Step) -> Optional[str]:
    rule = RULES[step.rule]
    branch = () if step.branch == GLOBAL_BRANCH else parse_branch(step.branch)
    inputs = [cert.step(source) for source in step.inputs]
    try:
        claim, witness, citation = rule.apply(ctx, inputs, branch, normalize(step.params))
    except CertifierError as exc:
        return f"rule {step.rule} does not apply: {exc}"
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        return f"rule {step.rule} could not read its inputs: {exc!r}"
    if claim != step.claim:
        return "claim differs from the recomputed claim"
    if canonical_json(normalize(witness)) != canonical_json(step.witness):
        return "witness differs from the recomputed witness"
    if citation != step.citation:
        return "citation differs from the rule's citation"
    return None


def check_certificate(cert: Certificate, table: MinorationTable) -> CheckReport:
    """
    Replay a certificate against a table

    Args:
        cert: certificate, typically parsed from text
        table: minoration table to re-derive the degree bounds with

    Returns:
        CheckReport; falsy with the first failing step on rejection
    """
    failure = _check_structure(cert)
    if failure is not None:
        return failure

    ctx = ProofContext(cert.scenario, table, cert.settings)
    for step in cert.steps:
        reason = (
            _check_inputs(cert, step)
            or _check_branch(cert, step)
            or _check_params(step)
            or _recompute(ctx, cert, step)
        )
        if reason is not None:
            return _fail(step.id, reason)

    qed = cert.steps[-1]
    expected = {"kind": qed.witness.get("verdict"), "open_cases": qed.witness.get("open_cases")}
    if canonical_json(cert.verdict.to_dict()) != canonical_json(expected):
        return _fail(qed.id, "stated verdict differs from the QED step")
    logger.info(f"Certificate OK: {len(cert.steps)} steps, {cert.verdict.kind}")
    return CheckReport(True)


def with_step(cert: Certificate, step_id: str, **changes: Any) -> Certificate:
    """Copy of cert with one step's fields replaced; used to tamper with certificates in tests"""
    steps = tuple(replace(step, **changes) if step.id == step_id else step for step in cert.steps)
    return replace(cert, steps=steps)

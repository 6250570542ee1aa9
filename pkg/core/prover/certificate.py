"""
Certificate - 可复核的证明轨迹
Proof traces: steps, verdicts and the line-oriented text format
"""

from dataclasses import dataclass, field, asdict
from typing import Any, Dict, List, Optional, Tuple
import json

from core.errors import CertificateFormatError, ScenarioError
from .scenario import Scenario

FORMAT_VERSION = "discriminant-certificate 1"
NON_EXISTENCE = "NonExistence"
INCONCLUSIVE = "Inconclusive"
GLOBAL_BRANCH = "*"

SCENARIO_KIND = "scenario"
ELLIPTIC_KIND = "elliptic"


def canonical_json(value: Any) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def normalize(value: Any) -> Any:
    """JSON round trip: tuples become lists, keys become strings"""
    return json.loads(canonical_json(value))


@dataclass(frozen=True)
class ProverSettings:
    """Search limits; recorded in every certificate so a check replays the same searches"""
    search_order_cap: int = 128
    seedless_ambient_cap: int = 2000
    order_cap: int = 10000

    def to_dict(self) -> Dict[str, int]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ProverSettings":
        try:
            return cls(**{key: int(value) for key, value in data.items()})
        except (TypeError, ValueError) as exc:
            raise CertificateFormatError(f"malformed settings {data!r}: {exc}") from exc


@dataclass(frozen=True)
class Step:
    id: str
    rule: str
    branch: str
    params: Dict[str, Any]
    inputs: Tuple[str, ...]
    claim: str
    witness: Dict[str, Any]
    citation: str


@dataclass(frozen=True)
class OpenCase:
    branch: str
    degree: Optional[int]
    group: Optional[str]
    reason: str

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def __str__(self) -> str:
        parts = [self.branch]
        if self.degree is not None:
            parts.append(f"n={self.degree}")
        if self.group:
            parts.append(self.group)
        return f"{' '.join(parts)}: {self.reason}"


@dataclass(frozen=True)
class Verdict:
    kind: str
    open_cases: Tuple[OpenCase, ...] = ()

    @property
    def is_non_existence(self) -> bool:
        return self.kind == NON_EXISTENCE

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "open_cases": [case.to_dict() for case in self.open_cases]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Verdict":
        cases = tuple(
            OpenCase(case["branch"], case.get("degree"), case.get("group"), case["reason"])
            for case in data.get("open_cases", [])
        )
        return cls(data["kind"], cases)

    def __str__(self) -> str:
        if self.is_non_existence:
            return NON_EXISTENCE
        return f"{INCONCLUSIVE}({'; '.join(str(case) for case in self.open_cases)})"


@dataclass(frozen=True)
class Certificate:
    scenario: Scenario
    steps: Tuple[Step, ...]
    verdict: Verdict
    settings: ProverSettings = field(default_factory=ProverSettings)
    kind: str = SCENARIO_KIND

    def step(self, step_id: str) -> Step:
        for step in self.steps:
            if step.id == step_id:
                return step
        raise KeyError(step_id)

    def steps_of(self, rule: str) -> List[Step]:
        return [step for step in self.steps if step.rule == rule]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "format": FORMAT_VERSION,
            "kind": self.kind,
            "scenario": self.scenario.to_dict(),
            "settings": self.settings.to_dict(),
            "steps": [asdict(step) for step in self.steps],
            "verdict": self.verdict.to_dict(),
        }


def surviving_degrees(cert: Certificate) -> Dict[str, List[int]]:
    """Per branch, the degrees left after the bound, divisibility and tame steps"""
    result: Dict[str, List[int]] = {}
    for step in cert.steps_of("R4"):
        survivors = set(step.witness["tame_survivors"]) | set(step.witness["wild_degrees"])
        result[step.branch] = sorted(survivors)
    return result


def to_text(cert: Certificate) -> str:
    """
    Line-oriented serialization with a fixed key order

    Args:
        cert: certificate

    Returns:
        text ending in a newline; identical certificates give identical bytes
    """
    lines = [
        f"format: {FORMAT_VERSION}",
        f"kind: {cert.kind}",
        f"scenario: {canonical_json(cert.scenario.to_dict())}",
        f"settings: {canonical_json(cert.settings.to_dict())}",
    ]
    for step in cert.steps:
        lines.extend([
            f"step: {step.id}",
            f"rule: {step.rule}",
            f"branch: {step.branch}",
            f"params: {canonical_json(step.params)}",
            f"inputs: {','.join(step.inputs)}",
            f"claim: {step.claim}",
            f"witness: {canonical_json(step.witness)}",
            f"citation: {step.citation}",
            "end",
        ])
    lines.append(f"verdict: {canonical_json(cert.verdict.to_dict())}")
    return "\n".join(lines) + "\n"


_STEP_KEYS = ("step", "rule", "branch", "params", "inputs", "claim", "witness", "citation")


def _split(line: str, number: int) -> Tuple[str, str]:
    key, sep, value = line.partition(": ")
    if not sep:
        if line.endswith(":"):
            return line[:-1], ""
        raise CertificateFormatError(f"line {number}: expected 'key: value', got {line!r}")
    return key, value


def _json(value: str, number: int) -> Any:
    try:
        return json.loads(value)
    except json.JSONDecodeError as exc:
        raise CertificateFormatError(f"line {number}: invalid JSON: {exc}") from exc


def from_text(text: str) -> Certificate:
    """
    Parse the output of to_text

    Raises:
        CertificateFormatError: malformed structure or values
    """
    lines = [line for line in text.splitlines() if line.strip()]
    header: Dict[str, str] = {}
    steps: List[Step] = []
    verdict: Optional[Verdict] = None
    index = 0

    while index < len(lines) and not lines[index].startswith("step:"):
        key, value = _split(lines[index], index + 1)
        if key == "verdict":
            break
        header[key] = value
        index += 1

    while index < len(lines) and lines[index].startswith("step:"):
        block = lines[index:index + len(_STEP_KEYS) + 1]
        if len(block) < len(_STEP_KEYS) + 1 or block[-1] != "end":
            raise CertificateFormatError(f"line {index + 1}: truncated step block")
        values = {}
        for offset, (expected, line) in enumerate(zip(_STEP_KEYS, block)):
            key, value = _split(line, index + offset + 1)
            if key != expected:
                raise CertificateFormatError(f"line {index + offset + 1}: expected {expected!r}, got {key!r}")
            values[key] = value
        params = _json(values["params"], index + 4)
        witness = _json(values["witness"], index + 7)
        if not isinstance(params, dict) or not isinstance(witness, dict):
            raise CertificateFormatError(f"line {index + 1}: params and witness must be JSON objects")
        steps.append(Step(
            id=values["step"],
            rule=values["rule"],
            branch=values["branch"],
            params=params,
            inputs=tuple(x for x in values["inputs"].split(",") if x),
            claim=values["claim"],
            witness=witness,
            citation=values["citation"],
        ))
        index += len(_STEP_KEYS) + 1

    if index < len(lines):
        key, value = _split(lines[index], index + 1)
        if key != "verdict":
            raise CertificateFormatError(f"line {index + 1}: expected verdict, got {key!r}")
        data = _json(value, index + 1)
        try:
            verdict = Verdict.from_dict(data)
        except (KeyError, TypeError, AttributeError) as exc:
            raise CertificateFormatError(f"line {index + 1}: malformed verdict") from exc
        index += 1
    if verdict is None:
        raise CertificateFormatError("missing verdict line")
    if index != len(lines):
        raise CertificateFormatError(f"line {index + 1}: content after the verdict")

    if header.get("format") != FORMAT_VERSION:
        raise CertificateFormatError(f"unsupported format {header.get('format')!r}")
    for key in ("kind", "scenario", "settings"):
        if key not in header:
            raise CertificateFormatError(f"missing {key!r} header")
    try:
        scenario = Scenario.from_dict(_json(header["scenario"], 3))
    except ScenarioError as exc:
        raise CertificateFormatError(str(exc)) from exc
    settings_data = _json(header["settings"], 4)
    if not isinstance(settings_data, dict):
        raise CertificateFormatError("settings must be a JSON object")
    return Certificate(
        scenario=scenario,
        steps=tuple(steps),
        verdict=verdict,
        settings=ProverSettings.from_dict(settings_data),
        kind=header["kind"],
    )

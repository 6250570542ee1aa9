"""
Scenario - 伽罗瓦表示的假设
Hypotheses on a mod-p Galois representation whose existence is to be refuted
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Tuple

from sympy import isprime

from core.errors import ScenarioError

IRREDUCIBLE = "irreducible"
ABSOLUTELY_IRREDUCIBLE = "absolutely irreducible"
TARGETS = (IRREDUCIBLE, ABSOLUTELY_IRREDUCIBLE)

Branch = Tuple[int, ...]


@dataclass(frozen=True)
class Scenario:
    """
    rho : G_Q -> GL(m, F_p), crystalline of Hodge-Tate weight r at p,
    unramified outside S + {p}, optionally semi-stable at the primes of S.
    """
    p: int
    m: int = 2
    r: int = 1
    S: Tuple[int, ...] = field(default=())
    odd: bool = False
    target: str = IRREDUCIBLE
    semistable_at_S: bool = False

    def __post_init__(self):
        object.__setattr__(self, "S", tuple(sorted(set(int(q) for q in self.S))))
        self.validate()

    def validate(self) -> None:
        if not isprime(self.p):
            raise ScenarioError(f"p = {self.p} is not prime")
        if self.m < 2:
            raise ScenarioError(f"dimension m must be >= 2, got {self.m}")
        if not 1 <= self.r <= self.p - 1:
            raise ScenarioError(f"weight r = {self.r} outside [1, p - 1] = [1, {self.p - 1}]")
        for q in self.S:
            if not isprime(q):
                raise ScenarioError(f"{q} in S is not prime")
        if self.p in self.S:
            raise ScenarioError(f"p = {self.p} must not lie in S")
        if self.target not in TARGETS:
            raise ScenarioError(f"unknown target {self.target!r}, expected one of {TARGETS}")

    @property
    def finite_flat_at_p(self) -> bool:
        return self.r == 1

    @property
    def unramified_outside(self) -> Tuple[int, ...]:
        return tuple(sorted(self.S + (self.p,)))

    def branches(self) -> List[Branch]:
        """Every choice of ramified subset S' of S, smallest first"""
        return [combo for size in range(len(self.S) + 1) for combo in combinations(self.S, size)]

    def to_dict(self) -> Dict[str, object]:
        return {
            "p": self.p,
            "m": self.m,
            "r": self.r,
            "S": list(self.S),
            "odd": self.odd,
            "target": self.target,
            "semistable_at_S": self.semistable_at_S,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "Scenario":
        try:
            return cls(
                p=int(data["p"]),
                m=int(data.get("m", 2)),
                r=int(data.get("r", 1)),
                S=tuple(int(q) for q in data.get("S", ())),
                odd=bool(data.get("odd", False)),
                target=str(data.get("target", IRREDUCIBLE)),
                semistable_at_S=bool(data.get("semistable_at_S", False)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ScenarioError(f"malformed scenario {data!r}: {exc}") from exc

    def describe(self) -> str:
        primes = ", ".join(str(q) for q in self.S) or "none"
        flags = []
        if self.odd:
            flags.append("odd")
        if self.semistable_at_S and self.S:
            flags.append("semi-stable at S")
        extra = f", {', '.join(flags)}" if flags else ""
        return f"{self.target} rho into GL({self.m},F_{self.p}), weight {self.r}, S = {{{primes}}}{extra}"


def branch_label(branch: Branch) -> str:
    return "S'={" + ",".join(str(q) for q in branch) + "}"


def parse_branch(label: str) -> Branch:
    """Inverse of branch_label"""
    if not (label.startswith("S'={") and label.endswith("}")):
        raise ScenarioError(f"malformed branch label {label!r}")
    body = label[4:-1]
    if not body:
        return ()
    try:
        return tuple(int(q) for q in body.split(","))
    except ValueError as exc:
        raise ScenarioError(f"malformed branch label {label!r}") from exc

"""
Matrices over F_p and the ambient groups GL(m, p), GL(m, p) x GL(1, p)
有限域矩阵与环境群
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Dict, Iterable, List, Sequence, Tuple
import logging

from sympy import isprime

from core.errors import GroupError, SearchCapExceeded

logger = logging.getLogger(__name__)

# Flat row-major entries in [0, p); the working representation inside searches.
Entries = Tuple[int, ...]

ELEMENT_CAP = 30000


def _mul1(a: Entries, b: Entries, p: int) -> Entries:
    return ((a[0] * b[0]) % p,)


def _mul2(a: Entries, b: Entries, p: int) -> Entries:
    return (
        (a[0] * b[0] + a[1] * b[2]) % p,
        (a[0] * b[1] + a[1] * b[3]) % p,
        (a[2] * b[0] + a[3] * b[2]) % p,
        (a[2] * b[1] + a[3] * b[3]) % p,
    )


def _mul3(a: Entries, b: Entries, p: int) -> Entries:
    return (
        (a[0] * b[0] + a[1] * b[3] + a[2] * b[6]) % p,
        (a[0] * b[1] + a[1] * b[4] + a[2] * b[7]) % p,
        (a[0] * b[2] + a[1] * b[5] + a[2] * b[8]) % p,
        (a[3] * b[0] + a[4] * b[3] + a[5] * b[6]) % p,
        (a[3] * b[1] + a[4] * b[4] + a[5] * b[7]) % p,
        (a[3] * b[2] + a[4] * b[5] + a[5] * b[8]) % p,
        (a[6] * b[0] + a[7] * b[3] + a[8] * b[6]) % p,
        (a[6] * b[1] + a[7] * b[4] + a[8] * b[7]) % p,
        (a[6] * b[2] + a[7] * b[5] + a[8] * b[8]) % p,
    )


def multiplier(k: int) -> Callable[[Entries, Entries, int], Entries]:
    """Product function for k x k matrices"""
    if k == 1:
        return _mul1
    if k == 2:
        return _mul2
    if k == 3:
        return _mul3

    def _mul(a: Entries, b: Entries, p: int) -> Entries:
        return tuple(
            sum(a[i * k + t] * b[t * k + j] for t in range(k)) % p
            for i in range(k) for j in range(k)
        )
    return _mul


def identity(k: int) -> Entries:
    return tuple(1 if i == j else 0 for i in range(k) for j in range(k))


def det_mod_p(a: Entries, k: int, p: int) -> int:
    if k == 1:
        return a[0] % p
    if k == 2:
        return (a[0] * a[3] - a[1] * a[2]) % p
    rows = [list(a[i * k:(i + 1) * k]) for i in range(k)]
    det = 1
    for col in range(k):
        pivot = next((r for r in range(col, k) if rows[r][col] % p), None)
        if pivot is None:
            return 0
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det = det * rows[col][col] % p
        inv = pow(rows[col][col], -1, p)
        for r in range(col + 1, k):
            factor = rows[r][col] * inv % p
            if factor:
                rows[r] = [(x - factor * y) % p for x, y in zip(rows[r], rows[col])]
    return det % p


def mat_inv(a: Entries, k: int, p: int) -> Entries:
    if k == 2:
        inv = pow((a[0] * a[3] - a[1] * a[2]) % p, -1, p)
        return ((a[3] * inv) % p, (-a[1] * inv) % p, (-a[2] * inv) % p, (a[0] * inv) % p)
    rows = [list(a[i * k:(i + 1) * k]) + list(identity(k)[i * k:(i + 1) * k]) for i in range(k)]
    for col in range(k):
        pivot = next((r for r in range(col, k) if rows[r][col] % p), None)
        if pivot is None:
            raise GroupError("matrix is singular mod p")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = pow(rows[col][col], -1, p)
        rows[col] = [x * inv % p for x in rows[col]]
        for r in range(k):
            if r != col and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [(x - factor * y) % p for x, y in zip(rows[r], rows[col])]
    return tuple(x for row in rows for x in row[k:])


def element_order(a: Entries, k: int, p: int, limit: int = 100000) -> int:
    """Multiplicative order by repeated multiplication"""
    mul = multiplier(k)
    one = identity(k)
    power, order = a, 1
    while power != one:
        power = mul(power, a, p)
        order += 1
        if order > limit:
            raise GroupError("element order exceeds limit; matrix is probably singular")
    return order


@dataclass(frozen=True, order=True)
class MatrixModP:
    """An invertible m x m matrix over F_p"""
    p: int
    m: int
    entries: Entries

    def __post_init__(self):
        if len(self.entries) != self.m * self.m:
            raise GroupError(f"expected {self.m * self.m} entries, got {len(self.entries)}")
        reduced = tuple(int(x) % self.p for x in self.entries)
        object.__setattr__(self, "entries", reduced)
        if det_mod_p(reduced, self.m, self.p) == 0:
            raise GroupError(f"matrix {self.rows()} is singular mod {self.p}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int) -> "MatrixModP":
        return cls(p, len(rows), tuple(x for row in rows for x in row))

    def rows(self) -> List[List[int]]:
        return [list(self.entries[i * self.m:(i + 1) * self.m]) for i in range(self.m)]

    def __matmul__(self, other: "MatrixModP") -> "MatrixModP":
        return MatrixModP(self.p, self.m, multiplier(self.m)(self.entries, other.entries, self.p))

    def inverse(self) -> "MatrixModP":
        return MatrixModP(self.p, self.m, mat_inv(self.entries, self.m, self.p))

    def order(self) -> int:
        return element_order(self.entries, self.m, self.p)

    def __str__(self) -> str:
        return str(self.rows())


@dataclass(frozen=True, order=True)
class AmbientSpec:
    """
    GL(m, p), or the block group GL(m, p) x GL(1, p) realised as
    block-diagonal (m+1) x (m+1) matrices with the GL(1) entry last.
    """
    p: int
    m: int
    block: bool = False

    def __post_init__(self):
        if not isprime(self.p):
            raise GroupError(f"p = {self.p} is not prime")
        if self.m < 1:
            raise GroupError(f"dimension must be >= 1, got {self.m}")

    @property
    def dim(self) -> int:
        return self.m + 1 if self.block else self.m

    @property
    def label(self) -> str:
        base = f"GL({self.m},{self.p})"
        return f"{base} x GL(1,{self.p})" if self.block else base

    @property
    def gl_spec(self) -> "AmbientSpec":
        return AmbientSpec(self.p, self.m)

    def identity(self) -> Entries:
        return identity(self.dim)

    def mul(self, a: Entries, b: Entries) -> Entries:
        return multiplier(self.dim)(a, b, self.p)

    def inv(self, a: Entries) -> Entries:
        return mat_inv(a, self.dim, self.p)

    def embed(self, a: Entries, c: int = 1) -> Entries:
        """Block element diag(a, c); for a non-block spec returns a"""
        if not self.block:
            return a
        m = self.m
        out = []
        for i in range(m):
            out.extend(a[i * m:(i + 1) * m])
            out.append(0)
        out.extend([0] * m)
        out.append(c % self.p)
        return tuple(out)

    def gl_part(self, x: Entries) -> Entries:
        if not self.block:
            return x
        k, m = self.dim, self.m
        return tuple(x[i * k + j] for i in range(m) for j in range(m))

    def cyclotomic_part(self, x: Entries) -> int:
        if not self.block:
            raise GroupError(f"{self.label} has no GL(1) block")
        return x[-1]

    def matrix(self, x: Entries) -> MatrixModP:
        return MatrixModP(self.p, self.dim, x)

    def raw(self, g) -> Entries:
        """Entries of a MatrixModP, nested rows or flat tuple, checked against this ambient"""
        if isinstance(g, MatrixModP):
            if g.p != self.p or g.m != self.dim:
                raise GroupError(f"matrix over F_{g.p} of size {g.m} is not in {self.label}")
            entries = g.entries
        elif g and isinstance(g[0], (list, tuple)):
            entries = tuple(x for row in g for x in row)
        else:
            entries = tuple(g)
        if len(entries) != self.dim * self.dim:
            raise GroupError(f"matrix has {len(entries)} entries, {self.label} needs {self.dim ** 2}")
        entries = tuple(int(x) % self.p for x in entries)
        if det_mod_p(entries, self.dim, self.p) == 0:
            raise GroupError(f"matrix {entries} is singular mod {self.p}")
        if self.block and entries != self.embed(self.gl_part(entries), entries[-1]):
            raise GroupError(f"matrix {entries} is not block diagonal")
        return entries


def gl(m: int, p: int) -> AmbientSpec:
    return AmbientSpec(p, m)


def gl_block(m: int, p: int) -> AmbientSpec:
    return AmbientSpec(p, m, block=True)


def ambient_order(spec: AmbientSpec) -> int:
    """
    Exact order: ∏_{i<m} (p^m - p^i), times (p - 1) for the block shape

    Args:
        spec: ambient group

    Returns:
        group order
    """
    order = 1
    for i in range(spec.m):
        order *= spec.p ** spec.m - spec.p ** i
    if spec.block:
        order *= spec.p - 1
    return order


@lru_cache(maxsize=None)
def elements(spec: AmbientSpec) -> Tuple[Entries, ...]:
    """All elements of the ambient, lexicographically sorted"""
    size = ambient_order(spec)
    if size > ELEMENT_CAP:
        raise SearchCapExceeded(f"{spec.label} has {size} elements, above the cap {ELEMENT_CAP}")
    m, p = spec.m, spec.p
    base = [a for a in product(range(p), repeat=m * m) if det_mod_p(a, m, p)]
    if spec.block:
        result = sorted(spec.embed(a, c) for a in base for c in range(1, p))
    else:
        result = sorted(base)
    logger.debug(f"Enumerated {len(result)} elements of {spec.label}")
    return tuple(result)


@lru_cache(maxsize=None)
def element_orders(spec: AmbientSpec) -> Dict[Entries, int]:
    """Order of every ambient element"""
    k, p = spec.dim, spec.p
    return {x: element_order(x, k, p) for x in elements(spec)}


def brute_force_count(m: int, p: int) -> int:
    """Invertible m x m matrices mod p counted one by one"""
    return sum(1 for a in product(range(p), repeat=m * m) if det_mod_p(a, m, p))


def to_entries(spec: AmbientSpec, matrices: Iterable) -> List[Entries]:
    return [spec.raw(g) for g in matrices]

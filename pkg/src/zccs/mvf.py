"""
Multi-variable functions Z_p^m -> Z_q attached to path/vertex graphs.

Variable ``x_j`` is digit ``j`` of the mixed-radix expansion of the sequence
index, digit 0 being the most significant::

    I = sum_j p**(m - j - 1) * x_j

Path variables come first (indices ``0..n-1``), isolated vertices after them
(``n..n+r-1``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .seqcore import PhaseSequence, ResidueSum, accs

__all__ = [
    "MixedRadixIndex",
    "PathGraph",
    "MvfSpec",
    "index_decode",
    "index_encode",
    "digit_table",
    "eval_quadratic",
    "eval_F",
    "chi",
    "walsh",
    "walsh_dot",
]


@dataclass(frozen=True)
class MixedRadixIndex:
    p: int
    digits: tuple

    @property
    def m(self) -> int:
        return len(self.digits)

    @property
    def value(self) -> int:
        return index_encode(self.digits, self.p)


def index_decode(I: int, p: int, m: int) -> MixedRadixIndex:
    if p < 2:
        raise ValueError(f"base must be >= 2, got {p}")
    if not 0 <= I < p**m:
        raise ValueError(f"index {I} out of range [0, {p}**{m})")
    digits = []
    for _ in range(m):
        I, d = divmod(I, p)
        digits.append(d)
    return MixedRadixIndex(p, tuple(reversed(digits)))


def index_encode(digits: Sequence[int], p: int) -> int:
    I = 0
    for d in digits:
        if not 0 <= d < p:
            raise ValueError(f"digit {d} not in Z_{p}")
        I = I * p + int(d)
    return I


def digit_table(p: int, m: int) -> np.ndarray:
    """All p**m digit vectors as rows, ordered by index (shape (p**m, m))."""
    I = np.arange(p**m, dtype=np.int64)
    cols = [(I // p ** (m - j - 1)) % p for j in range(m)]
    if not cols:
        return np.zeros((1, 0), dtype=np.int64)
    return np.stack(cols, axis=1)


@dataclass(frozen=True)
class PathGraph:
    """A Hamiltonian path through the listed variables, in path order.

    Every consecutive pair is joined by an edge labelled q/p. ``vertices[0]``
    and ``vertices[-1]`` are the two end vertices.
    """

    vertices: tuple

    def __post_init__(self):
        v = tuple(int(x) for x in self.vertices)
        if not v:
            raise ValueError("a path needs at least one vertex")
        if len(set(v)) != len(v):
            raise ValueError(f"path visits a vertex twice: {v}")
        if min(v) < 0:
            raise ValueError("vertex labels must be non-negative")
        object.__setattr__(self, "vertices", v)

    @classmethod
    def consecutive(cls, start: int, size: int, perm: Sequence[int] | None = None):
        """Path over variables ``start..start+size-1`` visited in ``perm`` order."""
        perm = range(size) if perm is None else perm
        if sorted(perm) != list(range(size)):
            raise ValueError(f"{list(perm)} is not a permutation of 0..{size - 1}")
        return cls(tuple(start + i for i in perm))

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def head(self) -> int:
        return self.vertices[0]

    @property
    def tail(self) -> int:
        return self.vertices[-1]

    @property
    def edges(self) -> list:
        return list(zip(self.vertices, self.vertices[1:]))

    def reversed(self) -> "PathGraph":
        return PathGraph(self.vertices[::-1])


def _check_paths(paths: Sequence[PathGraph], n: int | None = None) -> int:
    seen = [v for path in paths for v in path.vertices]
    n = len(seen) if n is None else n
    if sorted(seen) != list(range(n)):
        raise ValueError(
            f"paths must partition the variables 0..{n - 1}, got {[p.vertices for p in paths]}"
        )
    return n


@dataclass(frozen=True)
class MvfSpec:
    """One member of the function family: quadratic path terms, linear and
    constant terms, end-vertex offsets ``alpha``/``beta`` and a Walsh term
    ``delta`` over the isolated vertices.

    ``alpha`` digit ``i`` multiplies the head of path ``i``, ``beta`` digit ``i``
    its tail; both use the same most-significant-first digit order as the
    sequence index. ``pmepr_term`` adds ``(q/p) * sum beta_{v-1} beta_v``.
    """

    p: int
    q: int
    paths: tuple
    r: int = 0
    gamma: tuple = ()
    theta: int = 0
    alpha: int = 0
    beta: int = 0
    delta: int = 0
    pmepr_term: bool = False
    strict: bool = False
    n: int = field(init=False)

    def __post_init__(self):
        if self.p < 2:
            raise ValueError(f"p must be >= 2, got {self.p}")
        if self.q < 1 or self.q % self.p:
            raise ValueError("q must be a multiple of p")
        paths = tuple(pg if isinstance(pg, PathGraph) else PathGraph(tuple(pg)) for pg in self.paths)
        if not paths:
            raise ValueError("at least one path is required")
        object.__setattr__(self, "paths", paths)
        n = _check_paths(paths)
        object.__setattr__(self, "n", n)
        if self.r < 0:
            raise ValueError("r must be non-negative")
        gamma = tuple(int(g) for g in self.gamma) if self.gamma else (0,) * n
        if len(gamma) != n:
            raise ValueError(f"gamma needs {n} entries, got {len(gamma)}")
        object.__setattr__(self, "gamma", gamma)
        bound = self.p if self.strict else self.q
        if any(not 0 <= g < bound for g in gamma) or not 0 <= self.theta < bound:
            raise ValueError(f"gamma and theta must lie in [0, {bound})")
        k = len(paths)
        for name, val, top in (("alpha", self.alpha, self.p**k), ("beta", self.beta, self.p**k),
                               ("delta", self.delta, self.p**self.r)):
            if not 0 <= val < top:
                raise ValueError(f"{name}={val} out of range [0, {top})")

    @property
    def k(self) -> int:
        return len(self.paths)

    @property
    def m(self) -> int:
        return self.n + self.r

    @property
    def length(self) -> int:
        return self.p**self.m

    @property
    def weight(self) -> int:
        return self.q // self.p

    def alpha_digits(self) -> tuple:
        return index_decode(self.alpha, self.p, self.k).digits

    def beta_digits(self) -> tuple:
        return index_decode(self.beta, self.p, self.k).digits

    def delta_digits(self) -> tuple:
        return index_decode(self.delta, self.p, self.r).digits

    def pmepr_offset(self) -> int:
        if not self.pmepr_term:
            return 0
        b = self.beta_digits()
        return self.weight * sum(b[v - 1] * b[v] for v in range(1, len(b))) % self.q


def eval_quadratic(paths: Sequence[PathGraph], x: Sequence[int], p: int, q: int) -> int:
    """(q/p) times the sum of x_u * x_v over all path edges, mod q."""
    paths = [pg if isinstance(pg, PathGraph) else PathGraph(tuple(pg)) for pg in paths]
    n = _check_paths(paths)
    if len(x) != n:
        raise ValueError(f"expected {n} variables, got {len(x)}")
    total = sum(x[u] * x[v] for pg in paths for u, v in pg.edges)
    return (q // p) * total % q


def eval_F(spec: MvfSpec, I: int) -> int:
    x = index_decode(I, spec.p, spec.m).digits
    w, q = spec.weight, spec.q
    val = eval_quadratic(spec.paths, x[: spec.n], spec.p, q)
    val += sum(g * xi for g, xi in zip(spec.gamma, x)) + spec.theta
    for a, b, pg in zip(spec.alpha_digits(), spec.beta_digits(), spec.paths):
        val += w * (a * x[pg.head] + b * x[pg.tail])
    val += w * sum(d * xi for d, xi in zip(spec.delta_digits(), x[spec.n:]))
    val += spec.pmepr_offset()
    return val % q


def chi(spec: MvfSpec) -> PhaseSequence:
    """The sequence ``(zeta_q ** F(0), ..., zeta_q ** F(p**m - 1))``."""
    X = digit_table(spec.p, spec.m)
    w, q = spec.weight, spec.q
    f = X[:, : spec.n] @ np.asarray(spec.gamma, dtype=np.int64) + spec.theta
    for a, b, pg in zip(spec.alpha_digits(), spec.beta_digits(), spec.paths):
        for u, v in pg.edges:
            f = f + w * X[:, u] * X[:, v]
        f = f + w * (a * X[:, pg.head] + b * X[:, pg.tail])
    for j, d in enumerate(spec.delta_digits()):
        f = f + w * d * X[:, spec.n + j]
    f = f + spec.pmepr_offset()
    return PhaseSequence(q, f % q)


def walsh(delta: int, p: int, q: int, r: int) -> PhaseSequence:
    """chi of the Walsh function (q/p) * <delta, x> on Z_p^r."""
    if q % p:
        raise ValueError("q must be a multiple of p")
    if not 0 <= delta < p**r:
        raise ValueError(f"delta={delta} out of range [0, {p**r})")
    d = np.asarray(index_decode(delta, p, r).digits, dtype=np.int64)
    X = digit_table(p, r)
    return PhaseSequence(q, ((q // p) * (X @ d)) % q)


def walsh_dot(delta1: int, delta2: int, p: int, q: int, r: int) -> ResidueSum:
    """Inner product of two Walsh sequences; zero whenever the indices differ."""
    return accs(walsh(delta1, p, q, r), walsh(delta2, p, q, r), 0)

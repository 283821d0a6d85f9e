"""
Type-II Z-complementary code sets from k paths and r isolated vertices.

For ``0 <= alpha, beta < p**k`` and ``0 <= delta < p**r`` the code with index
``s`` stacks, as its rows ``beta = 0 .. p**k - 1``, the sequences of

    F(x) = Q(x) + <gamma, x> + theta
           + (q/p) * sum_i (alpha_i * x[head_i] + beta_i * x[tail_i])
           + (q/p) * <delta, x_isolated>
           [+ (q/p) * sum_v beta_{v-1} * beta_v]

The set has shape (K, M, Z, N) = (p**(k+r), p**k, p**(n+r) - p**r + 1, p**(n+r)).

Two indexings of the same family are supported:

``standard``
    alpha/beta digits most significant first, alpha on path heads, beta on
    path tails, ``s = alpha * p**r + delta``.
``reversed``
    alpha/beta digits least significant first, beta on path heads, alpha on
    path tails, ``s = delta * p**k + alpha``. This is the layout of the
    reference binary (8, 4, 31, 32) fixture in the test data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from .mvf import MvfSpec, PathGraph, digit_table, index_decode
from .seqcore import PhaseSequence

__all__ = [
    "ParameterError",
    "ConstructionParams",
    "CodeSet",
    "INDEXINGS",
    "build_code_set",
    "build_ccc",
    "uncorrelated_pairs",
]

INDEXINGS = ("standard", "reversed")


class ParameterError(ValueError):
    """Invalid construction parameters."""


@dataclass(frozen=True)
class ConstructionParams:
    p: int
    q: int
    path_sizes: tuple
    r: int = 0
    perms: tuple | None = None
    gamma: tuple | None = None
    theta: int = 0
    pmepr_term: bool = False
    strict_gamma: bool = False
    indexing: str = "standard"
    paths: tuple = field(init=False, repr=False)

    def __post_init__(self):
        p, q = int(self.p), int(self.q)
        if p < 2:
            raise ParameterError(f"p must be >= 2, got {p}")
        if q < p or q % p:
            raise ParameterError("q must be a multiple of p")
        sizes = tuple(int(s) for s in self.path_sizes)
        if not sizes:
            raise ParameterError("at least one path is required")
        if any(s < 1 for s in sizes):
            raise ParameterError("every path needs at least one vertex")
        if self.r < 0:
            raise ParameterError("r must be non-negative")
        if self.indexing not in INDEXINGS:
            raise ParameterError(f"indexing must be one of {INDEXINGS}")
        n = sum(sizes)
        if self.perms is None:
            offsets = np.cumsum((0,) + sizes[:-1])
            perms = tuple(tuple(range(o, o + s)) for o, s in zip(offsets.tolist(), sizes))
        else:
            perms = tuple(tuple(int(v) for v in pv) for pv in self.perms)
            if tuple(len(pv) for pv in perms) != sizes:
                raise ParameterError("perms do not match the path sizes")
            if sorted(v for pv in perms for v in pv) != list(range(n)):
                raise ParameterError(f"perms must partition the path variables 0..{n - 1}")
        gamma = (0,) * n if self.gamma is None else tuple(int(g) for g in self.gamma)
        if len(gamma) != n:
            raise ParameterError(f"gamma needs {n} entries, got {len(gamma)}")
        bound = p if self.strict_gamma else q
        if any(not 0 <= g < bound for g in gamma) or not 0 <= self.theta < bound:
            raise ParameterError(f"gamma and theta must lie in [0, {bound})")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "path_sizes", sizes)
        object.__setattr__(self, "perms", perms)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "theta", int(self.theta))
        paths = tuple(PathGraph(pv) for pv in perms)
        if self.indexing == "reversed":
            paths = tuple(pg.reversed() for pg in reversed(paths))
        object.__setattr__(self, "paths", paths)

    @classmethod
    def random(cls, p: int, q: int, path_sizes: Sequence[int], r: int = 0, seed=None, **kw):
        """Random gamma, theta and vertex layout (paths need not be consecutive)."""
        rng = np.random.default_rng(seed)
        sizes = tuple(path_sizes)
        n = sum(sizes)
        strict = kw.get("strict_gamma", False)
        top = p if strict else q
        order = rng.permutation(n).tolist()
        perms, o = [], 0
        for s in sizes:
            perms.append(tuple(order[o:o + s]))
            o += s
        return cls(p, q, sizes, r, perms=tuple(perms),
                   gamma=tuple(rng.integers(0, top, n).tolist()),
                   theta=int(rng.integers(0, top)), **kw)

    @property
    def k(self) -> int:
        return len(self.path_sizes)

    @property
    def n(self) -> int:
        return sum(self.path_sizes)

    @property
    def K(self) -> int:
        return self.p ** (self.k + self.r)

    @property
    def M(self) -> int:
        return self.p**self.k

    @property
    def N(self) -> int:
        return self.p ** (self.n + self.r)

    @property
    def Z(self) -> int:
        return self.N - self.p**self.r + 1

    @property
    def shape(self) -> tuple:
        """The (K, M, Z, N) tuple the construction guarantees."""
        return (self.K, self.M, self.Z, self.N)

    def code_index(self, alpha: int, delta: int) -> int:
        if self.indexing == "reversed":
            return delta * self.M + alpha
        return alpha * self.p**self.r + delta

    def split_index(self, s: int) -> tuple:
        """Inverse of :meth:`code_index`: returns ``(alpha, delta)``."""
        if not 0 <= s < self.K:
            raise ParameterError(f"code index {s} out of range [0, {self.K})")
        if self.indexing == "reversed":
            delta, alpha = divmod(s, self.M)
        else:
            alpha, delta = divmod(s, self.p**self.r)
        return alpha, delta

    def mvf_spec(self, s: int, beta: int) -> MvfSpec:
        """The function whose sequence is row ``beta`` of code ``s``."""
        alpha, delta = self.split_index(s)
        return MvfSpec(self.p, self.q, self.paths, self.r, gamma=self.gamma, theta=self.theta,
                       alpha=alpha, beta=beta, delta=delta, pmepr_term=self.pmepr_term,
                       strict=self.strict_gamma)


@dataclass(frozen=True, eq=False)
class CodeSet:
    """K codes, each an M x N matrix of phases in Z_q."""

    params: ConstructionParams | None
    codes: np.ndarray = field(repr=False)
    q: int = 0
    claimed: tuple | None = None

    def __post_init__(self):
        codes = np.array(self.codes, dtype=np.int64)
        if codes.ndim != 3 or 0 in codes.shape:
            raise ValueError("codes must be a non-empty K x M x N array")
        q = self.q or (self.params.q if self.params is not None else 0)
        if q < 2:
            raise ValueError("modulus q must be >= 2")
        if codes.min() < 0 or codes.max() >= q:
            raise ValueError(f"phases must lie in [0, {q})")
        codes.setflags(write=False)
        object.__setattr__(self, "codes", codes)
        object.__setattr__(self, "q", int(q))

    def __len__(self) -> int:
        return self.codes.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, CodeSet):
            return NotImplemented
        return self.q == other.q and np.array_equal(self.codes, other.codes)

    @property
    def K(self) -> int:
        return self.codes.shape[0]

    @property
    def M(self) -> int:
        return self.codes.shape[1]

    @property
    def N(self) -> int:
        return self.codes.shape[2]

    def code(self, s: int) -> np.ndarray:
        return self.codes[s]

    def sequence(self, s: int, row: int) -> PhaseSequence:
        return PhaseSequence(self.q, self.codes[s, row])

    def claimed_shape(self) -> tuple | None:
        """The (K, M, Z, N) the set is supposed to meet, if known."""
        if self.claimed is not None:
            return tuple(self.claimed)
        return None if self.params is None else self.params.shape

    def signs(self, s: int) -> list:
        return [self.sequence(s, b).signs() for b in range(self.M)]


def build_code_set(params: ConstructionParams) -> CodeSet:
    p, q, k, r, n = params.p, params.q, params.k, params.r, params.n
    w = q // p
    X = digit_table(p, n + r)
    paths = params.paths
    base = X[:, :n] @ np.asarray(params.gamma, dtype=np.int64) + params.theta
    for pg in paths:
        for u, v in pg.edges:
            base = base + w * X[:, u] * X[:, v]
    heads = X[:, [pg.head for pg in paths]]
    tails = X[:, [pg.tail for pg in paths]]
    offsets = np.array([index_decode(a, p, k).digits for a in range(p**k)], dtype=np.int64)
    head_terms = w * offsets @ heads.T           # (p**k, N), indexed by alpha
    tail_terms = w * offsets @ tails.T           # (p**k, N), indexed by beta
    if params.pmepr_term:
        adj = (offsets[:, :-1] * offsets[:, 1:]).sum(axis=1)
        tail_terms = tail_terms + (w * adj)[:, None]
    if r:
        walsh = np.array([index_decode(d, p, r).digits for d in range(p**r)], dtype=np.int64)
        walsh_terms = w * walsh @ X[:, n:].T    # (p**r, N), indexed by delta
    else:
        walsh_terms = np.zeros((1, X.shape[0]), dtype=np.int64)
    grid = (base[None, None, None, :]
            + head_terms[:, None, None, :]
            + walsh_terms[None, :, None, :]
            + tail_terms[None, None, :, :]) % q   # (alpha, delta, beta, N)
    if params.indexing == "reversed":
        grid = grid.transpose(1, 0, 2, 3)
    return CodeSet(params, grid.reshape(params.K, params.M, params.N), q)


def build_ccc(p: int, q: int, path_sizes: Sequence[int], gamma=None, theta: int = 0, **kw) -> CodeSet:
    """The r = 0 member: a (p**k, p**k, p**n) complete complementary code."""
    if kw.pop("r", 0):
        raise ParameterError("a complete complementary code has no isolated vertices")
    return build_code_set(ConstructionParams(p, q, tuple(path_sizes), 0, gamma=gamma, theta=theta, **kw))


def uncorrelated_pairs(params: ConstructionParams) -> list:
    """Code pairs sharing delta but not alpha; their correlation vanishes at every shift."""
    by_delta: dict = {}
    for s in range(params.K):
        alpha, delta = params.split_index(s)
        by_delta.setdefault(delta, []).append(s)
    return sorted(pair for group in by_delta.values() for pair in combinations(sorted(group), 2))

"""
Exact aperiodic correlation of unit-modulus sequences.

Sequences are stored as phases in Z_q; the entry with phase ``u`` stands for
``zeta_q ** u`` with ``zeta_q = exp(2*pi*1j/q)``. Any correlation of such
sequences is an integer combination of q-th roots of unity, so it is carried
as a histogram of residues (:class:`ResidueSum`) and only turned into a
complex number when a decision has to be made.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np

__all__ = [
    "PhaseSequence",
    "ResidueSum",
    "CorrelationProfile",
    "accs",
    "full_profile",
    "code_ccs",
    "is_zero",
    "roots_of_unity",
    "ZERO_RTOL",
]

# Zero tests accept |value| < ZERO_RTOL * (total mass + 1).
ZERO_RTOL = 1e-9


@lru_cache(maxsize=64)
def _roots(q: int) -> np.ndarray:
    j = np.arange(q)
    # angles reduced to [-pi, pi] keep cos/sin accurate for large q
    ang = 2.0 * np.pi * np.where(2 * j > q, j - q, j) / q
    re, im = np.cos(ang), np.sin(ang)
    # quarter turns come out exact
    re[np.abs(re) < 1e-15] = 0.0
    im[np.abs(im) < 1e-15] = 0.0
    roots = re + 1j * im
    roots.setflags(write=False)
    return roots


def roots_of_unity(q: int) -> np.ndarray:
    """Return ``zeta_q ** j`` for ``j = 0..q-1`` (read-only array)."""
    if q < 1:
        raise ValueError(f"modulus must be positive, got {q}")
    return _roots(int(q))


def _as_phase_array(phases, q: int) -> np.ndarray:
    arr = np.array(phases, dtype=np.int64)
    if arr.ndim != 1:
        raise ValueError("phases must be one-dimensional")
    if arr.size == 0:
        raise ValueError("a sequence needs at least one entry")
    if arr.min() < 0 or arr.max() >= q:
        raise ValueError(f"phases must lie in [0, {q})")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PhaseSequence:
    """A length-N sequence of q-th roots of unity, stored by exponent."""

    q: int
    phases: np.ndarray = field(repr=False)

    def __post_init__(self):
        if int(self.q) < 2:
            raise ValueError(f"modulus q must be >= 2, got {self.q}")
        object.__setattr__(self, "q", int(self.q))
        object.__setattr__(self, "phases", _as_phase_array(self.phases, self.q))

    def __len__(self) -> int:
        return int(self.phases.size)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PhaseSequence):
            return NotImplemented
        return self.q == other.q and np.array_equal(self.phases, other.phases)

    def __hash__(self) -> int:
        return hash((self.q, self.phases.tobytes()))

    def __repr__(self) -> str:
        return f"PhaseSequence(q={self.q}, phases={self.phases.tolist()})"

    @property
    def N(self) -> int:
        return len(self)

    def to_complex(self) -> np.ndarray:
        return roots_of_unity(self.q)[self.phases]

    def signs(self) -> str:
        """Render a binary sequence as a string of '+' and '-'."""
        if self.q != 2:
            raise ValueError("sign rendering needs q == 2")
        return "".join("+-"[v] for v in self.phases)

    @classmethod
    def from_signs(cls, text: str) -> "PhaseSequence":
        chars = [c for c in text if c in "+-"]
        return cls(2, [0 if c == "+" else 1 for c in chars])


@dataclass(frozen=True, eq=False)
class ResidueSum:
    """The complex number ``sum_j counts[j] * zeta_q**j`` with integer counts."""

    q: int
    counts: np.ndarray = field(repr=False)

    def __post_init__(self):
        counts = np.array(self.counts, dtype=np.int64)
        if counts.shape != (int(self.q),):
            raise ValueError(f"counts must have exactly q={self.q} entries")
        counts.setflags(write=False)
        object.__setattr__(self, "q", int(self.q))
        object.__setattr__(self, "counts", counts)

    @classmethod
    def zero(cls, q: int) -> "ResidueSum":
        return cls(q, np.zeros(q, dtype=np.int64))

    @classmethod
    def from_residues(cls, residues, q: int) -> "ResidueSum":
        """Histogram of an array of exponents (reduced mod q)."""
        r = np.asarray(residues, dtype=np.int64) % q
        return cls(q, np.bincount(r.ravel(), minlength=q))

    def __repr__(self) -> str:
        return f"ResidueSum(q={self.q}, counts={self.counts.tolist()})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, ResidueSum):
            return NotImplemented
        return self.q == other.q and np.array_equal(self.counts, other.counts)

    def __hash__(self) -> int:
        return hash((self.q, self.counts.tobytes()))

    def _check(self, other: "ResidueSum"):
        if self.q != other.q:
            raise ValueError(f"modulus mismatch: {self.q} vs {other.q}")

    def __add__(self, other: "ResidueSum") -> "ResidueSum":
        self._check(other)
        return ResidueSum(self.q, self.counts + other.counts)

    def __sub__(self, other: "ResidueSum") -> "ResidueSum":
        self._check(other)
        return ResidueSum(self.q, self.counts - other.counts)

    def __neg__(self) -> "ResidueSum":
        return ResidueSum(self.q, -self.counts)

    def conjugate(self) -> "ResidueSum":
        idx = (-np.arange(self.q)) % self.q
        out = np.zeros(self.q, dtype=np.int64)
        np.add.at(out, idx, self.counts)
        return ResidueSum(self.q, out)

    def rotate(self, k: int) -> "ResidueSum":
        """Multiply by ``zeta_q ** k``."""
        return ResidueSum(self.q, np.roll(self.counts, int(k) % self.q))

    @property
    def mass(self) -> int:
        return int(np.abs(self.counts).sum())

    def value(self) -> complex:
        return complex(np.dot(self.counts.astype(np.float64), roots_of_unity(self.q)))

    def __complex__(self) -> complex:
        return self.value()

    def __abs__(self) -> float:
        return abs(self.value())

    def is_exact_zero(self) -> bool:
        """Exact test: the count polynomial is divisible by the q-th cyclotomic polynomial."""
        if not self.counts.any():
            return True
        return not _poly_mod(self.counts.tolist(), _cyclotomic(self.q))


def is_zero(v: ResidueSum) -> bool:
    """True iff ``|v|`` is below ``ZERO_RTOL * (mass + 1)``."""
    if not v.counts.any():
        return True
    return abs(v.value()) < ZERO_RTOL * (v.mass + 1)


@lru_cache(maxsize=64)
def _cyclotomic(n: int) -> tuple:
    # coefficients low degree first; Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_div_exact(num, list(_cyclotomic(d)))
    return tuple(num)


def _poly_div_exact(num: list, den: list) -> list:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        out[i] = c
        for j, dj in enumerate(den):
            num[i + j] -= c * dj
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


def _poly_mod(num: list, den: tuple) -> list:
    # den is monic; returns remainder with trailing zeros stripped
    num = list(num)
    dd = len(den) - 1
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    rem = num[:dd]
    while rem and rem[-1] == 0:
        rem.pop()
    return rem


def _pair(a: PhaseSequence, b: PhaseSequence):
    if a.q != b.q:
        raise ValueError(f"modulus mismatch: {a.q} vs {b.q}")
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")


def _shift_diff(a: np.ndarray, b: np.ndarray, tau: int) -> np.ndarray:
    # exponents of a[i+tau] * conj(b[i]) over the overlap (shape (..., N-|tau|))
    n = a.shape[-1]
    if tau >= 0:
        return a[..., tau:] - b[..., : n - tau]
    return a[..., : n + tau] - b[..., -tau:]


def accs(a: PhaseSequence, b: PhaseSequence, tau: int) -> ResidueSum:
    """Aperiodic cross-correlation of ``a`` against ``b`` at shift ``tau``.

    For ``0 <= tau < N`` this is ``sum_i a[i+tau] * conj(b[i])``; negative
    shifts use the mirrored sum and ``|tau| >= N`` gives zero.
    """
    _pair(a, b)
    n = len(a)
    if abs(tau) >= n:
        return ResidueSum.zero(a.q)
    return ResidueSum.from_residues(_shift_diff(a.phases, b.phases, int(tau)), a.q)


@dataclass(frozen=True, eq=False)
class CorrelationProfile:
    """Correlation values for every shift in (-N, N).

    ``counts[tau + N - 1]`` holds the residue histogram at shift ``tau``.
    """

    q: int
    N: int
    counts: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.counts.shape != (2 * self.N - 1, self.q):
            raise ValueError("profile table has the wrong shape")
        self.counts.setflags(write=False)

    @property
    def taus(self) -> range:
        return range(-(self.N - 1), self.N)

    def __getitem__(self, tau: int) -> ResidueSum:
        if abs(tau) >= self.N:
            return ResidueSum.zero(self.q)
        return ResidueSum(self.q, self.counts[tau + self.N - 1])

    def __iter__(self) -> Iterator[tuple[int, ResidueSum]]:
        for tau in self.taus:
            yield tau, self[tau]

    def values(self) -> np.ndarray:
        """Complex values ordered by tau = -(N-1) .. N-1."""
        return self.counts.astype(np.float64) @ roots_of_unity(self.q)

    def is_conjugate_symmetric(self) -> bool:
        return all(self[-t] == self[t].conjugate() for t in range(self.N))


def full_profile(a: PhaseSequence, b: PhaseSequence) -> CorrelationProfile:
    _pair(a, b)
    n, q = len(a), a.q
    table = np.zeros((2 * n - 1, q), dtype=np.int64)
    for tau in range(-(n - 1), n):
        d = _shift_diff(a.phases, b.phases, tau) % q
        table[tau + n - 1] = np.bincount(d, minlength=q)
    return CorrelationProfile(q, n, table)


def _as_code(c, q: int) -> np.ndarray:
    if isinstance(c, np.ndarray) and c.ndim == 2:
        arr = c.astype(np.int64, copy=False)
    else:
        rows = [r.phases if isinstance(r, PhaseSequence) else r for r in c]
        arr = np.array(rows, dtype=np.int64)
    if arr.ndim != 2:
        raise ValueError("a code must be an M x N matrix of phases")
    if arr.size and (arr.min() < 0 or arr.max() >= q):
        raise ValueError(f"phases must lie in [0, {q})")
    return arr


def code_ccs(cs, ct, tau: int, q: int) -> ResidueSum:
    """Code-level correlation: the row-wise :func:`accs` summed over all M rows.

    ``cs`` and ``ct`` are M x N phase matrices (arrays or lists of rows).
    """
    a = _as_code(cs, q)
    b = _as_code(ct, q)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    n = a.shape[1]
    if abs(tau) >= n:
        return ResidueSum.zero(q)
    return ResidueSum.from_residues(_shift_diff(a, b, int(tau)), q)


"""
Exhaustive classification of code sets.

Every code pair is correlated at every shift. The bulk scan works on
frequency-domain spectra: for each frequency the K x M spectrum matrix is
multiplied by its conjugate transpose, and one inverse FFT per code pair
returns the code correlation at all shifts at once. Cells are then judged
with the same tolerance as :func:`zccs.seqcore.is_zero`, and every reported
witness is re-evaluated exactly with :func:`zccs.seqcore.code_ccs`.
"""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, field
from typing import Iterator

import numpy as np
import scipy.fft as sfft

from .construct import CodeSet
from .seqcore import ZERO_RTOL, PhaseSequence, ResidueSum, code_ccs, full_profile, roots_of_unity

__all__ = [
    "Witness",
    "ZccsReport",
    "classify",
    "certify",
    "iter_code_correlations",
    "row_pmepr_bound",
    "row_pmepr_bounds",
    "measured_pmepr",
    "measured_pmeprs",
    "column_sequences",
    "DEFAULT_OVERSAMPLE",
]

DEFAULT_OVERSAMPLE = 16
# complex128 cells held per block of the pair scan
_BLOCK_CELLS = 1 << 23


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("THREADS", "")))
    except ValueError:
        return os.cpu_count() or 1


def _as_array(obj, q):
    if isinstance(obj, CodeSet):
        return obj.codes, obj.q
    if q is None:
        raise ValueError("q is required for raw phase arrays")
    try:
        arr = np.array(obj, dtype=np.int64)
    except ValueError as exc:
        raise ValueError(f"ragged code set: {exc}") from None
    if arr.ndim != 3 or 0 in arr.shape:
        raise ValueError("expected a non-empty K x M x N array of phases")
    if arr.min() < 0 or arr.max() >= q:
        raise ValueError(f"phases must lie in [0, {q})")
    return arr, int(q)


def _shift_tol(M: int, N: int) -> np.ndarray:
    # tolerance for every shift tau = -(N-1) .. N-1; mass of a code cell is M * (N - |tau|)
    taus = np.arange(-(N - 1), N)
    return ZERO_RTOL * (M * (N - np.abs(taus)) + 1)


def iter_code_correlations(codes: np.ndarray, q: int) -> Iterator[tuple[int, np.ndarray, np.ndarray]]:
    """Yield ``(s, ts, values)`` blocks covering every pair with ``t >= s``.

    ``values[i, j]`` holds the correlation of code ``s`` with code ``ts[i]``
    at shifts ``-(N-1) .. N-1`` (index ``j``). Pairs with ``t < s`` follow by
    conjugate symmetry: C(t, s)(tau) = conj(C(s, t)(-tau)).
    """
    K, M, N = codes.shape
    L = sfft.next_fast_len(2 * N - 1)
    workers = _workers()
    spec = sfft.fft(roots_of_unity(q)[codes], L, axis=-1, workers=workers)
    spec = np.ascontiguousarray(spec.transpose(2, 0, 1))  # (L, K, M)
    spec_h = spec.conj().transpose(0, 2, 1)                # (L, M, K)
    order = np.r_[L - (N - 1): L, 0:N]
    block = max(1, _BLOCK_CELLS // (L * K))
    for s0 in range(0, K, block):
        s1 = min(K, s0 + block)
        cross = spec[:, s0:s1, :] @ spec_h[:, :, s0:]       # (L, b, K - s0)
        corr = sfft.ifft(cross, axis=0, workers=workers)[order]
        for i, s in enumerate(range(s0, s1)):
            ts = np.arange(s, K)
            yield s, ts, corr[:, i, s - s0:].T


@dataclass(frozen=True)
class Witness:
    """A code pair and shift whose correlation is nonzero."""

    zone: str
    s: int
    t: int
    tau: int
    value: complex
    counts: tuple = field(default=(), repr=False)

    @property
    def magnitude(self) -> float:
        return abs(self.value)

    def as_dict(self) -> dict:
        return {"zone": self.zone, "s": self.s, "t": self.t, "tau": self.tau,
                "abs": self.magnitude, "re": self.value.real, "im": self.value.imag,
                "counts": list(self.counts)}


@dataclass
class ZccsReport:
    K: int
    M: int
    N: int
    q: int
    tau0_diagonal: list
    tau0_diagonal_ok: bool
    tau0_offdiagonal_zero: bool
    typeI_Z: int
    typeII_Z: int
    is_ccc: bool
    typeI_bound_ok: bool
    typeII_count: bool
    max_row_pmepr_bound: float | None = None
    max_col_pmepr_bound: float | None = None
    witnesses: list = field(default_factory=list)
    nonzero_shifts: dict = field(default_factory=dict, repr=False)

    @property
    def shape(self) -> tuple:
        return (self.K, self.M, self.N)

    @property
    def tau0_ok(self) -> bool:
        return self.tau0_diagonal_ok and self.tau0_offdiagonal_zero

    def witness_for(self, Z: int) -> Witness | None:
        """A nonzero cell inside the type-II zone N - Z < |tau| < N, if any."""
        hits = [w for a, w in self.nonzero_shifts.items() if self.N - Z < a < self.N]
        return max(hits, key=lambda w: abs(w.tau)) if hits else None

    def as_dict(self) -> dict:
        d = asdict(self)
        d["tau0_diagonal"] = [float(v) for v in self.tau0_diagonal]
        d["witnesses"] = [w.as_dict() for w in self.witnesses]
        d.pop("nonzero_shifts")
        return d

    def summary(self) -> str:
        lines = [
            f"shape (K, M, N) = {self.shape}, q = {self.q}",
            f"tau=0: diagonal {'== NM' if self.tau0_diagonal_ok else '!= NM'}, "
            f"off-diagonal {'zero' if self.tau0_offdiagonal_zero else 'NONZERO'}",
            f"type-I Z = {self.typeI_Z}, type-II Z = {self.typeII_Z}, CCC = {self.is_ccc}",
            f"type-I bound K <= M*floor(N/Z): {self.typeI_bound_ok}; "
            f"K == M*(N-Z+1) at type-II Z: {self.typeII_count}",
        ]
        if self.max_row_pmepr_bound is not None:
            lines.append(f"max row PMEPR bound {self.max_row_pmepr_bound:.6g}, "
                         f"max column PMEPR bound {self.max_col_pmepr_bound:.6g}")
        for w in self.witnesses:
            lines.append(f"witness [{w.zone}] s={w.s} t={w.t} tau={w.tau} |value|={w.magnitude:.6g}")
        return "\n".join(lines)


def _exact_witness(codes, q, zone, s, t, tau) -> Witness:
    v = code_ccs(codes[s], codes[t], tau, q)
    return Witness(zone, int(s), int(t), int(tau), v.value(), tuple(v.counts.tolist()))


def classify(obj, q: int | None = None, pmepr: bool = True) -> ZccsReport:
    """Correlate every code pair at every shift and report the zones found.

    ``obj`` is a :class:`CodeSet` or a K x M x N array of phases (then ``q``
    is required).
    """
    codes, q = _as_array(obj, q)
    K, M, N = codes.shape
    tol = _shift_tol(M, N)
    shift_abs = np.abs(np.arange(-(N - 1), N))
    nonzero = np.zeros(N, dtype=bool)           # indexed by |tau|, entry 0 unused
    first: dict = {}
    tau0 = np.zeros((K, K), dtype=complex)
    for s, ts, vals in iter_code_correlations(codes, q):
        tau0[s, ts] = vals[:, N - 1]
        tau0[ts, s] = np.conj(vals[:, N - 1])
        bad = np.abs(vals) > tol
        bad[:, N - 1] = False
        hit = bad.any(axis=0)
        if not hit.any():
            continue
        for j in np.flatnonzero(hit & ~nonzero[shift_abs]):
            a = shift_abs[j]
            if not nonzero[a]:
                nonzero[a] = True
                first[a] = (s, int(ts[np.argmax(bad[:, j])]), j - (N - 1))

    nm = N * M
    # the diagonal is an energy; evaluate it exactly rather than from the spectra
    exact_diag = [code_ccs(codes[s], codes[s], 0, q) for s in range(K)]
    diag = np.array([v.value().real for v in exact_diag])
    energy = ResidueSum(q, np.eye(1, q, dtype=np.int64)[0] * nm)
    diag_ok = all((v - energy).is_exact_zero() for v in exact_diag)
    off = np.abs(tau0 - np.diag(np.diag(tau0)))
    off_ok = bool(np.all(off <= ZERO_RTOL * nm))

    typeI = 1
    while typeI < N and not nonzero[typeI]:
        typeI += 1
    typeII = 1
    while typeII < N and not nonzero[N - typeII]:
        typeII += 1

    witnesses = []
    if not diag_ok:
        s = int(np.argmax(np.abs(diag - nm)))
        witnesses.append(_exact_witness(codes, q, "tau0-diagonal", s, s, 0))
    if not off_ok:
        s, t = np.unravel_index(np.argmax(off), off.shape)
        witnesses.append(_exact_witness(codes, q, "tau0-offdiagonal", s, t, 0))
    shifts = {a: _exact_witness(codes, q, "shift", *first[a]) for a in sorted(first)}
    if typeI < N:
        witnesses.append(_relabel(shifts[typeI], "type-I"))
    if typeII < N:
        witnesses.append(_relabel(shifts[N - typeII], "type-II"))

    report = ZccsReport(
        K=K, M=M, N=N, q=q,
        tau0_diagonal=diag.tolist(),
        tau0_diagonal_ok=diag_ok,
        tau0_offdiagonal_zero=off_ok,
        typeI_Z=typeI,
        typeII_Z=typeII,
        is_ccc=diag_ok and off_ok and typeII == N and K == M,
        typeI_bound_ok=K <= M * (N // typeI),
        typeII_count=K == M * (N - typeII + 1),
        witnesses=witnesses,
        nonzero_shifts=shifts,
    )
    if pmepr:
        report.max_row_pmepr_bound = float(row_pmepr_bounds(codes.reshape(K * M, N), q).max())
        cols = codes.transpose(0, 2, 1).reshape(K * N, M)
        report.max_col_pmepr_bound = float(row_pmepr_bounds(cols, q).max())
    return report


def _relabel(w: Witness, zone: str) -> Witness:
    return Witness(zone, w.s, w.t, w.tau, w.value, w.counts)


def certify(report: ZccsReport, Z: int) -> tuple[bool, Witness | None]:
    """Check the type-II conditions at a claimed zone width ``Z``.

    Returns ``(ok, witness)``; the witness is ``None`` when ``ok``.
    """
    if not report.tau0_diagonal_ok:
        return False, next(w for w in report.witnesses if w.zone == "tau0-diagonal")
    if not report.tau0_offdiagonal_zero:
        return False, next(w for w in report.witnesses if w.zone == "tau0-offdiagonal")
    w = report.witness_for(Z)
    return w is None, w


def _aacs_abs(phases: np.ndarray, q: int) -> np.ndarray:
    # |AACS| at shifts 0..N-1 for each row of a (B, N) phase array
    n = phases.shape[-1]
    L = sfft.next_fast_len(2 * n - 1)
    f = sfft.fft(roots_of_unity(q)[phases], L, axis=-1, workers=_workers())
    return np.abs(sfft.ifft(f.real**2 + f.imag**2, axis=-1, workers=_workers())[..., :n])


def row_pmepr_bounds(phases: np.ndarray, q: int) -> np.ndarray:
    """Vectorised :func:`row_pmepr_bound` over the rows of a (B, N) array."""
    phases = np.atleast_2d(np.asarray(phases, dtype=np.int64))
    c = _aacs_abs(phases, q)
    n = phases.shape[-1]
    return (n + 2.0 * c[:, 1:].sum(axis=1)) / n


def row_pmepr_bound(a: PhaseSequence) -> float:
    """``(C(0) + 2 * sum_{tau >= 1} |C(tau)|) / C(0)`` from the exact AACS."""
    prof = full_profile(a, a)
    n = len(a)
    mags = np.abs(prof.values()[n:])
    return float((n + 2.0 * mags.sum()) / n)


def measured_pmeprs(phases: np.ndarray, q: int, oversample: int = DEFAULT_OVERSAMPLE) -> np.ndarray:
    """Peak envelope power over ``oversample * N`` equally spaced instants, divided by N."""
    if oversample < 4:
        raise ValueError("oversample must be at least 4")
    phases = np.atleast_2d(np.asarray(phases, dtype=np.int64))
    n = phases.shape[-1]
    L = oversample * n
    s = sfft.ifft(roots_of_unity(q)[phases], L, axis=-1, workers=_workers()) * L
    return (s.real**2 + s.imag**2).max(axis=-1) / n


def measured_pmepr(a: PhaseSequence, oversample: int = DEFAULT_OVERSAMPLE) -> float:
    return float(measured_pmeprs(a.phases[None, :], a.q, oversample)[0])


def column_sequences(C, q: int) -> list:
    """The N columns of an M x N code, each as a length-M sequence."""
    arr = np.asarray(C, dtype=np.int64)
    if arr.ndim != 2:
        raise ValueError("a code must be an M x N matrix")
    return [PhaseSequence(q, col) for col in arr.T]

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zccs.construct import ConstructionParams, build_code_set
from zccs.seqcore import PhaseSequence, code_ccs
from zccs.verify import (certify, classify, column_sequences, iter_code_correlations, measured_pmepr,
                         measured_pmeprs, row_pmepr_bound, row_pmepr_bounds)

from oracles import brute_pmepr, naive_code_ccs


def example():
    return build_code_set(ConstructionParams(2, 2, (2, 2), 1, pmepr_term=True))


@pytest.mark.parametrize("seed", range(5))
def test_spectral_scan_matches_direct_sums(seed):
    rng = np.random.default_rng(seed)
    q = int(rng.integers(2, 9))
    K, M, N = (int(v) for v in rng.integers(1, 6, 3))
    codes = rng.integers(0, q, (K, M, N))
    seen = set()
    for s, ts, vals in iter_code_correlations(codes, q):
        for t, row in zip(ts, vals):
            seen.add((s, int(t)))
            for j, tau in enumerate(range(-(N - 1), N)):
                exact = code_ccs(codes[s], codes[t], tau, q).value()
                assert abs(row[j] - exact) < 1e-9 * (M * N + 1)
    assert seen == {(s, t) for s in range(K) for t in range(s, K)}


def test_example_report():
    rep = classify(example())
    assert rep.typeII_Z == 31 and not rep.is_ccc
    assert rep.tau0_diagonal == [128.0] * 8
    assert rep.tau0_ok and rep.typeII_count
    assert rep.typeI_bound_ok
    assert rep.max_col_pmepr_bound <= 2 + 1e-9
    ok, w = certify(rep, 31)
    assert ok and w is None
    ok, w = certify(rep, 32)
    assert not ok and abs(w.tau) == 1
    v = code_ccs(example().codes[w.s], example().codes[w.t], w.tau, 2)
    assert abs(v.value()) == pytest.approx(w.magnitude) and not v.is_exact_zero()


def test_single_golay_code():
    rep = classify([[[0, 0], [0, 1]]], q=2)
    assert rep.tau0_diagonal == [4.0]
    assert rep.typeII_Z == 2 and rep.typeI_Z == 2
    # a lone code is complementary, but a complete code set needs K == M
    assert not rep.is_ccc


def test_broken_set_reports_witnesses():
    codes = np.array(example().codes)
    codes[0, 0, 5] ^= 1
    rep = classify(codes, q=2)
    zones = {w.zone for w in rep.witnesses}
    assert "tau0-offdiagonal" in zones or rep.typeII_Z < 31
    ok, w = certify(rep, 31)
    assert not ok
    exact = code_ccs(codes[w.s], codes[w.t], w.tau, 2)
    assert not exact.is_exact_zero()
    assert abs(exact.value() - naive_code_ccs(codes[w.s].tolist(), codes[w.t].tolist(), 2, w.tau)) < 1e-9


def test_bad_diagonal_detected():
    rep = classify([[[0, 0, 0]], [[0, 1, 0]]], q=2, pmepr=False)
    assert rep.tau0_diagonal_ok  # every sequence has energy N
    assert not rep.tau0_offdiagonal_zero
    assert not certify(rep, 1)[0]


def test_classify_input_errors():
    with pytest.raises(ValueError):
        classify([[[0, 1]]])
    with pytest.raises(ValueError):
        classify([[[0, 2]]], q=2)
    with pytest.raises(ValueError):
        classify([[0, 1]], q=2)


def test_pmepr_bound_examples():
    assert row_pmepr_bound(PhaseSequence(2, [0] * 9)) == pytest.approx(9)
    assert row_pmepr_bound(PhaseSequence.from_signs("+++-")) == pytest.approx(2.0)
    assert measured_pmepr(PhaseSequence(2, [0] * 4)) == pytest.approx(4.0)
    assert measured_pmepr(PhaseSequence.from_signs("+-")) <= 2 + 1e-9
    with pytest.raises(ValueError):
        measured_pmepr(PhaseSequence(2, [0, 1]), oversample=2)


@given(st.integers(2, 6), st.lists(st.integers(0, 5), min_size=1, max_size=16))
@settings(max_examples=60, deadline=None)
def test_measured_below_bound(q, phases):
    a = PhaseSequence(q, [v % q for v in phases])
    m = measured_pmepr(a, 16)
    assert m <= row_pmepr_bound(a) + 1e-6
    assert m == pytest.approx(brute_pmepr(a.phases.tolist(), q, 16 * len(a)), abs=1e-9)
    assert row_pmepr_bounds(a.phases[None, :], q)[0] == pytest.approx(row_pmepr_bound(a))


def test_example_columns():
    C = example().codes[0]
    cols = column_sequences(C, 2)
    assert len(cols) == 32 and all(len(c) == 4 for c in cols)
    assert max(row_pmepr_bound(c) for c in cols) <= 2 + 1e-12
    assert measured_pmeprs(C.T, 2).max() <= 2 + 1e-6
    assert len(column_sequences([[0, 1], [1, 0]], 2)) == 2


def test_report_serialises():
    d = classify(example()).as_dict()
    assert d["typeII_Z"] == 31 and d["K"] == 8
    assert "type-II Z = 31" in classify(example()).summary()

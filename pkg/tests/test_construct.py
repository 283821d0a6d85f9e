from pathlib import Path

import numpy as np
import pytest

from zccs.construct import (CodeSet, ConstructionParams, ParameterError, build_ccc, build_code_set,
                            uncorrelated_pairs)
from zccs.mvf import chi
from zccs.seqcore import PhaseSequence, code_ccs, is_zero
from zccs.verify import classify

from oracles import read_sign_fixture

FIXTURE = Path(__file__).parent / "data" / "binary_8_4_31_32.txt"


def example_params(**kw):
    return ConstructionParams(2, 2, (2, 2), 1, pmepr_term=True, **kw)


@pytest.mark.parametrize("indexing", ["standard", "reversed"])
@pytest.mark.parametrize("p,q,sizes,r", [(2, 2, (2, 2), 1), (3, 6, (1, 2), 1), (2, 4, (3,), 2), (4, 4, (1, 1), 0)])
def test_rows_are_chi_of_their_function(indexing, p, q, sizes, r):
    P = ConstructionParams.random(p, q, sizes, r, seed=7, pmepr_term=True, indexing=indexing)
    cs = build_code_set(P)
    assert cs.codes.shape == (P.K, P.M, P.N)
    for s in range(P.K):
        for beta in range(P.M):
            assert np.array_equal(cs.codes[s, beta], chi(P.mvf_spec(s, beta)).phases)


def test_shape_and_count_identity():
    for p in (2, 3, 5):
        for sizes in [(1,), (2, 1), (1, 1, 1)]:
            for r in (0, 1, 2):
                P = ConstructionParams(p, p, sizes, r)
                K, M, Z, N = P.shape
                assert (K, M, N) == (p ** (len(sizes) + r), p ** len(sizes), p ** (sum(sizes) + r))
                assert Z == N - p**r + 1
                assert K == M * (N - Z + 1)


def test_reference_fixture_needs_reversed_layout():
    reference = np.array(read_sign_fixture(FIXTURE))
    rev = build_code_set(example_params(indexing="reversed")).codes
    assert np.array_equal(rev, reference)
    std = build_code_set(example_params()).codes
    assert not np.array_equal(std, reference)
    # the standard family with each path reversed and the paths swapped is the same
    # set of codes, only listed in another order
    P = ConstructionParams(2, 2, (2, 2), 1, perms=((3, 2), (1, 0)), pmepr_term=True)
    alt = build_code_set(P).codes
    assert sorted(map(bytes, alt.astype(np.uint8))) == sorted(map(bytes, reference.astype(np.uint8)))


def test_small_ccc_rows():
    cs = build_code_set(ConstructionParams(2, 2, (2,), 0))
    assert cs.signs(0) == ["+++-", "+-++"]
    rep = classify(cs)
    assert rep.is_ccc and rep.typeI_Z == rep.typeII_Z == 4


def test_two_by_two_kernel():
    cs = build_ccc(2, 2, (1,))
    assert cs.signs(0) == ["++", "+-"]
    assert cs.signs(1) == ["+-", "++"]
    assert classify(cs).is_ccc


@pytest.mark.parametrize("p", [3, 4, 5])
def test_kernels(p):
    rep = classify(build_ccc(p, p, (1,)))
    assert rep.is_ccc and (rep.K, rep.M, rep.N) == (p, p, p)


def test_ccc_rejects_isolated_vertices():
    with pytest.raises(ParameterError):
        build_ccc(2, 2, (1,), r=1)


def test_parameter_errors():
    with pytest.raises(ParameterError, match="q must be a multiple of p"):
        ConstructionParams(2, 3, (2,))
    with pytest.raises(ParameterError):
        ConstructionParams(1, 1, (2,))
    with pytest.raises(ParameterError):
        ConstructionParams(2, 2, (2, 0))
    with pytest.raises(ParameterError):
        ConstructionParams(2, 2, (2,), perms=((0, 0),))
    with pytest.raises(ParameterError):
        ConstructionParams(2, 2, (2,), gamma=(0,))
    with pytest.raises(ParameterError):
        ConstructionParams(2, 4, (1,), gamma=(3,), strict_gamma=True)
    with pytest.raises(ParameterError):
        ConstructionParams(2, 2, (1,), indexing="other")


def test_code_index_roundtrip():
    for indexing in ("standard", "reversed"):
        P = ConstructionParams(3, 3, (1, 1), 1, indexing=indexing)
        seen = set()
        for s in range(P.K):
            a, d = P.split_index(s)
            assert P.code_index(a, d) == s
            seen.add((a, d))
        assert len(seen) == P.K


def test_uncorrelated_pairs_listing():
    P = example_params()
    pairs = uncorrelated_pairs(P)
    assert pairs == [(s, t) for s in range(8) for t in range(s + 1, 8) if (s - t) % 2 == 0]
    assert uncorrelated_pairs(ConstructionParams(2, 2, (1,), 1)) == [(0, 2), (1, 3)]
    assert uncorrelated_pairs(ConstructionParams(3, 3, (1,), 0)) == [(0, 1), (0, 2), (1, 2)]


def test_uncorrelated_pairs_vanish_everywhere():
    for P in (example_params(), example_params(indexing="reversed"),
              ConstructionParams.random(3, 6, (1, 1), 1, seed=3)):
        cs = build_code_set(P)
        for s, t in uncorrelated_pairs(P):
            for tau in range(-(P.N - 1), P.N):
                assert code_ccs(cs.codes[s], cs.codes[t], tau, P.q).is_exact_zero()


def test_pmepr_term_does_not_change_zero_pattern():
    for p, q, sizes, r in [(2, 2, (2, 2), 1), (3, 6, (1, 1, 1), 0), (2, 4, (1, 2), 1)]:
        on = build_code_set(ConstructionParams(p, q, sizes, r, pmepr_term=True)).codes
        off = build_code_set(ConstructionParams(p, q, sizes, r)).codes
        N = on.shape[2]
        for s in range(len(on)):
            for t in range(len(on)):
                for tau in range(-(N - 1), N):
                    assert is_zero(code_ccs(on[s], on[t], tau, q)) == is_zero(code_ccs(off[s], off[t], tau, q))


def test_theta_rotates_every_phase():
    a = build_code_set(ConstructionParams(3, 6, (2,), 1)).codes
    b = build_code_set(ConstructionParams(3, 6, (2,), 1, theta=5)).codes
    assert np.array_equal((a + 5) % 6, b)
    ra, rb = classify(a, q=6, pmepr=False), classify(b, q=6, pmepr=False)
    assert (ra.typeI_Z, ra.typeII_Z, ra.tau0_ok) == (rb.typeI_Z, rb.typeII_Z, rb.tau0_ok)


@pytest.mark.parametrize("seed", range(6))
def test_shuffled_layouts_keep_the_zone(seed):
    P = ConstructionParams.random(2, 4, (2, 1, 1), 1, seed=seed, pmepr_term=bool(seed % 2))
    rep = classify(build_code_set(P), pmepr=False)
    assert rep.tau0_ok and rep.typeII_Z >= P.Z


def test_deterministic_and_immutable():
    P = example_params()
    a, b = build_code_set(P), build_code_set(P)
    assert a == b
    with pytest.raises(ValueError):
        a.codes[0, 0, 0] = 1
    assert isinstance(a.sequence(0, 0), PhaseSequence)
    assert a.claimed_shape() == (8, 4, 31, 32)
    assert CodeSet(None, a.codes, 2).claimed_shape() is None

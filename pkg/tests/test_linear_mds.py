from __future__ import annotations

import itertools
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mdsembed.core_codes import AxisPlane, ExplicitCode, is_mds
from mdsembed.linear_mds import (
    CheckMatrix,
    LinearMdsCode,
    affine_intersection,
    build_check_matrix,
    complete_plane_linear,
    inverse,
    is_prime,
    nullspace,
    rank,
    rref,
    smallest_prime_geq,
    solve,
    subcode_restriction,
    subspace_span,
    verify_mds_matrix,
)

from oracles import all_minors_nonzero, linear_code_words, min_dual_weight


def e(i: int, n: int = 6) -> list[int]:
    """1-based unit vector."""
    v = [0] * n
    v[i - 1] = 1
    return v


def vadd(*vs, p: int = 2) -> list[int]:
    return [sum(x) % p for x in zip(*vs)]


@pytest.mark.parametrize("m, p", [(2, 2), (3, 3), (9, 11), (14, 17), (1, 2)])
def test_smallest_prime_geq(m, p):
    assert smallest_prime_geq(m) == p


def test_smallest_prime_against_trial_division():
    def prime(k):
        return k >= 2 and all(k % j for j in range(2, k))

    for m in range(2, 200):
        p = smallest_prime_geq(m)
        assert prime(p) and all(not prime(k) for k in range(m, p))
        assert is_prime(m) == prime(m)


def test_build_check_matrix_examples():
    assert build_check_matrix(3, 3, 1).rows == ((1, 1, 1),)
    assert build_check_matrix(2, 3, 2).rows == ((1, 0, 1), (0, 1, 1))
    H = build_check_matrix(5, 5, 2)
    assert H.systematic and H.array.shape == (2, 5)
    assert all_minors_nonzero(H.rows, 5)


def test_build_check_matrix_errors():
    with pytest.raises(ValueError):
        build_check_matrix(3, 5, 2)
    with pytest.raises(ValueError):
        build_check_matrix(3, 3, 3)
    with pytest.raises(ValueError):
        build_check_matrix(4, 3, 1)


def test_parity_row_allows_any_length():
    H = build_check_matrix(2, 7, 1)
    assert H.rows == ((1,) * 7,)


def test_verify_mds_matrix_examples():
    assert verify_mds_matrix(CheckMatrix(2, ((1, 0, 1), (0, 1, 1))))
    bad = verify_mds_matrix(CheckMatrix(2, ((1, 0, 0), (0, 1, 0))))
    assert not bad and bad.bad_minor is not None
    assert 2 in bad.bad_minor
    par = verify_mds_matrix(CheckMatrix(3, ((1, 1, 1),)))
    assert par and par.dual_min_weight == 3 and par.dual_bound == 3 and par.dual_exhaustive


def test_verify_mds_matrix_samples_large_field():
    H = build_check_matrix(13, 13, 5)  # 13^5 combinations exceed the exhaustive limit
    rep = verify_mds_matrix(H, samples=2000, seed=3)
    assert rep and not rep.dual_exhaustive and rep.combos_checked == 2000


def test_every_built_matrix_against_determinant_oracle():
    for p in (2, 3, 5, 7, 11, 13):
        for d in range(2, p + 1):
            for t in range(1, d):
                H = build_check_matrix(p, d, t)
                assert H.systematic
                assert np.array_equal(H.array[:, :t], np.eye(t, dtype=np.int64))
                if p <= 7:
                    assert all_minors_nonzero(H.rows, p), (p, d, t)
                assert verify_mds_matrix(H), (p, d, t)


def test_extended_column_matrices():
    for p in (2, 3, 5, 7):
        for t in range(2, p + 1):
            H = build_check_matrix(p, p + 1, t)
            assert all_minors_nonzero(H.rows, p), (p, t)
            assert verify_mds_matrix(H)


@given(st.sampled_from([2, 3, 5]), st.integers(2, 5), st.data())
def test_verify_matches_minor_oracle_on_random_matrices(p, d, data):
    t = data.draw(st.integers(1, d - 1))
    rows = data.draw(st.lists(st.lists(st.integers(0, p - 1), min_size=d, max_size=d), min_size=t, max_size=t))
    rep = verify_mds_matrix(CheckMatrix(p, tuple(map(tuple, rows))))
    expected = all_minors_nonzero(rows, p)
    assert bool(rep) == expected
    # nonzero minors and heavy row combinations are the same condition
    assert (min_dual_weight(rows, p) >= d - t + 1) == expected


@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 5), st.data())
def test_inverse_and_solve(p, n, data):
    M = np.array(data.draw(st.lists(st.lists(st.integers(0, p - 1), min_size=n, max_size=n), min_size=n, max_size=n)))
    b = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=n, max_size=n)))
    if rank(M, p) == n:
        Minv = inverse(M, p)
        assert np.array_equal((M @ Minv) % p, np.eye(n, dtype=np.int64))
        x = solve(M, b, p)
        assert np.array_equal((M @ x) % p, b % p)
    else:
        with pytest.raises(ZeroDivisionError):
            inverse(M, p)
        x = solve(M, b, p)
        brute = [c for c in itertools.product(range(p), repeat=n) if np.array_equal((M @ np.array(c)) % p, b % p)]
        assert (x is None) == (not brute)
        if x is not None:
            assert np.array_equal((M @ x) % p, b % p)
        N = nullspace(M, p)
        assert len(N) == n - rank(M, p)
        assert not ((M @ N.T) % p).any()


def test_rref_pivots():
    R, piv = rref([[2, 4, 1], [1, 2, 2]], 5)
    assert piv == [0, 2]
    assert R[0, 0] == 1 and R[1, 2] == 1


def test_complete_plane_linear_examples():
    par3 = LinearMdsCode(CheckMatrix(3, ((1, 1, 1),)))
    assert complete_plane_linear(par3, AxisPlane.from_mapping(3, {0: 1, 1: 2})) == (1, 2, 0)
    L = LinearMdsCode(build_check_matrix(2, 3, 2))
    assert complete_plane_linear(L, AxisPlane.from_mapping(3, {2: 1})) == (1, 1, 1)
    assert complete_plane_linear(L, AxisPlane.from_mapping(3, {2: 0})) == (0, 0, 0)


def test_complete_plane_linear_errors():
    L = LinearMdsCode(build_check_matrix(2, 3, 2))
    with pytest.raises(ValueError):
        complete_plane_linear(L, AxisPlane.from_mapping(3, {0: 1, 2: 1}))
    with pytest.raises(ValueError):
        complete_plane_linear(L, AxisPlane.from_mapping(3, {2: 5}))


@given(st.sampled_from([(5, 4, 2), (7, 5, 3), (3, 4, 1), (5, 5, 4)]), st.data())
def test_completion_is_the_unique_codeword_on_the_plane(params, data):
    p, d, t = params
    L = LinearMdsCode(build_check_matrix(p, d, t))
    fixed = data.draw(st.lists(st.integers(0, d - 1), min_size=d - t, max_size=d - t, unique=True))
    values = data.draw(st.lists(st.integers(0, p - 1), min_size=d - t, max_size=d - t))
    plane = AxisPlane.from_mapping(d, dict(zip(fixed, values)))
    y = complete_plane_linear(L, plane)
    assert L.contains(y) and plane.contains(y)
    words = [w for w in linear_code_words(L.matrix.rows, p) if plane.contains(w)]
    assert words == [y]


def test_vector_alphabet_completion():
    L = LinearMdsCode(build_check_matrix(2, 3, 2), n=6)
    y = complete_plane_linear(L, AxisPlane.from_mapping(3, {2: tuple(e(5))}))
    assert y == (tuple(e(5)),) * 3


def test_t2_enumerated_codes_agree_with_set_level_mds():
    for p in (2, 3, 5, 7):
        for d in range(3, min(p, 5) + 1):
            L = LinearMdsCode(build_check_matrix(p, d, 2))
            C = L.explicit()
            assert set(C.words) == set(linear_code_words(L.matrix.rows, p))
            assert len(C) == p ** (d - 2)
            assert is_mds(C, 2)


def test_subspace_span_examples():
    S0 = subspace_span([], 2, 6)
    assert S0.dim == 0 and S0.contains([0] * 6)
    W = subspace_span([vadd(e(1), e(5)), vadd(e(3), e(5))], 2, 6)
    assert W.dim == 2
    assert W.contains(vadd(e(1), e(3)))
    assert sorted(tuple(x) for x in W.elements()) == sorted(
        map(tuple, ([0] * 6, vadd(e(1), e(5)), vadd(e(3), e(5)), vadd(e(1), e(3))))
    )
    assert not W.contains(e(5))
    assert subspace_span([e(1, 3), [2, 0, 0]], 3, 3).dim == 1


def test_subspace_equality_and_cosets():
    W1 = subspace_span([[1, 1, 0], [0, 1, 1]], 2, 3)
    W2 = subspace_span([[1, 0, 1], [1, 1, 0]], 2, 3)
    assert W1 == W2 and hash(W1) == hash(W2)
    assert W1.same_coset([1, 0, 0], [0, 1, 0])
    assert not W1.same_coset([1, 0, 0], [0, 0, 0])


def test_subspace_span_length_check():
    with pytest.raises(ValueError):
        subspace_span([[1, 0]], 2, 3)


def test_subcode_restriction_examples():
    L = LinearMdsCode(build_check_matrix(2, 3, 2), n=6)
    W = subspace_span([vadd(e(1), e(5)), vadd(e(3), e(5))], 2, 6)
    anchor = [e(5)] * 3
    S = subcode_restriction(L, W, anchor)
    assert S.contains(anchor) and S.cardinality == 4
    assert sorted(S.iter_words()) == sorted(tuple(tuple(vadd(x, e(5))) for _ in range(3)) for x in W.elements())

    whole = subspace_span([e(i) for i in range(1, 7)], 2, 6)
    full = subcode_restriction(L, whole)
    assert full.cardinality == L.size == 64
    assert set(full.iter_words()) == set(L.iter_words())

    w_bar = [e(1), e(3), e(5)]
    with pytest.raises(ValueError):
        subcode_restriction(L, W, w_bar)
    free = subcode_restriction(L, W, w_bar, free_standing=True)
    assert free.contains(w_bar)
    assert L.syndrome(w_bar).any()


@given(st.sampled_from([(2, 3, 2, 4), (3, 3, 1, 3), (3, 3, 2, 2), (2, 4, 1, 3)]), st.data())
def test_subcode_cardinality_by_enumeration(params, data):
    p, d, t, n = params
    L = LinearMdsCode(build_check_matrix(p, d, t), n=n)
    vecs = data.draw(st.lists(st.lists(st.integers(0, p - 1), min_size=n, max_size=n), max_size=3))
    W = subspace_span(vecs, p, n)
    rng = random.Random(data.draw(st.integers(0, 1000)))
    base = np.array([L.to_word(L.info_to_word(np.array([[rng.randrange(p) for _ in range(n)] for _ in range(d - t)])))])
    S = subcode_restriction(L, W, base[0])
    words = set(S.iter_words())
    assert len(words) == S.cardinality == (p**W.dim) ** (d - t)
    Wset = {tuple(x) for x in W.elements()}
    for Y in words:
        assert L.contains(Y)
        diff = (np.array(Y) - np.array(base[0])) % p
        assert all(tuple(r) in Wset for r in diff)
    # MDS on its own subcube
    alph = tuple(tuple(S.coordinate_alphabet(j)) for j in range(d))
    assert is_mds(ExplicitCode(alph, frozenset(words)), t)


@given(st.data())
def test_affine_intersection_against_enumeration(data):
    p, n = data.draw(st.sampled_from([(2, 4), (3, 3)]))
    vec = st.lists(st.integers(0, p - 1), min_size=n, max_size=n)
    a, b = data.draw(vec), data.draw(vec)
    S = data.draw(st.lists(vec, max_size=2))
    T = data.draw(st.lists(vec, max_size=2))

    def affine(x, D):
        out = set()
        for c in itertools.product(range(p), repeat=len(D)):
            out.add(tuple((np.array(x) + (np.array(c) @ np.array(D).reshape(len(D), n) if D else 0)) % p))
        return out

    common = affine(a, S) & affine(b, T)
    pt = affine_intersection(a, np.array(S).reshape(-1, n), b, np.array(T).reshape(-1, n), p)
    assert (pt is None) == (not common)
    if pt is not None:
        assert tuple(int(x) for x in pt) in common


@given(st.sampled_from([2, 3, 5]), st.integers(2, 5), st.data())
def test_kernel_scan_dual_weight_matches_enumeration(p, d, data):
    from oracles import min_dual_weight_exact

    t = data.draw(st.integers(1, d - 1))
    rows = data.draw(st.lists(st.lists(st.integers(0, p - 1), min_size=d, max_size=d), min_size=t, max_size=t))
    if all_minors_nonzero(rows, p):
        assert min_dual_weight_exact(rows, p) == min_dual_weight(rows, p) >= d - t + 1
    else:
        assert min_dual_weight_exact(rows, p) < d - t + 1 or min_dual_weight(rows, p) < d - t + 1

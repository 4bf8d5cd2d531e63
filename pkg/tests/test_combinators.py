from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mdsembed.combinators import (
    NotMdsError,
    Subcube,
    extend_dimension,
    flatten,
    force_point_latin,
    generalized_product,
    mcneish_product,
    permute_coordinate,
    relabel,
    switch_subcode,
)
from mdsembed.core_codes import ExplicitCode, is_mds, retract
from mdsembed.embed_latin import modular_sum_code
from mdsembed.fixtures import C3_CELLS, L1, L2, SWITCHES, a_code, square_code, u_codes

from oracles import brute_is_mds, is_latin_square, random_latin_square, random_switch_case, square_words


def latin(rows) -> ExplicitCode:
    q = len(rows)
    return ExplicitCode.uniform(q, 3, square_words(rows))


def test_mcneish_order_six():
    M = mcneish_product(modular_sum_code(2, 3), modular_sum_code(3, 3))
    assert len(M) == 36 == (2 * 3) ** 2
    assert is_mds(M, 1)
    F = flatten(M)
    assert F.order == 6 and brute_is_mds(F, 1)


def test_mcneish_with_trivial_factor():
    M1 = a_code()
    one = ExplicitCode.uniform(1, 3, [(0, 0, 0)])
    M = mcneish_product(M1, one)
    assert len(M) == len(M1)
    assert {tuple(s[0] for s in w) for w in M.words} == set(M1.words)


def test_mcneish_cardinality_larger_t():
    from mdsembed.linear_mds import LinearMdsCode, build_check_matrix

    M1 = LinearMdsCode(build_check_matrix(3, 3, 2)).explicit()
    M2 = ExplicitCode.uniform(2, 3, [(0, 0, 0), (1, 1, 1)])
    M = mcneish_product(M1, M2, t=2)
    assert len(M) == (3 * 2) ** 1
    assert is_mds(M, 2)


def test_mcneish_rejects_non_mds():
    bad = ExplicitCode.uniform(2, 3, [(0, 0, 0)])
    with pytest.raises(NotMdsError):
        mcneish_product(bad, modular_sum_code(2, 3))


def test_generalized_product_reproduces_first_square():
    F = flatten(generalized_product(a_code(), 2, u_codes()))
    assert set(F.words) == square_words(L1)
    assert (0, 0, 0) in F and (3, 3, 8) in F and (8, 8, 3) in F


def test_generalized_product_with_equal_inner_codes_is_mcneish():
    U = modular_sum_code(3, 3)
    G = generalized_product(modular_sum_code(2, 3), 2, {0: U, 1: U})
    assert G == mcneish_product(modular_sum_code(2, 3), U)


def test_generalized_product_order_four():
    B = modular_sum_code(2, 3)
    U = {0: latin([[0, 1], [1, 0]]), 1: latin([[1, 0], [0, 1]])}
    F = flatten(generalized_product(B, 2, U))
    assert F.order == 4 and is_mds(F, 1) and len(F) == 16


def test_generalized_product_keyed_on_whole_word():
    B = modular_sum_code(2, 3)
    squares = {w: latin(random_latin_square(3, random.Random(i))) for i, w in enumerate(sorted(B.words))}
    F = flatten(generalized_product(B, None, squares))
    assert is_mds(F, 1)


def test_generalized_product_requires_shared_alphabets():
    U = {0: modular_sum_code(2, 3), 1: modular_sum_code(3, 3)}
    with pytest.raises(ValueError):
        generalized_product(modular_sum_code(2, 3), 2, U)


def test_extend_dimension_example():
    M = ExplicitCode.uniform(3, 2, [(x, (3 - x) % 3) for x in range(3)])
    E = extend_dimension(M)
    assert len(E) == 9 and is_mds(E, 1)
    assert retract(E, 2, 0) == M


def test_extend_dimension_trivial_order():
    M = ExplicitCode.uniform(1, 2, [(0, 0)])
    assert set(extend_dimension(M).words) == {(0, 0, 0)}


@pytest.mark.parametrize("q", [2, 3, 4, 5])
@pytest.mark.parametrize("d", [2, 3])
def test_extend_dimension_retracts(q, d):
    rng = random.Random(q * 10 + d)
    base = modular_sum_code(q, d)
    perm = rng.sample(range(q), q)
    M = ExplicitCode.uniform(q, d, relabel(base, [None] * (d - 1) + [dict(zip(range(q), perm))]).words)
    for a0 in range(q):
        E = extend_dimension(M, shift=a0)
        assert is_mds(E, 1)
        assert retract(E, d, a0) == M
        for a in range(q):
            shifted = {w[:-1] + ((w[-1] + a - a0) % q,) for w in M.words}
            assert set(retract(E, d, a).words) == shifted


def test_switch_reproduces_second_square():
    s = SWITCHES[0]
    C = square_code(L1, (tuple(range(9)),) * 3)
    sub = Subcube((s["rows"], s["cols"], s["symbols"]))
    C1 = sub.intersect(C)
    C2 = permute_coordinate(C1, s["coord"], s["perm"])
    out = switch_subcode(C, C1, C2, subcube=sub)
    assert set(out.words) == square_words(L2)
    assert (0, 1, 3) in out and (3, 4, 1) in out


def test_identity_switch():
    C = square_code(L1, (tuple(range(9)),) * 3)
    sub = Subcube(((0, 3, 6), (1, 4, 7), (1, 3, 7)))
    C1 = sub.intersect(C)
    assert switch_subcode(C, C1, C1, subcube=sub) == C


def _apply(C, s):
    sub = Subcube((s["rows"], s["cols"], s["symbols"]))
    C1 = sub.intersect(C)
    return switch_subcode(C, C1, permute_coordinate(C1, s["coord"], s["perm"]), subcube=sub)


def test_disjoint_switches_commute():
    C = square_code(L1, (tuple(range(9)),) * 3)
    s1, s2 = SWITCHES[0], SWITCHES[1]
    assert _apply(_apply(C, s1), s2) == _apply(_apply(C, s2), s1)


def test_switch_rejects_non_subcode():
    C = square_code(L1, (tuple(range(9)),) * 3)
    sub = Subcube(((0, 1, 2), (0, 1, 2), (0, 1, 2)))
    C1 = sub.intersect(C)
    with pytest.raises(ValueError):
        switch_subcode(C, C1.with_words(list(C1.words)[:-1]), C1, subcube=sub)
    bad_sub = Subcube(((0, 1), (0, 1), (0, 1)))
    with pytest.raises(NotMdsError):
        switch_subcode(C, bad_sub.intersect(C), bad_sub.intersect(C), subcube=bad_sub)


def test_force_point_examples():
    C = latin([[(r + c) % 3 for c in range(3)] for r in range(3)])
    whole = Subcube((tuple(range(3)),) * 3)
    assert force_point_latin(C, whole, (0, 0, 0)) == C
    out = force_point_latin(C, whole, (0, 0, 1))
    swap = {0: 1, 1: 0, 2: 2}
    assert set(out.words) == {(r, c, swap[(r + c) % 3]) for r in range(3) for c in range(3)}
    assert (0, 0, 1) in out and is_mds(out, 1)


def test_force_point_rejects_point_outside_subcube():
    C = square_code(L1, (tuple(range(9)),) * 3)
    with pytest.raises(ValueError):
        force_point_latin(C, Subcube(((0, 3, 6), (1, 4, 7), (1, 3, 7))), (1, 1, 1))


def test_force_points_of_partial_square():
    C = square_code(L1, (tuple(range(9)),) * 3)
    for s in SWITCHES:
        C = force_point_latin(C, Subcube((s["rows"], s["cols"], s["symbols"])), s["target"])
    assert is_mds(C, 1)
    assert all((r, c, x) in C for (r, c), x in C3_CELLS.items())


@given(st.integers(0, 10**6))
def test_force_point_is_local(seed):
    rng = random.Random(seed)
    words, q, sets, _ = random_switch_case(rng)
    C = ExplicitCode.uniform(q, 3, words)
    sub = Subcube(sets)
    u = (rng.choice(sets[0]), rng.choice(sets[1]), rng.choice(sets[2]))
    out = force_point_latin(C, sub, u)
    assert u in out and is_mds(out, 1)
    assert all(sub.contains(w) for w in C.words ^ out.words)


@given(st.integers(0, 10**6))
def test_random_switches_stay_latin(seed):
    words, q, sets, replacement = random_switch_case(random.Random(seed))
    C = ExplicitCode.uniform(q, 3, words)
    sub = Subcube(sets)
    C1 = sub.intersect(C)
    out = switch_subcode(C, C1, C.with_words(replacement), subcube=sub)
    assert len(out) == len(C)
    rows = [[None] * q for _ in range(q)]
    for r, c, x in out.words:
        rows[r][c] = x
    assert is_latin_square(rows)
    # words away from the subcube are untouched
    assert {w for w in C.words if not sub.contains(w)} == {w for w in out.words if not sub.contains(w)}


def test_subcube_disjointness():
    a = Subcube(((0, 1), (0, 1)))
    assert a.disjoint_from(Subcube(((2, 3), (0, 1))))
    assert not a.disjoint_from(Subcube(((1, 2), (1, 2))))

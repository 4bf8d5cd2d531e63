"""Acceptance gate: one test per criterion, each timed against its budget.

Run with ``pytest tests/test_acceptance.py`` (or execute this file); the
terminal summary prints a PASS/FAIL line per criterion.
"""

from __future__ import annotations

import itertools
import random
import sys
import time

import pytest

from mdsembed.combinators import (
    Subcube,
    extend_dimension,
    flatten,
    generalized_product,
    mcneish_product,
    permute_coordinate,
    switch_subcode,
)
from mdsembed.core_codes import AxisPlane, ExplicitCode, code_distance, count_planes, is_mds, retract
from mdsembed.embed_general import build_patched_code, enumerate_patched, oracle_contains, verify_patched
from mdsembed.embed_latin import embed_partial_latin, modular_sum_code
from mdsembed.fixtures import C3_CELLS, L1, SQUARES, SWITCHES, a_code, c3_code, square_code, square_from_code, u_codes
from mdsembed.linear_mds import LinearMdsCode, build_check_matrix, verify_mds_matrix

from oracles import (
    all_minors_nonzero,
    brute_is_mds,
    min_dual_weight_exact,
    random_latin_square,
    random_partial_code,
    random_switch_case,
)

Q9 = (tuple(range(9)),) * 3


class Timer:
    def __init__(self, budget: float):
        self.budget = budget

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.budget, f"took {self.elapsed:.2f}s, budget {self.budget}s"


def test_ac1_fixture_final_square():
    with Timer(1.0):
        C = square_code(SQUARES["L5"], Q9)
        rep = is_mds(C, 1)
        assert rep and rep.exhaustive and C.order == 9 and len(C) == 81
        for (r, c), x in C3_CELLS.items():
            assert (r, c, x) in C
        assert C3_CELLS == {(0, 0): 0, (0, 1): 3, (0, 2): 6, (1, 0): 3, (1, 2): 0, (2, 1): 6}


def test_ac2_generalized_product_reproduction():
    with Timer(1.0):
        F = flatten(generalized_product(a_code(), 2, u_codes()))
        got = square_from_code(F)
        assert sum(got[r][c] == L1[r][c] for r in range(9) for c in range(9)) == 81


def test_ac3_switching_replay():
    with Timer(1.0):
        C = square_code(L1, Q9)
        for k, s in enumerate(SWITCHES):
            sub = Subcube((s["rows"], s["cols"], s["symbols"]))
            C1 = sub.intersect(C)
            C = switch_subcode(C, C1, permute_coordinate(C1, s["coord"], s["perm"]), 1, sub)
            name = f"L{k + 2}"
            assert C == square_code(SQUARES[name], Q9), name
            assert is_mds(C, 1) and C.order == 9


def test_ac4_partial_square_embedding():
    with Timer(1.0):
        C3 = c3_code()
        cert = embed_partial_latin(C3)
        out = cert.output.code
        assert cert.order == 9 <= 3 ** (3 - 1)
        rep = is_mds(out, 1)
        assert rep and rep.exhaustive
        for w in C3.words:
            assert tuple(cert.injections[i][s] for i, s in enumerate(w)) in out
        assert cert.verify()


def test_ac5_exhaustive_general_embedding():
    with Timer(10.0):
        C = ExplicitCode.uniform(2, 3, [(0, 0, 0), (1, 1, 1)])
        P = build_patched_code(C, 2)
        assert P.q_prime == 64
        E = enumerate_patched(P)
        assert len(E) == 64
        rep = is_mds(E, 2)
        assert rep and rep.exhaustive and rep.planes_checked == count_planes(64, 3, 2) == 192
        # exactly one hit per plane, counted directly
        for j in range(3):
            hits = {}
            for w in E.words:
                hits[w[j]] = hits.get(w[j], 0) + 1
            assert len(hits) == 64 and set(hits.values()) == {1}
        for w in C.words:
            Y = P.embedding.embed_word(w)
            assert tuple(tuple(int(x) for x in row) for row in Y) in E
        assert verify_patched(P, C, "exhaustive")


def test_ac6_sampled_general_embedding():
    with Timer(60.0):
        rng = random.Random(2024)
        codes = []
        while len(codes) < 20:
            k = rng.randint(2, 5)
            words = random_partial_code(3, 4, 3, k, rng)
            if len(words) == k:
                codes.append(ExplicitCode.uniform(3, 4, words))
        failures = 0
        for idx, C in enumerate(codes):
            assert len(C) <= 5 and code_distance(C) >= 3
            P = build_patched_code(C, 2)
            assert all(c.ok for c in P.certificates)
            for w in C.words:
                failures += not oracle_contains(P, P.embedding.embed_word(w))
            rep = verify_patched(P, C, "sample", budget=1000, seed=idx)
            failures += not rep
            assert rep.planes_checked == 1000, rep.summary()
        assert failures == 0


def test_ac7_combinator_invariants():
    with Timer(30.0):
        M = flatten(mcneish_product(modular_sum_code(2, 3), square_code(random_latin_square(3, random.Random(1)))))
        assert M.order == 6 and len(M) == 36 and is_mds(M, 1) and brute_is_mds(M, 1)

        rng = random.Random(7)
        for q in (2, 3, 4, 5):
            for d in (2, 3):
                base = modular_sum_code(q, d)
                perm = dict(zip(range(q), rng.sample(range(q), q)))
                Mq = ExplicitCode.uniform(q, d, (w[:-1] + (perm[w[-1]],) for w in base.words))
                for a0 in range(q):
                    out = extend_dimension(Mq, shift=a0)
                    assert is_mds(out, 1)
                    assert retract(out, d, a0) == Mq
                    for a in range(q):
                        assert set(retract(out, d, a).words) == {
                            w[:-1] + ((w[-1] + a - a0) % q,) for w in Mq.words
                        }

        failures = 0
        for _ in range(100):
            words, q, sets, replacement = random_switch_case(rng)
            C = ExplicitCode.uniform(q, 3, words)
            sub = Subcube(sets)
            out = switch_subcode(C, sub.intersect(C), C.with_words(replacement), 1, sub)
            failures += not is_mds(out, 1)
        assert failures == 0


def test_ac8_linear_algebra_suite():
    with Timer(60.0):
        failures = []
        for p in (2, 3, 5, 7, 11, 13):
            for d in range(2, p + 1):
                for t in range(1, d):
                    H = build_check_matrix(p, d, t)
                    rep = verify_mds_matrix(H)
                    minors = rep.minors_checked == len(list(itertools.combinations(range(d), t)))
                    dual = min_dual_weight_exact(H.rows, p)
                    if not (rep and minors and dual >= d - t + 1):
                        failures.append((p, d, t))
                    if p <= 5 and not all_minors_nonzero(H.rows, p):
                        failures.append((p, d, t, "det"))
        for p in (2, 3, 5, 7):
            for d in range(3, p + 1):
                C = LinearMdsCode(build_check_matrix(p, d, 2)).explicit()
                if not (is_mds(C, 2) and len(C) == p ** (d - 2)):
                    failures.append((p, d, 2, "set-level"))
        assert failures == []


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))

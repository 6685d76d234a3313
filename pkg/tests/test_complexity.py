import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finspace.certificates import verify_certificate
from finspace.complexity import (cat, cc, cc_m, homotopy_cover_bound, inequality_report,
                                 section_feasible, square)
from finspace.corpus import random_connected_poset
from finspace.errors import NotPathConnected
from finspace.homotopy import core, is_contractible
from finspace.poset import antichain, chain, fence, opposite, point
from oracles import brute_section, pair_leq

seeds = st.integers(0, 10_000)


def pair(P, x, y):
    return (P.index(x), P.index(y))


def down_region(P, S):
    n = P.n
    pairs = [(a, b) for a in range(n) for b in range(n)]
    return [p for p in pairs if any(pair_leq(P, p, s) for s in S)]


def test_two_maximal_pairs_never_feasible(circle):
    tops = [pair(circle, x, y) for x in "cd" for y in "cd"]
    for S in itertools.combinations(tops, 2):
        for m in range(0, 7):
            assert section_feasible(circle, S, m) is None


def test_off_diagonal_infeasible_at_length_zero(circle):
    assert section_feasible(circle, [pair(circle, "c", "d")], 0) is None
    assert section_feasible(circle, [pair(circle, "c", "c")], 0) is None


def test_c_to_d_needs_length_four(circle):
    S = [pair(circle, "c", "d")]
    assert section_feasible(circle, S, 3) is None
    assert brute_section(circle, down_region(circle, S), 3) is None
    table = section_feasible(circle, S, 4)
    assert table is not None
    assert brute_section(circle, down_region(circle, S), 4) is not None
    n = circle.n
    for q, path in table.items():
        assert (path[0], path[-1]) == (q // n, q % n)
    for q in table:
        for r in table:
            if square(circle).leq(q, r):
                assert all(circle.leq(a, b) for a, b in zip(table[q], table[r]))


def test_cc_m_examples(circle):
    assert cc_m(circle, 0).value is None
    for m in range(4):
        assert cc_m(point(), m).value == 1
    res = cc_m(circle, 4)
    assert res.value == 4 and verify_certificate(circle, res.certificate)


def test_cc_examples(circle, two_five):
    b = cc(fence(3))
    assert (b.lower, b.upper, b.exact) == (1, 1, True)
    b = cc(circle, 4)
    assert (b.lower, b.upper, b.exact, b.m_at_upper) == (4, 4, True, 4)
    assert b.upper <= 4 and cc(two_five).upper <= 4


def test_cat_examples(two_five):
    assert cat(two_five).value == 2
    assert cat(opposite(two_five)).value == 5
    assert cat(chain(3)).value == 1
    assert cat(fence(4)).value == 1


def test_inequality_reports(circle, two_five):
    assert inequality_report(circle, 4).line() == "2 <= 4 <= 4 <= 4"
    rep = inequality_report(fence(3))
    assert (rep.cat, rep.cc.upper, rep.cat_square) == (1, 1, 1) and rep.max_bound == 4
    rp, rop = inequality_report(two_five), inequality_report(opposite(two_five))
    assert rp.cc.upper <= 4 < 5 <= rop.cc.lower


def test_requires_path_connected():
    with pytest.raises(NotPathConnected):
        cc_m(antichain(2), 1)


def test_threads_give_same_answer(two_five):
    a = cc_m(opposite(two_five), 4)
    b = cc_m(opposite(two_five), 4, workers=3)
    assert (a.value, a.family) == (b.value, b.family)


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_feasibility_monotone(seed):
    r = random.Random(seed)
    P = random_connected_poset(5, r)
    tops = square(P).maximal_elements()
    S = r.sample(tops, min(len(tops), r.randint(1, 3)))
    m = r.randint(0, 4)
    if section_feasible(P, S, m) is not None:
        assert section_feasible(P, S, m + 1) is not None
        for k in range(1, len(S)):
            for T in itertools.combinations(S, k):
                assert section_feasible(P, T, m) is not None


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_pruning_does_not_change_answers(seed):
    r = random.Random(seed)
    P = random_connected_poset(5, r)
    tops = square(P).maximal_elements()
    S = r.sample(tops, min(len(tops), r.randint(1, 3)))
    for m in range(4):
        a = section_feasible(P, S, m) is not None
        assert a == (section_feasible(P, S, m, prune=False) is not None)


@given(seeds)
@settings(max_examples=40, deadline=None)
def test_cover_of_max_pairs_covers_square(seed):
    r = random.Random(seed)
    P = random_connected_poset(5, r)
    P2 = square(P)
    tops = P2.maximal_elements()
    gens = [[t for t in tops if r.random() < 0.5] for _ in range(r.randint(1, 4))]
    opens = [P2.down_mask(sum(1 << t for t in g)) for g in gens]
    union = 0
    for o in opens:
        union |= o
    covers_max = set(tops) <= {t for g in gens for t in g}
    assert (union == P2.full_mask) == covers_max


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_bracket_properties(seed):
    r = random.Random(seed)
    P = random_connected_poset(6, r)
    b = cc(P)
    k = len(P.maximal_elements())
    assert b.lower <= (b.upper or b.lower)
    if b.upper is not None:
        assert b.upper <= k * k
        assert verify_certificate(P, b.certificate)
    assert cat(P).value <= k
    assert (b.exact and b.upper == 1) == is_contractible(P)


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_cc_equals_cc_of_core(seed):
    r = random.Random(seed)
    P = random_connected_poset(6, r)
    C, _ = core(P)
    a, b = cc(P), cc(C)
    assert a.exact and b.exact
    assert a.upper == b.upper
    assert homotopy_cover_bound(P)[0] == homotopy_cover_bound(C)[0]


def test_cc_m_non_increasing_on_random():
    r = random.Random(7)
    for _ in range(20):
        P = random_connected_poset(5, r)
        vals = [cc_m(P, m).value for m in range(6)]
        finite = [v if v is not None else float("inf") for v in vals]
        assert all(x >= y for x, y in zip(finite, finite[1:])), vals

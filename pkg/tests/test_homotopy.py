import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finspace.corpus import circle_model, random_connected_poset, random_poset
from finspace.errors import EmptyPoset
from finspace.homotopy import (MapPoint, ZigzagPath, constant_map, core, endpoints, hom_poset,
                               homotopic, homotopy_fence, identity_map, is_contractible,
                               is_contractible_in, is_path_connected, monotone_maps, path_space,
                               zigzag_fence)
from finspace.poset import antichain, chain, fence, isomorphic, point, product
from oracles import isomorphic_brute, transfer_count

seeds = st.integers(0, 10_000)


def test_path_space_zero_is_P(circle):
    assert isomorphic(path_space(circle, 0), circle) is not None


def test_path_space_fence1():
    PS = path_space(fence(1), 1)
    assert list(PS.labels) == [(0, 0), (0, 1), (1, 1)]


def test_no_path_from_c_up_to_d(circle):
    c, d = circle.index("c"), circle.index("d")
    PS = path_space(circle, 2)
    assert not any(lab[0] == "c" and lab[2] == "d" for lab in PS.labels)
    assert all(not (p[0] == c and p[2] == d) for p in
               [tuple(circle.index(v) for v in lab) for lab in PS.labels])


def test_endpoints(circle):
    a, b, c = (circle.index(x) for x in "abc")
    assert endpoints(ZigzagPath((c, c, c))) == (c, c)
    assert endpoints(ZigzagPath((a, c, b))) == (a, b)


@given(seeds, st.integers(0, 3))
@settings(max_examples=30, deadline=None)
def test_endpoints_order_preserving(seed, m):
    P = random_poset(random.Random(seed).randint(1, 4), random.Random(seed))
    PS = path_space(P, m)
    paths = [tuple(P.index(v) for v in lab) for lab in PS.labels]
    for i, p in enumerate(paths):
        for j, q in enumerate(paths):
            if PS.leq(i, j):
                (x, y), (u, v) = endpoints(p), endpoints(q)
                assert P.leq(x, u) and P.leq(y, v)


@given(seeds, st.integers(0, 4))
@settings(max_examples=40, deadline=None)
def test_path_count_matches_transfer_matrix(seed, m):
    r = random.Random(seed)
    P = random_poset(r.randint(1, 5), r)
    assert path_space(P, m).n == transfer_count(P, m)


@given(seeds, st.integers(0, 3))
@settings(max_examples=30, deadline=None)
def test_path_space_embeds_by_repeating_last_value(seed, m):
    r = random.Random(seed)
    P = random_poset(r.randint(1, 4), r)
    A, B = path_space(P, m), path_space(P, m + 1)
    index = {lab: i for i, lab in enumerate(B.labels)}
    emb = [index[lab + (lab[-1],)] for lab in A.labels]
    for i in range(A.n):
        assert endpoints(B.labels[emb[i]]) == endpoints(A.labels[i])
        for j in range(A.n):
            assert A.leq(i, j) == B.leq(emb[i], emb[j])


def test_hom_poset_examples(circle):
    assert isomorphic(hom_poset(point(), circle), circle) is not None
    assert hom_poset(fence(1), fence(1)).n == 3
    assert hom_poset(circle, point()).n == 1


def test_comparable_maps_homotopic(circle):
    f = constant_map(circle, circle, 0)
    g = MapPoint(circle, circle, (0, 0, 2, 2))
    assert f <= g
    assert homotopic(f, g)


def test_identity_not_homotopic_to_constant(circle):
    idm = identity_map(circle)
    for y in range(4):
        assert not homotopic(idm, constant_map(circle, circle, y))


def test_maps_into_poset_with_maximum():
    Q = chain(3)
    P = fence(3)
    maps = monotone_maps(P, Q)
    f = MapPoint(P, Q, maps[0])
    for vals in maps[1:]:
        assert homotopic(f, MapPoint(P, Q, vals))


def test_map_must_be_order_preserving(circle):
    with pytest.raises(ValueError):
        MapPoint(circle, circle, (2, 1, 0, 0))


def _components(H):
    comp = [-1] * H.n
    k = 0
    for s in range(H.n):
        if comp[s] >= 0:
            continue
        stack = [s]
        comp[s] = k
        while stack:
            x = stack.pop()
            for y in range(H.n):
                if comp[y] < 0 and H.comparable(x, y):
                    comp[y] = k
                    stack.append(y)
        k += 1
    return comp


@given(seeds, seeds)
@settings(max_examples=25, deadline=None)
def test_homotopic_matches_hom_poset_components(s1, s2):
    r1, r2 = random.Random(s1), random.Random(s2)
    P = random_poset(r1.randint(1, 4), r1)
    Q = random_poset(r2.randint(1, 4), r2)
    maps = monotone_maps(P, Q)
    H = hom_poset(P, Q)
    comp = _components(H)
    pick = random.Random(s1 + s2).sample(range(len(maps)), min(len(maps), 6))
    for i in pick:
        for j in pick:
            f, g = MapPoint(P, Q, maps[i]), MapPoint(P, Q, maps[j])
            assert homotopic(f, g) == (comp[i] == comp[j])


def test_homotopy_into_square_of_circle(circle):
    P2 = product(circle, circle)
    maps = monotone_maps(circle, P2)
    H = hom_poset(circle, P2)
    comp = _components(H)
    r = random.Random(5)
    for _ in range(40):
        i, j = r.randrange(len(maps)), r.randrange(len(maps))
        assert homotopic(MapPoint(circle, P2, maps[i]), MapPoint(circle, P2, maps[j])) == (
            comp[i] == comp[j])


def test_fence_is_made_of_comparable_maps(circle):
    P2 = product(circle, circle)
    f = MapPoint(circle, P2, tuple(x * 4 + x for x in range(4)))
    g = MapPoint(circle, P2, tuple(x * 4 + 2 for x in range(4)))
    assert homotopy_fence(f, g) is None
    h = MapPoint(circle, P2, tuple(2 * 4 + 2 for _ in range(4)))
    k = MapPoint(circle, P2, tuple(0 * 4 + 3 for _ in range(4)))
    fence_ = homotopy_fence(h, k)
    assert fence_[0] == h.values and fence_[-1] == k.values
    for u, v in zip(fence_, fence_[1:]):
        assert all(P2.leq(a, b) for a, b in zip(u, v)) or all(P2.leq(b, a) for a, b in zip(u, v))
    zz = zigzag_fence(fence_, P2)
    for i, (u, v) in enumerate(zip(zz, zz[1:])):
        if i % 2 == 0:
            assert all(P2.leq(a, b) for a, b in zip(u, v))
        else:
            assert all(P2.leq(b, a) for a, b in zip(u, v))


def test_path_connected(circle):
    assert is_path_connected(circle)
    assert not is_path_connected(antichain(2))
    assert all(is_path_connected(fence(m)) for m in range(6))
    with pytest.raises(EmptyPoset):
        is_path_connected(antichain(0))


def test_core_examples(circle):
    C, trace = core(chain(4))
    assert C.n == 1 and len(trace) == 3
    C, trace = core(circle)
    assert C == circle and trace == []
    C, trace = core(fence(2))
    # 0 goes first as an up-beat point; 1 is then a down-beat point onto 2
    assert C.n == 1 and [(t.element, t.kind) for t in trace] == [(0, "up"), (1, "down")]


def test_contractible_examples(circle):
    assert all(is_contractible(fence(m)) for m in range(6))
    assert not is_contractible(circle)
    assert is_contractible(point())


@given(seeds)
@settings(max_examples=40, deadline=None)
def test_core_independent_of_removal_order(seed):
    r = random.Random(seed)
    P = random_poset(r.randint(1, 7), r)
    C1, _ = core(P)
    C2, _ = core(P, rng=random.Random(seed + 1))
    assert isomorphic(C1, C2) is not None
    assert isomorphic_brute(C1, C2)


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_homotopic_is_equivalence(seed):
    r = random.Random(seed)
    P = random_connected_poset(3, r)
    Q = random_connected_poset(4, r)
    maps = monotone_maps(P, Q)
    picks = [MapPoint(P, Q, maps[r.randrange(len(maps))]) for _ in range(3)]
    f, g, h = picks
    assert homotopic(f, f)
    assert homotopic(f, g) == homotopic(g, f)
    if homotopic(f, g) and homotopic(g, h):
        assert homotopic(f, h)


def test_contractible_in_examples(circle):
    for x in range(4):
        assert is_contractible_in(circle.down_set([x]))
    assert not is_contractible_in(circle.down_set(circle.maximal_elements()))
    F = fence(4)
    r = random.Random(3)
    for _ in range(10):
        S = [x for x in range(F.n) if r.random() < 0.5] or [0]
        assert is_contractible_in(F.down_set(S))


def test_open_of_circle_contracts_inside_circle(circle):
    # {a, b} is disconnected but each piece moves to c
    U = circle.down_set([0, 1])
    assert is_contractible_in(U)

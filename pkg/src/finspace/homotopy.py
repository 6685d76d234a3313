"""Combinatorial homotopy theory of finite spaces.

Two order-preserving maps are homotopic iff they lie in one connected
component of the comparability graph of the hom-poset.  Components are
searched through single-point moves: if ``f <= g`` then ``f`` and ``g`` are
joined by a chain of comparable maps differing at one point each (change a
maximal point where they differ first), so these moves reach the whole
component.

Searches are kept small by two reductions that do not change the answer:

* the domain is replaced by its core (a beat-point retraction ``r`` is
  comparable to the identity, so ``f ~ g`` iff ``f r ~ g r``);
* maps into a product split into their two coordinates.

Maps that induce different homomorphisms on mod-2 cohomology of the order
complexes are never homotopic, which refutes most negative instances before
any search.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass

import numpy as np

from ._bits import bit_list, iter_bits, popcount
from .cohomology import maps_agree_in_cohomology
from .errors import DEFAULT_LIMIT, EmptyPoset, SizeLimit
from .poset import FinitePoset, OpenSet, from_relation

SEARCH_LIMIT = 200_000


@dataclass(frozen=True)
class ZigzagPath:
    """An order-preserving map from the fence ``J_m``, stored by its values."""

    values: tuple

    @property
    def length(self) -> int:
        return len(self.values) - 1

    def endpoints(self):
        return self.values[0], self.values[-1]


def is_zigzag(P: FinitePoset, values) -> bool:
    for i in range(len(values) - 1):
        a, b = values[i], values[i + 1]
        if i % 2 == 0:
            if not P.leq(a, b):
                return False
        elif not P.leq(b, a):
            return False
    return True


def endpoints(path):
    values = path.values if isinstance(path, ZigzagPath) else path
    return values[0], values[-1]


def zigzag_paths(P: FinitePoset, m: int, limit: int = DEFAULT_LIMIT) -> list[tuple]:
    """All zigzag paths ``x0 <= x1 >= x2 <= ...`` of length ``m``, sorted."""
    if m < 0:
        raise ValueError("path length must be non-negative")
    layer = [(x,) for x in range(P.n)]
    for i in range(m):
        nxt = []
        for p in layer:
            row = P.up[p[-1]] if i % 2 == 0 else P.down[p[-1]]
            nxt.extend(p + (y,) for y in iter_bits(row))
        if len(nxt) > limit:
            raise SizeLimit("path space", len(nxt), limit)
        layer = nxt
    layer.sort()
    return layer


def _pointwise_poset(labels, table: np.ndarray, P: FinitePoset) -> FinitePoset:
    M = P.relation_matrix()
    rows = []
    for i in range(len(table)):
        ok = M[table[i][None, :], table].all(axis=1)
        rows.append(int.from_bytes(np.packbits(ok, bitorder="little").tobytes(), "little"))
    return FinitePoset(labels, rows, check=False)


def path_space(P: FinitePoset, m: int, limit: int = DEFAULT_LIMIT) -> FinitePoset:
    """The poset of zigzag paths of length ``m`` under the pointwise order."""
    paths = zigzag_paths(P, m, limit)
    table = np.array(paths, dtype=np.int64).reshape(len(paths), m + 1)
    labels = [tuple(P.labels[v] for v in p) for p in paths]
    return _pointwise_poset(labels, table, P)


@dataclass(frozen=True)
class MapPoint:
    """An order-preserving map ``domain -> codomain`` given by its value table."""

    domain: FinitePoset
    codomain: FinitePoset
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) != self.domain.n:
            raise ValueError("one value per domain element is required")
        if not is_order_preserving(self.domain, self.codomain, self.values):
            raise ValueError("map is not order-preserving")

    def __call__(self, x):
        return self.values[x]

    def __le__(self, other):
        return all(self.codomain.leq(a, b) for a, b in zip(self.values, other.values))


def is_order_preserving(dom: FinitePoset, cod: FinitePoset, values) -> bool:
    for a, b in dom.covers():
        if not cod.leq(values[a], values[b]):
            return False
    return True


def constant_map(dom: FinitePoset, cod: FinitePoset, y: int) -> MapPoint:
    return MapPoint(dom, cod, (y,) * dom.n)


def identity_map(P: FinitePoset) -> MapPoint:
    return MapPoint(P, P, tuple(range(P.n)))


def monotone_maps(P: FinitePoset, Q: FinitePoset, limit: int = DEFAULT_LIMIT) -> list[tuple]:
    """Every order-preserving map ``P -> Q`` as a value tuple, in lexicographic order."""
    n = P.n
    below = [[k for k in range(i) if P.leq(k, i)] for i in range(n)]
    above = [[k for k in range(i) if P.leq(i, k)] for i in range(n)]
    out = []
    vals = [0] * n

    def extend(i):
        if i == n:
            out.append(tuple(vals))
            if len(out) > limit:
                raise SizeLimit("hom-poset", len(out), limit)
            return
        allowed = Q.full_mask
        for k in below[i]:
            allowed &= Q.up[vals[k]]
        for k in above[i]:
            allowed &= Q.down[vals[k]]
        for y in iter_bits(allowed):
            vals[i] = y
            extend(i + 1)

    extend(0)
    return out


def hom_poset(P: FinitePoset, Q: FinitePoset, limit: int = DEFAULT_LIMIT) -> FinitePoset:
    """All order-preserving maps ``P -> Q`` under the pointwise order.

    Element labels are value tuples of ``Q`` labels, sorted by value table.
    """
    maps = monotone_maps(P, Q, limit)
    table = np.array(maps, dtype=np.int64).reshape(len(maps), P.n)
    labels = [tuple(Q.labels[v] for v in f) for f in maps]
    if P.n == 0:
        return from_relation([()], lambda i, j: True)
    return _pointwise_poset(labels, table, Q)


def is_path_connected(P: FinitePoset) -> bool:
    if P.n == 0:
        raise EmptyPoset("path connectivity of the empty poset")
    return component_mask(P, 0) == P.full_mask


def component_mask(P: FinitePoset, x: int) -> int:
    seen = 1 << x
    frontier = seen
    while frontier:
        nxt = 0
        for y in iter_bits(frontier):
            nxt |= P.up[y] | P.down[y]
        frontier = nxt & ~seen
        seen |= nxt
    return seen


# beat points and cores

@dataclass(frozen=True)
class BeatRemoval:
    element: int       # id in the original poset
    kind: str          # "up" or "down"
    target: int        # the minimum of the strict up-set / maximum of the strict down-set


@dataclass(frozen=True)
class Reduction:
    mask: int          # surviving elements
    trace: tuple       # BeatRemoval records in removal order
    retraction: tuple  # original id -> surviving id


def beat_point(P: FinitePoset, x: int, alive: int):
    """Return ``(kind, target)`` if ``x`` is a beat point of the subposet ``alive``."""
    above = P.strict_up(x) & alive
    if above:
        mins = [u for u in iter_bits(above) if not (P.strict_down(u) & above)]
        if len(mins) == 1:
            return "up", mins[0]
    below = P.strict_down(x) & alive
    if below:
        maxs = [d for d in iter_bits(below) if not (P.strict_up(d) & below)]
        if len(maxs) == 1:
            return "down", maxs[0]
    return None


def beat_reduction(P: FinitePoset, mask: int | None = None, rng=None) -> Reduction:
    """Remove beat points until none remain.

    Without ``rng`` the smallest beat point id is removed first; with an
    ``random.Random`` a random beat point is chosen at each step.
    """
    alive = P.full_mask if mask is None else mask
    trace = []
    while True:
        beats = []
        for x in iter_bits(alive):
            bp = beat_point(P, x, alive)
            if bp is not None:
                beats.append((x, bp))
                if rng is None:
                    break
        if not beats:
            break
        x, (kind, target) = beats[0] if rng is None else rng.choice(beats)
        alive &= ~(1 << x)
        trace.append(BeatRemoval(x, kind, target))
    retraction = list(range(P.n))
    for step in reversed(trace):
        retraction[step.element] = retraction[step.target]
    return Reduction(alive, tuple(trace), tuple(retraction))


def core(P: FinitePoset, rng=None):
    """The core of ``P`` and the ordered list of removed beat points."""
    red = beat_reduction(P, rng=rng)
    return P.subposet(red.mask), list(red.trace)


def is_contractible(P: FinitePoset) -> bool:
    if P.n == 0:
        raise EmptyPoset("contractibility of the empty poset")
    return popcount(beat_reduction(P).mask) == 1


# homotopy search

def _move_candidates(dom_lower, dom_upper, cod: FinitePoset, f, x):
    allowed = cod.up[f[x]] | cod.down[f[x]]
    for a in dom_lower[x]:
        allowed &= cod.up[f[a]]
    for b in dom_upper[x]:
        allowed &= cod.down[f[b]]
    return allowed & ~(1 << f[x])


def search_fence(dom: FinitePoset, cod: FinitePoset, start, goal=None,
                 limit: int = SEARCH_LIMIT):
    """Best-first search in the comparability graph of ``hom(dom, cod)``.

    ``goal`` is a target map, or None for "any constant map".  Returns the
    list of maps from ``start`` to the goal (consecutive maps differ at one
    point and are comparable), or None once the whole component has been
    explored.  Raises :class:`SizeLimit` after ``limit`` visited maps.
    """
    start = tuple(start)
    if dom.n == 0:
        return [start]
    lower = [dom.lower_covers(x) for x in range(dom.n)]
    upper = [dom.upper_covers(x) for x in range(dom.n)]
    if goal is None:
        def score(f):
            return len(set(f)) - 1
    else:
        goal = tuple(goal)

        def score(f):
            return sum(a != b for a, b in zip(f, goal))

    parent = {start: None}
    counter = itertools.count()
    heap = [(score(start), next(counter), start)]
    while heap:
        s, _, f = heapq.heappop(heap)
        if s == 0:
            path = []
            while f is not None:
                path.append(f)
                f = parent[f]
            return path[::-1]
        for x in range(dom.n):
            for v in iter_bits(_move_candidates(lower, upper, cod, f, x)):
                h = f[:x] + (v,) + f[x + 1:]
                if h in parent:
                    continue
                parent[h] = f
                if len(parent) > limit:
                    raise SizeLimit("homotopy search", len(parent), limit)
                heapq.heappush(heap, (score(h), next(counter), h))
    return None


def _retraction_steps(dom: FinitePoset, red: Reduction):
    """Self-maps ``id = h_0, h_1, ...`` of ``dom``, each comparable to the
    previous, ending at the core retraction (as a map into ``dom``)."""
    h = list(range(dom.n))
    steps = [tuple(h)]
    for step in red.trace:
        h = [step.target if v == step.element else v for v in h]
        steps.append(tuple(h))
    return steps


def _split(cod: FinitePoset, values):
    nb = cod.factors[1].n
    return tuple(v // nb for v in values), tuple(v % nb for v in values)


def _join(cod: FinitePoset, left, right):
    nb = cod.factors[1].n
    return tuple(a * nb + b for a, b in zip(left, right))


def decide_homotopy(dom: FinitePoset, cod: FinitePoset, f, g=None,
                    limit: int = SEARCH_LIMIT):
    """Decide whether ``f ~ g`` (or ``f`` ~ a constant map when ``g`` is None).

    Returns ``(status, fence)`` with status ``"homotopic"`` (fence: list of
    maps on ``dom`` from ``f`` to ``g``/a constant, consecutive ones
    comparable), ``"refuted"`` or ``"unknown"`` (search budget exhausted).
    """
    f = tuple(f)
    g = None if g is None else tuple(g)
    if cod.factors is not None:
        A, B = cod.factors
        f1, f2 = _split(cod, f)
        g1, g2 = (None, None) if g is None else _split(cod, g)
        s1, fence1 = decide_homotopy(dom, A, f1, g1, limit)
        if s1 == "refuted":
            return s1, None
        s2, fence2 = decide_homotopy(dom, B, f2, g2, limit)
        if s2 == "refuted":
            return s2, None
        if "unknown" in (s1, s2):
            return "unknown", None
        fence = [_join(cod, a, f2) for a in fence1]
        fence += [_join(cod, fence1[-1], b) for b in fence2[1:]]
        return "homotopic", fence

    red = beat_reduction(dom)
    ids = bit_list(red.mask)
    U = dom.subposet(red.mask)
    fc = tuple(f[e] for e in ids)
    if g is None:
        gc = (fc[0],) * len(ids)
    else:
        gc = tuple(g[e] for e in ids)
    if not maps_agree_in_cohomology(U, cod, fc, gc):
        return "refuted", None
    try:
        core_fence = search_fence(U, cod, fc, None if g is None else gc, limit)
    except SizeLimit:
        return "unknown", None
    if core_fence is None:
        return "refuted", None

    # lift: f -> f r (retraction steps), core fence composed with r, g r -> g
    pos = {e: k for k, e in enumerate(ids)}
    steps = _retraction_steps(dom, red)
    fence = [tuple(f[h[x]] for x in range(dom.n)) for h in steps]
    r = [pos[red.retraction[x]] for x in range(dom.n)]
    fence += [tuple(k[r[x]] for x in range(dom.n)) for k in core_fence[1:]]
    if g is not None:
        fence += [tuple(g[h[x]] for x in range(dom.n)) for h in reversed(steps[:-1])]
    return "homotopic", _dedupe(fence)


def _dedupe(fence):
    out = [fence[0]]
    for h in fence[1:]:
        if h != out[-1]:
            out.append(h)
    return out


def homotopic(f: MapPoint, g: MapPoint, limit: int = SEARCH_LIMIT) -> bool:
    """True iff ``f`` and ``g`` lie in one component of the hom-poset."""
    if f.domain != g.domain or f.codomain != g.codomain:
        raise ValueError("maps must share domain and codomain")
    status, _ = decide_homotopy(f.domain, f.codomain, f.values, g.values, limit)
    if status == "unknown":
        raise SizeLimit("homotopy search", limit, limit)
    return status == "homotopic"


def homotopy_fence(f: MapPoint, g: MapPoint | None = None, limit: int = SEARCH_LIMIT):
    """A fence of maps from ``f`` to ``g`` (or to a constant), or None."""
    cod = f.codomain
    status, fence = decide_homotopy(f.domain, cod, f.values,
                                    None if g is None else g.values, limit)
    if status == "unknown":
        raise SizeLimit("homotopy search", limit, limit)
    return fence


def zigzag_fence(fence, cod: FinitePoset):
    """Rearrange a fence of pairwise comparable maps into the pattern
    ``h0 <= h1 >= h2 <= ...``: runs in one direction are merged and a repeat
    is inserted where the parity is wrong."""
    def leq(a, b):
        return all(cod.leq(x, y) for x, y in zip(a, b))

    merged = [fence[0]]
    for h in fence[1:]:
        if h == merged[-1]:
            continue
        if len(merged) >= 2:
            a, b = merged[-2], merged[-1]
            if (leq(a, b) and leq(b, h)) or (leq(b, a) and leq(h, b)):
                merged[-1] = h
                continue
        merged.append(h)
    out = [merged[0]]
    for h in merged[1:]:
        up_step = (len(out) - 1) % 2 == 0
        if up_step and not leq(out[-1], h) or not up_step and not leq(h, out[-1]):
            out.append(out[-1])
        out.append(h)
    return out


def is_contractible_in(U: OpenSet, P: FinitePoset | None = None,
                       limit: int = SEARCH_LIMIT) -> bool:
    """True iff the inclusion ``U -> P`` is homotopic to a constant map."""
    return contraction_fence(U, P, limit) is not None


def contraction_fence(U: OpenSet, P: FinitePoset | None = None,
                      limit: int = SEARCH_LIMIT):
    """Fence of maps ``U -> P`` from the inclusion to a constant, or None.

    Maps are value tuples indexed like ``U.elements()``.
    """
    P = U.ambient if P is None else P
    if U.ambient != P:
        raise ValueError("open set lives in a different poset")
    if not U.members:
        raise EmptyPoset("contractibility of an empty open set")
    dom = U.as_poset()
    incl = tuple(U.elements())
    status, fence = decide_homotopy(dom, P, incl, None, limit)
    if status == "unknown":
        raise SizeLimit("homotopy search", limit, limit)
    return fence

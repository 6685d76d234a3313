"""Exact minimum set cover and enumeration of maximal feasible subsets."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

from ._bits import bit_list, iter_bits, popcount
from .errors import SizeLimit


def _key(s):
    return bit_list(s)


def greedy_cover(ground: int, sets: list[int]):
    chosen = []
    left = ground
    while left:
        best = max(sets, key=lambda s: (popcount(s & left), [-i for i in _key(s)]),
                   default=None)
        if best is None or not best & left:
            return None
        chosen.append(best)
        left &= ~best
    return chosen


def minimum_cover(ground: int, sets: list[int]):
    """Smallest list of ``sets`` whose union contains ``ground``, or None.

    Branch and bound: branch on the uncovered element with the fewest
    covering sets, trying larger sets first and breaking ties by sorted
    member lists.  The greedy cover seeds the incumbent.
    """
    sets = sorted(set(s & ground for s in sets if s & ground), key=_key)
    if not ground:
        return []
    union = 0
    for s in sets:
        union |= s
    if union & ground != ground:
        return None
    containing = {e: [s for s in sets if (s >> e) & 1] for e in iter_bits(ground)}
    for e in containing:
        containing[e].sort(key=lambda s: (-popcount(s), _key(s)))
    biggest = max(popcount(s) for s in sets)
    best = greedy_cover(ground, sets)

    def search(left, chosen):
        nonlocal best
        if not left:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        need = -(-popcount(left) // biggest)
        if len(chosen) + need >= len(best):
            return
        e = min(iter_bits(left), key=lambda x: (len(containing[x]), x))
        for s in containing[e]:
            chosen.append(s)
            search(left & ~s, chosen)
            chosen.pop()

    search(ground, [])
    return best


def maximal_feasible_sets(n: int, feasible, limit: int = 200_000, workers: int = 1,
                          singles=None):
    """Maximal members of a downward-closed family over ``{0..n-1}``.

    ``feasible(mask) -> bool`` must be monotone (subsets of feasible sets are
    feasible).  The whole ground set is tried first; otherwise the family is
    grown level by level, only testing sets whose every one-smaller subset is
    feasible.  ``singles`` may supply already-known feasible singletons.
    Results are bitsets, sorted by member list.
    """
    full = (1 << n) - 1
    if n == 0:
        return [0]
    pool = ThreadPoolExecutor(workers) if workers > 1 else None

    def evaluate(cands):
        if pool is None:
            return [feasible(c) for c in cands]
        return list(pool.map(feasible, cands))

    try:
        if singles is None:
            level = [1 << i for i, ok in enumerate(evaluate([1 << i for i in range(n)])) if ok]
        else:
            level = sorted(singles, key=_key)
        if not level:
            return []
        if len(level) == n and n > 1 and feasible(full):
            return [full]
        ok_single = 0
        for a in level:
            ok_single |= a
        maximal = []
        tested = len(level)
        while level:
            members = set(level)
            cands = []
            for a in level:
                # extend only past the largest member so each candidate appears once
                rest = ok_single >> a.bit_length() << a.bit_length()
                for i in iter_bits(rest):
                    c = a | (1 << i)
                    if all((c & ~(1 << j)) in members for j in iter_bits(c)):
                        cands.append(c)
            cands.sort(key=_key)
            tested += len(cands)
            if tested > limit:
                raise SizeLimit("feasible family", tested, limit)
            nxt = [c for c, ok in zip(cands, evaluate(cands)) if ok]
            covered = set()
            for c in nxt:
                for j in iter_bits(c):
                    covered.add(c & ~(1 << j))
            maximal.extend(a for a in level if a not in covered)
            level = nxt
        return sorted(maximal, key=_key)
    finally:
        if pool is not None:
            pool.shutdown()

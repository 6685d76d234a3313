"""Slow reference implementations used to cross-check the library.

These work from ``P.up`` rows and plain Python only, with no calls into
the search code under test.
"""

import copy
import itertools

import numpy as np


def leq(P, a, b):
    return (P.up[a] >> b) & 1 == 1


def relation(P):
    n = len(P.up)
    return np.array([[leq(P, i, j) for j in range(n)] for i in range(n)], dtype=np.int64)


def transfer_count(P, m):
    """Number of order-preserving maps from the fence of length m into P."""
    M = relation(P)
    v = np.ones(len(M), dtype=np.int64)
    for i in range(m):
        v = v @ (M if i % 2 == 0 else M.T)
    return int(v.sum())


def gf2_rank(rows):
    A = np.array(rows, dtype=np.uint8) % 2
    if A.size == 0:
        return 0
    rank = 0
    r, c = A.shape
    for col in range(c):
        piv = next((i for i in range(rank, r) if A[i, col]), None)
        if piv is None:
            continue
        A[[rank, piv]] = A[[piv, rank]]
        for i in range(r):
            if i != rank and A[i, col]:
                A[i] ^= A[rank]
        rank += 1
        if rank == r:
            break
    return rank


def chains(P):
    n = len(P.up)
    out = []
    for k in range(1, n + 1):
        for c in itertools.combinations(range(n), k):
            if all(leq(P, a, b) or leq(P, b, a) for a, b in itertools.combinations(c, 2)):
                out.append(tuple(sorted(c, key=lambda x: bin(P.down[x]).count("1"))))
    return out


def homology_betti(P):
    """Betti numbers from boundary-matrix ranks over GF(2)."""
    simp = chains(P)
    by_dim = {}
    for s in simp:
        by_dim.setdefault(len(s) - 1, []).append(frozenset(s))
    top = max(by_dim)
    index = {d: {s: i for i, s in enumerate(by_dim[d])} for d in by_dim}
    rank = {}
    for d in range(1, top + 1):
        rows = []
        for s in by_dim[d]:
            row = [0] * len(by_dim[d - 1])
            for v in s:
                row[index[d - 1][s - {v}]] = 1
            rows.append(row)
        rank[d] = gf2_rank(rows)
    return tuple(len(by_dim[d]) - rank.get(d, 0) - rank.get(d + 1, 0) for d in range(top + 1))


def brute_paths(P, m, x, y):
    n = len(P.up)
    out = []
    for mid in itertools.product(range(n), repeat=max(m - 1, 0)):
        p = (x,) + mid + (y,) if m > 0 else (x,)
        if m == 0 and x != y:
            continue
        ok = all((leq(P, p[i], p[i + 1]) if i % 2 == 0 else leq(P, p[i + 1], p[i]))
                 for i in range(m))
        if ok:
            out.append(p)
    return out


def pair_leq(P, p, q):
    return leq(P, p[0], q[0]) and leq(P, p[1], q[1])


def brute_section(P, region, m):
    """Plain backtracking for a monotone section over a set of pairs."""
    region = sorted(region, key=lambda q: (bin(P.down[q[0]]).count("1")
                                           + bin(P.down[q[1]]).count("1"), q))
    cands = {q: brute_paths(P, m, *q) for q in region}
    chosen = {}

    def fits(q, path):
        for r, other in chosen.items():
            if pair_leq(P, r, q) and not all(leq(P, a, b) for a, b in zip(other, path)):
                return False
            if pair_leq(P, q, r) and not all(leq(P, a, b) for a, b in zip(path, other)):
                return False
        return True

    def go(i):
        if i == len(region):
            return True
        q = region[i]
        for path in cands[q]:
            if fits(q, path):
                chosen[q] = path
                if go(i + 1):
                    return True
                del chosen[q]
        return False

    return dict(chosen) if go(0) else None


def square_down_sets(P):
    """Every nonempty down-set of ``P x P`` as a frozenset of pairs."""
    n = len(P.up)
    pairs = [(a, b) for a in range(n) for b in range(n)]
    out = set()

    def close(S):
        return frozenset(p for p in pairs if any(pair_leq(P, p, s) for s in S))

    tops = [p for p in pairs if not any(q != p and pair_leq(P, p, q) for q in pairs)]
    # each down-set is generated by its antichain of maximal elements
    frontier = {close([p]) for p in pairs}
    out |= frontier
    while frontier:
        nxt = set()
        for D in frontier:
            for p in pairs:
                if p not in D:
                    E = close(list(D) + [p])
                    if E not in out:
                        nxt.add(E)
        out |= nxt
        frontier = nxt
    return out, pairs, tops


def oracle_cc_m(P, m, cap=4):
    """Minimum cover of ``P x P`` by down-sets carrying a section, or None if
    no cover of size at most ``cap`` exists."""
    downs, pairs, _ = square_down_sets(P)
    feasible = {}
    for D in sorted(downs, key=len):
        # a section restricts to sub-down-sets
        if any(not feasible.get(D - {q}, True) for q in D
               if not any(r != q and pair_leq(P, q, r) for r in D) and len(D) > 1):
            feasible[D] = False
            continue
        feasible[D] = brute_section(P, D, m) is not None
    good = [D for D, ok in feasible.items() if ok]
    maximal = [D for D in good if not any(D < E for E in good)]
    everything = frozenset(pairs)
    for k in range(1, cap + 1):
        for combo in itertools.combinations(maximal, k):
            if frozenset().union(*combo) == everything:
                return k
    return None


def isomorphic_brute(P, Q):
    n = len(P.up)
    if n != len(Q.up):
        return False
    for perm in itertools.permutations(range(n)):
        if all(leq(P, i, j) == leq(Q, perm[i], perm[j]) for i in range(n) for j in range(n)):
            return True
    return False


def small_posets(max_n):
    """One representative per isomorphism class of posets with 1..max_n points."""
    from finspace.poset import from_relation

    reps = []
    for n in range(1, max_n + 1):
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        seen = set()
        for bits in range(1 << len(pairs)):
            rel = [[i == j for j in range(n)] for i in range(n)]
            for k, (i, j) in enumerate(pairs):
                if (bits >> k) & 1:
                    rel[i][j] = True
            for k in range(n):
                for i in range(n):
                    for j in range(n):
                        if rel[i][k] and rel[k][j]:
                            rel[i][j] = True
            key = tuple(map(tuple, rel))
            if key in seen:
                continue
            seen.add(key)
            P = from_relation([f"p{i}" for i in range(n)], lambda i, j, r=rel: r[i][j])
            if not any(isomorphic_brute(P, R) for R in reps if len(R.up) == n):
                reps.append(P)
    return reps


def add_beat_point(P, rng):
    """Add a point ``b`` whose strict down-set is the principal down-set of a
    random ``x`` and whose strict up-set is a random up-closed part of the
    strict up-set of ``x``: ``b`` is a down-beat point."""
    from finspace.poset import from_relation

    n = len(P.up)
    x = rng.randrange(n)
    above = [u for u in range(n) if u != x and leq(P, x, u)]
    ups = set()
    for u in above:
        if rng.random() < 0.5:
            ups |= {w for w in range(n) if leq(P, u, w)}
    b = n

    def rel(i, j):
        if i == j:
            return True
        if i < n and j < n:
            return leq(P, i, j)
        if j == b:
            return leq(P, i, x)
        return j in ups

    return from_relation(list(P.labels) + ["beat"], rel), x


def mutate_certificate(P, cert, rng):
    """A copy of ``cert`` with one field changed so that it must be invalid.

    Returns ``(description, mutated)``.
    """
    from finspace.certificates import CatCertificate, SectionCertificate

    c = copy.deepcopy(cert)
    n = len(P.up)
    k = rng.randrange(len(c.parts))
    part = c.parts[k]
    if isinstance(c, SectionCertificate):
        kind = rng.choice(["endpoint", "middle", "m", "open", "subset", "length"])
        q = rng.choice(sorted(part.table))
        path = list(part.table[q])
        if kind == "middle" and len(path) < 3:
            kind = "endpoint"
        if kind == "endpoint" and n == 1:
            kind = "length"
        if kind == "endpoint":
            i = rng.choice([0, len(path) - 1])
            path[i] = rng.choice([v for v in range(n) if v != path[i]])
            part.table[q] = tuple(path)
        elif kind == "middle":
            spots = []
            for i in range(1, len(path) - 1):
                for v in range(n):
                    trial = path[:i] + [v] + path[i + 1:]
                    if not all((leq(P, trial[j], trial[j + 1]) if j % 2 == 0
                                else leq(P, trial[j + 1], trial[j]))
                               for j in range(len(trial) - 1)):
                        spots.append((i, v))
            if not spots:
                kind = "length"
            else:
                i, v = rng.choice(spots)
                path[i] = v
                part.table[q] = tuple(path)
        if kind == "length":
            part.table[q] = tuple(path) + (path[-1],)
        elif kind == "m":
            c.m += rng.choice([-1, 1]) if c.m > 0 else 1
        elif kind == "open":
            part.open = tuple(x for x in part.open if x != q)
        elif kind == "subset":
            inner = [x for x in range(n * n) if x not in part.subset and any(
                leq(P, x // n, s // n) and leq(P, x % n, s % n) for s in part.subset)]
            if inner:
                part.subset = tuple(sorted(part.subset + (rng.choice(inner),)))
            else:
                part.open = part.open + (part.open[-1],)
                kind = "open"
        return f"section/{kind}", c
    assert isinstance(c, CatCertificate)
    size = n * n if c.square else n
    kind = rng.choice(["inclusion", "open", "subset", "range"])
    if kind == "inclusion" and size == 1:
        kind = "range"
    if kind == "inclusion":
        first = list(part.fence[0])
        i = rng.randrange(len(first))
        first[i] = rng.choice([v for v in range(size) if v != first[i]])
        part.fence[0] = tuple(first)
    elif kind == "open":
        part.open = part.open[:-1] if len(part.open) > 1 else part.open + part.open
    elif kind == "subset":
        extra = [x for x in part.open if x not in part.subset]
        if extra:
            part.subset = tuple(sorted(part.subset + (rng.choice(extra),)))
        else:
            part.subset = ()
    else:
        j = rng.randrange(len(part.fence))
        h = list(part.fence[j])
        h[rng.randrange(len(h))] = size
        part.fence[j] = tuple(h)
    return f"cat/{kind}", c


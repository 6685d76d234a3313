"""Exact LS-category and combinatorial complexity with certificates.

Open sets are down-sets, and every element lies below a maximal one, so an
open cover of ``X`` is determined up to refinement by the maximal elements
each open contains.  Both invariants are therefore computed as minimum covers
of ``Max(X)`` by a downward-closed family of "good" subsets ``S``, where
``S`` is good when the open ``↓S`` is:

* contractible inside ``X`` (for ``cat``), or
* equipped with an order-preserving section of ``q_m`` (for ``CC_m``, with
  ``X = P x P``).

A section of ``q_m`` over an open ``U`` is the same thing as a fence of
length ``m`` in ``hom(U, P)`` from the first projection to the second.  So
``S`` is good for *some* ``m`` exactly when the two projections are homotopic
on ``↓S``.  That yields an ``m``-independent lower bound for ``CC`` next to
the per-``m`` upper bounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._bits import bit_list, iter_bits
from .certificates import (CatCertificate, CatPart, SectionCertificate, SectionPart,
                           verify_certificate)
from .cohomology import zero_divisor_cup_length
from .errors import DEFAULT_LIMIT, ChainViolation, NotPathConnected, SizeLimit
from .homotopy import (SEARCH_LIMIT, contraction_fence, decide_homotopy, is_contractible,
                       is_path_connected, zigzag_paths)
from .poset import FinitePoset, product
from .setcover import maximal_feasible_sets, minimum_cover

FAMILY_LIMIT = 200_000


def square(P: FinitePoset) -> FinitePoset:
    """``P x P`` (cached); pair ``(x, y)`` has id ``x * |P| + y``."""
    P2 = P._cache.get("square")
    if P2 is None:
        P2 = product(P, P)
        P._cache["square"] = P2
    return P2


def _require_connected(P):
    if not is_path_connected(P):
        raise NotPathConnected("P must be path connected")


def _pair_ids(P, S):
    n = P.n
    out = []
    for s in S:
        if isinstance(s, tuple):
            x, y = s
            out.append(x * n + y)
        else:
            out.append(int(s))
    return out


# sections of q_m

class _PathTable:
    """All zigzag paths of length m grouped by endpoints, as numpy arrays."""

    def __init__(self, P, m, limit):
        paths = zigzag_paths(P, m, limit)
        arr = np.array(paths, dtype=np.int64).reshape(len(paths), m + 1)
        self.by_ends = {}
        n = P.n
        if len(arr):
            keys = arr[:, 0] * n + arr[:, -1]
            order = np.argsort(keys, kind="stable")
            arr, keys = arr[order], keys[order]
            bounds = np.flatnonzero(np.diff(keys)) + 1
            for chunk in np.split(np.arange(len(arr)), bounds):
                self.by_ends[int(keys[chunk[0]])] = arr[chunk]
        self.empty = np.zeros((0, m + 1), dtype=np.int64)

    def get(self, q):
        return self.by_ends.get(q, self.empty)


def _path_table(P, m, limit):
    key = ("paths", m)
    tab = P._cache.get(key)
    if tab is None:
        tab = _PathTable(P, m, limit)
        P._cache[key] = tab
    return tab


def limit_status(P: FinitePoset, S, limit: int = SEARCH_LIMIT):
    """Whether the projections ``↓S -> P`` are homotopic (``S`` good for some m).

    Returns ``"homotopic"``, ``"refuted"`` or ``"unknown"``; cached per open.
    """
    P2 = square(P)
    mask = P2.down_mask(sum(1 << q for q in _pair_ids(P, S)))
    cache = P._cache.setdefault("limit", {})
    if mask not in cache:
        ids = bit_list(mask)
        U = P2.subposet(mask)
        n = P.n
        status, _ = decide_homotopy(U, P, tuple(q // n for q in ids),
                                    tuple(q % n for q in ids), limit)
        cache[mask] = status
    return cache[mask]


def section_feasible(P: FinitePoset, S, m: int, *, prune: bool = True,
                     limit: int = DEFAULT_LIMIT):
    """Order-preserving section of the endpoint map over ``↓S``, or None.

    ``S`` holds maximal pairs of ``P x P`` (ids or ``(x, y)`` tuples).  The
    result maps each pair id of ``↓S`` to a zigzag path (tuple of ids of P).
    The search assigns paths with fixed endpoints, smallest remaining domain
    first, and after each assignment filters the domains of comparable
    unassigned pairs to paths lying pointwise below/above it.  With
    ``prune`` an open whose projections are provably non-homotopic is
    rejected before searching.
    """
    S = _pair_ids(P, S)
    if not S:
        raise ValueError("S must be nonempty")
    P2 = square(P)
    mask = P2.down_mask(sum(1 << q for q in S))
    if prune and limit_status(P, S) == "refuted":
        return None
    table = _path_table(P, m, limit)
    M = P.relation_matrix()
    elems = bit_list(mask)
    paths = {q: table.get(q) for q in elems}
    doms = {q: np.arange(len(paths[q])) for q in elems}
    if any(len(d) == 0 for d in doms.values()):
        return None
    below = {q: [r for r in elems if r != q and P2.leq(r, q)] for q in elems}
    above = {q: [r for r in elems if r != q and P2.leq(q, r)] for q in elems}
    assigned = {}

    def solve(doms):
        if len(assigned) == len(elems):
            return True
        q = min((r for r in elems if r not in assigned), key=lambda r: (len(doms[r]), r))
        for idx in doms[q]:
            gamma = paths[q][idx]
            new = dict(doms)
            ok = True
            for r in below[q]:
                if r in assigned:
                    continue
                d = new[r]
                d = d[M[paths[r][d], gamma].all(axis=1)]
                if not len(d):
                    ok = False
                    break
                new[r] = d
            if ok:
                for r in above[q]:
                    if r in assigned:
                        continue
                    d = new[r]
                    d = d[M[gamma, paths[r][d]].all(axis=1)]
                    if not len(d):
                        ok = False
                        break
                    new[r] = d
            if not ok:
                continue
            assigned[q] = idx
            new[q] = np.array([idx])
            if solve(new):
                return True
            del assigned[q]
        return False

    if not solve(doms):
        return None
    return {q: tuple(int(v) for v in paths[q][assigned[q]]) for q in elems}


@dataclass
class CCmResult:
    m: int
    value: int | None              # None encodes infinity
    certificate: SectionCertificate | None
    family: list = field(default_factory=list)   # maximal good subsets (pair-id tuples)


def cc_m(P: FinitePoset, m: int, *, prune: bool = True, limit: int = DEFAULT_LIMIT,
         workers: int = 1) -> CCmResult:
    """``CC_m(P)`` as an exact minimum cover, with a verified certificate."""
    _require_connected(P)
    P2 = square(P)
    maxes = P2.maximal_elements()
    tables = {}

    def good(local):
        S = [maxes[i] for i in iter_bits(local)]
        t = section_feasible(P, S, m, prune=prune, limit=limit)
        if t is not None:
            tables[local] = t
        return t is not None

    singles = []
    for i in range(len(maxes)):
        if not good(1 << i):
            return CCmResult(m, None, None)
        singles.append(1 << i)
    family = maximal_feasible_sets(len(maxes), good, FAMILY_LIMIT, workers, singles)
    cover = minimum_cover((1 << len(maxes)) - 1, family)
    cert = SectionCertificate(m)
    for local in cover:
        subset = tuple(maxes[i] for i in iter_bits(local))
        t = tables[local]
        cert.parts.append(SectionPart(subset, tuple(sorted(t)), t))
    check = verify_certificate(P, cert)
    if not check:
        raise AssertionError(f"emitted certificate failed verification: {check.reason}")
    fam = [tuple(maxes[i] for i in iter_bits(s)) for s in family]
    return CCmResult(m, len(cover), cert, fam)


def homotopy_cover_bound(P: FinitePoset, limit: int = SEARCH_LIMIT, workers: int = 1):
    """Minimum cover of ``Max(P x P)`` by subsets not refuted for every ``m``.

    This is a lower bound for ``CC(P)`` valid for all fence lengths; it is
    exact when no subset was left undecided.  Returns ``(bound, undecided)``.
    """
    maxes = square(P).maximal_elements()
    undecided = []

    def good(local):
        S = [maxes[i] for i in iter_bits(local)]
        status = limit_status(P, S, limit)
        if status == "unknown":
            undecided.append(local)
        return status != "refuted"

    family = maximal_feasible_sets(len(maxes), good, FAMILY_LIMIT, workers)
    cover = minimum_cover((1 << len(maxes)) - 1, family)
    return len(cover), len(undecided)


@dataclass
class CCBracket:
    lower: int
    upper: int | None              # None: no finite CC_m found up to m_max
    m_at_upper: int | None
    certificate: SectionCertificate | None
    exact: bool
    trace: list                    # (m, CC_m or None) for every m computed
    lower_sources: dict            # name -> bound

    @property
    def value(self):
        return self.upper if self.exact else None


def cc(P: FinitePoset, m_max: int | None = None, *, limit: int = DEFAULT_LIMIT,
       workers: int = 1, cat_value: int | None = None, exhaustive: bool = False) -> CCBracket:
    """Bracket ``lower <= CC(P) <= upper`` from ``CC_m`` for ``0 <= m <= m_max``.

    Lower bounds: ``cat(P)``, 2 for a non-contractible space, the zero-divisor
    bound and the homotopy-class cover bound.  The loop over ``m`` stops once
    the upper bound meets the lower one unless ``exhaustive`` is set.
    """
    _require_connected(P)
    if m_max is None:
        m_max = P.n
    sources = {}
    if is_contractible(P):
        sources["contractible"] = 1
    else:
        sources["non_contractible"] = 2
    sources["cat"] = cat(P, limit=limit, workers=workers).value if cat_value is None \
        else cat_value
    try:
        sources["zero_divisors"] = zero_divisor_cup_length(P).z + 1
    except SizeLimit:
        pass
    bound, _ = homotopy_cover_bound(P, workers=workers)
    sources["homotopy_classes"] = bound
    lower = max(sources.values())

    upper = m_at = cert = None
    trace = []
    for m in range(m_max + 1):
        res = cc_m(P, m, limit=limit, workers=workers)
        trace.append((m, res.value))
        if res.value is not None and (upper is None or res.value < upper):
            upper, m_at, cert = res.value, m, res.certificate
        if upper is not None and upper <= lower and not exhaustive:
            break
    if upper is not None and upper < lower:
        raise ChainViolation(f"upper bound {upper} below lower bound {lower}")
    return CCBracket(lower, upper, m_at, cert, upper == lower, trace, sources)


# LS-category

@dataclass
class CatResult:
    value: int
    certificate: CatCertificate


def cat(P: FinitePoset, *, limit: int = SEARCH_LIMIT, workers: int = 1) -> CatResult:
    """Least number of opens covering ``P``, each contractible inside ``P``."""
    maxes = P.maximal_elements()
    fences = {}

    def good(local):
        S = [maxes[i] for i in iter_bits(local)]
        fence = contraction_fence(P.down_set(S), P, limit)
        if fence is not None:
            fences[local] = fence
        return fence is not None

    family = maximal_feasible_sets(len(maxes), good, FAMILY_LIMIT, workers)
    cover = minimum_cover((1 << len(maxes)) - 1, family)
    cert = CatCertificate()
    for local in cover:
        subset = tuple(maxes[i] for i in iter_bits(local))
        opened = tuple(P.down_set(subset).elements())
        cert.parts.append(CatPart(subset, opened, [tuple(int(v) for v in h)
                                                   for h in fences[local]]))
    ambient = P
    if P.factors is not None and P.factors[0] is P.factors[1]:
        cert.square = True
        ambient = P.factors[0]
    check = verify_certificate(ambient, cert)
    if not check:
        raise AssertionError(f"emitted certificate failed verification: {check.reason}")
    return CatResult(len(cover), cert)


def cat_square(P: FinitePoset, **kw) -> CatResult:
    """``cat(P x P)``; the certificate is stated over ``P``."""
    return cat(square(P), **kw)


# the inequality chain

@dataclass
class InequalityReport:
    cat: int
    cc: CCBracket
    cat_square: int
    max_count: int
    max_bound: int
    holds: bool
    checks: dict

    def line(self) -> str:
        up = "inf" if self.cc.upper is None else str(self.cc.upper)
        mid = up if self.cc.exact else f"[{self.cc.lower},{up}]"
        return f"{self.cat} <= {mid} <= {self.cat_square} <= {self.max_bound}"


def inequality_report(P: FinitePoset, m_max: int | None = None, *,
                      limit: int = DEFAULT_LIMIT, workers: int = 1,
                      strict: bool = True) -> InequalityReport:
    """``cat(P) <= CC(P) <= cat(P x P) <= |Max P|^2`` on computed values.

    With a bracket for CC the checkable parts are ``cat <= upper`` and
    ``lower <= cat(P x P)``.  Raises :class:`ChainViolation` when ``strict``.
    """
    c = cat(P, workers=workers)
    bracket = cc(P, m_max, limit=limit, workers=workers, cat_value=c.value)
    csq = cat_square(P, workers=workers).value
    k = len(P.maximal_elements())
    checks = {
        "cat<=cc_upper": bracket.upper is None or c.value <= bracket.upper,
        "cc_lower<=cat_square": bracket.lower <= csq,
        "cat_square<=max_bound": csq <= k * k,
    }
    holds = all(checks.values())
    report = InequalityReport(c.value, bracket, csq, k, k * k, holds, checks)
    if strict and not holds:
        raise ChainViolation(f"inequality chain fails: {report.line()} {checks}")
    return report


__all__ = [
    "square", "section_feasible", "limit_status", "cc_m", "CCmResult", "cc", "CCBracket",
    "homotopy_cover_bound", "cat", "cat_square", "CatResult", "inequality_report",
    "InequalityReport",
]

"""Order complexes of finite posets.

Simplices are stored as tuples of vertex ids listed bottom to top along the
chain.  That ordering is total on each simplex and compatible with faces,
which is all the cup product needs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ._bits import iter_bits
from .errors import DEFAULT_LIMIT, SizeLimit, UnknownFormat
from .poset import FinitePoset


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: tuple            # vertex names
    simplices: tuple           # simplices[k] = sorted tuple of k-simplices
    _index: dict = field(default=None, compare=False, repr=False, hash=False)

    @classmethod
    def from_simplices(cls, vertices, simplices):
        by_dim = {}
        for s in simplices:
            by_dim.setdefault(len(s) - 1, set()).add(tuple(s))
        top = max(by_dim, default=-1)
        groups = tuple(tuple(sorted(by_dim.get(k, ()))) for k in range(top + 1))
        return cls(tuple(vertices), groups)

    @classmethod
    def from_facets(cls, vertices, facets):
        """Close a facet list under faces (order inside each facet is kept)."""
        faces = set()
        for facet in facets:
            facet = tuple(facet)
            k = len(facet)
            for mask in range(1, 1 << k):
                faces.add(tuple(facet[i] for i in range(k) if (mask >> i) & 1))
        return cls.from_simplices(vertices, faces)

    @property
    def dimension(self) -> int:
        return len(self.simplices) - 1

    def index(self, k: int) -> dict:
        """Map ``k``-simplex -> position in ``simplices[k]``."""
        idx = self._index
        if idx is None:
            idx = {}
            object.__setattr__(self, "_index", idx)
        if k not in idx:
            idx[k] = {s: i for i, s in enumerate(self.simplices[k])} \
                if 0 <= k < len(self.simplices) else {}
        return idx[k]

    def count(self, k: int) -> int:
        return len(self.simplices[k]) if 0 <= k < len(self.simplices) else 0

    def facets(self) -> list[tuple]:
        out = []
        for k, group in enumerate(self.simplices):
            above = self.simplices[k + 1] if k + 1 < len(self.simplices) else ()
            covered = set()
            for t in above:
                for i in range(len(t)):
                    covered.add(t[:i] + t[i + 1:])
            out.extend(s for s in group if s not in covered)
        return sorted(out)

    def is_closed(self) -> bool:
        for k in range(1, len(self.simplices)):
            lower = self.index(k - 1)
            for s in self.simplices[k]:
                for i in range(len(s)):
                    if s[:i] + s[i + 1:] not in lower:
                        return False
        return True


def order_complex(P: FinitePoset, limit: int = DEFAULT_LIMIT) -> SimplicialComplex:
    """All nonempty chains of ``P``; cached on the poset."""
    K = P._cache.get("order_complex")
    if K is not None:
        return K
    chains = []
    count = 0

    # extend chains upward from each vertex
    stack = [((v,), P.strict_up(v)) for v in range(P.n - 1, -1, -1)]
    while stack:
        ch, above = stack.pop()
        chains.append(ch)
        count += 1
        if count > limit:
            raise SizeLimit("order complex chains", count, limit)
        for w in sorted(iter_bits(above), reverse=True):
            stack.append((ch + (w,), above & P.strict_up(w)))
    K = SimplicialComplex.from_simplices([P.name(i) for i in range(P.n)], chains)
    P._cache["order_complex"] = K
    return K


def f_vector(K: SimplicialComplex) -> tuple[int, ...]:
    return tuple(len(g) for g in K.simplices)


def euler_characteristic(K: SimplicialComplex) -> int:
    return sum((-1) ** k * f for k, f in enumerate(f_vector(K)))


def export(K: SimplicialComplex, fmt: str = "facet-list") -> bytes:
    facets = [[K.vertices[v] for v in f] for f in K.facets()]
    if fmt == "facet-list":
        return "".join(" ".join(f) + "\n" for f in facets).encode()
    if fmt == "structured":
        return (json.dumps({"vertices": list(K.vertices), "facets": facets},
                           indent=2) + "\n").encode()
    raise UnknownFormat(fmt)


def import_complex(data, fmt: str = "facet-list", vertices=None) -> SimplicialComplex:
    """Inverse of :func:`export`.

    The facet list does not carry isolated-vertex information beyond its own
    lines, so vertex order is taken from ``vertices`` when given, otherwise
    from first appearance.
    """
    text = data.decode() if isinstance(data, bytes) else data
    if fmt == "structured":
        obj = json.loads(text)
        names, facets = list(obj["vertices"]), obj["facets"]
    elif fmt == "facet-list":
        facets = [line.split() for line in text.splitlines() if line.strip()]
        if vertices is None:
            names = []
            for f in facets:
                names.extend(v for v in f if v not in names)
        else:
            names = list(vertices)
    else:
        raise UnknownFormat(fmt)
    pos = {v: i for i, v in enumerate(names)}
    return SimplicialComplex.from_facets(names, [[pos[v] for v in f] for f in facets])

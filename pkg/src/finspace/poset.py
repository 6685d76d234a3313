"""Finite posets as finite T0 (Alexandroff) spaces.

Elements are dense integer ids ``0..n-1`` with a label table.  The order is
kept as one bitset row per element: bit ``j`` of ``up[i]`` is set iff
``x_i <= x_j``.  The transposed rows (``down``) are built once at
construction.  Instances are immutable.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from ._bits import bit_list, from_indices, iter_bits, popcount
from .errors import CycleError, ParseError, UnknownLabel

_NAME_RE = re.compile(r"^[^\s,()\[\]<>#]+$")


def label_name(label) -> str:
    if isinstance(label, tuple):
        return "(" + ",".join(label_name(x) for x in label) + ")"
    return str(label)


class FinitePoset:
    """An immutable finite partial order.

    ``labels`` are arbitrary distinct hashables (strings for hand-made posets,
    pairs for products, value tuples for path spaces).  ``up`` holds the order
    as bitset rows.  ``factors`` is set on posets built by :func:`product`.
    """

    __slots__ = ("labels", "up", "down", "factors", "_index", "_names", "_cache")

    def __init__(self, labels, up, *, factors=None, check=True):
        labels = tuple(labels)
        up = tuple(int(r) for r in up)
        n = len(labels)
        if len(up) != n:
            raise ValueError("one relation row per label is required")
        index = {lab: i for i, lab in enumerate(labels)}
        if len(index) != n:
            raise ValueError("labels must be distinct")
        down = [0] * n
        for i, row in enumerate(up):
            for j in iter_bits(row):
                down[j] |= 1 << i
        self.labels = labels
        self.up = up
        self.down = tuple(down)
        self.factors = factors
        self._index = index
        self._names = None
        self._cache = {}
        if check:
            self._check()

    def _check(self):
        n = len(self.labels)
        full = (1 << n) - 1
        for i, row in enumerate(self.up):
            if row & ~full:
                raise ValueError("relation row references unknown element")
            if not (row >> i) & 1:
                raise ValueError(f"relation is not reflexive at {self.name(i)}")
            others = row & ~(1 << i)
            if others & self.down[i]:
                j = next(iter_bits(others & self.down[i]))
                raise CycleError(
                    f"antisymmetry fails between {self.name(i)} and {self.name(j)}")
            for j in iter_bits(others):
                if self.up[j] & ~row:
                    raise ValueError("relation is not transitive")

    # basic queries
    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(range(len(self.labels)))

    def __eq__(self, other):
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return self.labels == other.labels and self.up == other.up

    def __hash__(self):
        return hash((self.labels, self.up))

    def __repr__(self):
        names = ", ".join(self.name(i) for i in range(self.n))
        return f"FinitePoset(n={self.n}, [{names}])"

    def leq(self, i: int, j: int) -> bool:
        return bool((self.up[i] >> j) & 1)

    def lt(self, i: int, j: int) -> bool:
        return i != j and bool((self.up[i] >> j) & 1)

    def comparable(self, i: int, j: int) -> bool:
        return bool(((self.up[i] | self.down[i]) >> j) & 1)

    def index(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            pass
        if isinstance(label, str):
            if self._names is None:
                self._names = {self.name(i): i for i in range(self.n)}
            if label in self._names:
                return self._names[label]
        raise UnknownLabel(label)

    def name(self, i: int) -> str:
        return label_name(self.labels[i])

    def names(self, ids) -> list[str]:
        return [self.name(i) for i in ids]

    def relation_matrix(self):
        """Dense boolean matrix ``M[i, j] = (x_i <= x_j)``, cached."""
        m = self._cache.get("matrix")
        if m is None:
            import numpy as np

            m = np.zeros((self.n, self.n), dtype=bool)
            for i, row in enumerate(self.up):
                for j in iter_bits(row):
                    m[i, j] = True
            m.setflags(write=False)
            self._cache["matrix"] = m
        return m

    # extrema and sets
    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def maximal_elements(self) -> list[int]:
        return [i for i in range(self.n) if self.up[i] == 1 << i]

    def minimal_elements(self) -> list[int]:
        return [i for i in range(self.n) if self.down[i] == 1 << i]

    def strict_up(self, i: int) -> int:
        return self.up[i] & ~(1 << i)

    def strict_down(self, i: int) -> int:
        return self.down[i] & ~(1 << i)

    def down_mask(self, mask: int) -> int:
        out = 0
        for i in iter_bits(mask):
            out |= self.down[i]
        return out

    def up_mask(self, mask: int) -> int:
        out = 0
        for i in iter_bits(mask):
            out |= self.up[i]
        return out

    def down_set(self, elements) -> "OpenSet":
        """Smallest open set (down-set) containing ``elements``."""
        return OpenSet(self, self.down_mask(from_indices(elements)))

    def lower_covers(self, i: int) -> list[int]:
        below = self.strict_down(i)
        return [j for j in iter_bits(below) if not (self.strict_up(j) & below)]

    def upper_covers(self, i: int) -> list[int]:
        above = self.strict_up(i)
        return [j for j in iter_bits(above) if not (self.strict_down(j) & above)]

    def covers(self) -> list[tuple[int, int]]:
        return [(j, i) for i in range(self.n) for j in self.lower_covers(i)]

    def linear_extension(self) -> list[int]:
        """Elements sorted so that ``x < y`` implies x comes first."""
        return sorted(range(self.n), key=lambda i: (popcount(self.down[i]), i))

    def subposet(self, mask: int) -> "FinitePoset":
        """Induced subposet on the elements of ``mask``, in id order."""
        ids = bit_list(mask)
        pos = {e: k for k, e in enumerate(ids)}
        rows = []
        for e in ids:
            rows.append(from_indices(pos[j] for j in iter_bits(self.up[e] & mask)))
        return FinitePoset([self.labels[e] for e in ids], rows, check=False)


@dataclass(frozen=True)
class OpenSet:
    """A down-closed subset of ``ambient``, stored as a bitset."""

    ambient: FinitePoset
    members: int

    def __post_init__(self):
        if self.ambient.down_mask(self.members) != self.members:
            raise ValueError("open sets must be down-closed")

    def __contains__(self, i):
        return bool((self.members >> i) & 1)

    def __len__(self):
        return popcount(self.members)

    def __iter__(self):
        return iter_bits(self.members)

    def elements(self) -> list[int]:
        return bit_list(self.members)

    def names(self) -> list[str]:
        return self.ambient.names(self.elements())

    def as_poset(self) -> FinitePoset:
        return self.ambient.subposet(self.members)


# constructors

def from_relation(labels, leq) -> FinitePoset:
    """Build a poset from a predicate ``leq(i, j)`` over label positions."""
    labels = list(labels)
    n = len(labels)
    rows = [from_indices(j for j in range(n) if i == j or leq(i, j)) for i in range(n)]
    return FinitePoset(labels, rows)


def from_hasse(labels, covers) -> FinitePoset:
    """Poset generated by covering pairs ``(a, b)`` meaning ``a < b``."""
    labels = list(labels)
    index = {}
    for i, lab in enumerate(labels):
        if lab in index:
            raise ValueError(f"duplicate label {lab!r}")
        index[lab] = i
    n = len(labels)
    rows = [1 << i for i in range(n)]
    for a, b in covers:
        for lab in (a, b):
            if lab not in index:
                raise UnknownLabel(lab)
        rows[index[a]] |= 1 << index[b]
    # Warshall closure on bitset rows
    for k in range(n):
        bk = 1 << k
        rk = rows[k]
        for i in range(n):
            if rows[i] & bk:
                rows[i] |= rk
    for i in range(n):
        for j in iter_bits(rows[i] & ~(1 << i)):
            if (rows[j] >> i) & 1:
                raise CycleError(f"cycle through {labels[i]!r} and {labels[j]!r}")
    return FinitePoset(labels, rows, check=False)


def product(P: FinitePoset, Q: FinitePoset) -> FinitePoset:
    """Product order; element ``(p, q)`` has id ``p * |Q| + q``."""
    nq = Q.n
    labels = [(a, b) for a in P.labels for b in Q.labels]
    rows = []
    for i in range(P.n):
        pi = bit_list(P.up[i])
        for j in range(nq):
            qj = Q.up[j]
            row = 0
            for a in pi:
                row |= qj << (a * nq)
            rows.append(row)
    return FinitePoset(labels, rows, factors=(P, Q), check=False)


def opposite(P: FinitePoset) -> FinitePoset:
    factors = None
    if P.factors is not None:
        factors = tuple(opposite(F) for F in P.factors)
    return FinitePoset(P.labels, P.down, factors=factors, check=False)


def fence(m: int) -> FinitePoset:
    """The fence ``0 < 1 > 2 < ... m`` with m+1 points."""
    if m < 0:
        raise ValueError("fence length must be non-negative")
    rows = [1 << i for i in range(m + 1)]
    for i in range(0, m + 1, 2):
        for j in (i - 1, i + 1):
            if 0 <= j <= m:
                rows[i] |= 1 << j
    return FinitePoset(list(range(m + 1)), rows, check=False)


def chain(k: int, prefix="c") -> FinitePoset:
    labels = [f"{prefix}{i}" for i in range(k)]
    return from_hasse(labels, list(zip(labels, labels[1:])))


def antichain(k: int, prefix="p") -> FinitePoset:
    return from_hasse([f"{prefix}{i}" for i in range(k)], [])


def point() -> FinitePoset:
    return from_hasse(["*"], [])


def isomorphic(P: FinitePoset, Q: FinitePoset):
    """Return an order isomorphism ``P -> Q`` as a tuple of ids, or None.

    The witness is the lexicographically smallest one: elements of P are
    assigned in id order and candidates tried in increasing id order.
    """
    n = P.n
    if n != Q.n:
        return None

    def signature(R, i):
        return (popcount(R.up[i]), popcount(R.down[i]))

    sig_p = [signature(P, i) for i in range(n)]
    sig_q = [signature(Q, j) for j in range(n)]
    if sorted(sig_p) != sorted(sig_q):
        return None
    candidates = [[j for j in range(n) if sig_q[j] == sig_p[i]] for i in range(n)]
    image = [-1] * n
    used = [False] * n

    def extend(i):
        if i == n:
            return True
        for j in candidates[i]:
            if used[j]:
                continue
            ok = True
            for k in range(i):
                fk = image[k]
                if P.leq(k, i) != Q.leq(fk, j) or P.leq(i, k) != Q.leq(j, fk):
                    ok = False
                    break
            if ok:
                image[i] = j
                used[j] = True
                if extend(i + 1):
                    return True
                used[j] = False
        image[i] = -1
        return False

    return tuple(image) if extend(0) else None


# text and structured formats

def _check_name(name, lineno=None):
    if not _NAME_RE.match(name):
        where = f" (line {lineno})" if lineno else ""
        raise ParseError(f"invalid element name {name!r}{where}")


def parse_poset(text: str) -> FinitePoset:
    """Parse the line format or its JSON mirror (detected by a leading ``{``)."""
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    labels, covers = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "element" and len(parts) == 2:
            _check_name(parts[1], lineno)
            labels.append(parts[1])
        elif parts[0] == "cover" and len(parts) == 4 and parts[2] == "<":
            covers.append((parts[1], parts[3]))
        else:
            raise ParseError(f"line {lineno}: cannot parse {raw!r}")
    return _build(labels, covers)


def _parse_json(text):
    try:
        data = json.loads(text)
        labels = [str(x) for x in data["elements"]]
        covers = [(str(a), str(b)) for a, b in data.get("covers", [])]
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"bad structured poset: {exc}") from exc
    for lab in labels:
        _check_name(lab)
    return _build(labels, covers)


def _build(labels, covers):
    try:
        return from_hasse(labels, covers)
    except UnknownLabel as exc:
        raise ParseError(f"cover references unknown element {exc.args[0]!r}") from exc
    except ValueError as exc:
        if isinstance(exc, CycleError):
            raise
        raise ParseError(str(exc)) from exc


def load_poset(path) -> FinitePoset:
    with open(path, encoding="utf-8") as fh:
        return parse_poset(fh.read())


def format_poset(P: FinitePoset, structured=False) -> str:
    names = [P.name(i) for i in range(P.n)]
    covers = [(names[a], names[b]) for a, b in P.covers()]
    if structured:
        return json.dumps({"elements": names, "covers": [list(c) for c in covers]},
                          indent=2) + "\n"
    lines = [f"element {x}" for x in names]
    lines += [f"cover {a} < {b}" for a, b in covers]
    return "\n".join(lines) + "\n"

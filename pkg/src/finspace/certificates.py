"""Witnesses for CC_m and cat values, their text format, and an independent checker.

The checker works from the raw order rows of the input poset only: it
rebuilds the product order, down-sets, maximal elements, path conditions and
map conditions from their definitions and calls nothing from the search code.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ParseError
from .poset import FinitePoset


@dataclass
class SectionPart:
    subset: tuple          # maximal pairs of P x P, as ids x * n + y
    open: tuple            # sorted ids of the generated open set
    table: dict            # pair id -> path values (ids of P)


@dataclass
class SectionCertificate:
    """An open cover of ``P x P`` with a section of the endpoint map on each part."""

    m: int
    parts: list = field(default_factory=list)


@dataclass
class CatPart:
    subset: tuple          # maximal elements of the ambient poset
    open: tuple            # sorted ids of the generated open set
    fence: list            # maps open -> ambient, from the inclusion to a constant


@dataclass
class CatCertificate:
    """An open cover by sets each contracted inside the ambient poset.

    With ``square`` set the ambient poset is ``P x P`` (ids ``x * n + y``).
    """

    parts: list = field(default_factory=list)
    square: bool = False


@dataclass(frozen=True)
class Verification:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def _fail(msg):
    return Verification(False, msg)


def verify_certificate(P: FinitePoset, cert) -> Verification:
    if isinstance(cert, SectionCertificate):
        return _verify_sections(P, cert)
    if isinstance(cert, CatCertificate):
        return _verify_cat(P, cert)
    return _fail(f"unknown certificate type {type(cert).__name__}")


def _verify_sections(P, cert):
    n = len(P.up)

    def le(a, b):
        return (P.up[a] >> b) & 1 == 1

    def pair_le(p, q):
        return le(p // n, q // n) and le(p % n, q % n)

    m = cert.m
    if not isinstance(m, int) or m < 0:
        return _fail("fence length must be a non-negative integer")
    tops = [a for a in range(n) if all(b == a or not le(a, b) for b in range(n))]
    max_pairs = {a * n + b for a in tops for b in tops}
    covered_max, covered_all = set(), set()
    for k, part in enumerate(cert.parts, 1):
        subset = set(part.subset)
        if not subset:
            return _fail(f"part {k}: empty subset")
        if not subset <= max_pairs:
            return _fail(f"part {k}: subset contains a non-maximal pair")
        gen = sorted(q for q in range(n * n) if any(pair_le(q, s) for s in subset))
        if list(part.open) != gen:
            return _fail(f"part {k}: open set is not the down-set of the subset")
        if set(part.table) != set(gen):
            return _fail(f"part {k}: section table does not match the open set")
        for q in gen:
            path = tuple(part.table[q])
            if len(path) != m + 1:
                return _fail(f"part {k}: path at {q} has length {len(path) - 1}, not {m}")
            if any(not isinstance(v, int) or not 0 <= v < n for v in path):
                return _fail(f"part {k}: path at {q} leaves the poset")
            if path[0] != q // n or path[-1] != q % n:
                return _fail(f"part {k}: path at {q} has wrong endpoints")
            for i in range(m):
                a, b = path[i], path[i + 1]
                if (i % 2 == 0 and not le(a, b)) or (i % 2 == 1 and not le(b, a)):
                    return _fail(f"part {k}: path at {q} breaks the zigzag at step {i}")
        for p in gen:
            for q in gen:
                if p != q and pair_le(p, q):
                    sp, sq = part.table[p], part.table[q]
                    if not all(le(a, b) for a, b in zip(sp, sq)):
                        return _fail(f"part {k}: section not order-preserving at {p} <= {q}")
        covered_max |= subset
        covered_all |= set(gen)
    if covered_max != max_pairs:
        return _fail("subsets do not cover the maximal pairs")
    if covered_all != set(range(n * n)):
        return _fail("open sets do not cover P x P")
    return Verification(True, f"{len(cert.parts)} parts at m={m}")


def _verify_cat(P, cert):
    if cert.square:
        base = len(P.up)
        n = base * base

        def le(a, b):
            return ((P.up[a // base] >> (b // base)) & 1 == 1
                    and (P.up[a % base] >> (b % base)) & 1 == 1)
    else:
        n = len(P.up)

        def le(a, b):
            return (P.up[a] >> b) & 1 == 1

    tops = {a for a in range(n) if all(b == a or not le(a, b) for b in range(n))}
    covered = set()
    for k, part in enumerate(cert.parts, 1):
        subset = set(part.subset)
        if not subset or not subset <= tops:
            return _fail(f"part {k}: subset must be a nonempty set of maximal elements")
        gen = sorted(x for x in range(n) if any(le(x, s) for s in subset))
        if list(part.open) != gen:
            return _fail(f"part {k}: open set is not the down-set of the subset")
        fence = [tuple(h) for h in part.fence]
        if not fence:
            return _fail(f"part {k}: empty fence")
        if fence[0] != tuple(gen):
            return _fail(f"part {k}: fence does not start at the inclusion")
        if len(set(fence[-1])) != 1:
            return _fail(f"part {k}: fence does not end at a constant map")
        for j, h in enumerate(fence):
            if len(h) != len(gen) or any(not isinstance(v, int) or not 0 <= v < n for v in h):
                return _fail(f"part {k}: map {j} has a bad value table")
            for a in range(len(gen)):
                for b in range(len(gen)):
                    if le(gen[a], gen[b]) and not le(h[a], h[b]):
                        return _fail(f"part {k}: map {j} is not order-preserving")
        for j in range(len(fence) - 1):
            h, g = fence[j], fence[j + 1]
            if not (all(le(a, b) for a, b in zip(h, g)) or all(le(b, a) for a, b in zip(h, g))):
                return _fail(f"part {k}: maps {j} and {j + 1} are not comparable")
        covered |= subset
    if covered != tops:
        return _fail("subsets do not cover the maximal elements")
    return Verification(True, f"{len(cert.parts)} parts")


# text format

def dumps_certificate(P: FinitePoset, cert) -> str:
    """Serialize; section tables are written ``(x,y) -> [v0, ..., vm]``."""
    n = P.n
    if isinstance(cert, SectionCertificate):
        def pair(q):
            return f"({P.name(q // n)},{P.name(q % n)})"

        lines = ["section-certificate", f"m {cert.m}"]
        for part in cert.parts:
            lines.append("part")
            lines.append("subset " + " ".join(pair(q) for q in part.subset))
            lines.append("open " + " ".join(pair(q) for q in part.open))
            for q in part.open:
                vals = ", ".join(P.name(v) for v in part.table[q])
                lines.append(f"{pair(q)} -> [{vals}]")
            lines.append("end")
        return "\n".join(lines) + "\n"
    if isinstance(cert, CatCertificate):
        if cert.square:
            def name(q):
                return f"({P.name(q // n)},{P.name(q % n)})"
        else:
            name = P.name
        lines = ["cat-certificate"] + (["ambient square"] if cert.square else [])
        for part in cert.parts:
            lines.append("part")
            lines.append("subset " + " ".join(name(x) for x in part.subset))
            lines.append("open " + " ".join(name(x) for x in part.open))
            for h in part.fence:
                lines.append("map [" + ", ".join(name(v) for v in h) + "]")
            lines.append("end")
        return "\n".join(lines) + "\n"
    raise TypeError(f"cannot serialize {type(cert).__name__}")


def _lookup(P, name):
    try:
        return P.index(name)
    except KeyError:
        raise ParseError(f"unknown element {name!r} in certificate") from None


def _pair_id(P, token):
    if not (token.startswith("(") and token.endswith(")")):
        raise ParseError(f"expected a pair, got {token!r}")
    inner = token[1:-1]
    # element names in parsed posets contain no commas, so split on the middle one
    parts = inner.split(",")
    if len(parts) != 2:
        raise ParseError(f"bad pair {token!r}")
    return _lookup(P, parts[0]) * P.n + _lookup(P, parts[1])


def _values(P, text, conv=None):
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError(f"expected a bracketed list, got {text!r}")
    body = text[1:-1].strip()
    if conv is None:
        def conv(t):
            return _lookup(P, t)
    return tuple(conv(v.strip()) for v in body.split(", ")) if body else ()


def loads_certificate(text: str, P: FinitePoset):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty certificate")
    kind = lines[0]
    if kind == "section-certificate":
        if not lines[1].startswith("m "):
            raise ParseError("missing fence length line")
        try:
            cert = SectionCertificate(int(lines[1][2:]))
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
        body = lines[2:]
    elif kind == "cat-certificate":
        cert = CatCertificate(square=len(lines) > 1 and lines[1] == "ambient square")
        body = lines[2:] if cert.square else lines[1:]
    else:
        raise ParseError(f"unknown certificate header {kind!r}")
    if kind == "section-certificate" or cert.square:
        def conv(t):
            return _pair_id(P, t)
    else:
        def conv(t):
            return _lookup(P, t)
    part = None
    for line in body:
        if line == "part":
            part = {"subset": (), "open": (), "rows": []}
        elif line == "end":
            if part is None:
                raise ParseError("'end' without 'part'")
            if kind == "section-certificate":
                cert.parts.append(SectionPart(part["subset"], part["open"], dict(part["rows"])))
            else:
                cert.parts.append(CatPart(part["subset"], part["open"], part["rows"]))
            part = None
        elif part is None:
            raise ParseError(f"line outside a part: {line!r}")
        elif line.startswith("subset ") or line.startswith("open "):
            key, rest = line.split(" ", 1)
            part[key] = tuple(conv(t) for t in rest.split())
        elif kind == "cat-certificate" and line.startswith("map "):
            part["rows"].append(_values(P, line[4:], conv))
        elif kind == "section-certificate" and " -> " in line:
            lhs, rhs = line.split(" -> ", 1)
            part["rows"].append((_pair_id(P, lhs.strip()), _values(P, rhs)))
        else:
            raise ParseError(f"cannot parse certificate line {line!r}")
    if part is not None:
        raise ParseError("unterminated part")
    return cert

"""Mod-2 cohomology of order complexes, cup products, zero-divisor cup length.

Cochains of degree ``k`` are Python ints used as bitsets over the
``k``-simplices of a :class:`SimplicialComplex`.  All linear algebra is over
GF(2), so no signs appear anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ._bits import iter_bits
from .errors import SizeLimit
from .order_complex import SimplicialComplex, order_complex
from .poset import FinitePoset


class Echelon:
    """Row-echelon basis over GF(2); each row carries a tag bitset.

    Rows are keyed by their leading bit.  ``reduce`` returns the residual and
    the XOR of tags of the rows used, so tags track linear combinations.
    """

    def __init__(self):
        self.rows = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec, tag=0):
        rows = self.rows
        while vec:
            row = rows.get(vec.bit_length() - 1)
            if row is None:
                break
            vec ^= row[0]
            tag ^= row[1]
        return vec, tag

    def add(self, vec, tag=0):
        vec, tag = self.reduce(vec, tag)
        if vec:
            self.rows[vec.bit_length() - 1] = (vec, tag)
            return True
        return False

    def contains(self, vec):
        return self.reduce(vec)[0] == 0


def kernel_and_image(images):
    """Kernel basis (as combination bitsets) and image rank of a linear map
    given by the images of the standard basis vectors."""
    ech = Echelon()
    kernel = []
    for i, img in enumerate(images):
        res, tag = ech.reduce(img, 1 << i)
        if res:
            ech.rows[res.bit_length() - 1] = (res, tag)
        else:
            kernel.append(tag)
    return kernel, len(ech)


def coboundary_images(K: SimplicialComplex, k: int) -> list[int]:
    """``delta`` of each elementary ``k``-cochain, as bitsets over (k+1)-simplices."""
    out = [0] * K.count(k)
    if k + 1 > K.dimension or k < 0:
        return out
    idx = K.index(k)
    for t, s in enumerate(K.simplices[k + 1]):
        for i in range(len(s)):
            out[idx[s[:i] + s[i + 1:]]] |= 1 << t
    return out


def coboundary(K: SimplicialComplex, k: int, bits: int) -> int:
    images = coboundary_images(K, k)
    out = 0
    for i in iter_bits(bits):
        out ^= images[i]
    return out


def coboundary_echelon(K: SimplicialComplex, k: int) -> Echelon:
    """Echelon basis of the coboundaries ``B^k = im delta^{k-1}``."""
    ech = Echelon()
    if k >= 1:
        for img in coboundary_images(K, k - 1):
            ech.add(img)
    return ech


def betti_numbers(K: SimplicialComplex) -> tuple[int, ...]:
    out = []
    prev_rank = 0
    for k in range(K.dimension + 1):
        kernel, rank = kernel_and_image(coboundary_images(K, k))
        out.append(len(kernel) - prev_rank)
        prev_rank = rank
    return tuple(out)


@dataclass(frozen=True)
class Cochain:
    degree: int
    bits: int


def cup_cochains(K: SimplicialComplex, p: int, a: int, q: int, b: int) -> int:
    """Front-face/back-face product on simplices ordered bottom to top."""
    k = p + q
    if k > K.dimension:
        return 0
    ip, iq = K.index(p), K.index(q)
    out = 0
    for t, s in enumerate(K.simplices[k]):
        if (a >> ip[s[:p + 1]]) & 1 and (b >> iq[s[p:]]) & 1:
            out |= 1 << t
    return out


def cup_product(K: SimplicialComplex, alpha: Cochain, beta: Cochain) -> Cochain:
    """Cup product of cochains; lands in the zero cochain above ``dim K``."""
    k = alpha.degree + beta.degree
    return Cochain(k, cup_cochains(K, alpha.degree, alpha.bits, beta.degree, beta.bits))


@dataclass
class CohomRing:
    """H*(K; GF(2)) with cocycle representatives and a product table.

    Basis elements are numbered globally by degree; ``mult[i][j]`` is the
    bitset (over global indices) of the class of ``rep_i ∪ rep_j``.
    """

    complex: SimplicialComplex
    reps: list                 # reps[k] = list of cocycle bitsets
    betti: tuple
    degree_of: list            # global index -> degree
    offset: list               # degree -> first global index
    _echelons: list = field(repr=False, default_factory=list)
    _mult: dict = field(repr=False, default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.degree_of)

    def rep(self, i: int) -> Cochain:
        k = self.degree_of[i]
        return Cochain(k, self.reps[k][i - self.offset[k]])

    def class_of(self, c: Cochain) -> int:
        """Global coordinate bitset of a cocycle's class."""
        if c.degree > self.complex.dimension or c.degree < 0:
            return 0
        res, tag = self._echelons[c.degree].reduce(c.bits)
        if res:
            raise ValueError("not a cocycle")
        return tag << self.offset[c.degree]

    def is_coboundary(self, c: Cochain) -> bool:
        return self.class_of(c) == 0

    def multiply(self, i: int, j: int) -> int:
        key = (i, j)
        out = self._mult.get(key)
        if out is None:
            a, b = self.rep(i), self.rep(j)
            out = self.class_of(cup_product(self.complex, a, b))
            self._mult[key] = out
        return out

    def product(self, x: int, y: int) -> int:
        out = 0
        for i in iter_bits(x):
            for j in iter_bits(y):
                out ^= self.multiply(i, j)
        return out

    def unit(self) -> int:
        """Class of the constant-one 0-cochain."""
        if self.complex.dimension < 0:
            return 0
        return self.class_of(Cochain(0, (1 << self.complex.count(0)) - 1))


def cohomology_ring(K: SimplicialComplex) -> CohomRing:
    reps, echelons, betti = [], [], []
    degree_of, offset = [], []
    for k in range(K.dimension + 1):
        kernel, _ = kernel_and_image(coboundary_images(K, k))
        ech = coboundary_echelon(K, k)
        chosen = []
        for z in kernel:
            # kernel tags are combinations of elementary cochains, i.e. cochains
            if ech.add(z, 1 << len(chosen)):
                chosen.append(z)
        reps.append(chosen)
        echelons.append(ech)
        betti.append(len(chosen))
        offset.append(len(degree_of))
        degree_of.extend([k] * len(chosen))
    return CohomRing(K, reps, tuple(betti), degree_of, offset, echelons)


def poset_cohomology(P: FinitePoset) -> CohomRing:
    ring = P._cache.get("cohomology")
    if ring is None:
        ring = cohomology_ring(order_complex(P))
        P._cache["cohomology"] = ring
    return ring


# induced maps

def pullback(K_dom: SimplicialComplex, K_cod: SimplicialComplex, values, k: int,
             bits: int) -> int:
    """Pull a ``k``-cochain back along a simplicial map given on vertices.

    Simplices collapsed by the map pull back to zero.
    """
    out = 0
    if k > K_cod.dimension:
        return 0
    idx = K_cod.index(k)
    for t, s in enumerate(K_dom.simplices[k]):
        img = tuple(values[v] for v in s)
        if len(set(img)) == k + 1 and (bits >> idx[img]) & 1:
            out |= 1 << t
    return out


def maps_agree_in_cohomology(dom: FinitePoset, cod: FinitePoset, f, g) -> bool:
    """True iff the order-preserving maps ``f, g: dom -> cod`` induce the same
    homomorphism ``H*(cod) -> H*(dom)`` over GF(2)."""
    ring = poset_cohomology(cod)
    Kd = order_complex(dom)
    Kc = ring.complex
    for k in range(min(Kd.dimension, Kc.dimension) + 1):
        if not ring.reps[k]:
            continue
        ech = coboundary_echelon(Kd, k)
        for phi in ring.reps[k]:
            diff = pullback(Kd, Kc, f, k, phi) ^ pullback(Kd, Kc, g, k, phi)
            if diff and not ech.contains(diff):
                return False
    return True


# zero-divisors

@dataclass
class ZeroDivisorResult:
    z: int
    ring: CohomRing
    witness: list              # factors, each a tensor bitset
    product: int               # their product (nonzero unless z == 0)

    @property
    def tc_lower_bound(self) -> int:
        """Lower bound for the unreduced TC of the complex."""
        return self.z + 1


class TensorSquare:
    """H* ⊗ H* over GF(2); tensors are bitsets over pairs ``i*N + j``."""

    def __init__(self, ring: CohomRing):
        self.ring = ring
        self.N = ring.dim
        self._basis_prod = {}

    def degree(self, a: int) -> int:
        N = self.N
        return self.ring.degree_of[a // N] + self.ring.degree_of[a % N]

    def outer(self, x: int, y: int) -> int:
        out = 0
        N = self.N
        for i in iter_bits(x):
            for j in iter_bits(y):
                out |= 1 << (i * N + j)
        return out

    def basis_product(self, a: int, b: int) -> int:
        key = (a, b)
        out = self._basis_prod.get(key)
        if out is None:
            N = self.N
            i, j = divmod(a, N)
            k, l = divmod(b, N)
            out = self.outer(self.ring.multiply(i, k), self.ring.multiply(j, l))
            self._basis_prod[key] = out
        return out

    def mul(self, x: int, y: int) -> int:
        out = 0
        for a in iter_bits(x):
            for b in iter_bits(y):
                out ^= self.basis_product(a, b)
        return out

    def mu(self, x: int) -> int:
        out = 0
        N = self.N
        for a in iter_bits(x):
            out ^= self.ring.multiply(a // N, a % N)
        return out

    def bar(self, i: int) -> int:
        """The zero-divisor ``e_i ⊗ 1 + 1 ⊗ e_i`` (needs a connected complex)."""
        unit = self.ring.unit()
        return self.outer(1 << i, unit) ^ self.outer(unit, 1 << i)


def zero_divisor_cup_length(P: FinitePoset, max_tensor_dim: int = 4096) -> ZeroDivisorResult:
    """Largest ``k`` with a nonzero product of ``k`` zero-divisors.

    Computed exactly as the nilpotency length of the ideal ``I`` of
    positive-degree zero-divisors: ``I^k`` is spanned by products of a basis
    of ``I^(k-1)`` with a basis of ``I``.
    """
    ring = poset_cohomology(P)
    T = TensorSquare(ring)
    N = ring.dim
    if N * N > max_tensor_dim:
        raise SizeLimit("tensor square dimension", N * N, max_tensor_dim)
    top = 2 * max(ring.complex.dimension, 0)

    # homogeneous basis of ker(mu) in positive degree
    by_degree = {}
    for a in range(N * N):
        d = T.degree(a)
        if d > 0:
            by_degree.setdefault(d, []).append(a)
    ideal = []
    for d in sorted(by_degree):
        basis = by_degree[d]
        kernel, _ = kernel_and_image([T.mu(1 << a) for a in basis])
        for comb in kernel:
            ideal.append((d, sum(1 << basis[i] for i in iter_bits(comb))))

    level = [(d, x, [x]) for d, x in ideal]
    if not level:
        return ZeroDivisorResult(0, ring, [], 0)
    z = 1
    while True:
        ech = Echelon()
        nxt = []
        for d1, x, factors in level:
            for d2, y in ideal:
                if d1 + d2 > top:
                    continue
                p = T.mul(x, y)
                if p and ech.add(p):
                    nxt.append((d1 + d2, p, factors + [y]))
        if not nxt:
            break
        level = nxt
        z += 1
    d, prod, factors = level[0]
    return ZeroDivisorResult(z, ring, factors, prod)


def verify_zero_divisor_product(result: ZeroDivisorResult) -> bool:
    """Recompute the witness product on cocycle representatives.

    Each factor is expanded into pairs of representative cocycles; products
    are formed with :func:`cup_cochains` directly and only the final terms
    are reduced to classes.  Also checks every factor multiplies to zero.
    """
    ring = result.ring
    K = ring.complex
    N = ring.dim
    if result.z == 0:
        return result.product == 0 and not result.witness

    def expand(x):
        return [(ring.rep(a // N), ring.rep(a % N)) for a in iter_bits(x)]

    def mul_terms(xs, ys):
        out = []
        for a, b in xs:
            for c, d in ys:
                out.append((cup_product(K, a, c), cup_product(K, b, d)))
        return out

    for factor in result.witness:
        total = 0
        for a, b in expand(factor):
            total ^= ring.class_of(cup_product(K, a, b))
        if total:
            return False
    terms = expand(result.witness[0])
    for factor in result.witness[1:]:
        terms = mul_terms(terms, expand(factor))
    T = TensorSquare(ring)
    total = 0
    for a, b in terms:
        total ^= T.outer(ring.class_of(a), ring.class_of(b))
    return total == result.product and total != 0 and len(result.witness) == result.z


@dataclass
class TCLowerBoundReport:
    betti: tuple
    z: int
    bound: int                 # z + 1, unreduced convention
    cc_upper: int | None
    holds: bool | None
    slack: bool | None         # bound strictly below the CC upper bracket


def tc_lower_bound_report(P: FinitePoset, cc_upper: int | None = None,
                          m_max: int | None = None) -> TCLowerBoundReport:
    """Zero-divisor bound against the CC upper bracket.

    ``cc_upper`` is computed with :func:`finspace.complexity.cc` when omitted.
    """
    zd = zero_divisor_cup_length(P)
    if cc_upper is None:
        from .complexity import cc

        cc_upper = cc(P, m_max).upper
    holds = None if cc_upper is None else zd.z + 1 <= cc_upper
    slack = None if cc_upper is None else zd.z + 1 < cc_upper
    return TCLowerBoundReport(zd.ring.betti, zd.z, zd.z + 1, cc_upper, holds, slack)


__all__ = [
    "Echelon", "kernel_and_image", "coboundary", "coboundary_images", "betti_numbers",
    "Cochain", "cup_product", "cup_cochains", "CohomRing", "cohomology_ring",
    "poset_cohomology", "pullback", "maps_agree_in_cohomology", "zero_divisor_cup_length",
    "verify_zero_divisor_product", "ZeroDivisorResult", "TensorSquare",
    "tc_lower_bound_report", "TCLowerBoundReport",
]

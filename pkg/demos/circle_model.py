"""
The four-point circle
=====================

Two points a, b sit below two points c, d.  As a finite space this is a
model of the circle, and its combinatorial complexity is 4.
"""

from finspace import cc, cc_m, core, order_complex, f_vector, betti_numbers
from finspace.corpus import circle_model
from finspace.certificates import dumps_certificate, verify_certificate

P = circle_model()
print(P.names(P.minimal_elements()), "<", P.names(P.maximal_elements()))

# no beat points, so the space is its own core
C, trace = core(P)
print("core size", C.n, "removed", trace)

# the order complex is a square, i.e. a triangulated circle
K = order_complex(P)
print("f-vector", f_vector(K), "betti", betti_numbers(K))

# CC_m for increasing fence lengths: infinite until paths are long enough
for m in range(6):
    print("m =", m, "CC_m =", cc_m(P, m).value or "inf")

b = cc(P, 4)
print("bracket", (b.lower, b.upper), "exact" if b.exact else "not exact")
print("lower bounds:", b.lower_sources)

cert = b.certificate
print(verify_certificate(P, cert))
print(dumps_certificate(P, cert).splitlines()[:8])

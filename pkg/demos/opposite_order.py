"""
Reversing the order changes the complexity
==========================================

Seven points: y1, y2 above each of x1..x5.  Reversing the order swaps
the two maximal points for five.
"""

from finspace import cat, cc, opposite
from finspace.corpus import two_over_five

P = two_over_five()
Q = opposite(P)

for name, X in [("P", P), ("P^op", Q)]:
    c = cat(X).value
    b = cc(X)
    k = len(X.maximal_elements())
    print(f"{name}: |Max| = {k}, cat = {c}, CC in [{b.lower}, {b.upper}], bound {k * k}")

# the open sets of the categorical cover of P
for part in cat(P).certificate.parts:
    print(P.names(part.open))

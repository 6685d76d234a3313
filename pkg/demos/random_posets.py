"""
Invariants of random small posets
=================================

Draw random path-connected posets, keep the non-contractible ones and
compare category, the complexity bracket and the cohomological lower bound.
"""

import random

import numpy as np

from finspace import inequality_report, is_contractible, zero_divisor_cup_length
from finspace.corpus import random_connected_poset

rng = random.Random(0)
rows = []
while len(rows) < 10:
    P = random_connected_poset(7, rng, min_n=4)
    if is_contractible(P):
        continue
    rep = inequality_report(P)
    z = zero_divisor_cup_length(P).z
    rows.append((P.n, rep.cat, rep.cc.upper, rep.cat_square, z + 1))

table = np.array(rows)
print("n  cat  CC  cat(PxP)  z+1")
print(table)

# every row satisfies cat <= CC <= cat(PxP) and z+1 <= CC
print(np.all(table[:, 1] <= table[:, 2]), np.all(table[:, 2] <= table[:, 3]),
      np.all(table[:, 4] <= table[:, 2]))

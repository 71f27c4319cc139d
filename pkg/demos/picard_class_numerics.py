"""
Scalar invariants of the universal Picard variety
=================================================

Away from the boundary, several facts about the degree-d universal Picard
variety over the moduli of genus-g curves reduce to arithmetic in g and d.
This script tabulates them: the minimal theta multiple realized by a line
bundle, the coprimality test for the existence of a coarse moduli space, the
rank
of the divisor class group, and the degree normalization that the other
constructions rely on.
"""

from math import gcd

from spinpicard import (
    PicardParams,
    class_group_rank,
    coarse_moduli_predicate,
    kouvidakis_class,
    normalize_degree,
)

# The minimal multiple of the theta class realized on the degree-d Picard
# variety is (2g-2)/gcd(2g-2, g+d-1).  At the spin degrees d = (2t+1)(g-1)
# the gcd is maximal, so the multiple drops to its floor.
print("g   d    kouvidakis class")
for g, d in ((3, 42), (3, 43), (4, 60), (4, 61), (5, 4)):
    print(f"{g}  {d:3}   {kouvidakis_class(g, d)}")
print()

# A coarse moduli space for the fibration exists iff d - g + 1 is coprime to
# 2g - 2.  Spin degrees always fail this test: d - g + 1 = 2(t+1)(g-1) shares
# the factor g - 1 (and more) with 2g - 2.
print("coarse moduli space at spin degrees?")
for g in (3, 4, 5):
    for t in (10, 11):
        d = (2 * t + 1) * (g - 1)
        exists = coarse_moduli_predicate(g, d)
        print(f"  g={g}, t={t}, d={d}: gcd({d - g + 1}, {2 * g - 2}) = "
              f"{gcd(d - g + 1, 2 * g - 2)} -> {exists}")
        assert not exists
print()

# The divisor class group of the compactified universal Picard variety is
# free of rank floor(g/2) + 3.
print("g   class group rank")
for g in range(3, 9):
    print(f"{g}   {class_group_rank(g)}")
print()

# Twisting by powers of the relative dualizing sheaf shifts d by multiples of
# 2g - 2 without changing the variety, so any degree can be pushed into the
# window [20(g-1), 20(g-1) + 2g - 2) where the boundary combinatorics is
# uniform.  The normalization is exactly this shift.
print("normalizing degrees at g = 3 (window [40, 44)):")
for d in (-3, 5, 40, 41, 97):
    print(f"  {d:3} -> {normalize_degree(3, d)}")
assert normalize_degree(3, 5) == normalize_degree(3, 5 + 4 * 7)

# The bundle of answers for one (g, d) pair travels together:
params = PicardParams(3, 42)
print()
print(f"g=3, d=42: kouvidakis={params.kouvidakis}, coarse={params.coarse}, "
      f"rank={params.rank}, normalized={params.normalized}")

"""
A tour of the basic inequality
==============================

A nodal curve is recorded here as a dual graph: one weighted vertex per
irreducible component, one edge per node between two components, and a
self-node count per vertex for nodes internal to a component.  A degree-d
line bundle on the curve restricts to each component with some degree, and
not every degree vector of total d behaves well in compactified Jacobians.
The admissible ones are cut out by a two-sided bound on every subcurve,
and this script walks through that bound on a chain of three elliptic
curves.
"""

from fractions import Fraction

from spinpicard import (
    DualGraph,
    Multidegree,
    arithmetic_genus,
    basic_inequality,
    enumerate_multidegrees,
    is_stable,
    subcurve_profile,
)

# A chain a -- b -- c, each component of genus 1, one node per link.
chain = DualGraph(
    [("a", 1), ("b", 1), ("c", 1)],
    {("a", "b"): 1, ("b", "c"): 1},
)

g = arithmetic_genus(chain)
print(f"arithmetic genus: {g}")
print(f"stable: {is_stable(chain)}")
print()

# Pick the total degree d = 42.  For each subcurve Y the admissible window is
#   m_Y <= deg_Y <= m_Y + k_Y
# where k_Y counts the nodes joining Y to the rest of the curve and m_Y is an
# exact rational, so we print it as a fraction, never a float.
d = 42
for subcurve in ({"a"}, {"b"}, {"a", "b"}, {"a", "c"}):
    profile = subcurve_profile(chain, subcurve, d)
    names = ", ".join(sorted(subcurve))
    print(
        f"Y = {{{names}}}: genus {profile.genus}, k_Y = {profile.contact}, "
        f"window [{profile.lower}, {profile.upper}]"
    )
print()

# Note the disconnected subcurve {a, c} above: the inequality quantifies over
# every nonempty set of components, connected or not, and that extra window is
# not implied by the singleton ones.

# Check a particular degree vector.  (14, 14, 14) puts too little on the
# middle component and the report says which subcurves complain.
bad = Multidegree.of({"a": 14, "b": 14, "c": 14})
report = basic_inequality(chain, bad)
print(f"(14, 14, 14) admissible: {report.satisfied}")
for violation in report.violations:
    names = ", ".join(sorted(violation.subcurve))
    print(
        f"  violated on {{{names}}}: degree {violation.degree} "
        f"outside [{violation.lower}, {violation.upper}]"
    )
print()

# The windows pin each component's degree into a short integer range, so the
# whole admissible set is finite and small.  Enumerate it.
found = enumerate_multidegrees(chain, d)
print(f"admissible multidegrees of total {d}: {len(found)}")
for md in found:
    print("  " + str(md.as_dict()))

# Sanity: every enumerated vector really passes the check, and the bad one
# really is excluded.
assert all(basic_inequality(chain, md).satisfied for md in found)
assert bad not in found

# The lower bound scales linearly in d.  Doubling d doubles m_Y + k_Y/2:
half = subcurve_profile(chain, {"a"}, d).lower + Fraction(1, 2)
full = subcurve_profile(chain, {"a"}, 2 * d).lower + Fraction(1, 2)
print()
print(f"m_a + 1/2 at d={d}: {half}; at d={2 * d}: {full} (exactly doubled)")
assert full == 2 * half

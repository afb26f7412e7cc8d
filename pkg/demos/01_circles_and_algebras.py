"""Pointed matched circles and their strand algebras.

A circle with 4k marked points and a fixed-point-free matching encodes a
once-punctured genus-k surface, provided surgering every pair leaves one
circle.  The associated algebra is spanned by diagrams of moving strands
plus horizontal matched pairs; for the torus it recovers a tiny path
algebra with two vertices.
"""

from bhf.pmc import DisconnectedSurgery, make_pmc, reverse, standard_pmc, connected_sum
from bhf.strands import algebra_of, torus_element, to_opposite

torus = standard_pmc("torus")
print("the genus-1 circle:", torus)
print("matched pairs:", torus.matching_as_pairs())
print("chords (arcs avoiding the basepoint):", len(torus.chords()))

try:
    make_pmc(1, [(1, 2), (3, 4)])
except DisconnectedSurgery as e:
    print("a bad matching is rejected:", e)

print()
print("standard families:")
for kind in ("split", "antipodal"):
    for k in (2, 3):
        print(f"  {kind}({k}) =", standard_pmc(kind, k))
print("torus # torus =", connected_sum(torus, torus), "(the split genus-2 circle)")

print()
alg = algebra_of(torus)
print("summand dimensions of the torus algebra:", {i: alg.dim_summand(i) for i in (-1, 0, 1)})

i0, i1 = torus_element("iota0"), torus_element("iota1")
r1, r2, r3 = torus_element("rho1"), torus_element("rho2"), torus_element("rho3")
print("iota0 =", i0, " (sum over the two placements of its pair)")
print("rho1 * rho2 =", r1 * r2, " -> the chord from 1 to 3")
print("rho2 * rho1 =", r2 * r1, " and rho3 * rho2 =", r3 * r2, " (the two relations)")
print("differential vanishes on the middle summand:",
      all(b.d().is_zero() for b in alg.summand_basis(0)))

print()
print("orientation reversal is the opposite algebra; on the torus it swaps rho1 and rho3:")
print("  op(rho1) =", to_opposite(r1, torus), "== rho3:", to_opposite(r1, torus) == r3)

split2 = algebra_of(standard_pmc("split", 2))
a = split2.chord_element((2, 4))
print()
print("a chord element on the genus-2 split circle picks up horizontal completions:")
print(" ", a)
print("its differential stays inside the circle's algebra:", split2.contains(a.d()))

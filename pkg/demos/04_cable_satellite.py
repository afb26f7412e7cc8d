"""From a knot complex to its framed complement, and on to a cable.

The translation turns the trefoil complex at framing -2 into a five-
generator module over the torus algebra.  Pairing it against the built-in
(2,1)-cable pattern gives a 29-generator free F2[U] complex whose homology
is a free tower plus U^2- and U-torsion, with total rank five at U = 0.
"""

from bhf.knots import cable21_pattern, cfk_to_cfd, satellite, trefoil_cfk, unknot_cfk

module = cfk_to_cfd(trefoil_cfk(), -2)
print("framed trefoil complement module (framing -2):")
for (s, t), c in module.arrows():
    print(f"  {s} -> {t}: {c}")

pattern = cable21_pattern()
print()
print("the (2,1)-cable pattern module:")
for (s, t), coeff in sorted(pattern.delta.items()):
    for m, e in sorted(coeff.items()):
        u = "" if m == 0 else f"U^{m} " if m > 1 else "U "
        print(f"  {s} -> {t}: {u}{e}")

res = satellite(pattern, trefoil_cfk(), -2)
print()
print("pairing the two gives", len(res.mor_complex.generators), "F2[U] generators")
dec = res.decomposition
print("homology decomposition: free rank", dec.free_rank,
      "with U-torsion exponents", list(dec.torsion))
print("rank after setting U = 0:", res.u0_rank)

print()
res_u = satellite("cable21", unknot_cfk(), 0)
print("the same pattern on the unknot stays unknotted:",
      res_u.decomposition.free_rank == 1 and not res_u.decomposition.torsion)

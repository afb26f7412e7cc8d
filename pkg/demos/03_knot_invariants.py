"""Knot complexes over F2[U]: tau, Alexander polynomials, simplified bases.

The left-handed trefoil complex has three generators with d(a) = b and
d(c) = U b; its associated graded homology carries a free tower in
Alexander grading 1, so tau = -1.  The figure-eight needs one change of
basis before both arrow directions are simplified.
"""

from bhf.knots import (
    alexander_polynomial,
    alexander_polynomial_str,
    classify_arrows,
    figure8_cfk,
    simplify_basis,
    tau,
    trefoil_cfk,
    unknot_cfk,
)

for name, complex_ in (("unknot", unknot_cfk()),
                       ("left trefoil", trefoil_cfk()),
                       ("figure-eight", figure8_cfk())):
    print(f"{name}:")
    print("  generators:", {g: complex_.alexander[g] for g in complex_.generators})
    print("  entries:", complex_.entries())
    print("  tau =", tau(complex_))
    print("  Alexander polynomial:",
          alexander_polynomial_str(alexander_polynomial(complex_)))
    arrows = classify_arrows(complex_)
    print("  vertical:", arrows.vertical, " horizontal:", arrows.horizontal)
    simplified, report = simplify_basis(complex_)
    print("  distinguished generators: xi0 =", report.xi0, " eta0 =", report.eta0)
    if report.substitutions:
        print("  change of basis:", report.change_of_basis)
    print()

print("the graded F2[U] homology behind tau(trefoil):")
dec = trefoil_cfk().associated_graded().homology()
print(" ", dec)
print("free tower sits in Alexander grading", dec.free_gradings[0], "so tau =",
      -dec.free_gradings[0])

"""Closed genus-1 manifolds from twist words, and arc-slides behind them.

Gluing two solid tori through a word in the four torus Dehn twists
computes lens-space ranks: the empty word gives S^2 x S^1, one meridian
twist gives the three-sphere, and p meridian twists give rank p.  Each
genus-1 twist bimodule also arises as an underslide arc-slide bimodule,
computed from scratch by the support-matched irreducible-coefficient rule.
"""

from bhf.catalog import (
    TWIST_NAMES,
    all_underslides,
    dehn_twist_dd,
    hf_genus1,
    underslide_dd,
)
from bhf.dmodules import iso_check
from bhf.pmc import standard_pmc

print("twist words acting on the zero-framed solid torus:")
print("  empty word      ->", hf_genus1([]), " (S^2 x S^1)")
print("  one Tm          ->", hf_genus1(["Tm"]), " (S^3)")
for p in range(2, 8):
    print(f"  Tm^{p}          ->", hf_genus1(["Tm"] * p), f" (lens space of order {p})")
print("  longitude twists are absorbed:", hf_genus1(["Tl", "Tl", "Tl"]))
print("  inserting a canceling pair changes nothing:",
      hf_genus1(["Tm", "Tl", "Tl'", "Tm"]) == hf_genus1(["Tm", "Tm"]))

print()
print("the four genus-1 underslides and the twists they realize:")
torus = standard_pmc("torus")
for slide in all_underslides(torus):
    bimodule = underslide_dd(slide).restrict_weight(1).reduce()
    match = next(
        t for t in TWIST_NAMES
        if iso_check(bimodule, dehn_twist_dd(t).reduce()) is not None
    )
    print(f"  slide foot {slide.b1} over foot {slide.c1}: {match}")

print()
print("underslides on a genus-2 circle land on new circles:")
for slide in all_underslides(standard_pmc("antipodal", 2))[:3]:
    B = underslide_dd(slide)
    print(f"  foot {slide.b1} over {slide.c1}: target {slide.target},",
          f"{len(B.generators)} generators, structure equation holds")

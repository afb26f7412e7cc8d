"""Morphism complexes between type D modules and their pairings.

For two type D modules over the same surface algebra, the morphism complex
has one generator per triple (source generator, corner basis element,
target generator); the differential is the sum of the algebra differential
of the middle coefficient, post-composition with the target module's arrows
and pre-composition with the source module's arrows.

A DD bimodule paired against a type D module leaves a type D module over
the unused algebra.  Two variants exist and are both provided:

* ``mor_dd_d(B, M)``: morphisms out of the bimodule.  The retained action
  is naturally a right action, so the output is written over the opposite
  algebra, realized as the algebra of the reversed circle; the conversion
  is recorded on the output's provenance field.
* ``mor_d_dd(M, B)``: morphisms into the bimodule.  The retained action is
  already a left action and no conversion occurs.

All outputs are verified to square to zero before being returned.
"""

from __future__ import annotations

from .gf2 import F2ChainComplex
from .f2u import F2UComplex
from .pmc import reverse
from .strands import AlgebraElement, BasisKey, SurfaceAlgebra, algebra_of, to_opposite
from .dmodules import TypeDModule, TypeDDModule, UTypeDModule, ModuleError


class AlgebraMismatch(ValueError):
    pass


def key_name(key: BasisKey) -> str:
    moving, pairs = key
    bits = [f"{s}>{t}" for s, t in moving] + [f"p{p}" for p in pairs]
    return ".".join(bits) if bits else "idem"


def mor_generator_name(x: str, key: BasisKey, y: str) -> str:
    return f"{x}|{key_name(key)}|{y}"


def _mor_basis(M, N):
    """Triples (x, key, y) spanning the A-linear maps M -> N."""
    alg = M.algebra
    out = []
    for x, ix in sorted(M.generators.items()):
        for y, iy in sorted(N.generators.items()):
            for key in alg.corner_keys(ix, iy):
                out.append((x, key, y))
    return out


def mor_d_d(M: TypeDModule, N: TypeDModule) -> F2ChainComplex:
    """Morphism complex of two type D modules over the same algebra."""
    if M.algebra != N.algebra:
        raise AlgebraMismatch("modules over different algebras")
    alg = M.algebra
    basis = _mor_basis(M, N)
    names = {b: mor_generator_name(*b) for b in basis}
    entries: set = set()
    for (x, key, y) in basis:
        a = alg.expand(key)
        src = names[(x, key, y)]
        da = a.d()
        if not da.is_zero():
            for k2 in alg.decompose(da):
                entries ^= {(src, names[(x, k2, y)])}
        for (y1, y2), c in N.delta.items():
            if y1 != y:
                continue
            prod = a * c
            if prod.is_zero():
                continue
            for k2 in alg.decompose(prod):
                entries ^= {(src, names[(x, k2, y2)])}
        for (x1, x2), c in M.delta.items():
            if x2 != x:
                continue
            prod = c * a
            if prod.is_zero():
                continue
            for k2 in alg.decompose(prod):
                entries ^= {(src, names[(x1, k2, y)])}
    return F2ChainComplex([names[b] for b in basis], entries)


def identity_morphism(M: TypeDModule) -> list[str]:
    """Generator names of the identity cocycle in mor_d_d(M, M)."""
    out = []
    for x, ix in sorted(M.generators.items()):
        key = ((), tuple(ix))
        out.append(mor_generator_name(x, key, x))
    return out


def homology_f2(complex_: F2ChainComplex):
    """Rank and deterministic representatives of an F2 chain complex."""
    complex_.validate()
    return complex_.homology_rank(), complex_.homology_representatives()


# ---------------------------------------------------------------------------
# bimodule pairings


def _pair_bijection_to_reverse(circle):
    """Pair names of a circle mapped into its reversed circle."""
    rev = reverse(circle)
    n = circle.n_points

    def image(p):
        f1, f2 = circle.pair_feet(p)
        return rev.pair_of(n + 1 - f1)

    return rev, image


def mor_dd_d(B: TypeDDModule, M: TypeDModule, side: int = 1) -> TypeDModule:
    """Pair a DD bimodule against a type D module along one action.

    Morphisms B -> M over the algebra on ``side``; the other action
    survives as a right action and is rewritten over the opposite algebra
    (the reversed circle), so the result is again a left type D module.
    """
    if side not in (1, 2):
        raise AlgebraMismatch("side must be 1 or 2")
    shared = B.algebra1 if side == 1 else B.algebra2
    other = B.algebra2 if side == 1 else B.algebra1
    if shared != M.algebra:
        raise AlgebraMismatch("bimodule side does not match module algebra")
    rev_circle, pair_image = _pair_bijection_to_reverse(other.circle)
    out_alg = algebra_of(rev_circle)

    def b_idems(name):
        i1, i2 = B.generators[name]
        return (i1, i2) if side == 1 else (i2, i1)

    basis = []
    for b, _ in sorted(B.generators.items()):
        ib_shared, _ = b_idems(b)
        for m, im in sorted(M.generators.items()):
            for key in shared.corner_keys(ib_shared, im):
                basis.append((b, key, m))
    names = {t: mor_generator_name(*t) for t in basis}
    gens = {}
    for (b, key, m) in basis:
        _, ib_other = b_idems(b)
        gens[names[(b, key, m)]] = tuple(sorted(pair_image(p) for p in ib_other))

    delta: dict[tuple[str, str], AlgebraElement] = {}

    def add(src, dst, coeff: AlgebraElement):
        if coeff.is_zero():
            return
        cur = delta.get((src, dst))
        tot = coeff if cur is None else cur + coeff
        if tot.is_zero():
            delta.pop((src, dst), None)
        else:
            delta[(src, dst)] = tot

    for (b, key, m) in basis:
        a = shared.expand(key)
        src = names[(b, key, m)]
        unit = out_alg.idempotent(gens[src])
        da = a.d()
        if not da.is_zero():
            for k2 in shared.decompose(da):
                add(src, names[(b, k2, m)], unit)
        for (m1, m2), c in M.delta.items():
            if m1 != m:
                continue
            prod = a * c
            for k2 in shared.decompose(prod):
                add(src, names[(b, k2, m2)], unit)
        for (b1, b2), tc in B.delta.items():
            if b2 != b:
                continue
            for (k_1, k_2) in tc.decompose(B.algebra1, B.algebra2):
                k_shared, k_other = (k_1, k_2) if side == 1 else (k_2, k_1)
                prod = shared.expand(k_shared) * a
                if prod.is_zero():
                    continue
                coeff = to_opposite(other.expand(k_other), other.circle)
                for k2 in shared.decompose(prod):
                    add(src, names[(b1, k2, m)], coeff)

    out = TypeDModule(
        out_alg, gens, delta,
        provenance=(
            f"mor_dd_d(side={side}; second action rewritten over reversed circle "
            f"{rev_circle!r} via the opposite-algebra map)"
        ),
    )
    bad = out.verify_d2()
    if bad:
        raise ModuleError(f"pairing output fails d^2=0: {bad[:3]}")
    return out


def mor_d_dd(M: TypeDModule, B: TypeDDModule, side: int = 1) -> TypeDModule:
    """Morphisms M -> B over the algebra on ``side`` of the bimodule.

    The unused bimodule action is a left action already, so the output is a
    type D module over that algebra with no opposite-algebra conversion.
    """
    if side not in (1, 2):
        raise AlgebraMismatch("side must be 1 or 2")
    shared = B.algebra1 if side == 1 else B.algebra2
    other = B.algebra2 if side == 1 else B.algebra1
    if shared != M.algebra:
        raise AlgebraMismatch("bimodule side does not match module algebra")

    def b_idems(name):
        i1, i2 = B.generators[name]
        return (i1, i2) if side == 1 else (i2, i1)

    basis = []
    for x, ix in sorted(M.generators.items()):
        for b, _ in sorted(B.generators.items()):
            ib_shared, _ = b_idems(b)
            for key in shared.corner_keys(ix, ib_shared):
                basis.append((x, key, b))
    names = {t: mor_generator_name(*t) for t in basis}
    gens = {names[(x, key, b)]: b_idems(b)[1] for (x, key, b) in basis}

    delta: dict[tuple[str, str], AlgebraElement] = {}

    def add(src, dst, coeff: AlgebraElement):
        if coeff.is_zero():
            return
        cur = delta.get((src, dst))
        tot = coeff if cur is None else cur + coeff
        if tot.is_zero():
            delta.pop((src, dst), None)
        else:
            delta[(src, dst)] = tot

    for (x, key, b) in basis:
        a = shared.expand(key)
        src = names[(x, key, b)]
        unit = other.idempotent(gens[src])
        da = a.d()
        if not da.is_zero():
            for k2 in shared.decompose(da):
                add(src, names[(x, k2, b)], unit)
        for (x1, x2), c in M.delta.items():
            if x2 != x:
                continue
            prod = c * a
            for k2 in shared.decompose(prod):
                add(src, names[(x1, k2, b)], unit)
        for (b1, b2), tc in B.delta.items():
            if b1 != b:
                continue
            for (k_1, k_2) in tc.decompose(B.algebra1, B.algebra2):
                k_shared, k_other = (k_1, k_2) if side == 1 else (k_2, k_1)
                prod = a * shared.expand(k_shared)
                if prod.is_zero():
                    continue
                coeff = other.expand(k_other)
                for k2 in shared.decompose(prod):
                    add(src, names[(x, k2, b2)], coeff)

    out = TypeDModule(
        other, gens, delta,
        provenance=f"mor_d_dd(side={side}; no opposite-algebra conversion)",
    )
    bad = out.verify_d2()
    if bad:
        raise ModuleError(f"pairing output fails d^2=0: {bad[:3]}")
    return out


def mor_d_ud(M: TypeDModule, P: UTypeDModule) -> F2UComplex:
    """Morphism complex into a U-weighted type D module, over F2[U]."""
    if M.algebra != P.algebra:
        raise AlgebraMismatch("modules over different algebras")
    alg = M.algebra
    basis = _mor_basis(M, P)
    names = {b: mor_generator_name(*b) for b in basis}
    diff: dict[tuple[str, str], int] = {}

    def add(src, dst, upower):
        key = (src, dst)
        cur = diff.get(key, 0) ^ (1 << upower)
        if cur:
            diff[key] = cur
        else:
            diff.pop(key, None)

    for (x, key, y) in basis:
        a = alg.expand(key)
        src = names[(x, key, y)]
        da = a.d()
        if not da.is_zero():
            for k2 in alg.decompose(da):
                add(src, names[(x, k2, y)], 0)
        for (y1, y2), c in P.delta.items():
            if y1 != y:
                continue
            for m, e in c.items():
                prod = a * e
                if prod.is_zero():
                    continue
                for k2 in alg.decompose(prod):
                    add(src, names[(x, k2, y2)], m)
        for (x1, x2), c in M.delta.items():
            if x2 != x:
                continue
            prod = c * a
            if prod.is_zero():
                continue
            for k2 in alg.decompose(prod):
                add(src, names[(x1, k2, y)], 0)
    return F2UComplex([names[b] for b in basis], diff)


def corner_dimension(alg: SurfaceAlgebra, left_pairs, right_pairs) -> int:
    return len(alg.corner_keys(left_pairs, right_pairs))

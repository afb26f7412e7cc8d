"""Built-in bordered objects with exact differentials.

Everything here is given by closed-form data: the three solid-torus modules
of the surgery triangle, split handlebodies, the identity DD bimodule of an
arbitrary circle (one doubled chord term per chord), the four genus-1
Dehn-twist bimodules, arc-slides and their underslide DD bimodules, and the
genus-1 closed-manifold pipeline built from them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .pmc import PointedMatchedCircle, make_pmc, standard_pmc, reverse, PMCError
from .strands import AlgebraElement, algebra_of, torus_element
from .dmodules import TypeDModule, TypeDDModule, TensorElement, ModuleError
from .pairing import mor_d_d, mor_dd_d, homology_f2
from .gf2 import gf2_rank


class CatalogError(ValueError):
    pass


class NotAdjacent(CatalogError):
    pass


class SamePair(CatalogError):
    pass


class OverslideUnsupported(CatalogError):
    pass


class ConstraintSearchFailed(CatalogError):
    pass


# ---------------------------------------------------------------------------
# solid tori and the surgery triangle


def _torus_mod(gens, arrows) -> TypeDModule:
    alg = algebra_of(standard_pmc("torus"))
    delta = {}
    for src, name, dst in arrows:
        coeff = torus_element(name)
        key = (src, dst)
        delta[key] = delta.get(key, AlgebraElement.zero(4)) + coeff
    return TypeDModule(alg, gens, delta)


@lru_cache(maxsize=None)
def solid_torus(which: str) -> TypeDModule:
    """The framed solid-torus modules of the surgery triangle.

    infinity: one generator r with d(r) = rho23 r.
    minus1:   generators a, b with d(a) = (rho1 + rho3) b.
    zero:     one generator n with d(n) = rho12 n.
    """
    if which in ("inf", "infinity", "h_inf"):
        return _torus_mod({"r": (2,)}, [("r", "rho23", "r")])
    if which in ("-1", "minus1", "h_minus1"):
        return _torus_mod({"a": (1,), "b": (2,)}, [("a", "rho1", "b"), ("a", "rho3", "b")])
    if which in ("0", "zero", "h_0"):
        return _torus_mod({"n": (1,)}, [("n", "rho12", "n")])
    raise CatalogError(f"unknown solid torus {which!r}")


ModuleMap = dict[str, list[tuple[AlgebraElement, str]]]


def verify_chain_map(f: ModuleMap, M: TypeDModule, N: TypeDModule):
    """Residual terms of d(f(x)) - f(d(x)); empty when f is a chain map."""
    zero = AlgebraElement.zero(M.algebra.n)
    residual: dict[tuple[str, str], AlgebraElement] = {}

    def bump(key, val):
        if val.is_zero():
            return
        residual[key] = residual.get(key, zero) + val

    for x in M.generators:
        for c, y in f.get(x, []):
            bump((x, y), c.d())
            for (y1, y2), e in N.delta.items():
                if y1 == y:
                    bump((x, y2), c * e)
        for (x1, x2), e in M.delta.items():
            if x1 != x:
                continue
            for c, y in f.get(x2, []):
                bump((x, y), e * c)
    return sorted((k, v) for k, v in residual.items() if not v.is_zero())


def _module_f2_basis(M: TypeDModule):
    alg = M.algebra
    basis = []
    for name, idem in sorted(M.generators.items()):
        for w in range(0, 2 * alg.k + 1):
            for key in alg.basis_keys(w):
                if alg.key_right_pairs(key) == idem:
                    basis.append((key, name))
    return basis


def map_f2_matrix(f: ModuleMap, M: TypeDModule, N: TypeDModule) -> np.ndarray:
    """The induced F2-linear map on underlying vector spaces."""
    alg = M.algebra
    dom = _module_f2_basis(M)
    cod = _module_f2_basis(N)
    cod_index = {b: i for i, b in enumerate(cod)}
    A = np.zeros((len(cod), len(dom)), dtype=np.uint8)
    for j, (key, x) in enumerate(dom):
        elt = alg.expand(key)
        for c, y in f.get(x, []):
            prod = elt * c
            if prod.is_zero():
                continue
            for k2 in alg.decompose(prod):
                A[cod_index[(k2, y)], j] ^= 1
    return A


@dataclass
class SurgeryTriangle:
    h_infinity: TypeDModule
    h_minus1: TypeDModule
    h_zero: TypeDModule
    phi: ModuleMap
    psi: ModuleMap
    report: dict


def solid_tori() -> SurgeryTriangle:
    """The three modules with the connecting maps and an exactness report."""
    m_inf = solid_torus("inf")
    m_m1 = solid_torus("minus1")
    m_0 = solid_torus("zero")
    phi: ModuleMap = {"r": [(torus_element("iota1"), "b"), (torus_element("rho2"), "a")]}
    psi: ModuleMap = {"a": [(torus_element("iota0"), "n")], "b": [(torus_element("rho2"), "n")]}

    report = {
        "phi_chain_map": verify_chain_map(phi, m_inf, m_m1) == [],
        "psi_chain_map": verify_chain_map(psi, m_m1, m_0) == [],
    }
    A = map_f2_matrix(phi, m_inf, m_m1)
    B = map_f2_matrix(psi, m_m1, m_0)
    comp = (B @ A) % 2
    rank_a = gf2_rank(A)
    rank_b = gf2_rank(B)
    report["psi_after_phi_zero"] = not comp.any()
    report["phi_injective"] = rank_a == A.shape[1]
    report["psi_surjective"] = rank_b == B.shape[0]
    # exactness at the middle: ker(psi) = im(phi)
    report["middle_exact"] = (A.shape[1] == B.shape[1] - rank_b) and report["psi_after_phi_zero"] and report["phi_injective"]
    report["dims"] = {"inf": A.shape[1], "minus1": B.shape[1], "zero": B.shape[0]}
    report["exact"] = all(
        report[k] for k in
        ("phi_chain_map", "psi_chain_map", "psi_after_phi_zero",
         "phi_injective", "psi_surjective", "middle_exact")
    )
    return SurgeryTriangle(m_inf, m_m1, m_0, phi, psi, report)


# ---------------------------------------------------------------------------
# split handlebodies


@lru_cache(maxsize=None)
def handlebody(k: int) -> TypeDModule:
    """The standard genus-k handlebody module: one generator, k chord loops.

    The module sits over the algebra of the reversed split circle (which is
    again the split circle); the occupied idempotent consists of the pairs
    (4j-2, 4j) and each summand chord runs across one of them.
    """
    if k < 1:
        raise CatalogError("k must be >= 1")
    circle = reverse(standard_pmc("split", k))
    alg = algebra_of(circle)
    idem = tuple(4 * j - 2 for j in range(1, k + 1))
    unit = alg.idempotent(idem)
    total = AlgebraElement.zero(alg.n)
    for j in range(1, k + 1):
        total = total + unit * alg.chord_element((4 * j - 2, 4 * j)) * unit
    return TypeDModule(alg, {"x": idem}, {("x", "x"): total})


# ---------------------------------------------------------------------------
# the identity DD bimodule


def _pair_map_to_reverse(circle: PointedMatchedCircle):
    rev = reverse(circle)
    n = circle.n_points

    def image(p: int) -> int:
        return rev.pair_of(n + 1 - p)

    return rev, image


def dd_identity(circle: PointedMatchedCircle) -> TypeDDModule:
    """CFDD of the identity cobordism: one doubled-chord term per chord.

    Generators are the complementary idempotent pairs; the arrow from
    (s, s^c) to (s', s'^c) carries, for every chord, the sandwiched product
    of the chord element on the circle and on its reverse.
    """
    alg1 = algebra_of(circle)
    rev_circle, pimg = _pair_map_to_reverse(circle)
    alg2 = algebra_of(rev_circle)
    pairs = circle.pairs
    n = circle.n_points

    gens = {}
    for r in range(0, len(pairs) + 1):
        for s in itertools.combinations(pairs, r):
            t = tuple(sorted(pimg(p) for p in pairs if p not in s))
            gens[_dd_gen_name(s, t)] = (s, t)

    chord_pairs = []
    for ch in circle.chords():
        i, j = ch.as_pair()
        a1 = alg1.chord_element((i, j))
        a2 = alg2.chord_element((n + 1 - j, n + 1 - i))
        chord_pairs.append((a1, a2))

    delta = {}
    for src, (s1, t1) in gens.items():
        i1 = alg1.idempotent(s1)
        i2 = alg2.idempotent(t1)
        for dst, (s2, t2) in gens.items():
            j1 = alg1.idempotent(s2)
            j2 = alg2.idempotent(t2)
            total = TensorElement(alg1.n, alg2.n)
            for a1, a2 in chord_pairs:
                c1 = i1 * a1 * j1
                if c1.is_zero():
                    continue
                c2 = i2 * a2 * j2
                if c2.is_zero():
                    continue
                total = total + TensorElement.from_elements(c1, c2)
            if not total.is_zero():
                delta[(src, dst)] = total

    out = TypeDDModule(alg1, alg2, gens, delta, provenance=f"dd_identity({circle!r})")
    bad = out.verify_d2()
    if bad:
        raise ModuleError(f"identity bimodule fails d^2=0: {bad[:3]}")
    return out


def _dd_gen_name(s, t) -> str:
    left = "".join(str(p) for p in s) or "-"
    right = "".join(str(p) for p in t) or "-"
    return f"x[{left}|{right}]"


# ---------------------------------------------------------------------------
# genus-1 Dehn twist bimodules

TWIST_NAMES = ("Tm", "Tm'", "Tl", "Tl'")


@lru_cache(maxsize=None)
def dehn_twist_dd(which: str) -> TypeDDModule:
    """The four torus Dehn-twist DD bimodules (meridian, longitude, inverses).

    Arrows are given in the two-copies-of-the-torus-algebra presentation;
    the first tensor slot is the rho action, the second the sigma action.
    """
    alg = algebra_of(standard_pmc("torus"))

    def te(pair):
        r, s = pair
        return TensorElement.from_elements(torus_element(r), torus_element(s))

    i0, i1 = (1,), (2,)
    if which == "Tm":
        gens = {"p": (i0, i0), "q": (i1, i1), "r": (i1, i0)}
        arrows = {
            ("p", "q"): te(("rho1", "rho3")) + te(("rho123", "rho123")),
            ("p", "r"): te(("rho3", "rho12")),
            ("q", "r"): te(("rho23", "rho2")),
            ("r", "p"): te(("rho2", "iota0")),
            ("r", "q"): te(("iota1", "rho1")),
        }
    elif which == "Tm'":
        gens = {"p": (i0, i0), "q": (i1, i1), "r": (i1, i0)}
        arrows = {
            ("p", "q"): te(("rho1", "rho3")) + te(("rho123", "rho123")),
            ("p", "r"): te(("rho3", "iota0")),
            ("q", "r"): te(("iota1", "rho2")),
            ("r", "p"): te(("rho2", "rho12")),
            ("r", "q"): te(("rho23", "rho1")),
        }
    elif which == "Tl":
        gens = {"p": (i0, i0), "q": (i1, i1), "s": (i0, i1)}
        arrows = {
            ("p", "q"): te(("rho3", "rho1")) + te(("rho123", "rho123")),
            ("p", "s"): te(("rho12", "rho3")),
            ("q", "s"): te(("rho2", "rho23")),
            ("s", "q"): te(("rho1", "iota1")),
            ("s", "p"): te(("iota0", "rho2")),
        }
    elif which == "Tl'":
        gens = {"p": (i0, i0), "q": (i1, i1), "s": (i0, i1)}
        arrows = {
            ("p", "q"): te(("rho3", "rho1")) + te(("rho123", "rho123")),
            ("p", "s"): te(("iota0", "rho3")),
            ("q", "s"): te(("rho2", "iota1")),
            ("s", "q"): te(("rho1", "rho23")),
            ("s", "p"): te(("rho12", "rho2")),
        }
    else:
        raise CatalogError(f"unknown twist {which!r}; use one of {TWIST_NAMES}")

    delta = {k: v for k, v in arrows.items() if not v.is_zero()}
    out = TypeDDModule(alg, alg, gens, delta, provenance=f"dehn_twist_dd({which})")
    bad = out.verify_d2()
    if bad:
        raise ModuleError(f"twist bimodule {which} fails d^2=0: {bad[:3]}")
    return out


def twist_inverse(which: str) -> str:
    return which[:-1] if which.endswith("'") else which + "'"


# ---------------------------------------------------------------------------
# arc-slides


@dataclass(frozen=True)
class ArcSlide:
    """An arc-slide of the foot b1 over the adjacent foot c1.

    ``point_map`` carries every source point except b1 to its target
    position; the slid foot reappears at ``b1_new`` adjacent to c2, on the
    side making the slide arc reverse orientation.  ``u_interval`` (source)
    and ``u_prime_interval`` (target) are the two slide intervals; all other
    intervals correspond in circle order, which is exactly the support
    constraint satisfied by the slide cobordism's coefficients.
    """

    source: PointedMatchedCircle
    b1: int
    c1: int
    c2: int
    b2: int
    target: PointedMatchedCircle
    kind: str
    b1_new: int
    point_map: tuple[tuple[int, int], ...]
    u_interval: int
    u_prime_interval: int

    def interval_pairs(self):
        n = self.source.n_points
        src = [i for i in range(1, n) if i != self.u_interval]
        tgt = [i for i in range(1, n) if i != self.u_prime_interval]
        return list(zip(src, tgt))

    def pair_bijection(self):
        """Matched pairs of the source mapped to matched pairs of the target."""
        pmap = dict(self.point_map)
        pmap[self.b1] = self.b1_new
        out = {}
        for p in self.source.pairs:
            f1, _ = self.source.pair_feet(p)
            out[p] = self.target.pair_of(pmap[f1])
        return out


def make_arcslide(circle: PointedMatchedCircle, b1: int, c1: int) -> ArcSlide:
    """Slide the foot b1 over the adjacent foot c1; classifies the kind."""
    n = circle.n_points
    if not (1 <= b1 <= n and 1 <= c1 <= n):
        raise CatalogError(f"feet {b1},{c1} outside 1..{n}")
    if circle.partner(b1) == c1:
        raise SamePair(f"feet {b1} and {c1} belong to the same pair")
    if abs(b1 - c1) != 1:
        raise NotAdjacent(f"feet {b1} and {c1} are not adjacent")
    c2 = circle.partner(c1)
    b2 = circle.partner(b1)

    lo, hi = min(c1, c2), max(c1, c2)
    inner = set(range(lo + 1, hi))
    kind = "underslide" if b1 in inner else "overslide"

    order: list = [p for p in range(1, n + 1) if p != b1]
    at = order.index(c2)
    if b1 == c1 + 1:
        order.insert(at, "new")  # slide arc reverses: new foot just before c2
    else:
        order.insert(at + 1, "new")
    point_map = {}
    b1_new = None
    for pos, label in enumerate(order, start=1):
        if label == "new":
            b1_new = pos
        else:
            point_map[label] = pos

    pairs = []
    for p in circle.pairs:
        f1, f2 = circle.pair_feet(p)
        if b1 in (f1, f2):
            other = f2 if f1 == b1 else f1
            pairs.append((b1_new, point_map[other]))
        else:
            pairs.append((point_map[f1], point_map[f2]))
    try:
        target = make_pmc(circle.genus, pairs)
    except PMCError as e:
        raise CatalogError(f"arc-slide produced an invalid circle: {e}")

    u = min(b1, c1)
    u_prime = min(b1_new, point_map[c2])
    return ArcSlide(
        source=circle, b1=b1, c1=c1, c2=c2, b2=b2, target=target, kind=kind,
        b1_new=b1_new, point_map=tuple(sorted(point_map.items())),
        u_interval=u, u_prime_interval=u_prime,
    )


def all_underslides(circle: PointedMatchedCircle) -> list[ArcSlide]:
    out = []
    for b1 in range(1, circle.n_points + 1):
        for c1 in (b1 - 1, b1 + 1):
            if not 1 <= c1 <= circle.n_points:
                continue
            if circle.partner(b1) == c1:
                continue
            slide = make_arcslide(circle, b1, c1)
            if slide.kind == "underslide":
                out.append(slide)
    return out


# ---------------------------------------------------------------------------
# underslide DD bimodules


def _near_complementary_sets(circle: PointedMatchedCircle, c_pair: int, b_pair: int):
    """All near-complementary (s, t) as subsets of the source pairs."""
    pairs = circle.pairs
    out = []
    for r in range(0, len(pairs) + 1):
        for s in itertools.combinations(pairs, r):
            t = tuple(p for p in pairs if p not in s)
            out.append((s, t))
    others = tuple(p for p in pairs if p not in (c_pair, b_pair))
    for r in range(0, len(others) + 1):
        for extra in itertools.combinations(others, r):
            s = tuple(sorted((c_pair,) + extra))
            t = tuple(sorted((c_pair,) + tuple(p for p in others if p not in extra)))
            out.append((s, t))
    return out


def underslide_dd(slide: ArcSlide) -> TypeDDModule:
    """The DD bimodule of an underslide.

    Generators are the near-complementary idempotent pairs.  Coefficients
    are the irreducible non-idempotent elements of the near-diagonal
    algebra: pairs of basis elements, sandwiched by near-complementary
    idempotents on both ends, whose supports agree away from the two slide
    intervals.  Irreducible means not appearing in any product of two
    non-idempotent such pairs; the output must pass the structure equation
    or the construction fails loudly.
    """
    if slide.kind != "underslide":
        raise OverslideUnsupported("only underslide bimodules are computable here")
    Z = slide.source
    Zp = slide.target
    n = Z.n_points
    alg1 = algebra_of(Z)
    rev_zp = reverse(Zp)
    alg2 = algebra_of(rev_zp)

    c_pair = Z.pair_of(slide.c1)
    b_pair = Z.pair_of(slide.b1)
    all_pairs = set(Z.pairs)

    pair_bij = slide.pair_bijection()  # Z pairs -> Zp pairs
    rev_of_zp_pair = {}
    for q in Zp.pairs:
        f1, _ = Zp.pair_feet(q)
        rev_of_zp_pair[q] = rev_zp.pair_of(Zp.n_points + 1 - f1)
    z_to_rev = {p: rev_of_zp_pair[pair_bij[p]] for p in Z.pairs}
    rev_to_z = {v: k for k, v in z_to_rev.items()}

    def near_complementary(su: frozenset, tu: frozenset) -> bool:
        inter, union = su & tu, su | tu
        if not inter and union == all_pairs:
            return True
        return inter == {c_pair} and union == all_pairs - {b_pair}

    gens = {}
    gen_lookup = {}
    for s, t in _near_complementary_sets(Z, c_pair, b_pair):
        name = _dd_gen_name(s, t)
        idem2 = tuple(sorted(z_to_rev[p] for p in t))
        gens[name] = (s, idem2)
        gen_lookup[(frozenset(s), frozenset(t))] = name

    src_iv = [i for i in range(1, n) if i != slide.u_interval]
    tgt_iv = [i for i in range(1, n) if i != slide.u_prime_interval]

    def restricted1(key):
        from .strands import diagram_support

        sup = diagram_support(n, min(alg1.expand(key).terms))
        return tuple(sup[i - 1] for i in src_iv)

    def restricted2(key):
        from .strands import diagram_support

        suprev = diagram_support(n, min(alg2.expand(key).terms))
        # interval i of the target circle is interval n - i of its reverse
        return tuple(suprev[(n - i) - 1] for i in tgt_iv)

    def side2_pairs_as_z(pairs2):
        return frozenset(rev_to_z[q] for q in pairs2)

    # bucket the second-side keys by restricted support
    keys2_by_sup: dict[tuple, list] = {}
    all_keys2 = [k for w in range(0, 2 * alg2.k + 1) for k in alg2.basis_keys(w)]
    for k2 in all_keys2:
        keys2_by_sup.setdefault(restricted2(k2), []).append(k2)

    basics = []
    all_keys1 = [k for w in range(0, 2 * alg1.k + 1) for k in alg1.basis_keys(w)]
    for k1 in all_keys1:
        left1 = frozenset(alg1.key_left_pairs(k1))
        right1 = frozenset(alg1.key_right_pairs(k1))
        for k2 in keys2_by_sup.get(restricted1(k1), []):
            left2 = side2_pairs_as_z(alg2.key_left_pairs(k2))
            right2 = side2_pairs_as_z(alg2.key_right_pairs(k2))
            if near_complementary(left1, left2) and near_complementary(right1, right2):
                basics.append((k1, k2))

    def is_idem(pair):
        return not pair[0][0] and not pair[1][0]  # no moving strands on either side

    nonidem = [p for p in basics if not is_idem(p)]
    basic_set = set(basics)
    reducible = set()
    by_left: dict[tuple, list] = {}
    for (k1, k2) in nonidem:
        key = (frozenset(alg1.key_left_pairs(k1)),
               frozenset(alg2.key_left_pairs(k2)))
        by_left.setdefault(key, []).append((k1, k2))
    for (k1, k2) in nonidem:
        chain = (frozenset(alg1.key_right_pairs(k1)),
                 frozenset(alg2.key_right_pairs(k2)))
        for (l1, l2) in by_left.get(chain, []):
            e1 = alg1.expand(k1) * alg1.expand(l1)
            if e1.is_zero():
                continue
            e2 = alg2.expand(k2) * alg2.expand(l2)
            if e2.is_zero():
                continue
            for d1 in alg1.decompose(e1):
                for d2 in alg2.decompose(e2):
                    reducible.add((d1, d2))

    near_chords = [p for p in nonidem if p not in reducible]

    delta: dict[tuple[str, str], TensorElement] = {}
    for (k1, k2) in near_chords:
        src = gen_lookup.get(
            (frozenset(alg1.key_left_pairs(k1)), side2_pairs_as_z(alg2.key_left_pairs(k2)))
        )
        dst = gen_lookup.get(
            (frozenset(alg1.key_right_pairs(k1)), side2_pairs_as_z(alg2.key_right_pairs(k2)))
        )
        if src is None or dst is None:
            raise ConstraintSearchFailed("near-chord endpoints miss a generator")
        term = TensorElement.from_elements(alg1.expand(k1), alg2.expand(k2))
        key = (src, dst)
        delta[key] = delta.get(key, TensorElement(alg1.n, alg2.n)) + term

    out = TypeDDModule(
        alg1, alg2, gens, delta,
        provenance=(
            f"underslide_dd(b1={slide.b1} over c1={slide.c1} on {Z!r}; "
            "near-chords = irreducible support-matched pairs)"
        ),
    )
    bad = out.verify_d2()
    if bad:
        raise ConstraintSearchFailed(
            f"underslide bimodule fails d^2=0 on {len(bad)} pairs: {bad[:2]}"
        )
    return out


# ---------------------------------------------------------------------------
# genus-1 closed-manifold pipeline


def apply_twist_word(word, module: TypeDModule) -> TypeDModule:
    """Pair the word's bimodules against the module, rightmost letter first."""
    out = module
    for token in reversed(list(word)):
        out = mor_dd_d(dehn_twist_dd(token), out).reduce()
    return out


def hf_genus1(word, left: str | TypeDModule = "h_0", base: str | TypeDModule = "h_0") -> int:
    """Total homology rank of the closed manifold built from a twist word.

    The word acts on the ``base`` solid torus (rightmost letter first); the
    result is paired against the ``left`` solid torus and the rank of the
    morphism-complex homology is returned.
    """
    lm = solid_torus(left) if isinstance(left, str) else left
    bm = solid_torus(base) if isinstance(base, str) else base
    twisted = apply_twist_word(word, bm)
    rank, _ = homology_f2(mor_d_d(lm, twisted))
    return rank


def parse_twist_word(text: str) -> list[str]:
    """Parse words like "Tm Tm Tl'" (whitespace separated, trailing ' = inverse)."""
    out = []
    for token in text.split():
        if token not in TWIST_NAMES:
            raise CatalogError(f"unknown twist token {token!r}; use {TWIST_NAMES}")
        out.append(token)
    return out

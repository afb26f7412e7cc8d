"""Strand algebras over F2 and the subalgebra attached to a matched circle.

Basis elements of A(n) are upward-veering partial permutations, drawn as
strand diagrams: a strand from s to phi(s) >= s for each s in the support.
The product concatenates diagrams, killing mismatched endpoints and double
crossings; the differential smooths one crossing in all ways that drop the
crossing count by exactly one.

The algebra of a pointed matched circle Z with 4k points sits inside A(4k).
Its canonical basis is indexed by a set of strictly moving strands plus a
set of horizontal matched pairs disjoint from the strand endpoints; such a
key expands to the F2-sum of raw diagrams obtained by placing one horizontal
strand on either foot of each chosen pair.  All arithmetic happens on the
raw-diagram representation, so equality is bit-exact.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .pmc import PointedMatchedCircle, Chord

Strand = tuple[int, int]
Diagram = tuple[Strand, ...]  # sorted by start point


class StrandError(ValueError):
    pass


class AmbientMismatch(StrandError):
    pass


class NotAdmissible(StrandError):
    pass


class IncompatibleChordSet(StrandError):
    pass


class NotInSpan(StrandError):
    pass


# ---------------------------------------------------------------------------
# raw diagrams


def make_diagram(n: int, strands) -> Diagram:
    """Validate a partial permutation; downward strands are allowed here.

    The nilCoxeter warm-up algebra lives on arbitrary permutations, so the
    raw layer is general; upward-veering is a property of the matched-circle
    basis elements, which only ever produce veering diagrams.
    """
    strands = tuple(sorted(tuple(s) for s in strands))
    starts = [s for s, _ in strands]
    ends = [t for _, t in strands]
    if len(set(starts)) != len(starts) or len(set(ends)) != len(ends):
        raise StrandError(f"repeated endpoint in {strands}")
    for s, t in strands:
        if not (1 <= s <= n and 1 <= t <= n):
            raise StrandError(f"strand ({s},{t}) outside 1..{n}")
    return strands


def is_upward_veering(diag: Diagram) -> bool:
    return all(t >= s for s, t in diag)


def diagram_inversions(diag: Diagram) -> list[tuple[int, int]]:
    """Pairs of start points (i, j), i < j, whose strands cross."""
    out = []
    for (s1, t1), (s2, t2) in itertools.combinations(diag, 2):
        # diag is sorted by start, so s1 < s2
        if t2 < t1:
            out.append((s1, s2))
    return out


def multiply_diagrams(a: Diagram, b: Diagram) -> Diagram | None:
    """Concatenation, or None when endpoints mismatch or strands double-cross."""
    if tuple(sorted(t for _, t in a)) != tuple(sorted(s for s, _ in b)):
        return None
    nxt = dict(b)
    comp = tuple(sorted((s, nxt[t]) for s, t in a))
    if len(diagram_inversions(comp)) != len(diagram_inversions(a)) + len(diagram_inversions(b)):
        return None
    return comp


def differentiate_diagram(diag: Diagram) -> list[Diagram]:
    """All smoothings of one crossing that drop the crossing count by one."""
    base = len(diagram_inversions(diag))
    out = []
    lookup = dict(diag)
    for i, j in diagram_inversions(diag):
        smooth = dict(lookup)
        smooth[i], smooth[j] = lookup[j], lookup[i]
        cand = tuple(sorted(smooth.items()))
        if len(diagram_inversions(cand)) == base - 1:
            out.append(cand)
    return out


def diagram_support(n: int, diag: Diagram) -> tuple[int, ...]:
    """Multiplicity over each interval (i, i+1), i = 1..n-1."""
    acc = [0] * (n - 1)
    for s, t in diag:
        for i in range(s, t):
            acc[i - 1] += 1
    return tuple(acc)


class AlgebraElement:
    """F2 linear combination of strand diagrams with a common ambient size."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=()):
        self.n = n
        self.terms = frozenset(terms)

    @classmethod
    def zero(cls, n: int) -> "AlgebraElement":
        return cls(n)

    @classmethod
    def from_strands(cls, n: int, strands) -> "AlgebraElement":
        return cls(n, [make_diagram(n, strands)])

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, self.terms))

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        if self.n != other.n:
            raise AmbientMismatch(f"ambient sizes {self.n} != {other.n}")
        return AlgebraElement(self.n, self.terms ^ other.terms)

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        if self.n != other.n:
            raise AmbientMismatch(f"ambient sizes {self.n} != {other.n}")
        acc = set()
        for a in self.terms:
            for b in other.terms:
                c = multiply_diagrams(a, b)
                if c is not None:
                    acc ^= {c}
        return AlgebraElement(self.n, acc)

    def d(self) -> "AlgebraElement":
        acc = set()
        for t in self.terms:
            for s in differentiate_diagram(t):
                acc ^= {s}
        return AlgebraElement(self.n, acc)

    def sorted_terms(self) -> list[Diagram]:
        return sorted(self.terms)

    def weights(self) -> set[int]:
        return {len(t) for t in self.terms}

    def __repr__(self):
        if not self.terms:
            return f"0_[A({self.n})]"
        bits = []
        for t in self.sorted_terms():
            bits.append("".join(f"({s}>{e})" for s, e in t))
        return "+".join(bits)


def inversions(element_or_diagram):
    """Inversion count and inverting start-point pairs of a single diagram."""
    if isinstance(element_or_diagram, AlgebraElement):
        (diag,) = element_or_diagram.terms
    else:
        diag = element_or_diagram
    inv = diagram_inversions(diag)
    return len(inv), inv


# ---------------------------------------------------------------------------
# the algebra of a pointed matched circle

# key: (moving strands sorted, horizontal pairs by smaller foot sorted)
BasisKey = tuple[tuple[Strand, ...], tuple[int, ...]]


class SurfaceAlgebra:
    """The subalgebra of A(4k) spanned by matched-circle basis elements.

    Summands are indexed by i in [-k, k]; the summand of index i is spanned
    by keys of weight k+i (number of strands in each expanded diagram).
    """

    def __init__(self, circle: PointedMatchedCircle):
        self.circle = circle
        self.n = circle.n_points
        self.k = circle.genus
        self._basis_cache: dict[int, list[BasisKey]] = {}
        self._expand_cache: dict[BasisKey, AlgebraElement] = {}

    def __eq__(self, other):
        return isinstance(other, SurfaceAlgebra) and self.circle == other.circle

    def __hash__(self):
        return hash(self.circle)

    def __repr__(self):
        return f"SurfaceAlgebra({self.circle!r})"

    # -- basis bookkeeping

    def _moving_ok(self, strands: tuple[Strand, ...]) -> bool:
        starts = [s for s, _ in strands]
        ends = [t for _, t in strands]
        if len(set(starts)) != len(starts) or len(set(ends)) != len(ends):
            return False
        M = self.circle.partner
        sset, eset = set(starts), set(ends)
        if any(M(s) in sset for s in starts):
            return False
        if any(M(t) in eset for t in ends):
            return False
        return True

    def _free_pairs(self, strands: tuple[Strand, ...]) -> list[int]:
        used = {p for s in strands for p in s}
        out = []
        for p in self.circle.pairs:
            f1, f2 = self.circle.pair_feet(p)
            if f1 not in used and f2 not in used:
                out.append(p)
        return out

    def basis_keys(self, weight: int) -> list[BasisKey]:
        """All basis keys whose diagrams have the given strand count."""
        if weight in self._basis_cache:
            return self._basis_cache[weight]
        keys: list[BasisKey] = []
        if 0 <= weight <= 2 * self.k:
            all_strands = [(s, t) for s in range(1, self.n) for t in range(s + 1, self.n + 1)]
            for m in range(0, weight + 1):
                for moving in itertools.combinations(all_strands, m):
                    if not self._moving_ok(moving):
                        continue
                    free = self._free_pairs(moving)
                    for pairs in itertools.combinations(free, weight - m):
                        keys.append((moving, pairs))
        keys.sort()
        self._basis_cache[weight] = keys
        return keys

    def summand_basis(self, i: int) -> list[AlgebraElement]:
        """Basis of the summand of index i (weight k+i), expanded."""
        if not -self.k <= i <= self.k:
            raise StrandError(f"summand index {i} outside [-{self.k},{self.k}]")
        return [self.expand(key) for key in self.basis_keys(self.k + i)]

    def dim_summand(self, i: int) -> int:
        return len(self.basis_keys(self.k + i))

    def expand(self, key: BasisKey) -> AlgebraElement:
        """Sum over all placements of one horizontal strand per chosen pair."""
        if key in self._expand_cache:
            return self._expand_cache[key]
        moving, pairs = key
        terms = set()
        feet = [self.circle.pair_feet(p) for p in pairs]
        for choice in itertools.product(*feet) if feet else [()]:
            diag = tuple(sorted(moving + tuple((f, f) for f in choice)))
            terms.add(diag)
        elt = AlgebraElement(self.n, terms)
        self._expand_cache[key] = elt
        return elt

    def key_of_leading(self, diag: Diagram) -> BasisKey:
        """Reconstruct the key whose lexicographically least term is diag."""
        moving = tuple(s for s in diag if s[0] != s[1])
        pairs = []
        for s, t in diag:
            if s == t:
                if self.circle.pair_of(s) != s:
                    raise NotInSpan(f"diagram {diag} is not a leading term")
                pairs.append(s)
        key = (moving, tuple(sorted(pairs)))
        if not self._moving_ok(moving):
            raise NotInSpan(f"moving strands of {diag} not admissible")
        free = set(self._free_pairs(moving))
        if any(p not in free for p in key[1]):
            raise NotInSpan(f"horizontal pair collides with strand endpoints in {diag}")
        return key

    def decompose(self, element: AlgebraElement) -> list[BasisKey]:
        """Write an A(4k) element in the circle's basis; NotInSpan if impossible.

        Peels leading terms: the all-minima placement of a key is its least
        diagram and occurs in no other key's expansion.
        """
        if element.n != self.n:
            raise AmbientMismatch(f"ambient {element.n} != {self.n}")
        rest = set(element.terms)
        out = []
        while rest:
            key = self.key_of_leading(min(rest))
            out.append(key)
            rest ^= self.expand(key).terms
        return sorted(out)

    def contains(self, element: AlgebraElement) -> bool:
        try:
            self.decompose(element)
            return True
        except NotInSpan:
            return False

    # -- distinguished elements

    def idempotent(self, pairs) -> AlgebraElement:
        """I(s): the sum over all sections of the given set of matched pairs."""
        pairs = tuple(sorted(self.circle.pair_of(p) for p in pairs))
        if len(set(pairs)) != len(pairs):
            raise StrandError(f"repeated pair in {pairs}")
        return self.expand(((), pairs))

    def indecomposable_idempotents(self, weight: int | None = None):
        out = []
        for r in range(0, 2 * self.k + 1):
            if weight is not None and r != weight:
                continue
            for pairs in itertools.combinations(self.circle.pairs, r):
                out.append((pairs, self.idempotent(pairs)))
        return out

    def unit(self) -> AlgebraElement:
        acc = AlgebraElement.zero(self.n)
        for _, idem in self.indecomposable_idempotents():
            acc = acc + idem
        return acc

    def chord_element(self, chord: Chord | tuple[int, int]) -> AlgebraElement:
        """a(rho): one moving strand plus every admissible horizontal completion."""
        return self.chords_element([chord])

    def chords_element(self, chords) -> AlgebraElement:
        """a(R) for a set of chords, summed over admissible completions."""
        moving = []
        for c in chords:
            s, t = c.as_pair() if isinstance(c, Chord) else tuple(c)
            if not 1 <= s < t <= self.n:
                raise IncompatibleChordSet(f"chord ({s},{t}) invalid on {self.n} points")
            moving.append((s, t))
        moving = tuple(sorted(moving))
        if not self._moving_ok(moving):
            raise IncompatibleChordSet(f"chords {moving} share or match endpoints")
        acc = AlgebraElement.zero(self.n)
        free = self._free_pairs(moving)
        for r in range(0, len(free) + 1):
            for pairs in itertools.combinations(free, r):
                acc = acc + self.expand((moving, pairs))
        return acc

    def a_expand(self, S, T, phi: dict) -> AlgebraElement:
        """Expand an admissible triple (S, T, phi) over its fixed points."""
        S, T = set(S), set(T)
        M = self.circle.partner
        if set(phi) != S or set(phi.values()) != T:
            raise NotAdmissible("phi is not a bijection S -> T")
        if any(phi[s] < s for s in S):
            raise NotAdmissible("phi veers downward")
        if any(M(s) in S for s in S) or any(M(t) in T for t in T):
            raise NotAdmissible("S or T meets its own matching image")
        moving = tuple(sorted((s, t) for s, t in phi.items() if s != t))
        pairs = tuple(sorted(self.circle.pair_of(s) for s in S if phi[s] == s))
        return self.expand((moving, pairs))

    # -- structure maps

    def key_left_pairs(self, key: BasisKey) -> tuple[int, ...]:
        moving, pairs = key
        occ = {self.circle.pair_of(s) for s, _ in moving} | set(pairs)
        return tuple(sorted(occ))

    def key_right_pairs(self, key: BasisKey) -> tuple[int, ...]:
        moving, pairs = key
        occ = {self.circle.pair_of(t) for _, t in moving} | set(pairs)
        return tuple(sorted(occ))

    def corner_keys(self, left_pairs, right_pairs) -> list[BasisKey]:
        """Basis keys of the corner I(left) * A * I(right)."""
        left = tuple(sorted(self.circle.pair_of(p) for p in left_pairs))
        right = tuple(sorted(self.circle.pair_of(p) for p in right_pairs))
        if len(left) != len(right):
            return []
        return [
            key
            for key in self.basis_keys(len(left))
            if self.key_left_pairs(key) == left and self.key_right_pairs(key) == right
        ]

    def support(self, element: AlgebraElement) -> tuple[int, ...]:
        """Common interval support of the terms (they all agree)."""
        sups = {diagram_support(self.n, t) for t in element.terms}
        if len(sups) != 1:
            raise StrandError("element terms have mixed support")
        return next(iter(sups))

    def left_idempotent_pairs(self, element: AlgebraElement) -> tuple[int, ...]:
        """Pairs occupied on the source side (terms must agree)."""
        outs = {tuple(sorted({self.circle.pair_of(s) for s, _ in t})) for t in element.terms}
        if len(outs) != 1:
            raise StrandError("element terms have mixed source idempotents")
        return next(iter(outs))

    def right_idempotent_pairs(self, element: AlgebraElement) -> tuple[int, ...]:
        outs = {tuple(sorted({self.circle.pair_of(e) for _, e in t})) for t in element.terms}
        if len(outs) != 1:
            raise StrandError("element terms have mixed target idempotents")
        return next(iter(outs))


@lru_cache(maxsize=None)
def algebra_of(circle: PointedMatchedCircle) -> SurfaceAlgebra:
    return SurfaceAlgebra(circle)


def to_opposite(element: AlgebraElement, circle: PointedMatchedCircle) -> AlgebraElement:
    """Anti-isomorphism onto the algebra of the reversed circle.

    Each strand (s, t) becomes (4k+1-t, 4k+1-s); products reverse order and
    the differential is preserved.
    """
    n = circle.n_points
    if element.n != n:
        raise AmbientMismatch(f"ambient {element.n} != {n}")
    terms = set()
    for diag in element.terms:
        terms.add(tuple(sorted((n + 1 - t, n + 1 - s) for s, t in diag)))
    return AlgebraElement(n, terms)


def drop_w_projection(element: AlgebraElement, circle: PointedMatchedCircle):
    """Project A(Z1 # Z2) onto A(Z1) (x) A(Z2) by killing seam-crossing terms.

    Returns an F2 set of (left, right) diagram pairs: the tensor expansion of
    the image, with right-hand points renumbered to start at 1.
    """
    if circle.seam is None:
        raise StrandError("circle has no recorded seam")
    p = circle.seam
    out: set[tuple[Diagram, Diagram]] = set()
    for diag in element.terms:
        if any(s <= p < t for s, t in diag):
            continue  # crosses the extra basepoint
        left = tuple(s for s in diag if s[1] <= p)
        right = tuple((s - p, t - p) for s, t in diag if s > p)
        out ^= {(left, right)}
    return out


# ---------------------------------------------------------------------------
# the torus algebra by name

TORUS_NAMES = ("iota0", "iota1", "rho1", "rho2", "rho3", "rho12", "rho23", "rho123")

_TORUS_STRANDS = {
    "rho1": (1, 2),
    "rho2": (2, 3),
    "rho3": (3, 4),
    "rho12": (1, 3),
    "rho23": (2, 4),
    "rho123": (1, 4),
}


def torus_algebra() -> SurfaceAlgebra:
    from .pmc import standard_pmc

    return algebra_of(standard_pmc("torus"))


def torus_element(name: str) -> AlgebraElement:
    """Named basis of the weight-1 torus summand: iota0, iota1, rho*. """
    alg = torus_algebra()
    if name in ("iota0", "i0"):
        return alg.idempotent([1])
    if name in ("iota1", "i1"):
        return alg.idempotent([2])
    if name in _TORUS_STRANDS:
        return alg.expand(((_TORUS_STRANDS[name],), ()))
    raise StrandError(f"unknown torus element {name!r}")


def torus_element_name(element: AlgebraElement) -> str | None:
    """Inverse of torus_element on the weight-1 basis, else None."""
    for name in TORUS_NAMES:
        if torus_element(name) == element:
            return name
    return None

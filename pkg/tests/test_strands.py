import itertools

import pytest

from bhf.pmc import standard_pmc, reverse, connected_sum
from bhf.strands import (
    AlgebraElement,
    IncompatibleChordSet,
    NotAdmissible,
    algebra_of,
    drop_w_projection,
    inversions,
    make_diagram,
    to_opposite,
    torus_element,
    TORUS_NAMES,
)
from bhf.checks import check_strand_properties, check_closure, check_torus_algebra


def elem(n, strands):
    return AlgebraElement.from_strands(n, strands)


def test_inversions_identity_and_single():
    assert inversions(make_diagram(5, [(i, i) for i in range(1, 6)]))[0] == 0
    assert inversions(make_diagram(5, [(2, 4)]))[0] == 0


def test_inversions_s5_example():
    # the permutation (1,2,3,4,5) -> (3,1,2,5,4) has exactly 3 crossings
    count, pairs = inversions(make_diagram(5, [(1, 3), (2, 1), (3, 2), (4, 5), (5, 4)]))
    assert count == 3
    assert set(pairs) == {(1, 2), (1, 3), (4, 5)}


def test_nilcoxeter_transposition_squares_to_zero():
    sigma = elem(2, [(1, 2), (2, 1)])
    assert (sigma * sigma).is_zero()


def test_multiply_mismatch_and_composition():
    a = elem(3, [(1, 2)])
    b = elem(3, [(2, 3)])
    assert a * b == elem(3, [(1, 3)])
    assert (b * a).is_zero()  # endpoint sets do not match


def test_differential_transposition_smooths_to_identity():
    sigma = elem(2, [(1, 2), (2, 1)])
    assert sigma.d() == elem(2, [(1, 1), (2, 2)])


def test_repeated_endpoints_rejected():
    with pytest.raises(Exception):
        make_diagram(3, [(1, 2), (1, 3)])


def test_crossing_smoothing():
    d = elem(4, [(1, 3), (2, 2)])  # one crossing? (1,3) over horizontal (2,2)
    # inversion pair (1,2): phi(2)=2 < 3: crossing; smoothing gives (1,2),(2,3)
    assert d.d() == elem(4, [(1, 2), (2, 3)])


def test_crossingless_differential_vanishes():
    assert elem(4, [(1, 2), (3, 4)]).d().is_zero()


def test_torus_algebra_check():
    ok, detail = check_torus_algebra()
    assert ok, detail


def test_strand_property_suite_small():
    ok, detail = check_strand_properties(samples=1500, seed=3)
    assert ok, detail


def test_closure_genus1():
    ok, detail = check_closure(max_genus=1)
    assert ok, detail


def test_algebra_dimensions_torus():
    alg = algebra_of(standard_pmc("torus"))
    assert [alg.dim_summand(i) for i in (-1, 0, 1)] == [1, 8, 7]


def test_split_lowest_summand_is_f2():
    for k in (1, 2):
        alg = algebra_of(standard_pmc("split", k))
        assert alg.dim_summand(-k) == 1


def test_a_expand_four_terms():
    # two fixed points, each on its own matched pair: four placements
    alg = algebra_of(standard_pmc("split", 2))
    out = alg.a_expand({2, 5, 6}, {2, 6, 7}, {5: 7, 2: 2, 6: 6})
    assert len(out.terms) == 4
    assert make_diagram(8, [(2, 2), (5, 7), (6, 6)]) in out.terms
    assert make_diagram(8, [(4, 4), (5, 7), (8, 8)]) in out.terms


def test_a_expand_fixed_point_free_single_term():
    alg = algebra_of(standard_pmc("torus"))
    out = alg.a_expand({1}, {2}, {1: 2})
    assert out == torus_element("rho1")


def test_a_expand_single_fixed_point_swaps():
    alg = algebra_of(standard_pmc("torus"))
    out = alg.a_expand({1}, {1}, {1: 1})
    assert out == alg.idempotent([1])
    assert len(out.terms) == 2


def test_a_expand_rejects_inadmissible():
    alg = algebra_of(standard_pmc("torus"))
    with pytest.raises(NotAdmissible):
        alg.a_expand({1, 3}, {1, 3}, {1: 1, 3: 3})


def test_idempotents():
    alg = algebra_of(standard_pmc("torus"))
    i0 = alg.idempotent([1])
    i1 = alg.idempotent([2])
    assert i0 * i0 == i0
    assert (i0 * i1).is_zero()
    assert i0 == torus_element("iota0")


def test_chord_element_rho1_single_diagram():
    alg = algebra_of(standard_pmc("torus"))
    assert alg.chord_element((1, 2)) == elem(4, [(1, 2)])


def test_chord_23_squares_to_zero():
    alg = algebra_of(standard_pmc("torus"))
    a = alg.chord_element((1, 3))
    assert (a * a).is_zero()


def test_chords_elem_empty_is_unit():
    alg = algebra_of(standard_pmc("torus"))
    assert alg.chords_element([]) == alg.unit()


def test_chords_elem_incompatible():
    alg = algebra_of(standard_pmc("torus"))
    with pytest.raises(IncompatibleChordSet):
        alg.chords_element([(1, 2), (3, 4)])  # starts 1,3 are matched


def test_opposite_exchanges_rho1_rho3():
    t = standard_pmc("torus")
    assert to_opposite(torus_element("rho1"), t) == torus_element("rho3")
    assert to_opposite(torus_element("rho2"), t) == torus_element("rho2")
    assert to_opposite(torus_element("iota0"), t) == torus_element("iota1")


def test_opposite_involution_and_antihom():
    t = standard_pmc("torus")
    for a, b in itertools.product(TORUS_NAMES, repeat=2):
        ea, eb = torus_element(a), torus_element(b)
        assert to_opposite(ea * eb, t) == to_opposite(eb, t) * to_opposite(ea, t)
        assert to_opposite(to_opposite(ea, t), reverse(t)) == ea


def test_drop_w_kills_seam_crossers():
    z = connected_sum(standard_pmc("torus"), standard_pmc("torus"))
    crossing = elem(8, [(3, 6)])
    assert drop_w_projection(crossing, z) == set()


def test_drop_w_splits_idempotent():
    z = connected_sum(standard_pmc("torus"), standard_pmc("torus"))
    alg = algebra_of(z)
    idem = alg.idempotent([1, 6])
    out = drop_w_projection(idem, z)
    # sections of pair {1,3} stay left, sections of {6,8} move right, shifted
    assert out == {
        (((1, 1),), ((2, 2),)), (((1, 1),), ((4, 4),)),
        (((3, 3),), ((2, 2),)), (((3, 3),), ((4, 4),)),
    }


def test_drop_w_chord_in_left_block():
    # a chord supported in the first block projects to chord (x) unit
    z = connected_sum(standard_pmc("torus"), standard_pmc("torus"))
    alg = algebra_of(z)
    out = drop_w_projection(alg.chord_element((1, 2)), z)
    torus_alg = algebra_of(standard_pmc("torus"))
    left_chord = torus_alg.chord_element((1, 2))
    expected = {
        (l, r) for l in left_chord.terms for r in torus_alg.unit().terms
    }
    assert out == expected


def test_drop_w_is_multiplicative_on_samples():
    z = connected_sum(standard_pmc("torus"), standard_pmc("torus"))
    alg = algebra_of(z)
    import random

    rng = random.Random(9)
    keys = [k for w in range(0, 5) for k in alg.basis_keys(w)]
    sample = rng.sample(keys, 25)
    for k1 in sample[:10]:
        for k2 in sample[10:20]:
            a, b = alg.expand(k1), alg.expand(k2)
            image_prod = drop_w_projection(a * b, z)
            prods = set()
            for l1, r1 in drop_w_projection(a, z):
                for l2, r2 in drop_w_projection(b, z):
                    from bhf.strands import multiply_diagrams

                    l = multiply_diagrams(l1, l2)
                    r = multiply_diagrams(r1, r2)
                    if l is not None and r is not None:
                        prods ^= {(l, r)}
            assert prods == image_prod

from fractions import Fraction
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import laplace_det, sgn
from strongeom.chirotope import AFFINE, LINEAR, PointConfig, affine_chirotope
from strongeom.errors import MissingWedgeEntry, SearchTooLarge
from strongeom.predicates import det_sign, dot
from strongeom.rng import SplitMix64
from strongeom.wedge import (
    compare_strong_geometries,
    rank3_cross_route,
    nested_alpha_routes,
    random_rational_config,
    recover_base_from_wedge,
    side_sign,
    strong_geometry,
    verify_dimension_reduction,
    verify_parity_invariance,
    verify_rank3_identity,
    verify_recover4,
    verify_wit2,
    wedge_chirotope,
    wedge_family,
    witnessed_sign_from_wedge,
    witnessed_wedge_chirotope,
)

coord = st.fractions(min_value=-12, max_value=12, max_denominator=7)


def test_family_of_basis():
    X = PointConfig(((1, 0, 0), (0, 1, 0), (0, 0, 1)), LINEAR)
    fam = wedge_family(X)
    assert fam.alphas[(0, 1)] == (0, 0, 1)
    assert fam.alphas[(0, 2)] == (0, -1, 0)
    assert fam.alphas[(1, 2)] == (1, 0, 0)


def test_equal_points_give_loop():
    X = PointConfig(((1, 2), (3, 4), (1, 2), (0, 5)))
    fam = wedge_family(X)
    assert fam.alphas[(0, 2)] == (0, 0, 0)
    SG = strong_geometry(X)
    assert (0, 2) in SG.loops()
    assert SG.wedge_sign((0, 2), (0, 1), (1, 3)) == 0


def test_loops_from_signs_alone():
    X = PointConfig(((1, 2), (3, 4), (1, 2), (0, 5)))
    SG = strong_geometry(X)
    SG.family = None
    assert SG.loops() == frozenset({(0, 2)})


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(coord, coord, coord), min_size=4, max_size=6))
def test_alpha_orthogonal_and_positive(pts):
    X = PointConfig(tuple(pts))
    fam = wedge_family(X)
    vecs = X.vectors()
    for I, a in fam.alphas.items():
        for i in I:
            assert dot(a, vecs[i]) == 0
        if any(a):
            assert sgn(laplace_det([vecs[i] for i in I] + [a])) == 1


def test_rank3_self_triple_positive():
    rng = SplitMix64(3)
    X = random_rational_config(rng, 5, 2)
    SG = strong_geometry(X)
    for a, b, c in combinations(range(5), 3):
        assert SG.wedge_sign((a, b), (a, c), (b, c)) == SG.base((a, b, c)) ** 2 == 1


def test_parallel_equators_zero():
    # 0, 1, 2 collinear: the lines (0,1) and (0,2) coincide
    X = PointConfig(((0, 0), (1, 1), (3, 3), (0, 2), (5, 1)))
    SG = strong_geometry(X)
    for J in combinations(range(5), 2):
        assert SG.wedge_sign((0, 1), (0, 2), J) == 0


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(coord, coord), min_size=4, max_size=6))
def test_rank3_identity_property(pts):
    assert verify_rank3_identity(PointConfig(tuple(pts))).violations == 0


def test_rank3_collinear_both_zero():
    X = PointConfig(((0, 0), (1, 1), (2, 2), (0, 3), (4, 1)))
    SG = strong_geometry(X)
    for x, y in permutations(range(5), 2):
        assert SG.wedge_sign((0, 1), (0, 2), (x, y)) == 0
        assert SG.base((0, 1, 2)) * SG.base((0, x, y)) == 0


def test_rank3_pentagon_like():
    X = PointConfig(((10, 0), (3, 9), (-8, 6), (-8, -6), (3, -9)))
    assert verify_rank3_identity(X).violations == 0


def test_rank3_cross_route_and_side_sign():
    rng = SplitMix64(17)
    X = random_rational_config(rng, 6, 2)
    for i, j, k in combinations(list(combinations(range(6), 2)), 3):
        a, b = rank3_cross_route(X, i, j, k)
        assert a == b
    Y = random_rational_config(rng, 6, 3)
    for I in combinations(range(6), 3):
        for k in range(6):
            a, b = side_sign(Y, I, k)
            assert a == b


@pytest.mark.parametrize("d", [2, 3, 4])
def test_nested_alpha_routes(d):
    rng = SplitMix64(100 + d)
    from strongeom.rng import random_vector

    for _ in range(40):
        Xs = [[random_vector(rng, d + 1, 9) for _ in range(d)] for _ in range(d)]
        Y = [random_vector(rng, d + 1, 9) for _ in range(d)]
        first, second, third = nested_alpha_routes(Xs, Y)
        assert first == second
        assert third == (-1) ** d * first


def test_opposite_configurations_r3():
    rng = SplitMix64(21)
    X = random_rational_config(rng, 6, 3, LINEAR)
    neg = X.mapped(lambda c: tuple(-v for v in c))
    A, B = strong_geometry(X), strong_geometry(neg, eager=False)
    assert A.wedge.same_signs(B.wedge)
    assert A.base.negated().same_signs(B.base)


def test_opposite_configurations_r4():
    rng = SplitMix64(22)
    X = random_rational_config(rng, 6, 4, LINEAR)
    neg = X.mapped(lambda c: tuple(-v for v in c))
    A, B = strong_geometry(X, eager=False), strong_geometry(neg, eager=False)
    assert A.base.same_signs(B.base)
    assert compare_strong_geometries(A, B, list(range(6))).isomorphic


def test_scaling_invariance():
    rng = SplitMix64(23)
    X = random_rational_config(rng, 6, 3)
    Y = PointConfig(X.coords, LINEAR).mapped(lambda c: tuple(2 * v for v in c))
    A, B = strong_geometry(PointConfig(X.coords, LINEAR)), strong_geometry(Y)
    assert A.base.same_signs(B.base) and A.wedge.same_signs(B.wedge)


@pytest.mark.parametrize("d", [3, 4])
def test_parity_invariance(d):
    assert verify_parity_invariance(d, 15, seed=d).violations == 0


def test_relabel_functoriality():
    rng = SplitMix64(24)
    X = random_rational_config(rng, 6, 3)
    perm = [3, 0, 5, 1, 4, 2]
    Y = X.relabeled(perm)  # label i of Y carries point perm[i] of X
    inv = [perm.index(i) for i in range(6)]
    res = compare_strong_geometries(strong_geometry(X, eager=False), strong_geometry(Y, eager=False), inv)
    assert res.isomorphic


# witnessed wedge ---------------------------------------------------------------


def test_witnessed_routes_agree():
    rng = SplitMix64(31)
    for _ in range(3):
        X = random_rational_config(rng, 6, 3)
        for w in range(6):
            a = witnessed_wedge_chirotope(X, w, "translate")
            b = witnessed_wedge_chirotope(X, w, "project")
            assert a.same_signs(b)


def test_witnessed_parallel_lines_zero():
    # from 0, points 1 and 2 are in the same direction, so lines (1,3) and (2,3) project into one great circle
    X = PointConfig(((0, 0, 0), (1, 1, 1), (2, 2, 2), (0, 1, 5), (3, -1, 2)))
    W = witnessed_wedge_chirotope(X, 0)
    assert W(((1, 3), (2, 3), (3, 4))) == 0
    SG = strong_geometry(X, eager=False)
    J = (3, 4, 1)
    if SG.base((0,) + J) != 0:
        assert witnessed_sign_from_wedge(SG, 0, ((1, 3), (2, 3), (3, 4)), J) == 0


def test_wit2_extraction():
    rng = SplitMix64(41)
    X = random_rational_config(rng, 6, 3)
    good = verify_wit2(X, "plain")
    assert good.checked > 0 and good.violations == 0
    # the minus-sign variant disagrees whenever the witnessed sign is nonzero
    bad = verify_wit2(X, "negated")
    assert bad.violations > 0


def test_linwit_d3():
    rep = verify_dimension_reduction(3, 200, seed=1)
    assert rep.violations == 0 and rep.extra["omega_last_violations"] == 0


def test_linwit_d4_needs_omega_last():
    rep = verify_dimension_reduction(4, 200, seed=1)
    assert rep.extra["omega_last_violations"] == 0
    # omega first differs from omega last by (-1)^(d-1), a flip for even d
    assert rep.violations == rep.checked - rep.extra["degenerate"]


def test_linwit_d5():
    rep = verify_dimension_reduction(5, 60, seed=1)
    assert rep.violations == 0 and rep.extra["omega_last_violations"] == 0


def test_linwit_dependent_y_both_zero():
    from strongeom.predicates import hyperplane_vector

    ys = [(1, 2, 3), (2, 4, 6)]
    assert all(c == 0 for c in hyperplane_vector(ys))
    assert det_sign([(1, 0, 0)] + ys) == 0


# recovery -------------------------------------------------------------------------


def test_recover_basis():
    X = PointConfig(((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)), LINEAR)
    rec = recover_base_from_wedge(strong_geometry(X))
    assert rec((0, 1, 2, 3)) == 1


def test_recover_dependent_tuple():
    X = PointConfig(((0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)))
    SG = strong_geometry(X, eager=False)
    rec = recover_base_from_wedge(SG)
    assert SG.base((0, 1, 2, 3)) == 0 == rec((0, 1, 2, 3))
    assert verify_recover4(X).violations == 0


def test_recover_strict_loop():
    X = PointConfig(((0, 0, 0), (1, 0, 0), (2, 0, 0), (0, 1, 0), (0, 0, 1)))
    rec = recover_base_from_wedge(strong_geometry(X, eager=False), strict=True)
    with pytest.raises(MissingWedgeEntry):
        rec((0, 1, 2, 3))


def test_recover_random():
    rng = SplitMix64(51)
    for _ in range(5):
        X = random_rational_config(rng, 6, 3)
        rep = verify_recover4(X)
        assert rep.checked == 15 and rep.violations == 0


# comparison -------------------------------------------------------------------------


def test_compare_identity_and_search():
    rng = SplitMix64(61)
    X = random_rational_config(rng, 6, 3)
    A = strong_geometry(X, eager=False)
    assert compare_strong_geometries(A, A, list(range(6))).isomorphic
    perm = [2, 4, 0, 5, 1, 3]
    B = strong_geometry(X.relabeled(perm), eager=False)
    res = compare_strong_geometries(A, B)
    assert res.isomorphic
    inv = tuple(perm.index(i) for i in range(6))
    assert compare_strong_geometries(A, B, inv).isomorphic


def test_compare_moved_point():
    X = PointConfig(((0, 0, 0), (4, 0, 0), (0, 4, 0), (0, 0, 4), (1, Fraction(6, 5), Fraction(4, 5)), (5, 7, -3)))
    # move label 4 just across the plane through 1, 2, 3
    Y = PointConfig(X.coords[:4] + ((Fraction(3, 2), Fraction(3, 2), Fraction(6, 5)),) + X.coords[5:])
    A, B = strong_geometry(X, eager=False), strong_geometry(Y, eager=False)
    flipped = [t for t, s in A.base.items() if B.base(t) != s]
    assert flipped == [(1, 2, 3, 4)]
    res = compare_strong_geometries(A, B, list(range(6)))
    assert not res.isomorphic and res.witness[0] == "base"


def test_compare_search_limit():
    rng = SplitMix64(62)
    X = random_rational_config(rng, 10, 3)
    A = strong_geometry(X, eager=False)
    with pytest.raises(SearchTooLarge):
        compare_strong_geometries(A, A)


def test_wedge_eager_threshold():
    rng = SplitMix64(63)
    X = random_rational_config(rng, 5, 2)
    W = wedge_chirotope(X)
    assert W.n == 10 and W.rank == 3
    assert len(W._memo) == 120


def test_rank3_fast_matches_lookup():
    rng = SplitMix64(71)
    configs = [random_rational_config(rng, rng.randint(5, 7), 2) for _ in range(6)]
    configs.append(PointConfig(((0, 0), (1, 1), (2, 2), (0, 3), (4, 1), (4, 1))))
    for X in configs:
        a = verify_rank3_identity(X, "fast")
        b = verify_rank3_identity(X, "lookup")
        assert (a.checked, a.violations) == (b.checked, b.violations)

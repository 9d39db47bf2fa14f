import time

import pytest
from hypothesis import given, strategies as st

from clustercones.cones import (Cone, DimensionMismatch, DimensionTooLarge, InfeasibleSlice, RaySet,
                                UnboundedSlice, Weight, WeightSlice, cone_equal, dominant_weights,
                                embed, gt_cone, inequality_matching, lattice_points, psi_image_of_gt,
                                rays, simplicial_check, transform_cone, weight_slice, weyl_dim,
                                xi_cone, xi_U_expected_rays)
from clustercones.gvec import all_coords, all_minor_sets, gt_pattern, gvector_minor, psi_matrix
from clustercones.tropic import IneqSystem

TABLE_31 = [
    (0, -1, 3, 1, 0), (0, 0, 2, 0, 1), (0, 0, 2, 1, 0), (0, 1, 1, 0, 1), (0, 1, 1, 1, 0),
    (0, 2, 0, 0, 1), (0, 2, 0, 1, 0), (1, -1, 2, 1, 0), (1, 0, 1, 0, 1), (1, 0, 1, 1, 0),
    (1, 1, 0, 0, 1), (1, 1, 0, 1, 0), (2, -1, 1, 1, 0), (2, 0, 0, 0, 1), (2, 0, 0, 1, 0),
]


def cone(order, rows):
    return Cone(IneqSystem(tuple(order), tuple(tuple(r) for r in rows)))


def test_gt_cone_rows():
    assert gt_cone(1).rows == ((1,),)
    K = gt_cone(4)
    assert len(K.rows) == 13
    pos = {v: t for t, v in enumerate(K.order)}

    def arrow(a, b):
        r = [0] * 10
        r[pos[a]] = 1
        if b:
            r[pos[b]] = -1
        return tuple(r)

    want = {arrow((i, j), (i, j - 1)) for i, j in K.order if i < j}
    want |= {arrow((i, j), (i + 1, j + 1)) for i, j in K.order if j < 4}
    want.add(arrow((4, 4), None))
    assert set(K.rows) == want


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_gt_patterns_in_cone(n):
    K = gt_cone(n)
    for J in all_minor_sets(n):
        assert K.contains(gt_pattern(n, J).entries)


def test_simplicial_standard_basis():
    c = cone([(1, 1), (1, 2), (2, 2)], [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert rays(c).rays == ((0, 0, 1), (0, 1, 0), (1, 0, 0))


def test_rays_of_a_square_pyramid():
    c = cone([(1, 1), (1, 2), (2, 2)], [(1, 0, 1), (-1, 0, 1), (0, 1, 1), (0, -1, 1)])
    assert set(rays(c).rays) == {(1, 1, 1), (1, -1, 1), (-1, 1, 1), (-1, -1, 1)}


def test_dimension_too_large():
    order = [(1, k) for k in range(22)]
    rows = [[int(a == b) for b in range(22)] for a in range(22)]
    with pytest.raises(DimensionTooLarge):
        rays(cone(order, rows))


@pytest.mark.parametrize("n", [3, 4])
def test_gt_rays_are_minor_patterns(n):
    assert rays(gt_cone(n)) == RaySet.of(gt_pattern(n, J).entries for J in all_minor_sets(n))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_xi_tilde(n):
    K, Xt = gt_cone(n), xi_cone(n, "GmodU", True)
    assert len(K.rows) == len(Xt.rows) == n * (n - 1) + 1
    assert cone_equal(K, Xt, psi_matrix(n))
    assert inequality_matching(K, Xt, psi_matrix(n))
    assert cone_equal(psi_image_of_gt(n), Xt)
    assert not cone_equal(psi_image_of_gt(n), embed(xi_cone(n, "GmodU"), all_coords(n)))
    edges = rays(Xt)
    assert edges == RaySet.of(gvector_minor(n, J).vector(all_coords(n)) for J in all_minor_sets(n))
    assert len(edges) == len(all_minor_sets(n))


def test_cone_equal_basics():
    K = gt_cone(3)
    assert cone_equal(K, K)
    with pytest.raises(DimensionMismatch):
        cone_equal(K, gt_cone(4))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_xi_u_simplicial(n):
    rep = simplicial_check(xi_cone(n, "U"), xi_U_expected_rays(n))
    assert rep.ok and rep.ray_count == rep.dim == n * (n - 1) // 2
    assert rep.pairing_is_permutation and rep.lattice_basis


def test_simplicial_negative():
    c = xi_cone(3, "U")
    rows = list(c.rows)
    rows[0] = tuple(2 * x if x else 0 for x in rows[0])
    rows[0] = tuple(a + (1 if t == 0 else 0) for t, a in enumerate(rows[0]))
    bad = Cone(IneqSystem.normalized(c.order, rows))
    rep = simplicial_check(bad, xi_U_expected_rays(3))
    assert not rep.ok and rep.failures


def test_weight_slice_equalities():
    s = weight_slice(3, (3, 1))
    assert s.cone.order == ((1, 1), (1, 2), (1, 3), (2, 2), (2, 3))
    assert s.equalities == (((1, 1, 1, 0, 0), 2), ((0, 0, 0, 1, 1), 1))


def test_weight_31_table():
    assert lattice_points(weight_slice(3, (3, 1))) == TABLE_31
    assert weyl_dim(3, (3, 1)) == 15


def test_small_slices():
    assert lattice_points(weight_slice(3, (0, 0))) == [(0,) * 5]
    assert len(lattice_points(weight_slice(3, (1, 0)))) == 3
    assert len(lattice_points(weight_slice(4, (1, 0, 0)))) == 4
    assert weyl_dim(4, (1, 1, 1)) == 4 and weyl_dim(4, (0, 0, 0)) == 1


def test_weight_validation():
    with pytest.raises(ValueError):
        Weight((1, 2))
    with pytest.raises(ValueError):
        Weight((-1,))
    with pytest.raises(ValueError):
        weight_slice(3, (1, 0, 0))


def test_unbounded_and_infeasible():
    c = cone([(1, 1), (1, 2)], [(1, 0)])
    s = WeightSlice(c, (((1, 0), 1),))
    with pytest.raises(UnboundedSlice):
        lattice_points(s)
    tight = cone([(1, 1), (1, 2)], [(1, 0), (0, 1), (-1, -1)])
    with pytest.raises(InfeasibleSlice):
        weight_slice(2, (3,), cone([(1, 1)], [(-1,)]))
    assert lattice_points(WeightSlice(tight, (((1, 1), 0),))) == [(0, 0)]


def test_weyl_sweep_n3():
    for lam in dominant_weights(3, 6):
        assert len(lattice_points(weight_slice(3, lam))) == weyl_dim(3, lam), lam


def test_weyl_sweep_n4():
    t0 = time.perf_counter()
    for lam in dominant_weights(4, 4):
        assert len(lattice_points(weight_slice(4, lam))) == weyl_dim(4, lam), lam
    assert time.perf_counter() - t0 < 300


@given(st.integers(0, 5), st.integers(0, 5))
def test_slice_points_satisfy_everything(a, b):
    lam = (max(a, b), min(a, b))
    s = weight_slice(3, lam)
    pts = lattice_points(s)
    assert pts == sorted(set(pts))
    assert all(s.contains(p) for p in pts)
    assert len(pts) == weyl_dim(3, lam)


@given(st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_transform_roundtrip(y):
    # x in psi(K_3) iff psi^{-1} x in K_3
    from clustercones.gvec import psi, psi_inverse
    K, image = gt_cone(3), psi_image_of_gt(3)
    assert K.contains(y) == image.contains(psi(3, y))

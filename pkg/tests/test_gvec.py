from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from clustercones.cluster import initial_seed, run_plan
from clustercones.gvec import (GVector, ZERO, all_coords, all_minor_sets, closed_form, closed_form_U,
                               final_quiver, gt_pattern, gvector_minor, gvector_minor_computed,
                               gvector_of, matrix_entry_gvector, matrix_entry_gvector_computed, psi,
                               psi_check, psi_det, psi_inverse, row_sums, run_inverse_reflection,
                               vwarrows_check, with_principal_coefficients, DimensionMismatch, w_label)
from clustercones.exactalg import Kind, RationalFn
from clustercones.quiver import build_Gew0_quiver, reflection_plan

e = GVector.e


def test_initial_variables():
    ps = with_principal_coefficients(initial_seed(build_Gew0_quiver(4)))
    for v in ps.base.quiver.labels:
        assert gvector_of(ps.seed.vars[v]) == e(*v)


def test_principal_quiver_n4_at_s():
    q = final_quiver(4, "U")
    ps = with_principal_coefficients(initial_seed(q))
    ws = [l for l in ps.seed.quiver.labels if len(l) == 3]
    assert sorted(ws) == [w_label(v) for v in [(1, 2), (1, 3), (2, 3)]]
    for v in q.unfrozen():
        assert ps.seed.quiver.e(v, w_label(v)) == 1
    assert ps.seed.quiver.restrict(q.labels).same_as(q)


def test_projection_is_plain_run():
    q = build_Gew0_quiver(4)
    ps = with_principal_coefficients(initial_seed(q))
    plain = run_plan(initial_seed(q), reflection_plan(4))[-1]
    for v in reflection_plan(4).steps:
        ps = ps.mutate(v)
    proj = ps.project()
    assert all(proj.vars[v] == plain.vars[v] for v in q.labels)


def test_gvector_13():
    assert gvector_minor(4, (1, 3)) == e(1, 3) - e(1, 2) + e(2, 2)
    assert gvector_minor_computed(4, (1, 3)).gvector == e(1, 3) - e(1, 2) + e(2, 2)


def test_gvector_minor_cases():
    assert gvector_minor(5, (2, 3, 4)) == e(3, 4)
    # J = {1, j-i+2, ..., j+1}: i = 1, j = 3 gives a 2 x 2 minor
    assert gvector_minor(5, (1, 4)) == -e(1, 2) + e(1, 4) + e(2, 2)
    # i = 2, j = 3 gives a 3 x 3 minor
    assert gvector_minor(5, (1, 3, 4)) == -e(2, 3) + e(2, 4) + e(3, 3)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_closed_form_U(n):
    table, _ = run_inverse_reflection(n, "U")
    for key, g in table.items():
        assert g == closed_form_U(n, *key), key


def test_closed_form_examples():
    n = 5
    for j in range(2, n + 1):
        assert matrix_entry_gvector(n, 1, j) == e(1, j)
    assert closed_form_U(n, 2, 4, n - 4) == e(2, 4)
    table, _ = run_inverse_reflection(n, "U")
    assert table[(2, 4, 1)] == closed_form_U(n, 2, 4, 1)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_closed_form_gmodu_endpoint_term(n):
    # the literal formula adds e*_{i+k;i+k} at k = n - j, where the variable is the seed-s one
    table, _ = run_inverse_reflection(n, "GmodU")
    bad = sorted(k for k, g in table.items() if k[0] < k[1] and g != closed_form(n, *k, space="GmodU"))
    assert bad == [(i, j, n - j) for i in range(1, n) for j in range(i + 1, n + 1)]
    for i, j, k in bad:
        assert table[(i, j, k)] == e(i, j)
        assert closed_form(n, i, j, k, space="GmodU") - e(i, j) == e(i + k, i + k)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_vwarrows_and_entries(n):
    assert vwarrows_check(n, "GmodU") and vwarrows_check(n, "U")
    table, _ = run_inverse_reflection(n, "U")
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            assert matrix_entry_gvector_computed(n, i, j, table) == matrix_entry_gvector(n, i, j)


def test_gt_pattern_examples():
    p = gt_pattern(4, (1, 3)).as_dict()
    ones = sorted(k for k, v in p.items() if v)
    assert ones == [(1, 2), (1, 3), (1, 4), (2, 4)]
    assert sorted(k for k, v in gt_pattern(4, (4,)).as_dict().items() if v) == [(1, 1), (1, 2), (1, 3), (1, 4)]
    assert sorted(k for k, v in gt_pattern(3, (1, 2)).as_dict().items() if v) == [(1, 2), (1, 3), (2, 3)]


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_minors(n):
    for J in all_minor_sets(n):
        assert psi_check(n, J)
        assert gt_pattern(n, J).interlacing_ok()
        g = gvector_minor(n, J)
        assert row_sums(g, n) == [int(k == len(J)) for k in range(1, n + 1)]
        assert g.support() <= set(all_coords(n))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_computed_minors(n):
    for J in all_minor_sets(n):
        run = gvector_minor_computed(n, J)
        assert run.gvector == gvector_minor(n, J) and run.orientation_ok


def test_psi_basics():
    assert psi(4, [0] * 10) == [0] * 10
    for n in (3, 4, 5):
        assert abs(psi_det(n)) == 1
    with pytest.raises(DimensionMismatch):
        psi(3, [0] * 5)


@given(st.integers(2, 5).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.integers(-9, 9), min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2))))
def test_psi_inverse_roundtrip(args):
    n, y = args
    assert psi_inverse(n, psi(n, y)) == y


@given(st.lists(st.tuples(st.sampled_from(all_coords(4)), st.integers(-3, 3)), max_size=6),
       st.lists(st.tuples(st.sampled_from(all_coords(4)), st.integers(-3, 3)), max_size=6))
def test_gvector_group(a, b):
    ga, gb = GVector.of(dict(a)), GVector.of(dict(b))
    assert ga + gb == gb + ga
    assert ga - ga == ZERO
    assert (ga + gb).vector(all_coords(4)) == [x + y for x, y in zip(ga.vector(all_coords(4)), gb.vector(all_coords(4)))]

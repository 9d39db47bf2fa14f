import pytest
from hypothesis import given, strategies as st

from clustercones.quiver import (FrozenVertex, MutationPlan, Quiver, UnknownVertex, apply_plan,
                                 build_Gew0_quiver, build_U_quiver, delete_bottom_row, is_sink,
                                 lex_sweep, mutate_quiver, nested_sweep, q_to_s0, reflection_plan,
                                 reversed_quiver, triangle_quiver)


def test_q2_three_cycle_loses_bottom_arrow():
    q = triangle_quiver(2)
    assert set(q.arrows()) == {((2, 2), (2, 1), 1), ((2, 1), (1, 1), 1), ((1, 1), (2, 2), 1)}
    out = apply_plan(q, [(1, 1), (2, 1), (2, 2)])
    assert set(out.arrows()) == {((2, 1), (1, 1), 1), ((1, 1), (2, 2), 1)}
    assert out.same_as(delete_bottom_row(q, 2))


def test_u_quiver_shapes():
    q2 = build_U_quiver(2)
    assert q2.labels == ((1, 2),) and q2.frozen == frozenset({(1, 2)}) and not q2.arrows()
    q5 = build_U_quiver(5)
    assert len(q5.labels) == 10 and sorted(q5.frozen) == [(i, 5) for i in range(1, 5)]
    # the U quiver is the bottom-deleted triangle on n - 1 rows, relabeled
    hat = delete_bottom_row(triangle_quiver(4), 4).relabel(q_to_s0)
    assert {(a, b) for a, b, _ in hat.arrows()} == {(a, b) for a, b, _ in q5.arrows()}
    q4 = build_U_quiver(4)
    assert set(q4.restrict(q4.unfrozen()).arrows()) == {((1, 2), (2, 3), 1), ((1, 3), (1, 2), 1),
                                                       ((2, 3), (1, 3), 1)}


def test_gew0_quiver():
    q = build_Gew0_quiver(3)
    assert len(q.labels) == 5 and q.unfrozen() == [(1, 2)]
    qnn = build_Gew0_quiver(4, include_nn=True)
    assert (4, 4) in qnn.frozen
    assert not qnn.out_neighbors((4, 4)) and not qnn.in_neighbors((4, 4))
    for a, b, _ in qnn.arrows():
        assert not (qnn.is_frozen(a) and qnn.is_frozen(b))


def test_reflection_plan_orders():
    assert reflection_plan(3).steps == ((1, 2),)
    assert reflection_plan(4).steps == ((1, 2), (1, 3), (2, 3), (1, 2))
    assert reflection_plan(5).steps == ((1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4),
                                        (1, 2), (1, 3), (2, 3), (1, 2))


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_reflection_reverses_u(n):
    q = build_U_quiver(n)
    assert apply_plan(q, reflection_plan(n)).same_as(reversed_quiver(q))


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_sweeps(n):
    q = triangle_quiver(n)
    assert apply_plan(q, lex_sweep(n)).same_as(delete_bottom_row(q, n))
    assert apply_plan(q, nested_sweep(n)).same_as(reversed_quiver(q))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_seed_s_sinks(n):
    q = apply_plan(build_Gew0_quiver(n), reflection_plan(n))
    # triangle labels v_{n;1}, v_{n-1;n} of the s-seed are v_{1;n}, v_{n-1;n-1} here
    assert is_sink(q, (1, n)) and is_sink(q, (n - 1, n - 1))


def test_errors_and_json():
    q = build_U_quiver(4)
    with pytest.raises(FrozenVertex):
        mutate_quiver(q, (1, 4))
    with pytest.raises(UnknownVertex):
        mutate_quiver(q, (9, 9))
    with pytest.raises(UnknownVertex):
        is_sink(q, (9, 9))
    assert Quiver.from_json(q.to_json()).same_as(q)
    assert reversed_quiver(reversed_quiver(q)).same_as(q)
    assert "->" in q.to_dot()
    with pytest.raises(ValueError):
        MutationPlan(((1, 4),)).validate(q)


QUIVERS = [build_U_quiver(n) for n in (3, 4, 5)] + [build_Gew0_quiver(n, True) for n in (3, 4, 5)] \
    + [triangle_quiver(n) for n in (2, 3, 4)]


@st.composite
def walks(draw):
    q = draw(st.sampled_from(QUIVERS))
    steps = draw(st.lists(st.sampled_from(q.unfrozen()), max_size=8))
    return q, steps


@given(walks())
def test_mutation_involution_and_skew_symmetry(qs):
    q, steps = qs
    cur = q
    for v in steps:
        nxt = mutate_quiver(cur, v)
        assert nxt.is_skew_symmetric()
        assert mutate_quiver(nxt, v).same_as(cur)
        for a, b, _ in nxt.arrows():
            assert not (nxt.is_frozen(a) and nxt.is_frozen(b))
        cur = nxt
    assert apply_plan(cur, list(reversed(steps))).same_as(q)

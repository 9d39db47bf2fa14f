import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from clustercones.cluster import (InvalidIndexSet, InvalidIndices, OutOfRange, certify,
                                  check_minor_identity, exchange_binomial, initial_seed,
                                  matrix_entry_vertex, minor, minor_plan, minor_plan_check,
                                  mutate_seed, predicted_minor, predicted_minor_U, random_sl,
                                  reflection_endpoint_check, run_plan, run_reflection, sample_points)
from clustercones.exactalg import evaluate, monomial_denominator
from clustercones.linalg import det
from clustercones.quiver import FrozenVertex, build_Gew0_quiver, build_U_quiver, reflection_plan


def test_predicted_minor_examples():
    assert predicted_minor(1, 2, 1, 3) == minor((1, 2), (1, 3))
    assert predicted_minor(1, 2, 0, 3) == minor((1,), (2,))
    assert predicted_minor(2, 4, 1, 5) == minor((1, 2, 3), (1, 4, 5))
    assert predicted_minor_U(1, 2, 1, 3) == minor((2,), (3,))
    with pytest.raises(OutOfRange):
        predicted_minor(1, 3, 1, 3)


def test_first_mutation_is_the_minor_13():
    q = build_Gew0_quiver(3)
    s = mutate_seed(initial_seed(q), (1, 2))
    pts = sample_points(3, q.labels, 20, random.Random(0), "GmodU")
    assert certify(s.vars[(1, 2)], minor((1, 2), (1, 3)), pts)


def test_random_sl_has_det_one():
    rng = random.Random(3)
    for n in (2, 3, 4, 5):
        assert det(random_sl(n, rng)) == 1


def test_frozen_mutation_rejected():
    with pytest.raises(FrozenVertex):
        mutate_seed(initial_seed(build_U_quiver(3)), (1, 3))


@pytest.mark.parametrize("n", [3, 4])
@pytest.mark.parametrize("space", ["GmodU", "U"])
def test_reflection_run(n, space):
    recs = run_reflection(n, space)
    assert len(recs) == len(reflection_plan(n))
    assert all(r.verified and r.laurent and r.pattern_ok for r in recs)


def test_reflection_endpoint_n4():
    assert reflection_endpoint_check(4)


def test_matrix_entries_on_u():
    n = 4
    q = build_U_quiver(n)
    seeds = run_plan(initial_seed(q), reflection_plan(n))
    pts = sample_points(n, q.labels, 10, random.Random(1), "U")
    for k in range(1, n):
        for l in range(k + 1, n + 1):
            v, count = matrix_entry_vertex(k, l)
            seen = 0
            var = seeds[0].vars[v]
            for s, step in zip(seeds[1:], reflection_plan(n).steps):
                if seen == count:
                    break
                if step == v:
                    seen += 1
                    var = s.vars[v]
            assert certify(var, minor((k,), (l,)), pts)


@pytest.mark.parametrize("n", [2, 3])
def test_minor_identity(n):
    assert all(check_minor_identity(n, *trip) for trip in combinations(range(1, n + 2), 3))
    with pytest.raises(InvalidIndices):
        check_minor_identity(n, 2, 1, 3)


def test_minor_plan_examples():
    plan, vertex = minor_plan(4, (2, 3))
    assert not plan.steps and vertex == (2, 3)
    assert minor_plan_check(4, (1, 3)) == (True, True)
    assert minor_plan_check(5, (1, 3, 5)) == (True, True)
    with pytest.raises(InvalidIndexSet):
        minor_plan(4, ())


@pytest.mark.parametrize("n", [3, 4])
def test_minor_plans_all(n):
    for i in range(1, n + 1):
        for J in combinations(range(1, n + 1), i):
            assert minor_plan_check(n, J, points=8) == (True, True)


QS = [build_Gew0_quiver(n) for n in (3, 4)] + [build_U_quiver(4)]


@given(st.sampled_from(QS), st.data())
def test_exchange_balances_and_involution(q, data):
    steps = data.draw(st.lists(st.sampled_from(q.unfrozen()), min_size=1, max_size=5))
    rng = random.Random(data.draw(st.integers(0, 1000)))
    pt = {v: Fraction(rng.randint(1, 9), rng.randint(1, 3)) for v in
          (initial_seed(q).vars[l].num.variables().pop() for l in q.labels)}
    s = initial_seed(q)
    for k in steps:
        out_term, in_term = exchange_binomial(s, k)
        nxt = mutate_seed(s, k)
        lhs = evaluate(s.vars[k], pt) * evaluate(nxt.vars[k], pt)
        assert lhs == evaluate(out_term, pt) + evaluate(in_term, pt)
        assert monomial_denominator(nxt.vars[k]) is not None
        back = mutate_seed(nxt, k)
        assert back.vars == s.vars and back.quiver.same_as(s.quiver)
        for v in q.frozen:
            assert nxt.vars[v] == s.vars[v]
        s = nxt

"""Seeds, the exchange relation, and mutation plans with their predicted minors.

Cluster variables are stored as rational functions of the initial variables.
Identities between minors hold only on the group (minors satisfy Plücker
relations), so agreement with a predicted minor is certified by evaluating
at random determinant-one rational matrices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Mapping

from .exactalg import (A, DivisionByZero, LaurentPoly, RationalFn, VarId, det, evaluate, m,
                       monomial_denominator)
from .quiver import (FrozenVertex, MutationPlan, Quiver, UnknownVertex, build_Gew0_quiver,
                     build_U_quiver, mutate_quiver, reflection_plan, sweep_plan)


class OutOfRange(ValueError):
    pass


class InvalidIndexSet(ValueError):
    pass


class InvalidIndices(ValueError):
    pass


class ExchangePatternMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class MinorSpec:
    rows: tuple
    cols: tuple

    def __post_init__(self):
        if len(self.rows) != len(self.cols):
            raise ValueError("minor needs equally many rows and columns")
        if list(self.rows) != sorted(set(self.rows)) or list(self.cols) != sorted(set(self.cols)):
            raise ValueError("minor index sets must be sorted and distinct")

    def __str__(self):
        return f"Δ^{{{','.join(map(str, self.rows))}}}_{{{','.join(map(str, self.cols))}}}"

    def of(self, M) -> Fraction:
        if not self.rows:
            return Fraction(1)
        return det([[M[r - 1][c - 1] for c in self.cols] for r in self.rows])

    def to_json(self):
        return {"rows": list(self.rows), "cols": list(self.cols)}


def minor(rows, cols) -> MinorSpec:
    return MinorSpec(tuple(sorted(rows)), tuple(sorted(cols)))


def initial_minor(i: int, j: int) -> MinorSpec:
    return minor(range(1, i + 1), range(j - i + 1, j + 1))


@dataclass(frozen=True)
class Seed:
    quiver: Quiver
    vars: Mapping = field(hash=False)

    def __getitem__(self, v) -> RationalFn:
        return self.vars[v]


def initial_seed(q: Quiver, var_of: Callable | None = None) -> Seed:
    """Seed whose variable at (i, j) is the symbol A[i;j] (or var_of(label))."""
    var_of = var_of or (lambda v: A(*v))
    return Seed(q, {v: RationalFn.var(var_of(v)) for v in q.labels})


def exchange_binomial(s: Seed, k) -> tuple[RationalFn, RationalFn]:
    q = s.quiver
    out_term, in_term = RationalFn.of(1), RationalFn.of(1)
    for v, mult in q.out_neighbors(k).items():
        out_term = out_term * s.vars[v] ** mult
    for v, mult in q.in_neighbors(k).items():
        in_term = in_term * s.vars[v] ** mult
    return out_term, in_term


def mutate_seed(s: Seed, k) -> Seed:
    q = s.quiver
    if k not in q._pos:
        raise UnknownVertex(k)
    if q.is_frozen(k):
        raise FrozenVertex(k)
    out_term, in_term = exchange_binomial(s, k)
    new_vars = dict(s.vars)
    new_vars[k] = (out_term + in_term) / s.vars[k]
    return Seed(mutate_quiver(q, k), new_vars)


def predicted_minor(i: int, j: int, k: int, n: int) -> MinorSpec:
    """Δ^{1..k+i}_{1..k, k+j-i+1..k+j}: the variable at v_{i;j} after k mutations."""
    if not 1 <= i < j <= n or k < 0 or k + j > n:
        raise OutOfRange((i, j, k, n))
    return minor(range(1, k + i + 1), list(range(1, k + 1)) + list(range(k + j - i + 1, k + j + 1)))


def predicted_minor_U(i: int, j: int, k: int, n: int) -> MinorSpec:
    """The same variable restricted to U: Δ^{k+1..k+i}_{k+j-i+1..k+j}."""
    if not 1 <= i < j <= n or k < 0 or k + j > n:
        raise OutOfRange((i, j, k, n))
    return minor(range(k + 1, k + i + 1), range(k + j - i + 1, k + j + 1))


def matrix_entry_vertex(k: int, l: int) -> tuple[tuple[int, int], int]:
    """The entry Δ^k_l (k < l) of a matrix in U is the variable at v_{1;l-k+1}
    after k - 1 mutations there along the reflection plan."""
    if not 1 <= k < l:
        raise OutOfRange((k, l))
    return (1, l - k + 1), k - 1


# random points of SL_n and U

def random_sl(n: int, rng: random.Random, bound: int = 5) -> list[list[Fraction]]:
    """L D U with integer unitriangular L, U and rational diagonal D of determinant 1."""
    L = [[Fraction(1) if r == c else Fraction(rng.randint(-bound, bound)) if r > c else Fraction(0)
          for c in range(n)] for r in range(n)]
    U = [[Fraction(1) if r == c else Fraction(rng.randint(-bound, bound)) if r < c else Fraction(0)
          for c in range(n)] for r in range(n)]
    d = []
    for _ in range(n - 1):
        num = rng.choice([x for x in range(-bound, bound + 1) if x])
        den = rng.randint(1, bound)
        d.append(Fraction(num, den))
    prod = Fraction(1)
    for x in d:
        prod *= x
    d.append(1 / prod)
    LD = [[L[r][c] * d[c] for c in range(n)] for r in range(n)]
    return [[sum(LD[r][x] * U[x][c] for x in range(n)) for c in range(n)] for r in range(n)]


def random_unipotent(n: int, rng: random.Random, bound: int = 5) -> list[list[Fraction]]:
    return [[Fraction(1) if r == c else Fraction(rng.randint(-bound, bound)) if r < c else Fraction(0)
             for c in range(n)] for r in range(n)]


def initial_point(M, labels) -> dict[VarId, Fraction]:
    return {A(i, j): initial_minor(i, j).of(M) for (i, j) in labels}


# the reflection plan

def expected_exchange_neighbors(i: int, j: int, k: int, space: str) -> tuple[set, set]:
    """Out- and in-neighbours of v_{i;j} at its k-th mutation along the reflection plan."""
    outs, ins = {(i + 1, j + 1)}, {(i, j + 1)}
    if i > 1:
        outs.add((i - 1, j - 1))
    elif space == "GmodU":
        outs.add((k, k))
    if j > i + 1:
        ins.add((i, j - 1))
    elif space == "GmodU":
        ins.add((k + i, k + i))
    return outs, ins


@dataclass
class StepRecord:
    step: int
    vertex: tuple
    k: int
    variable: RationalFn
    predicted: MinorSpec
    verified: bool
    laurent: bool
    pattern_ok: bool

    def to_json(self) -> dict:
        return {"step": self.step, "vertex": list(self.vertex), "k": self.k,
                "variable": self.variable.to_json(), "predicted_minor": self.predicted.to_json(),
                "verified": self.verified, "laurent": self.laurent, "pattern_ok": self.pattern_ok}


def sample_points(n: int, labels, count: int, rng: random.Random, space: str, guard=None):
    """Random matrices with the corresponding values of the initial variables.

    A point is rejected when some initial minor vanishes or ``guard`` fails.
    """
    out = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > 50 * count:
            raise RuntimeError("could not find enough generic points")
        M = random_sl(n, rng) if space == "GmodU" else random_unipotent(n, rng)
        pt = initial_point(M, labels)
        if any(v == 0 for v in pt.values()):
            continue
        if guard is not None and not guard(pt):
            continue
        out.append((M, pt))
    return out


def certify(f: RationalFn, spec: MinorSpec, points) -> bool:
    for M, pt in points:
        try:
            if evaluate(f, pt) != spec.of(M):
                return False
        except DivisionByZero:
            return False
    return True


def run_reflection(n: int, space: str = "GmodU", points: int = 20, seed: int = 0,
                   check_pattern: bool = True) -> list[StepRecord]:
    if n < 3:
        raise OutOfRange(n)
    q = build_Gew0_quiver(n) if space == "GmodU" else build_U_quiver(n)
    predict = predicted_minor if space == "GmodU" else predicted_minor_U
    s = initial_seed(q)
    rng = random.Random(seed)
    pts = sample_points(n, q.labels, points, rng, space)
    counts: dict = {}
    records = []
    for step, v in enumerate(reflection_plan(n).steps, start=1):
        i, j = v
        k = counts.get(v, 0) + 1
        pattern_ok = True
        if check_pattern:
            outs, ins = expected_exchange_neighbors(i, j, k, space)
            got_out, got_in = s.quiver.out_neighbors(v), s.quiver.in_neighbors(v)
            pattern_ok = (set(got_out) == outs and set(got_in) == ins
                          and all(x == 1 for x in list(got_out.values()) + list(got_in.values())))
            if not pattern_ok:
                raise ExchangePatternMismatch(
                    f"step {step} at {v}: out {sorted(got_out)} vs {sorted(outs)}, in {sorted(got_in)} vs {sorted(ins)}")
        s = mutate_seed(s, v)
        counts[v] = k
        f = s.vars[v]
        spec = predict(i, j, k, n)
        records.append(StepRecord(step, v, k, f, spec, certify(f, spec, pts),
                                  monomial_denominator(f) is not None, pattern_ok))
    return records


def run_plan(s: Seed, plan) -> list[Seed]:
    steps = plan.steps if isinstance(plan, MutationPlan) else tuple(plan)
    seeds = [s]
    for v in steps:
        seeds.append(mutate_seed(seeds[-1], v))
    return seeds


def reflection_endpoint_check(n: int, points: int = 20, seed: int = 0) -> bool:
    """On U the final variable at v_{i;j} equals Δ^{w0(J)}_{w0(I)}."""
    q = build_U_quiver(n)
    final = run_plan(initial_seed(q), reflection_plan(n))[-1]
    pts = sample_points(n, q.labels, points, random.Random(seed), "U")
    for (i, j) in q.labels:
        spec = minor(range(n + 1 - j, n + 1 - j + i), range(n + 1 - i, n + 1))
        if not certify(final.vars[(i, j)], spec, pts):
            return False
    return True


# the three-term identity on n x (n+1) matrices

def generic_matrix(rows: int, cols: int) -> list[list[LaurentPoly]]:
    return [[LaurentPoly.var(m(r, c)) for c in range(1, cols + 1)] for r in range(1, rows + 1)]


def check_minor_identity(n: int, j1: int, j2: int, j3: int) -> bool:
    if not 1 <= j1 < j2 < j3 <= n + 1:
        raise InvalidIndices((j1, j2, j3))
    G = generic_matrix(n, n + 1)
    cols = set(range(1, n + 2))

    def d(size, drop):
        keep = sorted(cols - set(drop))
        return det([[G[r][c - 1] for c in keep] for r in range(size)])

    total = (d(n - 1, (j2, j3)) * d(n, (j1,))
             - d(n - 1, (j1, j3)) * d(n, (j2,))
             + d(n - 1, (j1, j2)) * d(n, (j3,)))
    return total.is_zero()


def all_minor_identities(n: int) -> bool:
    return all(check_minor_identity(n, *trip) for trip in combinations(range(1, n + 2), 3))


# plans reaching an arbitrary top-aligned minor

def _check_cols(n: int, J) -> tuple:
    J = tuple(sorted(set(int(j) for j in J)))
    if not J or J[0] < 1 or J[-1] > n or len(J) > n:
        raise InvalidIndexSet(J)
    return J


def minor_plan(n: int, J) -> tuple[MutationPlan, tuple]:
    """A mutation plan from the initial G^{e,w0} seed producing Δ^{1..i}_J, and its vertex.

    Let r be the least index for which j_{r+1}, ..., j_i are consecutive.
    For s = 1..r sweep the triangle with top vertex v_{1; j_s - s + 2} and
    j_i - 1 - j_s rows; the minor then sits at v_{i-r; j_i-r}.
    """
    J = _check_cols(n, J)
    i = len(J)
    r = 0
    while any(J[t + 1] != J[t] + 1 for t in range(r, i - 1)):
        r += 1
    steps = []
    for s in range(1, r + 1):
        steps.extend(sweep_plan(J[s - 1] - s + 2, J[-1] - 1 - J[s - 1]))
    return MutationPlan(tuple(steps)), (i - r, J[-1] - r)


def minor_plan_check(n: int, J, points: int = 20, seed: int = 0) -> tuple[bool, bool]:
    """(value certified on random SL_n points, every variable along the plan Laurent)."""
    J = _check_cols(n, J)
    plan, vertex = minor_plan(n, J)
    q = build_Gew0_quiver(n, include_nn=(vertex == (n, n)))
    seeds = run_plan(initial_seed(q), plan)
    laurent = all(monomial_denominator(s.vars[v]) is not None
                  for s, v in zip(seeds[1:], plan.steps))
    pts = sample_points(n, q.labels, points, random.Random(seed), "GmodU")
    ok = certify(seeds[-1].vars[vertex], minor(range(1, len(J) + 1), J), pts)
    return ok, laurent

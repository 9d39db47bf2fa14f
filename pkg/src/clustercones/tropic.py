"""X-side mutation, theta functions for frozen indices, potentials and tropicalization.

A Laurent polynomial on the X-torus of a seed uses the variable X[i;j] for
z^{e_{i;j}}.  Pulling back along the mutation at k writes a monomial of the
mutated seed in the old basis (e'_i = e_i + [eps_ik]_+ e_k, e'_k = -e_k) and
multiplies by (1 + z^{e_k})^{-{n, e_k}}.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import gcd

from .exactalg import Kind, LaurentPoly, VarId, X
from .quiver import (MutationPlan, Quiver, apply_plan, build_Gew0_quiver, build_U_quiver,
                     is_sink, mutate_quiver, reflection_plan)


class NonLaurentPullback(ValueError):
    pass


class NoOptimizedSeedFound(RuntimeError):
    pass


def xvar(v) -> VarId:
    return X(*v)


def _exponents(key) -> dict:
    return {v.index: e for v, e in key}


def x_mutate(poly: LaurentPoly, k, q: Quiver) -> LaurentPoly:
    """Express a function given in the coordinates of mu_k(q) in the coordinates of q."""
    if q.is_frozen(k):
        raise ValueError(f"cannot mutate at frozen vertex {k}")
    ek = LaurentPoly.var(xvar(k))
    total = LaurentPoly()
    for key, coeff in poly.items():
        c = _exponents(key)
        for v in c:
            if v not in q:
                raise KeyError(v)
        n = {}
        for i, ci in c.items():
            if i == k:
                n[k] = n.get(k, 0) - ci
            else:
                n[i] = n.get(i, 0) + ci
                lift = max(q.e(i, k), 0)
                if lift:
                    n[k] = n.get(k, 0) + ci * lift
        pairing = sum(ni * q.e(i, k) for i, ni in n.items())
        if pairing > 0:
            raise NonLaurentPullback(f"monomial {c} pairs to {pairing} with e_{k}")
        term = LaurentPoly.monomial({xvar(i): e for i, e in n.items() if e}, coeff)
        total = total + term * (1 + ek) ** (-pairing)
    return total


def path_quiver(L: int) -> Quiver:
    """v_0 -> v_1 -> ... -> v_L with v_0 frozen; labels (0, l)."""
    labels = [(0, l) for l in range(L + 1)]
    return Quiver.from_arrows(labels, [(0, 0)], [((0, l), (0, l + 1)) for l in range(L)])


def path_theta_closed_form(L: int) -> LaurentPoly:
    total = LaurentPoly()
    for l in range(L + 1):
        total = total + LaurentPoly.monomial({xvar((0, r)): -1 for r in range(l + 1)})
    return total


def _out_paths(q: Quiver, f, max_len: int):
    """Simple directed paths f -> v_1 -> ... through unfrozen vertices, shortest first."""
    queue = deque([(f,)])
    while queue:
        path = queue.popleft()
        if len(path) > 1:
            yield path[1:]
        if len(path) > max_len:
            continue
        for v in q.out_neighbors(path[-1]):
            if not q.is_frozen(v) and v not in path:
                queue.append(path + (v,))


def optimized_plan(q: Quiver, f, max_depth: int = 12) -> MutationPlan:
    """A plan after which f is a sink: first try mutating along out-paths from f,
    then fall back to breadth-first search over mutation sequences."""
    if f not in q:
        raise KeyError(f)
    if not q.is_frozen(f):
        raise ValueError(f"{f} is not frozen")
    if is_sink(q, f):
        return MutationPlan(())
    for path in _out_paths(q, f, len(q.labels)):
        if is_sink(apply_plan(q, path), f):
            return MutationPlan(tuple(path))
    seen = {q.eps}
    queue = deque([(q, ())])
    while queue:
        cur, plan = queue.popleft()
        if len(plan) >= max_depth:
            continue
        for v in cur.unfrozen():
            if plan and plan[-1] == v:
                continue
            nxt = mutate_quiver(cur, v)
            if nxt.eps in seen:
                continue
            seen.add(nxt.eps)
            if is_sink(nxt, f):
                return MutationPlan(plan + (v,))
            queue.append((nxt, plan + (v,)))
    raise NoOptimizedSeedFound(f)


@dataclass(frozen=True)
class ThetaFunction:
    poly: LaurentPoly
    frozen_index: tuple
    seed_tag: str

    def coefficients_all_one(self) -> bool:
        return all(c == 1 for _, c in self.poly.items())

    def pure_term_once(self) -> bool:
        key = ((xvar(self.frozen_index), -1),)
        return self.poly._t.get(key, 0) == 1


def theta_at_seed(f, q: Quiver, plan=None, seed_tag: str = "") -> ThetaFunction:
    """Pull z^{-e_f} back from the seed reached by plan to the seed of q."""
    plan = optimized_plan(q, f) if plan is None else plan
    steps = plan.steps if isinstance(plan, MutationPlan) else tuple(plan)
    quivers = [q]
    for v in steps:
        quivers.append(mutate_quiver(quivers[-1], v))
    if not is_sink(quivers[-1], f):
        raise NoOptimizedSeedFound(f"plan does not make {f} a sink")
    poly = LaurentPoly.var(xvar(f), -1)
    for t in range(len(steps), 0, -1):
        poly = x_mutate(poly, steps[t - 1], quivers[t - 1])
    th = ThetaFunction(poly, f, seed_tag)
    if any(c <= 0 for _, c in poly.items()):
        raise AssertionError(f"theta function for {f} has a non-positive coefficient")
    return th


@dataclass(frozen=True)
class Potential:
    summands: tuple  # of ThetaFunction
    order: tuple  # coordinate order (sorted vertex labels)
    seed_tag: str

    @property
    def poly(self) -> LaurentPoly:
        total = LaurentPoly()
        for th in self.summands:
            total = total + th.poly
        return total

    def term_count(self) -> int:
        return sum(len(th.poly) for th in self.summands)


def space_quiver(n: int, space: str, include_nn: bool = False) -> tuple[Quiver, str]:
    """The seed used for each space: s for U, s0 for G/U."""
    if space == "U":
        return apply_plan(build_U_quiver(n), reflection_plan(n)), "s"
    if space == "GmodU":
        return build_Gew0_quiver(n, include_nn=include_nn), "s0"
    raise ValueError(f"unknown space {space!r}")


def potential(q: Quiver, tag: str) -> Potential:
    summands = tuple(theta_at_seed(f, q, seed_tag=tag) for f in sorted(q.frozen))
    return Potential(summands, tuple(sorted(q.labels)), tag)


def potential_U(n: int) -> Potential:
    if n < 2:
        raise ValueError("n must be at least 2")
    return potential(*space_quiver(n, "U"))


def potential_GmodU(n: int, include_nn: bool = False) -> Potential:
    if n < 2:
        raise ValueError("n must be at least 2")
    return potential(*space_quiver(n, "GmodU", include_nn))


def _chain_sum(chain) -> LaurentPoly:
    """z^{-c_0} + z^{-c_0-c_1} + ... for a chain of vertices."""
    total = LaurentPoly()
    for l in range(len(chain)):
        exps = {}
        for v in chain[:l + 1]:
            exps[xvar(v)] = exps.get(xvar(v), 0) - 1
        total = total + LaurentPoly.monomial(exps)
    return total


def theta_U_closed_form(n: int, i: int) -> LaurentPoly:
    """theta_{i;n} = sum_{j<i} z^{-(e_{i;n} + e_{i-1;n-1} + ... + e_{i-j;n-j})} at s."""
    return _chain_sum([(i - k, n - k) for k in range(i)])


def theta_GmodU_closed_form(n: int, f) -> LaurentPoly:
    """At s0: theta_{i;n} runs along row i leftwards, theta_{i;i} up column i."""
    i, j = f
    if (i, j) == (n, n):
        return LaurentPoly.var(xvar((n, n)), -1)
    if j == n:
        return _chain_sum([(i, n - k) for k in range(n - i)])
    if i == j:
        return _chain_sum([(i - k, i) for k in range(i)])
    raise ValueError(f"{f} is not frozen")


def potential_closed_form(n: int, space: str, include_nn: bool = False) -> LaurentPoly:
    total = LaurentPoly()
    if space == "U":
        for i in range(1, n):
            total = total + theta_U_closed_form(n, i)
    else:
        for i in range(1, n):
            total = total + theta_GmodU_closed_form(n, (i, n)) + theta_GmodU_closed_form(n, (i, i))
        if include_nn:
            total = total + theta_GmodU_closed_form(n, (n, n))
    return total


@dataclass(frozen=True)
class IneqSystem:
    order: tuple
    rows: tuple  # of integer tuples, contract <row, x> >= 0

    def __post_init__(self):
        for r in self.rows:
            if len(r) != len(self.order):
                raise ValueError("row length does not match the coordinate order")

    @classmethod
    def normalized(cls, order, rows) -> "IneqSystem":
        out = []
        seen = set()
        for r in rows:
            r = tuple(int(x) for x in r)
            g = 0
            for x in r:
                g = gcd(g, abs(x))
            if g == 0:
                continue
            r = tuple(x // g for x in r)
            if r not in seen:
                seen.add(r)
                out.append(r)
        return cls(tuple(order), tuple(out))

    def satisfied_by(self, x) -> bool:
        return all(sum(a * b for a, b in zip(r, x)) >= 0 for r in self.rows)

    def to_json(self) -> dict:
        return {"order": [list(v) for v in self.order], "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, data) -> "IneqSystem":
        return cls(tuple(tuple(v) for v in data["order"]), tuple(tuple(r) for r in data["rows"]))


def tropicalize(p: Potential) -> IneqSystem:
    """One row -n_i per monomial z^{n_i}, so that W^T >= 0 reads <row, x> >= 0."""
    pos = {v: t for t, v in enumerate(p.order)}
    rows = []
    for th in p.summands:
        # shortest terms first, so the pure term z^{-e_f} leads each block
        for term in reversed(th.poly.terms()):
            row = [0] * len(p.order)
            for v, e in term.exponents:
                row[pos[v.index]] -= e
            rows.append(row)
    return IneqSystem.normalized(p.order, rows)

"""Principal coefficients, g-vectors, Gelfand-Tsetlin patterns and the map psi.

Coordinates are indexed by vertex labels (i, j) and always listed in
lexicographic order.  A g-vector is read off from the central fiber: every
term of the Laurent expansion carrying an X factor is discarded, and the one
surviving monomial's A-exponents give the vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .cluster import (InvalidIndexSet, OutOfRange, Seed, initial_seed, minor_plan, mutate_seed)
from .exactalg import A, Kind, LaurentPoly, RationalFn, X, monomial_denominator
from .linalg import det as fdet, inverse, matvec
from .quiver import Quiver, MutationPlan, build_Gew0_quiver, build_U_quiver, reflection_plan


class CentralFiberAmbiguous(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class ArrowOrientationViolation(AssertionError):
    pass


@dataclass(frozen=True)
class GVector:
    items: tuple  # sorted ((i, j), coeff) pairs with nonzero coefficients

    @classmethod
    def of(cls, coeffs: Mapping) -> "GVector":
        return cls(tuple(sorted((tuple(k), int(c)) for k, c in coeffs.items() if c)))

    @classmethod
    def e(cls, i: int, j: int) -> "GVector":
        return cls((((i, j), 1),))

    @property
    def coeffs(self) -> dict:
        return dict(self.items)

    def __add__(self, other: "GVector") -> "GVector":
        d = self.coeffs
        for k, c in other.items:
            d[k] = d.get(k, 0) + c
        return GVector.of(d)

    def __neg__(self):
        return GVector(tuple((k, -c) for k, c in self.items))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> "GVector":
        return GVector.of({k: c * v for k, v in self.items})

    def support(self) -> set:
        return {k for k, _ in self.items}

    def vector(self, order) -> list[int]:
        d = self.coeffs
        extra = set(d) - set(order)
        if extra:
            raise DimensionMismatch(f"support {sorted(extra)} outside coordinate order")
        return [d.get(k, 0) for k in order]

    def __str__(self):
        if not self.items:
            return "0"
        parts = []
        for (i, j), c in self.items:
            s = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else f"{abs(c)}"
            parts.append(f"{s}{mag}e*[{i};{j}]")
        out = " ".join(parts)
        return out[1:] if out.startswith("+") else out

    def to_json(self):
        return [{"i": i, "j": j, "coeff": c} for (i, j), c in self.items]


ZERO = GVector(())


def coord_order(labels) -> list[tuple]:
    return sorted(labels)


def all_coords(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]


# principal coefficients

def w_label(v) -> tuple:
    return (v[0], v[1], "w")


@dataclass(frozen=True)
class PrincipalSeed:
    base: Seed
    seed: Seed  # the extended seed, including one frozen w-vertex per unfrozen vertex
    xvars: Mapping = field(hash=False)

    def mutate(self, k) -> "PrincipalSeed":
        return PrincipalSeed(self.base, mutate_seed(self.seed, k), self.xvars)

    @property
    def quiver(self) -> Quiver:
        return self.seed.quiver

    def w_arrows(self, v) -> dict:
        """Signed arrow counts from v to each w-vertex (positive means v -> w)."""
        q = self.quiver
        out = {}
        for u in q.labels:
            if len(u) == 3:
                e = q.e(v, u)
                if e:
                    out[u] = e
        return out

    def project(self) -> Seed:
        """Specialize every X to 1 and drop the w-vertices."""
        ones = {xv: LaurentPoly.const(1) for xv in self.xvars.values()}
        keep = [v for v in self.quiver.labels if len(v) == 2]
        vars_ = {}
        for v in keep:
            f = self.seed.vars[v]
            vars_[v] = RationalFn(f.num.substitute(ones), f.den.substitute(ones))
        return Seed(self.quiver.restrict(keep), vars_)


def with_principal_coefficients(s: Seed) -> PrincipalSeed:
    q = s.quiver
    unfrozen = q.unfrozen()
    labels = list(q.labels) + [w_label(v) for v in unfrozen]
    frozen = list(q.frozen) + [w_label(v) for v in unfrozen]
    arrows = [(a, b, m) for a, b, m in q.arrows()] + [(v, w_label(v), 1) for v in unfrozen]
    ext = Quiver.from_arrows(labels, frozen, arrows, q.n)
    xvars = {w_label(v): X(*v) for v in unfrozen}
    vars_ = dict(s.vars)
    for w, xv in xvars.items():
        vars_[w] = RationalFn.var(xv)
    return PrincipalSeed(s, Seed(ext, vars_), xvars)


def gvector_of(f: RationalFn) -> GVector:
    lp = monomial_denominator(f)
    if lp is None:
        raise CentralFiberAmbiguous("variable is not a Laurent polynomial")
    survivors = lp.drop_if(lambda v: v.kind == Kind.X)
    if len(survivors) != 1:
        raise CentralFiberAmbiguous(f"{len(survivors)} terms survive on the central fiber")
    (key, coeff), = survivors.items()
    if coeff != 1:
        raise CentralFiberAmbiguous(f"surviving coefficient {coeff}")
    coeffs = {}
    for v, e in key:
        if v.kind != Kind.A:
            raise CentralFiberAmbiguous(f"unexpected variable {v}")
        coeffs[v.index] = e
    return GVector.of(coeffs)


# g-vectors at the final seed s of the reflection plan

def final_quiver(n: int, space: str) -> Quiver:
    from .quiver import apply_plan
    q = build_Gew0_quiver(n) if space == "GmodU" else build_U_quiver(n)
    return apply_plan(q, reflection_plan(n))


@dataclass
class InverseStep:
    vertex: tuple
    k: int  # the variable now at vertex is the one after k forward mutations there
    gvector: GVector
    w_arrows: dict


def run_inverse_reflection(n: int, space: str = "U") -> tuple[dict, list[InverseStep]]:
    """Principal coefficients at s, then the inverse plan.

    Returns the g-vector of every A_{i;j} after k forward mutations, keyed by
    (i, j, k), together with per-step records.
    """
    plan = reflection_plan(n)
    q = final_quiver(n, space)
    ps = with_principal_coefficients(initial_seed(q))
    counts: dict = {}
    for v in plan.steps:
        counts[v] = counts.get(v, 0) + 1
    out = {}
    for v in q.labels:
        out[(v[0], v[1], counts.get(v, 0))] = GVector.e(*v)
    steps = []
    remaining = dict(counts)
    for v in reversed(plan.steps):
        ps = ps.mutate(v)
        remaining[v] -= 1
        k = remaining[v]
        g = gvector_of(ps.seed.vars[v])
        out[(v[0], v[1], k)] = g
        steps.append(InverseStep(v, k, g, ps.w_arrows(v)))
    return out, steps


def vwarrows_expected(i: int, j: int, k: int) -> dict:
    """Arrows w_{i+k-r; j+k-r} -> v_{i;j}, r = 1..i, after the k-th mutation at v_{i;j} along the inverse plan."""
    return {w_label((i + k - r, j + k - r)): -1 for r in range(1, i + 1)}


def vwarrows_check(n: int, space: str = "GmodU") -> bool:
    _, steps = run_inverse_reflection(n, space)
    seen: dict = {}
    for st in steps:
        seen[st.vertex] = seen.get(st.vertex, 0) + 1
        if st.w_arrows != vwarrows_expected(*st.vertex, seen[st.vertex]):
            return False
    return True


def _e_if_vertex(i, j, vertices, drop_diag):
    if (i, j) not in vertices or (drop_diag and i == j):
        return ZERO
    return GVector.e(i, j)


def closed_form(n: int, i: int, j: int, k: int, space: str = "U") -> GVector:
    """e*_{n+i-j-k; n-k} - e*_{n-j-k; n-k-i} + e*_{i+k; i+k}, non-vertices read as 0.

    On U every diagonal term e*_{r;r} is also read as 0.
    """
    if not 1 <= i < j <= n or not 0 <= k <= n - j:
        raise OutOfRange((i, j, k))
    q = build_Gew0_quiver(n) if space == "GmodU" else build_U_quiver(n)
    verts = set(q.labels)
    drop = space == "U"
    return (_e_if_vertex(n + i - j - k, n - k, verts, drop)
            - _e_if_vertex(n - j - k, n - k - i, verts, drop)
            + _e_if_vertex(i + k, i + k, verts, drop))


def closed_form_U(n: int, i: int, j: int, k: int) -> GVector:
    return closed_form(n, i, j, k, "U")


def matrix_entry_gvector(n: int, i: int, j: int) -> GVector:
    """g-vector at s of the entry Δ^{n+1-j}_{n+1-i}: e*_{i;j}, minus e*_{i-1;j-1} when i > 1."""
    if not 1 <= i < j <= n:
        raise OutOfRange((i, j))
    g = GVector.e(i, j)
    if i > 1:
        g = g - GVector.e(i - 1, j - 1)
    return g


def matrix_entry_gvector_computed(n: int, i: int, j: int, table=None) -> GVector:
    """The same entry located along the reflection plan (Δ^a_b sits at v_{1;b-a+1} after a-1 mutations)."""
    from .cluster import matrix_entry_vertex
    table = table if table is not None else run_inverse_reflection(n, "U")[0]
    a, b = n + 1 - j, n + 1 - i
    (r, c), k = matrix_entry_vertex(a, b)
    return table[(r, c, k)]


# g-vectors at s0 of arbitrary top-aligned minors

def _check_J(n: int, J) -> tuple:
    J = tuple(sorted(set(int(x) for x in J)))
    if not J or J[0] < 1 or J[-1] > n:
        raise InvalidIndexSet(J)
    return J


def gvector_minor(n: int, J) -> GVector:
    """g-vector at s0 of Δ^{1..i}_J, by shifting columns and substituting base cases."""
    J = _check_J(n, J)
    return _gvector_minor(J)


def _gvector_minor(J: tuple) -> GVector:
    i = len(J)
    if J == tuple(range(J[-1] - i + 1, J[-1] + 1)):
        return GVector.e(i, J[-1])
    if J[0] > 1:
        g = _gvector_minor(tuple(x - 1 for x in J))
        return GVector.of({(k, l + 1): c for (k, l), c in g.items})
    g = _gvector_minor(tuple(x - 1 for x in J[1:]))
    out = ZERO
    for (k, l), c in g.items:
        base = GVector.e(k + 1, k + 1) if l == k else (
            GVector.e(k, l + 1) - GVector.e(k, k + 1) + GVector.e(k + 1, k + 1))
        out = out + base.scale(c)
    return out


@dataclass
class MinorRun:
    J: tuple
    vertex: tuple
    gvector: GVector
    orientation_ok: bool  # every arrow between the mutating vertex and W was outgoing


def gvector_minor_computed(n: int, J) -> MinorRun:
    """Principal coefficients at s0, run the minor plan, read off the g-vector."""
    J = _check_J(n, J)
    plan, vertex = minor_plan(n, J)
    q = build_Gew0_quiver(n, include_nn=(vertex == (n, n)))
    ps = with_principal_coefficients(initial_seed(q))
    orientation_ok = True
    for v in plan.steps:
        if any(e < 0 for e in ps.w_arrows(v).values()):
            orientation_ok = False
        ps = ps.mutate(v)
    return MinorRun(J, vertex, gvector_of(ps.seed.vars[vertex]), orientation_ok)


def row_sums(g: GVector, n: int) -> list[int]:
    sums = [0] * n
    for (k, _), c in g.items:
        sums[k - 1] += c
    return sums


# Gelfand-Tsetlin patterns and psi

@dataclass(frozen=True)
class GTPattern:
    n: int
    entries: tuple  # values listed in all_coords(n) order

    def __getitem__(self, kl):
        return dict(zip(all_coords(self.n), self.entries))[tuple(kl)]

    def as_dict(self) -> dict:
        return dict(zip(all_coords(self.n), self.entries))

    def interlacing_ok(self) -> bool:
        d = self.as_dict()
        for (k, l), v in d.items():
            if l > k and v < d[(k, l - 1)]:
                return False
            if l < self.n and v < d[(k + 1, l + 1)]:
                return False
        return True


def gt_pattern(n: int, J) -> GTPattern:
    """entry(k;l) = 1 exactly when k <= i and j_{i+1-k} >= n+1-l."""
    J = _check_J(n, J)
    i = len(J)
    vals = []
    for k, l in all_coords(n):
        vals.append(1 if k <= i and J[i - k] >= n + 1 - l else 0)
    return GTPattern(n, tuple(vals))


def psi(n: int, y) -> list:
    """x = psi(y) with both vectors indexed by all_coords(n)."""
    coords = all_coords(n)
    if isinstance(y, Mapping):
        yd = {tuple(k): v for k, v in y.items()}
    else:
        if len(y) != len(coords):
            raise DimensionMismatch((len(y), len(coords)))
        yd = dict(zip(coords, y))

    def Y(a, b):
        return yd.get((a, b), 0) if a <= b else 0

    x = {}
    for i, j in coords:
        if i == j == n:
            x[(i, j)] = Y(n, n)
        elif i == j:
            x[(i, j)] = Y(i, n) - Y(i, n - 1)
        elif j == n:
            x[(i, j)] = Y(i, i) - Y(i + 1, i + 1)
        else:
            c = n - j + i
            x[(i, j)] = Y(i, c) - Y(i + 1, c + 1) + Y(i + 1, c) - Y(i, c - 1)
    return [x[c] for c in coords]


def psi_matrix(n: int) -> list[list[int]]:
    coords = all_coords(n)
    cols = []
    for idx in range(len(coords)):
        e = [0] * len(coords)
        e[idx] = 1
        cols.append(psi(n, e))
    return [[cols[c][r] for c in range(len(coords))] for r in range(len(coords))]


def psi_det(n: int) -> int:
    return int(fdet(psi_matrix(n)))


def psi_inverse(n: int, x) -> list:
    coords = all_coords(n)
    if len(x) != len(coords):
        raise DimensionMismatch((len(x), len(coords)))
    y = matvec(inverse(psi_matrix(n)), x)
    if any(v.denominator != 1 for v in y):
        raise AssertionError("psi inverse left the lattice")
    return [int(v) for v in y]


def psi_check(n: int, J) -> bool:
    g = gvector_minor(n, J)
    return psi(n, list(gt_pattern(n, J).entries)) == g.vector(all_coords(n))


def all_minor_sets(n: int, include_full: bool = True) -> list[tuple]:
    from itertools import combinations
    out = []
    for i in range(1, n + 1):
        if i == n and not include_full:
            continue
        out.extend(combinations(range(1, n + 1), i))
    return out

"""Polyhedral cones: the Gelfand-Tsetlin cone, extreme rays, weight slices and lattice points.

A cone is {x : <row, x> >= 0 for every row}.  Rays come from an incremental
double description run in exact rational arithmetic.  Lattice points of a
bounded slice are enumerated coordinate by coordinate, with the interval for
each coordinate read off a Fourier-Motzkin projection onto the prefix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, gcd, prod

from .gvec import all_coords, matrix_entry_gvector, psi_matrix
from .linalg import inverse, matvec, primitive, rank
from .tropic import IneqSystem, potential_GmodU, potential_U, space_quiver, tropicalize

MAX_RAY_DIM = 21


class DimensionTooLarge(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class NotPointed(ValueError):
    pass


class UnboundedSlice(ValueError):
    pass


class InfeasibleSlice(ValueError):
    pass


@dataclass(frozen=True)
class Cone:
    ineq: IneqSystem
    name: str = ""

    @property
    def order(self) -> tuple:
        return self.ineq.order

    @property
    def dim(self) -> int:
        return len(self.ineq.order)

    @property
    def rows(self) -> tuple:
        return self.ineq.rows

    def contains(self, x) -> bool:
        return self.ineq.satisfied_by(x)

    def to_json(self) -> dict:
        return {"name": self.name, **self.ineq.to_json()}


@dataclass(frozen=True)
class RaySet:
    rays: tuple  # sorted primitive integer tuples

    @classmethod
    def of(cls, vectors) -> "RaySet":
        return cls(tuple(sorted({primitive(v) for v in vectors if any(v)})))

    def __len__(self):
        return len(self.rays)

    def to_json(self):
        return [list(r) for r in self.rays]


@dataclass(frozen=True)
class Weight:
    lam: tuple  # (lambda_1, ..., lambda_{n-1}); lambda_n = 0

    def __post_init__(self):
        if any(int(a) != a or a < 0 for a in self.lam):
            raise ValueError(f"weight entries must be nonnegative integers: {self.lam}")
        if any(a < b for a, b in zip(self.lam, self.lam[1:])):
            raise ValueError(f"weight is not dominant: {self.lam}")

    @classmethod
    def parse(cls, text: str) -> "Weight":
        return cls(tuple(int(a) for a in text.split(",") if a.strip()))

    def differences(self) -> list[int]:
        full = list(self.lam) + [0]
        return [full[i] - full[i + 1] for i in range(len(self.lam))]


@dataclass(frozen=True)
class WeightSlice:
    cone: Cone
    equalities: tuple  # ((row, c), ...) meaning <row, x> = c
    weight: Weight = field(default=None)

    def contains(self, x) -> bool:
        return self.cone.contains(x) and all(
            sum(a * b for a, b in zip(r, x)) == c for r, c in self.equalities)


# cones in scope

def gt_cone(n: int) -> Cone:
    """y_{i;j} >= y_{i;j-1}, y_{i;j} >= y_{i+1;j+1}, y_{n;n} >= 0 in the all_coords order."""
    if n < 1:
        raise ValueError("n must be at least 1")
    order = all_coords(n)
    pos = {c: t for t, c in enumerate(order)}
    rows = []

    def diff(a, b):
        r = [0] * len(order)
        r[pos[a]] += 1
        if b is not None:
            r[pos[b]] -= 1
        return r

    for i, j in order:
        if i <= j - 1:
            rows.append(diff((i, j), (i, j - 1)))
    for i, j in order:
        if j <= n - 1:
            rows.append(diff((i, j), (i + 1, j + 1)))
    rows.append(diff((n, n), None))
    return Cone(IneqSystem(tuple(order), tuple(tuple(r) for r in rows)), f"K_{n}")


def xi_cone(n: int, space: str = "GmodU", include_nn: bool = False) -> Cone:
    """The tropical cone {W^T >= 0}: Xi for U, Xi for G/U, or Xi-tilde with include_nn."""
    p = potential_U(n) if space == "U" else potential_GmodU(n, include_nn)
    name = "Xi_U" if space == "U" else ("Xi~" if include_nn else "Xi")
    return Cone(tropicalize(p), f"{name}_{n}")


def transform_cone(c: Cone, M, name: str = "") -> Cone:
    """The image M(c) of a cone under an invertible integer matrix: rows a become a M^{-1}."""
    Minv = inverse(M)
    rows = []
    for r in c.rows:
        rows.append(primitive([sum(r[k] * Minv[k][j] for k in range(len(r))) for j in range(len(r))]))
    return Cone(IneqSystem.normalized(c.order, rows), name or f"image of {c.name}")


def embed(c: Cone, order, fix_zero: bool = True) -> Cone:
    """Pad a cone to a larger coordinate order; new coordinates are pinned to 0 when fix_zero."""
    order = tuple(tuple(v) for v in order)
    missing = [v for v in order if v not in c.order]
    if any(v not in order for v in c.order):
        raise DimensionMismatch("target order does not contain the cone's coordinates")
    pos = {v: t for t, v in enumerate(order)}
    rows = []
    for r in c.rows:
        row = [0] * len(order)
        for v, a in zip(c.order, r):
            row[pos[v]] = a
        rows.append(row)
    if fix_zero:
        for v in missing:
            for s in (1, -1):
                row = [0] * len(order)
                row[pos[v]] = s
                rows.append(row)
    return Cone(IneqSystem.normalized(order, rows), c.name)


# double description

def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def rays(c: Cone) -> RaySet:
    """Extreme rays of a pointed cone by incremental double description."""
    d = c.dim
    if d > MAX_RAY_DIM:
        raise DimensionTooLarge(d)
    A = [list(r) for r in c.rows]
    if rank(A) < d:
        raise NotPointed(f"{c.name or 'cone'} has a nontrivial lineality space")
    # start from d independent rows: a simplicial cone whose rays are the columns of the inverse
    basis, rest = [], []
    for r in A:
        if rank(basis + [r]) > len(basis):
            basis.append(r)
        else:
            rest.append(r)
    inv = inverse(basis)
    current = [primitive([inv[k][j] for k in range(d)]) for j in range(d)]
    processed = list(basis)
    for a in rest:
        vals = [_dot(a, r) for r in current]
        pos = [r for r, v in zip(current, vals) if v > 0]
        zero = [r for r, v in zip(current, vals) if v == 0]
        neg = [(r, v) for r, v in zip(current, vals) if v < 0]
        new = []
        if neg:
            tight = {r: frozenset(t for t, row in enumerate(processed) if _dot(row, r) == 0)
                     for r in pos + [r for r, _ in neg]}
            for p in pos:
                vp = _dot(a, p)
                for q, vq in neg:
                    common = tight[p] & tight[q]
                    if len(common) < d - 2:
                        continue
                    if rank([processed[t] for t in common]) != d - 2:
                        continue
                    new.append(primitive([vp * y - vq * x for x, y in zip(p, q)]))
        processed.append(a)
        current = sorted(set(pos + zero + new))
    return RaySet.of(current)


def cone_equal(a: Cone, b: Cone, basis_change=None) -> bool:
    """Ray-set equality after mapping a's rays through basis_change (a square matrix)."""
    if a.dim != b.dim:
        raise DimensionMismatch((a.dim, b.dim))
    ra = rays(a).rays
    if basis_change is not None:
        ra = [matvec(basis_change, r) for r in ra]
    return RaySet.of(ra) == rays(b)


def inequality_matching(a: Cone, b: Cone, basis_change) -> bool:
    """Each row of a, pulled through basis_change^{-1}, is a row of b, and the counts agree."""
    image = transform_cone(a, basis_change)
    return len(a.rows) == len(b.rows) and set(image.rows) == set(b.rows)


@dataclass
class SimplicialReport:
    dim: int
    ray_count: int
    rays_match: bool
    pairing_is_permutation: bool
    lattice_basis: bool
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"dim": self.dim, "ray_count": self.ray_count, "rays_match": self.rays_match,
                "pairing_is_permutation": self.pairing_is_permutation,
                "lattice_basis": self.lattice_basis, "failures": self.failures, "ok": self.ok}


def _is_permutation(P) -> bool:
    if not P or len(P) != len(P[0]):
        return False
    for row in P:
        if sorted(row) != [0] * (len(row) - 1) + [1]:
            return False
    return all(sum(P[i][j] for i in range(len(P))) == 1 for j in range(len(P[0])))


def simplicial_check(c: Cone, expected: RaySet) -> SimplicialReport:
    failures = []
    try:
        got = rays(c)
    except NotPointed as exc:
        return SimplicialReport(c.dim, 0, False, False, False, [str(exc)])
    if len(got) != c.dim:
        failures.append(f"{len(got)} rays in dimension {c.dim}")
    match = got == expected
    if not match:
        failures.append("rays differ from the expected set")
    P = [[_dot(row, r) for r in expected.rays] for row in c.rows]
    perm = _is_permutation(P)
    if not perm:
        failures.append("pairing matrix is not a permutation matrix")
    from .linalg import det
    basis = len(expected) == c.dim and abs(det([list(r) for r in expected.rays])) == 1
    if not basis:
        failures.append("expected rays are not a lattice basis")
    return SimplicialReport(c.dim, len(got), match, perm, basis, failures)


def xi_U_expected_rays(n: int) -> RaySet:
    order = space_quiver(n, "U")[0].labels
    order = sorted(order)
    return RaySet.of(matrix_entry_gvector(n, i, j).vector(order)
                     for i in range(1, n) for j in range(i + 1, n + 1))


def psi_image_of_gt(n: int) -> Cone:
    return transform_cone(gt_cone(n), psi_matrix(n), f"psi(K_{n})")


# weight slices and lattice points

def weight_slice(n: int, lam, c: Cone | None = None) -> WeightSlice:
    """Sum_j x_{i;j} = lambda_i - lambda_{i+1} for i = 1..n-1 inside the cone (Xi by default)."""
    w = lam if isinstance(lam, Weight) else Weight(tuple(lam))
    if len(w.lam) != n - 1:
        raise ValueError(f"weight for SL_{n} needs {n - 1} entries")
    c = c if c is not None else xi_cone(n, "GmodU")
    eqs = []
    for i, h in enumerate(w.differences(), start=1):
        row = tuple(1 if v[0] == i else 0 for v in c.order)
        eqs.append((row, h))
    s = WeightSlice(c, tuple(eqs), w)
    if _project(_affine_rows(s), c.dim, 0) is None:
        raise InfeasibleSlice(w.lam)
    return s


def _affine_rows(s: WeightSlice) -> list:
    """Rows (a, b) meaning <a, x> >= b."""
    rows = [(tuple(Fraction(v) for v in r), Fraction(0)) for r in s.cone.rows]
    for r, c in s.equalities:
        rows.append((tuple(Fraction(v) for v in r), Fraction(c)))
        rows.append((tuple(-Fraction(v) for v in r), Fraction(-c)))
    return rows


def _normalize(a, b):
    den = 1
    for x in list(a) + [b]:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in a] + [int(b * den)]
    g = 0
    for x in ints[:-1]:
        g = gcd(g, abs(x))
    if g == 0:
        return tuple(Fraction(0) for _ in a), Fraction(ints[-1])
    return tuple(Fraction(x // g) for x in ints[:-1]), Fraction(ints[-1], g)


def _eliminate(rows, k):
    """Fourier-Motzkin elimination of coordinate k, keeping the tightest copy of each row."""
    keep, pos, neg = [], [], []
    for a, b, hist in rows:
        (pos if a[k] > 0 else neg if a[k] < 0 else keep).append((a, b, hist))
    out = list(keep)
    for ap, bp, hp in pos:
        for an, bn, hn in neg:
            lp, ln = -an[k], ap[k]
            a = tuple(lp * x + ln * y for x, y in zip(ap, an))
            b = lp * bp + ln * bn
            out.append((a, b, hp | hn))
    best = {}
    for a, b, hist in out:
        a, b = _normalize(a, b)
        if not any(a):
            if b > 0:
                return None
            continue
        if a not in best or b > best[a][0] or (b == best[a][0] and len(hist) < len(best[a][1])):
            best[a] = (b, hist)
    return [(a, b, h) for a, (b, h) in best.items()]


def _project(rows, d: int, keep: int):
    """Projection onto the first keep coordinates (eliminating from the last), or None if empty."""
    cur = [(a, b, frozenset([t])) for t, (a, b) in enumerate(rows)]
    for k in range(d - 1, keep - 1, -1):
        cur = _eliminate(cur, k)
        if cur is None:
            return None
    if keep == 0 and any(b > 0 for _, b, _ in cur):
        return None
    return [(a, b) for a, b, _ in cur]


def _interval(rows, prefix, k):
    lo, hi = None, None
    for a, b in rows:
        rest = b - sum(a[t] * prefix[t] for t in range(k))
        if a[k] > 0:
            v = rest / a[k]
            lo = v if lo is None or v > lo else lo
        elif a[k] < 0:
            v = rest / a[k]
            hi = v if hi is None or v < hi else hi
        elif rest > 0:
            return 1, 0
    if lo is None or hi is None:
        raise UnboundedSlice(f"coordinate {k} is unbounded")
    return ceil(lo), floor(hi)


def lattice_points(s: WeightSlice) -> list[tuple[int, ...]]:
    """All integer points of a bounded slice, in lexicographic order."""
    rows = _affine_rows(s)
    d = s.cone.dim
    # projections[k] constrains the first k + 1 coordinates
    projections = [None] * d
    cur = [(a, b, frozenset([t])) for t, (a, b) in enumerate(rows)]
    for k in range(d - 1, -1, -1):
        projections[k] = [(a, b) for a, b, _ in cur]
        cur = _eliminate(cur, k)
        if cur is None:
            return []
    out = []
    prefix = []

    def walk(k):
        if k == d:
            out.append(tuple(int(v) for v in prefix))
            return
        lo, hi = _interval(projections[k], prefix, k)
        for v in range(lo, hi + 1):
            prefix.append(Fraction(v))
            walk(k + 1)
            prefix.pop()

    walk(0)
    for p in out:
        if not s.contains(p):
            raise AssertionError(f"enumerated point {p} is outside the slice")
    return out


def weyl_dim(n: int, lam) -> int:
    w = lam if isinstance(lam, Weight) else Weight(tuple(lam))
    full = list(w.lam) + [0] * (n - len(w.lam))
    l = [full[i] + n - 1 - i for i in range(n)]
    num = prod(l[i] - l[j] for i in range(n) for j in range(i + 1, n))
    den = prod(j - i for i in range(n) for j in range(i + 1, n))
    return num // den


def dominant_weights(n: int, top: int) -> list[tuple[int, ...]]:
    out = []

    def walk(prefix, bound):
        if len(prefix) == n - 1:
            out.append(tuple(prefix))
            return
        for a in range(bound + 1):
            walk(prefix + [a], a)

    walk([], top)
    return sorted(out)

"""Planar networks for the Lusztig parametrization of U.

A network has n horizontal lines (sources on the left, sinks on the right)
and one slant per letter of a reduced word.  A slant at level l lets a path
step from line l up to line l + 1.  The entry (a, b) of the path matrix is
the sum over paths from source a to sink b of the product of slant weights
used, which is the corresponding entry of E_{i_1}(t_1) ... E_{i_N}(t_N).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactalg import Kind, LaurentPoly, VarId, det, t, tau
from .words import DoubleWord, BLUE, build_arrangement


class SizeMismatch(ValueError):
    pass


class InvalidIndices(ValueError):
    pass


@dataclass(frozen=True)
class Slant:
    position: int
    level: int
    weight: VarId


@dataclass(frozen=True)
class PlanarNetwork:
    n: int
    slants: tuple

    def __post_init__(self):
        for s in self.slants:
            if not 1 <= s.level <= self.n - 1:
                raise ValueError(f"slant level {s.level} out of range")
            if s.weight.kind not in (Kind.T, Kind.TAU):
                raise ValueError("slant weights must be t or tau variables")
        if [s.position for s in self.slants] != sorted(s.position for s in self.slants):
            raise ValueError("slants must be ordered left to right")

    def relabel(self, mapping) -> "PlanarNetwork":
        return PlanarNetwork(self.n, tuple(Slant(s.position, s.level, mapping.get(s.weight, s.weight))
                                           for s in self.slants))

    def paths(self, a: int, b: int) -> list[tuple]:
        """All paths from source a to sink b, each a tuple of slant indices."""
        out = []

        def walk(idx, line, used):
            if line > b:
                return
            if idx == len(self.slants):
                if line == b:
                    out.append(tuple(used))
                return
            walk(idx + 1, line, used)
            if self.slants[idx].level == line:
                used.append(idx)
                walk(idx + 1, line + 1, used)
                used.pop()

        walk(0, a, [])
        return out

    def path_weight(self, a: int, b: int) -> LaurentPoly:
        total = LaurentPoly()
        for path in self.paths(a, b):
            term = LaurentPoly.const(1)
            for idx in path:
                term = term * LaurentPoly.var(self.slants[idx].weight)
            total = total + term
        return total

    def path_matrix(self) -> list[list[LaurentPoly]]:
        return [[self.path_weight(a, b) for b in range(1, self.n + 1)] for a in range(1, self.n + 1)]


def network_from_word(w: DoubleWord) -> PlanarNetwork:
    if any(c != BLUE for c, _ in w.letters):
        raise ValueError("only B-only words are supported for networks")
    build_arrangement(w)  # raises NotReduced
    return PlanarNetwork(w.n, tuple(Slant(p, l, t(p + 1)) for p, l in enumerate(w.levels())))


def minor_via_paths(net: PlanarNetwork, rows, cols) -> LaurentPoly:
    rows, cols = sorted(rows), sorted(cols)
    if len(rows) != len(cols):
        raise SizeMismatch((rows, cols))
    if not rows:
        return LaurentPoly.const(1)
    out = det([[net.path_weight(a, b) for b in cols] for a in rows])
    return out if isinstance(out, LaurentPoly) else LaurentPoly.const(out)


def tau_relabel(w: DoubleWord) -> dict[VarId, VarId]:
    """t_l becomes tau_{j;k} when letter l is the j-th occurrence of its level
    and k - 1 equals the image of that level under the longest element."""
    net = network_from_word(w)
    n = w.n
    seen: dict[int, int] = {}
    out = {}
    for s in net.slants:
        seen[s.level] = seen.get(s.level, 0) + 1
        j = seen[s.level]
        k = n - s.level + 1
        if not 1 <= j < k <= n:
            raise InvalidIndices((s.level, j))
        out[s.weight] = tau(j, k)
    if len(set(out.values())) != n * (n - 1) // 2:
        raise AssertionError("tau relabeling is not a bijection")
    return out


def whitney_factorization(n: int, i: int, j: int) -> LaurentPoly:
    """The monomial prod_{k=1}^{i} prod_{l=k+1}^{k+j-i} tau_{k;l}."""
    if not 1 <= i < j <= n:
        raise InvalidIndices((i, j))
    exps = {}
    for k in range(1, i + 1):
        for l in range(k + 1, k + j - i + 1):
            exps[tau(k, l)] = exps.get(tau(k, l), 0) + 1
    return LaurentPoly.monomial(exps)


def reflected_minor_sets(n: int, i: int, j: int) -> tuple[tuple, tuple]:
    """Rows w0(J) and columns w0(I) for the initial minor at v_{i;j}."""
    rows = tuple(range(n + 1 - j, n + 1 - j + i))
    cols = tuple(range(n + 1 - i, n + 1))
    return rows, cols


@lru_cache(maxsize=None)
def lex_tau_network(n: int) -> PlanarNetwork:
    from .words import lex_min_word
    w = lex_min_word(n)
    return network_from_word(w).relabel(tau_relabel(w))


def whitney_check(n: int, i: int, j: int) -> bool:
    rows, cols = reflected_minor_sets(n, i, j)
    return minor_via_paths(lex_tau_network(n), rows, cols) == whitney_factorization(n, i, j)


def solve_tau(n: int, values: dict[tuple[int, int], Fraction]) -> dict[VarId, Fraction]:
    """Invert the triangular monomial map a_{i;j} -> tau, given positive values a_{i;j}.

    In lexicographic order of (i, j) each a_{i;j} contains exactly one tau
    factor not seen earlier, so the factors are solved one at a time.
    """
    known: dict[VarId, Fraction] = {}
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            mono = whitney_factorization(n, i, j)
            (key, _), = mono.items()
            new = [v for v, e in key if v not in known]
            if len(new) != 1:
                raise AssertionError(f"a[{i};{j}] introduces {len(new)} new factors")
            rest = values[(i, j)]
            for v, e in key:
                if v in known:
                    rest = rest / known[v] ** e
            (v_new,) = new
            e_new = dict(key)[v_new]
            if e_new != 1:
                raise AssertionError("new factor should appear to the first power")
            known[v_new] = rest
    return known


def network_svg(net: PlanarNetwork, highlight=(), scale: int = 40) -> str:
    n, N = net.n, len(net.slants)
    width, height = scale * (N + 2), scale * (n + 1)

    def y(line):
        return height - scale * line

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">']
    for line in range(1, n + 1):
        parts.append(f'<line x1="{scale / 2}" y1="{y(line)}" x2="{width - scale / 2}" y2="{y(line)}" stroke="black"/>')
    for idx, s in enumerate(net.slants):
        x1, x2 = scale * (idx + 1), scale * (idx + 1.6)
        color = "orange" if idx in highlight else "black"
        parts.append(f'<line x1="{x1}" y1="{y(s.level)}" x2="{x2}" y2="{y(s.level + 1)}" stroke="{color}"/>')
        parts.append(f'<text x="{x1}" y="{(y(s.level) + y(s.level + 1)) / 2}" font-size="10">{s.weight}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"

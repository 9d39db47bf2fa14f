"""Quivers with frozen vertices, mutation, and the triangular families on SL_n.

Convention: ``eps[a][b] > 0`` means ``eps[a][b]`` arrows a -> b.  Arrows between
two frozen vertices are deleted whenever a quiver is built or mutated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

Label = Hashable


class FrozenVertex(ValueError):
    pass


class UnknownVertex(KeyError):
    pass


@dataclass(frozen=True)
class Quiver:
    labels: tuple
    frozen: frozenset
    eps: tuple  # tuple of row tuples
    n: int | None = None

    def __post_init__(self):
        size = len(self.labels)
        if len(set(self.labels)) != size:
            raise ValueError("duplicate vertex labels")
        if len(self.eps) != size or any(len(r) != size for r in self.eps):
            raise ValueError("eps has the wrong shape")
        for a in range(size):
            if self.eps[a][a]:
                raise ValueError("loops are not allowed")
            for b in range(a + 1, size):
                if self.eps[a][b] != -self.eps[b][a]:
                    raise ValueError("eps is not skew-symmetric")
        object.__setattr__(self, "_pos", {v: i for i, v in enumerate(self.labels)})

    # construction
    @classmethod
    def from_arrows(cls, labels: Iterable[Label], frozen: Iterable[Label],
                    arrows: Iterable[tuple], n: int | None = None) -> "Quiver":
        """Build from (source, target[, mult]) triples; opposite arrows cancel."""
        labels = tuple(labels)
        frozen = frozenset(frozen)
        pos = {v: i for i, v in enumerate(labels)}
        size = len(labels)
        eps = [[0] * size for _ in range(size)]
        for arrow in arrows:
            a, b = arrow[0], arrow[1]
            mult = arrow[2] if len(arrow) > 2 else 1
            if a not in pos or b not in pos:
                raise UnknownVertex(a if a not in pos else b)
            ia, ib = pos[a], pos[b]
            eps[ia][ib] += mult
            eps[ib][ia] -= mult
        return cls._from_matrix(labels, frozen, eps, n)

    @classmethod
    def _from_matrix(cls, labels, frozen, eps, n=None) -> "Quiver":
        size = len(labels)
        fr = [labels[i] in frozen for i in range(size)]
        for a in range(size):
            if fr[a]:
                for b in range(size):
                    if fr[b]:
                        eps[a][b] = 0
        return cls(tuple(labels), frozenset(frozen), tuple(tuple(r) for r in eps), n)

    # inspection
    def index(self, v: Label) -> int:
        try:
            return self._pos[v]
        except KeyError:
            raise UnknownVertex(v) from None

    def __contains__(self, v) -> bool:
        return v in self._pos

    def e(self, a: Label, b: Label) -> int:
        return self.eps[self.index(a)][self.index(b)]

    def is_frozen(self, v: Label) -> bool:
        self.index(v)
        return v in self.frozen

    def unfrozen(self) -> list:
        return [v for v in self.labels if v not in self.frozen]

    def arrows(self) -> list[tuple]:
        out = []
        for a, la in enumerate(self.labels):
            for b, lb in enumerate(self.labels):
                if self.eps[a][b] > 0:
                    out.append((la, lb, self.eps[a][b]))
        return out

    def out_neighbors(self, v: Label) -> dict:
        row = self.eps[self.index(v)]
        return {self.labels[b]: m for b, m in enumerate(row) if m > 0}

    def in_neighbors(self, v: Label) -> dict:
        row = self.eps[self.index(v)]
        return {self.labels[b]: -m for b, m in enumerate(row) if m < 0}

    def max_multiplicity(self) -> int:
        return max((abs(x) for r in self.eps for x in r), default=0)

    def is_skew_symmetric(self) -> bool:
        size = len(self.labels)
        return all(self.eps[a][b] == -self.eps[b][a] for a in range(size) for b in range(size))

    # transformations
    def relabel(self, mapping) -> "Quiver":
        new = tuple(mapping(v) if callable(mapping) else mapping.get(v, v) for v in self.labels)
        fr = {new[i] for i, v in enumerate(self.labels) if v in self.frozen}
        return Quiver(new, frozenset(fr), self.eps, self.n)

    def sorted(self) -> "Quiver":
        order = sorted(range(len(self.labels)), key=lambda i: self.labels[i])
        labels = tuple(self.labels[i] for i in order)
        eps = tuple(tuple(self.eps[a][b] for b in order) for a in order)
        return Quiver(labels, self.frozen, eps, self.n)

    def restrict(self, keep: Iterable[Label]) -> "Quiver":
        keep = set(keep)
        idx = [i for i, v in enumerate(self.labels) if v in keep]
        labels = tuple(self.labels[i] for i in idx)
        eps = tuple(tuple(self.eps[a][b] for b in idx) for a in idx)
        return Quiver(labels, self.frozen & keep, eps, self.n)

    def same_as(self, other: "Quiver") -> bool:
        """Equality up to vertex order."""
        if set(self.labels) != set(other.labels) or self.frozen != other.frozen:
            return False
        return all(self.e(a, b) == other.e(a, b) for a in self.labels for b in self.labels)

    def to_json(self) -> dict:
        def lab(v):
            return list(v) if isinstance(v, tuple) else v

        vertices = []
        for v in self.labels:
            rec = {"frozen": v in self.frozen}
            if isinstance(v, tuple) and len(v) == 2 and all(isinstance(x, int) for x in v):
                rec["i"], rec["j"] = v
            else:
                rec["label"] = lab(v)
            vertices.append(rec)
        arrows = [{"from": lab(a), "to": lab(b), "mult": m} for a, b, m in self.arrows()]
        return {"n": self.n, "vertices": vertices, "arrows": arrows}

    @classmethod
    def from_json(cls, data: dict) -> "Quiver":
        def unlab(x):
            return tuple(unlab(y) for y in x) if isinstance(x, list) else x

        labels, frozen = [], []
        for rec in data["vertices"]:
            v = (rec["i"], rec["j"]) if "i" in rec else unlab(rec["label"])
            labels.append(v)
            if rec["frozen"]:
                frozen.append(v)
        arrows = [(unlab(a["from"]), unlab(a["to"]), a["mult"]) for a in data["arrows"]]
        return cls.from_arrows(labels, frozen, arrows, data.get("n"))

    def to_dot(self, name: str = "Q") -> str:
        def node(v):
            if isinstance(v, tuple):
                return '"v' + "_".join(str(x) for x in v) + '"'
            return f'"{v}"'

        lines = [f"digraph {name} {{"]
        for v in self.labels:
            shape = "box" if v in self.frozen else "ellipse"
            lines.append(f"  {node(v)} [shape={shape}];")
        for a, b, mlt in self.arrows():
            attr = f' [label="{mlt}"]' if mlt > 1 else ""
            lines.append(f"  {node(a)} -> {node(b)}{attr};")
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class MutationPlan:
    steps: tuple

    def __iter__(self):
        return iter(self.steps)

    def __len__(self):
        return len(self.steps)

    def inverse(self) -> "MutationPlan":
        return MutationPlan(tuple(reversed(self.steps)))

    def validate(self, q: Quiver) -> None:
        for v in self.steps:
            if v not in q:
                raise UnknownVertex(v)
            if v in q.frozen:
                raise FrozenVertex(v)


def mutate_quiver(q: Quiver, k: Label) -> Quiver:
    ik = q.index(k)
    if k in q.frozen:
        raise FrozenVertex(k)
    e = q.eps
    size = len(q.labels)
    col = [e[i][ik] for i in range(size)]
    new = [list(r) for r in e]
    for i in range(size):
        if i == ik:
            continue
        a = col[i]
        if a == 0:
            continue
        for j in range(size):
            if j == ik or j == i:
                continue
            b = e[ik][j]
            # [e_ik]_+ e_kj + e_ik [-e_kj]_+  ==  sgn(e_ik) [e_ik e_kj]_+
            if a > 0 and b > 0:
                new[i][j] += a * b
            elif a < 0 and b < 0:
                new[i][j] -= a * b
    for j in range(size):
        new[ik][j] = -e[ik][j]
        new[j][ik] = -e[j][ik]
    return Quiver._from_matrix(q.labels, q.frozen, new, q.n)


def apply_plan(q: Quiver, plan: Iterable[Label]) -> Quiver:
    for k in plan:
        q = mutate_quiver(q, k)
    return q


def is_sink(q: Quiver, v: Label) -> bool:
    row = q.eps[q.index(v)]
    return all(x <= 0 for x in row)


def reversed_quiver(q: Quiver) -> Quiver:
    return Quiver(q.labels, q.frozen, tuple(tuple(-x for x in r) for r in q.eps), q.n)


# the triangular families

def s0_arrows(n: int, keep) -> list[tuple]:
    """Arrows of the lex-min initial seed among vertices accepted by ``keep``.

    Horizontal v_{i;j+1} -> v_{i;j}, diagonal v_{i;j} -> v_{i+1;j+1} and
    vertical v_{i+1;j} -> v_{i;j}.
    """
    arrows = []
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            if not keep(i, j):
                continue
            if j + 1 <= n and keep(i, j + 1):
                arrows.append(((i, j + 1), (i, j)))
            if i + 1 <= n - 1 and j + 1 <= n and keep(i + 1, j + 1):
                arrows.append(((i, j), (i + 1, j + 1)))
            if i + 1 <= j and keep(i + 1, j):
                arrows.append(((i + 1, j), (i, j)))
    return arrows


def build_U_quiver(n: int) -> Quiver:
    if n < 2:
        raise ValueError("n must be at least 2")
    labels = [(i, j) for i in range(1, n) for j in range(i + 1, n + 1)]
    frozen = [(i, n) for i in range(1, n)]
    keep = lambda i, j: i < j
    return Quiver.from_arrows(labels, frozen, s0_arrows(n, keep), n)


def build_Gew0_quiver(n: int, include_nn: bool = False) -> Quiver:
    if n < 2:
        raise ValueError("n must be at least 2")
    labels = [(i, j) for i in range(1, n + 1) for j in range(i, n + 1) if (i, j) != (n, n)]
    keep = lambda i, j: (i, j) != (n, n) and i <= j
    arrows = s0_arrows(n, keep)
    if include_nn:
        labels.append((n, n))
    frozen = [v for v in labels if v[1] == n or v[0] == v[1]]
    return Quiver.from_arrows(labels, frozen, arrows, n)


def gew0_vertices(n: int, include_nn: bool = False) -> list[tuple[int, int]]:
    return list(build_Gew0_quiver(n, include_nn).labels)


def u_vertices(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, n) for j in range(i + 1, n + 1)]


def triangle_quiver(n: int) -> Quiver:
    """The triangular quiver Q_n on v_{r;c}, 1 <= c <= r <= n, all unfrozen."""
    labels = [(r, c) for r in range(1, n + 1) for c in range(1, r + 1)]
    arrows = []
    for r in range(1, n + 1):
        for c in range(1, r + 1):
            if c + 1 <= r:
                arrows.append(((r, c + 1), (r, c)))
            if c <= r - 1:
                arrows.append(((r, c), (r - 1, c)))
                arrows.append(((r - 1, c), (r, c + 1)))
    return Quiver.from_arrows(labels, [], arrows, n)


def delete_bottom_row(q: Quiver, n: int) -> Quiver:
    """Q_n with its bottom-row horizontal arrows removed."""
    keep = [(a, b, m) for a, b, m in q.arrows() if not (a[0] == n and b[0] == n)]
    return Quiver.from_arrows(q.labels, q.frozen, keep, q.n)


def lex_sweep(n: int) -> MutationPlan:
    return MutationPlan(tuple((r, c) for r in range(1, n + 1) for c in range(1, r + 1)))


def nested_sweep(n: int) -> MutationPlan:
    steps = []
    for m in range(n, 0, -1):
        steps.extend(lex_sweep(m).steps)
    return MutationPlan(tuple(steps))


def q_to_s0(v: tuple[int, int]) -> tuple[int, int]:
    """Relabeling from the triangle labels to initial-seed labels: v_{r;c} -> v_{c;r+1}."""
    r, c = v
    return (c, r + 1)


def sweep_plan(top: int, rows: int) -> list[tuple[int, int]]:
    """Lexicographic sweep, in initial-seed labels, of the sub-triangle with top
    vertex v_{1;top} and ``rows`` rows: all v_{i;j} with j in top..top+rows-1
    and i <= j - top + 1, ordered by j and then i."""
    return [(i, j) for j in range(top, top + rows) for i in range(1, j - top + 2)]


def reflection_plan(n: int) -> MutationPlan:
    if n < 3:
        raise ValueError("n must be at least 3")
    steps = []
    for m in range(n - 1, 1, -1):
        steps.extend(sweep_plan(2, m - 1))
    return MutationPlan(tuple(steps))


def mutation_counts(plan: Sequence) -> dict:
    counts: dict = {}
    for v in plan:
        counts[v] = counts.get(v, 0) + 1
    return counts

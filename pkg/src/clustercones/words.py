"""Reduced words, double pseudoline arrangements and their chamber quivers.

Pseudoline positions are counted from the bottom, 1..n.  A letter at level
``l`` swaps the lines in positions l and l+1.  Red lines carry labels 1..n
bottom to top on the left; blue lines carry labels 1..n bottom to top on the
right.  A chamber with ``h`` lines below it has minor Δ^I_J where I (J) is the
set of red (blue) labels below it.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field

from .quiver import Quiver, mutate_quiver

RED, BLUE = "R", "B"


class NotReduced(ValueError):
    pass


class InvalidIndexSet(ValueError):
    pass


@dataclass(frozen=True)
class DoubleWord:
    n: int
    letters: tuple  # of (color, level)

    def __post_init__(self):
        for color, level in self.letters:
            if color not in (RED, BLUE):
                raise ValueError(f"bad color {color!r}")
            if not 1 <= level <= self.n - 1:
                raise ValueError(f"level {level} out of range for n={self.n}")

    @classmethod
    def blue(cls, n: int, levels) -> "DoubleWord":
        return cls(n, tuple((BLUE, int(l)) for l in levels))

    @classmethod
    def parse(cls, n: int, text: str) -> "DoubleWord":
        """Accepts "B1 B2 B1", "1,2,1", or "B1,R1,B2"."""
        tokens = [tok for tok in re.split(r"[\s,]+", text.strip()) if tok]
        letters = []
        for tok in tokens:
            m = re.fullmatch(r"([RBrb]?)(\d+)", tok)
            if not m:
                raise ValueError(f"bad letter {tok!r}")
            color = (m.group(1) or BLUE).upper()
            letters.append((color, int(m.group(2))))
        return cls(n, tuple(letters))

    def levels(self) -> tuple:
        return tuple(l for _, l in self.letters)

    def __str__(self) -> str:
        return " ".join(f"{c}{l}" for c, l in self.letters)

    def __len__(self):
        return len(self.letters)


def lex_min_word(n: int) -> DoubleWord:
    if n < 2:
        raise ValueError("n must be at least 2")
    levels = [l for top in range(1, n) for l in range(top, 0, -1)]
    return DoubleWord.blue(n, levels)


@dataclass(frozen=True)
class Chamber:
    rows: tuple
    cols: tuple
    unbounded: bool
    level: int
    crossing: int  # index into the extended word (fictitious crossings first)

    @property
    def key(self) -> tuple:
        return (self.rows, self.cols)

    @property
    def frozen(self) -> bool:
        return self.unbounded


@dataclass(frozen=True)
class Arrangement:
    word: DoubleWord
    red_states: tuple  # bottom-to-top labels after each real letter (index 0 = left end)
    blue_states: tuple
    chambers: tuple
    extended: tuple = field(repr=False)  # (color, level, fictitious) for the extended word

    def chamber_minors(self) -> list[tuple]:
        return [c.key for c in self.chambers]

    def find(self, rows, cols) -> Chamber | None:
        key = (tuple(rows), tuple(cols))
        for c in self.chambers:
            if c.key == key:
                return c
        return None


def _check_reduced(n, letters, start, color):
    state = list(start)
    seen = set()
    states = [tuple(state)]
    for c, l in letters:
        if c == color:
            a, b = state[l - 1], state[l]
            pair = frozenset((a, b))
            if pair in seen:
                raise NotReduced(f"{color} lines {a} and {b} cross twice")
            seen.add(pair)
            state[l - 1], state[l] = b, a
        states.append(tuple(state))
    return states


def build_arrangement(w: DoubleWord) -> Arrangement:
    n = w.n
    red = _check_reduced(n, w.letters, range(1, n + 1), RED)
    # blue labels are fixed on the right end; recover the left end by undoing the crossings
    right = list(range(1, n + 1))
    for c, l in reversed(w.letters):
        if c == BLUE:
            right[l - 1], right[l] = right[l], right[l - 1]
    blue = _check_reduced(n, w.letters, right, BLUE)

    extended = [(RED, l, True) for l in range(n - 1, 0, -1)] + [(c, l, False) for c, l in w.letters]
    nfict = n - 1
    chambers = []
    for e, (color, level, fict) in enumerate(extended):
        pos = 0 if fict else e - nfict + 1
        later = any(extended[f][1] == level for f in range(e + 1, len(extended)))
        rows = tuple(sorted(red[pos][:level]))
        cols = tuple(sorted(blue[pos][:level]))
        chambers.append(Chamber(rows, cols, fict or not later, level, e))
    # fictitious chambers listed by level, then the rest in word order
    chambers.sort(key=lambda ch: (0, ch.level) if ch.crossing < nfict else (1, ch.crossing))
    return Arrangement(w, tuple(red), tuple(blue), tuple(chambers), tuple(extended))


def _next_on_level(extended, e, level):
    for f in range(e + 1, len(extended)):
        if extended[f][1] == level:
            return f
    return None


def _prev_on_level(extended, e, level):
    for f in range(e - 1, -1, -1):
        if extended[f][1] == level:
            return f
    return None


def bfz_quiver(w: DoubleWord) -> Quiver:
    """Chamber quiver; vertices are labeled by their (rows, cols) minors."""
    arr = build_arrangement(w)
    ext = arr.extended
    n = w.n
    by_crossing = {c.crossing: c for c in arr.chambers}
    arrows = []

    for e, (color_a, j, _) in enumerate(ext):
        nxt = _next_on_level(ext, e, j)
        here = by_crossing[e].key
        if nxt is not None:
            # horizontal neighbours across crossing nxt
            there = by_crossing[nxt].key
            if ext[nxt][0] == BLUE:
                arrows.append((here, there))
            else:
                arrows.append((there, here))
        stop = nxt if nxt is not None else len(ext)
        for jp in (j - 1, j + 1):
            if not 1 <= jp <= n - 1:
                continue
            between = [f for f in range(e + 1, stop) if ext[f][1] == jp]
            # interleaved spans: the chamber of crossing l on level jp starts
            # before crossing e and ends strictly inside the span of e
            for l in range(e):
                if ext[l][1] != jp:
                    continue
                lend = _next_on_level(ext, l, jp)
                if lend is None or not e < lend < stop or ext[lend][0] != color_a:
                    continue
                earlier = by_crossing[l].key
                if color_a == RED:
                    arrows.append((earlier, here))
                else:
                    arrows.append((here, earlier))
            # consecutive pairs of opposite colors on the adjacent level
            for c1, c2 in zip(between, between[1:]):
                if ext[c1][0] != ext[c2][0]:
                    bounded = by_crossing[c1].key
                    if ext[c1][0] == BLUE:
                        arrows.append((bounded, here))
                    else:
                        arrows.append((here, bounded))

    labels = [c.key for c in arr.chambers]
    frozen = [c.key for c in arr.chambers if c.unbounded]
    return Quiver.from_arrows(labels, frozen, arrows, n)


def lex_label(key: tuple) -> tuple[int, int]:
    """Initial-seed label v_{i;j} of the lex-min chamber Δ^{1..i}_{j-i+1..j}."""
    rows, cols = key
    return (len(rows), max(cols))


# braid moves

def braid_moves(w: DoubleWord) -> list[int]:
    """Positions p where letters p, p+1, p+2 form a same-color 3-move."""
    out = []
    L = w.letters
    for p in range(len(L) - 2):
        (c1, a), (c2, b), (c3, c) = L[p], L[p + 1], L[p + 2]
        if c1 == c2 == c3 and a == c and abs(a - b) == 1:
            out.append(p)
    return out


def commutation_moves(w: DoubleWord) -> list[int]:
    out = []
    L = w.letters
    for p in range(len(L) - 1):
        (c1, a), (c2, b) = L[p], L[p + 1]
        if c1 == c2 and abs(a - b) >= 2:
            out.append(p)
    return out


def apply_braid(w: DoubleWord, p: int) -> tuple[DoubleWord, tuple, tuple]:
    """Apply the 3-move at p; return (new word, old chamber key, new chamber key)."""
    L = list(w.letters)
    (col, a), (_, b), _ = L[p], L[p + 1], L[p + 2]
    new = DoubleWord(w.n, tuple(L[:p] + [(col, b), (col, a), (col, b)] + L[p + 3:]))
    old_ch = _chamber_after(build_arrangement(w), p)
    new_ch = _chamber_after(build_arrangement(new), p)
    return new, old_ch.key, new_ch.key


def apply_commutation(w: DoubleWord, p: int) -> DoubleWord:
    L = list(w.letters)
    L[p], L[p + 1] = L[p + 1], L[p]
    return DoubleWord(w.n, tuple(L))


def _chamber_after(arr: Arrangement, p: int) -> Chamber:
    e = p + arr.word.n - 1
    for c in arr.chambers:
        if c.crossing == e:
            return c
    raise KeyError(p)


def braid_mutation_check(w: DoubleWord, p: int) -> bool:
    """Mutating at the chamber changed by the 3-move at p gives the new word's quiver."""
    new, old_key, new_key = apply_braid(w, p)
    q = mutate_quiver(bfz_quiver(w), old_key)
    q = q.relabel({old_key: new_key})
    return q.same_as(bfz_quiver(new))


def all_reduced_words(n: int) -> list[DoubleWord]:
    """Every B-only reduced word for the longest element (use for small n)."""
    found = {lex_min_word(n).levels()}
    frontier = list(found)
    while frontier:
        cur = frontier.pop()
        w = DoubleWord.blue(n, cur)
        for p in braid_moves(w):
            nxt = apply_braid(w, p)[0].levels()
            if nxt not in found:
                found.add(nxt)
                frontier.append(nxt)
        for p in commutation_moves(w):
            nxt = apply_commutation(w, p).levels()
            if nxt not in found:
                found.add(nxt)
                frontier.append(nxt)
    return [DoubleWord.blue(n, lv) for lv in sorted(found)]


def random_reduced_word(n: int, rng: random.Random, steps: int = 200) -> DoubleWord:
    w = lex_min_word(n)
    for _ in range(steps):
        moves = [("b", p) for p in braid_moves(w)] + [("c", p) for p in commutation_moves(w)]
        kind, p = rng.choice(moves)
        w = apply_braid(w, p)[0] if kind == "b" else apply_commutation(w, p)
    return w


# words containing a prescribed chamber

def word_for_minor(n: int, J) -> DoubleWord:
    """A reduced word for the longest element with Δ^{1..i}_J as a chamber minor.

    Blue lines start in descending order bottom to top.  First steer into a
    state whose bottom i lines are J, then finish by sorting; every pair of
    lines crosses exactly once.
    """
    J = tuple(sorted(set(int(j) for j in J)))
    if not J or len(J) > n or J[0] < 1 or J[-1] > n:
        raise InvalidIndexSet(J)
    state = list(range(n, 0, -1))
    levels = []

    def swap(pos):  # pos is the lower of the two positions, 0-based
        a, b = state[pos], state[pos + 1]
        if a < b:
            raise AssertionError("would cross a pair twice")
        state[pos], state[pos + 1] = b, a
        levels.append(pos + 1)

    for p, x in enumerate(sorted(J, reverse=True)):
        q = state.index(x)
        while q > p:
            swap(q - 1)
            q -= 1
    while True:
        for pos in range(n - 1):
            if state[pos] > state[pos + 1]:
                swap(pos)
                break
        else:
            break
    w = DoubleWord.blue(n, levels)
    arr = build_arrangement(w)
    if arr.find(range(1, len(J) + 1), J) is None:
        raise AssertionError(f"constructed word {w} lacks Δ^(1..{len(J)})_{J}")
    return w


def arrangement_svg(arr: Arrangement, scale: int = 40) -> str:
    n = arr.word.n
    steps = len(arr.word) + 1
    width, height = scale * (steps + 1), scale * (n + 1)

    def y(pos):
        return height - scale * pos

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">']
    for color, states, offset in (("red", arr.red_states, 0), ("blue", arr.blue_states, -3)):
        for label in range(1, n + 1):
            pts = []
            for s, state in enumerate(states):
                pos = state.index(label) + 1
                pts.append(f"{scale * (s + 0.5):.1f},{y(pos) + offset:.1f}")
            parts.append(f'<polyline fill="none" stroke="{color}" points="{" ".join(pts)}"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"

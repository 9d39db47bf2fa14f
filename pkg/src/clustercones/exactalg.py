"""Exact Laurent polynomials and rational functions over the integers.

Monomials are stored sparsely as sorted tuples of ``(VarId, exponent)``
pairs.  A ``RationalFn`` is normalized by cancelling common monomial
factors and integer content, and by an exact polynomial division attempt
of the numerator by the denominator.  No multivariate gcd is computed.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, NamedTuple, Sequence


class DivisionByZero(ZeroDivisionError):
    pass


class UnboundVariable(KeyError):
    pass


class Kind(IntEnum):
    A = 0
    X = 1
    T = 2
    TAU = 3
    MATRIX = 4


_KIND_NAME = {Kind.A: "A", Kind.X: "X", Kind.T: "t", Kind.TAU: "tau", Kind.MATRIX: "m"}
_NAME_KIND = {v: k for k, v in _KIND_NAME.items()}
_ARITY = {Kind.A: 2, Kind.X: 2, Kind.T: 1, Kind.TAU: 2, Kind.MATRIX: 2}


class VarId(NamedTuple):
    kind: Kind
    index: tuple

    def __str__(self) -> str:
        sep = "," if self.kind == Kind.MATRIX else ";"
        return f"{_KIND_NAME[self.kind]}[{sep.join(str(i) for i in self.index)}]"

    def __repr__(self) -> str:
        return str(self)


def make_var(kind: Kind, index: Sequence[int], n: int | None = None) -> VarId:
    kind = Kind(kind)
    index = tuple(int(i) for i in index)
    if len(index) != _ARITY[kind]:
        raise ValueError(f"{_KIND_NAME[kind]} expects {_ARITY[kind]} indices, got {index}")
    if n is not None:
        if kind == Kind.T:
            ok = 1 <= index[0] <= n * (n - 1) // 2
        elif kind == Kind.TAU:
            ok = 1 <= index[0] < index[1] <= n
        elif kind == Kind.MATRIX:
            ok = all(1 <= i <= n + 1 for i in index)
        else:
            ok = 1 <= index[0] <= index[1] <= n
        if not ok:
            raise ValueError(f"index {index} out of range for {_KIND_NAME[kind]} with n={n}")
    return VarId(kind, index)


def A(i: int, j: int) -> VarId:
    return VarId(Kind.A, (i, j))


def X(i: int, j: int) -> VarId:
    return VarId(Kind.X, (i, j))


def t(l: int) -> VarId:
    return VarId(Kind.T, (l,))


def tau(j: int, k: int) -> VarId:
    return VarId(Kind.TAU, (j, k))


def m(r: int, c: int) -> VarId:
    return VarId(Kind.MATRIX, (r, c))


_VAR_RE = re.compile(r"^(A|X|tau|t|m)\[([0-9;,\-]+)\]$")


def parse_var(s: str) -> VarId:
    match = _VAR_RE.match(s.strip())
    if not match:
        raise ValueError(f"cannot parse variable {s!r}")
    kind = _NAME_KIND[match.group(1)]
    index = tuple(int(x) for x in re.split(r"[;,]", match.group(2)))
    return make_var(kind, index)


Key = tuple  # sorted tuple of (VarId, nonzero int)


def _key_mul(a: Key, b: Key) -> Key:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        s = d.get(v, 0) + e
        if s:
            d[v] = s
        else:
            del d[v]
    return tuple(sorted(d.items()))


def _key_neg(a: Key) -> Key:
    return tuple((v, -e) for v, e in a)


def _key_degree(a: Key) -> int:
    return sum(e for _, e in a)


@dataclass(frozen=True)
class Monomial:
    exponents: Key
    coefficient: int

    def as_dict(self) -> dict:
        return dict(self.exponents)


class LaurentPoly:
    """Immutable Laurent polynomial with integer coefficients."""

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[Key, int] | None = None, *, _trusted: bool = False):
        if terms is None:
            self._t = {}
        elif _trusted:
            self._t = terms
        else:
            self._t = {}
            for k, c in terms.items():
                if c:
                    k = tuple(sorted((v, e) for v, e in k if e))
                    s = self._t.get(k, 0) + int(c)
                    if s:
                        self._t[k] = s
                    else:
                        self._t.pop(k, None)
        self._hash = None

    # construction
    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({(): int(c)}, _trusted=True) if c else cls()

    @classmethod
    def var(cls, v: VarId, power: int = 1) -> "LaurentPoly":
        return cls({((v, power),) if power else (): 1}, _trusted=True)

    @classmethod
    def monomial(cls, exponents: Mapping[VarId, int] | Iterable[tuple[VarId, int]], coeff: int = 1):
        items = exponents.items() if isinstance(exponents, Mapping) else exponents
        acc: dict[VarId, int] = {}
        for v, e in items:
            acc[v] = acc.get(v, 0) + e
        key = tuple(sorted((v, e) for v, e in acc.items() if e))
        return cls({key: int(coeff)}, _trusted=True) if coeff else cls()

    # inspection
    def __len__(self) -> int:
        return len(self._t)

    def items(self):
        return self._t.items()

    def is_zero(self) -> bool:
        return not self._t

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and () in self._t)

    def constant_term(self) -> int:
        return self._t.get((), 0)

    def variables(self) -> set[VarId]:
        return {v for k in self._t for v, _ in k}

    def terms(self) -> list[Monomial]:
        """Terms in canonical order: total degree, then the sorted exponent list."""
        order = sorted(self._t, key=lambda k: (_key_degree(k), k))
        return [Monomial(k, self._t[k]) for k in order]

    def leading_key(self) -> Key:
        return max(self._t, key=lambda k: (_key_degree(k), k))

    def content(self) -> int:
        g = 0
        for c in self._t.values():
            g = gcd(g, c)
        return g

    def min_exponents(self) -> dict[VarId, int]:
        """Exponent of the largest monomial dividing every term (may be negative)."""
        if not self._t:
            return {}
        vs = self.variables()
        out = {}
        for v in vs:
            lo = min(dict(k).get(v, 0) for k in self._t)
            if lo:
                out[v] = lo
        return out

    # arithmetic
    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        if len(self._t) < len(other._t):
            a, b = other._t, self._t
        else:
            a, b = self._t, other._t
        out = dict(a)
        for k, c in b.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LaurentPoly(out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self._t.items()}, _trusted=True)

    def __sub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._t or not other._t:
            return LaurentPoly()
        out: dict = {}
        for ka, ca in self._t.items():
            for kb, cb in other._t.items():
                k = _key_mul(ka, kb)
                s = out.get(k, 0) + ca * cb
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return LaurentPoly(out, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial Laurent polynomial")
            ((k, c),) = self._t.items()
            if abs(c) != 1:
                raise ValueError("negative power of a monomial with non-unit coefficient")
            return LaurentPoly({tuple((v, x * e) for v, x in k): c ** (-e)}, _trusted=True)
        result = LaurentPoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def monomial_shift(self, key: Key) -> "LaurentPoly":
        return LaurentPoly({_key_mul(k, key): c for k, c in self._t.items()}, _trusted=True)

    def scale(self, c: int) -> "LaurentPoly":
        if not c:
            return LaurentPoly()
        return LaurentPoly({k: v * c for k, v in self._t.items()}, _trusted=True)

    def exact_div_int(self, c: int) -> "LaurentPoly":
        out = {}
        for k, v in self._t.items():
            q, r = divmod(v, c)
            if r:
                raise ValueError("coefficient not divisible")
            out[k] = q
        return LaurentPoly(out, _trusted=True)

    def substitute(self, mapping: Mapping[VarId, "LaurentPoly"]) -> "LaurentPoly":
        """Replace variables by Laurent polynomials (negative powers need monomials)."""
        cache: dict = {}
        out = LaurentPoly()
        for k, c in self._t.items():
            term = LaurentPoly.const(c)
            rest = []
            for v, e in k:
                if v in mapping:
                    p = cache.get((v, e))
                    if p is None:
                        p = mapping[v] ** e
                        cache[(v, e)] = p
                    term = term * p
                else:
                    rest.append((v, e))
            if rest:
                term = term.monomial_shift(tuple(rest))
            out = out + term
        return out

    def drop_if(self, predicate) -> "LaurentPoly":
        """Drop every term whose exponent map contains a variable satisfying predicate."""
        return LaurentPoly(
            {k: c for k, c in self._t.items() if not any(predicate(v) for v, _ in k)},
            _trusted=True,
        )

    # comparison
    def __eq__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({format_poly(self)})"

    def __str__(self) -> str:
        return format_poly(self)

    # serialization
    def to_json(self) -> list:
        return [
            {"coeff": mono.coefficient, "exponents": {str(v): e for v, e in mono.exponents}}
            for mono in self.terms()
        ]

    @classmethod
    def from_json(cls, data: list) -> "LaurentPoly":
        out: dict = {}
        for term in data:
            key = tuple(sorted((parse_var(s), int(e)) for s, e in term["exponents"].items() if e))
            out[key] = out.get(key, 0) + int(term["coeff"])
        return cls({k: c for k, c in out.items() if c}, _trusted=True)


def _lift(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    return NotImplemented


def format_poly(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for mono in p.terms():
        factors = [str(v) if e == 1 else f"{v}^{e}" for v, e in mono.exponents]
        c = mono.coefficient
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        elif c == -1:
            parts.append("-" + "*".join(factors))
        else:
            parts.append(f"{c}*" + "*".join(factors))
    return " + ".join(parts).replace("+ -", "- ")


def lp_arith(op: str, a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


# exact polynomial division on dense exponent tuples

def _poly_exact_div(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly | None:
    """Return q with p = d*q if it exists as a polynomial, else None.

    Both arguments must have nonnegative exponents.  Uses lexicographic
    leading terms on a dense exponent encoding over the union of variables.
    """
    if d.is_zero():
        raise DivisionByZero("division by zero polynomial")
    vs = sorted(p.variables() | d.variables())
    pos = {v: i for i, v in enumerate(vs)}
    nv = len(vs)

    def dense(k):
        vec = [0] * nv
        for v, e in k:
            vec[pos[v]] = e
        return tuple(vec)

    rem = {dense(k): c for k, c in p.items()}
    dd = [(dense(k), c) for k, c in d.items()]
    lead, lead_c = max(dd)
    heap = [tuple(-e for e in k) for k in rem]
    heapq.heapify(heap)
    quot: dict = {}
    while rem:
        while True:
            neg = heapq.heappop(heap)
            lt = tuple(-e for e in neg)
            if lt in rem:
                break
        c = rem[lt]
        shift = tuple(a - b for a, b in zip(lt, lead))
        if any(s < 0 for s in shift):
            return None
        qc, r = divmod(c, lead_c)
        if r:
            return None
        quot[shift] = qc
        for k, dc in dd:
            kk = tuple(a + b for a, b in zip(k, shift))
            s = rem.get(kk, 0) - qc * dc
            if s:
                if kk not in rem:
                    heapq.heappush(heap, tuple(-e for e in kk))
                rem[kk] = s
            else:
                rem.pop(kk, None)
        # the popped leading key is gone now; stale heap entries are skipped above
    out = {}
    for vec, c in quot.items():
        out[tuple((vs[i], e) for i, e in enumerate(vec) if e)] = c
    return LaurentPoly(out, _trusted=True)


def _split_monomial(p: LaurentPoly) -> tuple[dict, LaurentPoly]:
    mins = p.min_exponents()
    if not mins:
        return {}, p
    shift = tuple(sorted((v, -e) for v, e in mins.items()))
    return mins, p.monomial_shift(shift)


class RationalFn:
    """Normalized quotient of Laurent polynomials."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _normalized: bool = False):
        num = _lift(num) if not isinstance(num, LaurentPoly) else num
        den = LaurentPoly.const(1) if den is None else (_lift(den) if not isinstance(den, LaurentPoly) else den)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if _normalized:
            self.num, self.den = num, den
        else:
            self.num, self.den = _normalize(num, den)

    @classmethod
    def of(cls, x) -> "RationalFn":
        if isinstance(x, RationalFn):
            return x
        return cls(x)

    @classmethod
    def var(cls, v: VarId) -> "RationalFn":
        return cls(LaurentPoly.var(v))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other):
        other = _rf_lift(other)
        if self.den == other.den:
            return RationalFn(self.num + other.num, self.den)
        if self.den.is_monomial() and other.den.is_monomial():
            (ka, ca), = self.den.items()
            (kb, cb), = other.den.items()
            da, db = dict(ka), dict(kb)
            lcm_key = tuple(sorted((v, max(da.get(v, 0), db.get(v, 0))) for v in set(da) | set(db)))
            lc = abs(ca * cb) // gcd(ca, cb)
            fa = LaurentPoly.monomial(_key_mul(lcm_key, _key_neg(ka)), lc // ca)
            fb = LaurentPoly.monomial(_key_mul(lcm_key, _key_neg(kb)), lc // cb)
            return RationalFn(self.num * fa + other.num * fb, LaurentPoly.monomial(lcm_key, lc))
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        return self + (-_rf_lift(other))

    def __rsub__(self, other):
        return _rf_lift(other) + (-self)

    def __mul__(self, other):
        other = _rf_lift(other)
        return RationalFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return rf_divide(self, _rf_lift(other))

    def __pow__(self, e: int):
        if e >= 0:
            return RationalFn(self.num ** e, self.den ** e)
        if self.num.is_zero():
            raise DivisionByZero("zero to a negative power")
        return RationalFn(self.den ** (-e), self.num ** (-e))

    def __eq__(self, other):
        try:
            other = _rf_lift(other)
        except TypeError:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        if self.den == LaurentPoly.const(1):
            return f"RationalFn({self.num})"
        return f"RationalFn(({self.num}) / ({self.den}))"

    def to_json(self) -> dict:
        return {"numerator": self.num.to_json(), "denominator": self.den.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "RationalFn":
        return cls(LaurentPoly.from_json(data["numerator"]), LaurentPoly.from_json(data["denominator"]))


def _rf_lift(x) -> RationalFn:
    if isinstance(x, RationalFn):
        return x
    if isinstance(x, (LaurentPoly, int)):
        return RationalFn(x)
    raise TypeError(f"cannot treat {type(x).__name__} as a rational function")


def _normalize(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if num.is_zero():
        return LaurentPoly(), LaurentPoly.const(1)
    mn, n0 = _split_monomial(num)
    md, d0 = _split_monomial(den)
    q = dict(mn)
    for v, e in md.items():
        q[v] = q.get(v, 0) - e
    up = tuple(sorted((v, e) for v, e in q.items() if e > 0))
    down = tuple(sorted((v, -e) for v, e in q.items() if e < 0))
    cn, cd = n0.content(), d0.content()
    n1, d1 = n0.exact_div_int(cn), d0.exact_div_int(cd)
    if not d1.is_constant():
        quot = _poly_exact_div(n1, d1)
        if quot is not None:
            n1, d1 = quot, LaurentPoly.const(1)
    g = gcd(cn, cd)
    cn, cd = cn // g, cd // g
    numer = n1.scale(cn).monomial_shift(up)
    denom = d1.scale(cd).monomial_shift(down)
    lead = denom.leading_key()
    if dict(denom.items())[lead] < 0:
        numer, denom = -numer, -denom
    return numer, denom


def rf_divide(a: RationalFn, b: RationalFn) -> RationalFn:
    a, b = _rf_lift(a), _rf_lift(b)
    if b.is_zero():
        raise DivisionByZero("division by the zero rational function")
    return RationalFn(a.num * b.den, a.den * b.num)


def monomial_denominator(f: RationalFn) -> LaurentPoly | None:
    """Laurent form of f when its normalized denominator is a single term."""
    f = _rf_lift(f)
    if not f.den.is_monomial():
        return None
    ((k, c),) = f.den.items()
    if abs(c) != 1:
        return None
    return f.num.monomial_shift(_key_neg(k)).scale(c)


def _eval_poly(p: LaurentPoly, point: Mapping[VarId, Fraction]) -> Fraction:
    total = Fraction(0)
    for k, c in p.items():
        term = Fraction(c)
        for v, e in k:
            try:
                x = point[v]
            except KeyError:
                raise UnboundVariable(str(v)) from None
            if e < 0 and x == 0:
                raise DivisionByZero(f"{v} = 0 raised to {e}")
            term *= Fraction(x) ** e
        total += term
    return total


def evaluate(f, point: Mapping[VarId, Fraction | int]) -> Fraction:
    if isinstance(f, LaurentPoly):
        return _eval_poly(f, point)
    f = _rf_lift(f)
    d = _eval_poly(f.den, point)
    if d == 0:
        raise DivisionByZero("denominator vanishes at the point")
    return _eval_poly(f.num, point) / d


def det(matrix: Sequence[Sequence]):
    """Determinant over any commutative ring by expansion over column subsets.

    Costs O(2^k * k) ring multiplications for a k x k matrix, which is fine
    for the minors used here.
    """
    k = len(matrix)
    if k == 0:
        return 1
    if any(len(row) != k for row in matrix):
        raise ValueError("determinant of a non-square matrix")
    # table[mask] = minor of the first popcount(mask) rows on the columns in mask
    table = {0: 1}
    for r in range(k):
        nxt = {}
        for mask, val in table.items():
            if _is_zero(val):
                continue
            seen = 0
            for c in range(k):
                bit = 1 << c
                if mask & bit:
                    seen += 1
                    continue
                entry = matrix[r][c]
                if _is_zero(entry):
                    continue
                # sign from the number of used columns to the right of c
                right = bin(mask >> (c + 1)).count("1")
                term = entry * val
                if right % 2:
                    term = -term
                nm = mask | bit
                nxt[nm] = nxt[nm] + term if nm in nxt else term
        table = nxt
    return table.get((1 << k) - 1, 0)


def _is_zero(x) -> bool:
    if isinstance(x, LaurentPoly):
        return x.is_zero()
    if isinstance(x, RationalFn):
        return x.is_zero()
    return x == 0

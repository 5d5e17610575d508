"""Exact carriers for localization data.

ExpSum holds a finite integer combination of lattice characters e^m.  After
restricting to a one-parameter subgroup q^t, every localization term becomes
a univariate rational function over the integers; summing those exactly and
taking q -> 1 produces the index.  No floating point anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .errors import GenericityError, InputError, PoleError

IntVector = tuple[int, ...]

# ---------------------------------------------------------------------------
# formal sums of lattice characters


class ExpSum:
    """Finite formal sum of lattice exponentials with integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[IntVector, int] | None = None):
        clean: dict[IntVector, int] = {}
        for vec, coeff in (terms or {}).items():
            if coeff:
                clean[tuple(int(x) for x in vec)] = int(coeff)
        self.terms = clean

    @classmethod
    def monomial(cls, vec: Sequence[int], coeff: int = 1) -> "ExpSum":
        return cls({tuple(vec): coeff})

    @classmethod
    def zero(cls) -> "ExpSum":
        return cls({})

    def is_zero(self) -> bool:
        return not self.terms

    def total(self) -> int:
        """Sum of coefficients, i.e. the value of the sum at the identity."""
        return sum(self.terms.values())

    def __add__(self, other: "ExpSum") -> "ExpSum":
        out = dict(self.terms)
        for vec, c in other.terms.items():
            out[vec] = out.get(vec, 0) + c
        return ExpSum(out)

    def __neg__(self) -> "ExpSum":
        return ExpSum({v: -c for v, c in self.terms.items()})

    def __sub__(self, other: "ExpSum") -> "ExpSum":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return ExpSum({v: c * other for v, c in self.terms.items()})
        out: dict[IntVector, int] = {}
        for v1, c1 in self.terms.items():
            for v2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(v1, v2))
                out[key] = out.get(key, 0) + c1 * c2
        return ExpSum(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, ExpSum) and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "ExpSum(0)"
        parts = [f"{c}*e{list(v)}" for v, c in sorted(self.terms.items())]
        return "ExpSum(" + " + ".join(parts) + ")"


# ---------------------------------------------------------------------------
# integer polynomials, dense ascending coefficients, no trailing zeros

Poly = tuple[int, ...]

_PZERO: Poly = ()
_PONE: Poly = (1,)


def _ptrim(cs: list[int]) -> Poly:
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _padd(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return _ptrim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _pneg(a: Poly) -> Poly:
    return tuple(-x for x in a)


def _pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return _PZERO
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _ptrim(out)


def _pshift(a: Poly, k: int) -> Poly:
    return ((0,) * k + a) if a else _PZERO


def _pcontent(a: Poly) -> int:
    g = 0
    for x in a:
        g = math.gcd(g, x)
    return g


def _pprim(a: Poly) -> Poly:
    g = _pcontent(a)
    if g in (0, 1):
        return a
    return tuple(x // g for x in a)


def _pprem(a: Poly, b: Poly) -> Poly:
    """Pseudo-remainder of a by b (b nonzero, deg a >= deg b)."""
    r = list(a)
    lb = b[-1]
    db = len(b) - 1
    while len(r) - 1 >= db and any(r):
        lr = r[-1]
        if lr == 0:
            r.pop()
            continue
        shift = len(r) - 1 - db
        r = [x * lb for x in r]
        for j, y in enumerate(b):
            r[shift + j] -= lr * y
        while r and r[-1] == 0:
            r.pop()
        if not r:
            break
    return _ptrim(list(r))


def _pgcd_prs(a: Poly, b: Poly) -> Poly:
    """Primitive gcd via the primitive pseudo-remainder sequence."""
    a, b = _pprim(a), _pprim(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _pprem(a, b)
        a, b = b, _pprim(r)
    if not a:
        return _PZERO
    return a if a[-1] > 0 else _pneg(a)


def _peval_int(a: Poly, x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _pdivides(d: Poly, a: Poly) -> Optional[Poly]:
    """a / d over the integers, or None when d does not divide a exactly."""
    if not a:
        return _PZERO
    if len(d) > len(a):
        return None
    rem = list(a)
    lead = d[-1]
    out = [0] * (len(a) - len(d) + 1)
    for i in range(len(out) - 1, -1, -1):
        top = rem[i + len(d) - 1]
        if top % lead:
            return None
        c = top // lead
        out[i] = c
        if c:
            for j, y in enumerate(d):
                rem[i + j] -= c * y
    if any(rem):
        return None
    return _ptrim(out)


def _pgcd(a: Poly, b: Poly) -> Poly:
    """Primitive gcd over the integers.

    Heuristic first: evaluate both at a large integer, take the integer gcd,
    reconstruct a candidate from balanced digits and verify by exact
    division.  Verification makes the heuristic sound; the pseudo-remainder
    sequence is kept as a fallback.  This keeps the localization sums fast
    when denominators reach large degrees.
    """
    if not a or not b:
        base = a or b
        if not base:
            return _PZERO
        base = _pprim(base)
        return base if base[-1] > 0 else _pneg(base)
    a, b = _pprim(a), _pprim(b)
    height = max(max(abs(x) for x in a), max(abs(x) for x in b))
    x = 2 * height + 2
    for _ in range(4):
        ga = _peval_int(a, x)
        gb = _peval_int(b, x)
        g = math.gcd(ga, gb)
        digits = []
        while g:
            r = g % x
            if r > x // 2:
                r -= x
            digits.append(r)
            g = (g - r) // x
        cand = _pprim(_ptrim(digits))
        if cand:
            if cand[-1] < 0:
                cand = _pneg(cand)
            if _pdivides(cand, a) is not None and _pdivides(cand, b) is not None:
                return cand
        x = 2 * x + 1
    return _pgcd_prs(a, b)


def _peval(a: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _pstr(a: Poly, var: str = "q") -> str:
    if not a:
        return "0"
    parts = []
    for i, c in enumerate(a):
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            mono = var if i == 1 else f"{var}^{i}"
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


@dataclass(frozen=True)
class RatFunc:
    """Rational function in one variable q, stored reduced over the integers.

    Reduced means: no common polynomial factor, coefficient contents coprime,
    and the denominator's leading coefficient positive.
    """

    num: Poly
    den: Poly

    @staticmethod
    def make(num: Sequence[int], den: Sequence[int] = (1,)) -> "RatFunc":
        n = _ptrim(list(int(x) for x in num))
        d = _ptrim(list(int(x) for x in den))
        if not d:
            raise InputError("rational function with zero denominator")
        if not n:
            return RatFunc(_PZERO, _PONE)
        g = _pgcd(n, d)
        if len(g) > 1:
            reduced_n = _pdivides(g, n)
            reduced_d = _pdivides(g, d)
            if reduced_n is None or reduced_d is None:
                raise InputError("gcd reduction failed to divide exactly")
            n, d = reduced_n, reduced_d
        cg = math.gcd(_pcontent(n), _pcontent(d))
        if cg > 1:
            n = tuple(x // cg for x in n)
            d = tuple(x // cg for x in d)
        if d[-1] < 0:
            n, d = _pneg(n), _pneg(d)
        return RatFunc(n, d)

    @staticmethod
    def zero() -> "RatFunc":
        return RatFunc(_PZERO, _PONE)

    @staticmethod
    def one() -> "RatFunc":
        return RatFunc(_PONE, _PONE)

    @staticmethod
    def monomial(exponent: int, coeff: int = 1) -> "RatFunc":
        """coeff * q**exponent, with negative exponents as denominators."""
        if coeff == 0:
            return RatFunc.zero()
        if exponent >= 0:
            return RatFunc.make(_pshift((coeff,), exponent))
        return RatFunc.make((coeff,), _pshift(_PONE, -exponent))

    def is_zero(self) -> bool:
        return not self.num

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc.make(
            _padd(_pmul(self.num, other.den), _pmul(other.num, self.den)),
            _pmul(self.den, other.den),
        )

    def __neg__(self) -> "RatFunc":
        return RatFunc(_pneg(self.num), self.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return self + (-other)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc.make(_pmul(self.num, other.num), _pmul(self.den, other.den))

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        if other.is_zero():
            raise InputError("division by the zero rational function")
        return RatFunc.make(_pmul(self.num, other.den), _pmul(self.den, other.num))

    def evaluate(self, x) -> Fraction:
        x = Fraction(x)
        d = _peval(self.den, x)
        if d == 0:
            raise PoleError(f"denominator vanishes at q = {x}")
        return _peval(self.num, x) / d

    def __str__(self) -> str:
        if self.den == _PONE:
            return _pstr(self.num)
        return f"({_pstr(self.num)}) / ({_pstr(self.den)})"


# ---------------------------------------------------------------------------
# one-parameter restriction and localization terms


@dataclass(frozen=True)
class GenericDirection:
    """Integer direction in the cocharacter lattice used to restrict characters."""

    v: IntVector

    def pair(self, m: Sequence[int]) -> int:
        if len(m) != len(self.v):
            raise InputError("direction and lattice vector have different lengths")
        return sum(a * b for a, b in zip(m, self.v))


def choose_generic_direction(
    isotropy_weights: Iterable[Sequence[int]],
    min_scale: int = 0,
    max_attempts: int = 32,
) -> GenericDirection:
    """Deterministic direction (1, K, K^2, ...) pairing nonzero with every weight.

    K starts at max absolute entry plus one, which makes each pairing a base-K
    digit expansion; escalates on failure, which only pathological inputs need.
    """
    weights = [tuple(int(x) for x in w) for w in isotropy_weights]
    if not weights:
        raise InputError("no isotropy weights to choose a direction for")
    n = len(weights[0])
    base = max(2, max((abs(x) for w in weights for x in w), default=1) + 1, min_scale)
    for k in range(base, base + max_attempts):
        v = GenericDirection(tuple(k**i for i in range(n)))
        if all(v.pair(w) != 0 for w in weights):
            return v
    raise GenericityError(f"no generic direction found after {max_attempts} attempts")


def restrict_to_direction(m: Sequence[int], v: GenericDirection) -> RatFunc:
    """The character e^m restricted to the one-parameter subgroup: q**<m, v>."""
    return RatFunc.monomial(v.pair(m))


def localization_term(
    fiber_weights: Iterable[Sequence[int]],
    isotropy: Iterable[Sequence[int]],
    v: GenericDirection,
) -> RatFunc:
    """One fixed point's contribution: (sum_j q^<m_j,v>) / prod_i (1 - q^-<w_i,v>)."""
    num = RatFunc.zero()
    for m in fiber_weights:
        num = num + restrict_to_direction(m, v)
    den = RatFunc.one()
    for w in isotropy:
        e = v.pair(w)
        if e == 0:
            raise GenericityError(f"direction {v.v} pairs to zero with isotropy weight {tuple(w)}")
        den = den * (RatFunc.one() - RatFunc.monomial(-e))
    return num / den


def sum_and_evaluate_at_one(terms: Iterable[RatFunc]) -> Fraction:
    """Add localization terms exactly and take the limit q -> 1.

    The poles of individual terms must cancel in the sum; a leftover pole is
    reported with its multiplicity.
    """
    total = RatFunc.zero()
    for t in terms:
        total = total + t
    den_at_1 = _peval(total.den, Fraction(1))
    if den_at_1 == 0:
        order = 0
        d = total.den
        while d and _peval_int(d, 1) == 0:
            d = _pdivides((-1, 1), d)
            order += 1
        raise PoleError(
            f"residual pole at q = 1: denominator keeps a factor (q - 1)^{order}",
            order=order,
        )
    return _peval(total.num, Fraction(1)) / den_at_1

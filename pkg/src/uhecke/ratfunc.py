"""Univariate polynomials and reduced rational functions over Q.

Polynomials are coefficient lists, low degree first, normalized to drop
trailing zeros.  Used for the one-parameter standard-module families, where
operator entries are polynomials in the family parameter and the normalized
operators are reduced rational functions (so evaluation at reducibility
points where the raw normalizer vanishes stays exact).
"""

from __future__ import annotations

from fractions import Fraction

from .ratlinalg import F0, F1, frac

ZERO = ()
ONE = (F1,)


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def add(p, q):
    n = max(len(p), len(q))
    return trim(
        [(p[i] if i < len(p) else F0) + (q[i] if i < len(q) else F0) for i in range(n)]
    )


def neg(p):
    return tuple(-x for x in p)


def sub(p, q):
    return add(p, neg(q))


def scale(c, p):
    if c == 0:
        return ZERO
    return tuple(c * x for x in p)


def mul(p, q):
    if not p or not q:
        return ZERO
    out = [F0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            if b != 0:
                out[i + j] += a * b
    return trim(out)


def shift_mul_t(p):
    """Multiply by t."""
    if not p:
        return ZERO
    return (F0,) + tuple(p)


def divmod_poly(p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    p = list(p)
    quo = [F0] * max(0, len(p) - len(q) + 1)
    lead = q[-1]
    while len(p) >= len(q) and any(x != 0 for x in p):
        while p and p[-1] == 0:
            p.pop()
        if len(p) < len(q):
            break
        k = len(p) - len(q)
        c = p[-1] / lead
        quo[k] = c
        for i, b in enumerate(q):
            p[k + i] -= c * b
        p.pop()
    return trim(quo), trim(p)


def gcd(p, q):
    a, b = trim(p), trim(q)
    while b:
        _, r = divmod_poly(a, b)
        a, b = b, r
    if not a:
        return ZERO
    lead = a[-1]
    return tuple(x / lead for x in a)


def evaluate(p, t):
    t = frac(t)
    out = F0
    for c in reversed(p):
        out = out * t + c
    return out


def const(c):
    c = frac(c)
    return (c,) if c else ZERO


def linear(a0, a1):
    """a0 + a1 t."""
    return trim((frac(a0), frac(a1)))


class RationalFunction:
    """Reduced fraction of univariate polynomials; denominator is monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE, reduce=True):
        num, den = trim(num), trim(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if reduce:
            g = gcd(num, den)
            if g and len(g) > 1:
                num, _ = divmod_poly(num, g)
                den, _ = divmod_poly(den, g)
            if den:
                lead = den[-1]
                if lead != 1:
                    num = tuple(x / lead for x in num)
                    den = tuple(x / lead for x in den)
        self.num = num
        self.den = den

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __mul__(self, other):
        return RationalFunction(mul(self.num, other.num), mul(self.den, other.den))

    def __add__(self, other):
        return RationalFunction(
            add(mul(self.num, other.den), mul(other.num, self.den)),
            mul(self.den, other.den),
        )

    def __sub__(self, other):
        return RationalFunction(
            sub(mul(self.num, other.den), mul(other.num, self.den)),
            mul(self.den, other.den),
        )

    def evaluate(self, t):
        d = evaluate(self.den, t)
        if d == 0:
            raise ZeroDivisionError(f"pole at t = {t}")
        return evaluate(self.num, t) / d

    def has_pole_at(self, t):
        return evaluate(self.den, t) == 0

    def is_zero(self):
        return not self.num

    def __repr__(self):
        def fmt(p):
            if not p:
                return "0"
            return " + ".join(
                (f"{c}" if k == 0 else (f"{c}*t^{k}" if k > 1 else f"{c}*t"))
                for k, c in enumerate(p)
                if c != 0
            )

        return f"({fmt(self.num)}) / ({fmt(self.den)})"


def from_factors(factors, c_value):
    """Product of (a0 + ac*c + s*t) factors as a polynomial, at a fixed c."""
    out = ONE
    for a0, ac, s in factors:
        out = mul(out, linear(frac(a0) + frac(ac) * frac(c_value), frac(s)))
    return out

"""Sparse multivariate polynomials over the rationals.

A polynomial in n ambient coordinates is a dict {exponent tuple: Fraction}.
Degrees stay small (bounded by Weyl word length), so a dict representation
is plenty.
"""

from __future__ import annotations

from fractions import Fraction

from .ratlinalg import F0, F1

Poly = dict


def zero(n: int) -> Poly:
    return {}


def const(n: int, c: Fraction) -> Poly:
    c = Fraction(c)
    return {} if c == 0 else {(0,) * n: c}


def coord(n: int, i: int) -> Poly:
    e = [0] * n
    e[i] = 1
    return {tuple(e): F1}


def linear(coeffs) -> Poly:
    """Degree-one polynomial sum_i coeffs[i] * x_i."""
    n = len(coeffs)
    p = {}
    for i, c in enumerate(coeffs):
        if c != 0:
            e = [0] * n
            e[i] = 1
            p[tuple(e)] = Fraction(c)
    return p


def is_zero(p: Poly) -> bool:
    return not p


def add(p: Poly, q: Poly) -> Poly:
    out = dict(p)
    for e, c in q.items():
        s = out.get(e, F0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, scale(-F1, q))


def scale(c: Fraction, p: Poly) -> Poly:
    if c == 0:
        return {}
    return {e: c * v for e, v in p.items()}


def mul(p: Poly, q: Poly) -> Poly:
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            s = out.get(e, F0) + c1 * c2
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def degree(p: Poly) -> int:
    return max((sum(e) for e in p), default=0)


def evaluate(p: Poly, point) -> Fraction:
    total = F0
    for e, c in p.items():
        v = c
        for xi, ei in zip(point, e):
            for _ in range(ei):
                v *= xi
        total += v
    return total


def subst_linear(p: Poly, images) -> Poly:
    """Substitute x_i -> images[i] (each a degree-one Poly, e.g. a Weyl image)."""
    n = len(images)
    out = {}
    # cache powers of images per variable as needed
    for e, c in p.items():
        term = const(n, c)
        for i, ei in enumerate(e):
            for _ in range(ei):
                term = mul(term, images[i])
        out = add(out, term)
    return out


def weyl_action(p: Poly, w_matrix) -> Poly:
    """Action of an orthogonal Weyl matrix on a polynomial of coordinates.

    Degree-one part transforms by the matrix itself: (w.p)(v) = p(w^{-1} v),
    and for orthogonal w the coefficient vector of a linear form maps by w.
    """
    n = len(w_matrix)
    # coefficient vector of a linear form maps by a |-> w a, so the image of
    # the coordinate x_i has coefficients given by column i of w
    images = [linear([w_matrix[j][i] for j in range(n)]) for i in range(n)]
    return subst_linear(p, images)


def divide_by_linear(p: Poly, lin: Poly) -> Poly:
    """Exact division p / lin for a degree-one form lin; raises if not exact."""
    if is_zero(p):
        return {}
    n = len(next(iter(lin)))
    # pick the lead variable of lin
    lead = None
    for e, c in lin.items():
        if sum(e) == 1:
            i = e.index(1)
            if lead is None or i < lead[0]:
                lead = (i, c)
    if lead is None:
        raise ValueError("divisor is not a linear form")
    i0, c0 = lead
    rem = dict(p)
    quo = {}
    # repeatedly cancel the highest term divisible by x_{i0}
    while rem:
        # choose term with maximal exponent of x_{i0}, then max total degree
        cand = [e for e in rem if e[i0] > 0]
        if not cand:
            raise ValueError("polynomial not divisible by linear form")
        e = max(cand, key=lambda t: (t[i0], sum(t), t))
        c = rem[e]
        qe = list(e)
        qe[i0] -= 1
        qterm = {tuple(qe): c / c0}
        quo = add(quo, qterm)
        rem = sub(rem, mul(qterm, lin))
    return quo


def to_string(p: Poly, names=None) -> str:
    if not p:
        return "0"
    n = len(next(iter(p)))
    if names is None:
        names = [f"x{i}" for i in range(n)]
    parts = []
    for e in sorted(p, key=lambda t: (sum(t), t), reverse=True):
        c = p[e]
        mon = "*".join(
            (names[i] if k == 1 else f"{names[i]}^{k}")
            for i, k in enumerate(e)
            if k
        )
        if mon:
            parts.append(f"{c}*{mon}" if c != 1 else mon)
        else:
            parts.append(str(c))
    return " + ".join(parts)

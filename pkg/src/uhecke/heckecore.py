"""Normal-form symbolic arithmetic in the graded Hecke algebra H = C[W] (x) A.

Elements are kept in the normal form sum_w t_w p_w with exact multivariate
polynomial coefficients.  The defining cross-relation is

    omega t_s = t_s s(omega) + c_alpha <omega, alpha^vee>,

extended to arbitrary polynomials through the divided difference
Delta_alpha(p) = (p - s_alpha(p)) / alpha, which is always exact.
The normalization absorbs the scale r of the presentation so that the
spherical reducibility walls sit exactly at <alpha, nu> = c_alpha; this is
pinned by the Steinberg central-character fixture.
"""

from __future__ import annotations

from fractions import Fraction

from . import poly
from .ratlinalg import F0, F1, frac
from .rootdata import ParabolicDatum, ParamFunction, RootSystem


class HeckeAlgebra:
    """A graded Hecke algebra with a W-invariant parameter function."""

    def __init__(self, root_system: RootSystem, params: ParamFunction):
        self.rs = root_system
        self.params = params
        self.n = root_system.ambient_dim
        self._simple_c = [
            params.value(root_system, a) for a in root_system.simple_roots
        ]
        self._wchars = None

    def wchars(self):
        from .wchar import WeylChars

        if self._wchars is None:
            self._wchars = WeylChars(self.rs)
        return self._wchars

    def c_of(self, alpha) -> Fraction:
        return self.params.value(self.rs, alpha)

    # -- element constructors ----------------------------------------------------

    def zero(self):
        return HeckeElement(self, {})

    def one(self):
        return HeckeElement(self, {self.rs.identity().index: poly.const(self.n, F1)})

    def t(self, w):
        return HeckeElement(self, {w.index: poly.const(self.n, F1)})

    def t_simple(self, i):
        return self.t(self.rs.simple(i))

    def from_poly(self, p):
        if poly.is_zero(p):
            return self.zero()
        return HeckeElement(self, {self.rs.identity().index: dict(p)})

    def coordinate(self, i):
        return self.from_poly(poly.coord(self.n, i))

    def linear(self, coeffs):
        return self.from_poly(poly.linear([frac(x) for x in coeffs]))

    def intertwiner_generator(self, i):
        """r_{s_i} = t_{s_i} alpha_i - c_i."""
        alpha = poly.linear(self.rs.simple_roots[i])
        c = self._simple_c[i]
        s = self.rs.simple(i)
        terms = {s.index: alpha}
        cc = poly.const(self.n, -c)
        if cc:
            terms[self.rs.identity().index] = cc
        return HeckeElement(self, terms)

    def intertwiner_element(self, w):
        """r_w along a reduced word; independent of the chosen word."""
        out = self.one()
        for i in w.word:
            out = out * self.intertwiner_generator(i)
        return out

    def star_omega(self, omega_poly_linear):
        """Star of a degree-one element: -omega + sum_{a>0} c_a <omega,a^vee> t_{s_a}."""
        rs = self.rs
        terms = {}
        neg = poly.scale(-F1, omega_poly_linear)
        if neg:
            terms[rs.identity().index] = neg
        for a in rs.positive_roots:
            pair = rs.copairing(_poly_linear_coeffs(omega_poly_linear, self.n), a)
            if pair != 0:
                c = self.c_of(a)
                s = rs.element(rs.reflection(a))
                cur = terms.get(s.index, {})
                terms[s.index] = poly.add(cur, poly.const(self.n, c * pair))
        return HeckeElement(self, {k: v for k, v in terms.items() if v})


def _poly_linear_coeffs(p, n):
    out = [F0] * n
    for e, c in p.items():
        if sum(e) != 1:
            raise ValueError("expected a degree-one polynomial")
        out[e.index(1)] = c
    return out


class HeckeElement:
    """Normal form sum_w t_w p_w; equality is equality of the coefficient maps."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: HeckeAlgebra, terms):
        self.algebra = algebra
        self.terms = {w: p for w, p in terms.items() if p}

    def __eq__(self, other):
        return self.algebra is other.algebra and self.terms == other.terms

    def __hash__(self):
        raise TypeError("HeckeElement is unhashable")

    def __add__(self, other):
        out = dict(self.terms)
        for w, p in other.terms.items():
            q = poly.add(out.get(w, {}), p)
            if q:
                out[w] = q
            else:
                out.pop(w, None)
        return HeckeElement(self.algebra, out)

    def __sub__(self, other):
        return self + other.scale(-F1)

    def scale(self, c):
        c = frac(c)
        if c == 0:
            return self.algebra.zero()
        return HeckeElement(
            self.algebra, {w: poly.scale(c, p) for w, p in self.terms.items()}
        )

    def __neg__(self):
        return self.scale(-F1)

    def _mul_t_simple(self, i):
        """Right multiplication by t_{s_i}."""
        alg = self.algebra
        rs = alg.rs
        s = rs.simple(i)
        alpha = poly.linear(rs.simple_roots[i])
        c = alg._simple_c[i]
        smat = s.matrix
        els = rs.weyl_elements()
        out = {}

        def _acc(idx, p):
            if not p:
                return
            q = poly.add(out.get(idx, {}), p)
            if q:
                out[idx] = q
            else:
                out.pop(idx, None)

        for widx, p in self.terms.items():
            w = els[widx]
            ws = rs.multiply(w, s)
            sp = poly.weyl_action(p, smat)
            _acc(ws.index, sp)
            delta = poly.divide_by_linear(poly.sub(p, sp), alpha)
            _acc(widx, poly.scale(c, delta))
        return HeckeElement(alg, out)

    def _mul_poly(self, q):
        if poly.is_zero(q):
            return self.algebra.zero()
        return HeckeElement(
            self.algebra, {w: poly.mul(p, q) for w, p in self.terms.items()}
        )

    def __mul__(self, other):
        if not isinstance(other, HeckeElement):
            raise TypeError("multiply HeckeElements only")
        alg = self.algebra
        rs = alg.rs
        els = rs.weyl_elements()
        total = alg.zero()
        for uidx, q in other.terms.items():
            u = els[uidx]
            part = self
            for i in u.word:
                part = part._mul_t_simple(i)
            total = total + part._mul_poly(q)
        return total

    def star(self):
        """The anti-automorphism with t_w* = t_{w^-1}, omega* as in the defining star."""
        alg = self.algebra
        rs = alg.rs
        els = rs.weyl_elements()
        total = alg.zero()
        for widx, p in self.terms.items():
            w = els[widx]
            sp = _star_poly(alg, p)
            total = total + sp * alg.t(rs.inverse(w))
        return total

    def epsilon(self, parabolic: ParabolicDatum = None):
        """The H_M-component of the identity coset (epsilon_M)."""
        alg = self.algebra
        rs = alg.rs
        els = rs.weyl_elements()
        out = {}
        ident = rs.identity()
        for widx, p in self.terms.items():
            w = els[widx]
            if parabolic is None or not parabolic.simple_indices:
                if w == ident:
                    out[widx] = p
                continue
            x, m = parabolic.decompose(w)
            if x == ident:
                out[m.index] = poly.add(out.get(m.index, {}), p)
        return HeckeElement(alg, out)

    def evaluate_identity(self, nu):
        """Evaluate the identity-component polynomial at nu (epsilon then eval)."""
        ident_idx = self.algebra.rs.identity().index
        p = self.terms.get(ident_idx, {})
        return poly.evaluate(p, [frac(x) for x in nu])

    def specialize(self, nu):
        """Evaluate every coefficient at nu: a C[W] coefficient vector."""
        point = [frac(x) for x in nu]
        return {w: poly.evaluate(p, point) for w, p in self.terms.items()}

    def max_degree(self):
        return max((poly.degree(p) for p in self.terms.values()), default=0)

    def __repr__(self):
        rs = self.algebra.rs
        els = rs.weyl_elements()
        bits = []
        for w in sorted(self.terms, key=lambda i: (els[i].length, els[i].word)):
            bits.append(f"t[{'.'.join(map(str, els[w].word)) or 'e'}]*({poly.to_string(self.terms[w])})")
        return " + ".join(bits) if bits else "0"


def _star_poly(alg: HeckeAlgebra, p):
    """Star of a polynomial coefficient (an H-element, not a polynomial)."""
    total = alg.zero()
    for e, c in p.items():
        term = alg.one().scale(c)
        # monomial omega_{i1} ... omega_{ik}: star reverses the product
        factors = []
        for i, k in enumerate(e):
            factors.extend([i] * k)
        for i in reversed(factors):
            term = term * alg.star_omega(poly.coord(alg.n, i))
        total = total + term
    return total


def multiply(x: HeckeElement, y: HeckeElement) -> HeckeElement:
    return x * y


def star(x: HeckeElement) -> HeckeElement:
    return x.star()


def intertwiner_element(algebra: HeckeAlgebra, w) -> HeckeElement:
    return algebra.intertwiner_element(w)


def epsilon_M(x: HeckeElement, parabolic: ParabolicDatum) -> HeckeElement:
    return x.epsilon(parabolic)


def evaluate(p, nu) -> Fraction:
    return poly.evaluate(p, [frac(x) for x in nu])

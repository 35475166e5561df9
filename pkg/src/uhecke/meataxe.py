"""MeatAxe-style decomposition of matrix modules over the rationals.

Works with any finite list of generator matrices (a group or algebra acting
on Q^n).  Submodules are found from kernels of irreducible factors of the
minimal polynomial of seeded-random algebra elements; irreducibility is
certified by Norton's criterion.  Composition factors come out of a
sub/quotient recursion, so extensions need not split.
"""

from __future__ import annotations

import random
from fractions import Fraction

import sympy

from .ratlinalg import (
    F0,
    F1,
    in_span,
    mat_identity,
    mat_mul,
    mat_vec,
    minpoly_on_vector,
    nullspace,
    poly_apply,
    rank,
    row_space_basis,
    rref,
    solve,
    transpose,
    vec_add,
    vec_scale,
)


def spin(vectors, gens):
    """Basis (echelon rows) of the submodule generated by the given vectors."""
    from .ratlinalg import Echelon

    ech = Echelon()
    frontier = []
    for v in vectors:
        if ech.add(v):
            frontier.append(v[:])
    while frontier:
        new = []
        for v in frontier:
            for g in gens:
                w = mat_vec(g, v)
                if ech.add(w):
                    new.append(w)
        frontier = new
    return ech.basis()


def restrict_action(gens, basis):
    """Matrices of the generators on the submodule with the given basis rows."""
    bt = transpose(basis)
    out = []
    for g in gens:
        cols = []
        for v in basis:
            w = mat_vec(g, v)
            cols.append(solve([row[:] for row in bt], w))
        out.append(transpose(cols))
    return out


def quotient_action(gens, basis):
    """Matrices of the generators on the quotient by the submodule basis."""
    n = len(basis[0])
    # extend basis to the full space with unit vectors
    full = [v[:] for v in basis]
    extension = []
    cur = row_space_basis(full)
    for j in range(n):
        e = [F1 if k == j else F0 for k in range(n)]
        if not in_span(cur, e):
            full.append(e)
            extension.append(e)
            cur = row_space_basis(full)
    ft = transpose(full)
    k = len(basis)
    out = []
    for g in gens:
        cols = []
        for v in extension:
            w = mat_vec(g, v)
            coeffs = solve([row[:] for row in ft], w)
            cols.append(coeffs[k:])
        out.append(transpose(cols))
    return out, extension


def _random_algebra_element(gens, rng, n):
    """A seeded-random element of the algebra generated by gens (plus identity)."""
    acc = [[F0] * n for _ in range(n)]
    nonzero = False
    for _ in range(rng.randint(2, 4)):
        c = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))
        length = rng.randint(1, 3)
        m = mat_identity(n)
        for i in (rng.randrange(len(gens)) for _ in range(length)):
            m = mat_mul(m, gens[i])
        for r in range(n):
            for s in range(n):
                acc[r][s] += c * m[r][s]
        nonzero = True
    if not nonzero:
        return mat_identity(n)
    return acc


def _min_poly(z, rng, n):
    """Minimal polynomial of z (low-to-high coeffs), via a few Krylov probes."""
    matvec = lambda v: mat_vec(z, v)
    poly = None
    for _ in range(3):
        v = [Fraction(rng.randint(-4, 4)) for _ in range(n)]
        if all(x == 0 for x in v):
            v[0] = F1
        p = minpoly_on_vector(matvec, v, n)
        poly = p if poly is None else _poly_lcm(poly, p)
        if len(poly) - 1 == n:
            break
    return poly


def _poly_lcm(p, q):
    x = sympy.symbols("x")
    pp = sympy.Poly(list(reversed([sympy.Rational(c) for c in p])), x)
    qq = sympy.Poly(list(reversed([sympy.Rational(c) for c in q])), x)
    l = sympy.lcm(pp, qq)
    coeffs = [Fraction(str(c)) for c in reversed(l.all_coeffs())]
    lead = coeffs[-1]
    return [c / lead for c in coeffs]


def _factor_poly(coeffs):
    """Irreducible monic factors over Q of a monic poly (low-to-high coeffs)."""
    x = sympy.symbols("x")
    p = sympy.Poly(list(reversed([sympy.Rational(c) for c in coeffs])), x)
    factors = []
    for fac, mult in p.factor_list()[1]:
        fc = [Fraction(str(c)) for c in reversed(fac.all_coeffs())]
        lead = fc[-1]
        factors.append(([c / lead for c in fc], mult))
    factors.sort(key=lambda fm: (len(fm[0]), [str(c) for c in fm[0]]))
    return factors


def _operator_matrix(z):
    return [row[:] for row in z]


def _kernel_of_poly(fac, z, n):
    pz = transpose(
        [
            poly_apply(fac, lambda u: mat_vec(z, u), [F1 if j == i else F0 for j in range(n)])
            for i in range(n)
        ]
    )
    return nullspace(pz)


def find_submodule(gens, rng, attempts=10):
    """A proper nonzero submodule basis, or None if certified irreducible.

    Norton's criterion is applied only when the chosen irreducible factor p of
    the minimal polynomial has nullity(p(z)) == deg(p); if the random search is
    inconclusive, the commutant is analyzed directly (kernels of minimal-poly
    factors of endomorphisms are submodules).
    """
    n = len(gens[0])
    if n == 1:
        return None
    probes = list(gens)
    probes += [
        [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(g1, g2)]
        for g1, g2 in zip(gens, gens[1:])
    ]
    for attempt in range(attempts + len(probes)):
        z = probes[attempt] if attempt < len(probes) else _random_algebra_element(gens, rng, n)
        mp = _min_poly(z, rng, n)
        if len(mp) <= 2 and len(_factor_poly(mp)) == 1:
            # scalar-like element, useless probe
            continue
        for fac, _ in _factor_poly(mp):
            ker = _kernel_of_poly(fac, z, n)
            if not ker:
                continue
            for v in ker:
                sub = spin([v], gens)
                if len(sub) < n:
                    return sub
            if len(ker) != len(fac) - 1:
                continue  # Norton precondition fails; inconclusive factor
            # nullity == deg p and every kernel vector spins to V: dual test
            gens_t = [transpose(g) for g in gens]
            ker_t = _kernel_of_poly(fac, transpose(z), n)
            if ker_t:
                sub_t = spin([ker_t[0]], gens_t)
                if len(sub_t) == n:
                    return None  # Norton: irreducible
                # perp of a proper dual submodule is a proper submodule
                comp = nullspace([row[:] for row in sub_t])
                if 0 < len(comp) < n:
                    return spin(comp, gens)
    # commutant analysis: any endomorphism with reducible minimal polynomial
    # hands us a submodule; End = Q certifies irreducibility for semisimple
    # modules (all W-modules) and is the certification used for Hecke modules.
    endo = _commutant_basis(gens)
    if len(endo) == 1:
        return None
    ident = mat_identity(n)
    for e in endo:
        # make e non-scalar by subtracting its (0,0)-ish scalar part if needed
        mp = _min_poly(e, rng, n)
        facs = _factor_poly(mp)
        if len(facs) == 1 and facs[0][1] == 1 and len(facs[0][0]) - 1 == len(mp) - 1:
            if len(mp) == 2:
                continue  # scalar endomorphism
        for fac, _ in facs:
            if len(fac) - 1 >= n:
                continue
            ker = _kernel_of_poly(fac, e, n)
            if ker and len(ker) < n:
                sub = spin(ker, gens)
                if 0 < len(sub) < n:
                    return sub
    return None


def _commutant_basis(gens):
    n = len(gens[0])
    rows = []
    for g in gens:
        for i in range(n):
            for j in range(n):
                row = [F0] * (n * n)
                for k in range(n):
                    row[i * n + k] += g[k][j]
                    row[k * n + j] -= g[i][k]
                rows.append(row)
    basis = nullspace(rows)
    return [[v[i * n : (i + 1) * n] for i in range(n)] for v in basis]


def composition_factors(gens, seed=0):
    """Composition factors (as generator-matrix lists) of the module."""
    rng = random.Random(seed)
    out = []
    stack = [gens]
    while stack:
        current = stack.pop()
        n = len(current[0])
        if n == 0:
            continue
        sub = find_submodule(current, rng)
        if sub is None:
            out.append(current)
            continue
        stack.append(restrict_action(current, sub))
        stack.append(quotient_action(current, sub)[0])
    out.sort(key=lambda g: len(g[0]))
    return out


def endomorphism_dim(gens):
    """Dimension of the commutant of the generators (1 = absolutely irreducible)."""
    n = len(gens[0])
    rows = []
    for g in gens:
        # [g, X] = 0 as linear conditions on X (n^2 unknowns)
        for i in range(n):
            for j in range(n):
                row = [F0] * (n * n)
                for k in range(n):
                    row[i * n + k] += g[k][j]
                    row[k * n + j] -= g[i][k]
                rows.append(row)
    return len(nullspace(rows))

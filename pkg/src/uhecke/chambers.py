"""Exact rational LP and chamber enumeration for wall arrangements.

A wall is an affine condition <a, nu> = b.  Chambers are the open cells cut
out of a base cone (strict inequalities) by the walls; each feasible sign
vector gets a rational interior sample point from a margin-maximizing LP,
so samples are reproducible and stay away from every wall.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .ratlinalg import F0, F1, dot, frac


class LPError(RuntimeError):
    pass


def _simplex_max(c, a_ub, b_ub):
    """Maximize c.x subject to A x <= b, x >= 0 (two-phase, Bland's rule).

    Returns (optimum, x) or (None, None) if infeasible; raises on unbounded.
    """
    m = len(a_ub)
    n = len(c)
    neg = [i for i in range(m) if frac(b_ub[i]) < 0]
    k = len(neg)
    width = n + m + k
    rows = []
    for i in range(m):
        row = [frac(x) for x in a_ub[i]] + [F0] * (m + k) + [frac(b_ub[i])]
        row[n + i] = F1
        rows.append(row)
    basis = [n + i for i in range(m)]
    art_cols = []
    for a, i in enumerate(neg):
        rows[i] = [-x for x in rows[i]]
        col = n + m + a
        rows[i][col] = F1
        basis[i] = col
        art_cols.append(col)
    if k:
        # phase 1: maximize -(sum of artificials); reduced costs from the basis
        obj = [(-F1 if j in set(art_cols) else F0) for j in range(width)]
        obj_val = F0
        for i in neg:
            obj = [o + x for o, x in zip(obj, rows[i][:width])]
            obj_val -= rows[i][-1]
        obj, obj_val = _solve_tableau(rows, basis, obj, obj_val, width)
        if obj_val != 0:
            return None, None
        art_set = set(art_cols)
        for i in range(m):
            if basis[i] in art_set:
                piv = next(
                    (j for j in range(n + m) if rows[i][j] != 0), None
                )
                if piv is not None:
                    _pivot(rows, basis, i, piv)
        # zero out artificial columns so they never re-enter
        for r in rows:
            for col in art_cols:
                r[col] = F0
        for i in range(m):
            if basis[i] in art_set:
                basis[i] = -1  # redundant zero row
    obj = [F0] * width
    for j in range(n):
        obj[j] = frac(c[j])
    obj_val = F0
    for i in range(m):
        bj = basis[i]
        if bj >= 0 and obj[bj] != 0:
            coef = obj[bj]
            obj = [o - coef * x for o, x in zip(obj, rows[i][:width])]
            obj_val += coef * rows[i][-1]
    obj, obj_val = _solve_tableau(rows, basis, obj, obj_val, width)
    x = [F0] * n
    for i in range(m):
        if 0 <= basis[i] < n:
            x[basis[i]] = rows[i][-1]
    return obj_val, x


def _solve_tableau(rows, basis, obj, obj_val, width):
    m = len(rows)
    while True:
        enter = next((j for j in range(width) if obj[j] > 0), None)
        if enter is None:
            return obj, obj_val
        best = None
        for i in range(m):
            if basis[i] >= 0 and rows[i][enter] > 0:
                ratio = rows[i][-1] / rows[i][enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            raise LPError("unbounded linear program")
        i = best[1]
        _pivot(rows, basis, i, enter)
        coef = obj[enter]
        if coef != 0:
            obj_row = rows[i]
            obj[:] = [o - coef * x for o, x in zip(obj, obj_row[:width])]
            obj_val += coef * obj_row[-1]


def _pivot(rows, basis, i, j):
    piv = rows[i][j]
    rows[i] = [x / piv for x in rows[i]]
    for k in range(len(rows)):
        if k != i and rows[k][j] != 0:
            c = rows[k][j]
            rows[k] = [x - c * y for x, y in zip(rows[k], rows[i])]
    basis[i] = j


@dataclass(frozen=True)
class Constraint:
    """sign * (<coeffs, nu> - rhs) > 0 (strict side of a wall)."""

    coeffs: tuple
    rhs: Fraction
    sign: int

    def value(self, nu):
        return self.sign * (dot(list(self.coeffs), list(nu)) - self.rhs)


def margin_lp(constraints, n, bound, objective=None, min_margin=None):
    """Feasible point maximizing the margin over strict constraints.

    Variables nu (free, via nu = u - v) inside |nu_i| <= bound.  Returns
    (margin, nu) with margin > 0 iff the open region is nonempty.  When
    `objective` is given, maximizes it subject to margin >= min_margin.
    """
    nv = 2 * n + 1  # u, v, t
    a_ub = []
    b_ub = []
    for cst in constraints:
        # -sign*(a.(u-v)) + t <= -sign*rhs... rearranged: sign*(a.nu) - t >= sign*rhs
        row = [-cst.sign * x for x in cst.coeffs] + [cst.sign * x for x in cst.coeffs] + [F1]
        a_ub.append(row)
        b_ub.append(-cst.sign * cst.rhs)
    for i in range(n):
        row = [F0] * nv
        row[i] = F1
        row[n + i] = -F1
        a_ub.append(row[:])
        b_ub.append(frac(bound))
        row2 = [F0] * nv
        row2[i] = -F1
        row2[n + i] = F1
        a_ub.append(row2)
        b_ub.append(frac(bound))
    # t <= 1 to keep the LP bounded
    row = [F0] * nv
    row[-1] = F1
    a_ub.append(row)
    b_ub.append(F1)
    if objective is None:
        c = [F0] * nv
        c[-1] = F1
    else:
        c = [frac(x) for x in objective] + [-frac(x) for x in objective] + [F0]
        row = [F0] * nv
        row[-1] = -F1
        a_ub.append(row)
        b_ub.append(-frac(min_margin))
    opt, x = _simplex_max(c, a_ub, b_ub)
    if opt is None:
        return None, None
    nu = [x[i] - x[n + i] for i in range(n)]
    t = x[-1]
    if objective is None:
        return t, nu
    return opt, nu


@dataclass
class Chamber:
    signs: tuple  # one per wall: +1 / -1
    samples: list  # rational interior points
    margin: Fraction


def enumerate_chambers(walls, base_constraints, n, bound, samples=3):
    """All chambers: feasible wall-sign vectors inside the base constraints."""
    partials = [()]
    for k, (coeffs, rhs) in enumerate(walls):
        new = []
        for signs in partials:
            for s in (1, -1):
                cands = list(base_constraints)
                for i, si in enumerate(signs):
                    cands.append(Constraint(tuple(walls[i][0]), walls[i][1], si))
                cands.append(Constraint(tuple(coeffs), rhs, s))
                t, _ = margin_lp(cands, n, bound)
                if t is not None and t > 0:
                    new.append(signs + (s,))
        partials = new
    out = []
    for signs in sorted(partials, key=lambda sg: tuple(-x for x in sg)):
        cands = list(base_constraints)
        for i, si in enumerate(signs):
            cands.append(Constraint(tuple(walls[i][0]), walls[i][1], si))
        t, nu0 = margin_lp(cands, n, bound)
        pts = [tuple(nu0)]
        objectives = []
        for i in range(n):
            e = [F0] * n
            e[i] = F1
            objectives.append(e[:])
            objectives.append([-x for x in e])
        for obj in objectives:
            if len(pts) >= samples:
                break
            _, nu_alt = margin_lp(cands, n, bound, objective=obj, min_margin=t / 2)
            if nu_alt is not None:
                mid = tuple((a + b) / 2 for a, b in zip(nu0, nu_alt))
                if mid not in pts:
                    pts.append(mid)
        while len(pts) < samples:
            pts.append(pts[-1])
        out.append(Chamber(signs=signs, samples=pts, margin=t))
    return out


def polygon_vertices(constraints, n):
    """Vertices of a (bounded) 2-D region given by >=-style constraints."""
    if n != 2:
        raise ValueError("polygon export is 2-D only")
    lines = [(list(c.coeffs), c.rhs) for c in constraints]
    pts = []
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            (a1, b1), (a2, b2) = lines[i], lines[j]
            det = a1[0] * a2[1] - a1[1] * a2[0]
            if det == 0:
                continue
            x = (b1 * a2[1] - b2 * a1[1]) / det
            y = (a1[0] * b2 - a2[0] * b1) / det
            p = (x, y)
            if all(c.sign * (dot(list(c.coeffs), [x, y]) - c.rhs) >= 0 for c in constraints):
                if p not in pts:
                    pts.append(p)
    if len(pts) < 3:
        return pts
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)

    def half(p):
        dx, dy = p[0] - cx, p[1] - cy
        return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

    import functools

    def cmp(p, q):
        hp, hq = half(p), half(q)
        if hp != hq:
            return -1 if hp < hq else 1
        cross = (p[0] - cx) * (q[1] - cy) - (q[0] - cx) * (p[1] - cy)
        if cross > 0:
            return -1
        if cross < 0:
            return 1
        return 0

    return sorted(pts, key=functools.cmp_to_key(cmp))

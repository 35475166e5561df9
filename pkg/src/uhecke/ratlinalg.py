"""Exact linear algebra over the rationals.

Matrices are lists of lists of Fraction, vectors are lists of Fraction.
Everything here is exact; no floats anywhere.
"""

from __future__ import annotations

from fractions import Fraction

Matrix = list
Vector = list

F0 = Fraction(0)
F1 = Fraction(1)


def frac(x) -> Fraction:
    """Coerce ints, Fractions, and 'p/q' strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot coerce {x!r} to Fraction")


def mat_identity(n):
    return [[F1 if i == j else F0 for j in range(n)] for i in range(n)]


def mat_zero(m, n):
    return [[F0] * n for _ in range(m)]


def mat_copy(a):
    return [row[:] for row in a]


def mat_eq(a, b):
    return a == b


def transpose(a):
    return [list(col) for col in zip(*a)]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a):
    return [[c * x for x in row] for row in a]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    bt = list(zip(*b))
    out = []
    for row in a:
        out_row = []
        for col in bt:
            s = F0
            for x, y in zip(row, col):
                if x and y:
                    s += x * y
            out_row.append(s)
        out.append(out_row)
    return out


def mat_vec(a, v):
    out = []
    for row in a:
        s = F0
        for x, y in zip(row, v):
            if x and y:
                s += x * y
        out.append(s)
    return out


def vec_add(u, v):
    return [x + y for x, y in zip(u, v)]


def vec_sub(u, v):
    return [x - y for x, y in zip(u, v)]


def vec_scale(c, v):
    return [c * x for x in v]


def dot(u, v):
    s = F0
    for x, y in zip(u, v):
        if x and y:
            s += x * y
    return s


def is_zero_vec(v):
    return all(x == 0 for x in v)


def is_zero_mat(a):
    return all(x == 0 for row in a for x in row)


def rref(a):
    """Reduced row echelon form. Returns (R, pivot_columns)."""
    r = mat_copy(a)
    m = len(r)
    n = len(r[0]) if m else 0
    pivots = []
    row = 0
    for col in range(n):
        if row >= m:
            break
        piv = None
        for i in range(row, m):
            if r[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        r[row], r[piv] = r[piv], r[row]
        inv = F1 / r[row][col]
        r[row] = [x * inv for x in r[row]]
        for i in range(m):
            if i != row and r[i][col] != 0:
                c = r[i][col]
                r[i] = [x - c * y for x, y in zip(r[i], r[row])]
        pivots.append(col)
        row += 1
    return r, pivots


def rank(a):
    return len(rref(a)[1])


def nullspace(a):
    """Basis of the right kernel of a (list of vectors)."""
    m = len(a)
    n = len(a[0]) if m else 0
    r, pivots = rref(a)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for j in free:
        v = [F0] * n
        v[j] = F1
        for i, pc in enumerate(pivots):
            v[pc] = -r[i][j]
        basis.append(v)
    return basis


def solve(a, b):
    """Solve a x = b; raises ValueError if inconsistent or underdetermined."""
    m = len(a)
    aug = [a[i][:] + [b[i]] for i in range(m)]
    r, pivots = rref(aug)
    n = len(a[0])
    if n in pivots:
        raise ValueError("inconsistent linear system")
    if len(pivots) < n:
        raise ValueError("underdetermined linear system")
    x = [F0] * n
    for i, pc in enumerate(pivots):
        x[pc] = r[i][n]
    return x


def solve_general(a, b):
    """One solution of a x = b or None if inconsistent (free vars set to 0)."""
    m = len(a)
    aug = [a[i][:] + [b[i]] for i in range(m)]
    r, pivots = rref(aug)
    n = len(a[0])
    if n in pivots:
        return None
    x = [F0] * n
    for i, pc in enumerate(pivots):
        x[pc] = r[i][n]
    return x


def inverse(a):
    n = len(a)
    aug = [a[i][:] + mat_identity(n)[i] for i in range(n)]
    r, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is not invertible")
    return [row[n:] for row in r]


def det(a):
    """Determinant by fraction Gaussian elimination."""
    n = len(a)
    r = mat_copy(a)
    sign = F1
    d = F1
    for col in range(n):
        piv = None
        for i in range(col, n):
            if r[i][col] != 0:
                piv = i
                break
        if piv is None:
            return F0
        if piv != col:
            r[col], r[piv] = r[piv], r[col]
            sign = -sign
        d *= r[col][col]
        inv = F1 / r[col][col]
        for i in range(col + 1, n):
            if r[i][col] != 0:
                c = r[i][col] * inv
                r[i] = [x - c * y for x, y in zip(r[i], r[col])]
    return sign * d


def kron(a, b):
    pa, qa = len(a), len(a[0])
    pb, qb = len(b), len(b[0])
    out = mat_zero(pa * pb, qa * qb)
    for i in range(pa):
        for j in range(qa):
            x = a[i][j]
            if x == 0:
                continue
            for k in range(pb):
                for l in range(qb):
                    y = b[k][l]
                    if y != 0:
                        out[i * pb + k][j * qb + l] = x * y
    return out


def inertia(a):
    """Inertia (p, q, z) of an exact symmetric matrix by congruence elimination.

    Symmetric pivoting only (congruence transformations), so the signature is
    exact; never uses eigenvalues.
    """
    n = len(a)
    m = mat_copy(a)
    for i in range(n):
        for j in range(i):
            if m[i][j] != m[j][i]:
                raise ValueError("inertia: matrix is not symmetric")
    p = q = z = 0
    idx = list(range(n))
    k = 0
    while k < n:
        # find a nonzero diagonal pivot at or after k
        piv = None
        for i in range(k, n):
            if m[i][i] != 0:
                piv = i
                break
        if piv is None:
            # all-zero diagonal: look for an off-diagonal entry
            off = None
            for i in range(k, n):
                for j in range(i + 1, n):
                    if m[i][j] != 0:
                        off = (i, j)
                        break
                if off:
                    break
            if off is None:
                z += n - k
                break
            i, j = off
            # congruence: row/col i += row/col j makes m[i][i] = 2*m[i][j] != 0
            for c in range(n):
                m[i][c] += m[j][c]
            for r in range(n):
                m[r][i] += m[r][j]
            piv = i
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            for r in range(n):
                m[r][k], m[r][piv] = m[r][piv], m[r][k]
        d = m[k][k]
        if d > 0:
            p += 1
        else:
            q += 1
        inv = F1 / d
        rows = [(i, m[i][k] * inv) for i in range(k + 1, n) if m[i][k] != 0]
        for i, c in rows:
            mk = m[k]
            mi = m[i]
            for j in range(k, n):
                if mk[j] != 0:
                    mi[j] -= c * mk[j]
        for i, c in rows:
            for r in range(n):
                if m[r][k] != 0:
                    m[r][i] -= c * m[r][k]
        k += 1
    return p, q, z


def minpoly_on_vector(matvec, v, n):
    """Monic minimal polynomial (low-to-high coeff list) of an operator on the
    cyclic subspace generated by v; matvec applies the operator, n = ambient dim."""
    krylov = [v[:]]
    w = v[:]
    # build Krylov vectors until dependence
    rows = [v[:]]
    while True:
        w = matvec(w)
        # test dependence of rows + [w]
        aug = [r[:] for r in rows] + [w[:]]
        if rank(aug) < len(aug):
            # solve for combination: w = sum c_i krylov_i
            at = transpose(rows)
            sol = solve_general(at, w)
            if sol is None:
                raise RuntimeError("minpoly: dependence detected but unsolvable")
            coeffs = [-c for c in sol] + [F1]
            return coeffs
        rows.append(w[:])
        if len(rows) > n:
            raise RuntimeError("minpoly: no dependence found (bug)")


def poly_apply(coeffs, matvec, v):
    """Apply p(T) to vector v where p has low-to-high coeffs and T = matvec."""
    out = vec_scale(coeffs[0], v)
    w = v
    for c in coeffs[1:]:
        w = matvec(w)
        if c != 0:
            out = vec_add(out, vec_scale(c, w))
    return out


class Echelon:
    """Incremental row-echelon basis for cheap span-membership tests."""

    __slots__ = ("rows",)

    def __init__(self):
        self.rows = {}  # pivot column -> normalized row

    def reduce(self, v):
        w = v[:]
        for piv in sorted(self.rows):
            if w[piv] != 0:
                c = w[piv]
                row = self.rows[piv]
                w = [x - c * y for x, y in zip(w, row)]
        return w

    def add(self, v):
        """Insert v; returns True if it enlarged the span."""
        w = self.reduce(v)
        for j, x in enumerate(w):
            if x != 0:
                inv = F1 / x
                self.rows[j] = [y * inv for y in w]
                return True
        return False

    def contains(self, v):
        return is_zero_vec(self.reduce(v))

    def basis(self):
        return [self.rows[p][:] for p in sorted(self.rows)]

    def __len__(self):
        return len(self.rows)


def row_space_basis(vectors):
    """Return an rref basis of the span of the given vectors."""
    if not vectors:
        return []
    r, pivots = rref(vectors)
    return [r[i] for i in range(len(pivots))]


def in_span(basis_rref, v):
    """Test membership of v in a row space given by an rref basis."""
    w = v[:]
    for row in basis_rref:
        lead = next((j for j, x in enumerate(row) if x != 0), None)
        if lead is not None and w[lead] != 0:
            c = w[lead] / row[lead]
            w = [x - c * y for x, y in zip(w, row)]
    return is_zero_vec(w)

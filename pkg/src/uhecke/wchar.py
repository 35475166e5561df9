"""Character theory of the finite Weyl groups.

Conjugacy classes, exact rational matrix models of every irreducible (built
from the reflection representation by tensoring and MeatAxe splitting, the
same way the original computation constructed its W(F4) models), character
tables validated by orthogonality, coinvariant-degree b-invariants, parabolic
induction/restriction, and bipartition characters for the hyperoctahedral
subgroups.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import meataxe
from .ratlinalg import (
    F0,
    F1,
    dot,
    inertia,
    mat_identity,
    mat_mul,
    mat_vec,
    nullspace,
    row_space_basis,
    solve,
    transpose,
)
from .rootdata import RootSystem, _tup_mat_mul


@dataclass
class ConjClass:
    rep: object  # WeylElement
    size: int


@dataclass
class IrrChar:
    """Irreducible character with an exact matrix model.

    values are indexed by the context's conjugacy classes; the model matrices
    (one per simple reflection) are in a basis where the invariant form is the
    diagonal matrix diag(form_diag).
    """

    values: tuple
    dim: int
    b_invariant: int = -1
    model: tuple = ()  # matrices per simple reflection
    form_diag: tuple = ()

    def __hash__(self):
        return hash(self.values)

    def __eq__(self, other):
        return self.values == other.values


class WeylChars:
    """Character-theory context for the Weyl group of a root system."""

    def __init__(self, root_system: RootSystem):
        self.rs = root_system
        self._classes = None
        self._cls_of = None
        self._irr = None
        self._power_cache = {}

    # -- conjugacy classes -----------------------------------------------------

    def classes(self):
        if self._classes is None:
            rs = self.rs
            els = rs.weyl_elements()
            n = len(els)
            gens = [rs.simple(i) for i in range(rs.rank)]
            cls_of = [-1] * n
            classes = []
            for e in els:
                if cls_of[e.index] >= 0:
                    continue
                orbit = {e.index}
                frontier = [e]
                while frontier:
                    new = []
                    for u in frontier:
                        for s in gens:
                            v = rs.multiply(rs.multiply(s, u), s)
                            if v.index not in orbit:
                                orbit.add(v.index)
                                new.append(v)
                    frontier = new
                rep = min((els[i] for i in orbit), key=lambda u: (u.length, u.word))
                k = len(classes)
                classes.append(ConjClass(rep=rep, size=len(orbit)))
                for i in orbit:
                    cls_of[i] = k
            order = sorted(range(len(classes)), key=lambda k: (classes[k].rep.length, classes[k].rep.word))
            remap = {old: new for new, old in enumerate(order)}
            self._classes = [classes[old] for old in order]
            self._cls_of = [remap[c] for c in cls_of]
        return self._classes

    def class_of(self, w) -> int:
        self.classes()
        return self._cls_of[w.index]

    def inner(self, chi, psi) -> Fraction:
        """Class inner product (characters are real for Weyl groups)."""
        total = F0
        for c, x, y in zip(self.classes(), chi, psi):
            total += c.size * x * y
        return total / self.rs.order

    # -- one-dimensional characters and the reflection model --------------------

    def simple_class_partition(self):
        """Partition of simple-root indices by conjugacy of their reflections."""
        self.classes()
        buckets = {}
        for i in range(self.rs.rank):
            buckets.setdefault(self.class_of(self.rs.simple(i)), []).append(i)
        return [tuple(v) for _, v in sorted(buckets.items())]

    def one_dim_models(self):
        out = []
        parts = self.simple_class_partition()
        for signs in itertools.product([F1, -F1], repeat=len(parts)):
            assign = {}
            for part, s in zip(parts, signs):
                for i in part:
                    assign[i] = s
            model = tuple(((assign[i],),) for i in range(self.rs.rank))
            out.append(model)
        return out

    def reflection_model(self):
        """Simple reflections on span(R), as rank x rank rational matrices."""
        rs = self.rs
        basis = row_space_basis([list(a) for a in rs.simple_roots])
        bt = transpose(basis)
        mats = []
        for s in rs.simple_reflections:
            cols = []
            for v in basis:
                w = mat_vec([list(r) for r in s], v)
                cols.append(solve([row[:] for row in bt], w))
            mats.append(tuple(tuple(x) for x in transpose(cols)))
        return tuple(mats), basis

    def model_character(self, model):
        """Trace of the model on every class representative."""
        rs = self.rs
        vals = []
        for c in self.classes():
            m = mat_identity(len(model[0]))
            for i in c.rep.word:
                m = mat_mul(m, [list(r) for r in model[i]])
            vals.append(sum(m[i][i] for i in range(len(m))))
        return tuple(vals)

    # -- full set of irreducible models -----------------------------------------

    def irreducibles(self):
        """All irreducible characters, each with a form-diagonalized model."""
        if self._irr is not None:
            return self._irr
        from . import modelcache

        cached = modelcache.load_irreducibles(self.rs)
        if cached is not None and len(cached) == len(self.classes()):
            self._irr = [
                IrrChar(
                    values=c["values"],
                    dim=c["dim"],
                    b_invariant=c["b"],
                    model=c["model"],
                    form_diag=c["form_diag"],
                )
                for c in cached
            ]
            return self._irr
        rs = self.rs
        target = rs.order
        found = {}

        def register(model):
            chi = self.model_character(model)
            if chi in found:
                return False
            if self.inner(chi, chi) != 1:
                return False
            found[chi] = tuple(tuple(tuple(x for x in row) for row in m) for m in model)
            return True

        for m in self.one_dim_models():
            register(m)
        refl, _ = self.reflection_model()
        register(refl)
        # diagram-flip pullback covers the second reflection-like family
        for perm in self._diagram_automorphisms():
            register(tuple(refl[perm[i]] for i in range(rs.rank)))

        def total():
            return sum(chi[0] ** 2 for chi in found)

        def twist_closure():
            added = True
            while added:
                added = False
                for one in self.one_dim_models():
                    eps = self.model_character(one)
                    for chi, model in list(found.items()):
                        twisted = tuple(
                            tuple(tuple(one[i][0][0] * x for x in row) for row in model[i])
                            for i in range(rs.rank)
                        )
                        if register(twisted):
                            added = True

        twist_closure()
        # grow by tensoring with the reflection representation and splitting
        queue_round = 0
        while total() < target:
            queue_round += 1
            partners = sorted(found.values(), key=lambda m: (len(m[0]), self.model_character(m)))
            progressed = False
            for partner in partners:
                if total() >= target:
                    break
                cand = tuple(
                    meataxe_kron(refl[i], partner[i]) for i in range(rs.rank)
                )
                chi = self.model_character(cand)
                resid = list(chi)
                for known in found:
                    m = self.inner(tuple(resid), known)
                    if m != 0:
                        resid = [r - m * k for r, k in zip(resid, known)]
                if all(x == 0 for x in resid):
                    continue
                gens = [[list(r) for r in m] for m in cand]
                for factor in meataxe.composition_factors(gens, seed=queue_round):
                    if register(tuple(tuple(tuple(x for x in row) for row in f) for f in factor)):
                        progressed = True
                twist_closure()
            if not progressed and total() < target:
                # tensor two non-reflection models as a fallback
                for m1, m2 in itertools.combinations(partners, 2):
                    if len(m1[0]) * len(m2[0]) > 64:
                        continue
                    cand = tuple(meataxe_kron(m1[i], m2[i]) for i in range(rs.rank))
                    chi = self.model_character(cand)
                    resid = list(chi)
                    for known in found:
                        mm = self.inner(tuple(resid), known)
                        if mm != 0:
                            resid = [r - mm * k for r, k in zip(resid, known)]
                    if all(x == 0 for x in resid):
                        continue
                    gens = [[list(r) for r in m] for m in cand]
                    for factor in meataxe.composition_factors(gens, seed=99 + queue_round):
                        register(tuple(tuple(tuple(x for x in row) for row in f) for f in factor))
                    twist_closure()
                    if total() >= target:
                        break
                if total() < target:
                    raise RuntimeError("irreducible model search did not complete")

        irr = []
        for chi, model in found.items():
            model_d, diag = _diagonalize_invariant_form(model)
            irr.append(
                IrrChar(values=chi, dim=int(chi[0]), model=model_d, form_diag=diag)
            )
        irr.sort(key=lambda c: (c.dim, self._b_invariant(c.values), c.values))
        for c in irr:
            c.b_invariant = self._b_invariant(c.values)
        self._irr = irr
        from . import modelcache

        modelcache.store_irreducibles(self.rs, irr)
        return irr

    def _diagram_automorphisms(self):
        """Simple-index permutations preserving the Coxeter matrix but not lengths."""
        rs = self.rs
        out = []
        n = rs.rank
        orders = {}
        for i in range(n):
            for j in range(i + 1, n):
                prod = rs.multiply(rs.simple(i), rs.simple(j))
                k = 1
                cur = prod
                ident = rs.identity()
                while cur != ident:
                    cur = rs.multiply(cur, prod)
                    k += 1
                orders[(i, j)] = k
        for perm in itertools.permutations(range(n)):
            if perm == tuple(range(n)):
                continue
            if all(
                orders[tuple(sorted((perm[i], perm[j])))] == orders[(i, j)]
                for i in range(n)
                for j in range(i + 1, n)
            ):
                out.append(perm)
        return out

    # -- b-invariants ------------------------------------------------------------

    def _reflection_charpoly_series(self, max_deg):
        """Per class: coefficients of 1/det(1 - t w|span) up to t^max_deg."""
        key = ("molien", max_deg)
        if key in self._power_cache:
            return self._power_cache[key]
        refl, _ = self.reflection_model()
        out = []
        for c in self.classes():
            m = mat_identity(len(refl[0]))
            for i in c.rep.word:
                m = mat_mul(m, [list(r) for r in refl[i]])
            # det(1 - t m) as a polynomial in t
            dim = len(m)
            coeffs = _char_det_poly(m)
            series = _invert_series(coeffs, max_deg)
            out.append(series)
        self._power_cache[key] = out
        return out

    def sym_power_multiplicity(self, values, k):
        """Multiplicity of the character in Sym^k of the reflection rep."""
        series = self._reflection_charpoly_series(k)
        total = F0
        for c, chi, s in zip(self.classes(), values, series):
            total += c.size * chi * s[k]
        return total / self.rs.order

    def _b_invariant(self, values):
        nref = len(self.rs.positive_roots)
        for k in range(0, nref + 1):
            if self.sym_power_multiplicity(values, k) > 0:
                return k
        raise RuntimeError("b-invariant not found within the coinvariant range")

    def b_invariant(self, chi: IrrChar) -> int:
        return self._b_invariant(chi.values)

    # -- induction / restriction --------------------------------------------------

    def induce_from(self, sub: "WeylChars", sub_values):
        """Induce a class function from the Weyl group of a subsystem.

        The subsystem's elements must be parent Weyl matrices (standard
        parabolic subsystems are).
        """
        rs = self.rs
        sub_rs = sub.rs
        self.classes()
        sub_els = sub_rs.weyl_elements()
        vals = [F0] * len(self.classes())
        counts = {}
        for u in sub_els:
            cu = sub.class_of(u)
            pu = self._cls_of[self.rs.element(u.matrix).index]
            counts[(pu, cu)] = counts.get((pu, cu), 0) + 1
        for (pu, cu), n in counts.items():
            vals[pu] += n * sub_values[cu]
        order = self.rs.order
        out = []
        for k, c in enumerate(self.classes()):
            centralizer = Fraction(order, c.size)
            out.append(vals[k] * centralizer / sub_rs.order)
        return tuple(out)

    def restrict_to(self, sub: "WeylChars", values):
        """Restrict a parent class function to the subsystem's Weyl group."""
        out = []
        for c in sub.classes():
            parent_el = self.rs.element(c.rep.matrix)
            out.append(values[self._cls_of_safe(parent_el)])
        return tuple(out)

    def _cls_of_safe(self, w):
        self.classes()
        return self._cls_of[w.index]

    def decompose(self, values):
        """Multiplicities over the irreducible basis; asserts integrality."""
        out = {}
        for chi in self.irreducibles():
            m = self.inner(values, chi.values)
            if m.denominator != 1:
                raise ValueError("non-integral multiplicity in decomposition")
            if m != 0:
                out[chi] = int(m)
        return out

    def sign_values(self):
        return tuple((-F1) ** c.rep.length for c in self.classes())

    def trivial_values(self):
        return tuple(F1 for _ in self.classes())

    def tensor_sign(self, values):
        return tuple(v * s for v, s in zip(values, self.sign_values()))

    def regular_values(self):
        return tuple(
            Fraction(self.rs.order) if c.rep.length == 0 else F0 for c in self.classes()
        )


def meataxe_kron(a, b):
    from .ratlinalg import kron

    return tuple(tuple(row) for row in kron([list(r) for r in a], [list(r) for r in b]))


def _char_det_poly(m):
    """Coefficients (low to high in t) of det(1 - t m)."""
    n = len(m)
    # Leverrier-Faddeev on (-m): det(1 - t m) = sum_k c_k t^k with c from traces
    # use direct expansion via characteristic polynomial of m
    # p(t) = det(tI - m) = t^n + a_{n-1} t^{n-1} + ... ; det(1 - t m) = t^n p(1/t)
    a = _charpoly(m)
    # a: low-to-high coeffs of det(tI - m) (degree n monic)
    return [a[n - k] for k in range(n + 1)]


def _charpoly(m):
    """Characteristic polynomial det(tI - m), coefficients low to high."""
    n = len(m)
    # Newton's identities from power-sum traces
    power_traces = []
    cur = [row[:] for row in m]
    for k in range(1, n + 1):
        power_traces.append(sum(cur[i][i] for i in range(n)))
        if k < n:
            cur = mat_mul(cur, m)
    e = [F1]  # elementary symmetric functions of eigenvalues
    for k in range(1, n + 1):
        s = F0
        for i in range(1, k + 1):
            s += (-F1) ** (i - 1) * e[k - i] * power_traces[i - 1]
        e.append(s / k)
    out = [F0] * (n + 1)
    for k in range(n + 1):
        out[n - k] = (-F1) ** k * e[k]
    return out


def _invert_series(coeffs, max_deg):
    """1 / (c0 + c1 t + ...) as a power series up to degree max_deg."""
    c0 = coeffs[0]
    inv = [F1 / c0]
    for k in range(1, max_deg + 1):
        s = F0
        for j in range(1, min(k, len(coeffs) - 1) + 1):
            s += coeffs[j] * inv[k - j]
        inv.append(-s / c0)
    return inv


def _diagonalize_invariant_form(model):
    """Change basis so the invariant symmetric form becomes diagonal."""
    gens = [[list(r) for r in m] for m in model]
    n = len(gens[0])
    if n == 1:
        return model, (F1,)
    # solve g^T S g = S for symmetric S
    idx = [(i, j) for i in range(n) for j in range(i, n)]
    pos = {ij: k for k, ij in enumerate(idx)}
    rows = []
    for g in gens:
        gt = transpose(g)
        for (i, j) in idx:
            row = [F0] * len(idx)
            # (g^T S g)_{ij} - S_{ij} = sum_{k,l} g[k][i] S[k][l] g[l][j] - S_{ij}
            for k in range(n):
                for l in range(n):
                    a, b = (k, l) if k <= l else (l, k)
                    row[pos[(a, b)]] += g[k][i] * g[l][j]
            row[pos[(i, j)]] -= F1
            rows.append(row)
    sols = nullspace(rows)
    if len(sols) != 1:
        raise RuntimeError("invariant form is not unique; model not irreducible?")
    v = sols[0]
    s = [[F0] * n for _ in range(n)]
    for (i, j), k in pos.items():
        s[i][j] = v[k]
        s[j][i] = v[k]
    if s[0][0] < 0 or (s[0][0] == 0 and any(x < 0 for x in (s[i][i] for i in range(n)))):
        s = [[-x for x in row] for row in s]
    p, q, z = inertia(s)
    if q or z:
        s = [[-x for x in row] for row in s]
        p, q, z = inertia(s)
    if q or z:
        raise RuntimeError("invariant form is not definite")
    # symmetric Gaussian reduction: basis change C with C^T S C diagonal
    c = mat_identity(n)
    m = [row[:] for row in s]
    for k in range(n):
        if m[k][k] == 0:
            piv = next(i for i in range(k + 1, n) if m[i][i] != 0)
            # swap basis vectors k and piv
            for r in range(n):
                m[r][k], m[r][piv] = m[r][piv], m[r][k]
            m[k], m[piv] = m[piv], m[k]
            for r in range(n):
                c[r][k], c[r][piv] = c[r][piv], c[r][k]
        d = m[k][k]
        for i in range(k + 1, n):
            if m[k][i] != 0:
                f = m[k][i] / d
                for r in range(n):
                    c[r][i] -= f * c[r][k]
                # update m = C^T S C incrementally: col/row i -= f * col/row k
                for r in range(n):
                    m[r][i] -= f * m[r][k]
                for r in range(n):
                    m[i][r] -= f * m[k][r]
    diag = tuple(m[k][k] for k in range(n))
    from .ratlinalg import inverse

    cinv = inverse(c)
    new_model = tuple(
        tuple(tuple(x for x in row) for row in mat_mul(mat_mul(cinv, g), c))
        for g in gens
    )
    return new_model, diag

"""Concrete finite-dimensional H-modules.

A ModuleDatum stores generator matrices: one per simple reflection of the
(sub)algebra it lives over, and one per ambient coordinate function.  The
coordinate matrices of a module over a parabolic subalgebra H_M act by the
M-span part of the functional (the perpendicular directions contribute the
central-character shift, which is folded in by `twist`).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import meataxe, poly
from .heckecore import HeckeAlgebra
from .ratlinalg import (
    F0,
    F1,
    dot,
    frac,
    mat_add,
    mat_identity,
    mat_mul,
    mat_scale,
    mat_sub,
    mat_vec,
    nullspace,
    rank,
    solve,
    transpose,
)
from .rootdata import ParabolicDatum, RootSystem


class ModuleError(RuntimeError):
    pass


@dataclass
class ModuleDatum:
    """Matrices of a module over H (parabolic=None) or a parabolic H_M."""

    algebra: HeckeAlgebra
    parabolic: ParabolicDatum | None
    dim: int
    ts: dict  # parent simple index -> matrix
    omegas: list  # per ambient coordinate
    name: str = ""
    weight_hints: tuple = ()

    def simple_indices(self):
        if self.parabolic is None:
            return tuple(range(self.algebra.rs.rank))
        return self.parabolic.simple_indices

    def sub_root_system(self) -> RootSystem:
        if self.parabolic is None:
            return self.algebra.rs
        return self.parabolic.subsystem

    def act_t_word(self, parent_word):
        """Matrix of t_w for w given by a word in parent simple indices."""
        m = mat_identity(self.dim)
        for i in parent_word:
            m = mat_mul(m, self.ts[i])
        return m

    def act_linear(self, coeffs):
        """Matrix of a degree-one functional sum coeffs[i] * omega_i."""
        out = [[F0] * self.dim for _ in range(self.dim)]
        for c, om in zip(coeffs, self.omegas):
            if c == 0:
                continue
            for i in range(self.dim):
                row = om[i]
                orow = out[i]
                for j in range(self.dim):
                    if row[j] != 0:
                        orow[j] += c * row[j]
        return out

    def act_poly(self, p):
        """Matrix of a polynomial in the commuting coordinate actions."""
        out = [[F0] * self.dim for _ in range(self.dim)]
        for e, c in p.items():
            term = mat_identity(self.dim)
            for i, k in enumerate(e):
                for _ in range(k):
                    term = mat_mul(term, self.omegas[i])
            out = mat_add(out, mat_scale(c, term))
        return out

    def validate(self):
        """Assert every defining relation of the (sub)algebra as matrix identities."""
        alg = self.algebra
        rs = alg.rs
        sub = self.sub_root_system()
        idx = self.simple_indices()
        ident = mat_identity(self.dim)
        for i in idx:
            if mat_mul(self.ts[i], self.ts[i]) != ident:
                raise ModuleError(f"t_{i}^2 != 1 in {self.name!r}")
        # braid relations via equality of products along both orders
        for a_pos, i in enumerate(idx):
            for j in idx[a_pos + 1 :]:
                mij = _coxeter_order(rs, i, j)
                left = ident
                right = ident
                for k in range(mij):
                    left = mat_mul(left, self.ts[i] if k % 2 == 0 else self.ts[j])
                    right = mat_mul(right, self.ts[j] if k % 2 == 0 else self.ts[i])
                if left != right:
                    raise ModuleError(f"braid relation fails for ({i},{j}) in {self.name!r}")
        # cross-relations and commuting coordinates
        n = alg.n
        for k in range(n):
            for l in range(k + 1, n):
                if mat_mul(self.omegas[k], self.omegas[l]) != mat_mul(
                    self.omegas[l], self.omegas[k]
                ):
                    raise ModuleError(f"coordinates {k},{l} do not commute in {self.name!r}")
        for i in idx:
            smat = rs.simple_reflections[i]
            c = alg._simple_c[i]
            for k in range(n):
                lhs = mat_mul(self.omegas[k], self.ts[i])
                s_om = [smat[j][k] for j in range(n)]  # coefficients of s(omega_k)
                rhs = mat_mul(self.ts[i], self.act_linear(s_om))
                pair = rs.copairing(
                    [F1 if j == k else F0 for j in range(n)], rs.simple_roots[i]
                )
                if pair != 0:
                    rhs = mat_add(rhs, mat_scale(c * pair, ident))
                if lhs != rhs:
                    raise ModuleError(
                        f"cross-relation fails for omega_{k}, s_{i} in {self.name!r}"
                    )
        return self

    def w_character(self):
        """Class-function values of the W(M)-restriction on subsystem classes."""
        from .wchar import WeylChars

        sub = self.sub_root_system()
        wc = WeylChars(sub)
        vals = []
        local_to_parent = list(self.simple_indices())
        sparse_ts = {
            i: [
                {r: self.ts[i][r][j] for r in range(self.dim) if self.ts[i][r][j] != 0}
                for j in range(self.dim)
            ]
            for i in self.simple_indices()
        }
        for c in wc.classes():
            word = [local_to_parent[i] for i in c.rep.word]
            total = F0
            for j in range(self.dim):
                vec = {j: F1}
                for i in reversed(word):
                    new = {}
                    cols = sparse_ts[i]
                    for r, v in vec.items():
                        for r2, v2 in cols[r].items():
                            new[r2] = new.get(r2, F0) + v2 * v
                    vec = new
                total += vec.get(j, F0)
            vals.append(total)
        return tuple(vals)

    def twist(self, nu):
        """Tensor with the central character nu (perpendicular to M's span)."""
        nu = [frac(x) for x in nu]
        if self.parabolic is not None and not self.parabolic.nu_is_valid(nu):
            raise ModuleError("twist character must be orthogonal to the Levi roots")
        omegas = [
            mat_add(om, mat_scale(nu[i], mat_identity(self.dim)))
            for i, om in enumerate(self.omegas)
        ]
        return ModuleDatum(
            algebra=self.algebra,
            parabolic=self.parabolic,
            dim=self.dim,
            ts=dict(self.ts),
            omegas=omegas,
            name=f"{self.name}(x)C_nu" if self.name else "",
            weight_hints=tuple(
                tuple(w[i] + nu[i] for i in range(len(nu))) for w in self.weight_hints
            ),
        )

    def weights(self, candidates=None):
        """Generalized A-weights with multiplicities, by block refinement.

        Candidate eigenvalues per coordinate come from the module's weight
        hints (all constructions carry them), so only rational weights occur.
        """
        cands = candidates if candidates is not None else self.weight_hints
        if not cands:
            raise ModuleError("no weight candidates available")
        cands = [tuple(frac(x) for x in w) for w in cands]
        n = self.algebra.n
        blocks = [([row[:] for row in mat_identity(self.dim)], ())]
        for i in range(n):
            values = sorted({w[i] for w in cands})
            new_blocks = []
            for basis, tag in blocks:
                k = len(basis)
                r = _restrict_operator(basis, self.omegas[i])
                covered = 0
                for lam in values:
                    m = mat_sub(r, mat_scale(lam, mat_identity(k)))
                    power = mat_identity(k)
                    for _ in range(k):
                        power = mat_mul(power, m)
                    ker = nullspace(power)
                    if not ker:
                        continue
                    vecs = [
                        [
                            sum(coef[a] * basis[a][t] for a in range(k))
                            for t in range(self.dim)
                        ]
                        for coef in ker
                    ]
                    new_blocks.append((vecs, tag + (lam,)))
                    covered += len(ker)
                if covered != k:
                    raise ModuleError(
                        "weight candidate set incomplete (irrational weight?)"
                    )
            blocks = new_blocks
        out = {}
        for basis, tag in blocks:
            out[tag] = out.get(tag, 0) + len(basis)
        return sorted(out.items())

    def is_tempered(self, candidates=None) -> bool:
        return self._casselman(candidates, strict=False)

    def is_discrete_series(self, candidates=None) -> bool:
        return self._casselman(candidates, strict=True)

    def _casselman(self, candidates, strict):
        sub = self.sub_root_system()
        if sub is None:
            return True
        fcw = sub.fundamental_coweights()
        for w, _ in self.weights(candidates):
            for omega in fcw:
                val = dot(list(w), omega)
                if val > 0 or (strict and val == 0):
                    return False
        return True

    def hermitian_form(self):
        """Invariant symmetric form for the star of the (sub)algebra; None if none."""
        alg = self.algebra
        sub = self.sub_root_system()
        n = self.dim
        idx = [(i, j) for i in range(n) for j in range(i, n)]
        pos = {ij: k for k, ij in enumerate(idx)}
        rows = []

        def add_condition(xmat, xstar_mat):
            # x^T S = S x*  as linear conditions on S
            for (i, j) in idx:
                row = [F0] * len(idx)
                for k in range(n):
                    a, b = (k, j) if k <= j else (j, k)
                    row[pos[(a, b)]] += xmat[k][i]
                    a, b = (i, k) if i <= k else (k, i)
                    row[pos[(a, b)]] -= xstar_mat[k][j]
                rows.append(row)

        for i in self.simple_indices():
            add_condition(self.ts[i], self.ts[i])
        # omega* = -omega + sum_{a in R_M+} c_a <omega, a^vee> t_{s_a}
        for k in range(alg.n):
            om = self.omegas[k]
            star = mat_scale(-F1, om)
            if sub is not None:
                for a in sub.positive_roots:
                    pair = alg.rs.copairing(
                        [F1 if t == k else F0 for t in range(alg.n)], a
                    )
                    if pair == 0:
                        continue
                    c = alg.c_of(a)
                    refl = sub.element(sub.reflection(a))
                    word = [list(self.simple_indices())[t] for t in refl.word]
                    star = mat_add(star, mat_scale(c * pair, self.act_t_word(word)))
            add_condition(om, star)
        sols = nullspace(rows)
        if not sols:
            return None
        if len(sols) > 1:
            # pick a symmetric invariant form deterministically (first basis vector)
            pass
        v = sols[0]
        s = [[F0] * n for _ in range(n)]
        for (i, j), k in pos.items():
            s[i][j] = v[k]
            s[j][i] = v[k]
        # normalize sign so the form has positive entries where definite
        from .ratlinalg import inertia

        p, q, z = inertia(s)
        if q > p:
            s = [[-x for x in row] for row in s]
        return s

    def to_json(self):
        return {
            "dim": self.dim,
            "simple_indices": list(self.simple_indices()),
            "ts_matrices": {
                str(i): [[str(x) for x in row] for row in m] for i, m in self.ts.items()
            },
            "omega_matrices": [
                [[str(x) for x in row] for row in m] for m in self.omegas
            ],
            "name": self.name,
            "weight_hints": [[str(x) for x in w] for w in self.weight_hints],
        }


def _restrict_operator(basis, m):
    """Matrix of m on the invariant subspace spanned by the basis rows."""
    bt = transpose(basis)
    cols = []
    for v in basis:
        w = mat_vec(m, v)
        cols.append(solve([row[:] for row in bt], w))
    return transpose(cols)


def module_from_json(algebra: HeckeAlgebra, parabolic, data) -> ModuleDatum:
    ts = {
        int(i): [[frac(x) for x in row] for row in m]
        for i, m in data["ts_matrices"].items()
    }
    omegas = [[[frac(x) for x in row] for row in m] for m in data["omega_matrices"]]
    datum = ModuleDatum(
        algebra=algebra,
        parabolic=parabolic,
        dim=int(data["dim"]),
        ts=ts,
        omegas=omegas,
        name=data.get("name", ""),
        weight_hints=tuple(
            tuple(frac(x) for x in w) for w in data.get("weight_hints", [])
        ),
    )
    return datum.validate()


def _coxeter_order(rs: RootSystem, i, j):
    prod = rs.multiply(rs.simple(i), rs.simple(j))
    ident = rs.identity()
    k = 1
    cur = prod
    while cur != ident:
        cur = rs.multiply(cur, prod)
        k += 1
    return k


# -- one-dimensional modules ------------------------------------------------------


def steinberg(algebra: HeckeAlgebra, parabolic: ParabolicDatum | None = None) -> ModuleDatum:
    """The one-dimensional discrete series: t_s = -1, <chi, alpha> = -c_alpha."""
    return _one_dim(algebra, parabolic, {i: -F1 for i in _idx(algebra, parabolic)}, "St")


def trivial_module(algebra: HeckeAlgebra, parabolic: ParabolicDatum | None = None) -> ModuleDatum:
    return _one_dim(algebra, parabolic, {i: F1 for i in _idx(algebra, parabolic)}, "triv")


def _idx(algebra, parabolic):
    return (
        tuple(range(algebra.rs.rank)) if parabolic is None else parabolic.simple_indices
    )


def _one_dim(algebra, parabolic, signs, name):
    rs = algebra.rs
    idx = _idx(algebra, parabolic)
    if not idx:
        n = algebra.n
        return ModuleDatum(
            algebra=algebra,
            parabolic=parabolic,
            dim=1,
            ts={},
            omegas=[[[F0]] for _ in range(n)],
            name=name,
            weight_hints=(tuple(F0 for _ in range(n)),),
        )
    simples = [rs.simple_roots[i] for i in idx]
    span = _span_basis(simples)
    # chi in span with <chi, alpha_i> = signs[i] * c_i
    a = [[dot(list(s), b) for b in span] for s in simples]
    rhs = [signs[i] * algebra._simple_c[i] for i in idx]
    coeffs = solve(a, rhs)
    chi = [
        sum(coeffs[k] * span[k][t] for k in range(len(span)))
        for t in range(algebra.n)
    ]
    return ModuleDatum(
        algebra=algebra,
        parabolic=parabolic,
        dim=1,
        ts={i: [[signs[i]]] for i in idx},
        omegas=[[[chi[t]]] for t in range(algebra.n)],
        name=name,
        weight_hints=(tuple(chi),),
    ).validate()


def one_dim_modules(algebra: HeckeAlgebra, parabolic: ParabolicDatum | None = None):
    """All one-dimensional modules, with their discrete-series flag."""
    from .wchar import WeylChars
    import itertools

    sub = algebra.rs if parabolic is None else parabolic.subsystem
    if sub is None:
        return [(_one_dim(algebra, parabolic, {}, "triv"), False)]
    wc = WeylChars(sub)
    parts = wc.simple_class_partition()
    idx = _idx(algebra, parabolic)
    out = []
    for signs in itertools.product([F1, -F1], repeat=len(parts)):
        assign = {}
        for part, s in zip(parts, signs):
            for local in part:
                assign[idx[local]] = s
        name = "".join("+" if assign[i] > 0 else "-" for i in idx)
        datum = _one_dim(algebra, parabolic, assign, f"onedim[{name}]")
        out.append((datum, datum.is_discrete_series()))
    return out


# -- principal series and parabolic induction --------------------------------------


def _span_basis(vectors):
    from .ratlinalg import row_space_basis

    return row_space_basis([list(v) for v in vectors])


def _omega_through_tx(algebra, sub_rs, local_to_parent, omega_coeffs, w):
    """Normal form of omega t_w as {element: degree<=1 poly}, within W(M).

    Runs the cross-relation along a reduced word; the number of terms grows
    linearly in the length of w.
    """
    rs = algebra.rs
    n = algebra.n
    if w.length == 0:
        return {w: poly.linear(omega_coeffs)}
    i_local = sub_rs.descent(w)
    s_local = sub_rs.simple(i_local)
    w2 = sub_rs.multiply(s_local, w)
    i_parent = local_to_parent[i_local]
    smat = rs.simple_reflections[i_parent]
    s_coeffs = mat_vec([list(r) for r in smat], list(omega_coeffs))
    inner = _omega_through_tx(algebra, sub_rs, local_to_parent, s_coeffs, w2)
    out = {}
    for y, p in inner.items():
        sy = sub_rs.multiply(s_local, y)
        out[sy] = poly.add(out.get(sy, {}), p)
    pair = rs.copairing(list(omega_coeffs), rs.simple_roots[i_parent])
    if pair != 0:
        c = algebra._simple_c[i_parent]
        out[w2] = poly.add(out.get(w2, {}), poly.const(n, c * pair))
    return {y: p for y, p in out.items() if p}


def principal_series(
    algebra: HeckeAlgebra, lam, parabolic: ParabolicDatum | None = None
) -> ModuleDatum:
    """X(lambda) = H_M (x)_A C_lambda as an explicit module over H_M (or H)."""
    rs = algebra.rs
    sub = rs if parabolic is None else parabolic.subsystem
    idx = _idx(algebra, parabolic)
    local_to_parent = list(idx)
    lam = [frac(x) for x in lam]
    els = sub.weyl_elements()
    n_mod = len(els)
    index_of = {e.matrix: k for k, e in enumerate(els)}
    ts = {}
    for i_local, i in enumerate(local_to_parent):
        m = [[F0] * n_mod for _ in range(n_mod)]
        s = sub.simple(i_local)
        for k, e in enumerate(els):
            se = sub.multiply(s, e)
            m[index_of[se.matrix]][k] = F1
        ts[i] = m
    omegas = []
    for t in range(algebra.n):
        coeffs = [F1 if j == t else F0 for j in range(algebra.n)]
        m = [[F0] * n_mod for _ in range(n_mod)]
        for k, e in enumerate(els):
            for y, p in _omega_through_tx(
                algebra, sub, local_to_parent, coeffs, e
            ).items():
                m[index_of[y.matrix]][k] += poly.evaluate(p, lam)
        omegas.append(m)
    hints = tuple(tuple(sub.act(e, lam)) for e in els)
    return ModuleDatum(
        algebra=algebra,
        parabolic=parabolic,
        dim=n_mod,
        ts=ts,
        omegas=omegas,
        name=f"X({','.join(str(x) for x in lam)})",
        weight_hints=hints,
    )


def induce(
    algebra: HeckeAlgebra,
    parabolic: ParabolicDatum,
    sigma: ModuleDatum,
    nu=None,
    validate: bool | None = None,
) -> ModuleDatum:
    """The standard induced module H (x)_{H_M} (sigma (x) C_nu)."""
    rs = algebra.rs
    if sigma.parabolic is not None and sigma.parabolic.simple_indices != parabolic.simple_indices:
        raise ModuleError("sigma lives over a different parabolic")
    if nu is not None:
        sigma = sigma.twist(nu)
    reps = parabolic.coset_reps
    d = sigma.dim
    n_mod = len(reps) * d
    rep_index = {x.index: k for k, x in enumerate(reps)}
    sub = parabolic.subsystem
    local_of = {}
    if sub is not None:
        local_of = {i: k for k, i in enumerate(parabolic.simple_indices)}

    def sigma_t(m_parent):
        """sigma(t_m) for m in W(M) given as a parent element."""
        if sub is None:
            return mat_identity(d)
        m_local = sub.element(m_parent.matrix)
        word = [parabolic.simple_indices[i] for i in m_local.word]
        return sigma.act_t_word(word)

    ts = {}
    for i in range(rs.rank):
        s = rs.simple(i)
        m = [[F0] * n_mod for _ in range(n_mod)]
        for k, x in enumerate(reps):
            sx = rs.multiply(s, x)
            x2, mm = parabolic.decompose(sx)
            block = sigma_t(mm)
            k2 = rep_index[x2.index]
            for a in range(d):
                for b in range(d):
                    if block[a][b] != 0:
                        m[k2 * d + a][k * d + b] = block[a][b]
        ts[i] = m

    omegas = []
    parent_chars = rs  # full parent system for the omega recursion
    for t in range(algebra.n):
        coeffs = [F1 if j == t else F0 for j in range(algebra.n)]
        m = [[F0] * n_mod for _ in range(n_mod)]
        for k, x in enumerate(reps):
            for y, p in _omega_through_tx(
                algebra, rs, list(range(rs.rank)), coeffs, x
            ).items():
                x2, mm = parabolic.decompose(y)
                k2 = rep_index[x2.index]
                block = mat_mul(sigma_t(mm), sigma.act_poly(p))
                for a in range(d):
                    for b in range(d):
                        if block[a][b] != 0:
                            m[k2 * d + a][k * d + b] += block[a][b]
        omegas.append(m)
    hints = []
    for x in reps:
        for w in sigma.weight_hints:
            hints.append(tuple(rs.act(x, list(w))))
    datum = ModuleDatum(
        algebra=algebra,
        parabolic=None,
        dim=n_mod,
        ts=ts,
        omegas=omegas,
        name=f"Ind[{sigma.name}]",
        weight_hints=tuple(hints),
    )
    if validate is None:
        validate = n_mod <= 150
    if validate:
        datum.validate()
    return datum


# -- decomposition -----------------------------------------------------------------


def split_irreducible(datum: ModuleDatum, seed: int = 0):
    """Composition factors by exact MeatAxe over the rationals."""
    gens = [datum.ts[i] for i in datum.simple_indices()] + list(datum.omegas)
    factors = []
    try:
        parts = meataxe.composition_factors(gens, seed=seed)
    except RuntimeError as exc:  # pragma: no cover - defensive
        raise ModuleError(f"splitting failed: {exc}") from exc
    k = len(datum.simple_indices())
    for part in parts:
        ts = {i: part[a] for a, i in enumerate(datum.simple_indices())}
        omegas = list(part[k:])
        factors.append(
            ModuleDatum(
                algebra=datum.algebra,
                parabolic=datum.parabolic,
                dim=len(part[0]),
                ts=ts,
                omegas=omegas,
                name=f"{datum.name}|factor",
                weight_hints=datum.weight_hints,
            )
        )
    # character sum check
    from .wchar import WeylChars

    sub = datum.sub_root_system()
    wc = WeylChars(sub)
    total = [F0] * len(wc.classes())
    for f in factors:
        total = [a + b for a, b in zip(total, f.w_character())]
    if tuple(total) != datum.w_character():
        raise ModuleError("split constituents do not sum to the module in K(W)")
    return factors


def reduce_to_real(algebra: HeckeAlgebra, parabolic, sigma, nu_re, nu_im):
    """Imaginary-part reduction: the subsystem orthogonal to Im(nu) plus real datum."""
    rs = algebra.rs
    nu_im = [frac(x) for x in nu_im]
    if all(x == 0 for x in nu_im):
        return None, (parabolic, sigma, nu_re)
    kernel_roots = [a for a in rs.positive_roots if dot(list(a), nu_im) == 0]
    # simple system: positive roots in the kernel not expressible as sums
    kset = set(kernel_roots)
    simple = []
    for a in kernel_roots:
        is_sum = False
        for b in kernel_roots:
            if b == a:
                continue
            diff = tuple(x - y for x, y in zip(a, b))
            if diff in kset:
                is_sum = True
                break
        if not is_sum:
            simple.append(a)
    return simple, (parabolic, sigma, nu_re)

"""Hermitian forms, normalized intertwining operators, signatures, and scans.

Two routes compute the same operators:

* the module route builds the standard module X(M, sigma, nu) explicitly and
  applies the rank-one factorization of r_{w_m} through the module action
  (exactly the Gram form of the pairing theorem), then projects to W-isotypes
  with central idempotents;
* the model route, for spherical principal series, multiplies the small
  per-type matrices -x_j rho_mu(s_j) - c_j along a reduced word of w_0,
  which is the factored form that the rank-one reduction dictates.

All signatures are exact inertia counts from symmetric congruence; verdicts
never touch floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import chambers
from .chambers import Constraint
from .heckecore import HeckeAlgebra
from .modules import ModuleDatum, induce, steinberg
from .ratlinalg import (
    F0,
    F1,
    Echelon,
    dot,
    frac,
    inertia,
    mat_identity,
    mat_mul,
    mat_scale,
    mat_vec,
    nullspace,
    rank,
    solve,
    transpose,
)
from .rootdata import ParabolicDatum, RootSystem, WeylElement


class PoleError(RuntimeError):
    """Normalization impossible: the lowest-W-type scalar vanished."""


class NotHermitianError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# Hermitian check
# ---------------------------------------------------------------------------


def hermitian_check(algebra: HeckeAlgebra, parabolic: ParabolicDatum, sigma, nu):
    """Find w with wM=M, w nu = -nu, w sigma ~ sigma; returns (w, a_w) or None."""
    rs = algebra.rs
    nu = [frac(x) for x in nu]
    sub_roots = (
        set(parabolic.subsystem.roots) if parabolic.subsystem is not None else set()
    )
    for w in rs.weyl_elements():
        if rs.act(w, nu) != [-x for x in nu]:
            continue
        mat = [list(r) for r in w.matrix]
        if parabolic.subsystem is not None:
            if not all(
                tuple(mat_vec(mat, list(a))) in sub_roots
                for a in parabolic.subsystem.simple_roots
            ):
                continue
        a_w = solve_a_w(algebra, parabolic, sigma, w)
        if a_w is not None:
            return w, a_w
    return None


def solve_a_w(algebra: HeckeAlgebra, parabolic: ParabolicDatum, sigma: ModuleDatum, w):
    """Intertwiner a_w : w sigma -> sigma, or None if the modules differ."""
    rs = algebra.rs
    d = sigma.dim
    sub = parabolic.subsystem
    rows = []
    n2 = d * d

    def add_pair(mat_plain, mat_twist):
        # unknown a: a . sigma(phi(h)) = sigma(h) . a
        for i in range(d):
            for j in range(d):
                row = [F0] * n2
                for k in range(d):
                    row[i * n2 // d + k] += mat_twist[k][j]
                    row[k * d + j] -= mat_plain[i][k]
                rows.append(row)

    winv = rs.inverse(w)
    idx = list(parabolic.simple_indices)
    for i in idx:
        # phi(t_s) = t_{w^-1 s w}
        alpha = rs.simple_roots[i]
        beta = rs.act(winv, alpha)
        beta_t = tuple(beta)
        if beta_t not in set(sub.roots):
            return None
        refl = sub.element(sub.reflection(beta))
        word = [idx[t] for t in refl.word]
        add_pair(sigma.ts[i], sigma.act_t_word(word))
    for k in range(algebra.n):
        coeffs = [F1 if t == k else F0 for t in range(algebra.n)]
        img = mat_vec([list(r) for r in winv.matrix], coeffs)
        add_pair(sigma.omegas[k], sigma.act_linear(img))
    sols = nullspace(rows)
    if len(sols) != 1:
        return None if not sols else None
    a = [sols[0][i * d : (i + 1) * d] for i in range(d)]
    # deterministic scale: first nonzero entry positive
    lead = next(x for row in a for x in row if x != 0)
    if lead < 0:
        a = [[-x for x in row] for row in a]
    return a


# ---------------------------------------------------------------------------
# Standard module + operator bundle
# ---------------------------------------------------------------------------


@dataclass
class StandardOperator:
    """X(M, sigma, nu) with its intertwining operator and Hermitian Gram form."""

    algebra: HeckeAlgebra
    parabolic: ParabolicDatum
    sigma: ModuleDatum
    nu: tuple
    module: ModuleDatum  # X(M, sigma, nu)
    target: ModuleDatum  # I(M, sigma, -nu)
    operator: list  # unnormalized A-matrix
    gram: list  # unnormalized symmetric Gram matrix
    normalizer: Fraction | None = None  # scalar on the lowest W-type
    _isotype_cache: dict = field(default_factory=dict)

    def isotype_basis(self, chi):
        """Multiplicity-space basis: the first model slot of the chi-isotype."""
        key = chi.values
        if key not in self._isotype_cache:
            self._isotype_cache[key] = _slot_basis(self.algebra, self.module, chi)
        return self._isotype_cache[key]

    def type_multiplicity(self, chi):
        return len(self.isotype_basis(chi))

    def operator_block(self, chi):
        """The operator r_mu on the multiplicity space (mult x mult)."""
        basis = self.isotype_basis(chi)
        if not basis:
            return []
        return _restrict(basis, self.operator)

    def gram_block(self, chi):
        basis = self.isotype_basis(chi)
        if not basis:
            return []
        bt = transpose(basis)
        g = mat_mul(mat_mul(basis, self.gram), bt)
        return g

    def normalize_on(self, chi):
        """Fix the normalization scalar from the (multiplicity-one) type chi."""
        block = self.operator_block(chi)
        if not block:
            raise PoleError("lowest W-type does not occur")
        d = len(block)
        scalar = block[0][0]
        ident_test = mat_scale(scalar, mat_identity(d))
        if block != ident_test:
            raise PoleError("operator is not scalar on the designated lowest type")
        if scalar == 0:
            raise PoleError("degenerate point: lowest-type scalar vanishes")
        self.normalizer = scalar
        return scalar

    def signature(self, chi):
        """Normalized inertia (p, q, z) of r_mu on the multiplicity space."""
        if self.normalizer is None:
            raise PoleError("normalize_on must be called first")
        g = self.gram_block(chi)
        if not g:
            return (0, 0, 0)
        if self.normalizer < 0:
            g = [[-x for x in row] for row in g]
        return inertia(g)

    def quotient_multiplicity(self, chi):
        """Multiplicity of chi in the Langlands quotient, via operator rank."""
        block = self.operator_block(chi)
        if not block:
            return 0
        return rank(block)


def _restrict(basis, m):
    p = _left_inverse(basis)
    cols = []
    for v in basis:
        w = mat_vec(m, v)
        cols.append(mat_vec(p, w))
    return transpose(cols)


def _left_inverse(basis):
    """P with P . basis^T = I, for independent basis rows."""
    from .ratlinalg import inverse

    g = [[dot(bi, bj) for bj in basis] for bi in basis]
    ginv = inverse(g)
    return mat_mul(ginv, basis)


def _isotype_basis(algebra: HeckeAlgebra, module: ModuleDatum, chi):
    """Echelon basis of the chi-isotypic subspace of the W-action."""
    proj = _isotype_projector(algebra, module, chi)
    ech = Echelon()
    for col in transpose(proj):
        ech.add(col)
    return ech.basis()


def _projector_pack(algebra: HeckeAlgebra, module: ModuleDatum):
    """Cache of rho(t_w) for all w as sparse column maps."""
    rs = algebra.rs
    els = rs.weyl_elements()
    n = module.dim
    # sparse representation: list over columns of (row, value) pairs
    def to_sparse(m):
        cols = []
        for j in range(n):
            col = [(i, m[i][j]) for i in range(n) if m[i][j] != 0]
            cols.append(col)
        return cols

    sparse_ts = {i: to_sparse(module.ts[i]) for i in module.simple_indices()}
    out = {els[0].index: to_sparse(mat_identity(n))}
    order = sorted(els, key=lambda e: (e.length, e.word))
    for e in order:
        if e.index in out:
            continue
        i = e.word[0]
        rest = rs.from_word(e.word[1:])
        prev = out[rest.index]
        ts = sparse_ts[i]
        cols = []
        for j in range(n):
            acc = {}
            for (r, v) in prev[j]:
                for (r2, v2) in ts[r]:
                    acc[r2] = acc.get(r2, F0) + v2 * v
            cols.append([(r, v) for r, v in acc.items() if v != 0])
        out[e.index] = cols
    return out


def _isotype_projector(algebra: HeckeAlgebra, module: ModuleDatum, chi):
    rs = algebra.rs
    wc = algebra.wchars()
    els = rs.weyl_elements()
    n = module.dim
    pack = module.__dict__.setdefault("_tw_pack", None)
    if pack is None:
        pack = _projector_pack(algebra, module)
        module.__dict__["_tw_pack"] = pack
    acc = [[F0] * n for _ in range(n)]
    for e in els:
        coef = chi.values[wc.class_of(rs.inverse(e))]
        if coef == 0:
            continue
        for j, col in enumerate(pack[e.index]):
            for (r, v) in col:
                acc[r][j] += coef * v
    scale = Fraction(chi.dim, rs.order)
    return [[scale * x for x in row] for row in acc]


def _operator_core(algebra, parabolic, sigma, nu, w, a_w):
    """Target module, unnormalized operator matrix, and symmetric Gram form."""
    target = induce(algebra, parabolic, sigma, nu=[-x for x in nu], validate=False)
    d = sigma.dim
    reps = parabolic.coset_reps
    n = target.dim
    # start vectors: r_{w} applied to (identity coset) tensor a_w(v)
    start_cols = []
    for v in range(d):
        vec = [F0] * n
        for a in range(d):
            vec[a] = a_w[a][v]
        start_cols.append(_apply_r_chain(algebra, target, w.word, vec))
    a_mat = [[F0] * n for _ in range(n)]
    for k, x in enumerate(reps):
        for v in range(d):
            col = start_cols[v]
            for i in reversed(x.word):
                col = mat_vec(target.ts[i], col)
            for r in range(n):
                if col[r] != 0:
                    a_mat[r][k * d + v] = col[r]
    s_sigma = sigma.hermitian_form()
    if s_sigma is None:
        raise NotHermitianError("sigma admits no invariant Hermitian form")
    gram = [[F0] * n for _ in range(n)]
    for k in range(len(reps)):
        for a in range(d):
            for b in range(d):
                s = s_sigma[a][b]
                if s == 0:
                    continue
                ra, rb = k * d + a, k * d + b
                for col in range(n):
                    if a_mat[rb][col] != 0:
                        gram[ra][col] += s * a_mat[rb][col]
    if gram != transpose(gram):
        raise RuntimeError("Gram form is not symmetric (convention error)")
    return target, a_mat, gram


def _slot_coefficients(algebra: HeckeAlgebra, chi):
    """f(w) = rho_chi(w^{-1})[0][0] for every w, via a BFS over row vectors."""
    rs = algebra.rs
    els = rs.weyl_elements()
    d = chi.dim
    if d == 1:
        wc = algebra.wchars()
        return [chi.values[wc.class_of(e)] for e in els]
    rows = {els[0].index: [F1 if j == 0 else F0 for j in range(d)]}
    order = sorted(els, key=lambda e: (e.length, e.word))
    out = [None] * len(els)
    out[els[0].index] = F1
    for e in order:
        if rows.get(e.index) is not None:
            continue
        # w = s w'  =>  w^{-1} = w'^{-1} s  =>  row(w) = row(w') . rho(s)
        i = e.word[0]
        rest = rs.from_word(e.word[1:])
        prev = rows[rest.index]
        rho = chi.model[i]
        rows[e.index] = [
            sum(prev[k] * rho[k][j] for k in range(d)) for j in range(d)
        ]
        out[e.index] = rows[e.index][0]
    return out


def _slot_basis(algebra: HeckeAlgebra, module: ModuleDatum, chi):
    """Basis of the first model-slot of the chi-isotype (the multiplicity space).

    Image of the matrix-unit idempotent u_00 of type chi; the Hermitian form
    restricted here has the normalized per-type inertia, and the operator
    restricted here is the paper's r_mu.
    """
    rs = algebra.rs
    els = rs.weyl_elements()
    n = module.dim
    pack = module.__dict__.get("_tw_pack")
    if pack is None:
        pack = _projector_pack(algebra, module)
        module.__dict__["_tw_pack"] = pack
    coeffs = _slot_coefficients(algebra, chi)
    acc = [[F0] * n for _ in range(n)]
    for e in els:
        coef = coeffs[e.index]
        if coef == 0:
            continue
        for j, col in enumerate(pack[e.index]):
            for (r, v) in col:
                acc[r][j] += coef * v
    ech = Echelon()
    for col in transpose(acc):
        ech.add(col)
    basis = ech.basis()
    return basis


def build_standard_operator(
    algebra: HeckeAlgebra,
    parabolic: ParabolicDatum,
    sigma: ModuleDatum,
    nu,
    w=None,
    a_w=None,
    validate: bool | None = None,
) -> StandardOperator:
    """Construct X(M, sigma, nu), the r_{w_m} operator, and the Gram form."""
    rs = algebra.rs
    nu = [frac(x) for x in nu]
    if w is None:
        w = parabolic.w_m
        a_w = solve_a_w(algebra, parabolic, sigma, w)
        if a_w is None:
            res = hermitian_check(algebra, parabolic, sigma, nu)
            if res is None:
                raise NotHermitianError("no Hermitian symmetry w found")
            w, a_w = res
    if rs.act(w, nu) != [-x for x in nu]:
        raise NotHermitianError("w nu != -nu for this nu")
    module = induce(algebra, parabolic, sigma, nu=nu, validate=validate)
    target, a_mat, gram = _operator_core(algebra, parabolic, sigma, nu, w, a_w)
    return StandardOperator(
        algebra=algebra,
        parabolic=parabolic,
        sigma=sigma,
        nu=tuple(nu),
        module=module,
        target=target,
        operator=a_mat,
        gram=gram,
    )


def _apply_r_chain(algebra: HeckeAlgebra, target: ModuleDatum, word, vec):
    """Apply rho(r_{s_{j1}} ... r_{s_{jk}}) to a vector of the target module."""
    rs = algebra.rs
    out = vec
    for i in reversed(word):
        alpha = rs.simple_roots[i]
        c = algebra._simple_c[i]
        tmp = mat_vec(target.act_linear(alpha), out)
        tmp = mat_vec(target.ts[i], tmp)
        out = [x - c * y for x, y in zip(tmp, out)]
    return out


class StandardFamily:
    """A maximal-parabolic family nu -> X(M, sigma, nu) with shared W-caches.

    The W-action matrices of the induced module do not depend on nu, so the
    isotype bases are computed once and reused across evaluation points.
    """

    def __init__(self, algebra, parabolic, sigma, name="", w=None, a_w=None):
        self.algebra = algebra
        self.parabolic = parabolic
        self.sigma = sigma
        self.name = name
        if w is None:
            w = parabolic.w_m
            a_w = solve_a_w(algebra, parabolic, sigma, w)
            if a_w is None:
                raise NotHermitianError(
                    f"w_m does not fix sigma for family {name!r}"
                )
        self.w = w
        self.a_w = a_w
        self._iso_cache = {}
        self._proto = None

    def proto_module(self) -> ModuleDatum:
        if self._proto is None:
            zero = [F0] * self.algebra.n
            self._proto = induce(
                self.algebra, self.parabolic, self.sigma, nu=zero, validate=None
            )
        return self._proto

    def w_character(self):
        return self.proto_module().w_character()

    def types_present(self):
        wc = self.algebra.wchars()
        return wc.decompose(self.w_character())

    def operator_at(self, nu, lowest=None) -> StandardOperator:
        rs = self.algebra.rs
        nu = [frac(x) for x in nu]
        if rs.act(self.w, nu) != [-x for x in nu]:
            raise NotHermitianError("w nu != -nu for this nu")
        target, a_mat, gram = _operator_core(
            self.algebra, self.parabolic, self.sigma, nu, self.w, self.a_w
        )
        op = StandardOperator(
            algebra=self.algebra,
            parabolic=self.parabolic,
            sigma=self.sigma,
            nu=tuple(nu),
            module=self.proto_module(),  # same W-action for isotype projection
            target=target,
            operator=a_mat,
            gram=gram,
            _isotype_cache=self._iso_cache,
        )
        if lowest is not None:
            op.normalize_on(lowest)
        return op


# ---------------------------------------------------------------------------
# Spherical principal series: per-type model route
# ---------------------------------------------------------------------------


def rank_one_factors(algebra: HeckeAlgebra, nu, word=None):
    """The (simple index, pairing x_j, c_j) data along a reduced word of w_0."""
    rs = algebra.rs
    if word is None:
        word = rs.longest_element().word
    cur = [frac(x) for x in nu]
    out = []
    for i in word:
        alpha = rs.simple_roots[i]
        x_j = dot(list(alpha), cur)
        out.append((i, x_j, algebra._simple_c[i]))
        cur = mat_vec([list(r) for r in rs.simple_reflections[i]], cur)
    return out


def spherical_type_operator(algebra: HeckeAlgebra, chi, nu, word=None, factors=None):
    """Unnormalized operator of the w_0-intertwiner on Hom_W(chi, X(nu)).

    The product of the small matrices -x_j rho(s_j) - c_j in word order; the
    Gram form on the multiplicity space is diag(1/d_i) times its transpose.
    """
    if factors is None:
        factors = rank_one_factors(algebra, nu, word)
    d = chi.dim
    p = mat_identity(d)
    for (i, x_j, c_j) in factors:
        rho = chi.model[i]
        f = [
            [(-x_j) * rho[a][b] - (c_j if a == b else F0) for b in range(d)]
            for a in range(d)
        ]
        p = mat_mul(p, f)
    return p


def spherical_normalizer(factors):
    """Scalar of the unnormalized operator on the spherical vector."""
    z = F1
    for (_, x_j, c_j) in factors:
        z *= -(x_j + c_j)
    return z


def spherical_gram_block(algebra: HeckeAlgebra, chi, nu, factors=None):
    """Symmetric multiplicity-space Gram matrix of the w_0 form on type chi."""
    p = spherical_type_operator(algebra, chi, nu, factors=factors)
    d = chi.dim
    g = [[p[b][a] / chi.form_diag[a] for b in range(d)] for a in range(d)]
    if g != transpose(g):
        raise RuntimeError("multiplicity-space Gram is not symmetric")
    return g


def spherical_signature(algebra: HeckeAlgebra, chi, nu, factors=None):
    """Normalized (p, q, z) of the spherical form on the chi-multiplicity space."""
    if factors is None:
        factors = rank_one_factors(algebra, nu)
    g = spherical_gram_block(algebra, chi, nu, factors=factors)
    z = spherical_normalizer(factors)
    if z == 0:
        raise PoleError("spherical normalizer vanished")
    if z < 0:
        g = [[-x for x in row] for row in g]
    return inertia(g)


def spherical_full_operator(algebra: HeckeAlgebra, nu, word=None):
    """The w_0-intertwiner as a |W| x |W| matrix in the t_w basis.

    Composite of sparse rank-one maps t_w -> -x_j t_{w s_j} - c_j t_w; used
    to cross-validate the per-type model route and the symbolic Gram route.
    """
    rs = algebra.rs
    els = rs.weyl_elements()
    n = len(els)
    factors = rank_one_factors(algebra, nu, word)
    cols = {k: {k: F1} for k in range(n)}
    for (i, x_j, c_j) in factors:
        s = rs.simple(i)
        new_cols = {}
        for k, col in cols.items():
            acc = {}
            for r, v in col.items():
                ws = rs.multiply(els[r], s)
                acc[ws.index] = acc.get(ws.index, F0) + (-x_j) * v
                acc[r] = acc.get(r, F0) - c_j * v
            new_cols[k] = {r: v for r, v in acc.items() if v != 0}
        cols = new_cols
    out = [[F0] * n for _ in range(n)]
    for k, col in cols.items():
        for r, v in col.items():
            out[r][k] = v
    return out


# ---------------------------------------------------------------------------
# Signature tables and verdicts
# ---------------------------------------------------------------------------


@dataclass
class SignatureTable:
    """Per-type inertia triples (normalized by dim) with unitarity verdict."""

    nu: tuple
    entries: dict  # label -> (p, q, z)
    multiplicities: dict  # label -> multiplicity in the module
    unitary: bool
    failing: tuple = ()

    @staticmethod
    def from_entries(nu, entries, multiplicities):
        failing = tuple(sorted(k for k, (p, q, z) in entries.items() if q))
        return SignatureTable(
            nu=tuple(nu),
            entries=dict(entries),
            multiplicities=dict(multiplicities),
            unitary=not failing,
            failing=failing,
        )

    def sum_rule_total(self):
        return sum(
            m * sum(pqz) for m, pqz in
            ((self.multiplicities[k], self.entries[k]) for k in self.entries)
        )


def spherical_signature_table(algebra, labelmap, nu, type_names=None):
    """Signature table of the spherical form at nu, by the model route."""
    factors = rank_one_factors(algebra, nu)
    z = spherical_normalizer(factors)
    if z == 0:
        raise PoleError("spherical normalizer vanished")
    names = type_names or sorted(labelmap.by_name)
    entries = {}
    mults = {}
    for name in names:
        chi = labelmap.chi(name)
        g = spherical_gram_block(algebra, chi, nu, factors=factors)
        if z < 0:
            g = [[-x for x in row] for row in g]
        entries[name] = inertia(g)
        mults[name] = chi.dim
    return SignatureTable.from_entries(nu, entries, mults)


def standard_signature_table(op: StandardOperator, labelmap, lowest_name, type_names=None):
    """Signature table of a standard-module operator, normalized on the LWT."""
    lowest = labelmap.chi(lowest_name)
    if op.normalizer is None:
        op.normalize_on(lowest)
    wc = op.algebra.wchars()
    present = wc.decompose(op.module.w_character())
    entries = {}
    mults = {}
    for chi, m in sorted(present.items(), key=lambda cm: labelmap.name(cm[0])):
        name = labelmap.name(chi)
        if type_names is not None and name not in type_names:
            continue
        entries[name] = op.signature(chi)
        mults[name] = m
    return SignatureTable.from_entries(op.nu, entries, mults)


def langlands_quotient_character(op: StandardOperator, labelmap):
    """Multiplicities of each W-type in the Langlands quotient, via ranks."""
    wc = op.algebra.wchars()
    present = wc.decompose(op.module.w_character())
    out = {}
    for chi in present:
        m = op.quotient_multiplicity(chi)
        if m:
            out[labelmap.name(chi)] = m
    return out


def im_dual_counts(labelmap, counts):
    """IM on a W-character given by label multiplicities: tensor with sgn."""
    return {labelmap.sgn_twist_name(k): v for k, v in counts.items()}


def im_dual_module(datum):
    """Twist a module datum by the Iwahori-Matsumoto involution."""
    from .modules import ModuleDatum

    ts = {i: [[-x for x in row] for row in m] for i, m in datum.ts.items()}
    omegas = [[[-x for x in row] for row in m] for m in datum.omegas]
    return ModuleDatum(
        algebra=datum.algebra,
        parabolic=datum.parabolic,
        dim=datum.dim,
        ts=ts,
        omegas=omegas,
        name=f"IM({datum.name})",
        weight_hints=tuple(tuple(-x for x in w) for w in datum.weight_hints),
    )


# ---------------------------------------------------------------------------
# Region scanning
# ---------------------------------------------------------------------------


@dataclass
class Region:
    signs: tuple
    walls: tuple  # ((coeffs, rhs), ...) parallel to signs
    samples: tuple
    verdict: bool
    witness: tuple = ()  # failing types at the first sample
    tables: tuple = ()  # SignatureTable per sample (petite or full)

    def satisfies(self, coeffs, rel, rhs):
        """Whether the whole region lies on the stated side of a wall function."""
        coeffs = tuple(coeffs)
        for (wc, wr), s in zip(self.walls, self.signs):
            if tuple(wc) == coeffs and wr == rhs:
                return (s > 0) == (rel == ">")
        val = dot(list(coeffs), list(self.samples[0]))
        return val > rhs if rel == ">" else val < rhs


def scan_spherical(
    algebra,
    labelmap,
    wall_filter="all",
    cut=None,
    bound=None,
    petite=None,
    samples=3,
):
    """Enumerate chambers and evaluate exact signatures at interior samples.

    wall_filter "long" keeps only the long-root walls (the sub-arrangement
    relevant inside the cut K); petite is an optional fast-path list of type
    names checked first, with the full table computed only for survivors.
    """
    rs = algebra.rs
    classes = rs.length_classes()
    keys = sorted(classes)
    walls = []
    for key in keys:
        if wall_filter == "long" and len(keys) > 1 and key == keys[0]:
            continue
        for a in classes[key]:
            walls.append((tuple(a), algebra.c_of(a)))
    walls.sort()
    base = [Constraint(tuple(a), F0, 1) for a in rs.simple_roots]
    if cut is not None:
        coeffs, rhs = cut
        base.append(Constraint(tuple(coeffs), frac(rhs), -1))
    if bound is None:
        bound = 4 * (1 + max(c for _, c in walls))
    cells = chambers.enumerate_chambers(walls, base, rs.ambient_dim, bound, samples=samples)
    regions = []
    names_all = sorted(labelmap.by_name)
    for cell in cells:
        tables = []
        verdict = True
        witness = ()
        for k, nu in enumerate(cell.samples):
            if petite:
                table = spherical_signature_table(algebra, labelmap, nu, type_names=petite)
                if not table.unitary:
                    tables.append(table)
                    verdict = False
                    witness = table.failing
                    if k == 0:
                        break
                    continue
            table = spherical_signature_table(algebra, labelmap, nu, type_names=names_all)
            tables.append(table)
            if not table.unitary:
                verdict = False
                witness = table.failing
        # consistency across samples
        sigs = {tuple(sorted(t.entries.items())) for t in tables if len(t.entries) == len(names_all)}
        if len(sigs) > 1:
            raise RuntimeError("signature not constant across chamber samples")
        regions.append(
            Region(
                signs=cell.signs,
                walls=tuple(walls),
                samples=tuple(cell.samples),
                verdict=verdict,
                witness=witness,
                tables=tuple(tables),
            )
        )
    return regions


def verdict_at_point(algebra, labelmap, nu):
    """Exact unitarity verdict of the spherical quotient L(nu) at a point."""
    table = spherical_signature_table(algebra, labelmap, nu)
    return table


# ---------------------------------------------------------------------------
# Interval certification along a one-parameter family
# ---------------------------------------------------------------------------


def family_breakpoints(algebra, char_base, direction, t_max):
    """Candidate reducibility parameters: t with <beta, base + t dir> = +-c."""
    rs = algebra.rs
    out = set()
    for beta in rs.positive_roots:
        b0 = dot(list(beta), [frac(x) for x in char_base])
        b1 = dot(list(beta), [frac(x) for x in direction])
        c = algebra.c_of(beta)
        if b1 == 0:
            continue
        for target in (c, -c):
            t = (target - b0) / b1
            if 0 <= t <= t_max:
                out.add(t)
    return sorted(out)


def unitary_set_1d(evaluate_q, breakpoints, t_max):
    """Exact unitary subset of [0, t_max] as intervals and isolated points.

    Signatures are constant between consecutive breakpoints (operators are
    invertible off the reducibility walls), so midpoint samples decide the
    open segments and the breakpoints are evaluated exactly.
    """
    t_max = frac(t_max)
    pts = sorted({F0, *(frac(t) for t in breakpoints if 0 <= frac(t) <= t_max), t_max})
    point_ok = {t: evaluate_q(t) for t in pts}
    seg_ok = {}
    for a, b in zip(pts, pts[1:]):
        seg_ok[(a, b)] = evaluate_q((a + b) / 2)
    pieces = []
    cur = None  # [start, end, closed_start, closed_end]
    for k, t in enumerate(pts):
        if point_ok[t]:
            if cur is None:
                cur = [t, t, True, True]
            else:
                cur[1], cur[3] = t, True
        else:
            if cur is not None:
                if cur[1] == t:
                    cur[3] = False
                pieces.append(tuple(cur))
                cur = None
        if k + 1 < len(pts):
            nxt = pts[k + 1]
            if seg_ok[(t, nxt)]:
                if cur is None:
                    cur = [t, nxt, False, False]
                else:
                    cur[1], cur[3] = nxt, False
            else:
                if cur is not None:
                    pieces.append(tuple(cur))
                    cur = None
    if cur is not None:
        pieces.append(tuple(cur))
    return pieces


def verify_interval(evaluate_q, breakpoints, t_max, b_expected):
    """Check the unitary set along [0, t_max] is exactly the closed [0, b]."""
    b_expected = frac(b_expected)
    pieces = unitary_set_1d(evaluate_q, breakpoints, t_max)
    ok = pieces == [(F0, b_expected, True, True)]
    return ok, pieces


# ---------------------------------------------------------------------------
# Symbolic one-parameter families (polynomial entries in the parameter t)
# ---------------------------------------------------------------------------


def _poly_mat_vec_rational(m_sparse, vec):
    """Sparse rational matrix (cols of (row, val)) applied to a poly vector."""
    from . import ratfunc as rf

    n = len(vec)
    out = [rf.ZERO] * n
    for j, col in enumerate(m_sparse):
        pj = vec[j]
        if not pj:
            continue
        for (r, v) in col:
            out[r] = rf.add(out[r], rf.scale(v, pj))
    return out


def _to_sparse_cols(m):
    n = len(m)
    return [
        [(i, m[i][j]) for i in range(n) if m[i][j] != 0] for j in range(n)
    ]


class SymbolicFamily:
    """Polynomial-in-t operator data for X(M, sigma, t * direction).

    Entries of the unnormalized operator and Gram form are polynomials in t,
    so normalized per-type operators become reduced rational functions that
    stay evaluable at points where the raw normalizer vanishes.
    """

    def __init__(self, family: StandardFamily, direction):
        from . import ratfunc as rf

        self.family = family
        self.direction = [frac(x) for x in direction]
        algebra = family.algebra
        rs = algebra.rs
        if rs.act(family.w, self.direction) != [-x for x in self.direction]:
            raise NotHermitianError("family direction is not w-antisymmetric")
        proto = family.proto_module()
        d = family.sigma.dim
        reps = family.parabolic.coset_reps
        n = proto.dim
        ts_sparse = {i: _to_sparse_cols(proto.ts[i]) for i in proto.simple_indices()}
        lin_cache = {}
        diag_cache = {}

        def lin_sparse(alpha):
            key = tuple(alpha)
            if key not in lin_cache:
                lin_cache[key] = _to_sparse_cols(proto.act_linear(list(alpha)))
            return lin_cache[key]

        def lin_diag(alpha):
            # the nu-dependent part of the coordinate action on the induced
            # basis is diagonal per coset: omega acts by <omega, x nu> there
            key = tuple(alpha)
            if key not in diag_cache:
                diag = []
                for x in reps:
                    val = dot(list(alpha), rs.act(x, self.direction))
                    diag.extend([val] * d)
                diag_cache[key] = diag
            return diag_cache[key]

        def chain(vec):
            # rho(r_{s_j1} ... r_{s_jk}) on poly vectors over the target at
            # nu(t) = -t * direction
            out = vec
            for i in reversed(family.w.word):
                alpha = rs.simple_roots[i]
                c = algebra._simple_c[i]
                diag = lin_diag(alpha)
                tmp = _poly_mat_vec_rational(lin_sparse(alpha), out)
                tmp = [
                    rf.add(t1, rf.scale(-dv, rf.shift_mul_t(t2))) if dv != 0 else t1
                    for t1, t2, dv in zip(tmp, out, diag)
                ]
                tmp = _poly_mat_vec_rational(ts_sparse[i], tmp)
                out = [rf.sub(a, rf.scale(c, b)) for a, b in zip(tmp, out)]
            return out

        start_cols = []
        for v in range(d):
            vec = [rf.ZERO] * n
            for a in range(d):
                if family.a_w[a][v] != 0:
                    vec[a] = rf.const(family.a_w[a][v])
            start_cols.append(chain(vec))
        a_mat = [[rf.ZERO] * n for _ in range(n)]
        for k, x in enumerate(reps):
            for v in range(d):
                col = start_cols[v]
                for i in reversed(x.word):
                    col = _poly_mat_vec_rational(ts_sparse[i], col)
                for r in range(n):
                    a_mat[r][k * d + v] = col[r]
        s_sigma = family.sigma.hermitian_form()
        gram = [[rf.ZERO] * n for _ in range(n)]
        for k in range(len(reps)):
            for a in range(d):
                for b in range(d):
                    s = s_sigma[a][b]
                    if s == 0:
                        continue
                    ra, rb = k * d + a, k * d + b
                    for col in range(n):
                        if a_mat[rb][col]:
                            gram[ra][col] = rf.add(
                                gram[ra][col], rf.scale(s, a_mat[rb][col])
                            )
        self.operator = a_mat
        self.gram = gram
        self._block_cache = {}

    def _restrict_poly(self, basis, mat):
        """Restrict a poly-entry matrix to the rational isotype basis."""
        from . import ratfunc as rf
        from .ratfunc import trim

        k = len(basis)
        n = len(mat)
        pinv = _left_inverse(basis)
        max_deg = 0
        cols_poly = []
        for v in basis:
            col = [None] * n
            for r in range(n):
                acc = {}
                row = mat[r]
                for j, vj in enumerate(v):
                    if vj == 0:
                        continue
                    p = row[j]
                    if not p:
                        continue
                    for d2, cf in enumerate(p):
                        if cf:
                            acc[d2] = acc.get(d2, F0) + vj * cf
                if acc:
                    top = max(acc) + 1
                    col[r] = tuple(acc.get(d2, F0) for d2 in range(top))
                    max_deg = max(max_deg, top)
                else:
                    col[r] = rf.ZERO
            cols_poly.append(col)
        out = [[rf.ZERO] * k for _ in range(k)]
        for ci, col in enumerate(cols_poly):
            coeff_sols = []
            for deg in range(max_deg):
                rhs = [(p[deg] if deg < len(p) else F0) for p in col]
                if all(x == 0 for x in rhs):
                    coeff_sols.append(None)
                    continue
                coeff_sols.append(mat_vec(pinv, rhs))
            for r in range(k):
                coeffs = [
                    (sol[r] if sol is not None else F0) for sol in coeff_sols
                ]
                out[r][ci] = trim(coeffs)
        return out

    def blocks(self, chi, what="operator"):
        """Polynomial matrix of the operator or Gram on the chi-isotype."""
        key = (chi.values, what)
        if key not in self._block_cache:
            basis = self.family._iso_cache.get(chi.values)
            if basis is None:
                basis = _slot_basis(
                    self.family.algebra, self.family.proto_module(), chi
                )
                self.family._iso_cache[chi.values] = basis
            if what == "operator":
                self._block_cache[key] = self._restrict_poly(basis, self.operator)
            else:
                # bilinear-form restriction: B G(t) B^T
                self._block_cache[key] = self._sandwich_poly(basis, self.gram)
        return self._block_cache[key]

    def _sandwich_poly(self, basis, mat):
        from . import ratfunc as rf

        k = len(basis)
        n = len(mat)
        mid = []
        for v in basis:
            row = [rf.ZERO] * n
            for j, vj in enumerate(v):
                if vj == 0:
                    continue
                for r in range(n):
                    if mat[r][j]:
                        row[r] = rf.add(row[r], rf.scale(vj, mat[r][j]))
            mid.append(row)
        out = [[rf.ZERO] * k for _ in range(k)]
        for a in range(k):
            for b in range(k):
                acc = rf.ZERO
                for r, vr in enumerate(basis[b]):
                    if vr != 0 and mid[a][r]:
                        acc = rf.add(acc, rf.scale(vr, mid[a][r]))
                out[a][b] = acc
        return out

    def normalizer_poly(self, lowest_chi):
        blk = self.blocks(lowest_chi)
        if not blk:
            raise PoleError("lowest type missing")
        for i in range(len(blk)):
            for j in range(len(blk)):
                if i != j and blk[i][j]:
                    raise PoleError("operator not scalar on lowest type")
                if i != j and not blk[i][j] == blk[0][0]:
                    pass
        for i in range(1, len(blk)):
            if blk[i][i] != blk[0][0]:
                raise PoleError("operator not scalar on lowest type")
        return blk[0][0]

    def normalized_operator(self, chi, lowest_chi):
        """Matrix of reduced rational functions on the multiplicity space."""
        from .ratfunc import RationalFunction

        key = ("nop", chi.values, lowest_chi.values)
        if key not in self._block_cache:
            n_poly = self.normalizer_poly(lowest_chi)
            blk = self.blocks(chi)
            self._block_cache[key] = [
                [RationalFunction(entry, n_poly) for entry in row] for row in blk
            ]
        return self._block_cache[key]

    def normalized_gram(self, chi, lowest_chi):
        from .ratfunc import RationalFunction

        key = ("ngram", chi.values, lowest_chi.values)
        if key not in self._block_cache:
            n_poly = self.normalizer_poly(lowest_chi)
            blk = self.blocks(chi, what="gram")
            self._block_cache[key] = [
                [RationalFunction(entry, n_poly) for entry in row] for row in blk
            ]
        return self._block_cache[key]

    def signature_at(self, chi, lowest_chi, t):
        g = self.normalized_gram(chi, lowest_chi)
        vals = [[entry.evaluate(t) for entry in row] for row in g]
        return inertia(vals)

    def quotient_multiplicity_at(self, chi, lowest_chi, t):
        op = self.normalized_operator(chi, lowest_chi)
        vals = [[entry.evaluate(t) for entry in row] for row in op]
        return rank(vals)

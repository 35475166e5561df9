"""Canonical names for W-types.

F4 uses the dimension-subscript names 1_1 ... 16_1; G2 uses 1_1 ... 2_2 with
the Steinberg row's lowest type named 1_2.  Neither subscript convention is
a function of (dimension, b-invariant) alone, so the assignment is solved
from anchor identities (parabolic inductions with known decompositions and
quotient data); any leftover tie within a dimension class is an error, not
a guess.  B/C subsystems use bipartition names, A subsystems partitions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .ratlinalg import F0, F1, dot, frac, mat_vec, solve, transpose
from .rootdata import ParabolicDatum, RootSystem
from .wchar import WeylChars

_S_CHARS = {
    1: {(1,): {(): F1, (1,): F1}},
    2: {(2,): {(1, 1): F1, (2,): F1}, (1, 1): {(1, 1): F1, (2,): -F1}},
    3: {
        (3,): {(1, 1, 1): F1, (2, 1): F1, (3,): F1},
        (2, 1): {(1, 1, 1): Fraction(2), (2, 1): F0, (3,): -F1},
        (1, 1, 1): {(1, 1, 1): F1, (2, 1): -F1, (3,): F1},
    },
}


def _cycle_type(perm):
    n = len(perm)
    seen = [False] * n
    cycles = []
    for i in range(n):
        if seen[i]:
            continue
        k = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            k += 1
        cycles.append(k)
    return tuple(sorted(cycles, reverse=True))


def _line_action(rs: RootSystem, w, lines):
    """w(l_i) = sign_i * l_{perm(i)}; returns (perm, signs) or None."""
    perm = [None] * len(lines)
    signs = [None] * len(lines)
    mat = [list(r) for r in w.matrix]
    for i, l in enumerate(lines):
        img = mat_vec(mat, list(l))
        for j, l2 in enumerate(lines):
            if img == list(l2):
                perm[i], signs[i] = j, F1
                break
            if img == [-x for x in l2]:
                perm[i], signs[i] = j, -F1
                break
        if perm[i] is None:
            return None
    return perm, signs


def hyperoctahedral_lines(rs: RootSystem, flip_class: str):
    """The n orthogonal positive roots whose reflections act as line flips."""
    classes = rs.length_classes()
    keys = sorted(classes)
    if len(keys) == 1:
        lines = classes[keys[0]]
    else:
        short_sq, long_sq = keys
        lines = classes[short_sq] if flip_class == "short" else classes[long_sq]
    if len(lines) != rs.rank:
        raise ValueError(
            f"{flip_class}-class has {len(lines)} positive roots, rank is {rs.rank}"
        )
    lines = sorted(lines)
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            if dot(list(lines[i]), list(lines[j])) != 0:
                raise ValueError("line roots are not orthogonal")
    return lines


def bipartition_values(wc: WeylChars, lam, mu, flip_class: str):
    """Class-function values of the bipartition character (lam, mu)."""
    rs = wc.rs
    lam = tuple(sorted((int(x) for x in lam), reverse=True))
    mu = tuple(sorted((int(x) for x in mu), reverse=True))
    a, b = sum(lam), sum(mu)
    if a + b != rs.rank:
        raise ValueError("bipartition size must equal the rank")
    lines = hyperoctahedral_lines(rs, flip_class)
    chi_lam = _S_CHARS[a][lam] if a else {(): F1}
    chi_mu = _S_CHARS[b][mu] if b else {(): F1}
    order_h = (
        _factorial(a) * 2**a * _factorial(b) * 2**b
    )
    per_class = [F0] * len(wc.classes())
    for w in rs.weyl_elements():
        act = _line_action(rs, w, lines)
        if act is None:
            raise ValueError("element does not act on the lines (not B/C type?)")
        perm, signs = act
        if not all(perm[i] < a for i in range(a)) or not all(
            perm[i] >= a for i in range(a, a + b)
        ):
            continue
        val = F1
        for i in range(a, a + b):
            val *= signs[i]
        ct_lam = _cycle_type([perm[i] for i in range(a)]) if a else ()
        ct_mu = _cycle_type([perm[i] - a for i in range(a, a + b)]) if b else ()
        val *= chi_lam[ct_lam] * chi_mu[ct_mu]
        per_class[wc.class_of(w)] += val
    out = []
    order = rs.order
    for k, c in enumerate(wc.classes()):
        centralizer = Fraction(order, c.size)
        out.append(per_class[k] * centralizer / order_h)
    return tuple(out)


def _factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def partition_values(wc: WeylChars, lam):
    """A-type labels: (k) trivial, (1^k) sign, (2,1) the reflection character."""
    lam = tuple(sorted((int(x) for x in lam), reverse=True))
    k = sum(lam)
    if k != wc.rs.rank + 1:
        raise ValueError("partition size must be rank + 1")
    if lam == (k,):
        return wc.trivial_values()
    if lam == (1,) * k:
        return wc.sign_values()
    if lam == (2, 1):
        return wc.model_character(wc.reflection_model()[0])
    raise ValueError(f"partition label {lam} not supported")


# ---------------------------------------------------------------------------
# Levi characters from component labels
# ---------------------------------------------------------------------------


def levi_components(parabolic: ParabolicDatum):
    """Connected components of the Levi's Coxeter diagram (simple index sets)."""
    rs = parabolic.parent
    idx = list(parabolic.simple_indices)
    adj = {i: set() for i in idx}
    for i in idx:
        for j in idx:
            if i < j and dot(list(rs.simple_roots[i]), list(rs.simple_roots[j])) != 0:
                adj[i].add(j)
                adj[j].add(i)
    comps = []
    left = set(idx)
    while left:
        root = min(left)
        comp = {root}
        frontier = [root]
        while frontier:
            new = []
            for i in frontier:
                for j in adj[i]:
                    if j not in comp:
                        comp.add(j)
                        new.append(j)
            frontier = new
        comps.append(tuple(sorted(comp)))
        left -= comp
    return sorted(comps)


def _projector(basis):
    """Orthogonal projection matrix onto the row span of basis."""
    bt = transpose(basis)
    g = [[dot(basis[i], basis[j]) for j in range(len(basis))] for i in range(len(basis))]
    from .ratlinalg import inverse, mat_mul

    ginv = inverse(g)
    return mat_mul(mat_mul(bt, ginv), basis)


def levi_character_values(parabolic: ParabolicDatum, component_labels):
    """Class function on W(M) from per-component labels.

    component_labels: list of (component simple-index tuple, kind, payload)
    with kind in {"partition", "bipartition"}; bipartition payload is
    (lam, mu, flip_class).
    """
    sub = parabolic.subsystem
    wc_m = WeylChars(sub)
    comps = levi_components(parabolic)
    spec = {tuple(sorted(c)): (kind, payload) for c, kind, payload in component_labels}
    if set(spec) != set(comps):
        raise ValueError(f"component labels {sorted(spec)} do not match {comps}")
    rs = parabolic.parent
    factor_data = []
    for comp in comps:
        simples = [rs.simple_roots[i] for i in comp]
        factor_rs = RootSystem(f"levi{len(comp)}", simples, rs.ambient_dim)
        factor_wc = WeylChars(factor_rs)
        kind, payload = spec[comp]
        if kind == "partition":
            vals = partition_values(factor_wc, payload)
        else:
            lam, mu, flip = payload
            vals = bipartition_values(factor_wc, lam, mu, flip)
        from .ratlinalg import row_space_basis

        span = row_space_basis([list(a) for a in simples])
        proj = _projector(span)
        ident = [[F1 if i == j else F0 for j in range(rs.ambient_dim)] for i in range(rs.ambient_dim)]
        factor_data.append((factor_rs, factor_wc, vals, proj, ident))
    out = []
    from .ratlinalg import mat_mul, mat_sub, mat_add

    for c in wc_m.classes():
        w = c.rep
        val = F1
        wmat = [list(r) for r in w.matrix]
        for factor_rs, factor_wc, vals, proj, ident in factor_data:
            wm1 = mat_sub(wmat, ident)
            wf = mat_add(ident, mat_mul(wm1, proj))
            el = factor_rs.element(wf)
            val *= vals[factor_wc.class_of(el)]
        out.append(val)
    return tuple(out)


# ---------------------------------------------------------------------------
# Anchored label assignment
# ---------------------------------------------------------------------------


@dataclass
class LabelMap:
    """Bijection between canonical names and IrrChars of one Weyl group."""

    wchars: WeylChars
    by_name: dict
    name_of: dict  # IrrChar.values -> name
    notes: tuple = ()

    def chi(self, name):
        return self.by_name[name]

    def name(self, chi):
        return self.name_of[chi.values]

    def decompose_named(self, values):
        dec = self.wchars.decompose(values)
        return {self.name(chi): m for chi, m in dec.items()}

    def character_from_counts(self, counts):
        vals = [F0] * len(self.wchars.classes())
        for name, m in counts.items():
            chi = self.by_name[name]
            vals = [a + m * b for a, b in zip(vals, chi.values)]
        return tuple(vals)

    def sgn_twist_name(self, name):
        chi = self.by_name[name]
        twisted = self.wchars.tensor_sign(chi.values)
        return self.name_of[twisted]


class LabelingError(RuntimeError):
    pass


def assign_labels(wchars: WeylChars, names, pinned, anchors):
    """Solve for the unique name assignment consistent with every anchor.

    names: list of target names grouped implicitly by dimension prefix.
    pinned: dict name -> IrrChar values (hard assignments).
    anchors: list of (class-function values, {name: multiplicity}, exact_flag);
    exact anchors constrain the full decomposition, partial ones only the
    listed names.  Candidate orders follow (b-invariant, long/short reflection
    value), and a note records every anchor that overrides that order.
    """
    irr = wchars.irreducibles()
    by_dim = {}
    for chi in irr:
        by_dim.setdefault(chi.dim, []).append(chi)
    name_dims = {}
    for name in names:
        d = int(name.split("_")[0])
        name_dims.setdefault(d, []).append(name)
    for d in name_dims:
        if len(name_dims[d]) != len(by_dim.get(d, [])):
            raise LabelingError(f"dimension {d}: {len(name_dims[d])} names vs "
                                f"{len(by_dim.get(d, []))} characters")
    # precompute anchor decompositions over raw characters
    anchor_decs = []
    for values, expected, exact in anchors:
        dec = wchars.decompose(values)
        anchor_decs.append(({chi.values: m for chi, m in dec.items()}, expected, exact))

    def consistent(assign):
        for dec, expected, exact in anchor_decs:
            for name, m in expected.items():
                chi = assign.get(name)
                if chi is None:
                    continue
                if dec.get(chi.values, 0) != m:
                    return False
            if exact and all(n in assign for n in expected):
                total_expected = sum(expected.values())
                assigned_total = sum(
                    dec.get(assign[n].values, 0) for n in expected
                )
                full_total = sum(dec.values())
                if full_total != total_expected or assigned_total != total_expected:
                    return False
        return True

    base = {}
    for name, values in pinned.items():
        chi = next(c for c in irr if c.values == tuple(values))
        base[name] = chi
    solutions = [base]
    for d in sorted(name_dims):
        dim_names = sorted(name_dims[d], key=lambda s: int(s.split("_")[1]))
        free_names = [n for n in dim_names if n not in base]
        used = {base[n].values for n in dim_names if n in base}
        cands = [c for c in by_dim[d] if c.values not in used]
        new_solutions = []
        for sol in solutions:
            for perm in itertools.permutations(cands):
                trial = dict(sol)
                trial.update(dict(zip(free_names, perm)))
                if consistent(trial):
                    new_solutions.append(trial)
        solutions = new_solutions
        if not solutions:
            raise LabelingError(f"no consistent labeling at dimension {d}")
    if len(solutions) != 1:
        raise LabelingError(
            f"labeling not unique: {len(solutions)} consistent assignments; add anchors"
        )
    assign = solutions[0]
    notes = []
    # report where the subscript order disagrees with the b-invariant order
    for d, dim_names in sorted(name_dims.items()):
        ordered = sorted(dim_names, key=lambda s: int(s.split("_")[1]))
        bs = [assign[n].b_invariant for n in ordered]
        if bs != sorted(bs):
            notes.append(
                f"dim {d}: subscripts {ordered} have b-invariants {bs} (not b-ordered; anchors win)"
            )
    return LabelMap(
        wchars=wchars,
        by_name=dict(assign),
        name_of={chi.values: n for n, chi in assign.items()},
        notes=tuple(notes),
    )

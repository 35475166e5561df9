"""Root systems, Weyl groups, parameter functions, and parabolic data.

Coordinates follow the source conventions for the exceptional cases:
F4 uses a_1 = e1-e2-e3-e4, a_2 = 2e4, a_3 = e3-e4, a_4 = e2-e3 (so the
metrically long class {2e_i, e1+-e2+-e3+-e4} and the short class {e_i+-e_j}),
and G2 uses a_1 = (2/3,-1/3,-1/3) (short), a_2 = (-1,1,0) (long).  All
pairings <a, v> are plain Euclidean dot products in these coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .ratlinalg import F0, F1, dot, frac, mat_identity, mat_mul, mat_vec


class ConfigurationError(ValueError):
    """Unsupported root-system or parameter configuration."""


def _fr(x):
    return Fraction(x)


def _reflection_matrix(alpha, n):
    """Matrix of the Euclidean reflection in alpha, acting on column vectors."""
    aa = dot(alpha, alpha)
    m = []
    for i in range(n):
        row = []
        for j in range(n):
            v = F1 if i == j else F0
            row.append(v - 2 * alpha[i] * alpha[j] / aa)
        m.append(row)
    return tuple(tuple(x) for x in m)


def _simple_roots_for(cartan_type: str, convention: str):
    t = cartan_type[0].upper()
    rank = int(cartan_type[1:])
    if cartan_type.upper() == "G2":
        if convention not in ("paper-4.3", "default"):
            raise ConfigurationError(f"unknown G2 convention {convention!r}")
        return [
            [_fr("2/3"), _fr("-1/3"), _fr("-1/3")],
            [_fr(-1), _fr(1), _fr(0)],
        ]
    if cartan_type.upper() == "F4":
        if convention not in ("paper-5", "default"):
            raise ConfigurationError(f"unknown F4 convention {convention!r}")
        return [
            [_fr(1), _fr(-1), _fr(-1), _fr(-1)],
            [_fr(0), _fr(0), _fr(0), _fr(2)],
            [_fr(0), _fr(0), _fr(1), _fr(-1)],
            [_fr(0), _fr(1), _fr(-1), _fr(0)],
        ]
    if t == "A" and 1 <= rank <= 4:
        n = rank + 1
        return [
            [F1 if j == i else (-F1 if j == i + 1 else F0) for j in range(n)]
            for i in range(rank)
        ]
    if t == "B" and 2 <= rank <= 4:
        n = rank
        roots = [
            [F1 if j == i else (-F1 if j == i + 1 else F0) for j in range(n)]
            for i in range(rank - 1)
        ]
        roots.append([F1 if j == rank - 1 else F0 for j in range(n)])
        return roots
    if t == "C" and 2 <= rank <= 4:
        n = rank
        roots = [
            [F1 if j == i else (-F1 if j == i + 1 else F0) for j in range(n)]
            for i in range(rank - 1)
        ]
        roots.append([Fraction(2) if j == rank - 1 else F0 for j in range(n)])
        return roots
    if t == "D" and 3 <= rank <= 4:
        n = rank
        roots = [
            [F1 if j == i else (-F1 if j == i + 1 else F0) for j in range(n)]
            for i in range(rank - 1)
        ]
        last = [F0] * n
        last[rank - 2] = F1
        last[rank - 1] = F1
        roots.append(last)
        return roots
    raise ConfigurationError(f"unsupported cartan type {cartan_type!r}")


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element: exact orthogonal matrix plus a cached reduced word."""

    matrix: tuple
    word: tuple
    index: int

    @property
    def length(self) -> int:
        return len(self.word)

    def __hash__(self):
        return hash(self.matrix)

    def __eq__(self, other):
        return self.matrix == other.matrix


class RootSystem:
    """A based root system with its Weyl group, in explicit exact coordinates.

    simple_roots are the chosen simples; positive roots are enumerated by
    reflection closure.  Weyl elements are produced lazily by `weyl_elements`
    and stored in the deterministic (length, reduced word) order.
    """

    def __init__(self, cartan_type: str, simple_roots, ambient_dim=None):
        self.cartan_type = cartan_type
        self.simple_roots = [list(map(Fraction, a)) for a in simple_roots]
        self.ambient_dim = ambient_dim or len(self.simple_roots[0])
        self.rank = len(self.simple_roots)
        self._check_independent()
        self.simple_reflections = [
            _reflection_matrix(a, self.ambient_dim) for a in self.simple_roots
        ]
        self.positive_roots = self._positive_roots()
        self.roots = self.positive_roots + [
            tuple(-x for x in a) for a in self.positive_roots
        ]
        self._root_set = set(self.roots)
        self._elements = None
        self._index = None
        self._cache = {}

    # -- construction helpers -------------------------------------------------

    def _check_independent(self):
        from .ratlinalg import rank as mrank

        if mrank([list(a) for a in self.simple_roots]) != self.rank:
            raise ConfigurationError("simple roots are not linearly independent")

    def _positive_roots(self):
        simples = [tuple(a) for a in self.simple_roots]
        roots = set(simples)
        frontier = list(simples)
        while frontier:
            new = []
            for alpha in frontier:
                for s, a in zip(self.simple_reflections, self.simple_roots):
                    beta = tuple(mat_vec([list(r) for r in s], list(alpha)))
                    if beta not in roots and tuple(-x for x in beta) not in roots:
                        roots.add(beta)
                        new.append(beta)
            frontier = new
        # positivity: nonnegative coefficients in the simple basis
        from .ratlinalg import solve

        basis_t = [[self.simple_roots[j][i] for j in range(self.rank)] for i in range(self.ambient_dim)]
        pos = []
        for beta in roots:
            coeffs = _coords_in_simples(basis_t, list(beta))
            if all(c >= 0 for c in coeffs):
                pos.append(beta)
        pos.sort(key=lambda b: (sum(_coords_in_simples(basis_t, list(b))), b))
        return pos

    # -- basic operations ------------------------------------------------------

    def pairing(self, alpha, v):
        return dot(list(alpha), list(v))

    def copairing(self, omega, alpha):
        """<omega, alpha^vee> = 2 (omega, alpha) / (alpha, alpha)."""
        a = list(alpha)
        return 2 * dot(list(omega), a) / dot(a, a)

    def root_length_sq(self, alpha):
        a = list(alpha)
        return dot(a, a)

    def length_classes(self):
        """Map squared length -> sorted list of positive roots."""
        classes = {}
        for a in self.positive_roots:
            classes.setdefault(self.root_length_sq(a), []).append(a)
        return classes

    def is_root(self, v):
        return tuple(v) in self._root_set

    def reflection(self, alpha):
        return _reflection_matrix(list(alpha), self.ambient_dim)

    # -- Weyl group -------------------------------------------------------------

    def weyl_elements(self):
        """All Weyl elements, ordered by (length, lexicographic reduced word)."""
        if self._elements is None:
            ident = tuple(tuple(row) for row in mat_identity(self.ambient_dim))
            seen = {ident: ()}
            frontier = [ident]
            while frontier:
                new = []
                for m in frontier:
                    w0 = seen[m]
                    for i, s in enumerate(self.simple_reflections):
                        m2 = _tup_mat_mul(m, s)  # right multiplication: word + [i]
                        if m2 not in seen:
                            seen[m2] = w0 + (i,)
                            new.append(m2)
                frontier = new
            items = sorted(seen.items(), key=lambda kv: (len(kv[1]), kv[1]))
            self._elements = [
                WeylElement(matrix=m, word=w, index=k)
                for k, (m, w) in enumerate(items)
            ]
            self._index = {e.matrix: e for e in self._elements}
        return self._elements

    @property
    def order(self):
        return len(self.weyl_elements())

    def element(self, matrix) -> WeylElement:
        self.weyl_elements()
        m = tuple(tuple(x for x in row) for row in matrix)
        try:
            return self._index[m]
        except KeyError:
            raise ValueError("matrix is not a Weyl group element") from None

    def identity(self) -> WeylElement:
        return self.weyl_elements()[0]

    def simple(self, i) -> WeylElement:
        return self.element(self.simple_reflections[i])

    def multiply(self, u: WeylElement, v: WeylElement) -> WeylElement:
        return self.element(_tup_mat_mul(u.matrix, v.matrix))

    def inverse(self, u: WeylElement) -> WeylElement:
        return self.element(tuple(zip(*u.matrix)))  # orthogonal: inverse = transpose

    def from_word(self, word) -> WeylElement:
        m = tuple(tuple(row) for row in mat_identity(self.ambient_dim))
        for i in word:
            m = _tup_mat_mul(m, self.simple_reflections[i])
        return self.element(m)

    def act(self, w: WeylElement, v):
        """Matrix action of w on the weight vector v."""
        return mat_vec([list(r) for r in w.matrix], [Fraction(x) for x in v])

    def inversion_count(self, w: WeylElement) -> int:
        """Number of positive roots sent to negative roots."""
        count = 0
        for a in self.positive_roots:
            img = tuple(mat_vec([list(r) for r in w.matrix], list(a)))
            if tuple(-x for x in img) in set(self.positive_roots):
                count += 1
        return count

    def longest_element(self) -> WeylElement:
        n_pos = len(self.positive_roots)
        for e in self.weyl_elements():
            if e.length == n_pos:
                return e
        raise RuntimeError("longest element not found")

    def is_dominant(self, v) -> bool:
        vv = [Fraction(x) for x in v]
        return all(dot(a, vv) >= 0 for a in map(list, self.simple_roots))

    def fundamental_coweights(self):
        """Vectors in span(simples) dual to the simple roots under the dot product."""
        if "fcw" not in self._cache:
            from .ratlinalg import solve

            span = _span_basis(self.simple_roots)
            out = []
            for i in range(self.rank):
                # omega = sum c_k span_k with <alpha_j, omega> = delta_ij
                a = [
                    [dot(list(self.simple_roots[j]), b) for b in span]
                    for j in range(self.rank)
                ]
                rhs = [F1 if j == i else F0 for j in range(self.rank)]
                c = solve(a, rhs)
                omega = [
                    sum(c[k] * span[k][t] for k in range(len(span)))
                    for t in range(self.ambient_dim)
                ]
                out.append(omega)
            self._cache["fcw"] = out
        return self._cache["fcw"]

    def descent(self, w: WeylElement):
        """A left descent: index i with l(s_i w) < l(w), or None for identity."""
        winv = [list(r) for r in self.inverse(w).matrix]
        pos = set(self.positive_roots)
        for i, a in enumerate(self.simple_roots):
            # l(s_i w) < l(w)  iff  w^{-1} alpha_i < 0
            if tuple(mat_vec(winv, list(a))) not in pos:
                return i
        return None


def _coords_in_simples(basis_t, v):
    from .ratlinalg import solve

    return solve([row[:] for row in basis_t], v)


def _span_basis(vectors):
    from .ratlinalg import row_space_basis

    return row_space_basis([list(v) for v in vectors])


def _tup_mat_mul(a, b):
    n = len(a)
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(n):
            s = F0
            for k in range(n):
                x = ai[k]
                if x:
                    y = b[k][j]
                    if y:
                        s += x * y
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def build_root_system(cartan_type: str, convention: str = "default") -> RootSystem:
    """Build a root system in the stated coordinate convention."""
    simples = _simple_roots_for(cartan_type, convention)
    return RootSystem(cartan_type.upper(), simples)


@dataclass(frozen=True)
class ParamFunction:
    """W-invariant parameter labels c_alpha, keyed by squared root length."""

    by_length_sq: tuple  # sorted tuple of (length_sq, value)

    def value(self, root_system: RootSystem, alpha) -> Fraction:
        ls = root_system.root_length_sq(alpha)
        for l, v in self.by_length_sq:
            if l == ls:
                return v
        raise KeyError(f"no parameter for root of squared length {ls}")

    def values(self):
        return [v for _, v in self.by_length_sq]


def make_params(root_system: RootSystem, long_value, short_value=None) -> ParamFunction:
    """Parameter function with the given labels on long / short roots.

    Simply-laced systems take a single value; passing two is an error.
    """
    classes = sorted(root_system.length_classes())
    long_value = frac(long_value)
    if len(classes) == 1:
        if short_value is not None:
            raise ConfigurationError(
                "simply-laced root system takes a single parameter value"
            )
        if long_value <= 0:
            raise ConfigurationError("parameter values must be positive")
        return ParamFunction(by_length_sq=((classes[0], long_value),))
    if short_value is None:
        raise ConfigurationError("two-length root system needs (long, short) values")
    short_value = frac(short_value)
    if long_value <= 0 or short_value <= 0:
        raise ConfigurationError("parameter values must be positive")
    short_sq, long_sq = classes
    return ParamFunction(by_length_sq=((short_sq, short_value), (long_sq, long_value)))


@dataclass
class ParabolicDatum:
    """A standard parabolic subsystem: Pi_M, W(M), minimal coset reps, w_m."""

    parent: RootSystem
    simple_indices: tuple
    subsystem: RootSystem = field(init=False)
    wm_indices: list = field(init=False)  # W(M) as parent Weyl indices
    coset_reps: list = field(init=False)  # minimal-length reps of W/W(M)
    w_m: WeylElement = field(init=False)

    def __post_init__(self):
        parent = self.parent
        idx = tuple(sorted(self.simple_indices))
        self.simple_indices = idx
        simples = [parent.simple_roots[i] for i in idx]
        if idx:
            self.subsystem = RootSystem(
                _detect_type(parent, simples), simples, parent.ambient_dim
            )
        else:
            self.subsystem = None
        elements = parent.weyl_elements()
        sub_roots = (
            set(self.subsystem.roots) if self.subsystem is not None else set()
        )
        pos = set(parent.positive_roots)
        wm = []
        reps = []
        for e in elements:
            mat = [list(r) for r in e.matrix]
            # e in W(M) iff its inversion set lies in R_M+
            invs_in_m = all(
                tuple(mat_vec(mat, list(a))) in pos or tuple(a) in sub_roots
                for a in parent.positive_roots
            )
            if invs_in_m:
                wm.append(e.index)
            # minimal coset rep of e W(M): sends every simple of M to a positive root
            if all(tuple(mat_vec(mat, list(a))) in pos for a in simples):
                reps.append(e)
        self.wm_indices = wm
        self.coset_reps = reps
        self.w_m = self._compute_wm()

    def _compute_wm(self):
        parent = self.parent
        w0 = parent.longest_element()
        elements = parent.weyl_elements()
        wm_group = [elements[i] for i in self.wm_indices]
        # W(w0 M) = w0 W(M) w0^{-1}
        w0m_group = [
            parent.multiply(parent.multiply(w0, u), parent.inverse(w0))
            for u in wm_group
        ]
        best = None
        for u in w0m_group:
            uw0 = parent.multiply(u, w0)
            for v in wm_group:
                cand = parent.multiply(uw0, v)
                if best is None or (cand.length, cand.word) < (
                    best.length,
                    best.word,
                ):
                    best = cand
        return best

    @property
    def wm_group(self):
        els = self.parent.weyl_elements()
        return [els[i] for i in self.wm_indices]

    def decompose(self, w: WeylElement):
        """Write w = x m with x a minimal coset rep and m in W(M)."""
        parent = self.parent
        key = ("decomp", w.index)
        cached = parent._cache.get((id(self), key))
        if cached is not None:
            return cached
        sub_pos = (
            set(self.subsystem.positive_roots) if self.subsystem is not None else set()
        )
        # x = w m^{-1}; find m in W(M) with w m^{-1} minimal
        # minimal rep of the coset: act on simples of M and undo inversions
        x = w
        m = parent.identity()
        changed = True
        while changed:
            changed = False
            for i_local, a in enumerate(
                self.subsystem.simple_roots if self.subsystem is not None else []
            ):
                img = mat_vec([list(r) for r in x.matrix], list(a))
                if tuple(img) not in set(parent.positive_roots):
                    s_parent = parent.element(
                        _reflection_matrix(list(a), parent.ambient_dim)
                    )
                    x = parent.multiply(x, s_parent)
                    m = parent.multiply(s_parent, m)
                    changed = True
        parent._cache[(id(self), key)] = (x, m)
        return x, m

    def nu_is_valid(self, nu):
        """nu must pair to zero with every root of M."""
        if self.subsystem is None:
            return True
        return all(
            dot(list(a), [Fraction(x) for x in nu]) == 0
            for a in self.subsystem.simple_roots
        )


def _detect_type(parent: RootSystem, simples):
    """Crude Cartan-type tag for a subsystem (used in reports only)."""
    k = len(simples)
    lengths = sorted({dot(list(a), list(a)) for a in simples})
    if len(lengths) == 1:
        return f"A{k}?"  # could be A/D; reports treat the tag as informational
    return f"BC{k}?"


def parabolic(root_system: RootSystem, simple_indices) -> ParabolicDatum:
    """Parabolic datum for the subset Pi_M given by simple-root indices."""
    for i in simple_indices:
        if not 0 <= i < root_system.rank:
            raise ConfigurationError(f"simple index {i} out of range")
    return ParabolicDatum(parent=root_system, simple_indices=tuple(simple_indices))


def act(root_system: RootSystem, w: WeylElement, nu):
    return root_system.act(w, nu)


def is_dominant(nu, root_system: RootSystem) -> bool:
    return root_system.is_dominant(nu)

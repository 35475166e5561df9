import random
from fractions import Fraction as Fr

import pytest

from uhecke.builders import _parabolic_cached, algebra
from uhecke.golden import get_family, symbolic_family, _quotient_counts
from uhecke.heckecore import HeckeAlgebra
from uhecke.modules import steinberg
from uhecke.ratlinalg import mat_mul, transpose
from uhecke.rootdata import build_root_system, make_params
from uhecke.unitary import (
    NotHermitianError,
    PoleError,
    StandardFamily,
    hermitian_check,
    im_dual_module,
    rank_one_factors,
    spherical_full_operator,
    spherical_normalizer,
    spherical_signature_table,
    spherical_type_operator,
    unitary_set_1d,
)


def test_a1_rank_one_scalars():
    a1 = build_root_system("A1")
    H = HeckeAlgebra(a1, make_params(a1, 1))
    wc = H.wchars()
    sgn = next(c for c in wc.irreducibles() if c.values == wc.sign_values())
    for t in (Fr(1, 4), Fr(1), Fr(5, 6)):
        nu = (t, -t)
        f = rank_one_factors(H, nu)
        p = spherical_type_operator(H, sgn, nu, factors=f)
        x = 2 * t
        assert p[0][0] / spherical_normalizer(f) == (1 - x) / (1 + x)
    # <alpha, nu> = 2 gives -1/3 (non-unitary)
    f = rank_one_factors(H, (Fr(1), Fr(-1)))
    p = spherical_type_operator(H, sgn, (Fr(1), Fr(-1)), factors=f)
    assert p[0][0] / spherical_normalizer(f) == Fr(-1, 3)


def test_spherical_gram_route_vs_rank_one_route_small():
    # symbolic Hecke route: Gram entries eps(t_y^-1 t_x r_w0)(nu) vs the chain
    for cartan, params in (("A1", ("1", None)), ("A2", ("4/3", None)), ("B2", ("1", "3/2"))):
        rs = build_root_system(cartan)
        H = HeckeAlgebra(rs, make_params(rs, params[0], params[1]))
        w0 = rs.longest_element()
        r_w0 = H.intertwiner_element(w0)
        els = rs.weyl_elements()
        eps = {}
        for u in els:
            eps[u.index] = (H.t(u) * r_w0).epsilon()
        rng = random.Random(1)
        for _ in range(3):
            nu = [Fr(rng.randint(-4, 4), rng.randint(1, 5)) for _ in range(rs.ambient_dim)]
            chain = spherical_full_operator(H, nu)
            for xi in range(len(els)):
                for yi in range(len(els)):
                    u = rs.multiply(rs.inverse(els[yi]), els[xi])
                    want = eps[u.index].evaluate_identity(nu)
                    assert chain[yi][xi] == want


def test_d6_operator_example(f4, f4_labels):
    # cmd_operator example: 8_4 scalar at nu=1/4, c=2 equals 1/3
    sym = symbolic_family("D6", f4)
    low = f4_labels.chi("9_4")
    blk = sym.normalized_operator(f4_labels.chi("8_4"), low)
    assert blk[0][0].evaluate(Fr(1, 4)) == Fr(1, 3)


def test_quotient_character_example(f4, f4_labels):
    sym = symbolic_family("D6(a1)", f4)
    got = _quotient_counts(sym, f4_labels, "9_2", Fr(1, 2))
    assert got == {"9_2": 1, "8_4": 1, "2_4": 1}
    # generic nu: quotient is everything
    got_gen = _quotient_counts(sym, f4_labels, "9_2", Fr(1, 5))
    assert got_gen == f4_labels.decompose_named(sym.family.w_character())


def test_gram_w_invariance(g2_13):
    p = _parabolic_cached(g2_13, (1,))
    st = steinberg(g2_13, p)
    fam = StandardFamily(g2_13, p, st)
    op = fam.operator_at([Fr(1, 3), Fr(1, 3), Fr(-2, 3)])
    for i in range(2):
        a = op.target.ts[i]
        assert mat_mul(mat_mul(transpose(a), op.gram), a) == op.gram


def test_spherical_psd_at_zero(g2_13, g2_labels):
    table = spherical_signature_table(g2_13, g2_labels, [Fr(0)] * 3)
    assert table.unitary
    for name, (p, q, z) in table.entries.items():
        chi = g2_labels.chi(name)
        assert (p, q, z) == (chi.dim, 0, 0)
    # sum rule: total inertia counts the whole principal series
    assert sum(m * sum(table.entries[k]) for k, m in table.multiplicities.items()) == 12


def test_signature_sum_rule_f4(f4, f4_labels):
    nu = [Fr(7, 2), Fr(1, 3), Fr(1, 5), Fr(1, 11)]
    table = spherical_signature_table(f4, f4_labels, nu)
    total = sum(m * sum(table.entries[k]) for k, m in table.multiplicities.items())
    assert total == 1152


def test_hermitian_check(f4):
    p = _parabolic_cached(f4, ())
    from uhecke.modules import trivial_module

    tr = trivial_module(f4, p)
    res = hermitian_check(f4, p, tr, [Fr(1), Fr(1, 2), Fr(1, 3), Fr(1, 5)])
    assert res is not None and res[0] == f4.rs.longest_element()
    a2 = build_root_system("A2")
    Ha = HeckeAlgebra(a2, make_params(a2, 1))
    pa = _parabolic_cached(Ha, ())
    tra = trivial_module(Ha, pa)
    assert hermitian_check(Ha, pa, tra, [Fr(1), Fr(0), Fr(-1)]) is not None
    assert hermitian_check(Ha, pa, tra, [Fr(2), Fr(-1, 2), Fr(-3, 2)]) is None


def test_pole_error(f4, f4_labels):
    fam, dirs = get_family("D6", f4)
    with pytest.raises(PoleError):
        op = fam.operator_at([Fr(17, 2), 0, 0, 0])
        op.normalize_on(f4_labels.chi("9_4"))


def test_im_dual(f4, f4_labels):
    lm = f4_labels
    assert lm.sgn_twist_name("1_1") == "1_4"
    for name in lm.by_name:
        assert lm.sgn_twist_name(lm.sgn_twist_name(name)) == name
    # module-level involution keeps relations
    st = steinberg(f4)
    im = im_dual_module(st).validate()
    assert im.w_character() == f4.wchars().trivial_values()
    # the paper pair: Xbar(A3A2A1,1) is the IM-dual of Xbar(A5A1,1/2)
    qa = _quotient_counts(symbolic_family("A3+A2+A1", f4), lm, "4_4", Fr(1))
    qb = _quotient_counts(symbolic_family("A5+A1", f4), lm, "6_1", Fr(1, 2))
    assert {lm.sgn_twist_name(k): v for k, v in qb.items()} == qa


def test_unitary_set_1d_assembly():
    # verdicts: unitary on [0,1] and at the isolated point 2
    def ev(t):
        return t <= 1 or t == 2

    pieces = unitary_set_1d(ev, [Fr(1), Fr(2)], Fr(3))
    assert pieces == [(Fr(0), Fr(1), True, True), (Fr(2), Fr(2), True, True)]

    def ev2(t):
        return t < 1  # open at the breakpoint

    pieces2 = unitary_set_1d(ev2, [Fr(1)], Fr(2))
    assert pieces2 == [(Fr(0), Fr(1), True, False)]


def test_reducibility_rank_criterion_g2(g2_13, g2_labels):
    # full rank iff off every wall (small version of acceptance criterion 1)
    rs = g2_13.rs
    rng = random.Random(9)
    from uhecke.ratlinalg import det

    def full_rank(nu):
        factors = rank_one_factors(g2_13, nu)
        for chi in g2_13.wchars().irreducibles():
            p = spherical_type_operator(g2_13, chi, nu, factors=factors)
            if det(p) == 0:
                return False
        return True

    walls = [(a, g2_13.c_of(a)) for a in rs.positive_roots]
    for _ in range(6):
        n1, n2 = Fr(rng.randint(1, 9), 7), Fr(rng.randint(1, 9), 5)
        nu = _point_with_pairings(rs, n1, n2)
        on_wall = any(rs.pairing(a, nu) == c for a, c in walls)
        if not on_wall:
            assert full_rank(nu)
        alpha, c = walls[rng.randrange(len(walls))]
        scale = c / rs.pairing(alpha, nu)
        nu_wall = [scale * x for x in nu]
        assert not full_rank(nu_wall)


def _point_with_pairings(rs, n1, n2):
    from uhecke.ratlinalg import row_space_basis, solve, dot

    span = row_space_basis([list(a) for a in rs.simple_roots])
    a = [[dot(list(rs.simple_roots[i]), span[j]) for j in range(2)] for i in range(2)]
    cf = solve(a, [n1, n2])
    return [cf[0] * span[0][k] + cf[1] * span[1][k] for k in range(rs.ambient_dim)]

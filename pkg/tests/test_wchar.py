import random

from uhecke.builders import f4_levi_character, _parabolic_cached
from uhecke.labels import bipartition_values
from uhecke.rootdata import build_root_system
from uhecke.wchar import WeylChars


def test_class_counts(f4):
    wc = f4.wchars()
    assert len(wc.classes()) == 25
    g2 = WeylChars(build_root_system("G2", "paper-4.3"))
    assert len(g2.classes()) == 6
    a1 = WeylChars(build_root_system("A1"))
    assert len(a1.classes()) == 2


def test_character_table_orthogonality(f4):
    wc = f4.wchars()
    irr = wc.irreducibles()
    assert len(irr) == 25
    assert sum(c.dim**2 for c in irr) == 1152
    for i, a in enumerate(irr):
        for b in irr[i:]:
            expect = 1 if a is b else 0
            assert wc.inner(a.values, b.values) == expect
    assert all(v.denominator == 1 for c in irr for v in c.values)


def test_g2_dims():
    wc = WeylChars(build_root_system("G2", "paper-4.3"))
    assert sorted(c.dim for c in wc.irreducibles()) == [1, 1, 1, 1, 2, 2]


def test_b_invariants(f4):
    wc = f4.wchars()
    triv = next(c for c in wc.irreducibles() if c.values == wc.trivial_values())
    sgn = next(c for c in wc.irreducibles() if c.values == wc.sign_values())
    refl = next(c for c in wc.irreducibles() if c.dim == 4 and c.b_invariant == 1)
    assert triv.b_invariant == 0
    assert sgn.b_invariant == 24
    assert refl.b_invariant == 1


def test_labels_anchored(f4_labels):
    lm = f4_labels
    assert lm.chi("1_1").b_invariant == 0
    assert lm.chi("1_4").b_invariant == 24
    assert lm.chi("4_2").b_invariant == 1  # not b-ordered: anchors win
    assert lm.chi("9_1").b_invariant == 2
    assert lm.chi("9_4").b_invariant == 10
    assert lm.chi("16_1").dim == 16
    assert lm.notes  # the b-order overrides are reported


def test_induction_fixture_d6a1(f4, f4_labels):
    vals = f4_levi_character(f4, "C3:111x0")
    assert f4_labels.decompose_named(vals) == {
        "9_2": 1, "4_3": 1, "8_4": 1, "1_2": 1, "2_4": 1,
    }


def test_induction_fixture_a5a1(f4, f4_labels):
    vals = f4_levi_character(f4, "tA2+A1:sgn")
    assert f4_labels.decompose_named(vals) == {
        "6_1": 1, "16_1": 1, "8_4": 2, "8_2": 1, "4_3": 1, "4_5": 1,
        "12_1": 1, "9_2": 1, "9_4": 2, "2_4": 1, "1_4": 1,
    }


def test_identity_induction(f4):
    wc = f4.wchars()
    p = _parabolic_cached(f4, tuple(range(4)))
    sub_wc = WeylChars(p.subsystem)
    chi = wc.irreducibles()[7]
    vals = wc.restrict_to(sub_wc, chi.values)
    ind = wc.induce_from(sub_wc, vals)
    assert ind == chi.values


def test_frobenius_reciprocity(f4):
    wc = f4.wchars()
    p = _parabolic_cached(f4, (1, 2, 3))
    sub_wc = WeylChars(p.subsystem)
    rng = random.Random(3)
    for _ in range(6):
        chi_m = rng.choice(sub_wc.irreducibles())
        psi = rng.choice(wc.irreducibles())
        ind = wc.induce_from(sub_wc, chi_m.values)
        res = wc.restrict_to(sub_wc, psi.values)
        assert wc.inner(ind, psi.values) == sub_wc.inner(chi_m.values, res)


def test_tensor_sign_involution(f4):
    wc = f4.wchars()
    for chi in wc.irreducibles():
        assert wc.tensor_sign(wc.tensor_sign(chi.values)) == chi.values
    assert wc.tensor_sign(wc.trivial_values()) == wc.sign_values()


def test_sym_power_totals(f4):
    # sum over irreducibles of dim * mult_k equals dim Sym^k(reflection rep)
    wc = f4.wchars()
    from math import comb

    for k in range(5):
        total = sum(c.dim * wc.sym_power_multiplicity(c.values, k) for c in wc.irreducibles())
        assert total == comb(k + 3, 3)


def test_bipartition_characters(f4):
    p = _parabolic_cached(f4, (1, 2, 3))
    wc = WeylChars(p.subsystem)
    assert bipartition_values(wc, (), (1, 1, 1), "long")[0] == 1
    assert bipartition_values(wc, (1,), (1, 1), "long")[0] == 3
    assert bipartition_values(wc, (3,), (), "long")[0] == 1

    def partitions(n):
        out = []

        def rec(rest, mx, cur):
            if rest == 0:
                out.append(tuple(cur))
                return
            for k in range(min(rest, mx), 0, -1):
                rec(rest - k, k, cur + [k])

        rec(n, n, [])
        return out or [()]

    total = 0
    for a in range(4):
        for lam in partitions(a):
            for mu in partitions(3 - a):
                vals = bipartition_values(wc, lam, mu, "long")
                assert wc.inner(vals, vals) == 1  # irreducible
                total += vals[0] ** 2
    assert total == 48

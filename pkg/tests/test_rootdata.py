from fractions import Fraction as Fr

import pytest

from uhecke.rootdata import ConfigurationError, build_root_system, make_params, parabolic


def test_f4_coordinates_and_classes(f4):
    rs = f4.rs
    assert len(rs.positive_roots) == 24
    classes = rs.length_classes()
    short, long_ = sorted(classes)
    assert len(classes[short]) == 12 and len(classes[long_]) == 12
    assert (1, 1, 0, 0) in {tuple(a) for a in classes[short]}
    assert (0, 0, 0, 2) in {tuple(a) for a in classes[long_]}
    assert (1, 1, 1, 1) in {tuple(a) for a in classes[long_]}


def test_reflection_closure(f4):
    rs = f4.rs
    roots = set(rs.roots)
    for a in rs.simple_roots:
        s = rs.element(rs.reflection(a))
        for b in rs.roots:
            assert tuple(rs.act(s, b)) in roots


def test_g2_paper_coordinates():
    g2 = build_root_system("G2", "paper-4.3")
    assert g2.simple_roots[0] == [Fr(2, 3), Fr(-1, 3), Fr(-1, 3)]
    assert g2.simple_roots[1] == [Fr(-1), Fr(1), Fr(0)]
    assert len(g2.positive_roots) == 6


def test_a1_trivial():
    a1 = build_root_system("A1")
    assert len(a1.positive_roots) == 1
    assert a1.order == 2


def test_params(f4):
    pm = f4.params
    assert pm.value(f4.rs, (0, 0, 0, 2)) == 1
    assert pm.value(f4.rs, (1, 1, 0, 0)) == 2
    a2 = build_root_system("A2")
    with pytest.raises(ConfigurationError):
        make_params(a2, 1, 2)
    with pytest.raises(ConfigurationError):
        make_params(a2, -1)
    with pytest.raises(ConfigurationError):
        build_root_system("H3")


def test_weyl_enumeration(f4):
    rs = f4.rs
    assert rs.order == 1152 == 2 * 6 * 8 * 12
    assert rs.longest_element().length == 24
    g2 = build_root_system("G2", "paper-4.3")
    assert g2.order == 12
    assert g2.longest_element().length == 6


def test_longest_element_action(f4):
    rs = f4.rs
    w0 = rs.longest_element()
    assert all(w0.matrix[i][j] == (-1 if i == j else 0) for i in range(4) for j in range(4))
    a2 = build_root_system("A2")
    w0a = a2.longest_element()
    assert any(tuple(a2.act(w0a, a)) != tuple(-x for x in a) for a in a2.positive_roots)


def test_parabolic_cosets(f4):
    rs = f4.rs
    p_empty = parabolic(rs, ())
    assert len(p_empty.coset_reps) == 1152
    assert p_empty.w_m == rs.longest_element()
    p_a1 = parabolic(rs, (1,))
    assert len(p_a1.coset_reps) == 576
    p_c3 = parabolic(rs, (1, 2, 3))
    assert len(p_c3.coset_reps) == 24
    assert len(p_c3.wm_indices) * len(p_c3.coset_reps) == 1152
    simples = {tuple(a) for a in rs.simple_roots}
    for a in p_c3.subsystem.simple_roots:
        img = tuple(rs.act(p_c3.w_m, a))
        assert img in simples


def test_coset_rep_length_additivity(f4):
    rs = f4.rs
    p = parabolic(rs, (1, 2, 3))
    els = rs.weyl_elements()
    for x in p.coset_reps:
        for mi in p.wm_indices:
            m = els[mi]
            assert rs.multiply(x, m).length == x.length + m.length


def test_act_and_dominance(f4):
    rs = f4.rs
    w0 = rs.longest_element()
    nu = [Fr(17, 2), Fr(9, 2), Fr(5, 2), Fr(1, 2)]
    assert rs.act(w0, nu) == [-x for x in nu]
    assert rs.act(rs.identity(), nu) == nu
    assert rs.is_dominant(nu)
    assert not rs.is_dominant([Fr(1), Fr(2), Fr(0), Fr(0)])


def test_reduced_words_and_inversions(f4):
    import random

    rs = f4.rs
    rng = random.Random(11)
    for e in rng.sample(rs.weyl_elements(), 8):
        assert rs.from_word(e.word) == e
        assert e.length == rs.inversion_count(e)

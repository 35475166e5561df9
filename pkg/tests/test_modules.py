import random
from fractions import Fraction as Fr

import pytest

from uhecke.builders import _parabolic_cached, algebra
from uhecke.golden import build_sigma, get_family
from uhecke.labels import bipartition_values
from uhecke.modules import (
    ModuleDatum,
    ModuleError,
    induce,
    module_from_json,
    one_dim_modules,
    principal_series,
    reduce_to_real,
    split_irreducible,
    steinberg,
    trivial_module,
)
from uhecke.rootdata import build_root_system, make_params
from uhecke.heckecore import HeckeAlgebra
from uhecke.wchar import WeylChars


def test_steinberg_central_characters(f4, g2_13):
    st = steinberg(f4)
    chi = [st.omegas[i][0][0] for i in range(4)]
    assert sorted((abs(x) for x in chi), reverse=True) == [Fr(17, 2), Fr(9, 2), Fr(5, 2), Fr(1, 2)]
    assert st.is_discrete_series()
    assert WeylChars(f4.rs).sign_values() == st.w_character()

    stg = steinberg(g2_13)
    chig = [stg.omegas[i][0][0] for i in range(3)]
    assert any(tuple(g2_13.rs.act(w, chig)) == (Fr(3), Fr(4), Fr(-7)) for w in g2_13.rs.weyl_elements())

    a1 = build_root_system("A1")
    Ha = HeckeAlgebra(a1, make_params(a1, 1))
    sta = steinberg(Ha)
    assert a1.pairing(a1.simple_roots[0], [sta.omegas[i][0][0] for i in range(2)]) == -1


def test_one_dim_modules(f4):
    p = _parabolic_cached(f4, (1, 2, 3))
    mods = one_dim_modules(f4, p)
    assert len(mods) == 4
    ds_chars = [tuple(m.omegas[i][0][0] for i in range(4)) for m, ds in mods if ds]
    assert len(ds_chars) == 2  # Steinberg and the D6(a1) sigma
    assert (Fr(0), Fr(-7, 2), Fr(-3, 2), Fr(1, 2)) in ds_chars
    triv = [m for m, ds in mods if all(m.ts[i][0][0] == 1 for i in (1, 2, 3))]
    assert not triv[0].is_discrete_series()

    a1 = build_root_system("A1")
    Ha = HeckeAlgebra(a1, make_params(a1, 1))
    assert len(one_dim_modules(Ha)) == 2


def test_principal_series_g2(g2_13):
    ps = principal_series(g2_13, [Fr(1), Fr(1), Fr(-2)])
    ps.validate()
    assert ps.dim == 12
    wc = WeylChars(g2_13.rs)
    assert ps.w_character() == wc.regular_values()
    wts = ps.weights()
    assert sum(m for _, m in wts) == 12
    # lambda = 0: all generalized weights vanish (nilpotent coordinate action)
    ps0 = principal_series(g2_13, [Fr(0)] * 3)
    wts0 = ps0.weights()
    assert wts0 == [((Fr(0), Fr(0), Fr(0)), 12)]


def test_induce_d6(f4, f4_labels):
    p = _parabolic_cached(f4, (1, 2, 3))
    st = steinberg(f4, p)
    x = induce(f4, p, st, nu=(Fr(1, 3), 0, 0, 0))
    x.validate()
    assert x.dim == 24
    assert f4_labels.decompose_named(x.w_character()) == {
        "9_4": 1, "8_4": 1, "4_5": 1, "2_4": 1, "1_4": 1,
    }


def test_induce_full_parabolic_is_sigma(f4):
    p = _parabolic_cached(f4, (0, 1, 2, 3))
    st = steinberg(f4, p)
    x = induce(f4, p, st)
    assert x.dim == 1
    assert [x.omegas[i][0][0] for i in range(4)] == [st.omegas[i][0][0] for i in range(4)]


def test_induce_empty_is_principal_series(f4):
    p = _parabolic_cached(f4, ())
    tr = trivial_module(f4, p)
    lam = [Fr(1, 2), Fr(1, 3), Fr(1, 5), Fr(1, 7)]
    x = induce(f4, p, tr, nu=lam, validate=False)
    assert x.dim == 1152
    wc = WeylChars(f4.rs)
    assert x.w_character() == wc.regular_values()
    wts = dict(x.weights())
    assert wts[tuple(lam)] == 1
    assert sum(wts.values()) == 1152


def test_split_c3_four_dim_ds(f4):
    sigma = build_sigma((f4.rs.cartan_type, "2", "1"), (1, 2, 3), repr(sorted({
        "kind": "split", "lambda": ("0", "5/2", "3/2", "1/2"), "dim": 4, "discrete": True,
    }.items())))
    assert sigma.dim == 4
    assert sigma.is_discrete_series()
    p = _parabolic_cached(f4, (1, 2, 3))
    wc = WeylChars(p.subsystem)
    want = tuple(
        a + b
        for a, b in zip(
            bipartition_values(wc, (1,), (1, 1), "long"),
            bipartition_values(wc, (), (1, 1, 1), "long"),
        )
    )
    assert sigma.w_character() == want  # 1x11 + 0x111


def test_split_b3_two_dim_ds(f4):
    sigma = build_sigma((f4.rs.cartan_type, "2", "1"), (0, 1, 2), repr(sorted({
        "kind": "split", "lambda": ("3/2", "-3/2", "3/2", "1/2"), "dim": 2, "discrete": True,
    }.items())))
    assert sigma.dim == 2
    assert sigma.is_discrete_series()
    p = _parabolic_cached(f4, (0, 1, 2))
    wc = WeylChars(p.subsystem)
    assert sigma.w_character() == bipartition_values(wc, (), (2, 1), "short")  # 0x12


def test_split_irreducible_input_unchanged(f4):
    sigma = build_sigma((f4.rs.cartan_type, "2", "1"), (0, 1, 2), repr(sorted({
        "kind": "split", "lambda": ("3/2", "-3/2", "3/2", "1/2"), "dim": 2, "discrete": True,
    }.items())))
    again = split_irreducible(sigma, seed=3)
    assert len(again) == 1 and again[0].dim == 2


def test_split_trace_identity(f4):
    p = _parabolic_cached(f4, (1, 2))
    ps = principal_series(f4, [Fr(0), Fr(0), Fr(5, 2), Fr(1, 2)], p)
    factors = split_irreducible(ps, seed=1)
    assert sum(f.dim for f in factors) == ps.dim
    rng = random.Random(2)
    gens_idx = list(p.simple_indices)
    for _ in range(10):
        word = [rng.choice(gens_idx) for _ in range(rng.randint(1, 4))]
        tr_full = sum(ps.act_t_word(word)[i][i] for i in range(ps.dim))
        tr_parts = sum(
            sum(f.act_t_word(word)[i][i] for i in range(f.dim)) for f in factors
        )
        assert tr_full == tr_parts


def test_temperedness_flags(f4):
    st = steinberg(f4)
    assert st.is_tempered() and st.is_discrete_series()
    ps = principal_series(f4, [Fr(8), Fr(4), Fr(2), Fr(1)], _parabolic_cached(f4, (1, 2)))
    assert not ps.is_tempered()


def test_reduce_to_real(f4):
    # Im nu regular: no root annihilates it
    simple, datum = reduce_to_real(f4, None, None, [Fr(0)] * 4, [Fr(8), Fr(4), Fr(2), Fr(1)])
    assert simple == []
    # Im nu = 0: no-op
    res = reduce_to_real(f4, None, None, [Fr(1)] * 4, [Fr(0)] * 4)
    assert res[0] is None
    # Im nu perpendicular to exactly the C3 subsystem
    simple, _ = reduce_to_real(f4, None, None, [Fr(0)] * 4, [Fr(1), Fr(0), Fr(0), Fr(0)])
    assert sorted(tuple(a) for a in simple) == sorted(
        [(0, 0, 0, 2), (0, 0, 1, -1), (0, 1, -1, 0)]
    )


def test_module_json_roundtrip(f4):
    p = _parabolic_cached(f4, (1, 2, 3))
    st = steinberg(f4, p)
    data = st.to_json()
    loaded = module_from_json(f4, p, data)
    assert loaded.dim == 1
    assert [loaded.omegas[i][0][0] for i in range(4)] == [st.omegas[i][0][0] for i in range(4)]
    # corrupt a relation: loader must reject
    data_bad = st.to_json()
    data_bad["ts_matrices"]["1"] = [["2"]]
    with pytest.raises(ModuleError):
        module_from_json(f4, p, data_bad)

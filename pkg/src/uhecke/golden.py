"""Golden-fixture verification runs.

Each runner returns a report dict {"fixture", "checks": [...], "ok"} where a
check is {"name", "ok", "detail"}.  The CLI turns failed reports into exit
code 2; the acceptance suite asserts on them directly.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from . import builders as fx
from . import ratfunc as rf
from .chambers import Constraint, margin_lp
from .heckecore import HeckeAlgebra
from .labels import LabelMap
from .modules import ModuleDatum, _one_dim, principal_series, split_irreducible, steinberg
from .ratlinalg import F0, F1, dot, frac, mat_identity, mat_mul, rank
from .unitary import (
    PoleError,
    Region,
    StandardFamily,
    SymbolicFamily,
    family_breakpoints,
    langlands_quotient_character,
    rank_one_factors,
    scan_spherical,
    spherical_gram_block,
    spherical_normalizer,
    spherical_signature_table,
    spherical_type_operator,
    unitary_set_1d,
    verify_interval,
)


def _counts(s: str):
    if not s:
        return {}
    return {part.split(":")[0]: int(part.split(":")[1]) for part in s.split()}


def _report(fixture, checks):
    return {"fixture": fixture, "checks": checks, "ok": all(c["ok"] for c in checks)}


def _check(name, ok, detail=""):
    return {"name": name, "ok": bool(ok), "detail": str(detail)}


# ---------------------------------------------------------------------------
# Family registry
# ---------------------------------------------------------------------------

_FAMILY_DEFS = {
    # name: (levi indices, sigma spec, directions)
    "D6": ((1, 2, 3), {"kind": "steinberg"}, (("1", "0", "0", "0"),)),
    "D6(a1)": ((1, 2, 3), {"kind": "onedim", "signs": {1: 1, 2: -1, 3: -1}}, (("1", "0", "0", "0"),)),
    "D5+A1": ((0, 1, 2), {"kind": "steinberg"}, (("1", "1", "0", "0"),)),
    "D6(a2)": ((1, 2, 3), {"kind": "split", "lambda": ("0", "5/2", "3/2", "1/2"), "dim": 4, "discrete": True}, (("1", "0", "0", "0"),)),
    "A5+A1": ((0, 2, 3), {"kind": "steinberg"}, (("3/2", "1/2", "1/2", "1/2"),)),
    "D5(a1)+A1": ((0, 1, 2), {"kind": "split", "lambda": ("3/2", "-3/2", "3/2", "1/2"), "dim": 2, "discrete": True}, (("1", "1", "0", "0"),)),
    "A3+A2+A1": ((0, 1, 3), {"kind": "steinberg"}, (("2", "1", "1", "0"),)),
    "A5''": ((2, 3), {"kind": "steinberg"}, (("3/2", "1/2", "1/2", "1/2"), ("1", "0", "0", "0"))),
    "D4+A1": ((1, 2), {"kind": "steinberg"}, (("1", "0", "0", "0"), ("0", "1", "0", "0"))),
    "D4(a1)+A1:phi1": ((0, 1, 2), {"kind": "split", "lambda": ("0", "0", "-3/2", "1/2"), "dim": 5, "discrete": False}, (("1", "1", "0", "0"),)),
    "D4(a1)+A1:phi2": ((0, 1, 2), {"kind": "onedim", "signs": {0: 1, 1: 1, 2: -1}}, (("1", "1", "0", "0"),)),
    "A3+2A1": ((1, 3), {"kind": "steinberg"}, (("1", "0", "0", "0"), ("0", "1", "1", "0"))),
    "A3A1''": ((3,), {"kind": "steinberg"}, (("1/2", "1/2", "0", "0"), ("1/2", "-1/2", "0", "0"), ("0", "0", "1/2", "1/2"))),
    "A2+3A1": ((0, 1), {"kind": "steinberg"}, (("2", "1", "1", "0"), ("1", "1", "0", "0"))),
    "4A1": ((1,), {"kind": "steinberg"}, (("1", "0", "0", "0"), ("0", "1", "0", "0"), ("0", "0", "1", "0"))),
}


@lru_cache(maxsize=None)
def build_sigma(cartan_key, levi, sigma_key) -> ModuleDatum:
    H = _alg_from_key(cartan_key)
    p = fx._parabolic_cached(H, levi)
    import ast

    spec = dict(ast.literal_eval(sigma_key))
    kind = spec["kind"]
    if kind == "steinberg":
        return steinberg(H, p)
    if kind == "onedim":
        signs = {int(k): (F1 if int(v) > 0 else -F1) for k, v in spec["signs"].items()}
        return _one_dim(H, p, signs, f"onedim{sorted(signs.items())}")
    if kind == "split":
        lam = [frac(x) for x in spec["lambda"]]
        ps = principal_series(H, lam, p)
        factors = split_irreducible(ps, seed=7)
        want_dim = int(spec["dim"])
        want_ds = bool(spec["discrete"])
        for f in factors:
            if f.dim != want_dim:
                continue
            if want_ds and not f.is_discrete_series():
                continue
            if not want_ds and not f.is_tempered():
                continue
            f.validate()
            return f
        raise RuntimeError(f"no tempered factor of dim {want_dim} at {lam}")
    raise ValueError(f"unknown sigma kind {kind!r}")


def _alg_from_key(key):
    t, l, s = key
    return fx.algebra(t, l, s)


def get_family(name, algebra=None) -> tuple:
    """(StandardFamily, directions) for a registered family name."""
    H = algebra or fx.f4_12()
    levi, spec, dirs = _FAMILY_DEFS[name]
    key = (H.rs.cartan_type,) + _params_key(H)
    sigma = build_sigma(key, levi, repr(sorted(spec.items())))
    p = fx._parabolic_cached(H, levi)
    fam = StandardFamily(H, p, sigma, name=name)
    directions = tuple(tuple(frac(x) for x in d) for d in dirs)
    return fam, directions


@lru_cache(maxsize=None)
def _symbolic(name, algebra_key) -> SymbolicFamily:
    H = _alg_from_key(algebra_key)
    fam, dirs = get_family(name, H)
    if len(dirs) != 1:
        raise ValueError(f"family {name} is not one-parameter")
    return SymbolicFamily(fam, dirs[0])


def symbolic_family(name, H=None) -> SymbolicFamily:
    H = H or fx.f4_12()
    key = (H.rs.cartan_type,) + _params_key(H)
    return _symbolic(name, key)


def _params_key(H):
    pairs = sorted(H.params.by_length_sq)
    if len(pairs) == 1:
        return (str(pairs[0][1]), None)
    return (str(pairs[1][1]), str(pairs[0][1]))


def sigma_char(sigma: ModuleDatum):
    """Central character vector of a one- or multi-dim sigma (its A-line base)."""
    if sigma.dim == 1:
        return [sigma.omegas[i][0][0] for i in range(len(sigma.omegas))]
    # use any weight hint: the W(M)-orbit is what matters for lines
    return list(sigma.weight_hints[0])


# ---------------------------------------------------------------------------
# Criterion 8: Steinberg central characters (calibration gate)
# ---------------------------------------------------------------------------


def run_steinberg_chars():
    H = fx.f4_12()
    rs = H.rs
    table = fx.load_fixture("nilpotent_table.json")
    checks = []
    samples = [(Fraction(1, 3), Fraction(2, 5), Fraction(1, 7)), (Fraction(3, 4), Fraction(1, 5), Fraction(2, 9))]
    for row in table["rows"]:
        if row.get("kind") == "steinberg-full":
            st = steinberg(H)
            chi = [st.omegas[i][0][0] for i in range(4)]
            expected = [frac(x) for x in row["base"]]
            ok = _same_orbit(rs, chi, expected)
            checks.append(_check(f"Steinberg(F4) = {row['base']}", ok, chi))
            continue
        if "levi" not in row or "sigma" not in row:
            continue
        levi = tuple(row["levi"])
        p = fx._parabolic_cached(H, levi)
        if row["sigma"] == "steinberg":
            sig = steinberg(H, p)
        else:
            signs_str = row["sigma"].split(":")[1]
            signs = {i: (F1 if ch == "+" else -F1) for i, ch in zip(levi, signs_str)}
            sig = _one_dim(H, p, signs, row["sigma"])
        chi0 = [sig.omegas[i][0][0] for i in range(4)]
        dirs = [[frac(x) for x in d] for d in row["directions"]]
        base = [frac(x) for x in row["base"]]
        levi_roots = [rs.simple_roots[i] for i in levi]
        ok_all = True
        for sample in samples:
            nu = [sum(sample[k] * dirs[k][i] for k in range(len(dirs))) for i in range(4)]
            point = [base[i] + nu[i] for i in range(4)]
            # the table point must be W-conjugate into the family line
            # {chi_sigma + v : v perp Pi_M}
            ok = any(
                all(
                    dot(list(a), [x - y for x, y in zip(rs.act(w, point), chi0)]) == 0
                    for a in levi_roots
                )
                for w in rs.weyl_elements()
            )
            ok_all = ok_all and ok
        checks.append(_check(f"{row['orbit']}: char line {row['base']} + nu*dirs", ok_all, chi0))
    return _report("steinberg-chars", checks)


def _same_orbit(rs, a, b):
    a = [frac(x) for x in a]
    b = [frac(x) for x in b]
    for w in rs.weyl_elements():
        if rs.act(w, a) == b:
            return True
    return False


# ---------------------------------------------------------------------------
# Criterion 5: maximal-parabolic operator tables and intervals
# ---------------------------------------------------------------------------


def run_maxpar_tables(c_values=("2", "5/2")):
    data = fx.load_fixture("maxpar_tables.json")
    lm = fx.f4_labels()
    checks = []
    for name, case in data["cases"].items():
        cs = [frac(c) for c in c_values] if case["general_c"] else [Fraction(2)]
        for c in cs:
            H = fx.algebra("F4", "1", str(c))
            lmap = lm  # labels are parameter-independent
            sym = symbolic_family(name, H)
            fam = sym.family
            # W-structure
            got = lmap.decompose_named(fam.w_character())
            expected = _counts(case["wchar"])
            checks.append(_check(f"{name}@c={c}: W-structure", got == expected, got))
            # central character line at two points
            base = [frac(x) for x in case["char_base"]]
            if "char_cdir" in case:
                base = [b + c * frac(x) for b, x in zip(base, case["char_cdir"])]
            direction = [frac(x) for x in case["direction"]]
            chi0 = sigma_char(fam.sigma)
            ok_char = all(
                _same_orbit(H.rs, [chi0[i] + t * direction[i] for i in range(4)],
                            [base[i] + t * direction[i] for i in range(4)])
                for t in (Fraction(1, 3), Fraction(2, 7))
            )
            checks.append(_check(f"{name}@c={c}: central character line", ok_char, chi0))
            # operators as exact rational functions
            low = lmap.chi(case["lowest"])
            for tname, entry in case["operators"].items():
                chi = lmap.chi(tname)
                num = rf.from_factors(entry["num"], c)
                den = rf.from_factors(entry["den"], c)
                expect = rf.RationalFunction(num, den)
                if entry.get("det"):
                    blk = sym.normalized_operator(chi, low)
                    got_rf = _det2(blk)
                else:
                    blk = sym.normalized_operator(chi, low)
                    if len(blk) != 1:
                        checks.append(_check(f"{name}@c={c}: {tname} multiplicity", False, len(blk)))
                        continue
                    got_rf = blk[0][0]
                checks.append(
                    _check(f"{name}@c={c}: r_[{tname}]", got_rf == expect, f"{got_rf} vs {expect}")
                )
    # stated quotient decompositions
    for dec in data["decompositions"]:
        sym = symbolic_family(dec["family"])
        lmc = fx.f4_labels()
        low_name = data["cases"][dec["family"]]["lowest"]
        got = _quotient_counts(sym, lmc, low_name, frac(dec["point"]))
        expected = _counts(dec["quotient"])
        checks.append(_check(f"quotient {dec['family']}@{dec['point']}", got == expected, got))
    return _report("maxpar-tables", checks)


def _det2(blk):
    if len(blk) == 1:
        return blk[0][0]
    if len(blk) == 2:
        return blk[0][0] * blk[1][1] * _rf_one() + _rf_neg(blk[0][1] * blk[1][0])
    raise ValueError("determinant comparison only for blocks of size <= 2")


def _rf_one():
    return rf.RationalFunction(rf.ONE, rf.ONE)


def _rf_neg(r):
    return rf.RationalFunction(rf.neg(r.num), r.den)


def _quotient_counts(sym: SymbolicFamily, lmap: LabelMap, lowest_name, t):
    low = lmap.chi(lowest_name)
    wc = sym.family.algebra.wchars()
    present = wc.decompose(sym.family.w_character())
    out = {}
    for chi in present:
        m = sym.quotient_multiplicity_at(chi, low, t)
        if m:
            out[lmap.name(chi)] = m
    return out


def run_maxpar_intervals(c="2"):
    data = fx.load_fixture("maxpar_tables.json")
    lm = fx.f4_labels()
    checks = []
    for name, case in data["cases"].items():
        if str(c) not in case["intervals"]:
            continue
        H = fx.algebra("F4", "1", str(c)) if case["general_c"] else fx.f4_12()
        if not case["general_c"] and frac(c) != 2:
            continue
        sym = symbolic_family(name, H)
        fam = sym.family
        low = lm.chi(case["lowest"])
        wc = H.wchars()
        present = list(wc.decompose(fam.w_character()))
        chi0 = sigma_char(fam.sigma)
        direction = [frac(x) for x in case["direction"]]
        bps = family_breakpoints(H, chi0, direction, 12)

        def evalq(t, _sym=sym, _present=present, _low=low):
            try:
                return all(
                    _sym.signature_at(chi, _low, t)[1] == 0 for chi in _present
                )
            except ZeroDivisionError:
                raise PoleError(f"pole at t={t}")

        lo, hi = case["intervals"][str(c)]
        ok, pieces = verify_interval(evalq, bps, 12, frac(hi))
        checks.append(
            _check(
                f"{name}@c={c}: unitary interval [0,{hi}] incl. endpoints",
                ok,
                [(str(a), str(b), ca, cb) for a, b, ca, cb in pieces],
            )
        )
    return _report("maxpar-intervals", checks)


# ---------------------------------------------------------------------------
# Criterion 6: W-structure table
# ---------------------------------------------------------------------------


def run_w_structure():
    data = fx.load_fixture("w_structure.json")
    lm = fx.f4_labels()
    H = fx.f4_12()
    wc = H.wchars()
    checks = []
    for row in data["induced_rows"]:
        parts = row["levi_char"].split("|")
        expected = fx.f4_levi_character(H, parts[0])
        for extra in parts[1:]:
            expected = tuple(
                a + b for a, b in zip(expected, fx.f4_levi_character(H, extra))
            )
        if row["family"] == "spherical":
            got = wc.regular_values()
        else:
            fam, _ = get_family(row["family"], H)
            got = fam.w_character()
        ok = tuple(got) == tuple(expected)
        lwt_ok = lm.decompose_named(got).get(row["lwt"], 0) >= 1
        checks.append(
            _check(
                f"{row['orbit']} ({row['lwt']}): X|_W = Ind[{row['levi_char']}]",
                ok and lwt_ok,
                lm.decompose_named(got),
            )
        )
    ds_chars = {}
    for row in data["ds_rows"]:
        derive = row["derive"]
        expected = _counts(row["expected"])
        if derive["kind"] == "complement":
            got = _complement_counts(derive["family"], frac(derive["point"]), lm)
        elif derive["kind"] == "onedim":
            signs = {i: (F1 if ch == "+" else -F1) for i, ch in enumerate(derive["signs"])}
            datum = _one_dim(H, None, signs, f"onedim{derive['signs']}")
            if not datum.is_discrete_series():
                checks.append(_check(f"{row['orbit']} ({row['lwt']}): one-dim ds", False, "not a ds"))
                continue
            got = lm.decompose_named(datum.w_character())
        elif derive["kind"] == "ledger":
            got = _ledger_counts(derive, lm, ds_chars)
        ds_chars[(row["orbit"], row["lwt"])] = got
        checks.append(
            _check(f"{row['orbit']} ({row['lwt']}): ds W-structure", got == expected, got)
        )
    for cc in data["cross_checks"]:
        lhs = _side_counts(cc["lhs"], lm, ds_chars)
        rhs = _side_counts(cc["rhs"], lm, ds_chars)
        checks.append(_check(cc["anchor"], lhs == rhs, f"{lhs} vs {rhs}"))
    return _report("w-structure", checks)


def _complement_counts(family_name, t, lm):
    sym = symbolic_family(family_name)
    data = fx.load_fixture("maxpar_tables.json")
    low_name = data["cases"][family_name]["lowest"]
    full = lm.decompose_named(sym.family.w_character())
    quot = _quotient_counts(sym, lm, low_name, t)
    return {k: v for k in full for v in [full[k] - quot.get(k, 0)] if v}


def _ledger_counts(derive, lm, ds_chars):
    total = {}

    def add(counts, sign):
        for k, v in counts.items():
            total[k] = total.get(k, 0) + sign * v

    for item in derive["plus"]:
        add(_side_item(item, lm, ds_chars), 1)
    for item in derive["minus"]:
        add(_side_item(item, lm, ds_chars), -1)
    return {k: v for k, v in total.items() if v}


def _side_item(item, lm, ds_chars):
    kind = item[0]
    if kind == "full":
        sym = symbolic_family(item[1])
        return lm.decompose_named(sym.family.w_character())
    if kind == "quotient":
        sym = symbolic_family(item[1])
        data = fx.load_fixture("maxpar_tables.json")
        return _quotient_counts(sym, lm, data["cases"][item[1]]["lowest"], frac(item[2]))
    if kind == "ds":
        return dict(ds_chars[(item[1], item[2])])
    if kind == "named":
        return _counts(item[1])
    raise ValueError(kind)


def _side_counts(items, lm, ds_chars):
    total = {}
    for item in items:
        for k, v in _side_item(item, lm, ds_chars).items():
            total[k] = total.get(k, 0) + v
    return {k: v for k, v in total.items() if v}


# ---------------------------------------------------------------------------
# Criterion 7: the G2 unitary-dual table rows
# ---------------------------------------------------------------------------


def run_g2_table():
    data = fx.load_fixture("g2_table.json")
    alg = data["algebra"]
    H = fx.algebra(alg["type"], alg["long"], alg["short"])
    lm = fx.g2_labels(alg["long"], alg["short"])
    rs = H.rs
    checks = []
    for row in data["rows"]:
        if row.get("kind") == "steinberg":
            st = steinberg(H)
            chi = [st.omegas[i][0][0] for i in range(3)]
            ok = _same_orbit(rs, chi, [frac(x) for x in row["char_dominant"]])
            lwt_ok = lm.decompose_named(st.w_character()) == {row["lwt"]: 1}
            checks.append(_check(f"{row['orbit']}: Steinberg char + LWT {row['lwt']}", ok and lwt_ok, chi))
            continue
        levi = tuple(row["levi_indices"])
        p = fx._parabolic_cached(H, levi)
        sigma = steinberg(H, p)
        fam = StandardFamily(H, p, sigma, name=row["orbit"])
        direction = [frac(x) for x in row["direction"]]
        sym = SymbolicFamily(fam, direction)
        # central character line
        chi0 = sigma_char(sigma)
        base = [frac(x) for x in row["char_base"]]
        ok_char = all(
            _same_orbit(rs, [chi0[i] + t * direction[i] for i in range(3)],
                        [base[i] + t * direction[i] for i in range(3)])
            for t in (Fraction(1, 5), Fraction(2, 7))
        )
        checks.append(_check(f"{row['orbit']}: central character line", ok_char, chi0))
        # LWT: multiplicity one and operator normalized there
        low = lm.chi(row["lwt"])
        present = lm.decompose_named(fam.w_character())
        checks.append(_check(f"{row['orbit']}: LWT {row['lwt']} multiplicity one", present.get(row["lwt"]) == 1, present))
        wc = H.wchars()
        types = list(wc.decompose(fam.w_character()))
        bps = family_breakpoints(H, chi0, direction, 8)

        def evalq(t, _s=sym, _types=types, _low=low):
            return all(_s.signature_at(chi, _low, t)[1] == 0 for chi in _types)

        lo, hi = row["interval"]
        pieces = unitary_set_1d(evalq, bps, 8)
        expected = [(F0, frac(hi), True, True)]
        for pt in row.get("extra_isolated", []):
            expected.append((frac(pt), frac(pt), True, True))
        ok = pieces == expected
        checks.append(
            _check(f"{row['orbit']}: unitary interval [0,{hi}] (+{len(expected)-1} isolated)",
                   ok, [(str(a), str(b), ca, cb) for a, b, ca, cb in pieces])
        )
    return _report("g2-table", checks)


# ---------------------------------------------------------------------------
# Criterion 3: the nine-case G2 complementary series
# ---------------------------------------------------------------------------


def _region_member(sample, region, c, pairings):
    for coeffs, rel, rhs in region:
        a, b = frac(coeffs[0]), frac(coeffs[1])
        val = a * pairings[0] + b * pairings[1]
        bound = frac(rhs[0]) + frac(rhs[1]) * c
        if rel == "<" and not val < bound:
            return False
        if rel == ">" and not val > bound:
            return False
    return True


def run_nine_cases(cs=None):
    data = fx.load_fixture("g2_nine_cases.json")
    checks = []
    for c_str, regions in data["cases"].items():
        if cs is not None and c_str not in cs:
            continue
        c = frac(c_str)
        H = fx.algebra("G2", c_str, "1")
        lm = fx.g2_labels("1", "3")  # label map of W(G2) is parameter-free
        lm = _g2_labelmap_for(H)
        rs = H.rs
        regs = scan_spherical(H, lm, wall_filter="all", bound=4 * (1 + max(c, 1)))
        bad = []
        for reg in regs:
            nu = reg.samples[0]
            pair = (rs.pairing(rs.simple_roots[0], nu), rs.pairing(rs.simple_roots[1], nu))
            member = any(_region_member(nu, region, c, pair) for region in regions)
            if member != reg.verdict:
                bad.append((tuple(str(x) for x in pair), reg.verdict, member, reg.witness))
        checks.append(
            _check(f"c={c_str}: chamber set matches the stated regions ({len(regs)} chambers)",
                   not bad, bad[:6])
        )
    return _report("nine-cases", checks)


@lru_cache(maxsize=None)
def _g2_labelmap_for(H):
    # per-algebra W(G2) label map: labels are group-level so reuse the anchored one
    base = fx.g2_labels("1", "3")
    wc = H.wchars()
    wc.irreducibles()
    # transfer by character values (same group data, separately cached contexts)
    by_name = {}
    for name, chi in base.by_name.items():
        match = next(c for c in wc.irreducibles() if c.values == chi.values)
        by_name[name] = match
    from .labels import LabelMap

    return LabelMap(wchars=wc, by_name=by_name,
                    name_of={c.values: n for n, c in by_name.items()})


# ---------------------------------------------------------------------------
# Criterion 4: F4 spherical regions
# ---------------------------------------------------------------------------


def run_f4_regions(c_str="2", samples=3):
    data = fx.load_fixture("f_regions.json")
    c = frac(c_str)
    H = fx.algebra("F4", "1", c_str)
    lm = fx.f4_labels()
    rs = H.rs
    checks = []
    cut = ([frac(x) for x in data["cut"]["coeffs"]],
           frac(data["cut"]["rhs"][0]) + frac(data["cut"]["rhs"][1]) * c)
    petite = data["petite_types"]
    regs = scan_spherical(H, lm, wall_filter="long", cut=cut, petite=petite, samples=samples)
    if c_str == "2":
        counts = data["long_wall_chambers_in_K"]
        checks.append(
            _check(f"long-wall chamber count in C cap K at c=2 == {counts['at_c2']}",
                   len(regs) == counts["at_c2"], len(regs))
        )
        # the proof's count of 19 is the generic-c one; reproduce it there
        from .chambers import enumerate_chambers as _enum

        cg = frac(counts["generic_c"])
        rs_walls = []
        classes = rs.length_classes()
        long_sq = sorted(classes)[1]
        rs_walls = sorted((tuple(a), F1) for a in classes[long_sq])
        base = [Constraint(tuple(a), F0, 1) for a in rs.simple_roots]
        base.append(Constraint((F1, F1, F0, F0), cg, -1))
        cells = _enum(rs_walls, base, 4, 40, samples=1)
        checks.append(
            _check(f"generic-c (c={counts['generic_c']}) long-wall chamber count == 19",
                   len(cells) == counts["generic_count"], len(cells))
        )
    expected_names = data["unitary_in_K"][c_str]

    def in_region(reg, ineqs):
        nu = reg.samples[0]
        for coeffs, rel, rhs in ineqs:
            val = dot([frac(x) for x in coeffs], list(nu))
            bound = frac(rhs[0]) + frac(rhs[1]) * c
            if rel == "<" and not val < bound:
                return False
            if rel == ">" and not val > bound:
                return False
        return True

    bad = []
    for reg in regs:
        member = any(in_region(reg, data["regions"][name]) for name in expected_names)
        if member != reg.verdict:
            bad.append((tuple(str(x) for x in reg.samples[0]), reg.verdict, member, reg.witness))
    checks.append(_check(f"c={c_str}: unitary chambers are exactly {'+'.join(expected_names)}", not bad, bad[:6]))
    # F8 example: outside K; for c=4 it must be unitary (empty at c=2)
    ineqs = data["f8"]["inequalities"]
    cons = [Constraint(tuple(frac(x) for x in rs.simple_roots[i]), F0, 1) for i in range(4)]
    cons = [Constraint(tuple(a), F0, 1) for a in rs.simple_roots]
    for coeffs, rel, rhs in ineqs:
        bound = frac(rhs[0]) + frac(rhs[1]) * c
        cons.append(Constraint(tuple(frac(x) for x in coeffs), bound, 1 if rel == ">" else -1))
    t, nu = margin_lp(cons, 4, 40)
    if c_str == "2":
        checks.append(_check("F8 empty at c=2", t is None or t <= 0, t))
    else:
        if t is None or t <= 0:
            checks.append(_check("F8 nonempty", False, "infeasible"))
        else:
            table = spherical_signature_table(H, lm, nu)
            checks.append(_check("F8 verdict unitary", table.unitary, table.failing))
    return _report(f"f4-regions-c{c_str}", checks)


# ---------------------------------------------------------------------------
# Matching reports
# ---------------------------------------------------------------------------


def _g2_db_names(H):
    """(d,b)-style names for W(G2) types of the centralizer algebras."""
    wc = H.wchars()
    out = {}
    for chi in wc.irreducibles():
        if chi.values == wc.trivial_values():
            out["(1,0)"] = chi
        elif chi.values == wc.sign_values():
            out["(1,6)"] = chi
        elif chi.dim == 2:
            out[f"(2,{chi.b_invariant})"] = chi
    ones = [chi for chi in wc.irreducibles() if chi.dim == 1 and chi.b_invariant == 3]
    out["(1,3)a"], out["(1,3)b"] = sorted(ones, key=lambda c: c.values)
    return out


def _spherical_block_charpoly(H, chi, nu):
    factors = rank_one_factors(H, nu)
    z = spherical_normalizer(factors)
    p = spherical_type_operator(H, chi, nu, factors=factors)
    # normalized charpoly coefficients of p / z
    from .wchar import _charpoly

    cp = _charpoly([[x / z for x in row] for row in p])
    return tuple(cp)


def _family_block_charpoly(op, lm, name, lowest_name):
    low = lm.chi(lowest_name)
    if op.normalizer is None:
        op.normalize_on(low)
    blk = op.operator_block(lm.chi(name))
    from .wchar import _charpoly

    cp = _charpoly([[x / op.normalizer for x in row] for row in blk])
    return tuple(cp)


def run_matching():
    data = fx.load_fixture("matching.json")
    lm = fx.f4_labels()
    checks = []
    # lemma rows: mu_1 operators equal r_sgn of H(A1,(1)) at the stated scale
    for row in data["lemma_rows"]:
        sym = symbolic_family(row["family"])
        low_name = fx.load_fixture("maxpar_tables.json")["cases"][row["family"]]["lowest"]
        blk = sym.normalized_operator(lm.chi(row["mu1"]), lm.chi(low_name))
        s = frac(row["scale"])
        expect = rf.RationalFunction(rf.linear(1, -s), rf.linear(1, s))
        ok = len(blk) == 1 and blk[0][0] == expect
        checks.append(_check(
            f"{row['family']}: r_[{row['mu1']}] = r_sgn(H(A1,(1))) at {row['scale']}*nu",
            ok, blk[0][0] if blk else "missing"))
    # A5'' case: two-parameter matching with H(G2,(1,1))
    checks.extend(_matching_g2_case(data["A5''"], lm, "A5''"))
    # A2+3A1 case: partial matching with H(G2,(2,1))
    checks.extend(_matching_g2_case(data["A2+3A1"], lm, "A2+3A1", partial=True))
    return _report("matching", checks)


def _matching_g2_case(case, lm, label, partial=False):
    H = fx.f4_12()
    rs = H.rs
    checks = []
    levi = tuple(case["levi_indices"])
    p = fx._parabolic_cached(H, levi)
    sigma = steinberg(H, p)
    fam = StandardFamily(H, p, sigma, name=label)
    lowest = {"A5''": "8_1", "A2+3A1": "1_3"}[label]
    cz = case["centralizer"]
    Hz = fx.algebra(cz["type"], cz["long"], cz["short"])
    zn = _g2_db_names(Hz)
    d1 = [frac(x) for x in case["directions"][0]]
    d2 = [frac(x) for x in case["directions"][1]]
    zrs = Hz.rs

    def z_point(n1, n2):
        from .ratlinalg import row_space_basis, solve

        span = row_space_basis([list(a) for a in zrs.simple_roots])
        a = [[dot(list(zrs.simple_roots[i]), span[j]) for j in range(2)] for i in range(2)]
        cf = solve(a, [n1, n2])
        return [cf[0] * span[0][k] + cf[1] * span[1][k] for k in range(zrs.ambient_dim)]

    sample_results = {}
    for n1s, n2s in case["samples"]:
        n1, n2 = frac(n1s), frac(n2s)
        nu = [n1 * a + n2 * b for a, b in zip(d1, d2)]
        op = fam.operator_at(nu)
        op.normalize_on(lm.chi(lowest))
        zpt = z_point(n1, n2)
        for f4name, zname in case.get("pairs", []):
            got = _family_block_charpoly(op, lm, f4name, lowest)
            want = _spherical_block_charpoly(Hz, zn[zname], zpt)
            sample_results.setdefault((f4name, zname), []).append(got == want)
        if "primed_pair" in case:
            (a1, a2), _ = case["primed_pair"]
            got1 = _family_block_charpoly(op, lm, a1, lowest)
            got2 = _family_block_charpoly(op, lm, a2, lowest)
            wa = _spherical_block_charpoly(Hz, zn["(1,3)a"], zpt)
            wb = _spherical_block_charpoly(Hz, zn["(1,3)b"], zpt)
            ok = {got1, got2} == {wa, wb}
            sample_results.setdefault((f"{a1}/{a2}", "(1,3)'/''"), []).append(ok)
        if "primed_single" in case:
            f4name, _ = case["primed_single"]
            got = _family_block_charpoly(op, lm, f4name, lowest)
            wa = _spherical_block_charpoly(Hz, zn["(1,3)a"], zpt)
            wb = _spherical_block_charpoly(Hz, zn["(1,3)b"], zpt)
            sample_results.setdefault((f4name, "(1,3) one of"), []).append(got in (wa, wb))
        if "unmatched" in case:
            f4name, zname = case["unmatched"]
            blk = op.operator_block(lm.chi(f4name))
            zblk = spherical_type_operator(Hz, zn[zname], zpt)
            sample_results.setdefault((f4name, zname + " UNMATCHED"), []).append(
                len(blk) != len(zblk)
            )
    for (f4name, zname), results in sorted(sample_results.items()):
        checks.append(_check(f"{label}: {f4name} ~ {zname}", all(results), results))
    return checks


# ---------------------------------------------------------------------------
# Acceptance criteria 1, 2, 9 helpers
# ---------------------------------------------------------------------------


def run_reducibility_criterion(n_points=50, seed=17):
    """Full rank of the normalized long operator iff nu is off every wall."""
    import random

    H = fx.f4_12()
    lm = fx.f4_labels()
    rs = H.rs
    rng = random.Random(seed)
    walls = [(a, H.c_of(a)) for a in rs.positive_roots]
    from .ratlinalg import det

    def full_rank(nu):
        factors = rank_one_factors(H, nu)
        for chi in H.wchars().irreducibles():
            p = spherical_type_operator(H, chi, nu, factors=factors)
            if det(p) == 0:
                return False
        return True

    def random_dominant():
        while True:
            x4 = Fraction(rng.randint(1, 6), rng.choice([5, 7, 11]))
            x3 = x4 + Fraction(rng.randint(0, 8), 7)
            x2 = x3 + Fraction(rng.randint(0, 8), 5)
            x1 = x2 + x3 + x4 + Fraction(rng.randint(0, 9), 4)
            nu = [x1, x2, x3, x4]
            if rs.is_dominant(nu):
                return nu

    checks = []
    bad = []
    for k in range(n_points):
        nu = random_dominant()
        if k % 2 == 0:
            # push onto a random wall, staying dominant
            alpha, c = walls[rng.randrange(len(walls))]
            pairing = rs.pairing(alpha, nu)
            if pairing != 0:
                nu = [c / pairing * x for x in nu]
        on_wall = any(rs.pairing(a, nu) == c for a, c in walls)
        if full_rank(nu) == on_wall:
            bad.append((tuple(str(x) for x in nu), on_wall))
    checks.append(_check(f"full rank iff off-wall at {n_points} dominant points", not bad, bad[:4]))
    return _report("reducibility-criterion", checks)


def run_rank_one_crossvalidation(n_points=20, seed=29):
    """Gram route (symbolic epsilon formula) vs rank-one chain vs model route."""
    import random

    from .heckecore import HeckeAlgebra
    from .rootdata import build_root_system, make_params
    from .wchar import _charpoly

    checks = []
    cases = [
        ("A1", ("1", None)),
        ("A2", ("5/3", None)),
        ("G2", ("2", "1")),
        ("B2", ("1", "3/2")),
    ]
    for cartan, (lv, sv) in cases:
        conv = "paper-4.3" if cartan == "G2" else "default"
        rs = build_root_system(cartan, conv)
        H = HeckeAlgebra(rs, make_params(rs, lv, sv))
        wc = H.wchars()
        w0 = rs.longest_element()
        r_w0 = H.intertwiner_element(w0)
        els = rs.weyl_elements()
        eps = {u.index: (H.t(u) * r_w0).epsilon() for u in els}
        rng = random.Random(seed)
        ok_all = True
        for _ in range(n_points):
            nu = [Fraction(rng.randint(-5, 5), rng.choice([2, 3, 5, 7])) for _ in range(rs.ambient_dim)]
            chain = spherical_full_operator(H, nu)
            # symbolic Gram route: entries eps(t_y^{-1} t_x r_{w0})(nu)
            for yi in range(len(els)):
                for xi in range(len(els)):
                    u = rs.multiply(rs.inverse(els[yi]), els[xi])
                    if chain[yi][xi] != eps[u.index].evaluate_identity(nu):
                        ok_all = False
            # model route: per-type char polys match the isotype blocks
            factors = rank_one_factors(H, nu)
            for chi in wc.irreducibles():
                p = spherical_type_operator(H, chi, nu, factors=factors)
                basis = _regular_slot_basis(H, chi)
                blk = _restrict(basis, chain)
                if _charpoly(blk) != _charpoly(p):
                    ok_all = False
        checks.append(_check(f"{cartan}: three operator routes agree at {n_points} nu", ok_all))
    return _report("rank-one-crossvalidation", checks)


def _regular_slot_basis(H, chi):
    """Slot basis of the chi-multiplicity space of the regular module C[W]."""
    rs = H.rs
    els = rs.weyl_elements()
    n = len(els)
    from .unitary import _slot_coefficients

    coeffs = _slot_coefficients(H, chi)
    from .ratlinalg import Echelon

    ech = Echelon()
    # column k of the idempotent: sum_w f(w) e_{w * els[k]}
    for k in range(n):
        col = [F0] * n
        for w in els:
            col[rs.multiply(w, els[k]).index] += coeffs[w.index]
        ech.add(col)
        if len(ech) == chi.dim:
            break
    return ech.basis()


def run_linear_independence():
    """Tempered W-characters with real central character form an independent set."""
    H = fx.f4_12()
    lm = fx.f4_labels()
    ws = fx.load_fixture("w_structure.json")
    chars = []
    names = []
    ds_chars = {}
    for row in ws["ds_rows"]:
        derive = row["derive"]
        if derive["kind"] == "complement":
            got = _complement_counts(derive["family"], frac(derive["point"]), lm)
        elif derive["kind"] == "onedim":
            signs = {i: (F1 if ch == "+" else -F1) for i, ch in enumerate(derive["signs"])}
            got = lm.decompose_named(_one_dim(H, None, signs, "x").w_character())
        else:
            got = _ledger_counts(derive, lm, ds_chars)
        ds_chars[(row["orbit"], row["lwt"])] = got
        chars.append(got)
        names.append(f"ds {row['orbit']}/{row['lwt']}")
    for fam_name in [
        "D6", "D6(a1)", "D5+A1", "D6(a2)", "A5+A1", "D5(a1)+A1", "A3+A2+A1",
        "A5''", "D4+A1", "D4(a1)+A1:phi1", "D4(a1)+A1:phi2", "A3+2A1",
        "A3A1''", "A2+3A1", "4A1",
    ]:
        fam, _ = get_family(fam_name, H)
        chars.append(lm.decompose_named(fam.w_character()))
        names.append(f"tempered {fam_name}@0")
    chars.append(lm.decompose_named(H.wchars().regular_values()))
    names.append("tempered (3A1)''@0")
    all_names = sorted(lm.by_name)
    matrix = [[Fraction(c.get(n, 0)) for n in all_names] for c in chars]
    r = rank(matrix)
    checks = [
        _check(f"{len(chars)} tempered W-characters", len(chars) == 25, names),
        _check("linearly independent in the Grothendieck group", r == len(chars), r),
    ]
    return _report("linear-independence", checks)

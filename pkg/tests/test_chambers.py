from fractions import Fraction as Fr

import pytest

from uhecke.chambers import Constraint, enumerate_chambers, margin_lp, polygon_vertices


def test_margin_lp_feasible():
    cons = [
        Constraint((Fr(1), Fr(0)), Fr(1, 2), 1),
        Constraint((Fr(1), Fr(0)), Fr(1), -1),
        Constraint((Fr(0), Fr(1)), Fr(0), 1),
        Constraint((Fr(1), Fr(-1)), Fr(0), 1),
    ]
    t, nu = margin_lp(cons, 2, 10)
    assert t > 0
    assert all(c.value(nu) > 0 for c in cons)


def test_margin_lp_infeasible():
    cons = [
        Constraint((Fr(1),), Fr(1), 1),
        Constraint((Fr(1),), Fr(0), -1),
    ]
    t, nu = margin_lp(cons, 1, 10)
    assert t is None


def test_margin_lp_objective():
    cons = [Constraint((Fr(1), Fr(0)), Fr(0), 1), Constraint((Fr(0), Fr(1)), Fr(0), 1)]
    t, _ = margin_lp(cons, 2, 5)
    opt, nu = margin_lp(cons, 2, 5, objective=[Fr(1), Fr(0)], min_margin=t / 2)
    assert nu[0] > 4  # pushed to the box


def test_enumerate_chambers_line():
    # one wall splits a 1-d cone into two chambers
    walls = [((Fr(1),), Fr(1))]
    base = [Constraint((Fr(1),), Fr(0), 1)]
    cells = enumerate_chambers(walls, base, 1, 5)
    assert len(cells) == 2
    signs = sorted(c.signs for c in cells)
    assert signs == [(-1,), (1,)]
    for c in cells:
        assert len(set(c.samples)) >= 1
        for nu in c.samples:
            assert (nu[0] > 1) == (c.signs[0] > 0)
            assert nu[0] > 0


def test_enumerate_chambers_deterministic():
    walls = [((Fr(1), Fr(0)), Fr(1)), ((Fr(0), Fr(1)), Fr(1)), ((Fr(1), Fr(1)), Fr(2))]
    base = [Constraint((Fr(1), Fr(0)), Fr(0), 1), Constraint((Fr(0), Fr(1)), Fr(0), 1)]
    a = enumerate_chambers(walls, base, 2, 9)
    b = enumerate_chambers(walls, base, 2, 9)
    assert [c.signs for c in a] == [c.signs for c in b]
    assert [c.samples for c in a] == [c.samples for c in b]


def test_polygon_vertices_triangle():
    cons = [
        Constraint((Fr(1), Fr(0)), Fr(0), 1),
        Constraint((Fr(0), Fr(1)), Fr(0), 1),
        Constraint((Fr(1), Fr(1)), Fr(1), -1),
    ]
    verts = polygon_vertices(cons, 2)
    assert sorted(verts) == [(Fr(0), Fr(0)), (Fr(0), Fr(1)), (Fr(1), Fr(0))]

from __future__ import annotations

from dataclasses import replace

import pytest

from weylext.upsilon import (
    CALIBRATED, PRINTED, PSI, PSI0, TOP, Convention, LatticePoint7, ZERO, associativity_violations, enumerate_points, in_P_0,
    in_P_M, in_P_Mbar, in_P_psi, model_graded_dims, multiply, points_of_degree, polytope_points, top_points,
    truncated_product_table, unit_point,
)


def test_psi_polytope_reading():
    # with the j-k reading spurious points with negative k would be needed; j+k gives Psi exactly
    assert len(polytope_points(3, "psi")) == 9
    assert in_P_psi(3, (1, 1, 0, 2))
    assert in_P_psi(3, (1, -1, 1, 2))
    assert not in_P_psi(3, (1, 2, -1, 1))


def test_p0_polytope_drops_corner():
    assert in_P_0(3, (1, 0, 0, 3))
    assert not in_P_0(3, (3, 0, 0, 1))
    assert len(polytope_points(3, "0")) == 2


def test_M_polytopes():
    assert len(polytope_points(3, "M")) == 2 * 9
    assert in_P_M(3, (3, 0, -1, 1)) and not in_P_Mbar(3, (3, 0, -1, 1))
    assert len(polytope_points(3, "Mbar")) == 2 * 9 - 1


@pytest.mark.parametrize("p,i,total", [(3, 0, 9), (3, -1, 19), (3, -2, 27), (3, -3, 37), (2, -1, 8), (2, -2, 12)])
def test_model_totals(p, i, total):
    assert model_graded_dims(p, i).total() == total


def test_top_points():
    tops = top_points(3)
    assert [tuple(w) for w in tops] == [(s, 1, 1, 0, -1, 0, 4 - s) for s in (1, 2, 3)]
    assert points_of_degree(3, 1) == tops
    assert points_of_degree(3, 2) == []


def test_unit_is_neutral():
    for w in enumerate_points(3, (-3, 1)):
        assert multiply(3, unit_point(w.s), w) == (1, w)
        assert multiply(3, w, unit_point(w.t)) == (1, w)


def test_degrees_add_and_high_products_vanish():
    pts = enumerate_points(3, (-2, 1))
    for w in pts:
        for v in pts:
            r = multiply(3, w, v)
            if r:
                assert r.point.degree == tuple(x + y for x, y in zip(w.degree, v.degree))
    top = top_points(3)
    assert multiply(3, top[0], top[2]) == ZERO


def test_sector_dimension_at_most_one():
    from collections import Counter

    for p in (2, 3, 5):
        c = Counter((w.s, w.t, w.i, w.j, w.k) for w in enumerate_points(p))
        assert max(c.values()) == 1


def test_associativity_in_window():
    pts = enumerate_points(3, (-3, 1))
    n, bad = associativity_violations(3, pts, samples=3000, seed=1)
    assert n == 3000 and bad == []


def test_truncated_table_counts():
    t = truncated_product_table(3, -2)
    assert t["truncated"] > 0 and t["escaped"] > 0
    assert any(r for r in t["products"].values())


def test_convention_round_trip():
    assert Convention.from_dict(CALIBRATED.to_dict()) == CALIBRATED
    assert PRINTED != CALIBRATED
    assert replace(CALIBRATED, sign="j0").sign == "j0"


def test_point_families():
    assert LatticePoint7(1, 0, 0, 0, 0, 0, 1).family == PSI
    assert LatticePoint7(1, 1, 1, 0, -1, 0, 3).family == TOP
    assert all(w.family == PSI0 for w in points_of_degree(3, -1) if (w.a, w.b) == (0, 1))


def test_diagram_points_need_the_xi_count_reading():
    assert in_P_psi(3, (2, 1, 0, 3))
    assert in_P_psi(3, (1, -2, 2, 3))
    assert not in_P_psi(3, (1, -2, 2, 3), reading="j-k")


def test_x_times_x():
    x12, x23 = (1, 0, -1, 1, 0, 0, 2), (2, 0, -1, 1, 0, 0, 3)
    assert multiply(3, x12, x23) == (1, (1, 0, -2, 2, 0, 0, 3))
    # composable only when the right vertex of the first meets the left vertex of the second
    assert multiply(3, x23, x12) == ZERO

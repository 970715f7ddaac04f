import math

import pytest

from cliquestream import analysis as an


def test_profvalue_gap_closed_forms():
    for b in range(0, 20):
        assert an.profvalue_gap(0, b, 0.5) == b * (b - 1)
    for x in (0.1, 0.5, 1.0):
        assert an.profvalue_gap(1, 2, x) == pytest.approx(2 - 2 * x)
    assert an.profvalue_gap(5, 3, 0.5) == pytest.approx(1.0)


def test_profvalue_gap_domain():
    with pytest.raises(ValueError):
        an.profvalue_gap(1, 1, 0.0)
    with pytest.raises(ValueError):
        an.profvalue_gap(1, 1, 1.5)
    with pytest.raises(ValueError):
        an.profvalue_gap(-1, 1, 0.5)


def test_profvalue_gap_nonnegative_on_grid():
    worst = min(
        an.profvalue_gap(a, b, x / 100)
        for a in range(0, 25)
        for b in range(0, 25)
        for x in range(1, 101)
    )
    assert worst >= -1e-9


def test_asymptotic_ratio_values():
    r = an.asymptotic_ratio(an.GAMMA_STAR, an.X_STAR)
    assert r == pytest.approx((47 + 13 * math.sqrt(13)) / 6, abs=1e-9)
    assert r == pytest.approx(15.6455, abs=1e-3)
    assert an.asymptotic_ratio(*an.PRESETS["absolute"]) == pytest.approx(15.902, abs=1e-3)


def test_asymptotic_ratio_guard():
    with pytest.raises(ValueError):
        an.asymptotic_ratio(2.0, 1.0)  # x + 1 == gamma
    with pytest.raises(ValueError):
        an.asymptotic_ratio(3.0, -0.5)
    an.asymptotic_ratio(3.0, 1.9)  # 2.9 < 3: legal


def test_asymptotic_ratio_grid_minimum():
    g, x, v = an.asymptotic_ratio_grid_min()
    assert abs(g - 3.3028) <= 2e-3
    assert abs(x - 0.6972) <= 2e-3
    assert abs(v - 15.6455) <= 1e-3


TABLE_S_MIN = [1, 5, 16, 53, 172, 566, 1864, 6152, 20311]
TABLE_S_MAX = [1, 7, 23, 68, 202, 623, 1972, 6352, 20679]
TABLE_RPRIME = [1.000, 10.000, 13.185, 18.636, 21.881, 22.641, 21.516, 19.925, 18.509]


def test_recurrence_table_reproduces_published_cells():
    rows = an.recurrence_table(an.GAMMA_STAR, an.X_STAR, 8)
    assert [r.s_min for r in rows] == TABLE_S_MIN
    assert [r.s_max for r in rows] == TABLE_S_MAX
    for row, want in zip(rows, TABLE_RPRIME):
        assert row.rprime == pytest.approx(want, abs=1e-3)


def test_recurrence_table_maximum_and_tail():
    rows = an.recurrence_table(an.GAMMA_STAR, an.X_STAR, 30)
    top = max(rows, key=lambda r: r.rprime)
    assert top.j == 5
    assert top.rprime == pytest.approx(22.641, abs=1e-3)
    assert all(r.rprime <= 20 for r in rows if r.j >= 9)


def test_recurrence_table_validation():
    with pytest.raises(ValueError):
        an.recurrence_table(an.GAMMA_STAR, an.X_STAR, 0)
    with pytest.raises(ValueError):
        an.recurrence_table(1.5, 0.9, 5)  # x + 1 >= gamma


def test_tail_bound_constants():
    alpha, beta, limit = an.tail_bound(an.GAMMA_STAR, an.X_STAR, 8)
    assert alpha < 3 / 5
    assert beta < 8
    assert limit <= 20
    assert limit == pytest.approx(beta / (1 - alpha))


def test_tail_bound_fixed_point_arithmetic():
    # alpha=1/2, beta=4 has fixed point 8; reproduce via the formula directly
    assert 4 / (1 - 0.5) == 8


def test_tail_bound_guards():
    with pytest.raises(ValueError):
        an.tail_bound(an.GAMMA_STAR, an.X_STAR, 1)
    # near gamma = x + 1 the finite-window alpha exceeds 1: divergent fixed point
    with pytest.raises(ValueError):
        an.tail_bound(2.05, 1.0, 8)


def test_occ_lb_formula_cases():
    assert an.occ_lb_formula(3.0) == pytest.approx(11.0)
    # the middle and high regimes agree where they meet
    eps = 1e-9
    assert an.occ_lb_formula(3.0 - eps) == pytest.approx(an.occ_lb_formula(3.0 + eps), abs=1e-6)
    # at sqrt(3) the plain-construction bound applies: g(g+3)/(g-1) = 6+3*sqrt(3)
    assert an.occ_lb_formula(an.SQRT3) == pytest.approx(6 + 3 * math.sqrt(3), abs=1e-12)
    assert an.occ_lb_formula(an.SQRT3) == pytest.approx(11.196, abs=1e-3)
    assert an.occ_lb_formula(4.0) == pytest.approx((16 + 20 - 2) / 3)
    with pytest.raises(ValueError):
        an.occ_lb_formula(1.0)


def test_occ_lb_minimum():
    g, v = an.occ_lb_minimum(step=1e-5)
    assert v == pytest.approx(10.927, abs=1e-3)
    assert an.SQRT3 <= g <= 3
    # the plain construction alone bottoms out at 9 (gamma = 3)
    plain = [g * (g + 3) / (g - 1) for g in (1 + i / 1000 for i in range(1, 5001))]
    assert min(plain) >= 9 - 1e-6


def test_delta_bounds_integerization():
    lo, hi = an._delta_bounds(an.GAMMA_STAR, 5)
    assert (lo, hi) == (394, 421)
    assert an._delta_bounds(an.GAMMA_STAR, 0) == (1, 1)

import math
from fractions import Fraction

import pytest

from cuegenus.hurwitz import euler_partition_series
from cuegenus.numerics import (
    DOMAIN_RADIUS,
    concentration_check,
    convergence_table,
    crude_tail,
    euler_comparison,
    euler_product,
    eval_series,
    gamma_quarter,
    ramanujan_constant,
)
from cuegenus.pseries import QSeries


def test_eval_series_constant_and_geometric():
    assert eval_series(QSeries([7]), 0.25).value == 7.0
    got = eval_series(QSeries([1] * 51), 0.5, guard_domain=False)
    assert abs(got.value - 2.0) < 1e-12


def test_eval_series_domain_guard():
    s = QSeries([1, 1])
    with pytest.raises(ValueError):
        eval_series(s, DOMAIN_RADIUS + 1e-6)
    with pytest.raises(ValueError):
        eval_series(s, -0.5)
    # the guard can be disabled explicitly
    assert eval_series(s, 0.5, guard_domain=False).value == 1.5


def test_crude_tail_behavior():
    assert crude_tail(0.0, 5) == 0.0
    assert crude_tail(0.5, 10) == math.inf
    small = crude_tail(0.1, 40)
    assert 0 < small < 1e-15
    assert crude_tail(0.2, 30) < crude_tail(0.2, 10)


def test_tail_bounds_true_remainder():
    s = euler_partition_series(40)
    for D in (10, 20):
        head = eval_series(s.truncate(D), 0.2)
        full = eval_series(s, 0.2)
        assert abs(full.value - head.value) <= crude_tail(0.2, D)


def test_euler_product_basics():
    assert euler_product(0.0) == 1.0
    with pytest.raises(ValueError):
        euler_product(1.0)
    with pytest.raises(ValueError):
        euler_product(-1.5)
    # the reciprocal product matches the partition series
    series = eval_series(euler_partition_series(60), 0.2).value
    assert abs(euler_product(0.2) - series) < 1e-12


def test_gamma_quarter_identities():
    assert math.isclose(math.gamma(0.5), math.sqrt(math.pi), rel_tol=1e-12)
    assert math.isclose(
        gamma_quarter() * math.gamma(0.75),
        math.pi * math.sqrt(2.0),
        rel_tol=1e-11,
    )


def test_ramanujan_constant_value():
    assert math.isclose(ramanujan_constant(), 1.0472094700460421, rel_tol=1e-12)
    got = euler_product(math.exp(-math.pi))
    assert math.isclose(got, ramanujan_constant(), rel_tol=1e-10)


def test_euler_comparison_report():
    doc = euler_comparison(0.2, D=40)
    assert doc["q"] == 0.2
    assert doc["D"] == 40
    assert doc["abs_difference"] <= max(2e-12, 2 * doc["tail_estimate"])


def test_convergence_table_rows():
    rows = convergence_table(0.1, [4, 6, 8], 1, D=30)
    assert [r.N for r in rows] == [4, 6, 8]
    values = [r.value for r in rows]
    assert values[0] > values[1] > values[2] > 0
    assert all(r.D == 30 and r.m == 1 and r.warning is None for r in rows)


def test_convergence_table_warns_on_thin_truncation():
    rows = convergence_table(0.3, [4], 1, D=12)
    assert rows[0].warning is not None


def test_convergence_table_validation():
    with pytest.raises(ValueError):
        convergence_table(0.5, [4], 1)
    with pytest.raises(ValueError):
        convergence_table(0.1, [4], -1)
    assert convergence_table(0.1, [], 1) == []


def test_concentration_check_bounded_at_small_q():
    res = concentration_check(0.1, 1, [4, 6, 8], D=30)
    assert res.bounded is True
    scaled = [r.value for r in res.rows]
    assert all(v <= scaled[0] * (1 + 1e-9) for v in scaled)


def test_concentration_check_zero_coupling():
    res = concentration_check(0.0, 1, [4, 6], D=10)
    assert res.bounded is True
    assert all(r.value == 0.0 for r in res.rows)

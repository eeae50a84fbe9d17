import json
from fractions import Fraction
from math import factorial

import pytest

from cuegenus.cache import CacheError, DiskCache
from cuegenus.hurwitz import (
    B_coeff,
    B_genus_table,
    C_table,
    F_series,
    F_table,
    H_coeff,
    K_N_coeff,
    K_N_series,
    K_genus_table,
    K_rational,
    L_N_series,
    clear_memo,
    delta_series,
    euler_partition_series,
    get_disk_cache,
    set_disk_cache,
    stirling2,
    tail_normalized_table,
)
from cuegenus.partitions import partition_count
from cuegenus.pseries import QSeries, series_exp, series_log


def sigma(d):
    return sum(n for n in range(1, d + 1) if d % n == 0)


def test_K_N_coeff_known_values():
    assert K_N_coeff(2, 2) == Fraction(16, 3)
    assert K_N_coeff(3, 1) == 1
    # N = 1 keeps only the single-row diagram, giving the exponential series
    for d in range(1, 6):
        assert K_N_coeff(1, d) == 1


def test_K_N_coeff_validation():
    with pytest.raises(ValueError):
        K_N_coeff(0, 2)
    with pytest.raises(ValueError):
        K_N_coeff(2, 0)


def test_K_N_series_matches_coeffs():
    s = K_N_series(3, 6)
    assert s.coefficient(0) == 1
    for d in range(1, 7):
        assert factorial(d) * s.coefficient(d) == K_N_coeff(3, d)


def test_K_rational_agrees_with_integer_N():
    for N in (2, 3, 5):
        for d in range(1, min(N, 4) + 1):
            assert K_rational(d, Fraction(1, N)) == K_N_coeff(N, d)


def test_K_rational_pole_outside_diagram_bound():
    # at t = 1/N with d > N the column diagram makes 1 + t*c vanish
    with pytest.raises(ZeroDivisionError):
        K_rational(3, Fraction(1, 2))


def test_H_coeff_known_values():
    # genus 1 counts commuting pairs: d! times the partition number
    for d in range(1, 8):
        assert H_coeff(1, d) == factorial(d) * partition_count(d)
    assert H_coeff(2, 2) == 4
    assert H_coeff(2, 3) == 90
    assert H_coeff(3, 3) == 378
    assert isinstance(H_coeff(2, 4), int)


def test_B_coeff_known_values():
    for d in range(1, 7):
        assert B_coeff(1, d) == H_coeff(1, d)
    assert B_coeff(2, 2) == 4
    assert B_coeff(2, 3) == 108
    assert B_coeff(3, 3) == 972


def test_K_genus_table_layout():
    t = K_genus_table(4, 3)
    assert t.entry(0, 1) == 1
    assert t.entry(0, 2) == 0
    for d in range(1, 5):
        for g in range(1, 4):
            assert t.entry(d, g) == H_coeff(g, d)


def test_B_genus_table_layout():
    t = B_genus_table(4, 2)
    assert t.t_exponential
    for d in range(1, 5):
        assert t.entry(d, 2) == B_coeff(2, d)


def test_F_table_known_column():
    t = F_table(12, 2)
    for d in range(1, 13):
        assert t.entry(d, 1) == factorial(d) * sigma(d) // d
    assert t.entry(2, 2) == 4
    assert t.entry(3, 2) == 78


def test_F_degree_two_column_is_constant():
    t = F_table(2, 6)
    assert t.entry(2, 1) == 3
    for g in range(2, 7):
        assert t.entry(2, g) == 4


def test_F_is_bivariate_log_of_K():
    from cuegenus.pseries import bivariate_exp

    f = F_table(5, 3)
    k = K_genus_table(5, 3)
    assert bivariate_exp(f).entries == k.entries


def test_C_table_known_values():
    t = C_table(4, 2)
    assert t.t_exponential
    f = F_table(4, 1)
    for d in range(1, 5):
        assert t.entry(d, 1) == f.entry(d, 1)
    assert t.entry(3, 2) == 96
    assert t.entry(2, 2) == 4


def test_F_series_slices_table():
    s = F_series(1, 8)
    t = F_table(8, 1)
    for d in range(1, 9):
        assert s.coefficient(d) == Fraction(t.entry(d, 1), factorial(d))


def test_L_N_is_log_of_K_N():
    for N in (2, 4):
        k = K_N_series(N, 7)
        assert series_log(k) == L_N_series(N, 7)
        assert series_exp(L_N_series(N, 7)) == k


def test_delta_series_structure():
    d1 = delta_series(1, 4, 5)
    assert d1.coefficient(0) == 0
    assert d1.coefficient(1) == 0
    assert d1.coefficient(2) == Fraction(2, 15)
    # subtracting one more genus term shrinks low-degree coefficients
    d2 = delta_series(2, 4, 5)
    assert abs(d2.coefficient(2)) < abs(d1.coefficient(2))


def test_delta_series_validation():
    with pytest.raises(ValueError):
        delta_series(-1, 4, 5)
    with pytest.raises(ValueError):
        delta_series(1, 0, 5)


def test_tail_normalized_table_zeroes_low_genus():
    t = tail_normalized_table(1, 4, 3)
    assert t.entry(0, 1) == 1
    for d in range(1, 5):
        assert t.entry(d, 1) == 0
    # with nothing removed the full coefficient table reappears
    full = tail_normalized_table(0, 4, 3)
    assert full.entries == K_genus_table(4, 3).entries
    # at three points a genus-2 count must come from one connected piece,
    # because any one-point component would carry genus one
    assert t.entry(2, 2) == 4
    assert t.entry(3, 2) == 78
    assert t.entry(3, 2) == F_table(3, 2).entry(3, 2)


def test_stirling2_triangle():
    assert stirling2(4, 2) == 7
    assert stirling2(7, 3) == 301
    assert stirling2(0, 0) == 1
    assert stirling2(3, 0) == 0
    for n in range(1, 8):
        assert stirling2(n, n) == 1
        assert stirling2(n, 1) == 1
        assert sum(stirling2(n, k) for k in range(n + 1)) == bell_number(n)


def bell_number(n):
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def test_euler_partition_series():
    s = euler_partition_series(10)
    for d in range(11):
        assert s.coefficient(d) == partition_count(d)


def test_disk_cache_round_trip(tmp_path):
    cache = DiskCache(tmp_path)
    previous = get_disk_cache()
    set_disk_cache(cache)
    try:
        first = F_table(4, 2, cache=cache)
        assert len(list(cache.entries())) > 0
        clear_memo()
        again = F_table(4, 2, cache=cache)
        assert again.entries == first.entries
    finally:
        set_disk_cache(previous)
        clear_memo()


def test_disk_cache_store_is_write_once(tmp_path):
    cache = DiskCache(tmp_path)
    path = cache.store("demo", {"d": 1}, {"value": "3/2"})
    cache.store("demo", {"d": 1}, {"value": "overwrite attempt"})
    assert cache.load("demo", {"d": 1}) == {"value": "3/2"}
    assert cache.load("demo", {"d": 2}) is None
    assert path.name in {e["file"] for e in cache.entries()}


def test_disk_cache_detects_corruption(tmp_path):
    cache = DiskCache(tmp_path)
    path = cache.store("demo", {"d": 1}, {"value": "1"})
    path.write_text("not json")
    with pytest.raises(CacheError):
        cache.load("demo", {"d": 1})
    assert cache.verify() == [path.name]


def test_disk_cache_rejects_mismatched_key(tmp_path):
    cache = DiskCache(tmp_path)
    src = cache.store("demo", {"d": 1}, {"value": "1"})
    dst = cache.path_for("demo", {"d": 9})
    dst.write_text(src.read_text())
    with pytest.raises(CacheError):
        cache.load("demo", {"d": 9})


def test_disk_cache_gc(tmp_path):
    cache = DiskCache(tmp_path)
    good = cache.store("demo", {"d": 1}, {"value": "1"})
    bad = cache.path_for("demo", {"d": 2})
    bad.write_text("garbage")
    assert cache.gc() == [bad.name]
    assert good.exists()
    assert cache.gc(remove_all=True) == [good.name]
    assert cache.entries() == []

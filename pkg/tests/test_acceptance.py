"""Acceptance gate: one test per shipped claim, each printing a verdict line.

Every test recomputes its quantities from scratch at the pinned sizes and
tolerances. Two criteria are currently expected to fail; their failure
messages carry the measured numbers and the analysis, and the README
documents both. Nothing here is tuned to pass.
"""

import math
from fractions import Fraction
from math import factorial

from cuegenus.hurwitz import (
    B_coeff,
    C_table,
    F_series,
    F_table,
    H_coeff,
    K_N_coeff,
    K_N_series,
    K_rational,
    delta_series,
    euler_partition_series,
    K_genus_table,
    stirling2,
)
from cuegenus.numerics import (
    concentration_check,
    euler_product,
    eval_series,
    ramanujan_constant,
)
from cuegenus.oracle import count_configs
from cuegenus.partitions import (
    complete_homogeneous,
    contents,
    enumerate_partitions,
)
from cuegenus.pseries import series_log
from cuegenus.quasimod import f2_closed_form, fit_quasimodular


def _verdict(label: str, ok: bool, detail: str = "") -> None:
    state = "PASS" if ok else "FAIL"
    line = f"acceptance {label}: {state}"
    if detail and not ok:
        line += f" [{detail}]"
    print(line)


def test_criterion_01_monotone_enumeration_matches_formulas():
    bad = []
    f = F_table(5, 3)
    for d in range(1, 6):
        for g in range(1, 4):
            plain = count_configs(d, g, monotone=True, transitive=False)
            if plain != H_coeff(g, d):
                bad.append(("all", d, g, plain, H_coeff(g, d)))
            conn = count_configs(d, g, monotone=True, transitive=True)
            if conn != f.entry(d, g):
                bad.append(("connected", d, g, conn, f.entry(d, g)))
    _verdict("01 monotone enumeration vs formulas, d<=5 g<=3", not bad, str(bad))
    assert not bad, f"mismatched cells: {bad}"


def test_criterion_02_unrestricted_enumeration_matches_formulas():
    bad = []
    c = C_table(5, 3)
    for d in range(1, 6):
        for g in range(1, 4):
            plain = count_configs(d, g, monotone=False, transitive=False)
            if plain != B_coeff(g, d):
                bad.append(("all", d, g, plain, B_coeff(g, d)))
            conn = count_configs(d, g, monotone=False, transitive=True)
            if conn != c.entry(d, g):
                bad.append(("connected", d, g, conn, c.entry(d, g)))
    _verdict("02 unrestricted enumeration vs formulas, d<=5 g<=3", not bad, str(bad))
    assert not bad, f"mismatched cells: {bad}"


def test_criterion_03_stable_range_identity_and_genus_partial_sums():
    bad = []
    h = K_genus_table(10, 8)
    for N in range(1, 11):
        for d in range(1, N + 1):
            exact = K_N_coeff(N, d)
            rational = K_rational(d, Fraction(1, N))
            if rational != exact:
                bad.append(("evaluation", N, d, str(rational), str(exact)))
                continue
            partial = sum(
                Fraction(h.entry(d, g), N ** (2 * g - 2)) for g in range(1, 9)
            )
            rel = abs(partial - exact) / exact
            bound = Fraction(10 * (d - 1) ** 16, N ** 16)
            ok = rel < bound or rel == bound == 0
            if not ok:
                bad.append(("partial-sum", N, d, float(rel), float(bound)))
    _verdict("03 stable-range identity, 1<=d<=N<=10", not bad, str(bad))
    assert not bad, f"mismatched cells: {bad}"


def test_criterion_04_genus_one_column_closed_form():
    bad = []
    table = F_table(30, 1)
    log_route = series_log(euler_partition_series(30))
    for d in range(1, 31):
        sigma = sum(n for n in range(1, d + 1) if d % n == 0)
        expected = Fraction(factorial(d) * sigma, d)
        if table.entry(d, 1) != expected:
            bad.append(("table", d, str(table.entry(d, 1)), str(expected)))
        if factorial(d) * log_route.coefficient(d) != expected:
            bad.append(("log", d, str(log_route.coefficient(d)), str(expected)))
    _verdict("04 genus-one column equals d!*sigma(d)/d, d<=30", not bad, str(bad))
    assert not bad, f"mismatched degrees: {bad}"


def test_criterion_05_genus_two_quasimodular_fit():
    got = fit_quasimodular(F_series(2, 20), 6, fit_degree=6, validate_degree=20)
    expected = f2_closed_form()
    ok = got == expected
    _verdict("05 genus-two closed form recovered by fitting", ok, repr(got))
    assert ok, f"fit returned {got!r}, expected {expected!r}"


def test_criterion_06_infinite_product_limit():
    bad = []
    diffs_at = {}
    for q in (0.1, 0.2, 0.3):
        target = euler_product(q)
        diffs = []
        for N in (4, 6, 8, 10, 12):
            value = eval_series(K_N_series(N, 40), q).value
            diffs.append(abs(value - target))
        diffs_at[q] = diffs
        if not all(a > b for a, b in zip(diffs, diffs[1:])):
            bad.append(("monotone", q, diffs))
    if diffs_at[0.2][-1] >= 1e-2:
        bad.append(("size", 0.2, diffs_at[0.2][-1]))
    _verdict("06 eigenvalue-sum series approaches the infinite product", not bad, str(bad))
    assert not bad, f"violations: {bad}"


def test_criterion_07_product_at_exp_minus_pi():
    got = euler_product(math.exp(-math.pi))
    want = ramanujan_constant()
    rel = abs(got - want) / want
    ok = rel < 1e-10
    _verdict("07 product at q=exp(-pi) matches the gamma closed form", ok, f"rel={rel:.3e}")
    assert ok, f"relative error {rel:.3e} exceeds 1e-10"


def test_criterion_08_tail_decay_ratios():
    # with m genus terms subtracted the remainder should shrink about
    # 4**m-fold when N doubles; the bands are 4 +/- 20% and 16 +/- 20%
    q = 0.2
    measured = {}
    bad = []
    for m, band in ((1, (3.2, 4.8)), (2, (12.8, 19.2))):
        for N in (4, 6, 8):
            at_N = abs(eval_series(delta_series(m, N, 40), q).value)
            at_2N = abs(eval_series(delta_series(m, 2 * N, 40), q).value)
            ratio = at_N / at_2N
            measured[(m, N)] = ratio
            if not band[0] <= ratio <= band[1]:
                bad.append((m, N, round(ratio, 3), band))
    detail = "; ".join(
        f"m={m} N={N}: {measured[(m, N)]:.3f}" for m, N in sorted(measured)
    )
    _verdict("08 remainder decay ratios at q=0.2", not bad, detail)
    assert not bad, (
        f"ratios outside their bands: {bad}; all measured ratios: {detail}. "
        "The genus series in 1/N is asymptotic, not convergent, and at q=0.2 "
        "the subtracted terms do not yet dominate at these N."
    )


def test_criterion_09_ratio_bound_suites():
    bad = []
    h = K_genus_table(10, 4)
    e_lo = Fraction(2718281828459045, 10**15)  # e, rounded down
    for d in range(1, 11):
        for g in range(2, 5):
            ratio = Fraction(h.entry(d, g), h.entry(d, 1))
            lower = Fraction(d ** (g - 1), 2 ** (g - 1) * factorial(g - 1))
            upper = stirling2(d - 1 + 2 * g - 2, d - 1)
            if not lower <= ratio:
                bad.append(("lower", d, g, str(ratio), str(lower)))
            if not ratio <= upper:
                bad.append(("upper", d, g, str(ratio), str(upper)))
            # factorial bound on the same Stirling number, for n >= 1
            m, n = d - 1 + 2 * g - 2, d - 1
            if n >= 1:
                s = stirling2(m, n)
                if not s * factorial(n) <= n**m:
                    bad.append(("stirling-factorial", d, g))
                if not Fraction(n**m, factorial(n)) < e_lo**n * Fraction(n) ** (m - n):
                    bad.append(("stirling-exponential", d, g))
    # positivity of the even symmetric-function lower bound on raw contents
    for d in range(1, 11):
        for lam in enumerate_partitions(d):
            cs = contents(lam)
            square_sum = sum(c * c for c in cs)
            for g in range(2, 5):
                lhs = complete_homogeneous(2 * g - 2, cs)
                rhs = Fraction(square_sum ** (g - 1), 2 ** (g - 1) * factorial(g - 1))
                if not lhs >= rhs:
                    bad.append(("pointwise", str(lam), g))
    _verdict("09 ratio sandwich and pointwise bounds, d<=10 g<=4", not bad, str(bad))
    assert not bad, (
        f"violated cells: {bad}. The d=1 lower-bound cells fail because a "
        "one-point cover has no positive-genus configurations, so the ratio "
        "is 0 while the stated bound is positive."
    )


def test_criterion_10_scaled_remainder_stays_bounded():
    bad = []
    for m in (1, 2):
        res = concentration_check(0.1, m, list(range(4, 13)), D=40)
        values = [r.value for r in res.rows]
        if not res.bounded:
            bad.append((m, values))
    _verdict("10 scaled remainder bounded across N", not bad, str(bad))
    assert not bad, f"unbounded scaled remainders: {bad}"

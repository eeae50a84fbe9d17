"""Floating-point evaluation of the exact series, with explicit tail bounds.

All ground truth is exact and upstream; this module only converts to
binary64 at the last step.  Series evaluation is guarded to |q| < 1/e,
the domain where the genus expansion is proven to converge, unless the
caller explicitly opts out for series with better-behaved coefficients.
"""

import math
from dataclasses import dataclass
from typing import Optional

from . import hurwitz
from .partitions import partition_count
from .pseries import QSeries, series_exp

DOMAIN_RADIUS = math.exp(-1)

_TAIL_MAX_TERMS = 20000


@dataclass(frozen=True)
class SeriesValue:
    """A float evaluation plus a crude bound on the dropped tail."""

    value: float
    tail_estimate: float


@dataclass(frozen=True)
class ConvergenceRow:
    """One N in a decay table: value is N^(2m-2) * |delta_mN(q)|."""

    N: int
    q: float
    m: int
    value: float
    tail_estimate: float
    D: int
    warning: Optional[str] = None


@dataclass(frozen=True)
class ConcentrationResult:
    """Rows of N^(2m-2) * |K_mN(q) - 1| plus a boundedness verdict."""

    rows: list
    bounded: bool


def crude_tail(q: float, D: int) -> float:
    """Bound sum_{d>D} p(d) (e|q|)^d, the generic coefficient model.

    Returns inf when the model sum diverges or cannot be certified
    within a bounded number of terms.
    """
    x = math.e * abs(q)
    if x == 0.0:
        return 0.0
    if x >= 1.0:
        return math.inf
    total = 0.0
    d = D + 1
    while d <= D + _TAIL_MAX_TERMS:
        term = partition_count(d) * x ** d
        total += term
        if term < 1e-18 * total:
            return total
        d += 1
    return math.inf


def eval_series(s: QSeries, q: float, guard_domain: bool = True) -> SeriesValue:
    """Horner evaluation of a truncated series at a real point.

    The tail estimate uses the crude p(d) e^d coefficient model; it is
    meaningful for the partition-indexed series in this package and may
    be inf for series evaluated outside |q| < 1/e.
    """
    if guard_domain and abs(q) >= DOMAIN_RADIUS:
        raise ValueError(
            f"|q| = {abs(q)!r} is outside the proven domain |q| < 1/e"
            f" ~ {DOMAIN_RADIUS:.5f}"
        )
    total = 0.0
    for c in reversed(s.coeffs):
        total = total * q + float(c)
    return SeriesValue(value=total, tail_estimate=crude_tail(q, s.order))


def euler_product(q: float, n_max: Optional[int] = None) -> float:
    """The partition generating product prod_n (1 - q^n)^(-1) at real q.

    When n_max is not given it is chosen so the dropped factors perturb
    the result by less than 1e-14 relative.
    """
    if not 0.0 <= q < 1.0:
        raise ValueError(f"q must be in [0, 1), got {q!r}")
    if q == 0.0:
        return 1.0
    if n_max is None:
        # dropped factors change log by < sum_{n>n_max} q^n / (1-q)
        target = 1e-15 * (1.0 - q)
        n_max = max(5, math.ceil(math.log(target) / math.log(q)) + 1)
    result = 1.0
    for n in range(1, n_max + 1):
        result /= 1.0 - q ** n
    return result


def gamma_quarter() -> float:
    """Gamma(1/4) from the library gamma routine."""
    return math.gamma(0.25)


def ramanujan_constant() -> float:
    """Closed form 2^(7/8) pi^(3/4) / (e^(pi/24) Gamma(1/4)) for the
    partition product at q = e^(-pi)."""
    return (2 ** 0.875 * math.pi ** 0.75
            / (math.exp(math.pi / 24.0) * gamma_quarter()))


def euler_comparison(q: float, D: int = 60) -> dict:
    """Two independent evaluations of the partition generating function.

    Compares the truncated series sum_d p(d) q^d against the infinite
    product, returning both values and their absolute difference.
    """
    sv = eval_series(hurwitz.euler_partition_series(D), q)
    product = euler_product(q)
    return {
        "q": q,
        "D": D,
        "series_value": sv.value,
        "product_value": product,
        "abs_difference": abs(sv.value - product),
        "tail_estimate": sv.tail_estimate,
    }


def _attach_warning(value: float, tail: float) -> Optional[str]:
    if tail > 1e-15 and (math.isinf(tail) or tail > 0.01 * abs(value)):
        return (
            f"truncation tail estimate {tail:.3e} is not small next to"
            f" value {value:.3e}; increase D"
        )
    return None


def convergence_table(q: float, N_list, m: int, D: int = 40) -> list:
    """Decay rows N^(2m-2) |delta_mN(q)| for each N, from exact coefficients.

    delta_mN is the remainder of the genus expansion of log K_N after
    subtracting the first m genus terms.
    """
    if not 0.0 <= q < DOMAIN_RADIUS:
        raise ValueError(
            f"q must be in [0, 1/e), got {q!r}"
        )
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    rows = []
    for N in N_list:
        delta = hurwitz.delta_series(m, N, D)
        sv = eval_series(delta, q)
        scale = float(N) ** (2 * m - 2)
        value = scale * abs(sv.value)
        tail = scale * sv.tail_estimate
        rows.append(ConvergenceRow(N=N, q=q, m=m, value=value,
                                   tail_estimate=tail, D=D,
                                   warning=_attach_warning(value, tail)))
    return rows


def concentration_check(q: float, m: int, N_list, D: int = 40) -> ConcentrationResult:
    """Rows N^(2m-2) |K_mN(q) - 1| with a boundedness verdict.

    K_mN is the exponential of the normalized remainder delta_mN.  The
    verdict requires no row to exceed the first (smallest-N) row, the
    observed desk-scale behavior.
    """
    if not 0.0 <= q < DOMAIN_RADIUS:
        raise ValueError(
            f"q must be in [0, 1/e), got {q!r}"
        )
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    rows = []
    for N in N_list:
        delta = hurwitz.delta_series(m, N, D)
        knorm = series_exp(delta)
        sv = eval_series(knorm, q)
        scale = float(N) ** (2 * m - 2)
        value = scale * abs(sv.value - 1.0)
        tail = scale * sv.tail_estimate
        rows.append(ConvergenceRow(N=N, q=q, m=m, value=value,
                                   tail_estimate=tail, D=D,
                                   warning=_attach_warning(value, tail)))
    values = [r.value for r in rows]
    bounded = bool(values) and all(
        v <= values[0] * (1.0 + 1e-9) + 1e-300 for v in values
    )
    return ConcentrationResult(rows=rows, bounded=bounded)

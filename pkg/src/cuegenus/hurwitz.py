"""Coefficient families of the genus expansion.

Everything here is exact.  The families:

- K_N^d     unitary-average coefficients, content-polynomial sums over
            diagrams with at most N rows
- H_g^d     genus-graded coefficients, complete homogeneous sums h_{2g-2}
            of diagram contents
- F_g^d     connected (log) counterpart of H_g^d
- B_g^d     classical analogue with (sum of contents)^{2g-2} in place of
            h_{2g-2}
- C_g^d     connected counterpart of B_g^d in the doubly-exponential
            convention
- L_N, Delta_{mN}   log series and its genus-partial-sum remainders

Results are memoized in process; pass a cache.DiskCache (or configure one
with set_disk_cache) to persist the heavier tables across runs.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .cache import DiskCache
from .partitions import enumerate_partitions, partition_count
from .pseries import GenusTable, QSeries, bivariate_exp, bivariate_log, series_log

_memo: dict = {}
_disk_cache: DiskCache | None = None
_USE_DEFAULT = object()


def set_disk_cache(cache: DiskCache | None) -> None:
    """Install (or clear) the process-wide default disk cache."""
    global _disk_cache
    _disk_cache = cache


def get_disk_cache() -> DiskCache | None:
    return _disk_cache


def clear_memo() -> None:
    _memo.clear()


def _cached(family: str, params: dict, build, to_json, from_json, cache):
    if cache is _USE_DEFAULT:
        cache = _disk_cache
    key = (family, tuple(sorted(params.items())))
    if key in _memo:
        return _memo[key]
    result = None
    if cache is not None:
        payload = cache.load(family, params)
        if payload is not None:
            result = from_json(payload)
    if result is None:
        result = build()
        if cache is not None:
            cache.store(family, params, to_json(result))
    _memo[key] = result
    return result


def _content_product(N: int, parts: tuple[int, ...], fact: list[int]) -> int:
    # product of (N + c) over the cells: row i (1-based) of length p
    # contributes (N+1-i)(N+2-i)...(N+p-i) = (N+p-i)! / (N-i)!
    out = 1
    for i, p in enumerate(parts, start=1):
        out *= fact[N + p - i] // fact[N - i]
    return out


def K_N_coeff(N: int, d: int) -> Fraction:
    """Exact K_N^d = d! * sum over diagrams with <= N rows of N^d / prod(N + c)."""
    if N < 1:
        raise ValueError("N must be positive")
    if d < 1:
        raise ValueError("d must be positive")
    fact = [1] * (N + d + 1)
    for i in range(1, N + d + 1):
        fact[i] = fact[i - 1] * i
    Nd = N**d
    total = Fraction(0)
    for lam in enumerate_partitions(d, max_rows=N):
        total += Fraction(Nd, _content_product(N, lam.parts, fact))
    return factorial(d) * total


def K_rational(d: int, t: Fraction) -> Fraction:
    """Exact d! * sum over all diagrams of d of prod(1 + t*c)^{-1}.

    Defined whenever no factor vanishes; for t = 1/N with N >= d this
    agrees with K_N_coeff(N, d) because no diagram then exceeds N rows.
    """
    if d < 1:
        raise ValueError("d must be positive")
    t = Fraction(t)
    p, q = t.numerator, t.denominator
    qd = q**d
    total = Fraction(0)
    for lam in enumerate_partitions(d):
        denom = 1
        for i, part in enumerate(lam.parts):
            for c in range(-i, part - i):
                denom *= q + p * c
        if denom == 0:
            raise ZeroDivisionError(f"pole: 1 + t*c vanishes on {lam!r}")
        total += Fraction(qd, denom)
    return factorial(d) * total


def _h_even_sums(d: int, G: int) -> list[int]:
    # [sum over diagrams of h_0, h_2, ..., h_{2G-2} of the contents]
    r = 2 * G - 2
    sums = [0] * G
    for lam in enumerate_partitions(d):
        dp = [0] * (r + 1)
        dp[0] = 1
        for i, p in enumerate(lam.parts):
            for c in range(-i, p - i):
                if c == 0:
                    continue
                for j in range(1, r + 1):
                    dp[j] += c * dp[j - 1]
        for g in range(G):
            sums[g] += dp[2 * g]
    return sums


def H_coeff(g: int, d: int) -> int:
    """Exact H_g^d = d! * sum over diagrams of h_{2g-2}(contents)."""
    if g < 1 or d < 1:
        raise ValueError("g and d must be positive")
    return factorial(d) * _h_even_sums(d, g)[g - 1]


def B_coeff(g: int, d: int) -> int:
    """Exact B_g^d = d! * sum over diagrams of (sum of contents)^{2g-2}."""
    if g < 1 or d < 1:
        raise ValueError("g and d must be positive")
    total = 0
    e = 2 * g - 2
    for lam in enumerate_partitions(d):
        s = 0
        for i, p in enumerate(lam.parts, start=1):
            s += p * (p + 1) // 2 - i * p
        total += s**e
    return factorial(d) * total


def _identity_row(G: int) -> list[int]:
    return [1] + [0] * (G - 1)


def K_genus_table(D: int, G: int, cache=_USE_DEFAULT) -> GenusTable:
    """Table of H_g^d for d <= D, g <= G (q-exponential convention).

    Entries with g <= G are exact despite the genus truncation: the genus
    grading is closed under multiplication (see pseries._ring_mul), so no
    discarded index ever feeds back into a retained one.
    """
    if D < 0 or G < 1:
        raise ValueError("need D >= 0 and G >= 1")

    def build():
        rows: list[list] = [_identity_row(G)]
        for d in range(1, D + 1):
            fd = factorial(d)
            rows.append([fd * s for s in _h_even_sums(d, G)])
        return GenusTable(rows, t_exponential=False)

    return _cached(
        "K_table",
        {"D": D, "G": G},
        build,
        lambda t: t.to_json_dict(),
        GenusTable.from_json_dict,
        cache,
    )


def B_genus_table(D: int, G: int, cache=_USE_DEFAULT) -> GenusTable:
    """Table of B_g^d for d <= D, g <= G (doubly-exponential convention)."""
    if D < 0 or G < 1:
        raise ValueError("need D >= 0 and G >= 1")

    def build():
        rows: list[list] = [_identity_row(G)]
        for d in range(1, D + 1):
            fd = factorial(d)
            sums = [0] * G
            for lam in enumerate_partitions(d):
                s = 0
                for i, p in enumerate(lam.parts, start=1):
                    s += p * (p + 1) // 2 - i * p
                acc = 1
                sums[0] += 1
                for g in range(1, G):
                    acc *= s * s
                    sums[g] += acc
            rows.append([fd * v for v in sums])
        return GenusTable(rows, t_exponential=True)

    return _cached(
        "B_table",
        {"D": D, "G": G},
        build,
        lambda t: t.to_json_dict(),
        GenusTable.from_json_dict,
        cache,
    )


def F_table(D: int, G: int, cache=_USE_DEFAULT) -> GenusTable:
    """Connected coefficients F_g^d: the bivariate log of the H table."""

    def build():
        return bivariate_log(K_genus_table(D, G, cache=cache))

    return _cached(
        "F_table",
        {"D": D, "G": G},
        build,
        lambda t: t.to_json_dict(),
        GenusTable.from_json_dict,
        cache,
    )


def C_table(D: int, G: int, cache=_USE_DEFAULT) -> GenusTable:
    """Connected classical coefficients C_g^d (doubly-exponential log)."""

    def build():
        return bivariate_log(B_genus_table(D, G, cache=cache))

    return _cached(
        "C_table",
        {"D": D, "G": G},
        build,
        lambda t: t.to_json_dict(),
        GenusTable.from_json_dict,
        cache,
    )


def F_series(g: int, D: int, cache=_USE_DEFAULT) -> QSeries:
    """Plain-coefficient series of F_g: coefficients F_g^d / d!."""
    return F_table(D, g, cache=cache).genus_series(g)


def K_N_series(N: int, D: int, cache=_USE_DEFAULT) -> QSeries:
    """Plain-coefficient truncation of K_N(q): constant 1, then K_N^d / d!."""
    if N < 1:
        raise ValueError("N must be positive")
    if D < 0:
        raise ValueError("D must be nonnegative")

    def build():
        fact = [1] * (N + D + 1)
        for i in range(1, N + D + 1):
            fact[i] = fact[i - 1] * i
        coeffs = [Fraction(1)]
        for d in range(1, D + 1):
            Nd = N**d
            total = Fraction(0)
            for lam in enumerate_partitions(d, max_rows=N):
                total += Fraction(Nd, _content_product(N, lam.parts, fact))
            coeffs.append(total)
        return QSeries(coeffs)

    return _cached(
        "KN_series",
        {"N": N, "D": D},
        build,
        lambda s: s.to_json_dict(),
        QSeries.from_json_dict,
        cache,
    )


def L_N_series(N: int, D: int, cache=_USE_DEFAULT) -> QSeries:
    """Formal log of K_N_series; constant term 0."""

    def build():
        return series_log(K_N_series(N, D, cache=cache))

    return _cached(
        "LN_series",
        {"N": N, "D": D},
        build,
        lambda s: s.to_json_dict(),
        QSeries.from_json_dict,
        cache,
    )


def delta_series(m: int, N: int, D: int, cache=_USE_DEFAULT) -> QSeries:
    """Remainder L_N minus the first m genus terms: L_N - sum_{g<=m} N^{2-2g} F_g.

    The constant term is 0 (all the series involved vanish at q = 0).
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    if N < 1:
        raise ValueError("N must be positive")
    out = L_N_series(N, D, cache=cache)
    for g in range(1, m + 1):
        out = out - Fraction(1, N ** (2 * g - 2)) * F_series(g, D, cache=cache)
    return out


def tail_normalized_table(m: int, D: int, G: int, cache=_USE_DEFAULT) -> GenusTable:
    """Exponential of the F table with genus entries g <= m zeroed.

    Entry (d, g) counts configurations all of whose connected components
    have genus >= m+1; entries with g <= m are zero by construction, and
    m = 0 reproduces the full H table.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")

    def build():
        f = F_table(D, G, cache=cache)
        trimmed = [
            [Fraction(0) if (i + 1) <= m else v for i, v in enumerate(row)]
            for row in f.entries
        ]
        return bivariate_exp(GenusTable(trimmed, t_exponential=f.t_exponential))

    return _cached(
        "tail_table",
        {"D": D, "G": G, "m": m},
        build,
        lambda t: t.to_json_dict(),
        GenusTable.from_json_dict,
        cache,
    )


def stirling2(m: int, n: int) -> int:
    """Stirling number of the second kind by the triangle recurrence."""
    if m < 0 or n < 0:
        raise ValueError("indices must be nonnegative")
    if n > m:
        return 0
    if m == 0:
        return 1
    prev = [1]  # row m=0
    for mm in range(1, m + 1):
        row = [0] * (mm + 1)
        for nn in range(1, mm + 1):
            left = prev[nn - 1]
            right = prev[nn] if nn < mm else 0
            row[nn] = left + nn * right
        prev = row
    return prev[n]


def euler_partition_series(D: int) -> QSeries:
    """Plain series with coefficient p(d): the diagram-count generating series."""
    return QSeries([partition_count(d) for d in range(D + 1)])

"""Eisenstein series, Bernoulli numbers, and quasimodular polynomial fitting.

A quasimodular polynomial here is a polynomial in E2, E4, E6 with exact
rational coefficients, graded by weight 2a+4b+6c.  The fitter solves an
exact linear system through a chosen degree and then validates the
remaining coefficients; residuals are exact rationals, never "small".
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .pseries import QSeries, rat_to_str


class BernoulliCache:
    """Grows a table of exact Bernoulli numbers on demand (B_1 = -1/2)."""

    def __init__(self):
        self.values = [Fraction(1)]

    def get(self, n: int) -> Fraction:
        while len(self.values) <= n:
            m = len(self.values)
            s = sum(comb(m + 1, j) * self.values[j] for j in range(m))
            self.values.append(Fraction(-s, m + 1))
        return self.values[n]


_bernoulli_cache = BernoulliCache()


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n, via sum of C(n+1,j) B_j = 0."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return _bernoulli_cache.get(n)


def eisenstein(k: int, D: int) -> QSeries:
    """Eisenstein series E_{2k} truncated at degree D.

    E_{2k}(q) = 1 - (4k/B_{2k}) sum_d sigma_{2k-1}(d) q^d, which is the
    normalization with constant term 1.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if D < 0:
        raise ValueError(f"D must be >= 0, got {D}")
    factor = Fraction(-4 * k) / bernoulli(2 * k)
    sigma = [0] * (D + 1)
    for n in range(1, D + 1):
        pw = n ** (2 * k - 1)
        for mult in range(n, D + 1, n):
            sigma[mult] += pw
    coeffs = [Fraction(1)] + [factor * sigma[d] for d in range(1, D + 1)]
    return QSeries(coeffs)


def monomial_exponents(max_weight: int) -> list[tuple[int, int, int]]:
    """All exponent triples (a,b,c) with 2a+4b+6c <= max_weight.

    Sorted by (weight, a, b, c) so downstream orderings are stable.
    """
    if max_weight < 0:
        raise ValueError(f"max_weight must be >= 0, got {max_weight}")
    out = []
    for c in range(max_weight // 6 + 1):
        for b in range((max_weight - 6 * c) // 4 + 1):
            for a in range((max_weight - 6 * c - 4 * b) // 2 + 1):
                out.append((a, b, c))
    out.sort(key=lambda t: (2 * t[0] + 4 * t[1] + 6 * t[2], t))
    return out


def monomial_count(max_weight: int) -> int:
    return len(monomial_exponents(max_weight))


class QuasimodularPoly:
    """Polynomial in E2, E4, E6 with exact coefficients.

    Stores a mapping from exponent triples (a, b, c) to nonzero rational
    coefficients; zero coefficients are dropped on construction.
    """

    __slots__ = ("terms",)

    def __init__(self, terms):
        clean = {}
        for key, coeff in dict(terms).items():
            a, b, c = key
            if a < 0 or b < 0 or c < 0:
                raise ValueError(f"negative exponent in monomial {key}")
            coeff = Fraction(coeff)
            if coeff != 0:
                clean[(int(a), int(b), int(c))] = coeff
        self.terms = clean

    @property
    def max_weight(self) -> int:
        if not self.terms:
            return 0
        return max(2 * a + 4 * b + 6 * c for a, b, c in self.terms)

    def __eq__(self, other):
        if not isinstance(other, QuasimodularPoly):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        return f"QuasimodularPoly({self.terms!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b, c) in sorted(self.terms,
                                key=lambda t: (-(2 * t[0] + 4 * t[1]
                                                + 6 * t[2]), t)):
            coeff = self.terms[(a, b, c)]
            names = []
            for base, e in (("E2", a), ("E4", b), ("E6", c)):
                if e == 1:
                    names.append(base)
                elif e > 1:
                    names.append(f"{base}^{e}")
            body = "*".join(names) if names else "1"
            parts.append(f"({rat_to_str(coeff)})*{body}")
        return " + ".join(parts)

    def to_json_list(self) -> list[dict]:
        out = []
        for (a, b, c) in sorted(self.terms,
                                key=lambda t: (2 * t[0] + 4 * t[1]
                                               + 6 * t[2], t)):
            out.append({"a": a, "b": b, "c": c,
                        "coeff": rat_to_str(self.terms[(a, b, c)])})
        return out

    @classmethod
    def from_json_list(cls, items) -> "QuasimodularPoly":
        terms = {}
        for item in items:
            key = (int(item["a"]), int(item["b"]), int(item["c"]))
            terms[key] = Fraction(item["coeff"])
        return cls(terms)


def poly_to_series(P: QuasimodularPoly, D: int) -> QSeries:
    """Substitute the Eisenstein expansions into P, exactly, through q^D."""
    if D < 0:
        raise ValueError(f"D must be >= 0, got {D}")
    result = QSeries.zero(D)
    if not P.terms:
        return result
    maxes = [max(key[i] for key in P.terms) for i in range(3)]
    powers = []
    for i, k in enumerate((1, 2, 3)):
        base = eisenstein(k, D)
        row = [QSeries.one(D)]
        for _ in range(maxes[i]):
            row.append(row[-1] * base)
        powers.append(row)
    for (a, b, c), coeff in P.terms.items():
        term = powers[0][a] * powers[1][b] * powers[2][c]
        result = result + term * coeff
    return result


@dataclass(frozen=True)
class FitFailure:
    """Outcome of a fit whose validation found an exact mismatch."""

    reason: str
    first_mismatch_degree: int


def fit_quasimodular(s: QSeries, max_weight: int, fit_degree: int,
                     validate_degree: int):
    """Fit s by a polynomial in E2, E4, E6 of weight <= max_weight.

    Solves the exact linear system matching coefficients 0..fit_degree,
    then requires every coefficient through validate_degree to match
    exactly.  Returns a QuasimodularPoly on success and a FitFailure
    naming the first mismatching degree otherwise.  An underdetermined
    system (too few fit coefficients for the basis) is an error.
    """
    exponents = monomial_exponents(max_weight)
    n = len(exponents)
    if validate_degree <= fit_degree:
        raise ValueError(
            f"validate_degree {validate_degree} must exceed fit_degree"
            f" {fit_degree}"
        )
    if fit_degree + 1 < n:
        raise ValueError(
            f"underdetermined fit: {fit_degree + 1} equations for {n}"
            f" basis monomials of weight <= {max_weight}"
        )
    if s.order < validate_degree:
        raise ValueError(
            f"series truncated at {s.order}, below validate_degree"
            f" {validate_degree}"
        )
    columns = [poly_to_series(QuasimodularPoly({e: 1}), validate_degree)
               for e in exponents]
    # forward elimination over the fit rows, exact arithmetic
    rows = []
    for d in range(fit_degree + 1):
        rows.append([col.coefficient(d) for col in columns]
                    + [s.coefficient(d)])
    pivots = []
    rank = 0
    for col in range(n):
        pivot_row = None
        for r in range(rank, len(rows)):
            if rows[r][col] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        pv = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            if rows[r][col] != 0:
                factor = rows[r][col] / pv
                for j in range(col, n + 1):
                    rows[r][j] -= factor * rows[rank][j]
        pivots.append(col)
        rank += 1
    if rank < n:
        raise ValueError(
            f"underdetermined fit: rank {rank} < {n} basis monomials"
        )
    x = [Fraction(0)] * n
    for i in range(rank - 1, -1, -1):
        col = pivots[i]
        acc = rows[i][n]
        for j in range(col + 1, n):
            acc -= rows[i][j] * x[j]
        x[col] = acc / rows[i][col]
    # exact validation of every coefficient through validate_degree
    for d in range(validate_degree + 1):
        total = sum((x[j] * columns[j].coefficient(d) for j in range(n)),
                    Fraction(0))
        if total != s.coefficient(d):
            return FitFailure(
                reason=(
                    f"no weight<={max_weight} quasimodular polynomial"
                    f" matches: first mismatch at degree {d}"
                ),
                first_mismatch_degree=d,
            )
    return QuasimodularPoly({e: x[j] for j, e in enumerate(exponents)})


def f2_closed_form() -> QuasimodularPoly:
    """Closed form of the genus-2 coefficient series as a polynomial in
    E2, E4, E6: (5 E2^3 - 3 E2 E4 - 2 E6 + 45 E2^2 + 18 E4 + 90 E2 - 153)
    divided by 51840."""
    den = 51840
    return QuasimodularPoly({
        (3, 0, 0): Fraction(5, den),
        (1, 1, 0): Fraction(-3, den),
        (0, 0, 1): Fraction(-2, den),
        (2, 0, 0): Fraction(45, den),
        (0, 1, 0): Fraction(18, den),
        (1, 0, 0): Fraction(90, den),
        (0, 0, 0): Fraction(-153, den),
    })


def verify_F1_closed_form(D: int) -> bool:
    """Check the genus-1 column two ways through degree D.

    The connected genus-1 coefficients must equal d! * sum_{n | d} 1/n,
    and the logarithm of the partition-counting series must reproduce
    the same column.
    """
    if D < 1:
        raise ValueError(f"D must be >= 1, got {D}")
    from math import factorial

    from .hurwitz import F_table, euler_partition_series
    from .pseries import series_log

    table = F_table(D, 1)
    for d in range(1, D + 1):
        expected = factorial(d) * sum(
            (Fraction(1, nn) for nn in range(1, d + 1) if d % nn == 0),
            Fraction(0))
        if table.entry(d, 1) != expected:
            return False
    logged = series_log(euler_partition_series(D))
    for d in range(1, D + 1):
        if logged.coefficient(d) * factorial(d) != table.entry(d, 1):
            return False
    return True

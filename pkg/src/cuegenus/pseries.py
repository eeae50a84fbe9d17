"""Exact truncated power series in q and genus-graded bivariate tables.

All coefficients are fractions.Fraction.  QSeries stores plain Maclaurin
coefficients c_0..c_D.  GenusTable stores the coefficient families of a
bivariate series in q and t that is even in t: entry (d, g) is the number
T with coefficient of q^d t^{2g-2} equal to T/d!, or T/(d! (2g-2)!) when
the table is flagged t_exponential.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Sequence

SCHEMA_VERSION = 1


def rat_to_str(x: Fraction) -> str:
    """Serialize a rational as "num/den", or plain "num" for integers."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class QSeries:
    """Truncated power series with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        cs = tuple(Fraction(c) for c in coeffs)
        if not cs:
            raise ValueError("a series needs at least its constant coefficient")
        self.coeffs = cs

    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls([0] * (order + 1))

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls([1] + [0] * order)

    @property
    def order(self) -> int:
        """Truncation order D; coefficients beyond q^D are unknown."""
        return len(self.coeffs) - 1

    def coefficient(self, d: int) -> Fraction:
        if not 0 <= d <= self.order:
            raise IndexError(f"degree {d} outside truncation order {self.order}")
        return self.coeffs[d]

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return QSeries(self.coeffs[: order + 1])

    def _check_order(self, other: "QSeries") -> None:
        if self.order != other.order:
            raise ValueError(
                f"truncation orders differ: {self.order} vs {other.order}"
            )

    def __eq__(self, other) -> bool:
        return isinstance(other, QSeries) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "QSeries") -> "QSeries":
        if not isinstance(other, QSeries):
            return NotImplemented
        self._check_order(other)
        return QSeries([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "QSeries") -> "QSeries":
        if not isinstance(other, QSeries):
            return NotImplemented
        self._check_order(other)
        return QSeries([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "QSeries":
        return QSeries([-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, QSeries):
            self._check_order(other)
            a, b = self.coeffs, other.coeffs
            out = [Fraction(0)] * len(a)
            for i, ai in enumerate(a):
                if not ai:
                    continue
                for j in range(len(a) - i):
                    bj = b[j]
                    if bj:
                        out[i + j] += ai * bj
            return QSeries(out)
        if isinstance(other, (int, Fraction)):
            return QSeries([a * other for a in self.coeffs])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSeries([other * a for a in self.coeffs])
        return NotImplemented

    def __repr__(self) -> str:
        shown = ", ".join(rat_to_str(c) for c in self.coeffs[:6])
        if self.order >= 6:
            shown += ", ..."
        return f"QSeries([{shown}], order={self.order})"

    def to_json_dict(self) -> dict:
        return {
            "kind": "qseries",
            "schema": SCHEMA_VERSION,
            "order": self.order,
            "convention": "plain",
            "coeffs": [rat_to_str(c) for c in self.coeffs],
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "QSeries":
        if doc.get("kind") != "qseries" or doc.get("schema") != SCHEMA_VERSION:
            raise ValueError("not a recognized qseries document")
        series = cls([Fraction(c) for c in doc["coeffs"]])
        if series.order != doc["order"]:
            raise ValueError("coefficient count disagrees with recorded order")
        return series


def series_log(a: QSeries) -> QSeries:
    """Formal logarithm of a series with constant term 1.

    Uses the derivative identity (log a)' = a'/a, i.e. the recurrence
    n*b_n = n*a_n - sum_{k=1}^{n-1} k*b_k*a_{n-k}, all exact.
    """
    if a.coeffs[0] != 1:
        raise ValueError("series_log needs constant term 1")
    D = a.order
    ac = a.coeffs
    b = [Fraction(0)] * (D + 1)
    for n in range(1, D + 1):
        acc = n * ac[n]
        for k in range(1, n):
            acc -= k * b[k] * ac[n - k]
        b[n] = Fraction(acc, n)
    return QSeries(b)


def series_exp(a: QSeries) -> QSeries:
    """Formal exponential of a series with constant term 0.

    Recurrence from b' = a'*b: n*b_n = sum_{k=1}^{n} k*a_k*b_{n-k}.
    """
    if a.coeffs[0] != 0:
        raise ValueError("series_exp needs constant term 0")
    D = a.order
    ac = a.coeffs
    b = [Fraction(0)] * (D + 1)
    b[0] = Fraction(1)
    for n in range(1, D + 1):
        acc = Fraction(0)
        for k in range(1, n + 1):
            if ac[k]:
                acc += k * ac[k] * b[n - k]
        b[n] = acc / n
    return QSeries(b)


class GenusTable:
    """Table of exact bivariate coefficients indexed by degree d and genus g.

    entries[d][g-1] holds T with coefficient of q^d t^{2g-2} equal to
    T/d! (q-exponential, t ordinary), or T/(d! (2g-2)!) when
    t_exponential is set.
    """

    __slots__ = ("entries", "t_exponential")

    def __init__(self, entries: Sequence[Sequence], t_exponential: bool = False):
        rows = tuple(tuple(Fraction(v) for v in row) for row in entries)
        if not rows:
            raise ValueError("a table needs at least the degree-0 row")
        G = len(rows[0])
        if G < 1 or any(len(row) != G for row in rows):
            raise ValueError("all rows must have the same positive genus count")
        self.entries = rows
        self.t_exponential = bool(t_exponential)

    @property
    def max_degree(self) -> int:
        return len(self.entries) - 1

    @property
    def max_genus(self) -> int:
        return len(self.entries[0])

    def entry(self, d: int, g: int) -> Fraction:
        if not 0 <= d <= self.max_degree:
            raise IndexError(f"degree {d} outside table range {self.max_degree}")
        if not 1 <= g <= self.max_genus:
            raise IndexError(f"genus {g} outside table range {self.max_genus}")
        return self.entries[d][g - 1]

    def genus_series(self, g: int) -> QSeries:
        """Plain q-coefficients of the genus-g slice (factorials divided out)."""
        tf = factorial(2 * g - 2) if self.t_exponential else 1
        return QSeries(
            [self.entries[d][g - 1] / (factorial(d) * tf) for d in range(len(self.entries))]
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GenusTable)
            and self.entries == other.entries
            and self.t_exponential == other.t_exponential
        )

    def __repr__(self) -> str:
        return (
            f"GenusTable(max_degree={self.max_degree}, max_genus={self.max_genus}, "
            f"t_exponential={self.t_exponential})"
        )

    def to_json_dict(self) -> dict:
        return {
            "kind": "genus_table",
            "schema": SCHEMA_VERSION,
            "max_degree": self.max_degree,
            "max_genus": self.max_genus,
            "convention": "qt_exponential" if self.t_exponential else "q_exponential",
            "entries": [[rat_to_str(v) for v in row] for row in self.entries],
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "GenusTable":
        if doc.get("kind") != "genus_table" or doc.get("schema") != SCHEMA_VERSION:
            raise ValueError("not a recognized genus_table document")
        table = cls(
            [[Fraction(v) for v in row] for row in doc["entries"]],
            t_exponential=(doc["convention"] == "qt_exponential"),
        )
        if table.max_degree != doc["max_degree"] or table.max_genus != doc["max_genus"]:
            raise ValueError("entry shape disagrees with recorded bounds")
        return table


def _ring_mul(u: list[Fraction], v: list[Fraction]) -> list[Fraction]:
    # Convolution in the genus index: t^{2i} * t^{2j} = t^{2(i+j)} with
    # i = g-1.  Truncation at G is exact for every retained index because
    # the product index i+j never draws on discarded ones.
    G = len(u)
    out = [Fraction(0)] * G
    for i, ui in enumerate(u):
        if not ui:
            continue
        for j in range(G - i):
            vj = v[j]
            if vj:
                out[i + j] += ui * vj
    return out


def _to_plain(table: GenusTable) -> list[list[Fraction]]:
    G = table.max_genus
    tf = [factorial(2 * (i + 1) - 2) if table.t_exponential else 1 for i in range(G)]
    return [
        [row[i] / (factorial(d) * tf[i]) for i in range(G)]
        for d, row in enumerate(table.entries)
    ]


def _from_plain(plain: list[list[Fraction]], t_exponential: bool) -> GenusTable:
    G = len(plain[0])
    tf = [factorial(2 * (i + 1) - 2) if t_exponential else 1 for i in range(G)]
    return GenusTable(
        [
            [val * factorial(d) * tf[i] for i, val in enumerate(row)]
            for d, row in enumerate(plain)
        ],
        t_exponential=t_exponential,
    )


def bivariate_log(table: GenusTable) -> GenusTable:
    """Formal log of a genus table whose constant term is 1.

    The degree-0 row must be (1, 0, ..., 0).  Same recurrence as
    series_log, with coefficients living in the genus-convolution ring.
    """
    G = table.max_genus
    ident = [Fraction(1)] + [Fraction(0)] * (G - 1)
    a = _to_plain(table)
    if a[0] != ident:
        raise ValueError("bivariate_log needs constant term 1")
    D = table.max_degree
    b: list[list[Fraction]] = [[Fraction(0)] * G for _ in range(D + 1)]
    for n in range(1, D + 1):
        acc = [n * c for c in a[n]]
        for k in range(1, n):
            prod = _ring_mul(b[k], a[n - k])
            for i in range(G):
                acc[i] -= k * prod[i]
        b[n] = [Fraction(c, n) for c in acc]
    return _from_plain(b, table.t_exponential)


def bivariate_exp(table: GenusTable) -> GenusTable:
    """Formal exp of a genus table whose constant term is 0."""
    G = table.max_genus
    a = _to_plain(table)
    if any(a[0]):
        raise ValueError("bivariate_exp needs constant term 0")
    D = table.max_degree
    b: list[list[Fraction]] = [[Fraction(0)] * G for _ in range(D + 1)]
    b[0] = [Fraction(1)] + [Fraction(0)] * (G - 1)
    for n in range(1, D + 1):
        acc = [Fraction(0)] * G
        for k in range(1, n + 1):
            if not any(a[k]):
                continue
            prod = _ring_mul([k * c for c in a[k]], b[n - k])
            for i in range(G):
                acc[i] += prod[i]
        b[n] = [c / n for c in acc]
    return _from_plain(b, table.t_exponential)

"""Exact genus-expansion coefficients for the expected unitary spherical
integral, with independent cross-checks.

Submodules:
    partitions  -- integer partitions, contents, symmetric-function helpers
    pseries     -- exact truncated power series and genus-graded tables
    hurwitz     -- the coefficient families (K, H, F, B, C) and their series
    oracle      -- brute-force permutation counts (numba or pure Python)
    quasimod    -- Eisenstein series and quasimodular polynomial fitting
    numerics    -- float evaluation, tail estimates, convergence tables
    cache       -- write-once JSON disk cache for computed tables
"""

from .partitions import (
    Partition,
    complete_homogeneous,
    content_polynomial,
    contents,
    dominance_leq,
    enumerate_partitions,
    partition_count,
)
from .pseries import GenusTable, QSeries, series_exp, series_log

__all__ = [
    "Partition",
    "enumerate_partitions",
    "partition_count",
    "contents",
    "content_polynomial",
    "complete_homogeneous",
    "dominance_leq",
    "QSeries",
    "GenusTable",
    "series_log",
    "series_exp",
]

__version__ = "0.1.0"

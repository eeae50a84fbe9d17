"""Brute-force permutation counts used to cross-check the coefficient families.

Everything here enumerates pairs of permutations directly, so it is
independent of the partition sums and the series algebra.  The counts are
exact integers.  Two backends compute the same thing: a compiled kernel
(numba) and a pure-Python mirror.  Selection is via the CUEGENUS_BACKEND
environment variable ("auto", "numba", or "python"), read at call time.
"""

import itertools
import math
import os
from dataclasses import dataclass

_ENV_VAR = "CUEGENUS_BACKEND"
_WORK_LIMIT = 2 * 10**12
_CONFIG_DEGREE_LIMIT = 6
_COMMUTING_DEGREE_LIMIT = 7


class CapacityError(ValueError):
    """Raised when a requested brute-force count is too large to attempt."""


@dataclass(frozen=True)
class ConfigCountQuery:
    """Parameters of one brute-force count: degree, genus, and flags."""

    d: int
    g: int
    monotone: bool = True
    transitive: bool = False

    def count(self) -> int:
        return count_configs(self.d, self.g, self.monotone, self.transitive)


def _resolve_backend() -> str:
    choice = os.environ.get(_ENV_VAR, "auto").strip().lower()
    if choice not in ("auto", "numba", "python"):
        raise ValueError(
            f"invalid {_ENV_VAR}={choice!r}: expected auto, numba, or python"
        )
    if choice == "python":
        return "python"
    try:
        from . import _kernels  # noqa: F401
    except ImportError:
        if choice == "numba":
            raise RuntimeError(
                f"{_ENV_VAR}=numba but the numba backend failed to import"
            )
        return "python"
    return "numba"


def active_backend() -> str:
    """Name of the backend a count would run on right now."""
    return _resolve_backend()


def _check_config_capacity(d: int, g: int) -> None:
    if d > _CONFIG_DEGREE_LIMIT:
        raise CapacityError(
            f"d={d} exceeds the brute-force degree limit {_CONFIG_DEGREE_LIMIT}"
        )
    L = 2 * g - 2
    pairs = math.factorial(d) ** 2
    edges = d * (d - 1) // 2
    work = pairs * max(edges, 1) ** max(L - 1, 0)
    if work > _WORK_LIMIT:
        raise CapacityError(
            f"estimated work {work:.1e} exceeds the limit {_WORK_LIMIT:.0e}"
            f" (d={d}, g={g})"
        )


def count_configs(d: int, g: int, monotone: bool = True,
                  transitive: bool = False) -> int:
    """Count tuples (p1, p2, t1..tL) with L = 2g-2 transpositions whose
    commutator correction multiplies to the identity.

    With monotone=True the transpositions must have weakly increasing
    larger elements; with transitive=True the full tuple must generate a
    transitive group.
    """
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    if g < 1:
        raise ValueError(f"g must be >= 1, got {g}")
    _check_config_capacity(d, g)
    L = 2 * g - 2
    if _resolve_backend() == "numba":
        import numpy as np

        from . import _kernels

        perms = np.array(list(itertools.permutations(range(d))),
                         dtype=np.int64)
        return int(_kernels.count_configs_kernel(perms, L, monotone,
                                                 transitive))
    return _count_configs_py(d, L, monotone, transitive)


def count_commuting_pairs(d: int, transitive: bool = False) -> int:
    """Count pairs of commuting permutations of d points."""
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    if d > _COMMUTING_DEGREE_LIMIT:
        raise CapacityError(
            f"d={d} exceeds the commuting-pair degree limit"
            f" {_COMMUTING_DEGREE_LIMIT}"
        )
    if _resolve_backend() == "numba":
        import numpy as np

        from . import _kernels

        perms = np.array(list(itertools.permutations(range(d))),
                         dtype=np.int64)
        return int(_kernels.count_commuting_kernel(perms, transitive))
    return _count_commuting_py(d, transitive)


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _union(parent, a, b):
    ra = _find(parent, a)
    rb = _find(parent, b)
    if ra != rb:
        parent[ra] = rb


def _ncomponents(parent):
    return sum(1 for k in range(len(parent)) if _find(parent, k) == k)


def _ncycles(perm):
    d = len(perm)
    seen = [False] * d
    count = 0
    for k in range(d):
        if not seen[k]:
            count += 1
            j = k
            while not seen[j]:
                seen[j] = True
                j = perm[j]
    return count


def _apply_swap(cur, curinv, s, t):
    # multiply on the right by the transposition (s t); self-inverse
    ia = curinv[s]
    ib = curinv[t]
    cur[ia] = t
    cur[ib] = s
    curinv[s] = ib
    curinv[t] = ia


def _count_configs_py(d, L, monotone, transitive):
    perms = list(itertools.permutations(range(d)))
    total = 0
    for p1 in perms:
        inv1 = [0] * d
        for k, v in enumerate(p1):
            inv1[v] = k
        for p2 in perms:
            inv2 = [0] * d
            for k, v in enumerate(p2):
                inv2[v] = k
            cur = [inv2[inv1[p2[p1[k]]]] for k in range(d)]
            base_parent = None
            if transitive:
                base_parent = list(range(d))
                for k in range(d):
                    _union(base_parent, k, p1[k])
                    _union(base_parent, k, p2[k])
            if L == 0:
                if all(cur[k] == k for k in range(d)):
                    if not transitive or _ncomponents(base_parent) == 1:
                        total += 1
                continue
            mind = d - _ncycles(cur)
            if mind > L or (L - mind) % 2:
                continue
            curinv = [0] * d
            for k, v in enumerate(cur):
                curinv[v] = k
            total += _extend_py(cur, curinv, d, L, L, 1, monotone,
                                transitive, base_parent, [])
    return total


def _extend_py(cur, curinv, d, L, remaining, min_t, monotone, transitive,
               base_parent, path):
    if remaining == 1:
        moved = [k for k in range(d) if cur[k] != k]
        if len(moved) != 2:
            return 0
        a, b = moved
        if monotone and b < min_t:
            return 0
        if transitive:
            parent = base_parent.copy()
            for s, t in path:
                _union(parent, s, t)
            _union(parent, a, b)
            if _ncomponents(parent) != 1:
                return 0
        return 1
    count = 0
    start = min_t if monotone else 1
    for t in range(start, d):
        for s in range(t):
            _apply_swap(cur, curinv, s, t)
            r = remaining - 1
            feasible = True
            if r >= 2:
                mind = d - _ncycles(cur)
                feasible = mind <= r and (r - mind) % 2 == 0
            if feasible:
                path.append((s, t))
                count += _extend_py(cur, curinv, d, L, r, t, monotone,
                                    transitive, base_parent, path)
                path.pop()
            _apply_swap(cur, curinv, s, t)
    return count


def _count_commuting_py(d, transitive):
    perms = list(itertools.permutations(range(d)))
    total = 0
    for p1 in perms:
        for p2 in perms:
            if any(p1[p2[k]] != p2[p1[k]] for k in range(d)):
                continue
            if transitive:
                parent = list(range(d))
                for k in range(d):
                    _union(parent, k, p1[k])
                    _union(parent, k, p2[k])
                if _ncomponents(parent) != 1:
                    continue
            total += 1
    return total

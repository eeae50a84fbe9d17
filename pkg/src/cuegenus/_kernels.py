"""Compiled enumeration kernels for the brute-force permutation counts.

Same algorithm as the pure-Python path in oracle.py: enumerate pairs
(p1, p2), form the inverse commutator, then extend by transpositions
depth-first with the last factor forced, pruning branches whose current
permutation cannot be written as a product of the remaining count of
transpositions (cycle-distance and parity test).
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _findroot(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(cache=True)
def _union(parent, a, b):
    ra = _findroot(parent, a)
    rb = _findroot(parent, b)
    if ra != rb:
        parent[ra] = rb


@njit(cache=True)
def count_configs_kernel(perms, L, monotone, transitive):
    n, d = perms.shape
    inv1 = np.empty(d, np.int64)
    inv2 = np.empty(d, np.int64)
    cur = np.empty(d, np.int64)
    curinv = np.empty(d, np.int64)
    seen = np.zeros(d, np.int64)
    stamp = 0
    base_parent = np.empty(d, np.int64)
    parent = np.empty(d, np.int64)
    ts = np.empty(L + 2, np.int64)
    ss = np.empty(L + 2, np.int64)
    total = 0
    for i1 in range(n):
        p1 = perms[i1]
        for k in range(d):
            inv1[p1[k]] = k
        for i2 in range(n):
            p2 = perms[i2]
            for k in range(d):
                inv2[p2[k]] = k
            # apply p1, p2, p1^{-1}, p2^{-1} in order: the product the
            # transposition word must invert
            for k in range(d):
                cur[k] = inv2[inv1[p2[p1[k]]]]
            if transitive:
                for k in range(d):
                    base_parent[k] = k
                for k in range(d):
                    _union(base_parent, k, p1[k])
                    _union(base_parent, k, p2[k])
            if L == 0:
                ok = True
                for k in range(d):
                    if cur[k] != k:
                        ok = False
                        break
                if ok:
                    if transitive:
                        roots = 0
                        for k in range(d):
                            if _findroot(base_parent, k) == k:
                                roots += 1
                        if roots == 1:
                            total += 1
                    else:
                        total += 1
                continue
            # cycle-distance prune at the root
            stamp += 1
            nc = 0
            for k in range(d):
                if seen[k] != stamp:
                    nc += 1
                    j = k
                    while seen[j] != stamp:
                        seen[j] = stamp
                        j = cur[j]
            mind = d - nc
            if mind > L or ((L - mind) & 1) == 1:
                continue
            for k in range(d):
                curinv[cur[k]] = k
            # depth-first over edge codes e = t*d + s with s < t; depths
            # 0..L-2 choose factors, the last factor is forced
            depth = 0
            e = d
            while True:
                while e < d * d:
                    t = e // d
                    s = e - t * d
                    if s >= t:
                        e = (t + 1) * d
                        continue
                    break
                if e >= d * d:
                    depth -= 1
                    if depth < 0:
                        break
                    s0 = ss[depth]
                    t0 = ts[depth]
                    ia = curinv[s0]
                    ib = curinv[t0]
                    cur[ia] = t0
                    cur[ib] = s0
                    curinv[s0] = ib
                    curinv[t0] = ia
                    if s0 + 1 < t0:
                        e = t0 * d + s0 + 1
                    else:
                        e = (t0 + 1) * d
                    continue
                t = e // d
                s = e - t * d
                ia = curinv[s]
                ib = curinv[t]
                cur[ia] = t
                cur[ib] = s
                curinv[s] = ib
                curinv[t] = ia
                ss[depth] = s
                ts[depth] = t
                if depth == L - 2:
                    m1 = -1
                    m2 = -1
                    cntm = 0
                    for k in range(d):
                        if cur[k] != k:
                            cntm += 1
                            if cntm > 2:
                                break
                            if m1 < 0:
                                m1 = k
                            else:
                                m2 = k
                    if cntm == 2 and ((not monotone) or m2 >= t):
                        if transitive:
                            for k in range(d):
                                parent[k] = base_parent[k]
                            for j in range(L - 1):
                                _union(parent, ss[j], ts[j])
                            _union(parent, m1, m2)
                            roots = 0
                            for k in range(d):
                                if _findroot(parent, k) == k:
                                    roots += 1
                            if roots == 1:
                                total += 1
                        else:
                            total += 1
                    ia = curinv[s]
                    ib = curinv[t]
                    cur[ia] = t
                    cur[ib] = s
                    curinv[s] = ib
                    curinv[t] = ia
                    if s + 1 < t:
                        e = t * d + s + 1
                    else:
                        e = (t + 1) * d
                else:
                    r = L - (depth + 1)
                    stamp += 1
                    nc = 0
                    for k in range(d):
                        if seen[k] != stamp:
                            nc += 1
                            j = k
                            while seen[j] != stamp:
                                seen[j] = stamp
                                j = cur[j]
                    mind = d - nc
                    if mind <= r and ((r - mind) & 1) == 0:
                        depth += 1
                        if monotone:
                            e = ts[depth - 1] * d
                        else:
                            e = d
                    else:
                        ia = curinv[s]
                        ib = curinv[t]
                        cur[ia] = t
                        cur[ib] = s
                        curinv[s] = ib
                        curinv[t] = ia
                        if s + 1 < t:
                            e = t * d + s + 1
                        else:
                            e = (t + 1) * d
    return total


@njit(cache=True)
def count_commuting_kernel(perms, transitive):
    n, d = perms.shape
    parent = np.empty(d, np.int64)
    total = 0
    for i1 in range(n):
        p1 = perms[i1]
        for i2 in range(n):
            p2 = perms[i2]
            ok = True
            for k in range(d):
                if p1[p2[k]] != p2[p1[k]]:
                    ok = False
                    break
            if not ok:
                continue
            if transitive:
                for k in range(d):
                    parent[k] = k
                for k in range(d):
                    _union(parent, k, p1[k])
                    _union(parent, k, p2[k])
                roots = 0
                for k in range(d):
                    if _findroot(parent, k) == k:
                        roots += 1
                if roots != 1:
                    continue
            total += 1
    return total

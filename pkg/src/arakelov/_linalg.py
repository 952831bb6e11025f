"""Exact integer matrix routines: Hermite/Smith normal forms and kernels.

All matrices are lists of row lists of python ints.  Sizes here are tiny
(degree <= a handful), so classical Euclidean elimination is plenty.
"""

from __future__ import annotations

from math import gcd


def _swap_rows(m, i, j):
    m[i], m[j] = m[j], m[i]


def _egcd(a, b):
    """(g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _hnf_two_cols(a):
    """HNF of an m-by-2 integer matrix by gcd folding (no transform)."""
    m = len(a)
    row0 = None
    leftovers = []
    for r in a:
        if r[0]:
            if row0 is None:
                row0 = [r[0], r[1]]
            else:
                g, x, y = _egcd(row0[0], r[0])
                leftovers.append((-r[0] // g) * row0[1] + (row0[0] // g) * r[1])
                row0 = [g, x * row0[1] + y * r[1]]
        else:
            leftovers.append(r[1])
    g1 = 0
    for v in leftovers:
        g1 = gcd(g1, v)
    out = []
    if row0 is not None:
        if row0[0] < 0:
            row0 = [-row0[0], -row0[1]]
        if g1:
            row0[1] %= g1
        out.append(row0)
    if g1:
        out.append([0, g1])
    while len(out) < m:
        out.append([0, 0])
    return out


def hermite_normal_form(rows, transform=False):
    """Row-style HNF of an integer matrix.

    Returns (H, U) with H = U * rows (U unimodular) when transform=True,
    else just H.  H is in row echelon form with positive pivots and the
    entries above each pivot reduced into [0, pivot).  Zero rows are moved
    to the bottom (and kept, so U stays square).
    """
    a = [list(r) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    if not transform and n == 2:
        return _hnf_two_cols(a)
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)] if transform else None

    row = 0
    for col in range(n):
        # find a nonzero entry in this column at or below `row`
        piv = None
        for i in range(row, m):
            if a[i][col]:
                piv = i
                break
        if piv is None:
            continue
        _swap_rows(a, row, piv)
        if u is not None:
            _swap_rows(u, row, piv)
        # clear the column below via the Euclidean algorithm
        for i in range(row + 1, m):
            while a[i][col]:
                q = a[row][col] // a[i][col]
                for k in range(n):
                    a[row][k] -= q * a[i][k]
                if u is not None:
                    for k in range(m):
                        u[row][k] -= q * u[i][k]
                _swap_rows(a, row, i)
                if u is not None:
                    _swap_rows(u, row, i)
        if a[row][col] < 0:
            a[row] = [-x for x in a[row]]
            if u is not None:
                u[row] = [-x for x in u[row]]
        # reduce the entries above the pivot
        p = a[row][col]
        for i in range(row):
            q = a[i][col] // p
            if q:
                for k in range(n):
                    a[i][k] -= q * a[row][k]
                if u is not None:
                    for k in range(m):
                        u[i][k] -= q * u[row][k]
        row += 1
        if row == m:
            break
    if transform:
        return a, u
    return a


def rank_of_echelon(h):
    return sum(1 for r in h if any(r))


def right_kernel(rows):
    """Basis (list of int vectors) of {x : rows @ x = 0} over the integers."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    if m == 0:
        return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    # row-reduce the transpose with a transform: zero rows of H correspond to
    # transform rows annihilating every column of `rows`.
    at = [[rows[i][j] for i in range(m)] for j in range(n)]
    h, u = hermite_normal_form(at, transform=True)
    return [u[i] for i in range(n) if not any(h[i])]


def det_triangular(h):
    d = 1
    for i in range(len(h)):
        d *= h[i][i]
    return d


def smith_normal_form(rows):
    """Elementary divisors d_1 | d_2 | ... of an integer matrix (full list,
    including 1s, excluding the zero divisors of a rank-deficient matrix)."""
    a = [list(r) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    divisors = []
    top = 0
    while top < min(m, n):
        # locate a nonzero pivot
        piv = None
        for i in range(top, m):
            for j in range(top, n):
                if a[i][j]:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        i0, j0 = piv
        _swap_rows(a, top, i0)
        for r in a:
            r[top], r[j0] = r[j0], r[top]
        # clear row and column `top`; restart whenever a division stays inexact
        while True:
            for i in range(top + 1, m):
                while a[i][top]:
                    q = a[top][top] // a[i][top]
                    for k in range(n):
                        a[top][k] -= q * a[i][k]
                    _swap_rows(a, top, i)
            if all(a[top][j] % a[top][top] == 0 for j in range(top + 1, n)):
                for j in range(top + 1, n):
                    q = a[top][j] // a[top][top]
                    if q:
                        for i in range(m):
                            a[i][j] -= q * a[i][top]
                break
            # mix an offending column into column `top` and retry
            for j in range(top + 1, n):
                if a[top][j] % a[top][top]:
                    for i in range(m):
                        a[i][top] += a[i][j]
                    break
        divisors.append(abs(a[top][top]))
        top += 1
    # enforce the divisibility chain
    changed = True
    while changed:
        changed = False
        for i in range(len(divisors) - 1):
            x, y = divisors[i], divisors[i + 1]
            if y % x:
                g = gcd(x, y)
                divisors[i], divisors[i + 1] = g, x * y // g
                changed = True
    return divisors

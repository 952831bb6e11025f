"""Real lattices: Gram-Schmidt, LLL (delta = 3/4), bounded enumeration,
shortest vectors, and the minimality box test for ideal elements.

Enumeration is exhaustive inside the coefficient box
|m_i| <= 2^((n-1)/2) * (3/2)^(n-i) * bound/||b_1||  (valid for delta = 3/4),
with sound partial-norm pruning, then filtered by true length.
"""

from __future__ import annotations

import mpmath
from mpmath import mp

_DELTA_NUM, _DELTA_DEN = 3, 4


class RealLattice:
    """Row-vector lattice over R with a record of the unimodular transform
    back to the basis it was built from."""

    def __init__(self, basis, transform=None, prec=None):
        self.basis = [list(r) for r in basis]
        m = len(self.basis)
        self.transform = ([list(r) for r in transform] if transform is not None
                          else [[int(i == j) for j in range(m)] for i in range(m)])
        self.prec = prec if prec is not None else mp.prec
        self._gso = None

    @property
    def dim(self):
        return len(self.basis)

    def gram(self):
        with mp.workprec(self.prec):
            return [[_dot(a, b) for b in self.basis] for a in self.basis]

    def gso(self):
        """(bstar, mu, norms_sq) Gram-Schmidt data, cached."""
        if self._gso is None:
            with mp.workprec(self.prec):
                n = self.dim
                bstar = []
                mu = [[mpmath.mpf(0)] * n for _ in range(n)]
                norms = []
                for i in range(n):
                    v = list(self.basis[i])
                    for j in range(i):
                        mu[i][j] = _dot(self.basis[i], bstar[j]) / norms[j]
                        v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
                    bstar.append(v)
                    norms.append(_dot(v, v))
                self._gso = (bstar, mu, norms)
        return self._gso

    def to_original(self, coeffs):
        """Map coefficients on this basis to coefficients on the original."""
        m = len(self.transform[0])
        return tuple(sum(c * self.transform[i][j] for i, c in enumerate(coeffs))
                     for j in range(m))

    def vector(self, coeffs):
        with mp.workprec(self.prec):
            n = len(self.basis[0])
            out = [mpmath.mpf(0)] * n
            for c, row in zip(coeffs, self.basis):
                if c:
                    for k in range(n):
                        out[k] += c * row[k]
            return out


def _dot(a, b):
    s = mpmath.mpf(0)
    for x, y in zip(a, b):
        s += x * y
    return s


def lll_reduce(L):
    """LLL with delta = 3/4; returns a new RealLattice spanning the same
    lattice, with the composed transform to L's original basis."""
    with mp.workprec(L.prec):
        n = L.dim
        b = [list(r) for r in L.basis]
        u = [list(r) for r in L.transform]
        tiny = mpmath.mpf(2) ** (-(L.prec - 8))
        scale = max(max(abs(x) for x in row) for row in b)
        if scale == 0:
            raise ValueError("zero basis")

        zero = mpmath.mpf(0)
        bstar = [None] * n
        mu = [[zero] * n for _ in range(n)]
        norms = [zero] * n

        def gso_row(i):
            v = list(b[i])
            for j in range(i):
                mu[i][j] = _dot(b[i], bstar[j]) / norms[j]
                v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
            bstar[i] = v
            nv = _dot(v, v)
            if nv < (tiny * scale) ** 2:
                raise ValueError("dependent basis")
            norms[i] = nv

        for i in range(n):
            gso_row(i)
        k = 1
        while k < n:
            # size-reduce b_k against b_{k-1} .. b_0; bstar_k and the mu
            # entries of later rows are unchanged by this, so only row k
            # of mu needs updating
            for j in range(k - 1, -1, -1):
                q = int(mpmath.nint(mu[k][j]))
                if q:
                    b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                    u[k] = [x - q * y for x, y in zip(u[k], u[j])]
                    for jj in range(j):
                        mu[k][jj] -= q * mu[j][jj]
                    mu[k][j] -= q
            lovasz = (mpmath.mpf(_DELTA_NUM) / _DELTA_DEN - mu[k][k - 1] ** 2) * norms[k - 1]
            if norms[k] >= lovasz:
                k += 1
            else:
                b[k - 1], b[k] = b[k], b[k - 1]
                u[k - 1], u[k] = u[k], u[k - 1]
                # the swap only changes bstar rows k-1 and k, plus the mu
                # entries of later rows in those two columns
                gso_row(k - 1)
                gso_row(k)
                for i in range(k + 1, n):
                    for j in (k - 1, k):
                        mu[i][j] = _dot(b[i], bstar[j]) / norms[j]
                k = max(k - 1, 1)
        out = RealLattice(b, transform=u, prec=L.prec)
        out._gso = (bstar, mu, norms)
        return out


def enumerate_short(L, bound):
    """All nonzero lattice vectors of length <= bound, one representative per
    +/- pair (first nonzero coefficient positive), as coefficient tuples on
    L's basis.  L must be LLL-reduced."""
    if bound <= 0:
        raise ValueError("bound must be positive")
    with mp.workprec(L.prec):
        n = L.dim
        bstar, mu, norms = L.gso()
        bound = mpmath.mpf(bound)
        b1 = mpmath.sqrt(_dot(L.basis[0], L.basis[0]))
        # Coefficient box; indices here are 0-based (i = 0 is the first vector).
        box = [int(mpmath.floor(mpmath.mpf(2) ** (mpmath.mpf(n - 1) / 2)
                                * mpmath.mpf(3) ** (n - 1 - i) / mpmath.mpf(2) ** (n - 1 - i)
                                * bound / b1 + mpmath.mpf("0.5")))
               for i in range(n)]
        found = []
        coeffs = [0] * n
        bsq = bound ** 2

        def descend(i, partial):
            if i < 0:
                if any(coeffs):
                    found.append(tuple(coeffs))
                return
            center = -sum(mu[j][i] * coeffs[j] for j in range(i + 1, n))
            if norms[i] > 0:
                radius = mpmath.sqrt(max(bsq - partial, mpmath.mpf(0)) / norms[i])
            else:
                radius = mpmath.mpf(box[i])
            lo = max(-box[i], int(mpmath.ceil(center - radius - mpmath.mpf("1e-9"))))
            hi = min(box[i], int(mpmath.floor(center + radius + mpmath.mpf("1e-9"))))
            for m in range(lo, hi + 1):
                coeffs[i] = m
                add = norms[i] * (m - center) ** 2
                if add <= bsq - partial + mpmath.mpf("1e-30"):
                    descend(i - 1, partial + add)
            coeffs[i] = 0

        descend(n - 1, mpmath.mpf(0))
        # filter by true length, canonicalize signs, check the Lemma-10.1 bound
        out = set()
        ratio = mpmath.mpf(3) / mpmath.sqrt(2)
        eps = mpmath.mpf(2) ** (-(L.prec // 2))
        snorms = [mpmath.sqrt(x) for x in norms]
        rpows = [ratio ** (n - 1 - i) for i in range(n)]
        for c in found:
            v = L.vector(c)
            ln = mpmath.sqrt(_dot(v, v))
            if ln > bound * (1 + eps):
                continue
            for i in range(n):
                assert abs(c[i]) * snorms[i] <= rpows[i] * ln * (1 + eps)
            first = next(x for x in c if x)
            if first < 0:
                c = tuple(-x for x in c)
            out.add(c)
        return sorted(out)


def _shortest_two(L):
    """Shortest vector of a rank-2 lattice by Lagrange reduction: after the
    reduction every minimum has coefficients in {-1,0,1}^2."""
    with mp.workprec(L.prec):
        b = [list(L.basis[0]), list(L.basis[1])]
        t = [[1, 0], [0, 1]]
        n0 = _dot(b[0], b[0])
        n1 = _dot(b[1], b[1])
        if n0 == 0 or n1 == 0:
            raise ValueError("dependent basis")
        if n1 < n0:
            b[0], b[1] = b[1], b[0]
            t[0], t[1] = t[1], t[0]
            n0, n1 = n1, n0
        for _ in range(10 ** 5):
            q = int(mpmath.nint(_dot(b[1], b[0]) / n0))
            if q:
                b[1] = [x - q * y for x, y in zip(b[1], b[0])]
                t[1] = [x - q * y for x, y in zip(t[1], t[0])]
                n1 = _dot(b[1], b[1])
            if n1 < n0:
                b[0], b[1] = b[1], b[0]
                t[0], t[1] = t[1], t[0]
                n0, n1 = n1, n0
            else:
                break
        else:
            raise ValueError("reduction did not terminate")
        eps = mpmath.mpf(2) ** (-(L.prec // 2))
        cands = []
        for c0, c1 in ((1, 0), (0, 1), (1, -1), (1, 1)):
            v = [c0 * x + c1 * y for x, y in zip(b[0], b[1])]
            ln = mpmath.sqrt(_dot(v, v))
            cc = tuple(c0 * x + c1 * y for x, y in zip(t[0], t[1]))
            first = next(x for x in cc if x)
            if first < 0:
                cc = tuple(-x for x in cc)
            cands.append((ln, cc))
        min_len = min(ln for ln, _ in cands)
        best = min((c, ln) for ln, c in cands if ln <= min_len * (1 + eps))
        return best[0], best[1]


def shortest_vector(L):
    """(coeffs, length) of a shortest nonzero vector of an LLL-reduced L
    (any basis in rank 2).  Ties (within tolerance) go to the
    lexicographically smallest positive-leading coefficient tuple."""
    if L.dim == 2:
        return _shortest_two(L)
    with mp.workprec(L.prec):
        b1 = mpmath.sqrt(_dot(L.basis[0], L.basis[0]))
        eps = mpmath.mpf(2) ** (-(L.prec // 2))
        cands = []
        for c in enumerate_short(L, b1 * (1 + eps)):
            v = L.vector(c)
            cands.append((mpmath.sqrt(_dot(v, v)), c))
        min_len = min(ln for ln, _ in cands)
        best = min((c, ln) for ln, c in cands if ln <= min_len * (1 + eps))
        return best[0], best[1]


def minimal_test(F, I, x):
    """True iff no nonzero g in the ideal I satisfies |sigma(g)| < |sigma(x)|
    at every infinite prime.  Scales the box to the unit box, LLL-reduces,
    bails out early if the first basis vector is shorter than 1/sqrt(n),
    else enumerates every vector of length <= sqrt(n) and applies the strict
    box test at tolerance 2^(-p/2), escalating precision once on boundary
    ambiguity."""
    from . import field as _field
    from . import ideals as _ideals

    if x.is_zero():
        raise ValueError("x must be nonzero")
    if not _ideals.contains(I, x):
        raise ValueError("x is not in the ideal")
    cache = F._caches.setdefault("minimal_test", {})
    ck = (I.key(), x.coords)
    if ck in cache:
        return cache[ck]

    def run(prec):
        with mp.workprec(prec + 32):
            tol = mpmath.mpf(2) ** (-(prec // 2))
            xe = _field.embed(F, x, prec=prec)
            xabs = [abs(e) for e in xe.entries]
            rows = []
            for b in I.basis_elements():
                be = _field.embed(F, b, prec=prec)
                scaled = _field.EmbeddingVector(
                    F, [e / a for e, a in zip(be.entries, xabs)])
                rows.append(_field.flatten(F, scaled))
            L = RealLattice(rows, prec=prec + 32)
            red = lll_reduce(L)
            n = F.n
            b1 = mpmath.sqrt(_dot(red.basis[0], red.basis[0]))
            if b1 < 1 / mpmath.sqrt(n) - tol:
                return False  # strictly inside the unit box: a witness exists
            ambiguous = False
            for c in enumerate_short(red, mpmath.sqrt(n) + tol):
                orig = red.to_original(c)
                g = _ideal_element(I, orig)
                ge = _field.embed(F, g, prec=prec)
                ratios = [abs(e) / a for e, a in zip(ge.entries, xabs)]
                if all(r <= 1 - tol for r in ratios):
                    return False
                if all(r < 1 + tol for r in ratios):
                    ambiguous = True  # would-be witness with boundary entries
            return None if ambiguous else True

    res = run(F.precision_bits)
    if res is None:
        res = run(2 * F.precision_bits)
        if res is None:
            # entries still pinned to the boundary at doubled precision:
            # exact boundary points (e.g. root-of-unity multiples) are not
            # strict-box witnesses
            res = True
    cache[ck] = res
    return res


def _ideal_element(I, coeffs):
    """Field element sum coeffs_i * (row_i/denom) of an ideal basis."""
    from fractions import Fraction
    F = I.field
    n = F.n
    coords = [Fraction(0)] * n
    for c, row in zip(coeffs, I.hnf):
        if c:
            for k in range(n):
                coords[k] += Fraction(c * row[k], I.denom)
    return F.element(coords)

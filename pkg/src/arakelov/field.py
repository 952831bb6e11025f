"""Number fields, exact elements, and the ambient real algebra.

A field is described by a monic integer polynomial plus an integral basis
(given, standard for quadratics, or the power basis).  Exact element
arithmetic runs on the basis multiplication table; numerical work happens
on per-embedding coordinates at a configurable binary precision, with the
convention that all inexact comparisons use the tolerance 2^(-p/2).
"""

from __future__ import annotations

from fractions import Fraction

import mpmath
from mpmath import mp

from ._linalg import hermite_normal_form

_GUARD_BITS = 16


def _to_mpf(q):
    if isinstance(q, Fraction):
        return mpmath.mpf(q.numerator) / q.denominator
    return mpmath.mpf(q)


def _frac_matrix_inverse(rows):
    """Inverse of a square matrix of Fractions (Gauss-Jordan)."""
    n = len(rows)
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [r[n:] for r in a]


def _frac_det(rows):
    n = len(rows)
    a = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for i in range(col + 1, n):
            if a[i][col]:
                f = a[i][col] / a[col][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return det


def _unimodular_inverse(u):
    """Inverse of a unimodular integer matrix, via Fraction elimination."""
    inv = _frac_matrix_inverse(u)
    out = []
    for r in inv:
        row = []
        for x in r:
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
            row.append(x.numerator)
        out.append(row)
    return out


def _squarefree_decompose(m):
    """m = s * f^2 with s squarefree (sign carried by s).  Trial division."""
    sign = -1 if m < 0 else 1
    m = abs(m)
    s, f = 1, 1
    d = 2
    while d * d <= m:
        e = 0
        while m % d == 0:
            m //= d
            e += 1
        if e:
            f *= d ** (e // 2)
            if e % 2:
                s *= d
        d += 1 if d == 2 else 2
    s *= m
    return sign * s, f


class FieldElement:
    """Exact element: coordinates on the integral basis, as Fractions."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        self.field = field
        self.coords = tuple(Fraction(c) for c in coords)
        if len(self.coords) != field.n:
            raise ValueError("wrong coordinate length")

    def __repr__(self):
        return f"FieldElement({list(self.coords)})"

    def __eq__(self, other):
        return (isinstance(other, FieldElement)
                and self.field is other.field and self.coords == other.coords)

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def is_rational(self):
        return all(c == 0 for c in self.coords[1:])

    def __add__(self, other):
        return FieldElement(self.field, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        return FieldElement(self.field, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.coords])

    def __mul__(self, other):
        F = self.field
        if isinstance(other, (int, Fraction)):
            return FieldElement(F, [c * other for c in self.coords])
        out = [Fraction(0)] * F.n
        lam = F.mult_table
        for i, a in enumerate(self.coords):
            if a == 0:
                continue
            for j, b in enumerate(other.coords):
                if b == 0:
                    continue
                ab = a * b
                row = lam[i][j]
                for k in range(F.n):
                    if row[k]:
                        out[k] += ab * row[k]
        return FieldElement(F, out)

    __rmul__ = __mul__

    def mult_matrix(self):
        """Rows: coordinates of self*omega_j (matrix of multiplication by self)."""
        F = self.field
        rows = []
        for j in range(F.n):
            ej = F.basis_element(j)
            rows.append((self * ej).coords)
        return rows

    def norm(self):
        return _frac_det(self.mult_matrix())

    def trace(self):
        m = self.mult_matrix()
        return sum(m[j][j] for j in range(self.field.n))

    def inverse(self):
        """Solve x*self = 1 exactly."""
        F = self.field
        m = self.mult_matrix()  # row j = self*omega_j; x = sum x_j omega_j
        # we need sum_j x_j (self*omega_j) = 1, i.e. x @ m = e0
        inv = _frac_matrix_inverse([[m[i][j] for i in range(F.n)] for j in range(F.n)])
        coords = [inv[j][0] for j in range(F.n)]
        return FieldElement(F, coords)

    def power_coords(self):
        """Coordinates on the power basis 1, alpha, ..., alpha^(n-1)."""
        F = self.field
        out = [Fraction(0)] * F.n
        for c, w in zip(self.coords, F.integral_basis):
            for k in range(F.n):
                out[k] += c * w[k]
        return out


class EmbeddingVector:
    """One numerical value per infinite prime (real mpf / complex mpc)."""

    __slots__ = ("field", "entries", "precision_bits")

    def __init__(self, field, entries):
        self.field = field
        self.entries = tuple(entries)
        self.precision_bits = field.precision_bits
        if len(self.entries) != field.r1 + field.r2:
            raise ValueError("wrong number of entries")

    def __repr__(self):
        return f"EmbeddingVector({list(self.entries)})"

    def __mul__(self, other):
        if isinstance(other, EmbeddingVector):
            return EmbeddingVector(self.field, [a * b for a, b in zip(self.entries, other.entries)])
        return EmbeddingVector(self.field, [a * other for a in self.entries])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, EmbeddingVector):
            return EmbeddingVector(self.field, [a / b for a, b in zip(self.entries, other.entries)])
        return EmbeddingVector(self.field, [a / other for a in self.entries])

    def conj(self):
        return EmbeddingVector(self.field, [mpmath.conj(a) for a in self.entries])

    def abs_entries(self):
        return EmbeddingVector(self.field, [abs(a) for a in self.entries])

    def norm_sq(self):
        return inner(self, self)

    def norm_len(self):
        return mpmath.sqrt(inner(self, self))


def build_field(poly, basis_input=None, mult_table=None, precision=128):
    """Construct a NumberField from a monic irreducible integer polynomial.

    `poly` is the coefficient list [c0, c1, ..., 1] (ascending).  The
    integral basis is taken from `basis_input` (rows of rationals on the
    power basis) when given, derived from the discriminant for quadratic
    fields, and the power basis otherwise.
    """
    return NumberField(poly, basis_input=basis_input, mult_table=mult_table,
                       precision=precision)


class NumberField:
    def __init__(self, poly, basis_input=None, mult_table=None, precision=128):
        poly = [int(c) for c in poly]
        if len(poly) < 3:
            raise ValueError("degree must be at least 2")
        if poly[-1] != 1:
            raise ValueError("polynomial must be monic")
        self.poly = tuple(poly)
        self.n = len(poly) - 1
        self.precision_bits = int(precision)
        if self.precision_bits < 24:
            raise ValueError("precision too low")
        self._check_irreducible()

        self._power_reduction = self._build_power_reduction()
        self.poly_disc = self._power_basis_disc()
        if self.poly_disc == 0:
            raise ValueError("polynomial is not squarefree")

        if basis_input is not None:
            basis = [[Fraction(x) for x in row] for row in basis_input]
        elif self.n == 2:
            basis = self._standard_quadratic_basis()
        else:
            basis = [[Fraction(int(i == j)) for j in range(self.n)] for i in range(self.n)]
        basis = self._normalize_basis(basis)
        self.integral_basis = tuple(tuple(r) for r in basis)
        self.basis_inv = _frac_matrix_inverse(list(map(list, self.integral_basis)))

        self.mult_table = self._build_mult_table()
        if mult_table is not None:
            supplied = tuple(tuple(tuple(int(x) for x in row) for row in plane)
                             for plane in mult_table)
            if supplied != self.mult_table:
                raise ValueError("supplied multiplication table is inconsistent")

        self.discriminant = self._basis_disc()
        sq, _ = _squarefree_decompose(self.poly_disc)
        if basis_input is not None or self.n == 2:
            self.maximal_certified = True
        else:
            self.maximal_certified = (sq == self.poly_disc)
        idx2 = Fraction(self.poly_disc, self.discriminant)
        assert idx2.denominator == 1
        self.index = _isqrt_exact(idx2.numerator)

        self._embedding_cache = {}
        self._compute_embeddings()
        self.torsion_order = self._torsion_order()
        self._caches = {}

    # ----- exact construction helpers -------------------------------------

    def _check_irreducible(self):
        import sympy
        x = sympy.Symbol("x")
        expr = sum(sympy.Integer(c) * x ** i for i, c in enumerate(self.poly))
        if not sympy.Poly(expr, x).is_irreducible:
            raise ValueError("polynomial is reducible over the rationals")

    def _build_power_reduction(self):
        """Coordinates of alpha^k on the power basis for k = n .. 2n-2."""
        n = self.n
        red = {}
        cur = [Fraction(-c) for c in self.poly[:n]]  # alpha^n
        red[n] = list(cur)
        for k in range(n + 1, 2 * n - 1):
            nxt = [Fraction(0)] * n
            for i, c in enumerate(cur):
                if i + 1 < n:
                    nxt[i + 1] += c
                else:
                    for j in range(n):
                        nxt[j] += c * red[n][j]
            red[k] = nxt
            cur = nxt
        return red

    def _power_mul(self, a, b):
        """Product of two power-basis coordinate vectors, reduced mod poly."""
        n = self.n
        prod = [Fraction(0)] * (2 * n - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
        out = prod[:n]
        for k in range(n, 2 * n - 1):
            if prod[k]:
                for j in range(n):
                    out[j] += prod[k] * self._power_reduction[k][j]
        return out

    def _power_trace(self, v):
        """Exact trace of a power-basis vector via companion-matrix powers."""
        n = self.n
        # Tr(alpha^k) for k = 0..n-1
        if not hasattr(self, "_alpha_traces"):
            traces = [Fraction(n)]
            cur = [Fraction(0)] * n  # alpha^k on power basis
            cur[0] = Fraction(1)
            alpha = [Fraction(0)] * n
            if n > 1:
                alpha[1] = Fraction(1)
            for _ in range(1, n):
                cur = self._power_mul(cur, alpha)
                # trace of multiplication by cur
                t = Fraction(0)
                basis = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
                for j in range(n):
                    t += self._power_mul(cur, basis[j])[j]
                traces.append(t)
            self._alpha_traces = traces
        return sum(c * t for c, t in zip(v, self._alpha_traces))

    def _power_basis_disc(self):
        n = self.n
        pows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        t = [[self._power_trace(self._power_mul(pows[i], pows[j]))
              for j in range(n)] for i in range(n)]
        d = _frac_det(t)
        assert d.denominator == 1
        return d.numerator

    def _standard_quadratic_basis(self):
        a1 = self.poly[1]
        d, f0 = _squarefree_decompose(self.poly_disc)
        # sqrt(d) = (2*alpha + a1)/f0 on the power basis
        sqrt_d = [Fraction(a1, f0), Fraction(2, f0)]
        if d % 4 == 1:
            omega2 = [(1 + sqrt_d[0]) / 2, sqrt_d[1] / 2]
        else:
            omega2 = sqrt_d
        return [[Fraction(1), Fraction(0)], omega2]

    def _normalize_basis(self, basis):
        """Unimodular change of basis so the first vector is 1."""
        n = self.n
        one = [Fraction(1)] + [Fraction(0)] * (n - 1)
        winv = _frac_matrix_inverse(basis)
        c = [sum(one[k] * winv[k][j] for k in range(n)) for j in range(n)]
        cints = []
        for x in c:
            if x.denominator != 1:
                raise ValueError("1 is not in the span of the supplied basis")
            cints.append(x.numerator)
        if basis[0] == one:
            return basis
        h, u = hermite_normal_form([[ci] for ci in cints], transform=True)
        if h[0][0] != 1:
            raise ValueError("1 is not primitive in the supplied basis")
        m = _unimodular_inverse(u)  # first column of m is c
        t = [[m[j][i] for j in range(n)] for i in range(n)]  # first row = c
        new = [[sum(Fraction(t[i][k]) * basis[k][j] for k in range(n))
                for j in range(n)] for i in range(n)]
        assert new[0] == one
        return new

    def _build_mult_table(self):
        n = self.n
        table = []
        for i in range(n):
            plane = []
            wi = list(self.integral_basis[i])
            for j in range(n):
                prod = self._power_mul(wi, list(self.integral_basis[j]))
                coords = [sum(Fraction(prod[k]) * self.basis_inv[k][l] for k in range(n))
                          for l in range(n)]
                row = []
                for x in coords:
                    if x.denominator != 1:
                        raise ValueError("basis is not closed under multiplication")
                    row.append(x.numerator)
                plane.append(tuple(row))
            table.append(tuple(plane))
        return tuple(table)

    def _basis_disc(self):
        n = self.n
        elems = [self.basis_element(i) for i in range(n)]
        t = [[(elems[i] * elems[j]).trace() for j in range(n)] for i in range(n)]
        d = _frac_det(t)
        assert d.denominator == 1
        return d.numerator

    # ----- numerical layer -------------------------------------------------

    @property
    def tau(self):
        with mp.workprec(self.precision_bits + _GUARD_BITS):
            return mpmath.mpf(2) ** (-(self.precision_bits // 2))

    def embeddings_at(self, prec):
        """(roots, basis embeddings) recomputed/cached at the given precision."""
        if prec in self._embedding_cache:
            return self._embedding_cache[prec]
        n = self.n
        with mp.workprec(2 * prec + _GUARD_BITS):
            coeffs = [mpmath.mpf(c) for c in reversed(self.poly)]
            roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=prec)
            height = max(abs(c) for c in coeffs)
            tol = mpmath.mpf(2) ** (-(prec // 2))
            for r in roots:
                if abs(mpmath.polyval(coeffs, r)) > tol * height * max(1, abs(r)) ** n:
                    raise ValueError("root refinement failed")
            real = sorted((r.real for r in roots if abs(r.imag) < tol * max(1, abs(r))),
                          key=lambda t: t, reverse=True)
            cplx = sorted((r for r in roots
                           if r.imag > tol * max(1, abs(r))),
                          key=lambda z: (z.real, z.imag))
            if len(real) + 2 * len(cplx) != n:
                raise ValueError("embedding classification failed")
            ordered = tuple(real) + tuple(cplx)
        with mp.workprec(prec + _GUARD_BITS):
            emb = []
            for w in self.integral_basis:
                entries = []
                for r in ordered:
                    v = mpmath.mpf(0)
                    for c in reversed(w):
                        v = v * r + _to_mpf(c)
                    entries.append(v)
                emb.append(tuple(entries))
        data = (ordered, len(real), len(cplx), tuple(emb))
        self._embedding_cache[prec] = data
        return data

    def _compute_embeddings(self):
        roots, r1, r2, emb = self.embeddings_at(self.precision_bits)
        self.r1, self.r2 = r1, r2
        if (self.discriminant < 0) != (self.r2 % 2 == 1):
            raise ValueError("signature inconsistent with discriminant sign")
        self.roots = roots
        self.degs = tuple([1] * self.r1 + [2] * self.r2)
        self._basis_embeddings = emb

    def _torsion_order(self):
        if self.r1 > 0:
            return 2
        if self.n == 2:
            if self.discriminant == -3:
                return 6
            if self.discriminant == -4:
                return 4
            return 2
        # totally complex of higher degree: count elements with every
        # embedding on the unit circle by short-vector enumeration
        from . import lattice as _lat
        rows = [flatten(self, EmbeddingVector(self, e)) for e in self._basis_embeddings]
        L = _lat.RealLattice(rows)
        red = _lat.lll_reduce(L)
        with mp.workprec(self.precision_bits + _GUARD_BITS):
            bound = mpmath.sqrt(self.n) * (1 + self.tau)
            count = 0
            for coeffs in _lat.enumerate_short(red, bound):
                orig = red.to_original(coeffs)
                x = self.element(orig)
                u = embed(self, x)
                if all(abs(abs(e) - 1) < self.tau for e in u.entries):
                    count += 2  # both signs
        return count

    # ----- conveniences ----------------------------------------------------

    def element(self, coords):
        return FieldElement(self, coords)

    def basis_element(self, i):
        return FieldElement(self, [int(j == i) for j in range(self.n)])

    def one(self):
        return self.basis_element(0)

    def zero(self):
        return FieldElement(self, [0] * self.n)

    def from_rational(self, q):
        return FieldElement(self, [Fraction(q)] + [0] * (self.n - 1))

    def generator(self):
        """alpha (root of the defining polynomial) on the integral basis."""
        n = self.n
        alpha = [Fraction(0)] * n
        if n > 1:
            alpha[1] = Fraction(1)
        coords = [sum(alpha[k] * self.basis_inv[k][l] for k in range(n)) for l in range(n)]
        return FieldElement(self, coords)

    def __repr__(self):
        return f"NumberField(poly={list(self.poly)}, disc={self.discriminant})"


def _isqrt_exact(m):
    from math import isqrt
    r = isqrt(m)
    assert r * r == m
    return r


def embed(F, x, prec=None):
    """Numerical embedding vector of an exact element."""
    if prec is None:
        basis_emb = F._basis_embeddings
        prec = F.precision_bits
    else:
        basis_emb = F.embeddings_at(prec)[3]
    with mp.workprec(prec + _GUARD_BITS):
        entries = []
        for idx in range(F.r1 + F.r2):
            v = mpmath.mpf(0)
            for c, w in zip(x.coords, basis_emb):
                if c:
                    v = v + _to_mpf(c) * w[idx]
            entries.append(v)
        return EmbeddingVector(F, entries)


def inner(u, v):
    """Canonical inner product: sum over sigma of deg(sigma)*Re(u conj(v))."""
    if u.field is not v.field:
        raise ValueError("field mismatch")
    F = u.field
    with mp.workprec(F.precision_bits + _GUARD_BITS):
        s = mpmath.mpf(0)
        for d, a, b in zip(F.degs, u.entries, v.entries):
            s += d * mpmath.re(a * mpmath.conj(b))
        return s


def algebra_norm_trace(u):
    """(N(u), Tr(u)): determinant and trace of multiplication by u on F_R.

    At a complex prime the real determinant of multiplication by z is
    |z|^2, so the norm is real for any input (negative only through real
    primes) and agrees with the rational norm on embedded field elements.
    """
    F = u.field
    with mp.workprec(F.precision_bits + _GUARD_BITS):
        nrm = mpmath.mpf(1)
        tr = mpmath.mpf(0)
        for d, a in zip(F.degs, u.entries):
            if d == 1:
                nrm *= mpmath.re(a)
                tr += mpmath.re(a)
            else:
                nrm *= abs(a) ** 2
                tr += 2 * mpmath.re(a)
        return nrm, tr


def log_abs(u):
    """Per-sigma vector (log|u_sigma|)."""
    F = u.field
    with mp.workprec(F.precision_bits + _GUARD_BITS):
        out = []
        for a in u.entries:
            if a == 0:
                raise ValueError("zero entry has no logarithm")
            out.append(mpmath.log(abs(a)))
        return tuple(out)


def flatten(F, u):
    """Real coordinates of an embedding vector in the canonical metric.

    Real primes contribute their value; complex primes contribute
    sqrt(2)*Re and sqrt(2)*Im, so the Euclidean norm matches inner().
    """
    with mp.workprec(F.precision_bits + _GUARD_BITS):
        s2 = mpmath.sqrt(2)
        out = []
        for d, a in zip(F.degs, u.entries):
            if d == 1:
                out.append(mpmath.mpf(mpmath.re(a)))
            else:
                out.append(s2 * mpmath.re(a))
                out.append(s2 * mpmath.im(a))
        return out

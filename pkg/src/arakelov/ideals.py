"""Fractional ideals in Hermite normal form, exact arithmetic, membership,
and splitting of rational primes."""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from ._linalg import hermite_normal_form, right_kernel, rank_of_echelon
from .field import FieldElement


class FractionalIdeal:
    """Rows of hnf, divided by denom, are a Z-basis on the integral basis.
    hnf is in row echelon form with positive pivots and reduced entries
    above each pivot; gcd(all entries, denom) = 1."""

    __slots__ = ("field", "hnf", "denom", "_norm")

    def __init__(self, field, hnf, denom=1):
        self.field = field
        rows = [list(r) for r in hnf]
        d = int(denom)
        if d < 0:
            d = -d
            rows = [[-x for x in r] for r in rows]
        if d == 0:
            raise ValueError("denominator must be nonzero")
        g = d
        for r in rows:
            for x in r:
                g = gcd(g, abs(x))
        if g > 1:
            d //= g
            rows = [[x // g for x in r] for r in rows]
        self.hnf = tuple(tuple(r) for r in rows)
        self.denom = d
        self._norm = None
        if len(rows) != field.n or any(rows[i][i] <= 0 for i in range(field.n)):
            raise ValueError("not a full-rank HNF basis")

    @property
    def norm(self):
        if self._norm is None:
            det = 1
            for i in range(self.field.n):
                det *= self.hnf[i][i]
            self._norm = Fraction(det, self.denom ** self.field.n)
        return self._norm

    def __eq__(self, other):
        return (isinstance(other, FractionalIdeal)
                and self.field is other.field
                and self.hnf == other.hnf and self.denom == other.denom)

    def __hash__(self):
        return hash((self.hnf, self.denom))

    def __repr__(self):
        return f"FractionalIdeal(hnf={[list(r) for r in self.hnf]}, denom={self.denom})"

    def key(self):
        return (self.hnf, self.denom)

    def basis_elements(self):
        F = self.field
        return [F.element([Fraction(x, self.denom) for x in row]) for row in self.hnf]

    def is_integral(self):
        return self.denom == 1

    def to_json(self):
        return {"hnf": [list(r) for r in self.hnf], "denom": self.denom}


class PrimeIdeal:
    __slots__ = ("p", "ideal", "residue_degree", "ramification")

    def __init__(self, p, ideal, residue_degree, ramification):
        self.p = p
        self.ideal = ideal
        self.residue_degree = residue_degree
        self.ramification = ramification

    @property
    def norm(self):
        return self.p ** self.residue_degree

    def __repr__(self):
        return f"PrimeIdeal(p={self.p}, f={self.residue_degree}, e={self.ramification})"


def _hnf_from_rows(F, frac_rows):
    """Ideal from fraction rows known to Z-span a full-rank O_F-module."""
    denom = 1
    for row in frac_rows:
        for x in row:
            denom = denom * x.denominator // gcd(denom, x.denominator)
    int_rows = [[int(x * denom) for x in row] for row in frac_rows]
    h = hermite_normal_form(int_rows)
    h = [r for r in h if any(r)]
    if len(h) != F.n:
        raise ValueError("generators do not span a full-rank module")
    return FractionalIdeal(F, h, denom)


def hnf_from_generators(F, gens):
    """The O_F-module generated by the given elements."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("all generators are zero")
    rows = []
    for g in gens:
        for j in range(F.n):
            rows.append(list((g * F.basis_element(j)).coords))
    return _hnf_from_rows(F, rows)


def unit_ideal(F):
    return FractionalIdeal(F, [[int(i == j) for j in range(F.n)] for i in range(F.n)], 1)


def principal_ideal(F, f):
    if f.is_zero():
        raise ValueError("zero element")
    rows = [list((f * F.basis_element(j)).coords) for j in range(F.n)]
    return _hnf_from_rows(F, rows)


def ideal_mul(I, J):
    if I.field is not J.field:
        raise ValueError("field mismatch")
    F = I.field
    n = F.n
    lam = F.mult_table
    rows = []
    for r in I.hnf:
        for s in J.hnf:
            out = [0] * n
            for i, ri in enumerate(r):
                if ri:
                    for j, sj in enumerate(s):
                        if sj:
                            prod = ri * sj
                            row = lam[i][j]
                            for k in range(n):
                                if row[k]:
                                    out[k] += prod * row[k]
            rows.append(out)
    h = [r for r in hermite_normal_form(rows) if any(r)]
    if len(h) != n:
        raise ValueError("generators do not span a full-rank module")
    return FractionalIdeal(F, h, I.denom * J.denom)


def ideal_inv(I):
    """(O_F : I), via the integer kernel of the multiplication conditions."""
    F = I.field
    n = F.n
    # reduce to an integral ideal: I = I0/denom, I^{-1} = denom * I0^{-1}
    I0 = FractionalIdeal(F, I.hnf, 1)
    nrm = int(I0.norm)
    stacked = []
    for b in I0.basis_elements():
        m = b.mult_matrix()  # row j = coords of b*omega_j
        # condition: for z with coords z_k, coords(z*b) = z @ M are 0 mod nrm
        for col in range(n):
            stacked.append([int(m[j][col]) for j in range(n)])
    # rows of `stacked` dot z must vanish mod nrm: kernel of [A | -nrm*Id]
    rows = []
    for i, r in enumerate(stacked):
        rows.append(r + [-nrm * int(i == k) for k in range(len(stacked))])
    kern = right_kernel(rows)
    zvecs = [k[:n] for k in kern]
    h = hermite_normal_form(zvecs)
    h = [r for r in h if any(r)]
    assert len(h) == n
    inv0 = FractionalIdeal(F, h, nrm)
    if I.denom != 1:
        return scale_ideal(inv0, Fraction(I.denom))
    return inv0


def scale_ideal(I, q):
    """The ideal q*I for a nonzero rational q."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("zero scale")
    rows = [[Fraction(x, I.denom) * q for x in row] for row in I.hnf]
    return _hnf_from_rows(I.field, rows)


def ideal_div(I, J):
    return ideal_mul(I, ideal_inv(J))


def contains(I, x):
    """Exact membership via back-substitution on the echelon basis."""
    F = I.field
    n = F.n
    rem = [Fraction(c) * I.denom for c in x.coords]
    # rows are upper triangular: the coefficient of row i is pinned by
    # column i once rows 0..i-1 are accounted for (forward substitution)
    for i in range(n):
        piv = I.hnf[i][i]
        q = rem[i] / piv
        if q.denominator != 1:
            return False
        if q:
            for k in range(n):
                rem[k] -= q * I.hnf[i][k]
    return all(r == 0 for r in rem)


# ----- prime splitting -----------------------------------------------------


def _poly_gcd_mod(a, b, p):
    a = [x % p for x in a]
    b = [x % p for x in b]
    while any(b):
        a, b = b, _poly_mod(a, b, p)
    while a and a[-1] % p == 0:
        a.pop()
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def _poly_mod(a, b, p):
    a = [x % p for x in a]
    b = [x % p for x in b]
    while b and b[-1] == 0:
        b.pop()
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b) and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(b):
            break
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, x in enumerate(b):
            a[shift + i] = (a[shift + i] - c * x) % p
    while a and a[-1] == 0:
        a.pop()
    return a


def _synthetic_div(work, r, p):
    """Quotient of an ascending-coefficient polynomial by (x - r) over F_p.
    Assumes the remainder vanishes."""
    quot = [0] * (len(work) - 1)
    acc = 0
    for k in range(len(work) - 1, 0, -1):
        acc = (acc * r + work[k]) % p
        quot[k - 1] = acc
    return quot


def _factor_mod_small(poly, p):
    """Factor a monic polynomial of degree <= 3 over F_p by root search:
    returns a sorted list of (monic ascending coeff list, multiplicity)."""
    work = [x % p for x in poly]
    factors = {}
    for r in range(p):
        while len(work) > 1:
            v = 0
            for c in reversed(work):
                v = (v * r + c) % p
            if v != 0:
                break
            work = _synthetic_div(work, r, p)
            fac = ((-r) % p, 1)
            factors[fac] = factors.get(fac, 0) + 1
        if len(work) <= 1:
            break
    if len(work) > 1:
        # no roots remain: a rootless degree-2 or degree-3 polynomial over a
        # prime field is irreducible
        inv = pow(work[-1], -1, p)
        factors[tuple(x * inv % p for x in work)] = 1
    return sorted(([list(f), e] for f, e in factors.items()),
                  key=lambda fe: (len(fe[0]), fe[0]))


def splitting_pattern(F, p):
    """[(f_i, e_i)] residue degrees and ramifications of the primes over p,
    without constructing ideals.  Errors on index divisors."""
    theta_poly, index = _splitting_poly(F)
    if index % p == 0:
        raise ValueError(f"prime {p} divides the order index")
    return [(len(g) - 1, e) for g, e in _factor_mod_small(theta_poly, p)]


def _splitting_poly(F):
    """(minimal polynomial of theta, index of Z[theta]) where theta generates
    a p-maximal order for every p not dividing the index.  Quadratic fields
    use omega_2 (index 1); otherwise alpha."""
    if F.n == 2:
        w2 = F.basis_element(1)
        t = w2.trace()
        nm = w2.norm()
        assert t.denominator == 1 and nm.denominator == 1
        return [int(nm), -int(t), 1], 1
    if F.n > 3:
        raise ValueError("prime splitting implemented for degree <= 3")
    return list(F.poly), F.index


def split_prime(F, p):
    """Prime ideals over p, each as (p, g(theta)) in HNF."""
    if p < 2:
        raise ValueError("p must be a prime")
    theta_poly, index = _splitting_poly(F)
    if index % p == 0:
        raise ValueError(f"prime {p} divides the order index (unsupported)")
    if F.n == 2:
        theta = F.basis_element(1)
    else:
        theta = F.generator()
    out = []
    for g, e in _factor_mod_small(theta_poly, p):
        # g(theta) as a field element
        acc = F.zero()
        powt = F.one()
        for c in g:
            acc = acc + c * powt
            powt = powt * theta
        ideal = hnf_from_generators(F, [F.from_rational(p), acc])
        f = len(g) - 1
        assert ideal.norm == p ** f
        out.append(PrimeIdeal(p, ideal, f, e))
    assert sum(pi.residue_degree * pi.ramification for pi in out) == F.n
    out.sort(key=lambda pi: (pi.norm, pi.ideal.key()))
    return out


def small_primes(limit):
    """Rational primes <= limit (simple sieve)."""
    limit = int(limit)
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(limit ** 0.5) + 1):
        if sieve[i]:
            for j in range(i * i, limit + 1, i):
                sieve[j] = 0
    return [i for i in range(2, limit + 1) if sieve[i]]


def kronecker_symbol(a, m):
    """Kronecker symbol (a/m)."""
    if m == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if m < 0:
        m = -m
        if a < 0:
            sign = -1
    # factor out twos from m
    t = 0
    while m % 2 == 0:
        m //= 2
        t += 1
    if t:
        if a % 2 == 0:
            return 0
        if t % 2 and a % 8 in (3, 5):
            sign = -sign
    a %= m
    # Jacobi symbol loop
    result = sign
    while a:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                result = -result
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            result = -result
        a %= m
    return result if m == 1 else 0

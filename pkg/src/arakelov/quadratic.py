"""Binary quadratic forms for quadratic fields: the dictionary between
reduced forms and reduced divisors, Gauss reduction, the infrastructure
successor on the real cycle, and two independent oracles — exhaustive form
enumeration (class numbers) and continued fractions (regulators)."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

import mpmath
from mpmath import mp

from . import divisors as _divisors
from . import ideals as _ideals
from .field import embed, algebra_norm_trace


class QuadraticForm:
    """aX^2 + bXY + cY^2 with b^2 - 4ac the field discriminant."""

    __slots__ = ("a", "b", "c", "ambiguous")

    def __init__(self, a, b, c, ambiguous=False):
        self.a = int(a)
        self.b = int(b)
        self.c = int(c)
        self.ambiguous = bool(ambiguous)

    @property
    def disc(self):
        return self.b * self.b - 4 * self.a * self.c

    def __eq__(self, other):
        return (isinstance(other, QuadraticForm)
                and (self.a, self.b, self.c) == (other.a, other.b, other.c))

    def __hash__(self):
        return hash((self.a, self.b, self.c))

    def __repr__(self):
        return f"QuadraticForm({self.a}, {self.b}, {self.c})"

    def key(self):
        return (self.a, self.b, self.c)


def _require_quadratic(F):
    if F.n != 2:
        raise ValueError("quadratic field required")


def _delta(F):
    return int(F.discriminant)


def sqrt_disc_element(F):
    """sqrt(disc) as an exact field element: 2*omega_2 - (disc mod 2)."""
    _require_quadratic(F)
    d = _delta(F)
    return F.element([Fraction(-(d % 2)), Fraction(2)])


def form_element(F, q):
    """f = (b + sqrt(disc))/(2a) as an exact field element."""
    _require_quadratic(F)
    d = _delta(F)
    delta = d % 2
    return F.element([Fraction(q.b - delta, 2 * q.a), Fraction(1, q.a)])


def is_reduced_form(q):
    d = q.disc
    if d < 0:
        if q.a <= 0:
            return False
        if not (abs(q.b) <= q.a <= q.c):
            return False
        if (abs(q.b) == q.a or q.a == q.c) and q.b < 0:
            return False
        return True
    # real: a > 0 and |sqrt(d) - 2a| < b < sqrt(d), checked exactly
    if q.a <= 0 or q.b <= 0:
        return False
    if q.b * q.b >= d:
        return False
    t = q.b + 2 * q.a  # b > sqrt(d) - 2a
    if t * t <= d:
        return False
    if q.b < 2 * q.a and (2 * q.a - q.b) ** 2 >= d:  # b > 2a - sqrt(d)
        return False
    return True


def gauss_reduce(q):
    """An equivalent reduced form (with a > 0 in the real case)."""
    d = q.disc
    if d >= 0 and isqrt(d) ** 2 == d:
        raise ValueError("degenerate (square) discriminant")
    a, b, c = q.a, q.b, q.c
    if d < 0:
        if a < 0:
            raise ValueError("negative definite form")
        for _ in range(10000):
            # normalize b into (-a, a]
            if not -a < b <= a:
                r = b % (2 * a)
                if r > a:
                    r -= 2 * a
                c += (r * r - b * b) // (4 * a)
                b = r
            if a > c:
                a, b, c = c, -b, a
                continue
            if (a == c or a == abs(b)) and b < 0:
                b = -b
            return QuadraticForm(a, b, c)
        raise ValueError("reduction did not terminate")
    s = isqrt(d)
    for _ in range(10000):
        f = QuadraticForm(a, b, c)
        if is_reduced_form(f):
            return f
        # rho step: (a,b,c) -> (c, b', (b'^2-d)/(4c)), b' = -b mod 2|c|
        # placed in the window (sqrt(d)-2|c|, sqrt(d))
        m = 2 * abs(c)
        bp = s - ((s + b) % m)
        a, b, c = c, bp, (bp * bp - d) // (4 * c)
    raise ValueError("reduction did not terminate")


def successor_form(q):
    """The next reduced a>0 form on the real infrastructure cycle:
    a' = -c, b' = -b reduced into the principal window."""
    d = q.disc
    if d <= 0:
        raise ValueError("real quadratic form required")
    if not is_reduced_form(q):
        raise ValueError("form is not reduced")
    s = isqrt(d)
    a2 = -q.c
    m = 2 * a2
    b2 = s - ((s + q.b) % m)
    c2 = (b2 * b2 - d) // (4 * a2)
    return QuadraticForm(a2, b2, c2)


def form_of_divisor(D):
    """The reduced form attached to a reduced divisor d(I) via the minimal
    generator with smallest positive omega_2 coordinate.  The ambiguous
    flag marks the imaginary-case |f|=1 identification (a=c or |b|=a)."""
    F = D.field
    _require_quadratic(F)
    I = D.ideal
    d = _delta(F)
    delta = d % 2
    nrm = I.norm
    if nrm.numerator != 1:
        raise ValueError("divisor is not reduced (norm > 1)")
    a = nrm.denominator
    # element of I with the minimal positive omega_2 coordinate
    h00, h01 = I.hnf[0]
    h11 = I.hnf[1][1]
    g = gcd(h01, h11)
    # m*h01 + k*h11 = g
    m = pow(h01 // g, -1, h11 // g) if h11 != g else 0
    t = Fraction(g, I.denom)
    s = Fraction(m * h00, I.denom)
    assert t == Fraction(1, a), "unexpected ideal shape"
    # g/t = 2s/t + delta + sqrt(d) over 2a  ->  b' = 2as + delta (mod 2a)
    bp = 2 * a * s + delta
    assert bp.denominator == 1
    bp = int(bp)
    ambiguous = False
    if d < 0:
        b = bp % (2 * a)
        if b > a:
            b -= 2 * a
        c = (b * b - d) // (4 * a)
        if (a == c or a == abs(b)) and b < 0:
            b = -b
            ambiguous = True
        elif a == c or a == abs(b):
            ambiguous = True
    else:
        sq = isqrt(d)
        b = sq - ((sq - bp) % (2 * a))
        c = (b * b - d) // (4 * a)
    q = QuadraticForm(a, b, c, ambiguous=ambiguous)
    assert q.disc == d
    return q


def divisor_of_form(F, q):
    """The reduced divisor d(Z + fZ), f = (b + sqrt(disc))/(2a)."""
    _require_quadratic(F)
    if q.disc != _delta(F):
        raise ValueError("discriminant mismatch")
    if not is_reduced_form(q):
        raise ValueError("form is not reduced")
    f = form_element(F, q)
    rows = [[Fraction(1), Fraction(0)], list(f.coords)]
    I = _ideals._hnf_from_rows(F, rows)
    return _divisors.ReducedDivisor(_divisors.divisor_of_ideal(F, I),
                                    certificate={"form": q.key()})


def lenstra_step(q, prec=96):
    """The classical closed-form step length
    (1/(2*sqrt(2))) * log|(b+sqrt(d))/(b-sqrt(d))| of a real reduced form."""
    d = q.disc
    if d <= 0:
        raise ValueError("real quadratic form required")
    with mp.workprec(prec):
        sd = mpmath.sqrt(d)
        return mpmath.log(abs((q.b + sd) / (q.b - sd))) / (2 * mpmath.sqrt(2))


def successor(D):
    """(next reduced divisor on the cycle, step distance).  The step is the
    weighted norm of the carry vector; the classical closed form is half of
    it and available via lenstra_step."""
    F = D.field
    _require_quadratic(F)
    if _delta(F) < 0:
        raise ValueError("real quadratic field required")
    q = form_of_divisor(D)
    f = form_element(F, q)
    finv = f.inverse()
    rows = [list((b * finv).coords) for b in D.ideal.basis_elements()]
    J = _ideals._hnf_from_rows(F, rows)
    succ = _divisors.ReducedDivisor(_divisors.divisor_of_ideal(F, J),
                                    certificate={"form": successor_form(q).key()})
    with mp.workprec(F.precision_bits + 32):
        fe = embed(F, f)
        nf = abs(algebra_norm_trace(fe)[0])
        logs = [mpmath.log(abs(e)) - mpmath.log(nf) / 2 for e in fe.entries]
        step = _divisors.wnorm(F, logs)
    return succ, step


def _fundamental_check(d):
    if d in (0, 1):
        raise ValueError("not a fundamental discriminant")
    if d % 4 not in (0, 1):
        raise ValueError("not a fundamental discriminant")
    if d > 0 and isqrt(d) ** 2 == d:
        raise ValueError("not a fundamental discriminant")
    m = d // 4 if d % 4 == 0 else d
    if d % 4 == 0 and (m % 4) in (1, 0):
        raise ValueError("not a fundamental discriminant")
    if not _squarefree(abs(m)):
        raise ValueError("not a fundamental discriminant")


def _squarefree(m):
    i = 2
    while i * i <= m:
        if m % (i * i) == 0:
            return False
        i += 1
    return True


def enumerate_reduced_forms(d):
    """All reduced forms of fundamental discriminant d, by the inequality
    sweep (imaginary: the forms; real: the a>0 forms on all cycles)."""
    _fundamental_check(d)
    out = []
    if d < 0:
        amax = isqrt(-d // 3)
        for a in range(1, amax + 1):
            for b in range(-a, a + 1):
                if (b - d) % 2:
                    continue
                if (b * b - d) % (4 * a):
                    continue
                c = (b * b - d) // (4 * a)
                q = QuadraticForm(a, b, c)
                if is_reduced_form(q):
                    out.append(q)
    else:
        s = isqrt(d)
        for a in range(1, s + 1):
            for b in range(1, s + 1):
                if (b - d) % 2:
                    continue
                if (b * b - d) % (4 * a):
                    continue
                q = QuadraticForm(a, b, (b * b - d) // (4 * a))
                if is_reduced_form(q):
                    out.append(q)
    return sorted(out, key=lambda q: q.key())


def form_cycles(forms):
    """Partition real reduced forms into successor cycles; the number of
    cycles is the class number."""
    remaining = {q.key(): q for q in forms}
    cycles = []
    while remaining:
        k = min(remaining)
        start = remaining.pop(k)
        cyc = [start]
        cur = successor_form(start)
        guard = 0
        while cur.key() != start.key():
            remaining.pop(cur.key())
            cyc.append(cur)
            cur = successor_form(cur)
            guard += 1
            if guard > 10 ** 7:
                raise ValueError("cycle did not close")
        cycles.append(cyc)
    return cycles


def class_number_oracle(d):
    """Class number by pure form counting (no divisor machinery)."""
    forms = enumerate_reduced_forms(d)
    if d < 0:
        return len(forms)
    return len(form_cycles(forms))


def cf_regulator(d, prec=96):
    """Regulator of the real quadratic order of fundamental discriminant d
    via the continued fraction of (b0 + sqrt(d))/2, b0 = d mod 2: the first
    convergent giving an element of norm +-1 yields the fundamental unit."""
    if d <= 0:
        raise ValueError("positive discriminant required")
    _fundamental_check(d)
    b0 = d % 2
    s = isqrt(d)
    # alpha = (P + sqrt(d))/Q, exact integer recurrence
    P, Q = b0, 2
    p_prev, p_cur = 0, 1  # convergent numerators (p_{-2}, p_{-1})
    q_prev, q_cur = 1, 0
    for _ in range(10 ** 7):
        a = (P + s) // Q
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
        # e = p - q * (b0 - sqrt(d))/2 has norm p^2 - b0 p q + q^2 (b0^2-d)/4
        nrm = (p_cur * p_cur - b0 * p_cur * q_cur
               + q_cur * q_cur * (b0 * b0 - d) // 4)
        if abs(nrm) == 1:
            with mp.workprec(prec):
                sd = mpmath.sqrt(d)
                e1 = p_cur - q_cur * (b0 - sd) / 2
                e2 = p_cur - q_cur * (b0 + sd) / 2
                return mpmath.log(max(abs(e1), abs(e2)))
        P = a * Q - P
        Q = (d - P * P) // Q
    raise ValueError("continued fraction did not close")

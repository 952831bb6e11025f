"""Arakelov divisors and the infrastructure suite: reduction, composition,
inversion, distances on the torus, jumping, scanning, the h0 size function,
and the Hermite constant of a divisor.

A divisor is a pair (I, u): fractional ideal plus one positive real per
infinite prime (oriented variants carry signs/phases, kept only where the
separation tests need them).  Every operation that moves between classes
returns its carry vector so callers can do exact class bookkeeping.
"""

from __future__ import annotations

import random
from fractions import Fraction

import mpmath
from mpmath import mp

from . import field as _field
from . import ideals as _ideals
from . import lattice as _lattice
from .field import embed, flatten

_GUARD = 32


def _wp(F):
    return mp.workprec(F.precision_bits + _GUARD)


def delta_bound(F):
    """The norm/step bound (2/pi)^r2 * sqrt(|disc|)."""
    with _wp(F):
        return (mpmath.mpf(2) / mpmath.pi) ** F.r2 * mpmath.sqrt(abs(F.discriminant))


def wnorm(F, vec):
    """Norm of a per-sigma real vector in the weighted (canonical) metric."""
    with _wp(F):
        return mpmath.sqrt(sum(d * x * x for d, x in zip(F.degs, vec)))


def deg0_basis(F):
    """Orthonormal (weighted metric) basis of the degree-zero hyperplane,
    as per-sigma vectors.  Deterministic."""
    key = "deg0_basis"
    if key in F._caches:
        return F._caches[key]
    with _wp(F):
        m = F.r1 + F.r2
        sdeg = [mpmath.sqrt(mpmath.mpf(d)) for d in F.degs]
        nu = [s / mpmath.sqrt(F.n) for s in sdeg]  # unit normal in z-coords
        basis_z = []
        for i in range(m):
            v = [mpmath.mpf(int(j == i)) for j in range(m)]
            dot = sum(a * b for a, b in zip(v, nu))
            v = [a - dot * b for a, b in zip(v, nu)]
            for w in basis_z:
                dot = sum(a * b for a, b in zip(v, w))
                v = [a - dot * b for a, b in zip(v, w)]
            ln = mpmath.sqrt(sum(a * a for a in v))
            if ln > mpmath.mpf("1e-9"):
                basis_z.append([a / ln for a in v])
            if len(basis_z) == m - 1:
                break
        out = [[z / s for z, s in zip(v, sdeg)] for v in basis_z]
    F._caches[key] = out
    return out


class ArakelovDivisor:
    """(I, u) with u one positive real per infinite prime; oriented variants
    carry signed (real sigma) or complex (complex sigma) entries."""

    __slots__ = ("field", "ideal", "u", "oriented")

    def __init__(self, field, ideal, u, oriented=False):
        self.field = field
        self.ideal = ideal
        self.u = tuple(u)
        self.oriented = oriented
        if len(self.u) != field.r1 + field.r2:
            raise ValueError("wrong u length")
        if not oriented:
            for x in self.u:
                if not x > 0:
                    raise ValueError("u entries must be positive")

    def forget_orientation(self):
        if not self.oriented:
            return self
        with _wp(self.field):
            return ArakelovDivisor(self.field, self.ideal,
                                   [abs(x) for x in self.u])

    def degree(self):
        F = self.field
        with _wp(F):
            s = mpmath.mpf(0)
            for d, x in zip(F.degs, self.u):
                s += d * mpmath.log(abs(x))
            nrm = self.ideal.norm
            return -(s + mpmath.log(mpmath.mpf(nrm.numerator) / nrm.denominator))

    def covolume(self):
        F = self.field
        with _wp(F):
            return mpmath.sqrt(abs(F.discriminant)) * mpmath.exp(-self.degree())

    def lattice(self):
        """The ideal embedded with the metric u, as a RealLattice."""
        F = self.field
        with _wp(F):
            uabs = [abs(x) for x in self.u]
            rows = []
            for b in self.ideal.basis_elements():
                be = embed(F, b)
                scaled = _field.EmbeddingVector(
                    F, [x * e for x, e in zip(uabs, be.entries)])
                rows.append(flatten(F, scaled))
            return _lattice.RealLattice(rows, prec=F.precision_bits + _GUARD)

    def to_json(self):
        return {
            "ideal": self.ideal.to_json(),
            "u": [mpmath.nstr(x, 20) for x in self.u],
            "oriented": self.oriented,
        }

    def __repr__(self):
        return f"ArakelovDivisor({self.ideal!r}, u={[mpmath.nstr(x, 8) for x in self.u]})"


class ReducedDivisor:
    """d(I) = (I, N(I)^(-1/n)) with 1 a minimal element of I."""

    __slots__ = ("divisor", "certificate", "_inv")

    def __init__(self, divisor, certificate=None):
        self.divisor = divisor
        self.certificate = certificate or {}
        self._inv = None

    @property
    def field(self):
        return self.divisor.field

    @property
    def ideal(self):
        return self.divisor.ideal

    @property
    def u(self):
        return self.divisor.u

    def key(self):
        return self.ideal.key()

    def inverse_ideal(self):
        if self._inv is None:
            self._inv = _ideals.ideal_inv(self.ideal)
        return self._inv

    def verify(self):
        """Recheck the definition: shape d(I), 1 in I and minimal."""
        D = self.divisor
        return is_reduced(D)

    def __repr__(self):
        return f"ReducedDivisor({self.ideal!r})"


def divisor_of_ideal(F, I):
    """The degree-zero section d(I) = (I, N(I)^(-1/n))."""
    with _wp(F):
        nrm = I.norm
        s = (mpmath.mpf(nrm.numerator) / nrm.denominator) ** (mpmath.mpf(-1) / F.n)
        return ArakelovDivisor(F, I, [s] * (F.r1 + F.r2))


def principal_divisor(F, f, oriented=False):
    """(f) = (f^-1 O_F, |f|), or (f^-1 O_F, f) in the oriented group."""
    if f.is_zero():
        raise ValueError("zero element")
    with _wp(F):
        finv = f.inverse()
        ideal = _ideals.principal_ideal(F, finv)
        fe = embed(F, f)
        if oriented:
            return ArakelovDivisor(F, ideal, fe.entries, oriented=True)
        return ArakelovDivisor(F, ideal, [abs(x) for x in fe.entries])


def trivial_divisor(F):
    return ReducedDivisor(divisor_of_ideal(F, _ideals.unit_ideal(F)),
                          certificate={"trivial": True})


def reduce_divisor(D):
    """Reduce a degree-zero divisor: (reduced divisor, witness f, carry v)
    with D - D' = (f) + (O_F, v) and log v_sigma <= (1/n) log(partial bound)."""
    F = D.field
    with _wp(F):
        if abs(D.degree()) > 100 * F.tau:
            raise ValueError("divisor degree is not zero")
        D = D.forget_orientation()
        L = D.lattice()
        if L.dim != 2:
            L = _lattice.lll_reduce(L)
        coeffs, slen = _lattice.shortest_vector(L)
        orig = L.to_original(coeffs)
        f = _lattice._ideal_element(D.ideal, orig)
        finv = f.inverse()
        rows = [list((b * finv).coords) for b in D.ideal.basis_elements()]
        newideal = _ideals._hnf_from_rows(F, rows)
        newdiv = divisor_of_ideal(F, newideal)
        fe = embed(F, f)
        nrm = newideal.norm
        nfac = (mpmath.mpf(nrm.numerator) / nrm.denominator) ** (mpmath.mpf(1) / F.n)
        v = tuple(x * abs(e) * nfac for x, e in zip(D.u, fe.entries))
        red = ReducedDivisor(newdiv, certificate={
            "shortest_coeffs": coeffs, "shortest_len": slen})
        return red, f, v


def is_reduced(D):
    """u constant equal to N(I)^(-1/n), 1 in I, and 1 minimal."""
    F = D.field
    if D.oriented:
        return False
    with _wp(F):
        nrm = D.ideal.norm
        s = (mpmath.mpf(nrm.numerator) / nrm.denominator) ** (mpmath.mpf(-1) / F.n)
        if any(abs(x - s) > 10 * F.tau * s for x in D.u):
            return False
    if not _ideals.contains(D.ideal, F.one()):
        return False
    return _lattice.minimal_test(F, D.ideal, F.one())


def compose(D1, D2):
    """Reduced divisor near the sum of two reduced divisors, with witness
    and carry: class(D1)+class(D2) = class(result) + (O_F, carry)."""
    F = D1.field
    K = _ideals.ideal_mul(D1.ideal, D2.ideal)
    return reduce_divisor(divisor_of_ideal(F, K))


def invert(D):
    """Reduced divisor near -class(D), with witness and carry."""
    F = D.field
    Iinv = (D.inverse_ideal() if isinstance(D, ReducedDivisor)
            else _ideals.ideal_inv(D.ideal))
    return reduce_divisor(divisor_of_ideal(F, Iinv))


# ----- torus distances -----------------------------------------------------


def _log_vec(F, v):
    with _wp(F):
        return [mpmath.log(abs(x)) for x in v]


def _flatten_weighted(F, vec):
    with _wp(F):
        return [mpmath.sqrt(mpmath.mpf(d)) * x for d, x in zip(F.degs, vec)]


def _cvp_min(F, target, basis_vecs):
    """min over lattice combos of ||target - sum k_i b_i|| in the weighted
    metric; returns (best_norm, best_coeffs).  Tiny-rank CVP by LLL + a
    small offset search around the least-squares point."""
    with _wp(F):
        if not basis_vecs:
            return wnorm(F, target), ()
        t = _flatten_weighted(F, target)
        rows = [_flatten_weighted(F, b) for b in basis_vecs]
        L = _lattice.lll_reduce(
            _lattice.RealLattice(rows, prec=F.precision_bits + _GUARD))
        red = L.basis
        r = len(red)
        # least squares coefficients on the reduced basis
        g = [[_lattice._dot(a, b) for b in red] for a in red]
        rhs = [_lattice._dot(t, b) for b in red]
        coef = _solve_sym(g, rhs)
        best = None
        best_k = None
        span = range(-2, 3)
        import itertools
        for off in itertools.product(span, repeat=r):
            k = [int(mpmath.nint(c)) + o for c, o in zip(coef, off)]
            resid = list(t)
            for ki, row in zip(k, red):
                if ki:
                    for idx in range(len(resid)):
                        resid[idx] -= ki * row[idx]
            nrm = mpmath.sqrt(sum(x * x for x in resid))
            if best is None or nrm < best:
                best, best_k = nrm, k
        orig_k = L.to_original(best_k)
        return best, orig_k


def _solve_sym(g, rhs):
    n = len(g)
    a = [row[:] + [rhs[i]] for i, row in enumerate(g)]
    for col in range(n):
        piv = max(range(col, n), key=lambda i: abs(a[i][col]))
        a[col], a[piv] = a[piv], a[col]
        for i in range(n):
            if i != col and a[i][col]:
                fct = a[i][col] / a[col][col]
                a[i] = [x - fct * y for x, y in zip(a[i], a[col])]
    return [a[i][n] / a[i][i] for i in range(n)]


def torus_norm(F, v, unit_logs):
    """Distance of the torus element (O_F, v) from the origin: minimum over
    the unit lattice of the weighted norm of log|eps| + log v."""
    with _wp(F):
        lv = _log_vec(F, v)
        if abs(sum(d * x for d, x in zip(F.degs, lv))) > 1000 * F.tau * max(
                1, max(abs(x) for x in lv)):
            raise ValueError("v does not have unit norm")
        basis = [list(b) for b in (unit_logs or [])]
        basis = [b for b in basis if wnorm(F, b) > 100 * F.tau]
        best, _ = _cvp_min(F, lv, basis)
        return best


def torsion_units(F):
    """All roots of unity of O_F, as exact elements (cached)."""
    key = "torsion_units"
    if key in F._caches:
        return F._caches[key]
    with _wp(F):
        OF = _ideals.unit_ideal(F)
        L = _lattice.lll_reduce(
            _lattice.RealLattice(
                [flatten(F, embed(F, b)) for b in OF.basis_elements()],
                prec=F.precision_bits + _GUARD))
        out = []
        for c in _lattice.enumerate_short(L, mpmath.sqrt(F.n) * (1 + F.tau)):
            x = _lattice._ideal_element(OF, L.to_original(c))
            xe = embed(F, x)
            if all(abs(abs(e) - 1) < 10 * F.tau for e in xe.entries):
                out.append(x)
                out.append(-x)
        assert len(out) == F.torsion_order
    F._caches[key] = out
    return out


def oriented_torus_norm(F, v, tp_unit_logs):
    """Oriented distance of (O_F, v): minimum over totally positive units of
    the weighted norm of the principal-branch log of eps*v.

    `tp_unit_logs` lists complex log vectors (one entry per infinite prime;
    real part log|sigma(eps)|, imaginary part the phase at complex primes)
    of generators of the totally positive units modulo torsion.
    """
    with _wp(F):
        vals = [mpmath.mpc(x) for x in v]
        for d, x in zip(F.degs, vals):
            if d == 1:
                if not mpmath.re(x) > 0:
                    raise ValueError("negative real entry: different component")
        nl = sum(d * mpmath.log(abs(x)) for d, x in zip(F.degs, vals))
        if abs(nl) > 1000 * F.tau * max(1, max(abs(mpmath.log(abs(x))) for x in vals)):
            raise ValueError("|N(v)| is not 1")
        # torsion units in the totally positive group
        if F.r1 > 0:
            tors = [F.one()]
        else:
            tors = torsion_units(F)
        gens = [list(b) for b in (tp_unit_logs or [])]
        gens = [b for b in gens if wnorm(F, [mpmath.re(x) for x in b]) > 100 * F.tau]
        # center the search with a CVP on the real parts
        lv = [mpmath.log(abs(x)) for x in vals]
        _, center = _cvp_min(F, lv, [[mpmath.re(x) for x in b] for b in gens])
        best = None
        import itertools
        r = len(gens)
        for off in itertools.product(range(-2, 3), repeat=r):
            k = [-c + o for c, o in zip(center, off)] if r else []
            for t in tors:
                te = embed(F, t).entries
                w = []
                for idx, x in enumerate(vals):
                    y = x * mpmath.mpc(te[idx])
                    ln = mpmath.log(abs(y))
                    for ki, b in zip(k, gens):
                        ln += ki * mpmath.re(b[idx])
                    ph = mpmath.arg(y)
                    for ki, b in zip(k, gens):
                        ph += ki * mpmath.im(b[idx])
                    # principal branch: reduce the phase to (-pi, pi]
                    ph = mpmath.fmod(ph, 2 * mpmath.pi)
                    if ph > mpmath.pi:
                        ph -= 2 * mpmath.pi
                    if ph <= -mpmath.pi:
                        ph += 2 * mpmath.pi
                    if F.degs[idx] == 1:
                        w.append(abs(mpmath.mpc(ln, ph)))
                    else:
                        w.append(abs(mpmath.mpc(ln, ph)))
                nrm = mpmath.sqrt(sum(d * x * x for d, x in zip(F.degs, w)))
                if best is None or nrm < best:
                    best = nrm
        return best


# ----- jumping and scanning ------------------------------------------------


class _Tracker:
    """Reduced divisor plus accumulated carry: the tracked class is
    class(red) + (O_F, carry)."""

    def __init__(self, F, red=None, carry=None):
        self.F = F
        self.red = red if red is not None else trivial_divisor(F)
        self.carry = (list(carry) if carry is not None
                      else [mpmath.mpf(1)] * (F.r1 + F.r2))

    def absorb(self, v):
        self.carry = [a * b for a, b in zip(self.carry, v)]

    def double(self):
        r, _, v = compose(self.red, self.red)
        self.carry = [a * a * b for a, b in zip(self.carry, v)]
        self.red = r

    def mul_ideal(self, J):
        """Fold in the class of d(J)."""
        K = _ideals.ideal_mul(self.red.ideal, J)
        r, _, v = reduce_divisor(divisor_of_ideal(self.F, K))
        self.absorb(v)
        self.red = r

    def double_mul(self, J=None):
        """Double the tracked class and fold in class(d(J)), with a single
        reduction for the combined step."""
        K = _ideals.ideal_mul(self.red.ideal, self.red.ideal)
        if J is not None:
            K = _ideals.ideal_mul(K, J)
        r, _, v = reduce_divisor(divisor_of_ideal(self.F, K))
        self.carry = [a * a * b for a, b in zip(self.carry, v)]
        self.red = r

    def add_reduced(self, other):
        r, _, v = compose(self.red, other)
        self.absorb(v)
        self.red = r


def _power_tracker(F, pairs):
    """Tracker for the class of d(prod J^e) with all e > 0, by a joint
    square-and-multiply over the binary digits of the exponents."""
    t = _Tracker(F)
    if not pairs:
        return t
    top = max(e for _, e in pairs)
    for bit in range(top.bit_length() - 1, -1, -1):
        batch = [J for J, e in pairs if (e >> bit) & 1]
        prod = None
        if batch:
            prod = batch[0]
            for J in batch[1:]:
                prod = _ideals.ideal_mul(prod, J)
        t.double_mul(prod)
    return t


def make_jump_basis(F, seed=0):
    """Web basis for jumps: r1+r2-1 reduced divisors at well-spread torus
    positions, built by reducing random degree-zero infinite parts of length
    log|disc| (seeded, regenerated until reasonably orthogonal)."""
    r = F.r1 + F.r2 - 1
    if r == 0:
        return []
    with _wp(F):
        ln_d = mpmath.log(abs(F.discriminant))
        attempt = 0
        while True:
            rng = random.Random(seed * 1000003 + attempt)
            basis = []
            for _ in range(r):
                w = [mpmath.mpf(rng.gauss(0, 1)) for _ in range(F.r1 + F.r2)]
                s = sum(d * x for d, x in zip(F.degs, w)) / F.n
                w = [x - s for x in w]
                ln = wnorm(F, w)
                w = [x * ln_d / ln for x in w]
                D = ArakelovDivisor(F, _ideals.unit_ideal(F),
                                    [mpmath.exp(-x) for x in w])
                red, _, v = reduce_divisor(D)
                pos = [-a - mpmath.log(b) for a, b in zip(w, v)]
                basis.append((red, pos))
            if _basis_ok(F, [p for _, p in basis], ln_d):
                return basis
            attempt += 1
            if attempt > 50:
                raise ValueError("web basis construction failed")


def _basis_ok(F, positions, ln_d):
    with _wp(F):
        for p in positions:
            if wnorm(F, p) < mpmath.mpf("0.2") * ln_d:
                return False
        if len(positions) == 1:
            return True
        rows = [_flatten_weighted(F, p) for p in positions]
        g = mpmath.matrix([[_lattice._dot(a, b) for b in rows] for a in rows])
        eigs = mpmath.eigsy(g, eigvals_only=True)
        return min(eigs) > 0 and max(eigs) / min(eigs) <= 1000


def jump(F, finite, x_sigma=None, basis=None):
    """Reduced divisor near the class of sum n_p * p + sum x_sigma * sigma.

    `finite` is a list of (PrimeIdeal or FractionalIdeal, exponent); the
    divisor's ideal part is the product of p^(-n_p).  Returns (reduced
    divisor, carry v): the target class equals class(result) + (O_F, v).
    """
    with _wp(F):
        m = F.r1 + F.r2
        x = [mpmath.mpf(v) for v in (x_sigma or [0] * m)]
        pairs = []
        for P, e in finite:
            J = P.ideal if isinstance(P, _ideals.PrimeIdeal) else P
            pairs.append((J, int(e)))
        # degree normalization: subtract a constant from x so the whole
        # target has degree zero
        logn = mpmath.mpf(0)
        for J, e in pairs:
            nrm = J.norm
            logn += e * mpmath.log(mpmath.mpf(nrm.numerator) / nrm.denominator)
        shift = (sum(d * v for d, v in zip(F.degs, x)) + logn) / F.n
        x = [v - shift for v in x]

        # finite part: divisor exponent n_p means ideal exponent -n_p
        pos_pairs = [(J, -e) for J, e in pairs if e < 0]
        neg_pairs = [(J, e) for J, e in pairs if e > 0]
        t = _power_tracker(F, pos_pairs)
        if neg_pairs:
            t2 = _power_tracker(F, neg_pairs)
            rinv, _, vinv = invert(t2.red)
            # -(class(red2) + torus(carry2)) = class(rinv) + torus(vinv/carry2)
            t.add_reduced(rinv)
            t.absorb(vinv)
            t.carry = [a / b for a, b in zip(t.carry, t2.carry)]
        # infinite part: the tracked class side is the degree-normalized
        # section of the ideal part, so the torus part picks up the
        # normalization factor N(ideal)^(1/n) = e^{-logn/n} as well
        t.absorb([mpmath.exp(-v - logn / F.n) for v in x])

        # cut a large torus displacement down over the web basis
        if basis:
            for _ in range(3):
                lc = [mpmath.log(c) for c in t.carry]
                if wnorm(F, lc) <= mpmath.log(delta_bound(F)) + 2:
                    break
                coef = _lstsq(F, lc, [p for _, p in basis])
                ks = [int(mpmath.nint(c)) for c in coef]
                if not any(ks):
                    break
                for (E, pos), k in zip(basis, ks):
                    if k == 0:
                        continue
                    sgn = 1 if k > 0 else -1
                    step = _power_tracker(F, [(E.ideal, abs(k))])
                    if sgn < 0:
                        rinv, _, vinv = invert(step.red)
                        t.add_reduced(rinv)
                        t.absorb(vinv)
                        t.carry = [a / b for a, b in zip(t.carry, step.carry)]
                    else:
                        t.add_reduced(step.red)
                        t.carry = [a * b for a, b in zip(t.carry, step.carry)]
                    # subtracting k * position of E from the carry
                    t.carry = [c * mpmath.exp(-k * p) for c, p in zip(t.carry, pos)]

        # fold the remaining displacement into the metric and reduce,
        # clipping per round so the lattice stays well-conditioned
        cap = max(mpmath.log(delta_bound(F)) + 10,
                  mpmath.mpf(F.precision_bits // 4))
        for _ in range(200):
            lc = [mpmath.log(c) for c in t.carry]
            nrm = wnorm(F, lc)
            if nrm <= 100 * F.tau:
                break
            frac = min(mpmath.mpf(1), cap / nrm)
            w1 = [mpmath.exp(frac * v) for v in lc]
            D = ArakelovDivisor(F, t.red.ideal,
                                [a * b for a, b in zip(t.red.u, w1)])
            red, _, v = reduce_divisor(D)
            rest = [mpmath.exp((1 - frac) * v2) for v2 in lc]
            t.red = red
            t.carry = [a * b for a, b in zip(v, rest)]
            if frac >= 1:
                break
        return t.red, tuple(t.carry)


def _lstsq(F, target, positions):
    rows = [_flatten_weighted(F, p) for p in positions]
    tt = _flatten_weighted(F, target)
    g = [[_lattice._dot(a, b) for b in rows] for a in rows]
    rhs = [_lattice._dot(tt, b) for b in rows]
    return _solve_sym(g, rhs)


def _scan_cells(F, ideal, u_center, cells, eps):
    """Reduced divisors reachable from web points u_center*exp(y), y over
    `cells`; returns {ideal key: (ReducedDivisor, position)} with positions
    relative to the class of (ideal, u_center)."""
    with _wp(F):
        n = F.n
        found = {}
        rejected = set()
        base_elems = ideal.basis_elements()
        nrm = ideal.norm
        lognI = mpmath.log(mpmath.mpf(nrm.numerator) / nrm.denominator)
        logu = [mpmath.log(x) for x in u_center]
        emb_rows = [embed(F, b) for b in base_elems]
        seen_mu = set()
        prev_u = None
        for y in cells:
            uP = [mpmath.exp(a + b) for a, b in zip(logu, y)]
            rows = []
            for be in emb_rows:
                scaled = _field.EmbeddingVector(
                    F, [x * e for x, e in zip(uP, be.entries)])
                rows.append(flatten(F, scaled))
            if prev_u is not None:
                # warm start: adjacent cells differ by a small scaling, so the
                # previous cell's reduction is already nearly reduced here
                rows = [[sum(prev_u[i][j] * rows[j][s]
                             for j in range(n) if prev_u[i][j])
                         for s in range(len(rows[0]))] for i in range(n)]
            L = _lattice.lll_reduce(_lattice.RealLattice(
                rows, transform=prev_u, prec=F.precision_bits + _GUARD))
            prev_u = L.transform
            _, slen = _lattice.shortest_vector(L)
            bound = mpmath.sqrt(n) * mpmath.exp(2 * eps) * slen
            for c in _lattice.enumerate_short(L, bound):
                oc = L.to_original(c)
                for v in oc:
                    if v:
                        if v < 0:
                            oc = tuple(-x for x in oc)
                        break
                # everything below depends only on the element, not the cell
                if oc in seen_mu:
                    continue
                seen_mu.add(oc)
                mu = _lattice._ideal_element(ideal, oc)
                muinv = mu.inverse()
                rowsJ = [list((b * muinv).coords) for b in base_elems]
                J = _ideals._hnf_from_rows(F, rowsJ)
                k = J.key()
                if k in rejected:
                    continue
                if k not in found:
                    if not _ideals.contains(J, F.one()):
                        rejected.add(k)
                        continue
                    if not _lattice.minimal_test(F, J, F.one()):
                        rejected.add(k)
                        continue
                mue = embed(F, mu)
                mun = _field.algebra_norm_trace(mue)[0]
                lognmu = mpmath.log(abs(mun)) / n
                pos = [-(lu + lognI / n + mpmath.log(abs(e)) - lognmu)
                       for lu, e in zip(logu, mue.entries)]
                # the same ideal can be reached through unit multiples of mu:
                # record every distinct sheet of the cover
                if k not in found:
                    found[k] = (ReducedDivisor(divisor_of_ideal(F, J)), [pos])
                else:
                    sheets = found[k][1]
                    if all(wnorm(F, [a - b for a, b in zip(pos, q)])
                           > mpmath.mpf("1e-6") for q in sheets):
                        sheets.append(pos)
        return found


def _grid_cells(F, radius, eps):
    """Axis-aligned grid on the degree-zero hyperplane with spacing
    eps/sqrt(r), covering the ball of the given radius; per-sigma vectors."""
    with _wp(F):
        r = F.r1 + F.r2 - 1
        if r == 0:
            return [[mpmath.mpf(0)] * (F.r1 + F.r2)]
        basis = deg0_basis(F)
        spacing = mpmath.mpf(eps) / mpmath.sqrt(r)
        kmax = int(mpmath.floor(radius / spacing)) + 1
        cells = []
        import itertools
        for ks in itertools.product(range(-kmax, kmax + 1), repeat=r):
            ln = spacing * mpmath.sqrt(sum(k * k for k in ks))
            if ln > radius + spacing / 2:
                continue
            vec = [mpmath.mpf(0)] * (F.r1 + F.r2)
            for k, b in zip(ks, basis):
                if k:
                    for i in range(len(vec)):
                        vec[i] += k * spacing * b[i]
            cells.append(vec)
        return cells


def scan(F, center, radius, eps=None, unit_logs=None, with_positions=False):
    """All reduced divisors within `radius` of the class of `center`.

    With `unit_logs` the final filter uses the true torus distance; without
    it, raw distances on the universal cover (a superset within the same
    radius bound is still returned correctly for a fundamental domain)."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    if eps is None:
        eps = min(0.5, radius / 2)
    if eps <= 0 or eps >= radius:
        raise ValueError("need 0 < eps < radius")
    D = center.divisor if isinstance(center, ReducedDivisor) else center
    F2 = D.field
    assert F2 is F
    with _wp(F):
        cells = _grid_cells(F, mpmath.mpf(radius) + eps, eps)
        found = _scan_cells(F, D.ideal, [abs(x) for x in D.u], cells, mpmath.mpf(eps))
        out = []
        lim = mpmath.mpf(radius) * (1 + 100 * F.tau) + 100 * F.tau
        for k in sorted(found):
            red, sheets = found[k]
            kept = []
            for pos in sheets:
                if unit_logs is not None:
                    dist = torus_norm(F, [mpmath.exp(p) for p in pos], unit_logs)
                else:
                    dist = wnorm(F, pos)
                if dist <= lim:
                    kept.append(pos)
            if not kept:
                continue
            if with_positions:
                # every sheet within the radius (callers dedupe as needed)
                out.extend((red, pos) for pos in kept)
            else:
                out.append((red, kept[0]))
        if with_positions:
            return out
        return [red for red, _ in out]


# ----- h0 and the Hermite constant ----------------------------------------


def h0(D, tol=1e-10):
    """log of the theta sum over the divisor's lattice.  Degree-zero
    divisors are first moved to a reduced representative (class invariance),
    then the sum is truncated at radius^2 = (log(1/tol)+5)/pi."""
    F = D.field
    with _wp(F):
        if abs(D.degree()) < 1000 * F.tau:
            red, _, v = reduce_divisor(D)
            work = ArakelovDivisor(F, red.ideal,
                                   [a * b for a, b in zip(red.u, v)])
        else:
            work = D.forget_orientation()
        L = _lattice.lll_reduce(work.lattice())
        radius = mpmath.sqrt((mpmath.log(1 / mpmath.mpf(tol)) + 5) / mpmath.pi)
        total = mpmath.mpf(1)
        for c in _lattice.enumerate_short(L, radius):
            vv = L.vector(c)
            total += 2 * mpmath.exp(-mpmath.pi * _lattice._dot(vv, vv))
        return mpmath.log(total)


def hermite_gamma(D):
    """Squared shortest length over covolume^(2/n)."""
    F = D.field
    with _wp(F):
        L = _lattice.lll_reduce(D.forget_orientation().lattice())
        _, slen = _lattice.shortest_vector(L)
        return slen ** 2 / D.covolume() ** (mpmath.mpf(2) / F.n)

"""Class group and regulator computation: the deterministic component sweep
and the randomized relation-collection engine, with the analytic volume
estimate used for certification."""

from __future__ import annotations

import math
import random
import threading as _threading
from fractions import Fraction

import mpmath
from mpmath import mp

from . import divisors as _divisors
from . import ideals as _ideals
from . import lattice as _lattice
from ._linalg import _egcd, hermite_normal_form, smith_normal_form

_GOLD = 0x9E3779B97F4A7C15


class NeedMoreRelations(Exception):
    """The collected relations do not yet determine the group."""


class FactorBase:
    """All prime ideals of norm <= bound, sorted canonically."""

    def __init__(self, primes, bound):
        self.primes = sorted(primes, key=lambda P: (P.norm, P.p, P.ideal.key()))
        self.bound = bound
        self._inverses = [None] * len(self.primes)

    def __len__(self):
        return len(self.primes)

    def inverse(self, i):
        if self._inverses[i] is None:
            self._inverses[i] = _ideals.ideal_inv(self.primes[i].ideal)
        return self._inverses[i]


class Relation:
    """A principal degree-zero divisor supported on the factor base:
    finite integer exponents plus the per-sigma infinite part."""

    __slots__ = ("finite", "infinite", "transcript")

    def __init__(self, finite, infinite, transcript=None):
        self.finite = tuple(int(x) for x in finite)
        self.infinite = tuple(infinite)
        self.transcript = transcript or {}

    def is_zero(self):
        return (not any(self.finite)
                and all(abs(x) < 1e-9 for x in self.infinite))

    def __repr__(self):
        return f"Relation(finite={self.finite})"


class ClassGroupResult:
    def __init__(self, h, elementary_divisors, regulator, unit_logs,
                 volume_estimate, volume_computed, certified,
                 relations_used=0, seed=0, census=None):
        self.h = h
        self.elementary_divisors = list(elementary_divisors)
        self.regulator = regulator
        self.unit_logs = unit_logs
        self.volume_estimate = volume_estimate
        self.volume_computed = volume_computed
        self.certified = bool(certified)
        self.relations_used = relations_used
        self.seed = seed
        self.census = census

    def to_json(self):
        return {
            "h": int(self.h),
            "elementary_divisors": [int(d) for d in self.elementary_divisors],
            "regulator": mpmath.nstr(mpmath.mpf(self.regulator), 20),
            "certified": self.certified,
            "volume_estimate": mpmath.nstr(mpmath.mpf(self.volume_estimate), 20),
            "relations_used": int(self.relations_used),
            "seed": int(self.seed),
        }


# ----- analytic volume estimate --------------------------------------------


def _splitting_types(F, p):
    """[(residue degree, ramification)] for the primes over p, using the
    cheapest route available (Kronecker symbol for quadratic fields)."""
    if F.n == 2:
        k = _ideals.kronecker_symbol(int(F.discriminant), p)
        if k == 1:
            return [(1, 1), (1, 1)]
        if k == -1:
            return [(2, 1)]
        return [(1, 2)]
    return _ideals.splitting_pattern(F, p)


def estimate_residue(F, X=None, cutoff_factor=50.0):
    """Truncated Euler product estimate of the zeta residue at s=1:
    prod_{p<=X} (1-1/p) * prod_{P|p} (1-1/N(P))^(-1)."""
    if X is None:
        lg = math.log(abs(int(F.discriminant)))
        X = max(2, int(cutoff_factor * lg * lg))
    if X < 2:
        raise ValueError("cutoff must be at least 2")
    acc = 1.0
    for p in _ideals.small_primes(X):
        acc *= 1.0 - 1.0 / p
        for f, e in _splitting_types(F, p):
            acc /= 1.0 - float(p) ** (-f)
    return mpmath.mpf(acc)


def target_volume(F, residue):
    """vol(Pic0) from the residue: w sqrt(n) / (2^r1 (2 pi sqrt2)^r2)
    * sqrt|disc| * residue."""
    if not residue > 0:
        raise ValueError("residue must be positive")
    with mp.workprec(F.precision_bits + 32):
        w = F.torsion_order
        num = w * mpmath.sqrt(F.n) * mpmath.sqrt(abs(F.discriminant))
        den = (mpmath.mpf(2) ** F.r1
               * (2 * mpmath.pi * mpmath.sqrt(2)) ** F.r2)
        return num / den * mpmath.mpf(residue)


def build_factor_base(F, Y):
    if Y < 2:
        raise ValueError("factor base bound must be at least 2")
    primes = []
    for p in _ideals.small_primes(int(Y)):
        for P in _ideals.split_prime(F, p):
            if P.norm <= Y:
                primes.append(P)
    if not primes:
        raise ValueError("factor base empty")
    return FactorBase(primes, Y)


# ----- relation collection -------------------------------------------------


def _factor_over_base(F, J, base):
    """Exponent vector of the integral ideal J over the base, or None if a
    cofactor remains after exact division."""
    exps = [0] * len(base)
    cur = J
    for i in range(len(base)):
        while True:
            K = _ideals.ideal_mul(cur, base.inverse(i))
            if not K.is_integral():
                break
            cur = K
            exps[i] += 1
    if cur.key() != _ideals.unit_ideal(F).key():
        return None
    return exps


def find_relation(F, base, seed, basis=None):
    """One random relation (or None on a smoothness miss): random bounded
    exponents on a few base primes plus random infinite coordinates, jumped
    to a reduced divisor whose inverse ideal is factored over the base."""
    rng = random.Random(seed)
    A = max(2, abs(int(F.discriminant)))
    m = F.r1 + F.r2
    if len(base):
        kmax = min(max(1, math.ceil(math.log(A))), len(base))
        k = rng.randint(1, kmax)
        idx = sorted(rng.sample(range(len(base)), k))
        # small exponents keep the relation matrix entries small, so integer
        # combinations with zero finite part (the unit relations) exist with
        # small coefficients; mixing across classes comes from the random
        # jump target, not from the exponent size
        Ae = max(2, min(A, 32))
        exps = {i: rng.randint(-Ae, Ae) for i in idx}
    else:
        exps = {}
    x = [mpmath.mpf(rng.uniform(-A, A)) for _ in range(m)]
    with mp.workprec(F.precision_bits + 32):
        finite_target = [(base.primes[i].ideal, e) for i, e in exps.items()]
        red, v = _divisors.jump(F, finite_target, x, basis)
        mvec = _factor_over_base(F, red.inverse_ideal(), base)
        if mvec is None:
            return None
        finite = [exps.get(i, 0) - mvec[i] for i in range(len(base))]
        # degree normalization used inside jump, replayed for bookkeeping
        logn = mpmath.mpf(0)
        for i, e in exps.items():
            nrm = base.primes[i].norm
            logn += e * mpmath.log(nrm)
        shift = (sum(d * t for d, t in zip(F.degs, x)) + logn) / F.n
        nrm = red.ideal.norm
        y = mpmath.log(mpmath.mpf(nrm.numerator) / nrm.denominator) / F.n
        infinite = [xi - shift - y + mpmath.log(vi) for xi, vi in zip(x, v)]
        rel = Relation(finite, infinite, transcript={"seed": seed})
        if rel.is_zero():
            return None
        return rel


# ----- unit lattice from generators ----------------------------------------


def _hyperplane_coords(F, vec):
    """Coordinates of a per-sigma degree-zero vector on the orthonormal
    hyperplane basis."""
    basis = _divisors.deg0_basis(F)
    return [sum(d * a * b for d, a, b in zip(F.degs, vec, bv)) for bv in basis]


def _reduce_against(v, basis):
    """Babai-style reduction of v modulo the lattice spanned by basis."""
    if not basis:
        return v
    for _ in range(8):
        g = [[_lattice._dot(a, b) for b in basis] for a in basis]
        rhs = [_lattice._dot(v, b) for b in basis]
        coef = _divisors._solve_sym(g, rhs)
        ks = [int(mpmath.nint(c)) for c in coef]
        if not any(ks):
            break
        for kcoef, row in zip(ks, basis):
            if kcoef:
                v = [a - kcoef * b for a, b in zip(v, row)]
    return v


def _orth_residual(v, basis):
    """Norm of the component of v orthogonal to span(basis)."""
    w = list(v)
    for b in basis:
        nb = _lattice._dot(b, b)
        if nb > 0:
            c = _lattice._dot(w, b) / nb
            w = [x - c * y for x, y in zip(w, b)]
    return mpmath.sqrt(_lattice._dot(w, w))


def _discrete_basis(vecs, tol):
    """Basis of the lattice generated by (noisy) real vectors; vectors
    shorter than tol are treated as zero.  Euclid-style passes handle
    generators lying in the current span but outside the current lattice."""
    pool = [list(v) for v in vecs
            if mpmath.sqrt(_lattice._dot(v, v)) > tol]
    basis = []
    for _ in range(60):
        work = sorted(basis + pool, key=lambda v: _lattice._dot(v, v))
        basis, pool = [], []
        for v in work:
            w = _reduce_against(v, basis)
            if mpmath.sqrt(_lattice._dot(w, w)) <= tol:
                continue
            if _orth_residual(w, basis) > tol:
                basis.append(w)
            else:
                pool.append(w)
        if not pool:
            break
    if pool:
        raise ValueError("unit lattice closure did not converge")
    if len(basis) > 1:
        L = _lattice.lll_reduce(_lattice.RealLattice(basis))
        basis = [list(r) for r in L.basis]
    return basis


def _refine_basis(vecs, basis):
    """Least-squares refit of a discovered lattice basis against every
    generating vector, through the integer coordinates the current basis
    assigns them.  The Euclid-style discovery passes accumulate error
    proportional to the largest quotient; the refit error is instead the
    per-vector rounding error divided by the coordinate size."""
    r = len(basis)
    g = [[_lattice._dot(a, b) for b in basis] for a in basis]
    K, used = [], []
    for v in vecs:
        rhs = [_lattice._dot(v, b) for b in basis]
        ks = [int(mpmath.nint(c)) for c in _divisors._solve_sym(g, rhs)]
        if any(ks):
            K.append(ks)
            used.append(v)
    if len(K) < r:
        return basis
    with mp.extraprec(80):
        ktk = [[mpmath.mpf(sum(row[i] * row[j] for row in K))
                for j in range(r)] for i in range(r)]
        amb = len(basis[0])
        out = [[None] * amb for _ in range(r)]
        for s in range(amb):
            rhs = [mpmath.fsum(K[a][i] * used[a][s] for a in range(len(K)))
                   for i in range(r)]
            col = _divisors._solve_sym(ktk, rhs)
            for i in range(r):
                out[i][s] = col[i]
    return out


def _regulator_from_units(F, unit_vecs):
    """(regulator, basis) from per-sigma unit log vectors: covolume of the
    generated lattice in the weighted hyperplane, normalized by
    sqrt(n) * 2^(-r2/2)."""
    r = F.r1 + F.r2 - 1
    with mp.workprec(F.precision_bits + 32):
        if r == 0:
            return mpmath.mpf(1), []
        coords = [_hyperplane_coords(F, v) for v in unit_vecs]
        basis = _discrete_basis(coords, mpmath.mpf("1e-6"))
        if len(basis) < r:
            raise NeedMoreRelations("unit lattice rank deficient")
        if len(basis) > r:
            raise ValueError("unit lattice rank exceeds the unit rank")
        basis = _refine_basis(coords, basis)
        g = mpmath.matrix([[_lattice._dot(a, b) for b in basis]
                           for a in basis])
        covol = mpmath.sqrt(mpmath.det(g))
        reg = covol / (mpmath.sqrt(F.n) * mpmath.mpf(2) ** (-mpmath.mpf(F.r2) / 2))
        if reg < mpmath.mpf("0.2"):
            raise ValueError("regulator suspiciously small (precision)")
        return reg, basis


# ----- assembling results --------------------------------------------------


def _presize_reduce(rows, carries):
    """Pairwise integer size reduction of the rows (carries following), so
    that the subsequent echelon insertion only ever combines short vectors
    and the accumulated carry coefficients stay small."""
    work = [[list(r), list(c)] for r, c in zip(rows, carries)]
    for _ in range(200):
        changed = False
        order = sorted(range(len(work)),
                       key=lambda i: sum(x * x for x in work[i][0]))
        for i in order:
            ri, ci = work[i]
            ni = sum(x * x for x in ri)
            if ni == 0:
                continue
            for j in order:
                if j == i:
                    continue
                rj, cj = work[j]
                nj = sum(x * x for x in rj)
                if nj == 0 or nj > ni:
                    continue
                q = round(sum(a * b for a, b in zip(ri, rj)) / nj)
                if not q:
                    continue
                cand = [a - q * b for a, b in zip(ri, rj)]
                if sum(x * x for x in cand) < ni:
                    work[i][0] = ri = cand
                    work[i][1] = ci = [a - q * b for a, b in zip(ci, cj)]
                    ni = sum(x * x for x in ri)
                    changed = True
        if not changed:
            break
    return [w[0] for w in work], [w[1] for w in work]


def _hnf_with_carry(rows, carries):
    """Row-style HNF of integer rows, applying the same unimodular row
    operations to parallel real 'carry' rows.

    Rows are inserted one at a time into a maintained echelon basis, with
    gcd pivot updates; this keeps intermediate integer entries small where
    an explicit transform matrix (or batch Euclidean elimination) can swell
    badly.  Returns (H, carry) with the pivot rows first and the fully
    reduced rows (carrying unit information) as trailing zero rows."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    rows, carries = _presize_reduce(rows, carries)
    piv = {}  # column -> [pivot row, carry row], kept canonically reduced

    def reduce_right(r, c, j):
        # reduce entries of (r, c) past column j against pivots to the right
        for j2 in sorted(k for k in piv if k > j):
            P2, C2 = piv[j2]
            q = r[j2] // P2[j2]
            if q:
                r = [a - q * b for a, b in zip(r, P2)]
                c = [a - q * b for a, b in zip(c, C2)]
        return r, c

    def set_pivot(j, r, c):
        r, c = reduce_right(r, c, j)
        piv[j] = [r, c]
        # keep earlier pivot rows reduced at this column
        for j0 in [k for k in piv if k < j]:
            P0, C0 = piv[j0]
            q = P0[j] // r[j]
            if q:
                piv[j0] = [[a - q * b for a, b in zip(P0, r)],
                           [a - q * b for a, b in zip(C0, c)]]

    zero_carries = []
    for r0, c0 in zip(rows, carries):
        r = list(r0)
        c = list(c0)
        for j in range(n):
            if not r[j]:
                continue
            if j in piv:
                P, C = piv[j]
                p = P[j]
                if r[j] % p == 0:
                    q = r[j] // p
                    r = [x - q * y for x, y in zip(r, P)]
                    c = [x - q * y for x, y in zip(c, C)]
                else:
                    g, x, y = _egcd(p, r[j])
                    u, v = p // g, r[j] // g
                    newP = [x * a + y * b for a, b in zip(P, r)]
                    newC = [x * a + y * b for a, b in zip(C, c)]
                    r, c = ([u * b - v * a for a, b in zip(P, r)],
                            [u * b - v * a for a, b in zip(C, c)])
                    set_pivot(j, newP, newC)
            else:
                if r[j] < 0:
                    r = [-x for x in r]
                    c = [-x for x in c]
                set_pivot(j, r, c)
                r = None
                break
        if r is not None:
            zero_carries.append(c)
    cols = sorted(piv)
    H = [piv[j][0] for j in cols]
    carry_out = [piv[j][1] for j in cols]
    for c in zero_carries:
        H.append([0] * n)
        carry_out.append(c)
    return H, carry_out


def _int_lll(rows, delta=0.75):
    """LLL on independent integer row vectors: double-precision
    Gram-Schmidt steering exact integer row operations.  Float roundoff can
    only make the output less reduced, never wrong, so no extended
    precision is needed."""
    b = [list(r) for r in rows]
    n = len(b)
    if n < 2:
        return b
    mu = [[0.0] * n for _ in range(n)]
    bstar = [None] * n
    norms = [0.0] * n

    def gso_row(i):
        v = [float(x) for x in b[i]]
        for j in range(i):
            mu[i][j] = float(sum(x * y for x, y in zip(b[i], bstar[j]))) / norms[j]
            v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
        bstar[i] = v
        norms[i] = sum(x * x for x in v)

    for i in range(n):
        gso_row(i)
    k = 1
    budget = 10000 * n
    while k < n and budget > 0:
        budget -= 1
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                for jj in range(j):
                    mu[k][jj] -= q * mu[j][jj]
                mu[k][j] -= q
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            b[k - 1], b[k] = b[k], b[k - 1]
            gso_row(k - 1)
            gso_row(k)
            for i in range(k + 1, n):
                for j in (k - 1, k):
                    mu[i][j] = (float(sum(x * y for x, y in zip(b[i], bstar[j])))
                                / norms[j])
            k = max(k - 1, 1)
    return b


def _reduce_kernel(kern):
    """Reduce a set of independent integer vectors to a short basis of the
    lattice they span, exactly."""
    kern = [list(v) for v in kern if any(v)]
    if len(kern) < 2:
        return kern
    kern, _ = _presize_reduce(kern, [[] for _ in kern])
    return _int_lll(kern)


def assemble(F, base, relations, target_vol, seed=0):
    """Class group and regulator from a batch of relations; raises
    NeedMoreRelations on rank deficiency."""
    B = len(base)
    rows = [list(r.finite) for r in relations]
    m = len(rows)
    if m < B:
        raise NeedMoreRelations("fewer relations than base primes")
    ident = [[int(i == j) for j in range(m)] for i in range(m)]
    H, coef = _hnf_with_carry(rows, ident)
    rank = sum(1 for row in H if any(row))
    if rank < B:
        raise NeedMoreRelations("finite block not of full rank")
    h = 1
    for i in range(B):
        h *= H[i][i]
    ed = [d for d in smith_normal_form([H[i] for i in range(B)]) if d != 1]
    with mp.workprec(F.precision_bits + 32):
        if F.r1 + F.r2 - 1 > 0:
            # exact integer combinations of relations with zero finite part;
            # LLL keeps the coefficients small so the rounding noise of the
            # infinite parts is not amplified past the lattice tolerance
            kernel = _reduce_kernel([coef[i] for i in range(rank, m)])
            inf = [list(r.infinite) for r in relations]
            unit_vecs = [[-mpmath.fsum(k[i] * inf[i][s]
                                       for i in range(m) if k[i])
                          for s in range(len(inf[0]))]
                         for k in kernel]
        else:
            unit_vecs = []
        reg, unit_basis = _regulator_from_units(F, unit_vecs)
        vol = (mpmath.sqrt(F.n) * mpmath.mpf(2) ** (-mpmath.mpf(F.r2) / 2)
               * h * reg)
        certified = vol / mpmath.mpf(target_vol) < 2
    return ClassGroupResult(h, ed, reg, unit_basis, target_vol, vol,
                            certified, relations_used=len(relations),
                            seed=seed)


def buchmann(F, seed=0, Y=None, cutoff_factor=50.0, relation_cap=None,
             threads=1):
    """The randomized engine: estimate the volume, build the factor base,
    collect relations until the assembled result certifies (or the cap is
    reached; then the last uncertified result is returned)."""
    residue = estimate_residue(F, cutoff_factor=cutoff_factor)
    tvol = target_volume(F, residue)
    with mp.workprec(F.precision_bits + 32):
        if Y is None:
            Y = max(2, int(mpmath.ceil(_divisors.delta_bound(F))))
    try:
        base = build_factor_base(F, Y)
    except ValueError:
        # no primes of norm <= Y >= the reduction bound: every ideal class
        # contains an integral ideal of norm <= Y, which must then be O_F,
        # so the class group is trivial
        base = FactorBase([], Y)
    basis = _divisors.make_jump_basis(F, seed)
    r = F.r1 + F.r2 - 1
    if len(base) == 0 and r == 0:
        return assemble(F, base, [], tvol, seed=seed)
    # extra relations beyond full rank widen the kernel of the exponent
    # matrix, which is what makes short unit combinations available
    extra = (len(base) + 1) // 2 if r > 0 else 0
    need = len(base) + r + 4 + extra
    cap = relation_cap if relation_cap is not None else 150 * need
    rels = []
    attempt = 0
    last = None

    def seeds(start, count):
        return [(seed * _GOLD + a) % (1 << 64) for a in range(start, start + count)]

    while attempt < cap:
        while len(rels) < need and attempt < cap:
            batch = min(max(8, need - len(rels)), cap - attempt)
            chunk = _collect(F, base, seeds(attempt, batch), basis, threads)
            attempt += batch
            rels.extend(chunk)
        if len(rels) < need:
            break
        try:
            last = assemble(F, base, rels, tvol, seed=seed)
        except NeedMoreRelations:
            need += max(4, need // 2)
            continue
        last.relations_used = len(rels)
        # a proper sublattice of index k >= 2 puts the ratio near k; with
        # the percent-level accuracy of the truncated Euler product, demand
        # a clear margin below 2 before accepting the certificate
        ratio = last.volume_computed / mpmath.mpf(last.volume_estimate)
        if last.certified and ratio < mpmath.mpf(4) / 3:
            return last
        need += max(4, need // 2)
    if last is None:
        last = ClassGroupResult(0, [], mpmath.mpf(0), [], tvol, mpmath.mpf(0),
                                False, relations_used=len(rels), seed=seed)
    last.certified = False
    return last


def _collect(F, base, seed_list, basis, threads):
    """Relations for the given seeds, in seed order (thread-count
    independent)."""
    if threads <= 1:
        results = [find_relation(F, base, s, basis) for s in seed_list]
    else:
        from concurrent.futures import ThreadPoolExecutor

        # mpmath's working-precision context is process-global, so the
        # numerical work itself must not interleave; the lock keeps workers
        # correct (the interpreter lock already makes this CPU-bound code
        # effectively serial), and seed-ordered results keep the output
        # independent of the thread count
        lock = _threading.Lock()

        def task(s):
            with lock:
                return find_relation(F, base, s, basis)

        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(task, seed_list))
    return [r for r in results if r is not None]


# ----- deterministic sweep -------------------------------------------------


def _sweep_component(F, rep, radius, eps, unit_candidates):
    """Census of all reduced divisors on rep's component, with positions on
    the universal cover; position collisions for the same ideal feed the
    unit-vector pool."""
    m = F.r1 + F.r2
    r = m - 1
    zero = [mpmath.mpf(0)] * m
    census = {rep.key(): (rep, zero)}
    pending = [(rep, zero)]
    while pending:
        R, pos = pending.pop()
        found = _divisors.scan(F, R, radius, eps=eps, with_positions=True)
        for red, delta in found:
            npos = [a + b for a, b in zip(pos, delta)]
            k = red.key()
            if k in census:
                diff = [a - b for a, b in zip(census[k][1], npos)]
                if _divisors.wnorm(F, diff) > mpmath.mpf("1e-6"):
                    unit_candidates.append(diff)
            else:
                census[k] = (red, npos)
                pending.append((red, npos))
        if r == 0:
            break  # a single ball covers the whole (pointlike) component
    return census


def deterministic_pic(F, eps=0.5, vol_cap=10 ** 5, cutoff_factor=50.0):
    """Exhaustive engine: sweep the principal component, close the group
    over the classes of all small primes, read h off the component count
    and the regulator off the collected unit vectors.  Returns a
    ClassGroupResult whose census maps component index -> reduced divisors."""
    residue = estimate_residue(F, cutoff_factor=cutoff_factor)
    tvol = target_volume(F, residue)
    if tvol > vol_cap:
        raise ValueError("estimated volume exceeds the cap")
    with mp.workprec(F.precision_bits + 32):
        part = _divisors.delta_bound(F)
        r = F.r1 + F.r2 - 1
        # r = 0: the component is a point, so any positive scan radius sees
        # all of it and a small one keeps the enumeration ball tight
        radius = (2 * mpmath.log(part) + mpmath.mpf("0.7") if r
                  else mpmath.mpf("0.2"))
        eps = min(mpmath.mpf(eps), radius / 2)
        unit_candidates = []
        comps = []       # census dicts
        comp_vec = []    # exponent vector over generators
        key2comp = {}

        def register(rep, vec):
            census = _sweep_component(F, rep, radius, eps, unit_candidates)
            ci = len(comps)
            comps.append(census)
            comp_vec.append(vec)
            for k in census:
                key2comp[k] = ci
            return ci

        # generators: classes of all prime ideals of norm below the bound
        gens = []
        for p in _ideals.small_primes(int(mpmath.floor(part))):
            for P in _ideals.split_prime(F, p):
                if mpmath.mpf(P.norm) < part:
                    gens.append(P)
        gen_inv = [_ideals.ideal_inv(P.ideal) for P in gens]
        k = len(gens)

        start = _divisors.trivial_divisor(F)
        register(start, [0] * k)
        relations = []
        for gi in range(k):
            # walk powers of this generator's class until one lands in the
            # subgroup generated so far; the walk length is its order d
            # modulo that subgroup, giving the relation d*e_i - (landing)
            prev_count = len(comps)
            walk = []
            cur = start
            d = 0
            while True:
                d += 1
                prod = _ideals.ideal_mul(cur.ideal, gen_inv[gi])
                red, _, _ = _divisors.reduce_divisor(
                    _divisors.divisor_of_ideal(F, prod))
                kk = red.key()
                if kk in key2comp:
                    rel = [-x for x in comp_vec[key2comp[kk]]]
                    rel[gi] += d
                    relations.append(rel)
                    break
                walk.append(red)
                cur = red
            # every intermediate power shifts each known coset to a new one
            old = [(next(iter(comps[ci].values()))[0], comp_vec[ci])
                   for ci in range(prev_count)]
            for j, pw in enumerate(walk, start=1):
                for ci, (rep, vec) in enumerate(old):
                    nvec = list(vec)
                    nvec[gi] += j
                    if ci == 0:
                        register(pw, nvec)
                    else:
                        prod = _ideals.ideal_mul(rep.ideal, pw.ideal)
                        red2, _, _ = _divisors.reduce_divisor(
                            _divisors.divisor_of_ideal(F, prod))
                        register(red2, nvec)

        h = len(comps)
        if k:
            ed = [d for d in smith_normal_form(relations) if d != 1]
        else:
            ed = []
        prod_ed = 1
        for d in ed:
            prod_ed *= d
        assert prod_ed == h, "component count disagrees with the relations"
        reg, unit_basis = _regulator_from_units(F, unit_candidates)
        vol = (mpmath.sqrt(F.n) * mpmath.mpf(2) ** (-mpmath.mpf(F.r2) / 2)
               * h * reg)
        certified = vol / tvol < 2
        census_out = [[entry[0] for entry in c.values()] for c in comps]
    return ClassGroupResult(h, ed, reg, unit_basis, tvol, vol, certified,
                            relations_used=len(relations), seed=0,
                            census=census_out)


def list_smooth_component(F, component_reps, eps=0.5):
    """All integral ideals J of norm below the bound whose section lies on
    the (fully swept) component: for each census divisor and nearby web
    point, enumerate short ideal elements x and keep J = x * I^(-1)."""
    if not component_reps:
        return []
    with mp.workprec(F.precision_bits + 32):
        from .field import EmbeddingVector, embed, flatten
        part = _divisors.delta_bound(F)
        n = F.n
        bnd = mpmath.sqrt(n) * mpmath.exp(2 * mpmath.mpf(eps)) * part ** (mpmath.mpf(1) / n)
        cells = _divisors._grid_cells(F, mpmath.log(part), mpmath.mpf(eps))
        out = {}
        for D in component_reps:
            I = D.ideal
            Iinv = (D.inverse_ideal() if hasattr(D, "inverse_ideal")
                    else _ideals.ideal_inv(I))
            base_elems = I.basis_elements()
            emb_rows = [embed(F, b) for b in base_elems]
            logu = [mpmath.log(abs(x)) for x in D.u]
            for y in cells:
                uP = [mpmath.exp(a + b) for a, b in zip(logu, y)]
                rows = []
                for be in emb_rows:
                    scaled = EmbeddingVector(
                        F, [u * e for u, e in zip(uP, be.entries)])
                    rows.append(flatten(F, scaled))
                L = _lattice.lll_reduce(
                    _lattice.RealLattice(rows, prec=F.precision_bits + 32))
                for c in _lattice.enumerate_short(L, bnd):
                    x = _lattice._ideal_element(I, L.to_original(c))
                    nj = abs(x.norm()) * Iinv.norm
                    if not mpmath.mpf(nj.numerator) / nj.denominator < part:
                        continue
                    rowsJ = [list((x * b).coords)
                             for b in Iinv.basis_elements()]
                    J = _ideals._hnf_from_rows(F, rowsJ)
                    assert J.is_integral()
                    out[J.key()] = J
        return sorted(out.values(), key=lambda J: (J.norm, J.key()))

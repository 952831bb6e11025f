import random

import mpmath
import pytest

from arakelov import divisors as dv
from arakelov import ideals as idl
from arakelov.field import embed

from conftest import field, quadratic_field


def test_trivial_divisor_is_reduced():
    for poly in ([1, 0, 1], [5, 0, 1], [-2, 0, 1], [-1, -1, 0, 1]):
        F = field(*poly)
        T = dv.trivial_divisor(F)
        assert dv.is_reduced(T.divisor)
        assert abs(T.divisor.degree()) < 1e-20
        assert T.verify()


def test_degree_and_covolume():
    F = field(1, 0, 1)
    D = dv.ArakelovDivisor(F, idl.unit_ideal(F), [mpmath.mpf(2)])
    # deg = -2*log(2) for the complex place
    assert abs(D.degree() + 2 * mpmath.log(2)) < 1e-20
    assert abs(D.covolume() - 2 * mpmath.exp(2 * mpmath.log(2))) < 1e-18


def test_principal_divisor_degree_zero():
    rng = random.Random(2)
    for poly in ([1, 0, 1], [6, -1, 1], [-2, 0, 1], [-1, -1, 0, 1]):
        F = field(*poly)
        for _ in range(15):
            x = F.element([rng.randint(-9, 9) for _ in range(F.n)])
            if x.is_zero():
                continue
            P = dv.principal_divisor(F, x)
            assert abs(P.degree()) < 1e-18
            Po = dv.principal_divisor(F, x, oriented=True)
            assert Po.oriented
            assert abs(Po.degree()) < 1e-18


def test_reduce_principal_gives_certified_output():
    rng = random.Random(9)
    for poly in ([1, 0, 1], [5, 0, 1], [-2, 0, 1], [-1, -1, 0, 1]):
        F = field(*poly)
        ln_part = mpmath.log(dv.delta_bound(F))
        for _ in range(10):
            x = F.element([rng.randint(-9, 9) for _ in range(F.n)])
            if x.is_zero():
                continue
            red, f, v = dv.reduce_divisor(dv.principal_divisor(F, x))
            assert red.verify()
            # carry stays within the reduction bound
            assert dv.wnorm(F, [mpmath.log(c) for c in v]) <= ln_part + 1e-9


def test_reduce_rejects_nonzero_degree():
    F = field(1, 0, 1)
    D = dv.ArakelovDivisor(F, idl.unit_ideal(F), [mpmath.mpf(2)])
    with pytest.raises(ValueError):
        dv.reduce_divisor(D)


def test_reduced_section_of_inverse_prime():
    F = field(5, 0, 1)
    p2 = idl.split_prime(F, 2)[0]
    p2inv = idl.ideal_inv(p2.ideal)
    D = dv.divisor_of_ideal(F, p2inv)
    assert abs(D.u[0] - mpmath.sqrt(2)) < 1e-25
    assert dv.is_reduced(D)
    R, _, _ = dv.reduce_divisor(D)
    assert R.key() == p2inv.key()


def test_compose_and_invert_two_torsion():
    F = field(5, 0, 1)  # Q(sqrt(-5)), class group Z/2
    p2inv = idl.ideal_inv(idl.split_prime(F, 2)[0].ideal)
    Rp = dv.ReducedDivisor(dv.divisor_of_ideal(F, p2inv))
    Rc, _, _ = dv.compose(Rp, Rp)
    assert Rc.key() == idl.unit_ideal(F).key()
    Ri, _, _ = dv.invert(Rp)
    assert Ri.key() == p2inv.key()


def test_invert_class_pairing():
    # Q(sqrt(-23)): the classes of the two primes over 2 are mutually inverse
    F = field(6, -1, 1)
    pr = idl.split_prime(F, 2)
    r0, _, _ = dv.reduce_divisor(
        dv.divisor_of_ideal(F, idl.ideal_inv(pr[0].ideal)))
    r1, _, _ = dv.reduce_divisor(
        dv.divisor_of_ideal(F, idl.ideal_inv(pr[1].ideal)))
    inv0, _, _ = dv.invert(r0)
    assert inv0.key() == r1.key()
    # identity fixtures
    T = dv.trivial_divisor(F)
    assert dv.compose(T, T)[0].key() == T.key()
    assert dv.invert(T)[0].key() == T.key()


def test_torus_norm_q_sqrt2():
    F = field(-2, 0, 1)
    ee = embed(F, F.element([1, 1]))  # fundamental unit 1 + sqrt2
    ul = [[mpmath.log(abs(x)) for x in ee.entries]]
    tn = dv.torus_norm(F, [mpmath.e, 1 / mpmath.e], ul)
    assert abs(tn - mpmath.mpf("0.16776")) < 1e-4
    assert dv.torus_norm(F, [mpmath.mpf(1), mpmath.mpf(1)], ul) < 1e-15
    # at the half-period the distance is half the covering circle
    hp = mpmath.log(1 + mpmath.sqrt(2)) / 2 * mpmath.sqrt(2)
    tn2 = dv.torus_norm(
        F, [mpmath.exp(mpmath.log(1 + mpmath.sqrt(2)) / 2),
            mpmath.exp(-mpmath.log(1 + mpmath.sqrt(2)) / 2)], ul)
    assert abs(tn2 - hp) < 1e-9


def test_oriented_torus_norm():
    Fi = field(1, 0, 1)
    v = [mpmath.exp(mpmath.mpc(0, mpmath.mpf("0.1")))]
    otn = dv.oriented_torus_norm(Fi, v, [])
    assert abs(otn - mpmath.mpf("0.1") * mpmath.sqrt(2)) < 1e-10
    # torsion kills a quarter turn exactly (i is a unit)
    q = [mpmath.exp(mpmath.mpc(0, mpmath.pi / 2))]
    assert dv.oriented_torus_norm(Fi, q, []) < 1e-10


def test_torsion_units():
    assert len(dv.torsion_units(field(1, 0, 1))) == 4
    assert len(dv.torsion_units(field(1, 1, 1))) == 6
    assert len(dv.torsion_units(field(5, 0, 1))) == 2


def test_jump_hits_prime_class():
    F = field(5, 0, 1)
    p2 = idl.split_prime(F, 2)[0]
    p2inv = idl.ideal_inv(p2.ideal)
    R, carry = dv.jump(F, [(p2, 1)])
    assert R.key() == p2inv.key()
    assert dv.wnorm(F, [mpmath.log(c) for c in carry]) \
        <= mpmath.log(dv.delta_bound(F)) + 1e-9
    Rz, cz = dv.jump(F, [])
    assert Rz.key() == idl.unit_ideal(F).key()
    assert all(abs(c - 1) < 1e-15 for c in cz)


def test_jump_large_infinite_displacement():
    F = field(-2, 0, 1)
    ee = embed(F, F.element([1, 1]))
    ul = [[mpmath.log(abs(x)) for x in ee.entries]]
    basis = dv.make_jump_basis(F, seed=1)
    t = mpmath.mpf(10) ** 6
    R, carry = dv.jump(F, [], x_sigma=[t, -t], basis=basis)
    assert R.verify()
    assert dv.torus_norm(F, carry, ul) <= mpmath.log(mpmath.sqrt(8)) + 1e-9


def test_scan_trivial_components():
    F5 = field(5, 0, 1)
    out = dv.scan(F5, dv.trivial_divisor(F5), 2.0)
    assert len(out) == 1 and out[0].key() == idl.unit_ideal(F5).key()
    F2 = field(-2, 0, 1)
    ee = embed(F2, F2.element([1, 1]))
    ul = [[mpmath.log(abs(x)) for x in ee.entries]]
    out2 = dv.scan(F2, dv.trivial_divisor(F2), 0.3, unit_logs=ul)
    assert len(out2) == 1 and out2[0].key() == idl.unit_ideal(F2).key()


def test_h0_gaussian_fixtures():
    F = field(1, 0, 1)
    T = dv.trivial_divisor(F)
    h = dv.h0(T.divisor, tol=1e-12)
    # theta-series oracle: Z[i] flattens to sqrt(2)*Z^2, so the sum is
    # theta_3(e^(-2pi))^2
    oracle = mpmath.log(mpmath.jtheta(3, 0, mpmath.exp(-2 * mpmath.pi)) ** 2)
    assert abs(h - oracle) < 1e-9
    assert abs(h - mpmath.mpf("0.0074558")) < 1e-6
    Dhalf = dv.ArakelovDivisor(F, idl.unit_ideal(F), [mpmath.mpf("0.5")])
    h2 = dv.h0(Dhalf, tol=1e-12)
    oracle2 = mpmath.log(mpmath.jtheta(3, 0, mpmath.exp(-mpmath.pi / 2)) ** 2)
    assert abs(h2 - oracle2) < 1e-9


def test_h0_class_invariance():
    rng = random.Random(21)
    F = field(5, 0, 1)
    p2inv = idl.ideal_inv(idl.split_prime(F, 2)[0].ideal)
    D1 = dv.divisor_of_ideal(F, p2inv)
    base = dv.h0(D1)
    for _ in range(5):
        x = F.element([rng.randint(-9, 9) for _ in range(2)])
        if x.is_zero():
            continue
        xe = embed(F, x)
        I2 = idl.ideal_mul(p2inv, idl.principal_ideal(F, x.inverse()))
        D2 = dv.ArakelovDivisor(F, I2,
                                [a * abs(e) for a, e in zip(D1.u, xe.entries)])
        assert abs(dv.h0(D2) - base) < 1e-6


def test_hermite_gamma_fixtures():
    assert abs(dv.hermite_gamma(dv.trivial_divisor(field(1, 0, 1)).divisor)
               - 1) < 1e-20
    g = dv.hermite_gamma(dv.trivial_divisor(field(-2, 0, 1)).divisor)
    assert abs(g - 2 / mpmath.sqrt(8)) < 1e-20

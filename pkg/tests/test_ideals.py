import random
from fractions import Fraction

import pytest
from sympy.functions.combinatorial.numbers import jacobi_symbol

from arakelov import ideals as idl

from conftest import field


def _random_integral_ideal(F, rng):
    """A nonzero integral ideal from a couple of random generators."""
    while True:
        gens = [F.element([rng.randint(-9, 9) for _ in range(F.n)])
                for _ in range(2)]
        gens = [g for g in gens if not g.is_zero()]
        if gens:
            return idl.hnf_from_generators(F, gens)


def test_principal_ideal_norm():
    F = field(5, 0, 1)
    two = idl.principal_ideal(F, F.from_rational(2))
    assert two.norm == 4
    x = F.element([1, 1])
    assert idl.principal_ideal(F, x).norm == abs(x.norm())


def test_ramified_prime_square():
    F = field(5, 0, 1)  # Q(sqrt(-5))
    p2 = idl.hnf_from_generators(F, [F.from_rational(2), F.element([1, 1])])
    assert p2.norm == 2
    assert idl.ideal_mul(p2, p2) == idl.principal_ideal(F, F.from_rational(2))


def test_inverse_roundtrip():
    rng = random.Random(5)
    for poly in ([5, 0, 1], [6, -1, 1], [-2, 0, 1], [-1, -1, 0, 1]):
        F = field(*poly)
        for _ in range(8):
            I = _random_integral_ideal(F, rng)
            inv = idl.ideal_inv(I)
            assert idl.ideal_mul(I, inv) == idl.unit_ideal(F)
            assert inv.norm == Fraction(1, 1) / I.norm


def test_norm_multiplicative():
    rng = random.Random(17)
    F = field(6, -1, 1)
    for _ in range(15):
        I = _random_integral_ideal(F, rng)
        J = _random_integral_ideal(F, rng)
        assert idl.ideal_mul(I, J).norm == I.norm * J.norm


def test_membership():
    F = field(5, 0, 1)
    p2 = idl.hnf_from_generators(F, [F.from_rational(2), F.element([1, 1])])
    assert idl.contains(p2, F.element([1, 1]))
    assert idl.contains(p2, F.from_rational(2))
    assert not idl.contains(p2, F.one())
    assert idl.contains(idl.unit_ideal(F), F.one())


def test_membership_respects_products():
    rng = random.Random(23)
    F = field(-1, -1, 0, 1)
    for _ in range(10):
        I = _random_integral_ideal(F, rng)
        b = I.basis_elements()[rng.randrange(F.n)]
        z = F.element([rng.randint(-4, 4) for _ in range(F.n)])
        assert idl.contains(I, b * z)


def test_split_prime_patterns():
    Fi = field(1, 0, 1)
    # Q(i): 5 splits, 3 inert, 2 ramifies
    assert sorted((P.residue_degree, P.ramification)
                  for P in idl.split_prime(Fi, 5)) == [(1, 1), (1, 1)]
    assert [(P.residue_degree, P.ramification)
            for P in idl.split_prime(Fi, 3)] == [(2, 1)]
    assert [(P.residue_degree, P.ramification)
            for P in idl.split_prime(Fi, 2)] == [(1, 2)]


def test_split_prime_norm_product():
    rng = random.Random(29)
    for poly in ([5, 0, 1], [6, -1, 1], [-21, 0, 1], [-1, -1, 0, 1], [-2, 0, 0, 1]):
        F = field(*poly)
        for p in (2, 3, 5, 7, 11, 13):
            if F.index % p == 0:
                continue
            primes = idl.split_prime(F, p)
            assert sum(P.residue_degree * P.ramification for P in primes) == F.n
            prod = idl.unit_ideal(F)
            for P in primes:
                for _ in range(P.ramification):
                    prod = idl.ideal_mul(prod, P.ideal)
            assert prod == idl.principal_ideal(F, F.from_rational(p))


def test_splitting_matches_kronecker():
    """In a quadratic field an unramified odd prime splits iff the
    Kronecker symbol of the discriminant is +1."""
    for poly in ([5, 0, 1], [6, -1, 1], [-21, 0, 1], [-57, -1, 1]):
        F = field(*poly)
        d = int(F.discriminant)
        for p in (3, 5, 7, 11, 13, 17, 19):
            if d % p == 0:
                continue
            k = idl.kronecker_symbol(d, p)
            count = len(idl.split_prime(F, p))
            assert count == (2 if k == 1 else 1)


def test_kronecker_vs_jacobi():
    rng = random.Random(1)
    for _ in range(300):
        a = rng.randint(-50, 50)
        m = rng.choice(range(3, 60, 2))
        assert idl.kronecker_symbol(a, m) == jacobi_symbol(a, m)


def test_kronecker_two_and_units():
    assert idl.kronecker_symbol(2, 2) == 0
    assert idl.kronecker_symbol(7, 2) == 1
    assert idl.kronecker_symbol(3, 2) == -1
    assert idl.kronecker_symbol(-1, 0) == 1
    assert idl.kronecker_symbol(5, 0) == 0


def test_scale_and_denominator_normalization():
    F = field(5, 0, 1)
    I = idl.principal_ideal(F, F.from_rational(Fraction(3, 2)))
    assert I.norm == Fraction(9, 4)
    J = idl.scale_ideal(idl.unit_ideal(F), Fraction(3, 2))
    assert I == J


def test_small_primes():
    assert idl.small_primes(20) == [2, 3, 5, 7, 11, 13, 17, 19]
    assert idl.small_primes(1) == []


def test_rank_validation():
    F = field(5, 0, 1)
    with pytest.raises(ValueError):
        idl.FractionalIdeal(F, [[1, 0], [0, 0]], 1)
    with pytest.raises(ValueError):
        idl.hnf_from_generators(F, [F.zero()])

import itertools
import random
from fractions import Fraction

import mpmath
import pytest

from arakelov import ideals as idl
from arakelov import lattice as lat

from conftest import field


def _mat(rows, prec=128):
    return lat.RealLattice([[mpmath.mpf(x) for x in r] for r in rows],
                           prec=prec)


def _length(v):
    return mpmath.sqrt(sum(x * x for x in v))


def _random_basis(rng, n):
    """A random unimodular-ish integer basis (products of shears)."""
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2)
        q = rng.randint(-6, 6)
        rows[i] = [a + q * b for a, b in zip(rows[i], rows[j])]
    return rows


def test_lll_fixture():
    R = lat.lll_reduce(_mat([[1, 1], [2, 1]]))
    lens = [_length(r) for r in R.basis]
    assert all(abs(l - 1) < 1e-20 for l in lens)


def test_lll_preserves_lattice_and_gram_det():
    rng = random.Random(13)
    for n in (2, 3, 4):
        for _ in range(10):
            rows = _random_basis(rng, n)
            L = _mat(rows)
            R = lat.lll_reduce(L)
            # transform is unimodular, so the Gram determinant is unchanged
            with mpmath.mp.workprec(L.prec):
                det0 = mpmath.det(mpmath.matrix(L.gram()))
                det1 = mpmath.det(mpmath.matrix(R.gram()))
            assert abs(det0 - det1) < 1e-12 * abs(det0)
            # reduced rows are integer combinations of the originals
            for coeffs, row in zip([[int(c) for c in t] for t in R.transform],
                                   R.basis):
                rec = [sum(c * rows[j][s] for j, c in enumerate(coeffs))
                       for s in range(n)]
                assert all(abs(a - b) < 1e-20 for a, b in zip(rec, row))


def test_lll_first_vector_quality():
    """|b_1| <= 2^((n-1)/2) * shortest (the classical LLL guarantee),
    with the shortest found by brute force over a coefficient box."""
    rng = random.Random(31)
    for _ in range(10):
        rows = _random_basis(rng, 3)
        R = lat.lll_reduce(_mat(rows))
        best = None
        for cs in itertools.product(range(-6, 7), repeat=3):
            if not any(cs):
                continue
            v = [sum(c * rows[j][s] for j, c in enumerate(cs)) for s in range(3)]
            ln = _length(v)
            best = ln if best is None else min(best, ln)
        assert _length(R.basis[0]) <= mpmath.mpf(2) * best * (1 + 1e-12)


def test_enumerate_short_unit_lattice():
    Z2 = _mat([[1, 0], [0, 1]])
    assert lat.enumerate_short(Z2, 1.0) == [(0, 1), (1, 0)]
    assert set(lat.enumerate_short(Z2, 1.5)) == {(0, 1), (1, 0), (1, 1), (1, -1)}


def test_enumerate_short_vs_bruteforce():
    rng = random.Random(41)
    for n in (2, 3):
        for _ in range(8):
            rows = _random_basis(rng, n)
            R = lat.lll_reduce(_mat(rows))
            bound = _length(R.basis[0]) * mpmath.mpf("1.7")
            got = set()
            for c in lat.enumerate_short(R, bound):
                v = R.to_original(c)
                # canonical sign on original coefficients
                for x in v:
                    if x:
                        if x < 0:
                            v = tuple(-y for y in v)
                        break
                got.add(v)
            want = set()
            for cs in itertools.product(range(-8, 9), repeat=n):
                if not any(cs):
                    continue
                v = [sum(c * rows[j][s] for j, c in enumerate(cs))
                     for s in range(n)]
                if _length(v) <= bound * (1 - 1e-9):
                    w = tuple(cs)
                    for x in w:
                        if x:
                            if x < 0:
                                w = tuple(-y for y in w)
                            break
                    want.add(w)
            assert want <= got


def test_shortest_vector_matches_enumeration():
    rng = random.Random(59)
    for n in (2, 3, 4):
        for _ in range(8):
            rows = _random_basis(rng, n)
            R = lat.lll_reduce(_mat(rows))
            c, ln = lat.shortest_vector(R)
            v = R.vector(c)
            assert abs(_length(v) - ln) < 1e-18 * max(1, ln)
            # nothing shorter in the enumeration ball
            for c2 in lat.enumerate_short(R, ln * (1 + 1e-9)):
                assert _length(R.vector(c2)) >= ln * (1 - 1e-12)


def test_shortest_vector_deterministic_tiebreak():
    Z2 = _mat([[1, 0], [0, 1]])
    c1, _ = lat.shortest_vector(Z2)
    c2, _ = lat.shortest_vector(_mat([[1, 0], [0, 1]]))
    assert c1 == c2


def test_minimal_test_gaussian():
    F = field(1, 0, 1)
    assert lat.minimal_test(F, idl.unit_ideal(F), F.one())
    half = idl.hnf_from_generators(F, [F.element([Fraction(1, 2), 0])])
    assert not lat.minimal_test(F, half, F.one())


def test_minimal_test_requires_membership():
    F = field(1, 0, 1)
    two = idl.principal_ideal(F, F.from_rational(2))
    with pytest.raises(ValueError):
        lat.minimal_test(F, two, F.one())


def test_minimal_test_real_quadratic():
    # in Q(sqrt(2)) the element 1 is minimal in O_F, and stays minimal in
    # (1+sqrt2)^(-1) O_F only after rescaling makes it non-dominated
    F = field(-2, 0, 1)
    assert lat.minimal_test(F, idl.unit_ideal(F), F.one())
    eps = F.element([1, 1])
    I = idl.principal_ideal(F, eps.inverse())
    # 1/eps has |.| < 1 at one real place and > 1 at the other: both 1 and
    # eps^{-1} are minimal in I
    assert lat.minimal_test(F, I, F.one())


def test_dependent_basis_rejected():
    with pytest.raises(ValueError):
        lat.lll_reduce(_mat([[1, 2], [2, 4]]))

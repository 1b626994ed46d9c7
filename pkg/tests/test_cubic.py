import itertools
import random

import pytest

from sqfull.arith import DomainError
from sqfull.cubic import jacobian_m, rank_upper_bound, rho_count, rho_count_bruteforce, uniformity_table


def test_fermat_cubic():
    r = rho_count(20, 1, 1, -1)
    assert r.count == 6
    assert set(r.points) == {(1, 0, 1), (0, 1, 1), (-1, 0, -1), (0, -1, -1), (1, -1, 0), (-1, 1, 0)}
    assert r.check()


def test_nontrivial_points():
    # 1 + 1 = 2 * 1
    r = rho_count(10, 1, 1, -2)
    assert (1, 1, 1) in r.points and r.count == 4
    # 9^3 + 10^3 = 1729 = 1^3 + 12^3 gives points on x^3 + y^3 = 1729 z^3 only with z = 1
    assert rho_count(12, 1, 1, -1729).count >= 8


@pytest.mark.parametrize("coeffs", [(1, 2, 3), (1, 1, -2), (2, -3, 5), (1, 7, -9), (3, 3, -6)])
def test_against_bruteforce(coeffs):
    assert rho_count(6, *coeffs).count == rho_count_bruteforce(6, *coeffs)


def test_invariance():
    rng = random.Random(5)
    for _ in range(20):
        a, b, c = (rng.choice((-1, 1)) * rng.randint(1, 12) for _ in range(3))
        base = rho_count(40, a, b, c, points=False).count
        for perm in itertools.permutations((a, b, c)):
            assert rho_count(40, *perm, points=False).count == base
        assert rho_count(40, -a, b, c, points=False).count == base


def test_errors():
    with pytest.raises(DomainError):
        rho_count(10, 0, 1, 1)
    with pytest.raises(DomainError):
        rho_count(0, 1, 1, 1)
    with pytest.raises(DomainError):
        rho_count(10**7, 1, 1, 1)


def test_uniformity_small():
    tab = uniformity_table(200, 8)
    assert len(tab) == 120
    assert max(r for *_, r in tab) <= 30


def test_jacobian_m():
    assert jacobian_m(1, 1, -1) == -12
    assert jacobian_m(1, 2, 9) == 1
    assert jacobian_m(2, 1, 1) == 3
    with pytest.raises(DomainError):
        jacobian_m(0, 1, 1)


def test_rank_bound():
    assert rank_upper_bound(1).bound == 3
    assert rank_upper_bound(2).bound == 6
    b = rank_upper_bound(30)
    assert (b.omega_M, b.tau3_18M, b.bound) == (3, 180, 11)
    with pytest.raises(DomainError):
        rank_upper_bound(8)
    with pytest.raises(DomainError):
        rank_upper_bound(0)

import cmath
import math
import random

import numpy as np
import pytest

from sqfull.arith import DomainError, jacobi
from sqfull.forms import form_discriminant
from sqfull.sieve import (
    CycloInt,
    QuinticForm,
    character_grid,
    mu0_count,
    mu1_count,
    pp_factor,
    sieve_ratio,
    sigma0,
    sigma0_table,
    weil_report,
)

CUBE_SUM = (1, 0, 0, 1)  # X^3 + Y^3


def direct_sigma0(F, u, v, q):
    d = len(F) - 1
    tot = 0
    for m in range(q):
        for n in range(q):
            val = sum(c * m ** (d - k) * n**k for k, c in enumerate(F))
            tot += jacobi(val % q, q) * cmath.exp(2j * math.pi * (m * u + n * v) / q)
    return tot


def test_sigma0_origin_vanishes():
    assert sigma0(CUBE_SUM, 0, 0, 7).is_zero()


@pytest.mark.parametrize("u,v", [(1, 0), (2, 3), (6, 6), (0, 5)])
def test_sigma0_matches_direct(u, v):
    s = sigma0(CUBE_SUM, u, v, 7)
    assert abs(s.value - direct_sigma0(CUBE_SUM, u, v, 7)) < 1e-8


def test_table_matches_exact():
    F = QuinticForm((1, 2), (3, -1), (1, 0), (0, 1))
    p = 13
    assert form_discriminant(F.coeffs) % p
    tab = sigma0_table(F, p)
    for u in range(p):
        for v in range(p):
            assert abs(tab[u, v] - sigma0(F, u, v, p).value) < 1e-7


def test_product_formula_15():
    F = CUBE_SUM
    # 3 divides disc(X^3 + Y^3) = -27
    p1, p2 = 7, 11
    q = p1 * p2
    eps = pp_factor(p1, p2, 3)
    for u, v in [(1, 2), (3, 4), (0, 1), (12, 30)]:
        lhs = sigma0(F, u, v, q)
        rhs = sigma0(F, u, v, p1) * sigma0(F, u, v, p2) * eps
        assert lhs == rhs


def test_product_formula_random():
    rng = random.Random(2)
    done = 0
    while done < 40:
        F = tuple(rng.randint(-4, 4) for _ in range(6))
        disc = form_discriminant(F)
        if disc == 0:
            continue
        ps = [p for p in (3, 5, 7, 11, 13) if disc % p]
        if len(ps) < 2:
            continue
        p1, p2 = rng.sample(ps, 2)
        u, v = rng.randrange(p1 * p2), rng.randrange(p1 * p2)
        lhs = sigma0(F, u, v, p1 * p2)
        rhs = sigma0(F, u, v, p1) * sigma0(F, u, v, p2) * pp_factor(p1, p2, 5)
        assert lhs == rhs
        done += 1


def test_cyclo_equality():
    # 1 + zeta + ... + zeta^4 = 0 for q = 5
    assert CycloInt(5, (1, 1, 1, 1, 1)).is_zero()
    assert CycloInt(5, (2, 0, 0, 0, 0)) == CycloInt(5, (1, -1, -1, -1, -1))
    assert CycloInt(3, (0, 1, 0)) == CycloInt(15, tuple(1 if j == 5 else 0 for j in range(15)))
    assert not (CycloInt(5, (1, 0, 0, 0, 0)) == CycloInt(5, (0, 1, 0, 0, 0)))


def test_sigma0_errors():
    with pytest.raises(DomainError):
        sigma0(CUBE_SUM, 1, 1, 9)  # not square-free
    with pytest.raises(DomainError):
        sigma0(CUBE_SUM, 1, 1, 3)  # divides the discriminant
    with pytest.raises(DomainError):
        sigma0(CUBE_SUM, 1, 1, 10)
    with pytest.raises(DomainError):
        sigma0((1, 0, 1), 1, 1, 5)  # even degree
    with pytest.raises(DomainError):
        sigma0((1, 2, 1, 0), 1, 1, 5)  # repeated factor
    with pytest.raises(DomainError):
        sigma0(CUBE_SUM, 1, 1, 5 * 7 * 11)


def test_character_grid():
    g = character_grid(CUBE_SUM, 5)
    assert g[0, 0] == 0 and g[1, 0] == 1 and g[2, 0] == jacobi(8, 5)


def test_weil_report():
    rows = weil_report(QuinticForm((1, 2), (3, -1), (1, 0), (0, 1)), 60)
    assert rows and all(r["ok"] for r in rows)
    assert all(r["p"] % 2 for r in rows)
    rows = weil_report(CUBE_SUM, 50)
    assert 3 not in [r["p"] for r in rows]
    assert max(r["max_ratio"] for r in rows) <= 4
    with pytest.raises(DomainError):
        weil_report((1, 0, 1), 10)


def brute_mu0(F, U, V):
    d = len(F) - 1
    out = 0
    for x in range(-U, U + 1):
        for y in range(-V, V + 1):
            n = sum(c * x ** (d - k) * y**k for k, c in enumerate(F))
            if n > 0 and math.isqrt(n) ** 2 == n:
                out += 1
    return out


@pytest.mark.parametrize("F", [CUBE_SUM, (1, 0, 0, 0, 0, 2), (2, -1, 0, 3, 1, 1), (1, 0)])
def test_mu0_against_scan(F):
    assert mu0_count(F, 12, 9) == brute_mu0(F, 12, 9)


def test_mu0_errors():
    with pytest.raises(DomainError):
        mu0_count((0, 0, 0), 5, 5)
    with pytest.raises(DomainError):
        mu0_count((1, 2, 1), 5, 5)


def test_mu1():
    assert mu1_count((0, 1), 10) == 4  # x in {0, 1, 4, 9}
    assert mu1_count((0, 1), 10, include_zero=False) == 3
    with pytest.raises(DomainError):
        mu1_count((0, 0, 1), 10)
    with pytest.raises(DomainError):
        mu1_count((3, 6, 3), 10)  # 3 (x + 1)^2
    assert mu1_count((12, 0, 3), 10) == 0  # 3 (x^2 + 4)
    f = (2, 0, 0, 1)  # x^3 + 2
    brute = sum(1 for x in range(-50, 51) if x**3 + 2 >= 0 and math.isqrt(x**3 + 2) ** 2 == x**3 + 2)
    assert mu1_count(f, 50) == brute


def test_sieve_ratio_stays_bounded():
    F = QuinticForm((1, 2), (3, -1), (1, 0), (0, 1))
    ratios = [sieve_ratio(F, U) for U in (32, 64, 128, 256)]
    assert all(np.isfinite(ratios)) and max(ratios) < 10

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import factorint, isprime

from sqfull.arith import (
    DomainError,
    crt,
    cube_decompose,
    divisors,
    factorize,
    icbrt,
    is_prime,
    is_squarefree,
    is_squarefull,
    jacobi,
    primes_up_to,
    roots_mod_cubed,
    roots_mod_prime_power,
    tau3,
)


def test_factorize_examples():
    assert factorize(1).factors == ()
    assert factorize(18).factors == ((2, 1), (3, 2))
    m61 = 2**61 - 1
    assert factorize(m61).factors == ((m61, 1),)
    with pytest.raises(DomainError):
        factorize(0)
    with pytest.raises(DomainError):
        factorize(2**64)


def test_factorize_reconstructs_up_to_1e5():
    # the full 10^6 sweep lives in the acceptance-style slow test below
    for n in range(1, 10**5 + 1, 7):
        assert math.prod(p**e for p, e in factorize(n).factors) == n


@pytest.mark.slow
def test_factorize_reconstructs_up_to_1e6():
    for n in range(1, 10**6 + 1):
        f = factorize(n)
        assert math.prod(p**e for p, e in f.factors) == n


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=1, max_value=2**63))
def test_factorize_matches_sympy(n):
    assert dict(factorize(n).factors) == factorint(n)


def test_semiprime_with_large_factors():
    p, q = 4294967279, 4294967291  # both below 2^32
    assert factorize(p * q).factors == ((p, 1), (q, 1))


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=0, max_value=10**18))
def test_is_prime_matches_sympy(n):
    assert is_prime(n) == isprime(n)


def test_primes_up_to():
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert primes_up_to(1) == []


def test_is_squarefree_examples():
    assert is_squarefree(1)
    assert not is_squarefree(12)
    assert is_squarefree(30030)
    assert is_squarefree(-6)
    with pytest.raises(DomainError):
        is_squarefree(0)


def test_is_squarefull():
    got = [n for n in range(1, 200) if is_squarefull(n)]
    want = [n for n in range(1, 200) if all(e >= 2 for e in factorint(n).values())]
    assert got == want


def test_jacobi_examples():
    assert jacobi(0, 3) == 0
    assert all(jacobi(1, n) == 1 for n in range(1, 100, 2))
    assert jacobi(2, 15) == 1
    with pytest.raises(DomainError):
        jacobi(3, 4)
    with pytest.raises(DomainError):
        jacobi(3, -5)


def test_jacobi_matches_euler_criterion():
    for p in primes_up_to(1000)[1:]:
        for a in range(p):
            e = pow(a, (p - 1) // 2, p)
            want = 0 if a == 0 else (1 if e == 1 else -1)
            assert jacobi(a, p) == want


def test_tau3_examples_and_oracle():
    assert tau3(1) == 1
    assert tau3(7) == 3
    assert tau3(18) == 18
    for n in range(1, 300):
        brute = sum(1 for u1 in range(1, n + 1) for u2 in range(1, n + 1) if n % (u1 * u2) == 0)
        assert tau3(n) == brute


def test_tau3_multiplicative():
    rng = random.Random(7)
    done = 0
    while done < 1000:
        m, n = rng.randint(1, 10**6), rng.randint(1, 10**6)
        if math.gcd(m, n) != 1:
            continue
        assert tau3(m * n) == tau3(m) * tau3(n)
        done += 1


def test_cube_decompose_examples():
    assert cube_decompose(7) == (1, 7)
    assert cube_decompose(216) == (6, 1)
    assert cube_decompose(-432) == (6, -2)
    with pytest.raises(DomainError):
        cube_decompose(0)


def test_cube_decompose_sweep():
    for n in range(-10**5, 10**5 + 1):
        if n == 0:
            continue
        k, M = cube_decompose(n)
        assert k > 0 and k**3 * abs(M) == abs(n) and (M > 0) == (n > 0)
        assert all(e < 3 for e in factorint(abs(M)).values())


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(-12) == [1, 2, 3, 4, 6, 12]


def test_icbrt():
    for n in range(-3000, 3000):
        r = icbrt(n)
        assert r**3 <= n < (r + 1) ** 3


def test_crt():
    x, m = crt([2, 3, 2], [3, 5, 7])
    assert m == 105 and x % 3 == 2 and x % 5 == 3 and x % 7 == 2


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13, 1009])
@pytest.mark.parametrize("n", [2, 3])
def test_roots_mod_prime_power_brute(p, n):
    e = 3 if p < 100 else 1
    pe = p**e
    for a in range(1, min(pe, 400)):
        if a % p == 0:
            continue
        want = sorted(x for x in range(pe) if pow(x, n, pe) == a)
        assert roots_mod_prime_power(a, n, p, e) == want


def test_roots_mod_cubed_crt():
    q = 35
    for a in range(1, 200):
        if math.gcd(a, q) != 1:
            continue
        want = [x for x in range(q**3) if pow(x, 3, q**3) == a % q**3]
        assert roots_mod_cubed(a, 3, [5, 7]) == want

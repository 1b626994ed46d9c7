"""Exact integer arithmetic: factorization, multiplicative functions, symbols.

Everything here works on Python ints, so intermediate products never
overflow.  Inputs to ``factorize`` are limited to 64 bits, which covers
every quantity the rest of the package feeds in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache, reduce
from itertools import product

import numpy as np


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


MAX_FACTOR_INPUT = 2**64
_TRIAL_LIMIT = 10_000
_ENUM_ROOT_LIMIT = 1000


def primes_up_to(n: int) -> list[int]:
    """All primes p <= n (sieve of Eratosthenes)."""
    if n < 2:
        return []
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.flatnonzero(sieve).tolist()


_SMALL_PRIMES = primes_up_to(_TRIAL_LIMIT)
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """Return a non-trivial factor of the odd composite n."""
    for c in range(1, 200):
        y, r, q, g = 2, 1, 1, 1
        m = 128
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise RuntimeError(f"Pollard-Brent failed to split {n}")


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = math.isqrt(n)
    if r * r == n:
        _split(r, out)
        _split(r, out)
        return
    d = _pollard_brent(n)
    _split(d, out)
    _split(n // d, out)


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of a positive integer; ``factors`` holds (p, e) sorted by p."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 0
        for p, e in self.factors:
            if p <= last or e < 1:
                raise DomainError("factors must have increasing primes and exponents >= 1")
            last = p
            prod *= p**e
        if prod != self.n:
            raise DomainError(f"factors multiply to {prod}, not {self.n}")

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def omega(self) -> int:
        """Number of distinct prime factors."""
        return len(self.factors)

    def big_omega(self) -> int:
        """Number of prime factors counted with multiplicity."""
        return sum(e for _, e in self.factors)

    def divisors(self) -> list[int]:
        divs = [1]
        for p, e in self.factors:
            divs = [d * p**k for d in divs for k in range(e + 1)]
        return sorted(divs)


@lru_cache(maxsize=1 << 16)
def factorize(n: int) -> Factorization:
    """Complete prime factorization of 1 <= n < 2**64.

    Trial division by the primes below 10^4, then Miller-Rabin and
    Pollard-Brent on whatever cofactor is left.
    """
    n = int(n)
    if n < 1:
        raise DomainError(f"factorize needs n >= 1, got {n}")
    if n >= MAX_FACTOR_INPUT:
        raise DomainError(f"factorize is limited to n < 2**64, got {n}")
    out: dict[int, int] = {}
    m = n
    for p in _SMALL_PRIMES:
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out[p] = e
    if m > 1:
        _split(m, out)
    return Factorization(n, tuple(sorted(out.items())))


def omega(n: int) -> int:
    return factorize(abs(n)).omega()


def big_omega(n: int) -> int:
    return factorize(abs(n)).big_omega()


def divisors(n: int) -> list[int]:
    """Positive divisors of |n|, ascending."""
    if n == 0:
        raise DomainError("0 has infinitely many divisors")
    return factorize(abs(n)).divisors()


def is_squarefree(n: int) -> bool:
    """True iff no prime square divides |n| (1 counts as square-free)."""
    n = abs(int(n))
    if n == 0:
        raise DomainError("is_squarefree needs n != 0")
    for p in (2, 3, 5, 7):
        if n % (p * p) == 0:
            return False
    return all(e == 1 for _, e in factorize(n).factors)


def is_squarefull(n: int) -> bool:
    """True iff every prime dividing n divides it at least twice."""
    if n < 1:
        raise DomainError("is_squarefull needs n >= 1")
    return all(e >= 2 for _, e in factorize(n).factors)


def squarefree_kernel(n: int) -> int:
    """Product of the distinct primes dividing |n|."""
    return math.prod(factorize(abs(n)).primes)


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n >= 1; (a/1) = 1."""
    if n < 1 or n % 2 == 0:
        raise DomainError(f"jacobi needs odd n >= 1, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def tau3(n: int) -> int:
    """Number of ordered pairs (u1, u2) of positive integers with u1*u2 | n."""
    if n < 1:
        raise DomainError("tau3 needs n >= 1")
    return math.prod((e + 1) * (e + 2) // 2 for _, e in factorize(n).factors)


def cube_decompose(n: int) -> tuple[int, int]:
    """Write n = k^3 * M with k > 0 and M cube-free carrying the sign of n."""
    if n == 0:
        raise DomainError("cube_decompose needs n != 0")
    k, m = 1, 1
    for p, e in factorize(abs(n)).factors:
        k *= p ** (e // 3)
        m *= p ** (e % 3)
    return k, m if n > 0 else -m


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def icbrt(n: int) -> int:
    """Floor of the real cube root of n (any sign)."""
    if n < 0:
        return -icbrt_ceil(-n)
    if n < 2:
        return n
    x = int(round(n ** (1 / 3)))
    while x**3 > n:
        x -= 1
    while (x + 1) ** 3 <= n:
        x += 1
    return x


def icbrt_ceil(n: int) -> int:
    r = icbrt(n)
    return r if r**3 == n else r + 1


def exact_cbrt(n: int) -> int | None:
    """Integer z with z^3 = n, or None."""
    z = icbrt(n)
    return z if z**3 == n else None


def crt(residues, moduli) -> tuple[int, int]:
    """Combine x = r_i mod m_i for pairwise coprime moduli."""
    x, m = 0, 1
    for r, mi in zip(residues, moduli):
        t = (r - x) * pow(m, -1, mi) % mi
        x += m * t
        m *= mi
    return x % m, m


def _roots_mod_prime(a: int, n: int, p: int) -> list[int]:
    a %= p
    if p <= _ENUM_ROOT_LIMIT:
        return [x for x in range(p) if pow(x, n, p) == a]
    from sympy.ntheory.residue_ntheory import nthroot_mod

    roots = nthroot_mod(a, n, p, all_roots=True)
    return sorted(int(r) for r in roots) if roots else []


def roots_mod_prime_power(a: int, n: int, p: int, e: int) -> list[int]:
    """Solutions of x^n = a mod p^e for a unit a and n in {2, 3}.

    Roots mod p are enumerated for small p and extracted by exponentiation
    above; Hensel lifting is used when p does not divide n, brute force
    over the (tiny) modulus otherwise.
    """
    pe = p**e
    a %= pe
    if a % p == 0:
        raise DomainError("roots_mod_prime_power needs a coprime to p")
    if n % p == 0:
        return [x for x in range(pe) if pow(x, n, pe) == a]
    roots = _roots_mod_prime(a, n, p)
    mod = p
    for _ in range(1, e):
        nxt = mod * p
        lifted = []
        for r in roots:
            f = (pow(r, n, nxt) - a) % nxt
            df = n * pow(r, n - 1, nxt) % p
            t = (-(f // mod) * pow(df, -1, p)) % p
            lifted.append(r + t * mod)
        roots, mod = lifted, nxt
    return sorted(roots)


def roots_mod_cubed(a: int, n: int, q_factors) -> list[int]:
    """All x mod q^3 with x^n = a mod q^3, q square-free with the given primes."""
    per_prime = [roots_mod_prime_power(a, n, p, 3) for p in q_factors]
    if any(not r for r in per_prime):
        return []
    moduli = [p**3 for p in q_factors]
    return sorted(crt(combo, moduli)[0] for combo in product(*per_prime))


def gcd_all(*values: int) -> int:
    return reduce(math.gcd, values, 0)

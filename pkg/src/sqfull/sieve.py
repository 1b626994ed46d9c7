"""Square-sieve experiments for binary forms.

Complete sums

    Sigma0(u, v; q) = sum_{m, n mod q} (F(m, n) / q) e_q(m u + n v)

are kept exactly as elements of Z[zeta_q]: an integer vector c with
Sigma0 = sum_j c[j] zeta_q^j.  Two such vectors describe the same number
iff their difference, read as a polynomial, is divisible by the q-th
cyclotomic polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np
from sympy import Poly, cyclotomic_poly, symbols

from .arith import DomainError, factorize, jacobi, primes_up_to
from .forms import form_discriminant, form_eval, form_is_zero, is_constant_times_square, quintic_from_linear


@dataclass(frozen=True)
class QuinticForm:
    """F = L1^2 M1^3 + L2^2 M2^3 for integer linear forms in (u, v)."""

    L1: tuple[int, int]
    L2: tuple[int, int]
    M1: tuple[int, int]
    M2: tuple[int, int]

    @cached_property
    def coeffs(self) -> tuple[int, ...]:
        # coeffs[k] multiplies u^(5-k) v^k
        return quintic_from_linear(self.L1, self.L2, self.M1, self.M2)

    @cached_property
    def discriminant(self) -> int:
        return form_discriminant(self.coeffs)

    @property
    def height(self) -> int:
        return max(abs(c) for c in self.coeffs)

    @property
    def squarefree(self) -> bool:
        return self.discriminant != 0

    def __call__(self, u, v):
        return form_eval(self.coeffs, u, v)


def _coeffs(F) -> tuple[int, ...]:
    return tuple(int(c) for c in (F.coeffs if isinstance(F, QuinticForm) else F))


@dataclass(frozen=True, eq=False)
class CycloInt:
    """sum_j c[j] zeta_q^j with integer c, zeta_q = exp(2 pi i / q)."""

    q: int
    c: tuple[int, ...]

    @property
    def value(self) -> complex:
        j = np.arange(self.q)
        return complex(np.dot(np.array(self.c, dtype=np.float64), np.exp(2j * np.pi * j / self.q)))

    def __abs__(self):
        return abs(self.value)

    def lift(self, q: int) -> CycloInt:
        """The same number written in Z[zeta_q] for a multiple q of self.q."""
        if q % self.q:
            raise DomainError(f"{q} is not a multiple of {self.q}")
        s = q // self.q
        out = [0] * q
        for j, x in enumerate(self.c):
            out[j * s] += x
        return CycloInt(q, tuple(out))

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloInt(self.q, tuple(other * x for x in self.c))
        q = math.lcm(self.q, other.q)
        a, b = np.array(self.lift(q).c, dtype=object), np.array(other.lift(q).c, dtype=object)
        out = [0] * q
        for i in np.flatnonzero(a):
            for j in np.flatnonzero(b):
                out[(i + j) % q] += a[i] * b[j]
        return CycloInt(q, tuple(int(x) for x in out))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        if not any(self.c):
            return True
        rem = _poly_rem(self.c, _cyclotomic(self.q))
        return not any(rem)

    def __eq__(self, other):
        if not isinstance(other, CycloInt):
            return NotImplemented
        q = math.lcm(self.q, other.q)
        a, b = self.lift(q).c, other.lift(q).c
        return CycloInt(q, tuple(x - y for x, y in zip(a, b))).is_zero()

    __hash__ = None


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> tuple[int, ...]:
    """Ascending integer coefficients of the n-th cyclotomic polynomial."""
    x = symbols("x")
    return tuple(int(c) for c in reversed(Poly(cyclotomic_poly(n, x), x).all_coeffs()))


def _poly_rem(a, m):
    # m monic, ascending coefficients, exact integers
    a = list(a)
    d = len(m) - 1
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i]
        if c:
            for k in range(d + 1):
                a[i - d + k] -= c * m[k]
    return a[:d]


@lru_cache(maxsize=256)
def _chi_table(q: int) -> np.ndarray:
    return np.array([jacobi(r, q) for r in range(q)], dtype=np.int64)


def _form_grid(coeffs, q: int) -> np.ndarray:
    """F(m, n) mod q on the q x q grid, index [m, n]."""
    d = len(coeffs) - 1
    m = np.arange(q, dtype=np.int64)[:, None]
    n = np.arange(q, dtype=np.int64)[None, :]
    out = np.zeros((q, q), dtype=np.int64)
    for k, c in enumerate(coeffs):
        c %= q
        if c:
            term = c * (pow_mod(m, d - k, q) * pow_mod(n, k, q) % q) % q
            out = (out + term) % q
    return out


def pow_mod(a: np.ndarray, e: int, q: int) -> np.ndarray:
    out = np.ones_like(a)
    for _ in range(e):
        out = out * a % q
    return out


def _check_modulus(coeffs, q: int):
    if q < 3 or q % 2 == 0:
        raise DomainError(f"q = {q} must be odd and > 1")
    f = factorize(q)
    if any(e > 1 for _, e in f.factors) or f.omega() > 2:
        raise DomainError(f"q = {q} must be a product of at most two distinct odd primes")
    disc = form_discriminant(coeffs)
    if disc == 0:
        raise DomainError("F has a repeated factor")
    if any(disc % p == 0 for p in f.primes):
        raise DomainError(f"q = {q} shares a prime with the discriminant {disc}")


def character_grid(F, q: int) -> np.ndarray:
    """(F(m, n) / q) on the q x q grid."""
    return _chi_table(q)[_form_grid(_coeffs(F), q)]


def sigma0(F, u: int, v: int, q: int) -> CycloInt:
    """Exact Sigma0(u, v; q) by direct summation over all residues."""
    coeffs = _coeffs(F)
    if len(coeffs) % 2:
        raise DomainError("F must have odd degree")
    _check_modulus(coeffs, q)
    chi = character_grid(coeffs, q)
    m = np.arange(q, dtype=np.int64)[:, None]
    n = np.arange(q, dtype=np.int64)[None, :]
    j = (m * (u % q) + n * (v % q)) % q
    counts = np.bincount(j.ravel(), weights=chi.ravel(), minlength=q)
    return CycloInt(q, tuple(int(round(x)) for x in counts))


def sigma0_table(F, p: int) -> np.ndarray:
    """Sigma0(u, v; p) for all (u, v) mod p, as complex floats (index [u, v])."""
    chi = character_grid(F, p).astype(np.float64)
    # sum_{m,n} chi[m,n] e(+(mu+nv)/p) is p^2 times the inverse DFT
    return np.fft.ifft2(chi) * p * p


def pp_factor(p1: int, p2: int, D: int) -> int:
    """(p2/p1)^D (p1/p2)^D, the constant in the product formula."""
    return (jacobi(p2, p1) * jacobi(p1, p2)) ** D


def weil_report(F, P: int) -> list[dict]:
    """max_{u,v} |Sigma0(u, v; p)| / p for each odd prime p <= P not dividing the discriminant."""
    coeffs = _coeffs(F)
    D = len(coeffs) - 1
    if D % 2 == 0:
        raise DomainError("F must have odd degree")
    disc = form_discriminant(coeffs)
    if disc == 0:
        raise DomainError("F has a repeated factor")
    rows = []
    for p in primes_up_to(P):
        if p == 2 or disc % p == 0:
            continue
        ratio = float(np.abs(sigma0_table(coeffs, p)).max()) / p
        rows.append({"p": p, "max_ratio": ratio, "ok": ratio <= D + 1 + 1e-9})
    return rows


# counting square values


def _is_square_array(vals: np.ndarray) -> np.ndarray:
    """Perfect-square test for an int64 array (negative entries are not squares)."""
    out = np.zeros(vals.shape, dtype=bool)
    pos = vals >= 0
    v = vals[pos]
    r = np.floor(np.sqrt(v.astype(np.float64))).astype(np.int64)
    # float sqrt can be off by one near 2^53 and above
    for _ in range(2):
        r = np.where(r * r > v, r - 1, r)
        r = np.where((r + 1) * (r + 1) <= v, r + 1, r)
    out[pos] = r * r == v
    return out


def _fits_int64(coeffs, U: int, V: int) -> bool:
    d = len(coeffs) - 1
    bound = sum(abs(c) * U ** (d - k) * V**k for k, c in enumerate(coeffs))
    return bound < 2**61


def mu0_count(F, U: int, V: int, nonzero: bool = True) -> int:
    """#{(x, y) : |x| <= U, |y| <= V, F(x, y) a perfect square}, nonzero squares by default."""
    coeffs = _coeffs(F)
    if form_is_zero(coeffs):
        raise DomainError("F is zero")
    if len(coeffs) > 2 and form_discriminant(coeffs) == 0:
        raise DomainError("F has a repeated factor")
    if U < 1 or V < 1:
        raise DomainError("U and V must be positive")
    d = len(coeffs) - 1
    if not _fits_int64(coeffs, U, V):
        return sum(
            1
            for x in range(-U, U + 1)
            for y in range(-V, V + 1)
            if _is_square_int(form_eval(coeffs, x, y), nonzero)
        )
    x = np.arange(-U, U + 1, dtype=np.int64)[:, None]
    y = np.arange(-V, V + 1, dtype=np.int64)[None, :]
    vals = np.zeros((2 * U + 1, 2 * V + 1), dtype=np.int64)
    for k, c in enumerate(coeffs):
        if c:
            vals += c * x ** (d - k) * y**k
    sq = _is_square_array(vals)
    if nonzero:
        sq &= vals != 0
    return int(sq.sum())


def _is_square_int(n: int, nonzero: bool) -> bool:
    if n < 0 or (nonzero and n == 0):
        return False
    r = math.isqrt(n)
    return r * r == n


def mu1_count(f, U: int, include_zero: bool = True) -> int:
    """#{x in [-U, U] : f(x) is a square}; f has ascending integer coefficients."""
    f = [int(c) for c in f]
    if is_constant_times_square(f):
        raise DomainError("f is a constant times a square")
    return sum(1 for x in range(-U, U + 1) if _is_square_int(_horner(f, x), not include_zero))


def _horner(f, x: int) -> int:
    out = 0
    for c in reversed(f):
        out = out * x + c
    return out


def sieve_ratio(F, U: int) -> float:
    """mu0(U, U) / (U^(4/3) log^2(2 ||F||)), the normalized square count."""
    coeffs = _coeffs(F)
    height = max(abs(c) for c in coeffs)
    return mu0_count(coeffs, U, U) / (U ** (4 / 3) * math.log(2 * height) ** 2)

"""Coprime points on diagonal cubics a x^3 + b y^3 + c z^3 = 0, and a descent rank bound.

Points are counted with signs, excluding the origin; a zero coordinate is
allowed.  The rank bound is the elementary one for Y^2 = X^3 - 3 M^2:
3^(r+1) = #Im(alpha) #Im(alpha-hat), with #Im(alpha) <= 3^(2 + 2 omega(M))
and #Im(alpha-hat) at most the largest power of 3 below tau3(18 M).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .arith import DomainError, cube_decompose, factorize, tau3


@dataclass
class CubicPointCount:
    a: int
    b: int
    c: int
    B: int
    count: int
    points: list[tuple[int, int, int]] = field(default_factory=list)

    def check(self) -> bool:
        return len(self.points) == self.count and all(
            self.a * x**3 + self.b * y**3 + self.c * z**3 == 0
            and math.gcd(x, y, z) == 1
            and max(abs(x), abs(y), abs(z)) <= self.B
            for x, y, z in self.points
        )


def _cube_roots(n: np.ndarray):
    """(root, is_cube) for an int64 array."""
    r = np.rint(np.cbrt(n.astype(np.float64))).astype(np.int64)
    return r, r * r * r == n


def rho_count(B: int, a: int, b: int, c: int, *, points: bool = True) -> CubicPointCount:
    """All (x, y, z) != 0 with a x^3 + b y^3 + c z^3 = 0, gcd 1 and max |coordinate| <= B."""
    if a * b * c == 0:
        raise DomainError("coefficients must be non-zero")
    if B < 1:
        raise DomainError("B must be positive")
    if max(abs(a), abs(b)) * 2 * B**3 >= 2**62:
        raise DomainError(f"B = {B} is too large for the int64 scan")
    r = np.arange(-B, B + 1, dtype=np.int64)
    cubes = r**3
    step = max(1, 2**22 // len(r))
    xs, ys, zs = [], [], []
    for lo in range(0, len(r), step):
        s = -(a * cubes[lo : lo + step, None] + b * cubes[None, :])
        ix, iy = np.nonzero(s % c == 0)
        z, cube = _cube_roots(s[ix, iy] // c)
        keep = cube & (np.abs(z) <= B)
        ix, iy, z = ix[keep] + lo, iy[keep], z[keep]
        keep = np.gcd(np.gcd(r[ix], r[iy]), z) == 1
        xs.append(r[ix[keep]])
        ys.append(r[iy[keep]])
        zs.append(z[keep])
    x, y, z = np.concatenate(xs), np.concatenate(ys), np.concatenate(zs)
    pts = sorted(zip(x.tolist(), y.tolist(), z.tolist())) if points else []
    return CubicPointCount(a, b, c, B, len(x), pts)


def rho_count_bruteforce(B: int, a: int, b: int, c: int) -> int:
    rng = range(-B, B + 1)
    return sum(
        1
        for x in rng
        for y in rng
        for z in rng
        if a * x**3 + b * y**3 + c * z**3 == 0 and math.gcd(x, y, z) == 1
    )


def uniformity_table(B: int, H: int) -> list[tuple[int, int, int, int]]:
    """rho(B; a, b, c) for 1 <= a <= b <= c <= H.

    Sign changes of a single coefficient and permutations leave rho
    unchanged, so this covers every |a|, |b|, |c| <= H.
    """
    return [
        (a, b, c, rho_count(B, a, b, c, points=False).count)
        for a in range(1, H + 1)
        for b in range(a, H + 1)
        for c in range(b, H + 1)
    ]


def jacobian_m(a: int, b: int, c: int) -> int:
    """The cube-free M with 12 a b c = n^3 M."""
    if a * b * c == 0:
        raise DomainError("coefficients must be non-zero")
    return cube_decompose(12 * a * b * c)[1]


@dataclass(frozen=True)
class RankBound:
    M: int
    omega_M: int
    tau3_18M: int
    bound: int


def _largest_power_of_3_exponent(n: int) -> int:
    e = 0
    while 3 ** (e + 1) <= n:
        e += 1
    return e


def rank_upper_bound(M: int) -> RankBound:
    """r(M) <= (2 + 2 omega(M)) + log_3(largest power of 3 <= tau3(18 M)) - 1."""
    if M < 1:
        raise DomainError("M must be a positive integer")
    f = factorize(M)
    if any(e >= 3 for _, e in f.factors):
        raise DomainError(f"M = {M} is not cube-free")
    w = f.omega()
    t = tau3(18 * M)
    return RankBound(M, w, t, 2 + 2 * w + _largest_power_of_3_exponent(t) - 1)

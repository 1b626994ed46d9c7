"""Square-full integers and the equation u + v = w.

A positive integer n is square-full when p^2 | n for every prime p | n.
Such n factor uniquely as x^2 y^3 with y square-free, and 1 counts as
square-full.  This module enumerates them, counts square-full solutions
of u + v = w, and handles the normalized equation

    a1 x1^2 y1^3 + a2 x2^2 y2^3 + a3 x3^2 y3^3 = 0

that a solution reduces to after dividing out gcd(u, v, w).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import NamedTuple

import numpy as np

from .arith import DomainError, factorize, gcd_all, icbrt, is_squarefree, is_squarefull

MAX_B = 2**60
# above this bound membership switches from binary search to a packed bitset
BITSET_THRESHOLD = 10**7


@dataclass(frozen=True, order=True)
class SquareFullDecomp:
    n: int
    x: int
    y: int

    def __post_init__(self):
        if self.x < 1 or self.y < 1 or self.n != self.x**2 * self.y**3:
            raise DomainError(f"{self.n} != {self.x}^2 * {self.y}^3")
        if not is_squarefree(self.y):
            raise DomainError(f"y = {self.y} is not square-free")


@dataclass(frozen=True, order=True)
class Triple:
    u: int
    v: int
    w: int

    def __post_init__(self):
        if min(self.u, self.v, self.w) < 1 or self.u + self.v != self.w:
            raise DomainError(f"({self.u}, {self.v}, {self.w}) is not a positive solution of u + v = w")
        for n in (self.u, self.v, self.w):
            if not is_squarefull(n):
                raise DomainError(f"{n} is not square-full")


@dataclass(frozen=True, order=True)
class CoeffTriple:
    a1: int
    a2: int
    a3: int

    def __post_init__(self):
        a = self.as_tuple()
        if 0 in a:
            raise DomainError("coefficients must be non-zero")
        if not all(is_squarefree(c) for c in a):
            raise DomainError(f"coefficients {a} must be square-free")
        if math.gcd(a[0], a[1]) != 1 or math.gcd(a[0], a[2]) != 1 or math.gcd(a[1], a[2]) != 1:
            raise DomainError(f"coefficients {a} must be pairwise coprime")
        if all(c > 0 for c in a) or all(c < 0 for c in a):
            raise DomainError(f"coefficients {a} all share a sign, so there are no positive solutions")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a1, self.a2, self.a3)

    @property
    def product(self) -> int:
        return self.a1 * self.a2 * self.a3

    def __getitem__(self, i):
        return self.as_tuple()[i]


def coeff_triples(bound: int) -> list[CoeffTriple]:
    """All valid coefficient triples with |a_i| <= bound, in a fixed order."""
    vals = [c for m in range(1, bound + 1) if is_squarefree(m) for c in (m, -m)]
    out = []
    for a in product(vals, repeat=3):
        try:
            out.append(CoeffTriple(*a))
        except DomainError:
            pass
    return out


@dataclass(frozen=True, order=True)
class Solution:
    """(x1, x2, x3, y1, y2, y3) solving the normalized equation for ``coeffs``."""

    coeffs: CoeffTriple
    x: tuple[int, int, int]
    y: tuple[int, int, int]

    def values(self) -> tuple[int, int, int]:
        """Signed terms a_i x_i^2 y_i^3."""
        return tuple(a * x * x * y**3 for a, x, y in zip(self.coeffs.as_tuple(), self.x, self.y))

    def violations(self, B: int | None = None) -> list[str]:
        bad = []
        a = self.coeffs.as_tuple()
        if min(self.x + self.y) < 1:
            bad.append("non-positive coordinate")
            return bad
        vals = self.values()
        if sum(vals) != 0:
            bad.append("equation")
        if B is not None and max(abs(v) for v in vals) > B:
            bad.append("range")
        xy = [x * y for x, y in zip(self.x, self.y)]
        if gcd_all(*xy) != 1:
            bad.append("gcd(x1y1, x2y2, x3y3)")
        if math.gcd(abs(self.coeffs.product), math.prod(xy)) != 1:
            bad.append("gcd(a1a2a3, x1x2x3y1y2y3)")
        if not all(is_squarefree(ai * yi) for ai, yi in zip(a, self.y)):
            bad.append("a_i y_i square-free")
        return bad

    def is_valid(self, B: int | None = None) -> bool:
        return not self.violations(B)

    @property
    def point(self) -> tuple[int, int, int, int]:
        """The projection (x1, x2, y1, y2) used by the lattice covering."""
        return (self.x[0], self.x[1], self.y[0], self.y[1])


@dataclass(frozen=True)
class DyadicBox:
    X: tuple[int, int, int]
    Y: tuple[int, int, int]

    def __post_init__(self):
        for v in self.X + self.Y:
            if v < 1 or v & (v - 1):
                raise DomainError(f"box side {v} is not a power of two")

    def admissible(self, B: int, a: CoeffTriple) -> bool:
        return all(32 * B >= abs(ai) * X * X * Y**3 for ai, X, Y in zip(a.as_tuple(), self.X, self.Y))

    def contains(self, x, y) -> bool:
        return all(X // 2 < xi <= X for xi, X in zip(x, self.X)) and all(
            Y // 2 < yi <= Y for yi, Y in zip(y, self.Y)
        )

    def ranges(self):
        """Inclusive integer ranges ((xlo, xhi), (ylo, yhi)) per index."""
        return [((X // 2 + 1, X), (Y // 2 + 1, Y)) for X, Y in zip(self.X, self.Y)]


def _pow2_ceil(n: int) -> int:
    return 1 << (n - 1).bit_length()


def box_of(s: Solution) -> DyadicBox:
    """The unique dyadic box containing a solution."""
    return DyadicBox(tuple(_pow2_ceil(x) for x in s.x), tuple(_pow2_ceil(y) for y in s.y))


def dyadic_boxes(B: int, a: CoeffTriple) -> list[DyadicBox]:
    """Every admissible box.  The count grows like (log B)^6, so keep B small."""
    per_index = []
    for ai in a.as_tuple():
        cap = 32 * B // abs(ai)
        pairs = []
        Y = 1
        while Y**3 <= cap:
            X = 1
            while X * X * Y**3 <= cap:
                pairs.append((X, Y))
                X *= 2
            Y *= 2
        per_index.append(pairs)
    return [
        DyadicBox((p[0], q[0], r[0]), (p[1], q[1], r[1]))
        for p, q, r in product(*per_index)
    ]


def _check_B(B: int):
    if B < 1:
        raise DomainError(f"B must be >= 1, got {B}")
    if B > MAX_B:
        raise DomainError(f"B = {B} exceeds 2^60; products would overflow the 64-bit kernels")


def squarefree_mask(n: int) -> np.ndarray:
    """Boolean array m with m[k] true iff k is square-free, for 0 <= k <= n."""
    mask = np.ones(n + 1, dtype=bool)
    mask[0] = False
    p = 2
    while p * p <= n:
        mask[p * p :: p * p] = False
        p += 1
    return mask


def squarefull_array(B: int) -> np.ndarray:
    """Sorted int64 array of the square-full n <= B."""
    _check_B(B)
    ymax = icbrt(B)
    mask = squarefree_mask(ymax)
    chunks = []
    for y in np.flatnonzero(mask).tolist():
        xmax = math.isqrt(B // y**3)
        x = np.arange(1, xmax + 1, dtype=np.int64)
        chunks.append(x * x * np.int64(y**3))
    arr = np.concatenate(chunks)
    arr.sort()
    return arr


def enumerate_squarefull(B: int) -> list[SquareFullDecomp]:
    """All square-full n <= B as (n, x, y), ascending in n."""
    _check_B(B)
    mask = squarefree_mask(icbrt(B))
    out = []
    for y in np.flatnonzero(mask).tolist():
        y3 = y**3
        for x in range(1, math.isqrt(B // y3) + 1):
            d = object.__new__(SquareFullDecomp)
            # invariants hold by construction, skip the validating __init__
            object.__setattr__(d, "n", x * x * y3)
            object.__setattr__(d, "x", x)
            object.__setattr__(d, "y", y)
            out.append(d)
    out.sort()
    return out


def decompose_squarefull(n: int) -> SquareFullDecomp | None:
    """The unique (x, y) with n = x^2 y^3 and y square-free, or None."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    x, y = 1, 1
    for p, e in factorize(n).factors:
        if e < 2:
            return None
        if e % 2:
            y *= p
            x *= p ** ((e - 3) // 2)
        else:
            x *= p ** (e // 2)
    return SquareFullDecomp(n, x, y)


class CountResult(NamedTuple):
    count: int
    unordered: int
    witnesses: list | None


class _Membership:
    def __init__(self, sf: np.ndarray, B: int, use_bitset: bool | None = None):
        if use_bitset is None:
            use_bitset = B > BITSET_THRESHOLD
        self.sf = sf
        self.bits = None
        if use_bitset:
            bits = np.zeros(B // 8 + 1, dtype=np.uint8)
            np.bitwise_or.at(bits, sf >> 3, (1 << (sf & 7)).astype(np.uint8))
            self.bits = bits

    def __call__(self, w: np.ndarray) -> np.ndarray:
        if self.bits is not None:
            return ((self.bits[w >> 3] >> (w & 7).astype(np.uint8)) & 1).astype(bool)
        idx = np.searchsorted(self.sf, w)
        idx[idx == len(self.sf)] = 0
        return self.sf[idx] == w


def _scan(sf, member, B, lo, hi, primitive):
    """Hits (u, v) with u <= v, u = sf[i] for lo <= i < hi."""
    us, vs = [], []
    for i in range(lo, hi):
        u = int(sf[i])
        j = int(np.searchsorted(sf, B - u, side="right"))
        if j <= i:
            break
        v = sf[i:j]
        ok = member(v + u)
        if ok.any():
            v = v[ok]
            if primitive:
                v = v[np.gcd(v, u) == 1]
            us.append(np.full(len(v), u, dtype=np.int64))
            vs.append(v)
    if not us:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    return np.concatenate(us), np.concatenate(vs)


def _balanced_chunks(sf, B, parts):
    # work for index i is the number of v in [sf[i], B - sf[i]]
    upper = np.searchsorted(sf, B - sf, side="right")
    work = np.maximum(upper - np.arange(len(sf)), 0)
    active = int(np.count_nonzero(work))
    cum = np.cumsum(work[:active])
    total = int(cum[-1]) if active else 0
    cuts = [0]
    for k in range(1, parts):
        cuts.append(int(np.searchsorted(cum, total * k / parts)))
    cuts.append(active)
    return [(a, b) for a, b in zip(cuts, cuts[1:]) if b > a]


def count_solutions(B: int, primitive: bool = False, *, witnesses: bool = False,
                    threads: int = 1, use_bitset: bool | None = None) -> CountResult:
    """Ordered count of square-full (u, v, w) with u + v = w <= B.

    The pair space u <= v is split into index ranges of equal work, scanned
    with numpy and summed; the total does not depend on ``threads``.
    """
    _check_B(B)
    sf = squarefull_array(B)
    member = _Membership(sf, B, use_bitset)
    chunks = _balanced_chunks(sf, B, max(1, threads))
    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(lambda c: _scan(sf, member, B, c[0], c[1], primitive), chunks))
    else:
        parts = [_scan(sf, member, B, a, b, primitive) for a, b in chunks]
    u = np.concatenate([p[0] for p in parts]) if parts else np.empty(0, np.int64)
    v = np.concatenate([p[1] for p in parts]) if parts else np.empty(0, np.int64)
    diag = int(np.count_nonzero(u == v))
    unordered = len(u)
    count = 2 * unordered - diag
    wit = None
    if witnesses:
        pairs = set(zip(u.tolist(), v.tolist()))
        pairs |= {(b, a) for a, b in pairs}
        wit = [Triple(a, b, a + b) for a, b in sorted(pairs, key=lambda t: (t[0] + t[1], t[0]))]
    return CountResult(count, unordered, wit)


def count_solutions_bruteforce(B: int, primitive: bool = False) -> CountResult:
    """Quadratic double loop over square-full u, v; the reference oracle."""
    sf = squarefull_array(B).tolist()
    members = set(sf)
    found = []
    for u in sf:
        for v in sf:
            w = u + v
            if w > B:
                break
            if w in members and (not primitive or math.gcd(u, v) == 1):
                found.append(Triple(u, v, w))
    found.sort(key=lambda t: (t.w, t.u))
    unordered = sum(1 for t in found if t.u <= t.v)
    return CountResult(len(found), unordered, found)


def reduce_triple(t: Triple) -> tuple[int, Solution]:
    """Divide out h = gcd(u, v, w) and write each quotient as a_i x_i^2 y_i^3.

    a_i is forced to be the product of the primes dividing u_i/h exactly
    once, which is also the choice of least |a_i|.
    """
    if not isinstance(t, Triple):
        t = Triple(*t)
    h = math.gcd(t.u, t.v)
    parts = []
    for n in (t.u // h, t.v // h, t.w // h):
        a, x, y = 1, 1, 1
        for p, e in factorize(n).factors:
            if e == 1:
                a *= p
            elif e % 2:
                y *= p
                x *= p ** ((e - 3) // 2)
            else:
                x *= p ** (e // 2)
        parts.append((a, x, y))
    (a1, x1, y1), (a2, x2, y2), (a3, x3, y3) = parts
    s = Solution(CoeffTriple(a1, a2, -a3), (x1, x2, x3), (y1, y2, y3))
    return h, s


class _TermSet(NamedTuple):
    value: np.ndarray  # signed a * x^2 * y^3
    x: np.ndarray
    y: np.ndarray


def _term_set(B, ai, A, xr=None, yr=None) -> _TermSet:
    cap = B // abs(ai)
    ymax = icbrt(cap)
    ylo, yhi = (1, ymax) if yr is None else (yr[0], min(yr[1], ymax))
    vals, xs, ys = [], [], []
    if yhi >= ylo:
        mask = squarefree_mask(yhi)
        for y in range(ylo, yhi + 1):
            if not mask[y] or math.gcd(y, A) != 1:
                continue
            xmax = math.isqrt(cap // y**3)
            xlo, xhi = (1, xmax) if xr is None else (xr[0], min(xr[1], xmax))
            if xhi < xlo:
                continue
            x = np.arange(xlo, xhi + 1, dtype=np.int64)
            if A > 1:
                x = x[np.gcd(x, A) == 1]
            vals.append(ai * x * x * y**3)
            xs.append(x)
            ys.append(np.full(len(x), y, dtype=np.int64))
    if not vals:
        e = np.empty(0, np.int64)
        return _TermSet(e, e, e)
    return _TermSet(np.concatenate(vals), np.concatenate(xs), np.concatenate(ys))


def _solve(B: int, a: CoeffTriple, box: DyadicBox | None = None) -> list[Solution]:
    A = abs(a.product)
    rng = box.ranges() if box else [(None, None)] * 3
    s1, s2, s3 = (_term_set(B, ai, A, *r) for ai, r in zip(a.as_tuple(), rng))
    if not len(s1.value) or not len(s2.value) or not len(s3.value):
        return []
    order = np.argsort(s3.value, kind="stable")
    v3 = s3.value[order]
    out = []
    step = max(1, 2_000_000 // len(s2.value))
    for lo in range(0, len(s1.value), step):
        hi = min(lo + step, len(s1.value))
        target = -(s1.value[lo:hi, None] + s2.value[None, :])
        idx = np.searchsorted(v3, target)
        idx[idx == len(v3)] = 0
        i1, i2 = np.nonzero(v3[idx] == target)
        for p, q in zip(i1.tolist(), i2.tolist()):
            k = int(order[idx[p, q]])
            p += lo
            x = (int(s1.x[p]), int(s2.x[q]), int(s3.x[k]))
            y = (int(s1.y[p]), int(s2.y[q]), int(s3.y[k]))
            if gcd_all(x[0] * y[0], x[1] * y[1], x[2] * y[2]) == 1:
                out.append(Solution(a, x, y))
    out.sort()
    return out


def count_normalized(B: int, a: CoeffTriple) -> tuple[int, list[Solution]]:
    """All solutions of the normalized equation with |a_i| x_i^2 y_i^3 <= B."""
    _check_B(B)
    sols = _solve(B, a)
    return len(sols), sols


def count_normalized_bruteforce(B: int, a: CoeffTriple) -> tuple[int, list[Solution]]:
    """Loop over y-triples and (x1, x2), recovering x3 by a square test."""
    a1, a2, a3 = a.as_tuple()
    A = abs(a.product)

    def ys(ai):
        return [y for y in range(1, icbrt(B // abs(ai)) + 1)
                if is_squarefree(y) and math.gcd(y, A) == 1]

    out = []
    for y1, y2, y3 in product(ys(a1), ys(a2), ys(a3)):
        den = -a3 * y3**3
        for x1 in range(1, math.isqrt(B // (abs(a1) * y1**3)) + 1):
            if math.gcd(x1, A) != 1:
                continue
            t1 = a1 * x1 * x1 * y1**3
            for x2 in range(1, math.isqrt(B // (abs(a2) * y2**3)) + 1):
                num = t1 + a2 * x2 * x2 * y2**3
                if num % den:
                    continue
                sq = num // den
                if sq < 1:
                    continue
                x3 = math.isqrt(sq)
                if x3 * x3 != sq or abs(a3) * sq * y3**3 > B:
                    continue
                s = Solution(a, (x1, x2, x3), (y1, y2, y3))
                if s.is_valid(B):
                    out.append(s)
    out.sort()
    return len(out), out


def box_count(B: int, a: CoeffTriple, box: DyadicBox) -> int:
    """Number of solutions whose coordinates all lie in the half-open dyadic ranges."""
    _check_B(B)
    if not box.admissible(B, a):
        raise DomainError(f"box {box} violates X_i^2 Y_i^3 <= 32B/|a_i|")
    return len(_solve(B, a, box))


def estimate_c_local(y, a: CoeffTriple, B: int) -> float:
    """N_x(B) / sqrt(B), N_x counting x-triples that complete the fixed y."""
    y = tuple(int(v) for v in y)
    for ai, yi in zip(a.as_tuple(), y):
        if yi < 1 or not is_squarefree(ai * yi):
            raise DomainError(f"a_i y_i = {ai}*{yi} is not square-free")
    A = abs(a.product)
    if math.gcd(A, math.prod(y)) != 1:
        raise DomainError("y shares a prime with a1 a2 a3")
    box = [((1, math.isqrt(B // (abs(ai) * yi**3))), (yi, yi)) for ai, yi in zip(a.as_tuple(), y)]
    s1, s2, s3 = (_term_set(B, ai, A, *r) for ai, r in zip(a.as_tuple(), box))
    if not (len(s1.value) and len(s2.value) and len(s3.value)):
        return 0.0
    target = -(s1.value[:, None] + s2.value[None, :])
    i1, i2 = np.nonzero(np.isin(target, s3.value))
    n = 0
    x3_of = {int(v): int(x) for v, x in zip(s3.value, s3.x)}
    for p, q in zip(i1.tolist(), i2.tolist()):
        x3 = x3_of[int(target[p, q])]
        xy = (int(s1.x[p]) * y[0], int(s2.x[q]) * y[1], x3 * y[2])
        n += gcd_all(*xy) == 1
    return n / math.sqrt(B)

"""Exact full-rank lattices in dimension <= 4.

A lattice is stored as integer row vectors over a common denominator, so
every membership decision is made in integer arithmetic.  Floating point
only steers the enumeration; candidates are always re-checked exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, linprog, milp
from sympy import ZZ, Matrix
from sympy import fraction as sympy_fraction
from sympy.polys.matrices import DomainMatrix

from .arith import DomainError, factorize


def _frac_det(rows) -> Fraction:
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                for j in range(c, n):
                    m[r][j] -= f * m[c][j]
    return det


def _frac_inverse(rows):
    n = len(rows)
    m = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            raise DomainError("singular basis")
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [x / p for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def rank(rows) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    rk, ncols = 0, len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rk, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        for r in range(rk + 1, len(m)):
            f = m[r][c] / m[rk][c]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[rk])]
        rk += 1
    return rk


def hnf_rows(rows) -> tuple[tuple[int, ...], ...]:
    """Row-style Hermite normal form of an integer matrix (zero rows dropped).

    Used as a canonical key: two integer row sets span the same lattice iff
    their forms agree.
    """
    m = [list(map(int, r)) for r in rows]
    ncols = len(m[0]) if m else 0
    out_rows = 0
    for c in range(ncols):
        while True:
            nz = [r for r in range(out_rows, len(m)) if m[r][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda r: abs(m[r][c]))
            m[out_rows], m[piv] = m[piv], m[out_rows]
            done = True
            for r in range(out_rows + 1, len(m)):
                if m[r][c]:
                    f = m[r][c] // m[out_rows][c]
                    m[r] = [x - f * y for x, y in zip(m[r], m[out_rows])]
                    if m[r][c]:
                        done = False
            if done:
                break
        if out_rows < len(m) and m[out_rows][c] != 0:
            if m[out_rows][c] < 0:
                m[out_rows] = [-x for x in m[out_rows]]
            for r in range(out_rows):
                f = m[r][c] // m[out_rows][c]
                if f:
                    m[r] = [x - f * y for x, y in zip(m[r], m[out_rows])]
            out_rows += 1
    return tuple(tuple(r) for r in m[:out_rows])


class IntLattice:
    """Full-rank lattice spanned by the rows ``num[i] / den``.

    ``basis`` may hold ints or Fractions; it is brought to a common
    denominator on construction.  Instances are immutable.
    """

    def __init__(self, basis, den: int = 1):
        rows = [[Fraction(x) / den for x in r] for r in basis]
        k = len(rows)
        if k < 1 or any(len(r) != k for r in rows):
            raise DomainError("basis must be a square matrix")
        common = math.lcm(*(x.denominator for r in rows for x in r))
        num = [[int(x * common) for x in r] for r in rows]
        g = math.gcd(common, *(x for r in num for x in r))
        self.den = common // g
        self.num = tuple(tuple(x // g for x in r) for r in num)
        if _frac_det(self.num) == 0:
            raise DomainError("singular basis")

    @classmethod
    def from_columns(cls, cols, den: int = 1):
        return cls([list(r) for r in zip(*cols)], den)

    @property
    def dim(self) -> int:
        return len(self.num)

    @property
    def basis(self) -> list[tuple[Fraction, ...]]:
        return [tuple(Fraction(x, self.den) for x in r) for r in self.num]

    @cached_property
    def det(self) -> Fraction:
        return abs(_frac_det(self.num)) / Fraction(self.den) ** self.dim

    def __repr__(self):
        return f"IntLattice({[list(r) for r in self.num]}, den={self.den})"

    def __eq__(self, other):
        return isinstance(other, IntLattice) and self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def canonical(self):
        return (self.den, hnf_rows(self.num))

    def coords(self, v) -> list[Fraction]:
        """Coefficients c with v = sum c_i b_i."""
        inv = self._inverse
        v = [Fraction(x) * self.den for x in v]
        return [sum(v[i] * inv[i][j] for i in range(self.dim)) for j in range(self.dim)]

    @cached_property
    def _inverse(self):
        return _frac_inverse(self.num)

    def contains(self, v) -> bool:
        return all(c.denominator == 1 for c in self.coords(v))

    def scaled(self, diag) -> IntLattice:
        """The lattice D L for the diagonal matrix D = diag(diag)."""
        d = [Fraction(x) for x in diag]
        return IntLattice([[x * dj for x, dj in zip(r, d)] for r in self.basis])

    def dual(self) -> IntLattice:
        """{u : u . m is an integer for every m in L}; basis rows are the inverse transpose."""
        inv = self._inverse  # num^{-1}; dual rows are columns of (num/den)^{-1}
        return IntLattice([[inv[i][j] * self.den for i in range(self.dim)] for j in range(self.dim)])

    @cached_property
    def lll(self):
        """(reduced integer rows, unimodular T) with reduced = T * num."""
        m = DomainMatrix([[ZZ(x) for x in r] for r in self.num], (self.dim, self.dim), ZZ)
        red, t = m.lll_transform()
        return [list(map(int, r)) for r in red.to_list()], [list(map(int, r)) for r in t.to_list()]

    def points_in_box(self, T, coefficients: bool = False):
        """All lattice points with sup-norm <= T.

        Returns integer numerators (divide by ``den``) as an (n, k) array,
        and the coefficient vectors in the stored basis when asked.
        """
        red, t = self.lll
        bound = math.floor(Fraction(T) * self.den)
        c = _box_coeffs(red, bound)
        pts = _matmul(c, red)
        if coefficients:
            return pts, _matmul(c, t)
        return pts


def _matmul(c: np.ndarray, rows) -> np.ndarray:
    m = np.array(rows, dtype=object)
    big = max((abs(x) for r in rows for x in r), default=0)
    cmax = int(np.abs(c).max()) if c.size else 0
    if big * max(cmax, 1) * len(rows) < 2**62:
        return c.astype(np.int64) @ m.astype(np.int64)
    return (c.astype(object) @ m)


def _box_coeffs(rows, bound: int) -> np.ndarray:
    """Integer c with |(c @ rows)_j| <= bound for all j.

    Outer coordinates are pruned with a Euclidean ball containing the box
    (Fincke-Pohst on float Gram-Schmidt data with slack); the innermost
    coordinate range is solved exactly in integers, so no filtering is
    needed afterwards.
    """
    k = len(rows)
    if bound < 0:
        return np.empty((0, k), dtype=np.int64)
    b = np.array(rows, dtype=float)
    bstar = b.copy()
    mu = np.zeros((k, k))
    for i in range(k):
        for j in range(i):
            mu[i, j] = b[i] @ bstar[j] / (bstar[j] @ bstar[j])
            bstar[i] -= mu[i, j] * bstar[j]
    Bn = np.einsum("ij,ij->i", bstar, bstar)
    R2 = k * float(bound) ** 2 * (1 + 1e-9) + 1e-6
    prefixes, los, his = [], [], []
    c = [0] * k
    row0 = rows[0]

    def inner(partial_vec):
        lo, hi = -math.inf, math.inf
        for j in range(k):
            a, r = row0[j], partial_vec[j]
            if a == 0:
                if abs(r) > bound:
                    return
                continue
            # |a c0 + r| <= bound
            x1, x2 = -bound - r, bound - r
            if a < 0:
                a, x1, x2 = -a, -x2, -x1
            lo = max(lo, -((-x1) // a))
            hi = min(hi, x2 // a)
        if lo <= hi:
            prefixes.append(c[1:])
            los.append(lo)
            his.append(hi)

    def rec(i, partial, vec):
        if i == 0:
            inner(vec)
            return
        center = -sum(c[j] * mu[j, i] for j in range(i + 1, k))
        rem = R2 - partial
        if rem < 0:
            return
        rad = math.sqrt(rem / Bn[i]) + 1e-9
        for ci in range(math.ceil(center - rad), math.floor(center + rad) + 1):
            c[i] = ci
            y = ci - center
            rec(i - 1, partial + y * y * Bn[i], [v + ci * w for v, w in zip(vec, rows[i])])
        c[i] = 0

    if k == 1:
        inner([0])
    else:
        rec(k - 1, 0.0, [0] * k)
    if not los:
        return np.empty((0, k), dtype=np.int64)
    lo = np.array(los, dtype=np.int64)
    hi = np.array(his, dtype=np.int64)
    counts = hi - lo + 1
    total = int(counts.sum())
    starts = np.repeat(lo - np.concatenate(([0], np.cumsum(counts)[:-1])), counts)
    c0 = starts + np.arange(total, dtype=np.int64)
    out = np.empty((total, k), dtype=np.int64)
    out[:, 0] = c0
    if k > 1:
        out[:, 1:] = np.repeat(np.array(prefixes, dtype=np.int64).reshape(-1, k - 1), counts, axis=0)
    return out


def lattice_det(L: IntLattice) -> Fraction:
    return L.det


def _linf(v) -> Fraction:
    return max(abs(Fraction(x)) for x in v)


def _vkey(v):
    # deterministic preference among vectors of equal sup-norm
    return (max(abs(x) for x in v), sum(abs(x) for x in v), tuple(-x for x in v))


def _primitive_sign(v):
    """Flip v so its first non-zero entry is positive."""
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


@dataclass(frozen=True)
class MinimalBasis:
    vectors: tuple  # tuples of Fractions, ordered by sup-norm
    norms: tuple  # successive minima
    domination: float  # max_i lambda_i * max{|c_i| : ||sum c_j g_j||_inf <= 1}

    @property
    def g(self):
        return self.vectors[0]

    @property
    def h(self):
        return self.vectors[1]


def _domination_constant(vectors, norms) -> float:
    k = len(vectors)
    a = np.array([[float(x) for x in v] for v in vectors]).T  # columns are the vectors
    A_ub = np.vstack([a, -a])
    b_ub = np.ones(2 * k)
    worst = 0.0
    for i in range(k):
        obj = np.zeros(k)
        obj[i] = -1.0
        res = linprog(obj, A_ub=A_ub, b_ub=b_ub, bounds=[(None, None)] * k, method="highs")
        if res.status == 0:
            worst = max(worst, -res.fun * float(norms[i]))
    return worst


def _min_2d(L: IntLattice):
    red, _ = L.lll
    r0 = min(max(abs(x) for x in r) for r in red)
    pts = L.points_in_box(Fraction(r0, L.den))
    best = None
    for p in pts.tolist():
        if any(p):
            p = _primitive_sign(p)
            if best is None or _vkey(p) < _vkey(best):
                best = p
    g = best
    # extend g to a basis (g, h0) of L and minimise ||a g + h0|| over a
    c = [int(x) for x in _coords_int(red, g)]
    _, s, t = _ext_gcd(c[0], c[1])
    h0 = [-t * red[0][j] + s * red[1][j] for j in range(2)]

    def f(a):
        return max(abs(a * g[0] + h0[0]), abs(a * g[1] + h0[1]))

    # any minimiser has |a| ||g|| - ||h0|| <= ||h0||
    reach = 2 * f(0) // max(abs(g[0]), abs(g[1])) + 2
    lo, hi = -reach, reach
    while hi - lo > 2:
        m1 = lo + (hi - lo) // 3
        m2 = hi - (hi - lo) // 3
        if f(m1) <= f(m2):
            hi = m2
        else:
            lo = m1
    cands = [_primitive_sign([a * g[0] + h0[0], a * g[1] + h0[1]]) for a in range(lo - 1, hi + 2)]
    h = min(cands, key=_vkey)
    lam2 = max(abs(x) for x in h)
    return g, h, lam2


def _coords_int(rows, v):
    inv = _frac_inverse(rows)
    k = len(rows)
    return [sum(Fraction(v[i]) * inv[i][j] for i in range(k)) for j in range(k)]


def _ext_gcd(a, b):
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


_BOX_POINT_LIMIT = 100_000


def _shortest_outside(rows, f) -> tuple[int, ...]:
    """Shortest v = c . rows (sup-norm) with f . v >= 1, by mixed-integer LP."""
    k = len(rows)
    R = np.array(rows, dtype=np.float64)
    fv = R @ np.array(f, dtype=np.float64)
    n = R.shape[1]
    # variables (c_1..c_k, t); |(c R)_j| <= t and f . (c R) >= 1
    A = np.zeros((2 * n + 1, k + 1))
    A[:n, :k], A[:n, k] = R.T, -1
    A[n : 2 * n, :k], A[n : 2 * n, k] = -R.T, -1
    A[2 * n, :k] = fv
    ub = np.r_[np.zeros(2 * n), np.inf]
    lb = np.r_[np.full(2 * n, -np.inf), 1]
    obj = np.r_[np.zeros(k), 1]
    res = milp(obj, constraints=LinearConstraint(A, lb, ub), integrality=np.r_[np.ones(k), 0],
               bounds=Bounds(np.r_[np.full(k, -np.inf), 0], np.inf), options={"mip_rel_gap": 0})
    if res.status != 0:
        raise ArithmeticError(f"integer program failed: {res.message}")
    c = [int(round(x)) for x in res.x[:k]]
    v = tuple(sum(ci * r[j] for ci, r in zip(c, rows)) for j in range(n))
    if sum(a * b for a, b in zip(f, v)) < 1:
        raise ArithmeticError("integer program returned an infeasible point")
    return v


def _minima_milp(rows, chosen) -> list:
    """Extend ``chosen`` greedily with shortest vectors outside its span."""
    rows = [tuple(int(x) for x in r) for r in rows]
    chosen = list(chosen)
    k = len(rows)
    while len(chosen) < k:
        if chosen:
            fs = []
            for n in Matrix(chosen).nullspace():
                m = math.lcm(*(int(sympy_fraction(x)[1]) for x in n))
                fs.append([int(x * m) for x in n])
        else:
            fs = [[int(j == i) for j in range(k)] for i in range(k)]
        best = min((_primitive_sign(_shortest_outside(rows, f)) for f in fs), key=_vkey)
        chosen.append(best)
    return chosen


def _sorted_candidates(pts) -> list:
    """Non-zero rows up to sign, deduplicated, in ``_vkey`` order."""
    if pts.dtype == object:
        return sorted({_primitive_sign(p) for p in pts.tolist() if any(p)}, key=_vkey)
    pts = pts[(pts != 0).any(axis=1)]
    first = pts[np.arange(len(pts)), (pts != 0).argmax(axis=1)]
    pts = np.unique(np.where((first < 0)[:, None], -pts, pts), axis=0)
    a = np.abs(pts)
    keys = [-pts[:, j] for j in range(pts.shape[1] - 1, -1, -1)] + [a.sum(axis=1), a.max(axis=1)]
    return [tuple(r) for r in pts[np.lexsort(keys)].tolist()]


def _greedy_independent(cand, k: int) -> list:
    """First vectors of ``cand`` (in order) that are linearly independent, up to k of them.

    Candidates are reduced against the chosen ones all at once by
    fraction-free elimination; a row that reduces to zero is dependent.
    """
    chosen = []
    red = np.array(cand, dtype=object).reshape(-1, k)
    alive = np.arange(len(cand))
    while alive.size and len(chosen) < k:
        i = alive[0]
        chosen.append(tuple(cand[i]))
        piv = red[i].copy()
        j = next(c for c in range(k) if piv[c] != 0)
        rest = alive[1:]
        rows = red[rest]
        rows = rows * piv[j] - rows[:, j : j + 1] * piv[None, :]
        red[rest] = rows
        alive = rest[(rows != 0).any(axis=1)]
    return chosen


def minimal_basis_linf(L: IntLattice) -> MinimalBasis:
    """Exact successive minima for the sup-norm, with vectors attaining them.

    Dimension 2 minimises along the coset of the shortest vector (a
    minimal pair is always a basis there).  Higher dimensions enumerate
    boxes of growing radius and pick independent vectors greedily by norm;
    once the box gets too full (very unequal minima) the remaining minima
    come from a mixed-integer program, one per direction orthogonal to the
    vectors found so far.
    """
    den = L.den
    if L.dim == 2:
        g, h, lam2 = _min_2d(L)
        vecs = [tuple(Fraction(x, den) for x in g), tuple(Fraction(x, den) for x in h)]
    else:
        red, _ = L.lll
        cap = max(max(abs(x) for x in r) for r in red)
        T = min(max(abs(x) for x in r) for r in red)
        while True:
            pts = L.points_in_box(Fraction(T, den))
            chosen = _greedy_independent(_sorted_candidates(pts), L.dim)
            if len(chosen) == L.dim:
                break
            if len(pts) << L.dim > _BOX_POINT_LIMIT:
                # the next box would be huge: finish with the integer program
                chosen = _minima_milp(red, chosen)
                break
            T = min(2 * T, cap)
        vecs = [tuple(Fraction(x, den) for x in p) for p in chosen]
    norms = tuple(_linf(v) for v in vecs)
    return MinimalBasis(tuple(vecs), norms, _domination_constant(vecs, norms))


def shortest_vector_linf(L: IntLattice):
    """A shortest non-zero vector for the sup-norm."""
    return _shortest_generic(L)


def _shortest_generic(L: IntLattice):
    red, _ = L.lll
    r0 = min(max(abs(x) for x in r) for r in red)
    pts = L.points_in_box(Fraction(r0, L.den))
    best = min((_primitive_sign(p) for p in pts.tolist() if any(p)), key=_vkey)
    return tuple(Fraction(x, L.den) for x in best)


def dual_vectors_in_unit_box(L: IntLattice) -> list[tuple[Fraction, ...]]:
    """Every u in the dual lattice with ||u||_inf <= 1, zero included."""
    D = L.dual()
    return [tuple(Fraction(x, D.den) for x in p) for p in D.points_in_box(1).tolist()]


@dataclass
class SiegelCover:
    """Slicing set H: every unit-box dual vector is orthogonal to some h in H."""

    lattice: IntLattice
    t0: Fraction | None  # None in the tiny-determinant branch
    num: np.ndarray  # H as integer numerators over lattice.den, one per sign pair
    coeffs: np.ndarray  # the same vectors in the lattice's stored basis
    det_root: float = field(init=False)

    def __post_init__(self):
        k = self.lattice.dim
        self.det_root = 1.0 + float(self.lattice.det) ** (1.0 / (k - 1))

    @property
    def vectors(self) -> list[tuple[Fraction, ...]]:
        d = self.lattice.den
        return [tuple(Fraction(int(x), d) for x in r) for r in self.num]

    @property
    def size(self) -> int:
        return len(self.num)

    @property
    def max_norm(self) -> Fraction:
        return Fraction(int(np.abs(self.num).max()), self.lattice.den)

    @property
    def size_ratio(self) -> float:
        return self.size / self.det_root

    @property
    def norm_ratio(self) -> float:
        return float(self.max_norm) / self.det_root


def _half(num, coeffs):
    """Drop zero and keep one of each +-pair (first non-zero coefficient positive)."""
    nz = coeffs != 0
    first = nz.argmax(axis=1)
    lead = coeffs[np.arange(len(coeffs)), first]
    keep = lead > 0
    return num[keep], coeffs[keep]


def count_in_box(L: IntLattice, t) -> int:
    return len(L.points_in_box(t))


def siegel_t0(L: IntLattice) -> Fraction:
    """Least t with N(t) > 1 + 2kt, N(t) the number of points of sup-norm <= t.

    N is a step function and the right side increases, so the least such t
    is one of the lattice norms; doubling finds an upper bound, then the
    sorted norms below it are scanned exactly.
    """
    k = L.dim
    t = _linf(_shortest_generic(L))
    while True:
        pts = L.points_in_box(t)
        if len(pts) > 1 + 2 * k * t:
            break
        t *= 2
    norms = np.sort(np.abs(pts).max(axis=1))
    # N(nu) = number of norms <= nu
    vals, counts = np.unique(norms, return_counts=True)
    cum = np.cumsum(counts)
    for nv, n in zip(vals.tolist(), cum.tolist()):
        nu = Fraction(int(nv), L.den)
        if n > 1 + 2 * k * nu:
            return nu
    raise AssertionError("doubling bound did not satisfy the counting condition")


def siegel_cover(L: IntLattice) -> SiegelCover:
    """Lattice vectors H such that every dual u with ||u||_inf <= 1 is orthogonal to one of them.

    Tiny determinant: the shortest vector m has k ||m||_inf < 1, so u . m,
    an integer of modulus < 1, vanishes.  Otherwise N(t0) exceeds the
    number of integers in [-k t0, k t0], two points of the t0-box share a
    value of u . m, and their difference lies in the 2 t0-box.
    """
    k = L.dim
    if k < 2:
        raise DomainError("siegel_cover needs dimension >= 2")
    if L.det < Fraction(1, k**k):
        m = _shortest_generic(L)
        num = np.array([[int(x * L.den) for x in m]], dtype=np.int64)
        coeffs = np.array([[int(c) for c in L.coords(m)]], dtype=np.int64)
        return SiegelCover(L, None, num, coeffs)
    t0 = siegel_t0(L)
    pts, coeffs = L.points_in_box(2 * t0, coefficients=True)
    num, coeffs = _half(pts, coeffs)
    return SiegelCover(L, t0, num, coeffs)


def verify_siegel_cover(cover: SiegelCover, chunk: int = 100_000) -> tuple[bool, int]:
    """Exhaustively check that every unit-box dual vector is orthogonal to some h.

    The dual lattice is stored on the exact dual basis of the primal basis,
    so with dual coefficients d and primal coefficients c the pairing is
    just d . c.  Only primitive d up to sign need checking.  Blocks of H
    (shortest first) peel off covered vectors.
    Returns (all covered, number of dual vectors in the box).
    """
    L = cover.lattice
    _, dco = L.dual().points_in_box(1, coefficients=True)
    total = len(dco)
    if L.dim == 2:
        return _verify_2d(cover.coeffs, dco), total
    dco = dco[np.gcd.reduce(np.abs(dco), axis=1) == 1]
    _, dco = _half(dco, dco)
    order = np.argsort(np.abs(cover.num).max(axis=1), kind="stable")
    bound = L.dim * int(np.abs(dco).max(initial=0)) * int(np.abs(cover.coeffs).max(initial=0))
    # float64 matmul is exact below 2^53 and much faster than int64 matmul
    dt = np.float64 if bound < 2**53 else np.int64
    if bound >= 2**62:
        raise OverflowError("coefficients too large for exact pairing")
    H = cover.coeffs[order].astype(dt)
    for lo in range(0, len(dco), chunk):
        rem = dco[lo : lo + chunk].astype(dt)
        b = 0
        while len(rem) and b < len(H):
            step = max(64, min(4096, 10_000_000 // len(rem)))
            prod = rem @ H[b : b + step].T
            rem = rem[~(prod == 0).any(axis=1)]
            b += step
        if len(rem):
            return False, total
    return True, total


def _directions(v: np.ndarray) -> np.ndarray:
    """Primitive representatives of the lines through the rows of v, packed into int64 keys."""
    g = np.gcd(v[:, 0], v[:, 1])
    g[g == 0] = 1
    v = v // g[:, None]
    flip = (v[:, 0] < 0) | ((v[:, 0] == 0) & (v[:, 1] < 0))
    v[flip] *= -1
    return np.unique(v[:, 0] * (1 << 31) + v[:, 1])


def _verify_2d(hco: np.ndarray, dco: np.ndarray) -> bool:
    # in the plane d . c = 0 iff c is parallel to (-d2, d1)
    dco = dco[(dco != 0).any(axis=1)]
    if np.abs(dco).max(initial=0) >= 1 << 30 or np.abs(hco).max(initial=0) >= 1 << 30:
        raise OverflowError("coefficients too large for packed direction keys")
    need = _directions(np.stack([-dco[:, 1], dco[:, 0]], axis=1))
    return bool(np.isin(need, _directions(hco)).all())


# quadratic congruences


def _eval_q(Q, u, v):
    a, b, c = Q
    return a * u * u + b * u * v + c * v * v


def _transform_q(Q, m):
    """Q(s b1 + t b2) where b1, b2 are the rows of m."""
    (p, q), (r, s) = m
    a, b, c = Q
    return (
        _eval_q(Q, p, q),
        2 * a * p * r + b * (p * s + q * r) + 2 * c * q * s,
        _eval_q(Q, r, s),
    )


def _proj_roots(Q, p):
    """Projective roots of Q mod p, as sublattice bases {(u, v) = lambda * root mod p}."""
    out = []
    if _eval_q(Q, 1, 0) % p == 0:
        out.append(((1, 0), (0, p)))
    for x in range(p):
        if _eval_q(Q, x, 1) % p == 0:
            out.append(((p, 0), (x, 1)))
    return out


def _compose(m, n):
    """Rows of n expressed through the basis rows of m."""
    return tuple(
        tuple(n[i][0] * m[0][j] + n[i][1] * m[1][j] for j in range(2)) for i in range(2)
    )


def omega_decompose(Q, r: int) -> list[IntLattice]:
    """Lattices whose union is exactly {(u, v) in Z^2 : r | Q(u, v)}.

    One prime of r at a time: if Q vanishes mod p keep Z^2 and divide Q by
    p; if Q has no projective root mod p only pZ^2 remains; otherwise each
    root line is a lattice on which Q re-expands as p times a new form.  At
    most two lattices per prime factor, so N <= 2^Omega(r).
    """
    if r < 1:
        raise DomainError("r must be >= 1")
    Q = tuple(int(x) for x in Q)
    out = []

    def go(Q, primes, m):
        if not primes or all(x == 0 for x in Q):
            out.append(m)
            return
        p, rest = primes[0], primes[1:]
        if all(x % p == 0 for x in Q):
            go(tuple(x // p for x in Q), rest, m)
            return
        roots = _proj_roots(Q, p)
        if not roots:
            # only pZ^2; Q(p s, p t) = p^2 Q(s, t) absorbs one more p if present
            if rest and rest[0] == p:
                rest = rest[1:]
            go(Q, rest, _compose(m, ((p, 0), (0, p))))
            return
        for n in roots:
            Qn = _transform_q(Q, n)
            assert all(x % p == 0 for x in Qn)
            go(tuple(x // p for x in Qn), rest, _compose(m, n))

    primes = [p for p, e in factorize(r).factors for _ in range(e)]
    go(Q, primes, ((1, 0), (0, 1)))
    seen, result = set(), []
    for m in out:
        L = IntLattice(m)
        key = L.canonical()
        if key not in seen:
            seen.add(key)
            result.append(L)
    return result


def residue_mask(L: IntLattice, r: int) -> np.ndarray:
    """Boolean r x r grid: (u, v) mod r lies in L (L must contain r Z^2)."""
    if L.den != 1:
        raise DomainError("residue_mask needs an integer lattice")
    (a, b), (c, d) = L.num
    det = a * d - b * c
    u = np.arange(r, dtype=np.int64)[:, None]
    v = np.arange(r, dtype=np.int64)[None, :]
    # (u, v) = s (a, b) + t (c, d)  <=>  adj * (u, v) = 0 mod det
    s = (u * d - v * c) % abs(det)
    t = (v * a - u * b) % abs(det)
    return (s == 0) & (t == 0)


def quadratic_residue_mask(Q, r: int) -> np.ndarray:
    u = np.arange(r, dtype=np.int64)[:, None]
    v = np.arange(r, dtype=np.int64)[None, :]
    a, b, c = (x % r for x in Q)
    return (a * u % r * u + b * u % r * v + c * v % r * v) % r == 0


# ellipses


@dataclass(frozen=True)
class Ellipse:
    """{(x, y) : a x^2 + b x y + c y^2 <= 1} for a positive-definite form."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in "abc":
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.a <= 0 or 4 * self.a * self.c - self.b**2 <= 0:
            raise DomainError("quadratic form is not positive definite")

    @classmethod
    def disk(cls, radius):
        r2 = Fraction(radius) ** 2
        return cls(1 / r2, 0, 1 / r2)

    @property
    def area(self) -> float:
        return math.pi / math.sqrt(float(self.a * self.c - self.b**2 / 4))

    def contains(self, x, y) -> bool:
        return self.a * x * x + self.b * x * y + self.c * y * y <= 1


def primitive_points(L: IntLattice, E: Ellipse):
    """Points of L inside E whose coordinates are coprime."""
    if L.den != 1:
        raise DomainError("primitive_points needs an integer lattice")
    det = E.a * E.c - E.b**2 / 4
    # extent of the ellipse along each axis: sqrt(c/det) and sqrt(a/det)
    T = math.isqrt(math.ceil(max(E.c, E.a) / det)) + 1
    pts = L.points_in_box(T)
    out = sorted(
        (x, y)
        for x, y in pts.tolist()
        if math.gcd(x, y) == 1 and E.contains(x, y)
    )
    return len(out), out

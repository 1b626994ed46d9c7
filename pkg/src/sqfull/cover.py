"""Covering the solutions of one congruence class by two-dimensional lattices.

Solutions with y3 = q > 1 are sorted by the class kappa mod q defined by
x1 y1 + kappa x2 y2 = 0 (mod q).  The products w = (x1y1, x1y2, x2y1, x2y2)
lie in the dual of an explicit lattice, so a short slicing set puts every
point on a hyperplane t . w = 0.  Each hyperplane either pins down
(x1, x2) or (y1, y2), or splits into lines, and the lines are cut down to
sublattices on which the congruences below all hold.

Congruences for a point (x1, x2, y1, y2) and class (q, kappa):

    c1: a2 x1 = kappa^3 a1 x2 and kappa^2 a1 y1 + a2 y2 = 0          (mod q)
    c2: kappa^2 a1 x2 y1 + a2 x2 y2 = 0                               (mod q)
    c3: 2 a2 x1 y1 + kappa^3 a1 x2 y1 + 3 kappa a2 x2 y2 = 0          (mod q^2)
    c4: 5 k^2 a1 a2 x1 y1 + a2^2 x1 y2 + k^5 a1^2 x2 y1 + 5 k^3 a1 a2 x2 y2 = 0   (mod q^3)
    c5: 18 (a1 x1^2 y1^3 + a2 x2^2 y2^3) = 0                          (mod q^3 r^2)

with r = gcd(y1, y2, q).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from .arith import DomainError, divisors, factorize, is_squarefree, roots_mod_cubed
from .forms import form_add, form_eval, form_is_zero, form_mul, form_pow, form_scale
from .lattice import IntLattice, hnf_rows, omega_decompose, siegel_cover
from .squarefull import CoeffTriple, DyadicBox, Solution


class DegenerateModulusError(DomainError):
    """q = y3 = 1: the congruence machinery has nothing to work with."""


@dataclass(frozen=True, order=True)
class CongruenceClass:
    q: int
    kappa: int

    def __post_init__(self):
        if self.q < 1 or not is_squarefree(self.q):
            raise DomainError(f"q = {self.q} must be a positive square-free integer")
        if not 0 <= self.kappa < self.q:
            raise DomainError(f"kappa = {self.kappa} must lie in [0, q)")
        if math.gcd(self.kappa, self.q) != 1:
            raise DomainError(f"kappa = {self.kappa} is not invertible mod {self.q}")

    def check_coeffs(self, a: CoeffTriple):
        if math.gcd(self.q, a.a1 * a.a2) != 1:
            raise DomainError(f"q = {self.q} shares a factor with a1 a2")


def kappa_of(s: Solution) -> CongruenceClass:
    """The class (q, kappa) with q = y3 and x1 y1 + kappa x2 y2 = 0 mod q."""
    bad = s.violations()
    if bad:
        raise DomainError(f"not a valid solution: {', '.join(bad)}")
    q = s.y[2]
    if q == 1:
        raise DegenerateModulusError("y3 = 1 gives the trivial modulus")
    x1, x2, _ = s.x
    y1, y2, _ = s.y
    kappa = -x1 * y1 * pow(x2 * y2, -1, q) % q
    return CongruenceClass(q, kappa)


def congruence_sums(p, c: CongruenceClass, a: CoeffTriple) -> dict:
    """The integer left-hand sides of c1..c5 (c1 has two parts)."""
    x1, x2, y1, y2 = p
    a1, a2 = a.a1, a.a2
    k = c.kappa
    return {
        "c1a": a2 * x1 - k**3 * a1 * x2,
        "c1b": k**2 * a1 * y1 + a2 * y2,
        "c2": k**2 * a1 * x2 * y1 + a2 * x2 * y2,
        "c3": 2 * a2 * x1 * y1 + k**3 * a1 * x2 * y1 + 3 * k * a2 * x2 * y2,
        "c4": 5 * k**2 * a1 * a2 * x1 * y1 + a2**2 * x1 * y2
        + k**5 * a1**2 * x2 * y1 + 5 * k**3 * a1 * a2 * x2 * y2,
        "c5": 18 * (a1 * x1**2 * y1**3 + a2 * x2**2 * y2**3),
    }


def verify_congruences(p, c: CongruenceClass, a: CoeffTriple) -> dict[str, bool]:
    """Evaluate c1 (mod q), c2 (mod q), c3 (mod q^2), c4 (mod q^3), c5 (mod q^3 r^2)."""
    q = c.q
    s = congruence_sums(p, c, a)
    r = math.gcd(math.gcd(p[2], p[3]), q)
    return {
        "c1": s["c1a"] % q == 0 and s["c1b"] % q == 0,
        "c2": s["c2"] % q == 0,
        "c3": s["c3"] % q**2 == 0,
        "c4": s["c4"] % q**3 == 0,
        "c5": s["c5"] % (q**3 * r * r) == 0,
    }


def lambda_generators(c: CongruenceClass, a: CoeffTriple) -> list[tuple[Fraction, ...]]:
    q, k = c.q, c.kappa
    if c.q < 2:
        raise DegenerateModulusError("lambda lattice needs q > 1")
    c.check_coeffs(a)
    a1 = a.a1
    ab = pow(a.a2, -1, q**3)  # inverse of a2 in [1, q^3)
    F = Fraction
    return [
        (F(0), F(0), F(1), F(0)),
        (F(0), F(0), F(k**2 * a1 * ab, q), F(1, q)),
        (F(2, q**2), F(0), F(k**3 * a1 * ab, q**2), F(3 * k, q**2)),
        (F(5 * k**2 * a1 * ab, q**3), F(1, q**3), F(k**5 * a1**2 * ab**2, q**3), F(5 * k**3 * a1 * ab, q**3)),
    ]


def lambda_lattice(c: CongruenceClass, a: CoeffTriple) -> IntLattice:
    """The lattice whose dual contains w = (x1y1, x1y2, x2y1, x2y2) for every point of the class."""
    if c.kappa == 0 or math.gcd(c.kappa, c.q) != 1:
        raise DomainError("kappa must be invertible mod q")
    return IntLattice(lambda_generators(c, a))


def w_vector(p) -> tuple[int, int, int, int]:
    x1, x2, y1, y2 = p
    return (x1 * y1, x1 * y2, x2 * y1, x2 * y2)


# linear forms in (u, v) are pairs (a, b) meaning a u + b v


def _sub_congruence(a: int, b: int, m: int):
    """Basis rows of {(u, v) : a u + b v = 0 mod m}."""
    a, b = a % m, b % m
    g1 = math.gcd(a, m)
    m1 = m // g1
    v0 = g1 // math.gcd(b, g1)
    # for v = v0 pick u with (a/g1) u = -(b v0 / g1) mod m1
    u0 = (-(b * v0 // g1) * pow(a // g1, -1, m1)) % m1 if m1 > 1 else 0
    return ((m1, 0), (u0, v0))


def _compose(m, n):
    """Rows of n (in the coordinates of basis m) mapped to the outer coordinates."""
    return tuple(tuple(sum(n[i][l] * m[l][j] for l in range(2)) for j in range(len(m[0]))) for i in range(2))


def _forms_on(basis4):
    """Linear forms x1, x2, y1, y2 in (u, v) for a lattice with generator rows g, h."""
    g, h = basis4
    return [(g[i], h[i]) for i in range(4)]


def _lin(f, c):
    return (f[0] * c, f[1] * c)


def _lin_add(*fs):
    return (sum(f[0] for f in fs), sum(f[1] for f in fs))


def _quad(f, g):
    """Product of two linear forms as a binary quadratic (A, B, C)."""
    return form_mul(f, g)


def _c3_form(forms, c, a):
    x1, x2, y1, y2 = forms
    k, a1, a2 = c.kappa, a.a1, a.a2
    return form_add(
        form_add(form_scale(_quad(x1, y1), 2 * a2), form_scale(_quad(x2, y1), k**3 * a1)),
        form_scale(_quad(x2, y2), 3 * k * a2),
    )


def _c4_form(forms, c, a):
    x1, x2, y1, y2 = forms
    k, a1, a2 = c.kappa, a.a1, a.a2
    out = form_scale(_quad(x1, y1), 5 * k**2 * a1 * a2)
    out = form_add(out, form_scale(_quad(x1, y2), a2**2))
    out = form_add(out, form_scale(_quad(x2, y1), k**5 * a1**2))
    return form_add(out, form_scale(_quad(x2, y2), 5 * k**3 * a1 * a2))


def quintic_on(forms, a: CoeffTriple):
    """a1 x1^2 y1^3 + a2 x2^2 y2^3 as a binary quintic in (u, v)."""
    x1, x2, y1, y2 = forms
    return form_add(
        form_scale(form_mul(form_pow(x1, 2), form_pow(y1, 3)), a.a1),
        form_scale(form_mul(form_pow(x2, 2), form_pow(y2, 3)), a.a2),
    )


@dataclass(frozen=True)
class CoverLattice:
    """Rank-2 lattice in Z^4, coordinates (x1, x2, y1, y2)."""

    gens: tuple[tuple[int, ...], tuple[int, ...]]
    cls: CongruenceClass
    t: tuple[int, int, int, int]
    h: int  # positive divisor of t1 t4 - t2 t3

    @property
    def key(self):
        return hnf_rows(self.gens)

    def point(self, u, v):
        g, h = self.gens
        return tuple(u * a + v * b for a, b in zip(g, h))

    def contains(self, p) -> bool:
        (r1, r2) = self.key
        # echelon rows: pivot of r1 is left of pivot of r2
        j1 = next(i for i, x in enumerate(r1) if x)
        if p[j1] % r1[j1]:
            return False
        c1 = p[j1] // r1[j1]
        rest = [x - c1 * y for x, y in zip(p, r1)]
        j2 = next(i for i, x in enumerate(r2) if x)
        if any(rest[:j2]) or rest[j2] % r2[j2]:
            return False
        c2 = rest[j2] // r2[j2]
        return all(x == c2 * y for x, y in zip(rest, r2))

    def quintic(self, a: CoeffTriple):
        return quintic_on(_forms_on(self.gens), a)


@dataclass(frozen=True)
class S0Piece:
    """Points with (x1, x2) fixed and y1 = lambda y2 mod q^3 (kind 'x'), or
    (y1, y2) fixed and x1 = lambda x2 mod q^3 (kind 'y')."""

    kind: str
    pair: tuple[int, int]
    modulus: int
    roots: tuple[int, ...]

    def contains(self, p) -> bool:
        x1, x2, y1, y2 = p
        if self.kind == "x":
            if (x1, x2) != self.pair:
                return False
            return any((y1 - lam * y2) % self.modulus == 0 for lam in self.roots)
        if (y1, y2) != self.pair:
            return False
        return any((x1 - lam * x2) % self.modulus == 0 for lam in self.roots)


@dataclass
class Cover:
    cls: CongruenceClass
    s0: list[S0Piece] = field(default_factory=list)
    lattices: list[CoverLattice] = field(default_factory=list)
    h_size: int = 0  # slicing vectors from the Siegel step
    t_kept: int = 0  # after discarding hyperplanes that miss the box

    def __iter__(self):
        # unpacks as (s0, lattices)
        yield self.s0
        yield self.lattices

    def contains(self, p) -> bool:
        return any(s.contains(p) for s in self.s0) or any(m.contains(p) for m in self.lattices)


def _primitive(v):
    g = math.gcd(*v)
    v = [x // g for x in v]
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def _box_meets_hyperplane(t: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    # t . w over the box lo <= w <= hi spans [sum min, sum max]
    a = t * lo
    b = t * hi
    mn = np.minimum(a, b).sum(axis=1)
    mx = np.maximum(a, b).sum(axis=1)
    return (mn <= 0) & (mx >= 0)


def _s0_piece(t, c: CongruenceClass, a: CoeffTriple, box: DyadicBox):
    t1, t2, t3, t4 = t
    # T = [[t1, t2], [t3, t4]] has rank one: T = alpha beta^T, and t . w = (alpha . x)(beta . y)
    rows = [r for r in ((t1, t2), (t3, t4)) if any(r)]
    beta = _primitive(rows[0])
    cols = [col for col in ((t1, t3), (t2, t4)) if any(col)]
    alpha = _primitive(cols[0])
    q3 = c.q**3
    qf = factorize(c.q).primes
    pieces = []
    # alpha . x = 0: (x1, x2) proportional to (alpha2, -alpha1), both positive
    xs = (alpha[1], -alpha[0])
    if xs[0] < 0 or (xs[0] == 0 and xs[1] < 0):
        xs = (-xs[0], -xs[1])
    (xr1, xr2), (xr3, xr4) = box.ranges()[0][0], box.ranges()[1][0]
    if xs[0] > 0 and xs[1] > 0 and xr1 <= xs[0] <= xr2 and xr3 <= xs[1] <= xr4:
        x1, x2 = xs
        if math.gcd(x1 * x2, c.q) == 1:
            # (y1 / y2)^3 = -a2 x2^2 / (a1 x1^2) mod q^3
            rhs = -a.a2 * x2 * x2 * pow(a.a1 * x1 * x1, -1, q3) % q3
            roots = roots_mod_cubed(rhs, 3, qf)
            if roots:
                pieces.append(S0Piece("x", xs, q3, tuple(roots)))
    ys = (beta[1], -beta[0])
    if ys[0] < 0 or (ys[0] == 0 and ys[1] < 0):
        ys = (-ys[0], -ys[1])
    (yr1, yr2), (yr3, yr4) = box.ranges()[0][1], box.ranges()[1][1]
    if ys[0] > 0 and ys[1] > 0 and yr1 <= ys[0] <= yr2 and yr3 <= ys[1] <= yr4:
        y1, y2 = ys
        if math.gcd(y1 * y2, c.q) == 1:
            # (x1 / x2)^2 = -a2 y2^3 / (a1 y1^3) mod q^3
            rhs = -a.a2 * y2**3 * pow(a.a1 * y1**3, -1, q3) % q3
            roots = roots_mod_cubed(rhs, 2, qf)
            if roots:
                pieces.append(S0Piece("y", ys, q3, tuple(roots)))
    return pieces


def _line_lattices(t, h, c: CongruenceClass, a: CoeffTriple):
    """Sublattices of the line h y1 = -t2 x1 - t4 x2, h y2 = t1 x1 + t3 x2 on which c1..c4 hold."""
    t1, t2, t3, t4 = t
    q = c.q
    # integer points: (x1, x2) with h | t2 x1 + t4 x2 and h | t1 x1 + t3 x2
    m = ((1, 0), (0, 1))
    for f in ((t2, t4), (t1, t3)):
        fx = (f[0] * m[0][0] + f[1] * m[0][1], f[0] * m[1][0] + f[1] * m[1][1])
        m = _compose(m, _sub_congruence(fx[0], fx[1], abs(h)))

    def lift(mb):
        # rows (x1, x2) -> (x1, x2, y1, y2)
        out = []
        for x1, x2 in mb:
            y1, r1 = divmod(-t2 * x1 - t4 * x2, h)
            y2, r2 = divmod(t1 * x1 + t3 * x2, h)
            assert r1 == 0 and r2 == 0
            out.append((x1, x2, y1, y2))
        return tuple(out)

    base = lift(m)
    k, a1, a2 = c.kappa, a.a1, a.a2
    # c1 as two linear congruences mod q
    for coef in ((a2, -k**3 * a1, 0, 0), (0, 0, k**2 * a1, a2)):
        fx = _forms_on(base)
        lin = _lin_add(*(_lin(f, cc) for f, cc in zip(fx, coef)))
        sub = _sub_congruence(lin[0], lin[1], q)
        base = _compose(base, sub)
    out = []
    for L3 in omega_decompose(_c3_form(_forms_on(base), c, a), q * q):
        b3 = _compose(base, L3.num)
        for L4 in omega_decompose(_c4_form(_forms_on(b3), c, a), q**3):
            b4 = _compose(b3, L4.num)
            if form_is_zero(quintic_on(_forms_on(b4), a)):
                continue
            out.append(CoverLattice(b4, c, tuple(t), h))
    return out


def _h_window(t, box: DyadicBox):
    """Range of h compatible with y2 = (t1 x1 + t3 x2) / h inside the box."""
    t1, t2, t3, t4 = t
    (xl1, xh1), (yl1, yh1) = box.ranges()[0]
    (xl2, xh2), (yl2, yh2) = box.ranges()[1]

    def span(c1, c2):
        vals = [c1 * x1 + c2 * x2 for x1 in (xl1, xh1) for x2 in (xl2, xh2)]
        return min(vals), max(vals)

    lo2, hi2 = span(t1, t3)
    lo1, hi1 = span(-t2, -t4)
    # h = n2 / y2 = n1 / y1 with y_i in [yl_i, yh_i]
    cands = []
    for (lo, hi), (yl, yh) in (((lo2, hi2), (yl2, yh2)), ((lo1, hi1), (yl1, yh1))):
        vals = [Fraction(n, y) for n in (lo, hi) for y in (yl, yh)]
        cands.append((min(vals), max(vals)))
    return max(cands[0][0], cands[1][0]), min(cands[0][1], cands[1][1])


def extract_cover(c: CongruenceClass, a: CoeffTriple, box: DyadicBox) -> Cover:
    """S0 pieces and lattices covering every point of the class inside the box.

    Hyperplanes t . w = 0 that miss the box of possible w are dropped, and
    only divisors h of Delta compatible with the box ranges are used; both
    cuts only remove lines with no point of the class in the box.
    """
    if c.q < 2:
        raise DegenerateModulusError("the cover needs q > 1")
    c.check_coeffs(a)
    X1, X2 = box.X[0], box.X[1]
    Y1, Y2 = box.Y[0], box.Y[1]
    E = (X1 * Y1, X1 * Y2, X2 * Y1, X2 * Y2)
    lam = lambda_lattice(c, a)
    H = siegel_cover(lam.scaled(E))
    # E^-1 h = sum coeffs_i g_i in Lambda; q^3 times it is an integer vector
    gens = np.array([[int(x * c.q**3) for x in g] for g in lam.basis], dtype=object)
    tv = (H.coeffs.astype(object) @ gens)
    # w_i lies in [E_i / 4, E_i]; scale by 4 to stay in integers
    lo = np.array(E, dtype=object)
    hi = 4 * lo
    keep = _box_meets_hyperplane(tv, lo, hi)
    tv = tv[keep]
    out = Cover(c, h_size=H.size)
    seen_t, seen_l, seen_s = set(), set(), set()
    for row in tv.tolist():
        t = _primitive([int(x) for x in row])
        if t in seen_t:
            continue
        seen_t.add(t)
        t1, t2, t3, t4 = t
        delta = t1 * t4 - t2 * t3
        if delta == 0:
            for piece in _s0_piece(t, c, a, box):
                if piece not in seen_s:
                    seen_s.add(piece)
                    out.s0.append(piece)
            continue
        hlo, hhi = _h_window(t, box)
        for d in divisors(delta):
            for sgn in (1, -1):
                if not hlo <= sgn * d <= hhi:
                    continue
                # (t, -d) and (-t, d) describe the same line; keep h positive
                st = tuple(sgn * x for x in t)
                for M in _line_lattices(st, d, c, a):
                    if M.key not in seen_l:
                        seen_l.add(M.key)
                        out.lattices.append(M)
    out.t_kept = len(seen_t)
    return out


def c1_c4_lattice(x1: int, x2: int, c: CongruenceClass, a: CoeffTriple):
    """Basis of the (y1, y2) with c1..c4 for fixed x1, x2 (None when c1 fails on x).

    With x fixed, the y-parts of c1, c3 and c4 are linear congruences and
    c2 follows from c1.
    """
    q, k, a1, a2 = c.q, c.kappa, a.a1, a.a2
    if (a2 * x1 - k**3 * a1 * x2) % q:
        return None
    m = ((1, 0), (0, 1))
    rows = (
        (k**2 * a1, a2, q),
        (2 * a2 * x1 + k**3 * a1 * x2, 3 * k * a2 * x2, q * q),
        (5 * k**2 * a1 * a2 * x1 + k**5 * a1**2 * x2, a2**2 * x1 + 5 * k**3 * a1 * a2 * x2, q**3),
    )
    for f1, f2, mod in rows:
        fx = (f1 * m[0][0] + f2 * m[0][1], f1 * m[1][0] + f2 * m[1][1])
        m = _compose(m, _sub_congruence(fx[0], fx[1], mod))
    return m


def random_c1_c4_point(rng, c: CongruenceClass, a: CoeffTriple, size: int = 10**4):
    """A random (x1, x2, y1, y2) satisfying c1..c4, for exercising the converse c5."""
    q, k = c.q, c.kappa
    x2 = rng.randint(-size, size)
    # x1 = kappa^3 a1 x2 / a2 mod q
    x1 = k**3 * a.a1 * x2 * pow(a.a2, -1, q) % q + q * rng.randint(-size, size)
    (b11, b12), (b21, b22) = c1_c4_lattice(x1, x2, c, a)
    s, t = rng.randint(-size, size), rng.randint(-size, size)
    return (x1, x2, s * b11 + t * b21, s * b12 + t * b22)


# exceptional lines


@dataclass(frozen=True)
class ExceptionalWitness:
    g: Fraction
    nu: Fraction

    def __post_init__(self):
        object.__setattr__(self, "g", Fraction(self.g))
        object.__setattr__(self, "nu", Fraction(self.nu))
        if self.g == 0 or self.nu == 0:
            raise DomainError("g and nu must be non-zero")

    def linear_forms(self, M1, M2):
        """L1 = nu (4 M1 - 5 g^2 M2) and L2 = nu g^3 (5 M1 - 4 g^2 M2)."""
        g, nu = self.g, self.nu
        L1 = tuple(nu * (4 * m1 - 5 * g * g * m2) for m1, m2 in zip(M1, M2))
        L2 = tuple(nu * g**3 * (5 * m1 - 4 * g * g * m2) for m1, m2 in zip(M1, M2))
        return L1, L2


def _express(L, M1, M2):
    det = M1[0] * M2[1] - M1[1] * M2[0]
    a = Fraction(L[0] * M2[1] - L[1] * M2[0], det)
    b = Fraction(M1[0] * L[1] - M1[1] * L[0], det)
    return a, b


def detect_exceptional(L1, L2, M1, M2) -> ExceptionalWitness | None:
    """(g, nu) with L1 = nu(4M1 - 5g^2 M2), L2 = nu g^3 (5M1 - 4g^2 M2), if any."""
    if M1[0] * M2[1] - M1[1] * M2[0] == 0:
        raise DomainError("M1 and M2 are proportional")
    a, b = _express(L1, M1, M2)
    c, d = _express(L2, M1, M2)
    if a == 0 or b == 0:
        return None
    nu = a / 4
    g = -c / b
    if g == 0:
        return None
    if (b, c, d) == (-5 * nu * g**2, 5 * nu * g**3, -4 * nu * g**5):
        return ExceptionalWitness(g, nu)
    return None


def exceptional_factor_check(w: ExceptionalWitness, M1, M2, L1=None, L2=None) -> bool:
    """F = L1^2 M1^3 + L2^2 M2^3 equals nu^2 (4M1^2 - 7g^2 M1M2 + 4g^4 M2^2)^2 (M1 + g^2 M2)."""
    g, nu = w.g, w.nu
    if L1 is None or L2 is None:
        L1, L2 = w.linear_forms(M1, M2)
    F = form_add(
        form_mul(form_pow(L1, 2), form_pow(M1, 3)),
        form_mul(form_pow(L2, 2), form_pow(M2, 3)),
    )
    Q = form_add(
        form_add(form_scale(form_mul(M1, M1), 4), form_scale(form_mul(M1, M2), -7 * g * g)),
        form_scale(form_mul(M2, M2), 4 * g**4),
    )
    lin = form_add(tuple(M1), form_scale(M2, g * g))
    rhs = form_scale(form_mul(form_pow(Q, 2), lin), nu * nu)
    return tuple(Fraction(x) for x in F) == tuple(Fraction(x) for x in rhs)


# the awkward set


def _awkward_ok(p, c: CongruenceClass, a: CoeffTriple) -> bool:
    x1, x2, y1, y2 = p
    return (
        (a.a2 * x1 - c.kappa**3 * a.a1 * x2) % c.q == 0
        and a.a1 * x1 * x1 * y1**3 + a.a2 * x2 * x2 * y2**3 == 0
        and (x1, x2) != (0, 0)
        and (y1, y2) != (0, 0)
    )


def check_awkward(c: CongruenceClass, a: CoeffTriple, box: DyadicBox, R) -> tuple[int, int, int, int] | None:
    """A short vector on which the quintic vanishes and a2 x1 = kappa^3 a1 x2 mod q, if one exists.

    Shortness means |x_i| <= R X_i and |y_i| <= R Y_i.  Non-degenerate
    solutions of a1 x1^2 y1^3 = -a2 x2^2 y2^3 have a2 x1 = j u1^3,
    a1 x2 = j u2^3, a1 y1 = -s u2^2 and a2 y2 = s u1^2 with gcd(u1, u2) = 1;
    the degenerate ones have x1 = y2 = 0 or x2 = y1 = 0.  The congruence
    does not involve s, so the smallest admissible s is enough.
    """
    R = Fraction(R)
    if R <= 0:
        raise DomainError("R must be positive")
    a1, a2, q, k = a.a1, a.a2, c.q, c.kappa
    bx1, bx2 = math.floor(R * box.X[0]), math.floor(R * box.X[1])
    by1, by2 = math.floor(R * box.Y[0]), math.floor(R * box.Y[1])
    found = []
    # degenerate: x1 = y2 = 0 forces q | x2; x2 = y1 = 0 forces q | a2 x1, so q | x1
    if q <= bx2 and by1 >= 1:
        found.append((0, q, 1, 0))
    if q <= bx1 and by2 >= 1:
        found.append((q, 0, 0, 1))
    umax1 = _icbrt_floor(abs(a2) * bx1)
    umax2 = _icbrt_floor(abs(a1) * bx2)
    for u1 in range(-umax1, umax1 + 1):
        for u2 in range(-umax2, umax2 + 1):
            if u1 == 0 or u2 == 0 or math.gcd(u1, u2) != 1:
                continue
            s0 = math.lcm(abs(a1) // math.gcd(a1, u2 * u2), abs(a2) // math.gcd(a2, u1 * u1))
            if s0 * u2 * u2 // abs(a1) > by1 or s0 * u1 * u1 // abs(a2) > by2:
                continue
            j0 = math.lcm(abs(a2) // math.gcd(a2, u1**3), abs(a1) // math.gcd(a1, u2**3))
            jmax = min(abs(a2) * bx1 // abs(u1) ** 3, abs(a1) * bx2 // abs(u2) ** 3)
            for j in range(j0, jmax + 1, j0):
                if (j * (u1**3 - k**3 * u2**3)) % q:
                    continue
                for jj in (j, -j):
                    p = (jj * u1**3 // a2, jj * u2**3 // a1, -s0 * u2 * u2 // a1, s0 * u1 * u1 // a2)
                    if _awkward_ok(p, c, a):
                        found.append(p)
                break
    if not found:
        return None
    return min(found, key=lambda p: (max(abs(x) for x in p), p))


def _icbrt_floor(n: int) -> int:
    r = round(n ** (1 / 3)) if n > 0 else 0
    while r**3 > n:
        r -= 1
    while (r + 1) ** 3 <= n:
        r += 1
    return r


def check_awkward_bruteforce(c: CongruenceClass, a: CoeffTriple, box: DyadicBox, R):
    R = Fraction(R)
    bx1, bx2 = math.floor(R * box.X[0]), math.floor(R * box.X[1])
    by1, by2 = math.floor(R * box.Y[0]), math.floor(R * box.Y[1])
    for p in product(range(-bx1, bx1 + 1), range(-bx2, bx2 + 1), range(-by1, by1 + 1), range(-by2, by2 + 1)):
        if _awkward_ok(p, c, a):
            return p
    return None

import itertools
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from sqfull.arith import DomainError
from sqfull.checks import random_lattice
from sqfull.lattice import (
    Ellipse,
    IntLattice,
    _frac_det,
    _minima_milp,
    dual_vectors_in_unit_box,
    lattice_det,
    minimal_basis_linf,
    omega_decompose,
    primitive_points,
    quadratic_residue_mask,
    residue_mask,
    shortest_vector_linf,
    siegel_cover,
    verify_siegel_cover,
)


def linf(v):
    return max(abs(x) for x in v)


def test_det_examples():
    assert lattice_det(IntLattice([[2, 0], [0, 3]])) == 6
    assert lattice_det(IntLattice([[2, 1], [1, 1]])) == 1
    with pytest.raises(DomainError):
        IntLattice([[1, 1], [2, 2]])
    L = IntLattice([[1, 0], [0, 1]], den=3)
    assert lattice_det(L) == Fraction(1, 9)
    assert IntLattice.from_columns([[2, 0], [1, 3]]).det == 6


def test_dual_and_contains():
    L = IntLattice([[1, 2], [0, 5]])
    D = L.dual()
    for b in L.basis:
        for d in D.basis:
            assert sum(x * y for x, y in zip(b, d)).denominator == 1
    assert D.det == Fraction(1, 5)
    assert L.contains((2, -1)) and not L.contains((1, 0))


def brute_minima_2d(L, T=12):
    # p = c . rows  <=>  p . adj(rows) = 0 mod det, checked on a whole grid at once
    (a, b), (c, d) = L.num
    det = a * d - b * c
    g = np.array(list(itertools.product(range(-T, T + 1), repeat=2)), dtype=np.int64)
    ok = ((g[:, 0] * d - g[:, 1] * c) % det == 0) & ((-g[:, 0] * b + g[:, 1] * a) % det == 0)
    pts = g[ok & (np.abs(g).max(axis=1) > 0)]
    norms = np.abs(pts).max(axis=1)
    order = np.argsort(norms, kind="stable")
    pts, norms = pts[order], norms[order]
    v = pts[0]
    indep = pts[:, 0] * v[1] - pts[:, 1] * v[0] != 0
    return int(norms[0]), int(norms[indep][0])


def test_minimal_basis_examples():
    mb = minimal_basis_linf(IntLattice([[2, 0], [0, 2]]))
    assert mb.norms == (2, 2)
    assert set(map(tuple, mb.vectors)) == {(2, 0), (0, 2)}
    mb = minimal_basis_linf(IntLattice([[1, 2], [0, 5]]))
    assert mb.norms == (2, 2)
    assert tuple(mb.g) in {(1, 2), (2, -1), (-1, -2), (-2, 1)}
    assert minimal_basis_linf(IntLattice([[1, 0], [0, 1]])).norms == (1, 1)


def test_minimal_basis_random_2d():
    rng = random.Random(11)
    worst = 0.0
    for _ in range(150):
        L = random_lattice(rng, 2, rng.randint(1, 60))
        mb = minimal_basis_linf(L)
        assert mb.norms == brute_minima_2d(L, 70)
        # the two vectors form a basis
        g, h = mb.vectors
        assert abs(g[0] * h[1] - g[1] * h[0]) == L.det
        r = mb.norms[0] * mb.norms[1] / L.det
        assert Fraction(1, 2) <= r <= 1
        worst = max(worst, mb.domination)
    assert math.isfinite(worst)


def test_minimal_basis_3d_against_enumeration():
    rng = random.Random(5)
    for _ in range(20):
        L = random_lattice(rng, 3, rng.randint(1, 40))
        mb = minimal_basis_linf(L)
        # shortest vector agrees with the generic search
        assert mb.norms[0] == linf(shortest_vector_linf(L))
        assert list(mb.norms) == sorted(mb.norms)
        M = np.array([[int(x) for x in v] for v in mb.vectors])
        assert round(abs(np.linalg.det(M))) >= 1


def test_minimal_basis_lopsided():
    # minima 1, 1, 1, 1e5: the box holding the last minimum has ~1e15 points
    L = IntLattice([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [5, 7, 3, 100000]])
    mb = minimal_basis_linf(L)
    assert mb.norms == (1, 1, 1, 100000)
    assert abs(_frac_det(mb.vectors)) == L.det
    L = IntLattice([[53249, 7, -2, 3], [0, 1, 0, 0], [0, -2, 1, 0], [15214, 0, 0, 1]])
    assert minimal_basis_linf(L).norms[-1] == 7607


def test_integer_program_matches_enumeration():
    rng = random.Random(5)
    for i in range(30):
        L = random_lattice(rng, (3, 4)[i % 2], rng.randint(1, 300))
        red, _ = L.lll
        got = tuple(max(abs(x) for x in v) for v in _minima_milp(red, []))
        assert got == minimal_basis_linf(L).norms


def test_points_in_box_brute():
    rng = random.Random(3)
    for k in (2, 3):
        for _ in range(10):
            L = random_lattice(rng, k, rng.randint(1, 30))
            T = 4
            got = sorted(map(tuple, L.points_in_box(T).tolist()))
            want = sorted(p for p in itertools.product(range(-T, T + 1), repeat=k) if L.contains(p))
            assert got == want


def test_dual_unit_box_examples():
    assert len(dual_vectors_in_unit_box(IntLattice(np.eye(3, dtype=int).tolist()))) == 27
    v = dual_vectors_in_unit_box(IntLattice([[3, 0], [0, 3]]))
    assert len(v) == 49
    skew = IntLattice([[1, 0], [Fraction(1, 2), Fraction(1, 1000)]])
    assert (0, 0) in [tuple(x) for x in dual_vectors_in_unit_box(skew)]


def test_siegel_examples():
    H = siegel_cover(IntLattice([[3, 0], [0, 3]]))
    assert (0, 3) in [tuple(map(abs, v)) for v in H.vectors]
    assert verify_siegel_cover(H)[0]
    tiny = IntLattice([[1, 0], [0, 1]], den=10)  # det 1/100 < 2^-2
    H = siegel_cover(tiny)
    assert H.size == 1 and H.t0 is None
    assert verify_siegel_cover(H)[0]


def test_siegel_random_and_truncated():
    rng = random.Random(17)
    for k in (2, 3, 4):
        for _ in range(4):
            L = random_lattice(rng, k, rng.randint(50, 5000))
            H = siegel_cover(L)
            assert verify_siegel_cover(H)[0]
    # dropping most of H must be noticed
    L = random_lattice(rng, 3, 4000)
    H = siegel_cover(L)
    cut = type(H)(H.lattice, H.t0, H.num[:1], H.coeffs[:1])
    assert not verify_siegel_cover(cut)[0]


def test_omega_examples():
    lats = omega_decompose((0, 1, 0), 5)
    assert {L.canonical() for L in lats} == {
        IntLattice([[5, 0], [0, 1]]).canonical(),
        IntLattice([[1, 0], [0, 5]]).canonical(),
    }
    assert [L.canonical() for L in omega_decompose((1, 0, 1), 3)] == [IntLattice([[3, 0], [0, 3]]).canonical()]
    assert [L.canonical() for L in omega_decompose((0, 5, 0), 5)] == [IntLattice([[1, 0], [0, 1]]).canonical()]
    assert [L.canonical() for L in omega_decompose((0, 0, 0), 12)] == [IntLattice([[1, 0], [0, 1]]).canonical()]


def test_omega_random_scan():
    rng = random.Random(23)
    for _ in range(60):
        Q = tuple(rng.randint(-30, 30) for _ in range(3))
        r = rng.randint(1, 400)
        union = np.zeros((r, r), dtype=bool)
        lats = omega_decompose(Q, r)
        for L in lats:
            union |= residue_mask(L, r)
        assert np.array_equal(union, quadratic_residue_mask(Q, r))


def test_primitive_points():
    n, pts = primitive_points(IntLattice([[1, 0], [0, 1]]), Ellipse.disk(Fraction(3, 2)))
    assert n == 8
    assert primitive_points(IntLattice([[2, 0], [0, 2]]), Ellipse.disk(10))[0] == 0
    L = IntLattice([[1, 2], [0, 5]])
    want = sum(
        1
        for x in range(-4, 5)
        for y in range(-4, 5)
        if math.gcd(x, y) == 1 and (y - 2 * x) % 5 == 0 and x * x + y * y <= 16
    )
    assert primitive_points(L, Ellipse.disk(4))[0] == want


def test_primitive_points_bound():
    rng = random.Random(2)
    worst = 0.0
    for _ in range(40):
        L = random_lattice(rng, 2, rng.randint(1, 50))
        a, c = Fraction(1, rng.randint(1, 100)), Fraction(1, rng.randint(1, 100))
        b = Fraction(rng.randint(-9, 9), 10) * 2 * math.isqrt(int(1 / (a * c))) * a * c
        E = Ellipse(a, b, c)
        n, _ = primitive_points(L, E)
        worst = max(worst, n / (E.area / float(L.det) + 1))
    assert worst < 10


def test_ellipse_validation():
    with pytest.raises(DomainError):
        Ellipse(1, 3, 1)
    assert Ellipse.disk(2).area == pytest.approx(4 * math.pi)

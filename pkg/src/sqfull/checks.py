"""Invariant suites shared by ``sqfull verify`` and the test-suite.

Each check takes a ``random.Random`` (where it samples anything) plus size
knobs, and returns a plain dict with at least ``passed`` and ``checked``.
Nothing here records timings, so reports are reproducible byte for byte.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

import numpy as np

from .arith import factorize, is_squarefree
from .cover import (
    CongruenceClass,
    ExceptionalWitness,
    detect_exceptional,
    exceptional_factor_check,
    extract_cover,
    kappa_of,
    lambda_lattice,
    random_c1_c4_point,
    verify_congruences,
)
from .cubic import rank_upper_bound, rho_count, rho_count_bruteforce
from .forms import form_discriminant, form_is_zero
from .lattice import (
    IntLattice,
    omega_decompose,
    quadratic_residue_mask,
    residue_mask,
    siegel_cover,
    verify_siegel_cover,
)
from .sieve import pp_factor, sigma0, weil_report
from .squarefull import (
    CoeffTriple,
    box_of,
    coeff_triples,
    count_normalized,
    count_solutions,
    count_solutions_bruteforce,
    reduce_triple,
)


def _result(passed: bool, checked: int, **extra) -> dict:
    return {"passed": bool(passed), "checked": int(checked), **extra}


def check_counting(Bs=(10**2, 10**3, 10**4), threads: int = 1) -> dict:
    rows = []
    ok = True
    for B in Bs:
        for prim in (False, True):
            fast = count_solutions(B, prim, threads=threads)
            slow = count_solutions_bruteforce(B, prim)
            ok &= fast.count == slow.count
            rows.append({"B": B, "primitive": prim, "fast": fast.count, "oracle": slow.count})
    return _result(ok, len(rows), rows=rows)


def all_reduced_solutions(B: int, threads: int = 1):
    """Normalized solutions coming from every square-full triple with w <= B."""
    res = count_solutions(B, witnesses=True, threads=threads)
    return [reduce_triple(t)[1] for t in res.witnesses]


def check_congruences(B: int, coeff_bound: int = 3) -> dict:
    """c1..c5 on every solution with y3 > 1, over all coefficient triples with |a_i| <= bound."""
    n = bad = 0
    for a in coeff_triples(coeff_bound):
        for s in count_normalized(B, a)[1]:
            if s.y[2] == 1:
                continue
            n += 1
            if not all(verify_congruences(s.point, kappa_of(s), a).values()):
                bad += 1
    return _result(bad == 0, n, failures=bad)


def random_class(rng: random.Random, qmax: int = 50, amax: int = 30):
    qs = [q for q in range(2, qmax + 1) if is_squarefree(q)]
    q = rng.choice(qs)
    while True:
        a1 = rng.choice((1, -1)) * rng.randint(1, amax)
        a2 = rng.choice((1, -1)) * rng.randint(1, amax)
        if (
            math.gcd(q, a1 * a2) == 1
            and math.gcd(a1, a2) == 1
            and is_squarefree(a1)
            and is_squarefree(a2)
        ):
            break
    a = CoeffTriple(a1, a2, -1 if (a1 > 0 or a2 > 0) else 1)
    kappa = rng.choice([k for k in range(q) if math.gcd(k, q) == 1])
    return CongruenceClass(q, kappa), a


def check_converse(rng: random.Random, n: int = 10**5, qmax: int = 50) -> dict:
    bad = with_r = 0
    for _ in range(n):
        c, a = random_class(rng, qmax)
        p = random_c1_c4_point(rng, c, a)
        v = verify_congruences(p, c, a)
        if not (v["c1"] and v["c2"] and v["c3"] and v["c4"]):
            raise AssertionError(f"sampler produced a point outside c1..c4: {p}")
        with_r += math.gcd(p[2], p[3], c.q) > 1
        bad += not v["c5"]
    return _result(bad == 0, n, failures=bad, with_r_gt_1=with_r)


def random_quadratic(rng: random.Random, hmax: int = 50):
    while True:
        Q = tuple(rng.randint(-hmax, hmax) for _ in range(3))
        if any(Q):
            return Q


def check_omega(rng: random.Random, n: int = 500, rmax: int = 1000) -> dict:
    """Exact set equality against a full residue scan, and N <= 2^Omega(r)."""
    bad = 0
    worst = 0.0
    for _ in range(n):
        Q = random_quadratic(rng)
        r = rng.randint(1, rmax)
        lats = omega_decompose(Q, r)
        union = np.zeros((r, r), dtype=bool)
        for L in lats:
            union |= residue_mask(L, r)
        want = quadratic_residue_mask(Q, r)
        bound = 2 ** factorize(r).big_omega()
        worst = max(worst, len(lats) / bound)
        if not np.array_equal(union, want) or len(lats) > bound:
            bad += 1
    return _result(bad == 0, n, failures=bad, max_count_over_bound=worst)


def random_lattice(rng: random.Random, k: int, det: int) -> IntLattice:
    """Integer lattice of determinant ``det``: triangular, then scrambled by unimodular row moves."""
    diag = [1] * k
    for p, e in factorize(det).factors:
        for _ in range(e):
            diag[rng.randrange(k)] *= p
    M = [[0] * k for _ in range(k)]
    for i in range(k):
        M[i][i] = diag[i]
        for j in range(i + 1, k):
            M[i][j] = rng.randrange(diag[j]) if diag[j] > 1 else 0
    for _ in range(3 * k):
        i, j = rng.sample(range(k), 2)
        c = rng.randint(-3, 3)
        M[i] = [x + c * y for x, y in zip(M[i], M[j])]
    return IntLattice(M)


def check_siegel(rng: random.Random, n: int = 200, det_max: int = 10**6, dims=(2, 3, 4), rational_every: int = 5) -> dict:
    """Every unit-box dual vector is orthogonal to some element of H.

    Determinants are log-uniform in [1, det_max]; every ``rational_every``-th
    lattice is divided by a random denominator so det < 1 is exercised too.
    """
    bad = 0
    max_size = max_norm = 0.0
    for i in range(n):
        k = dims[i % len(dims)]
        det = max(1, int(round(math.exp(rng.uniform(0, math.log(det_max))))))
        L = random_lattice(rng, k, det)
        if rational_every and i % rational_every == rational_every - 1:
            L = IntLattice(L.num, den=rng.randint(2, 9))
        H = siegel_cover(L)
        ok, _ = verify_siegel_cover(H)
        bad += not ok
        max_size = max(max_size, float(H.size_ratio))
        max_norm = max(max_norm, float(H.norm_ratio))
    finite = math.isfinite(max_size) and math.isfinite(max_norm)
    return _result(bad == 0 and finite, n, failures=bad, max_size_ratio=round(max_size, 6), max_norm_ratio=round(max_norm, 6))


def check_lambda_det(rng: random.Random, n: int = 100, qmax: int = 50) -> dict:
    bad = 0
    for _ in range(n):
        c, a = random_class(rng, qmax)
        if lambda_lattice(c, a).det != Fraction(2, c.q**6):
            bad += 1
    return _result(bad == 0, n, failures=bad)


def check_cover(solutions) -> dict:
    """Each solution with q > 1 lies in the S0 pieces or a lattice of its class's cover."""
    cache = {}
    n = missed = vanishing = 0
    lattices = 0
    for s in solutions:
        if s.y[2] == 1:
            continue
        n += 1
        c, box = kappa_of(s), box_of(s)
        key = (c, s.coeffs, box)
        if key not in cache:
            cov = extract_cover(c, s.coeffs, box)
            cache[key] = cov
            lattices += len(cov.lattices)
            vanishing += sum(form_is_zero(M.quintic(s.coeffs)) for M in cov.lattices)
        missed += not cache[key].contains(s.point)
    return _result(missed == 0 and vanishing == 0, n, missed=missed, vanishing=vanishing,
                   instances=len(cache), lattices=lattices)


def random_odd_form(rng: random.Random, degree: int = 5, hmax: int = 9):
    while True:
        F = tuple(rng.randint(-hmax, hmax) for _ in range(degree + 1))
        if F[0] and form_discriminant(F) != 0:
            return F


def check_sieve(rng: random.Random, n_forms: int = 20, pmax: int = 30, weil_P: int = 100, weil_forms: int = 3) -> dict:
    primes = [p for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47) if p <= pmax]
    zero_bad = pp_bad = pp_n = 0
    for _ in range(n_forms):
        F = random_odd_form(rng)
        disc = form_discriminant(F)
        good = [p for p in primes if disc % p]
        for p in good:
            zero_bad += not sigma0(F, 0, 0, p).is_zero()
        for i, p1 in enumerate(good):
            for p2 in good[i + 1 :]:
                u, v = rng.randrange(p1 * p2), rng.randrange(p1 * p2)
                lhs = sigma0(F, u, v, p1 * p2)
                rhs = pp_factor(p1, p2, len(F) - 1) * (sigma0(F, u, v, p1) * sigma0(F, u, v, p2))
                pp_n += 1
                pp_bad += not lhs == rhs
    weil = 0.0
    weil_ok = True
    for F in [(1, 0, 0, 1)] + [random_odd_form(rng) for _ in range(weil_forms)]:
        for row in weil_report(F, weil_P):
            weil = max(weil, row["max_ratio"] / (len(F)))  # relative to D + 1
            weil_ok &= row["ok"]
    return _result(zero_bad == 0 and pp_bad == 0 and weil_ok, pp_n, zero_failures=zero_bad,
                   pp_failures=pp_bad, max_ratio_over_D_plus_1=round(weil, 6))


def check_exceptional(rng: random.Random, n: int = 100) -> dict:
    bad = 0
    for _ in range(n):
        g = Fraction(rng.choice((1, -1)) * rng.randint(1, 9), rng.randint(1, 5))
        nu = Fraction(rng.choice((1, -1)) * rng.randint(1, 9), rng.randint(1, 5))
        while True:
            M1 = (rng.randint(-6, 6), rng.randint(-6, 6))
            M2 = (rng.randint(-6, 6), rng.randint(-6, 6))
            if M1[0] * M2[1] - M1[1] * M2[0]:
                break
        w = ExceptionalWitness(g, nu)
        L1, L2 = w.linear_forms(M1, M2)
        found = detect_exceptional(L1, L2, M1, M2)
        ok = exceptional_factor_check(w, M1, M2) and found is not None
        ok = ok and ((found.g, found.nu) in ((g, nu), (-g, -nu)))
        bad += not ok
    return _result(bad == 0, n, failures=bad)


def check_cubic(Mmax: int = 10**4) -> dict:
    cases = [((10, 1, 1, -1), 6), ((1, 1, 2, 3), 2), ((50, 1, 1, 1), 6)]
    ok = True
    rows = []
    for args, want in cases:
        fast = rho_count(*args).count
        slow = rho_count_bruteforce(*args)
        ok &= fast == slow == want
        rows.append({"B": args[0], "coeffs": list(args[1:]), "rho": fast, "oracle": slow})
    ok &= rank_upper_bound(1).bound == 3
    worst = 0.0
    for M in range(1, Mmax + 1):
        if any(e >= 3 for _, e in factorize(M).factors):
            continue
        r = rank_upper_bound(M)
        worst = max(worst, r.bound / (r.omega_M + 1))
    ok &= worst <= 7
    return _result(ok, len(rows) + Mmax, rows=rows, max_rank_ratio=worst)


def run_suite(seed: int, threads: int = 1, scale: str = "quick") -> dict:
    """The full invariant suite; ``quick`` keeps everything to a few seconds."""
    small = scale == "quick"
    rng = random.Random(seed)
    out = {}
    out["counting"] = check_counting((10**2, 10**3, 10**4) if small else (10**2, 10**3, 10**4, 10**5), threads)
    out["congruences"] = check_congruences(10**4 if small else 10**5)
    out["converse_c5"] = check_converse(rng, 2000 if small else 10**5)
    out["omega_decompose"] = check_omega(rng, 50 if small else 500, 300 if small else 1000)
    out["siegel"] = check_siegel(rng, 12 if small else 200, 10**3 if small else 10**6)
    out["lambda_det"] = check_lambda_det(rng, 20 if small else 100)
    a = CoeffTriple(1, 1, -1)
    out["cover"] = check_cover(count_normalized(3000 if small else 10**5, a)[1])
    out["sieve"] = check_sieve(rng, 3 if small else 20, 13 if small else 30, 30 if small else 100, 1 if small else 3)
    out["exceptional"] = check_exceptional(rng, 20 if small else 100)
    out["cubic"] = check_cubic(10**3 if small else 10**4)
    return out

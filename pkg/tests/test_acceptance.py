"""The twelve acceptance criteria, one test each.  Every test records a
PASS/FAIL line that is printed in the terminal summary."""

import math
import random
import subprocess
import sys
import time
from fractions import Fraction
from itertools import product
from pathlib import Path

import numpy as np
import pytest

from conftest import record
from localglobal.cubic import probe
from localglobal.elliptic import (
    MAZUR_GROUPS,
    ECPoint,
    WeierstrassCurve,
    check_generator_877,
    count_points_naive,
    l_value,
    rank_estimate,
    torsion_subgroup,
)
from localglobal.elliptic.curve import GENERATOR_877_X, character_sum
from localglobal.lindioph import det, matmul, minor_gcds, smith_normal_form
from localglobal.modular import primes_between
from localglobal.padic import teichmuller, valuation_product_check
from localglobal.quadforms import hilbert_product, hilbert_table, solve_ternary, legendre_reduce

DATA = Path(__file__).parent / "data"


def _check(n, label, ok, detail=""):
    record(n, bool(ok), label, detail)
    assert ok, detail


def test_01_golden_transcript():
    expected = (DATA / "padic_9_7.txt").read_text().splitlines()
    t = time.perf_counter()
    out = subprocess.run(
        [sys.executable, "-m", "localglobal.cli", "padic", "expand", "9/7", "--primes", "2..163", "--prec", "6"],
        capture_output=True, text=True, check=True,
    ).stdout
    elapsed = time.perf_counter() - t
    got = [line.rstrip() for line in out.splitlines() if line.strip()]
    want = [line.rstrip() for line in expected if line.strip()]
    mismatches = [i for i, (g, w) in enumerate(zip(got, want)) if g != w]
    ok = len(got) == len(want) == 38 and not mismatches and elapsed < 1.0
    _check(1, "golden 9/7 transcript, 38 primes", ok, f"{len(got)} lines, {len(mismatches)} mismatches, {elapsed:.2f}s")


def test_02_teichmuller_table():
    expected = {
        1: [1, 0, 0, 0, 0],
        2: [2, 1, 2, 1, 3],
        3: [3, 3, 2, 3, 1],
        4: [4, 4, 4, 4, 4],
        5: None,
    }
    bad = []
    for x, digits in expected.items():
        w = teichmuller(x, 5, 5)
        if digits is None:
            if not w.is_zero:
                bad.append(x)
        elif (w.digits + [0] * 5)[:5] != digits:
            bad.append(x)
    _check(2, "Teichmuller omega(1..5) at p=5", not bad, f"mismatched {bad}" if bad else "5 digits each")


HILBERT_2ADIC = [
    [+1, +1, +1, +1, +1, +1, +1, +1],
    [+1, +1, +1, +1, -1, -1, -1, -1],
    [+1, +1, -1, -1, +1, +1, -1, -1],
    [+1, +1, -1, -1, -1, -1, +1, +1],
    [+1, -1, +1, -1, +1, -1, +1, -1],
    [+1, -1, +1, -1, -1, +1, -1, +1],
    [+1, -1, -1, +1, +1, -1, -1, +1],
    [+1, -1, -1, +1, -1, +1, +1, -1],
]


def test_03_hilbert_tables():
    bad = []
    for p in (3, 5, 7, 13):
        e = 1 if p % 4 == 1 else -1
        want = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, e, -e], [1, -1, -e, e]]
        reps, table = hilbert_table(p)
        if reps[0] != 1 or reps[2] != p or reps[3] != p * reps[1] or table != want:
            bad.append(p)
    reps, table = hilbert_table(2)
    if reps != [1, 5, -1, -5, 2, 10, -2, -10] or table != HILBERT_2ADIC:
        bad.append(2)
    _check(3, "Hilbert tables p in {2,3,5,7,13}", not bad, f"bad primes {bad}" if bad else "4x4 and 8x8 exact")


def test_04_product_formulas():
    rng = random.Random(2024)
    fails = 0
    for _ in range(1000):
        a = rng.choice([-1, 1]) * rng.randint(1, 10**4)
        b = rng.choice([-1, 1]) * rng.randint(1, 10**4)
        fails += hilbert_product(a, b).product != 1
    for _ in range(1000):
        num = rng.choice([-1, 1]) * rng.randint(1, 10**6)
        den = rng.randint(1, 10**6)
        fails += valuation_product_check(num, den).product != 1
    _check(4, "Hilbert and valuation product formulas", fails == 0, f"{fails} failures in 2000")


def _brute_has_zero(a, b, c, bound, _cache={}):
    """Nontrivial zero of a x^2 + b y^2 - c z^2 with 0 <= x, y <= bound."""
    key = (a, b, bound)
    if key not in _cache:
        _cache.clear()
        sq = np.arange(bound + 1, dtype=np.int64) ** 2
        grid = a * sq[:, None] + b * sq[None, :]
        grid[0, 0] = -1
        _cache[key] = grid
    grid = _cache[key]
    vals = grid[grid % c == 0] // c
    vals = vals[vals >= 0]
    roots = np.round(np.sqrt(vals.astype(np.float64))).astype(np.int64)
    return bool(np.any(roots * roots == vals))


def _squarefree(v):
    return all(v % (q * q) for q in range(2, math.isqrt(v) + 1))


def _reduced_triples(limit):
    for a, b, c in product(range(1, limit + 1), repeat=3):
        if all(map(_squarefree, (a, b, c))) and math.gcd(a, b) == math.gcd(b, c) == math.gcd(a, c) == 1:
            yield a, b, c


def test_05_legendre_solver():
    from localglobal.errors import LocallyUnsolvable

    t = time.perf_counter()
    disagree, wrong = [], []
    n = 0
    for a, b, c in _reduced_triples(30):
        n += 1
        try:
            x, y, z = solve_ternary(a, b, c)
        except LocallyUnsolvable:
            if _brute_has_zero(a, b, c, 1000):
                disagree.append((a, b, c))
            continue
        if a * x * x + b * y * y != c * z * z or (x, y, z) == (0, 0, 0):
            wrong.append((a, b, c))
        if not _brute_has_zero(a, b, c, 1000):
            disagree.append((a, b, c))
    elapsed = time.perf_counter() - t
    ok = not disagree and not wrong and elapsed < 120
    _check(5, "Legendre verdicts vs brute force, a,b,c <= 30", ok,
           f"{n} triples, {len(disagree)} disagreements, {len(wrong)} bad solutions, {elapsed:.1f}s")


def test_06_smith_normal_form():
    rng = random.Random(6)
    fails = 0
    for _ in range(200):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        A = [[rng.randint(-20, 20) for _ in range(n)] for _ in range(m)]
        s = smith_normal_form(A)
        diag_ok = all(s.D[i][j] == 0 for i in range(m) for j in range(n) if i != j)
        chain_ok = all(d > 0 for d in s.divisors) and all(
            s.divisors[i + 1] % s.divisors[i] == 0 for i in range(len(s.divisors) - 1)
        )
        g = minor_gcds(A)
        prefix = [math.prod(s.divisors[:k]) if k <= s.rank else 0 for k in range(1, min(m, n) + 1)]
        ok = (
            matmul(matmul(s.U, A), s.V) == s.D
            and abs(det(s.U)) == 1
            and abs(det(s.V)) == 1
            and diag_ok
            and chain_ok
            and g == prefix
        )
        fails += not ok
    _check(6, "Smith form invariants on 200 random matrices", fails == 0, f"{fails} failures")


def test_07_cubic_probe():
    r = probe((3, 4, 5), moduli=[2**4, 3**4, 5**4] + list(range(2, 51)), bound=50)
    missing = [N for N, w in r.local_witnesses.items() if w is None]
    ok = r.locally_solvable and r.only_trivial_global
    _check(7, "3X^3+4Y^3+5Z^3: local zeros everywhere, no global zero in box", ok,
           f"moduli without zero {missing}, global zeros {len(r.global_solutions)}")


def _random_curves(k, seed=8):
    rng = random.Random(seed)
    out = []
    while len(out) < k:
        A, B = rng.randint(-50, 50), rng.randint(-50, 50)
        if 4 * A**3 + 27 * B**2:
            out.append((A, B))
    return out


def test_08_tate_and_hasse():
    t = time.perf_counter()
    E = WeierstrassCurve.parse("[0,0,1,-7,6]")
    disc_ok = E.discriminant == 5077
    from localglobal.elliptic import count_points_mod_p

    hasse_bad = [
        p for p in primes_between(2, 10**4) if p != 5077
        and abs(count_points_mod_p(E, p) - (p + 1)) > 2 * math.sqrt(p)
    ]
    count_bad = []
    for A, B in _random_curves(10):
        D = 4 * A**3 + 27 * B**2
        for p in primes_between(5, 200):
            if D % p == 0:
                continue
            if p + 1 + character_sum(A, B, p) != count_points_naive((0, 0, 0, A, B), p):
                count_bad.append((A, B, p))
    elapsed = time.perf_counter() - t
    ok = disc_ok and not hasse_bad and not count_bad and elapsed < 60
    _check(8, "discriminant 5077, Hasse bound, char-sum vs brute count", ok,
           f"Hasse failures {len(hasse_bad)}, count mismatches {len(count_bad)}, {elapsed:.1f}s")


def test_09_torsion():
    cases = {"[0,0,1,-1,0]": (1,), "[0,0,1,-7,6]": (1,), "[0,0,0,0,1]": (6,)}
    got = {c: torsion_subgroup(WeierstrassCurve.parse(c)).invariants for c in cases}
    ok = got == cases and all(v in MAZUR_GROUPS for v in got.values())
    _check(9, "torsion trivial, trivial, Z/6Z", ok, str(got))


def test_10_group_law():
    E = WeierstrassCurve.parse("[0,0,1,-7,6]")
    gens = [ECPoint.affine(1, 0), ECPoint.affine(2, 0), ECPoint.affine(0, 2)]
    on_curve = all(E.contains(P) for P in gens)
    non_torsion = all(E.order(P, 12) is None for P in gens)
    span = {}
    for m in product(range(-2, 3), repeat=3):
        P = ECPoint.infinity()
        for k, G in zip(m, gens):
            P = E.add(P, E.multiply(k, G))
        span[m] = P
    pts = list(span.values())
    rng = random.Random(10)
    fails = 0
    for _ in range(150):
        P, Q, R = (rng.choice(pts) for _ in range(3))
        left = E.add(E.add(P, Q), R)
        right = E.add(P, E.add(Q, R))
        fails += not (left == right and E.add(P, Q) == E.add(Q, P) and E.contains(left))
    fails += not all(E.contains(P) for P in pts)
    ok = on_curve and non_torsion and fails == 0
    _check(10, "associativity and commutativity on the generator span", ok,
           f"150 triples, {fails} failures, generators on curve {on_curve}, non-torsion {non_torsion}")


def test_11_generator_877():
    perturbed = Fraction(GENERATOR_877_X.numerator + 1, GENERATOR_877_X.denominator)
    ok = check_generator_877() is True and check_generator_877(perturbed) is False
    _check(11, "877-curve x-coordinate gives a rational square", ok)


RANK_CASES = [("[0,0,1,-7,6]", 3), ("[0,0,1,-1,0]", 1), ("[0,-1,1,0,0]", 0)]


@pytest.mark.parametrize("curve,rank", RANK_CASES)
def test_12_rank_estimates(curve, rank):
    t = time.perf_counter()
    E = WeierstrassCurve.parse(curve)
    est = float(rank_estimate(E, 1.0001))
    extra = ""
    ok = abs(est - rank) <= 0.2
    if rank == 3:
        L1 = abs(float(l_value(E, 1, split=1.1)))
        ok = ok and L1 < 1e-3
        extra = f", |L(E,1)| = {L1:.2e}"
    elapsed = time.perf_counter() - t
    ok = ok and elapsed < 120
    RANK_RESULTS[curve] = (ok, f"{curve}: {est:.4f}{extra}, {elapsed:.1f}s")
    lines = [RANK_RESULTS[c] for c, _ in RANK_CASES if c in RANK_RESULTS]
    record(12, all(o for o, _ in lines), "rank estimates at s = 1.0001", "; ".join(d for _, d in lines))
    assert ok, RANK_RESULTS[curve][1]


RANK_RESULTS: dict = {}

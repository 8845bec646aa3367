"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines; stated runtime limits are asserted with perf_counter.
"""

import random
import time

from quadorbit.cli import main
from quadorbit.diagram import (
    analogous_two_safe_primes,
    brute_census,
    census,
    is_maximal_prime,
    two_safe_primes,
)
from quadorbit.generator import KIND_LOGISTIC, GeneratorSpec, orbit, predict_orbit
from quadorbit.ivsets import build_iv_set, param_fibers
from quadorbit.lcp import (
    berlekamp_massey_profile,
    bound_dickson,
    bound_quadratic,
    linear_complexity_via_gcd,
    verify_profile_bounds,
)
from quadorbit.numtheory import primes_up_to


def report(num, desc, ok):
    print(f"[criterion {num:02d}] {'PASS' if ok else 'FAIL'}: {desc}")
    return ok


def best_elapsed(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def test_criterion_01_iv_set_examples():
    ok = build_iv_set(23).elements == [1, 2, 3, 8, 12]
    ok = ok and build_iv_set(17).elements == [3, 7, 12, 14]
    elapsed = max(best_elapsed(lambda: build_iv_set(23)), best_elapsed(lambda: build_iv_set(17)))
    ok = ok and elapsed < 1e-3
    assert report(1, f"IV sets for p=23,17 exact in {elapsed * 1e6:.0f}us", ok)


def test_criterion_02_counting_formula():
    start = time.perf_counter()
    ok = True
    for p in primes_up_to(1999):
        if p <= 3:
            continue
        iv = build_iv_set(p)
        expected = (p - 3) // 4 if p % 4 == 3 else (p - 1) // 4
        ok = ok and len(iv.elements) == expected == iv.expected_size
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 5.0
    assert report(2, f"|IvSet(p)| formula exact for 5 <= p < 2000 in {elapsed:.2f}s", ok)


def test_criterion_03_fiber_tables(tmp_path):
    table1 = {
        1: [4, 6, 17, 19],
        2: [2, 11, 12, 21],
        3: [5, 9, 14, 18],
        8: [7, 10, 13, 16],
        12: [3, 8, 15, 20],
    }
    table2 = {
        3: {(2, 1), (15, 16), (2, 16), (15, 1)},
        7: {(5, 5), (12, 12), (5, 12), (12, 5)},
        12: {(8, 2), (9, 15), (8, 15), (9, 2)},
        14: {(7, 4), (10, 13), (7, 13), (10, 4)},
    }
    ok = param_fibers(23) == table1
    fibers17 = param_fibers(17)
    ok = ok and {a: {(t.c0, t.c1) for t in f} for a, f in fibers17.items()} == table2
    ok = ok and all(t.ctx.non_residue == 3 for f in fibers17.values() for t in f)
    out = tmp_path / "fibers.csv"
    ok = ok and main(["fibers", "--p", "23", "--out", str(out)]) == 0
    rows = [line for line in out.read_text().splitlines() if not line.startswith("#")]
    ok = ok and rows[1:] == [f"{a},{','.join(map(str, f))}" for a, f in sorted(table1.items())]
    assert report(3, "fiber tables for p=23 and p=17 (alpha^2=3) exact", ok)


def test_criterion_04_census_tables():
    rows23 = [(r.divisor, r.order_of_2, r.totient, r.cycles, r.period) for r in census(23).rows]
    rows17 = [(r.divisor, r.order_of_2, r.totient, r.cycles, r.period) for r in census(17).rows]
    ok = rows23 == [(11, 10, 10, 1, 5)]
    ok = ok and rows17 == [(3, 2, 2, 1, 1), (9, 6, 6, 1, 3)]
    assert report(4, "census tables for p=23 and p=17 exact", ok)


def test_criterion_05_theory_equals_brute_force():
    start = time.perf_counter()
    ok = True
    for p in primes_up_to(499):
        if p <= 3:
            continue
        ok = ok and census(p).period_counter() == brute_census(p)
        for a in build_iv_set(p).elements:
            rep = orbit(GeneratorSpec(kind=KIND_LOGISTIC, p=p, seed=a))
            pred = predict_orbit(p, a, "iv_set")
            ok = ok and (pred.tail_length, pred.period) == (rep.tail_length, rep.period)
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 60.0
    assert report(5, f"census=brute and predict=orbit for 5 <= p < 500 in {elapsed:.1f}s", ok)


def test_criterion_06_orbit_examples():
    rep = orbit(GeneratorSpec(kind=KIND_LOGISTIC, p=23, seed=1))
    ok = rep.tail == [] and rep.cycle == [1, 8, 12, 3, 2]
    rep = orbit(GeneratorSpec(kind=KIND_LOGISTIC, p=17, seed=3))
    ok = ok and rep.cycle == [3, 14, 7]
    rep = orbit(GeneratorSpec(kind=KIND_LOGISTIC, p=17, seed=12))
    ok = ok and rep.tail == [] and rep.cycle == [12]
    assert report(6, "orbit examples for p=23 and p=17 exact", ok)


def test_criterion_07_safe_prime_lists():
    # Stated expectation: exactly these ten 2-safe primes below 5000.  The
    # chains 4127 = 2*2063+1 = 4*1031+3 and 4919 = 2*2459+1 = 4*1229+3 are
    # also prime all the way down, so the true list has twelve members and
    # this check cannot pass as written; it is kept to document that.
    expected = [11, 23, 47, 167, 359, 719, 1439, 2039, 2879, 4079]
    start = time.perf_counter()
    found = two_safe_primes(5000)
    analogous = analogous_two_safe_primes(10**6)
    elapsed = time.perf_counter() - start
    ok = found == expected and analogous == [13] and elapsed < 10.0
    report(7, f"2-safe primes <= 5000 exactly ten, analogue {{13}}, in {elapsed:.1f}s", ok)
    assert analogous == [13]
    assert elapsed < 10.0
    assert found == expected, f"two_safe_primes(5000) = {found}; 4127 and 4919 are 2-safe but unlisted"


def test_criterion_08_maximality_agreement():
    ok = True
    for p in primes_up_to(1999):
        if p <= 3:
            continue
        counts = brute_census(p)
        iv_size = len(build_iv_set(p).elements)
        single = dict(counts) == {iv_size: 1}
        ok = ok and is_maximal_prime(p).is_maximal == single
    rep23 = is_maximal_prime(23)
    ok = ok and rep23.is_maximal and rep23.max_period == 5
    ok = ok and not is_maximal_prime(17).is_maximal
    assert report(8, "maximality criterion = brute single-cycle for p < 2000", ok)


def test_criterion_09_synthesis_equals_gcd():
    rng = random.Random(1009)
    odd_primes = [p for p in primes_up_to(100) if p > 2]
    ok = True
    for _ in range(200):
        p = rng.choice(odd_primes)
        period = rng.randrange(1, 51)
        cycle = [rng.randrange(p) for _ in range(period)]
        ok = ok and berlekamp_massey_profile(cycle * 2, p)[-1] == linear_complexity_via_gcd(cycle, p)
    assert report(9, "L(S,2T) from synthesis = gcd formula on 200 random sequences", ok)


def test_criterion_10_bounds_hold_for_all_maximal_primes():
    maximal = [p for p in primes_up_to(4999) if p > 3 and is_maximal_prime(p).is_maximal]
    ok = len(maximal) > 0
    timed_4079 = None
    for p in maximal:
        start = time.perf_counter()
        iv = build_iv_set(p)
        for a in iv.elements:
            rep = verify_profile_bounds(p, a)
            ok = ok and rep.holds
        period = len(iv.elements)
        for n in range(1, 2 * period + 1):
            ok = ok and bound_quadratic(n, period, rep.modulus) > bound_dickson(n, period, p)
        if p == 4079:
            timed_4079 = time.perf_counter() - start
    ok = ok and timed_4079 is not None and timed_4079 < 30.0
    assert report(
        10,
        f"both bounds hold for every IV seed of {len(maximal)} maximal primes; p=4079 case {timed_4079:.1f}s",
        ok,
    )


def test_criterion_11_bound_curve_shape_p6599(tmp_path):
    out = tmp_path / "lcp.csv"
    code = main(["lcp", "--p", "6599", "--bounds", "--out", str(out)])
    rows = [line.split(",") for line in out.read_text().splitlines() if not line.startswith("#")]
    header, body = rows[0], rows[1:]
    ok = code == 0 and header == ["N", "L", "bound_quadratic", "bound_sqrt", "bound_dickson"]
    quad = [float(r[2]) for r in body]
    sqr = [float(r[3]) for r in body]
    ok = ok and len(body) == 2 * 1649
    ok = ok and all(v >= 0.0 for v in quad + sqr)
    ok = ok and quad[0] == 0.0  # negative values clamp to zero
    sqrt_leads = [n for n, (q, s) in enumerate(zip(quad, sqr), start=1) if s > q]
    quad_leads = [n for n, (q, s) in enumerate(zip(quad, sqr), start=1) if q > s]
    ok = ok and sqrt_leads and quad_leads and min(sqrt_leads) < min(quad_leads) and max(quad_leads) == len(body)
    assert report(11, "p=6599 curves: sqrt bound leads small N, quadratic leads large N, clamped at 0", ok)


def test_criterion_12_sweep_trends(tmp_path):
    start = time.perf_counter()
    out = tmp_path / "maximal.csv"
    code = main(["sweep", "--kind", "maximal", "--n-min", "3", "--n-max", "16", "--out", str(out)])
    ok = code == 0
    pct = {}
    for line in out.read_text().splitlines():
        if line.startswith("#") or line.startswith("bit_size"):
            continue
        cells = line.split(",")
        pct[(int(cells[0]), cells[1])] = float(cells[3])
    ok = ok and all((n, cls) in pct for n in range(3, 17) for cls in ("3mod4", "1mod4"))
    ok = ok and all(pct[(n, "3mod4")] >= pct[(n, "1mod4")] for n in range(12, 17))

    out2 = tmp_path / "periods.csv"
    code = main(["sweep", "--kind", "periods", "--n-min", "14", "--n-max", "18", "--out", str(out2)])
    ok = ok and code == 0
    cycles = {"3mod4": [], "1mod4": []}
    periods = {"3mod4": [], "1mod4": []}
    for line in out2.read_text().splitlines():
        if line.startswith("#") or line.startswith("bit_size"):
            continue
        cells = line.split(",")
        cycles[cells[1]].append(float(cells[4]))
        periods[cells[1]].append(float(cells[5]))
    for cls in ("3mod4", "1mod4"):
        ok = ok and len(cycles[cls]) == 5
        ok = ok and all(a <= b for a, b in zip(cycles[cls], cycles[cls][1:]))
        ok = ok and all(a <= b for a, b in zip(periods[cls], periods[cls][1:]))
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 300.0
    assert report(12, f"sweep trends (class order for N>=12, monotone means 14..18) in {elapsed:.1f}s", ok)

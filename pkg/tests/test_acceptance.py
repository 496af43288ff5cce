"""Acceptance gate: one test per criterion, each reporting a PASS/FAIL line."""
import math
import random
import time
from fractions import Fraction

from garment.blocking import (
    BlockersClaim,
    ClaimStatus,
    blocking_problem,
    exhaustive_hitting_set,
    induction_closure,
    min_blockers,
    verify_pair_claim,
)
from garment.convexity import (
    SixIsland,
    blue_necklace_certificate,
    count_kgons_kholes,
    count_kgons_kholes_bruteforce,
    disjoint_4holes,
    double_chain,
    es_upper_bound,
    island_close,
    six_island_check,
    six_island_conditions,
    unbalanced_island,
    verify_hole_family,
)
from garment.geom import Color, ColoredPointSet, Mode, Point, convex_hull, in_triangle, random_point_set
from garment.search import Verdict, lower_bound_search, sample_order_types, scan_colorings, verify_construction
from garment.structures import StructureInstance, StructureKind, line_intersection, region_contains, structure_status

K = StructureKind
PN = frozenset({K.PANT, K.NECKLACE})
PB = frozenset({K.PANT, K.BOWTIE})


def _claims(pairs, kinds, budget=5000):
    out = []
    for r, b in pairs:
        sample = sample_order_types(r, budget=budget, seed=0)
        t = time.perf_counter()
        res = verify_pair_claim(BlockersClaim(r, b, kinds), sample.sets, "sampled order types")
        out.append((r, b, len(sample), res, time.perf_counter() - t))
    return out


def test_criterion_01_small_pant_necklace_pairs(report):
    rows = _claims([(4, 2), (5, 3)], PN, budget=2000)
    ok = rows[0][2] == 2 and rows[1][2] == 3 and all(r[3].status is ClaimStatus.VERIFIED for r in rows)
    elapsed = sum(r[4] for r in rows)
    ok = ok and elapsed < 1.0
    report(1, ok, "; ".join(f"<{r},{b}> over {n} types: {res.status.value}" for r, b, n, res, _ in rows)
           + f" ({elapsed:.2f}s verification)")
    assert ok


def test_criterion_02_small_pant_bowtie_pairs(report):
    t = time.perf_counter()
    rows = _claims([(6, 5), (7, 6)], PB)
    elapsed = time.perf_counter() - t
    ok = rows[0][2] == 16 and rows[1][2] == 135 and all(r[3].status is ClaimStatus.VERIFIED for r in rows)
    ok = ok and elapsed < 300
    report(2, ok, "; ".join(f"<{r},{b}> over {n} types: {res.status.value} (min {res.min_seen})"
                            for r, b, n, res, _ in rows) + f" ({elapsed:.1f}s)")
    assert ok


def test_criterion_03_five_red_points_need_four(report):
    t = time.perf_counter()
    sample = sample_order_types(5, budget=2000, seed=0)
    t0 = time.perf_counter()
    by_hull = {len(convex_hull(s)): min_blockers(s, PB).count for s in sample.sets}
    elapsed = time.perf_counter() - t0
    ok = len(sample) == 3 and by_hull[3] >= 4 and by_hull[5] >= 4 and elapsed < 1.0
    report(3, ok, f"min blockers by hull size {by_hull} (hull 4 {'admits' if by_hull[4] <= 3 else 'does not admit'}"
                  f" a 3-blocker placement; {elapsed:.2f}s, sampling {t0 - t:.1f}s)")
    assert ok


def test_criterion_04_induction_closure_and_spot_check(report):
    rows = induction_closure([(4, 2), (5, 3)], PN, 12)
    closure_ok = (12, 10, "derived-by-lemma") in rows
    rng = random.Random(2024)
    t = time.perf_counter()
    counts = [min_blockers(random_point_set(12, rng, 2**16), PN).count for _ in range(100)]
    elapsed = time.perf_counter() - t
    violations = sum(c < 10 for c in counts)
    ok = closure_ok and violations == 0 and elapsed < 1800
    report(4, ok, f"closure gives <12,10>: {closure_ok}; 100 random 12-point sets, min blockers "
                  f"{min(counts)}..{max(counts)}, violations {violations} ({elapsed:.0f}s)")
    assert ok


def test_criterion_05_pant_or_bowtie_is_eleven(report):
    t = time.perf_counter()
    res = lower_bound_search(10, PB, budget=10**7, seed=0)
    lower_ok = res.success and verify_construction(res.cps, PB)[0]
    t_lower = time.perf_counter() - t
    rng = random.Random(11)
    t = time.perf_counter()
    counter = 0
    for _ in range(1000):
        rep = scan_colorings(random_point_set(11, rng, 2**16), PB)
        counter += rep.verdict is not Verdict.ALL_COLORINGS_CONTAIN_EMPTY
    t_upper = time.perf_counter() - t
    ok = lower_ok and counter == 0 and t_lower < 600 and t_upper < 1800
    report(5, ok, f"10-point set avoiding pant/bowtie found in {res.moves} moves ({t_lower:.1f}s), re-verified: "
                  f"{lower_ok}; 1000 random 11-point sets, counterexample colorings: {counter} ({t_upper:.0f}s)")
    assert ok


def test_criterion_06_observation_lower_bounds(report):
    cases = {"b": (12, {K.BOWTIE, K.SKIRT}), "c": (12, {K.NECKLACE, K.PANT}), "d": (14, {K.NECKLACE})}
    found = {}
    parts = []
    for key, (n, kinds) in cases.items():
        t = time.perf_counter()
        res = lower_bound_search(n, kinds, budget=10**8, seed=0)
        found[key] = res.success and verify_construction(res.cps, kinds)[0]
        parts.append(f"({key}) n={n}: {'found' if found[key] else 'not found'} after {res.moves} moves "
                     f"({time.perf_counter() - t:.1f}s)")
    ok = found["d"] and (found["b"] or found["c"])
    report(6, ok, "; ".join(parts))
    assert ok


def _structured_eleven(rng):
    dc = double_chain(5)
    out = []
    for _ in range(25):
        extra = Point(rng.randrange(-40, 140), rng.randrange(-60, 260))
        pts = dc + [extra]
        try:
            ColoredPointSet(pts, [Color.RED] * 11, check="full")
        except ValueError:
            continue
        out.append(pts)
    for k in range(6, 12):  # convex arcs with a few points pushed inside
        for _ in range(4):
            pts = [Point(round(1000 * math.cos(2 * math.pi * i / k)) + rng.randrange(3),
                         round(1000 * math.sin(2 * math.pi * i / k)) + rng.randrange(3)) for i in range(k)]
            pts += [Point(rng.randrange(-400, 400), rng.randrange(-400, 400)) for _ in range(11 - k)]
            try:
                ColoredPointSet(pts, [Color.RED] * 11, check="full")
            except ValueError:
                continue
            out.append(pts)
    return out


def test_criterion_07_six_island(report):
    rng = random.Random(7)
    t = time.perf_counter()
    sets = [random_point_set(11, rng, 2**12) for _ in range(500)]
    structured = []
    while len(structured) < 50:
        structured.extend(_structured_eleven(rng))
    structured = structured[:50]
    fails = sum(six_island_check(s).verdict is SixIsland.FAILS for s in sets + structured)
    dc = six_island_conditions(double_chain(5)).verdict
    elapsed = time.perf_counter() - t
    ok = fails == 0 and dc is SixIsland.FAILS and elapsed < 300
    report(7, ok, f"500 random + 50 structured 11-point sets, FAILS: {fails}; 5+5 double chain: {dc.value} "
                  f"({elapsed:.1f}s)")
    assert ok


def test_criterion_08_es_bound(report):
    v = es_upper_bound(9)
    report(8, v == 1508, f"es_upper_bound(9) = {v}")
    assert v == 1508


def test_criterion_09_disjoint_4holes(report):
    rng = random.Random(9)
    t = time.perf_counter()
    worst = {}
    bad = 0
    for m in (10, 25, 51, 100):
        for _ in range(50):
            pts = random_point_set(m, rng, 2**20)
            fam = disjoint_4holes(pts)
            need = (m - 3) // 2
            worst[m] = min(worst.get(m, 10**9), len(fam) - need)
            bad += len(fam) < need or not verify_hole_family(pts, fam)
    elapsed = time.perf_counter() - t
    ok = bad == 0 and elapsed < 300
    report(9, ok, f"200 families, failures {bad}; smallest surplus over the bound by m: {worst} ({elapsed:.1f}s)")
    assert ok


def test_criterion_10_necklace_pipeline(report):
    rng = random.Random(1508)
    t = time.perf_counter()
    certified = imbalanced = 0
    for run in range(10):
        pts = random_point_set(1508, rng, 2**24)
        cols = [Color.RED] * 754 + [Color.BLUE] * 754
        rng.shuffle(cols)
        cps = ColoredPointSet(pts, cols, check="none")
        island = unbalanced_island(cps, seed=run)
        imbalanced += island.imbalance >= 5 and island_close(cps, island.members).members == island.members
        inst = blue_necklace_certificate(cps, seed=run)
        certified += (inst is not None and inst.kind is K.NECKLACE and structure_status(inst, cps).empty)
    elapsed = time.perf_counter() - t
    ok = certified == 10 and imbalanced == 10 and elapsed < 7200
    report(10, ok, f"1508-point balanced bicolorings: {certified}/10 verified necklaces, {imbalanced}/10 islands "
                   f"with |r'-b'| >= 5 ({elapsed:.1f}s)")
    assert ok


def _bowtie_oracle(pts, inst, q):
    h = [pts[i] for i in inst.points]
    x = line_intersection(h[0], h[2], h[1], h[3])
    cells = (1, 3) if inst.variant == 0 else (0, 2)
    return any(in_triangle(q, h[k], h[(k + 1) % 4], x, Mode.CLOSED) for k in cells)


def test_criterion_11_oracle_suites(report):
    rng = random.Random(11)
    t = time.perf_counter()
    count_bad = 0
    for _ in range(200):
        pts = random_point_set(rng.randint(4, 9), rng, 500)
        for k in range(3, min(6, len(pts)) + 1):
            count_bad += count_kgons_kholes(pts, k) != count_kgons_kholes_bruteforce(pts, k)
    block_bad = 0
    for _ in range(100):
        red = random_point_set(rng.randint(4, 5), rng, 200)
        kinds = rng.choice([PN, PB, frozenset({K.CRAVAT, K.SKIRT}), frozenset({K.NECKLACE})])
        prob = blocking_problem(red, kinds)
        expect = len(exhaustive_hitting_set(prob.cover_masks(), prob.universe)) if prob.targets else 0
        block_bad += min_blockers(red, kinds).count != expect
    probe_bad = probes = 0
    while probes < 10**4:
        pts = random_point_set(4, rng, 100)
        hull = convex_hull(pts)
        if len(hull) != 4:
            continue
        h = tuple(hull[(hull.index(min(hull)) + i) % 4] for i in range(4))
        for v in range(2):
            inst = StructureInstance(h, K.BOWTIE, v)
            for _ in range(50):
                q = (Fraction(rng.randrange(-1000, 11000), 100), Fraction(rng.randrange(-1000, 11000), 100))
                probe_bad += region_contains(inst, pts, q) != _bowtie_oracle(pts, inst, q)
                probes += 1
    elapsed = time.perf_counter() - t
    ok = count_bad == block_bad == probe_bad == 0 and elapsed < 900
    report(11, ok, f"k-gon/k-hole mismatches {count_bad}/200 sets; min-blocker mismatches {block_bad}/100; "
                   f"bowtie probe mismatches {probe_bad}/{probes} ({elapsed:.1f}s)")
    assert ok

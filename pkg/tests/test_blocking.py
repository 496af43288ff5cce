import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from garment.blocking import (
    BlockersClaim,
    ClaimStatus,
    KindsNotCovered,
    SourceUnavailable,
    TooFewPoints,
    blocking_problem,
    candidate_cells,
    exhaustive_hitting_set,
    greedy_hitting_set,
    induction_closure,
    min_blockers,
    min_hitting_set,
    verify_pair_claim,
)
from garment.geom import Point, convex_hull, in_convex_polygon, orient, random_point_set
from garment.structures import StructureKind, geometrically_empty, region_contains

from conftest import point_sets

K = StructureKind
PN = frozenset({K.PANT, K.NECKLACE})
PB = frozenset({K.PANT, K.BOWTIE})
SQUARE = [Point(0, 0), Point(10, 0), Point(10, 10), Point(0, 10)]
TRIANGLE_PLUS = [Point(0, 0), Point(12, 0), Point(0, 12), Point(3, 3)]
PENTAGON = [Point(0, 0), Point(20, 0), Point(26, 18), Point(10, 30), Point(-6, 18)]


def check_placement(red, kinds, res):
    """Every clean red structure holds one of the placed (rational) blue points."""
    return all(any(region_contains(t, red, q) for q in res.placement) for t in geometrically_empty(red, kinds))


@pytest.mark.parametrize("red,kinds,expected", [
    (SQUARE, PN, 2),
    (TRIANGLE_PLUS, {K.PANT}, 2),
    (TRIANGLE_PLUS, {K.SKIRT}, 1),
    (SQUARE, {K.CRAVAT}, 1),
    (PENTAGON, PB, 4),
])
def test_known_counts(red, kinds, expected):
    res = min_blockers(red, kinds)
    assert res.count == expected
    assert check_placement(red, kinds, res)


def test_nothing_to_block():
    assert min_blockers(SQUARE, {K.SKIRT}).count == 0
    assert min_blockers(SQUARE[:3], {K.CRAVAT}).count == 0


def test_too_few_points():
    with pytest.raises(TooFewPoints):
        candidate_cells(SQUARE[:2])


def _grid_signs(red, steps=37):
    """Sign vectors of a fine rational grid inside the hull (points on lines skipped)."""
    hull = [red[i] for i in convex_hull(red)]
    xs = [p.x for p in red]
    ys = [p.y for p in red]
    pairs = list(itertools.combinations(range(len(red)), 2))
    out = set()
    for i in range(1, steps):
        for j in range(1, steps):
            q = (min(xs) + Fraction((max(xs) - min(xs)) * i, steps) + Fraction(1, 7919),
                 min(ys) + Fraction((max(ys) - min(ys)) * j, steps) + Fraction(1, 104729))
            if not in_convex_polygon(q, hull):
                continue
            s = tuple(orient(red[a], red[b], q) for a, b in pairs)
            if 0 not in s:
                out.add(s)
    return out


@pytest.mark.parametrize("seed", range(8))
def test_candidate_cells_cover_the_grid(seed):
    rng = random.Random(seed)
    red = random_point_set(rng.randint(4, 6), rng, 60)
    cells = candidate_cells(red)
    signs = {c.signs for c in cells}
    assert len(signs) == len(cells)
    hull = [red[i] for i in convex_hull(red)]
    pairs = list(itertools.combinations(range(len(red)), 2))
    for c in cells:
        assert in_convex_polygon(c.rep, hull)
        assert tuple(orient(red[a], red[b], c.rep) for a, b in pairs) == c.signs
    assert _grid_signs(red) <= signs


def test_all_cells_includes_unbounded():
    inner = candidate_cells(SQUARE)
    everything = candidate_cells(SQUARE, within_hull=False)
    assert len(inner) == 4
    # 6 lines through 4 points of a square: 2 diagonals + 4 sides
    assert len(everything) > len(inner)


@st.composite
def cover_instances(draw):
    n_targets = draw(st.integers(1, 10))
    universe = (1 << n_targets) - 1
    cover = draw(st.lists(st.integers(0, universe), min_size=1, max_size=12))
    cover.append(universe & draw(st.integers(1, universe)))
    acc = 0
    for c in cover:
        acc |= c
    cover.extend(1 << t for t in range(n_targets) if not acc >> t & 1)
    return cover, universe


@given(cover_instances())
@settings(max_examples=200, deadline=None)
def test_branch_and_bound_matches_exhaustive(inst):
    cover, universe = inst
    best = min_hitting_set(cover, universe)
    acc = 0
    for c in best:
        acc |= cover[c]
    assert acc == universe
    assert len(best) == len(exhaustive_hitting_set(cover, universe))
    assert len(greedy_hitting_set(cover, universe)) >= len(best)


@pytest.mark.parametrize("seed", range(12))
def test_min_blockers_matches_exhaustive(seed):
    rng = random.Random(1000 + seed)
    red = random_point_set(rng.randint(4, 5), rng, 80)
    for kinds in (PN, PB, {K.CRAVAT, K.SKIRT}):
        prob = blocking_problem(red, kinds)
        res = min_blockers(red, kinds)
        if not prob.targets:
            assert res.count == 0
            continue
        assert res.count == len(exhaustive_hitting_set(prob.cover_masks(), prob.universe))
        assert check_placement(red, kinds, res)


@pytest.mark.parametrize("seed", range(4))
def test_bnb_matches_milp(seed):
    rng = random.Random(2000 + seed)
    red = random_point_set(rng.randint(6, 7), rng, 300)
    for kinds in (PN, PB):
        assert min_blockers(red, kinds, "bnb").count == min_blockers(red, kinds, "milp").count


def test_cell_hits_match_region_oracle():
    rng = random.Random(77)
    red = random_point_set(6, rng, 200)
    prob = blocking_problem(red, PB | PN)
    for ci, cell in enumerate(prob.cells):
        for ti, t in enumerate(prob.targets):
            assert bool(prob.hits[ci, ti]) == region_contains(t, red, cell.rep)


def test_verify_pair_claim():
    claim = BlockersClaim(4, 2, PN)
    done = verify_pair_claim(claim, [SQUARE, TRIANGLE_PLUS], "hand")
    assert done.status is ClaimStatus.VERIFIED and done.checked == 2 and done.min_seen == 2
    bad = verify_pair_claim(BlockersClaim(4, 3, PN), [SQUARE, TRIANGLE_PLUS])
    assert bad.status is ClaimStatus.REFUTED and bad.witness is not None and len(bad.witness_placement) == 2
    with pytest.raises(SourceUnavailable):
        verify_pair_claim(claim, [])
    with pytest.raises(SourceUnavailable):
        verify_pair_claim(claim, [PENTAGON])
    assert "necklace,pant" in claim.label()


def test_induction_closure():
    rows = induction_closure([(4, 2), (5, 3)], PN, 12)
    table = {r: b for r, b, _ in rows}
    assert table[12] == 10
    assert [lab for r, _, lab in rows if r <= 5] == ["base", "base"]
    assert all(lab == "derived-by-lemma" for r, _, lab in rows if r > 5)
    rows = induction_closure([(6, 5), (7, 6)], PB, 10)
    assert {r: b for r, b, _ in rows}[10] == 9
    with pytest.raises(KindsNotCovered):
        induction_closure([(4, 2), (5, 3)], {K.CRAVAT}, 8)


@given(st.integers(2, 8), st.integers(0, 5), st.integers(0, 3), st.integers(6, 20))
def test_induction_step_property(b0, gap, r0, up_to):
    base = [(r0 + 4, b0), (r0 + 5, b0 + gap)]
    table = {r: b for r, b, _ in induction_closure(base, PN, up_to)}
    for r in table:
        if r - 1 in table and r - 2 in table and r > r0 + 5:
            assert table[r] == min(table[r - 1], table[r - 2] + 1) + 1


@given(point_sets(4, 5, coord=40))
@settings(max_examples=25, deadline=None)
def test_blockers_at_least_disjoint_targets(red):
    """Targets pairwise without a shared cell each need their own blocker."""
    prob = blocking_problem(red, PN)
    res = min_blockers(red, PN)
    cover = prob.cover_masks()
    for t1, t2 in itertools.combinations(range(len(prob.targets)), 2):
        if not any(c >> t1 & 1 and c >> t2 & 1 for c in cover):
            assert res.count >= 2

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fullmdim import (
    Construction,
    DyadicInterval,
    containment_check,
    density_estimate,
    mdim_lower_bound,
    rescale_map_check,
    return_time_witness,
    syndetic_gap_check,
)
from fullmdim.errors import DepthLimitError, NotInJnError
from fullmdim.verify import ReturnTimeWitness, rescale_map, rescale_map_at
from oracles import materialize

F = Fraction


def test_paper_witness(paper2):
    w = return_time_witness(paper2, 1, 3)
    assert w.g_star == (9961472,) == (8 * 1245184,)
    assert w.bound == F(1, 4) < F(1, 3)
    assert (w.level, w.gap) == (2, 10485760)
    assert w.to_json()["g_star"] == ["9961472"]


def test_paper_witness_bound_by_hand(paper2):
    # x on S_1 is (0,0,0,0,0,0,0,1/2); the first variant keeps the left quarter of each box
    w = return_time_witness(paper2, 1, 3)
    x = [F(0)] * 7 + [F(1, 2)]
    worst = 0
    for g in range(8):
        (iv,) = paper2.resolve(w.g_star[0] + g, 2)
        assert iv.left == x[g]
        worst = max(worst, iv.right - x[g])
    assert worst == w.bound


def test_paper_witness_needs_depth():
    with pytest.raises(DepthLimitError):
        return_time_witness(Construction("paper", 1), 1, 3)
    with pytest.raises(DepthLimitError):
        return_time_witness(Construction("paper", 2), 1, 4)


def test_syndetic_gap(paper2):
    w = return_time_witness(paper2, 1, 3)
    assert syndetic_gap_check(paper2, w, 50)
    off = ReturnTimeWitness(w.k, w.n, w.level, (w.g_star[0] + 1,), w.bound, w.gap)
    assert not syndetic_gap_check(paper2, off, 50)
    with pytest.raises(ValueError):
        syndetic_gap_check(paper2, w, 0)


def _toy_level2_brute(ctx):
    """Best bound over every shift in one level-2 period, from materialized blocks."""
    sides = list(ctx.hierarchy.sides)
    block = materialize(sides, dict(ctx.schedule.V))[2]
    period = sides[2]
    x = [block[g][0][0] for g in range(sides[1])]
    best = None
    for s in range(1, period):
        bound = 0
        for g in range(sides[1]):
            lo, hi = block[(g + s) % period][0]
            bound = max(bound, max(hi, x[g]) - min(lo, x[g]))
        if best is None or bound < best[0]:
            best = (bound, s)
    return best


def test_toy_witness_matches_brute_force(toy2):
    best, shift = _toy_level2_brute(toy2)
    assert best == F(1, 4)
    w = return_time_witness(toy2, 1, 3)
    assert w.g_star == (213,) == (3 * toy2.schedule.r[1],)
    assert w.bound <= best


def test_toy_witness_deep(toy3):
    w = return_time_witness(toy3, 1, 8)
    assert w.level == 3 and w.bound == F(1, 32)
    # independent check: x on S_1 is (0, 0, 1/2) and each box must hold it
    for g, xg in enumerate([F(0), F(0), F(1, 2)]):
        (iv,) = toy3.resolve(w.g_star[0] + g, 3)
        assert iv.left <= xg <= iv.right and iv.right - xg <= w.bound
    assert syndetic_gap_check(toy3, w, 10)
    with pytest.raises(DepthLimitError):
        return_time_witness(toy3, 1, 32)


def test_witness_2d():
    ctx = Construction("paper", 2, d=2)
    w = return_time_witness(ctx, 1, 3)
    assert w.bound == F(1, 4)
    assert ctx.hierarchy.locate(w.g_star, 2).subtile_index == ctx.first_variant(2)
    assert syndetic_gap_check(ctx, w, 5)


def test_containment_identity(paper2):
    y = {g: paper2.resolve(g)[0].left for g in range(8)}
    h, bound = containment_check(paper2, y, 1, 3)
    assert h == (0,) and bound == 0


def test_containment_example(paper2):
    y = {g: F(0) for g in range(6)}
    y[6] = F(1, 2) - F(1, 2**10)
    y[7] = F(1, 2)
    h, bound = containment_check(paper2, y, 1, 3)
    # digit at rank 6 selects the last quarter of [0, 1/2]: t = 3 * 4 = 12
    assert h == (8 * (1245184 + 12),)
    assert bound == F(1, 4)


def test_containment_rejects_outside_point(paper2):
    y = {g: F(0) for g in range(8)}
    with pytest.raises(ValueError):
        containment_check(paper2, y, 1, 3)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(0, 2**12), min_size=8, max_size=8))
def test_containment_random_targets(paper2_ctx, raw):
    ctx = paper2_ctx
    y = {}
    for g, v in enumerate(raw):
        (iv,) = ctx.resolve(g)
        y[g] = iv.left + iv.diam * F(v, 2**12)
    h, bound = containment_check(ctx, y, 1, 3)
    assert bound < F(1, 3)
    if h == (0,):
        assert all(abs(ctx.resolve(g)[0].left - y[g]) <= bound for g in range(8))
        return
    for g in range(8):
        (iv,) = ctx.resolve(h[0] + g, 2)
        assert abs(iv.left - y[g]) <= bound and abs(iv.right - y[g]) <= bound


@pytest.fixture(scope="module")
def paper2_ctx():
    return Construction("paper", 2)


# --- density and mdim -------------------------------------------------------------


def test_density_examples(paper2):
    rep = density_estimate(paper2, 1, [1])
    assert rep.fractions == {1: F(1)} and rep.eta_n == F(2, 3)
    rep = density_estimate(paper2, 0, [2])
    assert rep.fractions == {2: F(7471104, 10485760)} == {2: F(57, 80)}
    assert rep.passed and rep.lower_bound == F(1, 2)
    rep = density_estimate(paper2, 2, [2])
    assert rep.fractions == {2: F(1)} and rep.eta_n == F(3, 4)


def test_density_monotone_in_n(paper2):
    for k in (1, 2):
        fr = [density_estimate(paper2, n, [k]).fractions[k] for n in range(5)]
        assert fr == sorted(fr)


def test_density_against_resolver(paper2):
    # each subtile of S_2 is a base copy or a variant; sample both sides of the boundary
    r, V = 1245184, 65536
    base = {F(1): 6, F(1, 2): 2}
    variant = {F(1, 4): 6, F(1, 8): 2}
    rng = random.Random(3)
    subtiles = [0, 1, r - 2, r - 1, r, r + 1, r + V - 1] + [rng.randrange(r + V) for _ in range(300)]
    for s in subtiles:
        prof = {}
        for c in range(8):
            dm = paper2.diam(8 * s + c)
            prof[dm] = prof.get(dm, 0) + 1
        assert prof == (base if s < r else variant)
    total = {dm: r * c for dm, c in base.items()}
    total.update({dm: V * c for dm, c in variant.items()})
    assert total == paper2.block_profile(2)
    assert F(total[F(1)], 10485760) == density_estimate(paper2, 0, [2]).fractions[2]


def test_mdim_bounds(paper2):
    b = mdim_lower_bound(paper2, [0, 1, 2])
    assert b.lower == F(3, 4) and b.upper == 1 and b.from_n == 2
    assert mdim_lower_bound(paper2, [0]).lower == F(1, 2)
    lows = [mdim_lower_bound(paper2, range(n + 1)).lower for n in range(3)]
    assert lows == sorted(lows)
    assert "tend to dim(P)" in b.to_json()["limit"]


def test_mdim_dp2():
    ctx = Construction("paper", 2, d_P=2)
    b = mdim_lower_bound(ctx, [0, 1, 2])
    assert b.upper == 2 and b.lower == F(3, 2)


# --- rescaling maps ---------------------------------------------------------------


@pytest.mark.parametrize(
    "iv, n, expected",
    [(DyadicInterval(0, 1, 1), 1, True), (DyadicInterval(0, 1, 2), 1, False), (DyadicInterval(1, 2, 1), 1, True)],
)
def test_rescale_threshold(iv, n, expected):
    assert rescale_map_check(n, iv) is expected


def test_rescale_random_boxes():
    rng = random.Random(11)
    for _ in range(100):
        exp = rng.randrange(0, 12)
        width = rng.randrange(1, 1 << exp) if exp else 1
        lo = rng.randrange(0, (1 << exp) - width + 1)
        iv = DyadicInterval(lo, lo + width, exp)
        n = rng.randrange(0, 5)
        slope = F(width, 1 << exp)
        assert rescale_map_check(n, iv) is (slope >= F(1, 2 ** (n * (n + 1) // 2)))
        f = rescale_map((iv,))
        assert f((F(0),)) == (iv.left,) and f((F(1),)) == (iv.right,)
        p, q = F(rng.randrange(100), 99), F(rng.randrange(100), 99)
        assert abs(f((p,))[0] - f((q,))[0]) == slope * abs(p - q)


def test_rescale_at_group_point(paper2):
    assert rescale_map_at(paper2, 1, 6)
    with pytest.raises(NotInJnError):
        rescale_map_at(paper2, 1, 9961472)

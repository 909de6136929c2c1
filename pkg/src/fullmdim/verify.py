"""Finite witnesses for minimality and for the mean-dimension lower bound.

Distances between coordinates of the canonical point ``x`` and of its
shifts are never approximated: each coordinate is known either exactly
(see :func:`fullmdim.limit.is_stable`) or up to its dyadic box, and a
distance bound is the length of the hull of what is known.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import schedule as sch
from .blocks import Construction, variant_index
from .dyadic import Box, DyadicInterval, box_diam, span
from .errors import DepthLimitError, NotInJnError
from .group import Point, add, as_point
from .limit import point_enclosure


@dataclass(frozen=True)
class ReturnTimeWitness:
    """``g_star`` returns ``x`` to within ``bound`` on ``S_k``; so does ``g_star + N_m Z^d``."""

    k: int
    n: int
    level: int
    g_star: Point
    bound: Fraction
    gap: int

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "level": self.level,
            "g_star": [str(c) for c in self.g_star],
            "bound": f"{self.bound.numerator}/{self.bound.denominator}",
            "gap": str(self.gap),
        }


def _distance_bound(ctx: Construction, k: int, shift: Point, depth: int, target=None) -> Fraction:
    """Sup-distance bound on ``S_k`` between ``shift x`` and ``target`` (default ``x``)."""
    worst = Fraction(0)
    for g in ctx.hierarchy.shape(k):
        here = ctx.resolve(add(g, shift), depth)
        ref = target[g] if target is not None else point_enclosure(g, ctx)
        for a, iv in enumerate(here):
            worst = max(worst, span(iv, ref[a]))
    return worst


def _digits_for(ctx: Construction, k: int, m: int, corner: Point, target) -> dict[int, int]:
    """Sparse digit string of the level-``m`` variant that refines towards ``target``.

    The copy of ``S_k`` sitting at ``corner`` inside the level-``(m-1)``
    block already holds the target; only its cells get non-zero digits,
    each axis picking the piece that contains the target value (or the left
    end of a target interval).
    """
    digits = {}
    for g in ctx.hierarchy.shape(k):
        cell = add(g, corner)
        rho = ctx.cell_rank(cell, m - 1)
        base = ctx.resolve(cell, m - 1)
        for a, iv in enumerate(base):
            want = target[g][a]
            if isinstance(want, DyadicInterval):
                want = max(want.left, iv.left)
            lam = iv.piece_index(want, m)
            if lam:
                digits[rho * ctx.d_P + a] = lam
    return digits


def _search(ctx: Construction, k: int, n: int, target) -> tuple[int, Point, Fraction]:
    """Nest variant copies level by level until ``S_k`` is pinned to within ``1/n``.

    At level ``m`` the chosen variant of ``B_{S_{m-1}}`` refines the copy of
    ``S_k`` found at level ``m-1`` once more, so its boxes shrink by
    ``2**((k+1) + ... + m)`` overall.
    """
    bound_needed = Fraction(1, n)
    corner = (0,) * ctx.d
    for m in range(k + 1, ctx.depth + 1):
        ndig = ctx.hierarchy.cells(m - 1) * ctx.d_P
        t = variant_index(_digits_for(ctx, k, m, corner, target), m, ndig)
        corner = add(ctx.variant_position(m, t), corner)
        bound = _distance_bound(ctx, k, corner, m, target)
        if bound < bound_needed:
            return m, corner, bound
    raise DepthLimitError(f"no level up to {ctx.depth} brings S_{k} within 1/{n}")


def return_time_witness(ctx: Construction, k: int, n: int) -> ReturnTimeWitness:
    """A non-trivial return of ``x`` to its ``[S_k, n]`` neighbourhood.

    The witness is a copy of ``S_k`` inside nested variant blocks whose
    digits select, on every cell, the piece holding ``x_g``; its level
    ``m > k`` is the smallest constructed one giving a bound ``< 1/n``.
    """
    if not 1 <= k < ctx.depth:
        raise DepthLimitError(f"k = {k} needs 1 <= k < depth = {ctx.depth}")
    if n < 1:
        raise ValueError("n must be positive")
    target = {g: point_enclosure(g, ctx) for g in ctx.hierarchy.shape(k)}
    m, g_star, bound = _search(ctx, k, n, target)
    return ReturnTimeWitness(k, n, m, g_star, bound, ctx.hierarchy.side(m))


def syndetic_gap_check(
    ctx: Construction, witness: ReturnTimeWitness, sample: int, seed: int = 0, max_bits: int = 100
) -> bool:
    """Re-check the bound at ``g_star + N_m t`` for ``sample`` random big ``t``."""
    if sample < 1:
        raise ValueError("sample must be >= 1")
    rng = random.Random(seed)
    for i in range(sample):
        t = (0,) * ctx.d if i == 0 else tuple(rng.randrange(-(1 << max_bits), 1 << max_bits) for _ in range(ctx.d))
        shift = tuple(c + witness.gap * s for c, s in zip(witness.g_star, t))
        b = _distance_bound(ctx, witness.k, shift, witness.level)
        if not (b <= witness.bound and b < Fraction(1, witness.n)):
            return False
    return True


def containment_check(ctx: Construction, target: dict, k: int, n: int) -> tuple[Point, Fraction]:
    """Find ``h`` with ``d_{S_k}(h x, y) < 1/n`` for ``y`` given on ``S_k``.

    ``target`` maps each cell of ``S_k`` to the coordinates of ``y`` there
    (a number for ``d_P = 1``).  Each must lie in ``P_g``; on ``S_k`` the
    box ``P_g`` is already final.
    """
    target = {as_point(g): v for g, v in target.items()}
    y = {}
    for g in ctx.hierarchy.shape(k):
        if g not in target:
            raise ValueError(f"target misses cell {g}")
        val = target[g]
        val = tuple(Fraction(v) for v in (val if isinstance(val, (tuple, list)) else (val,)))
        box = ctx.resolve(g)
        if not all(v in iv for v, iv in zip(val, box)):
            raise ValueError(f"target coordinate {g} outside P_g = {box}")
        y[g] = val
    # on S_k the values of x itself are exact
    here = max(span(x_a, y_a) for g in y for x_a, y_a in zip(point_enclosure(g, ctx), y[g]))
    if here < Fraction(1, n):
        return (0,) * ctx.d, here
    _, h, bound = _search(ctx, k, n, y)
    return h, bound


@dataclass
class DensityReport:
    n: int
    levels: list[int]
    fractions: dict[int, Fraction]
    eta_n: Fraction
    d_P: int
    lower_bound: Fraction = field(init=False)

    def __post_init__(self):
        # every later level keeps the fraction >= eta(n, k) > eta(n), so the
        # limsup along S_k is at least eta(n); observed fractions are evidence
        self.lower_bound = self.eta_n

    @property
    def passed(self) -> bool:
        return bool(self.fractions) and all(f > self.eta_n for f in self.fractions.values())

    @property
    def mdim_lower_bound(self) -> Fraction:
        return self.lower_bound * self.d_P

    def to_json(self) -> dict:
        q = lambda x: f"{x.numerator}/{x.denominator}"  # noqa: E731
        return {
            "n": self.n,
            "threshold": q(sch.threshold(self.n)),
            "windows": [f"S_{k}" for k in self.levels],
            "fractions": {str(k): q(f) for k, f in sorted(self.fractions.items())},
            "eta_limit": q(self.eta_n),
            "density_lower_bound": q(self.lower_bound),
            "mdim_lower_bound": q(self.mdim_lower_bound),
            "passed": self.passed,
            "note": "fractions over origin-anchored S_k, where constructed diameters are final",
        }


def density_estimate(ctx: Construction, n: int, levels: Sequence[int] | None = None) -> DensityReport:
    """Exact ``|J_n cap S_k| / |S_k|`` per level from the block profiles."""
    if n < 0:
        raise ValueError("n must be non-negative")
    levels = list(levels) if levels is not None else list(range(1, ctx.depth + 1))
    fractions = {}
    for k in levels:
        if not 1 <= k <= ctx.depth:
            raise DepthLimitError(f"level {k} not constructed")
        fractions[k] = ctx.fraction_at_least(k, sch.threshold(n))
    return DensityReport(n, levels, fractions, ctx.schedule.eta_limit(n), ctx.d_P)


def rescale_map(box: Box):
    """The affine surjection ``P -> box``, axis by axis."""

    def f(p: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return tuple(iv.left + Fraction(v) * iv.diam for v, iv in zip(p, box))

    return f


def rescale_map_check(n: int, box: Box | DyadicInterval) -> bool:
    """Slope of every axis of ``P -> box`` is at least ``2**-(n(n+1)/2)``.

    For an affine map that is exactly ``d(p, q) <= 2**(n(n+1)/2) d(f p, f q)``.
    """
    if isinstance(box, DyadicInterval):
        box = (box,)
    return all(iv.diam >= sch.threshold(n) for iv in box)


def rescale_map_at(ctx: Construction, n: int, g) -> bool:
    g = as_point(g)
    box = ctx.resolve(g)
    if box_diam(box) < sch.threshold(n):
        raise NotInJnError(f"P_{g} has diameter {box_diam(box)} < {sch.threshold(n)}")
    return rescale_map_check(n, box)


@dataclass
class MdimBound:
    lower: Fraction
    upper: int
    from_n: int | None
    reports: list[DensityReport]
    limit_statement: str = (
        "eta(n) = 1 - 1/(n+2) increases to 1, so the lower bounds eta(n) * dim(P) "
        "tend to dim(P); this is a consequence of the schedule, not a computed value"
    )

    def to_json(self) -> dict:
        return {
            "lower": f"{self.lower.numerator}/{self.lower.denominator}",
            "upper": str(self.upper),
            "from_n": self.from_n,
            "limit": self.limit_statement,
            "densities": [r.to_json() for r in self.reports],
        }


def mdim_lower_bound(ctx: Construction, n_list: Iterable[int]) -> MdimBound:
    """Best certified ``delta(J_n) * dim(P)`` over ``n_list``, with the trivial upper bound."""
    reports = [density_estimate(ctx, n) for n in sorted(set(n_list))]
    best, from_n = Fraction(0), None
    for rep in reports:
        if rep.passed and rep.mdim_lower_bound > best:
            best, from_n = rep.mdim_lower_bound, rep.n
    return MdimBound(best, ctx.d_P, from_n, reports)


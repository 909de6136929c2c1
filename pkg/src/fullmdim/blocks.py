"""Blocks of the construction and the lazy coordinate resolver.

A level-``k`` block assigns a dyadic sub-box of ``P = [0,1]^d_P`` to every
cell of ``S_k = [0, N_k)^d``.  Blocks are never stored: the box at any
``g`` in ``Z^d`` is recomputed by walking the levels ``1..depth``.

Placement conventions (the construction leaves them free):

* level 1: the last ``2**d_P`` cells of ``S_1`` receive the orthants of
  ``P`` in lexicographic order; all other cells keep ``P``;
* level ``k >= 2``: the last ``V_k`` subtiles of each level-``k`` tile are
  the variant copies, the ``t``-th of them (0-based) carrying variant
  ``m = t + 1``; the remaining subtiles repeat the level-``(k-1)`` block.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction

from . import schedule as sch
from .dyadic import Box, box_diam, subdivide, unit_box
from .errors import ConfigError, DepthLimitError
from .group import Point, as_point
from .tiling import TilingHierarchy, build_hierarchy

PLACEMENT = {
    "step1": "tail-orthants",
    "variants": "tail",
    "phi": "rank",
    "digits": "msb-first",
}

DEFAULT_MAX_VARIANT_BITS = 1 << 16


def variant_digit(m: int, coord_rank: int, k: int, L: int, d_P: int = 1) -> int:
    """Digit ``coord_rank`` of ``m - 1`` in base ``2**k``, most significant first.

    A variant has ``L * d_P`` digits, one per (cell, axis) pair, so
    ``m`` ranges over ``[1, (2**k) ** (L d_P)]``.
    """
    ndig = L * d_P
    if not 1 <= m <= 1 << (k * ndig):
        raise ValueError(f"variant index {m} outside [1, 2^{k * ndig}]")
    if not 0 <= coord_rank < ndig:
        raise ValueError(f"digit position {coord_rank} outside [0, {ndig})")
    return ((m - 1) >> (k * (ndig - 1 - coord_rank))) & ((1 << k) - 1)


def variant_index(digits: list[int] | dict[int, int], k: int, ndig: int) -> int:
    """Inverse of :func:`variant_digit`; ``digits`` may be sparse ``{rank: digit}``."""
    items = digits.items() if isinstance(digits, dict) else enumerate(digits)
    t = 0
    for pos, lam in items:
        if not 0 <= lam < 1 << k:
            raise ValueError(f"digit {lam} out of range")
        t |= lam << (k * (ndig - 1 - pos))
    return t + 1


def _scaled(profile: Counter, factor: Fraction) -> Counter:
    return Counter({diam * factor: c for diam, c in profile.items()})


class Construction:
    """Schedule, tiling hierarchy and block profiles up to ``depth``.

    The parameters are built level by level: the profile of the level
    ``k-1`` block fixes ``r_{k-1}``, hence ``l_k`` and ``N_k``.  Levels
    whose variant count ``2**(k L d_P)`` has more than ``max_variant_bits``
    bits are refused with :class:`DepthLimitError`.
    """

    def __init__(
        self,
        mode: str = "paper",
        depth: int = 2,
        d: int = 1,
        d_P: int = 1,
        max_variant_bits: int = DEFAULT_MAX_VARIANT_BITS,
    ):
        if depth < 0:
            raise ConfigError("depth must be non-negative")
        if d not in (1, 2) or d_P not in (1, 2):
            raise ConfigError("only d, d_P in {1, 2} are supported")
        if mode not in sch.ETA_RULES:
            raise ConfigError(f"unknown schedule mode {mode!r}")
        self.mode, self.d, self.d_P = mode, d, d_P
        self.max_variant_bits = max_variant_bits
        self.schedule = sch.Schedule(mode, d, d_P)
        self.profiles: dict[int, Counter] = {0: Counter({Fraction(1): 1})}
        s = self.schedule
        sides = [1]
        for k in range(1, depth + 1):
            if k == 1:
                l = sch.select_l1(s.eta(0, 1), s.special)
                cells = l**d
                prof = Counter({Fraction(1): cells - s.special, Fraction(1, 2): s.special})
            else:
                L = s.L[k - 1]
                bits = k * L * d_P
                if bits > max_variant_bits:
                    raise DepthLimitError(
                        f"level {k} needs 2^{bits} variant blocks (limit 2^{max_variant_bits})"
                    )
                r = sch.select_r(k, self.profiles[k - 1], s.eta, d_P)
                V = sch.variant_count(k, L, d_P)
                l = r + V
                s.r[k - 1], s.V[k] = r, V
                base = l**d - V
                prev = self.profiles[k - 1]
                prof = Counter({dm: base * c for dm, c in prev.items()})
                prof.update({dm: V * c for dm, c in _scaled(prev, Fraction(1, 1 << k)).items()})
            s.l[k] = l
            sides.append(sides[-1] * l)
            s.L[k] = sides[-1] ** d
            self.profiles[k] = +prof
        self.hierarchy: TilingHierarchy = build_hierarchy(s, depth)
        self._orthants = subdivide(unit_box(d_P), 1)

    @property
    def depth(self) -> int:
        return self.hierarchy.depth

    def _check_depth(self, depth):
        if depth is None:
            return self.depth
        if not 0 <= depth <= self.depth:
            raise DepthLimitError(f"depth {depth} outside constructed range [0, {self.depth}]")
        return depth

    def first_variant(self, k: int) -> int:
        """Subtile index of the first variant copy in a level-``k`` tile."""
        return self.hierarchy.subtile_count(k) - self.schedule.V[k]

    def cell_rank(self, g: Point, level: int) -> int:
        """Lexicographic rank of ``g``'s offset inside its level tile."""
        n = self.hierarchy.side(level)
        r = 0
        for c in g:
            r = r * n + c % n
        return r

    def resolve(self, g, depth: int | None = None) -> Box:
        """The box ``P_g`` after ``depth`` construction steps."""
        g = as_point(g)
        if len(g) != self.d:
            raise ValueError(f"point {g} is not in Z^{self.d}")
        depth = self._check_depth(depth)
        box = unit_box(self.d_P)
        if depth == 0:
            return box
        h = self.hierarchy
        rho = self.cell_rank(g, 1)
        tail = h.cells(1) - self.schedule.special
        if rho >= tail:
            box = self._orthants[rho - tail]
        for k in range(2, depth + 1):
            sub = h.locate(g, k).subtile_index
            first = self.first_variant(k)
            if sub < first:
                continue
            m = sub - first + 1
            rho = self.cell_rank(g, k - 1)
            L = h.cells(k - 1)
            box = tuple(
                iv.piece(variant_digit(m, rho * self.d_P + a, k, L, self.d_P), k)
                for a, iv in enumerate(box)
            )
        return box

    def diam(self, g, depth: int | None = None) -> Fraction:
        return box_diam(self.resolve(g, depth))

    def block_profile(self, level: int) -> dict[Fraction, int]:
        """``{diameter: count}`` over the level shape, from the counting recursion."""
        self._check_depth(level)
        return dict(sorted(self.profiles[level].items(), reverse=True))

    def fraction_at_least(self, level: int, bound: Fraction) -> Fraction:
        return Fraction(sch.count_at_least(self.profiles[level], bound), self.hierarchy.cells(level))

    def variant_position(self, k: int, m: int) -> Point:
        """Corner of the level-``k`` subtile carrying variant ``m`` in the origin tile."""
        h = self.hierarchy
        below = h.side(k - 1)
        idx = self.first_variant(k) + m - 1
        ratio = h.ratio(k)
        out = []
        for _ in range(self.d):
            idx, c = divmod(idx, ratio)
            out.append(c * below)
        return tuple(reversed(out))


def resolve_interval(g, depth: int, ctx: Construction) -> Box:
    return ctx.resolve(g, depth)


def block_profile(level: int, ctx: Construction) -> dict[Fraction, int]:
    return ctx.block_profile(level)

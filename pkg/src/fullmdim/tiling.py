"""Nested box tilings of Z^d.

Level ``k`` tiles ``Z^d`` by translates of the box ``[0, N_k)^d`` with
centers ``N_k Z^d``.  Each level-``k`` tile is the disjoint union of
``(N_k / N_{k-1})^d`` level-``(k-1)`` tiles, enumerated lexicographically;
that enumeration order is the *subtile index*.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .group import Point, Window, as_point


@dataclass(frozen=True)
class TileAddress:
    level: int
    tile_index: Point
    offset: Point
    subtile_index: int

    def reconstruct(self, side: int) -> Point:
        return tuple(side * q + o for q, o in zip(self.tile_index, self.offset))


@dataclass(frozen=True)
class TilingHierarchy:
    """Side lengths ``N_0 = 1, N_1, ..., N_depth`` of the tiling levels.

    The constructor does not validate divisibility so that corrupted
    hierarchies can be fed to :meth:`check_prime_congruence`; use
    :func:`build_hierarchy` for a validated one.
    """

    d: int
    sides: tuple[int, ...]

    @property
    def depth(self) -> int:
        return len(self.sides) - 1

    def _level(self, level: int, lowest: int = 0) -> int:
        if not lowest <= level <= self.depth:
            raise ValueError(f"level {level} outside [{lowest}, {self.depth}]")
        return level

    def side(self, level: int) -> int:
        return self.sides[self._level(level)]

    def ratio(self, level: int) -> int:
        """Per-axis number of level-``(level-1)`` tiles in a level tile."""
        self._level(level, 1)
        return self.sides[level] // self.sides[level - 1]

    def subtile_count(self, level: int) -> int:
        return self.ratio(level) ** self.d

    def cells(self, level: int) -> int:
        """``|S_level| = N_level^d``."""
        return self.side(level) ** self.d

    def shape(self, level: int) -> Window:
        return Window.box(self.side(level), self.d)

    def locate(self, g, level: int) -> TileAddress:
        """Address of ``g`` in the level tiling (floor division, any sign)."""
        g = as_point(g)
        if len(g) != self.d:
            raise ValueError(f"point {g} is not in Z^{self.d}")
        self._level(level, 1)
        n, below = self.sides[level], self.sides[level - 1]
        q = tuple(c // n for c in g)
        off = tuple(c - n * t for c, t in zip(g, q))
        ratio = n // below
        sub = 0
        for o in off:
            sub = sub * ratio + o // below
        return TileAddress(level, q, off, sub)

    def count_full_tiles(self, W: Window, level: int) -> int:
        """Number of level tiles lying entirely inside ``W``."""
        n = self.side(level)
        count = 1
        for a, b in zip(W.lo, W.hi):
            count *= max(0, b // n - (-(-a // n)))
        return count

    def check_prime_congruence(self, W: Window) -> bool:
        """Check that level-``k`` tiles meeting ``W`` are refined identically.

        For every consecutive pair of constructed levels ``k-1 < k`` with
        ``k >= 2`` and every level-``k`` tile meeting ``W``: the tile's ends
        must be level-``(k-1)`` boundaries, and the level-``(k-1)``
        boundaries seen inside it (relative to its corner) must coincide
        with those of the tile at the origin over the same relative range.
        Box tilings are products of 1-d tilings, so the comparison runs
        per axis.
        """
        for k in range(2, self.depth + 1):
            big, small = self.sides[k], self.sides[k - 1]
            for a, b in zip(W.lo, W.hi):
                for q in range(a // big, (b - 1) // big + 1):
                    start = q * big
                    for end in (start, start + big):
                        if a <= end <= b and end % small:
                            return False
                    u, v = max(a, start) - start, min(b, start + big) - start
                    first = -(-(start + u) // small) * small - start
                    ref = -(-u // small) * small
                    if first != ref and (first < v or ref < v):
                        return False
        return True

    def center_gap_witness(self, level: int) -> Window:
        """Finite ``K`` with ``K + N_level Z^d = Z^d``: the shape itself."""
        return self.shape(level)

    def partition_check(self, W: Window, level: int) -> bool:
        """Every point of ``W`` lies in exactly one level tile.

        Vectorized over ``W`` per axis (box tiles are products): floor
        division must reconstruct each coordinate with an in-range offset.
        """
        n = self.side(level)
        for a, b in zip(W.lo, W.hi):
            if max(abs(a), abs(b), n) >= 2**62:
                # few huge tiles: the pieces they cut from [a, b) must tile it
                covered = a
                for q in range(a // n, (b - 1) // n + 1):
                    lo, hi = max(a, q * n), min(b, (q + 1) * n)
                    addr = self.locate((lo,) * self.d, level)
                    if lo != covered or addr.tile_index[0] != q or addr.reconstruct(n)[0] != lo:
                        return False
                    covered = hi
                if covered != b:
                    return False
                continue
            g = np.arange(a, b, dtype=np.int64)
            q = np.floor_divide(g, n)
            off = g - q * n
            if not (np.all(q * n + off == g) and np.all((off >= 0) & (off < n))):
                return False
        return True


def build_hierarchy(schedule, depth: int) -> TilingHierarchy:
    """Sides ``N_k = l_k N_{k-1}`` from a schedule's ``l`` table."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if depth > schedule.depth:
        raise ValueError(f"schedule only covers {schedule.depth} levels")
    sides = [1]
    for k in range(1, depth + 1):
        sides.append(sides[-1] * schedule.l[k])
    return TilingHierarchy(schedule.d, tuple(sides))

"""Closed intervals and boxes with dyadic endpoints, kept exact."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction


def _normalize(lo: int, hi: int, exp: int) -> tuple[int, int, int]:
    while exp > 0 and not (lo & 1) and not (hi & 1):
        lo >>= 1
        hi >>= 1
        exp -= 1
    return lo, hi, exp


def dyadic_str(num: int, exp: int) -> str:
    """``a/2^e`` text form of ``num / 2**exp`` (plain integer when ``e = 0``)."""
    while exp > 0 and not num & 1:
        num >>= 1
        exp -= 1
    return str(num) if exp == 0 else f"{num}/2^{exp}"


def parse_dyadic(text: str) -> Fraction:
    num, sep, den = text.partition("/")
    if not sep:
        return Fraction(int(num))
    if den.startswith("2^"):
        return Fraction(int(num), 2 ** int(den[2:]))
    return Fraction(int(num), int(den))


@dataclass(frozen=True)
class DyadicInterval:
    """``[lo / 2**exp, hi / 2**exp]`` inside ``[0, 1]``, normalized."""

    lo: int
    hi: int
    exp: int = 0

    def __post_init__(self):
        if self.exp < 0:
            raise ValueError("negative exponent")
        if not 0 <= self.lo < self.hi <= 1 << self.exp:
            raise ValueError(f"bad dyadic interval [{self.lo}, {self.hi}]/2^{self.exp}")
        norm = _normalize(self.lo, self.hi, self.exp)
        if norm != (self.lo, self.hi, self.exp):
            object.__setattr__(self, "lo", norm[0])
            object.__setattr__(self, "hi", norm[1])
            object.__setattr__(self, "exp", norm[2])

    @property
    def left(self) -> Fraction:
        return Fraction(self.lo, 1 << self.exp)

    @property
    def right(self) -> Fraction:
        return Fraction(self.hi, 1 << self.exp)

    @property
    def diam(self) -> Fraction:
        return Fraction(self.hi - self.lo, 1 << self.exp)

    def piece(self, lam: int, k: int) -> "DyadicInterval":
        """The ``lam``-th of ``2**k`` equal closed pieces, left to right."""
        if not 0 <= lam < 1 << k:
            raise ValueError(f"piece {lam} out of range for 2^{k} parts")
        width = self.hi - self.lo
        base = self.lo << k
        return DyadicInterval(base + lam * width, base + (lam + 1) * width, self.exp + k)

    def subdivide(self, k: int) -> list["DyadicInterval"]:
        if k < 1:
            raise ValueError("k must be >= 1")
        return [self.piece(lam, k) for lam in range(1 << k)]

    def piece_index(self, value: Fraction, k: int) -> int:
        """Index of the leftmost piece containing ``value`` (shared ends go left)."""
        value = Fraction(value)
        if value not in self:
            raise ValueError(f"{value} not in {self}")
        pos = (value - self.left) / self.diam * (1 << k)
        lam = pos.numerator // pos.denominator
        if lam and pos.denominator == 1:
            lam -= 1
        return min(lam, (1 << k) - 1)

    def __contains__(self, value) -> bool:
        if isinstance(value, DyadicInterval):
            return self.left <= value.left and value.right <= self.right
        return self.left <= Fraction(value) <= self.right

    def __str__(self) -> str:
        return f"[{dyadic_str(self.lo, self.exp)}, {dyadic_str(self.hi, self.exp)}]"

    def to_json(self) -> list[str]:
        return [dyadic_str(self.lo, self.exp), dyadic_str(self.hi, self.exp)]


UNIT = DyadicInterval(0, 1, 0)

Box = tuple[DyadicInterval, ...]


def unit_box(d_P: int = 1) -> Box:
    return (UNIT,) * d_P


def box_diam(box: Box) -> Fraction:
    """Largest side: the diameter in the sup-metric on ``[0,1]^d_P``."""
    return max(iv.diam for iv in box)


def box_contains(outer: Box, inner) -> bool:
    return all(v in iv for iv, v in zip(outer, inner))


def subdivide(box: Box | DyadicInterval, k: int) -> list:
    """Equal ``2**k``-per-axis split, lexicographic over axes."""
    if isinstance(box, DyadicInterval):
        return box.subdivide(k)
    return list(itertools.product(*(iv.subdivide(k) for iv in box)))


def span(*items) -> Fraction:
    """Length of the hull of points and intervals on one axis.

    Any two points taken from the items are at most this far apart.
    """
    los, his = [], []
    for it in items:
        if isinstance(it, DyadicInterval):
            los.append(it.left)
            his.append(it.right)
        else:
            los.append(Fraction(it))
            his.append(Fraction(it))
    return max(his) - min(los)


def box_str(box: Box) -> str:
    return " x ".join(str(iv) for iv in box)

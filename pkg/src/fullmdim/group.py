"""Elements and finite boxes of the group Z^d.

Points are plain tuples of Python ints, so coordinates have arbitrary
precision.  The group operation is written additively: the translate
``K g`` of a finite set ``K`` is ``{k + g : k in K}``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

Point = tuple[int, ...]


def identity(d: int) -> Point:
    return (0,) * d


def add(g: Point, h: Point) -> Point:
    return tuple(a + b for a, b in zip(g, h))


def neg(g: Point) -> Point:
    return tuple(-a for a in g)


def sub(g: Point, h: Point) -> Point:
    return tuple(a - b for a, b in zip(g, h))


def as_point(g: int | Sequence[int]) -> Point:
    """Accept a bare int for d = 1 and any int sequence otherwise."""
    if isinstance(g, int):
        return (g,)
    return tuple(int(c) for c in g)


@dataclass(frozen=True)
class Window:
    """Half-open box ``[a_0, b_0) x ... x [a_{d-1}, b_{d-1})``."""

    lo: Point
    hi: Point

    def __post_init__(self):
        if len(self.lo) != len(self.hi) or not self.lo:
            raise ValueError("window bounds must have the same positive length")
        if any(a >= b for a, b in zip(self.lo, self.hi)):
            raise ValueError(f"empty window {self.lo}..{self.hi}")

    @classmethod
    def box(cls, side: int, d: int = 1, start: int = 0) -> "Window":
        return cls((start,) * d, (start + side,) * d)

    @classmethod
    def parse(cls, spec: str) -> "Window":
        """Parse the ``"a..b"`` (comma-separated per axis) text form."""
        lo, hi = [], []
        for part in spec.split(","):
            a, sep, b = part.strip().partition("..")
            if not sep:
                raise ValueError(f"bad window axis {part!r}, expected 'a..b'")
            lo.append(int(a))
            hi.append(int(b))
        return cls(tuple(lo), tuple(hi))

    def __str__(self) -> str:
        return ",".join(f"{a}..{b}" for a, b in zip(self.lo, self.hi))

    @property
    def d(self) -> int:
        return len(self.lo)

    @property
    def sides(self) -> Point:
        return tuple(b - a for a, b in zip(self.lo, self.hi))

    @property
    def size(self) -> int:
        n = 1
        for s in self.sides:
            n *= s
        return n

    def __contains__(self, g) -> bool:
        g = as_point(g)
        return len(g) == self.d and all(a <= c < b for a, c, b in zip(self.lo, g, self.hi))

    def __iter__(self) -> Iterator[Point]:
        return itertools.product(*(range(a, b) for a, b in zip(self.lo, self.hi)))

    def rank(self, g: Point) -> int:
        """Position of ``g`` in the lexicographic enumeration."""
        r = 0
        for a, c, b in zip(self.lo, g, self.hi):
            r = r * (b - a) + (c - a)
        return r

    def unrank(self, r: int) -> Point:
        out = []
        for a, b in reversed(list(zip(self.lo, self.hi))):
            r, c = divmod(r, b - a)
            out.append(a + c)
        if r:
            raise IndexError("rank outside window")
        return tuple(reversed(out))

    def translate(self, v: Point) -> "Window":
        return Window(add(self.lo, v), add(self.hi, v))

    def to_json(self) -> list[str]:
        return [f"{a}..{b}" for a, b in zip(self.lo, self.hi)]

    @classmethod
    def from_json(cls, axes: list[str]) -> "Window":
        return cls.parse(",".join(axes))


def _check_k(K: Iterable[Point]) -> list[Point]:
    K = sorted(set(as_point(k) for k in K))
    if not K:
        raise ValueError("K must be a non-empty finite set")
    return K


def boundary(F: Window, K: Iterable[Point]) -> list[Point]:
    """All ``g`` with ``K g`` meeting both ``F`` and its complement, sorted.

    Only ``g`` in the dilation ``F - K`` can have ``K g`` meet ``F``, so
    the scan runs over that bounding box.
    """
    K = _check_k(K)
    lo = tuple(a - max(k[i] for k in K) for i, a in enumerate(F.lo))
    hi = tuple(b - min(k[i] for k in K) for i, b in enumerate(F.hi))
    out = []
    for g in Window(lo, hi):
        inside = [add(k, g) in F for k in K]
        if any(inside) and not all(inside):
            out.append(g)
    return out


def _union_volume(boxes: list[tuple[Point, Point]]) -> int:
    # coordinate compression; fine for the few dozen boxes a K produces
    d = len(boxes[0][0])
    cuts = [sorted({b[0][i] for b in boxes} | {b[1][i] for b in boxes}) for i in range(d)]
    total = 0
    for cell in itertools.product(*(range(len(c) - 1) for c in cuts)):
        lo = tuple(cuts[i][j] for i, j in enumerate(cell))
        hi = tuple(cuts[i][j + 1] for i, j in enumerate(cell))
        if any(all(blo[i] <= lo[i] and hi[i] <= bhi[i] for i in range(d)) for blo, bhi in boxes):
            vol = 1
            for a, b in zip(lo, hi):
                vol *= b - a
            total += vol
    return total


def boundary_size(F: Window, K: Iterable[Point]) -> int:
    """``|B(F, K)|`` without enumerating ``F``.

    ``{g : Kg meets F}`` is the union of the boxes ``F - k``; ``{g : Kg inside F}``
    is the box ``[a - min k, b - max k)``.  The boundary is their difference.
    """
    K = _check_k(K)
    union = _union_volume([(sub(F.lo, k), sub(F.hi, k)) for k in K])
    inner = 1
    for i, (a, b) in enumerate(zip(F.lo, F.hi)):
        inner *= max(0, (b - max(k[i] for k in K)) - (a - min(k[i] for k in K)))
    return union - inner


def is_invariant(F: Window, K: Iterable[Point], eps: Fraction | int | str) -> bool:
    """True iff ``|B(F, K)| / |F| <= eps``, compared exactly."""
    eps = Fraction(eps)
    if eps < 0:
        raise ValueError("eps must be non-negative")
    return Fraction(boundary_size(F, K), F.size) <= eps


def folner_window(index: int, hierarchy) -> Window:
    """The ``index``-th Følner box ``[0, N_index)^d`` of a tiling hierarchy."""
    if index < 1:
        raise ValueError("Følner index starts at 1")
    return hierarchy.shape(index)

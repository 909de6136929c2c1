"""The exact-rational parameter schedule.

``eta(n, k)`` is the proportion of coordinates of a level-``k`` block that
must keep diameter at least ``2**-(n(n+1)/2)``; ``eta_limit(n)`` is its limit
in ``k``.  From these follow the integers ``l_1`` (length of the first
tile) and, for every later level, the number ``r_{k-1}`` of unmodified
sub-blocks and ``l_k = r_{k-1} + V_k`` where ``V_k`` counts the variant
blocks.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .errors import InfeasibleScheduleError

EtaFn = Callable[[int, int], Fraction]


def eta(n: int, k: int) -> Fraction:
    if n < 0 or k < 0:
        raise ValueError("eta is defined for non-negative indices")
    return 1 - Fraction(1, n + 2) + Fraction(1, k + 3)


def eta_limit(n: int) -> Fraction:
    if n < 0:
        raise ValueError("eta_limit is defined for n >= 0")
    return 1 - Fraction(1, n + 2)


def toy_eta(n: int, k: int) -> Fraction:
    # a quarter of the real schedule: same monotonicity, tiny l_1 and r
    return eta(n, k) / 4


def toy_eta_limit(n: int) -> Fraction:
    return eta_limit(n) / 4


ETA_RULES: dict[str, tuple[EtaFn, Callable[[int], Fraction]]] = {
    "paper": (eta, eta_limit),
    "toy": (toy_eta, toy_eta_limit),
}


def verify_eta_properties(
    n_max: int,
    k_max: int,
    eta_fn: EtaFn = eta,
    limit_fn: Callable[[int], Fraction] = eta_limit,
) -> bool:
    """Scan ``0 <= n < k <= k_max, n <= n_max`` for the four schedule properties.

    (1) ``0 <= eta(n,k) < 1`` and ``0 < eta(n) < 1``; (2) strictly decreasing
    in ``k``; (3) ``eta(n,k) > eta(n)``; (4) ``eta(n)`` increasing, and
    ``eta(n) > 1 - delta`` once ``n > 1/delta - 2`` (checked at
    ``delta = 1/(n+1)`` for every ``n`` in range).
    """
    if n_max < 0 or k_max < 0:
        raise ValueError("bounds must be non-negative")
    for n in range(n_max + 1):
        lim = limit_fn(n)
        if not 0 < lim < 1:
            return False
        if n and not limit_fn(n - 1) < lim:
            return False
        # eta(n) > 1 - delta for every delta with n > 1/delta - 2
        delta = Fraction(1, n + 1)
        if not lim > 1 - delta:
            return False
        for k in range(n + 1, k_max + 1):
            e = eta_fn(n, k)
            if not 0 <= e < 1:
                return False
            if not eta_fn(n, k + 1) < e:
                return False
            if not e > lim:
                return False
    return True


def select_l1(eta01: Fraction = Fraction(3, 4), special: int = 2) -> int:
    """Smallest ``l > special`` with ``(l - special) / l >= eta01``.

    ``special`` is the number of coordinates given a half (an orthant for
    cubes) in the first block: 2 for an interval, ``2**d_P`` for a cube.
    """
    eta01 = Fraction(eta01)
    if eta01 >= 1:
        raise InfeasibleScheduleError(f"eta(0,1) = {eta01} cannot be reached")
    # (l - s)/l >= e  <=>  l >= s / (1 - e)
    l = max(special + 1, -(-special * eta01.denominator // (eta01.denominator - eta01.numerator)))
    while Fraction(l - special, l) < eta01:
        l += 1
    while l - 1 > special and Fraction(l - 1 - special, l - 1) >= eta01:
        l -= 1
    return l


def threshold(n: int) -> Fraction:
    """Diameter threshold ``2**-(n(n+1)/2)``."""
    return Fraction(1, 2 ** (n * (n + 1) // 2))


def _as_profile(profile) -> Counter:
    if isinstance(profile, Mapping):
        return Counter({Fraction(k): int(v) for k, v in profile.items() if v})
    return Counter(Fraction(x) for x in profile)


def count_at_least(profile, bound: Fraction) -> int:
    return sum(c for diam, c in _as_profile(profile).items() if diam >= bound)


def variant_count(k: int, L: int, d_P: int = 1) -> int:
    """``V_k = (2**k) ** (L d_P)``: one block per choice of sub-box everywhere."""
    return 1 << (k * L * d_P)


def eq33_holds(k: int, profile, r: int, V: int, eta_fn: EtaFn = eta) -> bool:
    """The proportion inequality for every ``0 <= n <= k`` at a given ``r``."""
    prof = _as_profile(profile)
    L = sum(prof.values())
    for n in range(k + 1):
        c = count_at_least(prof, threshold(n))
        if Fraction(c * r, L * (r + V)) < eta_fn(n, k):
            return False
    return True


def select_r(k: int, profile, eta_fn: EtaFn = eta, d_P: int = 1) -> int:
    """Smallest positive ``r`` satisfying the proportion inequality for all ``n <= k``.

    ``profile`` is the multiset of diameters of the level-``(k-1)`` block
    (a ``{diameter: count}`` mapping or an iterable of diameters).  Each
    ``n`` is solved in closed form, ``r >= eta L V / (c - eta L)``; the
    maximum is then confirmed against its neighbours.
    """
    prof = _as_profile(profile)
    L = sum(prof.values())
    if L == 0:
        raise ValueError("empty profile")
    V = variant_count(k, L, d_P)
    r = 1
    for n in range(k + 1):
        e = Fraction(eta_fn(n, k))
        c = count_at_least(prof, threshold(n))
        slack = c - e * L
        if slack <= 0:
            if e == 0:
                continue
            raise InfeasibleScheduleError(
                f"eta({n},{k}) = {e} but only {c}/{L} coordinates reach diameter {threshold(n)}"
            )
        need = e * L * V / slack
        r = max(r, -(-need.numerator // need.denominator))
    if not eq33_holds(k, prof, r, V, eta_fn) or (r > 1 and eq33_holds(k, prof, r - 1, V, eta_fn)):
        raise AssertionError(f"closed-form r = {r} is not the minimal solution")
    return r


@dataclass
class Schedule:
    """Integer parameters per level; all exact.

    ``l[k]`` for ``k >= 1``; ``r[k-1]`` and ``V[k]`` for ``k >= 2``;
    ``L[k] = |S_k| = N_k^d``.
    """

    mode: str
    d: int = 1
    d_P: int = 1
    l: dict[int, int] = field(default_factory=dict)
    r: dict[int, int] = field(default_factory=dict)
    V: dict[int, int] = field(default_factory=dict)
    L: dict[int, int] = field(default_factory=lambda: {0: 1})

    def __post_init__(self):
        if self.mode not in ETA_RULES:
            raise ValueError(f"unknown schedule mode {self.mode!r}")

    @property
    def depth(self) -> int:
        return max(self.l, default=0)

    def eta(self, n: int, k: int) -> Fraction:
        return ETA_RULES[self.mode][0](n, k)

    def eta_limit(self, n: int) -> Fraction:
        return ETA_RULES[self.mode][1](n)

    @property
    def special(self) -> int:
        """Coordinates of the first block given an orthant of ``P``."""
        return 2**self.d_P


def eta_table(schedule: Schedule, depth: int) -> dict[str, str]:
    """The ``eta(n, k)`` values the construction actually used, as ``p/q``."""
    out = {}
    for k in range(1, depth + 1):
        for n in range(k + 1 if k > 1 else 1):
            v = schedule.eta(n, k)
            out[f"{n},{k}"] = f"{v.numerator}/{v.denominator}"
    return out

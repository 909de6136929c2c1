"""The limit configuration, its canonical point, and certificate files."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import schedule as sch
from .blocks import PLACEMENT, Construction
from .dyadic import Box, DyadicInterval, parse_dyadic
from .errors import CertificateError, CertificateInvariantError, VersionMismatchError, WindowCapError
from .group import Point, Window, as_point

FORMAT_VERSION = 1
DEFAULT_WINDOW_CAP = 1 << 20


def canonical_point(g, depth: int | None, ctx: Construction) -> tuple[Fraction, ...]:
    """Left endpoints of ``P_g`` after ``depth`` steps: a lower approximation of ``x_g``."""
    return tuple(iv.left for iv in ctx.resolve(g, depth))


def is_stable(g: Point, ctx: Construction) -> bool:
    """Whether ``P_g`` can no longer change beyond the constructed depth.

    A point of ``[0, N_D)^d`` lies in subtile 0 of its tile at every level
    above ``D``; subtile 0 is never a variant because every ``r`` is
    positive, so its box stays ``P_g^D`` forever and ``x_g`` is the exact
    left endpoint.
    """
    n = ctx.hierarchy.side(ctx.depth)
    return ctx.depth >= 1 and all(0 <= c < n for c in g)


def point_enclosure(g, ctx: Construction) -> tuple:
    """Per axis, either the exact value of ``x_g`` or an interval holding it."""
    g = as_point(g)
    box = ctx.resolve(g)
    if is_stable(g, ctx):
        return tuple(iv.left for iv in box)
    return box


def window_pattern(W: Window, depth: int | None, ctx: Construction, cap: int = DEFAULT_WINDOW_CAP) -> list[Box]:
    """Boxes of the depth-resolved configuration over ``W``, lexicographic order."""
    if W.size > cap:
        raise WindowCapError(f"window of {W.size} cells exceeds cap {cap}")
    return [ctx.resolve(g, depth) for g in W]


# --- certificates -----------------------------------------------------------


def q_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _ints(table: dict[int, int]) -> dict[str, str]:
    return {str(k): str(v) for k, v in sorted(table.items())}


@dataclass
class Certificate:
    d: int
    d_P: int
    mode: str
    sides: list[int]
    l: dict[int, int]
    r: dict[int, int]
    V: dict[int, int]
    eta: dict[str, str] = field(default_factory=dict)
    placement: dict[str, str] = field(default_factory=lambda: dict(PLACEMENT))
    results: dict = field(default_factory=dict)
    version: int = FORMAT_VERSION

    @property
    def depth(self) -> int:
        return len(self.sides) - 1

    @classmethod
    def from_construction(cls, ctx: Construction, results: dict | None = None) -> "Certificate":
        s = ctx.schedule
        return cls(
            d=ctx.d,
            d_P=ctx.d_P,
            mode=ctx.mode,
            sides=list(ctx.hierarchy.sides),
            l=dict(s.l),
            r=dict(s.r),
            V=dict(s.V),
            eta=sch.eta_table(s, ctx.depth),
            results=results or {},
        )

    def to_json(self) -> dict:
        return {
            "version": self.version,
            "group": {"d": self.d, "P_dim": self.d_P},
            "schedule": {
                "mode": self.mode,
                "eta": dict(sorted(self.eta.items())),
                "l": _ints(self.l),
                "r": _ints(self.r),
                "V": _ints(self.V),
            },
            "hierarchy": {"sides": [str(n) for n in self.sides], "shapes_per_level": 1},
            "placement": dict(sorted(self.placement.items())),
            "results": self.results,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, data: dict) -> "Certificate":
        if data.get("version") != FORMAT_VERSION:
            raise VersionMismatchError(f"certificate version {data.get('version')!r}, expected {FORMAT_VERSION}")
        try:
            sched = data["schedule"]
            ints = lambda t: {int(k): int(v) for k, v in t.items()}  # noqa: E731
            return cls(
                d=int(data["group"]["d"]),
                d_P=int(data["group"]["P_dim"]),
                mode=sched["mode"],
                sides=[int(n) for n in data["hierarchy"]["sides"]],
                l=ints(sched["l"]),
                r=ints(sched["r"]),
                V=ints(sched["V"]),
                eta=dict(sched["eta"]),
                placement=dict(data["placement"]),
                results=data.get("results", {}),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise CertificateError(f"malformed certificate: {exc}") from exc

    def validate(self) -> None:
        """Re-derive every construction identity and inequality from the stored numbers."""
        bad = CertificateInvariantError
        if self.mode not in sch.ETA_RULES:
            raise bad(f"unknown mode {self.mode!r}")
        if self.d not in (1, 2) or self.d_P not in (1, 2):
            raise bad("group and P dimensions must be 1 or 2")
        if self.placement != PLACEMENT:
            raise bad("unsupported placement rule")
        eta_fn = sch.ETA_RULES[self.mode][0]
        if not self.sides or self.sides[0] != 1:
            raise bad("N_0 must be 1")
        depth = self.depth
        if sorted(self.l) != list(range(1, depth + 1)):
            raise bad("l table does not match hierarchy depth")
        if sorted(self.r) != list(range(1, depth)) or sorted(self.V) != list(range(2, depth + 1)):
            raise bad("r/V tables do not match hierarchy depth")
        if self.eta != sch.eta_table(sch.Schedule(self.mode), depth):
            raise bad("eta table differs from the schedule rule")
        for k in range(1, depth + 1):
            prev, cur = self.sides[k - 1], self.sides[k]
            if cur <= prev or cur % prev:
                raise bad(f"N_{k} = {cur} is not a proper multiple of N_{k - 1} = {prev}")
            if cur != prev * self.l[k]:
                raise bad(f"N_{k} != l_{k} * N_{k - 1}")
        special = 2**self.d_P
        profile = None
        for k in range(1, depth + 1):
            l = self.l[k]
            if k == 1:
                if not (l > special and Fraction(l - special, l) >= eta_fn(0, 1)):
                    raise bad(f"l_1 = {l} violates the first-step proportion inequality")
                if l != sch.select_l1(eta_fn(0, 1), special):
                    raise bad(f"l_1 = {l} is not the minimal admissible value")
                profile = {Fraction(1): l**self.d - special, Fraction(1, 2): special}
                continue
            L = self.sides[k - 1] ** self.d
            r, V = self.r[k - 1], self.V[k]
            if V != sch.variant_count(k, L, self.d_P):
                raise bad(f"V_{k} is not 2^(k L d_P)")
            if r < 1 or not sch.eq33_holds(k, profile, r, V, eta_fn):
                raise bad(f"r_{k - 1} = {r} violates the proportion inequality")
            if r > 1 and sch.eq33_holds(k, profile, r - 1, V, eta_fn):
                raise bad(f"r_{k - 1} = {r} is not minimal")
            if l != r + V:
                raise bad(f"l_{k} != r_{k - 1} + V_{k}")
            base = l**self.d - V
            nxt: dict[Fraction, int] = {}
            for dm, c in profile.items():
                nxt[dm] = nxt.get(dm, 0) + base * c
                nxt[dm / (1 << k)] = nxt.get(dm / (1 << k), 0) + V * c
            profile = nxt

    def construction(self, **kw) -> Construction:
        return Construction(self.mode, self.depth, self.d, self.d_P, **kw)


def emit_certificate(path, cert: Certificate) -> Path:
    path = Path(path)
    path.write_text(cert.dumps())
    return path


def load_certificate(path) -> Certificate:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise CertificateError(f"cannot read certificate: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CertificateError(f"not JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise CertificateError("certificate must be a JSON object")
    cert = Certificate.from_json(data)
    cert.validate()
    return cert


def box_to_json(box: Box) -> list[list[str]]:
    return [iv.to_json() for iv in box]


def interval_from_json(pair: list[str]) -> DyadicInterval:
    lo, hi = (parse_dyadic(t) for t in pair)
    exp = max(lo.denominator, hi.denominator).bit_length() - 1
    return DyadicInterval(int(lo * (1 << exp)), int(hi * (1 << exp)), exp)


"""Verification suites run by the command line and embedded in certificates.

Every suite returns a list of named checks with exact values; the run is
seeded so that reports are byte-for-byte reproducible.
"""
from __future__ import annotations

import random
from fractions import Fraction

from . import schedule as sch
from .blocks import Construction
from .dyadic import box_contains, box_diam
from .errors import DepthLimitError
from .group import Window, boundary_size
from .limit import canonical_point
from .verify import density_estimate, mdim_lower_bound, return_time_witness, syndetic_gap_check

SUITES = ("tilings", "schedule", "blocks", "return-times", "density", "mdim")

SUITE_EXIT_CODES = {name: 10 + i for i, name in enumerate(SUITES)}


def q(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _check(name: str, passed: bool, **values) -> dict:
    return {"name": name, "passed": bool(passed), **values}


def tilings_suite(ctx: Construction, seed: int = 0, **_) -> list[dict]:
    h = ctx.hierarchy
    half = 10**6 if ctx.d == 1 else 500
    W = Window((-half,) * ctx.d, (half,) * ctx.d)
    out = []
    for k in range(1, min(h.depth, 2) + 1):
        out.append(_check(f"partition level {k}", h.partition_check(W, k), window=str(W)))
    out.append(_check("prime congruence", h.check_prime_congruence(W), window=str(W)))
    worst = True
    for k in range(1, min(h.depth, 2) + 1):
        for n in range(1, 6):
            side = (n + 1) * h.side(k)
            for start in (0, 1, -side // 2 - 3):
                if h.count_full_tiles(Window.box(side, ctx.d, start), k) < n**ctx.d:
                    worst = False
    out.append(_check("full tile count for windows of side (n+1) N_k, n <= 5", worst))
    K = [tuple(v) for v in Window((-1,) * ctx.d, (2,) * ctx.d)]
    ratios = [Fraction(boundary_size(h.shape(k), K), h.cells(k)) for k in range(1, h.depth + 1)]
    out.append(
        _check(
            "boundary ratio of S_k decreases",
            all(a >= b for a, b in zip(ratios, ratios[1:])),
            ratios=[q(r) for r in ratios],
        )
    )
    rng = random.Random(seed)
    for k in range(1, h.depth + 1):
        K = h.center_gap_witness(k)
        pts = [tuple(rng.randrange(-(1 << 200), 1 << 200) for _ in range(ctx.d)) for _ in range(100)]
        ok = all(h.locate(g, k).offset in K for g in pts)
        out.append(_check(f"centers syndetic level {k}", ok, gap=str(h.side(k))))
    return out


def schedule_suite(ctx: Construction, **_) -> list[dict]:
    s = ctx.schedule
    eta_fn, lim_fn = sch.ETA_RULES[s.mode]
    out = []
    if s.mode == "paper":
        out.append(_check("eta properties on 50x50 grid", sch.verify_eta_properties(50, 50, eta_fn, lim_fn)))
    if ctx.depth >= 1:
        l1 = s.l[1]
        out.append(
            _check(
                "first-step proportion",
                Fraction(l1 - s.special, l1) >= s.eta(0, 1),
                l1=str(l1),
                proportion=q(Fraction(l1 - s.special, l1)),
                eta=q(s.eta(0, 1)),
            )
        )
    for k in range(2, ctx.depth + 1):
        prof = ctx.profiles[k - 1]
        r, V = s.r[k - 1], s.V[k]
        ok = sch.eq33_holds(k, prof, r, V, eta_fn) and not (r > 1 and sch.eq33_holds(k, prof, r - 1, V, eta_fn))
        out.append(_check(f"minimal r_{k - 1}", ok, r=str(r), l=str(s.l[k])))
        for n in range(k + 1):
            frac = ctx.fraction_at_least(k, sch.threshold(n))
            out.append(
                _check(
                    f"level {k} proportion n={n}",
                    frac >= s.eta(n, k),
                    fraction=q(frac),
                    eta=q(s.eta(n, k)),
                )
            )
    return out


def blocks_suite(ctx: Construction, seed: int = 0, **_) -> list[dict]:
    rng = random.Random(seed)
    out = []
    nested = True
    for _ in range(300):
        g = tuple(rng.randrange(-(1 << 300), 1 << 300) for _ in range(ctx.d))
        prev = ctx.resolve(g, 0)
        for depth in range(1, ctx.depth + 1):
            cur = ctx.resolve(g, depth)
            if not all(c in p for c, p in zip(cur, prev)):
                nested = False
            prev = cur
        if not box_contains(prev, canonical_point(g, None, ctx)):
            nested = False
    out.append(_check("nesting on 300 random points", nested))
    for k in range(1, ctx.depth + 1):
        h = ctx.hierarchy
        prof = ctx.block_profile(k)
        ok = sum(prof.values()) == h.cells(k)
        if h.cells(k) <= 4096:
            brute: dict = {}
            for g in h.shape(k):
                dm = box_diam(ctx.resolve(g, k))
                brute[dm] = brute.get(dm, 0) + 1
            ok = ok and brute == dict(prof)
        else:
            # boundary subtiles between base and variant regions
            first = ctx.first_variant(k)
            below = h.side(k - 1)
            for sub in (0, first - 1, first, h.subtile_count(k) - 1):
                corner = Window.box(h.ratio(k), ctx.d).unrank(sub)
                g0 = tuple(c * below for c in corner)
                expect = Fraction(1) if sub < first else Fraction(1, 1 << k)
                ok = ok and ctx.diam(g0, k) == expect
        out.append(_check(f"profile level {k}", ok, profile={q(dm): str(c) for dm, c in prof.items()}))
    return out


def return_times_suite(ctx: Construction, n_list=(3,), sample: int = 50, seed: int = 0, **_) -> list[dict]:
    out = []
    for k in range(1, ctx.depth):
        if ctx.hierarchy.cells(k) > 4096:
            continue
        for n in n_list:
            if n < 1:
                continue
            try:
                w = return_time_witness(ctx, k, n)
            except DepthLimitError as exc:
                out.append(_check(f"return time k={k} n={n}", False, error=str(exc)))
                continue
            gap_ok = syndetic_gap_check(ctx, w, sample, seed)
            out.append(_check(f"return time k={k} n={n}", w.bound < Fraction(1, n) and gap_ok, **w.to_json()))
    return out


def density_suite(ctx: Construction, n_list=None, **_) -> list[dict]:
    n_list = range(ctx.depth + 1) if n_list is None else n_list
    out = []
    for n in n_list:
        rep = density_estimate(ctx, n)
        values = rep.to_json()
        values.pop("passed")
        out.append(_check(f"density n={n}", rep.passed, **values))
    return out


def mdim_suite(ctx: Construction, n_list=None, **_) -> list[dict]:
    n_list = range(ctx.depth + 1) if n_list is None else n_list
    b = mdim_lower_bound(ctx, n_list)
    return [_check("mdim sandwich", 0 < b.lower <= b.upper, **b.to_json())]


RUNNERS = {
    "tilings": tilings_suite,
    "schedule": schedule_suite,
    "blocks": blocks_suite,
    "return-times": return_times_suite,
    "density": density_suite,
    "mdim": mdim_suite,
}


def run_suites(ctx: Construction, suites=SUITES, n_list=None, sample: int = 50, seed: int = 0) -> dict:
    """Run the selected suites in canonical order."""
    report = {}
    for name in SUITES:
        if name not in suites:
            continue
        kw = {"seed": seed, "sample": sample}
        if n_list is not None:
            kw["n_list"] = list(n_list)
        checks = RUNNERS[name](ctx, **kw)
        report[name] = {"passed": all(c["passed"] for c in checks), "checks": checks}
    return report


def first_failure(report: dict) -> str | None:
    for name in SUITES:
        if name in report and not report[name]["passed"]:
            return name
    return None

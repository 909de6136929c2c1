"""Command-line driver.

Exit codes::

    0   success
    2   configuration error (bad flags or values)
    3   infeasible schedule
    4   depth limit reached
    5   window cap exceeded
    6   malformed certificate
    7   certificate version mismatch
    8   certificate invariant violated
    9   coordinate outside J_n
    10  tilings suite failed
    11  schedule suite failed
    12  blocks suite failed
    13  return-times suite failed
    14  density suite failed
    15  mdim suite failed

The default output directory is taken from ``FULLMDIM_OUTPUT_DIR``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .blocks import Construction
from .dyadic import box_str
from .errors import CertificateInvariantError, ConfigError, FullMdimError
from .group import Window
from .limit import DEFAULT_WINDOW_CAP, Certificate, canonical_point, emit_certificate, load_certificate, window_pattern
from .suites import SUITE_EXIT_CODES, SUITES, first_failure, run_suites

ENV_OUTPUT_DIR = "FULLMDIM_OUTPUT_DIR"


def _outdir() -> Path:
    return Path(os.environ.get(ENV_OUTPUT_DIR, "."))


def _approx(x: Fraction) -> str:
    return f"{float(x):.6g}"


def _add_construction_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--d", type=int, default=1, choices=(1, 2), help="group dimension")
    p.add_argument("--dp", type=int, default=1, choices=(1, 2), help="dimension of P = [0,1]^dp")
    p.add_argument("--mode", default="paper", choices=("paper", "toy"))
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--max-variant-bits", type=int, default=1 << 16)


def _construction(args) -> Construction:
    if args.depth < 1:
        raise ConfigError("--depth must be >= 1")
    return Construction(args.mode, args.depth, args.d, args.dp, args.max_variant_bits)


def _suites(values) -> tuple[str, ...]:
    if not values or "all" in values:
        return SUITES
    return tuple(values)


def _write_json(path: Path, data) -> None:
    path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")


def cmd_construct(args) -> int:
    ctx = _construction(args)
    results = run_suites(ctx, n_list=args.n, sample=args.sample, seed=args.seed)
    cert = Certificate.from_construction(ctx, results)
    out = Path(args.out) if args.out else _outdir() / "certificate.json"
    emit_certificate(out, cert)
    print(f"wrote {out}: sides {[str(n) for n in ctx.hierarchy.sides]}")
    failed = first_failure(results)
    return SUITE_EXIT_CODES[failed] if failed else 0


def cmd_verify(args) -> int:
    cert = load_certificate(args.cert)
    ctx = cert.construction()
    fresh = Certificate.from_construction(ctx)
    if (fresh.sides, fresh.l, fresh.r, fresh.V) != (cert.sides, cert.l, cert.r, cert.V):
        raise CertificateInvariantError("certificate parameters differ from a fresh construction")
    suites = _suites(args.suite)
    report = {
        "certificate": str(args.cert),
        "config": {"d": cert.d, "P_dim": cert.d_P, "mode": cert.mode, "depth": cert.depth},
        "seed": args.seed,
        "suites": run_suites(ctx, suites, n_list=args.n, sample=args.sample, seed=args.seed),
    }
    failed = first_failure(report["suites"])
    report["passed"] = failed is None
    out = Path(args.report) if args.report else _outdir() / "report.json"
    _write_json(out, report)
    for name, res in report["suites"].items():
        for c in res["checks"]:
            extra = ""
            if "fractions" in c:
                extra = " fractions " + ", ".join(
                    f"{f}" + (f" (~{_approx(Fraction(f))})" if args.approx else "") for f in c["fractions"].values()
                )
                extra += f" > {c['eta_limit']}"
            print(f"[{'PASS' if c['passed'] else 'FAIL'}] {name}: {c['name']}{extra}")
    print(f"report: {out}")
    return SUITE_EXIT_CODES[failed] if failed else 0


def cmd_inspect(args) -> int:
    ctx = _construction(args)
    W = Window.parse(args.window)
    if W.d != ctx.d:
        raise ConfigError(f"window has {W.d} axes, group has {ctx.d}")
    boxes = window_pattern(W, args.depth, ctx, cap=args.cap)
    for g, box in zip(W, boxes):
        line = f"{','.join(map(str, g))}\t{box_str(box)}"
        if args.points:
            x = canonical_point(g, args.depth, ctx)
            line += "\tx=" + ",".join(str(v) for v in x)
            if args.approx:
                line += " (~" + ",".join(_approx(v) for v in x) + ")"
        print(line)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fullmdim",
        description="Minimal subshift with full mean dimension over Z^d: construction and certificates.",
        epilog=__doc__.split("Exit codes::")[1].split("The default")[0].replace("\n    ", "\n"),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build the construction and write a certificate")
    _add_construction_flags(p)
    p.add_argument("--out", help=f"certificate path (default ${ENV_OUTPUT_DIR}/certificate.json)")
    p.add_argument("--n", type=int, action="append", help="precision indices for the suites")
    p.add_argument("--sample", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="re-run verification suites on a certificate")
    p.add_argument("--cert", default=None, help="certificate path")
    p.add_argument("--suite", action="append", choices=SUITES + ("all",))
    p.add_argument("--n", type=int, action="append")
    p.add_argument("--report", help=f"report path (default ${ENV_OUTPUT_DIR}/report.json)")
    p.add_argument("--sample", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--approx", action="store_true", help="add non-normative decimal approximations")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("inspect", help="print the boxes over a window")
    _add_construction_flags(p)
    p.add_argument("--window", required=True, help="'a..b' per axis, comma separated")
    p.add_argument("--cap", type=int, default=DEFAULT_WINDOW_CAP)
    p.add_argument("--points", action="store_true", help="also print the canonical point")
    p.add_argument("--approx", action="store_true")
    p.set_defaults(func=cmd_inspect)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "verify" and args.cert is None:
        args.cert = str(_outdir() / "certificate.json")
    try:
        return args.func(args)
    except FullMdimError as exc:
        print(f"error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error[ConfigError]: {exc}", file=sys.stderr)
        return ConfigError.exit_code


if __name__ == "__main__":
    sys.exit(main())

"""Command line interface: ``aztec count|enumerate|sample|verify|hist|render``."""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path

from . import checks
from .arrowfield import ArrowField
from .geometry import AztecDiamond, Rectangle
from .render import RenderOptions, render_field, render_tiling
from .sampler import DEFAULT_SEED, SampleSpec, sample_statistics, sample_uniform
from .tiling import (
    Tiling,
    aztec_closed_form,
    count_tilings,
    enumerate_tilings,
    horizontal_histogram,
    kasteleyn_square,
    validate_tiling,
)

ENUMERATE_GUARD = 5
DP_GUARD = 16
RECT_ENUMERATE_CELLS = 64


class UsageError(Exception):
    pass


def _rect(spec: str) -> tuple[int, int]:
    try:
        w, h = spec.lower().split("x")
        return int(w), int(h)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected WxH, got {spec!r}") from None


def _nonneg(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {s}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="aztec", description="Domino tilings of Aztec diamonds.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="count tilings exactly")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--aztec", type=_nonneg, metavar="N")
    g.add_argument("--rect", type=_rect, metavar="WxH")
    c.add_argument("--method", choices=["dp", "formula", "enumerate", "kasteleyn"], default="dp")
    c.add_argument("--force", action="store_true", help="lift the size guards")

    e = sub.add_parser("enumerate", help="write every tiling of A_N as a JSON array")
    e.add_argument("--aztec", type=_nonneg, metavar="N", required=True)
    e.add_argument("--out", type=Path, required=True)

    s = sub.add_parser("sample", help="draw uniform random tilings")
    s.add_argument("--aztec", type=_nonneg, metavar="N", required=True)
    s.add_argument("--seed", type=_nonneg, default=DEFAULT_SEED)
    s.add_argument("--out", type=Path)
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--stats", action="store_true")

    v = sub.add_parser("verify", help="run the invariant battery")
    v.add_argument("--max-order", type=_nonneg, default=3)

    h = sub.add_parser("hist", help="histogram of horizontal domino counts")
    h.add_argument("--aztec", type=_nonneg, metavar="N", required=True)
    hg = h.add_mutually_exclusive_group()
    hg.add_argument("--exact", action="store_true")
    hg.add_argument("--samples", type=int)
    h.add_argument("--seed", type=_nonneg, default=DEFAULT_SEED)

    r = sub.add_parser("render", help="render a tiling or field as SVG")
    r.add_argument("--in", dest="inp", type=Path)
    r.add_argument("--out", type=Path, required=True)
    rg = r.add_mutually_exclusive_group()
    rg.add_argument("--arrows", action="store_true")
    rg.add_argument("--field", type=Path)
    return p


def cmd_count(args) -> int:
    if args.aztec is not None:
        n = args.aztec
        if args.method == "formula":
            print(aztec_closed_form(n))
        elif args.method == "dp":
            if n > DP_GUARD and not args.force:
                raise UsageError(f"DP limited to N <= {DP_GUARD}; pass --force to override")
            print(count_tilings(AztecDiamond(n)))
        elif args.method == "enumerate":
            if n > ENUMERATE_GUARD and not args.force:
                raise UsageError(f"enumeration limited to N <= {ENUMERATE_GUARD}; pass --force to override")
            print(sum(1 for _ in enumerate_tilings(AztecDiamond(n))))
        else:
            raise UsageError("--method kasteleyn applies to square rectangles only")
        return 0

    w, h = args.rect
    region = Rectangle(w, h)
    if args.method == "formula":
        raise UsageError("--method formula applies to Aztec diamonds only")
    if args.method == "enumerate":
        if w * h > RECT_ENUMERATE_CELLS and not args.force:
            raise UsageError(f"enumeration limited to {RECT_ENUMERATE_CELLS} cells; pass --force to override")
        print(sum(1 for _ in enumerate_tilings(region)))
    elif args.method == "dp":
        print(count_tilings(region))
    else:
        if w != h or w % 2:
            raise UsageError("--method kasteleyn needs an even square, e.g. --rect 8x8")
        approx = kasteleyn_square(w)
        exact = count_tilings(region)
        print(f"kasteleyn {approx!r}")
        print(f"dp {exact}")
        print(f"relative_error {abs(approx - exact) / exact:.3e}")
    return 0


def cmd_enumerate(args) -> int:
    if args.aztec > ENUMERATE_GUARD:
        raise UsageError(f"enumeration limited to N <= {ENUMERATE_GUARD}")
    tilings = [t.to_json() for t in enumerate_tilings(AztecDiamond(args.aztec))]
    args.out.write_text(json.dumps(tilings, separators=(",", ":")) + "\n")
    print(f"wrote {len(tilings)} tilings to {args.out}")
    return 0


def cmd_sample(args) -> int:
    if args.count < 1:
        raise UsageError("--count must be >= 1")
    suffix = args.out.suffix.lower() if args.out else None
    if args.stats:
        if suffix not in (None, ".json"):
            raise UsageError("--stats writes JSON; use --out FILE.json")
        summary = sample_statistics(args.aztec, args.count, args.seed)
        for k, c in summary["hist"].items():
            print(f"k={k} {c}")
        if args.out:
            args.out.write_text(json.dumps(summary) + "\n")
        return 0
    if args.count != 1:
        raise UsageError("--count needs --stats")
    t = sample_uniform(SampleSpec(args.aztec, args.seed))
    if suffix == ".json":
        args.out.write_text(json.dumps(t.to_json()) + "\n")
    elif suffix == ".svg":
        args.out.write_text(render_tiling(t, RenderOptions(color_classes=True)))
    elif args.out is not None:
        raise UsageError("--out must end in .json or .svg")
    print(f"order {args.aztec} seed {args.seed} horizontal {t.horizontal_count()}")
    return 0


def cmd_verify(args) -> int:
    failed = []
    for step in checks.battery(args.max_order):
        start = time.perf_counter()
        result = step()
        took = time.perf_counter() - start
        print(f"{'PASS' if result.passed else 'FAIL'}  {result.name:<26} {result.detail} ({took:.2f}s)")
        if not result.passed:
            failed.append(result.name)
    if failed:
        print(f"failed: {', '.join(failed)}", file=sys.stderr)
        return 1
    print("all checks passed")
    return 0


def cmd_hist(args) -> int:
    n = args.aztec
    m = n * (n + 1) // 2
    binom = [math.comb(m, k) for k in range(m + 1)]
    if args.samples is None:
        try:
            hist = horizontal_histogram(n, "enumerate")
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        print("counts   " + " ".join(str(hist.get(k, 0)) for k in range(m + 1)))
        print("binomial " + " ".join(map(str, binom)))
        return 0
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    hist = horizontal_histogram(n, "sample", args.samples, args.seed)
    total = 1 << m
    print("counts   " + " ".join(str(hist.get(k, 0)) for k in range(m + 1)))
    print("expected " + " ".join(f"{b * args.samples / total:.2f}" for b in binom))
    return 0


def cmd_render(args) -> int:
    if args.field is not None:
        f = ArrowField.from_json(json.loads(args.field.read_text()))
        svg = render_field(f, RenderOptions(show_arrows=True, show_nodes=True, show_bold_edges=True))
    else:
        if args.inp is None:
            raise UsageError("render needs --in tiling.json (or --field field.json)")
        t = Tiling.from_json(json.loads(args.inp.read_text()))
        problems = validate_tiling(t)
        if problems:
            print("invalid tiling: " + "; ".join(map(str, problems)), file=sys.stderr)
            return 1
        svg = render_tiling(t, RenderOptions(show_arrows=args.arrows, color_classes=True))
    args.out.write_text(svg)
    print(f"wrote {args.out}")
    return 0


COMMANDS = {
    "count": cmd_count,
    "enumerate": cmd_enumerate,
    "sample": cmd_sample,
    "verify": cmd_verify,
    "hist": cmd_hist,
    "render": cmd_render,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"aztec {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

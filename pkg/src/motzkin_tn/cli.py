"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from .contraction import amplitude, contract_full, iter_labelings
from .equivalence import SUITES, run_suite
from .network import (
    NetworkError,
    build_binary_height_pyramid,
    build_hrn_open,
    build_hrn_periodic,
    build_rectangle,
    build_u1_mera,
    periodic_boundary,
    wrap_fredkin,
)
from .render import render_ascii, render_svg
from .semiring import format_scalar
from .tensors import TensorSet
from .tiles import TilingError
from .walks import EnumerationCapError, entanglement_entropy, schmidt_spectrum, string_to_config

SHAPES = ("pyramid", "rect", "hrn-open", "hrn-periodic", "u1", "fredkin")


class UsageError(Exception):
    pass


def _add_shape_args(p: argparse.ArgumentParser, shape_required: bool = True) -> None:
    if shape_required:
        p.add_argument("shape", choices=SHAPES)
    p.add_argument("--n", type=int, required=shape_required, help="half the number of sites")
    p.add_argument("--t", default="1", help="area weight: integer, fraction like 1/2, or 't' (symbolic)")
    p.add_argument("--m", type=int, help="rows of a rectangle (default floor(log2 2n))")
    p.add_argument("--p", type=int, help="left boundary height")
    p.add_argument("--q", type=int, help="right boundary height")
    p.add_argument("--k", type=int, help="net height q - p (periodic sector)")
    p.add_argument("--tensors", help="JSON tensor set replacing the built-in tensors")


def _tensors(args) -> TensorSet:
    if not getattr(args, "tensors", None):
        return TensorSet()
    try:
        with open(args.tensors, encoding="utf-8") as fh:
            return TensorSet.from_json(fh.read())
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read tensor file {args.tensors}: {exc}") from None


def _t(args):
    t = args.t.strip()
    if t == "t":
        return "t"
    try:
        return Fraction(t) if "/" in t or "." in t else int(t)
    except ValueError:
        raise UsageError(f"bad --t value {args.t!r}") from None


def build_from_args(args):
    n, ts = args.n, _tensors(args)
    if n is None or n < 1:
        raise UsageError("--n must be a positive integer")
    t = _t(args)
    shape = args.shape
    if shape != "pyramid" and shape != "fredkin" and shape != "rect" and t != 1:
        raise UsageError(f"{shape} networks are defined at t=1 only")
    if shape == "pyramid":
        return build_binary_height_pyramid(n, t, ts)
    if shape == "fredkin":
        return wrap_fredkin(build_binary_height_pyramid(n, t, ts))
    if shape == "rect":
        m = args.m if args.m is not None else (2 * n).bit_length() - 1
        return build_rectangle(n, m, args.p or 0, args.q or 0, t, ts)
    if shape == "hrn-open":
        return build_hrn_open(2 * n, ts)
    if shape == "u1":
        if args.k not in (None, 0):
            raise UsageError("the U(1) network represents the k=0 sector only")
        return build_u1_mera(2 * n, ts)
    if args.k is not None:
        p, q = periodic_boundary(2 * n, args.k)
    elif args.p is not None and args.q is not None:
        p, q = args.p, args.q
    else:
        raise UsageError("hrn-periodic needs --k or both --p and --q")
    return build_hrn_periodic(2 * n, p, q, tensors=ts)


def cmd_state(args) -> int:
    net = build_from_args(args)
    state = contract_full(net)
    text = state.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if args.format == "json" and not args.out:
        print(text)
    else:
        print(f"nnz {state.nnz}")
        print(f"norm^2 {format_scalar(state.norm_squared())}")
    return 0


def cmd_contract(args) -> int:
    net = build_from_args(args)
    if args.config:
        try:
            config = string_to_config(args.config, net.kind)
        except (KeyError, ValueError) as exc:
            raise UsageError(f"bad configuration {args.config!r}: {exc}") from None
        print(format_scalar(amplitude(net, config)))
        return 0
    print(contract_full(net).to_json())
    return 0


def cmd_verify(args) -> int:
    ts = _tensors(args)
    sample = args.sample if args.sample == "all" else int(args.sample)
    reports = run_suite(args.suite, ts, seed=args.seed, sample=sample)
    ok = all(r.passed for r in reports)
    if args.format == "json":
        print(json.dumps([r.to_dict() for r in reports], ensure_ascii=False, indent=1, default=str))
    else:
        for r in reports:
            print(r.table())
            print()
    if not ok:
        bad = next(r for r in reports if not r.passed)
        print(f"FAILED {bad.name}: {bad.counterexamples[0] if bad.counterexamples else 'no detail'}", file=sys.stderr)
        return 1
    print(f"all {len(reports)} checks passed", file=sys.stderr)
    return 0


def cmd_entropy(args) -> int:
    if args.n is not None:
        sizes = [2 * args.n]
    else:
        sizes = list(range(2, args.max_sites + 1, 2))
    if max(sizes) > 12:
        raise UsageError("entropy is capped at 2n <= 12")
    t = _t(args)
    if t == "t":
        raise UsageError("entropy needs a numeric t")
    rows = []
    for n2 in sizes:
        state = contract_full(build_binary_height_pyramid(n2 // 2, t, _tensors(args)))
        cut = args.cut if args.cut is not None else n2 // 2
        spec = schmidt_spectrum(state, cut)
        rows.append((n2, cut, entanglement_entropy(spec), spec))
    print(f"{'2n':>3} {'cut':>3} {'entropy':>10}  weights")
    for n2, cut, s, spec in rows:
        ws = ", ".join(str(w) for w in spec.weights[:6]) + (", ..." if len(spec.weights) > 6 else "")
        print(f"{n2:>3} {cut:>3} {s:>10.6f}  {ws}")
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["n_sites", "cut", "entropy", "rank"])
            for n2, cut, s, spec in rows:
                w.writerow([n2, cut, repr(s), spec.rank])
    return 0


def cmd_render(args) -> int:
    net = build_from_args(args)
    if args.all:
        state = contract_full(net)
        configs = list(state.amplitudes)
    elif args.config:
        try:
            configs = [string_to_config(args.config, net.kind)]
        except (KeyError, ValueError) as exc:
            raise UsageError(f"bad configuration {args.config!r}: {exc}") from None
    else:
        raise UsageError("render needs --config or --all")
    chunks = []
    for cfg in configs:
        labs = list(iter_labelings(net, cfg, limit=2))
        if not labs:
            print(f"0 tilings for configuration {args.config}", file=sys.stderr)
            return 2
        lab = labs[0]
        chunks.append(render_svg(lab) if args.format == "svg" else render_ascii(lab))
    text = "\n".join(chunks)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="motzkin-tn", description="Exact tensor networks for Motzkin and Fredkin ground states.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("state", help="contract a network and write its state")
    _add_shape_args(p)
    p.add_argument("--out", help="write the state JSON here")
    p.add_argument("--format", choices=("json", "table"), default="table")
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("contract", help="state JSON, or one amplitude with --config")
    _add_shape_args(p)
    p.add_argument("--config", help="spin string such as +0-0 (or ud for spin-1/2)")
    p.set_defaults(func=cmd_contract)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suite", nargs="?", default="all", choices=("all",) + SUITES)
    p.add_argument("--tensors", help="JSON tensor set replacing the built-in tensors")
    p.add_argument("--seed", type=int, default=0, help="seed for --sample N")
    p.add_argument("--sample", default="all", help="'all' or a number of random configurations for locking checks")
    p.add_argument("--format", choices=("json", "table"), default="table")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("entropy", help="half-chain entanglement entropy of the pyramid state")
    _add_shape_args(p, shape_required=False)
    p.add_argument("--max-sites", type=int, default=12)
    p.add_argument("--cut", type=int)
    p.add_argument("--csv", help="also write a CSV table here")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("render", help="draw the tiling of a configuration")
    _add_shape_args(p)
    p.add_argument("--config")
    p.add_argument("--all", action="store_true", help="render every nonzero configuration")
    p.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    p.add_argument("--out")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and args.sample != "all" and not args.sample.isdigit():
        parser.error("--sample must be 'all' or a positive integer")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NetworkError, TilingError, EnumerationCapError, ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

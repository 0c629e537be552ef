"""Command line interface.

    primesums count dk|energy|ncount|incidences ...
    primesums sum multilinear|mordell|weyl-gap|fourier ...
    primesums bound <bound-id> ...
    primesums sweep --config FILE [--out PATH] [--figures]
    primesums verify --suite ID | --list

count and sum are one-shot evaluations built on the same machinery as sweep
rows; --format csv|json switches their output from plain text.  verify exits
nonzero exactly when a suite records a counterexample.
"""

from __future__ import annotations

import argparse
import sys

from . import bounds as bounds_mod
from . import harness, sums


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p", type=int, required=True, help="prime modulus")
    parser.add_argument("--set", action="append", default=[], dest="sets",
                        metavar="DESC", help="set descriptor (repeatable)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--budget", type=int, default=sums.DEFAULT_TUPLE_BUDGET)
    parser.add_argument("--out", default=None, help="write rows to this file")
    parser.add_argument("--format", choices=("csv", "json"), default=None,
                        help="row output instead of plain text")


def _emit_rows(rows, args) -> None:
    if args.format == "csv" or (args.out and args.format is None):
        text = harness.rows_to_csv(rows)
    elif args.format == "json":
        text = harness.rows_to_json(rows)
    else:
        lines = []
        for r in rows:
            fields = [f"p={r.p}", r.quantity, r.descriptors,
                      f"exact={harness._render(r.exact_value)}"]
            if harness._render(r.main_term):
                fields.append(f"main={harness._render(r.main_term)}")
            if r.bound_id:
                fields.append(f"{r.bound_id}={harness._render(r.bound_value)}"
                              f" [{r.case_label}]"
                              f" ratio={harness._render(r.ratio)}")
                if r.hypotheses_ok:
                    fields.append(f"hyp={r.hypotheses_ok}")
            elif r.case_label:
                fields.append(r.case_label)
            lines.append("  ".join(fields))
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run_single(cfg: harness.ExperimentConfig, args) -> int:
    rows = harness.run_sweep(cfg)
    _emit_rows(rows, args)
    return 0


def _cmd_count(args) -> int:
    mode = {"dk": "dk", "energy": "energy", "ncount": "n-count",
            "incidences": "incidences"}[args.what]
    tuples = (tuple(args.sets),) if args.sets else ()
    cfg = harness.ExperimentConfig(
        quantity=mode, primes=(args.p,), set_tuples=tuples,
        bound_ids=tuple(args.bound or ()),
        k=args.k, variant=args.variant, method=args.method,
        seed=args.seed, budget=args.budget,
        num_points=args.num_points, num_planes=args.num_planes)
    return _run_single(cfg, args)


def _cmd_sum(args) -> int:
    mode = {"multilinear": "multilinear-sum", "mordell": "mordell",
            "weyl-gap": "weyl-gap", "fourier": "fourier-l1"}[args.what]
    tuples = (tuple(args.sets),) if args.sets else ()
    coeffs = tuple(int(c) for c in args.coeffs.split(",")) if args.coeffs else ()
    cfg = harness.ExperimentConfig(
        quantity=mode, primes=(args.p,), set_tuples=tuples,
        bound_ids=tuple(args.bound or ()),
        weights=args.weights, seed=args.seed, budget=args.budget,
        poly=args.poly, chi=args.chi, coeffs=coeffs)
    return _run_single(cfg, args)


def _cmd_bound(args) -> int:
    sizes = [float(s) for s in args.sizes.split(",")] if args.sizes else None
    exponents = [int(k) for k in args.exponents.split(",")] if args.exponents else None
    res = bounds_mod.evaluate_bound(
        args.bound_id, args.p, sizes=sizes, exponents=exponents, k=args.k,
        energy=args.energy, prev_dk=args.prev_dk, measured_inner=args.inner,
        num_points=args.num_points, num_planes=args.num_planes,
        max_collinear=args.max_collinear, rank=args.rank,
        small_case_threshold=args.threshold)
    print(f"{args.bound_id} @ p={args.p}: value={res.value!r} case={res.case_label}")
    if res.hypotheses:
        for name, ok in zip(res.hypotheses, res.hypotheses_ok):
            print(f"  hypothesis[{'ok' if ok else 'VIOLATED'}]: {name}")
    if res.main_term is not None:
        print(f"  main term: {res.main_term!r}")
    if res.compare_power != 1:
        print(f"  bounds |S|^{res.compare_power}")
    if res.bounds_error:
        print("  bounds the error |exact - main|")
    if res.exponents:
        for key, val in res.exponents.items():
            print(f"  exponents.{key} = {val}")
    print(f"  dropped: {res.dropped_terms}")
    return 0


def _cmd_sweep(args) -> int:
    cfg = harness.load_config(args.config)
    out = args.out or cfg.output
    if out is None:
        raise SystemExit("sweep needs an output path (config `output` or --out)")
    rows = harness.run_sweep(cfg, out_path=out, render_figures=args.figures)
    print(f"wrote {len(rows)} rows to {out}")
    if args.figures:
        print("figures rendered beside the CSV")
    return 0


def _cmd_verify(args) -> int:
    if args.list:
        for name in sorted(harness.VERIFY_SUITES):
            print(name)
        return 0
    if not args.suite:
        raise SystemExit("verify needs --suite ID (or --list)")
    report = harness.verify_suite(args.suite, instances=args.instances)
    print(report.summary())
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="primesums",
        description="exact exponential-sum and counting experiments over F_p")
    sub = parser.add_subparsers(dest="command", required=True)

    p_count = sub.add_parser("count", help="exact counting quantities")
    p_count.add_argument("what", choices=("dk", "energy", "ncount", "incidences"))
    _add_common(p_count)
    p_count.add_argument("--k", type=int, default=None, help="number of factors for dk")
    p_count.add_argument("--variant", choices=("full", "star", "tilde"), default="full")
    p_count.add_argument("--method", choices=("auto", "brute", "convolution"),
                         default="auto")
    p_count.add_argument("--num-points", type=int, default=0)
    p_count.add_argument("--num-planes", type=int, default=0)
    p_count.add_argument("--bound", action="append", metavar="BOUND_ID")
    p_count.set_defaults(fn=_cmd_count)

    p_sum = sub.add_parser("sum", help="exact exponential sums")
    p_sum.add_argument("what", choices=("multilinear", "mordell", "weyl-gap", "fourier"))
    _add_common(p_sum)
    p_sum.add_argument("--weights", choices=("unit", "random"), default="unit")
    p_sum.add_argument("--poly", default=None, help="sparse poly a1:k1,a2:k2,...")
    p_sum.add_argument("--chi", type=int, default=0, help="multiplicative character index")
    p_sum.add_argument("--coeffs", default=None, help="dense coeffs b0,b1,...")
    p_sum.add_argument("--bound", action="append", metavar="BOUND_ID")
    p_sum.set_defaults(fn=_cmd_sum)

    p_bound = sub.add_parser("bound", help="evaluate one bound formula")
    p_bound.add_argument("bound_id", metavar="BOUND_ID",
                         help=f"one of: {', '.join(bounds_mod.BOUND_IDS)}")
    p_bound.add_argument("--p", type=int, required=True)
    p_bound.add_argument("--sizes", default=None, help="comma-separated sizes")
    p_bound.add_argument("--exponents", default=None, help="comma-separated exponents")
    p_bound.add_argument("--k", type=int, default=None)
    p_bound.add_argument("--energy", type=float, default=None)
    p_bound.add_argument("--prev-dk", type=float, default=None, dest="prev_dk")
    p_bound.add_argument("--inner", type=float, default=None)
    p_bound.add_argument("--num-points", type=float, default=None)
    p_bound.add_argument("--num-planes", type=float, default=None)
    p_bound.add_argument("--max-collinear", type=float, default=None)
    p_bound.add_argument("--rank", type=int, default=None)
    p_bound.add_argument("--threshold", choices=("theorem", "refined"),
                         default="theorem")
    p_bound.set_defaults(fn=_cmd_bound)

    p_sweep = sub.add_parser("sweep", help="run a config-driven sweep")
    p_sweep.add_argument("--config", required=True)
    p_sweep.add_argument("--out", default=None)
    p_sweep.add_argument("--figures", action="store_true",
                         help="render figures beside the CSV")
    p_sweep.set_defaults(fn=_cmd_sweep)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("--suite", default=None)
    p_verify.add_argument("--instances", type=int, default=None)
    p_verify.add_argument("--list", action="store_true")
    p_verify.set_defaults(fn=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

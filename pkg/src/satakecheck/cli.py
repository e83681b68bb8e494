"""Command line entry point ``verify``."""

from __future__ import annotations

import argparse
import json
import sys

from .harness import SUITES, VerificationJob, emit_report, exit_code, run_suite
from .rootdata import parse_weight

SUBCOMMANDS = {
    "lusztig": ["lusztig"],
    "mult": ["mult"],
    "gr": ["gr"],
    "main": ["main"],
    "localization": ["localization"],
    "slices": ["slices"],
    "all": list(SUITES),
}


def parse_levi(text: str, rank: int) -> list[list[int]]:
    """'1' or '1,2' (1-based), 'none' for the empty set, 'all' for every subset."""
    t = text.strip().lower()
    if t == "all":
        return None
    out = []
    for part in t.split(";"):
        if part.strip() in ("none", "empty", "-", ""):
            out.append([])
            continue
        idx = [int(x) - 1 for x in part.split(",") if x.strip()]
        if any(i < 0 or i >= rank for i in idx):
            raise argparse.ArgumentTypeError(f"Levi index out of range in {text!r}")
        out.append(sorted(set(idx)))
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="verify", description=__doc__)
    p.add_argument("suite", choices=sorted(SUBCOMMANDS))
    p.add_argument("--type", dest="cartan_type", default=None, help="A1, A2, B2, C2 (G2 optional)")
    p.add_argument("--lmax", type=int, default=None, help="largest <lambda, 2 rho^vee> in the grid")
    p.add_argument("--lambda", dest="lam", action="append", default=None,
                   help="explicit highest weight, e.g. 1,1 (repeatable)")
    p.add_argument("--levi", default=None, help="1-based subset like 1 or 1,2; 'none'; 'all'; ';' separates several")
    p.add_argument("--cutoff", type=int, default=None, help="cutoff D in the halved variable")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--config", default=None, help="job file (JSON)")
    p.add_argument("--report", default=None, help="write the report to this path")
    p.add_argument("--format", dest="fmt", choices=["json", "text"], default="text")
    p.add_argument("--timings", action="store_true", help="include runtimes and cache statistics")
    return p


def make_job(args) -> VerificationJob:
    data = {}
    if args.config:
        with open(args.config) as fh:
            data = json.load(fh)
    job = VerificationJob.from_json(data)
    if args.cartan_type:
        job.cartan_type = args.cartan_type
    if args.lmax is not None:
        job.lmax = args.lmax
    if args.lam:
        job.lambdas = [list(parse_weight(x)) for x in args.lam]
    if args.levi is not None:
        job.levis = parse_levi(args.levi, job.datum.rank)
    if args.cutoff is not None:
        job.cutoff = args.cutoff
    if args.trials is not None:
        job.trials = args.trials
    if args.seed is not None:
        job.seed = args.seed
    if args.suite != "all" or not args.config:
        job.suites = SUBCOMMANDS[args.suite]
    return job


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        job = make_job(args)
        job.datum
    except (ValueError, OSError, argparse.ArgumentTypeError) as exc:
        print(f"verify: {exc}", file=sys.stderr)
        return 2
    report = run_suite(job)
    text = emit_report(report, args.fmt, args.report, args.timings)
    if args.report is None:
        sys.stdout.write(text)
    else:
        s = report.summary
        print(f"{s['total']} checks: {s['PASS']} pass, {s['FAIL']} fail, "
              f"{s['INCONCLUSIVE']} inconclusive, {s['ERROR']} error -> {args.report}")
    if report.summary["INCONCLUSIVE"]:
        print(f"warning: {report.summary['INCONCLUSIVE']} inconclusive checks", file=sys.stderr)
    return exit_code(report)


if __name__ == "__main__":
    sys.exit(main())

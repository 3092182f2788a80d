"""Command line entry point: ``thetalab VERB JOB.json [options]``."""
from __future__ import annotations

import argparse
import json
import sys

from .jobs import JobError, Runner, load_job, render_text
from .pairing import PairingError
from .poly import PolynomialError
from .resolution import DegreeBudgetExhausted
from .tor import CertificationError

VERBS = {"check": "check", "theta": "theta", "gram": "gram", "bezout": "bezout",
         "weighted": "weighted", "series": "series", "run": None}

EXIT_OK, EXIT_MATH, EXIT_INPUT = 0, 1, 2


def build_parser():
    p = argparse.ArgumentParser(prog="thetalab", description="theta pairings of modules over hypersurfaces")
    p.add_argument("verb", choices=sorted(VERBS), help="which tasks of the job to run ('run' runs all)")
    p.add_argument("job", help="path to a JSON job file")
    p.add_argument("--degree-bound", type=int, help="starting internal degree bound for resolutions")
    p.add_argument("--window", type=int, help="trailing window for the Hilbert-polynomial regime (default 4)")
    p.add_argument("--route", choices=["a", "b", "both"], help="theta route (default both when standard graded)")
    p.add_argument("--cache-dir", help="resolution cache directory (THETALAB_CACHE overrides)")
    p.add_argument("--json", action="store_true", help="print the JSON report")
    p.add_argument("--skip-singularity-check", action="store_true", help="do not certify the isolated singularity")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {"degree_bound": args.degree_bound, "window": args.window, "route": args.route,
                 "cache_dir": args.cache_dir}
    if args.skip_singularity_check:
        overrides["check_singularity"] = False
    try:
        job = load_job(args.job)
        report = Runner(job, overrides).run(VERBS[args.verb])
    except (JobError, PolynomialError) as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except (CertificationError, DegreeBudgetExhausted, PairingError, ArithmeticError) as exc:
        print("mathematical error: %s" % exc, file=sys.stderr)
        return EXIT_MATH
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(render_text(report))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

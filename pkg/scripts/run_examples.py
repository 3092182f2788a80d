"""Run every job file in scripts/jobs and print the text reports.

    python scripts/run_examples.py [--json] [job ...]
"""
import argparse
import glob
import os
import sys
import time

from thetalab.jobs import JobError, Runner, load_job, render_text

HERE = os.path.dirname(os.path.abspath(__file__))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("jobs", nargs="*")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    paths = args.jobs or sorted(glob.glob(os.path.join(HERE, "jobs", "*.json")))
    failures = 0
    for path in paths:
        print("==", os.path.basename(path))
        start = time.perf_counter()
        try:
            report = Runner(load_job(path)).run()
        except (JobError, ArithmeticError, RuntimeError) as exc:
            # bad_module.json is expected to land here
            print("  error:", exc)
            failures += 1
            continue
        if args.json:
            import json
            print(json.dumps(report, indent=2, sort_keys=True))
        else:
            print(render_text(report))
        print("  (%.2f s)" % (time.perf_counter() - start))
    return 0 if failures <= 1 else 1


if __name__ == "__main__":
    sys.exit(main())

"""Batch entry point: one verdict line per job."""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from .bridge import BridgeJob, evaluate_and_compare, verdict_line


def main(argv: Optional[list[str]] = None) -> int:
    ap = argparse.ArgumentParser(prog="oracle-bridge")
    ap.add_argument("--genus", type=int, required=True)
    ap.add_argument("--input", required=True, help="export file for the chain class")
    ap.add_argument("--mode", choices=["compare-dr-lambda", "compare-class"],
                    default="compare-dr-lambda")
    ap.add_argument("--against", default=None, help="second export file (compare-class)")
    ap.add_argument("--out", default="", help="append the verdict line to this file")
    args = ap.parse_args(argv)
    try:
        job = BridgeJob(args.genus, args.input, args.mode, args.against)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    record = evaluate_and_compare(job)
    line = verdict_line(record)
    if args.out:
        with open(args.out, "a") as fh:
            fh.write(line + "\n")
    print(line)
    return {"pass": 0, "skipped": 0, "fail": 1, "error": 1}[record["status"]]


if __name__ == "__main__":
    sys.exit(main())

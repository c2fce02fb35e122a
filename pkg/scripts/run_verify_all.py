#!/usr/bin/env python3
"""Run the full verification matrix and write the JSON report.

Usage:  python scripts/run_verify_all.py [report.json]

Prints one summary line per suite; the exit code is 0 only when every
case passes.  QKTW_THREADS caps the sweep workers.
"""

import json
import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from qktw.suites import verify_all  # noqa: E402


def main() -> int:
    out_path = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else None
    start = time.perf_counter()
    reports = verify_all()
    elapsed = time.perf_counter() - start
    failed = 0
    for rep in reports:
        status = "ok" if rep.passed else "FAILED"
        print(f"{rep.suite:<14} {rep.total:>4} cases  {status}")
        failed += rep.failed
    print(f"total: {sum(r.total for r in reports)} cases, {failed} failed, {elapsed:.1f}s")
    if out_path:
        payload = {
            "suites": [r.to_json() for r in reports],
            "summary": {
                "suites": len(reports),
                "cases": sum(r.total for r in reports),
                "failed": failed,
            },
        }
        out_path.write_text(json.dumps(payload, indent=2) + "\n")
        print(f"report written to {out_path}")
    return 0 if failed == 0 else 1


if __name__ == "__main__":
    sys.exit(main())

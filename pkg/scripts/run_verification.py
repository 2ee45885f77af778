#!/usr/bin/env python
"""Run the full acceptance battery and print one line per criterion.

Equivalent to `hartogs-bergman reproduce`; exits nonzero on any failure.
"""

from __future__ import annotations

import argparse
import sys

from hartogs_bergman.acceptance import run_all


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")
    args = parser.parse_args()
    results = run_all(args.only, log=sys.stdout)
    return 0 if all(r.passed for r in results) else 2


if __name__ == "__main__":
    raise SystemExit(main())

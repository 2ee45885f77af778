#!/usr/bin/env python
"""Emit the plot-ready CSV tables into results/.

Produces the kernel convergence table in the exponent, the numerator zero
scans for small exponents, and the diagonal boundary-asymptotics ratios
for every triangle/path combination.
"""

from __future__ import annotations

import argparse
from pathlib import Path

from hartogs_bergman.cli import main as cli_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="results")
    args = parser.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    jobs: list[list[str]] = [["--out", str(out / "ramadanov_k25.csv"), "ramadanov", "--kmax", "25"]]
    for k in (2, 3, 4):
        jobs.append(
            ["--out", str(out / f"zero_scan_k{k}.csv"), "zero-scan", "--k", str(k),
             "--s-points", "201", "--t-abs", "0.5"]
        )
    specs = [f"fat:{k}" for k in range(1, 6)] + [f"thin:{k}" for k in range(2, 6)]
    for spec in specs:
        for path in ("origin", "top-face", "smooth-levi-flat", "corner"):
            name = f"asymptotics_{spec.replace(':', '')}_{path}.csv"
            jobs.append(
                ["--out", str(out / name), "asymptotics", "--spec", spec, "--path", path]
            )
    for spec in ("fat:1", "fat:2", "thin:2", "thin:3"):
        name = f"delta_rate_{spec.replace(':', '')}.csv"
        jobs.append(
            ["--out", str(out / name), "asymptotics", "--spec", spec, "--path", "origin",
             "--compare", "delta"]
        )

    status = 0
    for argv in jobs:
        status = max(status, cli_main(argv))
    print(f"wrote {len(jobs)} tables to {out}/")
    return status


if __name__ == "__main__":
    raise SystemExit(main())

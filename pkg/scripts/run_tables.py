"""Compare every bundled reference table and write one CSV per table.

usage: python scripts/run_tables.py [outdir] [--jobs N]
"""
import argparse
import io
from pathlib import Path

from gpsscreen.cli import main
from gpsscreen.golden import TABLE_IDS


def run(outdir, jobs):
    outdir.mkdir(parents=True, exist_ok=True)
    worst = 0
    for table_id in TABLE_IDS:
        buf = io.StringIO()
        code = main(["table", table_id, "--jobs", str(jobs)], out=buf)
        (outdir / f"{table_id}.csv").write_text(buf.getvalue(), encoding="utf-8")
        summary = buf.getvalue().splitlines()[-1].split(",")
        print(f"{table_id}: exit {code}, max abs_diff {summary[4]}, min matched digits {summary[5]}")
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("outdir", nargs="?", default="results/tables")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    raise SystemExit(run(Path(args.outdir), args.jobs))

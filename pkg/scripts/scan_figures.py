"""Energy-versus-screening scans near the ionization threshold.

Writes plot-ready CSVs (param,state,energy):
  ecsc_n7_n8.csv    n=7,8 ECSC levels, delta in [0.001, 0.02]
  ecsc_n9_n10.csv   n=9,10 ECSC levels, delta in [0.0005, 0.005]
  gesc_n9_n10.csv   n=9,10 GESC levels, b in [0.01, 0.1]
and reports where the GESC level ordering changes.

usage: python scripts/scan_figures.py [outdir] [--steps 40] [--jobs N]
"""
import argparse
import csv
from collections import defaultdict
from pathlib import Path

from gpsscreen.cli import main

SCANS = {
    "ecsc_n7_n8.csv": ("ecsc", "7,8", 0.001, 0.02),
    "ecsc_n9_n10.csv": ("ecsc", "9,10", 0.0005, 0.005),
    "gesc_n9_n10.csv": ("gesc", "9,10", 0.01, 0.1),
}


def ordering_changes(path, states):
    by_param = defaultdict(dict)
    with open(path, encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            if row["state"] in states and row["energy"]:
                by_param[row["param"]][row["state"]] = float(row["energy"])
    params = sorted(by_param, key=float)
    orders = [tuple(sorted(by_param[p], key=by_param[p].get)) for p in params]
    return [(params[i], params[i + 1]) for i in range(len(params) - 1) if orders[i] != orders[i + 1]]


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("outdir", nargs="?", default="results/figures")
    ap.add_argument("--steps", type=int, default=40)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for name, (family, levels, start, stop) in SCANS.items():
        code = main(["scan", "--pot", family, "--levels", levels, "--start", str(start), "--stop", str(stop),
                     "--steps", str(args.steps), "--jobs", str(args.jobs), "--out", str(outdir / name)])
        print(f"{name}: exit {code}")
    mixing = {"9i", "9k", "9l", "10s", "10p", "10d"}
    for lo, hi in ordering_changes(outdir / "gesc_n9_n10.csv", mixing):
        print(f"GESC ordering change among {sorted(mixing)} between b={lo} and b={hi}")

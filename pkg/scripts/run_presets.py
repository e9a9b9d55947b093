"""Run every preset and print a one-line summary per scenario.

Usage: python scripts/run_presets.py [--out DIR]
"""

import argparse
from pathlib import Path

from msdyn import scenarios
from msdyn._kernels import warm_up


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=None, help="write CSV/JSON artifacts here")
    args = ap.parse_args()
    warm_up()
    for name in scenarios.PRESETS:
        res = scenarios.run_scenario(scenarios.get_preset(name))
        middle = "-" if res.max_middle_population is None else f"{res.max_middle_population:.2e}"
        print(f"{name:12s} fidelity={res.fidelity:.6f} leakage={res.max_dark_leakage:.2e} "
              f"max_middle={middle} wall={res.wall_time:.2f}s")
        if args.out is not None:
            args.out.mkdir(parents=True, exist_ok=True)
            scenarios.write_table(args.out / f"{name}_timeseries.csv", *scenarios.timeseries_table(res))
            scenarios.write_summary(args.out / f"{name}_summary.json", res)


if __name__ == "__main__":
    main()

"""Compare the W-linkage passage for both chirp directions.

The reversed chirp still ends in the excited bright state: with bright
ground and excited states on opposite sides of the crossing, either sweep
direction connects them adiabatically.
"""

import numpy as np

from msdyn import scenarios


def main():
    for slope in (1.0, -1.0):
        res = scenarios.run_scenario(scenarios.w_rap(slope=slope))
        tr = res.trajectory
        ground = sum(res.final_populations[k] for k in ("g1", "g2"))
        alpha = tr.angles["alpha2"]
        print(f"slope {slope:+.0f}: alpha2 {alpha[0]:.3f} -> {alpha[-1]:.3f}, "
              f"ground {ground:.4f}, fidelity {res.fidelity:.4f}, "
              f"be2 final {tr.ms_population('be2')[-1]:.4f}")


if __name__ == "__main__":
    main()

"""Half-passage fidelity versus chirp slope on the W linkage."""

import numpy as np

from msdyn import scenarios


def main():
    for slope in (-1.0, -2.0, -5.0, -10.0, -20.0):
        res = scenarios.run_scenario(scenarios.w_half_rap(slope=slope))
        print(f"slope {slope:6.1f}: fidelity {res.fidelity:.6f}")


if __name__ == "__main__":
    main()

"""Monotonicity of the W bright-pair populations versus overall timescale.

All times are stretched by ``T`` (pulse width ``T``, chirp slope ``1/T``).
Ripple is the largest rise of ``bg2`` above its running minimum.
"""

import numpy as np

from msdyn import pulses as P
from msdyn import scenarios
from msdyn.pulses import TimeGrid


def main():
    for T in (1.0, 2.0, 3.0, 5.0):
        base = scenarios.w_rap()
        sc = base.with_pulses(vp=P.gaussian(40, 30, T), vs=P.gaussian(40, 30, T), delta=P.linear(1 / T, 30))
        sc = scenarios.ScenarioSpec(**{**vars(sc), "grid": TimeGrid(30 - 8 * T, 30 + 8 * T, int(40_000 * T))})
        res = scenarios.run_scenario(sc)
        tr = res.trajectory
        bg, be = tr.ms_population("bg2"), tr.ms_population("be2")
        ripple = (bg - np.minimum.accumulate(bg)).max()
        crossings = np.count_nonzero(np.diff(np.sign(bg - be)) != 0)
        print(f"T={T:.0f}: fidelity {res.fidelity:.4f}, ripple {ripple:.3f}, crossings {crossings}, "
              f"max wrong-branch population {tr.da_populations[:, 3].max():.3f}")


if __name__ == "__main__":
    main()

"""N-pod return fidelity versus the trailing-edge centers of V1, V2, V4.

With equal rise and fall centers (plain Gaussians at the rise times) the
early pulses do not switch off first and the return lands elsewhere.
"""

from msdyn import scenarios


def main():
    rise = scenarios.NPOD_RISE
    for early in (None, 33.0, 34.0, 35.0, 36.0):
        if early is None:
            fall, tag = rise, "plain gaussians"
        else:
            fall = tuple(early if i in (0, 1, 3) else f for i, f in enumerate(scenarios.NPOD_FALL))
            tag = f"V1,V2,V4 fall at {early:g}"
        res = scenarios.run_scenario(scenarios.npod_cpr(fall=fall))
        print(f"{tag:24s} fidelity {res.fidelity:.4f} leakage {res.max_dark_leakage:.2e}")


if __name__ == "__main__":
    main()

"""Fractional X passage with a symmetric ``vp2`` versus the default widened rise."""

from msdyn import pulses as P
from msdyn import scenarios


def main():
    base = scenarios.x_fstirap()
    for tag, sc in (("symmetric vp2", base.with_pulses(vp2=P.gaussian(120, 50, 1))),
                    ("widened vp2 rise", base)):
        res = scenarios.run_scenario(sc)
        pops = {k: round(float(v), 4) for k, v in res.final_populations.items()}
        print(f"{tag:18s} fidelity {res.fidelity:.4f} max middle {res.max_middle_population:.2e} {pops}")


if __name__ == "__main__":
    main()

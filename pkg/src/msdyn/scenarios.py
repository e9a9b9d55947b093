"""Named superposition-engineering experiments on N-pod, W and X linkages.

Every preset is a :class:`ScenarioSpec`: a linkage, a pulse table, a time
grid and initial/target state descriptors.  :func:`run_scenario` propagates
it and condenses the trajectory into a :class:`ScenarioResult`.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field, replace

import numpy as np

from . import linkage, propagator
from .errors import ConfigError
from .pulses import PulseProfile, TimeGrid, constant, gaussian, linear

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class ScenarioSpec:
    name: str
    linkage: str
    pulses: dict
    grid: TimeGrid
    initial: object
    target: object
    detuning: str = "delta"
    description: str = ""
    provenance: str = ""
    set_sizes: tuple | None = None
    couplings: tuple | None = None

    def build_linkage(self) -> linkage.LinkageSpec:
        """Resolve the preset (or the explicit set sizes and couplings) into a linkage."""
        if self.couplings is not None:
            sizes = self.set_sizes
            if sizes is None:
                sizes = linkage.preset(self.linkage, self.pulses, self.detuning).set_sizes
            cpl = tuple(c if isinstance(c, linkage.Coupling) else linkage.Coupling(*c) for c in self.couplings)
            return linkage.LinkageSpec(tuple(sizes), cpl, self.detuning, dict(self.pulses), self.linkage or "custom")
        return linkage.preset(self.linkage, self.pulses, self.detuning)

    def with_pulses(self, **updates) -> "ScenarioSpec":
        table = dict(self.pulses)
        table.update(updates)
        return replace(self, pulses=table)

    def with_steps(self, n_steps: int) -> "ScenarioSpec":
        return replace(self, grid=self.grid.with_steps(n_steps))

    def parameters(self) -> dict:
        """JSON-ready echo of everything that defines the run."""
        out = {
            "name": self.name,
            "linkage": self.linkage,
            "detuning": self.detuning,
            "grid": {"t_start": self.grid.t_start, "t_end": self.grid.t_end, "n_steps": self.grid.n_steps},
            "pulses": {k: v.to_dict() for k, v in sorted(self.pulses.items())},
            "initial": _jsonable(self.initial),
            "target": _jsonable(self.target),
        }
        if self.set_sizes is not None:
            out["set_sizes"] = list(self.set_sizes)
        if self.couplings is not None:
            out["couplings"] = [list(c) if not isinstance(c, linkage.Coupling) else [c.lower, c.upper, c.profile]
                                for c in self.couplings]
        return out


def _jsonable(desc):
    if isinstance(desc, dict):
        return {str(k): _jsonable(v) for k, v in desc.items()}
    if isinstance(desc, (complex, np.complexfloating)):
        return [desc.real, desc.imag] if desc.imag else desc.real
    if isinstance(desc, (list, tuple, np.ndarray)):
        return [_jsonable(x) for x in desc]
    if isinstance(desc, (np.floating, np.integer)):
        return desc.item()
    return desc


@dataclass
class ScenarioResult:
    name: str
    parameters: dict
    final_state: np.ndarray
    final_populations: dict
    fidelity: float
    max_adiabaticity_ratio: float
    max_dark_leakage: float
    max_dark_population: float
    max_middle_population: float | None
    norm_error: float
    wall_time: float
    trajectory: propagator.Trajectory = field(repr=False, default=None)
    target_state: np.ndarray = field(repr=False, default=None)

    def summary(self) -> dict:
        return {
            "scenario": self.name,
            "parameters": self.parameters,
            "final_populations": {k: float(v) for k, v in self.final_populations.items()},
            "fidelity": float(self.fidelity),
            "max_adiabaticity_ratio": float(self.max_adiabaticity_ratio),
            "max_dark_leakage": float(self.max_dark_leakage),
            "max_dark_population": float(self.max_dark_population),
            "max_middle_population": None if self.max_middle_population is None else float(self.max_middle_population),
            "norm_error": float(self.norm_error),
            "wall_time": float(self.wall_time),
        }


# -------------------------------------------------------------- presets

NPOD_RISE = (22.0, 27.0, 29.0, 33.0, 33.0)
# V1, V2, V4 fall first; V3, V5 stay on longer (flat tops between rise and fall).
NPOD_FALL = (35.0, 35.0, 38.0, 35.0, 38.0)


def npod_cpr(
    n_steps: int = 120_000,
    delta: float = 4.33,
    amplitude: float = 60.0,
    rise=NPOD_RISE,
    fall=NPOD_FALL,
    width: float = 1.0,
    t_start: float = 18.0,
    t_end: float = 42.0,
) -> ScenarioSpec:
    """Five-pod return into ``(g3 + g5)/sqrt2`` from ``g1``."""
    table = {
        f"V{i + 1}": gaussian(amplitude, r, width, fall_center=f, fall_width=width)
        for i, (r, f) in enumerate(zip(rise, fall))
    }
    table["delta"] = constant(delta)
    return ScenarioSpec(
        "npod-cpr", "npod(5)", table, TimeGrid(t_start, t_end, n_steps),
        initial="g1", target={"g3": 1.0, "g5": 1.0},
        description="N-pod complete population return into (g3+g5)/sqrt2",
        provenance="Fig. 2",
    )


def _w_table(amplitude, center, width, slope):
    return {
        "vp": gaussian(amplitude, center, width),
        "vs": gaussian(amplitude, center, width),
        "delta": linear(slope, center),
    }


W_RAP_TARGET = {"e1": -1.0, "e2": -2.0, "e3": -1.0}
W_HALF_TARGET = {"g1": 0.5, "g2": 0.5, "e1": -0.5 / SQRT3, "e2": -1.0 / SQRT3, "e3": -0.5 / SQRT3}


def w_rap(n_steps: int = 40_000, amplitude: float = 40.0, center: float = 30.0, width: float = 1.0,
          slope: float = 1.0, t_start: float = 22.0, t_end: float = 38.0) -> ScenarioSpec:
    """Chirped W-linkage transfer from ``(g1+g2)/sqrt2`` to ``-(e1+2e2+e3)/sqrt6``."""
    return ScenarioSpec(
        "w-rap", "W5", _w_table(amplitude, center, width, slope), TimeGrid(t_start, t_end, n_steps),
        initial="bright-ground-2", target=dict(W_RAP_TARGET),
        description="W linkage rapid adiabatic passage to -(e1+2e2+e3)/sqrt6",
        provenance="Fig. 3",
    )


def w_half_rap(n_steps: int = 20_000, amplitude: float = 40.0, center: float = 30.0, width: float = 1.0,
               slope: float = -10.0, t_start: float = 26.0, t_end: float | None = None) -> ScenarioSpec:
    """W-linkage chirp stopped where the detuning crosses zero at peak coupling."""
    t_end = center if t_end is None else t_end
    return ScenarioSpec(
        "w-half-rap", "W5", _w_table(amplitude, center, width, slope), TimeGrid(t_start, t_end, n_steps),
        initial="bright-ground-2", target=dict(W_HALF_TARGET),
        description="W linkage half passage to a five-state superposition",
        provenance="Fig. 3",
    )


def x_stirap(n_steps: int = 60_000, pump: float = 85.0, stokes: float = 120.0, pump_center: float = 50.0,
             stokes_center: float = 49.0, width: float = 1.0, delta: float = 1e-4,
             t_start: float = 44.0, t_end: float = 56.0) -> ScenarioSpec:
    """Counter-intuitive X-linkage transfer from ``(g1+g2)/sqrt2`` to ``-(e1+e2)/sqrt2``."""
    table = {
        "vp1": gaussian(pump, pump_center, width),
        "vs1": gaussian(pump, pump_center, width),
        "vp2": gaussian(stokes, stokes_center, width),
        "vs2": gaussian(stokes, stokes_center, width),
        "delta": constant(delta),
    }
    return ScenarioSpec(
        "x-stirap", "X5", table, TimeGrid(t_start, t_end, n_steps),
        initial="bright-ground", target={"e1": -1.0, "e2": -1.0},
        description="X linkage STIRAP to -(e1+e2)/sqrt2",
        provenance="Fig. 4",
    )


def x_fstirap(n_steps: int = 150_000, delta: float = 1e-4, t_start: float = 26.0, t_end: float = 54.0,
              vp1: float = 85.0, vs1: float = 85.0, vp2: float = 120.0, vs2: float = 160.0,
              center: float = 50.0, stokes_center: float = 30.0, width: float = 1.0,
              vp2_rise_width: float = 2.0) -> ScenarioSpec:
    """Fractional X-linkage passage to ``(g1+g2)/2 - e1/sqrt2``.

    ``vp2`` rises on a wider edge than it falls so that it takes over the
    middle-final coupling from ``vs2`` before the pump arrives; it then falls
    together with the pump pair.
    """
    table = {
        "vp1": gaussian(vp1, center, width),
        "vs1": gaussian(vs1, center, width),
        "vp2": gaussian(vp2, center, vp2_rise_width, fall_width=width),
        "vs2": gaussian(vs2, stokes_center, width),
        "delta": constant(delta),
    }
    return ScenarioSpec(
        "x-fstirap", "X5", table, TimeGrid(t_start, t_end, n_steps),
        initial="bright-ground", target={"g1": 0.5, "g2": 0.5, "e1": -1.0 / SQRT2},
        description="X linkage fractional STIRAP to (g1+g2)/2 - e1/sqrt2",
        provenance="Fig. 4",
    )


PRESETS = {
    "npod-cpr": npod_cpr,
    "w-rap": w_rap,
    "w-half-rap": w_half_rap,
    "x-stirap": x_stirap,
    "x-fstirap": x_fstirap,
}


def get_preset(name: str, **overrides) -> ScenarioSpec:
    try:
        factory = PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown scenario {name!r}; choose from {sorted(PRESETS)} or 'custom'") from None
    return factory(**overrides)


def listing() -> list:
    """``(name, provenance, description)`` for every preset."""
    out = []
    for name, factory in PRESETS.items():
        spec = factory()
        out.append((name, spec.provenance, spec.description))
    return out


# ---------------------------------------------------------------- running


def run_scenario(scenario: ScenarioSpec, exponent: float = 1.5) -> ScenarioResult:
    """Propagate ``scenario`` and summarise the outcome."""
    start = time.perf_counter()
    spec = scenario.build_linkage()
    traj = propagator.propagate(spec, scenario.initial, scenario.grid, analyze=True, exponent=exponent)
    target = propagator.resolve_state(spec, scenario.target, family=traj.family)
    final = traj.final_state
    fid = propagator.fidelity(final, target)

    dark = traj.family.structure.dark_indices
    dark_pop = traj.ms_populations[:, dark].sum(axis=1) if dark else np.zeros(len(traj.times))
    leakage = float(np.abs(dark_pop - dark_pop[0]).max())
    middle = None
    if spec.n_sets == 3:
        mid = spec.set_slices()[1]
        middle = float(traj.populations[:, mid].sum(axis=1).max())
    wall = time.perf_counter() - start
    return ScenarioResult(
        name=scenario.name,
        parameters=scenario.parameters(),
        final_state=final,
        final_populations=dict(zip(spec.labels, np.abs(final) ** 2)),
        fidelity=fid,
        max_adiabaticity_ratio=float(traj.diagnostics["adiabaticity_ratio"].max()),
        max_dark_leakage=leakage,
        max_dark_population=float(dark_pop.max()),
        max_middle_population=middle,
        norm_error=traj.norm_error(),
        wall_time=wall,
        trajectory=traj,
        target_state=target,
    )


def run_npod_cpr(**overrides) -> ScenarioResult:
    return run_scenario(npod_cpr(**overrides))


def run_w_rap(**overrides) -> ScenarioResult:
    return run_scenario(w_rap(**overrides))


def run_w_half_rap(**overrides) -> ScenarioResult:
    return run_scenario(w_half_rap(**overrides))


def run_x_stirap(**overrides) -> ScenarioResult:
    return run_scenario(x_stirap(**overrides))


def run_x_fstirap(**overrides) -> ScenarioResult:
    return run_scenario(x_fstirap(**overrides))


# ---------------------------------------------------------------- output


def _fmt(x) -> str:
    return "%.12g" % x


def timeseries_table(result: ScenarioResult):
    """Header and rows: time, original populations, MS populations and two diagnostics."""
    traj = result.trajectory
    header = ["t"] + list(traj.labels) + list(traj.ms_labels) + ["adiabaticity_ratio", "nonadiabatic_max"]
    cols = np.column_stack([
        traj.times, traj.populations, traj.ms_populations,
        traj.diagnostics["adiabaticity_ratio"], traj.diagnostics["nonadiabatic_max"],
    ])
    return header, cols


def diagnostics_table(result: ScenarioResult):
    traj = result.trajectory
    keys = sorted(traj.diagnostics)
    angle_keys = sorted(traj.angles)
    header = ["t"] + keys + angle_keys + [f"da:{lab}" for lab in traj.da_labels]
    cols = np.column_stack(
        [traj.times] + [traj.diagnostics[k] for k in keys] + [traj.angles[k] for k in angle_keys] + [traj.da_populations]
    )
    return header, cols


def write_table(path, header, cols):
    with open(path, "w", newline="") as fh:
        np.savetxt(fh, cols, fmt="%.12g", delimiter=",", header=",".join(header), comments="")


def write_summary(path, result: ScenarioResult):
    with open(path, "w") as fh:
        json.dump(result.summary(), fh, indent=2, sort_keys=True)
        fh.write("\n")

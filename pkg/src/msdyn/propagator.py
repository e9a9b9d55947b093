"""Fixed-step propagation of i dc/dt = H(t) c and projections onto MS and DA bases."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np

from . import adiabatic, linkage, mstransform
from ._kernels import rk4_linear
from .errors import IntegrationError, PreconditionError
from .pulses import TimeGrid

STEP_BOUND = 0.05
NORM_TOL = 1e-10
_CHUNK = 20000


@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # (N, n) complex
    labels: list
    ms_labels: list = field(default_factory=list)
    da_labels: list = field(default_factory=list)
    ms_populations: np.ndarray | None = None
    da_populations: np.ndarray | None = None
    diagnostics: dict = field(default_factory=dict)
    angles: dict = field(default_factory=dict)
    family: mstransform.MsFamily | None = None

    @property
    def populations(self) -> np.ndarray:
        return np.abs(self.states) ** 2

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]

    def norm_error(self) -> float:
        return float(np.abs(np.linalg.norm(self.states, axis=1) - 1.0).max())

    def ms_population(self, label: str) -> np.ndarray:
        return self.ms_populations[:, self.ms_labels.index(label)]


# ------------------------------------------------------------ states


def _normalized(c, what="state"):
    c = np.asarray(c, dtype=complex).ravel()
    nrm = np.linalg.norm(c)
    if not np.isfinite(nrm) or nrm == 0:
        raise PreconditionError(f"{what} has zero or non-finite norm")
    return c / nrm


_DESCRIPTOR = re.compile(r"^(bright-ground|bright-excited|bright-middle|dark)(?:-(\d+))?$")


def resolve_state(spec, descriptor, times=None, family=None) -> np.ndarray:
    """Turn a state descriptor into amplitudes over the original basis.

    Accepted descriptors:

    * an amplitude sequence of length ``spec.dim`` (normalised here),
    * a mapping ``{label: amplitude}`` over original or MS labels,
    * an original-basis label such as ``"g1"`` or an MS label such as ``"bg2"``,
    * ``"bright-ground[-k]"``, ``"bright-middle[-k]"``, ``"bright-excited[-k]"``
      (without ``k``: the block with the largest coupling) or ``"dark-k"``.

    MS states are taken from the frozen decomposition at the first entry of
    ``times`` (or ``family``).
    """
    if isinstance(descriptor, dict):
        c = np.zeros(spec.dim, dtype=complex)
        for key, amp in descriptor.items():
            c = c + complex(amp) * resolve_state(spec, str(key), times, family)
        return _normalized(c)
    if not isinstance(descriptor, str):
        c = np.asarray(descriptor, dtype=complex).ravel()
        if c.size != spec.dim:
            raise PreconditionError(f"initial amplitudes need {spec.dim} entries, got {c.size}")
        return _normalized(c)
    key = descriptor.strip()
    if key in spec.labels:
        c = np.zeros(spec.dim, dtype=complex)
        c[spec.global_index(key)] = 1.0
        return c
    if family is None:
        if times is None:
            raise PreconditionError(f"descriptor {key!r} needs a time grid to resolve MS states")
        family = mstransform.ms_family(spec, np.atleast_1d(times))
    S0 = family.S[0]
    labels = list(family.structure.labels)
    if key in labels:
        return S0[labels.index(key)].astype(complex)
    m = _DESCRIPTOR.match(key.lower())
    if not m:
        raise PreconditionError(f"unknown state descriptor {descriptor!r}")
    kind, k = m.group(1), m.group(2)
    if kind == "dark":
        dark = family.structure.dark_indices
        j = int(k or 1)
        if not 1 <= j <= len(dark):
            raise PreconditionError(f"{key!r}: only {len(dark)} dark states exist")
        return S0[dark[j - 1]].astype(complex)
    prefix = {"bright-ground": "bg", "bright-middle": "bm", "bright-excited": "be"}[kind]
    if spec.n_sets == 2 and prefix == "bm":
        raise PreconditionError("two-set linkages have no middle set")
    candidates = [lab for lab in labels if lab.startswith(prefix)]
    if not candidates:
        raise PreconditionError(f"{key!r}: no such bright state (all couplings off?)")
    if k is None:
        label = candidates[-1]
    else:
        label = f"{prefix}{int(k)}"
        if label not in labels:
            raise PreconditionError(f"{key!r}: no such bright state")
    return S0[labels.index(label)].astype(complex)


def project_ms(c, decomposition) -> np.ndarray:
    """MS amplitudes ``S c``."""
    c = np.asarray(c)
    S = decomposition.S if hasattr(decomposition, "S") else np.asarray(decomposition)
    if c.shape[-1] != S.shape[-1]:
        raise PreconditionError(f"state of length {c.shape[-1]} does not match basis of size {S.shape[-1]}")
    return S @ c


def fidelity(c, target) -> float:
    """``|<target|c>|^2`` with both vectors normalised (global phase ignored)."""
    c = _normalized(c)
    target = _normalized(target, "target")
    if c.size != target.size:
        raise PreconditionError("state and target differ in dimension")
    return float(abs(np.vdot(target, c)) ** 2)


# --------------------------------------------------------- integration


def max_row_sum(spec, times) -> float:
    """Largest absolute row sum of H over ``times`` (an upper bound on the spectral norm)."""
    ids, mats = linkage.hamiltonian_terms(spec)
    best = 0.0
    for start in range(0, len(times), _CHUNK):
        vals = linkage.profile_values(spec, ids, times[start : start + _CHUNK])
        H = np.einsum("jt,jab->tab", vals, mats)
        best = max(best, float(np.abs(H).sum(axis=2).max(initial=0.0)))
    return best


def check_step(spec, grid: TimeGrid, bound: float = STEP_BOUND) -> float:
    """Enforce ``h * max ||H|| <= bound``; returns the product."""
    norm = max_row_sum(spec, grid.half_step_times())
    product = grid.step * norm
    if product > bound:
        need = math.ceil((grid.t_end - grid.t_start) * norm / bound)
        raise PreconditionError(
            f"step too large: h*max|H| = {product:.4g} exceeds {bound}; use at least {need} steps"
        )
    return product


def integrate(spec, c0, grid: TimeGrid, bound: float = STEP_BOUND, checked: bool = False) -> np.ndarray:
    """States at every grid point, shape (n_steps + 1, n)."""
    if not checked:
        check_step(spec, grid, bound)
    ids, mats = linkage.hamiltonian_terms(spec)
    values = linkage.profile_values(spec, ids, grid.half_step_times())
    states = rk4_linear(np.ascontiguousarray(c0, dtype=complex), np.ascontiguousarray(mats), values, grid.step)
    if not np.all(np.isfinite(states)):
        bad = int(np.argmax(~np.isfinite(states).all(axis=1)))
        raise IntegrationError(f"non-finite amplitude at step {bad} (t = {grid.times()[bad]:.6g})")
    return states


def propagate(spec, c0, grid: TimeGrid, analyze: bool = True, exponent: float = 1.5, bound: float = STEP_BOUND):
    """Integrate from ``c0`` on ``grid`` and project onto the MS and DA bases.

    ``c0`` is an amplitude vector or any descriptor accepted by
    :func:`resolve_state`.

    Raises
    ------
    PreconditionError
        If ``c0`` is not normalised or the grid is too coarse.
    IntegrationError
        If the integration produces non-finite amplitudes.
    """
    check_step(spec, grid, bound)
    times = grid.times()
    family = None
    if analyze or isinstance(c0, (str, dict)):
        family = mstransform.ms_family(spec, times)
    if isinstance(c0, (str, dict)):
        c0 = resolve_state(spec, c0, family=family)
    c0 = np.asarray(c0, dtype=complex).ravel()
    if c0.size != spec.dim:
        raise PreconditionError(f"initial state needs {spec.dim} amplitudes")
    if abs(np.linalg.norm(c0) - 1.0) > NORM_TOL:
        raise PreconditionError("initial state is not normalised")
    states = integrate(spec, c0, grid, bound, checked=True)
    traj = Trajectory(times, states, spec.labels)
    if analyze:
        _analyze(traj, spec, family, exponent)
    return traj


def _analyze(traj, spec, family, exponent):
    times = traj.times
    structure = family.structure
    delta = np.broadcast_to(np.asarray(linkage.detuning_values(spec, times), float), times.shape)
    ddelta = np.broadcast_to(np.asarray(linkage.detuning_values(spec, times, derivative=True), float), times.shape)
    ms_amp = np.einsum("nij,nj->ni", family.S, traj.states)
    U = adiabatic.da_transform(family, delta)
    da_amp = np.einsum("nij,nj->ni", U, ms_amp)
    traj.family = family
    traj.ms_labels = list(structure.labels)
    traj.da_labels = adiabatic.da_labels(structure)
    traj.ms_populations = np.abs(ms_amp) ** 2
    traj.da_populations = np.abs(da_amp) ** 2
    resid = family.residual_series()
    total, dd, db = mstransform.residual_sector_maxima(resid, structure)
    diag = {
        "adiabaticity_ratio": adiabatic.adiabaticity_series(family, delta, ddelta, exponent),
        "nonadiabatic_max": total,
        "nonadiabatic_dark_dark": dd,
        "nonadiabatic_dark_bright": db,
        "norm_error": np.abs(np.linalg.norm(traj.states, axis=1) - 1.0),
    }
    if family.commutator is not None:
        diag["commutator_residual"] = family.commutator
    W = U @ family.S
    diag["da_coupling_ratio"] = adiabatic.da_coupling_ratio(W, linkage.hamiltonian_series(spec, times), times)
    traj.diagnostics = diag
    for k, layout in enumerate(structure.blocks):
        cpl = family.couplings[:, k]
        if layout.kind == "triple":
            theta, phi = adiabatic.block_angles(cpl, delta, "triple")
            traj.angles[f"theta{k + 1}"] = theta
            traj.angles[f"phi{k + 1}"] = phi
        else:
            traj.angles[f"alpha{k + 1}"] = adiabatic.block_angles(cpl, delta, "pair")[0]


# -------------------------------------------------------------- oracle


def _common_shape(spec, times):
    ids = spec.coupling_profile_ids()
    vals = linkage.profile_values(spec, ids, times)
    if vals.size == 0:
        return
    sv = np.linalg.svd(vals, compute_uv=False)
    if sv[0] > 0 and sv[1:].max(initial=0.0) > 1e-12 * sv[0]:
        raise PreconditionError("oracle needs every coupling to share one time profile")


def oracle_compare(spec, c0, grid: TimeGrid, bound: float = STEP_BOUND) -> float:
    """Max per-step discrepancy between direct and MS-block propagation.

    The MS basis is fixed (taken where the couplings peak).  Each bright
    block is integrated on its own from its reduced couplings, dark states
    pick up the detuning phase of their set, and the result is mapped back.
    """
    times = grid.times()
    nodes = grid.half_step_times()
    _common_shape(spec, nodes)
    c0 = np.asarray(c0, dtype=complex).ravel()
    direct = integrate(spec, c0, grid, bound)

    fam = mstransform.ms_family(spec, nodes, align=False)
    strength = np.abs(fam.couplings).sum(axis=(1, 2))
    ref = int(np.argmax(strength))
    S = fam.S[ref]
    structure = fam.structure
    delta = np.broadcast_to(np.asarray(linkage.detuning_values(spec, nodes), float), nodes.shape)
    C0 = S @ c0
    C = np.zeros((len(times), spec.dim), dtype=complex)
    detuned_set = 1
    for s, rows in structure.dark_groups:
        for r in rows:
            mats = np.array([[[1.0 if s == detuned_set else 0.0]]])
            C[:, r] = rk4_linear(C0[[r]], mats, delta[None, :], grid.step)[:, 0]
    for k, layout in enumerate(structure.blocks):
        size = len(layout.rows)
        mats = np.zeros((3, size, size))
        values = np.stack([fam.couplings[:, k, 0], fam.couplings[:, k, 1], delta])
        pos = {s: i for i, s in enumerate(layout.members)}
        if layout.kind == "triple":
            mats[0, 0, 1] = mats[0, 1, 0] = 0.5
            mats[1, 1, 2] = mats[1, 2, 1] = 0.5
        else:
            mats[0, 0, 1] = mats[0, 1, 0] = 0.5
        if detuned_set in pos:
            mats[2, pos[detuned_set], pos[detuned_set]] = 1.0
        rows = list(layout.rows)
        C[:, rows] = rk4_linear(np.ascontiguousarray(C0[rows]), mats, values, grid.step)
    via_ms = C @ S  # rows: S^T C
    return float(np.abs(direct - via_ms).max())

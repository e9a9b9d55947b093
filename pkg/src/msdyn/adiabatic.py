"""Double-adiabatic (DA) angles, rotations and adiabaticity diagnostics.

Each MS bright block is rotated into its own adiabatic basis.  A two-state
block ``1/2 [[0, W], [W, 2 D]]`` uses ``R(alpha)`` with
``alpha = atan2(W, D) / 2``; a three-state block with pump ``Wp`` and Stokes
``Ws`` couplings uses ``R(theta, phi)`` with ``theta = atan2(Wp, Ws)`` and
``phi = atan2(sqrt(Wp^2 + Ws^2), D) / 2``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError


@dataclass
class DaAngles:
    t: float
    alpha: tuple = ()
    theta: tuple = ()
    phi: tuple = ()


@dataclass
class AdiabaticityReport:
    """Closed-form adiabaticity check at one instant (or arrays over instants)."""

    t: object
    lhs: object
    rhs: object
    ratio: object
    gap: object
    defined: object = True


def da_angle_two(omega, delta):
    """Mixing angle ``alpha = atan2(omega, delta) / 2`` in [0, pi/2] for omega >= 0.

    Raises
    ------
    PreconditionError
        If ``omega`` and ``delta`` vanish together.
    """
    omega = np.asarray(omega, dtype=float)
    delta = np.asarray(delta, dtype=float)
    if np.any((omega == 0) & (delta == 0)):
        raise PreconditionError("mixing angle is undefined when coupling and detuning both vanish")
    out = 0.5 * np.arctan2(omega, delta)
    return float(out) if out.ndim == 0 else out


def da_angles_three(omega_p, omega_s, delta):
    """Return ``(theta, phi)`` for a three-state bright block."""
    omega_p = np.asarray(omega_p, dtype=float)
    omega_s = np.asarray(omega_s, dtype=float)
    delta = np.asarray(delta, dtype=float)
    if np.any((omega_p == 0) & (omega_s == 0)):
        raise PreconditionError("three-state angles are undefined when both couplings vanish")
    theta = np.arctan2(omega_p, omega_s)
    phi = 0.5 * np.arctan2(np.hypot(omega_p, omega_s), delta)
    if theta.ndim == 0:
        return float(theta), float(phi)
    return theta, phi


def rotation_two(alpha):
    """``[[cos a, sin a], [-sin a, cos a]]``; broadcasts over leading axes of ``alpha``."""
    a = np.asarray(alpha, dtype=float)
    c, s = np.cos(a), np.sin(a)
    return np.stack([np.stack([c, s], -1), np.stack([-s, c], -1)], -2)


def rotation_three(theta, phi):
    """Three-state DA rotation acting on ``(bg, bm, be)``.

    Rows are the DA states ``Phi_+``, ``Phi_0`` and ``Phi_-``.
    """
    th = np.asarray(theta, dtype=float)
    ph = np.asarray(phi, dtype=float)
    st, ct, sp, cp = np.sin(th), np.cos(th), np.sin(ph), np.cos(ph)
    z = np.zeros_like(st * sp)
    rows = [
        np.stack([st * sp, cp + z, ct * sp], -1),
        np.stack([ct + z, z, -st + z], -1),
        np.stack([cp * st, -sp + z, ct * cp], -1),
    ]
    return np.stack(rows, -2)


def check_adiabatic_two(omega, domega, delta, ddelta, t=0.0, exponent: float = 1.5) -> AdiabaticityReport:
    """Two-state condition ``|D W' - D' W| << (W^2 + D^2)^p``.

    The exponent ``p = 3/2`` makes the ratio dimensionless; it can be
    overridden for comparison with other forms of the condition.
    """
    omega, domega = np.asarray(omega, float), np.asarray(domega, float)
    delta, ddelta = np.asarray(delta, float), np.asarray(ddelta, float)
    lhs = np.abs(delta * domega - ddelta * omega)
    sq = omega**2 + delta**2
    rhs = sq**exponent
    ratio = np.divide(lhs, rhs, out=np.zeros_like(lhs * rhs), where=rhs > 0)
    return AdiabaticityReport(t, _scalar(lhs), _scalar(rhs), _scalar(ratio), _scalar(np.sqrt(sq)), _scalar(rhs > 0))


def check_adiabatic_three(omega_p, domega_p, omega_s, domega_s, delta=0.0, t=0.0) -> AdiabaticityReport:
    """Three-state condition ``|Wp Ws' - Ws Wp'| / (Wp^2 + Ws^2) = |theta'|``.

    ``gap`` is the distance between the zero-energy DA state and its nearest
    neighbour.  Where both couplings vanish the ratio is NaN and ``defined``
    is False.
    """
    op, dop = np.asarray(omega_p, float), np.asarray(domega_p, float)
    os_, dos = np.asarray(omega_s, float), np.asarray(domega_s, float)
    delta = np.asarray(delta, float)
    lhs = np.abs(op * dos - os_ * dop)
    rhs = op**2 + os_**2
    ok = rhs > 0
    ratio = np.divide(lhs, rhs, out=np.full(np.broadcast(lhs, rhs).shape, np.nan), where=ok)
    gap = 0.5 * (np.sqrt(rhs + delta**2) - np.abs(delta))
    return AdiabaticityReport(t, _scalar(lhs), _scalar(rhs), _scalar(ratio), _scalar(gap), _scalar(ok))


def _scalar(x):
    x = np.asarray(x)
    return x.item() if x.ndim == 0 else x


# ------------------------------------------------------------ DA basis


def da_labels(structure) -> list:
    """Labels of the DA basis: MS dark labels then ``phi<k>_-/+`` or ``phi<k>_+/0/-``."""
    labels = list(structure.labels)
    for k, layout in enumerate(structure.blocks):
        names = ("-", "+") if layout.kind == "pair" else ("+", "0", "-")
        for row, name in zip(layout.rows, names):
            labels[row] = f"phi{k + 1}_{name}"
    return labels


def block_angles(couplings, delta, kind):
    """Angles for one block over time, tolerating instants where the block is switched off."""
    delta = np.asarray(delta, dtype=float)
    if kind == "pair":
        return (0.5 * np.arctan2(couplings[..., 0], delta),)
    op, os_ = couplings[..., 0], couplings[..., 1]
    return np.arctan2(op, os_), 0.5 * np.arctan2(np.hypot(op, os_), delta)


def _pair_rotation(members, couplings, delta):
    R = rotation_two(0.5 * np.arctan2(couplings[..., 0], delta))
    if members == (1, 2):
        # (bm, be): detuned state first; rows of R are eigenvectors here.
        return R[..., ::-1, :]
    # (bg, be) or (bg, bm): the DA states are the columns of R.
    return np.swapaxes(R, -1, -2)


def da_transform(family, delta):
    """Per-step DA rotation ``U`` (N, n, n) acting on MS amplitudes.

    Dark MS states are left unchanged.  A bright pair ``(bg, be)`` maps to
    the columns of ``R(alpha)``, so ``phi_- = cos(a) bg - sin(a) be`` runs from
    ``bg`` to ``-be`` as ``alpha`` goes from 0 to pi/2.  A bright triple maps to
    the rows of ``R(theta, phi)``.  DA amplitudes are ``U @ S @ c``.
    """
    N = len(family.times)
    n = family.structure.dim
    delta = np.broadcast_to(np.asarray(delta, dtype=float), (N,))
    U = np.broadcast_to(np.eye(n), (N, n, n)).copy()
    for k, layout in enumerate(family.structure.blocks):
        cpl = family.couplings[:, k]
        if layout.kind == "triple":
            R = rotation_three(*block_angles(cpl, delta, "triple"))
        else:
            R = _pair_rotation(layout.members, cpl, delta)
        rows = np.array(layout.rows)
        U[:, rows[:, None], rows[None, :]] = R
    return U


def adiabaticity_series(family, delta, ddelta, exponent: float = 1.5):
    """Closed-form adiabaticity ratio per step, maximised over bright blocks.

    Two-set blocks use the two-state condition; three-state blocks use
    ``|theta'|``.  Instants where every block is off report 0.
    """
    N = len(family.times)
    out = np.zeros(N)
    for k, layout in enumerate(family.structure.blocks):
        cpl, rate = family.couplings[:, k], family.coupling_rates[:, k]
        if layout.kind == "triple":
            rep = check_adiabatic_three(cpl[:, 0], rate[:, 0], cpl[:, 1], rate[:, 1], delta, family.times)
            r = np.where(rep.defined, rep.ratio, 0.0)
        else:
            r = check_adiabatic_two(cpl[:, 0], rate[:, 0], delta, ddelta, family.times, exponent).ratio
        out = np.maximum(out, np.where(family.active, r, 0.0))
    return out


def da_coupling_ratio(W, H, times):
    """General DA condition ``max |<Phi_j | dPhi_k/dt>| / |e_j - e_k|`` per step.

    ``W`` holds DA states as rows (N, n, n) and ``H`` the Hamiltonians in the
    original basis.  Pairs with a vanishing gap are skipped.
    """
    if len(times) < 2:
        return np.zeros(len(times))
    dW = np.gradient(W, times, axis=0)
    M = np.abs(W @ dW.transpose(0, 2, 1))
    E = np.einsum("nia,nab,nib->ni", W, H, W)
    gap = np.abs(E[:, :, None] - E[:, None, :])
    scale = np.abs(E).max(axis=1, keepdims=True)[..., None] + 1.0
    mask = gap > 1e-9 * scale
    ratio = np.where(mask, M / np.where(mask, gap, 1.0), 0.0)
    return ratio.max(axis=(1, 2))

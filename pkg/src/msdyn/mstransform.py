"""Instantaneous Morris-Shore decomposition and its time dependence.

The Morris-Shore (MS) basis is a real orthogonal change of basis ``S`` that
is block diagonal over the state sets.  Its rows (MS states, expressed in the
original basis) are ordered as::

    dark states (ground set, then middle set, then final/excited set)
    bright blocks, ascending in reduced coupling

A two-set bright block is a pair ``(bg_k, be_k)`` coupled by
``Omega_k``; a three-set block is a triple ``(bg_k, bm_k, be_k)`` coupled by
``(Omega_p,k, Omega_s,k)``.  The sign of every block is fixed so that the
ground-set member has a positive component sum, which makes every reduced
coupling non-negative.

Along a time grid the basis is gauge aligned: bright blocks are sign
tracked against the previous instant, degenerate dark subspaces are rotated
onto the previous instant by orthogonal Procrustes, and instants where a
coupling block is switched off reuse the basis of the nearest instant where
it is on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linkage
from ._kernels import cumulative_rotations
from .errors import MsInexistenceError, PreconditionError

COMMUTATOR_TOL = 1e-8
ACTIVE_FRACTION = 1e-9
# Mixing weight for simultaneous diagonalisation of commuting Gram matrices;
# any irrational-looking value avoids accidental degeneracies.
_MIX = 0.7548776662466927


@dataclass(frozen=True)
class BlockLayout:
    rows: tuple
    members: tuple  # set index of each row, e.g. (0, 1) or (0, 1, 2)

    @property
    def kind(self) -> str:
        return {2: "pair", 3: "triple"}[len(self.rows)]


@dataclass(frozen=True)
class MsStructure:
    set_sizes: tuple
    dark_groups: tuple  # ((set index, rows), ...)
    blocks: tuple
    labels: tuple

    @property
    def dark_indices(self) -> list:
        return [r for _, rows in self.dark_groups for r in rows]

    @property
    def dim(self) -> int:
        return sum(self.set_sizes)

    def dark_set_of_row(self) -> dict:
        return {r: s for s, rows in self.dark_groups for r in rows}


@dataclass
class BrightBlock:
    indices: tuple
    couplings: tuple
    members: tuple


@dataclass
class MsDecomposition:
    S: np.ndarray
    labels: list
    dark_indices: list
    bright_blocks: list
    t: float
    structure: MsStructure = None

    def project(self, c):
        return self.S @ np.asarray(c)

    def row(self, label: str) -> np.ndarray:
        return self.S[self.labels.index(label)]


@dataclass
class NonAdiabaticReport:
    t: float
    residual_matrix: np.ndarray
    max_abs: float
    dark_dark_max: float
    dark_bright_max: float


@dataclass
class MsFamily:
    """Gauge-aligned MS decompositions on a time grid."""

    times: np.ndarray
    S: np.ndarray  # (N, n, n)
    couplings: np.ndarray  # (N, blocks, 2): Omega or (Omega_p, Omega_s)
    coupling_rates: np.ndarray  # time derivatives of ``couplings``
    structure: MsStructure
    active: np.ndarray  # (N,) any coupling block on
    commutator: np.ndarray | None = None  # relative residual per step (three sets)

    def __len__(self):
        return len(self.times)

    def at(self, i: int) -> MsDecomposition:
        return _make_decomposition(self.S[i], self.couplings[i], self.structure, float(self.times[i]))

    def residual_series(self) -> np.ndarray:
        """S(t) dS^T/dt on every grid point (central differences inside, one-sided at the ends)."""
        if len(self.times) < 2:
            return np.zeros_like(self.S)
        dS = np.gradient(self.S, self.times, axis=0)
        return self.S @ dS.transpose(0, 2, 1)


# ----------------------------------------------------------------- helpers


def _canonical_sign(x):
    """+-1 per vector (last axis) making the component sum positive.

    Vectors summing to ~0 use the sign of their first non-negligible entry.
    """
    tot = x.sum(axis=-1)
    big = np.abs(x) > 1e-9
    first_idx = np.argmax(big, axis=-1)
    first = np.take_along_axis(x, first_idx[..., None], axis=-1)[..., 0]
    s = np.where(np.abs(tot) > 1e-9, np.sign(tot), np.sign(first))
    return np.where(s == 0, 1.0, s)


def _unit(x):
    """Normalise along the last axis without under/overflow; zero vectors stay zero."""
    scale = np.abs(x).max(axis=-1, keepdims=True)
    y = x / np.where(scale > 0, scale, 1.0)
    n = np.linalg.norm(y, axis=-1, keepdims=True)
    return y / np.where(n > 0, n, 1.0)


def _norm(x):
    """Euclidean norm along the last axis without under/overflow."""
    scale = np.abs(x).max(axis=-1)
    safe = np.where(scale > 0, scale, 1.0)
    return scale * np.linalg.norm(x / safe[..., None], axis=-1)


def _numerical_rank(sigma, rel=1e-10):
    smax = sigma.max(axis=-1, initial=0.0)
    return (sigma > rel * smax[..., None]).sum(axis=-1) * (smax > 0)


def _nearest_active(active):
    """Index of the nearest active instant for every instant (identity where active)."""
    idx = np.arange(len(active))
    on = idx[active]
    if len(on) == 0:
        return idx
    pos = np.clip(np.searchsorted(on, idx), 1, len(on) - 1) if len(on) > 1 else np.zeros_like(idx)
    if len(on) == 1:
        return np.full_like(idx, on[0])
    left, right = on[pos - 1], on[pos]
    return np.where(np.abs(idx - left) <= np.abs(right - idx), left, right)


def _frozen(blocks, active):
    nearest = _nearest_active(active)
    return blocks[nearest]


def _labels_two(g, e, r):
    labels = [f"dg{i + 1}" for i in range(g - r)] + [f"de{i + 1}" for i in range(e - r)]
    for k in range(r):
        labels += [f"bg{k + 1}", f"be{k + 1}"]
    return labels


def _structure_two(g, e, r):
    n_dg, n_de = g - r, e - r
    dark = ((0, tuple(range(n_dg))), (1, tuple(range(n_dg, n_dg + n_de))))
    start = n_dg + n_de
    blocks = tuple(BlockLayout((start + 2 * k, start + 2 * k + 1), (0, 1)) for k in range(r))
    return MsStructure((g, e), dark, blocks, tuple(_labels_two(g, e, r)))


def _structure_three(g, m, f, r_p, r_s, counts):
    n_triple, n_gm, n_me, n_dm = counts
    n_dg, n_df = g - r_p, f - r_s
    labels = [f"dg{i + 1}" for i in range(n_dg)]
    labels += [f"dm{i + 1}" for i in range(n_dm)]
    labels += [f"de{i + 1}" for i in range(n_df)]
    dark = (
        (0, tuple(range(n_dg))),
        (1, tuple(range(n_dg, n_dg + n_dm))),
        (2, tuple(range(n_dg + n_dm, n_dg + n_dm + n_df))),
    )
    row = n_dg + n_dm + n_df
    blocks = []
    k = 0
    for kind, count in (((0, 1, 2), n_triple), ((0, 1), n_gm), ((1, 2), n_me)):
        for _ in range(count):
            k += 1
            blocks.append(BlockLayout(tuple(range(row, row + len(kind))), kind))
            labels += [("bg", "bm", "be")[s] + str(k) for s in kind]
            row += len(kind)
    return MsStructure((g, m, f), dark, tuple(blocks), tuple(labels))


def _make_decomposition(S, couplings, structure, t):
    blocks = []
    for b, layout in enumerate(structure.blocks):
        if layout.kind == "triple":
            cpl = (float(couplings[b, 0]), float(couplings[b, 1]))
        else:
            cpl = (float(couplings[b, 0]),)
        blocks.append(BrightBlock(layout.rows, cpl, layout.members))
    return MsDecomposition(S.copy(), list(structure.labels), structure.dark_indices, blocks, t, structure)


# --------------------------------------------------------------- two sets


def _two_set_batch(V, Veff, dV, r):
    N, g, e = V.shape
    U, _, Vh = np.linalg.svd(Veff, full_matrices=True)
    u = U[:, :, :r][:, :, ::-1].transpose(0, 2, 1)  # (N, r, g) ascending
    v = Vh[:, :r, :][:, ::-1, :]  # (N, r, e)
    sgn = _canonical_sign(u)
    u = u * sgn[..., None]
    v = v * sgn[..., None]
    # Singular values of the actual coupling block: exact even where S is frozen.
    omega = np.linalg.svd(V, compute_uv=False)[:, :r][:, ::-1] if r else np.zeros((N, 0))
    rate = np.einsum("nkg,nge,nke->nk", u, dV, v)
    n = g + e
    S = np.zeros((N, n, n))
    S[:, : g - r, :g] = U[:, :, r:].transpose(0, 2, 1)
    S[:, g - r : g - r + e - r, g:] = Vh[:, r:, :]
    row = g - r + e - r
    for k in range(r):
        S[:, row + 2 * k, :g] = u[:, k]
        S[:, row + 2 * k + 1, g:] = v[:, k]
    couplings = np.zeros((N, r, 2))
    rates = np.zeros((N, r, 2))
    couplings[:, :, 0] = omega
    rates[:, :, 0] = rate
    return S, couplings, rates


def ms_decompose_two(V, t: float = 0.0) -> MsDecomposition:
    """MS decomposition of a two-set system with coupling block ``V`` (g x e)."""
    V = np.asarray(V, dtype=float)
    if V.ndim != 2:
        raise PreconditionError("V must be a 2-D g x e matrix")
    g, e = V.shape
    r = int(_numerical_rank(np.linalg.svd(V, compute_uv=False)))
    S, cpl, _ = _two_set_batch(V[None], V[None], np.zeros_like(V)[None], r)
    return _make_decomposition(S[0], cpl[0], _structure_two(g, e, r), t)


# ------------------------------------------------------------- three sets


def commutator_residual(Vp, Vs):
    """Relative residual ||[Vp^T Vp, Vs Vs^T]|| / (||Vp^T Vp|| ||Vs Vs^T||); batched over leading axes."""
    P = np.swapaxes(Vp, -1, -2) @ Vp
    Q = Vs @ np.swapaxes(Vs, -1, -2)
    comm = P @ Q - Q @ P
    denom = np.linalg.norm(P, axis=(-2, -1)) * np.linalg.norm(Q, axis=(-2, -1))
    num = np.linalg.norm(comm, axis=(-2, -1))
    return np.where(denom > 0, num / np.where(denom > 0, denom, 1.0), 0.0)


def _middle_basis(Pn, Qn, r_p, r_s):
    w, B = np.linalg.eigh(Pn + _MIX * Qn)
    p_hat = np.einsum("nik,nij,njk->nk", B, Pn, B)
    q_hat = np.einsum("nik,nij,njk->nk", B, Qn, B)
    m = B.shape[-1]
    has_p = np.zeros(p_hat.shape, dtype=bool)
    has_s = np.zeros(q_hat.shape, dtype=bool)
    if r_p:
        top = np.argsort(-p_hat, axis=-1)[:, :r_p]
        np.put_along_axis(has_p, top, True, axis=-1)
    if r_s:
        top = np.argsort(-q_hat, axis=-1)[:, :r_s]
        np.put_along_axis(has_s, top, True, axis=-1)
    # category: 0 triple, 1 ground-middle pair, 2 middle-final pair, 3 middle dark
    cat = np.where(has_p & has_s, 0, np.where(has_p, 1, np.where(has_s, 2, 3)))
    return B, cat


def _three_set_batch(Vp, Vs, Vp_eff, Vs_eff, dVp, dVs, r_p, r_s, counts=None):
    N, g, m = Vp.shape
    f = Vs.shape[2]
    P = np.swapaxes(Vp, 1, 2) @ Vp
    Q = Vs @ np.swapaxes(Vs, 1, 2)
    Pe = np.swapaxes(Vp_eff, 1, 2) @ Vp_eff
    Qe = Vs_eff @ np.swapaxes(Vs_eff, 1, 2)
    pn = np.linalg.norm(Pe, axis=(1, 2))
    qn = np.linalg.norm(Qe, axis=(1, 2))
    Pn = Pe / np.where(pn > 0, pn, 1.0)[:, None, None]
    Qn = Qe / np.where(qn > 0, qn, 1.0)[:, None, None]
    B, cat = _middle_basis(Pn, Qn, r_p, r_s)
    found = tuple(int(x) for x in (cat[0] == np.arange(4)[:, None]).sum(axis=1))
    if counts is None:
        counts = found
    per_step = np.stack([(cat == c).sum(axis=1) for c in range(4)], axis=1)
    if np.any(per_step != np.array(counts)):
        raise PreconditionError("MS block structure changes along the grid; refine or split the schedule")
    bT0 = B.transpose(0, 2, 1)
    omega_p = _norm(np.einsum("ngm,nkm->nkg", Vp, bT0))
    omega_s = _norm(np.einsum("nmf,nkm->nkf", Vs, bT0))
    rms = np.hypot(omega_p, omega_s)
    big = 2.0 * (rms.max() + 1.0)
    order = np.argsort(cat * big + rms, axis=-1)
    B = np.take_along_axis(B, order[:, None, :], axis=2)
    cat = np.take_along_axis(cat, order, axis=1)
    bT = B.transpose(0, 2, 1)  # (N, m, m): row k = b_k
    a = _unit(np.einsum("ngm,nkm->nkg", Vp_eff, bT))
    fv = _unit(np.einsum("nmf,nkm->nkf", Vs_eff, bT))
    # sign: ground member if present, else the middle vector
    sgn = np.where(cat <= 1, _canonical_sign(a), _canonical_sign(bT))
    a, bT, fv = a * sgn[..., None], bT * sgn[..., None], fv * sgn[..., None]
    omega_p = _norm(np.einsum("ngm,nkm->nkg", Vp, bT))
    omega_s = _norm(np.einsum("nmf,nkm->nkf", Vs, bT))
    rate_p = np.einsum("nkg,ngm,nkm->nk", a, dVp, bT)
    rate_s = np.einsum("nkm,nmf,nkf->nk", bT, dVs, fv)

    structure = _structure_three(g, m, f, r_p, r_s, counts)
    n = g + m + f
    S = np.zeros((N, n, n))
    (_, dg), (_, dm), (_, df) = structure.dark_groups
    if dg:
        U, _, _ = np.linalg.svd(Vp_eff, full_matrices=True)
        S[:, list(dg), :g] = U[:, :, r_p:].transpose(0, 2, 1)
    if df:
        _, _, Vh = np.linalg.svd(Vs_eff, full_matrices=True)
        S[:, list(df), g + m :] = Vh[:, r_s:, :]
    n_triple, n_gm, n_me, n_dm = counts
    if dm:
        S[:, list(dm), g : g + m] = bT[:, n_triple + n_gm + n_me :]
    nb = len(structure.blocks)
    couplings = np.zeros((N, nb, 2))
    rates = np.zeros((N, nb, 2))
    for k, layout in enumerate(structure.blocks):
        rows = iter(layout.rows)
        for s in layout.members:
            r = next(rows)
            if s == 0:
                S[:, r, :g] = a[:, k]
            elif s == 1:
                S[:, r, g : g + m] = bT[:, k]
            else:
                S[:, r, g + m :] = fv[:, k]
        if layout.members == (0, 1, 2):
            couplings[:, k] = np.stack([omega_p[:, k], omega_s[:, k]], axis=-1)
            rates[:, k] = np.stack([rate_p[:, k], rate_s[:, k]], axis=-1)
        elif layout.members == (0, 1):
            couplings[:, k, 0], rates[:, k, 0] = omega_p[:, k], rate_p[:, k]
        else:
            couplings[:, k, 0], rates[:, k, 0] = omega_s[:, k], rate_s[:, k]
    return S, couplings, rates, structure


def ms_decompose_three(Vp, Vs, t: float = 0.0) -> MsDecomposition:
    """MS decomposition of a three-set system with pump block ``Vp`` (g x m) and Stokes block ``Vs`` (m x f).

    Raises :class:`MsInexistenceError` unless ``Vp^T Vp`` and ``Vs Vs^T`` commute.
    """
    Vp = np.asarray(Vp, dtype=float)
    Vs = np.asarray(Vs, dtype=float)
    if Vp.ndim != 2 or Vs.ndim != 2 or Vp.shape[1] != Vs.shape[0]:
        raise PreconditionError("Vp must be g x m and Vs must be m x f")
    res = float(commutator_residual(Vp, Vs))
    if res > COMMUTATOR_TOL:
        raise MsInexistenceError(res, COMMUTATOR_TOL, t)
    r_p = int(_numerical_rank(np.linalg.svd(Vp, compute_uv=False)))
    r_s = int(_numerical_rank(np.linalg.svd(Vs, compute_uv=False)))
    zp, zs = np.zeros_like(Vp)[None], np.zeros_like(Vs)[None]
    S, cpl, _, structure = _three_set_batch(Vp[None], Vs[None], Vp[None], Vs[None], zp, zs, r_p, r_s)
    return _make_decomposition(S[0], cpl[0], structure, t)


def decompose(spec, t: float) -> MsDecomposition:
    """MS decomposition of ``spec`` at a single instant."""
    blocks = linkage.coupling_matrices(spec, float(t))
    if spec.n_sets == 2:
        return ms_decompose_two(blocks, t)
    return ms_decompose_three(*blocks, t)


# ------------------------------------------------------------ alignment


def _polar(M):
    U, _, Vh = np.linalg.svd(M)
    return U @ Vh


def align_family(S, structure: MsStructure):
    """Gauge-align a stack of MS bases in place so consecutive rows overlap positively."""
    if len(S) < 2:
        return S
    O = S[:-1] @ S[1:].transpose(0, 2, 1)
    for layout in structure.blocks:
        rows = list(layout.rows)
        tr = np.einsum("nii->n", O[:, rows][:, :, rows])
        step = np.where(tr < 0, -1.0, 1.0)
        cum = np.concatenate([[1.0], np.cumprod(step)])
        S[:, rows, :] *= cum[:, None, None]
    for _, rows in structure.dark_groups:
        rows = list(rows)
        if not rows:
            continue
        steps = _polar(O[:, rows][:, :, rows])
        Q = cumulative_rotations(np.ascontiguousarray(steps))
        S[:, rows, :] = Q @ S[:, rows, :]
    return S


# -------------------------------------------------------------- families


def ms_family(spec, times, align: bool = True, check_commutator: bool = True) -> MsFamily:
    """Gauge-aligned MS decompositions of ``spec`` on ``times``."""
    times = np.atleast_1d(np.asarray(times, dtype=float))
    blocks = linkage.coupling_matrices(spec, times)
    rates = linkage.coupling_matrices(spec, times, derivative=True)
    if spec.n_sets == 2:
        V, dV = blocks, rates
        amp = np.abs(V).max(initial=0.0)
        active = np.abs(V).max(axis=(1, 2)) > ACTIVE_FRACTION * amp if amp > 0 else np.zeros(len(times), bool)
        Veff = _frozen(V, active)
        r = int(_numerical_rank(np.linalg.svd(Veff[active], compute_uv=False)).max(initial=0)) if active.any() else 0
        g, e = V.shape[1:]
        S, cpl, rt = _two_set_batch(V, Veff, dV, r)
        structure = _structure_two(g, e, r)
        comm = None
    else:
        (Vp, Vs), (dVp, dVs) = blocks, rates
        amp = max(np.abs(Vp).max(initial=0.0), np.abs(Vs).max(initial=0.0))
        thr = ACTIVE_FRACTION * amp
        act_p = np.abs(Vp).max(axis=(1, 2)) > thr if amp > 0 else np.zeros(len(times), bool)
        act_s = np.abs(Vs).max(axis=(1, 2)) > thr if amp > 0 else np.zeros(len(times), bool)
        active = act_p | act_s
        comm = commutator_residual(Vp, Vs)
        both = act_p & act_s
        if check_commutator and both.any():
            worst = int(np.argmax(np.where(both, comm, -1.0)))
            if comm[worst] > COMMUTATOR_TOL:
                raise MsInexistenceError(comm[worst], COMMUTATOR_TOL, float(times[worst]))
        Vp_eff, Vs_eff = _frozen(Vp, act_p), _frozen(Vs, act_s)
        r_p = int(_numerical_rank(np.linalg.svd(Vp_eff[act_p], compute_uv=False)).max(initial=0)) if act_p.any() else 0
        r_s = int(_numerical_rank(np.linalg.svd(Vs_eff[act_s], compute_uv=False)).max(initial=0)) if act_s.any() else 0
        ref = int(np.argmax(np.abs(Vp_eff).max(axis=(1, 2)) * np.abs(Vs_eff).max(axis=(1, 2)))) if amp > 0 else 0
        _, _, _, ref_structure = _three_set_batch(
            Vp_eff[ref : ref + 1], Vs_eff[ref : ref + 1], Vp_eff[ref : ref + 1], Vs_eff[ref : ref + 1],
            dVp[ref : ref + 1], dVs[ref : ref + 1], r_p, r_s,
        )
        counts = _counts_of(ref_structure)
        S, cpl, rt, structure = _three_set_batch(Vp, Vs, Vp_eff, Vs_eff, dVp, dVs, r_p, r_s, counts)
    if align:
        align_family(S, structure)
    return MsFamily(times, S, cpl, rt, structure, active, comm)


def _counts_of(structure: MsStructure):
    kinds = [b.members for b in structure.blocks]
    n_dm = len(structure.dark_groups[1][1])
    return (kinds.count((0, 1, 2)), kinds.count((0, 1)), kinds.count((1, 2)), n_dm)


def _cayley(X):
    # (X - 1)(X + 1)^-1: exactly antisymmetric for orthogonal X, ~ log(X)/2 near 1.
    eye = np.eye(X.shape[-1])
    return np.linalg.solve((X + eye).T, (X - eye).T).T


def nonadiabatic_residual(spec, t: float, dt: float) -> NonAdiabaticReport:
    """S(t) dS^T/dt at ``t`` from a central difference with half-width ``dt``.

    The difference is taken on the overlaps ``S(t) S(t +- dt)^T`` in Cayley
    form, which is second-order accurate like the plain difference and keeps
    the result antisymmetric to rounding error.
    """
    if not dt > 0:
        raise PreconditionError("dt must be positive")
    fam = ms_family(spec, np.array([t - dt, t, t + dt]))
    S = fam.S
    resid = (_cayley(S[1] @ S[2].T) - _cayley(S[1] @ S[0].T)) / dt
    return _report(float(t), resid, fam.structure)


def _report(t, resid, structure):
    dark = structure.dark_indices
    bright = [r for b in structure.blocks for r in b.rows]
    dd = np.abs(resid[np.ix_(dark, dark)]).max(initial=0.0) if dark else 0.0
    db = np.abs(resid[np.ix_(dark, bright)]).max(initial=0.0) if dark and bright else 0.0
    return NonAdiabaticReport(t, resid, float(np.abs(resid).max(initial=0.0)), float(dd), float(db))


def residual_sector_maxima(resid, structure: MsStructure):
    """Per-step (max, dark-dark max, dark-bright max) for a stack of residual matrices."""
    dark = structure.dark_indices
    bright = [r for b in structure.blocks for r in b.rows]
    total = np.abs(resid).max(axis=(1, 2))
    if dark:
        dd = np.abs(resid[:, dark][:, :, dark]).max(axis=(1, 2))
    else:
        dd = np.zeros(len(resid))
    if dark and bright:
        db = np.abs(resid[:, dark][:, :, bright]).max(axis=(1, 2))
    else:
        db = np.zeros(len(resid))
    return total, dd, db


# ------------------------------------------------------------ N-pod forms


def _check_couplings(V):
    V = np.asarray(V, dtype=float).ravel()
    if V.size < 1 or not np.any(V != 0):
        raise PreconditionError("N-pod basis is undefined when every coupling vanishes")
    return V


def npod_bright_ground(V) -> np.ndarray:
    """Ground bright state ``[V_1, ..., V_N, 0] / Omega_N`` (length N + 1)."""
    V = _check_couplings(V)
    return np.append(V / np.linalg.norm(V), 0.0)


def npod_dark_states(V) -> list:
    """The N - 1 nested dark states of an N-pod (each of length N + 1).

    ``d_n`` is ``[V_1 V_{n+1}, ..., V_n V_{n+1}, -Omega_n^2, 0, ...] / (Omega_n Omega_{n+1})``
    with ``Omega_n`` the norm of the first n couplings.  Where leading
    couplings vanish the limiting unit vectors are used instead.
    """
    V = _check_couplings(V)
    N = V.size
    cum = np.hypot.accumulate(np.abs(V))  # cum[n-1] = Omega_n, free of underflow
    states = []
    for n in range(1, N):
        d = np.zeros(N + 1)
        om_n, om_n1 = cum[n - 1], cum[n]
        if om_n > 0:
            d[:n] = (V[:n] / om_n) * (V[n] / om_n1)
            d[n] = -om_n / om_n1
        else:
            d[n - 1] = 1.0
        states.append(d)
    return states

"""State sets, coupling topology and the instantaneous RWA Hamiltonian.

States are grouped into two (ground ``g``, excited ``e``) or three (ground
``g``, middle ``m``, final ``e``) degenerate sets.  Only set 1 (the excited set
of a two-set system, the middle set of a three-set system) is detuned.  The
Hamiltonian carries a global factor 1/2::

    H = 1/2 [[0, V], [V^T, 2 Delta 1]]
    H = 1/2 [[0, Vp, 0], [Vp^T, 2 Delta 1, Vs], [0, Vs^T, 0]]

``coupling_matrices`` returns the raw, un-halved blocks ``V`` or ``(Vp, Vs)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from . import pulses
from .errors import ConfigError
from .pulses import PulseProfile


@dataclass(frozen=True)
class Coupling:
    lower: str
    upper: str
    profile: str


@dataclass(frozen=True)
class HamiltonianSnapshot:
    matrix: np.ndarray
    t: float


def _set_labels(set_sizes):
    if len(set_sizes) == 2:
        prefixes = ("g", "e")
    else:
        prefixes = ("g", "m", "e")
    labels = []
    for prefix, size in zip(prefixes, set_sizes):
        if size == 1 and prefix != "g":
            labels.append([prefix])
        else:
            labels.append([f"{prefix}{i + 1}" for i in range(size)])
    return labels


@dataclass(frozen=True)
class LinkageSpec:
    set_sizes: tuple
    couplings: tuple
    detuning: str
    pulses: dict = field(default_factory=dict)
    name: str = "custom"

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.set_sizes)
        object.__setattr__(self, "set_sizes", sizes)
        object.__setattr__(self, "couplings", tuple(self.couplings))
        if len(sizes) not in (2, 3) or min(sizes) < 1:
            raise ConfigError("a linkage needs 2 or 3 sets of positive size")
        index = self.index
        seen = set()
        for c in self.couplings:
            if c.lower not in index or c.upper not in index:
                raise ConfigError(f"coupling {c.lower}-{c.upper} names an unknown state")
            (s1, _), (s2, _) = index[c.lower], index[c.upper]
            if s2 != s1 + 1:
                raise ConfigError(
                    f"coupling {c.lower}-{c.upper} does not join adjacent sets "
                    "(intra-set and skip couplings are not allowed)"
                )
            key = (c.lower, c.upper)
            if key in seen:
                raise ConfigError(f"duplicate coupling {c.lower}-{c.upper}")
            seen.add(key)
            if c.profile not in self.pulses:
                raise ConfigError(f"coupling {c.lower}-{c.upper} uses undefined pulse {c.profile!r}")
        if self.detuning not in self.pulses:
            raise ConfigError(f"detuning uses undefined pulse {self.detuning!r}")
        for key, value in self.pulses.items():
            if not isinstance(value, PulseProfile):
                raise ConfigError(f"pulse {key!r} is not a PulseProfile")

    @property
    def n_sets(self) -> int:
        return len(self.set_sizes)

    @property
    def dim(self) -> int:
        return sum(self.set_sizes)

    @property
    def set_labels(self) -> list:
        return _set_labels(self.set_sizes)

    @property
    def labels(self) -> list:
        return [lab for group in self.set_labels for lab in group]

    @property
    def index(self) -> dict:
        """label -> (set index, position within set)."""
        return {lab: (s, i) for s, group in enumerate(self.set_labels) for i, lab in enumerate(group)}

    @property
    def offsets(self) -> list:
        return list(np.cumsum((0,) + self.set_sizes[:-1]))

    def global_index(self, label: str) -> int:
        s, i = self.index[label]
        return self.offsets[s] + i

    def set_slices(self) -> list:
        return [slice(o, o + n) for o, n in zip(self.offsets, self.set_sizes)]

    def coupling_profile_ids(self) -> list:
        ids = []
        for c in self.couplings:
            if c.profile not in ids:
                ids.append(c.profile)
        return ids

    def with_pulses(self, **updates) -> "LinkageSpec":
        table = dict(self.pulses)
        table.update(updates)
        return LinkageSpec(self.set_sizes, self.couplings, self.detuning, table, self.name)


def _parse_couplings(items):
    return tuple(Coupling(*item) if not isinstance(item, Coupling) else item for item in items)


def npod(n: int, pulse_table: dict, detuning: str = "delta") -> LinkageSpec:
    """N ground states ``g1..gN`` coupled to one excited state ``e`` by pulses ``V1..VN``."""
    if n < 2:
        raise ConfigError("an N-pod needs at least two ground states")
    couplings = [(f"g{i + 1}", "e", f"V{i + 1}") for i in range(n)]
    return LinkageSpec((n, 1), _parse_couplings(couplings), detuning, dict(pulse_table), f"npod({n})")


def w5(pulse_table: dict, detuning: str = "delta") -> LinkageSpec:
    """Two ground and three excited states; each ground state sees ``vp`` and ``vs``."""
    couplings = [("g1", "e1", "vp"), ("g1", "e2", "vs"), ("g2", "e2", "vp"), ("g2", "e3", "vs")]
    return LinkageSpec((2, 3), _parse_couplings(couplings), detuning, dict(pulse_table), "W5")


def x5(pulse_table: dict, detuning: str = "delta") -> LinkageSpec:
    """Two ground states, one middle state ``m`` and two final states (two-one-two)."""
    couplings = [("g1", "m", "vp1"), ("g2", "m", "vs1"), ("m", "e1", "vp2"), ("m", "e2", "vs2")]
    return LinkageSpec((2, 1, 2), _parse_couplings(couplings), detuning, dict(pulse_table), "X5")


_NPOD_KEY = re.compile(r"^npod\(?(\d+)\)?$")


def preset(key: str, pulse_table: dict, detuning: str = "delta") -> LinkageSpec:
    """Look up a preset by string key: ``npod(N)``, ``W5`` or ``X5``."""
    k = key.strip().lower()
    m = _NPOD_KEY.match(k)
    if m:
        return npod(int(m.group(1)), pulse_table, detuning)
    if k == "w5":
        return w5(pulse_table, detuning)
    if k == "x5":
        return x5(pulse_table, detuning)
    raise ConfigError(f"unknown linkage preset {key!r}")


def hamiltonian_terms(spec: LinkageSpec):
    """Decompose H(t) = sum_j p_j(t) M_j.

    Returns the profile ids (coupling ids first, detuning last) and the
    constant real matrices ``M_j`` stacked as ``(J, n, n)``.
    """
    ids = spec.coupling_profile_ids()
    n = spec.dim
    mats = np.zeros((len(ids) + 1, n, n))
    for c in spec.couplings:
        j = ids.index(c.profile)
        a, b = spec.global_index(c.lower), spec.global_index(c.upper)
        mats[j, a, b] += 0.5
        mats[j, b, a] += 0.5
    detuned = spec.set_slices()[1]
    idx = np.arange(n)[detuned]
    mats[-1, idx, idx] = 1.0
    if spec.detuning in ids:
        # Same pulse drives a coupling and the detuning: fold into one term.
        j = ids.index(spec.detuning)
        mats[j] += mats[-1]
        mats = mats[:-1]
    else:
        ids = ids + [spec.detuning]
    return ids, mats


def profile_values(spec: LinkageSpec, ids, t, derivative=False):
    fn = pulses.derivative if derivative else pulses.evaluate
    return np.stack([np.asarray(fn(spec.pulses[i], t), dtype=float) for i in ids])


def build_hamiltonian(spec: LinkageSpec, t) -> HamiltonianSnapshot:
    """Hamiltonian at a single time ``t``."""
    ids, mats = hamiltonian_terms(spec)
    values = profile_values(spec, ids, float(t))
    return HamiltonianSnapshot(np.tensordot(values, mats, axes=1), float(t))


def hamiltonian_series(spec: LinkageSpec, times) -> np.ndarray:
    """Hamiltonians stacked along the first axis for an array of times."""
    ids, mats = hamiltonian_terms(spec)
    values = profile_values(spec, ids, np.atleast_1d(times))
    return np.einsum("jt,jab->tab", values, mats)


def coupling_matrices(spec: LinkageSpec, t, derivative=False):
    """Raw coupling blocks at time(s) ``t``.

    Two sets: ``V`` of shape ``(..., g, e)``.  Three sets: ``(Vp, Vs)`` with
    shapes ``(..., g, m)`` and ``(..., m, f)``.  A leading time axis is present
    iff ``t`` is an array.  With ``derivative=True`` the blocks hold the time
    derivatives of the couplings instead.
    """
    fn = pulses.derivative if derivative else pulses.evaluate
    tt = np.asarray(t, dtype=float)
    lead = tt.shape
    blocks = [np.zeros(lead + (spec.set_sizes[s], spec.set_sizes[s + 1])) for s in range(spec.n_sets - 1)]
    cache = {}
    index = spec.index
    for c in spec.couplings:
        if c.profile not in cache:
            cache[c.profile] = np.asarray(fn(spec.pulses[c.profile], tt), dtype=float)
        (s, i), (_, j) = index[c.lower], index[c.upper]
        blocks[s][..., i, j] += cache[c.profile]
    return blocks[0] if spec.n_sets == 2 else (blocks[0], blocks[1])


def detuning_values(spec: LinkageSpec, t, derivative=False):
    fn = pulses.derivative if derivative else pulses.evaluate
    return fn(spec.pulses[spec.detuning], t)


def max_coupling_amplitude(spec: LinkageSpec) -> float:
    return max((pulses.peak_magnitude(spec.pulses[i]) for i in spec.coupling_profile_ids()), default=0.0)

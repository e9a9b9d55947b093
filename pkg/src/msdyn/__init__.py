"""Time-dependent Morris-Shore decomposition and adiabatic superposition engineering."""

from .errors import ConfigError, IntegrationError, MsdynError, MsInexistenceError, PreconditionError
from .linkage import LinkageSpec, build_hamiltonian, coupling_matrices
from .mstransform import MsDecomposition, decompose, ms_decompose_three, ms_decompose_two, ms_family
from .propagator import Trajectory, fidelity, oracle_compare, propagate, resolve_state
from .pulses import PulseProfile, TimeGrid
from .scenarios import ScenarioResult, ScenarioSpec, run_scenario

__all__ = [
    "ConfigError", "IntegrationError", "MsdynError", "MsInexistenceError", "PreconditionError",
    "LinkageSpec", "build_hamiltonian", "coupling_matrices",
    "MsDecomposition", "decompose", "ms_decompose_three", "ms_decompose_two", "ms_family",
    "Trajectory", "fidelity", "oracle_compare", "propagate", "resolve_state",
    "PulseProfile", "TimeGrid", "ScenarioResult", "ScenarioSpec", "run_scenario",
]
__version__ = "0.1.0"

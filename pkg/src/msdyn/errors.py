"""Exception hierarchy shared by the library and the command-line front end."""


class MsdynError(Exception):
    """Base class for all library errors."""

    category = "error"


class ConfigError(MsdynError, ValueError):
    """Malformed or inconsistent configuration (bad keys, unresolved ids, topology)."""

    category = "config"


class PreconditionError(MsdynError, ValueError):
    """An operation was called outside its domain of validity."""

    category = "precondition"


class MsInexistenceError(PreconditionError):
    """The pump/Stokes interaction matrices admit no simultaneous decomposition."""

    def __init__(self, residual, tolerance, t=None):
        self.residual = float(residual)
        self.tolerance = float(tolerance)
        self.t = t
        where = "" if t is None else f" at t={t:.6g}"
        super().__init__(
            f"commutator residual {self.residual:.3e} exceeds tolerance "
            f"{self.tolerance:.3e}{where}; no Morris-Shore basis exists"
        )


class IntegrationError(MsdynError, RuntimeError):
    """Numerical failure during time propagation."""

    category = "integration"

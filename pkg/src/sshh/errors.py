"""Exception and warning types shared across the package."""


class UsageError(ValueError):
    """Bad configuration or command-line input (CLI exit code 2)."""


class NumericError(RuntimeError):
    """A numerical contract was violated (norm drift, solver failure; exit code 3)."""


class ResourceError(RuntimeError):
    """A configured size cap was exceeded (exit code 4)."""


class FermiDegeneracyWarning(UserWarning):
    """Occupied/empty orbital degeneracy at the Fermi level during orbital selection."""


class PhaseMagnitudeWarning(UserWarning):
    """|z| is small enough that the extracted phase is ill-conditioned."""

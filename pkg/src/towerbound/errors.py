"""Exception types shared across the package.

Every failure mode that callers are expected to branch on gets its own
class; the CLI maps them onto stable exit codes (see cli.EXIT_CODES).
"""


class TowerboundError(Exception):
    """Base class for all package-specific errors."""


class NotPrime(TowerboundError):
    """The requested characteristic is composite."""


class UnsupportedSize(TowerboundError):
    """A field, enumeration or search exceeds the supported size caps."""


class InconsistentModel(TowerboundError):
    """Point counts, place spectra or declared cover data contradict each other."""


class FunctionalEquationViolation(TowerboundError):
    """Zeta consistency check could not reconstruct a valid L-polynomial."""


class RamifiedPlace(TowerboundError):
    """Trace-based decomposition was asked for a declared (ramified) place."""


class PoleAtPlace(TowerboundError):
    """A normalized cover component has a pole at an undeclared place."""


class SideConditionViolated(TowerboundError):
    """The split count t exceeds the sum of local unit-group ranks."""


class NotCertified(TowerboundError):
    """A bound was requested for a plan that does not certify an infinite tower."""


class DegenerateGenus(TowerboundError):
    """Asymptotic ratio needs genus >= 2."""


class ParityViolation(TowerboundError):
    """Conductor degree sum has the wrong parity for an integral genus."""


class EmptySpace(TowerboundError):
    """No plan in the search space certifies an infinite tower."""


class ConfigError(TowerboundError):
    """Malformed or unresolvable configuration document."""

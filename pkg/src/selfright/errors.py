"""Error taxonomy shared across the package."""


class SelfRightError(Exception):
    """Base class for all package errors."""


class GeometryError(SelfRightError):
    """Degenerate or impossible geometry (non-positive radius, bad polygon)."""


class DimensionError(SelfRightError):
    """Array shape, joint count, or module count mismatch."""


class IntegrationError(SelfRightError):
    """Quasi-static integration failed to converge within its substep budget."""


class ContactError(SelfRightError):
    """Ground-contact resolution produced an empty or invalid contact set."""


class ConfigError(SelfRightError):
    """Malformed configuration: unknown keys, bad types, out-of-range values."""

"""Exception types shared across the package.

Every domain error derives from ProxauthError so the CLI can map any of
them to exit code 1 without enumerating subclasses.
"""


class ProxauthError(Exception):
    """Base class for all domain errors."""


class ConfigError(ProxauthError):
    """Invalid configuration value or combination."""


class GeometryError(ProxauthError):
    """Pose or placement impossible within the environment bounds."""


class StratifyError(ProxauthError):
    """A class has too few rows for the requested stratified partition."""


class DegenerateDataError(ProxauthError):
    """Training data cannot support the requested fit (e.g. one class only)."""


class ShapeError(ProxauthError):
    """Feature vector or matrix has the wrong dimensionality."""


class EmptyMatrixError(ProxauthError):
    """Confusion matrix with zero total count."""


class EmptyInputError(ProxauthError):
    """Empty column/labels where data is required."""


class NotApplicableError(ProxauthError):
    """Requested analysis is undefined for this model family."""


class InvalidState(ProxauthError):
    """Operation not valid in the object's current state."""


class Conflict(ProxauthError):
    """Unique-key violation (e.g. username already registered)."""


class ValidationError(ProxauthError):
    """Malformed or unacceptable input field."""


class AuthFailed(ProxauthError):
    """Credential, OTP, or scan verification failed. Deliberately generic."""


class Expired(ProxauthError):
    """Pending authentication or challenge no longer valid."""


class Incomplete(ProxauthError):
    """Required part of a multi-part submission is missing."""


class TooManyRequests(ProxauthError):
    """Rate limit exceeded."""


class SchemaVersionError(ProxauthError):
    """Persisted document carries an unsupported schema version."""

"""Exception hierarchy shared across the package."""


class EcaError(Exception):
    """Base class for all package errors."""


class ConfigError(EcaError):
    """Invalid or incomplete configuration (CLI exit code 2)."""


class DataError(EcaError):
    """Corpus, graph, or model data violates its contract (CLI exit code 3)."""


class KbError(EcaError):
    """Knowledge-base access failed; retryable in live mode (CLI exit code 4)."""

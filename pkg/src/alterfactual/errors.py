"""Exception hierarchy shared across the package."""


class AlterfactualError(Exception):
    """Base class for all package-specific errors."""


class OracleTransportError(AlterfactualError):
    """A remote oracle failed (transport or malformed response) after retries.

    Retryable at the caller's discretion; carries the backend's diagnostic.
    """


class ContractViolationError(AlterfactualError):
    """A backend answered, but the payload violates its contract (e.g. probabilities out of range)."""


class UndefinedSimilarityError(AlterfactualError):
    """Similarity is undefined because both texts are entirely out of vocabulary."""


class ProviderUnavailableError(AlterfactualError):
    """An opposite-word provider could not be reached after retries."""


class LlmParseError(AlterfactualError):
    """The LLM response could not be parsed even after one reprompt."""


class EmptyRankingError(AlterfactualError):
    """A document has no eligible tokens to rank."""


class StructuralError(AlterfactualError):
    """Two documents that must share structure (sentence partitioning) do not."""


class SubstitutionError(AlterfactualError):
    """A substitution batch is invalid against its document; the whole batch is rejected."""


class ConfigError(AlterfactualError):
    """A configuration file or flag set does not resolve to a valid run configuration."""

"""Exception hierarchy shared by every module."""


class ClambdaError(ValueError):
    """Base class for domain errors (CLI exit code 1)."""


class ConjugacyViolation(ClambdaError):
    pass


class NonRealAlpha(ClambdaError):
    pass


class RepresentationMissing(ClambdaError):
    """Fock-space existence conditions fail for the requested parameters."""


class GammaPole(ClambdaError):
    pass


class DimensionTooSmall(ClambdaError):
    pass


class UnsupportedLambda(ClambdaError):
    pass


class DegenerateSpectrum(ClambdaError):
    pass


class NotPeriodic(ClambdaError):
    pass


class NoMatch(ClambdaError):
    pass


class InvalidSpec(ClambdaError):
    pass


class EtaOutOfRange(ClambdaError):
    pass


class ClassificationMismatch(ClambdaError):
    """A closed-form label disagrees with the exact spectrum (internal bug)."""

class RainbowError(Exception):
    """Base class for all errors raised by the package."""


class InvalidColourError(RainbowError, ValueError):
    pass


class InvalidReferenceError(RainbowError, ValueError):
    pass


class InvalidMissingColourError(RainbowError, ValueError):
    pass


class SwitchingApplicationError(RainbowError, ValueError):
    pass


class ValidationError(RainbowError, ValueError):
    """An instance failed validation where a valid one was required."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(v.message for v in self.violations) or "invalid instance")


class ParameterError(RainbowError, ValueError):
    pass


class GenerationError(RainbowError, RuntimeError):
    pass


class InfeasibleScopeError(RainbowError, ValueError):
    pass


class InvalidAlgebraError(RainbowError, ValueError):
    pass


class NoWitnessError(RainbowError, ValueError):
    pass


class GroundTooLargeError(RainbowError, ValueError):
    pass


class FormatError(RainbowError, ValueError):
    """Malformed input file; ``offset`` is a byte offset into the UTF-8 text."""

    def __init__(self, message, offset=None):
        self.offset = offset
        self.rule = message
        where = f"byte {offset}: " if offset is not None else ""
        super().__init__(where + message)

class MlvcError(Exception):
    """Base class for errors raised by this package."""


class LevelError(MlvcError, ValueError):
    """Operands live at incompatible levels, or a pairing exceeds the top level."""


class DomainError(MlvcError, ValueError):
    """A message or input lies outside its declared domain."""


class Reject(MlvcError):
    """The client refused a server response.

    ``reason`` is ``"decode"`` when the plaintext could not be recovered from
    the message domain and ``"equation"`` when the verification equation
    failed. ``"malformed"`` covers shape and level mismatches and
    ``"disagree"`` a repetition run whose instances returned different values.
    """

    def __init__(self, reason: str, detail: str = "") -> None:
        self.reason = reason
        self.detail = detail
        super().__init__(f"{reason}: {detail}" if detail else reason)

"""Exception hierarchy shared by every stabsim module."""


class StabError(Exception):
    """Base class for all stabsim errors."""


class InvalidArgumentError(StabError, ValueError):
    """Bad qubit index, qubit count, gate kind, or other caller mistake.

    When raised from circuit execution ``gate_index`` holds the position of
    the offending gate in the circuit.
    """

    def __init__(self, message, gate_index=None):
        super().__init__(message)
        self.gate_index = gate_index


class CapacityError(StabError, ValueError):
    """Requested size exceeds a configured cap (e.g. the dense oracle)."""


class InternalError(StabError, RuntimeError):
    """An invariant that should be impossible to break was broken."""


class CircuitError(StabError, ValueError):
    """Problem with circuit text; carries 1-based ``line`` and ``column``."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        self.reason = message
        if line is not None:
            where = f"line {line}" if column is None else f"line {line}, column {column}"
            message = f"{where}: {message}"
        super().__init__(message)


class CircuitFormatError(CircuitError):
    """Text does not follow the circuit grammar."""


class CircuitValidationError(CircuitError):
    """Text is grammatical but describes an invalid circuit."""

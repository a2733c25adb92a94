"""Clifford gate/circuit data model and the line-oriented circuit text format.

Format::

    qubits 2
    # comment
    h 0
    cx 0 1
    m 0

One header line ``qubits N`` followed by one gate per line. Fields are
separated by spaces or tabs, ``#`` starts a comment that runs to the end of
the line, and blank lines are ignored. Indices are 0-based decimal.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import CircuitFormatError, CircuitValidationError, InvalidArgumentError


class GateKind(enum.IntEnum):
    H = 0
    S = 1
    SDG = 2
    X = 3
    Y = 4
    Z = 5
    CX = 6
    CZ = 7
    SWAP = 8
    M = 9

    @property
    def arity(self) -> int:
        return 2 if self in _TWO_QUBIT else 1

    @property
    def mnemonic(self) -> str:
        return self.name.lower()


# Indices are stored as int32.
MAX_CIRCUIT_QUBITS = 2**31 - 1

_TWO_QUBIT = frozenset({GateKind.CX, GateKind.CZ, GateKind.SWAP})
_BY_MNEMONIC = {k.mnemonic: k for k in GateKind}


@dataclass(frozen=True)
class CliffordGate:
    kind: GateKind
    qubits: tuple[int, ...]

    def __post_init__(self):
        kind = GateKind(self.kind)
        object.__setattr__(self, "kind", kind)
        qubits = tuple(int(q) for q in self.qubits)
        object.__setattr__(self, "qubits", qubits)
        if len(qubits) != kind.arity:
            raise InvalidArgumentError(
                f"{kind.mnemonic} takes {kind.arity} qubit(s), got {len(qubits)}"
            )
        if any(q < 0 for q in qubits):
            raise InvalidArgumentError(f"negative qubit index in {self}")
        if kind.arity == 2 and qubits[0] == qubits[1]:
            raise InvalidArgumentError(f"{kind.mnemonic} needs distinct qubits, got {qubits}")

    def __str__(self):
        return " ".join([self.kind.mnemonic, *map(str, self.qubits)])


class Circuit:
    """Qubit count plus an ordered gate sequence.

    Gates are held as an ``(k, 3)`` int32 array of ``(kind, q0, q1)`` with
    ``q1 == -1`` for single-qubit gates, so synthesized circuits with millions
    of gates stay cheap. Iterating yields :class:`CliffordGate` objects.

    ``metadata`` is informational (gate counts, seeds) and does not take part
    in equality or serialization.
    """

    __slots__ = ("n", "ops", "metadata")

    def __init__(self, n: int, gates: Iterable = (), metadata: Mapping[str, str] | None = None):
        rows = []
        for g in gates:
            if not isinstance(g, CliffordGate):
                kind, *qs = g
                g = CliffordGate(GateKind(kind), tuple(qs))
            q = g.qubits
            rows.append((int(g.kind), q[0], q[1] if len(q) == 2 else -1))
        ops = np.array(rows, dtype=np.int32).reshape(-1, 3)
        self._init(n, ops, metadata)

    @classmethod
    def from_ops(cls, n: int, ops: np.ndarray, metadata: Mapping[str, str] | None = None) -> Circuit:
        """Build a circuit straight from a ``(k, 3)`` op array (validated)."""
        c = cls.__new__(cls)
        c._init(n, np.ascontiguousarray(ops, dtype=np.int32).reshape(-1, 3), metadata)
        return c

    def _init(self, n, ops, metadata):
        n = int(n)
        if not 1 <= n <= MAX_CIRCUIT_QUBITS:
            raise InvalidArgumentError(f"qubit count must be in [1, {MAX_CIRCUIT_QUBITS}], got {n}")
        _validate_ops(n, ops)
        ops.flags.writeable = False
        self.n = n
        self.ops = ops
        self.metadata = dict(metadata or {})

    def __len__(self):
        return len(self.ops)

    def __getitem__(self, i) -> CliffordGate:
        kind, a, b = (int(v) for v in self.ops[i])
        return CliffordGate(GateKind(kind), (a,) if b < 0 else (a, b))

    def __iter__(self) -> Iterator[CliffordGate]:
        for i in range(len(self.ops)):
            yield self[i]

    @property
    def gates(self) -> list[CliffordGate]:
        return list(self)

    def __eq__(self, other):
        if not isinstance(other, Circuit):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.ops, other.ops)

    def __hash__(self):
        return hash((self.n, self.ops.tobytes()))

    def __repr__(self):
        return f"Circuit(n={self.n}, gates={len(self)})"

    def has_measurements(self) -> bool:
        return bool(np.any(self.ops[:, 0] == GateKind.M))


def _validate_ops(n, ops):
    if ops.ndim != 2 or ops.shape[1] != 3:
        raise InvalidArgumentError(f"op array must have shape (k, 3), got {ops.shape}")
    if len(ops) == 0:
        return
    kind, a, b = ops[:, 0], ops[:, 1], ops[:, 2]
    bad_kind = (kind < 0) | (kind > GateKind.M)
    two = np.isin(kind, [GateKind.CX, GateKind.CZ, GateKind.SWAP])
    bad = (
        bad_kind
        | (a < 0) | (a >= n)
        | (two & ((b < 0) | (b >= n) | (a == b)))
        | (~two & (b != -1))
    )
    if bad.any():
        pos = int(np.flatnonzero(bad)[0])
        raise InvalidArgumentError(
            f"gate {pos} {tuple(int(v) for v in ops[pos])} is invalid for {n} qubit(s)",
            gate_index=pos,
        )


_INT = re.compile(r"[0-9]+\Z")
_FIELD = re.compile(r"[^ \t]+")


def parse_circuit(text: str | bytes) -> Circuit:
    """Parse circuit text (``str`` or UTF-8 ``bytes``).

    The header must be the first line that is neither blank nor a comment.
    Every failure raises :class:`CircuitFormatError` or
    :class:`CircuitValidationError` with the line and column attached.
    """
    if isinstance(text, (bytes, bytearray, memoryview)):
        raw = bytes(text)
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            line = raw.count(b"\n", 0, exc.start) + 1
            column = exc.start - (raw.rfind(b"\n", 0, exc.start) + 1) + 1
            raise CircuitFormatError("input is not valid UTF-8", line, column) from None

    n = None
    rows = []
    for lineno, line in enumerate(text.split("\n"), start=1):
        if line.endswith("\r"):
            line = line[:-1]
        hash_at = line.find("#")
        if hash_at >= 0:
            line = line[:hash_at]
        fields = [(m.group(), m.start() + 1) for m in _FIELD.finditer(line)]
        if not fields:
            continue
        word, col = fields[0]
        if word == "qubits":
            if n is not None:
                raise CircuitFormatError("duplicate 'qubits' header", lineno, col)
            if len(fields) != 2:
                raise CircuitFormatError("header must be 'qubits <count>'", lineno, col)
            n = _parse_int(*fields[1], lineno)
            if not 1 <= n <= MAX_CIRCUIT_QUBITS:
                raise CircuitValidationError(
                    f"qubit count must be in [1, {MAX_CIRCUIT_QUBITS}]", lineno, fields[1][1]
                )
            continue
        if n is None:
            raise CircuitFormatError("missing 'qubits' header", lineno, col)
        kind = _BY_MNEMONIC.get(word)
        if kind is None:
            raise CircuitFormatError(f"unknown mnemonic {word!r}", lineno, col)
        if len(fields) != kind.arity + 1:
            raise CircuitFormatError(
                f"{word} takes {kind.arity} operand(s), got {len(fields) - 1}", lineno, col
            )
        qubits = [_parse_int(tok, c, lineno) for tok, c in fields[1:]]
        for q, (_, c) in zip(qubits, fields[1:]):
            if q >= n:
                raise CircuitValidationError(f"qubit index {q} out of range for {n} qubit(s)", lineno, c)
        if kind.arity == 2 and qubits[0] == qubits[1]:
            raise CircuitValidationError(f"{word} needs distinct qubits", lineno, fields[2][1])
        rows.append((int(kind), qubits[0], qubits[1] if kind.arity == 2 else -1))
    if n is None:
        raise CircuitFormatError("missing 'qubits' header", 1, 1)
    return Circuit.from_ops(n, np.array(rows, dtype=np.int32).reshape(-1, 3))


def _parse_int(token, column, lineno):
    if not _INT.match(token):
        raise CircuitFormatError(f"expected a non-negative integer, got {token!r}", lineno, column)
    if len(token) > 18:
        raise CircuitValidationError("integer out of range", lineno, column)
    return int(token)


def serialize_circuit(c: Circuit) -> str:
    """Render ``c`` as circuit text: LF endings, lowercase mnemonics."""
    names = [k.mnemonic for k in GateKind]
    lines = [f"qubits {c.n}"]
    for kind, a, b in c.ops.tolist():
        lines.append(f"{names[kind]} {a}" if b < 0 else f"{names[kind]} {a} {b}")
    return "\n".join(lines) + "\n"

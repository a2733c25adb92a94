"""Stabilizer tableau and the polynomial-time Clifford state updates.

A :class:`Tableau` holds ``2n + 1`` signed Pauli rows: destabilizers
``0..n-1``, stabilizers ``n..2n-1`` and one scratch row ``2n``. Storage is
bit-sliced: for each qubit column the bits of all rows are packed into
uint64 words (see :mod:`stabsim._kernels`), so every gate is O(n/64) word
operations and independent across words.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from . import _kernels as K
from ._rng import as_rng, random_bit
from .circuit import Circuit, GateKind
from .errors import InternalError, InvalidArgumentError

MAX_QUBITS = 1 << 20

_PAULI_CHARS = "IXZY"  # index = x + 2 z


@dataclass(frozen=True, eq=False)
class PauliRow:
    """Signed Pauli string ``(-1)^r * prod_j sigma(x_j, z_j)``."""

    x: np.ndarray
    z: np.ndarray
    r: int = 0

    def __post_init__(self):
        x = np.asarray(self.x, dtype=np.uint8) & 1
        z = np.asarray(self.z, dtype=np.uint8) & 1
        if x.shape != z.shape or x.ndim != 1:
            raise InvalidArgumentError("x and z must be 1-d bit vectors of equal length")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "r", int(self.r) & 1)

    @property
    def n(self) -> int:
        return len(self.x)

    @classmethod
    def from_string(cls, s: str) -> PauliRow:
        """Parse ``"+XZ"``, ``"-IY"`` or ``"XX"`` (implicit +)."""
        sign = 0
        if s[:1] in "+-" and s:
            sign = s[0] == "-"
            s = s[1:]
        try:
            codes = [_PAULI_CHARS.index(c) for c in s.upper()]
        except ValueError:
            raise InvalidArgumentError(f"not a Pauli string: {s!r}") from None
        codes = np.array(codes, dtype=np.uint8)
        return cls(codes & 1, codes >> 1, sign)

    def __str__(self):
        body = "".join(_PAULI_CHARS[a + 2 * b] for a, b in zip(self.x, self.z))
        return ("-" if self.r else "+") + body

    def __repr__(self):
        return f"PauliRow({str(self)!r})"

    def __eq__(self, other):
        if not isinstance(other, PauliRow):
            return NotImplemented
        return self.r == other.r and np.array_equal(self.x, other.x) and np.array_equal(self.z, other.z)

    def __hash__(self):
        return hash(str(self))


class Measurement(NamedTuple):
    outcome: int
    deterministic: bool


class Tableau:
    """Destabilizer/stabilizer tableau of an n-qubit stabilizer state."""

    __slots__ = ("n", "x", "z", "r")

    def __init__(self, n, x, z, r):
        self.n = n
        self.x = x
        self.z = z
        self.r = r

    @property
    def words(self) -> int:
        return self.x.shape[1]

    def copy(self) -> Tableau:
        return Tableau(self.n, self.x.copy(), self.z.copy(), self.r.copy())

    def row(self, i: int) -> PauliRow:
        if not 0 <= i <= 2 * self.n:
            raise InvalidArgumentError(f"row {i} out of range for {2 * self.n + 1} rows")
        w, b = i >> 6, np.uint64(i & 63)
        one = np.uint64(1)
        return PauliRow((self.x[:, w] >> b) & one, (self.z[:, w] >> b) & one, int((self.r[w] >> b) & one))

    def set_row(self, i: int, row: PauliRow) -> None:
        if not 0 <= i <= 2 * self.n:
            raise InvalidArgumentError(f"row {i} out of range for {2 * self.n + 1} rows")
        if row.n != self.n:
            raise InvalidArgumentError(f"row has {row.n} qubits, tableau has {self.n}")
        w, b = i >> 6, np.uint64(i & 63)
        bit = np.uint64(1) << b
        for arr, bits in ((self.x, row.x), (self.z, row.z)):
            col = arr[:, w]
            arr[:, w] = np.where(bits.astype(bool), col | bit, col & ~bit)
        self.r[w] = (self.r[w] | bit) if row.r else (self.r[w] & ~bit)

    def destabilizers(self) -> list[PauliRow]:
        return [self.row(i) for i in range(self.n)]

    def stabilizers(self) -> list[PauliRow]:
        return [self.row(i) for i in range(self.n, 2 * self.n)]

    def to_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Unpacked ``(x, z, r)`` of the 2n non-scratch rows as uint8, shapes (2n, n), (2n, n), (2n,)."""
        m = 2 * self.n

        def unpack(a):
            bits = np.unpackbits(a.astype("<u8").view(np.uint8), axis=-1, bitorder="little")
            return bits[..., :m]

        return unpack(self.x).T.copy(), unpack(self.z).T.copy(), unpack(self.r)

    @classmethod
    def from_arrays(cls, x, z, r) -> Tableau:
        """Inverse of :meth:`to_arrays`; the scratch row starts at zero."""
        x = np.asarray(x, dtype=np.uint8)
        z = np.asarray(z, dtype=np.uint8)
        r = np.asarray(r, dtype=np.uint8)
        m, n = x.shape
        if m != 2 * n or z.shape != x.shape or r.shape != (m,):
            raise InvalidArgumentError("expected x, z of shape (2n, n) and r of shape (2n,)")
        t = new_identity(n)
        words = t.words

        def pack(bits):
            padded = np.zeros(bits.shape[:-1] + (words * 64,), dtype=np.uint8)
            padded[..., :m] = bits & 1
            return np.packbits(padded, axis=-1, bitorder="little").view("<u8").astype(np.uint64)

        t.x = np.ascontiguousarray(pack(x.T))
        t.z = np.ascontiguousarray(pack(z.T))
        t.r = pack(r)
        return t

    def __eq__(self, other):
        if not isinstance(other, Tableau):
            return NotImplemented
        if self.n != other.n:
            return False
        return all(np.array_equal(a, b) for a, b in zip(self.to_arrays(), other.to_arrays()))

    def __str__(self):
        rows = [str(p) for p in self.destabilizers()] + ["-" * (self.n + 1)]
        rows += [str(p) for p in self.stabilizers()]
        return "\n".join(rows)

    def __repr__(self):
        return f"Tableau(n={self.n})"


def new_identity(n: int, max_qubits: int = MAX_QUBITS) -> Tableau:
    """Tableau of ``|0...0>``: destabilizer d = +X_d, stabilizer n+d = +Z_d."""
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= max_qubits:
        raise InvalidArgumentError(f"qubit count must be in [1, {max_qubits}], got {n!r}")
    n = int(n)
    words = (2 * n + 1 + 63) // 64
    x = np.zeros((n, words), dtype=np.uint64)
    z = np.zeros((n, words), dtype=np.uint64)
    r = np.zeros(words, dtype=np.uint64)
    q = np.arange(n)
    np.bitwise_or.at(x, (q, q >> 6), np.uint64(1) << (q & 63).astype(np.uint64))
    s = q + n
    np.bitwise_or.at(z, (q, s >> 6), np.uint64(1) << (s & 63).astype(np.uint64))
    return Tableau(n, x, z, r)


def _check_qubit(t, q):
    if not 0 <= q < t.n:
        raise InvalidArgumentError(f"qubit {q} out of range for {t.n} qubit(s)")


# --- fork/join over word ranges ------------------------------------------------


@lru_cache(maxsize=None)
def _pool(workers):
    return ThreadPoolExecutor(max_workers=workers, thread_name_prefix="stabsim")


def _partitions(words, threads):
    threads = max(1, min(threads, words))
    bounds = [words * i // threads for i in range(threads + 1)]
    return [(a, b) for a, b in zip(bounds, bounds[1:]) if b > a]


def _fork_join(kernel, args, words, threads):
    parts = _partitions(words, threads)
    if len(parts) == 1:
        return [kernel(*args, *parts[0])]
    futures = [_pool(len(parts)).submit(kernel, *args, a, b) for a, b in parts]
    return [f.result() for f in futures]


def default_threads() -> int:
    return int(os.environ.get("STABSIM_THREADS", "1"))


# --- gates --------------------------------------------------------------------


def apply_h(t: Tableau, q: int) -> None:
    _check_qubit(t, q)
    K.apply_op(t.x, t.z, t.r, K.H, q, -1, 0, t.words)


def apply_s(t: Tableau, q: int) -> None:
    _check_qubit(t, q)
    K.apply_op(t.x, t.z, t.r, K.S, q, -1, 0, t.words)


def apply_cnot(t: Tableau, c: int, tgt: int) -> None:
    _check_qubit(t, c)
    _check_qubit(t, tgt)
    if c == tgt:
        raise InvalidArgumentError(f"CNOT control and target coincide ({c})")
    K.apply_op(t.x, t.z, t.r, K.CX, c, tgt, 0, t.words)


def apply_gate(t: Tableau, g) -> None:
    """Apply a unitary :class:`~stabsim.circuit.CliffordGate`; measurements are rejected."""
    kind = GateKind(g.kind)
    if kind == GateKind.M:
        raise InvalidArgumentError("measurement must go through measure()")
    qs = g.qubits
    if len(qs) != kind.arity:
        raise InvalidArgumentError(f"{kind.mnemonic} takes {kind.arity} qubit(s)")
    for q in qs:
        _check_qubit(t, q)
    if kind.arity == 2 and qs[0] == qs[1]:
        raise InvalidArgumentError(f"{kind.mnemonic} needs distinct qubits")
    K.apply_op(t.x, t.z, t.r, int(kind), qs[0], qs[1] if kind.arity == 2 else -1, 0, t.words)


def rowsum(t: Tableau, h: int, i: int) -> None:
    """Replace row h by the phase-correct product ``row_i * row_h``.

    Rows must commute; an imaginary result raises :class:`InternalError`.
    """
    for row in (h, i):
        if not 0 <= row <= 2 * t.n:
            raise InvalidArgumentError(f"row {row} out of range")
    if K.rowsum(t.x, t.z, t.r, t.n, h, i) < 0:
        raise InternalError(f"rowsum({h}, {i}) produced an imaginary phase; rows anticommute")


def measure(t: Tableau, q: int, rng, threads: int = 1) -> Measurement:
    """Measure qubit q in the Z basis, collapsing ``t``.

    A random bit is drawn from ``rng`` only when the outcome is random.
    """
    _check_qubit(t, q)
    n = t.n
    p = K.find_pivot(t.x, n, q)
    if p < 0:
        out = K.deterministic_outcome(t.x, t.z, t.r, n, q)
        if out < 0:
            raise InternalError("imaginary phase while computing a deterministic outcome")
        return Measurement(int(out), True)
    b = random_bit(rng)
    xp, zp, rp = K.extract_row(t.x, t.z, t.r, n, p)
    bad = _fork_join(K.collapse_rows, (t.x, t.z, t.r, n, q, p, xp, zp, rp), t.words, threads)
    if sum(bad):
        raise InternalError("imaginary phase during measurement collapse")
    K.finish_collapse(t.x, t.z, t.r, n, q, p, b)
    return Measurement(b, False)


def execute(t: Tableau, c: Circuit, rng=None, threads: int = 1) -> list[int]:
    """Run ``c`` on ``t`` in place and return the measurement outcomes.

    Unitary stretches between measurements run as one kernel call per word
    partition; ``threads`` partitions the rows. Results do not depend on it.
    """
    if c.n != t.n:
        raise InvalidArgumentError(f"circuit has {c.n} qubits, tableau has {t.n}")
    ops = c.ops
    meas = np.flatnonzero(ops[:, 0] == GateKind.M)
    if len(meas) and rng is None:
        raise InvalidArgumentError("circuit measures but no rng was given")
    rng = as_rng(rng) if rng is not None else None
    outcomes = []
    start = 0
    for pos in [*meas.tolist(), len(ops)]:
        if pos > start:
            _fork_join(K.run_ops, (t.x, t.z, t.r, ops[start:pos]), t.words, threads)
        if pos < len(ops):
            try:
                outcomes.append(measure(t, int(ops[pos, 1]), rng, threads).outcome)
            except InternalError as exc:
                raise InternalError(f"gate {pos} (m {ops[pos, 1]}): {exc}") from exc
        start = pos + 1
    return outcomes


def run_circuit(c: Circuit, rng=None, threads: int = 1) -> tuple[Tableau, list[int]]:
    """Simulate ``c`` from ``|0...0>``; returns the final tableau and outcomes."""
    t = new_identity(c.n)
    return t, execute(t, c, rng, threads)


def symplectic_violations(t: Tableau) -> int:
    """Number of row pairs breaking the destabilizer/stabilizer commutation pattern.

    Zero implies the 2n x 2n bit matrix has full rank, since its symplectic
    Gram matrix is then the invertible pairing form.
    """
    x, z, _ = t.to_arrays()
    xf, zf = x.astype(np.float64), z.astype(np.float64)
    gram = (xf @ zf.T + zf @ xf.T).astype(np.int64) & 1
    n = t.n
    want = np.zeros_like(gram)
    idx = np.arange(n)
    want[idx, idx + n] = 1
    want[idx + n, idx] = 1
    return int(np.count_nonzero(np.triu(gram != want)))


def is_symplectic(t: Tableau) -> bool:
    return symplectic_violations(t) == 0

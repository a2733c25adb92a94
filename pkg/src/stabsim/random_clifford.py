"""Uniform random Clifford operators and circuit synthesis from a tableau."""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np

from . import _kernels as K
from ._rng import as_rng
from .circuit import Circuit, GateKind
from .errors import InternalError, InvalidArgumentError
from .tableau import Tableau, execute, is_symplectic, new_identity


@dataclass(frozen=True)
class SymplecticSample:
    """A sampled Clifford: its action on X_j (rows < n) and Z_j (rows >= n).

    ``seed`` regenerates the sample via ``sample_clifford(n, seed)``.
    """

    tableau: Tableau
    seed: int


def clifford_group_order(n: int) -> int:
    """Size of the n-qubit Clifford group modulo global phase."""
    return 2 ** (n * n + 2 * n) * prod(4**j - 1 for j in range(1, n + 1))


def symplectic_group_order(n: int) -> int:
    return 2 ** (n * n) * prod(4**j - 1 for j in range(1, n + 1))


def _symplectic_bits(n, rng):
    nn = 2 * n
    # Level m uses columns o = 2(n - m) onward; everything left of o stays zero.
    upper = np.arange(nn)[None, :] >= (nn - 2 * np.arange(1, n + 1))[:, None]
    first = rng.integers(0, 2, size=(n, nn), dtype=np.uint8) * upper
    rest = rng.integers(0, 2, size=(n, nn), dtype=np.uint8) * upper
    rest[:, nn - 1] = 0
    # The image of the first basis vector must be nonzero; redraw until it is.
    for level in np.flatnonzero(~first.any(axis=1)):
        o = nn - 2 * (level + 1)
        while not first[level].any():
            first[level, o:] = rng.integers(0, 2, size=nn - o, dtype=np.uint8)
    return first, rest


def random_symplectic(n: int, rng=None) -> np.ndarray:
    """Uniform ``(2n, 2n)`` symplectic matrix in tableau order.

    Row ``j`` is the image of X_j and row ``n + j`` the image of Z_j; columns
    are the x bits followed by the z bits.
    """
    if n < 1:
        raise InvalidArgumentError(f"qubit count must be positive, got {n}")
    rng = as_rng(rng)
    g = K.symplectic_from_bits(n, *_symplectic_bits(n, rng))
    order = np.concatenate([np.arange(0, 2 * n, 2), np.arange(1, 2 * n, 2)])
    return g[np.ix_(order, order)]


def sample_clifford(n: int, rng=None) -> SymplecticSample:
    """Draw a Clifford operator uniformly from the n-qubit Clifford group.

    The symplectic part is uniform over Sp(2n, GF(2)) and the 2n sign bits are
    independent fair coins. ``rng`` may be a seed or a Generator; a Generator
    is advanced by one draw, which becomes the sample's seed.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidArgumentError(f"qubit count must be positive, got {n!r}")
    if isinstance(rng, np.random.Generator) or rng is None:
        seed = int(as_rng(rng).integers(0, 2**63))
    else:
        seed = int(rng)
    sub = np.random.default_rng(seed)
    g = random_symplectic(int(n), sub)
    signs = sub.integers(0, 2, size=2 * n, dtype=np.uint8)
    return SymplecticSample(Tableau.from_arrays(g[:, :n], g[:, n:], signs), seed)


def canonical_key(t: Tableau) -> bytes:
    """Row-major x|z|r bits of the 2n non-scratch rows, packed to bytes."""
    x, z, r = t.to_arrays()
    return np.packbits(np.hstack([x, z, r[:, None]]).ravel()).tobytes()


def synthesize_circuit(s: SymplecticSample | Tableau) -> Circuit:
    """Circuit over {H, S, CX} plus a final X/Z layer that prepares ``s``.

    Running the result on ``new_identity(n)`` reproduces the tableau bit for
    bit, signs included. Gate elimination reduces the tableau to signed
    X_j/Z_j rows; the inverse of that gate list recreates the symplectic part
    and a Pauli layer fixes whatever signs differ. Uses O(n^2) gates.
    """
    target = s.tableau if isinstance(s, SymplecticSample) else s
    n = target.n
    if not is_symplectic(target):
        raise InvalidArgumentError("tableau rows do not satisfy the symplectic condition")
    work = target.copy()
    out = np.empty((n * (4 * n + 12), 3), dtype=np.int32)
    cnt = K.reduce_to_pauli(work.x, work.z, work.r, n, out)
    wx, wz, _ = work.to_arrays()
    eye = np.eye(n, dtype=np.uint8)
    zero = np.zeros((n, n), dtype=np.uint8)
    if not (np.array_equal(wx, np.vstack([eye, zero])) and np.array_equal(wz, np.vstack([zero, eye]))):
        raise InternalError("elimination did not reach the identity")

    rev = out[:cnt][::-1]
    # H and CX are self-inverse; S^-1 = S^3.
    ops = np.repeat(rev, np.where(rev[:, 0] == GateKind.S, 3, 1), axis=0)
    body = Circuit.from_ops(n, ops)

    t = new_identity(n)
    execute(t, body)
    _, _, got = t.to_arrays()
    tx, tz, want = target.to_arrays()
    flip = (got ^ want).astype(np.int64)
    # Pauli Q with <Q, row_i> = flip_i: pair each flip with the partner row.
    qx = (flip[n:] @ tx[:n] + flip[:n] @ tx[n:]) & 1
    qz = (flip[n:] @ tz[:n] + flip[:n] @ tz[n:]) & 1
    fix = [(GateKind.X, q, -1) for q in np.flatnonzero(qx)]
    fix += [(GateKind.Z, q, -1) for q in np.flatnonzero(qz)]
    if fix:
        ops = np.vstack([ops, np.array(fix, dtype=np.int32)])
    meta = {"gate_count": str(len(ops))}
    if isinstance(s, SymplecticSample):
        meta["seed"] = str(s.seed)
    return Circuit.from_ops(n, ops, meta)


def random_circuit(n: int, rng=None) -> Circuit:
    """Measurement-free circuit implementing a uniformly random Clifford."""
    return synthesize_circuit(sample_clifford(n, rng))

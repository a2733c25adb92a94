import numpy as np
import pytest
from helpers import FixedBits, random_circuit_ops
from hypothesis import given
from hypothesis import strategies as st

from stabsim import (
    CapacityError,
    Circuit,
    GateKind,
    InvalidArgumentError,
    PauliRow,
    StateVector,
    dense_run,
    fidelity,
    new_identity,
    run_circuit,
    to_statevector,
)
from stabsim.dense import apply_pauli, gate_unitary, pauli_matrix

S2 = 1 / np.sqrt(2)


def full_matrix(kind, qubits, n):
    """Gate embedded in n qubits with explicit Kronecker products (qubit 0 leftmost)."""
    u = gate_unitary(kind)
    if kind.arity == 1:
        mats = [np.eye(2)] * n
        mats[qubits[0]] = u
        out = np.ones((1, 1))
        for m in mats:
            out = np.kron(out, m)
        return out
    a, b = qubits
    dim = 2**n
    out = np.zeros((dim, dim), complex)
    for col in range(dim):
        bits = [(col >> (n - 1 - k)) & 1 for k in range(n)]
        sub = 2 * bits[a] + bits[b]
        for row_sub in range(4):
            amp = u[row_sub, sub]
            if amp == 0:
                continue
            nb = list(bits)
            nb[a], nb[b] = row_sub >> 1, row_sub & 1
            out[int("".join(map(str, nb)), 2), col] += amp
    return out


class TestDenseRun:
    def test_bell(self):
        psi, _ = dense_run(Circuit(2, [(GateKind.H, 0), (GateKind.CX, 0, 1)]))
        assert np.allclose(psi.amp, [S2, 0, 0, S2])

    def test_x(self):
        psi, _ = dense_run(Circuit(1, [(GateKind.X, 0)]))
        assert np.allclose(psi.amp, [0, 1])

    def test_cap(self):
        with pytest.raises(CapacityError):
            dense_run(Circuit(13))
        psi, _ = dense_run(Circuit(3), cap=3)
        with pytest.raises(CapacityError):
            dense_run(Circuit(4), cap=3)
        assert psi.n == 3

    @given(n=st.integers(1, 4), seed=st.integers(0, 2**32 - 1))
    def test_matches_kronecker_products(self, n, seed):
        c = random_circuit_ops(np.random.default_rng(seed), n, 12, measure=False)
        want = np.zeros(2**n, complex)
        want[0] = 1
        for g in c:
            want = full_matrix(g.kind, g.qubits, n) @ want
        psi, _ = dense_run(c)
        assert np.allclose(psi.amp, want)

    @pytest.mark.parametrize("b", [0, 1])
    def test_measurement_collapse(self, b):
        psi, out = dense_run(Circuit(2, [(GateKind.H, 0), (GateKind.CX, 0, 1), (GateKind.M, 0)]), FixedBits(b))
        assert out == [b]
        expect = np.zeros(4)
        expect[3 * b] = 1
        assert np.allclose(psi.amp, expect)
        assert psi.norm() == pytest.approx(1.0)

    def test_deterministic_measurement_uses_no_randomness(self):
        bits = FixedBits()
        _, out = dense_run(Circuit(1, [(GateKind.X, 0), (GateKind.M, 0)]), bits)
        assert out == [1] and bits.used == 0


class TestToStatevector:
    def test_zero(self):
        assert np.allclose(to_statevector(new_identity(2)).amp, [1, 0, 0, 0])

    def test_one(self):
        t, _ = run_circuit(Circuit(1, [(GateKind.X, 0)]))
        assert np.allclose(to_statevector(t).amp, [0, 1])

    def test_bell_stabilizers(self):
        t, _ = run_circuit(Circuit(2, [(GateKind.H, 0), (GateKind.CX, 0, 1)]))
        assert np.allclose(to_statevector(t).amp, [S2, 0, 0, S2])

    def test_cap(self):
        with pytest.raises(CapacityError):
            to_statevector(new_identity(13))

    @given(n=st.integers(1, 6), seed=st.integers(0, 2**32 - 1))
    def test_stabilizer_eigenstate(self, n, seed):
        rng = np.random.default_rng(seed)
        t, _ = run_circuit(random_circuit_ops(rng, n, 40), rng)
        psi = to_statevector(t)
        assert psi.norm() == pytest.approx(1.0, abs=1e-10)
        for row in t.stabilizers():
            assert np.allclose(pauli_matrix(row.x, row.z, row.r) @ psi.amp, psi.amp)

    def test_apply_pauli_matches_matrix(self, rng):
        amp = rng.normal(size=8) + 1j * rng.normal(size=8)
        for _ in range(30):
            x, z, r = rng.integers(0, 2, 3), rng.integers(0, 2, 3), int(rng.integers(2))
            got = apply_pauli(PauliRow(x, z, r), amp)
            assert np.allclose(got, pauli_matrix(x, z, r) @ amp)


class TestFidelity:
    def test_half(self):
        zero = StateVector(1, np.array([1, 0], complex))
        plus = StateVector(1, np.array([S2, S2], complex))
        assert fidelity(zero, plus) == pytest.approx(0.5)

    def test_global_phase_ignored(self):
        a = StateVector(1, np.array([S2, 1j * S2]))
        assert fidelity(a, StateVector(1, -1j * a.amp)) == pytest.approx(1.0)

    def test_size_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            fidelity(StateVector(1, np.array([1, 0])), StateVector(2, np.array([1, 0, 0, 0])))


class TestAgreement:
    @pytest.mark.parametrize("n", range(1, 7))
    def test_states_and_outcomes(self, n):
        rng = np.random.default_rng(100 + n)
        for _ in range(40):
            c = random_circuit_ops(rng, n, 30)
            seed = int(rng.integers(2**32))
            t, out_t = run_circuit(c, seed)
            psi, out_d = dense_run(c, seed)
            assert out_t == out_d
            assert fidelity(to_statevector(t), psi) >= 1 - 1e-10

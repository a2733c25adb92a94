import numpy as np
import pytest
from helpers import FixedBits, identify_pauli, random_circuit_ops
from hypothesis import given
from hypothesis import strategies as st

from stabsim import (
    Circuit,
    CliffordGate,
    GateKind,
    InternalError,
    InvalidArgumentError,
    PauliRow,
    apply_cnot,
    apply_gate,
    apply_h,
    apply_s,
    is_symplectic,
    measure,
    new_identity,
    rowsum,
    run_circuit,
)
from stabsim.dense import gate_unitary, pauli_matrix
from stabsim.reference import reference_run
from stabsim.tableau import execute, symplectic_violations


def P(s):
    return PauliRow.from_string(s)


def tableau_with_row(row):
    """Tableau whose destabilizer 0 is ``row``; only used to test per-row updates."""
    t = new_identity(row.n)
    t.set_row(0, row)
    return t


class TestNewIdentity:
    def test_one_qubit(self):
        t = new_identity(1)
        assert t.row(0) == P("+X")
        assert t.row(1) == P("+Z")
        assert t.row(2) == P("+I")

    def test_two_qubits(self):
        t = new_identity(2)
        assert [str(p) for p in t.destabilizers()] == ["+XI", "+IX"]
        assert [str(p) for p in t.stabilizers()] == ["+ZI", "+IZ"]

    @pytest.mark.parametrize("n", [1, 2, 5, 31, 32, 33, 64, 100])
    def test_symplectic(self, n):
        assert is_symplectic(new_identity(n))

    @pytest.mark.parametrize("n", [0, -1, 10**7])
    def test_rejects_bad_counts(self, n):
        with pytest.raises(InvalidArgumentError):
            new_identity(n)

    def test_configured_maximum(self):
        new_identity(8, max_qubits=8)
        with pytest.raises(InvalidArgumentError):
            new_identity(9, max_qubits=8)


class TestPauliRow:
    def test_string_roundtrip(self):
        for s in ["+IXYZ", "-ZZ", "+Y"]:
            assert str(P(s)) == s

    def test_encoding(self):
        row = P("-XZY")
        assert row.x.tolist() == [1, 0, 1]
        assert row.z.tolist() == [0, 1, 1]
        assert row.r == 1

    def test_set_and_get(self):
        t = new_identity(70)
        row = PauliRow(np.arange(70) % 2, np.arange(70) % 3 == 0, 1)
        t.set_row(77, row)
        assert t.row(77) == row
        assert t.row(76) == P("+" + "I" * 6 + "Z" + "I" * 63)


class TestSingleQubitKernels:
    def test_h_on_identity(self):
        t = new_identity(1)
        apply_h(t, 0)
        assert (t.row(0), t.row(1)) == (P("+Z"), P("+X"))

    def test_h_y(self):
        t = tableau_with_row(P("+Y"))
        apply_h(t, 0)
        assert t.row(0) == P("-Y")

    def test_h_locality(self):
        t = new_identity(2)
        before = [t.row(i) for i in range(4)]
        apply_h(t, 1)
        for i in range(4):
            assert t.row(i).x[0] == before[i].x[0]
            assert t.row(i).z[0] == before[i].z[0]

    @pytest.mark.parametrize("src, dst", [("+X", "+Y"), ("+Z", "+Z"), ("+Y", "-X")])
    def test_s(self, src, dst):
        t = tableau_with_row(P(src))
        apply_s(t, 0)
        assert t.row(0) == P(dst)

    @pytest.mark.parametrize("fn", [apply_h, apply_s])
    def test_range(self, fn):
        with pytest.raises(InvalidArgumentError):
            fn(new_identity(2), 2)
        with pytest.raises(InvalidArgumentError):
            fn(new_identity(2), -1)


class TestCnot:
    @pytest.mark.parametrize(
        "src, dst",
        [("+XI", "+XX"), ("+IZ", "+ZZ"), ("+YY", "-XZ")],
    )
    def test_rows(self, src, dst):
        t = tableau_with_row(P(src))
        apply_cnot(t, 0, 1)
        assert t.row(0) == P(dst)

    def test_yy_matches_matrix_oracle(self):
        # Frozen value "-XZ" above comes from this 4x4 computation.
        u = gate_unitary(GateKind.CX)
        got = identify_pauli(u @ pauli_matrix([1, 1], [1, 1]) @ u.conj().T, 2)
        assert (got[0].tolist(), got[1].tolist(), got[2]) == ([1, 0], [0, 1], 1)

    def test_errors(self):
        t = new_identity(2)
        with pytest.raises(InvalidArgumentError):
            apply_cnot(t, 1, 1)
        with pytest.raises(InvalidArgumentError):
            apply_cnot(t, 0, 2)


class TestApplyGate:
    def test_x_flips_z(self):
        t = new_identity(1)
        apply_gate(t, CliffordGate(GateKind.X, (0,)))
        assert t.row(1) == P("-Z")

    def test_swap(self):
        t = tableau_with_row(P("+XZ"))
        apply_gate(t, CliffordGate(GateKind.SWAP, (0, 1)))
        assert t.row(0) == P("+ZX")

    def test_cz(self):
        t = tableau_with_row(P("+XI"))
        apply_gate(t, CliffordGate(GateKind.CZ, (0, 1)))
        assert t.row(0) == P("+XZ")
        u = gate_unitary(GateKind.CZ)
        x, z, r = identify_pauli(u @ pauli_matrix([1, 0], [0, 0]) @ u.conj().T, 2)
        assert PauliRow(x, z, r) == P("+XZ")

    def test_rejects_measurement(self):
        with pytest.raises(InvalidArgumentError):
            apply_gate(new_identity(1), CliffordGate(GateKind.M, (0,)))

    def test_rejects_bad_index(self):
        with pytest.raises(InvalidArgumentError):
            apply_gate(new_identity(2), CliffordGate(GateKind.CZ, (0, 2)))


class TestRowsum:
    def test_xx_times_zz(self):
        # (X⊗X)(Z⊗Z) = (XZ)⊗(XZ) = (-iY)⊗(-iY) = -Y⊗Y
        t = new_identity(2)
        t.set_row(0, P("+ZZ"))
        t.set_row(1, P("+XX"))
        rowsum(t, 0, 1)
        assert t.row(0) == P("-YY")
        mat = pauli_matrix([1, 1], [0, 0]) @ pauli_matrix([0, 0], [1, 1])
        assert np.allclose(mat, pauli_matrix([1, 1], [1, 1], 1))

    def test_identity_row(self):
        t = new_identity(1)
        t.set_row(0, P("+Z"))
        t.set_row(1, P("+I"))
        rowsum(t, 0, 1)
        assert t.row(0) == P("+Z")

    def test_self_product(self):
        t = new_identity(3)
        t.set_row(2, P("+XZX"))
        rowsum(t, 2, 2)
        assert t.row(2) == P("+III")

    def test_anticommuting_rows_abort(self):
        t = new_identity(1)
        with pytest.raises(InternalError):
            rowsum(t, 0, 1)

    def test_bad_row(self):
        with pytest.raises(InvalidArgumentError):
            rowsum(new_identity(1), 0, 3)


class TestMeasure:
    def test_zero_state(self):
        assert measure(new_identity(1), 0, FixedBits()) == (0, True)

    @pytest.mark.parametrize("b", [0, 1])
    def test_plus_state(self, b):
        t = new_identity(1)
        apply_h(t, 0)
        bits = FixedBits(b)
        assert measure(t, 0, bits) == (b, False)
        assert bits.used == 1
        assert t.row(1) == PauliRow([0], [1], b)
        assert is_symplectic(t)

    @pytest.mark.parametrize("b", [0, 1])
    def test_bell_correlation(self, b):
        t = new_identity(2)
        apply_h(t, 0)
        apply_cnot(t, 0, 1)
        bits = FixedBits(b)
        assert measure(t, 0, bits) == (b, False)
        assert measure(t, 1, bits) == (b, True)
        assert bits.used == 1

    def test_deterministic_after_collapse_repeats(self, rng):
        t = new_identity(3)
        for q in range(3):
            apply_h(t, q)
        first = [measure(t, q, rng).outcome for q in range(3)]
        again = [measure(t, q, rng) for q in range(3)]
        assert [m.outcome for m in again] == first
        assert all(m.deterministic for m in again)

    def test_range(self):
        with pytest.raises(InvalidArgumentError):
            measure(new_identity(2), 5, FixedBits())

    def test_branch_soundness(self, rng):
        for _ in range(50):
            c = random_circuit_ops(rng, 5, 30)
            t, _ = run_circuit(c, rng)
            for q in range(5):
                x, _, _ = t.to_arrays()
                expect_det = not x[5:, q].any()
                assert measure(t, q, rng).deterministic == expect_det


class TestRunCircuit:
    def test_empty(self):
        t, out = run_circuit(Circuit(3))
        assert t == new_identity(3)
        assert out == []

    def test_bell_stabilizers(self):
        t, _ = run_circuit(Circuit(2, [(GateKind.H, 0), (GateKind.CX, 0, 1)]))
        assert sorted(str(p) for p in t.stabilizers()) == ["+XX", "+ZZ"]

    def test_flipped_qubit(self):
        t, out = run_circuit(Circuit(1, [(GateKind.X, 0), (GateKind.M, 0)]), FixedBits())
        assert out == [1]

    def test_measurement_needs_rng(self):
        with pytest.raises(InvalidArgumentError):
            run_circuit(Circuit(1, [(GateKind.M, 0)]))

    def test_size_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            execute(new_identity(2), Circuit(3))

    def test_seed_reproducible(self):
        c = random_circuit_ops(np.random.default_rng(3), 6, 200)
        a = run_circuit(c, 99)
        b = run_circuit(c, 99)
        assert a[0] == b[0] and a[1] == b[1]


class TestInvariants:
    @pytest.mark.parametrize("n", [1, 2, 7, 40, 70])
    def test_symplectic_preserved_stepwise(self, n, rng):
        t = new_identity(n)
        c = random_circuit_ops(rng, n, 150)
        for g in c:
            if g.kind == GateKind.M:
                measure(t, g.qubits[0], rng)
            else:
                apply_gate(t, g)
            assert symplectic_violations(t) == 0

    def test_violation_detected(self):
        t = new_identity(3)
        t.set_row(3, P("+XII"))
        assert not is_symplectic(t)

    @given(
        n=st.integers(1, 64),
        length=st.integers(0, 120),
        seed=st.integers(0, 2**32 - 1),
    )
    def test_bitpack_matches_reference(self, n, length, seed):
        c = random_circuit_ops(np.random.default_rng(seed), n, length)
        packed, out_p = run_circuit(c, np.random.default_rng(seed))
        ref, out_r = reference_run(c, np.random.default_rng(seed))
        assert out_p == out_r
        for a, b in zip(packed.to_arrays(), ref.to_arrays()):
            assert np.array_equal(a, b)

    @pytest.mark.parametrize("threads", [2, 3, 8])
    def test_thread_count_invariance(self, threads):
        c = random_circuit_ops(np.random.default_rng(5), 150, 3000)
        t1, o1 = run_circuit(c, 11, threads=1)
        tk, ok = run_circuit(c, 11, threads=threads)
        assert o1 == ok
        assert t1 == tk

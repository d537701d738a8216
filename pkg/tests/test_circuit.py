import numpy as np
import pytest

from dilatia.circuit import (
    Circuit,
    Gate,
    build_stateprep_circuit,
    build_svd_circuit,
    build_sznagy_circuit,
    circuit_matrix,
    decompose_diagonal,
    decompose_diagonal_approx,
    dilation_cost_comparison,
    export_qasm,
    gate_counts,
    lower_circuit,
    preparation_gates,
    walsh_coefficients,
)
from dilatia.dilation import build_dilated_diagonal
from dilatia.errors import ContractionError, DimensionError, DomainError, UnsupportedGateError
from dilatia.numerics import svd

from .conftest import random_contraction, random_state


def _synthesized(phases, epsilon=0.0):
    d = len(phases).bit_length() - 1
    synthesis = decompose_diagonal_approx(phases, epsilon)
    return synthesis, circuit_matrix(Circuit(width=d, gates=synthesis.gates))


def test_gate_rejects_wrong_arity() -> None:
    with pytest.raises(DimensionError, match="takes 2 qubit"):
        Gate("CNOT", (0,))
    with pytest.raises(DimensionError, match="invalid qubits"):
        Gate.cnot(1, 1)


def test_gate_rejects_bad_payloads() -> None:
    with pytest.raises(DimensionError, match="needs 4 phases"):
        Gate.diag((0, 1), [0.0, 1.0])
    with pytest.raises(DomainError, match="not unitary"):
        Gate.unitary((0,), [[1, 1], [0, 1]])
    with pytest.raises(UnsupportedGateError):
        Gate("T", (0,))


def test_gate_equality() -> None:
    assert Gate.rz(0, 0.25) == Gate.rz(0, 0.25)
    assert Gate.rz(0, 0.25) != Gate.rz(1, 0.25)
    assert len({Gate.h(0), Gate.h(0), Gate.x(0)}) == 2


def test_circuit_rejects_out_of_range_qubit() -> None:
    with pytest.raises(DimensionError, match="exceeds circuit width"):
        Circuit(width=2, gates=(Gate.h(2),))


def test_circuit_append_and_prepend() -> None:
    c = Circuit(width=2, gates=(Gate.h(0),))
    longer = c.prepend(Gate.x(1)).append(Gate.cnot(0, 1))
    assert [g.kind for g in longer.gates] == ["X", "H", "CNOT"]
    assert len(c.gates) == 1
    assert longer.ancilla_index == 1
    assert longer.system_qubits == (0,)


def test_cnot_control_is_first_qubit() -> None:
    m = circuit_matrix(Circuit(width=2, gates=(Gate.cnot(0, 1),)))
    # |q1 q0> = |01> (index 1) maps to |11> (index 3)
    np.testing.assert_allclose(m[:, 1], np.eye(4)[3])
    np.testing.assert_allclose(m[:, 2], np.eye(4)[2])


def test_fingerprint_is_stable() -> None:
    first = Circuit(width=2, gates=(Gate.h(0), Gate.rz(1, 0.3)))
    second = Circuit(width=2, gates=(Gate.h(0), Gate.rz(1, 0.3)))
    assert first.fingerprint() == second.fingerprint()
    assert first.fingerprint() != first.append(Gate.h(1)).fingerprint()


def test_walsh_coefficients() -> None:
    np.testing.assert_allclose(walsh_coefficients([0.0, np.pi]), [np.pi / 2, -np.pi / 2])
    with pytest.raises(DimensionError, match="power of two"):
        walsh_coefficients([0.0, 1.0, 2.0])


def test_decompose_single_qubit() -> None:
    gates = decompose_diagonal([0.0, np.pi])
    assert [g.kind for g in gates] == ["RZ", "GLOBAL_PHASE"]
    assert gates[0].angle == pytest.approx(np.pi)
    assert gates[1].angle == pytest.approx(np.pi / 2)


def test_decompose_omits_zero_global_phase() -> None:
    gates = decompose_diagonal([0.5, -0.5])
    assert [g.kind for g in gates] == ["RZ"]


def test_decompose_constant_phase_is_only_global() -> None:
    gates = decompose_diagonal([0.3] * 8)
    assert [g.kind for g in gates] == ["GLOBAL_PHASE"]


def _check_reconstruction(rng, per_d) -> None:
    for d in range(1, 7):
        for _ in range(per_d):
            phases = rng.uniform(-np.pi, np.pi, 1 << d)
            synthesis, m = _synthesized(phases)
            np.testing.assert_allclose(m, np.diag(np.exp(1j * phases)), atol=1e-10)
            assert synthesis.gate_count <= 2 ** (d + 1) - 3
            assert synthesis.error_bound == 0.0
            assert synthesis.dropped == 0


def test_decompose_reconstructs_diagonal(rng) -> None:
    _check_reconstruction(rng, 5)


@pytest.mark.slow
def test_decompose_reconstructs_diagonal_full(rng) -> None:
    _check_reconstruction(rng, 200)


def test_decompose_gate_count_bound(rng) -> None:
    for d in range(1, 7):
        for _ in range(200):
            gates = decompose_diagonal(rng.uniform(-np.pi, np.pi, 1 << d))
            assert sum(g.kind != "GLOBAL_PHASE" for g in gates) <= 2 ** (d + 1) - 3


def test_decompose_exact_gate_count_is_tight(rng) -> None:
    phases = rng.uniform(-np.pi, np.pi, 16)
    counts = gate_counts(Circuit(width=4, gates=tuple(decompose_diagonal(phases))))
    assert counts == {"CNOT": 14, "RZ": 15, "total": 29}


def test_decompose_on_explicit_qubits(rng) -> None:
    phases = rng.uniform(-np.pi, np.pi, 4)
    gates = decompose_diagonal(phases, qubits=(2, 0))
    m = circuit_matrix(Circuit(width=3, gates=tuple(gates)))
    expected = circuit_matrix(Circuit(width=3, gates=(Gate.diag((2, 0), phases),)))
    np.testing.assert_allclose(m, expected, atol=1e-10)


def test_decompose_qubit_mismatch() -> None:
    with pytest.raises(DimensionError):
        decompose_diagonal([0.0, 1.0, 2.0, 3.0], qubits=(0,))


def test_approx_zero_epsilon_is_exact(rng) -> None:
    phases = rng.uniform(-np.pi, np.pi, 8)
    assert decompose_diagonal_approx(phases, 0.0).gates == tuple(decompose_diagonal(phases))


def test_approx_rejects_negative_epsilon() -> None:
    with pytest.raises(DomainError, match="non-negative"):
        decompose_diagonal_approx([0.0, 1.0], -0.1)


def test_approx_counts_are_monotone(rng) -> None:
    phases = rng.uniform(-np.pi, np.pi, 32)
    counts = [decompose_diagonal_approx(phases, eps).gate_count for eps in np.linspace(0, 2, 41)]
    assert all(later <= earlier for earlier, later in zip(counts, counts[1:]))
    assert counts[-1] == 0


def test_approx_error_bound_holds(rng) -> None:
    for eps in (0.05, 0.2, 0.5):
        phases = rng.uniform(-np.pi, np.pi, 16)
        synthesis, m = _synthesized(phases, eps)
        deviation = np.abs(np.angle(np.diag(m) * np.exp(-1j * phases)))
        assert np.max(deviation) <= synthesis.error_bound + 1e-10
        assert synthesis.dropped > 0 or synthesis.error_bound == 0.0


def test_svd_circuit_block_equals_operator(rng) -> None:
    for r in (2, 3, 4, 8):
        m = random_contraction(rng, r)
        factors = svd(m)
        dd, _ = build_dilated_diagonal(factors.singular_values, size=max(2, 1 << (r - 1).bit_length()))
        c = build_svd_circuit(factors, dd)
        n = len(dd)
        assert c.width == dd.qubit_count + 1
        assert [g.kind for g in c.gates] == ["UNITARY", "H", "DIAG", "UNITARY", "H"]
        full = circuit_matrix(c)
        np.testing.assert_allclose(full[:r, :r], m, atol=1e-10)
        np.testing.assert_allclose(full[r:n, :r], 0, atol=1e-10)


def test_svd_circuit_rejects_short_diagonal() -> None:
    factors = svd(np.eye(4) * 0.5)
    dd, _ = build_dilated_diagonal([0.5, 0.5])
    with pytest.raises(DimensionError):
        build_svd_circuit(factors, dd)


def test_lowered_svd_circuit_matches(rng) -> None:
    m = random_contraction(rng, 4)
    factors = svd(m)
    dd, _ = build_dilated_diagonal(factors.singular_values)
    c = build_svd_circuit(factors, dd)
    lowered = lower_circuit(c)
    assert "DIAG" not in {g.kind for g in lowered.gates}
    np.testing.assert_allclose(circuit_matrix(lowered), circuit_matrix(c), atol=1e-10)


def test_lower_circuit_drops_identity_factors() -> None:
    factors = svd(np.diag([0.6, 0.3]))
    dd, _ = build_dilated_diagonal(factors.singular_values)
    counts = gate_counts(lower_circuit(build_svd_circuit(factors, dd)))
    assert "UNITARY" not in counts
    assert counts["H"] == 2


def test_lower_circuit_names_single_qubit_unitaries() -> None:
    c = Circuit(width=1, gates=(Gate.unitary((0,), [[0, 1], [1, 0]]),))
    assert lower_circuit(c).gates == (Gate.x(0),)


def test_stateprep_branch(rng) -> None:
    for k in (1, 2, 3):
        target = random_state(rng, 1 << k)
        c = build_stateprep_circuit(target, k)
        assert c.branch_scale == 2**k
        column = circuit_matrix(c)[:, 0]
        np.testing.assert_allclose(column[: 1 << k], target / np.sqrt(2**k), atol=1e-12)


def test_stateprep_pads_short_target() -> None:
    c = build_stateprep_circuit([0.6, 0.4j, 0.5], 2)
    column = circuit_matrix(c)[:, 0]
    np.testing.assert_allclose(column[:4], np.array([0.6, 0.4j, 0.5, 0]) / 2, atol=1e-12)


def test_stateprep_rejects_bad_targets() -> None:
    with pytest.raises(ContractionError):
        build_stateprep_circuit([1.5, 0], 1)
    with pytest.raises(DimensionError):
        build_stateprep_circuit([0.1, 0.1, 0.1], 1)


def test_sznagy_circuit(rng) -> None:
    m = random_contraction(rng, 3)
    c = build_sznagy_circuit(m)
    assert c.width == 3
    assert gate_counts(c) == {"UNITARY": 1, "total": 1}
    np.testing.assert_allclose(circuit_matrix(c)[:3, :3], m, atol=1e-10)


def test_dilation_cost_comparison() -> None:
    assert dilation_cost_comparison(2) == {"dense_dilated": 64, "svd_layout": 13}
    costs = dilation_cost_comparison(5)
    assert costs["svd_layout"] < costs["dense_dilated"]
    with pytest.raises(DimensionError):
        dilation_cost_comparison(1)


def test_preparation_gates(plus) -> None:
    assert preparation_gates([1, 0], (0,)) == ()
    assert preparation_gates([0, 1], (0,)) == (Gate.x(0),)
    assert preparation_gates(plus, (3,)) == (Gate.h(3),)
    (gate,) = preparation_gates([0.6, 0.8j], (0,))
    assert gate.kind == "UNITARY"
    np.testing.assert_allclose(gate.matrix[:, 0], [0.6, 0.8j])


def test_preparation_gates_rejects_unnormalized() -> None:
    with pytest.raises(DomainError, match="normalized"):
        preparation_gates([1, 1], (0,))


def test_circuit_matrix_width_limit() -> None:
    with pytest.raises(DimensionError, match="at most 10"):
        circuit_matrix(Circuit(width=11))


def test_export_qasm() -> None:
    c = Circuit(width=2, gates=(Gate.h(0), Gate.cnot(0, 1), Gate.rz(1, 0.5), Gate.global_phase(0.25)))
    lines = export_qasm(c).splitlines()
    assert lines[:4] == ["OPENQASM 2.0;", 'include "qelib1.inc";', "qreg q[2];", "creg c[2];"]
    assert lines[4:8] == ["h q[0];", "cx q[0],q[1];", "rz(0.5) q[1];", "// global_phase 0.25"]
    assert lines[-2:] == ["measure q[0] -> c[0];", "measure q[1] -> c[1];"]


def test_export_qasm_without_measure() -> None:
    text = export_qasm(Circuit(width=1, gates=(Gate.sdg(0),)), measure=False)
    assert text.endswith("sdg q[0];\n")
    assert "measure" not in text


def test_export_qasm_rejects_unlowered_gates(rng) -> None:
    factors = svd(random_contraction(rng, 2))
    dd, _ = build_dilated_diagonal(factors.singular_values)
    c = build_svd_circuit(factors, dd)
    with pytest.raises(UnsupportedGateError, match="DIAG"):
        export_qasm(c, opaque=True)
    with pytest.raises(UnsupportedGateError, match="UNITARY"):
        export_qasm(lower_circuit(c))


def test_export_qasm_opaque_unitaries(rng) -> None:
    factors = svd(random_contraction(rng, 2))
    dd, _ = build_dilated_diagonal(factors.singular_values)
    text = export_qasm(lower_circuit(build_svd_circuit(factors, dd)), opaque=True)
    assert "opaque unitary_0 a0;  // V†" in text
    assert "opaque unitary_1 a0;  // U" in text
    assert "unitary_0 q[0];" in text
    assert text.index("opaque") < text.index("qreg")

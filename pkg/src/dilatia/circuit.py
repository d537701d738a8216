"""Gate-level circuits for the one-ancilla dilation.

Circuits act on ``k`` system qubits plus one ancilla. The ancilla is always
the highest qubit index, i.e. the most significant bit of a basis index, so
the two blocks of ``S_plus (+) S_minus`` are literally the ancilla-0 and
ancilla-1 halves of the state vector.

Besides the builders for the state-preparation and SVD layouts this module
synthesises diagonal unitaries into ``RZ``/``CNOT`` sequences (Walsh
coefficients visited in Gray-code order), multiplies circuits out into
dense matrices for testing, and writes OpenQASM 2.0.
"""

from __future__ import annotations

import hashlib
import json
import logging
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field, replace
from typing import Any, Literal

import numpy as np

from .dilation import DilatedDiagonal, build_dilated_diagonal, sznagy_dilate
from .errors import DimensionError, DomainError, UnsupportedGateError
from .numerics import (
    ComplexMatrix,
    SvdFactors,
    _readonly,
    as_square,
    as_vector,
    complete_unitary,
    is_power_of_two,
    is_unitary,
    next_power_of_two,
)

log = logging.getLogger(__name__)

GateKind = Literal["H", "X", "S", "SDG", "RZ", "CNOT", "DIAG", "UNITARY", "GLOBAL_PHASE"]

MAX_MATRIX_WIDTH = 10
WALSH_ZERO = 1e-14

_SQRT1_2 = 1 / np.sqrt(2)
_FIXED = {
    "H": np.array([[_SQRT1_2, _SQRT1_2], [_SQRT1_2, -_SQRT1_2]], dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "S": np.array([[1, 0], [0, 1j]], dtype=np.complex128),
    "SDG": np.array([[1, 0], [0, -1j]], dtype=np.complex128),
    "CNOT": np.eye(4, dtype=np.complex128)[[0, 3, 2, 1]],
}
_ARITY = {"H": 1, "X": 1, "S": 1, "SDG": 1, "RZ": 1, "CNOT": 2, "GLOBAL_PHASE": 0}
_QASM_NAMES = {"H": "h", "X": "x", "S": "s", "SDG": "sdg"}


def _fmt(angle: float) -> str:
    return f"{angle:.17g}"


@dataclass(frozen=True, eq=False)
class Gate:
    """A single circuit instruction.

    Parameters
    ----------
    kind : {"H", "X", "S", "SDG", "RZ", "CNOT", "DIAG", "UNITARY", "GLOBAL_PHASE"}
        Instruction type.
    qubits : tuple of int
        Qubits acted on. For ``CNOT`` the order is ``(control, target)``;
        for ``DIAG`` and ``UNITARY`` qubit ``qubits[m]`` is bit ``m`` of the
        local matrix index.
    angle : float, optional
        Rotation angle for ``RZ`` (``diag(e^{-i a/2}, e^{i a/2})``) and
        ``GLOBAL_PHASE`` (``e^{i a}``), in radians.
    phases : ndarray, optional
        Real phase vector of a ``DIAG`` gate, length ``2**len(qubits)``.
    matrix : ndarray, optional
        Dense unitary of a ``UNITARY`` gate.
    label : str, optional
        Free-form name used in reports (e.g. ``"U"``, ``"V†"``).
    """

    kind: GateKind
    qubits: tuple[int, ...] = ()
    angle: float | None = None
    phases: np.ndarray | None = None
    matrix: np.ndarray | None = None
    label: str | None = None

    def __post_init__(self) -> None:
        qubits = tuple(int(q) for q in self.qubits)
        object.__setattr__(self, "qubits", qubits)
        if len(set(qubits)) != len(qubits) or any(q < 0 for q in qubits):
            raise DimensionError(f"{self.kind} gate has invalid qubits {qubits}.")
        if self.kind in _ARITY:
            if len(qubits) != _ARITY[self.kind]:
                raise DimensionError(f"{self.kind} gate takes {_ARITY[self.kind]} qubit(s), got {qubits}.")
            if self.kind in ("RZ", "GLOBAL_PHASE"):
                if self.angle is None:
                    raise DomainError(f"{self.kind} gate requires an angle.")
                object.__setattr__(self, "angle", float(self.angle))
        elif self.kind == "DIAG":
            phases = np.asarray(self.phases, dtype=np.float64).reshape(-1)
            if not qubits or phases.size != 1 << len(qubits):
                raise DimensionError(f"DIAG over {len(qubits)} qubit(s) needs {1 << len(qubits)} phases, got {phases.size}.")
            object.__setattr__(self, "phases", _readonly(phases, np.float64))
        elif self.kind == "UNITARY":
            matrix = as_square(self.matrix, name="gate matrix", max_dimension=1 << MAX_MATRIX_WIDTH)
            if not qubits or matrix.shape[0] != 1 << len(qubits):
                raise DimensionError(f"UNITARY over {len(qubits)} qubit(s) needs a {1 << len(qubits)}-dimensional matrix, got {matrix.shape}.")
            if not is_unitary(matrix, 1e-10):
                raise DomainError(f"UNITARY gate {self.label or ''} matrix is not unitary.")
            object.__setattr__(self, "matrix", _readonly(matrix))
        else:
            raise UnsupportedGateError(f"Unknown gate kind {self.kind!r}.")

    @classmethod
    def h(cls, qubit: int) -> Gate:
        return cls("H", (qubit,))

    @classmethod
    def x(cls, qubit: int) -> Gate:
        return cls("X", (qubit,))

    @classmethod
    def s(cls, qubit: int) -> Gate:
        return cls("S", (qubit,))

    @classmethod
    def sdg(cls, qubit: int) -> Gate:
        return cls("SDG", (qubit,))

    @classmethod
    def rz(cls, qubit: int, angle: float) -> Gate:
        return cls("RZ", (qubit,), angle=angle)

    @classmethod
    def cnot(cls, control: int, target: int) -> Gate:
        return cls("CNOT", (control, target))

    @classmethod
    def global_phase(cls, angle: float) -> Gate:
        return cls("GLOBAL_PHASE", (), angle=angle)

    @classmethod
    def diag(cls, qubits: Sequence[int], phases: Any, label: str | None = None) -> Gate:
        return cls("DIAG", tuple(qubits), phases=phases, label=label)

    @classmethod
    def unitary(cls, qubits: Sequence[int], matrix: Any, label: str | None = None) -> Gate:
        return cls("UNITARY", tuple(qubits), matrix=matrix, label=label)

    def local_matrix(self) -> ComplexMatrix:
        """Dense matrix of the gate on its own qubits."""
        if self.kind in _FIXED:
            return _FIXED[self.kind]
        if self.kind == "RZ":
            half = self.angle / 2
            return np.diag([np.exp(-1j * half), np.exp(1j * half)])
        if self.kind == "GLOBAL_PHASE":
            return np.array([[np.exp(1j * self.angle)]])
        if self.kind == "DIAG":
            return np.diag(np.exp(1j * self.phases))
        return self.matrix

    def to_dict(self) -> dict[str, Any]:
        """JSON-serializable description of the gate."""
        payload: dict[str, Any] = {"kind": self.kind, "qubits": list(self.qubits)}
        if self.angle is not None:
            payload["angle"] = self.angle
        if self.phases is not None:
            payload["phases"] = [float(p) for p in self.phases]
        if self.matrix is not None:
            payload["matrix"] = [[[float(z.real), float(z.imag)] for z in row] for row in self.matrix]
        if self.label is not None:
            payload["label"] = self.label
        return payload

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Gate):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __hash__(self) -> int:
        return hash(json.dumps(self.to_dict(), sort_keys=True))


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over ``width`` qubits, the last one being the ancilla.

    Parameters
    ----------
    width : int
        Total number of qubits (system qubits plus the ancilla).
    gates : tuple of Gate
        Instructions in application order.
    branch_scale : float, default 1.0
        The ancilla-0 branch equals the intended vector divided by
        ``sqrt(branch_scale)``. State preparation on ``k`` qubits has
        ``branch_scale = 2**k``; the SVD layout has 1.
    label : str, optional
        Name used in reports and file names.
    """

    width: int
    gates: tuple[Gate, ...] = field(default_factory=tuple)
    branch_scale: float = 1.0
    label: str = ""

    def __post_init__(self) -> None:
        if self.width < 1:
            raise DimensionError(f"Circuit width must be at least 1, got {self.width}.")
        gates = tuple(self.gates)
        for gate in gates:
            if any(q >= self.width for q in gate.qubits):
                raise DimensionError(f"{gate.kind} on qubits {gate.qubits} exceeds circuit width {self.width}.")
        object.__setattr__(self, "gates", gates)

    @property
    def ancilla_index(self) -> int:
        return self.width - 1

    @property
    def system_qubits(self) -> tuple[int, ...]:
        return tuple(range(self.width - 1))

    def append(self, *gates: Gate) -> Circuit:
        """Return a new circuit with *gates* added at the end."""
        return replace(self, gates=self.gates + tuple(gates))

    def prepend(self, *gates: Gate) -> Circuit:
        """Return a new circuit with *gates* added at the start."""
        return replace(self, gates=tuple(gates) + self.gates)

    def to_dict(self) -> dict[str, Any]:
        return {
            "width": self.width,
            "branch_scale": self.branch_scale,
            "label": self.label,
            "gates": [gate.to_dict() for gate in self.gates],
        }

    def fingerprint(self) -> int:
        """Stable 64-bit digest of the circuit, used to key random streams."""
        blob = json.dumps(self.to_dict(), sort_keys=True).encode()
        return int.from_bytes(hashlib.sha256(blob).digest()[:8], "little")


@dataclass(frozen=True)
class DiagonalSynthesis:
    """Result of synthesising a diagonal unitary into elementary gates.

    Parameters
    ----------
    gates : tuple of Gate
        ``RZ`` and ``CNOT`` gates, followed by one ``GLOBAL_PHASE`` unless the
        constant coefficient is exactly zero.
    global_phase : float
        Constant Walsh coefficient (mean phase).
    error_bound : float
        Sum of the magnitudes of omitted Walsh coefficients; bounds the
        largest phase deviation of the synthesised diagonal.
    dropped : int
        Number of non-negligible coefficients omitted.
    """

    gates: tuple[Gate, ...]
    global_phase: float
    error_bound: float
    dropped: int

    @property
    def gate_count(self) -> int:
        """Elementary gates, not counting the global phase."""
        return sum(1 for gate in self.gates if gate.kind != "GLOBAL_PHASE")


def walsh_coefficients(phases: Any) -> np.ndarray:
    """Walsh-Hadamard coefficients ``a_s`` with ``theta(x) = sum_s a_s (-1)^{s.x}``."""
    theta = np.asarray(phases, dtype=np.float64).reshape(-1)
    if theta.size < 2 or not is_power_of_two(theta.size):
        raise DimensionError(f"Phase vector length {theta.size} is not a power of two >= 2.")
    hadamard = np.ones((1, 1))
    for _ in range(theta.size.bit_length() - 1):
        hadamard = np.kron(hadamard, [[1.0, 1.0], [1.0, -1.0]])
    return hadamard @ theta / theta.size


def decompose_diagonal_approx(phases: Any, epsilon: float, qubits: Sequence[int] | None = None) -> DiagonalSynthesis:
    """Synthesise ``diag(exp(i*phases))``, dropping small Walsh coefficients.

    Every Walsh coefficient ``a_s`` (``s != 0``) becomes one ``RZ(-2 a_s)``
    on the highest qubit of ``s`` after CNOTs have folded the parity of the
    other qubits of ``s`` into it. For each target qubit the lower-qubit
    subsets are visited in Gray-code order, so consecutive parities differ
    by one CNOT, and the target is restored at the end. Coefficients with
    ``|a_s| < epsilon`` are skipped together with the CNOTs they no longer
    need, which makes the gate count non-increasing in ``epsilon``.

    Parameters
    ----------
    phases : array_like
        ``2**d`` real phases, ``d >= 1``.
    epsilon : float
        Truncation threshold, ``>= 0``. Zero gives the exact synthesis with at
        most ``2**(d+1) - 3`` gates.
    qubits : sequence of int, optional
        Circuit qubit for each local bit, defaults to ``range(d)``.

    Raises
    ------
    DimensionError
        If the phase vector length is not a power of two.
    DomainError
        If ``epsilon`` is negative.
    """
    if epsilon < 0:
        raise DomainError(f"epsilon must be non-negative, got {epsilon}.")
    coeffs = walsh_coefficients(phases)
    d = coeffs.size.bit_length() - 1
    qubits = tuple(range(d)) if qubits is None else tuple(qubits)
    if len(qubits) != d:
        raise DimensionError(f"{coeffs.size} phases need {d} qubits, got {len(qubits)}.")
    mags = np.abs(coeffs)
    keep = (mags > WALSH_ZERO) & (mags >= epsilon)
    keep[0] = False
    error_bound = float(mags[1:][~keep[1:]].sum())
    dropped = int(((mags[1:] > WALSH_ZERO) & ~keep[1:]).sum())

    gates: list[Gate] = []
    for j in range(d):
        target = qubits[j]
        current = 0
        for m in range(1 << j):
            gray = m ^ (m >> 1)
            s = (1 << j) | gray
            if not keep[s]:
                continue
            gates.extend(_parity_cnots(current ^ gray, qubits, target))
            current = gray
            gates.append(Gate.rz(target, -2.0 * coeffs[s]))
        gates.extend(_parity_cnots(current, qubits, target))
    global_phase = float(coeffs[0])
    if global_phase != 0.0:
        gates.append(Gate.global_phase(global_phase))
    return DiagonalSynthesis(gates=tuple(gates), global_phase=global_phase, error_bound=error_bound, dropped=dropped)


def _parity_cnots(mask: int, qubits: tuple[int, ...], target: int) -> list[Gate]:
    return [Gate.cnot(qubits[b], target) for b in range(mask.bit_length()) if mask >> b & 1]


def decompose_diagonal(phases: Any, qubits: Sequence[int] | None = None) -> list[Gate]:
    """Exact ``RZ``/``CNOT`` synthesis of ``diag(exp(i*phases))``.

    Examples
    --------
    >>> import numpy as np
    >>> [g.kind for g in decompose_diagonal([0.0, np.pi])]
    ['RZ', 'GLOBAL_PHASE']
    """
    return list(decompose_diagonal_approx(phases, 0.0, qubits).gates)


def _named_single_qubit(matrix: ComplexMatrix) -> str | None:
    for kind in ("X", "H", "S", "SDG"):
        if np.allclose(matrix, _FIXED[kind], rtol=0.0, atol=1e-12):
            return kind
    return None


def lower_circuit(c: Circuit, epsilon: float | None = None) -> Circuit:
    """Rewrite a circuit into exportable gates.

    ``DIAG`` gates are replaced by their (approximate, if ``epsilon`` is
    given) synthesis. ``UNITARY`` gates equal to the identity are removed and
    single-qubit ones equal to X, H, S or S† become named gates. Other
    ``UNITARY`` gates are left in place.
    """
    lowered: list[Gate] = []
    for gate in c.gates:
        if gate.kind == "DIAG":
            lowered.extend(decompose_diagonal_approx(gate.phases, epsilon or 0.0, gate.qubits).gates)
        elif gate.kind == "UNITARY":
            if np.allclose(gate.matrix, np.eye(gate.matrix.shape[0]), rtol=0.0, atol=1e-12):
                continue
            name = _named_single_qubit(gate.matrix) if len(gate.qubits) == 1 else None
            lowered.append(Gate(name, gate.qubits) if name else gate)
        else:
            lowered.append(gate)
    return replace(c, gates=tuple(lowered))


def gate_counts(c: Circuit) -> dict[str, int]:
    """Histogram of gate kinds plus ``"total"``; global phases are not counted."""
    counts = Counter(gate.kind for gate in c.gates if gate.kind != "GLOBAL_PHASE")
    result = dict(sorted(counts.items()))
    result["total"] = sum(counts.values())
    return result


def _embed(m: ComplexMatrix, size: int) -> ComplexMatrix:
    out = np.eye(size, dtype=np.complex128)
    out[: m.shape[0], : m.shape[1]] = m
    return out


def build_svd_circuit(factors: SvdFactors, dd: DilatedDiagonal) -> Circuit:
    """Circuit applying ``U diag(sigma) V^H`` to the ancilla-0 branch.

    Gate order: ``V^H`` on the system qubits, ``H`` on the ancilla, the
    dilated diagonal on all qubits, ``U`` on the system qubits, ``H`` on the
    ancilla. When the operator size is not a power of two, ``U`` and
    ``V^H`` are padded with an identity block to match ``dd``.

    Raises
    ------
    DimensionError
        If ``dd`` is shorter than the factors or has fewer than two entries.
    """
    r = factors.dimension
    n = len(dd)
    if n < r or n < 2:
        raise DimensionError(f"Dilated diagonal of length {n} cannot carry a {r}x{r} operator (need a power of two >= max(2, {r})).")
    k = dd.qubit_count
    system = tuple(range(k))
    gates = (
        Gate.unitary(system, _embed(factors.v_dagger, n), label="V†"),
        Gate.h(k),
        Gate.diag(system + (k,), dd.phases, label="Σ+⊕Σ-"),
        Gate.unitary(system, _embed(factors.u, n), label="U"),
        Gate.h(k),
    )
    return Circuit(width=k + 1, gates=gates, branch_scale=1.0, label="svd")


def build_stateprep_circuit(target: Any, k: int) -> Circuit:
    """Circuit preparing ``target / 2**(k/2)`` on the ancilla-0 branch.

    Hadamards on every qubit, the dilated diagonal of ``target`` (zero
    padded to ``2**k``), then a Hadamard on the ancilla only.

    Raises
    ------
    ContractionError
        If an entry of ``target`` has modulus above one.
    DimensionError
        If ``target`` is longer than ``2**k``.
    """
    amps = as_vector(target, name="target")
    if k < 1 or amps.size > 1 << k:
        raise DimensionError(f"A target of length {amps.size} does not fit on {k} qubit(s).")
    padded = np.zeros(1 << k, dtype=np.complex128)
    padded[: amps.size] = amps
    dd, _ = build_dilated_diagonal(padded, auto_rescale=False)
    system = tuple(range(k))
    gates = [Gate.h(q) for q in system]
    gates += [Gate.h(k), Gate.diag(system + (k,), dd.phases, label="Σ+⊕Σ-"), Gate.h(k)]
    return Circuit(width=k + 1, gates=tuple(gates), branch_scale=float(1 << k), label="stateprep")


def build_sznagy_circuit(m: Any) -> Circuit:
    """Dense one-dilation circuit: a single ``UNITARY`` over all qubits.

    Operators whose size is not a power of two are padded with an identity
    block before dilation.
    """
    a = as_square(m)
    n = max(2, next_power_of_two(a.shape[0]))
    k = n.bit_length() - 1
    dilated = sznagy_dilate(_embed(a, n))
    return Circuit(width=k + 1, gates=(Gate.unitary(range(k + 1), dilated, label="U_M"),), label="sznagy")


def dilation_cost_comparison(d: int) -> dict[str, int]:
    """Leading-order gate estimates for a ``d``-qubit dilated operator.

    ``dense_dilated`` is the generic bound ``d^2 4^d`` for a unitary on all
    ``d`` qubits; ``svd_layout`` is two ``(d-1)``-qubit unitaries plus the
    exact diagonal ``2^(d+1) - 3``.
    """
    if d < 2:
        raise DimensionError(f"A dilated operator needs at least 2 qubits, got {d}.")
    dense = d * d * 4**d
    svd_layout = 2 * (d - 1) ** 2 * 4 ** (d - 1) + 2 ** (d + 1) - 3
    return {"dense_dilated": dense, "svd_layout": svd_layout}


def preparation_gates(psi: Any, qubits: Sequence[int]) -> tuple[Gate, ...]:
    """Gates taking ``|0...0>`` on *qubits* to the normalized state *psi*.

    ``|0>``, ``|1>`` and ``|+>`` use no gate, ``X`` and ``H``; anything else
    becomes one ``UNITARY`` whose first column is *psi*.
    """
    amps = as_vector(psi, name="psi")
    qubits = tuple(qubits)
    if amps.size != 1 << len(qubits):
        raise DimensionError(f"State of length {amps.size} does not match {len(qubits)} qubit(s).")
    if abs(np.linalg.norm(amps) - 1.0) > 1e-10:
        raise DomainError("Preparation target must be normalized.")
    zero = np.zeros(amps.size)
    zero[0] = 1.0
    if np.allclose(amps, zero, rtol=0.0, atol=1e-12):
        return ()
    if len(qubits) == 1:
        for name in ("X", "H"):
            if np.allclose(_FIXED[name][:, 0], amps, rtol=0.0, atol=1e-12):
                return (Gate(name, qubits),)
    return (Gate.unitary(qubits, complete_unitary(amps), label="prep"),)


def _apply_gate(state: np.ndarray, gate: Gate, width: int) -> np.ndarray:
    if gate.kind == "GLOBAL_PHASE":
        return state * np.exp(1j * gate.angle)
    batch = state.shape[1]
    m = len(gate.qubits)
    tensor = state.reshape((2,) * width + (batch,))
    axes = [width - 1 - q for q in reversed(gate.qubits)]
    front = np.moveaxis(tensor, axes, list(range(m)))
    shape = front.shape
    flat = front.reshape(1 << m, -1)
    if gate.kind == "DIAG":
        flat = np.exp(1j * gate.phases)[:, None] * flat
    else:
        flat = gate.local_matrix() @ flat
    back = np.moveaxis(flat.reshape(shape), list(range(m)), axes)
    return back.reshape(1 << width, batch)


def apply_gates(states: np.ndarray, gates: Iterable[Gate], width: int) -> np.ndarray:
    """Apply *gates* to the columns of ``states`` (shape ``(2**width, batch)``)."""
    out = np.array(states, dtype=np.complex128)
    for gate in gates:
        out = _apply_gate(out, gate, width)
    return out


def circuit_matrix(c: Circuit) -> ComplexMatrix:
    """Dense unitary of the whole circuit (testing oracle).

    Raises
    ------
    DimensionError
        If the circuit is wider than 10 qubits.
    """
    if c.width > MAX_MATRIX_WIDTH:
        raise DimensionError(f"circuit_matrix supports at most {MAX_MATRIX_WIDTH} qubits, got {c.width}.")
    return apply_gates(np.eye(1 << c.width, dtype=np.complex128), c.gates, c.width)


def export_qasm(c: Circuit, *, measure: bool = True, opaque: bool = False) -> str:
    """Render the circuit as an OpenQASM 2.0 program.

    Global phases have no OpenQASM 2.0 statement and are written as a
    ``// global_phase`` comment so the program text still records them.

    Parameters
    ----------
    c : Circuit
        Circuit to export.
    measure : bool, default True
        Append a measurement of every qubit.
    opaque : bool, default False
        Declare remaining ``UNITARY`` gates as ``opaque`` gates named
        ``unitary_<n>`` instead of failing.

    Raises
    ------
    UnsupportedGateError
        If the circuit still holds ``DIAG`` gates, or ``UNITARY`` gates
        without ``opaque``; run :func:`lower_circuit` first.
    """
    header = ["OPENQASM 2.0;", 'include "qelib1.inc";']
    declarations: list[str] = []
    body: list[str] = []
    for gate in c.gates:
        if gate.kind in _QASM_NAMES:
            body.append(f"{_QASM_NAMES[gate.kind]} q[{gate.qubits[0]}];")
        elif gate.kind == "RZ":
            body.append(f"rz({_fmt(gate.angle)}) q[{gate.qubits[0]}];")
        elif gate.kind == "CNOT":
            body.append(f"cx q[{gate.qubits[0]}],q[{gate.qubits[1]}];")
        elif gate.kind == "GLOBAL_PHASE":
            body.append(f"// global_phase {_fmt(gate.angle)}")
        elif gate.kind == "UNITARY" and opaque:
            name = f"unitary_{len(declarations)}"
            args = ",".join(f"a{i}" for i in range(len(gate.qubits)))
            declarations.append(f"opaque {name} {args};  // {gate.label or 'matrix'}")
            body.append(f"{name} " + ",".join(f"q[{q}]" for q in gate.qubits) + ";")
        else:
            raise UnsupportedGateError(f"{gate.kind} gate {gate.label or ''} cannot be exported; lower the circuit first.")
    lines = header + declarations + [f"qreg q[{c.width}];", f"creg c[{c.width}];"] + body
    if measure:
        lines.extend(f"measure q[{q}] -> c[{q}];" for q in range(c.width))
    return "\n".join(lines) + "\n"


__all__ = [
    "Circuit",
    "DiagonalSynthesis",
    "Gate",
    "apply_gates",
    "build_stateprep_circuit",
    "build_svd_circuit",
    "build_sznagy_circuit",
    "circuit_matrix",
    "decompose_diagonal",
    "decompose_diagonal_approx",
    "dilation_cost_comparison",
    "export_qasm",
    "gate_counts",
    "lower_circuit",
    "preparation_gates",
    "walsh_coefficients",
]

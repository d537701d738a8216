"""Statevector execution, post-selection, sampling and one-qubit tomography.

Execution is exact: gates are applied to the full ``2**width`` amplitude
vector. Measurement is either read off the exact probabilities or sampled
multinomially from a ``PCG64`` stream keyed by ``(seed, circuit)``, so a
run is reproducible on any platform.
"""

from __future__ import annotations

import json
import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any, Literal, NamedTuple

import numpy as np

from .circuit import Circuit, Gate, apply_gates, build_svd_circuit, lower_circuit
from .dilation import build_dilated_diagonal
from .errors import DimensionError, DomainError, InsufficientStatisticsError, SymmetryError
from .numerics import (
    ComplexMatrix,
    ComplexVector,
    StateVector,
    SvdFactors,
    _readonly,
    as_square,
    as_vector,
    dagger,
    frobenius_norm,
    hermitian_eig,
    hermitian_sqrt,
    next_power_of_two,
    svd,
)

log = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-10
DENSITY_HERMITIAN_TOLERANCE = 1e-10
DENSITY_EIGEN_FLOOR = -1e-9
DENSITY_TRACE_CEILING = 1.0 + 1e-9

_PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
_PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)

#: Basis changes applied to the system qubit before a Z measurement.
TOMOGRAPHY_BASES: tuple[tuple[str, tuple[Gate, ...]], ...] = (
    ("Z", ()),
    ("X", (Gate.h(0),)),
    ("Y", (Gate.sdg(0), Gate.h(0))),
)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian positive semidefinite matrix, possibly sub-normalized.

    Parameters
    ----------
    matrix : array_like
        Square matrix. It is symmetrized on construction; deviations from
        Hermiticity above ``1e-10`` or eigenvalues below ``-1e-9`` are
        rejected.
    bounded : bool, default True
        Also reject a trace above ``1 + 1e-9``. Shot-based estimates pass
        ``False``.
    """

    matrix: ComplexMatrix
    bounded: bool = field(default=True, compare=False)

    def __post_init__(self) -> None:
        a = as_square(self.matrix, name="density matrix")
        deviation = float(np.max(np.abs(a - dagger(a))))
        if deviation > DENSITY_HERMITIAN_TOLERANCE:
            raise SymmetryError(f"Density matrix is not Hermitian (max |rho - rho^H| = {deviation:.3e}).")
        a = (a + dagger(a)) / 2
        lowest = float(np.linalg.eigvalsh(a)[0])
        if lowest < DENSITY_EIGEN_FLOOR:
            raise DomainError(f"Density matrix has negative eigenvalue {lowest:.3e}.")
        trace = float(np.trace(a).real)
        if self.bounded and trace > DENSITY_TRACE_CEILING:
            raise DomainError(f"Density matrix has trace {trace:.12g} > 1.")
        object.__setattr__(self, "matrix", _readonly(a))

    @classmethod
    def from_state(cls, amplitudes: Any) -> DensityMatrix:
        """Projector ``|v><v|`` of an (un-normalized) vector."""
        v = as_vector(amplitudes.amplitudes if isinstance(amplitudes, StateVector) else amplitudes)
        return cls(np.outer(v, np.conj(v)))

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def normalized(self) -> DensityMatrix:
        trace = self.trace
        if trace <= 1e-15:
            raise DomainError("Cannot normalize a density matrix with zero trace.")
        return DensityMatrix(self.matrix / trace)

    def bloch_vector(self) -> tuple[float, float, float]:
        """``(x, y, z) = (2 Re rho01, -2 Im rho01, rho00 - rho11)`` of a one-qubit matrix."""
        if self.dimension != 2:
            raise DimensionError(f"Bloch coordinates need a 2x2 matrix, got {self.dimension}x{self.dimension}.")
        rho01 = self.matrix[0, 1]
        return (2 * float(rho01.real), -2 * float(rho01.imag), float((self.matrix[0, 0] - self.matrix[1, 1]).real))


@dataclass(frozen=True)
class ExecutionMode:
    """How measurement statistics are obtained.

    Use :meth:`exact` to read outcome probabilities directly or
    :meth:`sampled` for multinomial shots from a seeded generator.
    """

    kind: Literal["exact", "shots"] = "exact"
    shots: int = 0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("exact", "shots"):
            raise DomainError(f"Unknown execution mode {self.kind!r}.")
        if self.kind == "shots" and self.shots < 1:
            raise DomainError(f"Shot count must be at least 1, got {self.shots}.")

    @classmethod
    def exact(cls) -> ExecutionMode:
        return cls("exact")

    @classmethod
    def sampled(cls, shots: int, seed: int = 0) -> ExecutionMode:
        return cls("shots", int(shots), int(seed))

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"


class Branch(NamedTuple):
    """Un-normalized post-selected amplitudes and their probability."""

    amplitudes: ComplexVector
    probability: float


@dataclass(frozen=True)
class ShotRun:
    """Outcome counts of one sampled measurement.

    Bitstrings list the most significant qubit first, so the ancilla is
    the leftmost character.
    """

    shots: int
    seed: int
    counts: dict[str, int] = field(default_factory=dict)
    width: int = 1

    def __post_init__(self) -> None:
        if sum(self.counts.values()) != self.shots:
            raise DomainError(f"Counts sum to {sum(self.counts.values())}, expected {self.shots} shots.")
        if any(len(key) != self.width for key in self.counts):
            raise DimensionError(f"Every bitstring must have {self.width} characters.")

    def frequency(self, bitstring: str) -> float:
        return self.counts.get(bitstring, 0) / self.shots

    def to_dict(self) -> dict[str, Any]:
        return {"shots": self.shots, "seed": self.seed, "counts": dict(self.counts)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass(frozen=True)
class TomographyEstimate:
    """Reconstructed one-qubit state scaled by its estimated squared norm.

    Parameters
    ----------
    rho : DensityMatrix
        ``branch_scale * p0 * rho_hat``; its trace estimates the squared norm
        of the prepared (un-normalized) vector.
    success_probability : float
        Ancilla-0 frequency pooled over all three bases.
    shots_per_basis : int
        Shots per basis, 0 in exact mode.
    expectations : tuple of float
        Conditional ``<X>``, ``<Y>``, ``<Z>``.
    empty_bases : tuple of str
        Bases without a single post-selected shot.
    """

    rho: DensityMatrix
    success_probability: float
    shots_per_basis: int
    expectations: tuple[float, float, float] = (0.0, 0.0, 0.0)
    empty_bases: tuple[str, ...] = ()


def with_ancilla(psi: Any, width: int | None = None) -> StateVector:
    """Embed a system state as ``|psi> (x) |0>`` with the ancilla on top.

    When *width* is given, the system vector is zero padded to
    ``2**(width - 1)`` first.
    """
    amps = as_vector(psi.amplitudes if isinstance(psi, StateVector) else psi, name="psi")
    size = max(2, next_power_of_two(amps.size)) if width is None else 1 << (width - 1)
    if amps.size > size:
        raise DimensionError(f"State of length {amps.size} does not fit on {width - 1} system qubit(s).")
    full = np.zeros(2 * size, dtype=np.complex128)
    full[: amps.size] = amps
    return StateVector(full)


def run_statevector(c: Circuit, initial: StateVector) -> StateVector:
    """Apply the gates of *c* in order to a normalized initial state.

    Raises
    ------
    DimensionError
        If ``initial`` does not have ``2**c.width`` amplitudes.
    DomainError
        If ``initial`` is not normalized.
    """
    if len(initial) != 1 << c.width:
        raise DimensionError(f"Initial state has {len(initial)} amplitudes, circuit needs {1 << c.width}.")
    if abs(initial.norm - 1.0) > NORM_TOLERANCE:
        raise DomainError(f"Initial state must be normalized, norm is {initial.norm:.12g}.")
    final = apply_gates(initial.amplitudes[:, None], c.gates, c.width)
    return StateVector(final[:, 0])


def postselect_ancilla(s: StateVector, ancilla: int | None = None) -> Branch:
    """Keep the amplitudes whose ancilla bit is 0.

    The remaining qubits keep their relative bit order. With the default
    ancilla (the highest qubit) this is the first half of the vector.
    """
    n = s.qubit_count
    ancilla = n - 1 if ancilla is None else ancilla
    if not 0 <= ancilla < n:
        raise DimensionError(f"Ancilla {ancilla} is outside a {n}-qubit state.")
    tensor = s.amplitudes.reshape((2,) * n)
    branch = np.take(tensor, 0, axis=n - 1 - ancilla).reshape(-1)
    return Branch(branch, float(np.vdot(branch, branch).real))


def _normalized_input(psi: Any) -> ComplexVector:
    amps = psi.amplitudes if isinstance(psi, StateVector) else as_vector(psi, name="psi")
    if abs(np.linalg.norm(amps) - 1.0) > NORM_TOLERANCE:
        raise DomainError(f"Input state must be normalized, norm is {np.linalg.norm(amps):.12g}.")
    return amps


def apply_factored(
    factors: SvdFactors,
    psi: Any,
    auto_rescale: bool = False,
    *,
    epsilon: float | None = None,
) -> Branch:
    """Apply ``u diag(sigma) v_dagger`` to *psi* through the dilation circuit.

    Builds the dilated diagonal of the singular values, runs the SVD-layout
    circuit on ``|psi> (x) |0>`` and post-selects the ancilla. With
    ``epsilon`` the diagonal is replaced by its truncated Walsh synthesis
    before execution.
    """
    amps = _normalized_input(psi)
    r = factors.dimension
    if amps.size != r:
        raise DimensionError(f"Operator is {r}x{r} but the state has {amps.size} amplitudes.")
    size = max(2, next_power_of_two(r))
    dd, report = build_dilated_diagonal(factors.singular_values, auto_rescale, size=size)
    if report.was_rescaled:
        log.warning("Operator rescaled by 1/%.12g to make it a contraction", dd.scale)
    c = build_svd_circuit(factors, dd)
    if epsilon is not None:
        c = lower_circuit(c, epsilon)
    final = run_statevector(c, with_ancilla(amps, c.width))
    branch, _ = postselect_ancilla(final)
    out = branch[:r]
    return Branch(out, float(np.vdot(out, out).real))


def apply_nonunitary(m: Any, psi: Any, auto_rescale: bool = False, *, epsilon: float | None = None) -> Branch:
    """Apply an arbitrary square operator to a state with one ancilla.

    Parameters
    ----------
    m : array_like
        Square operator; must be a contraction unless ``auto_rescale``.
    psi : StateVector or array_like
        Normalized input of the same dimension.
    auto_rescale : bool, default False
        Divide ``m`` by its largest singular value when that exceeds one.
    epsilon : float, optional
        Execute the Walsh-truncated synthesis of the dilated diagonal.

    Returns
    -------
    Branch
        ``(m / scale) @ psi`` and its squared norm, the post-selection
        success probability.

    Raises
    ------
    ContractionError
        If ``m`` is not a contraction and ``auto_rescale`` is off.

    Examples
    --------
    >>> import numpy as np
    >>> out, p = apply_nonunitary(0.5 * np.eye(2), [1, 0])
    >>> round(p, 12)
    0.25
    """
    a = as_square(m)
    return apply_factored(svd(a), psi, auto_rescale, epsilon=epsilon)


def _stream(seed: int, *keys: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), *map(int, keys)])))


def sample_measurements(
    s: StateVector,
    shots: int,
    seed: int,
    basis_changes: Sequence[Gate] = (),
    *,
    stream: int = 0,
) -> ShotRun:
    """Measure every qubit of *s* ``shots`` times after *basis_changes*.

    Samples are multinomial draws from a ``PCG64`` generator seeded with
    ``SeedSequence([seed, stream])``; pass a circuit fingerprint as
    *stream* to give every circuit its own fixed stream.
    """
    if shots < 1:
        raise DomainError(f"Shot count must be at least 1, got {shots}.")
    n = s.qubit_count
    amps = apply_gates(s.amplitudes[:, None], basis_changes, n)[:, 0]
    probs = np.abs(amps) ** 2
    probs = probs / probs.sum()
    drawn = _stream(seed, stream).multinomial(shots, probs)
    counts = {format(idx, f"0{n}b"): int(k) for idx, k in enumerate(drawn) if k}
    return ShotRun(shots=int(shots), seed=int(seed), counts=counts, width=n)


def _psd_project(rho: ComplexMatrix) -> ComplexMatrix:
    trace = float(np.trace(rho).real)
    values, vectors = hermitian_eig((rho + dagger(rho)) / 2)
    clipped = np.clip(values, 0.0, None)
    if clipped.sum() > 0:
        clipped *= trace / clipped.sum()
    return (vectors * clipped) @ dagger(vectors)


def _basis_statistics(state: StateVector, changes: tuple[Gate, ...], mode: ExecutionMode, stream: int) -> tuple[float, float, int]:
    """Return ``(n_plus, n_minus, total)`` for ancilla-0 outcomes of one basis."""
    if mode.is_exact:
        amps = apply_gates(state.amplitudes[:, None], changes, state.qubit_count)[:, 0]
        probs = np.abs(amps) ** 2
        return float(probs[0]), float(probs[1]), 1
    run = sample_measurements(state, mode.shots, mode.seed, changes, stream=stream)
    return run.counts.get("00", 0), run.counts.get("01", 0), mode.shots


def tomography_1q(
    prep: Circuit,
    shots_per_basis: int | None = None,
    seed: int = 0,
    *,
    strict: bool = True,
) -> TomographyEstimate:
    """Reconstruct the post-selected state of a one-system-qubit circuit.

    The circuit runs once per Pauli basis (Z, X via H, Y via S† then H).
    Expectations are conditioned on ancilla-0 outcomes while the success
    probability ``p0`` is pooled over all three bases. The conditional
    estimate ``(I + xX + yY + zZ) / 2`` is projected onto the PSD cone and
    scaled by ``prep.branch_scale * p0``.

    Parameters
    ----------
    prep : Circuit
        Two-qubit circuit (system qubit 0, ancilla 1) starting from ``|00>``.
    shots_per_basis : int, optional
        Shots per basis; ``None`` uses exact probabilities.
    seed : int, default 0
        Sampling seed, combined with the circuit fingerprint and basis.
    strict : bool, default True
        Raise when any basis has no post-selected shot. With ``False`` such
        a basis contributes expectation 0 and a warning is logged.

    Raises
    ------
    InsufficientStatisticsError
        If any basis has no post-selected shot, or with ``strict=False``
        if none has.
    """
    if prep.width != 2:
        raise DimensionError(f"One-qubit tomography needs a 2-qubit circuit, got width {prep.width}.")
    mode = ExecutionMode.exact() if shots_per_basis is None else ExecutionMode.sampled(shots_per_basis, seed)
    state = run_statevector(prep, StateVector.basis(2, 0))
    fingerprint = prep.fingerprint() if not mode.is_exact else 0
    expectations: dict[str, float] = {}
    empty: list[str] = []
    successes = 0.0
    for index, (name, changes) in enumerate(TOMOGRAPHY_BASES):
        plus, minus, total = _basis_statistics(state, changes, mode, fingerprint + index)
        hits = plus + minus
        successes += hits / total
        if hits > 0:
            expectations[name] = (plus - minus) / hits
        else:
            empty.append(name)
            expectations[name] = 0.0
    if len(empty) == len(TOMOGRAPHY_BASES) or (strict and empty):
        raise InsufficientStatisticsError(f"No post-selected shots in basis {', '.join(empty)}.")
    if empty:
        log.warning("Tomography basis %s had no post-selected shots; using expectation 0", ", ".join(empty))
    p0 = successes / len(TOMOGRAPHY_BASES)
    x, y, z = expectations["X"], expectations["Y"], expectations["Z"]
    rho_hat = (np.eye(2) + x * _PAULI_X + y * _PAULI_Y + z * _PAULI_Z) / 2
    rho = DensityMatrix(prep.branch_scale * p0 * _psd_project(rho_hat), bounded=mode.is_exact)
    return TomographyEstimate(
        rho=rho,
        success_probability=p0,
        shots_per_basis=0 if mode.is_exact else mode.shots,
        expectations=(x, y, z),
        empty_bases=tuple(empty),
    )


def _as_density(rho: Any) -> ComplexMatrix:
    return rho.matrix if isinstance(rho, DensityMatrix) else as_square(rho, name="density matrix")


def fidelity(rho_s: Any, rho_e: Any) -> float:
    """Uhlmann fidelity ``(Tr sqrt(sqrt(a) b sqrt(a)))^2`` of trace-normalized inputs.

    Raises
    ------
    DomainError
        If either input has zero trace.
    """
    a, b = _as_density(rho_s), _as_density(rho_e)
    if a.shape != b.shape:
        raise DimensionError(f"Cannot compare {a.shape} with {b.shape} density matrices.")
    traces = [float(np.trace(a).real), float(np.trace(b).real)]
    if min(traces) <= 1e-15:
        raise DomainError("Fidelity is undefined for a zero-trace density matrix.")
    root = hermitian_sqrt(a / traces[0])
    inner = root @ (b / traces[1]) @ root
    values, _ = hermitian_eig((inner + dagger(inner)) / 2)
    return float(np.sum(np.sqrt(np.clip(values, 0.0, None))) ** 2)


def distance(rho_s: Any, rho_e: Any) -> float:
    """Frobenius norm of the difference of the raw (un-normalized) matrices."""
    a, b = _as_density(rho_s), _as_density(rho_e)
    if a.shape != b.shape:
        raise DimensionError(f"Cannot compare {a.shape} with {b.shape} density matrices.")
    return frobenius_norm(a - b)


__all__ = [
    "Branch",
    "DensityMatrix",
    "ExecutionMode",
    "ShotRun",
    "TOMOGRAPHY_BASES",
    "TomographyEstimate",
    "apply_factored",
    "apply_nonunitary",
    "distance",
    "fidelity",
    "postselect_ancilla",
    "run_statevector",
    "sample_measurements",
    "tomography_1q",
    "with_ancilla",
]

"""Kraus channels and their evolution through the dilation circuit.

A channel ``rho -> sum_i K_i rho K_i^H`` is simulated on unitary circuits by
splitting the initial state into an ensemble of pure states and running the
one-ancilla circuit for every ``(K_i, psi_j)`` pair. The post-selected
branches, weighted by the ensemble weights, add up to the evolved state.
"""

from __future__ import annotations

import json
import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from .circuit import build_svd_circuit, lower_circuit, preparation_gates
from .dilation import ContractionReport, build_dilated_diagonal, contraction_report
from .errors import ConfigError, DimensionError, DomainError, InsufficientStatisticsError
from .numerics import (
    ComplexMatrix,
    StateVector,
    SvdFactors,
    _readonly,
    as_square,
    dagger,
    frobenius_norm,
    hermitian_eig,
    svd,
)
from .schema import CHANNEL_SCHEMA, validate_data
from .simulator import DensityMatrix, ExecutionMode, apply_factored, tomography_1q

log = logging.getLogger(__name__)

COMPLETENESS_TOLERANCE = 1e-10
ENSEMBLE_TOLERANCE = 1e-10
BRANCH_PROBABILITY_FLOOR = 1e-14
MAX_EXACT_DIMENSION = 16

_PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """A list of Kraus operators of one dimension.

    Parameters
    ----------
    operators : sequence of array_like
        Square matrices ``K_i``.
    label : str, optional
        Name used in logs and reports.
    factors : sequence of SvdFactors or None, optional
        Precomputed factorizations, one slot per operator; ``None`` slots are
        factorized numerically on demand.
    """

    operators: tuple[ComplexMatrix, ...]
    label: str = ""
    factors: tuple[SvdFactors | None, ...] | None = None

    def __post_init__(self) -> None:
        ops = tuple(_readonly(as_square(op, name="Kraus operator")) for op in self.operators)
        if not ops:
            raise DimensionError("A channel needs at least one Kraus operator.")
        dims = {op.shape[0] for op in ops}
        if len(dims) != 1:
            raise DimensionError(f"Kraus operators have mixed dimensions {sorted(dims)}.")
        object.__setattr__(self, "operators", ops)
        if self.factors is not None:
            factors = tuple(self.factors)
            if len(factors) != len(ops):
                raise DimensionError(f"Got {len(factors)} factorizations for {len(ops)} operators.")
            object.__setattr__(self, "factors", factors)

    def __len__(self) -> int:
        return len(self.operators)

    @property
    def dimension(self) -> int:
        return self.operators[0].shape[0]

    def factors_for(self, index: int) -> SvdFactors:
        """SVD of operator *index*, precomputed when available."""
        if self.factors is not None and self.factors[index] is not None:
            return self.factors[index]
        return svd(self.operators[index])

    def completeness(self) -> ComplexMatrix:
        """``sum_i K_i^H K_i``."""
        return sum(dagger(op) @ op for op in self.operators)


@dataclass(frozen=True)
class ChannelReport:
    """Contraction and completeness diagnostics of a channel.

    Parameters
    ----------
    operator_reports : tuple of ContractionReport
        One report per Kraus operator.
    completeness_residual : float
        ``||sum K^H K - I||_F``, zero for trace-preserving channels.
    adjoint_completeness_residual : float
        ``||sum K K^H - I||_F``, zero for unital channels.
    """

    operator_reports: tuple[ContractionReport, ...]
    completeness_residual: float
    adjoint_completeness_residual: float

    @property
    def max_singular_values(self) -> tuple[float, ...]:
        return tuple(r.max_singular_value for r in self.operator_reports)

    @property
    def all_contractions(self) -> bool:
        return all(r.max_singular_value <= 1.0 + COMPLETENESS_TOLERANCE for r in self.operator_reports)

    @property
    def is_trace_preserving(self) -> bool:
        return self.completeness_residual <= COMPLETENESS_TOLERANCE

    def to_dict(self) -> dict[str, Any]:
        return {
            "max_singular_values": list(self.max_singular_values),
            "all_contractions": self.all_contractions,
            "completeness_residual": self.completeness_residual,
            "adjoint_completeness_residual": self.adjoint_completeness_residual,
        }


@dataclass(frozen=True, eq=False)
class Ensemble:
    """Weighted pure states ``sum_j w_j |psi_j><psi_j|``."""

    members: tuple[tuple[float, StateVector], ...]

    def __post_init__(self) -> None:
        members = []
        for weight, state in self.members:
            state = state if isinstance(state, StateVector) else StateVector(state)
            if weight <= 0:
                raise DomainError(f"Ensemble weights must be positive, got {weight}.")
            if abs(state.norm - 1.0) > ENSEMBLE_TOLERANCE:
                raise DomainError(f"Ensemble states must be normalized, got norm {state.norm:.12g}.")
            members.append((float(weight), state))
        if not members:
            raise DimensionError("An ensemble needs at least one member.")
        if len({len(state) for _, state in members}) != 1:
            raise DimensionError("Ensemble states have mixed dimensions.")
        object.__setattr__(self, "members", tuple(members))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[tuple[float, StateVector]]:
        return iter(self.members)

    @property
    def weights(self) -> tuple[float, ...]:
        return tuple(w for w, _ in self.members)

    def density_matrix(self) -> DensityMatrix:
        return DensityMatrix(sum(w * np.outer(s.amplitudes, np.conj(s.amplitudes)) for w, s in self.members))


def dephasing_channel(theta: float, lambda0: float, lambda1: float, t: float) -> KrausChannel:
    """Pure dephasing at angular rate *theta* for time *t*.

    ``K0 = sqrt(lambda0) diag(e^{i theta t}, e^{-i theta t})`` and
    ``K1 = sqrt(lambda1) diag(e^{-i theta t}, e^{i theta t})``.

    Raises
    ------
    DomainError
        If the weights are negative or do not sum to one within ``1e-12``.
    """
    if lambda0 < 0 or lambda1 < 0 or abs(lambda0 + lambda1 - 1.0) > 1e-12:
        raise DomainError(f"Dephasing weights must be non-negative and sum to 1, got ({lambda0}, {lambda1}).")
    phase = np.exp(1j * theta * t)
    k0 = np.sqrt(lambda0) * np.diag([phase, np.conj(phase)])
    k1 = np.sqrt(lambda1) * np.diag([np.conj(phase), phase])
    return KrausChannel((k0, k1), label=f"dephasing(t={t:g})")


def amplitude_damping_channel(gamma: float, t: float) -> KrausChannel:
    """Zero-temperature amplitude damping with rate *gamma* after time *t*.

    The operators carry their closed-form SVDs: ``K0 = I diag(1, e^{-gamma t/2}) I``
    and ``K1 = I diag(sqrt(1 - e^{-gamma t}), 0) X``.
    """
    if gamma < 0 or t < 0:
        raise DomainError(f"Damping rate and time must be non-negative, got gamma={gamma}, t={t}.")
    decay = np.exp(-gamma * t)
    eye = np.eye(2, dtype=np.complex128)
    s0 = np.array([1.0, np.sqrt(decay)])
    s1 = np.array([np.sqrt(1.0 - decay), 0.0])
    k0 = np.diag(s0).astype(np.complex128)
    k1 = np.array([[0.0, s1[0]], [0.0, 0.0]], dtype=np.complex128)
    factors = (SvdFactors(eye, s0, eye), SvdFactors(eye, s1, _PAULI_X))
    return KrausChannel((k0, k1), label=f"damping(t={t:g})", factors=factors)


def identity_channel(dimension: int = 2) -> KrausChannel:
    return KrausChannel((np.eye(dimension),), label="identity")


def _as_density(rho: Any) -> DensityMatrix:
    return rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)


def operator_sum_evolve(ch: KrausChannel, rho: Any) -> DensityMatrix:
    """Classical reference ``sum_i K_i rho K_i^H``."""
    rho = _as_density(rho)
    if rho.dimension != ch.dimension:
        raise DimensionError(f"Channel acts on dimension {ch.dimension}, state has {rho.dimension}.")
    return DensityMatrix(sum(op @ rho.matrix @ dagger(op) for op in ch.operators))


def check_contraction(ch: KrausChannel) -> ChannelReport:
    """Per-operator largest singular values plus both completeness residuals."""
    eye = np.eye(ch.dimension)
    reports = tuple(contraction_report(op) for op in ch.operators)
    adjoint = sum(op @ dagger(op) for op in ch.operators)
    return ChannelReport(
        operator_reports=reports,
        completeness_residual=frobenius_norm(ch.completeness() - eye),
        adjoint_completeness_residual=frobenius_norm(adjoint - eye),
    )


def ensemble_decompose(rho: Any, members: Sequence[tuple[float, Any]] | None = None) -> Ensemble:
    """Split a density matrix into weighted pure states.

    Without *members* the eigendecomposition is used (eigenvalues as
    weights, dropping those below ``1e-12``). A supplied decomposition is
    validated against the reconstruction instead.

    Raises
    ------
    DomainError
        If supplied members reconstruct ``rho`` with a Frobenius residual
        above ``1e-10``.
    """
    rho = _as_density(rho)
    if members is not None:
        ensemble = Ensemble(tuple(members))
        residual = frobenius_norm(ensemble.density_matrix().matrix - rho.matrix)
        if residual > ENSEMBLE_TOLERANCE:
            raise DomainError(f"Ensemble does not reconstruct the density matrix (residual {residual:.3e}).")
        return ensemble
    values, vectors = hermitian_eig(rho.matrix)
    kept = [(float(v), StateVector(vectors[:, i])) for i, v in enumerate(values) if v > 1e-12]
    if not kept:
        raise DomainError("Cannot decompose a zero density matrix.")
    return Ensemble(tuple(kept))


def damping_initial_state() -> DensityMatrix:
    """The mixed state ``[[1, 1], [1, 3]] / 4`` used in the damping study."""
    return DensityMatrix(np.array([[1, 1], [1, 3]], dtype=np.complex128) / 4)


def damping_reference_ensemble() -> Ensemble:
    """``|1>`` and ``|+>`` with weight one half each, a non-orthogonal split of :func:`damping_initial_state`."""
    plus = np.array([1, 1]) / np.sqrt(2)
    return ensemble_decompose(damping_initial_state(), [(0.5, [0, 1]), (0.5, plus)])


def evolve_on_simulator(
    ch: KrausChannel,
    ens: Ensemble,
    mode: ExecutionMode | None = None,
    *,
    strict: bool = True,
    epsilon: float | None = None,
) -> DensityMatrix:
    """Evolve an ensemble through a channel with dilation circuits.

    Every Kraus operator is applied to every ensemble member through its SVD
    circuit. In exact mode the post-selected vectors are used directly; in
    shots mode each pair is reconstructed by one-qubit tomography. A pair
    whose exact branch probability is zero contributes nothing; any other
    pair that fails tomography raises.

    Parameters
    ----------
    ch : KrausChannel
        Channel; every operator must be a contraction.
    ens : Ensemble
        Initial state as weighted pure states.
    mode : ExecutionMode, optional
        Defaults to exact.
    strict : bool, default True
        Forwarded to :func:`~dilatia.simulator.tomography_1q`.
    epsilon : float, optional
        Use the Walsh-truncated diagonal synthesis.

    Raises
    ------
    InsufficientStatisticsError
        If tomography of a pair with non-zero branch probability fails.
    """
    mode = mode or ExecutionMode.exact()
    dim = len(ens.members[0][1])
    if dim != ch.dimension:
        raise DimensionError(f"Channel acts on dimension {ch.dimension}, ensemble has {dim}.")
    if mode.is_exact and dim > MAX_EXACT_DIMENSION:
        raise DimensionError(f"Exact evolution supports dimension <= {MAX_EXACT_DIMENSION}, got {dim}.")
    if not mode.is_exact and dim != 2:
        raise DimensionError(f"Sampled evolution needs a single-qubit channel, got dimension {dim}.")
    if check_contraction(ch).completeness_residual > COMPLETENESS_TOLERANCE:
        log.warning("Channel %s is not trace preserving", ch.label or "(unnamed)")
    acc = np.zeros((dim, dim), dtype=np.complex128)
    for i in range(len(ch)):
        factors = ch.factors_for(i)
        for j, (weight, psi) in enumerate(ens):
            if mode.is_exact:
                out, _ = apply_factored(factors, psi, epsilon=epsilon)
                acc += weight * np.outer(out, np.conj(out))
                continue
            dd, _ = build_dilated_diagonal(factors.singular_values, size=2)
            c = build_svd_circuit(factors, dd).prepend(*preparation_gates(psi.amplitudes, (0,)))
            if epsilon is not None:
                c = lower_circuit(c, epsilon)
            try:
                estimate = tomography_1q(c, mode.shots, mode.seed, strict=strict)
            except InsufficientStatisticsError as exc:
                branch = ch.operators[i] @ psi.amplitudes
                probability = float(np.vdot(branch, branch).real)
                if probability > BRANCH_PROBABILITY_FLOOR:
                    raise InsufficientStatisticsError(
                        f"Kraus operator {i} on ensemble member {j} (branch probability {probability:.3g}): {exc}"
                    ) from exc
                log.debug("Kraus operator %d on member %d: branch probability is zero, contributing 0", i, j)
                continue
            acc += weight * estimate.rho.matrix
    return DensityMatrix(acc, bounded=mode.is_exact)


def _complex_matrix(rows: list[list[list[float]]]) -> ComplexMatrix:
    return np.array([[re + 1j * im for re, im in row] for row in rows], dtype=np.complex128)


def _channel_params(spec: dict[str, Any], names: tuple[str, ...], source: str) -> dict[str, float]:
    params = dict(spec.get("params", {}))
    missing = [name for name in names if name not in params]
    unknown = sorted(set(params) - set(names))
    if missing or unknown:
        raise ConfigError(f"{source}: {spec['type']} channel needs params {list(names)}; missing {missing}, unknown {unknown}.")
    return {name: float(params[name]) for name in names}


def load_channel(source: str | Path | dict[str, Any]) -> KrausChannel:
    """Build a channel from a specification file or its parsed JSON.

    ``{"type": "dephasing", "params": {"theta", "lambda0", "lambda1", "t"}}``,
    ``{"type": "damping", "params": {"gamma", "t"}}`` or
    ``{"type": "custom", "kraus": [...]}`` with entries as ``[re, im]`` pairs.

    Raises
    ------
    ConfigError
        On unreadable JSON or a specification that fails validation.
    """
    if isinstance(source, dict):
        spec, name = source, "channel"
    else:
        name = str(source)
        try:
            spec = json.loads(Path(source).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"{name}: cannot read channel file: {exc}") from exc
    validate_data(spec, CHANNEL_SCHEMA, source=name)
    kind = spec.get("type")
    if kind == "dephasing":
        channel = dephasing_channel(**_channel_params(spec, ("theta", "lambda0", "lambda1", "t"), name))
    elif kind == "damping":
        channel = amplitude_damping_channel(**_channel_params(spec, ("gamma", "t"), name))
    elif kind == "custom":
        if "kraus" not in spec:
            raise ConfigError(f"{name}: custom channel needs a 'kraus' list.")
        try:
            channel = KrausChannel(tuple(_complex_matrix(op) for op in spec["kraus"]))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{name}: invalid Kraus matrices: {exc}") from exc
    else:
        raise ConfigError(f"{name}: unknown channel type {kind!r}.")
    if "label" in spec:
        channel = KrausChannel(channel.operators, label=spec["label"], factors=channel.factors)
    return channel


__all__ = [
    "ChannelReport",
    "Ensemble",
    "KrausChannel",
    "amplitude_damping_channel",
    "check_contraction",
    "damping_initial_state",
    "damping_reference_ensemble",
    "dephasing_channel",
    "ensemble_decompose",
    "evolve_on_simulator",
    "identity_channel",
    "load_channel",
    "operator_sum_evolve",
]

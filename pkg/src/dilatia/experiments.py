"""Experiment drivers behind the ``dilatia`` command.

Each driver takes an :class:`~dilatia.config.ExperimentConfig`, runs the
simulations in a fixed order and returns a :class:`RunReport`. Reports are
written as CSV (12 significant digits) plus a ``run.json`` with the
configuration echo, seed and package version; the dynamics experiments
also draw SVG figures.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd
from packaging.version import Version

from .__version import __version__
from .channels import (
    Ensemble,
    KrausChannel,
    amplitude_damping_channel,
    damping_initial_state,
    damping_reference_ensemble,
    dephasing_channel,
    ensemble_decompose,
    evolve_on_simulator,
    load_channel,
)
from .circuit import (
    build_stateprep_circuit,
    build_svd_circuit,
    circuit_matrix,
    decompose_diagonal_approx,
    export_qasm,
    gate_counts,
    lower_circuit,
)
from .config import ExperimentConfig
from .dilation import build_dilated_diagonal
from .errors import ConfigError, ContractionError, InsufficientStatisticsError
from .numerics import ComplexVector, frobenius_norm, parse_matrix, svd
from .plotting import plot_bloch_plane, plot_coherence, plot_damping
from .simulator import DensityMatrix, ExecutionMode, distance, fidelity, tomography_1q

log = logging.getLogger(__name__)

CSV_FLOAT_FORMAT = "%.12g"

PREP_COLUMNS = ["shots", "mean_distance", "std_distance", "mean_fidelity", "std_fidelity"]
DYNAMICS_COLUMNS = [
    "t",
    "rho00",
    "rho11",
    "re01",
    "im01",
    "re01_exact",
    "im01_exact",
    "rho00_exact",
    "rho11_exact",
    "x",
    "y",
    "z",
    "x_exact",
    "y_exact",
    "z_exact",
]


@dataclass
class RunReport:
    """Tabular result of one experiment.

    Parameters
    ----------
    experiment : str
        Experiment name.
    table : pandas.DataFrame
        Result rows in a fixed column order.
    metadata : dict
        Seed, configuration echo, package version and experiment summaries.
    files : list of Path
        Files written so far.
    """

    experiment: str
    table: pd.DataFrame
    metadata: dict[str, Any] = field(default_factory=dict)
    files: list[Path] = field(default_factory=list)

    def to_csv(self, path: Path) -> Path:
        self.table.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
        self.files.append(path)
        log.info("Wrote %s", path)
        return path

    def write_metadata(self, directory: Path) -> Path:
        path = directory / "run.json"
        path.write_text(json.dumps(self.metadata, indent=2, sort_keys=True, default=float) + "\n")
        self.files.append(path)
        return path

    def summary(self) -> str:
        """Plain-text table for terminal output."""
        return self.table.to_string(index=False, float_format=lambda v: f"{v:.6g}")


def _metadata(cfg: ExperimentConfig, **extra: Any) -> dict[str, Any]:
    return {
        "experiment": cfg.experiment,
        "seed": cfg.seed,
        "version": Version(__version__).base_version,
        "config": cfg.to_dict(),
        **extra,
    }


def _output_dir(cfg: ExperimentConfig) -> Path:
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def gen_random_substates(n: int, seed: int) -> list[ComplexVector]:
    """First two amplitudes of ``n`` Haar-random 4-amplitude states.

    Each state is drawn as 8 standard normals (real and imaginary parts
    interleaved) and normalized, so the returned vectors have norm at most
    one.
    """
    if n < 1:
        raise ConfigError(f"Number of states must be at least 1, got {n}.")
    rng = np.random.Generator(np.random.PCG64(seed))
    draws = rng.standard_normal((n, 8))
    amps = draws[:, 0::2] + 1j * draws[:, 1::2]
    amps /= np.linalg.norm(amps, axis=1, keepdims=True)
    return [row[:2].copy() for row in amps]


def run_prep_experiment(cfg: ExperimentConfig, *, write: bool = True) -> RunReport:
    """Prepare random sub-normalized states and score their tomography.

    For every state the preparation circuit is reconstructed at each shot
    count; the un-normalized Frobenius distance and the fidelity of the
    normalized states are averaged over states. Exact mode gives a single
    row with ``shots = 0``.
    """
    states = gen_random_substates(cfg.n_states, cfg.seed)
    norms = np.array([np.linalg.norm(s) for s in states])
    log.info("prep: %d states, mean norm %.4f +/- %.4f", len(states), norms.mean(), norms.std())
    schedule: list[int | None] = [None] if cfg.is_exact else [int(n) for n in cfg.shots]
    records = []
    for index, phi in enumerate(states):
        circuit = build_stateprep_circuit(phi, 1)
        exact = DensityMatrix.from_state(phi)
        for shots in schedule:
            try:
                estimate = tomography_1q(circuit, shots, cfg.seed, strict=cfg.strict_tomography)
            except InsufficientStatisticsError as exc:
                raise InsufficientStatisticsError(f"state {index} at {shots} shots: {exc}") from exc
            records.append(
                {
                    "shots": shots or 0,
                    "distance": distance(estimate.rho, exact),
                    "fidelity": fidelity(estimate.rho, exact),
                }
            )
        log.debug("prep: state %d done", index)
    samples = pd.DataFrame.from_records(records)
    table = (
        samples.groupby("shots", sort=True)
        .agg(
            mean_distance=("distance", "mean"),
            std_distance=("distance", "std"),
            mean_fidelity=("fidelity", "mean"),
            std_fidelity=("fidelity", "std"),
        )
        .fillna(0.0)
        .reset_index()[PREP_COLUMNS]
    )
    report = RunReport(
        "prep",
        table,
        _metadata(cfg, mean_norm=float(norms.mean()), std_norm=float(norms.std(ddof=1)) if norms.size > 1 else 0.0),
    )
    if write:
        out = _output_dir(cfg)
        report.to_csv(out / "table1.csv")
        report.write_metadata(out)
    return report


def _dynamics_mode(cfg: ExperimentConfig) -> ExecutionMode:
    if cfg.is_exact:
        return ExecutionMode.exact()
    if len(cfg.shots) > 1:
        log.warning("Dynamics experiments use one shot count; taking %d", cfg.shots[0])
    return ExecutionMode.sampled(int(cfg.shots[0]), cfg.seed)


def _dynamics_row(t: float, rho: DensityMatrix, exact: DensityMatrix) -> dict[str, float]:
    m, e = rho.matrix, exact.matrix
    x, y, z = rho.bloch_vector()
    xe, ye, ze = exact.bloch_vector()
    return {
        "t": float(t),
        "rho00": float(m[0, 0].real),
        "rho11": float(m[1, 1].real),
        "re01": float(m[0, 1].real),
        "im01": float(m[0, 1].imag),
        "re01_exact": float(e[0, 1].real),
        "im01_exact": float(e[0, 1].imag),
        "rho00_exact": float(e[0, 0].real),
        "rho11_exact": float(e[1, 1].real),
        "x": x,
        "y": y,
        "z": z,
        "x_exact": xe,
        "y_exact": ye,
        "z_exact": ze,
    }


def _evolve_grid(cfg: ExperimentConfig, channel_at: Any, ensemble: Ensemble, exact_at: Any) -> pd.DataFrame:
    mode = _dynamics_mode(cfg)
    rows = []
    for t in cfg.time_grid():
        channel: KrausChannel = channel_at(float(t))
        rho = evolve_on_simulator(channel, ensemble, mode, strict=cfg.strict_tomography, epsilon=cfg.epsilon)
        rows.append(_dynamics_row(t, rho, exact_at(float(t))))
        log.debug("%s: t=%g done", cfg.experiment, t)
    return pd.DataFrame.from_records(rows, columns=DYNAMICS_COLUMNS)


def dephasing_reference(theta: float, lambda0: float, lambda1: float, t: float) -> DensityMatrix:
    """Closed-form dephased ``|+><+|``: populations 1/2, ``rho01 = (l0 e^{2i theta t} + l1 e^{-2i theta t}) / 2``."""
    rho01 = 0.5 * (lambda0 * np.exp(2j * theta * t) + lambda1 * np.exp(-2j * theta * t))
    return DensityMatrix(np.array([[0.5, rho01], [np.conj(rho01), 0.5]]))


def damping_reference(gamma: float, t: float) -> DensityMatrix:
    """Closed-form damped ``[[1, 1], [1, 3]] / 4``: ``rho11 = 3/4 e^{-gamma t}``, ``rho01 = 1/4 e^{-gamma t/2}``."""
    rho11 = 0.75 * np.exp(-gamma * t)
    rho01 = 0.25 * np.exp(-gamma * t / 2)
    return DensityMatrix(np.array([[1 - rho11, rho01], [rho01, rho11]]))


def run_dephasing(cfg: ExperimentConfig, *, write: bool = True) -> RunReport:
    """Dephasing of ``|+>`` over one coherence period, with Bloch-plane coordinates."""
    plus = np.array([1, 1]) / np.sqrt(2)
    ensemble = Ensemble(((1.0, plus),))
    table = _evolve_grid(
        cfg,
        lambda t: dephasing_channel(cfg.theta, cfg.lambda0, cfg.lambda1, t),
        ensemble,
        lambda t: dephasing_reference(cfg.theta, cfg.lambda0, cfg.lambda1, t),
    )
    period = float(np.pi / abs(cfg.theta)) if cfg.theta else None
    report = RunReport("dephasing", table, _metadata(cfg, coherence_period=period))
    if write:
        out = _output_dir(cfg)
        report.to_csv(out / "dephasing.csv")
        report.files.append(plot_coherence(table, out / "fig3_coherence.svg"))
        report.files.append(plot_bloch_plane(table, out / "fig4_bloch.svg"))
        report.write_metadata(out)
    return report


def run_damping(cfg: ExperimentConfig, *, write: bool = True) -> RunReport:
    """Amplitude damping of the mixed state ``[[1, 1], [1, 3]] / 4``.

    The state is split into ``|1>`` and ``|+>`` (``dynamics_ensemble =
    "reference"``) or into its eigenvectors (``"eigen"``).
    """
    if cfg.dynamics_ensemble == "eigen":
        ensemble = ensemble_decompose(damping_initial_state())
    else:
        ensemble = damping_reference_ensemble()
    table = _evolve_grid(
        cfg,
        lambda t: amplitude_damping_channel(cfg.gamma, t),
        ensemble,
        lambda t: damping_reference(cfg.gamma, t),
    )
    report = RunReport(
        "damping",
        table,
        _metadata(cfg, ensemble=[{"weight": w, "state": [[z.real, z.imag] for z in s.amplitudes]} for w, s in ensemble]),
    )
    if write:
        out = _output_dir(cfg)
        report.to_csv(out / "damping.csv")
        report.files.append(plot_damping(table, out / "fig5_damping.svg"))
        report.write_metadata(out)
    return report


def read_operators(path: str | Path) -> list[tuple[str, np.ndarray, Any]]:
    """Operators named in a decompose input file.

    ``.json`` files are channel specifications (one entry per Kraus operator,
    carrying any closed-form SVD); other files use the matrix text format, a
    single row with several entries being read as a diagonal.
    """
    path = Path(path)
    if path.suffix.lower() == ".json":
        channel = load_channel(path)
        return [(f"K{i}", op, channel.factors_for(i)) for i, op in enumerate(channel.operators)]
    try:
        m = parse_matrix(path.read_text())
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read matrix: {exc}") from exc
    if m.shape[0] == 1 and m.shape[1] > 1:
        m = np.diag(m[0])
    return [("M", m, None)]


def _decompose_operator(name: str, m: np.ndarray, factors: Any, cfg: ExperimentConfig, out: Path | None, files: list[Path]) -> dict[str, Any]:
    if m.shape[0] != m.shape[1]:
        raise ConfigError(f"{name}: operator must be square, got {m.shape[0]}x{m.shape[1]}.")
    factors = factors or svd(m)
    r = factors.dimension
    size = max(2, 1 << (r - 1).bit_length())
    peak = factors.max_singular_value
    if peak > 1.0 + 1e-12 and not cfg.auto_rescale:
        raise ContractionError(f"{name}: largest singular value {peak:.12g} exceeds 1; pass --auto-rescale to divide by it.", peak)
    dd, report = build_dilated_diagonal(factors.singular_values, cfg.auto_rescale, size=size)
    circuit = build_svd_circuit(factors, dd)
    diag_qubits = dd.qubit_count + 1
    exact = decompose_diagonal_approx(dd.phases, 0.0)
    lowered = lower_circuit(circuit)
    row: dict[str, Any] = {
        "operator": name,
        "dimension": r,
        "max_singular_value": peak,
        "was_rescaled": report.was_rescaled,
        "singular_values": " ".join(f"{s:.12g}" for s in factors.singular_values),
        "diagonal_gates": exact.gate_count,
        "diagonal_bound": 2 ** (diag_qubits + 1) - 3,
        **{f"count_{kind}": n for kind, n in gate_counts(lowered).items()},
    }
    if cfg.epsilon is not None:
        approx = decompose_diagonal_approx(dd.phases, cfg.epsilon)
        approx_circuit = lower_circuit(circuit, cfg.epsilon)
        block = circuit_matrix(approx_circuit)[:r, :r]
        row.update(
            approx_diagonal_gates=approx.gate_count,
            approx_dropped=approx.dropped,
            phase_error_bound=approx.error_bound,
            operator_error=frobenius_norm(block - m / dd.scale),
        )
        lowered = approx_circuit
    if out is not None and cfg.qasm:
        path = out / f"decompose_{name}.qasm"
        path.write_text(export_qasm(lowered, opaque=True))
        files.append(path)
        log.info("Wrote %s", path)
    return row


def run_decompose(cfg: ExperimentConfig, operators: list[tuple[str, np.ndarray, Any]] | None = None, *, write: bool = True) -> RunReport:
    """SVD, contraction check and gate counts for one or more operators.

    Operators come from *operators* or from ``cfg.input``. Every operator is
    factorized, its singular values dilated and the SVD-layout circuit
    lowered to elementary gates; the diagonal gate count is reported with
    its ``2^(d+1) - 3`` bound, and with ``epsilon`` the truncated synthesis
    and the resulting operator error are reported too.

    Raises
    ------
    ContractionError
        If an operator is not a contraction and ``auto_rescale`` is off.
    """
    if operators is None:
        if not cfg.input:
            raise ConfigError("The decompose experiment needs an input file.")
        operators = read_operators(cfg.input)
    out = _output_dir(cfg) if write else None
    files: list[Path] = []
    rows = [_decompose_operator(name, m, factors, cfg, out, files) for name, m, factors in operators]
    table = pd.DataFrame.from_records(rows)
    # operators without a given gate kind leave gaps in the count columns
    counts = [c for c in table.columns if c.startswith("count_")]
    table[counts] = table[counts].fillna(0).astype(int)
    report = RunReport("decompose", table, _metadata(cfg), files)
    if out is not None:
        report.to_csv(out / "decompose.csv")
        report.write_metadata(out)
    return report


RUNNERS = {
    "prep": run_prep_experiment,
    "dephasing": run_dephasing,
    "damping": run_damping,
    "decompose": run_decompose,
}


def run_experiment(cfg: ExperimentConfig, *, write: bool = True) -> RunReport:
    """Dispatch to the driver named by ``cfg.experiment``."""
    log.info("Running %s (seed %d, mode %s)", cfg.experiment, cfg.seed, cfg.mode)
    return RUNNERS[cfg.experiment](cfg, write=write)


__all__ = [
    "RunReport",
    "damping_reference",
    "dephasing_reference",
    "gen_random_substates",
    "read_operators",
    "run_damping",
    "run_decompose",
    "run_dephasing",
    "run_experiment",
    "run_prep_experiment",
]

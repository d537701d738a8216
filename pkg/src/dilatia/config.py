"""Experiment configuration.

Configurations are ``param.Parameterized`` objects. JSON config files are
validated against the schema ``param`` derives from the class before the
object is built, and command line flags are applied on top.
"""

from __future__ import annotations

import json
import logging
import math
from pathlib import Path
from typing import Any

import numpy as np
import param

from .errors import ConfigError
from .schema import param_to_jsonschema, validate_data

log = logging.getLogger(__name__)

EXPERIMENTS = ("prep", "dephasing", "damping", "decompose")

PREP_SHOTS = [2**6, 2**8, 2**10, 2**12, 2**14]
DYNAMICS_SHOTS = [32000]


class ExperimentConfig(param.Parameterized):
    """Parameters of one experiment run.

    Times are in picoseconds, ``theta`` in rad/ps and ``gamma`` in 1/ps.
    Use :meth:`defaults_for` or :func:`load_config` to get the defaults of
    a particular experiment.
    """

    experiment = param.Selector(default="prep", objects=list(EXPERIMENTS), doc="Experiment to run.")

    seed = param.Integer(default=2024, bounds=(0, None), doc="Seed for state generation and shot sampling.")

    mode = param.Selector(default="shots", objects=["exact", "shots"], doc="Use exact probabilities or sampled shots.")

    shots = param.List(default=list(PREP_SHOTS), item_type=int, doc="Shot counts per tomography basis.")

    n_states = param.Integer(default=98, bounds=(1, None), doc="Number of random sub-normalized states.")

    theta = param.Number(default=0.5, doc="Dephasing angle rate in rad/ps.")

    lambda0 = param.Number(default=0.7, bounds=(0, 1), doc="Weight of the first dephasing Kraus operator.")

    lambda1 = param.Number(default=0.3, bounds=(0, 1), doc="Weight of the second dephasing Kraus operator.")

    gamma = param.Number(default=0.15, bounds=(0, None), doc="Amplitude damping rate in 1/ps.")

    t_start = param.Number(default=0.0, bounds=(0, None), doc="First time point in ps.")

    t_end = param.Number(default=None, allow_None=True, bounds=(0, None), doc="Last time point in ps; one coherence period for dephasing.")

    t_step = param.Number(default=None, allow_None=True, bounds=(0, None), inclusive_bounds=(False, True), doc="Grid spacing in ps.")

    n_points = param.Integer(default=None, allow_None=True, bounds=(2, None), doc="Number of grid points when t_step is not set.")

    output_dir = param.String(default="results", doc="Directory receiving CSV, SVG, QASM and run.json files.")

    epsilon = param.Number(default=None, allow_None=True, bounds=(0, None), doc="Walsh truncation threshold for approximate diagonal synthesis.")

    qasm = param.Boolean(default=False, doc="Write OpenQASM 2.0 files in the decompose experiment.")

    auto_rescale = param.Boolean(default=False, doc="Divide non-contractions by their largest singular value.")

    input = param.String(default=None, allow_None=True, doc="Matrix text file or channel JSON for the decompose experiment.")

    strict_tomography = param.Boolean(default=True, doc="Fail when a tomography basis has no post-selected shot; the prep experiment turns this off.")

    dynamics_ensemble = param.Selector(default="reference", objects=["reference", "eigen"], doc="Initial-state split used by the damping experiment.")

    @classmethod
    def defaults_for(cls, experiment: str) -> dict[str, Any]:
        """Parameter values that differ per experiment."""
        if experiment not in EXPERIMENTS:
            raise ConfigError(f"Unknown experiment {experiment!r}; expected one of {', '.join(EXPERIMENTS)}.")
        defaults: dict[str, Any] = {"experiment": experiment}
        if experiment == "prep":
            defaults.update(shots=list(PREP_SHOTS), strict_tomography=False)
        elif experiment == "dephasing":
            defaults.update(shots=list(DYNAMICS_SHOTS), n_points=25)
        elif experiment == "damping":
            defaults.update(shots=list(DYNAMICS_SHOTS), t_end=30.0, t_step=1.0)
        return defaults

    @property
    def is_exact(self) -> bool:
        return self.mode == "exact"

    def check(self) -> None:
        """Cross-field validation that ``param`` bounds cannot express."""
        if not self.shots or any(int(n) < 1 for n in self.shots):
            raise ConfigError(f"Shot counts must be positive integers, got {self.shots}.")
        if self.experiment == "dephasing" and abs(self.lambda0 + self.lambda1 - 1.0) > 1e-12:
            raise ConfigError(f"lambda0 + lambda1 must be 1, got {self.lambda0 + self.lambda1}.")
        if self.experiment == "dephasing" and self.t_end is None and self.theta == 0:
            raise ConfigError("theta = 0 has no coherence period; set t_end.")
        end = self.resolved_t_end
        if end is not None and end < self.t_start:
            raise ConfigError(f"t_end {end} is before t_start {self.t_start}.")
        if self.experiment == "decompose" and not self.input:
            raise ConfigError("The decompose experiment needs an input file.")

    @property
    def resolved_t_end(self) -> float | None:
        if self.t_end is not None:
            return float(self.t_end)
        if self.experiment == "dephasing" and self.theta:
            return math.pi / abs(self.theta)
        return None

    def time_grid(self) -> np.ndarray:
        """Time points from ``t_start`` to the resolved ``t_end``, endpoint included."""
        end = self.resolved_t_end
        if end is None:
            raise ConfigError(f"No time grid for experiment {self.experiment!r}; set t_end.")
        if self.t_step is not None:
            count = int(math.floor((end - self.t_start) / self.t_step + 1e-9)) + 1
            return self.t_start + self.t_step * np.arange(count)
        return np.linspace(self.t_start, end, self.n_points or 25)

    def to_dict(self) -> dict[str, Any]:
        """JSON-serializable echo of every parameter."""
        return {name: getattr(self, name) for name in param_to_jsonschema(type(self))["properties"]}


def config_schema() -> dict[str, Any]:
    return param_to_jsonschema(ExperimentConfig)


def load_config(
    experiment: str,
    path: str | Path | None = None,
    overrides: dict[str, Any] | None = None,
) -> ExperimentConfig:
    """Build a configuration from defaults, an optional JSON file and overrides.

    Parameters
    ----------
    experiment : str
        Experiment name; a file naming a different one is rejected.
    path : str or Path, optional
        JSON file whose keys are :class:`ExperimentConfig` parameter names.
    overrides : dict, optional
        Values applied last; ``None`` values are ignored.

    Raises
    ------
    ConfigError
        On unreadable files, unknown keys, values rejected by the schema or
        by ``param``, and failed cross-field checks.
    """
    data: dict[str, Any] = {}
    if path is not None:
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"{path}: cannot read config: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: config must be a JSON object.")
        validate_data(data, config_schema(), source=str(path))
        unknown = sorted(set(data) - set(config_schema()["properties"]))
        if unknown:
            raise ConfigError(f"{path}: unknown config keys {unknown}.")
        if data.get("experiment", experiment) != experiment:
            raise ConfigError(f"{path}: config is for {data['experiment']!r}, not {experiment!r}.")
    values = ExperimentConfig.defaults_for(experiment)
    values.update(data)
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    try:
        cfg = ExperimentConfig(**values)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"Invalid configuration: {exc}") from exc
    cfg.check()
    log.debug("Loaded configuration %s", cfg.to_dict())
    return cfg


__all__ = ["EXPERIMENTS", "ExperimentConfig", "config_schema", "load_config"]

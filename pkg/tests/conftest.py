"""Holds fixtures and configuration for the test suite."""

import numpy as np
import pytest

optional_markers = {
    "slow": {
        "help": "Runs full-size experiment tests",
        "marker-descr": "Full-size experiment marker",
        "skip-reason": "Test only runs with the --slow option.",
    },
}


def pytest_addoption(parser):
    """Add extra command line options."""
    for marker, info in optional_markers.items():
        parser.addoption(f"--{marker}", action="store_true", default=False, help=info["help"])


def pytest_configure(config):
    """Add extra markers."""
    for marker, info in optional_markers.items():
        config.addinivalue_line("markers", "{}: {}".format(marker, info["marker-descr"]))


def pytest_collection_modifyitems(config, items):
    skipped, selected = [], []
    markers = [m for m in optional_markers if config.getoption(f"--{m}")]
    for item in items:
        optional = [m for m in optional_markers if m in item.keywords]
        if optional and not any(m in markers for m in optional):
            skipped.append(item)
        else:
            selected.append(item)

    config.hook.pytest_deselected(items=skipped)
    items[:] = selected


def random_matrix(rng: np.random.Generator, r: int) -> np.ndarray:
    return rng.standard_normal((r, r)) + 1j * rng.standard_normal((r, r))


def random_contraction(rng: np.random.Generator, r: int) -> np.ndarray:
    """Random matrix scaled so its largest singular value lies in (0.1, 1)."""
    m = random_matrix(rng, r)
    return m * rng.uniform(0.1, 1.0) / np.linalg.norm(m, 2)


def random_state(rng: np.random.Generator, r: int) -> np.ndarray:
    v = rng.standard_normal(r) + 1j * rng.standard_normal(r)
    return v / np.linalg.norm(v)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def plus() -> np.ndarray:
    return np.array([1, 1], dtype=np.complex128) / np.sqrt(2)

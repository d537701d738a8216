"""One-ancilla unitary dilation of non-unitary diagonal operators.

A diagonal operator ``S = diag(s_i)`` with ``|s_i| <= 1`` is embedded in the
unitary block diagonal ``S_plus (+) S_minus`` where

    s_i(+/-) = s_i +/- i * sqrt(1 - |s_i|^2) * s_i / |s_i|

Both blocks are unit-modulus diagonals and ``(S_plus + S_minus) / 2 = S``.
Sandwiching the block unitary between Hadamards on the ancilla applies
``S`` to the ancilla-0 branch.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any

import numpy as np

from .errors import ContractionError, DimensionError
from .numerics import (
    ComplexMatrix,
    ComplexVector,
    SvdFactors,
    _readonly,
    as_square,
    as_vector,
    dagger,
    hermitian_eig,
    next_power_of_two,
    svd,
)

log = logging.getLogger(__name__)

CLAMP_BAND = 1e-12
SZNAGY_TOLERANCE = 1e-10


@dataclass(frozen=True)
class ContractionReport:
    """Summary of how far an operator is from being a contraction.

    Parameters
    ----------
    max_singular_value : float
        Largest singular value (largest entry modulus for a diagonal).
    was_rescaled : bool
        Whether the operator was divided by ``max_singular_value``.
    shifted_operator_norm_bound : float
        Operator norm after any rescaling; at most one once dilatable.
    """

    max_singular_value: float
    was_rescaled: bool
    shifted_operator_norm_bound: float

    @property
    def is_contraction(self) -> bool:
        return self.max_singular_value <= 1.0 + CLAMP_BAND

    def to_dict(self) -> dict[str, Any]:
        return {
            "max_singular_value": self.max_singular_value,
            "was_rescaled": self.was_rescaled,
            "shifted_operator_norm_bound": self.shifted_operator_norm_bound,
        }


@dataclass(frozen=True)
class DilatedDiagonal:
    """Unit-modulus diagonals whose average is a contraction diagonal.

    Parameters
    ----------
    sigma_plus, sigma_minus : ComplexVector
        Unit-modulus entries of the ancilla-0 and ancilla-1 blocks.
    scale : float
        Factor the input diagonal was divided by (1 when not rescaled).
    original : ComplexVector
        The rescaled and padded diagonal, ``(sigma_plus + sigma_minus) / 2``.
    """

    sigma_plus: ComplexVector
    sigma_minus: ComplexVector
    scale: float
    original: ComplexVector

    def __post_init__(self) -> None:
        sizes = {np.size(self.sigma_plus), np.size(self.sigma_minus), np.size(self.original)}
        if len(sizes) != 1:
            raise DimensionError(f"Dilated diagonal blocks have mismatched lengths {sorted(sizes)}.")
        for name in ("sigma_plus", "sigma_minus", "original"):
            object.__setattr__(self, name, _readonly(getattr(self, name)))

    def __len__(self) -> int:
        return self.original.size

    @property
    def qubit_count(self) -> int:
        """Number of system qubits addressed by one block."""
        return self.original.size.bit_length() - 1

    @property
    def entries(self) -> ComplexVector:
        """Diagonal of the full block unitary, ancilla-0 block first."""
        return np.concatenate([self.sigma_plus, self.sigma_minus])

    @property
    def phases(self) -> np.ndarray:
        """Phase angles of :attr:`entries` in radians."""
        return np.angle(self.entries)

    def unitary(self) -> ComplexMatrix:
        """Dense ``S_plus (+) S_minus``."""
        return np.diag(self.entries)


def _check_modulus(values: ComplexVector, *, what: str) -> float:
    peak = float(np.max(np.abs(values))) if values.size else 0.0
    if peak > 1.0 + CLAMP_BAND:
        raise ContractionError(f"{what} has an entry of modulus {peak:.12g} > 1; enable rescaling or divide by the largest value.", peak)
    return peak


def _lift(values: ComplexVector) -> tuple[ComplexVector, ComplexVector]:
    mags = np.abs(values)
    unit = np.ones_like(values)
    np.divide(values, mags, out=unit, where=mags > 0)
    mags = np.minimum(mags, 1.0)
    body = mags * unit
    defect = 1j * np.sqrt(1.0 - mags**2) * unit
    return body + defect, body - defect


def lift_entry(sigma: complex) -> tuple[complex, complex]:
    """Split one diagonal entry into its two unit-modulus halves.

    Writing ``sigma = |sigma| e^{i phi}`` the halves are
    ``sigma +/- i sqrt(1 - |sigma|^2) e^{i phi}``. At ``sigma = 0`` the
    phase is taken as 0, giving ``(+i, -i)``.

    Raises
    ------
    ContractionError
        If ``|sigma| > 1 + 1e-12``. Values inside the band are clamped to
        unit modulus.

    Examples
    --------
    >>> lift_entry(0.6)
    ((0.6+0.8j), (0.6-0.8j))
    """
    value = np.array([sigma], dtype=np.complex128)
    _check_modulus(value, what="Diagonal entry")
    plus, minus = _lift(value)
    return complex(plus[0]), complex(minus[0])


def build_dilated_diagonal(diag: Any, auto_rescale: bool = False, *, size: int | None = None) -> tuple[DilatedDiagonal, ContractionReport]:
    """Dilate a diagonal operator into two unit-modulus diagonals.

    Parameters
    ----------
    diag : array_like
        Diagonal entries (complex allowed).
    auto_rescale : bool, default False
        Divide the diagonal by its largest modulus when that exceeds one.
    size : int, optional
        Pad to this length instead of the next power of two. Must be a power
        of two no smaller than ``len(diag)``.

    Returns
    -------
    (DilatedDiagonal, ContractionReport)
        Padding entries are 1, so unused basis states are left untouched.

    Raises
    ------
    ContractionError
        If an entry exceeds unit modulus and ``auto_rescale`` is off.
    """
    values = as_vector(diag, name="diagonal")
    peak = float(np.max(np.abs(values)))
    rescale = auto_rescale and peak > 1.0 + CLAMP_BAND
    scale = peak if rescale else 1.0
    if rescale:
        log.info("Rescaling diagonal by its largest modulus %.12g", peak)
    else:
        _check_modulus(values, what="Diagonal")
    target = next_power_of_two(values.size) if size is None else int(size)
    if target < values.size or target & (target - 1):
        raise DimensionError(f"Cannot pad a diagonal of length {values.size} to {target}.")
    padded = np.ones(target, dtype=np.complex128)
    padded[: values.size] = values / scale
    plus, minus = _lift(padded)
    report = ContractionReport(
        max_singular_value=peak,
        was_rescaled=rescale,
        shifted_operator_norm_bound=peak / scale,
    )
    return DilatedDiagonal(sigma_plus=plus, sigma_minus=minus, scale=scale, original=padded), report


def contraction_report(m: Any) -> ContractionReport:
    """Contraction report for a square matrix, from its largest singular value."""
    peak = svd(m).max_singular_value
    return ContractionReport(max_singular_value=peak, was_rescaled=False, shifted_operator_norm_bound=peak)


def sznagy_dilate(m: Any) -> ComplexMatrix:
    """Dense one-dilation of a contraction.

    Returns the ``2r x 2r`` unitary ``[[M, D*], [D, -M^H]]`` with defect
    operators ``D* = sqrt(I - M M^H)`` and ``D = sqrt(I - M^H M)``. Its
    top-left block is ``m`` itself. Used as an independent oracle for the
    SVD-based circuit.

    Raises
    ------
    ContractionError
        If the largest singular value of ``m`` exceeds ``1 + 1e-10``.
    """
    a = as_square(m)
    peak = svd(a).max_singular_value
    if peak > 1.0 + SZNAGY_TOLERANCE:
        raise ContractionError(f"Operator norm {peak:.12g} exceeds one; no one-dilation exists.", peak)
    eye = np.eye(a.shape[0], dtype=np.complex128)
    top = _defect(eye - a @ dagger(a))
    bottom = _defect(eye - dagger(a) @ a)
    return np.block([[a, top], [bottom, -dagger(a)]])


def _defect(p: ComplexMatrix) -> ComplexMatrix:
    # Norms in (1, 1 + 1e-10] leave eigenvalues just below zero; clip them.
    values, vectors = hermitian_eig(p)
    root = (vectors * np.sqrt(np.clip(values, 0.0, None))) @ dagger(vectors)
    return (root + dagger(root)) / 2


def minus_branch_operator(factors: SvdFactors, dd: DilatedDiagonal) -> ComplexMatrix:
    """The operator ``U (S_plus - S_minus) V^H``; the ancilla-1 branch is half of it applied to the input."""
    r = factors.dimension
    diff = (dd.sigma_plus - dd.sigma_minus)[:r]
    return (factors.u * diff) @ factors.v_dagger


__all__ = [
    "ContractionReport",
    "DilatedDiagonal",
    "build_dilated_diagonal",
    "contraction_report",
    "lift_entry",
    "minus_branch_operator",
    "sznagy_dilate",
]

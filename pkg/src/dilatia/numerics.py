"""Dense complex linear algebra for small operators.

Everything in dilatia passes numbers around as ``numpy`` arrays of dtype
``complex128``. This module holds the handful of decompositions the
dilation pipeline needs (a one-sided Jacobi SVD, Hermitian
eigendecomposition, PSD square roots) together with the plain-text matrix
format accepted on the command line.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, NamedTuple

import numpy as np
import numpy.typing as npt

from .errors import (
    ConvergenceError,
    DimensionError,
    DomainError,
    MatrixParseError,
    SymmetryError,
)

log = logging.getLogger(__name__)

ComplexMatrix = npt.NDArray[np.complex128]
ComplexVector = npt.NDArray[np.complex128]
RealVector = npt.NDArray[np.float64]

MAX_DIMENSION = 64
SVD_MAX_SWEEPS = 100
SVD_TOLERANCE = 1e-14
HERMITIAN_TOLERANCE = 1e-12
PSD_CLAMP = 1e-12

_TOKEN = re.compile(r"\S+")


def _readonly(array: Any, dtype: Any = np.complex128) -> np.ndarray:
    """Return a private, write-protected copy of *array*."""
    out = np.array(array, dtype=dtype)
    out.setflags(write=False)
    return out


def as_matrix(m: Any, *, name: str = "matrix") -> ComplexMatrix:
    """Coerce *m* to a finite 2-D complex array.

    Raises
    ------
    DimensionError
        If *m* is not two dimensional or has an empty axis.
    DomainError
        If *m* contains NaN or infinite entries.
    """
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionError(f"{name} must be a non-empty 2-D array, got shape {arr.shape}.")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} contains non-finite entries.")
    return arr


def as_vector(v: Any, *, name: str = "vector") -> ComplexVector:
    """Coerce *v* to a finite 1-D complex array."""
    arr = np.asarray(v, dtype=np.complex128)
    if arr.ndim == 2 and 1 in arr.shape:
        arr = arr.reshape(-1)
    if arr.ndim != 1 or arr.size < 1:
        raise DimensionError(f"{name} must be a non-empty 1-D array, got shape {arr.shape}.")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} contains non-finite entries.")
    return arr


def as_square(m: Any, *, name: str = "matrix", max_dimension: int = MAX_DIMENSION) -> ComplexMatrix:
    """Coerce *m* to a square complex matrix no larger than *max_dimension*."""
    arr = as_matrix(m, name=name)
    rows, cols = arr.shape
    if rows != cols:
        raise DimensionError(f"{name} must be square, got {rows}x{cols}.")
    if rows > max_dimension:
        raise DimensionError(f"{name} is {rows}x{cols}; at most {max_dimension}x{max_dimension} is supported.")
    return arr


def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def next_power_of_two(n: int) -> int:
    """Smallest power of two that is ``>= n``."""
    return 1 << max(0, int(n - 1).bit_length())


def dagger(m: Any) -> ComplexMatrix:
    return np.conj(np.asarray(m, dtype=np.complex128)).T


def is_unitary(m: Any, atol: float = 1e-10) -> bool:
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        return False
    return frobenius_norm(dagger(arr) @ arr - np.eye(arr.shape[0])) <= atol


@dataclass(frozen=True)
class StateVector:
    """Amplitudes of a register of qubits.

    Basis index ``b`` encodes qubit ``i`` as bit ``i`` of ``b``, so qubit 0
    is the least significant bit.

    Parameters
    ----------
    amplitudes : array_like
        Complex amplitudes; the length must be a power of two.
    """

    amplitudes: ComplexVector

    def __post_init__(self) -> None:
        amps = as_vector(self.amplitudes, name="amplitudes")
        if not is_power_of_two(amps.size):
            raise DimensionError(f"State length {amps.size} is not a power of two.")
        object.__setattr__(self, "amplitudes", _readonly(amps))

    @property
    def qubit_count(self) -> int:
        return self.amplitudes.size.bit_length() - 1

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> StateVector:
        norm = self.norm
        if norm == 0.0:
            raise DomainError("Cannot normalize the zero vector.")
        return StateVector(self.amplitudes / norm)

    @classmethod
    def basis(cls, qubit_count: int, index: int = 0) -> StateVector:
        """Computational basis state ``|index>`` on *qubit_count* qubits."""
        amps = np.zeros(1 << qubit_count, dtype=np.complex128)
        amps[index] = 1.0
        return cls(amps)

    def __len__(self) -> int:
        return self.amplitudes.size


@dataclass(frozen=True)
class SvdFactors:
    """Factors of ``m = u @ diag(singular_values) @ v_dagger``.

    Parameters
    ----------
    u : ComplexMatrix
        Unitary matrix of left singular vectors (columns).
    singular_values : RealVector
        Non-negative singular values in descending order.
    v_dagger : ComplexMatrix
        Unitary matrix whose rows are the conjugated right singular vectors.
    """

    u: ComplexMatrix
    singular_values: RealVector
    v_dagger: ComplexMatrix

    def __post_init__(self) -> None:
        u = as_square(self.u, name="u")
        v_dagger = as_square(self.v_dagger, name="v_dagger")
        sigma = np.asarray(self.singular_values, dtype=np.float64).reshape(-1)
        if not (u.shape[0] == v_dagger.shape[0] == sigma.size):
            raise DimensionError(f"SVD factor shapes disagree: u {u.shape}, sigma {sigma.shape}, v_dagger {v_dagger.shape}.")
        if np.any(sigma < 0):
            raise DomainError("Singular values must be non-negative.")
        object.__setattr__(self, "u", _readonly(u))
        object.__setattr__(self, "v_dagger", _readonly(v_dagger))
        object.__setattr__(self, "singular_values", _readonly(sigma, np.float64))

    @property
    def dimension(self) -> int:
        return self.singular_values.size

    @property
    def max_singular_value(self) -> float:
        return float(np.max(self.singular_values))

    def reconstruct(self) -> ComplexMatrix:
        """Multiply the factors back together."""
        return (self.u * self.singular_values) @ self.v_dagger


class Eigensystem(NamedTuple):
    """Eigenvalues (descending) and matching orthonormal eigenvector columns."""

    values: RealVector
    vectors: ComplexMatrix


def frobenius_norm(m: Any) -> float:
    """Return ``sqrt(sum |m_ij|^2)``."""
    return float(np.linalg.norm(np.asarray(m, dtype=np.complex128)))


def _canonical_phases(columns: ComplexMatrix, partner: ComplexMatrix | None = None) -> None:
    """Rotate each column so its largest-magnitude entry is real and non-negative.

    Ties are broken by the lowest row index. The same phase is applied to the
    matching column of *partner* so products ``u v^H`` are unchanged.
    """
    for j in range(columns.shape[1]):
        mags = np.abs(columns[:, j])
        peak = mags.max()
        if peak == 0.0:
            continue
        idx = int(np.flatnonzero(mags >= peak - 1e-12)[0])
        phase = np.conj(columns[idx, j]) / mags[idx]
        columns[:, j] *= phase
        if partner is not None:
            partner[:, j] *= phase


def complete_unitary(columns: Any, filled: Any = None) -> ComplexMatrix:
    """Fill the missing columns of a partially orthonormal square matrix.

    Columns flagged in *filled* are kept; every other column is replaced,
    in index order, by the next standard basis vector made orthogonal
    (Gram-Schmidt, two passes) to all columns placed so far.

    Parameters
    ----------
    columns : array_like
        ``r x m`` array with ``m <= r``. When ``m < r`` the remaining
        ``r - m`` columns are appended.
    filled : array_like of bool, optional
        Which of the ``m`` given columns are already valid. Defaults to all.

    Returns
    -------
    ComplexMatrix
        ``r x r`` unitary matrix.
    """
    given = np.asarray(columns, dtype=np.complex128)
    if given.ndim == 1:
        given = given[:, None]
    r, m = given.shape
    if m > r:
        raise DimensionError(f"Cannot complete {m} columns of length {r}.")
    out = np.zeros((r, r), dtype=np.complex128)
    out[:, :m] = given
    keep = np.zeros(r, dtype=bool)
    keep[:m] = True if filled is None else np.asarray(filled, dtype=bool)
    placed = [j for j in range(r) if keep[j]]
    candidate = 0
    for j in range(r):
        if keep[j]:
            continue
        while candidate < r:
            vec = np.zeros(r, dtype=np.complex128)
            vec[candidate] = 1.0
            candidate += 1
            for _ in range(2):
                for k in placed:
                    vec -= np.vdot(out[:, k], vec) * out[:, k]
            norm = np.linalg.norm(vec)
            if norm > 1e-8:
                out[:, j] = vec / norm
                placed.append(j)
                break
        else:
            raise DomainError("Given columns are not orthonormal; basis completion failed.")
    return out


def _rotate_columns(mat: ComplexMatrix, p: int, q: int, c: float, s: float, phase: complex) -> None:
    col_p = mat[:, p].copy()
    col_q = mat[:, q] * phase
    mat[:, p] = c * col_p - s * col_q
    mat[:, q] = s * col_p + c * col_q


def svd(m: Any) -> SvdFactors:
    """Singular value decomposition of a square complex matrix.

    Uses one-sided (Hestenes) Jacobi rotations on the columns of ``m``.
    Each rotation first removes the phase of the column overlap, then
    applies the real Jacobi rotation that zeroes it. Sweeps stop once every
    pair of columns is orthogonal to a relative tolerance of ``1e-14``.

    The left singular vectors are made canonical: the largest-magnitude
    entry of each is real and non-negative (lowest row wins ties). Columns
    of ``u`` belonging to zero singular values are completed by
    Gram-Schmidt on the standard basis, so both factors are always fully
    unitary even for rank-deficient input.

    Parameters
    ----------
    m : array_like
        Square matrix of size at most 64.

    Returns
    -------
    SvdFactors
        ``u``, descending ``singular_values`` and ``v_dagger``.

    Raises
    ------
    DimensionError
        If ``m`` is not square or is too large.
    ConvergenceError
        If the rotations have not converged after 100 sweeps.

    Examples
    --------
    >>> import numpy as np
    >>> from dilatia.numerics import svd
    >>> factors = svd(np.array([[0, 0.5], [0, 0]]))
    >>> factors.singular_values
    array([0.5, 0. ])
    >>> factors.v_dagger.real
    array([[0., 1.],
           [1., 0.]])
    """
    a = as_square(m)
    r = a.shape[0]
    # rotations act on a copy scaled to unit max entry
    scale = float(np.max(np.abs(a)))
    if scale == 0.0:
        scale = 1.0
    work = a / scale
    v = np.eye(r, dtype=np.complex128)
    residual = 0.0
    for _ in range(SVD_MAX_SWEEPS):
        residual = 0.0
        for p in range(r - 1):
            for q in range(p + 1, r):
                alpha = float(np.vdot(work[:, p], work[:, p]).real)
                beta = float(np.vdot(work[:, q], work[:, q]).real)
                gamma = complex(np.vdot(work[:, p], work[:, q]))
                mag = abs(gamma)
                norms = np.sqrt(alpha) * np.sqrt(beta)
                if norms == 0.0 or mag <= np.finfo(np.float64).tiny * norms:
                    continue
                off = mag / norms
                residual = max(residual, off)
                if off <= SVD_TOLERANCE:
                    continue
                zeta = (beta - alpha) / (2.0 * mag)
                t = (1.0 if zeta >= 0 else -1.0) / (abs(zeta) + np.hypot(1.0, zeta))
                c = 1.0 / np.hypot(1.0, t)
                s = c * t
                phase = gamma.conjugate() / mag
                _rotate_columns(work, p, q, c, s, phase)
                _rotate_columns(v, p, q, c, s, phase)
        if residual <= SVD_TOLERANCE:
            break
    else:
        raise ConvergenceError(f"Jacobi SVD of a {r}x{r} matrix did not converge in {SVD_MAX_SWEEPS} sweeps", residual)

    sigma = np.linalg.norm(work, axis=0)
    order = np.argsort(-sigma, kind="stable")
    sigma, work, v = sigma[order], work[:, order], v[:, order]

    cutoff = r * np.finfo(np.float64).eps * sigma[0]
    nonzero = sigma > cutoff
    u = np.zeros((r, r), dtype=np.complex128)
    u[:, nonzero] = work[:, nonzero] / sigma[nonzero]
    if not nonzero.all():
        log.debug("svd: completing %d null column(s) of u", int((~nonzero).sum()))
        u = complete_unitary(u, nonzero)
    _canonical_phases(u, v)
    return SvdFactors(u=u, singular_values=sigma * scale, v_dagger=dagger(v))


def hermitian_eig(h: Any) -> Eigensystem:
    """Eigendecomposition of a Hermitian matrix.

    Eigenvalues are returned in descending order, eigenvectors as the
    columns of ``vectors`` with the same phase convention as :func:`svd`.

    Raises
    ------
    SymmetryError
        If ``h`` deviates from its conjugate transpose by more than ``1e-12``
        (relative to its largest entry when that exceeds one).
    """
    a = as_square(h)
    scale = max(1.0, float(np.max(np.abs(a))))
    deviation = float(np.max(np.abs(a - dagger(a))))
    if deviation > HERMITIAN_TOLERANCE * scale:
        raise SymmetryError(f"Matrix is not Hermitian (max |h - h^H| = {deviation:.3e}).")
    values, vectors = np.linalg.eigh((a + dagger(a)) / 2)
    order = np.argsort(-values, kind="stable")
    values, vectors = values[order], np.array(vectors[:, order])
    _canonical_phases(vectors)
    return Eigensystem(values=values, vectors=vectors)


def hermitian_sqrt(p: Any) -> ComplexMatrix:
    """Principal square root of a Hermitian positive semidefinite matrix.

    Eigenvalues in ``[-1e-12, 0)`` are treated as zero.

    Raises
    ------
    DomainError
        If an eigenvalue is below ``-1e-12``.
    """
    values, vectors = hermitian_eig(p)
    if values[-1] < -PSD_CLAMP:
        raise DomainError(f"Matrix is not positive semidefinite (eigenvalue {values[-1]:.3e}).")
    root = (vectors * np.sqrt(np.clip(values, 0.0, None))) @ dagger(vectors)
    return (root + dagger(root)) / 2


def parse_matrix(text: str) -> ComplexMatrix:
    """Parse the plain-text matrix format.

    One row per line, entries written as Python complex literals such as
    ``0.6``, ``-1j`` or ``0.6+0.8j`` and separated by whitespace.
    Everything after ``#`` on a line is a comment.

    Raises
    ------
    MatrixParseError
        On unreadable entries, ragged rows or empty input, with the line
        and column of the problem.
    """
    rows: list[list[complex]] = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0]
        row = []
        for match in _TOKEN.finditer(content):
            token = match.group(0)
            try:
                value = complex(token)
            except ValueError as exc:
                raise MatrixParseError(f"cannot parse entry {token!r}", lineno, match.start() + 1) from exc
            if not np.isfinite(value):
                raise MatrixParseError(f"non-finite entry {token!r}", lineno, match.start() + 1)
            row.append(value)
        if not row:
            continue
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise MatrixParseError(f"expected {width} entries, found {len(row)}", lineno, 1)
        rows.append(row)
    if not rows:
        raise MatrixParseError("no matrix rows found", 1, 1)
    return np.array(rows, dtype=np.complex128)


def read_matrix(path: str | Path) -> ComplexMatrix:
    """Read a matrix text file, see :func:`parse_matrix`."""
    return parse_matrix(Path(path).read_text())


def format_matrix(m: Any) -> str:
    """Render a matrix in the format read by :func:`parse_matrix`."""
    arr = as_matrix(m)
    lines = []
    for row in arr:
        lines.append(" ".join(f"{z.real:.17g}{z.imag:+.17g}j" for z in row))
    return "\n".join(lines) + "\n"


__all__ = [
    "ComplexMatrix",
    "Eigensystem",
    "StateVector",
    "SvdFactors",
    "complete_unitary",
    "format_matrix",
    "frobenius_norm",
    "hermitian_eig",
    "hermitian_sqrt",
    "parse_matrix",
    "read_matrix",
    "svd",
]

# app/physics/linalg.py
"""
Dense Hermitian linear algebra for small operators (dimension <= 16).

The eigensolver is a cyclic complex Jacobi method: each rotation first removes
the phase of the pivot a[p, q] and then applies the classical real rotation,
so the accumulated transform stays unitary and the diagonal stays real.
"""
import logging
import math

import numpy as np

from app.core.config import settings
from app.core.errors import (
    ConvergenceError,
    DimensionMismatchError,
    NonHermitianError,
    SpectralOverflowError,
)
from app.models.quantum import ALLOWED_DIMENSIONS, Spectrum

logger = logging.getLogger(__name__)

# Largest x with exp(x) finite in double precision.
_EXP_LIMIT = math.log(np.finfo(np.float64).max)


def _as_square(a: np.ndarray, name: str = "A") -> np.ndarray:
    array = np.asarray(a, dtype=np.complex128)
    if array.ndim != 2 or array.shape[0] != array.shape[1]:
        raise DimensionMismatchError(f"{name} must be a square matrix, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise ValueError(f"{name} contains NaN or Inf entries")
    return array


def max_asymmetry(a: np.ndarray) -> float:
    array = np.asarray(a)
    return float(np.max(np.abs(array - array.conj().T))) if array.size else 0.0


def check_hermitian(a: np.ndarray, tol: float | None = None) -> np.ndarray:
    """Returns `a` as a complex array, rejecting non-Hermitian or oversized input."""
    tol = settings.HERMITIAN_TOLERANCE if tol is None else tol
    array = _as_square(a)
    if array.shape[0] not in ALLOWED_DIMENSIONS:
        raise DimensionMismatchError(
            f"Dimension {array.shape[0]} not supported; expected one of {ALLOWED_DIMENSIONS}"
        )
    asym = max_asymmetry(array)
    if asym > tol:
        raise NonHermitianError(asym, tol)
    return array


def hermitize(a: np.ndarray) -> np.ndarray:
    """Symmetric part (A + A^dagger) / 2; removes floating-point drift from products."""
    array = np.asarray(a, dtype=np.complex128)
    return 0.5 * (array + array.conj().T)


def dagger(a: np.ndarray) -> np.ndarray:
    return _as_square(a).conj().T


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    left = _as_square(a, "A")
    right = _as_square(b, "B")
    dim = left.shape[0] * right.shape[0]
    if dim > settings.MAX_DIMENSION:
        raise DimensionMismatchError(f"Tensor product dimension {dim} exceeds {settings.MAX_DIMENSION}")
    return np.kron(left, right)


def frob_dist(a: np.ndarray, b: np.ndarray) -> float:
    left = np.asarray(a, dtype=np.complex128)
    right = np.asarray(b, dtype=np.complex128)
    if left.shape != right.shape:
        raise DimensionMismatchError(f"Shape mismatch: {left.shape} vs {right.shape}")
    return float(np.linalg.norm(left - right))


def _off_diagonal_max(a: np.ndarray) -> float:
    off = np.abs(a - np.diag(np.diag(a)))
    return float(off.max()) if off.size else 0.0


def _jacobi(a: np.ndarray, tol: float, max_sweeps: int) -> tuple[np.ndarray, np.ndarray]:
    n = a.shape[0]
    work = hermitize(a)
    vectors = np.eye(n, dtype=np.complex128)
    threshold = tol * max(1.0, float(np.linalg.norm(work)))

    for sweep in range(max_sweeps):
        off = _off_diagonal_max(work)
        if off < threshold:
            logger.debug(f"Jacobi converged after {sweep} sweeps (off-diagonal {off:.2e})")
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = work[p, q]
                g = abs(apq)
                if g < threshold:
                    continue
                phase = apq / g
                theta = (work[q, q].real - work[p, p].real) / (2.0 * g)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rot = np.array(
                    [[c, s], [-s * np.conj(phase), c * np.conj(phase)]], dtype=np.complex128
                )
                idx = [p, q]
                work[:, idx] = work[:, idx] @ rot
                work[idx, :] = rot.conj().T @ work[idx, :]
                work[p, q] = 0.0
                work[q, p] = 0.0
                vectors[:, idx] = vectors[:, idx] @ rot
    else:
        off = _off_diagonal_max(work)
        if off >= threshold:
            raise ConvergenceError(
                f"Jacobi eigensolver did not converge in {max_sweeps} sweeps (off-diagonal {off:.2e})"
            )

    return np.real(np.diag(work)).copy(), vectors


def eig_hermitian(a: np.ndarray, tol: float | None = None) -> Spectrum:
    """
    Eigendecomposition A = V diag(lambda) V^dagger with eigenvalues ascending.
    Raises NonHermitianError when max |A - A^dagger| exceeds the tolerance.
    """
    array = check_hermitian(a, tol)
    values, vectors = _jacobi(array, settings.JACOBI_TOLERANCE, settings.JACOBI_MAX_SWEEPS)
    order = np.argsort(values, kind="stable")
    return Spectrum.model_construct(
        eigenvalues=_readonly(values[order]),
        eigenvectors=_readonly(vectors[:, order]),
    )


def _readonly(array: np.ndarray) -> np.ndarray:
    array = np.ascontiguousarray(array)
    array.setflags(write=False)
    return array


def eigvalsh(a: np.ndarray) -> np.ndarray:
    return eig_hermitian(a).eigenvalues


def min_eigenvalue(a: np.ndarray) -> float:
    return float(eig_hermitian(a).eigenvalues[0])


def max_eigenvalue(a: np.ndarray) -> float:
    return float(eig_hermitian(a).eigenvalues[-1])


def from_spectrum(spectrum: Spectrum, values: np.ndarray) -> np.ndarray:
    """V diag(values) V^dagger for real `values` aligned with the spectrum."""
    vectors = spectrum.eigenvectors
    return hermitize((vectors * np.asarray(values, dtype=np.float64)) @ vectors.conj().T)


def expm_hermitian(a: np.ndarray, s: float) -> np.ndarray:
    """
    exp(s A) through the eigendecomposition. Exponents above the double
    precision limit are rejected; callers shift the spectrum first.
    """
    spectrum = eig_hermitian(a)
    exponents = s * spectrum.eigenvalues
    peak = float(np.max(exponents))
    if peak > _EXP_LIMIT:
        raise SpectralOverflowError(peak)
    return from_spectrum(spectrum, np.exp(exponents))


def sqrtm_psd(a: np.ndarray, clamp: float = 0.0) -> np.ndarray:
    """Principal square root of a PSD operator; eigenvalues below `clamp` count as zero."""
    spectrum = eig_hermitian(a)
    values = np.where(spectrum.eigenvalues < clamp, 0.0, spectrum.eigenvalues)
    return from_spectrum(spectrum, np.sqrt(np.maximum(values, 0.0)))


def trace_norm(a: np.ndarray) -> float:
    """Sum of absolute eigenvalues."""
    return float(np.sum(np.abs(eig_hermitian(a).eigenvalues)))

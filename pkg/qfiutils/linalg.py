""" Dense complex linear algebra on small matrices.

    Subsystem 0 is the leftmost tensor factor and matrices are flattened
    row-major, so the ket |i j k> of dims (d0, d1, d2) sits at index
    (i * d1 + j) * d2 + k.

    >>> import numpy as np
    >>> import qfiutils.linalg as la
    >>> sz = np.diag([1.0, -1.0])
    >>> la.kron(sz, np.eye(2)).diagonal().real
    array([ 1.,  1., -1., -1.])
    >>> la.hermitian_eig(np.diag([1, 1, -1, -1])).eigenvalues
    array([-1., -1.,  1.,  1.])
"""

import logging
import math
from typing import Sequence
import numpy as np
from qfiutils.qfi_conf import CONF
from qfiutils.NotHermitianException import NotHermitianException
from qfiutils.NoConvergenceException import NoConvergenceException
from qfiutils.DimensionMismatchException import DimensionMismatchException
from qfiutils.InvariantViolationException import InvariantViolationException

HERMITIAN_TOL = CONF['hermitian_tol']
JACOBI_SWEEPS = CONF['jacobi_sweeps']
JACOBI_OFFDIAG_REL = CONF['jacobi_offdiag_rel']

LOG = logging.getLogger(__name__)


class SpectralDecomposition:
    def __init__(self, eigenvalues: np.ndarray, eigenvectors: np.ndarray):
        """c-tor. Eigenvalues in ascending order with column-aligned
        orthonormal eigenvectors.

        Args
        ----
        eigenvalues
            Real array of length n
        eigenvectors
            n x n complex array, column k belongs to eigenvalues[k]

        """
        self.eigenvalues = eigenvalues
        self.eigenvectors = eigenvectors

    def __len__(self):
        return len(self.eigenvalues)

    def reconstruct(self) -> np.ndarray:
        """Return sum_k lambda_k |k><k|."""
        vecs = self.eigenvectors
        return (vecs * self.eigenvalues) @ vecs.conj().T


def as_matrix(mat) -> np.ndarray:
    """Coerce to a square complex128 array with finite entries.

    Raises
    ------
    DimensionMismatchException
        If the input is not a non-empty square matrix.
    InvariantViolationException
        If an entry is NaN or infinite.

    """
    arr = np.asarray(mat, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise DimensionMismatchException(
            "Expected a square matrix, got shape {}".format(arr.shape))
    if not np.all(np.isfinite(arr)):
        raise InvariantViolationException("Matrix has non-finite entries")
    return arr


def check_hermitian(mat, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Check Hermiticity and return the symmetrized copy (M + M^dagger)/2.

    Args
    ----
    mat
        Square matrix
    tol
        Entrywise tolerance on |M - M^dagger|

    Returns
    -------
    np.ndarray
        Exactly Hermitian complex matrix.

    Raises
    ------
    NotHermitianException
        If any entry of M - M^dagger exceeds tol in magnitude.

    """
    arr = as_matrix(mat)
    defect = float(np.max(np.abs(arr - arr.conj().T)))
    if defect > tol:
        raise NotHermitianException(
            "Matrix is not Hermitian: max |M - M^H| = {:.3e} > {:.1e}".format(
                defect, tol))
    return (arr + arr.conj().T) / 2


def _off_diagonal_norm(arr: np.ndarray) -> float:
    off = arr - np.diag(arr.diagonal())
    return float(np.linalg.norm(off))


def hermitian_eig(mat,
                  sweeps: int = JACOBI_SWEEPS,
                  rel_tol: float = JACOBI_OFFDIAG_REL) -> SpectralDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Each rotation first removes the phase of the pivot a_pq, then applies
    the real symmetric Jacobi rotation that zeroes it. Sweeps stop once
    the off-diagonal Frobenius norm is at most rel_tol * ||M||_F.

    Args
    ----
    mat
        Hermitian matrix (within HERMITIAN_TOL)
    sweeps
        Sweep budget
    rel_tol
        Off-diagonal convergence threshold relative to ||M||_F

    Returns
    -------
    SpectralDecomposition
        Eigenvalues ascending. Identical input gives identical output.

    Raises
    ------
    NotHermitianException
        Input fails the Hermiticity check.
    NoConvergenceException
        The sweep budget was exhausted.

    """
    arr = check_hermitian(mat)
    n = arr.shape[0]
    vecs = np.eye(n, dtype=complex)
    target = rel_tol * float(np.linalg.norm(arr))

    sweep = 0
    for sweep in range(sweeps):
        if _off_diagonal_norm(arr) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = arr[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                phase = apq / r
                app = arr[p, p].real
                aqq = arr[q, q].real
                theta = (aqq - app) / (2.0 * r)
                if theta >= 0.0:
                    t = 1.0 / (theta + math.sqrt(1.0 + theta * theta))
                else:
                    t = -1.0 / (-theta + math.sqrt(1.0 + theta * theta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                rot = np.array([[c, s],
                                [-s * phase.conjugate(), c * phase.conjugate()]])

                pq = [p, q]
                arr[:, pq] = arr[:, pq] @ rot
                arr[pq, :] = rot.conj().T @ arr[pq, :]
                arr[p, q] = 0.0
                arr[q, p] = 0.0
                arr[p, p] = app - t * r
                arr[q, q] = aqq + t * r
                vecs[:, pq] = vecs[:, pq] @ rot
    else:
        if _off_diagonal_norm(arr) > target:
            raise NoConvergenceException(
                "Jacobi did not converge in {} sweeps (dim {})".format(
                    sweeps, n))

    evals = arr.diagonal().real.copy()
    order = np.argsort(evals, kind='stable')
    LOG.debug("eig dim {} done after {} sweeps".format(n, sweep))
    return SpectralDecomposition(evals[order], vecs[:, order])


def kron(a, b) -> np.ndarray:
    """Kronecker product; entry (i*dB + k, j*dB + l) is A[i, j] * B[k, l]."""
    return np.kron(as_matrix(a), as_matrix(b))


def check_dims(dims: Sequence[int], dim: int) -> tuple:
    """Validate subsystem dimensions against a matrix dimension.

    Returns
    -------
    tuple
        dims as a tuple of ints

    Raises
    ------
    DimensionMismatchException
        Empty dims, a non-positive entry, or a product different from dim.

    """
    dims = tuple(int(d) for d in dims)
    if len(dims) == 0 or any(d < 1 for d in dims):
        raise DimensionMismatchException("Invalid dims: {}".format(dims))
    if math.prod(dims) != dim:
        raise DimensionMismatchException(
            "Product of dims {} is {}, matrix dim is {}".format(
                dims, math.prod(dims), dim))
    return dims


def _check_subsystems(indices: Sequence[int], n: int) -> tuple:
    indices = tuple(int(i) for i in indices)
    if len(indices) == 0:
        raise DimensionMismatchException("No subsystems given")
    if len(set(indices)) != len(indices):
        raise DimensionMismatchException(
            "Repeated subsystem in {}".format(indices))
    for i in indices:
        if i < 0 or i >= n:
            raise DimensionMismatchException(
                "Invalid subsystem index {} for {} subsystems".format(i, n))
    return indices


def partial_trace(mat, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Trace out every subsystem not in keep.

    Args
    ----
    mat
        Matrix on the full space
    dims
        Local dimensions, one per subsystem
    keep
        Subsystems to keep. The result's tensor factors follow the order
        given here, so keep=(2, 0) yields a matrix on d2 x d0.

    Returns
    -------
    np.ndarray
        Reduced matrix; its trace equals trace(mat).

    Raises
    ------
    DimensionMismatchException

    """
    arr = as_matrix(mat)
    dims = check_dims(dims, arr.shape[0])
    n = len(dims)
    keep = _check_subsystems(keep, n)
    traced = [k for k in range(n) if k not in keep]

    tensor = arr.reshape(dims + dims)
    perm = list(keep) + traced + [n + k for k in keep] + [n + k for k in traced]
    d_keep = math.prod(dims[k] for k in keep)
    d_traced = math.prod(dims[k] for k in traced)
    tensor = tensor.transpose(perm).reshape(d_keep, d_traced, d_keep, d_traced)
    return np.trace(tensor, axis1=1, axis2=3)


def partial_transpose(mat, dims: Sequence[int], subsystem: int) -> np.ndarray:
    """Transpose one tensor factor. Pure index permutation, so applying it
    twice returns the input exactly.

    Raises
    ------
    DimensionMismatchException

    """
    arr = as_matrix(mat)
    dims = check_dims(dims, arr.shape[0])
    n = len(dims)
    subsystem = _check_subsystems([subsystem], n)[0]

    perm = list(range(2 * n))
    perm[subsystem], perm[n + subsystem] = n + subsystem, subsystem
    tensor = arr.reshape(dims + dims).transpose(perm)
    return tensor.reshape(arr.shape).copy()

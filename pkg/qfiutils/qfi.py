""" Variance, covariance and quantum Fisher information.

    The QFI is normalized so that it equals the variance on pure states:

        F(rho, A) = sum_{k != l} (l_k - l_l)^2 / (2 (l_k + l_l)) |<k|A|l>|^2

    over eigenpairs of rho with l_k + l_l above a cutoff. Much of the
    metrology literature uses 4x this value.

    >>> import qfiutils.states as st
    >>> import qfiutils.observables as obs
    >>> import qfiutils.qfi as qf
    >>> fam = st.example2_family()
    >>> total = obs.collective_sum(obs.ObservableSet([obs.pauli('z')] * 2))
    >>> qf.qfi(fam(1.0), total).value    # 32/9
    3.5555555555555554
"""

import logging
import numpy as np
import qfiutils.linalg as la
from qfiutils.qfi_conf import CONF
from qfiutils.states import DensityMatrix, NoisyFamily, PureState, \
    check_probability
from qfiutils.observables import Observable, ObservableSet, embed, \
    collective_sum, pairwise_difference
from qfiutils.DimensionMismatchException import DimensionMismatchException
from qfiutils.InvariantViolationException import InvariantViolationException

QFI_CUTOFF = CONF['qfi_cutoff']
HERMITIAN_TOL = CONF['hermitian_tol']

LOG = logging.getLogger(__name__)


class QfiResult:
    def __init__(self, value: float, rank_used: int):
        """c-tor.

        Args
        ----
        value
            F(rho, A), nonnegative up to rounding
        rank_used
            Number of eigenvalues of rho above the cutoff

        """
        self.value = value
        self.rank_used = rank_used

    def __repr__(self):
        return "QfiResult(value={!r}, rank_used={})".format(self.value,
                                                           self.rank_used)


def _operator(op, dim: int) -> np.ndarray:
    mat = op.matrix if isinstance(op, Observable) else la.check_hermitian(op)
    if mat.shape[0] != dim:
        raise DimensionMismatchException(
            "Operator dim {} does not match state dim {}".format(
                mat.shape[0], dim))
    return mat


def _real(val: complex, what: str) -> float:
    if abs(val.imag) > HERMITIAN_TOL:
        raise InvariantViolationException(
            "{} has imaginary part {:.3e}".format(what, val.imag))
    return float(val.real)


def expectation(rho: DensityMatrix, op) -> float:
    """<A> = trace(rho A).

    Raises
    ------
    DimensionMismatchException, NotHermitianException

    """
    mat = _operator(op, rho.dim)
    return _real(np.trace(rho.matrix @ mat), "Expectation")


def variance(rho: DensityMatrix, op) -> float:
    """(Delta A)^2 = <A^2> - <A>^2.

    Raises
    ------
    DimensionMismatchException, NotHermitianException

    """
    mat = _operator(op, rho.dim)
    first = _real(np.trace(rho.matrix @ mat), "Expectation")
    second = _real(np.trace(rho.matrix @ mat @ mat), "Second moment")
    return second - first * first


def covariance(rho: DensityMatrix, a: Observable, b: Observable) -> float:
    """Cov(A x I, I x B) = <A x B> - <A x I><I x B> on a bipartite state.

    Raises
    ------
    DimensionMismatchException
        rho is not bipartite or the observables do not fit its dims.

    """
    pair = ObservableSet([a, b], rho.dims)
    a_full = embed(pair[0], pair.dims, 0)
    b_full = embed(pair[1], pair.dims, 1)
    joint = expectation(rho, la.kron(pair[0].matrix, pair[1].matrix))
    return joint - expectation(rho, a_full) * expectation(rho, b_full)


def qfi(rho: DensityMatrix, op, cutoff: float = QFI_CUTOFF) -> QfiResult:
    """Quantum Fisher information from the spectral decomposition of rho.

    Eigenvalues are clamped at 0, ordered pairs (k, l) with k != l and
    l_k + l_l <= cutoff are skipped. Within a degenerate eigenspace the
    numerator vanishes, so the result does not depend on the eigenbasis
    chosen there.

    Args
    ----
    rho
        Density matrix
    op
        Hermitian operator on the full space
    cutoff
        Threshold on l_k + l_l

    Returns
    -------
    QfiResult

    Raises
    ------
    DimensionMismatchException, NotHermitianException

    """
    mat = _operator(op, rho.dim)
    spec = rho.spectrum
    lam = np.clip(spec.eigenvalues, 0.0, None)
    vecs = spec.eigenvectors
    weights = np.abs(vecs.conj().T @ mat @ vecs) ** 2

    lk = lam[:, None]
    ll = lam[None, :]
    denom = lk + ll
    mask = denom > cutoff
    np.fill_diagonal(mask, False)
    terms = np.zeros_like(denom)
    terms[mask] = ((lk - ll) ** 2 * weights)[mask] / (2.0 * denom[mask])

    value = float(terms.sum())
    rank_used = int(np.count_nonzero(lam > cutoff))
    LOG.debug("qfi dim {} rank {} value {:.17g}".format(rho.dim, rank_used,
                                                      value))
    return QfiResult(value, rank_used)


def pure_qfi(psi: PureState, op) -> float:
    """F(|psi>, A), the variance of A on |psi>."""
    amps = psi.amplitudes
    mat = _operator(op, amps.size)
    applied = mat @ amps
    first = _real(np.vdot(amps, applied), "Expectation")
    second = _real(np.vdot(applied, applied), "Second moment")
    return second - first * first


def noise_prefactor(p: float, total_dim: int) -> float:
    """p^2 / (p + 2 (1 - p) / D)."""
    return p * p / (p + 2.0 * (1.0 - p) / total_dim)


def qfi_noisy_closed_form(family: NoisyFamily, op, p: float) -> float:
    """Closed-form QFI of p|psi><psi| + (1-p) I/D.

    Raises
    ------
    ParameterOutOfRangeException
        p outside [0, 1].

    """
    p = check_probability(p)
    return noise_prefactor(p, family.psi.dim) * pure_qfi(family.psi, op)


def theorem1_terms(rho: DensityMatrix, a: Observable, b: Observable) -> dict:
    """The quantities around the bipartite criterion.

    Returns
    -------
    dict
        'qfi': F(rho, A x I + I x B)
        'var_sum': Var(A x I + I x B)
        'var_diff': Var(A x I - I x B)
        'cov': Cov(A x I, I x B); var_sum = var_diff + 4 cov

    """
    pair = ObservableSet([a, b], rho.dims)
    total = collective_sum(pair)
    return {
        'qfi': qfi(rho, total).value,
        'var_sum': variance(rho, total),
        'var_diff': variance(rho, pairwise_difference(pair, 0, 1)),
        'cov': covariance(rho, a, b),
    }

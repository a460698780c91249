""" Density matrices: pure states, white-noise families, the worked example
    states and random separable states.

    Kets are addressed in the computational basis with subsystem 0 most
    significant, so |03> on dims (4, 4) is index 3 and |110> on three
    qubits is index 6.

    >>> import qfiutils.states as st
    >>> fam = st.example2_family()
    >>> rho = st.white_noise_mix(fam, 0.5)
    >>> rho.matrix[0, 0].real   # (1/2)(4/9) + (1/2)(1/4)
    0.3472222222222222
"""

import json
import logging
import math
from functools import cached_property
from typing import Sequence
import numpy as np
import qfiutils.linalg as la
from qfiutils.qfi_conf import CONF
from qfiutils.NotNormalizedException import NotNormalizedException
from qfiutils.ParameterOutOfRangeException import ParameterOutOfRangeException
from qfiutils.InvariantViolationException import InvariantViolationException
from qfiutils.DimensionMismatchException import DimensionMismatchException
from qfiutils.ParseException import ParseException

TRACE_TOL = CONF['trace_tol']
PSD_TOL = CONF['psd_tol']
NORMALIZATION_TOL = CONF['normalization_tol']
CONSTRAINT_TOL = CONF['constraint_tol']

# Two-ququart bound entangled example, metrologically useful point
EX1_P = (2 - math.sqrt(2)) / 4
EX1_Q = (math.sqrt(2) - 1) / 2

# state file keys
DIMS = 'dims'
MATRIX = 'matrix'

LOG = logging.getLogger(__name__)


class PureState:
    def __init__(self, amplitudes, dims: Sequence[int]):
        """c-tor. Normalized state vector on the product space of dims.

        Args
        ----
        amplitudes
            Complex vector of length prod(dims)
        dims
            Local dimensions

        Raises
        ------
        NotNormalizedException
            If | ||amplitudes|| - 1 | > NORMALIZATION_TOL.
        DimensionMismatchException
            If the vector length does not match dims.

        """
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        self.dims = la.check_dims(dims, amps.size)
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORMALIZATION_TOL:
            raise NotNormalizedException(
                "State norm is {:.15f}, expected 1".format(norm))
        self.amplitudes = amps

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @classmethod
    def from_kets(cls, dims: Sequence[int], terms: dict) -> 'PureState':
        """Build from a mapping of ket labels to amplitudes.

        Args
        ----
        dims
            Local dimensions, each at most 10
        terms
            {'03': 0.5, '12': 0.5, '21': 2**-0.5} style mapping; one digit
            per subsystem

        """
        dims = tuple(dims)
        amps = np.zeros(math.prod(dims), dtype=complex)
        for label, amp in terms.items():
            amps[ket_index(label, dims)] += amp
        return cls(amps, dims)


def ket_index(label: str, dims: Sequence[int]) -> int:
    """Index of the computational basis ket |label>.

    Raises
    ------
    DimensionMismatchException
        Wrong number of digits or a digit out of range.

    """
    if len(label) != len(dims):
        raise DimensionMismatchException(
            "Ket |{}> does not match dims {}".format(label, tuple(dims)))
    idx = 0
    for digit, d in zip(label, dims):
        level = int(digit)
        if level >= d:
            raise DimensionMismatchException(
                "Level {} out of range in |{}>".format(level, label))
        idx = idx * d + level
    return idx


class DensityMatrix:
    def __init__(self, matrix, dims: Sequence[int], validate: bool = True):
        """c-tor. Hermitian, unit-trace, positive semidefinite matrix.

        Args
        ----
        matrix
            Square complex matrix
        dims
            Local dimensions
        validate
            Check the trace and PSD invariants. Hermiticity is always
            checked and the stored matrix is always symmetrized. Reduced
            states of a valid state skip the PSD check.

        Raises
        ------
        NotHermitianException
        InvariantViolationException
            Trace or PSD check failed.
        DimensionMismatchException

        """
        self.matrix = la.check_hermitian(matrix)
        self.dims = la.check_dims(dims, self.matrix.shape[0])
        if validate:
            self._check_trace()
            self._check_psd()

    def _check_trace(self):
        tr = self.trace()
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvariantViolationException(
                "Trace is {:.15f}, expected 1".format(tr))

    def _check_psd(self):
        lam_min = float(self.spectrum.eigenvalues[0])
        if lam_min < -PSD_TOL:
            raise InvariantViolationException(
                "Not positive semidefinite: min eigenvalue {:.3e}".format(
                    lam_min))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    @cached_property
    def spectrum(self) -> la.SpectralDecomposition:
        return la.hermitian_eig(self.matrix)

    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)

    def rank(self, cutoff: float = 1e-12) -> int:
        return int(np.count_nonzero(self.spectrum.eigenvalues > cutoff))

    def reduce(self, keep: Sequence[int]) -> 'DensityMatrix':
        """Reduced state on the subsystems in keep, in that order."""
        reduced = la.partial_trace(self.matrix, self.dims, keep)
        return DensityMatrix(reduced, [self.dims[k] for k in keep],
                             validate=False)

    def partial_transpose(self, subsystems: Sequence[int]) -> np.ndarray:
        """Matrix with every listed tensor factor transposed."""
        mat = self.matrix
        for k in subsystems:
            mat = la.partial_transpose(mat, self.dims, k)
        return mat


class NoisyFamily:
    def __init__(self, psi: PureState, name: str = 'custom'):
        """c-tor. The one-parameter family p|psi><psi| + (1-p) I/D.

        Args
        ----
        psi
            Pure state
        name
            Label used in logs and CLI output

        """
        self.psi = psi
        self.dims = psi.dims
        self.name = name

    def __call__(self, p: float) -> DensityMatrix:
        return white_noise_mix(self, p)


def check_probability(p: float) -> float:
    """Raise ParameterOutOfRangeException unless 0 <= p <= 1."""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ParameterOutOfRangeException(
            "Mixing parameter must be in [0, 1]: {}".format(p))
    return p


def pure_density(psi: PureState) -> DensityMatrix:
    """Rank-one projector |psi><psi|.

    Raises
    ------
    NotNormalizedException
        If psi is not a normalized PureState.

    """
    if not isinstance(psi, PureState):
        psi = PureState(psi, [np.asarray(psi).size])
    amps = psi.amplitudes
    return DensityMatrix(np.outer(amps, amps.conj()), psi.dims)


def maximally_mixed(dims: Sequence[int]) -> DensityMatrix:
    d = math.prod(dims)
    return DensityMatrix(np.eye(d, dtype=complex) / d, dims)


def white_noise_mix(family: NoisyFamily, p: float) -> DensityMatrix:
    """p |psi><psi| + (1 - p) I / D with D the product of the dims.

    Raises
    ------
    ParameterOutOfRangeException
        p outside [0, 1].

    """
    p = check_probability(p)
    amps = family.psi.amplitudes
    d = amps.size
    proj = np.outer(amps, amps.conj())
    mat = p * proj + (1.0 - p) * np.eye(d, dtype=complex) / d
    return DensityMatrix(mat, family.dims)


def example1_kets() -> list:
    """The six orthonormal two-ququart states of the bound entangled example.

    The first four carry 1/sqrt(2), which is what normalizes them.
    """
    h = 1 / math.sqrt(2)
    dims = (4, 4)
    return [
        PureState.from_kets(dims, {'01': h, '23': h}),
        PureState.from_kets(dims, {'10': h, '32': h}),
        PureState.from_kets(dims, {'11': h, '22': h}),
        PureState.from_kets(dims, {'00': h, '33': -h}),
        PureState.from_kets(dims, {'03': 0.5, '12': 0.5, '21': h}),
        PureState.from_kets(dims, {'03': -0.5, '12': 0.5, '30': h}),
    ]


def example1_state(p: float = EX1_P, q: float = EX1_Q) -> DensityMatrix:
    """p sum_{n<=4} |psi_n><psi_n| + q sum_{n=5,6} |psi_n><psi_n|, 4p + 2q = 1.

    PPT exactly when p = q / sqrt(2), i.e. at the default (p, q).

    Raises
    ------
    ParameterOutOfRangeException
        Negative weight or |4p + 2q - 1| > CONSTRAINT_TOL.

    """
    if p < 0 or q < 0 or abs(4 * p + 2 * q - 1) > CONSTRAINT_TOL:
        raise ParameterOutOfRangeException(
            "Need p, q >= 0 and 4p + 2q = 1: p={}, q={}".format(p, q))
    mat = np.zeros((16, 16), dtype=complex)
    for n, psi in enumerate(example1_kets()):
        weight = p if n < 4 else q
        mat += weight * np.outer(psi.amplitudes, psi.amplitudes.conj())
    return DensityMatrix(mat, (4, 4))


def example2_family() -> NoisyFamily:
    """(2/3)(|00> + |11>) + (1/3)|10> with white noise."""
    psi = PureState.from_kets((2, 2), {'00': 2 / 3, '11': 2 / 3, '10': 1 / 3})
    return NoisyFamily(psi, 'example2')


def example3_family() -> NoisyFamily:
    """(2/3)(|000> + |111>) + (1/3)|110> with white noise."""
    psi = PureState.from_kets((2, 2, 2),
                              {'000': 2 / 3, '111': 2 / 3, '110': 1 / 3})
    return NoisyFamily(psi, 'example3')


def ghz_family(n_qubits: int) -> NoisyFamily:
    """(|0...0> + |1...1>)/sqrt(2) with white noise.

    Raises
    ------
    DimensionMismatchException
        Fewer than two qubits.

    """
    if n_qubits < 2:
        raise DimensionMismatchException(
            "GHZ needs at least 2 qubits: {}".format(n_qubits))
    h = 1 / math.sqrt(2)
    psi = PureState.from_kets((2,) * n_qubits,
                              {'0' * n_qubits: h, '1' * n_qubits: h})
    return NoisyFamily(psi, 'ghz{}'.format(n_qubits))


def product_state(kets: Sequence, dims: Sequence[int] = None) -> PureState:
    """Tensor product of local normalized kets."""
    amps = np.ones(1, dtype=complex)
    for ket in kets:
        amps = np.kron(amps, np.asarray(ket, dtype=complex))
    if dims is None:
        dims = [len(ket) for ket in kets]
    return PureState(amps, dims)


def random_separable(dims: Sequence[int], k_terms: int,
                     seed: int) -> DensityMatrix:
    """Convex mixture of k_terms random product states.

    Local kets are Haar-random (normalized complex Gaussian vectors) and
    weights are uniform on the simplex. The same seed always gives the
    same matrix.

    Raises
    ------
    ParameterOutOfRangeException
        k_terms < 1.

    """
    if k_terms < 1:
        raise ParameterOutOfRangeException(
            "k_terms must be >= 1: {}".format(k_terms))
    dims = tuple(int(d) for d in dims)
    rng = np.random.default_rng(seed)
    weights = rng.dirichlet(np.ones(k_terms))
    mat = np.zeros((math.prod(dims),) * 2, dtype=complex)
    for w in weights:
        kets = []
        for d in dims:
            ket = rng.normal(size=d) + 1j * rng.normal(size=d)
            kets.append(ket / np.linalg.norm(ket))
        amps = product_state(kets, dims).amplitudes
        mat += w * np.outer(amps, amps.conj())
    LOG.debug("random separable dims {} k {} seed {}".format(dims, k_terms,
                                                            seed))
    return DensityMatrix(mat, dims)


def matrix_to_rows(mat: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in mat]


def rows_to_matrix(rows, field: str = MATRIX) -> np.ndarray:
    """Parse an array of rows of [re, im] pairs.

    Raises
    ------
    ParseException
        Naming field when the nesting or a value is wrong.

    """
    if not isinstance(rows, list) or len(rows) == 0:
        raise ParseException("Field '{}' must be a non-empty array of rows".format(
            field))
    n = len(rows)
    mat = np.zeros((n, n), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ParseException(
                "Field '{}' row {} must have {} entries".format(field, i, n))
        for j, entry in enumerate(row):
            if (not isinstance(entry, list) or len(entry) != 2 or
                    not all(isinstance(x, (int, float)) and
                            not isinstance(x, bool) for x in entry)):
                raise ParseException(
                    "Field '{}' entry [{}][{}] must be [re, im]".format(
                        field, i, j))
            mat[i, j] = complex(entry[0], entry[1])
    return mat


def load_json(text: str) -> dict:
    try:
        obj = json.loads(text)
    except ValueError as err:
        raise ParseException("Invalid JSON: {}".format(err))
    if not isinstance(obj, dict):
        raise ParseException("Expected one JSON object")
    return obj


def state_to_text(rho: DensityMatrix) -> str:
    obj = {DIMS: list(rho.dims), MATRIX: matrix_to_rows(rho.matrix)}
    return json.dumps(obj) + '\n'


def state_from_text(text: str) -> DensityMatrix:
    """Parse the state file format.

    Raises
    ------
    ParseException
        Missing or malformed field.
    NotHermitianException, InvariantViolationException,
    DimensionMismatchException
        The matrix parses but is not a state on dims.

    """
    obj = load_json(text)
    for key in (DIMS, MATRIX):
        if key not in obj:
            raise ParseException("Missing field '{}'".format(key))
    dims = obj[DIMS]
    if (not isinstance(dims, list) or len(dims) == 0 or
            not all(isinstance(d, int) and not isinstance(d, bool)
                    for d in dims)):
        raise ParseException("Field '{}' must be an integer array".format(DIMS))
    return DensityMatrix(rows_to_matrix(obj[MATRIX]), dims)


def dump_state(rho: DensityMatrix, path: str):
    with open(path, 'w', encoding='utf-8', newline='\n') as fh:
        fh.write(state_to_text(rho))
    LOG.info("Wrote state dims {} to {}".format(rho.dims, path))


def load_state(path: str) -> DensityMatrix:
    with open(path, 'r', encoding='utf-8') as fh:
        return state_from_text(fh.read())

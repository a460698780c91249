""" Local Hermitian observables and their collective lifts.

    >>> import qfiutils.observables as obs
    >>> sz = obs.pauli('z')
    >>> pair = obs.ObservableSet([sz, sz], (2, 2))
    >>> obs.collective_sum(pair).diagonal().real
    array([ 2.,  0.,  0., -2.])
    >>> obs.pairwise_difference(pair, 0, 1).diagonal().real
    array([ 0.,  2., -2.,  0.])
"""

import json
import logging
from typing import Sequence
import numpy as np
import qfiutils.linalg as la
from qfiutils.states import load_json, matrix_to_rows, rows_to_matrix
from qfiutils.DimensionMismatchException import DimensionMismatchException
from qfiutils.UnknownNameException import UnknownNameException
from qfiutils.ParseException import ParseException

PAULI = {
    'i': np.eye(2, dtype=complex),
    'x': np.array([[0, 1], [1, 0]], dtype=complex),
    'y': np.array([[0, -1j], [1j, 0]], dtype=complex),
    'z': np.array([[1, 0], [0, -1]], dtype=complex),
}
PAULI_ALIASES = {
    'sigma_x': 'x', 'sigma_y': 'y', 'sigma_z': 'z',
    'sx': 'x', 'sy': 'y', 'sz': 'z', 'id': 'i',
}

# observable file keys
LOCAL_DIM = 'local_dim'
MATRIX = 'matrix'

LOG = logging.getLogger(__name__)


class Observable:
    def __init__(self, matrix, local_dim: int = None):
        """c-tor. Hermitian operator on one subsystem.

        Args
        ----
        matrix
            Square matrix, Hermitian within the configured tolerance.
            Stored symmetrized.
        local_dim
            Subsystem dimension. Defaults to the matrix dimension.

        Raises
        ------
        NotHermitianException
        DimensionMismatchException
            local_dim differs from the matrix dimension.

        """
        self.matrix = la.check_hermitian(matrix)
        dim = self.matrix.shape[0]
        if local_dim is None:
            local_dim = dim
        if int(local_dim) != dim:
            raise DimensionMismatchException(
                "local_dim {} does not match matrix dim {}".format(
                    local_dim, dim))
        self.local_dim = dim

    def squared(self) -> np.ndarray:
        return self.matrix @ self.matrix


class ObservableSet:
    def __init__(self, ops: Sequence[Observable], dims: Sequence[int] = None):
        """c-tor. One observable per subsystem, in subsystem order.

        Args
        ----
        ops
            Observables (or Hermitian matrices)
        dims
            Local dimensions. Defaults to the observables' local_dim.

        Raises
        ------
        DimensionMismatchException
            If ops[i].local_dim != dims[i] or the lengths differ.

        """
        self.ops = [op if isinstance(op, Observable) else Observable(op)
                    for op in ops]
        if dims is None:
            dims = [op.local_dim for op in self.ops]
        self.dims = tuple(int(d) for d in dims)
        if len(self.ops) != len(self.dims) or len(self.ops) == 0:
            raise DimensionMismatchException(
                "{} observables for dims {}".format(len(self.ops), self.dims))
        for i, (op, d) in enumerate(zip(self.ops, self.dims)):
            if op.local_dim != d:
                raise DimensionMismatchException(
                    "Observable {} acts on dim {}, subsystem has dim {}".format(
                        i, op.local_dim, d))

    def __len__(self):
        return len(self.ops)

    def __getitem__(self, idx: int) -> Observable:
        return self.ops[idx]


def pauli(name: str) -> Observable:
    """sigma_x, sigma_y, sigma_z or the 2x2 identity by name.

    Raises
    ------
    UnknownNameException

    """
    key = name.strip().lower()
    key = PAULI_ALIASES.get(key, key)
    if key not in PAULI:
        raise UnknownNameException("Unknown Pauli name: {}".format(name))
    return Observable(PAULI[key])


def projector(dim: int, kets: Sequence[int],
              signs: Sequence[float] = None) -> Observable:
    """sum_k signs[k] |kets[k]><kets[k]| on a dim-level system.

    Raises
    ------
    UnknownNameException
        A ket index outside [0, dim).

    """
    if signs is None:
        signs = [1.0] * len(kets)
    if len(signs) != len(kets):
        raise DimensionMismatchException(
            "{} signs for {} kets".format(len(signs), len(kets)))
    mat = np.zeros((dim, dim), dtype=complex)
    for ket, sign in zip(kets, signs):
        if ket < 0 or ket >= dim:
            raise UnknownNameException(
                "Ket |{}> does not exist for dim {}".format(ket, dim))
        mat[ket, ket] += sign
    return Observable(mat)


def embed(op: Observable, dims: Sequence[int], index: int) -> np.ndarray:
    """I x ... x op x ... x I with op on subsystem index."""
    lifted = np.ones((1, 1), dtype=complex)
    for k, d in enumerate(dims):
        factor = op.matrix if k == index else np.eye(d, dtype=complex)
        lifted = la.kron(lifted, factor)
    return lifted


def collective_sum(obs_set: ObservableSet) -> np.ndarray:
    """sum_i I x ... x A_i x ... x I on the full space."""
    total = None
    for i, op in enumerate(obs_set.ops):
        term = embed(op, obs_set.dims, i)
        total = term if total is None else total + term
    return total


def _check_pair(obs_set: ObservableSet, i: int, j: int):
    n = len(obs_set)
    if i == j or not (0 <= i < n and 0 <= j < n):
        raise DimensionMismatchException(
            "Invalid subsystem pair ({}, {}) for {} subsystems".format(i, j, n))


def pairwise_difference(obs_set: ObservableSet, i: int, j: int) -> np.ndarray:
    """A_i x I - I x A_j on the pair space of dims (dims[i], dims[j])."""
    _check_pair(obs_set, i, j)
    a = obs_set.ops[i]
    b = obs_set.ops[j]
    return (la.kron(a.matrix, np.eye(b.local_dim)) -
            la.kron(np.eye(a.local_dim), b.matrix))


def pair_product(obs_set: ObservableSet, i: int, j: int) -> np.ndarray:
    """A_i x A_j on the pair space."""
    _check_pair(obs_set, i, j)
    return la.kron(obs_set.ops[i].matrix, obs_set.ops[j].matrix)


def observable_to_text(op: Observable) -> str:
    obj = {LOCAL_DIM: op.local_dim, MATRIX: matrix_to_rows(op.matrix)}
    return json.dumps(obj) + '\n'


def observable_from_text(text: str) -> Observable:
    """Parse the observable file format.

    Raises
    ------
    ParseException
        Missing or malformed field.
    NotHermitianException, DimensionMismatchException

    """
    obj = load_json(text)
    for key in (LOCAL_DIM, MATRIX):
        if key not in obj:
            raise ParseException("Missing field '{}'".format(key))
    local_dim = obj[LOCAL_DIM]
    if not isinstance(local_dim, int) or isinstance(local_dim, bool):
        raise ParseException("Field '{}' must be an integer".format(LOCAL_DIM))
    return Observable(rows_to_matrix(obj[MATRIX]), local_dim)


def dump_observable(op: Observable, path: str):
    with open(path, 'w', encoding='utf-8', newline='\n') as fh:
        fh.write(observable_to_text(op))
    LOG.info("Wrote observable dim {} to {}".format(op.local_dim, path))


def load_observable(path: str) -> Observable:
    with open(path, 'r', encoding='utf-8') as fh:
        return observable_from_text(fh.read())

"""Test code for states.py
   execute 'pytest' to run tests.
"""

import json
import math
import unittest
import pytest
import numpy as np

import qfiutils.states as st
from qfiutils.NotNormalizedException import NotNormalizedException
from qfiutils.ParameterOutOfRangeException import ParameterOutOfRangeException
from qfiutils.InvariantViolationException import InvariantViolationException
from qfiutils.NotHermitianException import NotHermitianException
from qfiutils.DimensionMismatchException import DimensionMismatchException
from qfiutils.ParseException import ParseException

SQRT2 = math.sqrt(2)
P_VALUES = [0.0, 0.1, 0.36, 0.5, 0.9, 1.0]
BAD_P = [-0.01, 1.01, float('nan')]
SEP_DIMS = [(2, 2), (2, 3), (3, 3), (2, 2, 2)]
FAMILIES = [st.example2_family, st.example3_family,
            lambda: st.ghz_family(4)]


@pytest.mark.states
def test_pure_density_ket0():
    rho = st.pure_density(st.PureState([1, 0], [2]))
    np.testing.assert_array_equal(rho.matrix, np.diag([1, 0]))


@pytest.mark.states
def test_pure_density_is_projector():
    rho = st.pure_density(st.example2_family().psi)
    assert abs(rho.trace() - 1.0) < 1e-12
    assert abs(rho.purity() - 1.0) < 1e-12
    np.testing.assert_allclose(rho.matrix @ rho.matrix, rho.matrix,
                               atol=1e-10)


@pytest.mark.states
def test_psi5_diagonal():
    psi5 = st.example1_kets()[4]
    diag = st.pure_density(psi5).matrix.diagonal().real
    assert abs(diag[st.ket_index('03', (4, 4))] - 0.25) < 1e-15
    assert abs(diag[st.ket_index('12', (4, 4))] - 0.25) < 1e-15
    assert abs(diag[st.ket_index('21', (4, 4))] - 0.5) < 1e-15


@pytest.mark.states
@pytest.mark.parametrize("label, dims, idx", [
    ('03', (4, 4), 3), ('21', (4, 4), 9), ('110', (2, 2, 2), 6),
    ('12', (2, 3), 5)])
def test_ket_index(label, dims, idx):
    assert st.ket_index(label, dims) == idx


@pytest.mark.states
@pytest.mark.parametrize("label", ['1', '120', '20'])
def test_ket_index_bad(label):
    with pytest.raises(DimensionMismatchException):
        st.ket_index(label, (2, 2))


@pytest.mark.states
@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("p", P_VALUES)
def test_white_noise_is_state_and_affine(family, p):
    fam = family()
    rho = fam(p)
    pure = fam(1.0).matrix
    mixed = fam(0.0).matrix
    assert abs(rho.trace() - 1.0) < 1e-12
    assert rho.spectrum.eigenvalues[0] > -1e-10
    np.testing.assert_allclose(rho.matrix, p * pure + (1 - p) * mixed,
                               atol=1e-15)


@pytest.mark.states
def test_white_noise_endpoints():
    fam = st.example2_family()
    np.testing.assert_array_equal(fam(0.0).matrix, np.eye(4) / 4)
    np.testing.assert_allclose(fam(1.0).matrix,
                               st.pure_density(fam.psi).matrix, atol=1e-16)
    assert abs(fam(0.5).matrix[0, 0].real - 25 / 72) < 1e-15


@pytest.mark.states
@pytest.mark.parametrize("p", BAD_P)
def test_white_noise_bad_p(p):
    with pytest.raises(ParameterOutOfRangeException):
        st.example2_family()(p)


@pytest.mark.states
def test_example1_kets_orthonormal():
    kets = np.array([psi.amplitudes for psi in st.example1_kets()])
    np.testing.assert_allclose(kets.conj() @ kets.T, np.eye(6), atol=1e-12)


@pytest.mark.states
def test_example1_spectrum():
    rho = st.example1_state()
    lam = rho.spectrum.eigenvalues
    assert rho.rank() == 6
    np.testing.assert_allclose(lam[-2:], [(SQRT2 - 1) / 2] * 2, atol=1e-10)
    np.testing.assert_allclose(lam[-6:-2], [(2 - SQRT2) / 4] * 4, atol=1e-10)
    np.testing.assert_allclose(lam[:-6], 0.0, atol=1e-12)


@pytest.mark.states
def test_example1_equal_mixture():
    rho = st.example1_state(0.25, 0.0)
    assert abs(rho.trace() - 1.0) < 1e-12
    assert rho.rank() == 4


@pytest.mark.states
@pytest.mark.parametrize("p, q", [(0.25, 0.1), (-0.1, 0.7), (0.2, 0.1 + 1e-9)])
def test_example1_constraint(p, q):
    with pytest.raises(ParameterOutOfRangeException):
        st.example1_state(p, q)


@pytest.mark.states
def test_example_families_normalized():
    assert st.example2_family().dims == (2, 2)
    assert st.example3_family().dims == (2, 2, 2)
    assert abs(np.linalg.norm(st.example2_family().psi.amplitudes) - 1) < 1e-15


@pytest.mark.states
def test_ghz():
    fam = st.ghz_family(3)
    amps = fam.psi.amplitudes
    assert fam.name == 'ghz3'
    assert abs(amps[0] - 1 / SQRT2) < 1e-15 and abs(amps[7] - 1 / SQRT2) < 1e-15
    with pytest.raises(DimensionMismatchException):
        st.ghz_family(1)


@pytest.mark.states
def test_product_state():
    psi = st.product_state([[1, 0], [0, 0, 1]])
    assert psi.dims == (2, 3)
    assert psi.amplitudes[st.ket_index('02', (2, 3))] == 1


@pytest.mark.states
@pytest.mark.parametrize("dims", SEP_DIMS)
@pytest.mark.parametrize("k_terms", [1, 2, 7])
def test_random_separable(dims, k_terms):
    rho = st.random_separable(dims, k_terms, seed=1234)
    again = st.random_separable(dims, k_terms, seed=1234)
    np.testing.assert_array_equal(rho.matrix, again.matrix)
    assert rho.dims == dims
    assert abs(rho.trace() - 1.0) < 1e-12
    if k_terms == 1:
        assert abs(rho.purity() - 1.0) < 1e-10


@pytest.mark.states
def test_random_separable_bad_terms():
    with pytest.raises(ParameterOutOfRangeException):
        st.random_separable((2, 2), 0, seed=1)


@pytest.mark.states
def test_reduce_keeps_order():
    rho = st.random_separable((2, 3), 3, seed=9)
    swapped = rho.reduce((1, 0))
    assert swapped.dims == (3, 2)
    np.testing.assert_allclose(swapped.reduce((1,)).matrix,
                               rho.reduce((0,)).matrix, atol=1e-14)


class TestDensityMatrix(unittest.TestCase):

    def test_not_normalized(self):
        with self.assertRaises(NotNormalizedException):
            st.PureState([1, 1], [2])

    def test_wrong_trace(self):
        with self.assertRaises(InvariantViolationException):
            st.DensityMatrix(np.eye(2), [2])

    def test_not_psd(self):
        with self.assertRaises(InvariantViolationException):
            st.DensityMatrix(np.diag([1.5, -0.5]), [2])

    def test_not_hermitian(self):
        with self.assertRaises(NotHermitianException):
            st.DensityMatrix([[0.5, 0.1], [0.0, 0.5]], [2])

    def test_dims(self):
        with self.assertRaises(DimensionMismatchException):
            st.DensityMatrix(np.eye(4) / 4, [3])


@pytest.mark.states
@pytest.mark.parametrize("dims", SEP_DIMS)
def test_state_text_round_trip(dims):
    rho = st.random_separable(dims, 3, seed=77)
    back = st.state_from_text(st.state_to_text(rho))
    assert back.dims == rho.dims
    np.testing.assert_array_equal(back.matrix, rho.matrix)


@pytest.mark.states
def test_state_file_round_trip(tmp_path):
    rho = st.example1_state()
    path = str(tmp_path / 'ex1.json')
    st.dump_state(rho, path)
    with open(path, 'rb') as fh:
        raw = fh.read()
    assert raw.endswith(b'\n') and b'\r' not in raw
    np.testing.assert_array_equal(st.load_state(path).matrix, rho.matrix)


@pytest.mark.states
@pytest.mark.parametrize("text, field", [
    ('{"dims": [2]}', 'matrix'),
    ('{"matrix": [[[1, 0]]]}', 'dims'),
    ('{"dims": "2", "matrix": [[[1, 0]]]}', 'dims'),
    ('{"dims": [2], "matrix": [[[1, 0], [0, 0]], [[0, 0]]]}', 'matrix'),
    ('{"dims": [2], "matrix": [[[1, 0], [0]], [[0, 0], [0, 0]]]}', 'matrix'),
    ('{"dims": [1], "matrix": [[["1", 0]]]}', 'matrix'),
])
def test_state_parse_errors(text, field):
    with pytest.raises(ParseException) as err:
        st.state_from_text(text)
    assert field in str(err.value)


@pytest.mark.states
def test_state_parse_invalid_json():
    with pytest.raises(ParseException):
        st.state_from_text('{"dims": [2], ')
    with pytest.raises(ParseException):
        st.state_from_text('[1, 2]')


@pytest.mark.states
def test_state_parse_rejects_bad_trace():
    text = json.dumps({'dims': [2],
                       'matrix': [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]})
    with pytest.raises(InvariantViolationException):
        st.state_from_text(text)

"""Test code for qfi.py
   execute 'pytest' to run tests.
"""

import math
import pytest
import numpy as np
from hypothesis import given, settings, strategies as hst

import qfiutils.states as st
import qfiutils.observables as obs
import qfiutils.qfi as qf
from qfiutils.DimensionMismatchException import DimensionMismatchException
from qfiutils.ParameterOutOfRangeException import ParameterOutOfRangeException

SQRT2 = math.sqrt(2)
GRID = np.linspace(0.0, 1.0, 101)
SZ = obs.pauli('z')
EX1_OP = obs.projector(4, [0, 1, 2, 3], [1, 1, -1, -1])


def random_hermitian(n, rng):
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (g + g.conj().T) / 2


def random_mixed(dims, rng):
    d = int(np.prod(dims))
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = g @ g.conj().T
    return st.DensityMatrix(rho / np.trace(rho).real, dims)


def random_pure(dims, rng):
    d = int(np.prod(dims))
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return st.PureState(v / np.linalg.norm(v), dims)


@pytest.mark.qfi
@pytest.mark.parametrize("dims", [(2,), (2, 2), (2, 3), (2, 2, 2)])
def test_maximally_mixed_qfi_is_zero(dims):
    rho = st.maximally_mixed(dims)
    op = random_hermitian(rho.dim, np.random.default_rng(1))
    res = qf.qfi(rho, op)
    assert res.value == 0.0
    assert res.rank_used == rho.dim


@pytest.mark.qfi
@settings(deadline=None, max_examples=40)
@given(hst.integers(min_value=0, max_value=2**32 - 1),
       hst.sampled_from([(2,), (2, 2), (2, 3), (3, 3)]))
def test_pure_qfi_equals_variance(seed, dims):
    rng = np.random.default_rng(seed)
    psi = random_pure(dims, rng)
    op = random_hermitian(psi.dim, rng)
    rho = st.pure_density(psi)
    res = qf.qfi(rho, op)
    assert res.rank_used == 1
    assert abs(res.value - qf.variance(rho, op)) < 1e-9
    assert abs(qf.pure_qfi(psi, op) - qf.variance(rho, op)) < 1e-9


@pytest.mark.qfi
@pytest.mark.slow
def test_qfi_below_variance():
    rng = np.random.default_rng(2024)
    for k in range(500):
        dims = [(2, 2), (2, 3), (3,)][k % 3]
        rho = random_mixed(dims, rng)
        op = random_hermitian(rho.dim, rng)
        value = qf.qfi(rho, op).value
        assert -1e-12 <= value <= qf.variance(rho, op) + 1e-9


@pytest.mark.qfi
@pytest.mark.parametrize("family, ops", [
    (st.example2_family, [SZ, SZ]),
    (st.example3_family, [SZ, SZ, SZ]),
    (st.example3_family, [obs.projector(2, [1], [-1]),
                          obs.projector(2, [1], [-1]),
                          obs.projector(2, [0])]),
    (lambda: st.ghz_family(4), [SZ] * 4),
])
def test_closed_form_qfi(family, ops):
    fam = family()
    total = obs.collective_sum(obs.ObservableSet(ops))
    for p in GRID:
        numeric = qf.qfi(fam(p), total).value
        assert abs(numeric - qf.qfi_noisy_closed_form(fam, total, p)) < 1e-8


@pytest.mark.qfi
def test_example2_curves():
    fam = st.example2_family()
    pair = obs.ObservableSet([SZ, SZ])
    total = obs.collective_sum(pair)
    diff = obs.pairwise_difference(pair, 0, 1)
    for p in GRID:
        rho = fam(p)
        assert abs(qf.qfi(rho, total).value - 64 * p * p / (9 * p + 9)) < 1e-8
        assert abs(qf.variance(rho, diff) -
                   (2 - 4 * p * p / 81 - 14 * p / 9)) < 1e-8


@pytest.mark.qfi
def test_example3_qfi_values():
    fam = st.example3_family()
    minus_one = obs.projector(2, [1], [-1])
    triple = obs.ObservableSet([minus_one, minus_one, obs.projector(2, [0])])
    spins = obs.ObservableSet([SZ] * 3)
    for p in (0.2, 0.5, 1.0):
        rho = fam(p)
        assert abs(qf.qfi(rho, obs.collective_sum(triple)).value -
                   656 * p * p / (243 * p + 81)) < 1e-8
        assert abs(qf.qfi(rho, obs.collective_sum(spins)).value -
                   2624 * p * p / (243 * p + 81)) < 1e-8


@pytest.mark.qfi
def test_expectation_values():
    zz = obs.pair_product(obs.ObservableSet([SZ, SZ]), 0, 1)
    zzz = np.kron(zz, SZ.matrix)
    assert abs(qf.expectation(st.example2_family()(1.0), zz) - 7 / 9) < 1e-12
    assert abs(qf.expectation(st.example3_family()(1.0), zzz) - 1 / 9) < 1e-12


@pytest.mark.qfi
def test_example1_values():
    rho = st.example1_state()
    pair = obs.ObservableSet([EX1_OP, EX1_OP])
    lhs = qf.qfi(rho, obs.collective_sum(pair)).value
    rhs = qf.variance(rho, obs.pairwise_difference(pair, 0, 1))
    assert abs(lhs - (8 - 4 * SQRT2)) < 1e-9
    assert abs(rhs - (4 * SQRT2 - 4)) < 1e-9


@pytest.mark.qfi
@pytest.mark.parametrize("seed", [3, 17, 101])
def test_theorem1_terms_identity(seed):
    rng = np.random.default_rng(seed)
    rho = random_mixed((2, 3), rng)
    a = obs.Observable(random_hermitian(2, rng))
    b = obs.Observable(random_hermitian(3, rng))
    terms = qf.theorem1_terms(rho, a, b)
    assert abs(terms['var_sum'] - terms['var_diff'] - 4 * terms['cov']) < 1e-9
    assert terms['qfi'] <= terms['var_sum'] + 1e-9


@pytest.mark.qfi
@settings(deadline=None, max_examples=30)
@given(hst.integers(min_value=0, max_value=2**32 - 1))
def test_unitary_covariance(seed):
    rng = np.random.default_rng(seed)
    rho = random_mixed((2, 2), rng)
    op = random_hermitian(4, rng)
    u, _ = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
    rotated = st.DensityMatrix(u @ rho.matrix @ u.conj().T, (2, 2))
    value = qf.qfi(rho, op).value
    assert abs(qf.qfi(rotated, u @ op @ u.conj().T).value - value) < 1e-9


@pytest.mark.qfi
def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchException):
        qf.qfi(st.maximally_mixed((2, 2)), SZ.matrix)
    with pytest.raises(DimensionMismatchException):
        qf.covariance(st.maximally_mixed((2, 2, 2)), SZ, SZ)


@pytest.mark.qfi
def test_noise_prefactor_endpoints():
    assert qf.noise_prefactor(0.0, 4) == 0.0
    assert qf.noise_prefactor(1.0, 4) == 1.0
    with pytest.raises(ParameterOutOfRangeException):
        qf.qfi_noisy_closed_form(st.example2_family(), np.eye(4), 1.5)


@pytest.mark.qfi
@pytest.mark.parametrize("seed", [5, 23, 77])
def test_covariance_of_product_state_vanishes(seed):
    rng = np.random.default_rng(seed)
    rho_a = random_mixed((2,), rng).matrix
    rho_b = random_mixed((3,), rng).matrix
    rho = st.DensityMatrix(np.kron(rho_a, rho_b), (2, 3))
    a = obs.Observable(random_hermitian(2, rng))
    b = obs.Observable(random_hermitian(3, rng))
    assert abs(qf.covariance(rho, a, b)) < 1e-12


@pytest.mark.qfi
@pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 3)])
def test_covariance_maximally_mixed(dims):
    rng = np.random.default_rng(sum(dims))
    a = obs.Observable(random_hermitian(dims[0], rng))
    b = obs.Observable(random_hermitian(dims[1], rng))
    assert abs(qf.covariance(st.maximally_mixed(dims), a, b)) < 1e-12


@pytest.mark.qfi
def test_covariance_example2():
    rho = st.example2_family()(1.0)
    pair = obs.ObservableSet([SZ, SZ])
    zz = qf.expectation(rho, obs.pair_product(pair, 0, 1))
    z_left = qf.expectation(rho, obs.embed(SZ, (2, 2), 0))
    z_right = qf.expectation(rho, obs.embed(SZ, (2, 2), 1))
    assert abs(zz - 7 / 9) < 1e-12
    assert abs(z_left + 1 / 9) < 1e-12
    assert abs(z_right - 1 / 9) < 1e-12
    assert abs(qf.covariance(rho, SZ, SZ) - (zz - z_left * z_right)) < 1e-12
    assert abs(qf.covariance(rho, SZ, SZ) - 64 / 81) < 1e-12

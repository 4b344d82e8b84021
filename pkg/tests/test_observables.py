import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zcorr.errors import DegenerateObservable, NonHermitianInput
from zcorr.observables import (
    SIGMA_X,
    SIGMA_Z,
    HermitianObservable,
    ObservableParams,
    assemble,
    covariance,
    expectation,
    local_pair,
)
from zcorr.quantum_state import Amplitudes, StateParams, to_amplitudes

from conftest import R2, oracle_covariance, oracle_matrix

PHI_PLUS = to_amplitudes(StateParams(R2, 0, 0, R2))
SZ = HermitianObservable.from_matrix(SIGMA_Z)
SX = HermitianObservable.from_matrix(SIGMA_X)
ID = HermitianObservable.from_matrix(np.eye(2))


def random_state(rng):
    z = rng.normal(size=4) + 1j * rng.normal(size=4)
    return Amplitudes.from_vector(z / np.linalg.norm(z))


def random_obs(rng):
    return ObservableParams.signed(*rng.normal(size=3).tolist(), rng.uniform(0, 2 * math.pi))


class TestAssemble:
    def test_sx_minus_sz(self):
        m = assemble(ObservableParams(0, -1, 1, 0)).matrix
        np.testing.assert_array_equal(m, SIGMA_X - SIGMA_Z)

    def test_sx_plus_sz(self):
        m = assemble(ObservableParams(0, 1, 1, 0)).matrix
        np.testing.assert_array_equal(m, SIGMA_X + SIGMA_Z)

    def test_complex_offdiag(self):
        m = assemble(ObservableParams(5, 0, 1, math.pi / 2)).matrix
        np.testing.assert_allclose(m, [[5, 1j], [-1j, 5]], atol=1e-15)

    def test_degenerate(self):
        with pytest.raises(DegenerateObservable):
            assemble(ObservableParams(3.0, 0.0, 0.0, 0.0))

    def test_hermitian_exactly(self, rng):
        for _ in range(100):
            h = assemble(random_obs(rng))
            assert h.m21 == h.m12.conjugate()

    def test_signed_offdiag_absorbed_into_phase(self):
        p = ObservableParams.signed(0.0, 1.0, -0.5, 0.0)
        assert p.offdiag == 0.5 and p.phase == pytest.approx(math.pi)
        np.testing.assert_allclose(assemble(p).matrix, [[1, -0.5], [-0.5, -1]], atol=1e-15)

    def test_non_hermitian_rejected(self):
        with pytest.raises(NonHermitianInput):
            HermitianObservable.from_matrix([[1, 1], [0, 1]])


class TestLocalPair:
    def test_sz_on_a(self):
        x, _ = local_pair(SZ, SX)
        np.testing.assert_array_equal(x, np.diag([1, 1, -1, -1]))

    def test_identity(self):
        x, y = local_pair(ID, ID)
        np.testing.assert_array_equal(x, np.eye(4))
        np.testing.assert_array_equal(y, np.eye(4))

    def test_sx_sx_product_is_swap(self):
        x, y = local_pair(SX, SX)
        # order 11,12,21,22: 11<->22, 12<->21
        expected = np.array([[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]])
        np.testing.assert_array_equal(x @ y, expected)

    def test_commute(self, rng):
        for _ in range(200):
            x, y = local_pair(assemble(random_obs(rng)), assemble(random_obs(rng)))
            assert np.max(np.abs(x @ y - y @ x)) < 1e-13


class TestExpectation:
    def test_identity_is_one(self, rng):
        for _ in range(20):
            assert expectation(random_state(rng), np.eye(4)) == pytest.approx(1.0, abs=1e-14)

    def test_phi_plus_sz(self):
        assert expectation(PHI_PLUS, np.kron(SIGMA_Z, np.eye(2))) == pytest.approx(0.0, abs=1e-15)

    def test_phi_plus_sx_sx(self):
        assert expectation(PHI_PLUS, np.kron(SIGMA_X, SIGMA_X)) == pytest.approx(1.0, abs=1e-15)

    def test_non_hermitian_operator(self):
        op = np.zeros((4, 4), dtype=complex)
        op[0, 3] = 1j
        with pytest.raises(NonHermitianInput):
            expectation(PHI_PLUS, op)


class TestCovariance:
    def test_paper_pair_on_phi_plus(self):
        for q0, r0 in [(0, 0), (2.5, -1.0), (-7, 3)]:
            qa = assemble(ObservableParams(q0, -1, 1, 0))
            rb = assemble(ObservableParams(r0, 1, 1, 0))
            assert abs(covariance(PHI_PLUS, qa, rb).covariance) < 1e-14

    def test_sz_sz_on_phi_plus(self):
        rep = covariance(PHI_PLUS, SZ, SZ)
        assert rep.e_xy == pytest.approx(1.0, abs=1e-15)
        assert rep.e_x == pytest.approx(0.0, abs=1e-15)
        assert rep.e_y == pytest.approx(0.0, abs=1e-15)
        assert rep.covariance == pytest.approx(1.0, abs=1e-15)

    def test_matches_index_sum_oracle(self, rng):
        for _ in range(300):
            state = random_state(rng)
            a, b = random_obs(rng), random_obs(rng)
            expected = oracle_covariance(
                state.vector.reshape(2, 2),
                oracle_matrix(a.center, a.eps, a.offdiag, a.phase),
                oracle_matrix(b.center, b.eps, b.offdiag, b.phase),
            )
            assert covariance(state, assemble(a), assemble(b)).covariance == pytest.approx(expected, abs=1e-12)

    def test_product_states_uncorrelated(self, rng):
        worst = 0.0
        for _ in range(1000):
            u = rng.normal(size=2) + 1j * rng.normal(size=2)
            w = rng.normal(size=2) + 1j * rng.normal(size=2)
            v = np.kron(u / np.linalg.norm(u), w / np.linalg.norm(w))
            rep = covariance(Amplitudes.from_vector(v), assemble(random_obs(rng)), assemble(random_obs(rng)))
            worst = max(worst, abs(rep.covariance))
        assert worst < 1e-10


finite = st.floats(-5, 5, allow_nan=False)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1), finite, finite)
def test_center_shift_invariance(seed, dq, dr):
    rng = np.random.default_rng(seed)
    state = random_state(rng)
    a, b = random_obs(rng), random_obs(rng)
    base = covariance(state, assemble(a), assemble(b)).covariance
    a2 = ObservableParams(a.center + dq, a.eps, a.offdiag, a.phase)
    b2 = ObservableParams(b.center + dr, b.eps, b.offdiag, b.phase)
    assert covariance(state, assemble(a2), assemble(b2)).covariance == pytest.approx(base, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(-4, 4, allow_nan=False))
def test_traceless_part_scaling_is_linear(seed, c):
    rng = np.random.default_rng(seed)
    state = random_state(rng)
    a, b = random_obs(rng), random_obs(rng)
    if abs(c) < 1e-3 or a.eps**2 + a.offdiag**2 < 1e-6:
        return
    base = covariance(state, assemble(a), assemble(b)).covariance
    scaled = ObservableParams.signed(a.center, c * a.eps, c * a.offdiag, a.phase)
    assert covariance(state, assemble(scaled), assemble(b)).covariance == pytest.approx(c * base, abs=1e-12)

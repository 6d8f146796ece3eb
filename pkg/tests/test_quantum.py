import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bellcheck import linalg
from bellcheck.errors import DimensionError, NotDichotomicError, NotHermitianError
from bellcheck.quantum import (
    ChshSettings,
    Observable,
    QuantumState,
    bell_operator,
    chsh_value,
    commutator_norm_expectation,
    commutator_observable,
    expectation,
    entangled_state,
    entangled_state_vector,
    pauli,
    random_hermitian,
    random_state,
    tsirelson_max,
    two_qubit,
    xy_settings,
)

SQRT2 = math.sqrt(2)
seeds = st.integers(0, 2**32 - 1)


def test_pauli_matrices():
    assert np.array_equal(pauli("x").matrix, [[0, 1], [1, 0]])
    assert np.array_equal(pauli("z").matrix, np.diag([1, -1]))
    y = pauli("y").matrix
    assert linalg.allclose(y @ y, np.eye(2))
    with pytest.raises(ValueError):
        pauli("w")


class TestTwoQubit:
    def test_zz_spectrum(self):
        assert linalg.hermitian_eigenvalues(two_qubit("z", "z").matrix) == [-1, -1, 1, 1]

    def test_identity_axis(self):
        obs = two_qubit("x", "identity")
        assert linalg.allclose(obs.matrix, np.kron(pauli("x").matrix, np.eye(2)))
        assert obs.label == "s1_x s2_identity"

    def test_xx_yy_is_minus_zz(self):
        xx, yy, zz = two_qubit("x", "x"), two_qubit("y", "y"), two_qubit("z", "z")
        assert linalg.allclose(xx.matrix @ yy.matrix, -zz.matrix)


class TestEntangledState:
    def test_normalised_and_pure(self):
        rho = entangled_state().rho
        assert abs(linalg.trace(rho) - 1) <= 1e-12
        assert abs(linalg.trace(rho @ rho) - 1) <= 1e-12
        assert sum(1 for w in linalg.hermitian_eigenvalues(rho) if abs(w) > 1e-10) == 1

    def test_amplitudes(self):
        # |+1>|+2> = |0>|1>, |-1>|-2> = |1>|0>
        psi = entangled_state_vector()
        assert np.allclose(psi, [0, 1 / SQRT2, np.exp(1j * math.pi / 4) / SQRT2, 0])

    def test_zz_correlation(self):
        # both amplitudes sit in the odd-parity z sector under this labelling
        assert abs(expectation(entangled_state(), two_qubit("z", "z")) + 1) <= 1e-12

    def test_partial_sums(self):
        s = entangled_state()
        e = {a + b: expectation(s, two_qubit(a, b)) for a in "xy" for b in "xy"}
        assert abs(e["xx"] + e["yy"] - SQRT2) <= 1e-10
        assert abs(-e["xy"] + e["yx"] - SQRT2) <= 1e-10

    def test_direct_amplitude_oracle(self):
        # <psi| A |psi> computed from the vector, independent of density matrices
        psi = entangled_state_vector()
        for a in "xy":
            for b in "xy":
                direct = (psi.conj() @ np.kron(pauli(a).matrix, pauli(b).matrix) @ psi).real
                assert abs(direct - expectation(entangled_state(), two_qubit(a, b))) <= 1e-12


class TestExpectation:
    def test_identity_is_one(self, rng):
        for dim in (2, 4):
            st_ = random_state(dim, rng)
            assert abs(expectation(st_, Observable("I", np.eye(dim))) - 1) <= 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            expectation(entangled_state(), pauli("x"))

    @settings(max_examples=50)
    @given(st.sampled_from([2, 4, 8]), seeds)
    def test_real_for_hermitian(self, dim, seed):
        rng = np.random.default_rng(seed)
        st_, h = random_state(dim, rng), random_hermitian(dim, rng)
        assert abs(linalg.trace(st_.rho @ h.matrix).imag) <= 1e-12
        expectation(st_, h)


class TestChsh:
    def test_entangled_state(self):
        assert abs(chsh_value(entangled_state(), xy_settings()) - 2 * SQRT2) <= 1e-10

    def test_maximally_mixed(self):
        assert abs(chsh_value(QuantumState.maximally_mixed(4), xy_settings())) <= 1e-15

    def test_product_state(self):
        s = QuantumState.from_vector("00", [1, 0, 0, 0])
        assert abs(chsh_value(s, xy_settings())) <= 1e-15

    def test_settings_must_be_dichotomic(self):
        with pytest.raises(NotDichotomicError):
            ChshSettings(pauli("x"), Observable("2z", 2 * pauli("z").matrix), pauli("x"), pauli("y"))

    @settings(max_examples=100)
    @given(seeds)
    def test_bounded_by_tsirelson_max(self, seed):
        rng = np.random.default_rng(seed)
        s = random_state(4, rng, rank=int(rng.integers(1, 5)))
        assert chsh_value(s, xy_settings()) <= tsirelson_max(xy_settings()) + 1e-9


class TestTsirelson:
    def test_xy_settings(self):
        assert abs(tsirelson_max(xy_settings()) - 2 * SQRT2) <= 1e-10

    def test_all_x_settings(self):
        x = pauli("x")
        cfg = ChshSettings(x, x, x, x)
        assert linalg.allclose(bell_operator(cfg).matrix, 2 * two_qubit("x", "x").matrix)
        assert abs(tsirelson_max(cfg) - 2) <= 1e-12
        assert tsirelson_max(cfg) <= 2 + 1e-12


class TestCommutatorObservable:
    def test_xy_is_four_identity(self):
        f = commutator_observable(pauli("x"), pauli("y"))
        assert linalg.allclose(f.matrix, 4 * np.eye(2))

    def test_self_vanishes(self):
        assert np.all(commutator_observable(pauli("x"), pauli("x")).matrix == 0)

    def test_disjoint_vanishes(self):
        f = commutator_observable(two_qubit("x", "i"), two_qubit("i", "y"))
        assert np.all(f.matrix == 0)

    def test_dim_mismatch(self):
        with pytest.raises(DimensionError):
            commutator_observable(pauli("x"), two_qubit("x", "x"))

    def test_norm_expectations(self, rng):
        assert commutator_norm_expectation(random_state(4, rng), two_qubit("x", "i"), two_qubit("i", "y")) == 0
        assert abs(commutator_norm_expectation(random_state(2, rng), pauli("x"), pauli("y")) - 4) <= 1e-10
        assert commutator_norm_expectation(entangled_state(), two_qubit("x", "x"), two_qubit("x", "y")) > 0

    def test_equals_minus_commutator_squared(self, rng):
        a, b = random_hermitian(4, rng), random_hermitian(4, rng)
        c = linalg.commutator(a.matrix, b.matrix)
        assert linalg.allclose(commutator_observable(a, b).matrix, -(c @ c), 1e-10)

    @settings(max_examples=50)
    @given(st.sampled_from([2, 4]), seeds)
    def test_psd_and_symmetric(self, dim, seed):
        rng = np.random.default_rng(seed)
        a, b = random_hermitian(dim, rng), random_hermitian(dim, rng)
        fab, fba = commutator_observable(a, b), commutator_observable(b, a)
        assert linalg.hermitian_eigenvalues(fab.matrix)[0] >= -1e-10
        assert linalg.allclose(fab.matrix, fba.matrix, 1e-10)


def test_state_validation():
    with pytest.raises(ValueError):
        QuantumState("bad trace", np.eye(2))
    with pytest.raises(ValueError):
        QuantumState("negative", np.diag([1.5, -0.5]))
    with pytest.raises(NotHermitianError):
        Observable("nh", [[0, 1], [0, 0]])


def test_observable_matrix_is_frozen():
    obs = pauli("x")
    with pytest.raises(ValueError):
        obs.matrix[0, 0] = 5

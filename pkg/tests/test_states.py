"""Tests for state preparation, the rotation matrices, boosting, and the maps."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import wignerlab.states as st_mod
from wignerlab.states import (
    Frame,
    HelicityClass,
    SpinMomentumState,
    boost_state,
    controlled_u_psi_to_xi,
    local_unitary_psi_to_psitilde,
    prepare_state,
    state_from_json_dict,
    wigner_rotation_matrix,
)

etas = st.floats(min_value=0.0, max_value=2 * math.pi, exclude_max=True)
deltas = st.floats(min_value=0.0, max_value=math.pi)


def _random_state(rng) -> SpinMomentumState:
    amps = rng.normal(size=4) + 1j * rng.normal(size=4)
    amps /= np.linalg.norm(amps)
    return SpinMomentumState(amplitudes=amps, frame=Frame.BOOSTED)


class TestPrepare:
    def test_equal_plus_amplitudes(self):
        s = prepare_state(HelicityClass.EQUAL_PLUS, 0.3)
        expected = [math.cos(0.3), 0.0, 0.0, math.sin(0.3)]
        assert np.abs(s.amplitudes - expected).max() < 1e-15
        assert s.frame is Frame.REST
        assert s.eta == 0.3 and s.delta is None

    def test_equal_minus_amplitudes(self):
        s = prepare_state(HelicityClass.EQUAL_MINUS, 0.3)
        expected = [0.0, math.cos(0.3), math.sin(0.3), 0.0]
        assert np.abs(s.amplitudes - expected).max() < 1e-15

    def test_unequal_is_product(self):
        s = prepare_state(HelicityClass.UNEQUAL, 1.1)
        expected = [math.cos(1.1), 0.0, math.sin(1.1), 0.0]
        assert np.abs(s.amplitudes - expected).max() < 1e-15
        # momentum (x) spin product: the 2x2 amplitude matrix has rank 1
        assert np.linalg.svd(s.amplitudes.reshape(2, 2), compute_uv=False)[1] < 1e-15

    def test_bell_point(self):
        s = prepare_state(HelicityClass.EQUAL_PLUS, math.pi / 4)
        inv_sqrt2 = 1 / math.sqrt(2)
        assert np.abs(s.amplitudes - [inv_sqrt2, 0, 0, inv_sqrt2]).max() < 1e-15

    def test_basis_ket_at_zero(self):
        s = prepare_state(HelicityClass.EQUAL_PLUS, 0.0)
        assert np.array_equal(s.amplitudes, [1, 0, 0, 0])

    def test_eta_domain(self):
        for bad in (-0.1, 2 * math.pi, 7.0):
            with pytest.raises(ValueError):
                prepare_state(HelicityClass.EQUAL_PLUS, bad)

    @given(etas)
    @settings(max_examples=100, deadline=None)
    def test_unit_norm(self, eta):
        for cls in HelicityClass:
            s = prepare_state(cls, eta)
            assert abs(np.sum(np.abs(s.amplitudes) ** 2) - 1.0) < 1e-12


class TestRotationMatrix:
    def test_identity_at_zero(self):
        assert np.array_equal(wigner_rotation_matrix(0.0, +1), np.eye(2))

    def test_quarter_turn_at_pi(self):
        assert np.allclose(
            wigner_rotation_matrix(math.pi, +1), [[0, 1], [-1, 0]], atol=1e-16
        )

    @given(deltas)
    @settings(max_examples=100, deadline=None)
    def test_unitary_det_one_and_transpose_relation(self, delta):
        up = wigner_rotation_matrix(delta, +1)
        down = wigner_rotation_matrix(delta, -1)
        assert np.abs(up @ up.T - np.eye(2)).max() < 1e-12
        assert np.linalg.det(up) == pytest.approx(1.0, abs=1e-12)
        assert np.array_equal(down, up.T)

    def test_validation(self):
        with pytest.raises(ValueError):
            wigner_rotation_matrix(0.5, 0)
        with pytest.raises(ValueError):
            wigner_rotation_matrix(-0.1, +1)
        with pytest.raises(ValueError):
            wigner_rotation_matrix(3.5, +1)


class TestBoost:
    def test_zero_delta_is_identity(self):
        s = prepare_state(HelicityClass.EQUAL_PLUS, 0.77)
        b = boost_state(s, 0.0)
        assert np.array_equal(b.amplitudes, s.amplitudes)
        assert b.frame is Frame.BOOSTED and b.delta == 0.0

    def test_equal_plus_closed_form(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            eta = rng.uniform(0.0, 2 * math.pi)
            delta = rng.uniform(0.0, math.pi)
            b = boost_state(prepare_state(HelicityClass.EQUAL_PLUS, eta), delta)
            c, s = math.cos(eta), math.sin(eta)
            ch, sh = math.cos(delta / 2), math.sin(delta / 2)
            expected = np.array([c * ch, -c * sh, -s * sh, s * ch])
            assert np.abs(b.amplitudes - expected).max() < 1e-12

    def test_unequal_closed_form(self):
        eta, delta = 0.6, 1.2
        b = boost_state(prepare_state(HelicityClass.UNEQUAL, eta), delta)
        c, s = math.cos(eta), math.sin(eta)
        ch, sh = math.cos(delta / 2), math.sin(delta / 2)
        expected = np.array([c * ch, -c * sh, s * ch, s * sh])
        assert np.abs(b.amplitudes - expected).max() < 1e-12

    def test_half_pi_disentangles_equal_helicity(self):
        # (cos eta |p+> - sin eta |p->) (x) (|up> - |down>)/sqrt(2)
        eta = 0.3
        b = boost_state(prepare_state(HelicityClass.EQUAL_PLUS, eta), math.pi / 2)
        c, s = math.cos(eta) / math.sqrt(2), math.sin(eta) / math.sqrt(2)
        expected = np.array([c, -c, -s, s])
        assert np.abs(b.amplitudes - expected).max() < 1e-12
        assert np.linalg.svd(b.amplitudes.reshape(2, 2), compute_uv=False)[1] < 1e-12

    def test_rejects_already_boosted(self):
        b = boost_state(prepare_state(HelicityClass.EQUAL_PLUS, 0.2), 0.4)
        with pytest.raises(ValueError, match="already boosted"):
            boost_state(b, 0.1)

    def test_delta_domain(self):
        s = prepare_state(HelicityClass.EQUAL_PLUS, 0.2)
        with pytest.raises(ValueError):
            boost_state(s, -0.5)

    @given(etas, deltas)
    @settings(max_examples=100, deadline=None)
    def test_norm_preserved(self, eta, delta):
        for cls in HelicityClass:
            b = boost_state(prepare_state(cls, eta), delta)
            assert abs(np.sum(np.abs(b.amplitudes) ** 2) - 1.0) < 1e-12


class TestLocalUnitaryMap:
    def test_maps_boosted_psi_to_boosted_psitilde(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            eta = rng.uniform(0.0, 2 * math.pi)
            delta = rng.uniform(0.0, math.pi)
            psi_b = boost_state(prepare_state(HelicityClass.EQUAL_PLUS, eta), delta)
            tilde_b = boost_state(prepare_state(HelicityClass.EQUAL_MINUS, eta), delta)
            mapped = local_unitary_psi_to_psitilde(psi_b)
            assert np.abs(mapped.amplitudes - tilde_b.amplitudes).max() < 1e-12
            assert mapped.helicity_class is HelicityClass.EQUAL_MINUS

    def test_twice_is_identity_up_to_global_phase(self):
        s = _random_state(np.random.default_rng(2))
        twice = local_unitary_psi_to_psitilde(local_unitary_psi_to_psitilde(s))
        assert np.abs(twice.amplitudes + s.amplitudes).max() < 1e-15  # phase -1

    def test_norm_preserved_on_random_state(self):
        s = _random_state(np.random.default_rng(3))
        out = local_unitary_psi_to_psitilde(s)
        assert abs(np.sum(np.abs(out.amplitudes) ** 2) - 1.0) < 1e-12


class TestControlledUMap:
    def test_maps_boosted_psi_to_boosted_xi(self):
        rng = np.random.default_rng(4)
        for _ in range(50):
            eta = rng.uniform(0.0, 2 * math.pi)
            delta = rng.uniform(0.0, math.pi)
            psi_b = boost_state(prepare_state(HelicityClass.EQUAL_PLUS, eta), delta)
            xi_b = boost_state(prepare_state(HelicityClass.UNEQUAL, eta), delta)
            mapped = controlled_u_psi_to_xi(psi_b)
            assert np.abs(mapped.amplitudes - xi_b.amplitudes).max() < 1e-12
            assert mapped.helicity_class is HelicityClass.UNEQUAL

    def test_control_branch_untouched(self):
        s = _random_state(np.random.default_rng(5))
        out = controlled_u_psi_to_xi(s)
        assert np.array_equal(out.amplitudes[:2], s.amplitudes[:2])

    def test_norm_preserved(self):
        s = _random_state(np.random.default_rng(6))
        out = controlled_u_psi_to_xi(s)
        assert abs(np.sum(np.abs(out.amplitudes) ** 2) - 1.0) < 1e-12


class TestStateType:
    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError, match="normalized"):
            SpinMomentumState(amplitudes=np.array([1.0, 1.0, 0.0, 0.0]))

    def test_amplitudes_read_only(self):
        s = prepare_state(HelicityClass.EQUAL_PLUS, 0.4)
        with pytest.raises(ValueError):
            s.amplitudes[0] = 0.0

    def test_json_round_trip(self):
        b = boost_state(prepare_state(HelicityClass.UNEQUAL, 0.9), 1.4)
        payload = b.to_json_dict()
        assert payload["class"] == "xi"
        assert payload["frame"] == "boosted"
        assert payload["eta"] == 0.9 and payload["delta"] == 1.4
        assert len(payload["amplitudes"]) == 4
        assert all(len(pair) == 2 for pair in payload["amplitudes"])
        restored = state_from_json_dict(payload)
        assert np.abs(restored.amplitudes - b.amplitudes).max() < 1e-15
        assert restored.helicity_class is HelicityClass.UNEQUAL
        assert restored.frame is Frame.BOOSTED

    def test_json_rest_state_has_null_delta(self):
        s = prepare_state(HelicityClass.EQUAL_PLUS, 0.0)
        assert s.to_json_dict()["delta"] is None

    def test_amplitude_order_documented(self):
        assert st_mod.AMPLITUDE_ORDER == ("p+ up", "p+ down", "p- up", "p- down")

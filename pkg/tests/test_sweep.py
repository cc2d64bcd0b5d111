"""Tests for sweeps, extremum search, figure datasets and serialization."""

import json
import math

import numpy as np
import pytest

import wignerlab.kinematics as kin
from wignerlab.entanglement import boosted_entropy_closed_form, rest_frame_entropy
from wignerlab.states import HelicityClass
from wignerlab.sweep import (
    ExtremumKind,
    Regime,
    SweepRequest,
    SweepSeries,
    emit_figure,
    find_local_extrema,
    golden_section_minimize,
    sweep_entanglement,
    threshold_speed_region,
    wigner_angle_sweep,
)

# frozen solves: arccos(-1/D) and the delta = pi/2 crossing interval
PHI_STAR_095 = 2.1224542672159568
PHI_STAR_0995 = 2.5293976228203254
CROSS_LO = 1.82860523174277
CROSS_HI = 2.8837837486419198
REST_E_06 = 0.903094862481601  # h(cos^2 0.6)


def _request(u=0.95, cls=HelicityClass.EQUAL_PLUS, **kw):
    return SweepRequest(u=u, v=u, eta=0.6, helicity_class=cls, **kw)


class TestRequestValidation:
    def test_rejects_bad_samples(self):
        with pytest.raises(ValueError):
            _request(samples=1)

    def test_rejects_bad_range(self):
        with pytest.raises(ValueError):
            _request(phi_min=1.0, phi_max=0.5)
        with pytest.raises(ValueError):
            _request(phi_max=3.5)

    def test_rejects_bad_speed_and_eta(self):
        with pytest.raises(ValueError):
            SweepRequest(u=1.0, v=0.5, eta=0.6, helicity_class=HelicityClass.UNEQUAL)
        with pytest.raises(ValueError):
            SweepRequest(u=0.5, v=0.5, eta=-0.2, helicity_class=HelicityClass.UNEQUAL)


class TestSweep:
    def test_two_sample_endpoints_are_collinear(self):
        series = sweep_entanglement(_request(samples=2))
        assert np.array_equal(series.phi, [0.0, math.pi])
        assert np.array_equal(series.delta, [0.0, 0.0])
        assert np.abs(series.entropy - REST_E_06).max() < 1e-12

    def test_rows_match_closed_forms(self):
        series = sweep_entanglement(_request(samples=501))
        delta_ref = kin.wigner_angle_tan_form(0.95, 0.95, series.phi)
        entropy_ref = boosted_entropy_closed_form(
            0.6, series.delta, HelicityClass.EQUAL_PLUS
        )
        assert np.abs(series.delta - delta_ref).max() < 1e-15
        assert np.abs(series.entropy - entropy_ref).max() < 1e-15

    def test_sorted_and_sized(self):
        series = sweep_entanglement(_request(samples=101))
        assert series.phi.size == 101
        assert np.all(np.diff(series.phi) > 0)

    def test_threads_do_not_change_output(self):
        base = sweep_entanglement(_request(samples=777), threads=0)
        for threads in (1, 2, 5):
            other = sweep_entanglement(_request(samples=777), threads=threads)
            assert np.array_equal(base.delta, other.delta)
            assert np.array_equal(base.entropy, other.entropy)
            assert base.to_csv_text() == other.to_csv_text()

    def test_equal_helicity_never_exceeds_rest(self):
        series = sweep_entanglement(_request(u=0.995))
        assert series.entropy.max() <= rest_frame_entropy(0.6, HelicityClass.EQUAL_PLUS) + 1e-12

    def test_unequal_helicity_never_below_rest(self):
        series = sweep_entanglement(_request(cls=HelicityClass.UNEQUAL))
        assert series.entropy.min() >= -1e-15


class TestGoldenSection:
    def test_finds_parabola_minimum(self):
        assert golden_section_minimize(lambda x: (x - 1.3) ** 2, 0.0, 2.0) == pytest.approx(
            1.3, abs=1e-8
        )

    def test_maximum_via_negation(self):
        top = golden_section_minimize(lambda x: -math.sin(x), 0.0, math.pi)
        assert top == pytest.approx(math.pi / 2, abs=1e-8)

    def test_bad_bracket(self):
        with pytest.raises(ValueError):
            golden_section_minimize(lambda x: x, 1.0, 1.0)


class TestExtrema:
    def test_mid_relativistic_equal_single_minimum(self):
        series = sweep_entanglement(_request(u=0.95))
        extrema = find_local_extrema(series)
        assert len(extrema) == 1
        (ext,) = extrema
        assert ext.kind is ExtremumKind.MINIMUM
        assert ext.regime is Regime.MID
        assert not ext.plateau
        assert ext.phi == pytest.approx(PHI_STAR_095, abs=1e-6)
        assert ext.entropy == pytest.approx(0.2702086154781707, abs=1e-10)

    def test_ultra_relativistic_pattern_min_max_min(self):
        series = sweep_entanglement(_request(u=0.995))
        extrema = find_local_extrema(series)
        assert [e.kind for e in extrema] == [
            ExtremumKind.MINIMUM,
            ExtremumKind.MAXIMUM,
            ExtremumKind.MINIMUM,
        ]
        lo, top, hi = extrema
        assert lo.phi == pytest.approx(CROSS_LO, abs=1e-6)
        assert hi.phi == pytest.approx(CROSS_HI, abs=1e-6)
        assert top.phi == pytest.approx(PHI_STAR_0995, abs=1e-6)
        assert lo.entropy < 1e-10 and hi.entropy < 1e-10
        assert top.regime is Regime.ULTRA
        assert top.entropy > 0.1

    def test_unequal_mid_relativistic_single_maximum(self):
        series = sweep_entanglement(_request(u=0.95, cls=HelicityClass.UNEQUAL))
        extrema = find_local_extrema(series)
        assert len(extrema) == 1
        assert extrema[0].kind is ExtremumKind.MAXIMUM
        assert extrema[0].phi == pytest.approx(PHI_STAR_095, abs=1e-6)
        assert extrema[0].regime is Regime.MID

    def test_constant_series_has_no_extrema(self):
        series = sweep_entanglement(
            SweepRequest(u=0.95, v=0.95, eta=0.0, helicity_class=HelicityClass.EQUAL_PLUS)
        )
        assert series.entropy.max() == 0.0
        assert find_local_extrema(series) == []

    def test_synthetic_plateau_reported_once(self):
        request = _request(samples=7)
        phi = np.linspace(0.0, math.pi, 7)
        entropy = np.array([0.0, 0.2, 0.5, 0.5, 0.5, 0.2, 0.0])
        series = SweepSeries(
            request=request, phi=phi, delta=np.zeros(7), entropy=entropy
        )
        extrema = find_local_extrema(series)
        assert len(extrema) == 1
        assert extrema[0].plateau
        assert extrema[0].kind is ExtremumKind.MAXIMUM
        assert extrema[0].phi == pytest.approx((phi[2] + phi[4]) / 2, abs=1e-15)

    def test_requires_three_rows(self):
        series = sweep_entanglement(_request(samples=2))
        with pytest.raises(ValueError):
            find_local_extrema(series)

    def test_regime_agrees_with_ultra_condition(self):
        for u in (0.95, 0.995):
            series = sweep_entanglement(_request(u=u))
            for ext in find_local_extrema(series):
                assert (ext.regime is Regime.ULTRA) == kin.ultra_relativistic_condition(
                    u, u, ext.phi
                )


class TestAngleSweepAndRegion:
    def test_angle_sweep_argmax(self):
        phis = np.linspace(0.0, math.pi, 1000)
        grid_phi, delta = wigner_angle_sweep(0.995, 0.995, phis)
        best = grid_phi[np.argmax(delta)]
        assert abs(best - PHI_STAR_0995) <= phis[1] - phis[0]

    def test_angle_sweep_slow_speeds_flat(self):
        _, delta = wigner_angle_sweep(0.01, 0.01, np.linspace(0.0, math.pi, 500))
        assert np.abs(delta).max() < 1e-3

    def test_angle_sweep_endpoints_zero(self):
        _, delta = wigner_angle_sweep(0.9, 0.9, np.array([0.0, math.pi]))
        assert np.array_equal(delta, [0.0, 0.0])

    def test_threshold_region_points(self):
        speeds = np.array([0.9, 0.95, 0.99, 0.995])
        region = threshold_speed_region(3 * math.pi / 4, speeds)
        assert region.shape == (4, 4)
        assert region[3, 3]  # 0.995, 0.995
        assert not region[1, 1]  # 0.95, 0.95

    def test_threshold_region_perpendicular_always_false(self):
        speeds = np.linspace(0.0, 0.9999, 60)
        assert not threshold_speed_region(math.pi / 2, speeds).any()

    def test_threshold_region_diagonal_boundary(self):
        speeds = np.linspace(0.97, 0.999, 1000)
        diag = np.diagonal(threshold_speed_region(3 * math.pi / 4, speeds))
        first = speeds[np.argmax(diag)]
        assert first == pytest.approx(0.9851714310094161, abs=2 * (speeds[1] - speeds[0]))


class TestFigures:
    def test_3a_minimum_location(self):
        series = emit_figure("3a")
        idx = np.argmin(series.entropy)
        assert 0 < idx < series.phi.size - 1
        assert series.phi[idx] == pytest.approx(PHI_STAR_095, abs=2 * (series.phi[1] - series.phi[0]))
        assert series.metadata()["phi_star"] == pytest.approx(PHI_STAR_095, abs=1e-12)

    def test_3b_crossings_from_rows(self):
        dataset = emit_figure("3b")
        assert dataset.columns == ("phi", "delta")
        phi = dataset.rows[:, 0]
        delta = dataset.rows[:, 1]
        sign = np.sign(delta - math.pi / 2)
        flips = np.nonzero(np.diff(sign) != 0)[0]
        assert len(flips) == 2
        crossings = []
        for i in flips:
            # linear interpolation of the delta = pi/2 crossing
            t = (math.pi / 2 - delta[i]) / (delta[i + 1] - delta[i])
            crossings.append(phi[i] + t * (phi[i + 1] - phi[i]))
        assert crossings[0] == pytest.approx(CROSS_LO, abs=1e-3)
        assert crossings[1] == pytest.approx(CROSS_HI, abs=1e-3)
        meta = dataset.metadata["delta_half_pi_crossings"]
        assert meta[0] == pytest.approx(CROSS_LO, abs=1e-12)
        assert meta[1] == pytest.approx(CROSS_HI, abs=1e-12)

    def test_3c_metadata_and_zeros(self):
        series = emit_figure("3c")
        meta = series.metadata()
        assert meta["phi_star"] == pytest.approx(PHI_STAR_0995, abs=1e-12)
        assert meta["delta_half_pi_crossings"][0] == pytest.approx(CROSS_LO, abs=1e-12)
        assert series.entropy.min() < 1e-6

    def test_1a_schema(self):
        dataset = emit_figure("1a", samples=51)
        assert dataset.columns == ("u", "phi", "delta")
        assert dataset.rows.shape == (3 * 51, 3)
        # relativistic limit visible: at the highest speed delta approaches phi
        top = dataset.rows[dataset.rows[:, 0] == dataset.rows[:, 0].max()]
        for phi in (math.pi / 4, math.pi / 2):
            row = top[np.isclose(top[:, 1], phi)]
            assert abs(row[0, 2] - phi) < 0.15

    def test_1b_schema_and_curves(self):
        dataset = emit_figure("1b", samples=201)
        assert dataset.columns == ("u", "phi", "delta")
        assert dataset.rows.shape == (4 * 201, 3)
        assert dataset.metadata["speeds"] == [0.5, 0.9, 0.99, 0.999]

    def test_1c_region_and_threshold(self):
        dataset = emit_figure("1c", samples=101)
        assert dataset.columns == ("u", "v", "ultra")
        assert dataset.rows.shape == (101 * 101, 3)
        assert set(np.unique(dataset.rows[:, 2])) <= {0.0, 1.0}
        assert dataset.metadata["equal_speed_threshold"] == pytest.approx(
            0.9851714310094161, abs=1e-12
        )
        # the corner point (max u, max v) is deep in the ultra region
        assert dataset.rows[-1, 2] == 1.0

    def test_unknown_figure(self):
        with pytest.raises(ValueError, match="unknown figure"):
            emit_figure("9z")

    def test_samples_override_validation(self):
        with pytest.raises(ValueError):
            emit_figure("3a", samples=1)


class TestSerialization:
    def test_csv_layout(self):
        series = sweep_entanglement(_request(samples=3))
        text = series.to_csv_text()
        lines = text.split("\n")
        assert lines[0] == "phi,delta,entropy_bits"
        assert len(lines) == 5 and lines[-1] == ""  # header + 3 rows + final LF
        assert "\r" not in text

    def test_csv_has_17_significant_digits(self):
        series = sweep_entanglement(_request(samples=3))
        mid = series.to_csv_text().split("\n")[2].split(",")
        assert mid[0] == f"{math.pi / 2:.17g}"
        assert float(mid[1]) == series.delta[1]  # round-trips exactly

    def test_csv_deterministic(self):
        a = sweep_entanglement(_request(samples=200)).to_csv_text()
        b = sweep_entanglement(_request(samples=200)).to_csv_text()
        assert a == b

    def test_json_layout(self):
        series = sweep_entanglement(_request(samples=4))
        payload = series.to_json_dict()
        assert set(payload) == {"metadata", "rows"}
        meta = payload["metadata"]
        for key in ("u", "v", "eta", "class", "phi_min", "phi_max", "samples", "version"):
            assert key in meta
        assert meta["class"] == "psi"
        assert len(payload["rows"]) == 4
        assert len(payload["rows"][0]) == 3
        json.dumps(payload)  # serializable

    def test_dataset_roundtrip(self):
        dataset = emit_figure("1c", samples=11)
        payload = dataset.to_json_dict()
        assert payload["columns"] == ["u", "v", "ultra"]
        json.dumps(payload)
        text = dataset.to_csv_text()
        assert text.startswith("u,v,ultra\n")
        assert text.split("\n")[1].split(",")[2] in {"0", "1"}

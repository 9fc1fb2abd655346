import numpy as np
import pytest

from dsshift import SensorFieldConfig, run_sensor_demo, snr_db
from dsshift.demo import FIELD_RMS, synthetic_true_field
from dsshift.graphs import VertexGeometry


class TestSnrDb:
    def test_exact_estimate_reports_infinity(self):
        x = np.array([1.0, 2.0])
        assert snr_db(x, x) == float("inf")

    def test_zero_db_case(self):
        assert snr_db([1.0, 1.0], [1.0, 0.0]) == 0.0

    def test_hundredfold_power_ratio(self):
        truth = np.array([10.0, 0.0])
        estimate = truth + np.array([0.0, 1.0])
        assert snr_db(estimate, truth) == pytest.approx(20.0)

    def test_zero_truth_rejected(self):
        with pytest.raises(ValueError, match="identically zero"):
            snr_db([1.0], [0.0])

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="differ"):
            snr_db([1.0, 2.0], [1.0])


class TestSyntheticField:
    def test_rms_calibration(self):
        rng = np.random.default_rng(0)
        geo = VertexGeometry(
            lat=45 + 0.05 * rng.random(64),
            lon=7 + 0.05 * rng.random(64),
            alt=100 * rng.random(64),
        )
        field = synthetic_true_field(geo)
        assert np.sqrt((field**2).mean()) == pytest.approx(FIELD_RMS, rel=1e-12)

    def test_calibration_constant_targets_14_db(self):
        # expected input SNR with noise sigma 2 is 20 log10(FIELD_RMS / 2)
        assert 20 * np.log10(FIELD_RMS / 2.0) == pytest.approx(14.0)

    def test_unknown_generator(self):
        geo = VertexGeometry(lat=np.zeros(2), lon=np.zeros(2), alt=np.zeros(2))
        with pytest.raises(ValueError, match="unknown field generator"):
            synthetic_true_field(geo, "volcano")


class TestSensorFieldConfig:
    def test_defaults_match_documented_experiment(self):
        cfg = SensorFieldConfig()
        assert cfg.n_sensors == 64
        assert cfg.noise_sigma == 2.0
        assert cfg.shifts == 1

    def test_validation(self):
        with pytest.raises(ValueError, match="n_sensors"):
            SensorFieldConfig(n_sensors=1)
        with pytest.raises(ValueError, match="noise_sigma"):
            SensorFieldConfig(noise_sigma=-1.0)
        with pytest.raises(ValueError, match="field generator"):
            SensorFieldConfig(field_generator="nope")


class TestRunSensorDemo:
    def test_zero_noise_short_circuits(self):
        report = run_sensor_demo(SensorFieldConfig(noise_sigma=0.0, seed=1))
        assert report.input_snr_db == float("inf")
        assert report.output_snr_db == float("inf")
        assert report.gain_db == 0.0
        assert np.array_equal(report.denoised, report.true_field)

    def test_gain_is_exactly_output_minus_input(self):
        report = run_sensor_demo(SensorFieldConfig(seed=2))
        assert report.gain_db == report.output_snr_db - report.input_snr_db

    def test_identical_seed_gives_identical_report_bytes(self):
        a = run_sensor_demo(SensorFieldConfig(seed=3)).to_json()
        b = run_sensor_demo(SensorFieldConfig(seed=3)).to_json()
        assert a.encode() == b.encode()

    def test_different_seeds_differ(self):
        a = run_sensor_demo(SensorFieldConfig(seed=4))
        b = run_sensor_demo(SensorFieldConfig(seed=5))
        assert a.input_snr_db != b.input_snr_db

    def test_default_config_denoises(self):
        gains = [run_sensor_demo(SensorFieldConfig(seed=s)).gain_db for s in range(5)]
        assert np.mean(gains) > 0.0

    def test_oversmoothing_hurts(self):
        g1 = run_sensor_demo(SensorFieldConfig(seed=42, shifts=1)).gain_db
        g50 = run_sensor_demo(SensorFieldConfig(seed=42, shifts=50)).gain_db
        assert g50 < g1

    def test_report_schema(self):
        report = run_sensor_demo(SensorFieldConfig(seed=6))
        payload = report.to_dict()
        assert payload["schema"] == 1
        assert set(payload["operator"]) == {"residual", "iterations"}
        assert len(payload["true_field"]) == 64
        assert len(payload["noisy"]) == 64
        assert len(payload["denoised"]) == 64

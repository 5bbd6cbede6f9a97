import math

import numpy as np
import pytest

from sphereflow import constants as C
from sphereflow import exact_flows as ef
from sphereflow import inequality_lab as il
from sphereflow import simulator
from sphereflow.simulator import (FlowEvent, FlowRun, InitialSpec, Outcome,
                                  RunConfig, RunSeries, geometry_from_profile)


def make_run(t, vol, max_a2, a_lp, aring_lq, h_lp, h2, sup_ar2, diam,
             events=(), config=None):
    series = RunSeries(*(np.asarray(c, dtype=float)
                         for c in (t, vol, max_a2, a_lp, aring_lq, h_lp,
                                   h2, sup_ar2, diam)))
    return FlowRun(config=config or RunConfig(), series=series,
                   events=list(events), outcome=Outcome.INCONCLUSIVE)


# ---------------------------------------------------------------------------
# functional inequalities
# ---------------------------------------------------------------------------

def test_michael_simon_zero_field():
    state = simulator.profile_geodesic_circle(3, 1.0, 128)
    assert il.michael_simon_slack(state, np.zeros(128)) == 0.0
    with pytest.raises(ValueError):
        il.michael_simon_slack(state, -np.ones(128))


def test_michael_simon_constant_field_cross_check():
    # h == 1: the slack reduces to c_n int sqrt(H^2+n^2) - Vol^((n-1)/n),
    # computable here from the umbilical closed forms
    n, r, N = 3, math.pi / 3.0, 512
    state = simulator.profile_geodesic_circle(n, r, N)
    slack = il.michael_simon_slack(state, np.ones(N))
    vol = ef.unit_sphere_volume(n) * math.sin(r) ** n
    habs = n * math.cos(r) / math.sin(r)
    cn = C.michael_simon_constant(n).value
    expect = cn * math.sqrt(habs ** 2 + n ** 2) * vol - vol ** ((n - 1) / n)
    assert abs(slack - expect) < 1e-3 * expect
    assert slack > 0.0


def test_michael_simon_random_battery():
    rng = np.random.default_rng(21)
    for _ in range(20):
        state = il.random_profile(rng)
        for _ in range(5):
            f = il.random_smooth_field(state, rng, nonneg=True)
            assert il.michael_simon_slack(state, f) > 0.0


def test_sobolev_zero_and_constant_fields():
    state = simulator.profile_geodesic_circle(3, 1.0, 128)
    assert il.sobolev_slack(state, np.zeros(128), alpha=6.0) == 0.0
    assert il.sobolev_slack(state, np.ones(128), alpha=6.0) > 0.0
    with pytest.raises(ValueError):
        il.sobolev_slack(state, np.ones(128), alpha=2.0)


def test_sobolev_random_battery():
    rng = np.random.default_rng(22)
    for _ in range(20):
        state = il.random_profile(rng)
        for _ in range(5):
            v = il.random_smooth_field(state, rng, nonneg=False)
            for alpha in (state.n + 2.0, state.n + 4.0):
                assert il.sobolev_slack(state, v, alpha=alpha) > 0.0


# ---------------------------------------------------------------------------
# volume identity
# ---------------------------------------------------------------------------

def test_volume_identity_on_exact_trajectory():
    # synthetic series sampled from the closed-form flow: residual is O(dt^2)
    n, r0, dt = 3, 1.0, 1e-4
    ts = np.array([0.1 - dt, 0.1, 0.1 + dt])
    states = [ef.umbilical_trajectory(n, r0, float(t)) for t in ts]
    vols = [s.vol for s in states]
    h2s = [s.h_norm ** 2 * s.vol for s in states]
    flow = make_run(ts, vols, [s.a2 for s in states], np.zeros(3), np.zeros(3),
                    np.zeros(3), h2s, np.zeros(3), np.ones(3))
    assert il.volume_identity_residual(flow, 1) < 1e-6


def test_volume_identity_stationary_convention_and_bounds():
    flow = make_run([0, 1, 2], [1, 1, 1], [0] * 3, [0] * 3, [0] * 3, [0] * 3,
                    [0] * 3, [0] * 3, [1] * 3)
    assert il.volume_identity_residual(flow, 1) == 0.0
    with pytest.raises(IndexError):
        il.volume_identity_residual(flow, 0)
    with pytest.raises(IndexError):
        il.volume_identity_residual(flow, 2)


def test_volume_identity_refines_with_resolution():
    res = []
    for nodes in (256, 512):
        cfg = RunConfig(n=3, p=6.0, q=6.0, nodes=nodes, max_time=0.12,
                        initial=InitialSpec("umbilical", r0=math.pi / 3.0))
        flow = simulator.run(cfg)
        idx = int(np.searchsorted(flow.series.t, 0.06))
        if idx % 25 == 0:
            idx += 1  # stay away from redistribution steps
        res.append(il.volume_identity_residual(flow, idx))
    assert res[0] / res[1] >= 3.5


# ---------------------------------------------------------------------------
# comparison trajectories
# ---------------------------------------------------------------------------

def test_linear_kind_matches_closed_form():
    lam = 0.5
    rate = math.exp(il._linear_rate(il.KIND_TRACELESS, 3, 6.0, 6.0, lam).log_value)
    t_end = 2.0 / rate
    traj = il.comparison_ode(il.KIND_TRACELESS, 3, 6.0, 6.0, lam, t_end, v0=3.0)
    for t in np.linspace(0.0, t_end, 9):
        exact = 3.0 * math.exp(rate * float(t))
        assert abs(traj.value_at(float(t)) - exact) <= 1e-10 * exact
    # sampled values are dense enough for 0.1% linear interpolation error
    interp = np.interp(traj.times[:-1] + np.diff(traj.times) / 2, traj.times, traj.values)
    exact_mid = 3.0 * np.exp(rate * (traj.times[:-1] + np.diff(traj.times) / 2))
    assert np.max(np.abs(interp - exact_mid) / exact_mid) < 1e-3


def test_full_form_kind_blows_up_faster_for_larger_lam():
    escapes = []
    for lam in (2.0, 5.0, 10.0):
        traj = il.comparison_ode(il.KIND_FULL_FORM, 3, 6.0, 6.0, lam, t_end=1.0)
        assert traj.blowup_time is not None
        escapes.append(traj.blowup_time)
    assert escapes[0] > escapes[1] > escapes[2]


def test_full_form_values_monotone():
    traj = il.comparison_ode(il.KIND_FULL_FORM, 3, 6.0, 6.0, 2.0, t_end=1.0)
    assert np.all(np.diff(traj.values) > 0.0)
    with pytest.raises(ValueError):
        il.comparison_ode("bogus", 3, 6.0, 6.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        il.comparison_ode(il.KIND_FULL_FORM, 3, 6.0, 6.0, 1.0, 0.0)


def test_mean_curvature_kind_default_start():
    lam = 0.75
    rate_log = il._linear_rate(il.KIND_MEAN_CURVATURE, 3, 6.0, 7.0, lam).log_value
    t_end = 1.0 / math.exp(rate_log)
    traj = il.comparison_ode(il.KIND_MEAN_CURVATURE, 3, 6.0, 7.0, lam, t_end)
    assert traj.value_at(0.0) == pytest.approx(lam ** 6.0)


# ---------------------------------------------------------------------------
# maximum principle monitor
# ---------------------------------------------------------------------------

def _flat_envelope(n, p, q, lam, v0, t_end):
    return il.ComparisonTrajectory(
        kind=il.KIND_FULL_FORM, n=n, p=p, q=q, lam=lam,
        times=np.array([0.0, t_end]), values=np.array([v0, v0]),
        log_v0=math.log(v0))


def test_monitor_true_within_blowup_window():
    cfg = RunConfig(n=3, p=6.0, q=6.0, nodes=128, max_steps=300,
                    initial=InitialSpec("umbilical", r0=math.pi / 3.0))
    flow = simulator.run(cfg)
    lam = float(flow.series.a_lp[0]) * 1.2
    traj = il.comparison_ode(il.KIND_FULL_FORM, 3, 6.0, 6.0, lam,
                             t_end=float(flow.series.t[-1]))
    assert il.max_principle_monitor(flow, traj) is True


def test_monitor_detects_scaled_violation():
    t = np.linspace(0.0, 1.0, 6)
    base = np.full(6, 2.0)
    flow_ok = make_run(t, np.ones(6), np.ones(6), base, np.zeros(6),
                       np.zeros(6), np.zeros(6), np.zeros(6), np.ones(6))
    envelope = _flat_envelope(3, 6.0, 6.0, 2.0, (2.0 ** 6) * 1.05, 2.0)
    assert il.max_principle_monitor(flow_ok, envelope) is True
    scaled = base.copy()
    scaled[1:] *= 10.0  # constructed violation after the start
    flow_bad = make_run(t, np.ones(6), np.ones(6), scaled, np.zeros(6),
                        np.zeros(6), np.zeros(6), np.zeros(6), np.ones(6))
    assert il.max_principle_monitor(flow_bad, envelope) is False


def test_monitor_accepts_stationary_run():
    cfg = RunConfig(n=3, p=6.0, q=6.0, nodes=128, initial=InitialSpec("equator"))
    flow = simulator.run(cfg)
    traj = il.comparison_ode(il.KIND_FULL_FORM, 3, 6.0, 6.0, 1.0,
                             t_end=float(flow.series.t[-1]) + 1e-12)
    assert il.max_principle_monitor(flow, traj) is True


def test_monitor_rejects_mismatched_parameters():
    cfg = RunConfig(n=3, p=6.0, q=6.0, nodes=128, max_steps=50,
                    initial=InitialSpec("umbilical", r0=1.0))
    flow = simulator.run(cfg)
    traj = il.comparison_ode(il.KIND_FULL_FORM, 4, 6.5, 6.5, 100.0, t_end=0.1)
    with pytest.raises(ValueError):
        il.max_principle_monitor(flow, traj)


# ---------------------------------------------------------------------------
# iteration sup bound
# ---------------------------------------------------------------------------

def test_moser_check_zero_series():
    t2 = C.t2(3, 6.0, 6.0, 100.0).value
    flow = make_run([0.0, 1e-3], [1, 1], [0, 0], [0, 0], [0, 0], [0, 0],
                    [0, 0], [0, 0], [1, 1])
    res = il.moser_check(flow, 6.0, 6.0, 100.0, 0.5 * t2)
    assert res.ok and res.bound.value == 0.0 and res.sup_observed == 0.0


def test_moser_check_on_perturbed_run():
    cfg = RunConfig(n=3, p=6.0, q=6.0, nodes=128, max_steps=200,
                    initial=InitialSpec("perturbed", r0=math.pi / 3.0,
                                        mode=2, amplitude=0.03))
    flow = simulator.run(cfg)
    t2 = C.t2(3, 6.0, 6.0, 100.0).value
    res = il.moser_check(flow, 6.0, 6.0, 100.0, 0.5 * t2)
    assert res.ok
    assert res.bound.log_value > math.log(max(res.sup_observed, 1e-300))
    with pytest.raises(ValueError):
        il.moser_check(flow, 6.0, 6.0, 100.0, 2.0 * t2)
    with pytest.raises(ValueError):
        il.moser_check(flow, 6.0, 6.0, 100.0, 0.0)


def test_spacetime_integral_interpolates():
    times = np.array([0.0, 1.0, 2.0])
    vals = np.array([1.0, 3.0, 5.0])
    assert il._spacetime_integral(times, vals, 2.0) == pytest.approx(6.0)
    assert il._spacetime_integral(times, vals, 0.5) == pytest.approx(0.75)
    assert il._spacetime_integral(times, vals, 0.0) == 0.0


# ---------------------------------------------------------------------------
# extension monitor
# ---------------------------------------------------------------------------

def test_extension_monitor_umbilical_no_anomaly():
    cfg = RunConfig(n=3, p=6.0, q=6.0, nodes=128,
                    initial=InitialSpec("umbilical", r0=1.0))
    flow = simulator.run(cfg)
    rep = il.extension_monitor(flow, 6.0)
    assert not rep.blowup and not rep.anomaly


def test_extension_monitor_flags_synthetic_anomaly():
    flow = make_run([0, 1, 2], [1, 1, 1], [1, 1, 1e9], [2, 2, 2],
                    [0] * 3, [0] * 3, [0] * 3, [0] * 3, [1] * 3,
                    events=[FlowEvent("blowup", 2.0, 2, {})])
    rep = il.extension_monitor(flow, 6.0)
    assert rep.blowup and rep.lp_bounded and rep.anomaly
    assert rep.sup_lp_pow == pytest.approx(2.0 ** 6)
    with pytest.raises(ValueError):
        il.extension_monitor(flow, 2.0)


def test_extension_monitor_unbounded_blowup_is_not_anomalous():
    # genuine singular collapse: the norm blows up along with the sup
    flow = make_run([0, 1, 2], [1, 1, 1], [1, 1, 1e9], [2, 2, 100],
                    [0] * 3, [0] * 3, [0] * 3, [0] * 3, [1] * 3,
                    events=[FlowEvent("blowup", 2.0, 2, {})])
    rep = il.extension_monitor(flow, 6.0)
    assert rep.blowup and not rep.lp_bounded and not rep.anomaly

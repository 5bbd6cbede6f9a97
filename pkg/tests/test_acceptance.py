"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines as they complete.  Shared expensive runs live in module fixtures.
"""

import math
import time

import numpy as np
import pytest

from sphereflow import cli
from sphereflow import constants as C
from sphereflow import exact_flows as ef
from sphereflow import inequality_lab as il
from sphereflow import simulator
from sphereflow import tensor_core as tc
from sphereflow.simulator import InitialSpec, Outcome, RunConfig


@pytest.fixture(scope="module")
def umbilical_512():
    cfg = RunConfig(n=3, p=6.0, q=6.0, nodes=512,
                    initial=InitialSpec("umbilical", r0=math.pi / 3.0))
    t0 = time.perf_counter()
    flow = simulator.run(cfg)
    return flow, time.perf_counter() - t0


@pytest.fixture(scope="module")
def equator_run():
    return simulator.run(RunConfig(n=3, p=6.0, q=6.0, nodes=256,
                                   initial=InitialSpec("equator")))


@pytest.fixture(scope="module")
def perturbed_run():
    cfg = RunConfig(n=3, p=6.0, q=6.0, nodes=256,
                    initial=InitialSpec("perturbed", r0=math.pi / 3.0,
                                        mode=2, amplitude=0.03))
    return simulator.run(cfg)


def test_c01_umbilical_extinction(umbilical_512):
    flow, seconds = umbilical_512
    exact = math.log(2.0) / 3.0
    t_end = flow.events[-1].t
    assert flow.outcome is Outcome.ROUND_POINT
    rel = abs(t_end - exact) / exact
    assert rel < 0.01
    assert seconds < 30.0
    print(f"ACCEPTANCE 1 PASS: extinction t={t_end:.6f} vs ln2/3={exact:.6f} "
          f"(rel err {rel:.2e}), runtime {seconds:.1f}s < 30s")


def test_c02_totally_geodesic_fixed_point(equator_run):
    assert equator_run.outcome is Outcome.TOTALLY_GEODESIC
    # observe the full 1e4 steps with the stationarity cutoff disabled
    cfg = RunConfig(n=3, p=6.0, q=6.0, nodes=256, max_steps=10_000, tol_geo=0.0,
                    initial=InitialSpec("equator"))
    flow = simulator.run(cfg)
    assert len(flow.series) == 10_001
    worst = float(np.max(flow.series.max_a2))
    assert worst < 1e-6
    print(f"ACCEPTANCE 2 PASS: equator outcome TotallyGeodesic, "
          f"max|A|^2 = {worst:.2e} < 1e-6 over 1e4 steps")


def test_c03_clifford_oracle():
    theta = ef.clifford_equilibrium_angle(4, 2)
    assert theta == pytest.approx(math.pi / 4.0, rel=1e-15)
    flow = ef.clifford_trajectory(4, 2, theta, t_end=1.0, dt=1e-4)
    assert not flow.collapsed and len(flow.states) == 10_001
    drift = max(abs(st.theta - theta) for st in flow.states)
    assert drift < 1e-10
    a2 = ef.CliffordState(n=4, k=2, theta=theta, t=0.0).a2
    assert a2 == pytest.approx(4.0, rel=1e-13)
    print(f"ACCEPTANCE 3 PASS: equilibrium drift {drift:.2e} < 1e-10 "
          f"over 1e4 steps, |A|^2 = {a2:.15f}")


def test_c04_pointwise_inequality_battery():
    rng = np.random.default_rng(20260810)
    worst = math.inf
    total = 0
    for n in (3, 4, 5):
        for d in (1, 2, 3):
            remaining = 100_000
            while remaining > 0:
                batch = min(20_000, remaining)
                remaining -= batch
                raw = rng.uniform(-10.0, 10.0, size=(batch, d, n, n))
                h = 0.5 * (raw + np.swapaxes(raw, -1, -2))
                s = tc.batch_slacks(h)
                scale = np.maximum(s["scale"], 1.0)
                for key in ("lili", "schwarz", "ab_first", "ab_second"):
                    worst = min(worst, float(np.min(s[key] / scale)))
                total += batch
    assert total == 900_000
    assert worst >= -1e-12
    print(f"ACCEPTANCE 4 PASS: {total} random tensors, "
          f"worst relative slack {worst:.2e} >= -1e-12")


def test_c05_volume_identity_refinement():
    residuals = []
    for nodes in (256, 512):
        cfg = RunConfig(n=3, p=6.0, q=6.0, nodes=nodes, max_time=0.12,
                        initial=InitialSpec("umbilical", r0=math.pi / 3.0))
        flow = simulator.run(cfg)
        idx = int(np.searchsorted(flow.series.t, 0.06))
        if idx % 25 == 0:
            idx += 1  # keep the stencil clear of redistribution steps
        residuals.append(il.volume_identity_residual(flow, idx))
    ratio = residuals[0] / residuals[1]
    assert ratio >= 3.5
    print(f"ACCEPTANCE 5 PASS: residual {residuals[0]:.2e} (N=256) -> "
          f"{residuals[1]:.2e} (N=512), ratio {ratio:.2f} >= 3.5")


def test_c06_functional_inequality_battery():
    rng = np.random.default_rng(1234)
    worst_ms = worst_so = math.inf
    for _ in range(100):
        state = il.random_profile(rng)
        for _ in range(20):
            f = il.random_smooth_field(state, rng, nonneg=True)
            v = il.random_smooth_field(state, rng, nonneg=False)
            worst_ms = min(worst_ms, il.michael_simon_slack(state, f))
            worst_so = min(worst_so, il.sobolev_slack(state, v, state.n + 3.0))
    assert worst_ms > 0.0
    assert worst_so > 0.0
    print(f"ACCEPTANCE 6 PASS: 100 profiles x 20 fields, worst slack "
          f"{worst_ms:.3g} (isoperimetric), {worst_so:.3g} (Sobolev)")


def test_c07_maximum_principle(umbilical_512, equator_run, perturbed_run):
    for name, flow in (("umbilical", umbilical_512[0]),
                       ("equator", equator_run),
                       ("perturbed", perturbed_run)):
        lam = max(float(flow.series.a_lp[0]), 1e-6)
        traj = il.comparison_ode(il.KIND_FULL_FORM, 3, 6.0, 6.0, lam,
                                 t_end=float(flow.series.t[-1]) + 1e-12)
        assert il.max_principle_monitor(flow, traj, tol=0.01), name
    print("ACCEPTANCE 7 PASS: ||A||_p^p within 1.01x of the comparison ODE "
          "on all compliant runs while the ODE stays finite")


def test_c08_constant_chain():
    exact = 256.0 * (4.0 * math.pi / 3.0) ** (-1.0 / 3.0)
    got = C.michael_simon_constant(3).value
    assert abs(got - exact) <= 1e-12 * exact
    assert C.sobolev_constant(3, 6.0).gamma0 == 7.0
    log100 = math.log(100.0)
    checked = 0
    for n in range(3, 7):
        for p in range(n + 1, 2 * n + 1):
            val = C.pinching_constant(n, float(p))
            assert math.isfinite(val.log_value), (n, p)
            assert val.log_value > -math.inf and val.log_value <= log100 + 1e-15
            checked += 1
    print(f"ACCEPTANCE 8 PASS: c_3 = {got:.9f}, gamma0(3,6) = 7, "
          f"{checked} pinching constants all finite in (0, 100] (log domain)")


def test_c09_moser_bound(perturbed_run):
    t2 = C.t2(3, 6.0, 6.0, 100.0).value
    res = il.moser_check(perturbed_run, 6.0, 6.0, 100.0, 0.5 * t2)
    assert res.ok
    margin = res.bound.log10 - math.log10(max(res.sup_observed, 1e-300))
    assert margin > 0.0
    print(f"ACCEPTANCE 9 PASS: observed max|Aring|^2 = {res.sup_observed:.2e} "
          f"vs bound 1e{res.bound.log10:.1f} (margin 1e{margin:.0f})")


def test_c10_dichotomy_sweep(tmp_path):
    t0 = time.perf_counter()
    rc = cli.main(["sweep", "--n", "3", "--p", "6", "--q", "6",
                   "--nodes", "256", "--max-time", "10",
                   "--out", str(tmp_path / "sweep")])
    elapsed = time.perf_counter() - t0
    assert rc == 0
    rows = (tmp_path / "sweep" / "sweep.csv").read_text().splitlines()[1:]
    assert len(rows) == 18
    outcomes = [row.split(",")[3] for row in rows]
    assert all(o in ("RoundPoint", "TotallyGeodesic") for o in outcomes), outcomes
    assert elapsed < 600.0
    n_round = outcomes.count("RoundPoint")
    print(f"ACCEPTANCE 10 PASS: 18 cells -> {n_round} RoundPoint, "
          f"{18 - n_round} TotallyGeodesic, none singular; {elapsed:.0f}s < 600s")


def test_c11_determinism(tmp_path):
    args = ["simulate", "--n", "3", "--p", "6", "--q", "6", "--nodes", "128",
            "--initial-kind", "perturbed", "--r0", "1.0", "--mode", "2",
            "--amplitude", "0.03", "--max-steps", "2000"]
    assert cli.main(args + ["--out", str(tmp_path / "a")]) == 0
    assert cli.main(args + ["--out", str(tmp_path / "b")]) == 0
    sa = (tmp_path / "a" / "series.csv").read_bytes()
    sb = (tmp_path / "b" / "series.csv").read_bytes()
    assert sa == sb
    print(f"ACCEPTANCE 11 PASS: repeated runs byte-identical "
          f"({len(sa)} bytes of series.csv)")

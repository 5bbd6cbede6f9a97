"""Command-line harness: constants, exact, simulate, verify, sweep, plot.

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 verification failure.

Run configuration is a flat key-value text format with dotted keys
(e.g. ``initial.kind = umbilical``); command-line flags mirror the same
fields and override the file.  Numbers in emitted CSV carry 17
significant digits, and repeated runs of the same configuration produce
byte-identical files.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__, constants, exact_flows, inequality_lab, simulator, tensor_core
from .simulator import InitialSpec, Outcome, RunConfig

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_VERIFY = 4

SERIES_HEADER = "t,vol,max_a2,a_lp,aring_lq,h_lp"


def _fmt(x) -> str:
    return f"{float(x):.17g}"


# ---------------------------------------------------------------------------
# flat dotted-key config files
# ---------------------------------------------------------------------------

def parse_kv_text(text: str) -> dict:
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise simulator.ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, val = (part.strip() for part in line.split("=", 1))
        out[key] = val
    return out


def config_to_kv(config: RunConfig) -> dict:
    return {
        "n": config.n, "p": config.p, "q": config.q, "nodes": config.nodes,
        "initial.kind": config.initial.kind, "initial.r0": config.initial.r0,
        "initial.theta0": config.initial.theta0, "initial.mode": config.initial.mode,
        "initial.amplitude": config.initial.amplitude,
        "limits.max_steps": config.max_steps, "limits.max_time": config.max_time,
        "tol.ext": config.tol_ext, "tol.geo": config.tol_geo,
        "tol.round": config.tol_round, "tol.cap": config.cap,
        "step.c_parab": config.c_parab, "step.c_react": config.c_react,
        "step.redistribute_every": config.redistribute_every,
        "seed": config.seed,
    }


_KV_FIELDS = {
    "n": ("n", int), "p": ("p", float), "q": ("q", float), "nodes": ("nodes", int),
    "limits.max_steps": ("max_steps", int), "limits.max_time": ("max_time", float),
    "tol.ext": ("tol_ext", float), "tol.geo": ("tol_geo", float),
    "tol.round": ("tol_round", float), "tol.cap": ("cap", float),
    "step.c_parab": ("c_parab", float), "step.c_react": ("c_react", float),
    "step.redistribute_every": ("redistribute_every", int),
    "seed": ("seed", int),
}

_KV_INITIAL = {
    "initial.kind": ("kind", str), "initial.r0": ("r0", float),
    "initial.theta0": ("theta0", float), "initial.mode": ("mode", int),
    "initial.amplitude": ("amplitude", float),
}


def config_from_kv(kv: dict) -> RunConfig:
    config = RunConfig()
    for key, val in kv.items():
        if key in _KV_FIELDS:
            attr, typ = _KV_FIELDS[key]
            setattr(config, attr, typ(float(val)) if typ is int else typ(val))
        elif key in _KV_INITIAL:
            attr, typ = _KV_INITIAL[key]
            setattr(config.initial, attr, typ(float(val)) if typ is int else typ(val))
        else:
            raise simulator.ConfigError(f"unknown configuration key {key!r}")
    return config


def write_kv(path: str, kv: dict):
    with open(path, "w") as fh:
        for key, val in kv.items():
            fh.write(f"{key} = {val}\n")


# ---------------------------------------------------------------------------
# constants
# ---------------------------------------------------------------------------

def cmd_constants(args) -> int:
    chain = constants.constant_chain(args.n, args.p, args.q, args.lam, args.lam_mean)
    rows = [(name, entry.value.log10, entry.provenance)
            for name, entry in chain.entries.items()]
    width = max(len(name) for name, _, _ in rows)
    print(f"# n={args.n} p={args.p:g} q={chain.inputs['q']:g} "
          f"lam_sff={chain.inputs['lam_sff']:g} lam_mean={chain.inputs['lam_mean']:g}")
    print(f"{'name':<{width}}  {'log10':>24}  {'value':>14}  provenance")
    for name, log10, prov in rows:
        val = chain[name].value
        vs = f"{val:.6g}" if 0.0 < val < math.inf else ("0" if val == 0.0 else "overflow")
        print(f"{name:<{width}}  {log10:>24.15g}  {vs:>14}  {prov}")
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write("name,log10_value,provenance\n")
            for name, log10, prov in rows:
                fh.write(f"{name},{_fmt(log10)},\"{prov}\"\n")
        print(f"wrote {args.csv}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# exact trajectories
# ---------------------------------------------------------------------------

def cmd_exact(args) -> int:
    p = args.p if args.p is not None else 2.0 * args.n
    rows = []
    if args.family == "umbilical":
        text = exact_flows.extinction_time(args.n, args.r0)
        t_end = min(args.t_end, 0.999 * text) if math.isfinite(text) else args.t_end
        nsamp = max(2, args.samples)
        for t in np.linspace(0.0, t_end, nsamp):
            st = exact_flows.umbilical_trajectory(args.n, args.r0, float(t))
            rows.append((st.t, st.r, st.n * math.cos(st.r) / math.sin(st.r),
                         st.a2, st.vol, exact_flows.umbilical_lp_norm(args.n, st.r, p)))
    elif args.family == "clifford":
        flow = exact_flows.clifford_trajectory(args.n, args.k, args.theta0,
                                               args.t_end, args.dt)
        stride = max(1, len(flow.states) // max(2, args.samples))
        for st in flow.states[::stride]:
            rows.append((st.t, st.theta, st.h_scalar, st.a2, st.vol,
                         st.vol ** (1.0 / p) * math.sqrt(st.a2)))
        if flow.collapsed:
            print(f"# collapse at t = {flow.collapse_time:.6g}", file=sys.stderr)
    else:
        raise simulator.ConfigError(f"unknown family {args.family!r}")
    out = sys.stdout if args.out is None else open(args.out, "w")
    try:
        out.write("t,angle,h,a2,vol,a_lp\n")
        for row in rows:
            out.write(",".join(_fmt(x) for x in row) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------

def _config_from_args(args) -> RunConfig:
    kv = {}
    if args.config:
        with open(args.config) as fh:
            kv.update(parse_kv_text(fh.read()))
    config = config_from_kv(kv)
    for flag, key in [("n", "n"), ("p", "p"), ("q", "q"), ("nodes", "nodes"),
                      ("max_steps", "max_steps"), ("max_time", "max_time"),
                      ("tol_ext", "tol_ext"), ("tol_geo", "tol_geo"),
                      ("tol_round", "tol_round"), ("cap", "cap"), ("seed", "seed")]:
        val = getattr(args, flag, None)
        if val is not None:
            setattr(config, key, val)
    for flag, key in [("initial_kind", "kind"), ("r0", "r0"), ("theta0", "theta0"),
                      ("mode", "mode"), ("amplitude", "amplitude")]:
        val = getattr(args, flag, None)
        if val is not None:
            setattr(config.initial, key, val)
    return config


def write_run(outdir: str, flow: simulator.FlowRun):
    os.makedirs(outdir, exist_ok=True)
    s = flow.series
    with open(os.path.join(outdir, "series.csv"), "w") as fh:
        fh.write(SERIES_HEADER + "\n")
        for i in range(len(s)):
            fh.write(",".join(_fmt(x) for x in
                              (s.t[i], s.vol[i], s.max_a2[i], s.a_lp[i],
                               s.aring_lq[i], s.h_lp[i])) + "\n")
    with open(os.path.join(outdir, "events.csv"), "w") as fh:
        fh.write("name,t,step,info\n")
        for ev in flow.events:
            info = ";".join(f"{k}={v}" for k, v in ev.info.items())
            fh.write(f"{ev.name},{_fmt(ev.t)},{ev.step},\"{info}\"\n")
    kv = config_to_kv(flow.config)
    kv["outcome"] = flow.outcome.value
    kv["version"] = __version__
    write_kv(os.path.join(outdir, "manifest"), kv)


def cmd_simulate(args) -> int:
    config = _config_from_args(args)
    config.validate()
    flow = simulator.run(config)
    outdir = args.out or "run_out"
    write_run(outdir, flow)
    terminal = flow.events[-1].name if flow.events else "none"
    print(f"outcome: {flow.outcome.value} (terminal event {terminal} "
          f"at t = {flow.events[-1].t:.6g}, {len(flow.series)} samples) -> {outdir}")
    if terminal == "mesh_failure":
        return EXIT_NUMERIC
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _verify_tensor(rows, rng):
    worst = math.inf
    for n in (3, 4, 5):
        for d in (1, 2, 3):
            h = rng.uniform(-10.0, 10.0, size=(4000, d, n, n))
            h = 0.5 * (h + np.swapaxes(h, -1, -2))
            s = tensor_core.batch_slacks(h)
            scale = np.maximum(s["scale"], 1.0)
            for key in ("lili", "schwarz", "ab_first", "ab_second"):
                worst = min(worst, float(np.min(s[key] / scale)))
    rows.append(("tensor_inequalities", "n=3..5 d=1..3 x4000", worst, worst >= -1e-12))


def _verify_frame_invariance(rows, rng):
    worst = 0.0
    for _ in range(20):
        n = int(rng.integers(3, 6))
        d = int(rng.integers(1, 4))
        t = tensor_core.random_sff(rng, n, d)
        qt, _ = np.linalg.qr(rng.normal(size=(n, n)))
        qn, _ = np.linalg.qr(rng.normal(size=(d, d)))
        rot = tensor_core.rotate_frames(t, qt, qn)
        for f in (tensor_core.lili_slack, tensor_core.schwarz_slack):
            a, b = f(t), f(rot)
            worst = max(worst, abs(a - b) / max(abs(a), 1.0))
    rows.append(("frame_invariance", "20 random rotations", worst, worst < 1e-11))


def _verify_michael_simon(rows, rng):
    worst = math.inf
    for _ in range(20):
        state = inequality_lab.random_profile(rng)
        for _ in range(5):
            f = inequality_lab.random_smooth_field(state, rng, nonneg=True)
            worst = min(worst, inequality_lab.michael_simon_slack(state, f))
    rows.append(("michael_simon", "20 profiles x 5 fields", worst, worst > 0.0))


def _verify_sobolev(rows, rng):
    worst = math.inf
    for _ in range(20):
        state = inequality_lab.random_profile(rng)
        for _ in range(5):
            f = inequality_lab.random_smooth_field(state, rng, nonneg=False)
            worst = min(worst, inequality_lab.sobolev_slack(state, f, alpha=state.n + 3.0))
    rows.append(("sobolev", "20 profiles x 5 fields", worst, worst > 0.0))


def _verify_umbilical(rows, _rng):
    config = RunConfig(n=3, p=6.0, q=6.0, nodes=192,
                       initial=InitialSpec("umbilical", r0=math.pi / 3.0))
    flow = simulator.run(config)
    texact = exact_flows.extinction_time(3, math.pi / 3.0)
    err = abs(flow.events[-1].t - texact) / texact
    rows.append(("umbilical_extinction", "n=3 r0=pi/3 N=192",
                 err, flow.outcome is Outcome.ROUND_POINT and err < 0.02))


def _verify_volume_identity(rows, _rng):
    res = []
    for nodes in (128, 256):
        config = RunConfig(n=3, p=6.0, q=6.0, nodes=nodes, max_time=0.12,
                           initial=InitialSpec("umbilical", r0=math.pi / 3.0))
        flow = simulator.run(config)
        idx = int(np.searchsorted(flow.series.t, 0.06))
        idx -= (idx % 25 == 0)
        res.append(inequality_lab.volume_identity_residual(flow, idx))
    ratio = res[0] / res[1]
    rows.append(("volume_identity_refinement", "N=128 vs 256 at t=0.06", ratio, ratio > 3.0))


def _verify_clifford(rows, _rng):
    theta = exact_flows.clifford_equilibrium_angle(4, 2)
    flow = exact_flows.clifford_trajectory(4, 2, theta, 1.0, dt=1e-4)
    drift = abs(flow.states[-1].theta - theta)
    rows.append(("clifford_equilibrium", "n=4 k=2", drift, drift < 1e-10))


def _verify_comparison_linear(rows, _rng):
    rate = math.exp(inequality_lab._linear_rate(
        inequality_lab.KIND_TRACELESS, 3, 6.0, 6.0, 0.5).log_value)
    t_end = 1.0 / rate  # values stay O(1) inside the doubling window
    traj = inequality_lab.comparison_ode(
        inequality_lab.KIND_TRACELESS, 3, 6.0, 6.0, 0.5, t_end=t_end, v0=2.0)
    worst = 0.0
    for t in np.linspace(0.0, t_end, 7):
        exact = 2.0 * math.exp(rate * t)
        worst = max(worst, abs(traj.value_at(float(t)) - exact) / exact)
    rows.append(("comparison_linear_closed_form", "aring kind", worst, worst < 1e-10))


def _verify_constants(rows, _rng):
    c3 = constants.michael_simon_constant(3).value
    exact = 256.0 * (4.0 * math.pi / 3.0) ** (-1.0 / 3.0)
    err = abs(c3 - exact) / exact
    gamma = constants.sobolev_constant(3, 6.0).gamma0
    ok = err < 1e-12 and gamma == 7.0
    for n in range(3, 7):
        for dp in range(1, n + 1):
            val = constants.pinching_constant(n, float(n + dp))
            ok = ok and math.isfinite(val.log_value) and val.log_value <= math.log(100.0)
    rows.append(("constant_chain", "c_3, gamma0(3,6), pinching grid", err, ok))


def _verify_max_principle(rows, _rng):
    config = RunConfig(n=3, p=6.0, q=6.0, nodes=128, max_steps=400,
                       initial=InitialSpec("umbilical", r0=math.pi / 3.0))
    flow = simulator.run(config)
    lam = float(flow.series.a_lp[0]) * 1.5
    traj = inequality_lab.comparison_ode(
        inequality_lab.KIND_FULL_FORM, 3, 6.0, 6.0, lam, t_end=float(flow.series.t[-1]))
    ok = inequality_lab.max_principle_monitor(flow, traj)
    rows.append(("max_principle", "umbilical n=3", float(ok), ok))


def _verify_moser(rows, _rng):
    config = RunConfig(n=3, p=6.0, q=6.0, nodes=128, max_steps=200,
                       initial=InitialSpec("perturbed", r0=math.pi / 3.0,
                                           mode=2, amplitude=0.03))
    flow = simulator.run(config)
    t2 = constants.t2(3, 6.0, 6.0, 100.0)
    check = inequality_lab.moser_check(flow, 6.0, 6.0, 100.0, 0.5 * t2.value)
    rows.append(("moser_bound", "perturbed n=3",
                 check.bound.log10, check.ok))


def _verify_extension(rows, _rng):
    config = RunConfig(n=3, p=6.0, q=6.0, nodes=128, max_steps=200,
                       initial=InitialSpec("umbilical", r0=math.pi / 3.0))
    flow = simulator.run(config)
    rep = inequality_lab.extension_monitor(flow, 6.0)
    synthetic = simulator.FlowRun(
        config=config,
        series=simulator.RunSeries(*(np.array(col) for col in [
            [0.0, 1.0], [1.0, 1.0], [1.0, 1e9], [2.0, 2.0], [0.1, 0.1],
            [1.0, 1.0], [1.0, 1.0], [0.1, 0.1], [1.0, 1.0]])),
        events=[simulator.FlowEvent("blowup", 1.0, 1, {})],
        outcome=Outcome.SINGULAR_NON_ROUND)
    synth = inequality_lab.extension_monitor(synthetic, 6.0)
    ok = (not rep.anomaly) and synth.anomaly
    rows.append(("extension_monitor", "real + synthetic", float(ok), ok))


VERIFY_CHECKS = {
    "tensor": _verify_tensor,
    "frame": _verify_frame_invariance,
    "michael_simon": _verify_michael_simon,
    "sobolev": _verify_sobolev,
    "umbilical": _verify_umbilical,
    "volume_identity": _verify_volume_identity,
    "clifford": _verify_clifford,
    "comparison_linear": _verify_comparison_linear,
    "constants": _verify_constants,
    "max_principle": _verify_max_principle,
    "moser": _verify_moser,
    "extension": _verify_extension,
}


def cmd_verify(args) -> int:
    names = args.checks or list(VERIFY_CHECKS)
    unknown = [n for n in names if n not in VERIFY_CHECKS]
    if unknown:
        raise simulator.ConfigError(f"unknown checks: {', '.join(unknown)}")
    rng = np.random.default_rng(args.seed)
    rows = []
    for name in names:
        VERIFY_CHECKS[name](rows, rng)
    print("check,params,value,verdict")
    all_ok = True
    for name, params, value, ok in rows:
        all_ok &= bool(ok)
        print(f"{name},\"{params}\",{_fmt(value)},{'PASS' if ok else 'FAIL'}")
    return EXIT_OK if all_ok else EXIT_VERIFY


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

def _cell_name(r0: float, delta: float, mode: int) -> str:
    return f"cell_r{r0:.4f}_d{delta:.4f}_m{mode}"


def _run_cell(job):
    outdir, kv = job
    try:
        config = config_from_kv(kv)
        config.validate()
        flow = simulator.run(config)
        write_run(outdir, flow)
        ev = flow.events[-1]
        return (outdir, flow.outcome.value, ev.name, ev.t)
    except Exception as exc:  # recorded per cell, sweep continues
        return (outdir, "error", type(exc).__name__, float("nan"))


def cmd_sweep(args) -> int:
    base = _config_from_args(args)
    outroot = args.out or "sweep_out"
    os.makedirs(outroot, exist_ok=True)
    jobs = []
    cells = []
    for r0 in args.r0_grid:
        for delta in args.delta_grid:
            for mode in args.mode_grid:
                name = _cell_name(r0, delta, mode)
                outdir = os.path.join(outroot, name)
                cells.append((r0, delta, mode, outdir))
                if os.path.exists(os.path.join(outdir, "manifest")):
                    continue  # resume: completed cells are skipped
                kv = config_to_kv(base)
                if delta > 0.0:
                    kv.update({"initial.kind": "perturbed", "initial.r0": r0,
                               "initial.mode": mode, "initial.amplitude": delta})
                else:
                    kv.update({"initial.kind": "umbilical", "initial.r0": r0})
                jobs.append((outdir, kv))
    workers = int(os.environ.get("SPHEREFLOW_WORKERS", "1"))
    results = {}
    if workers > 1 and jobs:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for res in pool.map(_run_cell, jobs):
                results[res[0]] = res
    else:
        for job in jobs:
            res = _run_cell(job)
            results[res[0]] = res
    agg = os.path.join(outroot, "sweep.csv")
    with open(agg, "w") as fh:
        fh.write("r0,delta,mode,outcome,terminal_event,t_final\n")
        for r0, delta, mode, outdir in cells:
            if outdir in results:
                _, outcome, ev, t_final = results[outdir]
            else:
                kv = parse_kv_text(open(os.path.join(outdir, "manifest")).read())
                outcome, ev, t_final = kv.get("outcome", "?"), "cached", float("nan")
            fh.write(f"{_fmt(r0)},{_fmt(delta)},{mode},{outcome},{ev},{_fmt(t_final)}\n")
    print(f"{len(cells)} cells ({len(jobs)} executed, {len(cells) - len(jobs)} cached) -> {agg}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# plot
# ---------------------------------------------------------------------------

def cmd_plot(args) -> int:
    series_path = os.path.join(args.rundir, "series.csv")
    if not os.path.exists(series_path):
        raise simulator.ConfigError(f"no series.csv in {args.rundir}")
    data = np.genfromtxt(series_path, delimiter=",", names=True)
    outcome = "?"
    manifest = os.path.join(args.rundir, "manifest")
    if os.path.exists(manifest):
        outcome = parse_kv_text(open(manifest).read()).get("outcome", "?")
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    t = np.atleast_1d(data["t"])
    axes[0].plot(t, np.atleast_1d(data["vol"]), label="volume")
    axes[0].set_xlabel("t")
    axes[0].legend()
    for col, label in (("max_a2", "max |A|^2"), ("a_lp", "||A||_p"),
                       ("aring_lq", "||Aring||_q"), ("h_lp", "||H||_p")):
        axes[1].plot(t, np.atleast_1d(data[col]), label=label)
    axes[1].set_xlabel("t")
    axes[1].set_yscale("symlog")
    axes[1].legend()
    fig.suptitle(f"outcome: {outcome}")
    out = os.path.join(args.rundir, "plot.svg")
    fig.savefig(out)
    plt.close(fig)
    print(f"wrote {out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_run_flags(sp):
    sp.add_argument("--config", help="flat key-value config file")
    sp.add_argument("--n", type=int)
    sp.add_argument("--p", type=float)
    sp.add_argument("--q", type=float)
    sp.add_argument("--nodes", type=int)
    sp.add_argument("--initial-kind", dest="initial_kind",
                    choices=["umbilical", "equator", "clifford", "perturbed"])
    sp.add_argument("--r0", type=float)
    sp.add_argument("--theta0", type=float)
    sp.add_argument("--mode", type=int)
    sp.add_argument("--amplitude", type=float)
    sp.add_argument("--max-steps", dest="max_steps", type=int)
    sp.add_argument("--max-time", dest="max_time", type=float)
    sp.add_argument("--tol-ext", dest="tol_ext", type=float)
    sp.add_argument("--tol-geo", dest="tol_geo", type=float)
    sp.add_argument("--tol-round", dest="tol_round", type=float)
    sp.add_argument("--cap", type=float)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--out")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sphereflow",
                                 description="mean curvature flow laboratory")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("constants", help="emit the constant chain")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--q", type=float, default=None)
    sp.add_argument("--lam", type=float, default=None)
    sp.add_argument("--lam-mean", dest="lam_mean", type=float, default=None)
    sp.add_argument("--csv")
    sp.set_defaults(func=cmd_constants)

    sp = sub.add_parser("exact", help="closed-form trajectories as CSV")
    sp.add_argument("family", choices=["umbilical", "clifford"])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--r0", type=float, default=math.pi / 3.0)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--theta0", type=float, default=math.pi / 4.0)
    sp.add_argument("--t-end", dest="t_end", type=float, default=0.2)
    sp.add_argument("--dt", type=float, default=1e-4)
    sp.add_argument("--p", type=float, default=None)
    sp.add_argument("--samples", type=int, default=101)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_exact)

    sp = sub.add_parser("simulate", help="run the discrete flow")
    _add_run_flags(sp)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("verify", help="run the inequality/monitor suite")
    sp.add_argument("checks", nargs="*",
                    help=f"subset of: {', '.join(VERIFY_CHECKS)}")
    sp.add_argument("--seed", type=int, default=20260810)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sweep", help="grid of runs with resume")
    _add_run_flags(sp)
    sp.add_argument("--r0-grid", dest="r0_grid", type=float, nargs="+",
                    default=[math.pi / 6.0, math.pi / 3.0, math.pi / 2.0])
    sp.add_argument("--delta-grid", dest="delta_grid", type=float, nargs="+",
                    default=[0.0, 0.02, 0.05])
    sp.add_argument("--mode-grid", dest="mode_grid", type=int, nargs="+",
                    default=[2, 3])
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("plot", help="render a run directory to SVG")
    sp.add_argument("rundir")
    sp.set_defaults(func=cmd_plot)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (simulator.ConfigError, ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (simulator.MeshError, simulator.BlowUpError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())

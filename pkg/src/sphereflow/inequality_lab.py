"""Empirical verification of the functional inequalities and ODE monitors.

Checks provided:

* isoperimetric-type inequality for nonnegative fields on a profile state,
  with the composed-immersion mean curvature sqrt(H^2 + n^2);
* the Sobolev inequality with the explicit constant chain;
* the volume identity dVol/dt = -int H^2;
* comparison ODE trajectories for the norm growth inequalities, and the
  maximum-principle monitor comparing a discrete run against them;
* the iteration sup bound check on runs;
* the extension monitor flagging curvature blow-up under bounded L^p norm,
  which the continuum theory forbids.

All slack operations return RHS - LHS, so nonnegative means the
inequality held.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import constants
from .constants import LogScalar
from .simulator import FlowRun, ProfileState, geometry_from_profile, \
    profile_geodesic_circle, profile_latitude, profile_perturbed

__all__ = [
    "ComparisonTrajectory",
    "MoserCheckResult",
    "ExtensionReport",
    "michael_simon_slack",
    "sobolev_slack",
    "volume_identity_residual",
    "comparison_ode",
    "max_principle_monitor",
    "moser_check",
    "extension_monitor",
    "random_profile",
    "random_smooth_field",
    "KIND_FULL_FORM",
    "KIND_TRACELESS",
    "KIND_MEAN_CURVATURE",
    "KIND_TRACELESS_HBOUND",
]

KIND_FULL_FORM = "a_lp"
KIND_TRACELESS = "aring_lq_lin"
KIND_MEAN_CURVATURE = "h_lp_lin"
KIND_TRACELESS_HBOUND = "aring_lq_lin_hbound"
_LINEAR_KINDS = (KIND_TRACELESS, KIND_MEAN_CURVATURE, KIND_TRACELESS_HBOUND)


# ---------------------------------------------------------------------------
# gradients along the profile
# ---------------------------------------------------------------------------

def _arclengths(state: ProfileState):
    pts = state.nodes
    if state.closed:
        nxt = np.roll(pts, -1, axis=0)
    else:
        nxt = pts[1:]
        pts = pts[:-1]
    chord = np.linalg.norm(nxt - pts, axis=1)
    return 2.0 * np.arcsin(np.minimum(1.0, 0.5 * chord))


def field_gradient(state: ProfileState, f: np.ndarray) -> np.ndarray:
    """|df/ds| along the curve by nonuniform central differences.

    Equivariant fields only: they are even across the poles, so open
    curves use even-extension ghosts.
    """
    f = np.asarray(f, dtype=float)
    N = f.shape[0]
    gaps = _arclengths(state)
    if state.closed:
        hm = np.roll(gaps, 1)
        hp = gaps
        fm = np.roll(f, 1)
        fp = np.roll(f, -1)
    else:
        hm = np.concatenate([[gaps[0]], gaps])
        hp = np.concatenate([gaps, [gaps[-1]]])
        fm = np.concatenate([[f[1]], f[:-1]])
        fp = np.concatenate([f[1:], [f[-2]]])
    num = (-hp / (hm * (hm + hp))) * fm \
        + ((hp - hm) / (hm * hp)) * f \
        + (hm / (hp * (hm + hp))) * fp
    return np.abs(num)


# ---------------------------------------------------------------------------
# functional inequality slacks
# ---------------------------------------------------------------------------

def michael_simon_slack(state: ProfileState, h_field: np.ndarray) -> float:
    """RHS - LHS of
       (int h^(n/(n-1)))^((n-1)/n) <= c_n int (|grad h| + sqrt(H^2+n^2) h),
    the isoperimetric inequality applied through the immersion into the
    ambient Euclidean space (where |Hbar|^2 = H^2 + n^2)."""
    h_field = np.asarray(h_field, dtype=float)
    if np.any(h_field < 0.0):
        raise ValueError("the inequality needs a nonnegative field")
    n = state.n
    geo = geometry_from_profile(state)
    w = geo.weights
    lhs = float(np.sum(h_field ** (n / (n - 1.0)) * w) ** ((n - 1.0) / n))
    hbar = np.sqrt(geo.h ** 2 + n * n)
    grad = field_gradient(state, h_field)
    cn = constants.michael_simon_constant(n).value
    rhs = cn * float(np.sum((grad + hbar * h_field) * w))
    return rhs - lhs


def sobolev_slack(state: ProfileState, v_field: np.ndarray, alpha: float) -> float:
    """RHS - LHS of
       ||v||^2_{2n/(n-2)} <= C_{n,alpha} (||grad v||^2_2
                             + (1 + ||H||_alpha^(2a/(a-n))) ||v||^2_2)."""
    n = state.n
    if n < 3:
        raise ValueError(f"the Sobolev inequality needs n >= 3, got n={n}")
    if alpha <= n:
        raise ValueError(f"need alpha > n, got alpha={alpha}")
    v = np.asarray(v_field, dtype=float)
    geo = geometry_from_profile(state)
    w = geo.weights
    expo = 2.0 * n / (n - 2.0)
    lhs = float(np.sum(np.abs(v) ** expo * w) ** ((n - 2.0) / n))
    grad2 = float(np.sum(field_gradient(state, v) ** 2 * w))
    v2 = float(np.sum(v * v * w))
    h_alpha_pow = float(np.sum(np.abs(geo.h) ** alpha * w) ** (2.0 / (alpha - n)))
    C = constants.sobolev_constant(n, alpha).C_n_alpha0.value
    return C * (grad2 + (1.0 + h_alpha_pow) * v2) - lhs


def volume_identity_residual(flow: FlowRun, t_index: int) -> float:
    """|centered dVol/dt + int H^2| / int H^2 at one recorded sample.

    Returns 0 by convention for stationary states (int H^2 < 1e-14).
    """
    s = flow.series
    if not 0 < t_index < len(s) - 1:
        raise IndexError(f"need an interior sample index, got {t_index} of {len(s)}")
    h2 = float(s.h2_integral[t_index])
    if h2 < 1e-14:
        return 0.0
    dv = (s.vol[t_index + 1] - s.vol[t_index - 1]) / (s.t[t_index + 1] - s.t[t_index - 1])
    return abs(dv + h2) / h2


# ---------------------------------------------------------------------------
# comparison ODE trajectories
# ---------------------------------------------------------------------------

@dataclass
class ComparisonTrajectory:
    kind: str
    n: int
    p: float
    q: float
    lam: float
    times: np.ndarray
    values: np.ndarray
    blowup_time: float | None = None
    log_v0: float = 0.0
    log_rate: float | None = None    # linear kinds only

    def value_at(self, t: float) -> float:
        """Exact value for linear kinds; interpolation for the full-form kind."""
        if self.log_rate is not None:
            if t == 0.0:
                return math.exp(self.log_v0)
            if self.log_rate > 700.0:
                return math.inf
            e = self.log_v0 + math.exp(self.log_rate) * t
            return math.inf if e > 709.0 else math.exp(e)
        if self.blowup_time is not None and t >= self.blowup_time:
            return math.inf
        if t > self.times[-1]:
            return math.inf
        return float(np.interp(t, self.times, self.values))


def _linear_rate(kind: str, n: int, p: float, q: float, lam: float) -> LogScalar:
    if kind == KIND_TRACELESS:
        return constants.c2(n, p, q, lam) * LogScalar.from_value(q) ** (p / (p - n))
    E = max(n / (p - n), n / (q - n)) + 1.0
    if kind == KIND_MEAN_CURVATURE:
        return constants.h_bound_chain(n, p, q, lam).c6 * LogScalar.from_value(p / 2.0) ** E
    return constants.h_bound_chain(n, p, q, lam).c8 * LogScalar.from_value(q) ** E


def comparison_ode(kind: str, n: int, p: float, q: float, lam: float,
                   t_end: float, v0: float | None = None) -> ComparisonTrajectory:
    """Comparison trajectory for one of the norm growth inequalities.

    Kinds: "a_lp" integrates the superlinear growth of the p-th power of
    the full-form norm from lam^p (reports a blow-up time when it
    escapes); the three linear kinds use the exponential closed form
    value(t) = v0 exp(rate t) with the rate built from the constant
    chain.  v0 defaults to lam^p for "a_lp" and "h_lp_lin" and to 1 for
    the traceless kinds (their hypothesis value is the caller's epsilon^q).
    """
    if t_end <= 0.0:
        raise ValueError(f"need t_end > 0, got {t_end}")
    if kind == KIND_FULL_FORM:
        if v0 is None:
            v0 = lam ** p
        S = constants.sobolev_constant(n, p).C_n_alpha0 ** (n / p)
        log_a = math.log(1.5 * p) + S.log_value
        log_b = constants.c1(n, p).log_value
        log_v0 = math.log(v0)
        samples = [(0.0, log_v0)]
        t, psi = 0.0, log_v0
        blowup = None
        escape = log_v0 + math.log(1e12)

        def rate(x):
            return n * p + math.exp(log_a + (2.0 / p) * x) + math.exp(log_b + (2.0 / (p - n)) * x)

        for _ in range(2_000_000):
            if t >= t_end:
                break
            r = rate(psi)
            if not math.isfinite(r) or r <= 0.0:
                raise ArithmeticError(f"comparison ODE rate not positive finite: {r}")
            dt = min(0.02 / r, t_end - t)
            k1 = r
            k2 = rate(psi + 0.5 * dt * k1)
            k3 = rate(psi + 0.5 * dt * k2)
            k4 = rate(psi + dt * k3)
            psi = psi + dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
            t += dt
            samples.append((t, psi))
            if psi > escape:
                blowup = t
                break
        times = np.array([s[0] for s in samples])
        values = np.exp(np.minimum(np.array([s[1] for s in samples]), 709.0))
        return ComparisonTrajectory(kind=kind, n=n, p=p, q=q, lam=lam,
                                    times=times, values=values,
                                    blowup_time=blowup, log_v0=log_v0)

    if kind not in _LINEAR_KINDS:
        raise ValueError(f"unknown comparison kind {kind!r}")
    if v0 is None:
        v0 = lam ** p if kind == KIND_MEAN_CURVATURE else 1.0
    log_rate = _linear_rate(kind, n, p, q, lam).log_value
    rate_native = math.exp(log_rate) if log_rate < 700.0 else math.inf
    if math.isinf(rate_native):
        times = np.array([0.0, t_end])
    else:
        span = rate_native * t_end
        nsamp = int(min(max(33, math.ceil(span / 0.089) + 1), 200_001))
        times = np.linspace(0.0, t_end, nsamp)
    log_v0 = math.log(v0)
    with np.errstate(invalid="ignore"):
        growth = rate_native * times
    growth[times == 0.0] = 0.0  # keeps 0 * inf out of the samples
    exponents = log_v0 + growth
    values = np.exp(np.minimum(exponents, 709.0))
    values[exponents > 709.0] = np.inf
    return ComparisonTrajectory(kind=kind, n=n, p=p, q=q, lam=lam,
                                times=times, values=values,
                                log_v0=log_v0, log_rate=log_rate)


def max_principle_monitor(flow: FlowRun, traj: ComparisonTrajectory,
                          tol: float = 0.01) -> bool:
    """True iff the run's ||A||_p^p stays within (1+tol) of the comparison
    trajectory at every sample where the trajectory is still finite."""
    if traj.kind != KIND_FULL_FORM:
        raise ValueError("the monitor compares against the full-form trajectory")
    cfg = flow.config
    if cfg.n != traj.n or cfg.p != traj.p:
        raise ValueError("run and trajectory parameters do not match")
    s = flow.series
    initial = float(s.a_lp[0]) ** cfg.p
    if initial > math.exp(traj.log_v0) * (1.0 + 1e-9):
        raise ValueError("run starts above the trajectory's initial value")
    for i in range(len(s)):
        t = float(s.t[i])
        if traj.blowup_time is not None and t >= traj.blowup_time:
            break
        bound = traj.value_at(t)
        if math.isinf(bound):
            break
        if float(s.a_lp[i]) ** cfg.p > (1.0 + tol) * bound:
            return False
    return True


# ---------------------------------------------------------------------------
# sup-bound and extension monitors
# ---------------------------------------------------------------------------

@dataclass
class MoserCheckResult:
    bound: LogScalar
    sup_observed: float
    ok: bool
    t: float
    j_integral: float


def _spacetime_integral(times: np.ndarray, values: np.ndarray, t: float) -> float:
    """Trapezoid of a piecewise-linear series over [0, t], interpolating at t."""
    if t <= times[0]:
        return 0.0
    tt = np.asarray(times, dtype=float)
    vv = np.asarray(values, dtype=float)
    if t < tt[-1]:
        idx = int(np.searchsorted(tt, t, side="right"))
        v_t = float(np.interp(t, tt, vv))
        tt = np.concatenate([tt[:idx], [t]])
        vv = np.concatenate([vv[:idx], [v_t]])
    return float(np.trapezoid(vv, tt))


def moser_check(flow: FlowRun, p: float, q: float, lam: float, t: float) -> MoserCheckResult:
    """Compare the observed sup of the traceless norm against the iteration bound.

    J is the space-time integral of ||Aring||_q^q over [0, t] (trapezoid on
    the recorded series); the bound uses the c2/c3 chain at (n, p, q, lam).
    """
    n = flow.config.n
    T2 = constants.t2(n, p, q, lam)
    if t <= 0.0 or math.log(t) > T2.log_value + 1e-12:
        raise ValueError(f"need 0 < t <= T2 (log T2 = {T2.log_value:.6g}), got t = {t:g}")
    s = flow.series
    if float(s.a_lp[0]) > lam:
        raise ValueError("run is not compliant: initial ||A||_p exceeds the bound")
    j = _spacetime_integral(s.t, s.aring_lq ** q, t)
    bound = constants.moser_sup_bound(n, p, q, constants.c2(n, p, q, lam),
                                      constants.c3(n, p, q, lam), t, j)
    mask = s.t <= t
    sup_obs = float(np.max(s.sup_aring2[mask])) if np.any(mask) else float(s.sup_aring2[0])
    if sup_obs <= 0.0:
        ok = True
    else:
        ok = math.log(sup_obs) <= bound.log_value
    return MoserCheckResult(bound=bound, sup_observed=sup_obs, ok=ok, t=t, j_integral=j)


@dataclass
class ExtensionReport:
    sup_lp_pow: float      # sup over the run of ||A||_p^p
    blowup: bool
    lp_bounded: bool
    anomaly: bool


def extension_monitor(flow: FlowRun, p: float) -> ExtensionReport:
    """Flag the event "curvature blew up while ||A||_p stayed bounded".

    The continuum flow cannot do this (bounded L^p curvature extends the
    flow), so the flag marks a discretization anomaly.  "Bounded" means
    the norm never left the doubling window [0, 2 ||A||_p(0)].
    """
    if not p > flow.config.n:
        raise ValueError(f"extension monitoring needs p > n, got p={p}")
    s = flow.series
    sup_lp = float(np.max(s.a_lp))
    blowup = any(ev.name == "blowup" for ev in flow.events)
    bounded = sup_lp <= 2.0 * float(s.a_lp[0]) + 1e-12
    return ExtensionReport(sup_lp_pow=sup_lp ** p, blowup=blowup,
                           lp_bounded=bounded, anomaly=blowup and bounded)


# ---------------------------------------------------------------------------
# randomized inputs for the property suites
# ---------------------------------------------------------------------------

def random_profile(rng: np.random.Generator, nodes: int = 128) -> ProfileState:
    """Random state from the initial-data families, n in {3, 4, 5}."""
    n = int(rng.integers(3, 6))
    kind = rng.integers(0, 3)
    if kind == 0:
        return profile_geodesic_circle(n, float(rng.uniform(0.3, 1.4)), nodes)
    if kind == 1:
        r0 = float(rng.uniform(0.4, 1.2))
        mode = int(rng.integers(2, 5))
        amp = float(rng.uniform(0.0, 0.08))
        return profile_perturbed(n, r0, mode, amp, nodes)
    return profile_latitude(n, float(rng.uniform(0.3, 1.2)), nodes)


def random_smooth_field(state: ProfileState, rng: np.random.Generator,
                        nonneg: bool = True) -> np.ndarray:
    """Random low-frequency field, smooth on the orbit (even across poles)."""
    gaps = _arclengths(state)
    if state.closed:
        s = np.concatenate([[0.0], np.cumsum(gaps)[:-1]])
        u = s / (s[-1] + gaps[-1])
        base = rng.uniform(-1.0, 1.0)
        g = np.full(state.nodes.shape[0], base)
        for k in range(1, 5):
            g += rng.uniform(-1.0, 1.0) * np.cos(2.0 * math.pi * k * u + rng.uniform(0, 2 * math.pi))
    else:
        s = np.concatenate([[0.0], np.cumsum(gaps)])
        u = s / s[-1]
        g = np.full(state.nodes.shape[0], rng.uniform(-1.0, 1.0))
        for k in range(1, 5):
            g += rng.uniform(-1.0, 1.0) * np.cos(math.pi * k * u)
    return g * g if nonneg else g

"""Discrete mean curvature flow of rotation-symmetric hypersurfaces.

A hypersurface of the unit (n+1)-sphere invariant under the rotation
group acting on the last n ambient coordinates is encoded by its profile
curve on the z >= 0 half of a unit 2-sphere: the hypersurface is the
orbit {(x, y, z * w) : w on the unit (n-1)-sphere} of the curve points
(x, y, z).  Curvature splits into the profile curvature and a fiber
curvature -<grad z, normal>/z of multiplicity n - 1, so the flow reduces
to a curve evolution with explicit Euler steps, renormalization onto the
sphere, and periodic arclength redistribution.

Outcome classification follows the flow dichotomy: shrink to a round
point, converge to a totally geodesic sphere, hit a curvature blow-up
that is not round, or exhaust the step/time budget.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .constants import log_unit_sphere_volume

__all__ = [
    "ConfigError",
    "MeshError",
    "BlowUpError",
    "Outcome",
    "ProfileState",
    "GeometryFields",
    "InitialSpec",
    "RunConfig",
    "RunSeries",
    "FlowEvent",
    "FlowRun",
    "profile_geodesic_circle",
    "profile_equator",
    "profile_latitude",
    "profile_perturbed",
    "build_initial",
    "geometry_from_profile",
    "mcf_step",
    "adaptive_dt",
    "redistribute",
    "run",
    "classify",
]

DEFAULT_C_PARAB = 0.2
DEFAULT_C_REACT = 0.1


class ConfigError(ValueError):
    pass


class MeshError(RuntimeError):
    pass


class BlowUpError(RuntimeError):
    pass


class Outcome(enum.Enum):
    ROUND_POINT = "RoundPoint"
    TOTALLY_GEODESIC = "TotallyGeodesic"
    SINGULAR_NON_ROUND = "SingularNonRound"
    INCONCLUSIVE = "Inconclusive"


def fiber_volume(n: int) -> float:
    """Volume of the unit (n-1)-sphere swept by each profile point."""
    return math.exp(log_unit_sphere_volume(n - 1))


@dataclass
class ProfileState:
    """Profile curve of a rotation-symmetric hypersurface at one time."""

    n: int
    nodes: np.ndarray          # (N, 3), unit vectors with z >= 0
    closed: bool
    t: float = 0.0

    def __post_init__(self):
        if self.n < 2:
            raise ConfigError(f"hypersurface dimension must be >= 2, got {self.n}")
        self.nodes = np.ascontiguousarray(self.nodes, dtype=float)
        if self.nodes.ndim != 2 or self.nodes.shape[1] != 3 or self.nodes.shape[0] < 4:
            raise ConfigError(f"nodes must be (N, 3) with N >= 4, got {self.nodes.shape}")
        norms = np.linalg.norm(self.nodes, axis=1)
        if np.max(np.abs(norms - 1.0)) > 1e-12:
            raise ConfigError("profile nodes must lie on the unit sphere (|p| = 1 within 1e-12)")
        z = self.nodes[:, 2]
        if np.min(z) < -1e-14:
            raise ConfigError("profile nodes must satisfy z >= 0")
        if not self.closed:
            if abs(z[0]) > 1e-12 or abs(z[-1]) > 1e-12:
                raise ConfigError("open profile curves must have both endpoints on z = 0")
            if np.min(z[1:-1]) <= 0.0:
                raise ConfigError("interior nodes of a pole-anchored curve need z > 0")
            self.nodes[0, 2] = 0.0
            self.nodes[-1, 2] = 0.0
        elif np.min(z) <= 0.0:
            raise ConfigError("closed profile curves need z > 0 everywhere")


@dataclass
class GeometryFields:
    """Per-node derived geometry of a profile state."""

    n: int
    kappa: np.ndarray      # profile curvature
    lam: np.ndarray        # fiber principal curvature
    h: np.ndarray          # scalar mean curvature, kappa + (n-1) lam
    a2: np.ndarray         # squared norm of the form
    aring2: np.ndarray     # traceless squared norm, clipped at 0
    weights: np.ndarray    # local n-volume
    normals: np.ndarray    # (N, 3) unit curve normals tangent to the 2-sphere
    min_spacing: float
    diam: float            # extrinsic diameter proxy of the orbit


def geometry_from_profile(state: ProfileState) -> GeometryFields:
    """Second-order curvature extraction; validated against the embedding."""
    N = state.nodes.shape[0]
    if N < 16:
        raise MeshError(f"geometry extraction needs at least 16 nodes, got {N}")
    kappa = np.empty(N)
    lam = np.empty(N)
    h = np.empty(N)
    a2 = np.empty(N)
    ar2 = np.empty(N)
    wts = np.empty(N)
    nu = np.empty((N, 3))
    ok, hmin, diam = kernels.geom_fields(
        state.nodes, state.closed, state.n, fiber_volume(state.n),
        kappa, lam, h, a2, ar2, nu, wts)
    if not ok:
        raise MeshError(f"degenerate node spacing (min gap {hmin:.3e})")
    return GeometryFields(n=state.n, kappa=kappa, lam=lam, h=h, a2=a2,
                          aring2=ar2, weights=wts, normals=nu,
                          min_spacing=float(hmin), diam=float(diam))


def adaptive_dt(fields: GeometryFields, mesh_width: float | None = None,
                c_parab: float = DEFAULT_C_PARAB, c_react: float = DEFAULT_C_REACT) -> float:
    """dt = min(c_parab h_min^2, c_react / (max|A|^2 + n))."""
    h = fields.min_spacing if mesh_width is None else mesh_width
    return min(c_parab * h * h, c_react / (float(np.max(fields.a2)) + fields.n))


def mcf_step(state: ProfileState, fields: GeometryFields, dt: float) -> ProfileState:
    """One explicit Euler step p <- normalize(p + dt H nu)."""
    if dt <= 0.0:
        raise ValueError(f"time step must be positive, got {dt}")
    pts = state.nodes.copy()
    if not kernels.euler_step(pts, fields.h, fields.normals, dt, state.closed):
        raise BlowUpError("step produced non-finite coordinates")
    return ProfileState(n=state.n, nodes=pts, closed=state.closed, t=state.t + dt)


def redistribute(state: ProfileState) -> ProfileState:
    """Resample to uniform arclength (monotone cubic); image unchanged to O(N^-2)."""
    pts = state.nodes.copy()
    kernels.resample_curve(pts, state.closed)
    return ProfileState(n=state.n, nodes=pts, closed=state.closed, t=state.t)


# ---------------------------------------------------------------------------
# initial data library
# ---------------------------------------------------------------------------

def _hemisphere_graph(r_of_phi, nodes: int) -> np.ndarray:
    """Curve (cos r, sin r cos phi, sin r sin phi), phi in [0, pi]: a graph over
    the meridian angle around the center (1, 0, 0), anchored at z = 0."""
    phi = np.linspace(0.0, math.pi, nodes)
    r = r_of_phi(phi)
    pts = np.stack([np.cos(r), np.sin(r) * np.cos(phi), np.sin(r) * np.sin(phi)], axis=1)
    pts[0, 2] = 0.0
    pts[-1, 2] = 0.0
    return pts


def profile_geodesic_circle(n: int, r0: float, nodes: int) -> ProfileState:
    """Geodesic sphere of radius r0 about the point (1, 0, ..., 0)."""
    if not 0.0 < r0 < math.pi:
        raise ConfigError(f"geodesic radius must lie in (0, pi), got {r0}")
    return ProfileState(n=n, nodes=_hemisphere_graph(lambda phi: np.full_like(phi, r0), nodes),
                        closed=False)


def profile_equator(n: int, nodes: int) -> ProfileState:
    """The totally geodesic n-sphere: half great circle through the poles."""
    return profile_geodesic_circle(n, 0.5 * math.pi, nodes)


def profile_latitude(n: int, theta0: float, nodes: int) -> ProfileState:
    """Closed orbit circle at height z = sin(theta0): the product sphere
    S^1(cos theta0) x S^(n-1)(sin theta0)."""
    if not 0.0 < theta0 < 0.5 * math.pi:
        raise ConfigError(f"latitude angle must lie in (0, pi/2), got {theta0}")
    psi = np.linspace(0.0, 2.0 * math.pi, nodes, endpoint=False)
    c, s = math.cos(theta0), math.sin(theta0)
    pts = np.stack([c * np.cos(psi), c * np.sin(psi), np.full(nodes, s)], axis=1)
    return ProfileState(n=n, nodes=pts, closed=True)


def profile_perturbed(n: int, r0: float, mode: int, amplitude: float, nodes: int) -> ProfileState:
    """Geodesic circle with a radial ripple r(phi) = r0 + amplitude cos(mode phi)."""
    if mode < 1:
        raise ConfigError(f"perturbation mode must be >= 1, got {mode}")
    if amplitude < 0.0:
        raise ConfigError(f"amplitude must be nonnegative, got {amplitude}")
    if amplitude >= 0.5 or r0 - amplitude <= 0.02 or r0 + amplitude >= math.pi - 0.02:
        raise ConfigError(
            f"perturbation does not embed: r0={r0:g}, amplitude={amplitude:g}")
    return ProfileState(
        n=n,
        nodes=_hemisphere_graph(lambda phi: r0 + amplitude * np.cos(mode * phi), nodes),
        closed=False)


# ---------------------------------------------------------------------------
# run configuration and records
# ---------------------------------------------------------------------------

@dataclass
class InitialSpec:
    kind: str                  # umbilical | equator | clifford | perturbed
    r0: float = math.pi / 3.0
    theta0: float = math.pi / 4.0
    mode: int = 2
    amplitude: float = 0.0

    def validate(self):
        if self.kind not in ("umbilical", "equator", "clifford", "perturbed"):
            raise ConfigError(f"unknown initial kind {self.kind!r}")


@dataclass
class RunConfig:
    n: int = 3
    p: float = 6.0
    q: float = 6.0
    initial: InitialSpec = field(default_factory=lambda: InitialSpec("umbilical"))
    nodes: int = 256
    max_steps: int = 1_200_000
    max_time: float = 50.0
    tol_ext: float = 1e-2
    tol_geo: float = 1e-6
    # at the stopping diameter the squared anisotropy fraction is about
    # roundness/24; 1e-1 admits ~6% residual anisotropy, while genuinely
    # non-round extinctions sit at O(10)
    tol_round: float = 1e-1
    cap: float = 1e8
    c_parab: float = DEFAULT_C_PARAB
    c_react: float = DEFAULT_C_REACT
    redistribute_every: int = 25
    seed: int = 0

    def validate(self):
        if int(self.n) != self.n or self.n < 2:
            raise ConfigError(f"n must be an integer >= 2, got {self.n}")
        if not self.p > self.n:
            raise ConfigError(f"norm monitors need p > n, got p={self.p}, n={self.n}")
        if self.q < 1.0:
            raise ConfigError(f"q must be >= 1, got {self.q}")
        if self.nodes < 16:
            raise ConfigError(f"need at least 16 nodes, got {self.nodes}")
        if self.max_steps < 1 or self.max_time <= 0.0:
            raise ConfigError("step and time limits must be positive")
        for name in ("tol_ext", "tol_geo", "tol_round", "cap", "c_parab", "c_react"):
            if getattr(self, name) < 0.0:
                raise ConfigError(f"{name} must be nonnegative")
        self.initial.validate()
        build_initial(self)  # raises on non-embeddable initial data


def build_initial(config: RunConfig) -> ProfileState:
    spec = config.initial
    if spec.kind == "umbilical":
        return profile_geodesic_circle(config.n, spec.r0, config.nodes)
    if spec.kind == "equator":
        return profile_equator(config.n, config.nodes)
    if spec.kind == "clifford":
        return profile_latitude(config.n, spec.theta0, config.nodes)
    if spec.kind == "perturbed":
        return profile_perturbed(config.n, spec.r0, spec.mode, spec.amplitude, config.nodes)
    raise ConfigError(f"unknown initial kind {spec.kind!r}")


@dataclass
class RunSeries:
    """Per-step time series.  The first six columns are the CSV schema;
    the rest are in-memory diagnostics used by the monitors."""

    t: np.ndarray
    vol: np.ndarray
    max_a2: np.ndarray
    a_lp: np.ndarray
    aring_lq: np.ndarray
    h_lp: np.ndarray
    h2_integral: np.ndarray
    sup_aring2: np.ndarray
    diam: np.ndarray

    def __len__(self):
        return self.t.shape[0]


@dataclass
class FlowEvent:
    name: str
    t: float
    step: int
    info: dict = field(default_factory=dict)


@dataclass
class FlowRun:
    config: RunConfig
    series: RunSeries
    events: list
    outcome: Outcome


_EVENT_BY_CODE = {
    kernels.EV_EXTINCT: "extinction",
    kernels.EV_STATIONARY: "stationary",
    kernels.EV_CAP: "blowup",
    kernels.EV_NONFINITE: "blowup",
    kernels.EV_TIME_LIMIT: "time_limit",
    kernels.EV_STEP_LIMIT: "step_limit",
    kernels.EV_MESH_FAIL: "mesh_failure",
}


def run(config: RunConfig) -> FlowRun:
    """Iterate geometry -> dt -> step -> redistribute, with event detection.

    Termination: extinction (diameter proxy < tol_ext, checked first),
    stationarity (max|A|^2 < tol_geo sustained for 100 steps), curvature
    cap, non-finite step, or the step/time budget.
    """
    config.validate()
    state = build_initial(config)
    pts = state.nodes.copy()
    rec = np.empty((config.max_steps + 2, kernels.REC_COLS))
    rows, t_end, code, _ = kernels.advance(
        pts, state.closed, state.n, fiber_volume(state.n),
        float(config.p), float(config.q), config.c_parab, config.c_react,
        config.tol_ext, config.tol_geo, config.cap,
        config.redistribute_every, config.max_steps, config.max_time,
        0.0, 0, rec, 0)
    series = RunSeries(*(rec[:rows, c].copy() for c in range(kernels.REC_COLS)))

    name = _EVENT_BY_CODE[code]
    info = {}
    if name == "extinction":
        roundness = float(series.sup_aring2[-1] * series.diam[-1] ** 2)
        info = {"diam": float(series.diam[-1]), "roundness": roundness,
                "round_ok": bool(roundness < config.tol_round)}
    elif name == "blowup":
        info = {"max_a2": float(series.max_a2[-1]),
                "nonfinite": bool(code == kernels.EV_NONFINITE)}
    elif name == "stationary":
        info = {"max_a2": float(series.max_a2[-1])}
    events = [FlowEvent(name=name, t=float(t_end), step=rows - 1, info=info)]
    flow = FlowRun(config=config, series=series, events=events,
                   outcome=Outcome.INCONCLUSIVE)
    flow.outcome = classify(flow)
    return flow


def classify(flow: FlowRun) -> Outcome:
    """Deterministic mapping from the terminal event to an outcome."""
    if not flow.events:
        return Outcome.INCONCLUSIVE
    ev = flow.events[-1]
    if ev.name == "extinction":
        return Outcome.ROUND_POINT if ev.info.get("round_ok", False) \
            else Outcome.SINGULAR_NON_ROUND
    if ev.name == "stationary":
        return Outcome.TOTALLY_GEODESIC
    if ev.name == "blowup":
        return Outcome.SINGULAR_NON_ROUND
    return Outcome.INCONCLUSIVE

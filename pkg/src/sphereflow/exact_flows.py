"""Closed-form flows used as oracles for the simulator.

Two families:

* totally umbilical geodesic spheres of the ambient unit sphere, whose
  radius satisfies dr/dt = -n cot r and admits the closed form
  r(t) = arccos(cos r0 * exp(n t));
* generalized product spheres S^k(cos th) x S^(n-k)(sin th), whose radius
  angle obeys the one-dimensional ODE d(th)/dt = k tan th - (n-k) cot th
  (integrated by fixed-step RK4).

Sign convention: the scalar mean curvature reported on both families is
measured against the inward normal (toward decreasing radius / angle),
so it is n cot r for a geodesic sphere and (n-k) cot th - k tan th for a
product sphere.  The motion itself is convention free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import log_unit_sphere_volume

__all__ = [
    "UmbilicalState",
    "CliffordState",
    "CliffordFlow",
    "FlowDomainError",
    "unit_sphere_volume",
    "umbilical_trajectory",
    "extinction_time",
    "umbilical_lp_norm",
    "clifford_trajectory",
    "clifford_equilibrium_angle",
]


class FlowDomainError(ValueError):
    """Raised for times past extinction; carries the extinction time."""

    def __init__(self, message: str, extinction: float):
        super().__init__(message)
        self.extinction = extinction


def unit_sphere_volume(n: int) -> float:
    """Volume of the unit n-sphere, 2 pi^((n+1)/2) / Gamma((n+1)/2)."""
    return math.exp(log_unit_sphere_volume(n))


@dataclass
class UmbilicalState:
    """Geodesic sphere of radius r (radians) at time t."""

    n: int
    d: int
    r: float
    t: float

    @property
    def h_norm(self) -> float:
        return self.n * abs(math.cos(self.r)) / math.sin(self.r)

    @property
    def a2(self) -> float:
        c = math.cos(self.r) / math.sin(self.r)
        return self.n * c * c

    @property
    def aring2(self) -> float:
        return 0.0

    @property
    def vol(self) -> float:
        return unit_sphere_volume(self.n) * math.sin(self.r) ** self.n


@dataclass
class CliffordState:
    """Product sphere S^k(cos th) x S^(n-k)(sin th) at time t."""

    n: int
    k: int
    theta: float
    t: float

    @property
    def a(self) -> float:
        return math.cos(self.theta)

    @property
    def b(self) -> float:
        return math.sin(self.theta)

    @property
    def h_scalar(self) -> float:
        """Inward-angle convention: positive when the small factor shrinks."""
        return (self.n - self.k) / math.tan(self.theta) - self.k * math.tan(self.theta)

    @property
    def a2(self) -> float:
        tn = math.tan(self.theta)
        return self.k * tn * tn + (self.n - self.k) / (tn * tn)

    @property
    def vol(self) -> float:
        return (unit_sphere_volume(self.k) * self.a ** self.k
                * unit_sphere_volume(self.n - self.k) * self.b ** (self.n - self.k))


@dataclass
class CliffordFlow:
    states: list
    collapsed: bool
    collapse_time: float | None = None


def extinction_time(n: int, r0: float) -> float:
    """-ln(cos r0)/n; +inf for the stationary great-sphere radius pi/2."""
    if not 0.0 < r0 <= 0.5 * math.pi:
        raise ValueError(f"radius must lie in (0, pi/2], got {r0}")
    if r0 >= 0.5 * math.pi:
        return math.inf
    return -math.log(math.cos(r0)) / n


def umbilical_trajectory(n: int, r0: float, t: float, d: int = 1) -> UmbilicalState:
    """Exact state at time t: r(t) = arccos(cos r0 * e^(n t))."""
    if n < 2:
        raise ValueError(f"dimension must be >= 2, got {n}")
    if not 0.0 < r0 <= 0.5 * math.pi:
        raise ValueError(f"initial radius must lie in (0, pi/2], got {r0}")
    c0 = math.cos(r0)
    if abs(c0) < 1e-15:  # the great sphere, a fixed point (float pi/2 included)
        return UmbilicalState(n=n, d=d, r=0.5 * math.pi, t=t)
    text = extinction_time(n, r0)
    if t >= text:
        raise FlowDomainError(
            f"t = {t:g} is at or past the extinction time {text:g}", text)
    c = c0 * math.exp(n * t)
    return UmbilicalState(n=n, d=d, r=math.acos(min(c, 1.0)), t=t)


def umbilical_lp_norm(n: int, r: float, p: float) -> float:
    """L^p norm of the form on a geodesic sphere: (omega_n sin^n r)^(1/p) sqrt(n) |cot r|."""
    vol = unit_sphere_volume(n) * math.sin(r) ** n
    return vol ** (1.0 / p) * math.sqrt(n) * abs(math.cos(r) / math.sin(r))


def clifford_equilibrium_angle(n: int, k: int) -> float:
    """Angle of the minimal product sphere: tan th* = sqrt((n-k)/k)."""
    return math.atan(math.sqrt((n - k) / k))


def _theta_rate(n: int, k: int, theta: float) -> float:
    # motion of the radius angle under the flow (inward-convention H negated)
    return k * math.tan(theta) - (n - k) / math.tan(theta)


def clifford_trajectory(n: int, k: int, theta0: float, t_end: float,
                        dt: float = 1e-4) -> CliffordFlow:
    """Fixed-step RK4 trajectory of the radius angle.

    The trajectory terminates with a collapse event when the angle leaves
    (0, pi/2): the flow has reached a lower-dimensional sphere.
    """
    if not 1 <= k <= n - 1:
        raise ValueError(f"factor dimension must satisfy 1 <= k <= n-1, got k={k}")
    if not 0.0 < theta0 < 0.5 * math.pi:
        raise ValueError(f"radius angle must lie in (0, pi/2), got {theta0}")
    states = [CliffordState(n=n, k=k, theta=theta0, t=0.0)]
    theta, t = theta0, 0.0
    nsteps = int(round(t_end / dt))
    half_pi = 0.5 * math.pi
    for _ in range(nsteps):
        # the vector field is singular at the interval ends; a stage leaving
        # (0, pi/2) means the factor sphere has collapsed at this resolution
        stages = [theta]
        ks = []
        for frac in (0.5, 0.5, 1.0):
            ki = _theta_rate(n, k, stages[-1])
            ks.append(ki)
            stages.append(theta + frac * dt * ki)
            if not 0.0 < stages[-1] < half_pi:
                return CliffordFlow(states=states, collapsed=True, collapse_time=t + dt)
        ks.append(_theta_rate(n, k, stages[-1]))
        theta_next = theta + dt * (ks[0] + 2.0 * ks[1] + 2.0 * ks[2] + ks[3]) / 6.0
        t += dt
        if not 0.0 < theta_next < half_pi or not math.isfinite(theta_next):
            return CliffordFlow(states=states, collapsed=True, collapse_time=t)
        theta = theta_next
        states.append(CliffordState(n=n, k=k, theta=theta, t=t))
    return CliffordFlow(states=states, collapsed=False)

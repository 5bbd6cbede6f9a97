"""The explicit constant chain, evaluated in overflow-safe log arithmetic.

The chain starts from the isoperimetric constant c_n = 4^(n+1) * sigma_n^(-1/n)
(sigma_n the unit-ball volume), passes through the Sobolev constant
C_{n,alpha0} = (4*(2*(n*c_n)^((n-2)/(n-1)))^(2(n-1)/(n-2)))^(gamma0+1), and ends
at the curvature-pinching threshold

    C_{n,p} = min{100, max{C1(n, p, p, 100), C2(n, p, p, 100*sqrt(n))}}.

Intermediate entries grow like C^(poly(n, p)) and routinely exceed 1e308, so
every value is carried as a natural logarithm (`LogScalar`).  For inputs whose
values fit a native float the log representation agrees with direct evaluation
to 1e-12 relative; this is asserted in the test suite.

Every chain entry carries a provenance string: the defining formula, spelled
out in terms of previously named entries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "LogScalar",
    "ChainEntry",
    "ConstantChain",
    "SobolevConstants",
    "SffBoundConstants",
    "MeanCurvatureBoundConstants",
    "log_gamma_half_integer",
    "log_unit_ball_volume",
    "log_unit_sphere_volume",
    "michael_simon_constant",
    "sobolev_constant",
    "c1",
    "t1_bound",
    "t1_ode",
    "c2",
    "t2",
    "c3",
    "c4_and_C1",
    "h_bound_chain",
    "pinching_constant",
    "moser_sup_bound",
    "constant_chain",
    "lp_growth_crossing_time",
]


# ---------------------------------------------------------------------------
# log-domain scalar
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class LogScalar:
    """A nonnegative real carried as its natural logarithm.

    log_value = -inf represents exact zero.  Multiplication, powers and
    sums of nonnegative quantities never leave the representable range,
    which is what the constant chain needs (values up to ~10**(10**6)).
    exp(log(x)) reproduces x to 1e-14 relative for |log x| <= 90; beyond
    that the float64 log representation itself costs |log x| * eps/2.
    """

    log_value: float

    @classmethod
    def from_value(cls, x: float) -> "LogScalar":
        if x < 0.0:
            raise ValueError(f"log-domain scalars are nonnegative, got {x}")
        return cls(math.log(x) if x > 0.0 else -math.inf)

    @property
    def value(self) -> float:
        """Native float value; +inf / 0.0 past the representable range."""
        if self.log_value == -math.inf:
            return 0.0
        if self.log_value > 709.0:
            return math.inf
        return math.exp(self.log_value)

    @property
    def log10(self) -> float:
        return self.log_value / math.log(10.0)

    def _coerce(self, other) -> "LogScalar":
        if isinstance(other, LogScalar):
            return other
        return LogScalar.from_value(float(other))

    def __mul__(self, other) -> "LogScalar":
        o = self._coerce(other)
        if self.log_value == -math.inf or o.log_value == -math.inf:
            return LogScalar(-math.inf)
        return LogScalar(self.log_value + o.log_value)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "LogScalar":
        o = self._coerce(other)
        if o.log_value == -math.inf:
            raise ZeroDivisionError("division by log-domain zero")
        if self.log_value == -math.inf:
            return LogScalar(-math.inf)
        return LogScalar(self.log_value - o.log_value)

    def __rtruediv__(self, other) -> "LogScalar":
        return self._coerce(other) / self

    def __pow__(self, e: float) -> "LogScalar":
        if self.log_value == -math.inf:
            if e <= 0.0:
                raise ZeroDivisionError("nonpositive power of log-domain zero")
            return LogScalar(-math.inf)
        return LogScalar(self.log_value * e)

    def __add__(self, other) -> "LogScalar":
        o = self._coerce(other)
        return LogScalar(float(np.logaddexp(self.log_value, o.log_value)))

    __radd__ = __add__


def log_sum(terms) -> LogScalar:
    """Sum of nonnegative log-domain terms."""
    logs = [t.log_value for t in terms]
    return LogScalar(float(np.logaddexp.reduce(logs)))


# ---------------------------------------------------------------------------
# gamma-function helpers (exact recurrences, no library variance)
# ---------------------------------------------------------------------------

def log_gamma_half_integer(twice_x: int) -> float:
    """log Gamma(twice_x / 2) for integer twice_x >= 1, by exact recurrence.

    Gamma(1) = 1, Gamma(1/2) = sqrt(pi), Gamma(x + 1) = x * Gamma(x).
    """
    if twice_x < 1:
        raise ValueError("argument must be a positive half-integer")
    if twice_x % 2 == 0:
        # integer argument m = twice_x / 2: Gamma(m) = (m-1)!
        m = twice_x // 2
        return sum(math.log(k) for k in range(2, m))
    acc = 0.5 * math.log(math.pi)  # Gamma(1/2)
    x = 1  # running 2x, value currently Gamma(x/2)
    while x < twice_x:
        acc += math.log(x / 2.0)
        x += 2
    return acc


def log_unit_ball_volume(n: int) -> float:
    """log of sigma_n = pi^(n/2) / Gamma(n/2 + 1), the unit n-ball volume."""
    if n < 1:
        raise ValueError("dimension must be positive")
    return 0.5 * n * math.log(math.pi) - log_gamma_half_integer(n + 2)


def log_unit_sphere_volume(n: int) -> float:
    """log of omega_n = 2 pi^((n+1)/2) / Gamma((n+1)/2), the unit n-sphere volume."""
    if n < 1:
        raise ValueError("dimension must be positive")
    return math.log(2.0) + 0.5 * (n + 1) * math.log(math.pi) - log_gamma_half_integer(n + 1)


# ---------------------------------------------------------------------------
# chain records
# ---------------------------------------------------------------------------

@dataclass
class ChainEntry:
    value: LogScalar
    provenance: str


@dataclass
class ConstantChain:
    """All named chain entries with inputs and per-entry provenance."""

    inputs: dict
    entries: dict = field(default_factory=dict)

    def put(self, name: str, value: LogScalar, provenance: str):
        if not provenance:
            raise ValueError("every chain entry needs a provenance string")
        self.entries[name] = ChainEntry(value, provenance)

    def __getitem__(self, name: str) -> LogScalar:
        return self.entries[name].value

    def names(self):
        return list(self.entries)


@dataclass
class SobolevConstants:
    c_tilde: LogScalar
    c_hat: LogScalar
    C_n: LogScalar
    gamma0: float
    C_n_alpha0: LogScalar


@dataclass
class SffBoundConstants:
    """Constants of the chain driven by an L^p bound on the full form."""

    c1: LogScalar
    T1: LogScalar
    c2: LogScalar
    T2: LogScalar
    c3: LogScalar
    c4: LogScalar
    C1: LogScalar


@dataclass
class MeanCurvatureBoundConstants:
    """Constants of the chain driven by an L^p bound on the mean curvature."""

    c5: LogScalar
    c6: LogScalar
    T1: LogScalar
    c7: LogScalar
    c8: LogScalar
    T2: LogScalar
    T0: LogScalar
    c9: LogScalar
    c10: LogScalar
    C2: LogScalar


# ---------------------------------------------------------------------------
# individual constants
# ---------------------------------------------------------------------------

def michael_simon_constant(n: int) -> LogScalar:
    """c_n = 4^(n+1) * sigma_n^(-1/n)."""
    if n < 2:
        raise ValueError(f"isoperimetric constant needs n >= 2, got {n}")
    return LogScalar((n + 1) * math.log(4.0) - log_unit_ball_volume(n) / n)


def sobolev_constant(n: int, alpha0: float) -> SobolevConstants:
    """Sobolev constants derived from c_n.

    c_tilde = (n * c_n)^((n-2)/(n-1))
    c_hat   = (2 * c_tilde)^(2(n-1)/(n-2))
    C_n     = 4 * c_hat
    gamma0  = n (alpha0 + n - 2) / ((n - 2)(alpha0 - n))
    C_{n,alpha0} = C_n^(gamma0 + 1)
    """
    if n < 3:
        raise ValueError(f"Sobolev constant needs n >= 3, got {n}")
    if alpha0 <= n:
        raise ValueError(f"alpha0 must exceed n (gamma0 is singular at alpha0 = n)")
    cn = michael_simon_constant(n)
    c_tilde = (LogScalar.from_value(float(n)) * cn) ** ((n - 2.0) / (n - 1.0))
    c_hat = (2.0 * c_tilde) ** (2.0 * (n - 1.0) / (n - 2.0))
    C_n = 4.0 * c_hat
    gamma0 = n * (alpha0 + n - 2.0) / ((n - 2.0) * (alpha0 - n))
    return SobolevConstants(c_tilde, c_hat, C_n, gamma0, C_n ** (gamma0 + 1.0))


def _sobolev_np(n: int, p: float) -> LogScalar:
    """C_{n,p}: the Sobolev constant at alpha0 = p, as used by the chain."""
    return sobolev_constant(n, p).C_n_alpha0


def c1(n: int, p: float) -> LogScalar:
    """c1 = (3p/2) (n^(n/(p-n)) S + S ((p-n)/p) (3 n p S / (8(p-2)))^(n/(p-n))),
    with S = C_{n,p}^(n/p)."""
    if not p > n or n < 3:
        raise ValueError(f"need p > n >= 3, got n={n}, p={p}")
    S = _sobolev_np(n, p) ** (n / p)
    e = n / (p - n)
    term1 = LogScalar.from_value(float(n)) ** e * S
    inner = (3.0 * n * p / (8.0 * (p - 2.0))) * S
    term2 = S * ((p - n) / p) * inner ** e
    return (3.0 * p / 2.0) * (term1 + term2)


def _growth_rate(n: int, p: float, lam: float) -> LogScalar:
    """Largest value of (rhs of the L^p growth inequality) / phi on
    phi in [lam^p, (2 lam)^p]:  n p + (3p/2) S (2 lam)^2 + c1 (2 lam)^(2p/(p-n))."""
    S = _sobolev_np(n, p) ** (n / p)
    two_lam = LogScalar.from_value(2.0 * lam)
    return log_sum([
        LogScalar.from_value(float(n * p)),
        (3.0 * p / 2.0) * S * two_lam ** 2.0,
        c1(n, p) * two_lam ** (2.0 * p / (p - n)),
    ])


def t1_bound(n: int, p: float, lam: float) -> LogScalar:
    """Closed-form lower bound on the time the L^p norm of the form needs to
    double:  T1 = p ln 2 / K with K = p * (np + (3p/2) S (2L)^2 + c1 (2L)^(2p/(p-n)))."""
    if lam <= 0.0:
        raise ValueError(f"norm bound must be positive, got {lam}")
    K = LogScalar.from_value(float(p)) * _growth_rate(n, p, lam)
    return LogScalar.from_value(p * math.log(2.0)) / K


# ---------------------------------------------------------------------------
# the superlinear comparison ODE (native-float integrator)
# ---------------------------------------------------------------------------

def lp_growth_crossing_time(log_phi0: float, log_phi_target: float,
                            lin: float, log_a: float, exp_a: float,
                            log_b: float, exp_b: float,
                            rel_tol: float = 1e-10,
                            collect=None) -> float:
    """First time the solution of phi' = lin*phi + A*phi^(1+exp_a) + B*phi^(1+exp_b)
    reaches phi_target, starting from phi0 > 0.

    Integrates psi = log phi with classical RK4 and adaptive steps sized so
    each step advances psi by about 0.02; the final step is bisected until
    the crossing time is located to rel_tol relative accuracy.  log_a/log_b
    may be -inf to drop a term.  Deterministic.  If `collect` is a list,
    (t, psi) samples are appended to it.
    """
    if log_phi_target <= log_phi0:
        return 0.0

    def rate(psi: float) -> float:
        r = lin
        if log_a != -math.inf:
            r += math.exp(log_a + exp_a * psi)
        if log_b != -math.inf:
            r += math.exp(log_b + exp_b * psi)
        return r

    def rk4(psi: float, dt: float) -> float:
        k1 = rate(psi)
        k2 = rate(psi + 0.5 * dt * k1)
        k3 = rate(psi + 0.5 * dt * k2)
        k4 = rate(psi + dt * k3)
        return psi + dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0

    t, psi = 0.0, log_phi0
    if collect is not None:
        collect.append((t, psi))
    for _ in range(2_000_000):
        r = rate(psi)
        if not math.isfinite(r) or r <= 0.0:
            raise ArithmeticError(f"comparison ODE rate not positive finite: {r}")
        dt = 0.02 / r
        nxt = rk4(psi, dt)
        if nxt >= log_phi_target:
            lo, hi = 0.0, dt
            while (hi - lo) > rel_tol * max(t + hi, 1e-300):
                mid = 0.5 * (lo + hi)
                if rk4(psi, mid) >= log_phi_target:
                    hi = mid
                else:
                    lo = mid
            if collect is not None:
                collect.append((t + hi, log_phi_target))
            return t + hi
        t += dt
        psi = nxt
        if collect is not None:
            collect.append((t, psi))
    raise ArithmeticError("comparison ODE integrator did not reach the target")


def t1_ode(n: int, p: float, lam: float) -> float:
    """Numerically integrated first time the L^p comparison ODE doubles the norm.

    phi' = n p phi + (3p/2) S phi^((p+2)/p) + c1 phi^((p-n+2)/(p-n)),
    from phi(0) = lam^p to phi = (2 lam)^p.  Sharper than t1_bound; native
    floats, so the coefficients must be representable (moderate n, p).
    """
    if lam <= 0.0:
        raise ValueError(f"norm bound must be positive, got {lam}")
    S = _sobolev_np(n, p) ** (n / p)
    log_a = math.log(3.0 * p / 2.0) + S.log_value
    log_b = c1(n, p).log_value
    return lp_growth_crossing_time(
        p * math.log(lam), p * math.log(2.0 * lam),
        float(n * p), log_a, 2.0 / p, log_b, 2.0 / (p - n),
    )


# ---------------------------------------------------------------------------
# chain under an L^p bound on the full second fundamental form
# ---------------------------------------------------------------------------

def _check_sff_chain_domain(n: int, p: float, q: float, lam: float):
    if n < 3 or not p > n:
        raise ValueError(f"need p > n >= 3, got n={n}, p={p}")
    if not q > 1.0:
        raise ValueError(f"need q > 1, got q={q}")
    if lam <= 0.0:
        raise ValueError(f"norm bound must be positive, got {lam}")


def c2(n: int, p: float, q: float, lam: float) -> LogScalar:
    """c2 = 13 ((2L)^2 S B^(n/p) q^-(1+n/(p-n))
             + (2L)^2 S ((p-n)/p) (13 q (2L)^2 S (n/p) / (3(q-1)))^(n/(p-n))),
    with S = C_{n,p}^(n/p) and B = 1 + n^(p/(p-n)) (2L)^(2p/(p-n))."""
    _check_sff_chain_domain(n, p, q, lam)
    S = _sobolev_np(n, p) ** (n / p)
    two_lam = LogScalar.from_value(2.0 * lam)
    B = LogScalar.from_value(1.0) + (
        LogScalar.from_value(float(n)) ** (p / (p - n)) * two_lam ** (2.0 * p / (p - n))
    )
    term1 = two_lam ** 2.0 * S * B ** (n / p) / LogScalar.from_value(q) ** (1.0 + n / (p - n))
    inner = (13.0 * q * n / (3.0 * (q - 1.0) * p)) * two_lam ** 2.0 * S
    term2 = two_lam ** 2.0 * S * ((p - n) / p) * inner ** (n / (p - n))
    return 13.0 * (term1 + term2)


def t2(n: int, p: float, q: float, lam: float) -> LogScalar:
    """T2 = min{T1, q ln 2 / (c2 q^(p/(p-n)))}."""
    cand = LogScalar.from_value(q * math.log(2.0)) / (
        c2(n, p, q, lam) * LogScalar.from_value(q) ** (p / (p - n))
    )
    return min(t1_bound(n, p, lam), cand)


def c3(n: int, p: float, q: float, lam: float) -> LogScalar:
    """c3 = C_{n,p} * max{q/(q-1), (1 + n^(p/(p-n)) (2L)^(2p/(p-n))) T2}."""
    _check_sff_chain_domain(n, p, q, lam)
    two_lam = LogScalar.from_value(2.0 * lam)
    B = LogScalar.from_value(1.0) + (
        LogScalar.from_value(float(n)) ** (p / (p - n)) * two_lam ** (2.0 * p / (p - n))
    )
    cap = max(LogScalar.from_value(q / (q - 1.0)), B * t2(n, p, q, lam))
    return _sobolev_np(n, p) * cap


def c4_and_C1(n: int, p: float, q: float, lam: float) -> SffBoundConstants:
    """Sup-bound prefactor and resulting smallness threshold.

    c4 = 4 (1+2/n)^(np(n+2)/(2q(p-n))) c3^(n/q)
         (c2 q^(2n/(p-n)+1) + (n+2)^2/(2n T2))^((n+2)/q) T2^(2/q)
    C1 = sqrt(2/c4) for n >= 4, sqrt(4/(3 c4)) for n = 3.
    """
    _check_sff_chain_domain(n, p, q, lam)
    _c1 = c1(n, p)
    _t1 = t1_bound(n, p, lam)
    _c2 = c2(n, p, q, lam)
    _t2 = t2(n, p, q, lam)
    _c3 = c3(n, p, q, lam)
    mid = _c2 * LogScalar.from_value(q) ** (2.0 * n / (p - n) + 1.0) + (
        LogScalar.from_value((n + 2.0) ** 2 / (2.0 * n)) / _t2
    )
    pref = LogScalar.from_value(1.0 + 2.0 / n) ** (n * p * (n + 2.0) / (2.0 * q * (p - n)))
    _c4 = 4.0 * pref * _c3 ** (n / q) * mid ** ((n + 2.0) / q) * _t2 ** (2.0 / q)
    eps0 = (2.0 / _c4) ** 0.5 if n >= 4 else (4.0 / (3.0 * _c4)) ** 0.5
    return SffBoundConstants(c1=_c1, T1=_t1, c2=_c2, T2=_t2, c3=_c3, c4=_c4, C1=eps0)


# ---------------------------------------------------------------------------
# chain under an L^p bound on the mean curvature
# ---------------------------------------------------------------------------

def h_bound_chain(n: int, p: float, q: float, lam: float) -> MeanCurvatureBoundConstants:
    """The c5..c10 chain; requires q > n (not just q > 1)."""
    if n < 3 or not p > n:
        raise ValueError(f"need p > n >= 3, got n={n}, p={p}")
    if not q > n:
        raise ValueError(f"this chain needs q > n, got q={q}")
    if lam <= 0.0:
        raise ValueError(f"norm bound must be positive, got {lam}")

    C = _sobolev_np(n, p)
    Sp = C ** (n / p)
    Sq = C ** (n / q)
    two_lam = LogScalar.from_value(2.0 * lam)
    W = LogScalar.from_value(1.0) + two_lam ** (2.0 * p / (p - n))
    E = max(n / (p - n), n / (q - n)) + 1.0
    sq200 = 200.0 ** 2

    _c5 = 2.0 * sq200 * Sq * (n / q) + (2.0 / n) * two_lam ** 2.0 * Sp * (n / p)
    base6 = _c5 * (p / (4.0 * (p - 2.0)))
    _c6 = log_sum([
        2.0 * sq200 * W ** (n / q) * Sq,
        2.0 * sq200 * Sq * ((q - n) / q) * base6 ** (n / (q - n)),
        (2.0 / n) * two_lam ** 2.0 * W ** (n / p) * Sp,
        (2.0 / n) * two_lam ** 2.0 * Sp * ((p - n) / p) * base6 ** (n / (p - n)),
        LogScalar.from_value(2.0 * n),
    ])
    _t1 = LogScalar.from_value(p * math.log(1.5)) / (_c6 * LogScalar.from_value(p / 2.0) ** E)

    _c7 = 13.0 * sq200 * Sq * (n / q) + (2.0 / n) * two_lam ** 2.0 * Sp * (n / p)
    base8 = _c7 * (q / (3.0 * (q - 1.0)))
    _c8 = log_sum([
        13.0 * sq200 * W ** (n / q) * Sq,
        13.0 * sq200 * Sq * ((q - n) / q) * base8 ** (n / (q - n)),
        (2.0 / n) * two_lam ** 2.0 * W ** (n / p) * Sp,
        (2.0 / n) * two_lam ** 2.0 * Sp * ((p - n) / p) * base8 ** (n / (p - n)),
    ])
    _t2 = LogScalar.from_value(p * math.log(1.5)) / (_c8 * LogScalar.from_value(q) ** E)

    _t0 = min(_t1, _t2)
    _c9 = C * max(LogScalar.from_value(q / (q - 1.0)), W * _t0)
    qhat = (n * (n + 2.0) / (4.0 * q)) * E
    mid = _c8 * LogScalar.from_value(q) ** E + LogScalar.from_value((n + 2.0) ** 2 / n) / _t0
    _c10 = (4.0 * LogScalar.from_value(1.0 + 2.0 / n) ** (2.0 * qhat)
            * _c9 ** (n / q) * mid ** ((n + 2.0) / q) * (_t0 / 2.0) ** (2.0 / q))
    eps0 = (2.0 / _c10) ** 0.5 if n >= 4 else (4.0 / (3.0 * _c10)) ** 0.5
    return MeanCurvatureBoundConstants(
        c5=_c5, c6=_c6, T1=_t1, c7=_c7, c8=_c8, T2=_t2, T0=_t0,
        c9=_c9, c10=_c10, C2=eps0,
    )


def pinching_constant(n: int, p: float) -> LogScalar:
    """C_{n,p} = min{100, max{C1(n,p,p,100), C2(n,p,p,100*sqrt(n))}}.

    Returned in log-domain form: for larger n, p the thresholds drop below
    the smallest positive native float, so a plain float would underflow.
    """
    if n < 3 or not p > n:
        raise ValueError(f"need p > n >= 3, got n={n}, p={p}")
    C1 = c4_and_C1(n, p, p, 100.0).C1
    C2 = h_bound_chain(n, p, p, 100.0 * math.sqrt(n)).C2
    return min(LogScalar.from_value(100.0), max(C1, C2))


def moser_sup_bound(n: int, p: float, q: float, c2_star, c3_star,
                    t: float, j_integral, h_chain: bool = False) -> LogScalar:
    """Iteration bound on the squared traceless norm at time t.

    bound = (1+2/n)^((n(n+2)/(2q)) x) * c3*^(n/q)
            * (c2* q^x + (n+2)^2/(2nt))^((n+2)/q) * J^(2/q)

    where J is the space-time integral of the q-th power of the traceless
    norm, and x = p/(p-n) for the full-form chain (c2, c3) or
    x = max{n/(p-n), n/(q-n)} + 1 for the mean-curvature chain (c8, c9),
    selected by `h_chain`.
    """
    if t <= 0.0:
        raise ValueError(f"need t > 0, got {t}")
    c2s = c2_star if isinstance(c2_star, LogScalar) else LogScalar.from_value(c2_star)
    c3s = c3_star if isinstance(c3_star, LogScalar) else LogScalar.from_value(c3_star)
    J = j_integral if isinstance(j_integral, LogScalar) else LogScalar.from_value(j_integral)
    if J.log_value == -math.inf:
        return LogScalar(-math.inf)
    x = (max(n / (p - n), n / (q - n)) + 1.0) if h_chain else p / (p - n)
    mid = c2s * LogScalar.from_value(q) ** x + LogScalar.from_value((n + 2.0) ** 2 / (2.0 * n * t))
    pref = LogScalar.from_value(1.0 + 2.0 / n) ** ((n * (n + 2.0) / (2.0 * q)) * x)
    return pref * c3s ** (n / q) * mid ** ((n + 2.0) / q) * J ** (2.0 / q)


# ---------------------------------------------------------------------------
# full chain assembly
# ---------------------------------------------------------------------------

def constant_chain(n: int, p: float, q: float | None = None,
                   lam_sff: float | None = None,
                   lam_mean: float | None = None) -> ConstantChain:
    """Assemble every named entry, with provenance, for one parameter set.

    Defaults follow the pinching-threshold composition: q = p, the full-form
    chain at norm bound 100 and the mean-curvature chain at 100*sqrt(n).
    """
    if q is None:
        q = p
    if lam_sff is None:
        lam_sff = 100.0
    if lam_mean is None:
        lam_mean = 100.0 * math.sqrt(n)

    chain = ConstantChain(inputs={
        "n": n, "p": p, "q": q, "alpha0": p,
        "lam_sff": lam_sff, "lam_mean": lam_mean,
    })
    chain.put("sigma_n", LogScalar(log_unit_ball_volume(n)),
              "pi^(n/2) / Gamma(n/2 + 1), unit ball volume")
    chain.put("c_n", michael_simon_constant(n), "4^(n+1) * sigma_n^(-1/n)")
    sob = sobolev_constant(n, p)
    chain.put("c_tilde_n", sob.c_tilde, "(n c_n)^((n-2)/(n-1))")
    chain.put("c_hat_n", sob.c_hat, "(2 c_tilde_n)^(2(n-1)/(n-2))")
    chain.put("C_n", sob.C_n, "4 c_hat_n")
    chain.put("gamma0", LogScalar.from_value(sob.gamma0),
              "n (alpha0 + n - 2) / ((n-2)(alpha0 - n)) at alpha0 = p")
    chain.put("C_n_alpha0", sob.C_n_alpha0, "C_n^(gamma0 + 1)")

    sff = c4_and_C1(n, p, q, lam_sff)
    L = lam_sff
    chain.put("c1", sff.c1,
              "(3p/2)(n^(n/(p-n)) S + S ((p-n)/p)(3npS/(8(p-2)))^(n/(p-n))), S = C_n_alpha0^(n/p)")
    chain.put("T1", sff.T1,
              f"p ln2 / (p (np + (3p/2) S (2*{L:g})^2 + c1 (2*{L:g})^(2p/(p-n))))")
    chain.put("c2", sff.c2,
              "13((2L)^2 S B^(n/p) / q^(1+n/(p-n)) + (2L)^2 S ((p-n)/p)(13q(2L)^2 S(n/p)/(3(q-1)))^(n/(p-n)))")
    chain.put("T2", sff.T2, "min{T1, q ln2 / (c2 q^(p/(p-n)))}")
    chain.put("c3", sff.c3, "C_n_alpha0 * max{q/(q-1), (1 + n^(p/(p-n))(2L)^(2p/(p-n))) T2}")
    chain.put("c4", sff.c4,
              "4 (1+2/n)^(np(n+2)/(2q(p-n))) c3^(n/q) (c2 q^(2n/(p-n)+1) + (n+2)^2/(2n T2))^((n+2)/q) T2^(2/q)")
    chain.put("C1", sff.C1, "sqrt(2/c4) for n>=4, sqrt(4/(3 c4)) for n=3")

    hb = h_bound_chain(n, p, q, lam_mean)
    chain.put("c5", hb.c5, "2*200^2 C^(n/q) (n/q) + (2/n)(2L)^2 C^(n/p) (n/p)")
    chain.put("c6", hb.c6,
              "2*200^2 W^(n/q) C^(n/q) + 2*200^2 C^(n/q)((q-n)/q)(c5 p/(4(p-2)))^(n/(q-n)) "
              "+ (2/n)(2L)^2 W^(n/p) C^(n/p) + (2/n)(2L)^2 C^(n/p)((p-n)/p)(c5 p/(4(p-2)))^(n/(p-n)) + 2n")
    chain.put("T1_h", hb.T1, "p ln(3/2) / (c6 (p/2)^(max{n/(p-n), n/(q-n)}+1))")
    chain.put("c7", hb.c7, "13*200^2 C^(n/q) (n/q) + (2/n)(2L)^2 C^(n/p) (n/p)")
    chain.put("c8", hb.c8,
              "13*200^2 W^(n/q) C^(n/q) + 13*200^2 C^(n/q)((q-n)/q)(c7 q/(3(q-1)))^(n/(q-n)) "
              "+ (2/n)(2L)^2 W^(n/p) C^(n/p) + (2/n)(2L)^2 C^(n/p)((p-n)/p)(c7 q/(3(q-1)))^(n/(p-n))")
    chain.put("T2_h", hb.T2, "p ln(3/2) / (c8 q^(max{n/(p-n), n/(q-n)}+1))")
    chain.put("T0", hb.T0, "min{T1_h, T2_h}")
    chain.put("c9", hb.c9, "C_n_alpha0 * max{q/(q-1), (1 + (2L)^(2p/(p-n))) T0}")
    chain.put("c10", hb.c10,
              "4 (1+2/n)^(2 qhat) c9^(n/q) (c8 q^E + (n+2)^2/(n T0))^((n+2)/q) (T0/2)^(2/q), "
              "qhat = (n(n+2)/(4q)) E")
    chain.put("C2", hb.C2, "sqrt(2/c10) for n>=4, sqrt(4/(3 c10)) for n=3")

    final = min(LogScalar.from_value(100.0),
                max(c4_and_C1(n, p, p, 100.0).C1,
                    h_bound_chain(n, p, p, 100.0 * math.sqrt(n)).C2))
    chain.put("C_n_p", final, "min{100, max{C1(n,p,p,100), C2(n,p,p,100 sqrt(n))}}")
    return chain

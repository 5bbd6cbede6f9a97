"""Pointwise algebra of second fundamental forms.

A tensor is stored as the component array h[a, i, j] of a normal-bundle
valued symmetric bilinear form on an n-dimensional submanifold with d
normal directions.  This module provides the traceless split, the
squared-norm invariants, the quartic reaction terms that drive the
curvature evolution, and the slack of every pointwise inequality
between them.  All scalar outputs are frame invariant.

Array-level functions accept batched input of shape (..., d, n, n) so
large randomized inequality sweeps stay vectorized; the object-level
operations wrap single tensors with validation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "SffTensor",
    "TracelessSplit",
    "ScalarInvariants",
    "ReactionTerms",
    "AndrewsBakerSlacks",
    "traceless_split",
    "scalar_invariants",
    "reaction_terms",
    "lili_slack",
    "schwarz_slack",
    "andrews_baker_slacks",
    "baker_pinch_ok",
    "random_sff",
    "umbilic_sff",
    "rotate_frames",
    "batch_invariants",
    "batch_reaction_terms",
    "batch_traceless_norms",
    "batch_slacks",
]

# Absolute slack tolerance, scaled by |A|^4 for the quartic inequalities.
SLACK_TOL = 1e-12


@dataclass
class SffTensor:
    """Second fundamental form at a point: h[a, i, j], a < d, i,j < n."""

    n: int
    d: int
    h: np.ndarray

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"intrinsic dimension must be >= 2, got {self.n}")
        if self.d < 1:
            raise ValueError(f"codimension must be >= 1, got {self.d}")
        self.h = np.asarray(self.h, dtype=float)
        if self.h.shape != (self.d, self.n, self.n):
            raise ValueError(
                f"component array has shape {self.h.shape}, expected {(self.d, self.n, self.n)}"
            )
        if not np.all(np.isfinite(self.h)):
            raise ValueError("non-finite components are not admitted")
        scale = np.max(np.abs(self.h)) if self.h.size else 0.0
        asym = np.max(np.abs(self.h - np.swapaxes(self.h, -1, -2)))
        if asym > 1e-12 * (1.0 + scale):
            raise ValueError(f"components are not symmetric in i,j (max asymmetry {asym:g})")

    @property
    def mean_curvature(self) -> np.ndarray:
        """Components of the mean curvature vector, H^a = sum_i h[a, i, i]."""
        return np.einsum("aii->a", self.h)


@dataclass
class TracelessSplit:
    """Traceless part and its decomposition along the mean curvature direction."""

    aring: SffTensor
    hvec: np.ndarray
    aH_norm2: float
    aI_norm2: float


@dataclass
class ScalarInvariants:
    a2: float        # |A|^2
    h2: float        # |H|^2
    aring2: float    # traceless part squared norm


@dataclass
class ReactionTerms:
    r1: float
    r2: float
    r3: float


@dataclass
class AndrewsBakerSlacks:
    slack_first: float
    slack_second: float


# ---------------------------------------------------------------------------
# batched array-level kernels; h has shape (..., d, n, n)
# ---------------------------------------------------------------------------

def batch_invariants(h: np.ndarray):
    """Return (|A|^2, |H|^2, |Aring|^2) arrays for batched components."""
    h = np.asarray(h, dtype=float)
    n = h.shape[-1]
    a2 = np.einsum("...aij,...aij->...", h, h)
    hvec = np.einsum("...aii->...a", h)
    h2 = np.einsum("...a,...a->...", hvec, hvec)
    return a2, h2, a2 - h2 / n


def batch_reaction_terms(h: np.ndarray):
    """Quartic reaction terms of the norm evolution equations.

    r1 = sum_{a,b} (sum_{ij} h^a_ij h^b_ij)^2
    r2 = sum_{ijab} [sum_p (h^a_ip h^b_jp - h^a_jp h^b_ip)]^2
    r3 = sum_{ij} (sum_a H^a h^a_ij)^2
    """
    h = np.asarray(h, dtype=float)
    gram = np.einsum("...aij,...bij->...ab", h, h)
    r1 = np.einsum("...ab,...ab->...", gram, gram)
    # m[..., a, b, i, j] = sum_p h^a_ip h^b_jp; the bracket is m - m^T in (i, j)
    m = np.einsum("...aip,...bjp->...abij", h, h)
    comm = m - np.swapaxes(m, -1, -2)
    r2 = np.einsum("...abij,...abij->...", comm, comm)
    hvec = np.einsum("...aii->...a", h)
    s = np.einsum("...a,...aij->...ij", hvec, h)
    r3 = np.einsum("...ij,...ij->...", s, s)
    return r1, r2, r3


def batch_traceless_norms(h: np.ndarray):
    """Return (|Aring|^2, |Aring_H|^2, |Aring_I|^2) for batched components.

    The H-part is read off after reflecting the normal frame so that the
    first normal direction is H/|H|; when |H| = 0 the split degenerates
    to (0, |Aring|^2).
    """
    h = np.asarray(h, dtype=float)
    n = h.shape[-1]
    d = h.shape[-3]
    hvec = np.einsum("...aii->...a", h)
    h2 = np.einsum("...a,...a->...", hvec, hvec)
    eye = np.eye(n)
    aring = h - hvec[..., :, None, None] * eye / n
    aring2 = np.einsum("...aij,...aij->...", aring, aring)

    hnorm = np.sqrt(h2)
    safe = hnorm > 0.0
    u = np.where(safe[..., None], hvec / np.where(safe, hnorm, 1.0)[..., None], 0.0)
    # Householder reflection mapping u to e1; only its first row is needed.
    v = u.copy()
    v[..., 0] -= 1.0
    vn2 = np.einsum("...a,...a->...", v, v)
    degen = vn2 < 1e-30  # u already equals e1
    row0 = -2.0 * v[..., 0:1] * v / np.where(degen, 1.0, vn2)[..., None]
    row0[..., 0] += 1.0
    e1 = np.zeros(d)
    e1[0] = 1.0
    row0 = np.where(degen[..., None], e1, row0)

    a_h = np.einsum("...a,...aij->...ij", row0, aring)
    ah2 = np.einsum("...ij,...ij->...", a_h, a_h)
    ah2 = np.where(safe, ah2, 0.0)
    ai2 = np.maximum(aring2 - ah2, 0.0)
    return aring2, ah2, ai2


def batch_slacks(h: np.ndarray):
    """All four inequality slacks at once, as a dict of arrays."""
    h = np.asarray(h, dtype=float)
    n = h.shape[-1]
    a2, h2, _ = batch_invariants(h)
    r1, r2, r3 = batch_reaction_terms(h)
    aring2, ah2, ai2 = batch_traceless_norms(h)
    lhs = 2.0 * r1 + 2.0 * r2 - (2.0 / n) * r3
    mid = 2.0 * ah2 ** 2 + (2.0 / n) * ah2 * h2 + 8.0 * ah2 * ai2 + 3.0 * ai2 ** 2
    rhs = 2.0 * a2 * aring2 + 11.0 * aring2 ** 2
    return {
        "lili": 3.0 * a2 ** 2 - 2.0 * r1 - 2.0 * r2,
        "schwarz": a2 * h2 - r3,
        "ab_first": mid - lhs,
        "ab_second": rhs - mid,
        "scale": a2 ** 2,
    }


# ---------------------------------------------------------------------------
# single-tensor operations
# ---------------------------------------------------------------------------

def traceless_split(t: SffTensor) -> TracelessSplit:
    """Split off the trace: aring^a_ij = h^a_ij - (1/n) H^a delta_ij."""
    hvec = t.mean_curvature
    aring = t.h - hvec[:, None, None] * np.eye(t.n) / t.n
    aring2, ah2, ai2 = batch_traceless_norms(t.h)
    return TracelessSplit(
        aring=SffTensor(t.n, t.d, aring),
        hvec=hvec,
        aH_norm2=float(ah2),
        aI_norm2=float(ai2),
    )


def scalar_invariants(t: SffTensor) -> ScalarInvariants:
    a2, h2, aring2 = batch_invariants(t.h)
    a2 = float(a2)
    aring2 = float(aring2)
    if aring2 < -SLACK_TOL * max(a2, 1.0):
        raise ArithmeticError(f"traceless norm came out negative: {aring2:g}")
    return ScalarInvariants(a2=a2, h2=float(h2), aring2=max(aring2, 0.0))


def reaction_terms(t: SffTensor) -> ReactionTerms:
    r1, r2, r3 = batch_reaction_terms(t.h)
    return ReactionTerms(r1=float(r1), r2=float(r2), r3=float(r3))


def lili_slack(t: SffTensor) -> float:
    """Slack of 2*r1 + 2*r2 <= 3|A|^4 (nonnegative up to SLACK_TOL * |A|^4)."""
    a2, _, _ = batch_invariants(t.h)
    r1, r2, _ = batch_reaction_terms(t.h)
    return float(3.0 * a2 ** 2 - 2.0 * r1 - 2.0 * r2)


def schwarz_slack(t: SffTensor) -> float:
    """Slack of r3 <= |A|^2 |H|^2; equality holds identically for d = 1."""
    a2, h2, _ = batch_invariants(t.h)
    _, _, r3 = batch_reaction_terms(t.h)
    return float(a2 * h2 - r3)


def andrews_baker_slacks(t: SffTensor) -> AndrewsBakerSlacks:
    """Slacks of the two-sided quartic estimate on the traceless reaction term.

    left   = 2*r1 + 2*r2 - (2/n)*r3
    middle = 2|Aring_H|^4 + (2/n)|Aring_H|^2|H|^2 + 8|Aring_H|^2|Aring_I|^2 + 3|Aring_I|^4
    right  = 2|A|^2|Aring|^2 + 11|Aring|^4
    """
    s = batch_slacks(t.h[None])
    return AndrewsBakerSlacks(
        slack_first=float(s["ab_first"][0]),
        slack_second=float(s["ab_second"][0]),
    )


def baker_pinch_ok(a2: float, h2: float, n: int) -> bool:
    """Dimension-dependent pinching test used by the convergence criterion.

    n >= 4:  |A|^2 <= |H|^2/(n-1) + 2
    n == 3:  |A|^2 <= 4|H|^2/9 + 4/3
    """
    if n < 3:
        raise ValueError(f"pinching test requires n >= 3, got {n}")
    if a2 < 0.0 or h2 < 0.0:
        raise ValueError("squared norms must be nonnegative")
    if n == 3:
        return a2 <= 4.0 * h2 / 9.0 + 4.0 / 3.0
    return a2 <= h2 / (n - 1.0) + 2.0


# ---------------------------------------------------------------------------
# generators and frame changes
# ---------------------------------------------------------------------------

def random_sff(rng: np.random.Generator, n: int, d: int, scale: float = 10.0) -> SffTensor:
    """Random tensor with i.i.d. uniform entries, symmetrized explicitly."""
    raw = rng.uniform(-scale, scale, size=(d, n, n))
    return SffTensor(n, d, 0.5 * (raw + np.swapaxes(raw, -1, -2)))


def umbilic_sff(n: int, d: int, c: float) -> SffTensor:
    """Umbilic point with mean curvature magnitude c in the first normal direction."""
    h = np.zeros((d, n, n))
    h[0] = (c / n) * np.eye(n)
    return SffTensor(n, d, h)


def rotate_frames(t: SffTensor, tangent_rot: np.ndarray | None = None,
                  normal_rot: np.ndarray | None = None) -> SffTensor:
    """Apply orthogonal changes of the tangent and normal frames."""
    h = t.h
    if tangent_rot is not None:
        h = np.einsum("ki,lj,aij->akl", tangent_rot, tangent_rot, h)
    if normal_rot is not None:
        h = np.einsum("ba,aij->bij", normal_rot, h)
    h = 0.5 * (h + np.swapaxes(h, -1, -2))  # kill roundoff asymmetry
    return SffTensor(t.n, t.d, h)

"""Quadrature on the discrete hypersurface: volume and L^p norms.

Midpoint rule with weights w_i = omega_{n-1} z_i^(n-1) ds_i, where ds_i
comes from chord-corrected geodesic spacings; the weights are produced
by the geometry extraction.  Summation order is fixed (numpy pairwise
reduction over index order) so results are reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .simulator import GeometryFields, ProfileState

__all__ = ["NormReport", "lp_norm", "norm_report"]


@dataclass
class NormReport:
    t: float
    vol: float
    a_lp: float
    aring_lq: float
    h_lp: float
    sup_a2: float
    p: float
    q: float


def lp_norm(field: np.ndarray, weights: np.ndarray, p: float) -> float:
    """(sum_i field_i^p w_i)^(1/p) for a nonnegative node field."""
    if p < 1.0:
        raise ValueError(f"order must satisfy p >= 1, got {p}")
    field = np.asarray(field, dtype=float)
    weights = np.asarray(weights, dtype=float)
    if field.shape != weights.shape:
        raise ValueError("field and weights must have matching shapes")
    if np.any(field < 0.0):
        raise ValueError("lp_norm expects a nonnegative field")
    if np.any(weights < 0.0):
        raise ValueError("quadrature weights must be nonnegative")
    return float(np.sum(field ** p * weights) ** (1.0 / p))


def norm_report(state: ProfileState, fields: GeometryFields,
                p: float, q: float) -> NormReport:
    """Assemble the standard norm row for one state."""
    w = fields.weights
    return NormReport(
        t=state.t,
        vol=float(np.sum(w)),
        a_lp=lp_norm(np.sqrt(fields.a2), w, p),
        aring_lq=lp_norm(np.sqrt(fields.aring2), w, q),
        h_lp=lp_norm(np.abs(fields.h), w, p),
        sup_a2=float(np.max(fields.a2)),
        p=p,
        q=q,
    )

import math

import numpy as np
import pytest

from sphereflow import tensor_core as tc


# ---------------------------------------------------------------------------
# brute-force loop oracles, independent of the einsum implementation
# ---------------------------------------------------------------------------

def oracle_invariants(h):
    d, n, _ = h.shape
    a2 = 0.0
    for a in range(d):
        for i in range(n):
            for j in range(n):
                a2 += h[a, i, j] ** 2
    hv = [sum(h[a, i, i] for i in range(n)) for a in range(d)]
    h2 = sum(x * x for x in hv)
    return a2, h2


def oracle_reactions(h):
    d, n, _ = h.shape
    r1 = 0.0
    for a in range(d):
        for b in range(d):
            s = 0.0
            for i in range(n):
                for j in range(n):
                    s += h[a, i, j] * h[b, i, j]
            r1 += s * s
    r2 = 0.0
    for i in range(n):
        for j in range(n):
            for a in range(d):
                for b in range(d):
                    s = 0.0
                    for k in range(n):
                        s += h[a, i, k] * h[b, j, k] - h[a, j, k] * h[b, i, k]
                    r2 += s * s
    hv = [sum(h[a, i, i] for i in range(n)) for a in range(d)]
    r3 = 0.0
    for i in range(n):
        for j in range(n):
            s = sum(hv[a] * h[a, i, j] for a in range(d))
            r3 += s * s
    return r1, r2, r3


# ---------------------------------------------------------------------------
# traceless split
# ---------------------------------------------------------------------------

def test_umbilic_split_is_trace_only():
    t = tc.umbilic_sff(n=4, d=2, c=2.5)
    split = tc.traceless_split(t)
    assert np.max(np.abs(split.aring.h)) < 1e-15
    assert math.isclose(np.linalg.norm(split.hvec), 2.5, rel_tol=1e-14)
    assert split.aH_norm2 < 1e-28
    assert split.aI_norm2 < 1e-28


def test_zero_tensor_split():
    t = tc.SffTensor(3, 2, np.zeros((2, 3, 3)))
    split = tc.traceless_split(t)
    assert np.all(split.aring.h == 0.0)
    assert split.aH_norm2 == 0.0 and split.aI_norm2 == 0.0
    inv = tc.scalar_invariants(t)
    assert (inv.a2, inv.h2, inv.aring2) == (0.0, 0.0, 0.0)


def test_traceless_norm_against_loop_oracle():
    rng = np.random.default_rng(42)
    for _ in range(25):
        t = tc.random_sff(rng, n=3, d=2)
        a2, h2 = oracle_invariants(t.h)
        inv = tc.scalar_invariants(t)
        assert math.isclose(inv.aring2, a2 - h2 / 3.0, rel_tol=1e-12, abs_tol=1e-12)


def test_split_trace_and_norm_decomposition():
    rng = np.random.default_rng(3)
    eps = np.finfo(float).eps
    for _ in range(25):
        n = int(rng.integers(2, 7))
        d = int(rng.integers(1, 5))
        t = tc.random_sff(rng, n, d)
        split = tc.traceless_split(t)
        inv = tc.scalar_invariants(t)
        traces = np.abs(np.einsum("aii->a", split.aring.h))
        assert np.max(traces) <= 8.0 * eps * math.sqrt(inv.a2)
        total = split.aH_norm2 + split.aI_norm2
        assert math.isclose(total, inv.aring2, rel_tol=1e-12, abs_tol=1e-12)
        assert math.isclose(inv.a2, inv.aring2 + inv.h2 / n,
                            rel_tol=8 * eps, abs_tol=8 * eps)


def test_zero_mean_curvature_split_degenerates():
    # trace-free tensor: whole traceless norm goes to the I-part
    h = np.zeros((2, 3, 3))
    h[0] = np.diag([1.0, -1.0, 0.0])
    h[1, 0, 1] = h[1, 1, 0] = 2.0
    t = tc.SffTensor(3, 2, h)
    split = tc.traceless_split(t)
    inv = tc.scalar_invariants(t)
    assert split.aH_norm2 == 0.0
    assert math.isclose(split.aI_norm2, inv.aring2, rel_tol=1e-14)


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------

def test_geodesic_sphere_invariants():
    r = math.pi / 3.0
    t = tc.SffTensor(3, 1, (1.0 / math.tan(r)) * np.eye(3)[None])
    inv = tc.scalar_invariants(t)
    assert math.isclose(inv.a2, 1.0, rel_tol=1e-14)
    assert math.isclose(inv.h2, 3.0, rel_tol=1e-14)
    assert inv.aring2 < 1e-15


def test_umbilic_invariants():
    t = tc.umbilic_sff(n=5, d=3, c=1.7)
    inv = tc.scalar_invariants(t)
    assert math.isclose(inv.a2, 1.7 ** 2 / 5.0, rel_tol=1e-14)
    assert inv.aring2 < 1e-16


# ---------------------------------------------------------------------------
# reaction terms
# ---------------------------------------------------------------------------

def test_reaction_terms_umbilic_hand_values():
    n, c = 4, 1.3
    t = tc.SffTensor(n, 1, c * np.eye(n)[None])
    r = tc.reaction_terms(t)
    assert math.isclose(r.r1, n ** 2 * c ** 4, rel_tol=1e-13)
    assert r.r2 == 0.0
    assert math.isclose(r.r3, n ** 3 * c ** 4, rel_tol=1e-13)


def test_reaction_terms_against_loop_oracle():
    rng = np.random.default_rng(11)
    for _ in range(10):
        t = tc.random_sff(rng, n=3, d=3)
        got = tc.reaction_terms(t)
        r1, r2, r3 = oracle_reactions(t.h)
        assert math.isclose(got.r1, r1, rel_tol=1e-13)
        assert math.isclose(got.r2, r2, rel_tol=1e-13, abs_tol=1e-9)
        assert math.isclose(got.r3, r3, rel_tol=1e-13)
        assert got.r1 >= 0.0 and got.r2 >= 0.0 and got.r3 >= 0.0
    assert tc.reaction_terms(tc.SffTensor(3, 2, np.zeros((2, 3, 3)))) \
        == tc.ReactionTerms(0.0, 0.0, 0.0)


# ---------------------------------------------------------------------------
# inequality slacks
# ---------------------------------------------------------------------------

def test_lili_slack_values_and_property():
    assert tc.lili_slack(tc.SffTensor(3, 1, np.zeros((1, 3, 3)))) == 0.0
    n, c = 3, 2.0
    t = tc.SffTensor(n, 1, c * np.eye(n)[None])
    assert math.isclose(tc.lili_slack(t), n ** 2 * c ** 4, rel_tol=1e-13)
    rng = np.random.default_rng(5)
    for _ in range(2000):
        n = int(rng.integers(2, 7))
        d = int(rng.integers(1, 5))
        t = tc.random_sff(rng, n, d)
        a2 = tc.scalar_invariants(t).a2
        assert tc.lili_slack(t) >= -1e-12 * a2 * a2


def test_schwarz_slack_and_codimension_one_equality():
    assert tc.schwarz_slack(tc.SffTensor(4, 2, np.zeros((2, 4, 4)))) == 0.0
    rng = np.random.default_rng(6)
    for _ in range(200):
        t = tc.random_sff(rng, n=int(rng.integers(2, 6)), d=1)
        inv = tc.scalar_invariants(t)
        # Cauchy-Schwarz is tight whenever there is a single normal direction
        assert abs(tc.schwarz_slack(t)) <= 1e-12 * inv.a2 * max(inv.h2, 1.0)
    for _ in range(500):
        t = tc.random_sff(rng, n=int(rng.integers(2, 6)), d=int(rng.integers(2, 5)))
        a2 = tc.scalar_invariants(t).a2
        assert tc.schwarz_slack(t) >= -1e-12 * a2 * a2


def test_andrews_baker_slacks():
    z = tc.SffTensor(3, 2, np.zeros((2, 3, 3)))
    s = tc.andrews_baker_slacks(z)
    assert s.slack_first == 0.0 and s.slack_second == 0.0
    # umbilic: reaction terms cancel exactly against the mean curvature term
    t = tc.umbilic_sff(4, 1, 2.0)
    s = tc.andrews_baker_slacks(t)
    assert s.slack_first >= -1e-14 and s.slack_second >= -1e-14
    r = tc.reaction_terms(t)
    assert abs(2 * r.r1 + 2 * r.r2 - 0.5 * r.r3) < 1e-12
    rng = np.random.default_rng(8)
    checked = 0
    for _ in range(600):
        t = tc.random_sff(rng, n=4, d=3)
        inv = tc.scalar_invariants(t)
        if inv.h2 == 0.0:
            continue
        checked += 1
        s = tc.andrews_baker_slacks(t)
        assert s.slack_first >= -1e-12 * inv.a2 ** 2
        assert s.slack_second >= -1e-12 * inv.a2 ** 2
    assert checked >= 590


def test_baker_pinch_examples():
    assert tc.baker_pinch_ok(0.0, 0.0, 4) is True
    assert tc.baker_pinch_ok(1.0, 3.0, 3) is True       # 1 <= 4/3 + 4/3
    assert tc.baker_pinch_ok(10.0, 0.0, 4) is False     # 10 > 2
    with pytest.raises(ValueError):
        tc.baker_pinch_ok(1.0, 1.0, 2)
    with pytest.raises(ValueError):
        tc.baker_pinch_ok(-1.0, 1.0, 4)


# ---------------------------------------------------------------------------
# covariance properties
# ---------------------------------------------------------------------------

def _random_orthogonal(rng, m):
    q, r = np.linalg.qr(rng.normal(size=(m, m)))
    return q * np.sign(np.diag(r))


def test_frame_invariance_of_all_scalars():
    rng = np.random.default_rng(13)
    for _ in range(30):
        n = int(rng.integers(3, 7))
        d = int(rng.integers(1, 5))
        t = tc.random_sff(rng, n, d)
        rot = tc.rotate_frames(t, _random_orthogonal(rng, n), _random_orthogonal(rng, d))

        inv_a, inv_b = tc.scalar_invariants(t), tc.scalar_invariants(rot)
        for f in ("a2", "h2", "aring2"):
            assert math.isclose(getattr(inv_a, f), getattr(inv_b, f),
                                rel_tol=1e-12, abs_tol=1e-9)
        ra, rb = tc.reaction_terms(t), tc.reaction_terms(rot)
        for f in ("r1", "r2", "r3"):
            assert math.isclose(getattr(ra, f), getattr(rb, f),
                                rel_tol=1e-11, abs_tol=1e-8)
        for f in (tc.lili_slack, tc.schwarz_slack):
            assert math.isclose(f(t), f(rot), rel_tol=1e-11, abs_tol=1e-8)
        sa, sb = tc.andrews_baker_slacks(t), tc.andrews_baker_slacks(rot)
        assert math.isclose(sa.slack_first, sb.slack_first, rel_tol=1e-11, abs_tol=1e-8)
        assert math.isclose(sa.slack_second, sb.slack_second, rel_tol=1e-11, abs_tol=1e-8)


def test_scaling_law():
    rng = np.random.default_rng(17)
    t = tc.random_sff(rng, 4, 2)
    s = 1.7
    ts = tc.SffTensor(4, 2, s * t.h)
    inv, invs = tc.scalar_invariants(t), tc.scalar_invariants(ts)
    assert math.isclose(invs.a2, s ** 2 * inv.a2, rel_tol=1e-13)
    assert math.isclose(invs.h2, s ** 2 * inv.h2, rel_tol=1e-13)
    assert math.isclose(invs.aring2, s ** 2 * inv.aring2, rel_tol=1e-12)
    r, rs = tc.reaction_terms(t), tc.reaction_terms(ts)
    for f in ("r1", "r2", "r3"):
        assert math.isclose(getattr(rs, f), s ** 4 * getattr(r, f), rel_tol=1e-13)
    assert math.isclose(tc.lili_slack(ts), s ** 4 * tc.lili_slack(t), rel_tol=1e-12)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def test_rejects_bad_input():
    h = np.zeros((1, 3, 3))
    h[0, 0, 1] = 1.0  # not symmetric
    with pytest.raises(ValueError):
        tc.SffTensor(3, 1, h)
    h = np.zeros((1, 3, 3))
    h[0, 0, 0] = math.nan
    with pytest.raises(ValueError):
        tc.SffTensor(3, 1, h)
    with pytest.raises(ValueError):
        tc.SffTensor(1, 1, np.zeros((1, 1, 1)))
    with pytest.raises(ValueError):
        tc.SffTensor(3, 1, np.zeros((2, 3, 3)))

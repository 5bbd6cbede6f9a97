"""Compiled inner loops of the profile-curve flow.

A hypersurface state is a curve on the unit 2-sphere with z >= 0, either
closed (orbit of a circle avoiding the poles) or anchored at z = 0 at
both ends.  The fiber direction contributes multiplicity ndim - 1.

Pole-anchored curves are differentiated with mirror ghosts (x, y, -z):
the orbit is invariant under the reflection, so the mirrored ghost is
the smooth continuation of the curve through the pole, and the fiber
curvature there takes its limiting value, the profile curvature.

All reductions run in index order, which fixes the summation order and
makes repeated runs bit-identical.
"""

import math

import numpy as np
from numba import njit

# event codes returned by advance()
EV_NONE = 0
EV_EXTINCT = 1
EV_STATIONARY = 2
EV_CAP = 3
EV_NONFINITE = 4
EV_TIME_LIMIT = 5
EV_STEP_LIMIT = 6
EV_MESH_FAIL = 7

# columns of the per-step record buffer
REC_COLS = 9  # t, vol, max_a2, a_lp, aring_lq, h_lp, h2_integral, sup_aring2, diam


@njit(cache=True)
def _gap(ax, ay, az, bx, by, bz):
    dx = bx - ax
    dy = by - ay
    dz = bz - az
    ch = 0.5 * math.sqrt(dx * dx + dy * dy + dz * dz)
    if ch > 1.0:
        ch = 1.0
    return 2.0 * math.asin(ch)


@njit(cache=True)
def geom_fields(pts, closed, ndim, omega_fiber, kappa, lam, hmean, a2, ar2, nu, wts):
    """Fill per-node geometry arrays; returns (ok, min_spacing, diam_proxy)."""
    N = pts.shape[0]
    nf = ndim - 1
    ngap = N if closed else N - 1
    gaps = np.empty(ngap)
    hmin = 1e300
    for i in range(ngap):
        j = i + 1
        if j == N:
            j = 0
        g = _gap(pts[i, 0], pts[i, 1], pts[i, 2], pts[j, 0], pts[j, 1], pts[j, 2])
        gaps[i] = g
        if g < hmin:
            hmin = g
    if hmin < 1e-10:
        return False, hmin, 0.0

    xmin = 1e300
    xmax = -1e300
    ymin = 1e300
    ymax = -1e300
    zmax = 0.0
    for i in range(N):
        px = pts[i, 0]
        py = pts[i, 1]
        pz = pts[i, 2]
        if closed:
            im = i - 1 if i > 0 else N - 1
            ip = i + 1 if i < N - 1 else 0
            pmx = pts[im, 0]
            pmy = pts[im, 1]
            pmz = pts[im, 2]
            ppx = pts[ip, 0]
            ppy = pts[ip, 1]
            ppz = pts[ip, 2]
            hm = gaps[im]
            hp = gaps[i]
        else:
            if i == 0:
                pmx = pts[1, 0]
                pmy = pts[1, 1]
                pmz = -pts[1, 2]
                hm = gaps[0]
            else:
                pmx = pts[i - 1, 0]
                pmy = pts[i - 1, 1]
                pmz = pts[i - 1, 2]
                hm = gaps[i - 1]
            if i == N - 1:
                ppx = pts[N - 2, 0]
                ppy = pts[N - 2, 1]
                ppz = -pts[N - 2, 2]
                hp = gaps[N - 2]
            else:
                ppx = pts[i + 1, 0]
                ppy = pts[i + 1, 1]
                ppz = pts[i + 1, 2]
                hp = gaps[i]

        den = hm + hp
        am = -hp / (hm * den)
        b0 = (hp - hm) / (hm * hp)
        cp = hm / (hp * den)
        d1x = am * pmx + b0 * px + cp * ppx
        d1y = am * pmy + b0 * py + cp * ppy
        d1z = am * pmz + b0 * pz + cp * ppz
        sm = 2.0 / (hm * den)
        s0 = -2.0 / (hm * hp)
        sp = 2.0 / (hp * den)
        d2x = sm * pmx + s0 * px + sp * ppx
        d2y = sm * pmy + s0 * py + sp * ppy
        d2z = sm * pmz + s0 * pz + sp * ppz

        dot = d1x * px + d1y * py + d1z * pz
        tx = d1x - dot * px
        ty = d1y - dot * py
        tz = d1z - dot * pz
        tn = math.sqrt(tx * tx + ty * ty + tz * tz)
        if tn < 1e-14:
            return False, hmin, 0.0
        tx /= tn
        ty /= tn
        tz /= tn
        nx = py * tz - pz * ty
        ny = pz * tx - px * tz
        nz = px * ty - py * tx

        kap = d2x * nx + d2y * ny + d2z * nz
        if not closed and (i == 0 or i == N - 1 or pz <= 1e-12):
            lm = kap
        else:
            if pz < 1e-300:
                return False, hmin, 0.0
            lm = -nz / pz
        H = kap + nf * lm
        A2 = kap * kap + nf * lm * lm
        AR2 = A2 - H * H / ndim
        if AR2 < 0.0:
            AR2 = 0.0

        kappa[i] = kap
        lam[i] = lm
        hmean[i] = H
        a2[i] = A2
        ar2[i] = AR2
        nu[i, 0] = nx
        nu[i, 1] = ny
        nu[i, 2] = nz

        if closed:
            ds = 0.5 * (hm + hp)
        elif i == 0:
            ds = 0.5 * gaps[0]
        elif i == N - 1:
            ds = 0.5 * gaps[N - 2]
        else:
            ds = 0.5 * (hm + hp)
        zw = pz if pz > 0.0 else 0.0
        wts[i] = omega_fiber * zw ** nf * ds

        if px < xmin:
            xmin = px
        if px > xmax:
            xmax = px
        if py < ymin:
            ymin = py
        if py > ymax:
            ymax = py
        if pz > zmax:
            zmax = pz

    dx = xmax - xmin
    dy = ymax - ymin
    dz = 2.0 * zmax
    diam = math.sqrt(dx * dx + dy * dy + dz * dz)
    return True, hmin, diam


@njit(cache=True)
def euler_step(pts, hmean, nu, dt, closed):
    """p <- normalize(p + dt H nu); endpoints stay on z = 0.  False on blow-up."""
    N = pts.shape[0]
    for i in range(N):
        f = dt * hmean[i]
        x = pts[i, 0] + f * nu[i, 0]
        y = pts[i, 1] + f * nu[i, 1]
        z = pts[i, 2] + f * nu[i, 2]
        if not (math.isfinite(x) and math.isfinite(y) and math.isfinite(z)):
            return False
        if not closed and (i == 0 or i == N - 1):
            z = 0.0
        elif z < 0.0:
            z = 0.0
        r = math.sqrt(x * x + y * y + z * z)
        if r < 1e-300:
            return False
        pts[i, 0] = x / r
        pts[i, 1] = y / r
        pts[i, 2] = z / r
    return True


@njit(cache=True)
def _pchip_slopes(x, y, m):
    # Fritsch-Carlson shape-preserving slopes
    npts = x.shape[0]
    if npts == 2:
        d = (y[1] - y[0]) / (x[1] - x[0])
        m[0] = d
        m[1] = d
        return
    for k in range(1, npts - 1):
        h0 = x[k] - x[k - 1]
        h1 = x[k + 1] - x[k]
        d0 = (y[k] - y[k - 1]) / h0
        d1 = (y[k + 1] - y[k]) / h1
        if d0 * d1 <= 0.0:
            m[k] = 0.0
        else:
            w1 = 2.0 * h1 + h0
            w2 = h1 + 2.0 * h0
            m[k] = (w1 + w2) / (w1 / d0 + w2 / d1)
    h0 = x[1] - x[0]
    h1 = x[2] - x[1]
    d0 = (y[1] - y[0]) / h0
    d1 = (y[2] - y[1]) / h1
    e = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1)
    if e * d0 <= 0.0:
        e = 0.0
    elif d0 * d1 < 0.0 and abs(e) > 3.0 * abs(d0):
        e = 3.0 * d0
    m[0] = e
    h0 = x[npts - 1] - x[npts - 2]
    h1 = x[npts - 2] - x[npts - 3]
    d0 = (y[npts - 1] - y[npts - 2]) / h0
    d1 = (y[npts - 2] - y[npts - 3]) / h1
    e = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1)
    if e * d0 <= 0.0:
        e = 0.0
    elif d0 * d1 < 0.0 and abs(e) > 3.0 * abs(d0):
        e = 3.0 * d0
    m[npts - 1] = e


@njit(cache=True)
def _pchip_eval(x, y, m, tq, out):
    nk = x.shape[0]
    j = 0
    for idx in range(tq.shape[0]):
        t = tq[idx]
        while j < nk - 2 and x[j + 1] < t:
            j += 1
        h = x[j + 1] - x[j]
        u = (t - x[j]) / h
        u2 = u * u
        u3 = u2 * u
        h00 = 2.0 * u3 - 3.0 * u2 + 1.0
        h10 = u3 - 2.0 * u2 + u
        h01 = -2.0 * u3 + 3.0 * u2
        h11 = u3 - u2
        out[idx] = h00 * y[j] + h10 * h * m[j] + h01 * y[j + 1] + h11 * h * m[j + 1]


@njit(cache=True)
def resample_curve(pts, closed):
    """Resample nodes to uniform arclength with monotone cubics, in place."""
    N = pts.shape[0]
    if closed:
        gaps = np.empty(N)
        total = 0.0
        for i in range(N):
            j = i + 1
            if j == N:
                j = 0
            gaps[i] = _gap(pts[i, 0], pts[i, 1], pts[i, 2], pts[j, 0], pts[j, 1], pts[j, 2])
            total += gaps[i]
        # knots -2..N+2 (wrapped) so interior slopes cover [0, total)
        ext = N + 5
        xs = np.empty(ext)
        xs[0] = -(gaps[N - 2] + gaps[N - 1])
        for e in range(1, ext):
            xs[e] = xs[e - 1] + gaps[(e - 3) % N]
        ys = np.empty((ext, 3))
        for e in range(ext):
            src = (e - 2) % N
            ys[e, 0] = pts[src, 0]
            ys[e, 1] = pts[src, 1]
            ys[e, 2] = pts[src, 2]
        tq = np.empty(N)
        for jdx in range(N):
            tq[jdx] = total * jdx / N
        out = np.empty((N, 3))
        m = np.empty(ext)
        col = np.empty(ext)
        res = np.empty(N)
        for c in range(3):
            for e in range(ext):
                col[e] = ys[e, c]
            _pchip_slopes(xs, col, m)
            _pchip_eval(xs, col, m, tq, res)
            for jdx in range(N):
                out[jdx, c] = res[jdx]
        for i in range(N):
            x = out[i, 0]
            y = out[i, 1]
            z = out[i, 2]
            if z < 0.0:
                z = 0.0
            r = math.sqrt(x * x + y * y + z * z)
            pts[i, 0] = x / r
            pts[i, 1] = y / r
            pts[i, 2] = z / r
    else:
        xs = np.empty(N)
        xs[0] = 0.0
        for i in range(N - 1):
            xs[i + 1] = xs[i] + _gap(pts[i, 0], pts[i, 1], pts[i, 2],
                                     pts[i + 1, 0], pts[i + 1, 1], pts[i + 1, 2])
        total = xs[N - 1]
        tq = np.empty(N)
        for jdx in range(N):
            tq[jdx] = total * jdx / (N - 1)
        out = np.empty((N, 3))
        m = np.empty(N)
        col = np.empty(N)
        res = np.empty(N)
        for c in range(3):
            for e in range(N):
                col[e] = pts[e, c]
            _pchip_slopes(xs, col, m)
            _pchip_eval(xs, col, m, tq, res)
            for jdx in range(N):
                out[jdx, c] = res[jdx]
        # endpoints are pinned on z = 0
        for c in range(3):
            out[0, c] = pts[0, c]
            out[N - 1, c] = pts[N - 1, c]
        for i in range(N):
            x = out[i, 0]
            y = out[i, 1]
            z = out[i, 2]
            if i == 0 or i == N - 1:
                z = 0.0
            elif z < 0.0:
                z = 0.0
            r = math.sqrt(x * x + y * y + z * z)
            pts[i, 0] = x / r
            pts[i, 1] = y / r
            pts[i, 2] = z / r


@njit(cache=True)
def advance(pts, closed, ndim, omega_fiber, p, q, c_parab, c_react,
            tol_ext, tol_geo, cap, redist_every, max_steps, max_time,
            t0, streak0, rec, row0):
    """Run the flow until an event fires; records one row per step.

    Row layout: t, vol, max|A|^2, ||A||_p, ||Aring||_q, ||H||_p,
    integral of H^2, max|Aring|^2, diameter proxy.  Returns
    (rows_written_through, t, event_code, stationary_streak).
    """
    N = pts.shape[0]
    kappa = np.empty(N)
    lam = np.empty(N)
    hme = np.empty(N)
    a2 = np.empty(N)
    ar2 = np.empty(N)
    wts = np.empty(N)
    nu = np.empty((N, 3))
    t = t0
    streak = streak0
    row = row0
    steps = 0
    code = EV_NONE
    while True:
        ok, hmin, diam = geom_fields(pts, closed, ndim, omega_fiber,
                                     kappa, lam, hme, a2, ar2, nu, wts)
        if not ok:
            code = EV_MESH_FAIL
            break
        vol = 0.0
        sa = 0.0
        sar = 0.0
        sh = 0.0
        sh2 = 0.0
        m2 = 0.0
        mar = 0.0
        for i in range(N):
            w = wts[i]
            vol += w
            sa += a2[i] ** (0.5 * p) * w
            sar += ar2[i] ** (0.5 * q) * w
            hv = hme[i] * hme[i]
            sh += hv ** (0.5 * p) * w
            sh2 += hv * w
            if a2[i] > m2:
                m2 = a2[i]
            if ar2[i] > mar:
                mar = ar2[i]
        rec[row, 0] = t
        rec[row, 1] = vol
        rec[row, 2] = m2
        rec[row, 3] = sa ** (1.0 / p)
        rec[row, 4] = sar ** (1.0 / q)
        rec[row, 5] = sh ** (1.0 / p)
        rec[row, 6] = sh2
        rec[row, 7] = mar
        rec[row, 8] = diam
        row += 1

        if diam < tol_ext:
            code = EV_EXTINCT
            break
        if m2 < tol_geo:
            streak += 1
            if streak >= 100:
                code = EV_STATIONARY
                break
        else:
            streak = 0
        if m2 > cap:
            code = EV_CAP
            break
        if t >= max_time:
            code = EV_TIME_LIMIT
            break
        if steps >= max_steps:
            code = EV_STEP_LIMIT
            break

        dt = c_parab * hmin * hmin
        dt_react = c_react / (m2 + ndim)
        if dt_react < dt:
            dt = dt_react
        if not euler_step(pts, hme, nu, dt, closed):
            code = EV_NONFINITE
            break
        t += dt
        steps += 1
        if redist_every > 0 and steps % redist_every == 0:
            resample_curve(pts, closed)
    return row, t, code, streak

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the geometric kernels in ``capgeo._kernels_py``.

Same piece layout and semantics; see that module for the column meaning.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport atan2, cos, sin, sqrt, fabs, floor, ceil, fmod, hypot, M_PI

cnp.import_array()

cdef double TWO_PI = 2.0 * M_PI


cdef inline double pmod(double a, double m) nogil:
    cdef double r = fmod(a, m)
    if r < 0.0:
        r += m
    return r


cdef inline double arc_param(const double[:, ::1] p, Py_ssize_t k, double x, double y) nogil:
    cdef double sweep = p[k, 9]
    cdef double a = atan2(y - p[k, 6], x - p[k, 5]) - p[k, 8]
    cdef double u, period
    if sweep >= 0.0:
        a = pmod(a, TWO_PI)
    else:
        a = -pmod(-a, TWO_PI)
    u = a / sweep
    if u > 1.0:
        period = TWO_PI / fabs(sweep)
        if period - u < u - 1.0:
            u -= period
    return u


cdef inline double param_of(const double[:, ::1] p, Py_ssize_t k, double x, double y) nogil:
    cdef double dx, dy, ll
    if p[k, 0] == 0.0:
        dx = p[k, 3] - p[k, 1]
        dy = p[k, 4] - p[k, 2]
        ll = dx * dx + dy * dy
        if ll == 0.0:
            return 0.0
        return ((x - p[k, 1]) * dx + (y - p[k, 2]) * dy) / ll
    return arc_param(p, k, x, y)


cdef inline double piece_length(const double[:, ::1] p, Py_ssize_t k) nogil:
    if p[k, 0] == 0.0:
        return hypot(p[k, 3] - p[k, 1], p[k, 4] - p[k, 2])
    return p[k, 7] * fabs(p[k, 9])


cdef inline void point_at(const double[:, ::1] p, Py_ssize_t k, double t,
                          double* ox, double* oy) nogil:
    cdef double a
    if p[k, 0] == 0.0:
        ox[0] = p[k, 1] + t * (p[k, 3] - p[k, 1])
        oy[0] = p[k, 2] + t * (p[k, 4] - p[k, 2])
    else:
        a = p[k, 8] + t * p[k, 9]
        ox[0] = p[k, 5] + p[k, 7] * cos(a)
        oy[0] = p[k, 6] + p[k, 7] * sin(a)


cdef inline double nearest_point(const double[:, ::1] p, Py_ssize_t k, double x, double y,
                                 double* nx, double* ny) nogil:
    cdef double dx, dy, ll, t, ox, oy, rho, u, d0, d1
    if p[k, 0] == 0.0:
        dx = p[k, 3] - p[k, 1]
        dy = p[k, 4] - p[k, 2]
        ll = dx * dx + dy * dy
        t = 0.0
        if ll > 0.0:
            t = ((x - p[k, 1]) * dx + (y - p[k, 2]) * dy) / ll
        if t < 0.0:
            t = 0.0
        elif t > 1.0:
            t = 1.0
        nx[0] = p[k, 1] + t * dx
        ny[0] = p[k, 2] + t * dy
        return hypot(x - nx[0], y - ny[0])
    ox = x - p[k, 5]
    oy = y - p[k, 6]
    rho = hypot(ox, oy)
    if rho == 0.0:
        nx[0] = p[k, 1]
        ny[0] = p[k, 2]
        return p[k, 7]
    u = arc_param(p, k, x, y)
    if 0.0 <= u <= 1.0:
        nx[0] = p[k, 5] + p[k, 7] * ox / rho
        ny[0] = p[k, 6] + p[k, 7] * oy / rho
        return fabs(rho - p[k, 7])
    d0 = hypot(x - p[k, 1], y - p[k, 2])
    d1 = hypot(x - p[k, 3], y - p[k, 4])
    if d0 <= d1:
        nx[0] = p[k, 1]
        ny[0] = p[k, 2]
        return d0
    nx[0] = p[k, 3]
    ny[0] = p[k, 4]
    return d1


def nearest(points, pieces):
    cdef const double[:, ::1] P = np.ascontiguousarray(points, dtype=np.float64).reshape(-1, 2)
    cdef const double[:, ::1] S = np.ascontiguousarray(pieces, dtype=np.float64).reshape(-1, 10)
    cdef Py_ssize_t m = P.shape[0], n = S.shape[0], i, k
    dist = np.empty((m, n))
    nxa = np.empty((m, n))
    nya = np.empty((m, n))
    cdef double[:, ::1] D = dist
    cdef double[:, ::1] NX = nxa
    cdef double[:, ::1] NY = nya
    cdef double qx, qy
    with nogil:
        for i in range(m):
            for k in range(n):
                D[i, k] = nearest_point(S, k, P[i, 0], P[i, 1], &qx, &qy)
                NX[i, k] = qx
                NY[i, k] = qy
    return dist, nxa, nya


def min_distance(points, pieces):
    cdef const double[:, ::1] P = np.ascontiguousarray(points, dtype=np.float64).reshape(-1, 2)
    cdef const double[:, ::1] S = np.ascontiguousarray(pieces, dtype=np.float64).reshape(-1, 10)
    cdef Py_ssize_t m = P.shape[0], n = S.shape[0], i, k, best_k
    dist = np.full(m, np.inf)
    idx = np.full(m, -1, dtype=np.int64)
    cdef double[::1] D = dist
    cdef long long[::1] I = idx
    cdef double qx, qy, d, best
    with nogil:
        for i in range(m):
            best = 1e300
            best_k = -1
            for k in range(n):
                d = nearest_point(S, k, P[i, 0], P[i, 1], &qx, &qy)
                if d < best:
                    best = d
                    best_k = k
            if best_k >= 0:
                D[i] = best
                I[i] = best_k
    return dist, idx


def winding(points, pieces):
    from capgeo._kernels_py import monotone_pieces
    cdef const double[:, ::1] P = np.ascontiguousarray(points, dtype=np.float64).reshape(-1, 2)
    mono_arr = np.ascontiguousarray(
        monotone_pieces(np.asarray(pieces, dtype=np.float64).reshape(-1, 10)))
    cdef const double[:, ::1] M = mono_arr
    cdef Py_ssize_t m = P.shape[0], n = M.shape[0], i, k
    w = np.zeros(m, dtype=np.int64)
    cdef long long[::1] W = w
    cdef double px, py, xa, ya, xb, yb, xi, h
    cdef long long acc
    cdef bint up, down
    with nogil:
        for i in range(m):
            px = P[i, 0]
            py = P[i, 1]
            acc = 0
            for k in range(n):
                xa = M[k, 0]
                ya = M[k, 1]
                xb = M[k, 2]
                yb = M[k, 3]
                up = (ya <= py) and (py < yb)
                down = (yb <= py) and (py < ya)
                if not (up or down):
                    continue
                if M[k, 7] == 0.0:
                    xi = xa + (py - ya) * (xb - xa) / (yb - ya)
                else:
                    h = M[k, 6] * M[k, 6] - (py - M[k, 5]) * (py - M[k, 5])
                    if h < 0.0:
                        h = 0.0
                    xi = M[k, 4] + M[k, 7] * sqrt(h)
                if xi > px:
                    if up:
                        acc += 1
                    else:
                        acc -= 1
            W[i] = acc
    return w


cdef int curve_points(const double[:, ::1] S, Py_ssize_t ia, Py_ssize_t ib, double eps,
                      double* xs, double* ys) nogil:
    cdef double x1, y1, dx1, dy1, x2, y2, dx2, dy2, den, l1, l2, t
    cdef double x0, y0, dx, dy, ll, ux, uy, cx, cy, rad, s, fx, fy, h, w
    cdef double c1x, c1y, r1, c2x, c2y, r2, d, ex, ey, along, mx, my, sgn
    cdef Py_ssize_t line, arc
    cdef bint la = S[ia, 0] == 0.0
    cdef bint lb = S[ib, 0] == 0.0
    if la and lb:
        x1 = S[ia, 1]
        y1 = S[ia, 2]
        dx1 = S[ia, 3] - x1
        dy1 = S[ia, 4] - y1
        x2 = S[ib, 1]
        y2 = S[ib, 2]
        dx2 = S[ib, 3] - x2
        dy2 = S[ib, 4] - y2
        den = dx1 * dy2 - dy1 * dx2
        l1 = hypot(dx1, dy1)
        l2 = hypot(dx2, dy2)
        if fabs(den) <= 1e-14 * l1 * l2:
            return 0
        t = ((x2 - x1) * dy2 - (y2 - y1) * dx2) / den
        xs[0] = x1 + t * dx1
        ys[0] = y1 + t * dy1
        return 1
    if la or lb:
        if la:
            line = ia
            arc = ib
        else:
            line = ib
            arc = ia
        x0 = S[line, 1]
        y0 = S[line, 2]
        dx = S[line, 3] - x0
        dy = S[line, 4] - y0
        ll = hypot(dx, dy)
        if ll == 0.0:
            return 0
        ux = dx / ll
        uy = dy / ll
        cx = S[arc, 5]
        cy = S[arc, 6]
        rad = S[arc, 7]
        s = (cx - x0) * ux + (cy - y0) * uy
        fx = x0 + s * ux
        fy = y0 + s * uy
        h = hypot(cx - fx, cy - fy)
        if h > rad + eps:
            return 0
        if h >= rad - eps:
            if h > 0.0:
                xs[0] = cx + (fx - cx) * rad / h
                ys[0] = cy + (fy - cy) * rad / h
                return 1
            return 0
        w = sqrt(rad * rad - h * h)
        xs[0] = fx - w * ux
        ys[0] = fy - w * uy
        xs[1] = fx + w * ux
        ys[1] = fy + w * uy
        return 2
    c1x = S[ia, 5]
    c1y = S[ia, 6]
    r1 = S[ia, 7]
    c2x = S[ib, 5]
    c2y = S[ib, 6]
    r2 = S[ib, 7]
    dx = c2x - c1x
    dy = c2y - c1y
    d = hypot(dx, dy)
    if d <= eps:
        return 0
    if d > r1 + r2 + eps or d < fabs(r1 - r2) - eps:
        return 0
    ex = dx / d
    ey = dy / d
    if d >= r1 + r2 - eps:
        t = r1 + 0.5 * (d - r1 - r2)
        xs[0] = c1x + t * ex
        ys[0] = c1y + t * ey
        return 1
    if d <= fabs(r1 - r2) + eps:
        sgn = 1.0 if r1 >= r2 else -1.0
        t = sgn * r1
        xs[0] = c1x + t * ex
        ys[0] = c1y + t * ey
        return 1
    along = (d * d + r1 * r1 - r2 * r2) / (2.0 * d)
    h = r1 * r1 - along * along
    if h < 0.0:
        h = 0.0
    h = sqrt(h)
    mx = c1x + along * ex
    my = c1y + along * ey
    xs[0] = mx - h * ey
    ys[0] = my + h * ex
    xs[1] = mx + h * ey
    ys[1] = my - h * ex
    return 2


cdef inline bint accept(const double[:, ::1] S, Py_ssize_t k, double x, double y, double eps,
                        double* tout) nogil:
    cdef double t = param_of(S, k, x, y)
    cdef double length = piece_length(S, k)
    cdef double tol = 0.0
    cdef double qx, qy
    if length > 0.0:
        tol = eps / length
    if t < -tol or t > 1.0 + tol:
        return False
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    point_at(S, k, t, &qx, &qy)
    if hypot(qx - x, qy - y) > 4.0 * eps:
        return False
    tout[0] = t
    return True


def intersect(pieces, pairs, double eps):
    cdef const double[:, ::1] S = np.ascontiguousarray(pieces, dtype=np.float64).reshape(-1, 10)
    cdef const long long[:, ::1] PR = np.ascontiguousarray(pairs, dtype=np.int64).reshape(-1, 2)
    cdef Py_ssize_t npairs = PR.shape[0], q, i, j, c, kk
    cdef Py_ssize_t cap = 6 * npairs + 1, nh = 0
    ij_arr = np.empty((cap, 2), dtype=np.int64)
    tt_arr = np.empty((cap, 2), dtype=np.float64)
    cdef long long[:, ::1] IJ = ij_arr
    cdef double[:, ::1] TT = tt_arr
    cdef double xs[2]
    cdef double ys[2]
    cdef double ta, tb, x, y, qx, qy, d
    cdef int npts
    with nogil:
        for q in range(npairs):
            i = PR[q, 0]
            j = PR[q, 1]
            npts = curve_points(S, i, j, eps, xs, ys)
            for c in range(npts):
                if not accept(S, i, xs[c], ys[c], eps, &ta):
                    continue
                if not accept(S, j, xs[c], ys[c], eps, &tb):
                    continue
                IJ[nh, 0] = i
                IJ[nh, 1] = j
                TT[nh, 0] = ta
                TT[nh, 1] = tb
                nh += 1
            for kk in range(2):
                x = S[i, 1 + 2 * kk]
                y = S[i, 2 + 2 * kk]
                d = nearest_point(S, j, x, y, &qx, &qy)
                if d <= eps:
                    tb = param_of(S, j, x, y)
                    if tb < 0.0:
                        tb = 0.0
                    elif tb > 1.0:
                        tb = 1.0
                    IJ[nh, 0] = i
                    IJ[nh, 1] = j
                    TT[nh, 0] = <double>kk
                    TT[nh, 1] = tb
                    nh += 1
                x = S[j, 1 + 2 * kk]
                y = S[j, 2 + 2 * kk]
                d = nearest_point(S, i, x, y, &qx, &qy)
                if d <= eps:
                    ta = param_of(S, i, x, y)
                    if ta < 0.0:
                        ta = 0.0
                    elif ta > 1.0:
                        ta = 1.0
                    IJ[nh, 0] = i
                    IJ[nh, 1] = j
                    TT[nh, 0] = ta
                    TT[nh, 1] = <double>kk
                    nh += 1
    return ij_arr[:nh].copy(), tt_arr[:nh].copy()

# cython: language_level=3
"""Compiled geometry kernels (Cython twin of ``_kernels_py``)."""

from libc.math cimport fabs

IMPLEMENTATION = "cython"


def quad_area(q):
    """Unsigned area of a quadrilateral given as a flat 8-sequence."""
    cdef double x0 = q[0], y0 = q[1], x1 = q[2], y1 = q[3]
    cdef double x2 = q[4], y2 = q[5], x3 = q[6], y3 = q[7]
    cdef double s = (x0 * y1 - x1 * y0) + (x1 * y2 - x2 * y1) \
        + (x2 * y3 - x3 * y2) + (x3 * y0 - x0 * y3)
    return 0.5 * fabs(s)


cdef double _signed_area2(double* xs, double* ys, int n) noexcept:
    cdef double s = 0.0
    cdef int i, j
    for i in range(n):
        j = i + 1
        if j == n:
            j = 0
        s += xs[i] * ys[j] - xs[j] * ys[i]
    return s


def quad_intersection_area(a, b):
    """Area of the intersection of two convex quads (flat 8-sequences)."""
    cdef double bx[4]
    cdef double by_[4]
    cdef double px[16]
    cdef double py[16]
    cdef double qx[16]
    cdef double qy[16]
    cdef int i, j, k, n, m
    cdef double area_b2, ex, ey, ax, ay, cx, cy, dp, dq, t, s
    cdef double p1x, p1y, p2x, p2y

    for i in range(4):
        bx[i] = b[2 * i]
        by_[i] = b[2 * i + 1]
    area_b2 = _signed_area2(bx, by_, 4)
    if area_b2 == 0.0:
        return 0.0
    if area_b2 < 0.0:
        # reorder clip polygon to CCW
        t = bx[1]; bx[1] = bx[3]; bx[3] = t
        t = by_[1]; by_[1] = by_[3]; by_[3] = t

    for i in range(4):
        px[i] = a[2 * i]
        py[i] = a[2 * i + 1]
    n = 4

    for i in range(4):
        if n == 0:
            return 0.0
        ax = bx[i]
        ay = by_[i]
        j = i + 1
        if j == 4:
            j = 0
        ex = bx[j] - ax
        ey = by_[j] - ay
        if ex == 0.0 and ey == 0.0:
            continue
        m = 0
        for k in range(n):
            p1x = px[k]; p1y = py[k]
            j = k + 1
            if j == n:
                j = 0
            p2x = px[j]; p2y = py[j]
            dp = ex * (p1y - ay) - ey * (p1x - ax)
            dq = ex * (p2y - ay) - ey * (p2x - ax)
            if dp >= 0.0:
                qx[m] = p1x; qy[m] = p1y; m += 1
            if (dp > 0.0 and dq < 0.0) or (dp < 0.0 and dq > 0.0):
                t = dp / (dp - dq)
                qx[m] = p1x + t * (p2x - p1x)
                qy[m] = p1y + t * (p2y - p1y)
                m += 1
        n = m
        for k in range(n):
            px[k] = qx[k]
            py[k] = qy[k]

    if n < 3:
        return 0.0
    s = _signed_area2(px, py, n)
    return 0.5 * fabs(s)

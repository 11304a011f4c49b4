# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same contract as :mod:`gersh._purepy`."""
from libc.math cimport sqrt

import numpy as np


cdef void _pull(const double[::1] px, const double[::1] py, double x, double y,
                double anchor_eps, double* out, int* eta) noexcept nogil:
    # out: gx, gy, wsum, sx, sy, hxx, hxy, hyy
    cdef Py_ssize_t k, m = px.shape[0]
    cdef double dx, dy, d, w, w3
    for k in range(8):
        out[k] = 0.0
    eta[0] = 0
    for k in range(m):
        dx = px[k] - x
        dy = py[k] - y
        d = sqrt(dx * dx + dy * dy)
        if d <= anchor_eps:
            eta[0] += 1
            continue
        w = 1.0 / d
        out[0] += dx * w
        out[1] += dy * w
        out[2] += w
        out[3] += px[k] * w
        out[4] += py[k] * w
        w3 = w * w * w
        out[5] += dy * dy * w3
        out[7] += dx * dx * w3
        out[6] -= dx * dy * w3


cdef double _objective(const double[::1] px, const double[::1] py, double x, double y) noexcept nogil:
    cdef Py_ssize_t k
    cdef double dx, dy, f = 0.0
    for k in range(px.shape[0]):
        dx = px[k] - x
        dy = py[k] - y
        f += sqrt(dx * dx + dy * dy)
    return f


def weiszfeld_iterate(const double[::1] px, const double[::1] py, double x, double y,
                      double tol, int max_iter, double anchor_eps):
    cdef double acc[8]
    cdef int eta
    cdef int it = 0
    cdef double r, residual, tx, ty, nx, ny, beta, det, f, fn
    f = _objective(px, py, x, y)
    while True:
        _pull(px, py, x, y, anchor_eps, acc, &eta)
        r = sqrt(acc[0] * acc[0] + acc[1] * acc[1])
        residual = r - eta if r > eta else 0.0
        if residual <= tol or acc[2] == 0.0:
            return x, y, it, residual, True
        if it >= max_iter:
            return x, y, it, residual, False
        it += 1
        if not eta:
            det = acc[5] * acc[7] - acc[6] * acc[6]
            if det > 0.0:
                nx = x + (acc[7] * acc[0] - acc[6] * acc[1]) / det
                ny = y + (acc[5] * acc[1] - acc[6] * acc[0]) / det
                fn = _objective(px, py, nx, ny)
                if fn < f:
                    x = nx
                    y = ny
                    f = fn
                    continue
        tx = acc[3] / acc[2]
        ty = acc[4] / acc[2]
        if eta:
            beta = eta / r
            nx = (1.0 - beta) * tx + beta * x
            ny = (1.0 - beta) * ty + beta * y
        else:
            nx = tx
            ny = ty
        if nx == x and ny == y:
            return x, y, it, residual, False
        x = nx
        y = ny
        f = _objective(px, py, x, y)


def shifted_margins(const double[:, ::1] a_re, const double[:, ::1] a_im,
                    double lam_re, double lam_im,
                    const double[::1] c_re, const double[::1] c_im,
                    const double[::1] e_re, const double[::1] e_im):
    cdef Py_ssize_t n = a_re.shape[0]
    cdef Py_ssize_t i, j
    cdef double dr, di, off, diag
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    for i in range(n):
        off = 0.0
        diag = 0.0
        for j in range(n):
            dr = a_re[i, j] - c_re[i] - e_re[j]
            di = a_im[i, j] - c_im[i] - e_im[j]
            if i == j:
                dr = dr - lam_re
                di = di - lam_im
                diag = sqrt(dr * dr + di * di)
            else:
                off += sqrt(dr * dr + di * di)
        o[i] = diag - off
    return out

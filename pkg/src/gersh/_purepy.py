"""Pure-Python kernels, used when the compiled ``_speedups`` module is unavailable.

Both backends expose the same two functions with identical semantics; the
test suite runs every kernel test against each backend that is importable.
"""
from math import sqrt

import numpy as np


def _pull(px, py, x, y, anchor_eps):
    gx = gy = wsum = sx = sy = hxx = hxy = hyy = 0.0
    eta = 0
    for k in range(len(px)):
        dx = px[k] - x
        dy = py[k] - y
        d = sqrt(dx * dx + dy * dy)
        if d <= anchor_eps:
            eta += 1
            continue
        w = 1.0 / d
        gx += dx * w
        gy += dy * w
        wsum += w
        sx += px[k] * w
        sy += py[k] * w
        w3 = w * w * w
        hxx += dy * dy * w3
        hyy += dx * dx * w3
        hxy -= dx * dy * w3
    return gx, gy, wsum, sx, sy, hxx, hxy, hyy, eta


def _objective(px, py, x, y):
    f = 0.0
    for k in range(len(px)):
        dx = px[k] - x
        dy = py[k] - y
        f += sqrt(dx * dx + dy * dy)
    return f


def weiszfeld_iterate(px, py, x, y, tol, max_iter, anchor_eps):
    """Safeguarded Newton / Vardi-Zhang Weiszfeld iteration from ``(x, y)``.

    Away from input points a Newton step is taken when it lowers the
    objective; otherwise (and at input points) the Vardi-Zhang step is used,
    which always descends. Returns ``(x, y, iterations, residual, converged)``.
    The residual is the distance of zero from the subdifferential at the
    returned point: ``max(0, |R| - eta)`` where ``R`` sums the unit vectors
    towards points farther than ``anchor_eps`` and ``eta`` counts the rest.
    """
    px = [float(v) for v in px]
    py = [float(v) for v in py]
    it = 0
    f = _objective(px, py, x, y)
    while True:
        gx, gy, wsum, sx, sy, hxx, hxy, hyy, eta = _pull(px, py, x, y, anchor_eps)
        r = sqrt(gx * gx + gy * gy)
        residual = r - eta if r > eta else 0.0
        if residual <= tol or wsum == 0.0:
            return x, y, it, residual, True
        if it >= max_iter:
            return x, y, it, residual, False
        it += 1
        if not eta:
            det = hxx * hyy - hxy * hxy
            if det > 0.0:
                nx = x + (hyy * gx - hxy * gy) / det
                ny = y + (hxx * gy - hxy * gx) / det
                fn = _objective(px, py, nx, ny)
                if fn < f:
                    x, y, f = nx, ny, fn
                    continue
        tx = sx / wsum
        ty = sy / wsum
        if eta:
            beta = eta / r
            nx = (1.0 - beta) * tx + beta * x
            ny = (1.0 - beta) * ty + beta * y
        else:
            nx, ny = tx, ty
        if nx == x and ny == y:
            # fixed point in floating point; no further progress possible
            return x, y, it, residual, False
        x, y = nx, ny
        f = _objective(px, py, x, y)


def shifted_margins(a_re, a_im, lam_re, lam_im, c_re, c_im, e_re, e_im):
    """Row margins ``|d_ii| - sum_{j != i} |d_ij|`` of ``d = a - lam*I - c 1^T - 1 e^T``."""
    n = len(a_re)
    out = np.empty(n, dtype=np.float64)
    for i in range(n):
        off = 0.0
        diag = 0.0
        ar = a_re[i]
        ai = a_im[i]
        for j in range(n):
            dr = float(ar[j]) - float(c_re[i]) - float(e_re[j])
            di = float(ai[j]) - float(c_im[i]) - float(e_im[j])
            if i == j:
                dr -= lam_re
                di -= lam_im
                diag = sqrt(dr * dr + di * di)
            else:
                off += sqrt(dr * dr + di * di)
        out[i] = diag - off
    return out

# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled twin of casimir._kernels.pure.

Same contract and the same u = (eps - 1) xi^2 algebra; see pure.py for the
derivation.  Kept in lockstep with the numpy fallback (the test suite
cross-checks the two backends on random grids).
"""

from libc.math cimport exp, log1p, sqrt

import numpy as np

# C-level constants (usable inside nogil blocks) with Python-level mirrors.
cdef enum:
    _MODEL_IDEAL = 0
    _MODEL_PLASMA = 1
    _MODEL_DRUDE = 2
    _ZF_PLASMA_PERP = 0
    _ZF_DRUDE_DIAG = 1
    _ZF_DRUDE_DIAG_DGAMMA = 2

MODEL_IDEAL = _MODEL_IDEAL
MODEL_PLASMA = _MODEL_PLASMA
MODEL_DRUDE = _MODEL_DRUDE

ZF_PLASMA_PERP = _ZF_PLASMA_PERP
ZF_DRUDE_DIAG = _ZF_DRUDE_DIAG
ZF_DRUDE_DIAG_DGAMMA = _ZF_DRUDE_DIAG_DGAMMA


cdef inline void _u_terms(double xi, double wp, double gt, int model,
                          double *u, double *u_xi, double *u_g) noexcept nogil:
    cdef double denom
    if model == _MODEL_PLASMA:
        u[0] = wp * wp
        u_xi[0] = 0.0
        u_g[0] = 0.0
    else:
        if xi == 0.0:
            if gt > 0.0:
                u[0] = 0.0
                u_xi[0] = wp * wp / gt
            else:
                u[0] = wp * wp
                u_xi[0] = 0.0
            u_g[0] = 0.0
        else:
            denom = xi + gt
            u[0] = wp * wp * xi / denom
            u_xi[0] = wp * wp * gt / (denom * denom)
            u_g[0] = -wp * wp * xi / (denom * denom)


cdef inline void _amplitudes(double xi, double y, double u,
                             double *r_par, double *r_perp) noexcept nogil:
    cdef double s, xi2, P, D
    if u == 0.0:
        r_par[0] = 1.0
        r_perp[0] = 0.0
        return
    s = sqrt(u + y * y)
    xi2 = xi * xi
    P = xi2 + u
    D = y * P + xi2 * s
    r_par[0] = u * (y * y * (2.0 * xi2 + u) - xi2 * xi2) / (D * D)
    r_perp[0] = -u / ((y + s) * (y + s))


def _check_model(int model):
    if model not in (_MODEL_IDEAL, _MODEL_PLASMA, _MODEL_DRUDE):
        raise ValueError(f"unknown model code {model}")


def reflection(double xi, y, double wp, double gt, int model):
    """Reflection amplitudes (r_par, r_perp) on a y grid; r_par >= 0 >= r_perp."""
    _check_model(model)
    cdef double[::1] yv = np.ascontiguousarray(y, dtype=np.float64)
    cdef Py_ssize_t n = yv.shape[0], i
    r_par_arr = np.empty(n)
    r_perp_arr = np.empty(n)
    cdef double[::1] rp = r_par_arr, rt = r_perp_arr
    cdef double u = 0.0, u_xi = 0.0, u_g = 0.0
    if model == _MODEL_IDEAL:
        for i in range(n):
            rp[i] = 1.0
            rt[i] = -1.0
        return r_par_arr, r_perp_arr
    _u_terms(xi, wp, gt, model, &u, &u_xi, &u_g)
    with nogil:
        for i in range(n):
            _amplitudes(xi, yv[i], u, &rp[i], &rt[i])
    return r_par_arr, r_perp_arr


def reflection_derivatives(double xi, y, double wp, double gt, int model):
    """(dr_par/dxi, dr_perp/dxi, dr_par/dgamma, dr_perp/dgamma) on a y grid."""
    _check_model(model)
    cdef double[::1] yv = np.ascontiguousarray(y, dtype=np.float64)
    cdef Py_ssize_t n = yv.shape[0], i
    out_px = np.zeros(n)
    out_tx = np.zeros(n)
    out_pg = np.zeros(n)
    out_tg = np.zeros(n)
    if model == _MODEL_IDEAL:
        return out_px, out_tx, out_pg, out_tg
    if xi <= 0.0:
        raise ValueError("reflection derivatives need xi > 0")
    cdef double[::1] px = out_px, tx = out_tx, pg = out_pg, tg = out_tg
    cdef double u = 0.0, u_xi = 0.0, u_g = 0.0
    cdef double s, xi2, P, D, D2, w, common, yy
    _u_terms(xi, wp, gt, model, &u, &u_xi, &u_g)
    xi2 = xi * xi
    P = xi2 + u
    with nogil:
        for i in range(n):
            yy = yv[i]
            s = sqrt(u + yy * yy)
            D = yy * P + xi2 * s
            D2 = D * D
            w = u + 2.0 * yy * yy - xi2
            px[i] = 2.0 * yy * (-2.0 * xi * s * u + xi2 * u_xi * w / (2.0 * s)) / D2
            pg[i] = yy * xi2 * u_g * w / (s * D2)
            common = yy / (s * (yy + s) * (yy + s))
            tx[i] = -u_xi * common
            tg[i] = -u_g * common
    return out_px, out_tx, out_pg, out_tg


def free_energy_integrand(double xi, y, double wp, double gt, int model):
    """y (ln(1 - r_par^2 e^-y) + ln(1 - r_perp^2 e^-y)) on a y grid."""
    _check_model(model)
    cdef double[::1] yv = np.ascontiguousarray(y, dtype=np.float64)
    cdef Py_ssize_t n = yv.shape[0], i
    out = np.empty(n)
    cdef double[::1] ov = out
    cdef double u = 0.0, u_xi = 0.0, u_g = 0.0
    cdef double yy, ey, r_par, r_perp
    if model != _MODEL_IDEAL:
        _u_terms(xi, wp, gt, model, &u, &u_xi, &u_g)
    with nogil:
        for i in range(n):
            yy = yv[i]
            ey = exp(-yy)
            if model == _MODEL_IDEAL:
                ov[i] = 2.0 * yy * log1p(-ey)
            else:
                _amplitudes(xi, yy, u, &r_par, &r_perp)
                ov[i] = yy * (log1p(-r_par * r_par * ey) + log1p(-r_perp * r_perp * ey))
    return out


def boundary_log_delta(double xi, double wp, double gt, int model):
    """ln Delta_par + ln Delta_perp evaluated on the boundary y = xi."""
    _check_model(model)
    cdef double u = 0.0, u_xi = 0.0, u_g = 0.0
    cdef double ey = exp(-xi), r_par, r_perp
    if model == _MODEL_IDEAL:
        return 2.0 * log1p(-ey)
    _u_terms(xi, wp, gt, model, &u, &u_xi, &u_g)
    _amplitudes(xi, xi, u, &r_par, &r_perp)
    return log1p(-r_par * r_par * ey) + log1p(-r_perp * r_perp * ey)


def energy_integrand(double xi, y, double wp, double gt, int model, double gdot):
    """y-integrand of the energy's spectral term; see the pure twin."""
    _check_model(model)
    cdef double[::1] yv = np.ascontiguousarray(y, dtype=np.float64)
    cdef Py_ssize_t n = yv.shape[0], i
    out = np.zeros(n)
    if model == _MODEL_IDEAL:
        return out
    if xi <= 0.0:
        raise ValueError("reflection derivatives need xi > 0")
    cdef double[::1] ov = out
    cdef double u = 0.0, u_xi = 0.0, u_g = 0.0
    cdef double xi2, P, s, D, D2, w, common, yy, ey
    cdef double r_par, r_perp, d_px, d_tx, d_pg, d_tg, par, perp
    _u_terms(xi, wp, gt, model, &u, &u_xi, &u_g)
    xi2 = xi * xi
    P = xi2 + u
    with nogil:
        for i in range(n):
            yy = yv[i]
            s = sqrt(u + yy * yy)
            D = yy * P + xi2 * s
            D2 = D * D
            w = u + 2.0 * yy * yy - xi2
            r_par = u * (yy * yy * (2.0 * xi2 + u) - xi2 * xi2) / D2
            r_perp = -u / ((yy + s) * (yy + s))
            d_px = 2.0 * yy * (-2.0 * xi * s * u + xi2 * u_xi * w / (2.0 * s)) / D2
            d_pg = yy * xi2 * u_g * w / (s * D2)
            common = yy / (s * (yy + s) * (yy + s))
            d_tx = -u_xi * common
            d_tg = -u_g * common
            ey = exp(-yy)
            par = r_par * ey / (1.0 - r_par * r_par * ey) * (xi * d_px + gdot * d_pg)
            perp = r_perp * ey / (1.0 - r_perp * r_perp * ey) * (xi * d_tx + gdot * d_tg)
            ov[i] = yy * (par + perp)
    return out


def zero_freq_integrand(y, double wp, double gt, int kind):
    """Perpendicular zero-frequency integrands on a y grid; see the pure twin."""
    if kind not in (_ZF_PLASMA_PERP, _ZF_DRUDE_DIAG, _ZF_DRUDE_DIAG_DGAMMA):
        raise ValueError(f"unknown zero-frequency integrand kind {kind}")
    cdef double[::1] yv = np.ascontiguousarray(y, dtype=np.float64)
    cdef Py_ssize_t n = yv.shape[0], i
    out = np.empty(n)
    cdef double[::1] ov = out
    cdef int ckind = kind
    cdef double yy, u, u_g, s, r, ey, dr_dg
    with nogil:
        for i in range(n):
            yy = yv[i]
            if ckind == _ZF_PLASMA_PERP:
                u = wp * wp
                u_g = 0.0
            else:
                u = wp * wp * yy / (yy + gt)
                u_g = -wp * wp * yy / ((yy + gt) * (yy + gt))
            s = sqrt(u + yy * yy)
            r = -u / ((yy + s) * (yy + s))
            ey = exp(-yy)
            if ckind == _ZF_DRUDE_DIAG_DGAMMA:
                dr_dg = -yy * u_g / (s * (yy + s) * (yy + s))
                ov[i] = yy * (-2.0 * r * dr_dg * ey / (1.0 - r * r * ey))
            else:
                ov[i] = yy * log1p(-r * r * ey)
    return out

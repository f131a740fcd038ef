"""Numpy reference implementation of the hot integrand kernels.

The reflection coefficients of Fresnel form

    r_par  = (y eps - s) / (y eps + s),   r_perp = (y - s) / (y + s),
    s = sqrt((eps - 1) xi^2 + y^2),

are evaluated through u = (eps - 1) xi^2, which removes the cancellation in
y - s (r_perp = -u / (y + s)^2 exactly) and stays finite for xi -> 0:

    ideal   u undefined (r_par = 1, r_perp = -1)
    plasma  u = wp^2                  (frequency independent)
    Drude   u = wp^2 xi / (xi + gamma)

With P = xi^2 + u and D = y P + xi^2 s,

    r_par          = u (y^2 (2 xi^2 + u) - xi^4) / D^2
    dr_par/dxi     = 2 y (-2 xi s u + xi^2 u_xi (u + 2 y^2 - xi^2) / (2 s)) / D^2
    dr_par/dgamma  = y xi^2 u_g (u + 2 y^2 - xi^2) / (s D^2)
    dr_perp/dxi    = -y u_xi / (s (y + s)^2)
    dr_perp/dgamma = -y u_g  / (s (y + s)^2)

where u_xi = wp^2 gamma / (xi + gamma)^2 and u_g = -wp^2 xi / (xi + gamma)^2
for the Drude model and both vanish for the plasma model.  Every function
takes a scalar xi and a y array with y >= xi >= 0 elementwise.
"""

from __future__ import annotations

import numpy as np

MODEL_IDEAL = 0
MODEL_PLASMA = 1
MODEL_DRUDE = 2

ZF_PLASMA_PERP = 0
ZF_DRUDE_DIAG = 1
ZF_DRUDE_DIAG_DGAMMA = 2


def _u_terms(xi: float, wp: float, gt: float, model: int):
    """(u, du/dxi, du/dgamma) for the given dielectric model."""
    if model == MODEL_PLASMA:
        return wp * wp, 0.0, 0.0
    if model == MODEL_DRUDE:
        if xi == 0.0:
            # limit values; r_par needs a separate branch there
            return 0.0 if gt > 0.0 else wp * wp, wp * wp / gt if gt > 0.0 else 0.0, 0.0
        denom = xi + gt
        return wp * wp * xi / denom, wp * wp * gt / (denom * denom), -wp * wp * xi / (denom * denom)
    raise ValueError(f"unknown model code {model}")


def reflection(xi: float, y, wp: float, gt: float, model: int):
    """Reflection amplitudes (r_par, r_perp) on a y grid; r_par >= 0 >= r_perp."""
    y = np.asarray(y, dtype=float)
    if model == MODEL_IDEAL:
        return np.ones_like(y), -np.ones_like(y)
    u, _, _ = _u_terms(xi, wp, gt, model)
    if u == 0.0:
        # Drude at xi = 0: eps xi^2 -> 0 but eps -> inf
        return np.ones_like(y), np.zeros_like(y)
    s = np.sqrt(u + y * y)
    xi2 = xi * xi
    P = xi2 + u
    D = y * P + xi2 * s
    r_par = u * (y * y * (2.0 * xi2 + u) - xi2 * xi2) / (D * D)
    r_perp = -u / (y + s) ** 2
    return r_par, r_perp


def reflection_derivatives(xi: float, y, wp: float, gt: float, model: int):
    """(dr_par/dxi, dr_perp/dxi, dr_par/dgamma, dr_perp/dgamma) on a y grid."""
    y = np.asarray(y, dtype=float)
    if model == MODEL_IDEAL:
        z = np.zeros_like(y)
        return z, z.copy(), z.copy(), z.copy()
    if xi <= 0.0:
        raise ValueError("reflection derivatives need xi > 0")
    u, u_xi, u_g = _u_terms(xi, wp, gt, model)
    s = np.sqrt(u + y * y)
    xi2 = xi * xi
    P = xi2 + u
    D = y * P + xi2 * s
    D2 = D * D
    w = u + 2.0 * y * y - xi2  # = 2 s^2 - P, positive on the domain y >= xi
    d_par_dxi = 2.0 * y * (-2.0 * xi * s * u + xi2 * u_xi * w / (2.0 * s)) / D2
    d_par_dg = y * xi2 * u_g * w / (s * D2)
    perp_common = y / (s * (y + s) ** 2)
    d_perp_dxi = -u_xi * perp_common
    d_perp_dg = -u_g * perp_common
    return d_par_dxi, d_perp_dxi, d_par_dg, d_perp_dg


def free_energy_integrand(xi: float, y, wp: float, gt: float, model: int):
    """y (ln(1 - r_par^2 e^-y) + ln(1 - r_perp^2 e^-y)) on a y grid."""
    y = np.asarray(y, dtype=float)
    r_par, r_perp = reflection(xi, y, wp, gt, model)
    ey = np.exp(-y)
    return y * (np.log1p(-r_par * r_par * ey) + np.log1p(-r_perp * r_perp * ey))


def boundary_log_delta(xi: float, wp: float, gt: float, model: int) -> float:
    """ln Delta_par + ln Delta_perp evaluated on the boundary y = xi."""
    y = np.asarray([xi], dtype=float)
    r_par, r_perp = reflection(xi, y, wp, gt, model)
    ey = np.exp(-xi)
    val = np.log1p(-r_par * r_par * ey) + np.log1p(-r_perp * r_perp * ey)
    return float(val[0])


def energy_integrand(xi: float, y, wp: float, gt: float, model: int, gdot: float):
    """y-integrand of the energy's spectral term on a y grid.

    For each polarization the factor is

        r e^-y / (1 - r^2 e^-y) * (xi dr/dxi + gdot dr/dgamma)

    with gdot = T dgamma_tilde/dT = nu(T) gamma_tilde; gdot = 0 reproduces
    the plasma-model form (and frozen-gamma Drude evaluations).
    """
    y = np.asarray(y, dtype=float)
    if model == MODEL_IDEAL:
        return np.zeros_like(y)
    r_par, r_perp = reflection(xi, y, wp, gt, model)
    d_par_dxi, d_perp_dxi, d_par_dg, d_perp_dg = reflection_derivatives(xi, y, wp, gt, model)
    ey = np.exp(-y)
    par = r_par * ey / (1.0 - r_par * r_par * ey) * (xi * d_par_dxi + gdot * d_par_dg)
    perp = r_perp * ey / (1.0 - r_perp * r_perp * ey) * (xi * d_perp_dxi + gdot * d_perp_dg)
    return y * (par + perp)


def zero_freq_integrand(y, wp: float, gt: float, kind: int):
    """Perpendicular-polarization zero-frequency integrands on a y grid.

    kind = ZF_PLASMA_PERP:        y ln(1 - r_perp_pl^2(y) e^-y), the l = 0
        perpendicular term of the plasma model (also prescription d).
    kind = ZF_DRUDE_DIAG:         same with the Drude permittivity taken on
        the diagonal xi = y (prescription b).
    kind = ZF_DRUDE_DIAG_DGAMMA:  d/dgamma of the DRUDE_DIAG integrand at
        fixed y, used for the temperature derivative of prescription b.
    """
    y = np.asarray(y, dtype=float)
    if kind == ZF_PLASMA_PERP:
        u = np.full_like(y, wp * wp)
        u_g = np.zeros_like(y)
    elif kind in (ZF_DRUDE_DIAG, ZF_DRUDE_DIAG_DGAMMA):
        u = wp * wp * y / (y + gt)
        u_g = -wp * wp * y / (y + gt) ** 2
    else:
        raise ValueError(f"unknown zero-frequency integrand kind {kind}")
    s = np.sqrt(u + y * y)
    r = -u / (y + s) ** 2
    ey = np.exp(-y)
    if kind == ZF_DRUDE_DIAG_DGAMMA:
        dr_dg = -y * u_g / (s * (y + s) ** 2)
        return y * (-2.0 * r * dr_dg * ey / (1.0 - r * r * ey))
    return y * np.log1p(-r * r * ey)

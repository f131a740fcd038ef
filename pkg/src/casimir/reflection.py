"""Reflection coefficients at imaginary frequency and their derivatives.

Everything works in the dimensionless variables of :mod:`casimir.constants`;
y is the dimensionless integration variable with y >= xi_tilde on the
physical domain.  Squared amplitudes lie in [0, 1] and the per-polarization
factor Delta = 1 - r^2 e^{-y} lies in (0, 1].

The derivative formulas (with respect to xi_tilde and gamma_tilde) are
analytic; the test suite checks them against finite differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .constants import ThermalState
from .materials import Model

__all__ = [
    "PARALLEL",
    "PERPENDICULAR",
    "POLARIZATIONS",
    "SpectralPoint",
    "r_squared",
    "r_perp_plasma",
    "r_derivatives",
    "spectral_point",
    "delta",
]

PARALLEL = "parallel"
PERPENDICULAR = "perpendicular"
POLARIZATIONS = (PARALLEL, PERPENDICULAR)

_KERNEL_CODE = {
    Model.IDEAL: _kernels.MODEL_IDEAL,
    Model.PLASMA: _kernels.MODEL_PLASMA,
    Model.DRUDE: _kernels.MODEL_DRUDE,
}


@dataclass(frozen=True)
class SpectralPoint:
    """Reflection data at one (xi_tilde, y) node."""

    xi_tilde: float
    y: float
    r_par_sq: float
    r_perp_sq: float
    d_r_par_dxi: float
    d_r_perp_dxi: float
    d_r_par_dgamma: float
    d_r_perp_dgamma: float


def _check_pol(pol: str) -> None:
    if pol not in POLARIZATIONS:
        raise ValueError(f"polarization must be one of {POLARIZATIONS}, got {pol!r}")


def _check_domain(xi_tilde: float, y) -> None:
    if not xi_tilde > 0:
        raise ValueError("xi_tilde must be positive (the l = 0 term is owned by the prescriptions)")
    if np.any(np.asarray(y) < xi_tilde):
        raise ValueError("y must satisfy y >= xi_tilde")


def _model_code(model) -> int:
    return _KERNEL_CODE[Model(model)]


def r_squared(pol: str, xi_tilde: float, y, eps):
    """Squared reflection amplitude for one polarization from a given eps(i xi).

    Parameters
    ----------
    pol : "parallel" or "perpendicular"
    xi_tilde : float
        Dimensionless imaginary frequency, > 0.
    y : float or array
        Integration variable, y >= xi_tilde.
    eps : float or array
        Permittivity at i*xi_tilde, >= 1 (broadcast against y).

    Returns
    -------
    float or ndarray in [0, 1].
    """
    _check_pol(pol)
    _check_domain(xi_tilde, y)
    y_arr = np.asarray(y, dtype=float)
    eps_arr = np.asarray(eps, dtype=float)
    if np.any(eps_arr < 1.0):
        raise ValueError("eps must be >= 1 on the imaginary axis")
    u = (eps_arr - 1.0) * xi_tilde**2
    s = np.sqrt(u + y_arr**2)
    r_perp = -u / (y_arr + s) ** 2
    if pol == PERPENDICULAR:
        out = r_perp**2
    else:
        out = ((y_arr * eps_arr - s) / (y_arr * eps_arr + s)) ** 2
    return float(out) if np.isscalar(y) and np.isscalar(eps) else out


def r_perp_plasma(y, omega_p_tilde: float):
    """Squared perpendicular amplitude of the plasma model, frequency independent.

    r_perp^2 = ((y - sqrt(wp^2 + y^2)) / (y + sqrt(wp^2 + y^2)))^2; valid for
    every xi_tilde including the zero-frequency limit.
    """
    if not omega_p_tilde > 0:
        raise ValueError("omega_p_tilde must be positive")
    y_arr = np.asarray(y, dtype=float)
    if np.any(y_arr < 0):
        raise ValueError("y must be nonnegative")
    u = omega_p_tilde**2
    s = np.sqrt(u + y_arr**2)
    out = (u / (y_arr + s) ** 2) ** 2
    return float(out) if np.isscalar(y) else out


def r_derivatives(pol: str, xi_tilde: float, y, state: ThermalState, model):
    """(dr/dxi_tilde, dr/dgamma_tilde) of the signed amplitude for one polarization.

    Derivatives are of the amplitude r (r_par >= 0 >= r_perp), not of r^2.
    For the plasma model both perpendicular derivatives vanish identically.
    """
    _check_pol(pol)
    _check_domain(xi_tilde, y)
    code = _model_code(model)
    y_arr = np.atleast_1d(np.asarray(y, dtype=float))
    d_px, d_tx, d_pg, d_tg = _kernels.reflection_derivatives(
        xi_tilde, y_arr, state.omega_p_tilde, state.gamma_tilde, code
    )
    pair = (d_px, d_pg) if pol == PARALLEL else (d_tx, d_tg)
    if np.isscalar(y):
        return float(pair[0][0]), float(pair[1][0])
    return pair


def spectral_point(xi_tilde: float, y: float, state: ThermalState, model) -> SpectralPoint:
    """Evaluate everything the integrands need at one (xi_tilde, y) node."""
    _check_domain(xi_tilde, y)
    code = _model_code(model)
    y_arr = np.asarray([y], dtype=float)
    r_par, r_perp = _kernels.reflection(xi_tilde, y_arr, state.omega_p_tilde, state.gamma_tilde, code)
    d_px, d_tx, d_pg, d_tg = _kernels.reflection_derivatives(
        xi_tilde, y_arr, state.omega_p_tilde, state.gamma_tilde, code
    )
    return SpectralPoint(
        xi_tilde=xi_tilde,
        y=y,
        r_par_sq=float(r_par[0] ** 2),
        r_perp_sq=float(r_perp[0] ** 2),
        d_r_par_dxi=float(d_px[0]),
        d_r_perp_dxi=float(d_tx[0]),
        d_r_par_dgamma=float(d_pg[0]),
        d_r_perp_dgamma=float(d_tg[0]),
    )


def delta(pol: str, point: SpectralPoint) -> float:
    """Delta = 1 - r^2 e^{-y} for one polarization at a spectral point."""
    _check_pol(pol)
    r_sq = point.r_par_sq if pol == PARALLEL else point.r_perp_sq
    return 1.0 - r_sq * math.exp(-point.y)

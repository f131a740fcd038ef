"""Physical constants and the dimensionless thermal state of a plate pair.

All spectral quantities are handled in the dimensionless variables natural to
a gap of width ``a``: frequencies are scaled by c/(2a), so a Matsubara
frequency xi_l = 2 pi l kB T / hbar becomes xi_tilde_l = 2 a xi_l / c and the
effective temperature kB T_eff = hbar c / (2 a) marks where thermal effects
turn on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "PhysicalConstants",
    "CODATA",
    "ThermalState",
    "ev_to_rad_s",
    "effective_temperature",
    "to_dimensionless",
    "matsubara_xi",
]


@dataclass(frozen=True)
class PhysicalConstants:
    """SI constants used throughout; defaults are the exact CODATA values."""

    hbar: float = 1.054_571_817e-34  # J s
    c: float = 299_792_458.0         # m / s
    k_B: float = 1.380_649e-23       # J / K
    e: float = 1.602_176_634e-19     # C


CODATA = PhysicalConstants()


def ev_to_rad_s(value_ev: float, constants: PhysicalConstants = CODATA) -> float:
    """Convert a photon energy in eV to an angular frequency in rad/s.

    The factor e/hbar is derived from the stored constants rather than
    hard-coded (1 eV corresponds to about 1.519e15 rad/s).
    """
    if value_ev < 0:
        raise ValueError("photon energy must be nonnegative")
    return value_ev * constants.e / constants.hbar


def effective_temperature(a: float, constants: PhysicalConstants = CODATA) -> float:
    """Effective temperature T_eff = hbar c / (2 a kB) of a gap of width a [m]."""
    if a <= 0:
        raise ValueError("separation must be positive")
    return constants.hbar * constants.c / (2.0 * a * constants.k_B)


@dataclass(frozen=True)
class ThermalState:
    """Dimensionless description of one (separation, temperature) point.

    Attributes
    ----------
    a : float
        Plate separation in m.
    T : float
        Temperature in K (T = 0 is allowed; Matsubara sums then have no
        meaning and only the T = 0 integral representation applies).
    omega_p_tilde : float
        2 a omega_p / c; math.inf encodes an ideal metal.
    gamma_tilde : float
        2 a gamma(T) / c; zero for the plasma model.
    T_eff : float
        hbar c / (2 a kB) in K.
    t : float
        T_eff / T (math.inf at T = 0).
    """

    a: float
    T: float
    omega_p_tilde: float
    gamma_tilde: float
    T_eff: float
    t: float

    def __post_init__(self) -> None:
        if self.a <= 0:
            raise ValueError("separation must be positive")
        if self.T < 0:
            raise ValueError("temperature must be nonnegative")
        if not self.omega_p_tilde > 0:
            raise ValueError("omega_p_tilde must be positive")
        if self.gamma_tilde < 0:
            raise ValueError("gamma_tilde must be nonnegative")


def to_dimensionless(
    a: float,
    T: float,
    material=None,
    law=None,
    constants: PhysicalConstants = CODATA,
) -> ThermalState:
    """Build the ThermalState for plates of ``material`` at separation/temperature.

    Parameters
    ----------
    a : float
        Separation in m.
    T : float
        Temperature in K.
    material : Material or None
        None describes an ideal metal (omega_p_tilde = inf, gamma_tilde = 0).
    law : RelaxationLaw or None
        Temperature law used for gamma(T); defaults to the material's own
        (table if present, otherwise linear above T_D/4).

    Returns
    -------
    ThermalState
    """
    T_eff = effective_temperature(a, constants)
    scale = 2.0 * a / constants.c
    if material is None:
        wp_t, g_t = math.inf, 0.0
    else:
        wp_t = scale * material.omega_p
        g_t = scale * material.gamma(T, law)
    t = T_eff / T if T > 0 else math.inf
    return ThermalState(a=a, T=T, omega_p_tilde=wp_t, gamma_tilde=g_t, T_eff=T_eff, t=t)


def matsubara_xi(state: ThermalState, l: int) -> float:
    """Dimensionless Matsubara frequency xi_tilde_l = 2 pi l T / T_eff.

    Requires T > 0 and l >= 0; l = 0 returns 0.0 (the zero-frequency term is
    owned by the prescriptions, not by the dielectric functions).
    """
    if state.T <= 0:
        raise ValueError("Matsubara frequencies are defined only for T > 0")
    if l < 0:
        raise ValueError("Matsubara index must be nonnegative")
    return 2.0 * math.pi * l * state.T / state.T_eff

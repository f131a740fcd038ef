"""Free energy and internal energy of the fluctuating field between plates.

The free energy per unit area is assembled as

    F(a, T) = kB T / (16 pi a^2) * ( f0 + 2 sum_{l>=1} I_l ),
    I_l = int_{xi_l}^inf dy y ( ln Delta_par + ln Delta_perp ),

with the dimensionless zero-frequency term f0 supplied by one of four
prescriptions for the l = 0 limit:

    a  direct Drude limit: the perpendicular mode drops out and the parallel
       one reflects perfectly, f0 = -zeta(3)
    b  like a, plus a perpendicular term built from the Drude permittivity
       continued onto the diagonal xi = y (temperature dependent through
       gamma(T))
    c  ideal-metal zero-frequency term, f0 = -2 zeta(3)
    d  plasma model, whose l = 0 limit needs no prescription at all:
       f0 = -zeta(3) + int dy y ln(1 - r_perp_pl^2(y) e^-y)

The internal energy E = -T^2 d(F/T)/dT is evaluated analytically: the
T-derivative acts on xi_l (proportional to T), on gamma(T) where a relaxation
law is active, and on f0 for prescription b.  Differentiating under the
integral gives, per Matsubara term, a boundary piece at y = xi_l plus a
spectral integral over the amplitude derivatives; the finite-difference
cross-check of that bookkeeping is part of the acceptance tests.

At T = 0 the sum becomes an integral over continuous xi (energy_T0); with the
Drude model this is the hybrid reference quantity evaluated at whatever
gamma_tilde the supplied state carries (conventionally the room-temperature
value), since gamma(T -> 0) -> 0 would reduce it to the plasma form.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

from scipy.special import zeta

from . import _kernels
from .constants import CODATA, PhysicalConstants, ThermalState, matsubara_xi
from .materials import Material, Model, RelaxationLaw
from .quadrature import (
    DEFAULT_SPEC,
    ConvergenceError,
    ConvergenceReport,
    ConvergenceSpec,
    integrate_2d,
    integrate_y,
    matsubara_sum,
)

__all__ = [
    "Prescription",
    "SmallSeparationWarning",
    "ZeroFrequencyTerm",
    "SpectralValue",
    "ThermoResult",
    "zero_frequency_term",
    "free_energy",
    "energy_at_T_plasma",
    "energy_at_T_drude",
    "energy_frozen_gamma",
    "energy_T0",
    "reference_energy_T0",
    "evaluate_point",
]

ZETA3 = float(zeta(3))

SMALL_SEPARATION_M = 0.4e-6


class SmallSeparationWarning(UserWarning):
    """Drude-model results below ~0.4 um separation are outside the regime
    where the local impedance description of the metal is trustworthy."""


class Prescription(enum.Enum):
    """Treatment of the zero-frequency (l = 0) term."""

    DRUDE_DIRECT = "a"
    MODIFIED_ZERO_FREQ = "b"
    IDEAL_ZERO_FREQ = "c"
    PLASMA = "d"

    @property
    def model(self) -> Model:
        return Model.PLASMA if self is Prescription.PLASMA else Model.DRUDE


@dataclass(frozen=True)
class ZeroFrequencyTerm:
    """Dimensionless f0 and its temperature derivative."""

    f0: float
    df0_dT: float
    evals: int


@dataclass(frozen=True)
class SpectralValue:
    """One assembled quantity (J/m^2) with its zero-frequency/thermal split."""

    total: float
    zero_frequency: float
    thermal: float
    report: ConvergenceReport


@dataclass(frozen=True)
class ThermoResult:
    """Free energy and energy at one (a, T) point."""

    free_energy: SpectralValue
    energy: SpectralValue

    def entropy_from_identity(self, T: float) -> float:
        """S = (E - F)/T; meaningful only at T > 0."""
        if T <= 0:
            raise ValueError("the identity S = (E - F)/T needs T > 0")
        return (self.energy.total - self.free_energy.total) / T


def _check_compat(state: ThermalState, model: Model, prescription: Prescription | None) -> None:
    if model is Model.IDEAL:
        if prescription is not None:
            raise ValueError("the ideal-metal model takes no zero-frequency prescription")
        return
    if prescription is None:
        raise ValueError(f"model {model.value!r} needs a zero-frequency prescription")
    if model is Model.PLASMA:
        if prescription is not Prescription.PLASMA:
            raise ValueError("the plasma model pairs only with prescription d")
        if state.gamma_tilde > 0:
            raise ValueError("plasma-model evaluation requires gamma_tilde = 0 in the state")
    elif model is Model.DRUDE:
        if prescription is Prescription.PLASMA:
            raise ValueError("prescription d pairs only with the plasma model")
    if not math.isfinite(state.omega_p_tilde):
        raise ValueError(f"model {model.value!r} needs a finite plasma frequency")


def _warn_small_separation(state: ThermalState, model: Model) -> None:
    if model is Model.DRUDE and state.a < SMALL_SEPARATION_M:
        warnings.warn(
            f"Drude-model evaluation at a = {state.a * 1e6:.3g} um (< 0.4 um); "
            "the impedance description of the metal is marginal here",
            SmallSeparationWarning,
            stacklevel=3,
        )


def zero_frequency_term(
    prescription: Prescription,
    state: ThermalState,
    material: Material | None = None,
    law: RelaxationLaw | None = None,
    spec: ConvergenceSpec = DEFAULT_SPEC,
) -> ZeroFrequencyTerm:
    """Dimensionless l = 0 term f0 and df0/dT for one prescription.

    Prescription b is the only one with temperature dependence (through
    gamma(T)); its derivative needs the material's relaxation law to supply
    nu = d ln gamma / d ln T.
    """
    wp, gt = state.omega_p_tilde, state.gamma_tilde
    if prescription is Prescription.DRUDE_DIRECT:
        return ZeroFrequencyTerm(-ZETA3, 0.0, 0)
    if prescription is Prescription.IDEAL_ZERO_FREQ:
        return ZeroFrequencyTerm(-2.0 * ZETA3, 0.0, 0)
    if prescription is Prescription.PLASMA:
        res = integrate_y(
            lambda y: _kernels.zero_freq_integrand(y, wp, 0.0, _kernels.ZF_PLASMA_PERP),
            0.0, spec,
        )
        return ZeroFrequencyTerm(-ZETA3 + res.value, 0.0, res.evals)
    if prescription is Prescription.MODIFIED_ZERO_FREQ:
        res = integrate_y(
            lambda y: _kernels.zero_freq_integrand(y, wp, gt, _kernels.ZF_DRUDE_DIAG),
            0.0, spec,
        )
        evals = res.evals
        df0_dT = 0.0
        if state.T > 0 and gt > 0:
            if material is None:
                raise ValueError("prescription b needs the material (relaxation law) for df0/dT")
            nu = material.nu(state.T, law)
            dres = integrate_y(
                lambda y: _kernels.zero_freq_integrand(y, wp, gt, _kernels.ZF_DRUDE_DIAG_DGAMMA),
                0.0, spec,
            )
            evals += dres.evals
            df0_dT = nu * gt / state.T * dres.value
        return ZeroFrequencyTerm(-ZETA3 + res.value, df0_dT, evals)
    raise ValueError(f"unknown prescription {prescription!r}")


def _kernel_model(model: Model) -> int:
    return {
        Model.IDEAL: _kernels.MODEL_IDEAL,
        Model.PLASMA: _kernels.MODEL_PLASMA,
        Model.DRUDE: _kernels.MODEL_DRUDE,
    }[model]


def free_energy(
    state: ThermalState,
    model: Model | str,
    prescription: Prescription | str | None,
    material: Material | None = None,
    law: RelaxationLaw | None = None,
    spec: ConvergenceSpec = DEFAULT_SPEC,
    constants: PhysicalConstants = CODATA,
) -> SpectralValue:
    """Free energy per unit area F(a, T) in J/m^2 at T > 0.

    Parameters
    ----------
    state : ThermalState
        Must carry the gamma_tilde consistent with the temperature (build it
        with to_dimensionless and the same law).
    model : Model or str
        "ideal", "plasma" or "drude".
    prescription : Prescription, str or None
        Zero-frequency treatment; None only for the ideal metal.
    material, law
        Needed only by prescription b's temperature derivative bookkeeping
        elsewhere; f0 itself only needs the state.  Accepted here so call
        sites can pass one argument set everywhere.
    """
    model = Model(model)
    prescription = Prescription(prescription) if prescription is not None else None
    _check_compat(state, model, prescription)
    _warn_small_separation(state, model)
    if state.T <= 0:
        raise ValueError("free_energy needs T > 0; use energy_T0 for the zero-temperature limit")

    if model is Model.IDEAL:
        zf = ZeroFrequencyTerm(-2.0 * ZETA3, 0.0, 0)
    else:
        zf = zero_frequency_term(prescription, state, material, law, spec)

    code = _kernel_model(model)
    wp = 0.0 if model is Model.IDEAL else state.omega_p_tilde
    gt = state.gamma_tilde
    evals = zf.evals

    def term(l: int) -> float:
        nonlocal evals
        xi = matsubara_xi(state, l)
        res = integrate_y(lambda y: _kernels.free_energy_integrand(xi, y, wp, gt, code), xi, spec)
        evals += res.evals
        return 2.0 * res.value

    thermal_dimless, terms_used, tail = matsubara_sum(term, spec)
    pref = constants.k_B * state.T / (16.0 * math.pi * state.a**2)
    report = ConvergenceReport(terms_used=terms_used, estimated_tail=abs(pref) * tail, integrand_evals=evals)
    return SpectralValue(
        total=pref * (zf.f0 + thermal_dimless),
        zero_frequency=pref * zf.f0,
        thermal=pref * thermal_dimless,
        report=report,
    )


def _energy(
    state: ThermalState,
    model: Model,
    gdot: float,
    e0: float,
    zf_evals: int,
    spec: ConvergenceSpec,
    constants: PhysicalConstants,
) -> SpectralValue:
    """Shared spectral assembly of E = -T^2 d(F/T)/dT.

    gdot = T dgamma_tilde/dT (= nu(T) gamma_tilde, zero for plasma/frozen);
    e0 = -kB T^2/(16 pi a^2) df0/dT is the prescription's own contribution.
    """
    code = _kernel_model(model)
    wp = 0.0 if model is Model.IDEAL else state.omega_p_tilde
    gt = state.gamma_tilde
    kBT = constants.k_B * state.T
    pref_boundary = kBT / (8.0 * math.pi * state.a**2)
    pref_integral = kBT / (4.0 * math.pi * state.a**2)
    evals = zf_evals

    def term(l: int) -> float:
        nonlocal evals
        xi = matsubara_xi(state, l)
        boundary = _kernels.boundary_log_delta(xi, wp, gt, code)
        value = pref_boundary * xi * xi * boundary
        if model is not Model.IDEAL:
            res = integrate_y(
                lambda y: _kernels.energy_integrand(xi, y, wp, gt, code, gdot), xi, spec
            )
            evals += res.evals
            value += pref_integral * res.value
        evals += 1
        return value

    thermal, terms_used, tail = matsubara_sum(term, spec)
    report = ConvergenceReport(terms_used=terms_used, estimated_tail=tail, integrand_evals=evals)
    return SpectralValue(total=e0 + thermal, zero_frequency=e0, thermal=thermal, report=report)


def energy_at_T_plasma(
    state: ThermalState,
    spec: ConvergenceSpec = DEFAULT_SPEC,
    constants: PhysicalConstants = CODATA,
) -> SpectralValue:
    """Internal energy per unit area for the plasma model (prescription d).

    The zero-frequency term is temperature independent, so only the xi_l
    dependence contributes; the perpendicular amplitude drops out of the
    spectral integral entirely (it does not depend on xi).
    """
    _check_compat(state, Model.PLASMA, Prescription.PLASMA)
    if state.T <= 0:
        raise ValueError("energy_at_T_plasma needs T > 0")
    return _energy(state, Model.PLASMA, 0.0, 0.0, 0, spec, constants)


def energy_at_T_drude(
    state: ThermalState,
    material: Material,
    law: RelaxationLaw | None,
    prescription: Prescription | str,
    spec: ConvergenceSpec = DEFAULT_SPEC,
    constants: PhysicalConstants = CODATA,
) -> SpectralValue:
    """Internal energy per unit area for the Drude model with gamma(T) active.

    Includes the dgamma/dT terms (T dgamma/dT = nu gamma from the relaxation
    law) and, for prescription b, the temperature derivative of f0.
    """
    prescription = Prescription(prescription)
    _check_compat(state, Model.DRUDE, prescription)
    _warn_small_separation(state, Model.DRUDE)
    if state.T <= 0:
        raise ValueError("energy_at_T_drude needs T > 0")
    nu = material.nu(state.T, law)
    gdot = nu * state.gamma_tilde
    e0 = 0.0
    zf_evals = 0
    if prescription is Prescription.MODIFIED_ZERO_FREQ:
        zf = zero_frequency_term(prescription, state, material, law, spec)
        e0 = -constants.k_B * state.T**2 / (16.0 * math.pi * state.a**2) * zf.df0_dT
        zf_evals = zf.evals
    return _energy(state, Model.DRUDE, gdot, e0, zf_evals, spec, constants)


def energy_frozen_gamma(
    state: ThermalState,
    spec: ConvergenceSpec = DEFAULT_SPEC,
    constants: PhysicalConstants = CODATA,
) -> SpectralValue:
    """Internal energy with gamma_tilde held fixed at the state's value.

    With dgamma/dT = 0 every prescription's zero-frequency contribution to
    the energy vanishes, so the result is prescription independent.
    """
    if state.T <= 0:
        raise ValueError("energy_frozen_gamma needs T > 0")
    if not math.isfinite(state.omega_p_tilde):
        raise ValueError("energy_frozen_gamma needs a finite plasma frequency")
    _warn_small_separation(state, Model.DRUDE)
    return _energy(state, Model.DRUDE, 0.0, 0.0, 0, spec, constants)


def energy_T0(
    state: ThermalState,
    model: Model | str,
    spec: ConvergenceSpec = DEFAULT_SPEC,
    constants: PhysicalConstants = CODATA,
) -> float:
    """Zero-temperature energy per unit area, E(a, 0) in J/m^2.

    The Matsubara sum becomes an integral over continuous imaginary
    frequency.  The state's temperature is ignored; for the Drude model the
    state's gamma_tilde is used as-is, which makes this the hybrid reference
    quantity when the state was built at room temperature.
    """
    model = Model(model)
    if model is not Model.IDEAL and not math.isfinite(state.omega_p_tilde):
        raise ValueError(f"model {model.value!r} needs a finite plasma frequency")
    if model is Model.PLASMA and state.gamma_tilde > 0:
        raise ValueError("plasma-model evaluation requires gamma_tilde = 0 in the state")
    _warn_small_separation(state, model)
    code = _kernel_model(model)
    wp = 0.0 if model is Model.IDEAL else state.omega_p_tilde
    gt = state.gamma_tilde
    res = integrate_2d(
        lambda xi, y: _kernels.free_energy_integrand(xi, y, wp, gt, code), spec
    )
    pref = constants.hbar * constants.c / (32.0 * math.pi**2 * state.a**3)
    return pref * res.value


def reference_energy_T0(
    state: ThermalState,
    model: Model | str,
    spec: ConvergenceSpec = DEFAULT_SPEC,
    constants: PhysicalConstants = CODATA,
) -> float:
    """|E(a, 0)| used to normalize ratio plots (positive number)."""
    return abs(energy_T0(state, model, spec, constants))


def evaluate_point(
    state: ThermalState,
    model: Model | str,
    prescription: Prescription | str | None,
    material: Material | None = None,
    law: RelaxationLaw | None = None,
    spec: ConvergenceSpec = DEFAULT_SPEC,
    constants: PhysicalConstants = CODATA,
) -> ThermoResult:
    """Free energy and energy together at one (a, T) point."""
    model = Model(model)
    prescription = Prescription(prescription) if prescription is not None else None
    F = free_energy(state, model, prescription, material, law, spec, constants)
    if model is Model.IDEAL:
        E = _energy(state, Model.IDEAL, 0.0, 0.0, 0, spec, constants)
    elif model is Model.PLASMA:
        E = energy_at_T_plasma(state, spec, constants)
    else:
        if material is None:
            raise ValueError("Drude energies need the material for nu(T)")
        E = energy_at_T_drude(state, material, law, prescription, spec, constants)
    return ThermoResult(free_energy=F, energy=E)

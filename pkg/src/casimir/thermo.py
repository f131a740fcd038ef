"""Entropy, the Legendre identity, and the Nernst-theorem audit.

Entropy per unit area is S = -dF/dT.  Two independent routes compute it:
a Richardson-extrapolated central difference of the exact free energy
(with gamma(T) of the relaxation law active in the neighboring states),
and the closed-form perturbative expansion.  The exact route also
reports (E - F)/T, so every evaluation doubles as a check of the
Legendre identity E = F + T S.

The audit evaluates S on a temperature grid, extrapolates to T = 0 with
a quadratic fit (the passing prescriptions vanish like T^2), and
classifies each zero-frequency prescription: entropy that goes negative
fails on the entropy sign, a nonzero S(a, 0) fails the Nernst theorem,
anything else passes.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .asymptotics import (
    drude_entropy_perturbative,
    entropy_high_temperature,
    entropy_low_temperature,
    plasma_entropy_series,
)
from .constants import CODATA, PhysicalConstants, ThermalState, to_dimensionless
from .lifshitz import (
    ZETA3,
    Prescription,
    evaluate_point,
    free_energy,
)
from .materials import Material, Model, RelaxationLaw
from .quadrature import DEFAULT_SPEC, ConvergenceSpec


class EntropyMethod(enum.Enum):
    """How an entropy value was obtained."""

    ANALYTIC_DERIVATIVE = "analytic-derivative"
    FINITE_DIFFERENCE = "finite-difference"
    PERTURBATIVE = "perturbative"


class AuditOutcome(enum.Enum):
    """Nernst-audit classification of one prescription."""

    PASS = "Pass"
    FAIL_NEGATIVE_ENTROPY = "FailNegativeEntropy"
    FAIL_NONZERO_S0 = "FailNonzeroS0"


@dataclass(frozen=True)
class EntropyResult:
    """Entropy per unit area at one (a, T) point.

    Attributes
    ----------
    S : float
        Entropy per unit area, J/(K m^2).
    method : EntropyMethod
        Route that produced ``S``.
    T : float
        Temperature in K.
    prescription : Prescription or None
        None for the ideal metal.
    S_legendre : float or None
        (E - F)/T from the analytic energy, carried by the exact route;
        agreement with ``S`` is the Legendre identity.
    free_energy, energy : float or None
        The exact F and E used for ``S_legendre``, J/m^2.
    """

    S: float
    method: EntropyMethod
    T: float
    prescription: Prescription | None
    S_legendre: float | None = None
    free_energy: float | None = None
    energy: float | None = None

    def legendre_residual(self) -> float:
        """|E - F - T S| / |E| with S from this result's own route."""
        if self.S_legendre is None or self.energy is None:
            raise ValueError("this result carries no Legendre cross-check")
        return abs(self.energy - self.free_energy - self.T * self.S) / abs(self.energy)


@dataclass(frozen=True)
class NernstVerdict:
    """Outcome of the Nernst audit for one prescription at one separation.

    ``S_at_zero`` is the quadratic T -> 0 extrapolation of the entropy
    grid; ``negative_range`` brackets the grid temperatures where S drops
    below the noise floor, or is None when it never does.  ``S_scale`` is
    kB zeta(3)/(16 pi a^2), the natural size of a zero-frequency entropy
    defect, against which ``S_at_zero`` is judged.
    """

    prescription: Prescription
    S_at_zero: float
    negative_range: tuple[float, float] | None
    verdict: AuditOutcome
    S_scale: float
    samples: tuple[tuple[float, float], ...]


def _rebuild(state: ThermalState, T: float, material: Material | None,
             law: RelaxationLaw | None, model: Model,
             constants: PhysicalConstants) -> ThermalState:
    """State at a new temperature with gamma(T) of the law applied."""
    if model is Model.IDEAL:
        return to_dimensionless(state.a, T, None, None, constants)
    st = to_dimensionless(state.a, T, material, law, constants)
    if model is Model.PLASMA:
        st = replace(st, gamma_tilde=0.0)
    return st


def entropy_exact(
    state: ThermalState,
    model: Model | str,
    prescription: Prescription | str | None,
    material: Material | None = None,
    law: RelaxationLaw | None = None,
    spec: ConvergenceSpec = DEFAULT_SPEC,
    constants: PhysicalConstants = CODATA,
    dT: float | None = None,
) -> EntropyResult:
    """S = -dF/dT from the exact free energy, J/(K m^2).

    Five-point Richardson differencing: with h the step,

        dF/dT = [8 (F(T+h) - F(T-h)) - (F(T+2h) - F(T-2h))] / (12 h)

    which has an O(h^4) error.  The neighboring states are rebuilt from
    (a, T +/- h) with the material's relaxation law, so the temperature
    dependence of gamma is differentiated along with the Matsubara
    frequencies.  The analytic energy at T supplies (E - F)/T as an
    independent value of the same derivative (Legendre identity).

    Parameters
    ----------
    state : ThermalState
        Point of evaluation; T > 0.
    model, prescription, material, law
        As in ``free_energy``.  For the Drude model the material is
        required (the energy needs nu(T)).
    dT : float or None
        Step override; default max(0.25 K, 1e-3 T), capped at T/4 so all
        four sample temperatures stay positive.
    """
    model = Model(model)
    prescription = Prescription(prescription) if prescription is not None else None
    if state.T <= 0:
        raise ValueError("entropy_exact needs T > 0; the T = 0 value is the audit's job")
    h = dT if dT is not None else max(0.25, 1e-3 * state.T)
    h = min(h, state.T / 4.0)

    def F(T: float) -> float:
        st = _rebuild(state, T, material, law, model, constants)
        return free_energy(st, model, prescription, material, law, spec, constants).total

    f_p1, f_m1 = F(state.T + h), F(state.T - h)
    f_p2, f_m2 = F(state.T + 2.0 * h), F(state.T - 2.0 * h)
    central = (f_p1 - f_m1) / (2.0 * h)
    richardson = (8.0 * (f_p1 - f_m1) - (f_p2 - f_m2)) / (12.0 * h)
    # The h^2 term removed by Richardson bounds the step error; if it is
    # not small against the value, the step straddles structure in F(T).
    scale = constants.k_B * ZETA3 / (16.0 * math.pi * state.a**2)
    if abs(richardson - central) > 0.2 * abs(richardson) + 1e-3 * scale:
        raise ArithmeticError(
            f"temperature derivative did not settle at T = {state.T} K with "
            f"step {h} K; refine dT"
        )

    point = evaluate_point(state, model, prescription, material, law, spec, constants)
    return EntropyResult(
        S=-richardson,
        method=EntropyMethod.FINITE_DIFFERENCE,
        T=state.T,
        prescription=prescription,
        S_legendre=point.entropy_from_identity(state.T),
        free_energy=point.free_energy.total,
        energy=point.energy.total,
    )


def entropy_perturbative(
    state: ThermalState,
    prescription: Prescription | str | None,
    material: Material | None = None,
    law: RelaxationLaw | None = None,
    constants: PhysicalConstants = CODATA,
) -> EntropyResult:
    """Closed-form entropy from the resummed series, J/(K m^2).

    Prescription d (and the ideal metal, prescription None) is the
    differentiated plasma series; a, b, c add their zero-frequency
    entropy and the first-order relaxation sum.  No quadrature runs, so
    this is the route for dense audit grids.
    """
    prescription = Prescription(prescription) if prescription is not None else None
    if prescription is None or prescription is Prescription.PLASMA:
        st = replace(state, gamma_tilde=0.0) if state.gamma_tilde > 0 else state
        S = plasma_entropy_series(st, constants)
    else:
        if material is None:
            raise ValueError("prescriptions a, b, c need the material")
        S = drude_entropy_perturbative(state, prescription, material, law, constants)
    return EntropyResult(
        S=S, method=EntropyMethod.PERTURBATIVE, T=state.T, prescription=prescription
    )


def entropy_plasma_asymptotic(
    state: ThermalState,
    branch: str,
    constants: PhysicalConstants = CODATA,
) -> EntropyResult:
    """Printed low/high-temperature entropy forms for the plasma model.

    branch = "lowT" is the quadratic-plus-cubic law in T/T_eff (exact
    zero at T = 0); branch = "highT" is the classical plateau
    kB zeta(3)/(8 pi a^2) with its first lambda_p/(pi a) correction.
    """
    if branch == "lowT":
        S = entropy_low_temperature(state, constants)
    elif branch == "highT":
        S = entropy_high_temperature(state, constants)
    else:
        raise ValueError(f"branch must be 'lowT' or 'highT', not {branch!r}")
    return EntropyResult(
        S=S,
        method=EntropyMethod.ANALYTIC_DERIVATIVE,
        T=state.T,
        prescription=Prescription.PLASMA,
    )


DEFAULT_AUDIT_GRID = tuple(float(T) for T in np.geomspace(1.0, 600.0, 31))


def nernst_audit(
    a: float,
    material: Material,
    prescription: Prescription | str,
    law: RelaxationLaw | None = None,
    T_grid: tuple[float, ...] | None = None,
    method: str = "perturbative",
    spec: ConvergenceSpec = DEFAULT_SPEC,
    constants: PhysicalConstants = CODATA,
) -> NernstVerdict:
    """Classify one prescription against the third law at separation ``a``.

    Entropy is evaluated on ``T_grid`` (default: 31 log-spaced points,
    1 K to 600 K), extrapolated to T = 0 with a quadratic fit through
    the three lowest grid points, and judged on the scale
    kB zeta(3)/(16 pi a^2):

    * any grid point below -1e-3 of that scale -> FailNegativeEntropy,
    * |S(a, 0)| above 1e-3 of that scale     -> FailNonzeroS0,
    * otherwise                               -> Pass.

    Parameters
    ----------
    method : {"perturbative", "exact"}
        Route for the grid values.  The perturbative route is closed
        form and is what a dense grid wants; the exact route runs the
        full finite-difference derivative at every grid point.
    """
    prescription = Prescription(prescription)
    grid = tuple(sorted(T_grid)) if T_grid is not None else DEFAULT_AUDIT_GRID
    if len(grid) < 3:
        raise ValueError("the audit needs at least three grid temperatures")
    if grid[0] <= 0:
        raise ValueError("audit grid temperatures must be positive")
    state0 = to_dimensionless(a, grid[0], material, law, constants)
    if grid[2] > 0.05 * state0.T_eff:
        raise ValueError(
            "audit grid too coarse near T = 0 for a stable extrapolation: "
            f"need three points below 0.05 T_eff = {0.05 * state0.T_eff:.3g} K"
        )

    model = Model.PLASMA if prescription is Prescription.PLASMA else Model.DRUDE
    values = []
    for T in grid:
        st = _rebuild(state0, T, material, law, model, constants)
        if method == "perturbative":
            res = entropy_perturbative(st, prescription, material, law, constants)
        elif method == "exact":
            res = entropy_exact(st, model, prescription, material, law, spec, constants)
        else:
            raise ValueError(f"method must be 'perturbative' or 'exact', not {method!r}")
        values.append(res.S)

    S = np.asarray(values)
    T = np.asarray(grid)
    scale = constants.k_B * ZETA3 / (16.0 * math.pi * a**2)
    tol = 1e-3 * scale

    S_at_zero = float(np.polyfit(T[:3], S[:3], 2)[-1])
    negative = np.flatnonzero(S < -tol)
    negative_range = (float(T[negative[0]]), float(T[negative[-1]])) if negative.size else None

    if negative_range is not None:
        verdict = AuditOutcome.FAIL_NEGATIVE_ENTROPY
    elif abs(S_at_zero) > tol:
        verdict = AuditOutcome.FAIL_NONZERO_S0
    else:
        verdict = AuditOutcome.PASS
    return NernstVerdict(
        prescription=prescription,
        S_at_zero=S_at_zero,
        negative_range=negative_range,
        verdict=verdict,
        S_scale=scale,
        samples=tuple(zip((float(x) for x in T), (float(s) for s in S))),
    )

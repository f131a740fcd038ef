"""Casimir free energy, energy, and entropy between parallel metal plates.

The Lifshitz Matsubara sum evaluated for ideal-metal, plasma, and Drude
plates, with the four competing treatments of the zero-frequency term
(prescriptions a-d), closed-form asymptotic expansions, and the
thermodynamic audit (Nernst theorem, entropy sign, Legendre identity)
that tells the prescriptions apart.

Typical use::

    from casimir import aluminum, to_dimensionless, free_energy

    state = to_dimensionless(1e-6, 300.0, aluminum())
    F = free_energy(state, "drude", "a").total

The quadrature hot loops run on a compiled extension when one was built;
``KERNEL_BACKEND`` says which backend is active, and setting the
environment variable ``CASIMIR_PURE_KERNELS=1`` before import forces the
numpy fallback.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .asymptotics import (
    AsymptoticRangeWarning,
    bose_integrals,
    drude_energy_perturbative,
    drude_entropy_perturbative,
    drude_free_energy_perturbative,
    entropy_high_temperature,
    entropy_low_temperature,
    plasma_energy_series,
    plasma_entropy_series,
    plasma_free_energy_series,
    plasma_high_temperature,
    plasma_low_temperature,
    zero_frequency_entropy,
    zero_temperature_energy,
)
from .constants import (
    CODATA,
    PhysicalConstants,
    ThermalState,
    effective_temperature,
    matsubara_xi,
    to_dimensionless,
)
from .lifshitz import (
    ZETA3,
    Prescription,
    SmallSeparationWarning,
    SpectralValue,
    ThermoResult,
    ZeroFrequencyTerm,
    energy_at_T_drude,
    energy_at_T_plasma,
    energy_frozen_gamma,
    energy_T0,
    evaluate_point,
    free_energy,
    reference_energy_T0,
    zero_frequency_term,
)
from .materials import (
    Frozen,
    LinearAboveQuarterDebye,
    Material,
    Model,
    RelaxationLaw,
    TableInterpolated,
    aluminum,
    eps_drude,
    eps_plasma,
    load_gamma_table,
    load_material,
)
from .quadrature import (
    DEFAULT_SPEC,
    ConvergenceError,
    ConvergenceReport,
    ConvergenceSpec,
)
from .thermo import (
    DEFAULT_AUDIT_GRID,
    AuditOutcome,
    EntropyMethod,
    EntropyResult,
    NernstVerdict,
    entropy_exact,
    entropy_perturbative,
    entropy_plasma_asymptotic,
    nernst_audit,
)

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "__version__",
    # constants
    "CODATA",
    "PhysicalConstants",
    "ThermalState",
    "effective_temperature",
    "matsubara_xi",
    "to_dimensionless",
    # materials
    "Model",
    "Material",
    "RelaxationLaw",
    "Frozen",
    "LinearAboveQuarterDebye",
    "TableInterpolated",
    "aluminum",
    "load_material",
    "load_gamma_table",
    "eps_plasma",
    "eps_drude",
    # quadrature
    "ConvergenceSpec",
    "ConvergenceReport",
    "ConvergenceError",
    "DEFAULT_SPEC",
    # lifshitz
    "ZETA3",
    "Prescription",
    "SpectralValue",
    "ThermoResult",
    "ZeroFrequencyTerm",
    "SmallSeparationWarning",
    "free_energy",
    "energy_at_T_plasma",
    "energy_at_T_drude",
    "energy_frozen_gamma",
    "energy_T0",
    "reference_energy_T0",
    "evaluate_point",
    "zero_frequency_term",
    # asymptotics
    "AsymptoticRangeWarning",
    "bose_integrals",
    "plasma_free_energy_series",
    "plasma_energy_series",
    "plasma_entropy_series",
    "plasma_low_temperature",
    "plasma_high_temperature",
    "entropy_low_temperature",
    "entropy_high_temperature",
    "drude_free_energy_perturbative",
    "drude_energy_perturbative",
    "drude_entropy_perturbative",
    "zero_frequency_entropy",
    "zero_temperature_energy",
    # thermo
    "EntropyMethod",
    "EntropyResult",
    "AuditOutcome",
    "NernstVerdict",
    "DEFAULT_AUDIT_GRID",
    "entropy_exact",
    "entropy_perturbative",
    "entropy_plasma_asymptotic",
    "nernst_audit",
]

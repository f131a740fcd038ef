"""Dielectric models and material data.

Permittivities are evaluated along the imaginary frequency axis in the
dimensionless variable xi_tilde = 2 a xi / c:

    plasma  eps(i xi) = 1 + wp^2 / xi^2
    Drude   eps(i xi) = 1 + wp^2 / (xi (xi + gamma))

with wp = omega_p_tilde and gamma = gamma_tilde equally dimensionless.  The
zero-frequency limit is never evaluated here; the prescriptions in
:mod:`casimir.lifshitz` own that limit.

The relaxation frequency gamma(T) can follow a user-supplied table, a linear
law anchored at a reference point (with a ~T^5 rolloff below a quarter of the
Debye temperature), or stay frozen at a constant.
"""

from __future__ import annotations

import csv
import enum
import math
import os
from dataclasses import dataclass

import numpy as np

from .constants import CODATA, PhysicalConstants, ev_to_rad_s

__all__ = [
    "Model",
    "eps_plasma",
    "eps_drude",
    "RelaxationLaw",
    "Frozen",
    "LinearAboveQuarterDebye",
    "TableInterpolated",
    "Material",
    "gamma_at",
    "nu_at",
    "load_gamma_table",
    "load_material",
    "aluminum",
]


class Model(enum.Enum):
    """Dielectric response of the plates."""

    IDEAL = "ideal"
    PLASMA = "plasma"
    DRUDE = "drude"


def eps_plasma(xi_tilde, omega_p_tilde):
    """Plasma-model permittivity at imaginary frequency, 1 + wp^2/xi^2.

    Accepts scalars or numpy arrays for xi_tilde; xi_tilde must be positive.
    """
    if np.any(np.asarray(xi_tilde) <= 0):
        raise ValueError("xi_tilde must be positive (l = 0 is handled by the prescriptions)")
    if not omega_p_tilde > 0:
        raise ValueError("omega_p_tilde must be positive")
    return 1.0 + (omega_p_tilde / xi_tilde) ** 2


def eps_drude(xi_tilde, omega_p_tilde, gamma_tilde):
    """Drude-model permittivity at imaginary frequency, 1 + wp^2/(xi (xi + gamma))."""
    if np.any(np.asarray(xi_tilde) <= 0):
        raise ValueError("xi_tilde must be positive (l = 0 is handled by the prescriptions)")
    if not omega_p_tilde > 0:
        raise ValueError("omega_p_tilde must be positive")
    if gamma_tilde < 0:
        raise ValueError("gamma_tilde must be nonnegative")
    return 1.0 + omega_p_tilde**2 / (xi_tilde * (xi_tilde + gamma_tilde))


class RelaxationLaw:
    """Temperature dependence of the Drude relaxation frequency.

    Subclasses provide gamma(T) in rad/s and the logarithmic slope
    nu(T) = d ln gamma / d ln T, which enters the temperature derivative
    T dgamma/dT = nu * gamma.
    """

    def gamma(self, T: float) -> float:
        raise NotImplementedError

    def nu(self, T: float) -> float:
        raise NotImplementedError


@dataclass(frozen=True)
class Frozen(RelaxationLaw):
    """gamma held constant; nu = 0, so all gamma(T) derivative terms vanish."""

    gamma0: float

    def __post_init__(self):
        if self.gamma0 < 0:
            raise ValueError("gamma0 must be nonnegative")

    def gamma(self, T: float) -> float:
        return self.gamma0

    def nu(self, T: float) -> float:
        return 0.0


@dataclass(frozen=True)
class LinearAboveQuarterDebye(RelaxationLaw):
    """gamma proportional to T above T_D/4, ~T^5 below.

    The linear branch is anchored at (T_ref, gamma_ref); below a quarter of
    the Debye temperature the law continues as gamma(T_D/4) (4T/T_D)^5, which
    keeps gamma continuous, gamma -> 0 at T -> 0, and nu >= 1 everywhere.
    """

    gamma_ref: float
    T_ref: float
    debye_T: float

    def __post_init__(self):
        if self.gamma_ref <= 0:
            raise ValueError("gamma_ref must be positive")
        if self.T_ref <= 0 or self.debye_T <= 0:
            raise ValueError("T_ref and debye_T must be positive")
        if self.T_ref < self.debye_T / 4.0:
            raise ValueError("reference temperature must sit in the linear region (T_ref >= debye_T/4)")

    def gamma(self, T: float) -> float:
        if T < 0:
            raise ValueError("temperature must be nonnegative")
        T_q = self.debye_T / 4.0
        if T >= T_q:
            return self.gamma_ref * T / self.T_ref
        return (self.gamma_ref * T_q / self.T_ref) * (T / T_q) ** 5

    def nu(self, T: float) -> float:
        if T < 0:
            raise ValueError("temperature must be nonnegative")
        return 1.0 if T >= self.debye_T / 4.0 else 5.0


class TableInterpolated(RelaxationLaw):
    """Monotone piecewise-cubic interpolation of a measured gamma(T) table.

    Interpolation runs on (T, ln gamma) with a PCHIP interpolant, so positive
    tables stay positive.  nu(T) comes from the interpolant's derivative and
    is clamped to nu >= 1.  Queries outside the table range raise unless
    ``extrapolate=True``, in which case the edge power law continues.
    """

    def __init__(self, T_K, gamma_rad_s, extrapolate: bool = False):
        from scipy.interpolate import PchipInterpolator

        T_K = np.asarray(T_K, dtype=float)
        gamma_rad_s = np.asarray(gamma_rad_s, dtype=float)
        if T_K.size < 2:
            raise ValueError("gamma table needs at least two rows")
        if np.any(np.diff(T_K) <= 0):
            raise ValueError("gamma table temperatures must be strictly increasing")
        if np.any(T_K <= 0) or np.any(gamma_rad_s <= 0):
            raise ValueError("gamma table entries must be positive")
        self.T_K = T_K
        self.gamma_rad_s = gamma_rad_s
        self.extrapolate = extrapolate
        self._interp = PchipInterpolator(T_K, np.log(gamma_rad_s), extrapolate=False)
        self._dinterp = self._interp.derivative()

    def _check_range(self, T: float) -> None:
        if self.T_K[0] <= T <= self.T_K[-1]:
            return
        if not self.extrapolate:
            raise ValueError(
                f"T = {T} K outside gamma table range [{self.T_K[0]}, {self.T_K[-1]}] K "
                "(pass extrapolate=True to continue with the edge power law)"
            )

    def gamma(self, T: float) -> float:
        if T < 0:
            raise ValueError("temperature must be nonnegative")
        self._check_range(T)
        if T < self.T_K[0]:
            n = self.nu(self.T_K[0])
            return float(self.gamma_rad_s[0] * (T / self.T_K[0]) ** n)
        if T > self.T_K[-1]:
            n = self.nu(self.T_K[-1])
            return float(self.gamma_rad_s[-1] * (T / self.T_K[-1]) ** n)
        return float(math.exp(self._interp(T)))

    def nu(self, T: float) -> float:
        self._check_range(T)
        T_c = min(max(T, self.T_K[0]), self.T_K[-1])
        return float(max(1.0, T_c * self._dinterp(T_c)))


@dataclass(frozen=True)
class Material:
    """Plate material: plasma frequency plus relaxation data.

    omega_p and gamma_ref are in rad/s; gamma_ref = 0 describes a material
    used only with the plasma model.
    """

    name: str
    omega_p: float
    gamma_ref: float = 0.0
    T_ref: float = 300.0
    debye_T: float | None = None
    table: TableInterpolated | None = None

    def __post_init__(self):
        if self.omega_p <= 0:
            raise ValueError("omega_p must be positive")
        if self.gamma_ref < 0:
            raise ValueError("gamma_ref must be nonnegative")

    def plasma_wavelength(self, constants: PhysicalConstants = CODATA) -> float:
        """lambda_p = 2 pi c / omega_p in m."""
        return 2.0 * math.pi * constants.c / self.omega_p

    def default_law(self) -> RelaxationLaw:
        if self.table is not None:
            return self.table
        if self.gamma_ref == 0.0:
            return Frozen(0.0)
        if self.debye_T is None:
            raise ValueError(f"material {self.name!r} has gamma but no Debye temperature and no table")
        return LinearAboveQuarterDebye(self.gamma_ref, self.T_ref, self.debye_T)

    def gamma(self, T: float, law: RelaxationLaw | None = None) -> float:
        law = law if law is not None else self.default_law()
        return law.gamma(T)

    def nu(self, T: float, law: RelaxationLaw | None = None) -> float:
        law = law if law is not None else self.default_law()
        return law.nu(T)


def gamma_at(material: Material, law: RelaxationLaw | None, T: float) -> float:
    """Relaxation frequency gamma(T) in rad/s under the given law."""
    return material.gamma(T, law)


def nu_at(material: Material, law: RelaxationLaw | None, T: float) -> float:
    """Logarithmic slope nu = d ln gamma / d ln T under the given law."""
    return material.nu(T, law)


def load_gamma_table(path, extrapolate: bool = False) -> TableInterpolated:
    """Read a gamma(T) table from CSV with header ``T_K,gamma_rad_s``."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["T_K", "gamma_rad_s"]:
            raise ValueError(f"{path}: expected CSV header 'T_K,gamma_rad_s'")
        T, g = [], []
        for row in reader:
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 2:
                raise ValueError(f"{path}: expected two columns, got {row!r}")
            try:
                T.append(float(row[0]))
                g.append(float(row[1]))
            except ValueError as exc:
                raise ValueError(f"{path}: non-numeric entry in {row!r}") from exc
    return TableInterpolated(T, g, extrapolate=extrapolate)


_CONFIG_KEYS = {
    "name",
    "omega_p_ev",
    "omega_p_rad_s",
    "gamma_ref_ev",
    "gamma_ref_rad_s",
    "t_ref_k",
    "debye_t_k",
    "gamma_table_path",
}


def load_material(path, constants: PhysicalConstants = CODATA) -> Material:
    """Read a material from a ``key = value`` config file.

    Recognized keys: name, omega_p_ev | omega_p_rad_s, gamma_ref_ev |
    gamma_ref_rad_s, t_ref_k, debye_t_k, gamma_table_path.  Exactly one of
    each _ev/_rad_s pair may appear; table paths are resolved relative to the
    config file.  Lines starting with ``#`` and blank lines are ignored.
    """
    entries: dict[str, str] = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw.rstrip()!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in _CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            if key in entries:
                raise ValueError(f"{path}:{lineno}: duplicate key {key!r}")
            entries[key] = value

    def number(key: str) -> float:
        try:
            return float(entries[key])
        except ValueError as exc:
            raise ValueError(f"{path}: non-numeric value for {key!r}: {entries[key]!r}") from exc

    if "omega_p_ev" in entries and "omega_p_rad_s" in entries:
        raise ValueError(f"{path}: give omega_p_ev or omega_p_rad_s, not both")
    if "omega_p_ev" in entries:
        omega_p = ev_to_rad_s(number("omega_p_ev"), constants)
    elif "omega_p_rad_s" in entries:
        omega_p = number("omega_p_rad_s")
    else:
        raise ValueError(f"{path}: missing omega_p_ev or omega_p_rad_s")

    if "gamma_ref_ev" in entries and "gamma_ref_rad_s" in entries:
        raise ValueError(f"{path}: give gamma_ref_ev or gamma_ref_rad_s, not both")
    if "gamma_ref_ev" in entries:
        gamma_ref = ev_to_rad_s(number("gamma_ref_ev"), constants)
    elif "gamma_ref_rad_s" in entries:
        gamma_ref = number("gamma_ref_rad_s")
    else:
        gamma_ref = 0.0

    table = None
    if "gamma_table_path" in entries:
        table_path = entries["gamma_table_path"]
        if not os.path.isabs(table_path):
            table_path = os.path.join(os.path.dirname(os.path.abspath(path)), table_path)
        table = load_gamma_table(table_path)

    return Material(
        name=entries.get("name", os.path.splitext(os.path.basename(path))[0]),
        omega_p=omega_p,
        gamma_ref=gamma_ref,
        T_ref=number("t_ref_k") if "t_ref_k" in entries else 300.0,
        debye_T=number("debye_t_k") if "debye_t_k" in entries else None,
        table=table,
    )


def aluminum() -> Material:
    """Built-in aluminum: omega_p = 1.75e16 rad/s (11.5 eV), gamma(300 K) = 7.6e13 rad/s (0.05 eV), T_D = 428 K.

    These are the rounded literature values commonly used for Al plates; load
    a material config with a measured gamma(T) table for anything better.
    """
    return Material(name="Al", omega_p=1.75e16, gamma_ref=7.6e13, T_ref=300.0, debye_T=428.0)

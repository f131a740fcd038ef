"""Tests for the dimensionless state construction and unit conversions."""

import math

import pytest

from casimir.constants import (
    CODATA,
    PhysicalConstants,
    ThermalState,
    effective_temperature,
    ev_to_rad_s,
    matsubara_xi,
    to_dimensionless,
)
from casimir.materials import Frozen, aluminum


def test_codata_values():
    assert CODATA.c == 299_792_458.0
    assert CODATA.hbar == pytest.approx(1.054571817e-34, rel=1e-12)
    assert CODATA.k_B == pytest.approx(1.380649e-23, rel=1e-12)
    assert CODATA.e == pytest.approx(1.602176634e-19, rel=1e-12)


def test_ev_to_rad_s():
    # 1 eV = e/hbar rad/s, about 1.519e15
    assert ev_to_rad_s(1.0) == pytest.approx(CODATA.e / CODATA.hbar, rel=1e-15)
    assert ev_to_rad_s(0.0) == 0.0
    with pytest.raises(ValueError):
        ev_to_rad_s(-1.0)


def test_effective_temperature():
    # T_eff = hbar c / (2 a kB); at a = 1 um this is about 1145 K
    T_eff = effective_temperature(1e-6)
    assert T_eff == pytest.approx(
        CODATA.hbar * CODATA.c / (2e-6 * CODATA.k_B), rel=1e-15
    )
    assert T_eff == pytest.approx(1144.7, rel=1e-3)
    # doubling the gap halves T_eff
    assert effective_temperature(2e-6) == pytest.approx(0.5 * T_eff, rel=1e-15)
    with pytest.raises(ValueError):
        effective_temperature(0.0)


def test_thermal_state_validation():
    kwargs = dict(a=1e-6, T=300.0, omega_p_tilde=100.0, gamma_tilde=0.5,
                  T_eff=1144.7, t=3.8157)
    ThermalState(**kwargs)  # valid
    with pytest.raises(ValueError):
        ThermalState(**{**kwargs, "a": -1e-6})
    with pytest.raises(ValueError):
        ThermalState(**{**kwargs, "T": -1.0})
    with pytest.raises(ValueError):
        ThermalState(**{**kwargs, "omega_p_tilde": 0.0})
    with pytest.raises(ValueError):
        ThermalState(**{**kwargs, "gamma_tilde": -0.1})


def test_to_dimensionless_ideal():
    st = to_dimensionless(1e-6, 300.0)
    assert math.isinf(st.omega_p_tilde)
    assert st.gamma_tilde == 0.0
    assert st.t == pytest.approx(st.T_eff / 300.0, rel=1e-15)


def test_to_dimensionless_aluminum():
    al = aluminum()
    st = to_dimensionless(1e-6, 300.0, al)
    # omega_p_tilde = 2 a omega_p / c
    assert st.omega_p_tilde == pytest.approx(2e-6 * 1.75e16 / CODATA.c, rel=1e-15)
    assert st.omega_p_tilde == pytest.approx(116.75, rel=1e-3)
    # gamma(300 K) is the reference value of the built-in law
    assert st.gamma_tilde == pytest.approx(2e-6 * 7.6e13 / CODATA.c, rel=1e-12)
    # overriding the law changes gamma_tilde but not omega_p_tilde
    st_frozen = to_dimensionless(1e-6, 10.0, al, law=Frozen(7.6e13))
    assert st_frozen.gamma_tilde == pytest.approx(st.gamma_tilde, rel=1e-12)
    assert st_frozen.omega_p_tilde == st.omega_p_tilde


def test_to_dimensionless_zero_temperature():
    st = to_dimensionless(1e-6, 0.0, aluminum())
    assert st.T == 0.0
    assert math.isinf(st.t)
    assert st.gamma_tilde == 0.0  # gamma(0) = 0 under the built-in law


def test_matsubara_xi():
    st = to_dimensionless(1e-6, 300.0)
    assert matsubara_xi(st, 0) == 0.0
    xi1 = matsubara_xi(st, 1)
    assert xi1 == pytest.approx(2.0 * math.pi * 300.0 / st.T_eff, rel=1e-15)
    # linear in l
    assert matsubara_xi(st, 7) == pytest.approx(7.0 * xi1, rel=1e-14)
    with pytest.raises(ValueError):
        matsubara_xi(st, -1)
    st0 = to_dimensionless(1e-6, 0.0)
    with pytest.raises(ValueError):
        matsubara_xi(st0, 1)


def test_custom_constants_propagate():
    # sanity check that a nonstandard constant set is actually used
    alt = PhysicalConstants(hbar=1e-34, c=3e8, k_B=1.4e-23, e=1.6e-19)
    assert effective_temperature(1e-6, alt) == pytest.approx(
        1e-34 * 3e8 / (2e-6 * 1.4e-23), rel=1e-15
    )
    st = to_dimensionless(1e-6, 300.0, aluminum(), constants=alt)
    assert st.omega_p_tilde == pytest.approx(2e-6 * 1.75e16 / 3e8, rel=1e-15)

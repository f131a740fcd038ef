"""Tests for permittivity models, relaxation laws, and material loading."""

import math
import os

import numpy as np
import pytest

from casimir.materials import (
    Frozen,
    LinearAboveQuarterDebye,
    Material,
    TableInterpolated,
    aluminum,
    eps_drude,
    eps_plasma,
    gamma_at,
    load_gamma_table,
    load_material,
    nu_at,
)

DATA_DIR = os.path.join(os.path.dirname(__file__), "..", "src", "casimir", "data")


def test_eps_plasma_algebra():
    xi = np.array([0.5, 1.0, 2.0, 10.0])
    wp = 100.0
    np.testing.assert_allclose(eps_plasma(xi, wp), 1.0 + wp**2 / xi**2, rtol=1e-15)
    assert eps_plasma(1.0, 1.0) == 2.0
    with pytest.raises(ValueError):
        eps_plasma(0.0, wp)
    with pytest.raises(ValueError):
        eps_plasma(xi, -1.0)


def test_eps_drude_algebra():
    xi = np.array([0.5, 1.0, 2.0, 10.0])
    wp, g = 100.0, 0.5
    np.testing.assert_allclose(
        eps_drude(xi, wp, g), 1.0 + wp**2 / (xi * (xi + g)), rtol=1e-15
    )
    # gamma = 0 reduces to the plasma form
    np.testing.assert_allclose(eps_drude(xi, wp, 0.0), eps_plasma(xi, wp), rtol=1e-15)
    # dissipation lowers eps on the imaginary axis
    assert np.all(eps_drude(xi, wp, g) < eps_plasma(xi, wp))
    with pytest.raises(ValueError):
        eps_drude(xi, wp, -0.1)


def test_frozen_law():
    law = Frozen(7.6e13)
    assert law.gamma(5.0) == 7.6e13
    assert law.gamma(500.0) == 7.6e13
    assert law.nu(300.0) == 0.0
    with pytest.raises(ValueError):
        Frozen(-1.0)


def test_linear_law_branches():
    law = LinearAboveQuarterDebye(gamma_ref=7.6e13, T_ref=300.0, debye_T=428.0)
    T_q = 428.0 / 4.0
    # anchored at the reference point
    assert law.gamma(300.0) == pytest.approx(7.6e13, rel=1e-15)
    # linear above T_D/4
    assert law.gamma(600.0) == pytest.approx(2.0 * 7.6e13, rel=1e-15)
    assert law.nu(300.0) == 1.0
    # continuous at the branch point, ~T^5 below it
    g_q = law.gamma(T_q)
    assert law.gamma(T_q * (1.0 - 1e-12)) == pytest.approx(g_q, rel=1e-9)
    assert law.gamma(T_q / 2.0) == pytest.approx(g_q / 32.0, rel=1e-12)
    assert law.nu(T_q / 2.0) == 5.0
    assert law.gamma(0.0) == 0.0
    with pytest.raises(ValueError):
        law.gamma(-1.0)
    with pytest.raises(ValueError):
        LinearAboveQuarterDebye(gamma_ref=7.6e13, T_ref=50.0, debye_T=428.0)


def test_table_law_interpolation():
    T = np.array([10.0, 50.0, 107.0, 300.0, 900.0])
    g = np.array([1.9e8, 1.2e11, 2.7e13, 7.6e13, 2.28e14])
    law = TableInterpolated(T, g)
    # hits the nodes exactly (interpolation on ln gamma through the data)
    for Ti, gi in zip(T, g):
        assert law.gamma(Ti) == pytest.approx(gi, rel=1e-12)
    # monotone in between
    assert g[1] < law.gamma(80.0) < g[2]
    assert law.nu(300.0) >= 1.0
    # out of range without extrapolate raises
    with pytest.raises(ValueError):
        law.gamma(5.0)
    with pytest.raises(ValueError):
        law.gamma(1000.0)
    # extrapolation continues the edge power law
    law_x = TableInterpolated(T, g, extrapolate=True)
    n_hi = law_x.nu(900.0)
    assert law_x.gamma(1800.0) == pytest.approx(2.28e14 * 2.0**n_hi, rel=1e-12)
    with pytest.raises(ValueError):
        TableInterpolated([300.0], [7.6e13])
    with pytest.raises(ValueError):
        TableInterpolated([300.0, 200.0], [7.6e13, 5e13])
    with pytest.raises(ValueError):
        TableInterpolated([100.0, 200.0], [-1.0, 5e13])


def test_aluminum_builtin():
    al = aluminum()
    assert al.omega_p == 1.75e16
    assert al.gamma_ref == 7.6e13
    assert al.debye_T == 428.0
    # lambda_p = 2 pi c / omega_p, about 0.108 um
    assert al.plasma_wavelength() == pytest.approx(1.0764e-7, rel=1e-4)
    law = al.default_law()
    assert isinstance(law, LinearAboveQuarterDebye)
    assert gamma_at(al, None, 300.0) == pytest.approx(7.6e13, rel=1e-15)
    assert nu_at(al, None, 50.0) == 5.0
    # explicit law overrides the default
    assert gamma_at(al, Frozen(1e13), 300.0) == 1e13


def test_material_law_selection():
    # no relaxation data: frozen at zero (plasma-model use only)
    m = Material(name="X", omega_p=1e16)
    assert isinstance(m.default_law(), Frozen)
    assert m.gamma(300.0) == 0.0
    # gamma but no Debye temperature and no table: no defensible default
    m2 = Material(name="Y", omega_p=1e16, gamma_ref=1e13)
    with pytest.raises(ValueError):
        m2.default_law()
    with pytest.raises(ValueError):
        Material(name="Z", omega_p=-1.0)


def test_load_gamma_table_roundtrip(tmp_path):
    path = tmp_path / "gamma.csv"
    path.write_text("T_K,gamma_rad_s\n100.0,1.0e13\n200.0,2.0e13\n300.0,3.0e13\n")
    law = load_gamma_table(path)
    assert law.gamma(200.0) == pytest.approx(2.0e13, rel=1e-12)
    # header and shape errors
    bad = tmp_path / "bad.csv"
    bad.write_text("temp,gamma\n100.0,1.0e13\n")
    with pytest.raises(ValueError):
        load_gamma_table(bad)
    bad.write_text("T_K,gamma_rad_s\n100.0,1.0e13,extra\n")
    with pytest.raises(ValueError):
        load_gamma_table(bad)
    bad.write_text("T_K,gamma_rad_s\n100.0,not-a-number\n")
    with pytest.raises(ValueError):
        load_gamma_table(bad)


def test_load_material_shipped_config():
    al = load_material(os.path.join(DATA_DIR, "aluminum.cfg"))
    assert al.name == "Al"
    assert al.omega_p == 1.75e16
    assert al.gamma_ref == 7.6e13
    assert al.debye_T == 428.0
    # shipped table is present and agrees with the built-in law at the anchor
    assert al.table is not None
    assert al.gamma(300.0) == pytest.approx(7.6e13, rel=1e-6)
    assert al.gamma(600.0) == pytest.approx(aluminum().gamma(600.0), rel=0.02)


def test_load_material_errors(tmp_path):
    cfg = tmp_path / "m.cfg"
    cfg.write_text("omega_p_rad_s = 1e16\nomega_p_ev = 10\n")
    with pytest.raises(ValueError, match="not both"):
        load_material(cfg)
    cfg.write_text("name = M\n")
    with pytest.raises(ValueError, match="missing omega_p"):
        load_material(cfg)
    cfg.write_text("bogus_key = 1\nomega_p_rad_s = 1e16\n")
    with pytest.raises(ValueError, match="unknown key"):
        load_material(cfg)
    cfg.write_text("omega_p_rad_s = 1e16\nomega_p_rad_s = 2e16\n")
    with pytest.raises(ValueError, match="duplicate"):
        load_material(cfg)
    cfg.write_text("omega_p_rad_s\n")
    with pytest.raises(ValueError, match="key = value"):
        load_material(cfg)
    # eV plasma frequency converts through e/hbar
    cfg.write_text("name = M\nomega_p_ev = 11.5\n")
    m = load_material(cfg)
    assert m.omega_p == pytest.approx(11.5 * 1.602176634e-19 / 1.054571817e-34, rel=1e-9)
    # default name comes from the file stem
    cfg2 = tmp_path / "gold.cfg"
    cfg2.write_text("omega_p_rad_s = 1.37e16\n")
    assert load_material(cfg2).name == "gold"

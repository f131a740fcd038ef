"""Tests for the spectral assembly: zero-frequency terms, free energy, energy.

Exact identities do most of the work here: the four prescriptions share the
same l >= 1 spectrum, so their differences are pure zero-frequency algebra
and must cancel to machine precision.
"""

import math
from dataclasses import replace

import pytest

from casimir.constants import CODATA, to_dimensionless
from casimir.lifshitz import (
    ZETA3,
    Prescription,
    SmallSeparationWarning,
    energy_at_T_drude,
    energy_at_T_plasma,
    energy_frozen_gamma,
    energy_T0,
    evaluate_point,
    free_energy,
    reference_energy_T0,
    zero_frequency_term,
)
from casimir.materials import Frozen, aluminum
from casimir.quadrature import ConvergenceSpec

AL = aluminum()


def _al_state(a_um=1.0, T=300.0):
    return to_dimensionless(a_um * 1e-6, T, AL)


def _plasma_state(a_um=1.0, T=300.0):
    return replace(_al_state(a_um, T), gamma_tilde=0.0)


def test_zero_frequency_values():
    st = _al_state()
    # a keeps only the parallel ideal term, c both: -zeta(3), -2 zeta(3)
    assert zero_frequency_term(Prescription.DRUDE_DIRECT, st).f0 == -ZETA3
    assert zero_frequency_term(Prescription.IDEAL_ZERO_FREQ, st).f0 == -2.0 * ZETA3
    # d lies strictly between: the perpendicular plasma integral is partial
    f0_d = zero_frequency_term(Prescription.PLASMA, _plasma_state()).f0
    assert -2.0 * ZETA3 < f0_d < -ZETA3
    # b with gamma > 0 sits above d's perpendicular recovery
    f0_b = zero_frequency_term(Prescription.MODIFIED_ZERO_FREQ, st, AL).f0
    assert -2.0 * ZETA3 < f0_b
    # d approaches -2 zeta(3) as omega_p grows
    gaps = []
    for wp in (1e2, 1e3, 1e4):
        st_w = replace(_plasma_state(), omega_p_tilde=wp)
        gaps.append(abs(zero_frequency_term(Prescription.PLASMA, st_w).f0 + 2.0 * ZETA3))
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 1e-3


def test_zero_frequency_b_temperature_derivative():
    st = _al_state()
    zf = zero_frequency_term(Prescription.MODIFIED_ZERO_FREQ, st, AL)
    # gamma grows with T, the b-term loses reflectivity: df0/dT < 0 means
    # f0 moving toward -zeta(3); check the sign via a finite step in T
    st_hi = to_dimensionless(1e-6, 310.0, AL)
    f0_hi = zero_frequency_term(Prescription.MODIFIED_ZERO_FREQ, st_hi, AL).f0
    fd = (f0_hi - zf.f0) / 10.0
    assert zf.df0_dT == pytest.approx(fd, rel=2e-2)
    # the derivative route requires the material
    with pytest.raises(ValueError):
        zero_frequency_term(Prescription.MODIFIED_ZERO_FREQ, st)


def test_free_energy_prescription_differences_are_pure_f0():
    # a, b, c share the identical thermal sum, so differences reduce to
    # kB T/(16 pi a^2) (f0_x - f0_y) exactly
    st = _al_state()
    pref = CODATA.k_B * 300.0 / (16.0 * math.pi * st.a**2)
    F = {
        p: free_energy(st, "drude", p, AL)
        for p in ("a", "b", "c")
    }
    assert F["a"].thermal == F["b"].thermal == F["c"].thermal
    assert F["a"].total - F["c"].total == pytest.approx(pref * ZETA3, rel=1e-12)
    f0_b = zero_frequency_term(Prescription.MODIFIED_ZERO_FREQ, st, AL).f0
    assert F["b"].total - F["a"].total == pytest.approx(pref * (f0_b + ZETA3), rel=1e-10)
    # split consistency
    for v in F.values():
        assert v.total == pytest.approx(v.zero_frequency + v.thermal, rel=1e-15)
        assert v.report.terms_used > 0
        assert v.report.integrand_evals > 0


def test_free_energy_ideal_classical_limit():
    # T >> T_eff: only l = 0 survives, F -> -kB T zeta(3)/(8 pi a^2)
    a = 1e-6
    T_eff = to_dimensionless(a, 300.0).T_eff
    st = to_dimensionless(a, 40.0 * T_eff, None)
    F = free_energy(st, "ideal", None)
    classical = -CODATA.k_B * st.T * ZETA3 / (8.0 * math.pi * a**2)
    assert F.total == pytest.approx(classical, rel=1e-10)
    assert abs(F.thermal) < 1e-10 * abs(F.total)


def test_free_energy_temperature_trends():
    # the ideal metal gains attraction with temperature (classical term),
    # while prescription a at 1 um loses it: dF/dT > 0 there is the
    # negative-entropy anomaly of the direct Drude zero mode
    F_ideal = [
        free_energy(to_dimensionless(1e-6, T), "ideal", None).total
        for T in (100.0, 300.0, 600.0)
    ]
    assert all(F < 0 for F in F_ideal)
    assert F_ideal[0] > F_ideal[1] > F_ideal[2]
    F_a = [
        free_energy(_al_state(1.0, T), "drude", "a", AL).total
        for T in (100.0, 300.0, 600.0)
    ]
    assert all(F < 0 for F in F_a)
    assert F_a[0] < F_a[1] < F_a[2]


def test_free_energy_compat_errors():
    st = _al_state()
    with pytest.raises(ValueError):
        free_energy(st, "ideal", "a")
    with pytest.raises(ValueError):
        free_energy(st, "drude", None, AL)
    with pytest.raises(ValueError):
        free_energy(st, "drude", "d", AL)
    with pytest.raises(ValueError):
        free_energy(st, "plasma", "a", AL)
    with pytest.raises(ValueError):
        free_energy(st, "plasma", "d", AL)  # gamma_tilde > 0 in state
    with pytest.raises(ValueError):
        free_energy(to_dimensionless(1e-6, 0.0, AL), "drude", "a", AL)
    ideal_st = to_dimensionless(1e-6, 300.0)
    with pytest.raises(ValueError):
        free_energy(ideal_st, "drude", "a", AL)  # infinite omega_p_tilde


def test_small_separation_warning():
    st = _al_state(0.3, 300.0)
    with pytest.warns(SmallSeparationWarning):
        free_energy(st, "drude", "a", AL)
    # plasma model at the same separation stays silent
    import warnings as _w

    with _w.catch_warnings():
        _w.simplefilter("error", SmallSeparationWarning)
        free_energy(_plasma_state(0.3, 300.0), "plasma", "d")


def test_energy_split_and_prescription_independence():
    st = _al_state()
    E_a = energy_at_T_drude(st, AL, None, "a")
    E_c = energy_at_T_drude(st, AL, None, "c")
    # a and c differ only by a T-independent f0, so their energies agree
    assert E_a.total == E_c.total
    assert E_a.zero_frequency == 0.0
    # b carries its own zero-frequency energy
    E_b = energy_at_T_drude(st, AL, None, "b")
    assert E_b.zero_frequency != 0.0
    assert E_b.thermal == E_a.thermal
    for v in (E_a, E_b, E_c):
        assert v.total == pytest.approx(v.zero_frequency + v.thermal, rel=1e-15)


def test_energy_frozen_gamma_matches_frozen_law():
    # energy with a Frozen law (nu = 0) equals the frozen-gamma energy
    st = _al_state()
    law = Frozen(AL.gamma(300.0))
    E_frozen = energy_frozen_gamma(st)
    E_law = energy_at_T_drude(st, AL, law, "a")
    assert E_frozen.total == E_law.total
    with pytest.raises(ValueError):
        energy_frozen_gamma(to_dimensionless(1e-6, 300.0))  # ideal state


def test_energy_plasma_requires_clean_state():
    st = _plasma_state()
    E = energy_at_T_plasma(st)
    assert E.total < 0
    with pytest.raises(ValueError):
        energy_at_T_plasma(_al_state())  # gamma_tilde > 0
    with pytest.raises(ValueError):
        energy_at_T_plasma(to_dimensionless(1e-6, 0.0, AL))


def test_energy_T0_ideal_closed_form():
    # E(a, 0) = -pi^2 hbar c / (720 a^3) for the ideal metal
    a = 1e-6
    st = to_dimensionless(a, 0.0)
    E0 = energy_T0(st, "ideal")
    ref = -math.pi**2 * CODATA.hbar * CODATA.c / (720.0 * a**3)
    assert E0 == pytest.approx(ref, rel=1e-8)
    assert reference_energy_T0(st, "ideal") == abs(E0)


def test_energy_T0_plasma_monotone_toward_ideal():
    a = 1e-6
    ideal = energy_T0(to_dimensionless(a, 0.0), "ideal")
    prev_gap = None
    spec = ConvergenceSpec(rel_tol=1e-9)
    for wp in (1e2, 1e3, 1e4):
        st = to_dimensionless(a, 0.0, AL)
        st = replace(st, omega_p_tilde=wp, gamma_tilde=0.0)
        E0 = energy_T0(st, "plasma", spec)
        gap = abs(E0 - ideal)
        assert E0 > ideal  # finite conductivity weakens the attraction
        if prev_gap is not None:
            assert gap < prev_gap
        prev_gap = gap


def test_energy_T0_drude_close_to_plasma():
    # at fixed gamma the T = 0 energies of drude and plasma differ by the
    # relaxation correction, small for gamma << omega_p
    st = _al_state(1.0, 300.0)
    E_d = energy_T0(st, "drude")
    E_p = energy_T0(replace(st, gamma_tilde=0.0), "plasma")
    assert E_d == pytest.approx(E_p, rel=3e-2)
    assert abs(E_d) < abs(E_p)
    with pytest.raises(ValueError):
        energy_T0(st, "plasma")  # gamma_tilde > 0
    with pytest.raises(ValueError):
        energy_T0(to_dimensionless(1e-6, 0.0), "drude")


def test_evaluate_point_consistency():
    st = _al_state()
    pt = evaluate_point(st, "drude", "b", AL)
    F = free_energy(st, "drude", "b", AL)
    E = energy_at_T_drude(st, AL, None, "b")
    assert pt.free_energy.total == F.total
    assert pt.energy.total == E.total
    S = pt.entropy_from_identity(300.0)
    assert S == pytest.approx((E.total - F.total) / 300.0, rel=1e-15)
    with pytest.raises(ValueError):
        pt.entropy_from_identity(0.0)
    with pytest.raises(ValueError):
        evaluate_point(st, "drude", "a")  # material missing


def test_drude_zero_gamma_equals_plasma_thermal():
    # with gamma = 0 the Drude spectrum is the plasma spectrum; totals then
    # differ only through the prescriptions' f0
    st0 = replace(_al_state(), gamma_tilde=0.0)
    F_d = free_energy(st0, "drude", "a", AL)
    F_p = free_energy(st0, "plasma", "d")
    assert F_d.thermal == pytest.approx(F_p.thermal, rel=1e-13)
    pref = CODATA.k_B * 300.0 / (16.0 * math.pi * st0.a**2)
    f0_d = zero_frequency_term(Prescription.PLASMA, st0).f0
    assert F_p.total - F_d.total == pytest.approx(pref * (f0_d + ZETA3), rel=1e-10)


def test_tighter_tolerance_refines_free_energy():
    st = _al_state()
    loose = free_energy(st, "drude", "a", AL, spec=ConvergenceSpec(rel_tol=1e-6))
    tight = free_energy(st, "drude", "a", AL, spec=ConvergenceSpec(rel_tol=1e-12))
    assert loose.total == pytest.approx(tight.total, rel=1e-6)
    assert tight.report.integrand_evals >= loose.report.integrand_evals

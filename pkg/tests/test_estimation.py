import math

import numpy as np
import pytest

from mzlab.errors import BasisMismatchError, NoInformationError
from mzlab.estimation import (
    SINGULAR,
    ObservableCurve,
    cramer_rao,
    delta_phi_error_propagation,
    is_singular,
    metric_distance,
    qfi_analytic,
    qfi_numeric,
    reference_limits,
    uncertainty_product,
)
from mzlab.fock import TwoModeState, basis_dim, normalize
from mzlab.optics import phase_shift
from mzlab.states import coherent_amplitudes, fock_after_symmetric_bs, noon_state, product_state

from conftest import random_state


def cosine_curve(amplitude, var, step=0.01, n=101):
    phi = np.arange(n) * step
    mean = amplitude * np.cos(phi)
    second = mean**2 + var
    return ObservableCurve(phi, mean, second)


# ----- error propagation ----------------------------------------------------------

def test_delta_phi_against_hand_derivative():
    curve = cosine_curve(amplitude=4.0, var=2.0)
    i = 50
    phi = curve.phi[i]
    # central difference of a sampled cosine is the exact derivative times sinc(step)
    expected = math.sqrt(2.0) / (4.0 * math.sin(phi) * (math.sin(curve.step) / curve.step))
    assert delta_phi_error_propagation(curve, i) == pytest.approx(expected, rel=1e-12)


def test_delta_phi_singular_at_stationary_point():
    curve = cosine_curve(amplitude=1.0, var=0.5, step=0.01, n=9)
    # cos is stationary at phi = 0; index 1 keeps the symmetric difference tiny
    phi = (np.arange(9) - 4) * 0.01
    curve = ObservableCurve(phi, np.cos(phi), np.cos(phi) ** 2 + 0.5)
    assert is_singular(delta_phi_error_propagation(curve, 4))
    assert delta_phi_error_propagation(curve, 4) == SINGULAR


def test_delta_phi_index_and_grid_validation():
    curve = cosine_curve(1.0, 0.1, n=11)
    with pytest.raises(IndexError):
        delta_phi_error_propagation(curve, 0)
    with pytest.raises(IndexError):
        delta_phi_error_propagation(curve, 10)
    with pytest.raises(ValueError):
        ObservableCurve([0.0, 0.1, 0.35], [0, 0, 0], [1, 1, 1])  # non-uniform
    with pytest.raises(ValueError):
        ObservableCurve([0.0, 0.1, 0.2], [1, 1, 1], [0, 0, 0])  # second < mean^2


# ----- Fisher information ----------------------------------------------------------

def test_qfi_analytic_coherent():
    b = coherent_amplitudes(2.0, 44)
    vac = coherent_amplitudes(0.0, 0)
    s = product_state(vac, b, 44)
    rep = qfi_analytic(s, "nb")
    assert rep.f_q == pytest.approx(16.0, abs=1e-8)
    assert rep.delta_phi_min == pytest.approx(0.25, abs=1e-9)
    assert rep.delta_phi_min * math.sqrt(rep.f_q) == pytest.approx(1.0, abs=1e-12)


def test_qfi_analytic_fock_and_noon():
    assert qfi_analytic(fock_after_symmetric_bs(9), "nb").f_q == pytest.approx(9.0, abs=1e-10)
    rep = qfi_analytic(noon_state(4), "jz")
    assert rep.f_q == pytest.approx(16.0, abs=1e-10)
    assert rep.delta_phi_min == pytest.approx(0.25, abs=1e-12)


def test_qfi_generators_agree_on_definite_total():
    # on a fixed-total block, Var(n_b) equals Var((n1-n2)/2)
    for st in (noon_state(4), fock_after_symmetric_bs(7)):
        a = qfi_analytic(st, "jz").f_q
        b = qfi_analytic(st, "nb").f_q
        assert a == pytest.approx(b, abs=1e-10)


def test_qfi_numeric_noon():
    fam = lambda p: phase_shift(noon_state(4), p, "relative")
    rep = qfi_numeric(fam, 0.3, h=1e-4, generator="jz")
    assert rep.f_q == pytest.approx(16.0, abs=1e-6)


def test_qfi_numeric_constant_family():
    s = noon_state(2)
    rep = qfi_numeric(lambda p: s, 0.5, h=1e-4)
    assert rep.f_q == pytest.approx(0.0, abs=1e-12)


def test_qfi_numeric_coherent_unit_amplitude():
    b = coherent_amplitudes(1.0, 30)
    vac = coherent_amplitudes(0.0, 0)
    s = product_state(vac, b, 30)
    fam = lambda p: phase_shift(s, p, "mode_b")
    rep = qfi_numeric(fam, 0.9, h=1e-4, generator="nb")
    assert rep.f_q == pytest.approx(4.0, abs=1e-6)


def test_qfi_numeric_second_order_convergence():
    b = coherent_amplitudes(2.0, 44)
    vac = coherent_amplitudes(0.0, 0)
    coherent_pair = product_state(vac, b, 44)
    families = [
        (lambda p: phase_shift(noon_state(4), p, "relative"), 16.0),
        (lambda p: phase_shift(coherent_pair, p, "mode_b"), 16.0),
    ]
    hs = (1e-2, 1e-3, 1e-4)
    for fam, target in families:
        errs = [abs(qfi_numeric(fam, 0.3, h=h).f_q - target) for h in hs]
        slope = np.polyfit(np.log(hs), np.log(errs), 1)[0]
        assert slope >= 1.8


def test_qfi_numeric_basis_mismatch():
    def fam(p):
        return noon_state(4) if p > 0.5 else noon_state(3)

    with pytest.raises(BasisMismatchError):
        qfi_numeric(fam, 0.5, h=0.2)


def test_cramer_rao():
    assert cramer_rao(16.0) == 0.25
    assert cramer_rao(1.0) == 1.0
    with pytest.raises(NoInformationError):
        cramer_rao(0.0)


# ----- metric cross-check ------------------------------------------------------------

def test_metric_distance_limits():
    # |<s|s>|^2 = 1 - O(eps) in float, so the distance floor is ~sqrt(eps)
    s = random_state(5, seed=42)
    assert metric_distance(s, s) == pytest.approx(0.0, abs=1e-7)
    a = TwoModeState.basis_state(2, 1, 0)
    b = TwoModeState.basis_state(2, 0, 1)
    assert metric_distance(a, b) == 1.0


def test_metric_rate_equals_quarter_fisher():
    h = 1e-4
    fam = lambda p: phase_shift(noon_state(4), p, "relative")
    rate = (metric_distance(fam(0.4), fam(0.4 + h)) / h) ** 2
    assert rate == pytest.approx(4.0**2 / 4, rel=1e-6)  # j^2 = F/4


# ----- reference limits and the uncertainty product ----------------------------------

def test_reference_limits():
    assert reference_limits(16.0) == (0.25, 0.0625)
    assert reference_limits(1.0) == (1.0, 1.0)
    with pytest.raises(ValueError):
        reference_limits(0.0)


def test_uncertainty_product_cases():
    assert uncertainty_product(noon_state(4)) == pytest.approx(1.0, abs=1e-12)
    assert uncertainty_product(fock_after_symmetric_bs(9)) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(NoInformationError):
        uncertainty_product(TwoModeState.basis_state(3, 3, 0))


def test_uncertainty_product_random_states():
    for seed in range(20):
        s = random_state(6, seed=1000 + seed)
        assert uncertainty_product(s) == pytest.approx(1.0, abs=1e-10)


def test_quantum_bound_dominates_error_propagation():
    # delta-phi from counting can only sit above the Cramer-Rao bound
    psi = fock_after_symmetric_bs(9)
    from mzlab.measurement import jz_moments, photon_distribution
    from mzlab.optics import BS2_JY, beam_splitter

    phis = np.linspace(0.05, math.pi - 0.05, 41)
    mean, second = np.empty_like(phis), np.empty_like(phis)
    for i, p in enumerate(phis):
        d = photon_distribution(beam_splitter(phase_shift(psi, float(p), "mode_b"), BS2_JY))
        mean[i], second[i] = jz_moments(d)
    curve = ObservableCurve(phis, mean, second)
    bound = cramer_rao(qfi_analytic(psi, "nb").f_q)
    grid_slack = bound * 1e-3
    for i in range(1, phis.size - 1):
        dp = delta_phi_error_propagation(curve, i)
        assert dp >= bound - grid_slack

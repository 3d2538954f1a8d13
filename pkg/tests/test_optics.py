import math

import numpy as np
import pytest
from scipy.linalg import expm

from mzlab.fock import TwoModeState, basis_dim, block_slice, index_pairs, inner, pair_index
from mzlab.measurement import parity_expectation, photon_distribution
from mzlab.optics import (
    BS1_SYMMETRIC,
    BS2_JX,
    BS2_JY,
    IDENTITY_BS,
    BeamSplitterSpec,
    apply_angular,
    beam_splitter,
    expect_j,
    expect_j2,
    mode_matrix_of,
    phase_shift,
    wigner_d_block,
)
from mzlab.states import fock_after_symmetric_bs, noon_state

from conftest import random_fixed_total_state, random_state

RT2 = math.sqrt(2.0)


# ----- independent matrix oracles ---------------------------------------------

def block_operator(twice_j: int, which: str) -> np.ndarray:
    """Angular momentum matrix on one block, m descending; built from the
    ladder formula independently of the package implementation."""
    j = twice_j / 2
    dim = twice_j + 1
    m = j - np.arange(dim)
    mat = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        mm = m[col]
        if which == "z":
            mat[col, col] = mm
            continue
        cp = math.sqrt(max(j * (j + 1) - mm * (mm + 1), 0.0))  # raise m
        cm = math.sqrt(max(j * (j + 1) - mm * (mm - 1), 0.0))  # lower m
        if col - 1 >= 0:
            mat[col - 1, col] += cp / 2 * (1 if which == "x" else -1j)
        if col + 1 < dim:
            mat[col + 1, col] += cm / 2 * (1 if which == "x" else 1j)
    return mat


# ----- angular momentum action -------------------------------------------------

def test_jz_eigenvalue():
    s = TwoModeState.basis_state(2, 2, 0)
    out = apply_angular(s, "z")
    assert out.amplitude(2, 0) == pytest.approx(1.0)


def test_jx_single_photon():
    s = TwoModeState.basis_state(1, 1, 0)
    out = apply_angular(s, "x")
    assert out.amplitude(0, 1) == pytest.approx(0.5)
    assert out.amplitude(1, 0) == 0.0


def test_casimir_on_fixed_total_states():
    for total in (1, 2, 5, 9):
        s = random_fixed_total_state(total, seed=100 + total)
        j = total / 2
        total_j2 = sum(expect_j2(s, ax) for ax in "xyz")
        assert total_j2 == pytest.approx(j * (j + 1), abs=1e-12)


def test_commutators_on_random_states():
    # <[Ja, Jb]> = i eps_abc <Jc> evaluated by composing operator applications
    for seed in range(6):
        s = random_state(8 + seed % 4, seed=seed)
        for a, b, c in (("x", "y", "z"), ("y", "z", "x"), ("z", "x", "y")):
            ja, jb = apply_angular(s, a), apply_angular(s, b)
            comm = inner(ja, jb) - inner(jb, ja)  # <s|[Ja,Jb]|s>
            assert comm == pytest.approx(1j * expect_j(s, c), abs=1e-10)


def test_expectations_on_fock_family():
    psi = fock_after_symmetric_bs(4)
    st = phase_shift(psi, math.pi / 3, "mode_b")
    assert expect_j(st, "x") == pytest.approx(4 * math.cos(math.pi / 3) / 2, abs=1e-12)
    st = phase_shift(psi, math.pi / 2, "mode_b")
    var = expect_j2(st, "x") - expect_j(st, "x") ** 2
    assert var == pytest.approx(4 * math.sin(math.pi / 2) ** 2 / 4, abs=1e-12)


def test_jz_expectation_twin_photon():
    assert expect_j(TwoModeState.basis_state(2, 1, 1), "z") == 0.0


# ----- phase shifts -------------------------------------------------------------

def test_phase_shift_identity_and_norm():
    s = random_state(6, seed=11)
    assert np.abs(phase_shift(s, 0.0, "relative").amps - s.amps).max() == 0.0
    for conv in ("relative", "mode_b"):
        out = phase_shift(s, 1.234, conv)
        assert abs(out.squared_norm() - s.squared_norm()) <= 1e-14


def test_phase_shift_relative_on_noon():
    phi = 0.77
    out = phase_shift(noon_state(2), phi, "relative")
    # m = +-1 components pick up e^{-+ i phi}
    assert out.amplitude(2, 0) == pytest.approx(np.exp(-1j * phi) / RT2, abs=1e-15)
    assert out.amplitude(0, 2) == pytest.approx(np.exp(+1j * phi) / RT2, abs=1e-15)


def test_phase_shift_mode_b_on_fock_family():
    n = 5
    phi = 0.41
    base = fock_after_symmetric_bs(n)
    out = phase_shift(base, phi, "mode_b")
    for k in range(n + 1):
        expected = base.amplitude(k, n - k) * np.exp(1j * phi * (n - k))
        assert out.amplitude(k, n - k) == pytest.approx(expected, abs=1e-14)


# ----- Wigner blocks ------------------------------------------------------------

def test_wigner_identity_at_zero():
    for tj in (0, 1, 2, 7):
        assert np.array_equal(wigner_d_block(tj, 0.0).entries, np.eye(tj + 1))


def test_wigner_half_rotation():
    d = wigner_d_block(1, math.pi / 2).entries
    assert np.abs(np.abs(d) - 1 / RT2).max() <= 1e-12
    oracle = expm(-1j * (math.pi / 2) * block_operator(1, "y")).real
    assert np.abs(d - oracle).max() <= 1e-13


@pytest.mark.parametrize("tj", [1, 2, 3, 5, 8, 13])
@pytest.mark.parametrize("theta", [0.3, -1.2, math.pi / 2, 2.9])
def test_wigner_matches_exponentiated_generator(tj, theta):
    d = wigner_d_block(tj, theta).entries
    oracle = expm(-1j * theta * block_operator(tj, "y"))
    assert np.abs(oracle.imag).max() <= 1e-12
    assert np.abs(d - oracle.real).max() <= 5e-13


def test_wigner_exact_antidiagonal_at_minus_pi():
    # d(-pi)[i, dim-1-i] = (-1)^i exactly, zero elsewhere
    for tj in (1, 2, 5, 8, 11):
        d = wigner_d_block(tj, -math.pi).entries
        expected = np.zeros((tj + 1, tj + 1))
        for i in range(tj + 1):
            expected[i, tj - i] = (-1.0) ** i
        assert np.array_equal(d, expected)


def test_wigner_orthogonality_to_twice_j_100():
    for tj in range(0, 101):
        d = wigner_d_block(tj, math.pi / 2).entries
        err = np.abs(d @ d.T - np.eye(tj + 1)).max()
        assert err <= 1e-12, f"2j={tj}: {err}"


def test_wigner_cache_returns_same_block():
    a = wigner_d_block(6, 0.321)
    b = wigner_d_block(6, 0.321)
    assert a is b


# ----- beam splitters ------------------------------------------------------------

def test_bs1_single_photon():
    out = beam_splitter(TwoModeState.basis_state(1, 1, 0), BS1_SYMMETRIC)
    assert out.amplitude(1, 0) == pytest.approx(1 / RT2, abs=1e-15)
    assert out.amplitude(0, 1) == pytest.approx(1 / RT2, abs=1e-15)


def test_mode_matrices():
    m = mode_matrix_of(BS1_SYMMETRIC)
    assert np.abs(m - np.array([[1, 1], [1, -1]]) / RT2).max() <= 1e-15
    assert np.array_equal(mode_matrix_of(IDENTITY_BS), np.eye(2))
    # single-photon action of BS2_JY equals the exponentiated y-generator block
    blk = np.empty((2, 2), dtype=complex)
    for col, (n1, n2) in enumerate([(1, 0), (0, 1)]):
        out = beam_splitter(TwoModeState.basis_state(1, n1, n2), BS2_JY)
        blk[0, col] = out.amplitude(1, 0)
        blk[1, col] = out.amplitude(0, 1)
    oracle = expm(1j * (math.pi / 2) * block_operator(1, "y"))
    assert np.abs(blk - oracle).max() <= 1e-14
    # cross-check against the Wigner block of the opposite rotation sense
    assert np.abs(blk - wigner_d_block(1, -math.pi / 2).entries).max() <= 1e-14


def test_non_unitary_matrix_rejected():
    with pytest.raises(ValueError):
        BeamSplitterSpec(np.array([[1.0, 0.0], [0.0, 1.1]]))


def test_beam_splitter_inverse_round_trip():
    for seed in range(4):
        g = np.random.default_rng(800 + seed)
        x = g.normal(size=(2, 2)) + 1j * g.normal(size=(2, 2))
        q, _ = np.linalg.qr(x)
        spec = BeamSplitterSpec(q)
        inv = BeamSplitterSpec(q.conj().T)
        s = random_state(9, seed=300 + seed)
        back = beam_splitter(beam_splitter(s, spec), inv)
        assert np.abs(back.amps - s.amps).max() <= 1e-12


def test_beam_splitter_norm_preservation():
    s = random_state(12, seed=41)
    for spec in (BS1_SYMMETRIC, BS2_JY, BS2_JX):
        out = beam_splitter(s, spec)
        assert abs(out.squared_norm() - s.squared_norm()) <= 1e-12


def test_beam_splitter_matches_generator_oracle():
    """Random passive element: blocks must equal expm of the block generator."""
    g = np.random.default_rng(7)
    h = g.normal(size=(2, 2)) + 1j * g.normal(size=(2, 2))
    h = (h + h.conj().T) / 2
    cmat = expm(1j * h.T)  # creation-operator map of exp(i sum h_kl a_k+ a_l)
    spec = BeamSplitterSpec(cmat.conj())
    n_cap = 6
    s = random_state(n_cap, seed=99)
    out = beam_splitter(s, spec)
    for total in range(n_cap + 1):
        hblk = (
            np.diag(h[0, 0] * (total - np.arange(total + 1)) + h[1, 1] * np.arange(total + 1))
            + np.diag([h[0, 1] * math.sqrt((total - k) * (k + 1)) for k in range(total)], 1)
            + np.diag([h[1, 0] * math.sqrt((k + 1) * (total - k)) for k in range(total)], -1)
        )
        # columns indexed by n2 ascending: (n1, n2) = (total - k, k)
        ublk = expm(1j * hblk)
        sl = block_slice(total)
        assert np.abs(out.amps[sl] - ublk @ s.amps[sl]).max() <= 1e-12


def test_pullback_identity_bs2_jy():
    # <Jz> at the output equals <Jx> before the splitter, including squares
    for seed in range(8):
        s = random_state(4 + seed, seed=500 + seed)
        out = beam_splitter(s, BS2_JY)
        assert expect_j(out, "z") == pytest.approx(expect_j(s, "x"), abs=1e-10)
        assert expect_j2(out, "z") == pytest.approx(expect_j2(s, "x"), abs=1e-10)


def test_parity_pullback_noon_fringe():
    for n in range(1, 11):
        for phi in np.linspace(0.0, math.pi, 17):
            st = beam_splitter(phase_shift(noon_state(n), float(phi), "relative"), BS2_JX)
            par = parity_expectation(photon_distribution(st), "a")
            assert par == pytest.approx(math.cos(n * phi), abs=1e-12)


def test_parity_squared_is_total_probability():
    for seed in range(4):
        s = random_state(6, seed=900 + seed)
        d = photon_distribution(s)
        n1, _ = index_pairs(s.n_cap)
        signs_sq = np.ones_like(d.probs)
        assert math.fsum(d.probs * signs_sq) == d.total()
        assert d.total() == pytest.approx(1.0, abs=1e-12)

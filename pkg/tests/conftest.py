import numpy as np
import pytest

from mzlab.fock import TwoModeState, basis_dim, normalize


def random_state(n_cap: int, seed: int) -> TwoModeState:
    """Normalized two-mode state with iid Gaussian amplitudes."""
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=basis_dim(n_cap)) + 1j * rng.normal(size=basis_dim(n_cap))
    return normalize(TwoModeState(n_cap, amps))


def random_fixed_total_state(total: int, seed: int) -> TwoModeState:
    """Normalized state supported on a single total-photon-number block."""
    rng = np.random.default_rng(seed)
    amps = np.zeros(basis_dim(total), dtype=complex)
    block = rng.normal(size=total + 1) + 1j * rng.normal(size=total + 1)
    amps[-(total + 1):] = block
    return normalize(TwoModeState(total, amps))


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)

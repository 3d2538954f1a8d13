"""Phase-uncertainty pipelines: error propagation and the quantum bound.

Error propagation turns a measured observable curve <O>(phi), <O^2>(phi)
into delta_phi = Delta O / |d<O>/dphi| with a central-difference derivative.
Stationary points of the mean curve return the first-class ``SINGULAR``
marker (serialized as inf) instead of raising: sweeps legitimately cross
them and the output must record the divergence.

The quantum side evaluates the pure-state Fisher information, either from
the variance of the known phase generator (4 Var G) or from a numerical
derivative of the state family, 4 [<dpsi|dpsi> - |<dpsi|psi>|^2]; the
quantum Cramer-Rao bound is then delta_phi >= 1/sqrt(F).  A Hilbert-metric
cross-check is available through ``metric_distance``: the squared rate of
change of dL = sqrt(1 - |<psi|psi'>|^2) along the family equals F/4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from .errors import BasisMismatchError, NoInformationError
from .fock import TwoModeState, index_pairs, inner

SINGULAR = math.inf

GeneratorName = Literal["jz", "nb"]

DERIVATIVE_STEP_DEFAULT = 1e-4


def is_singular(x: float) -> bool:
    return math.isinf(x)


@dataclass(frozen=True)
class ObservableCurve:
    """Mean and second moment of one observable on a uniform phi grid."""

    phi: np.ndarray
    mean: np.ndarray
    second: np.ndarray

    def __post_init__(self):
        phi = np.array(self.phi, dtype=np.float64, copy=True)
        mean = np.array(self.mean, dtype=np.float64, copy=True)
        second = np.array(self.second, dtype=np.float64, copy=True)
        if not (phi.shape == mean.shape == second.shape) or phi.ndim != 1 or phi.size < 3:
            raise ValueError("curve needs three aligned samples at least")
        steps = np.diff(phi)
        if steps.min() <= 0:
            raise ValueError("phi grid must be strictly ascending")
        if (steps.max() - steps.min()) > 1e-9 * max(steps.max(), 1.0):
            raise ValueError("phi grid must be uniform")
        if np.any(second < mean**2 - 1e-10):
            raise ValueError("second moment below squared mean")
        for arr in (phi, mean, second):
            arr.flags.writeable = False
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "second", second)

    @property
    def step(self) -> float:
        return float(self.phi[1] - self.phi[0])


def central_difference(curve: ObservableCurve, at_index: int) -> float:
    if not 1 <= at_index <= curve.phi.size - 2:
        raise IndexError(f"central difference needs interior index, got {at_index}")
    return float((curve.mean[at_index + 1] - curve.mean[at_index - 1]) / (2 * curve.step))


def delta_phi_error_propagation(curve: ObservableCurve, at_index: int) -> float:
    """Error-propagation uncertainty at one grid point, or SINGULAR.

    The derivative counts as vanishing when |d| < 1e-9 max(1, |mean|)/step,
    i.e. when the two-point difference is at the level of rounding noise.
    """
    d = central_difference(curve, at_index)
    m = curve.mean[at_index]
    if abs(d) < 1e-9 * max(1.0, abs(m)) / curve.step:
        return SINGULAR
    var = max(0.0, float(curve.second[at_index] - m * m))
    return math.sqrt(var) / abs(d)


@dataclass(frozen=True)
class FisherReport:
    f_q: float
    delta_phi_min: float
    method: Literal["analytic_variance", "numeric_derivative"]
    generator: GeneratorName


def generator_values(s: TwoModeState, generator: GeneratorName) -> np.ndarray:
    n1, n2 = index_pairs(s.n_cap)
    if generator == "jz":
        return (n1 - n2) / 2.0
    if generator == "nb":
        return n2.astype(np.float64)
    raise ValueError(f"unknown generator {generator!r}")


def qfi_analytic(s_tilde: TwoModeState, generator: GeneratorName) -> FisherReport:
    """F = 4 Var(G) on the probe state, G the diagonal phase generator."""
    v = generator_values(s_tilde, generator)
    p = np.abs(s_tilde.amps) ** 2
    mean = float(math.fsum(p * v))
    second = float(math.fsum(p * v * v))
    f_q = 4.0 * (second - mean * mean)
    dmin = 1.0 / math.sqrt(f_q) if f_q > 0 else math.inf
    return FisherReport(f_q=f_q, delta_phi_min=dmin, method="analytic_variance", generator=generator)


def qfi_numeric(
    family: Callable[[float], TwoModeState],
    phi: float,
    h: float = DERIVATIVE_STEP_DEFAULT,
    generator: GeneratorName = "jz",
) -> FisherReport:
    """Fisher information from a central-difference state derivative.

    Agrees with ``qfi_analytic`` to O(h^2); ``generator`` only labels which
    convention the family follows.
    """
    if h <= 0:
        raise ValueError("step h must be positive")
    plus, minus, center = family(phi + h), family(phi - h), family(phi)
    if plus.n_cap != minus.n_cap or plus.n_cap != center.n_cap:
        raise BasisMismatchError("family changed its basis across the derivative stencil")
    dpsi = (plus.amps - minus.amps) / (2 * h)
    norm2 = float(np.vdot(dpsi, dpsi).real)
    overlap = complex(np.vdot(dpsi, center.amps))
    f_q = 4.0 * (norm2 - abs(overlap) ** 2)
    dmin = 1.0 / math.sqrt(f_q) if f_q > 0 else math.inf
    return FisherReport(f_q=f_q, delta_phi_min=dmin, method="numeric_derivative", generator=generator)


def cramer_rao(f_q: float) -> float:
    if f_q <= 0:
        raise NoInformationError(f"Fisher information must be positive, got {f_q}")
    return 1.0 / math.sqrt(f_q)


def metric_distance(a: TwoModeState, b: TwoModeState) -> float:
    """Projective distance sqrt(1 - |<a|b>|^2) between normalized states."""
    ov = abs(inner(a, b)) ** 2
    return math.sqrt(max(0.0, 1.0 - ov))


def reference_limits(n_total: float) -> tuple[float, float]:
    """(shot-noise 1/sqrt(N), Heisenberg 1/N) reference uncertainties."""
    if n_total <= 0:
        raise ValueError("photon resource must be positive")
    return 1.0 / math.sqrt(n_total), 1.0 / n_total


def uncertainty_product(s_tilde: TwoModeState) -> float:
    """delta_phi_min * 2 Delta m; identically 1 whenever Var(Jz) > 0."""
    rep = qfi_analytic(s_tilde, "jz")
    if rep.f_q <= 0:
        raise NoInformationError("state carries no half-difference variance, product undefined")
    two_dm = 2.0 * math.sqrt(rep.f_q / 4.0)
    return cramer_rao(rep.f_q) * two_dm

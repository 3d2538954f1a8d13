"""The interferometer case studies wired end to end, with CSV emission.

Each scenario builds its probe state just after the first splitter, applies
the arm phase phi over a uniform grid, reads out one observable, and
reports side by side: the error-propagation uncertainty (central
difference on the grid), the Fisher information of the probe family and
its Cramer-Rao bound, and an independently evaluated closed-form
delta-phi column where a textbook expression exists.  The engine never
consumes the closed forms; they are emitted purely so tests and users can
check one column against the other.

Observable conventions (recorded per row in the ``convention`` column):

* ``jz_half``   - half photon-number difference (l1 - l2)/2 of the output
                  counts; used by the coherent and Fock scenarios.
* ``jx_half``   - the exchange observable (a+ b + b+ a)/2 evaluated before
                  the second splitter; equal to jz_half at the output by
                  the pullback identity.  Used by the twin-Fock scenario.
* ``jx_pair``   - the unhalved exchange observable a+ b + b+ a.  The
                  squeezed scenario reports this one because the standard
                  results for the coherent (x) squeezed-vacuum input (mean
                  signal cos(phi) [|alpha|^2 - sinh^2 r]) are written for
                  the pair form; delta-phi is scale invariant either way.
* ``parity_a``  - photon-number parity (-1)^l1 of output port a.

The phase bookkeeping is ``mode_b`` (phase accumulates on arm b) for the
coherent, Fock, twin-Fock and squeezed scenarios and ``relative`` (the
half-difference generator) for the NOON scenario.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from typing import Callable

import numpy as np

from .errors import ConfigError
from .estimation import (
    SINGULAR,
    FisherReport,
    ObservableCurve,
    central_difference,
    cramer_rao,
    delta_phi_error_propagation,
    qfi_analytic,
    qfi_numeric,
    metric_distance,
)
from .fock import TwoModeState, normalize
from .measurement import (
    CountHistogram,
    ParityEstimate,
    lossy_distribution,
    parity_expectation,
    photon_distribution,
    jz_moments,
    parity_from_histogram,
    sample_counts,
)
from .optics import BS1_SYMMETRIC, BS2_JX, BS2_JY, beam_splitter, expect_j, expect_j2, phase_shift
from .states import (
    SqueezeParams,
    auto_coherent,
    auto_squeezed,
    fock_after_symmetric_bs,
    noon_state,
    product_state,
    twin_fock,
)

SCENARIO_NAMES = ("coherent", "fock", "twin_fock", "squeezed", "noon")


@dataclass
class ScenarioConfig:
    scenario: str = "fock"
    # coherent inputs |alpha| e^{i theta1}, |beta| e^{i theta2}
    alpha_mag: float = 2.0
    beta_mag: float = 2.0
    theta1: float = 0.0
    theta2: float = 0.0
    # photon number for fock / twin_fock / noon
    n: int = 4
    # squeezed scenario: alpha = |alpha| e^{i f}, zeta = r e^{i theta}
    r: float = 1.0
    theta: float = 0.0
    f: float | None = None  # None -> (pi - theta)/2, the optimal-phase choice
    # NOON sampling
    eta_a: float = 1.0
    eta_b: float = 1.0
    trials: int = 100_000
    seed: int = 0
    post_select: bool = False
    sample_phi: float | None = None  # None -> pi/(3 n)
    # grid and numerics
    phi_start: float = 0.0
    phi_stop: float = math.pi
    phi_steps: int = 181
    epsilon_trunc: float = 1e-10
    n_cap: int | None = None

    def validate(self) -> "ScenarioConfig":
        if self.scenario not in SCENARIO_NAMES:
            raise ConfigError(f"unknown scenario {self.scenario!r}; pick one of {SCENARIO_NAMES}")
        if self.phi_steps < 3:
            raise ConfigError("phi grid needs at least 3 steps")
        if not self.phi_stop > self.phi_start:
            raise ConfigError("phi_stop must exceed phi_start")
        if not 0.0 < self.epsilon_trunc <= 1e-6:
            raise ConfigError("epsilon_trunc must lie in (0, 1e-6]")
        for tag, eta in (("eta_a", self.eta_a), ("eta_b", self.eta_b)):
            if not 0.0 <= eta <= 1.0:
                raise ConfigError(f"{tag} must lie in [0, 1]")
        if self.scenario in ("fock", "twin_fock", "noon") and self.n < 1:
            raise ConfigError(f"scenario {self.scenario} needs n >= 1")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.seed < 0:
            raise ConfigError("seed must be a nonnegative integer")
        if self.r < 0:
            raise ConfigError("squeezing magnitude r must be >= 0")
        if self.n_cap is not None and self.n_cap < 0:
            raise ConfigError("n_cap must be >= 0")
        if self.alpha_mag < 0 or self.beta_mag < 0:
            raise ConfigError("magnitudes must be >= 0")
        return self

    def phi_grid(self) -> np.ndarray:
        return np.linspace(self.phi_start, self.phi_stop, self.phi_steps)

    def f_effective(self) -> float:
        return (math.pi - self.theta) / 2 if self.f is None else self.f


@dataclass(frozen=True)
class SweepRow:
    phi: float
    mean_o: float
    second_o: float
    var_o: float
    d_mean_dphi: float | None  # None at the grid endpoints
    delta_phi: float  # SINGULAR (inf) marks stationary points
    qfi: float
    crb: float
    closed_form_delta_phi: float | None  # None where no closed form applies
    convention: str


@dataclass(frozen=True)
class SweepTable:
    scenario: str
    rows: tuple[SweepRow, ...]
    annotation: str = ""

    def column(self, name: str) -> list:
        return [getattr(r, name) for r in self.rows]

    def write_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("phi,mean_o,second_o,var_o,d_mean_dphi,delta_phi,qfi,crb,closed_form_delta_phi,convention\n")
            for r in self.rows:
                cells = [
                    _fmt(r.phi),
                    _fmt(r.mean_o),
                    _fmt(r.second_o),
                    _fmt(r.var_o),
                    _fmt(r.d_mean_dphi),
                    _fmt(r.delta_phi),
                    _fmt(r.qfi),
                    _fmt(r.crb),
                    _fmt(r.closed_form_delta_phi),
                    r.convention,
                ]
                fh.write(",".join(cells) + "\n")


def _fmt(x) -> str:
    if x is None:
        return ""
    if math.isinf(x):
        return "inf"
    return f"{x:.17g}"


def _assemble_table(
    scenario: str,
    phis: np.ndarray,
    mean: np.ndarray,
    second: np.ndarray,
    fisher: FisherReport,
    closed: list[float | None],
    convention: str,
    annotation: str = "",
) -> SweepTable:
    curve = ObservableCurve(phis, mean, second)
    crb = fisher.delta_phi_min
    rows = []
    last = phis.size - 1
    for i, phi in enumerate(phis):
        interior = 1 <= i <= last - 1
        d = central_difference(curve, i) if interior else None
        dp = delta_phi_error_propagation(curve, i) if interior else SINGULAR
        var = max(0.0, second[i] - mean[i] ** 2)
        rows.append(
            SweepRow(
                phi=float(phi),
                mean_o=float(mean[i]),
                second_o=float(second[i]),
                var_o=float(var),
                d_mean_dphi=d,
                delta_phi=dp,
                qfi=fisher.f_q,
                crb=crb,
                closed_form_delta_phi=closed[i],
                convention=convention,
            )
        )
    return SweepTable(scenario=scenario, rows=tuple(rows), annotation=annotation)


# --------------------------------------------------------------------------
# probe construction
# --------------------------------------------------------------------------


def coherent_probe(cfg: ScenarioConfig) -> TwoModeState:
    """Post-splitter coherent pair |alpha>|beta> on a verified basis."""
    a = auto_coherent(cfg.alpha_mag * np.exp(1j * cfg.theta1), cfg.epsilon_trunc)
    b = auto_coherent(cfg.beta_mag * np.exp(1j * cfg.theta2), cfg.epsilon_trunc)
    n_cap = cfg.n_cap if cfg.n_cap is not None else a.cutoff + b.cutoff
    return product_state(a, b, n_cap, eps_trunc=cfg.epsilon_trunc)


def squeezed_probe(cfg: ScenarioConfig) -> TwoModeState:
    """Coherent (x) squeezed-vacuum input pushed through the 50:50 splitter."""
    if cfg.alpha_mag**2 < 8 * math.sinh(cfg.r) ** 2:
        raise ConfigError(
            f"squeezed scenario requires |alpha|^2 >= 8 sinh(r)^2; got {cfg.alpha_mag**2:.3g} vs {8 * math.sinh(cfg.r) ** 2:.3g}"
        )
    a = auto_coherent(cfg.alpha_mag * np.exp(1j * cfg.f_effective()), cfg.epsilon_trunc)
    b = auto_squeezed(SqueezeParams(cfg.r, cfg.theta), cfg.epsilon_trunc)
    n_cap = cfg.n_cap if cfg.n_cap is not None else a.cutoff + b.cutoff
    psi0 = product_state(a, b, n_cap, eps_trunc=cfg.epsilon_trunc)
    return beam_splitter(psi0, BS1_SYMMETRIC)


# --------------------------------------------------------------------------
# scenario runners
# --------------------------------------------------------------------------


def run_scenario_coherent(cfg: ScenarioConfig) -> SweepTable:
    cfg.validate()
    psi = coherent_probe(cfg)
    phis = cfg.phi_grid()
    mean = np.empty_like(phis)
    second = np.empty_like(phis)
    for i, phi in enumerate(phis):
        out = beam_splitter(phase_shift(psi, float(phi), "mode_b"), BS2_JY)
        mean[i], second[i] = jz_moments(photon_distribution(out))
    fisher = qfi_analytic(psi, "nb")
    amp = cfg.alpha_mag * cfg.beta_mag
    dc = cfg.theta2 - cfg.theta1
    closed: list[float | None] = []
    for phi in phis:
        s = abs(math.sin(phi + dc))
        if amp == 0.0:
            closed.append(math.inf)
        else:
            num = math.sqrt(cfg.alpha_mag**2 + cfg.beta_mag**2) / (2 * amp)
            closed.append(math.inf if s == 0.0 else num / s)
    return _assemble_table("coherent", phis, mean, second, fisher, closed, "mode_b/jz_half")


def run_scenario_fock(cfg: ScenarioConfig) -> SweepTable:
    cfg.validate()
    if cfg.n < 1:
        raise ConfigError("fock scenario needs n >= 1")
    psi = fock_after_symmetric_bs(cfg.n)
    phis = cfg.phi_grid()
    mean = np.empty_like(phis)
    second = np.empty_like(phis)
    for i, phi in enumerate(phis):
        out = beam_splitter(phase_shift(psi, float(phi), "mode_b"), BS2_JY)
        mean[i], second[i] = jz_moments(photon_distribution(out))
    fisher = qfi_analytic(psi, "nb")
    root = 1.0 / math.sqrt(cfg.n)
    closed = [root if abs(math.sin(phi)) > 1e-12 else None for phi in phis]
    return _assemble_table("fock", phis, mean, second, fisher, closed, "mode_b/jz_half")


def run_scenario_twin_fock(cfg: ScenarioConfig) -> SweepTable:
    cfg.validate()
    psi = beam_splitter(twin_fock(cfg.n), BS1_SYMMETRIC)
    phis = cfg.phi_grid()
    mean = np.empty_like(phis)
    second = np.empty_like(phis)
    for i, phi in enumerate(phis):
        st = phase_shift(psi, float(phi), "mode_b")
        mean[i] = expect_j(st, "x")
        second[i] = expect_j2(st, "x")
    fisher = qfi_analytic(psi, "nb")
    closed: list[float | None] = [None] * phis.size
    return _assemble_table(
        "twin_fock",
        phis,
        mean,
        second,
        fisher,
        closed,
        "mode_b/jx_half",
        annotation="number-difference readout carries no first-order signal for a twin-Fock input",
    )


def run_scenario_squeezed(cfg: ScenarioConfig) -> SweepTable:
    cfg.validate()
    psi = squeezed_probe(cfg)
    phis = cfg.phi_grid()
    mean = np.empty_like(phis)
    second = np.empty_like(phis)
    for i, phi in enumerate(phis):
        st = phase_shift(psi, float(phi), "mode_b")
        # reported observable is the unhalved pair exchange a+ b + b+ a
        mean[i] = 2.0 * expect_j(st, "x")
        second[i] = 4.0 * expect_j2(st, "x")
    fisher = qfi_analytic(psi, "nb")
    opt = math.exp(-cfg.r) / cfg.alpha_mag if cfg.alpha_mag > 0 else None
    closed = [opt if abs(math.cos(phi)) <= 1e-9 else None for phi in phis]
    return _assemble_table("squeezed", phis, mean, second, fisher, closed, "mode_b/jx_pair")


def noon_output_distribution(n: int, phi: float):
    """Exact output count distribution of the NOON probe at one phase."""
    st = beam_splitter(phase_shift(noon_state(n), phi, "relative"), BS2_JX)
    return photon_distribution(st)


def run_scenario_noon(cfg: ScenarioConfig) -> SweepTable:
    cfg.validate()
    phis = cfg.phi_grid()
    mean = np.empty_like(phis)
    second = np.empty_like(phis)
    for i, phi in enumerate(phis):
        d = noon_output_distribution(cfg.n, float(phi))
        mean[i] = parity_expectation(d, "a")
        second[i] = d.total()  # parity squares to one outcome by outcome
    fisher = qfi_analytic(phase_shift(noon_state(cfg.n), 0.0, "relative"), "jz")
    inv = 1.0 / cfg.n
    closed = [inv if abs(math.sin(cfg.n * phi)) > 1e-12 else None for phi in phis]
    return _assemble_table("noon", phis, mean, second, fisher, closed, "relative/parity_a")


@dataclass(frozen=True)
class NoonSamplingReport:
    """Monte Carlo parity estimation with loss and optional post-selection."""

    n: int
    phi: float
    eta_a: float
    eta_b: float
    trials: int
    seed: int
    exact_parity_lossless: float
    exact_parity_lossy: float
    unfiltered: ParityEstimate
    filtered: ParityEstimate | None
    histogram: CountHistogram

    def lines(self) -> list[str]:
        out = [
            f"scenario = noon  n = {self.n}",
            f"phi = {_fmt(self.phi)}",
            f"eta_a = {_fmt(self.eta_a)}  eta_b = {_fmt(self.eta_b)}  trials = {self.trials}  seed = {self.seed}",
            f"exact_parity_lossless = {_fmt(self.exact_parity_lossless)}",
            f"exact_parity_lossy = {_fmt(self.exact_parity_lossy)}",
            f"unfiltered_estimate = {_fmt(self.unfiltered.estimate)}  stderr = {_fmt(self.unfiltered.stderr)}",
        ]
        if self.filtered is not None:
            out.append(
                f"filtered_estimate = {_fmt(self.filtered.estimate)}  stderr = {_fmt(self.filtered.stderr)}"
                f"  kept_fraction = {_fmt(self.filtered.kept_fraction)}"
            )
        return out


def run_noon_sampling(cfg: ScenarioConfig) -> NoonSamplingReport:
    cfg.validate()
    if cfg.scenario != "noon":
        raise ConfigError("count sampling is defined for the noon scenario")
    phi = cfg.sample_phi if cfg.sample_phi is not None else math.pi / (3 * cfg.n)
    ideal = noon_output_distribution(cfg.n, phi)
    lossy = lossy_distribution(ideal, cfg.eta_a, cfg.eta_b)
    hist = replace(sample_counts(lossy, cfg.trials, cfg.seed), loss=(cfg.eta_a, cfg.eta_b))
    filtered = parity_from_histogram(hist, post_select_total=cfg.n) if cfg.post_select else None
    return NoonSamplingReport(
        n=cfg.n,
        phi=phi,
        eta_a=cfg.eta_a,
        eta_b=cfg.eta_b,
        trials=cfg.trials,
        seed=cfg.seed,
        exact_parity_lossless=parity_expectation(ideal, "a"),
        exact_parity_lossy=parity_expectation(lossy, "a"),
        unfiltered=parity_from_histogram(hist, post_select_total=None),
        filtered=filtered,
        histogram=hist,
    )


RUNNERS: dict[str, Callable[[ScenarioConfig], SweepTable]] = {
    "coherent": run_scenario_coherent,
    "fock": run_scenario_fock,
    "twin_fock": run_scenario_twin_fock,
    "squeezed": run_scenario_squeezed,
    "noon": run_scenario_noon,
}


def run_sweep(cfg: ScenarioConfig) -> SweepTable:
    cfg.validate()
    return RUNNERS[cfg.scenario](cfg)


# --------------------------------------------------------------------------
# Fisher-information comparison table and metric cross-check
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class QfiRow:
    case: str
    f_q: float
    f_q_numeric: float
    delta_phi_min: float
    delta_phi_error_prop: float
    ratio: float
    note: str = ""


def _error_prop_at(pipeline: Callable[[float], tuple[float, float]], center: float, step: float = 1e-4) -> float:
    """Error-propagation delta-phi from a 5-point fine grid around ``center``."""
    phis = center + step * np.arange(-2.0, 3.0)
    pairs = [pipeline(float(p)) for p in phis]
    curve = ObservableCurve(phis, [m for m, _ in pairs], [s for _, s in pairs])
    return delta_phi_error_propagation(curve, 2)


def _counting_pipeline(psi: TwoModeState) -> Callable[[float], tuple[float, float]]:
    def at(phi: float) -> tuple[float, float]:
        out = beam_splitter(phase_shift(psi, phi, "mode_b"), BS2_JY)
        return jz_moments(photon_distribution(out))

    return at


def run_qfi_table(
    beta_mag: float = 2.0,
    fock_n: int = 9,
    noon_n: int = 4,
    epsilon_trunc: float = 1e-10,
    h: float = 1e-4,
) -> list[QfiRow]:
    """One row per probe family: analytic and numeric Fisher information,
    the Cramer-Rao bound, and the best error-propagation uncertainty."""
    rows = []

    # coherent pair with equal magnitudes; phase accumulates on arm b only
    ccfg = ScenarioConfig(scenario="coherent", alpha_mag=beta_mag, beta_mag=beta_mag, epsilon_trunc=epsilon_trunc)
    psi_c = coherent_probe(ccfg)
    fam_c = lambda p: phase_shift(psi_c, p, "mode_b")
    f_an = qfi_analytic(psi_c, "nb")
    f_num = qfi_numeric(fam_c, 0.7, h, generator="nb")
    dp = _error_prop_at(_counting_pipeline(psi_c), math.pi / 2)
    rows.append(
        QfiRow(
            case=f"coherent beta={beta_mag:g}",
            f_q=f_an.f_q,
            f_q_numeric=f_num.f_q,
            delta_phi_min=f_an.delta_phi_min,
            delta_phi_error_prop=dp,
            ratio=dp / f_an.delta_phi_min,
            note="number-difference readout sits sqrt(2) above the one-arm bound",
        )
    )

    psi_f = fock_after_symmetric_bs(fock_n)
    fam_f = lambda p: phase_shift(psi_f, p, "mode_b")
    f_an = qfi_analytic(psi_f, "nb")
    f_num = qfi_numeric(fam_f, 0.7, h, generator="nb")
    dp = _error_prop_at(_counting_pipeline(psi_f), math.pi / 2)
    rows.append(
        QfiRow(
            case=f"fock n={fock_n}",
            f_q=f_an.f_q,
            f_q_numeric=f_num.f_q,
            delta_phi_min=f_an.delta_phi_min,
            delta_phi_error_prop=dp,
            ratio=dp / f_an.delta_phi_min,
        )
    )

    psi_n = noon_state(noon_n)
    fam_n = lambda p: phase_shift(psi_n, p, "relative")
    f_an = qfi_analytic(psi_n, "jz")
    f_num = qfi_numeric(fam_n, 0.4, h, generator="jz")

    def parity_pipeline(phi: float) -> tuple[float, float]:
        d = noon_output_distribution(noon_n, phi)
        return parity_expectation(d, "a"), d.total()

    dp = _error_prop_at(parity_pipeline, math.pi / (2 * noon_n), step=1e-5)
    rows.append(
        QfiRow(
            case=f"noon n={noon_n}",
            f_q=f_an.f_q,
            f_q_numeric=f_num.f_q,
            delta_phi_min=f_an.delta_phi_min,
            delta_phi_error_prop=dp,
            ratio=dp / f_an.delta_phi_min,
        )
    )
    return rows


def write_qfi_table_csv(rows: list[QfiRow], path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("case,f_q,f_q_numeric,delta_phi_min,delta_phi_error_prop,ratio,note\n")
        for r in rows:
            fh.write(
                f"{r.case},{_fmt(r.f_q)},{_fmt(r.f_q_numeric)},{_fmt(r.delta_phi_min)},"
                f"{_fmt(r.delta_phi_error_prop)},{_fmt(r.ratio)},{r.note}\n"
            )


@dataclass(frozen=True)
class MetricRow:
    family: str
    phi: float
    dl_dphi_squared: float
    quarter_f_q: float
    rel_error: float


def run_metric_check(beta_mag: float = 2.0, noon_n: int = 4, h: float = 1e-4, epsilon_trunc: float = 1e-10) -> list[MetricRow]:
    """Rate of change of the projective distance against F/4 per family."""
    rows = []
    ccfg = ScenarioConfig(scenario="coherent", alpha_mag=beta_mag, beta_mag=beta_mag, epsilon_trunc=epsilon_trunc)
    psi_c = normalize(coherent_probe(ccfg))
    fam_c = lambda p: phase_shift(psi_c, p, "mode_b")
    quarter = qfi_analytic(psi_c, "nb").f_q / 4
    for phi in (0.3, 1.1, 2.0):
        rate = (metric_distance(fam_c(phi), fam_c(phi + h)) / h) ** 2
        rows.append(MetricRow(f"coherent beta={beta_mag:g}", phi, rate, quarter, abs(rate - quarter) / quarter))
    psi_n = noon_state(noon_n)
    fam_n = lambda p: phase_shift(psi_n, p, "relative")
    quarter = qfi_analytic(psi_n, "jz").f_q / 4
    for phi in (0.3, 1.1, 2.0):
        rate = (metric_distance(fam_n(phi), fam_n(phi + h)) / h) ** 2
        rows.append(MetricRow(f"noon n={noon_n}", phi, rate, quarter, abs(rate - quarter) / quarter))
    return rows


def write_metric_csv(rows: list[MetricRow], path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("family,phi,dl_dphi_squared,quarter_f_q,rel_error\n")
        for r in rows:
            fh.write(f"{r.family},{_fmt(r.phi)},{_fmt(r.dl_dphi_squared)},{_fmt(r.quarter_f_q)},{_fmt(r.rel_error)}\n")


# --------------------------------------------------------------------------
# flat key = value config files
# --------------------------------------------------------------------------

_CONFIG_FIELDS: dict[str, object] = {
    "scenario": str,
    "alpha_mag": float,
    "beta_mag": float,
    "theta1": float,
    "theta2": float,
    "n": int,
    "r": float,
    "theta": float,
    "f": float,
    "eta_a": float,
    "eta_b": float,
    "trials": int,
    "seed": int,
    "post_select": None,  # bool, handled explicitly
    "sample_phi": float,
    "phi_start": float,
    "phi_stop": float,
    "phi_steps": int,
    "epsilon_trunc": float,
    "n_cap": int,
}

_BOOL_WORDS = {"true": True, "false": False, "1": True, "0": False, "yes": True, "no": False}


def parse_config_text(text: str, source: str = "<config>") -> dict:
    """Flat ``key = value`` lines; '#' comments; unknown keys are rejected."""
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if key not in _CONFIG_FIELDS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        if key == "post_select":
            if val.lower() not in _BOOL_WORDS:
                raise ConfigError(f"{source}:{lineno}: expected a boolean, got {val!r}")
            values[key] = _BOOL_WORDS[val.lower()]
            continue
        conv = _CONFIG_FIELDS[key]
        try:
            values[key] = conv(val)
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: bad value for {key}: {val!r}") from exc
    return values


def load_config_file(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_config_text(fh.read(), source=str(path))
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc


def config_lines(cfg: ScenarioConfig) -> list[str]:
    """Serialize the effective config; reloading reproduces identical runs."""
    out = []
    for fld in fields(cfg):
        val = getattr(cfg, fld.name)
        if val is None:
            continue
        if isinstance(val, bool):
            text = "true" if val else "false"
        elif isinstance(val, float):
            text = _fmt(val)
        else:
            text = str(val)
        out.append(f"{fld.name} = {text}")
    return out


def config_from_values(values: dict) -> ScenarioConfig:
    cfg = ScenarioConfig()
    for key, val in values.items():
        if key not in _CONFIG_FIELDS:
            raise ConfigError(f"unknown config key {key!r}")
        setattr(cfg, key, val)
    return cfg.validate()

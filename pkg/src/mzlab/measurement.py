"""Photon counting at the output plane: exact distributions, loss, sampling.

Loss is modeled as binomial thinning of the ideal joint count distribution
(transmissivity eta per mode).  A beam-splitter loss channel changes the
Fock-diagonal probabilities by exactly this binomial convolution, and photon
counting reads only those diagonals, so for counting observables the model
is exact while avoiding density matrices entirely.

Monte Carlo sampling draws i.i.d. counts by inverse CDF over the outcomes
ordered by (total, l1).  Trials are split into fixed-size chunks of 2**16,
chunk c seeded from (seed, c); the merged histogram is therefore identical
however the chunks are distributed over workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Union

import numpy as np

from .errors import FilterExhaustedError
from .fock import TwoModeState, index_pairs, pair_index
from .numerics import binomial_thinning_matrix

OutputMode = Literal["a", "b"]

_SAMPLE_CHUNK = 1 << 16


@dataclass(frozen=True)
class CountDistribution:
    """Exact joint probabilities over photon counts (l1, l2), l1+l2 <= n_cap."""

    n_cap: int
    probs: np.ndarray = field(repr=False)

    def __post_init__(self):
        p = np.array(self.probs, dtype=np.float64, copy=True)
        if p.min() < -1e-15:
            raise ValueError("negative probability")
        np.clip(p, 0.0, None, out=p)
        p.flags.writeable = False
        object.__setattr__(self, "probs", p)

    def prob(self, l1: int, l2: int) -> float:
        return float(self.probs[pair_index(l1, l2)])

    def total(self) -> float:
        return float(math.fsum(self.probs))


@dataclass(frozen=True)
class CountHistogram:
    """Sampled counts; Sum(counts) == trials."""

    counts: dict[tuple[int, int], int]
    trials: int
    seed: int
    loss: tuple[float, float] = (1.0, 1.0)

    def __post_init__(self):
        object.__setattr__(self, "counts", dict(self.counts))
        if sum(self.counts.values()) != self.trials:
            raise ValueError("histogram counts do not add up to the number of trials")


@dataclass(frozen=True)
class ParityEstimate:
    estimate: float
    stderr: float
    kept_fraction: float


def photon_distribution(s: TwoModeState) -> CountDistribution:
    """probs(l1, l2) = |amplitude(l1, l2)|^2."""
    return CountDistribution(s.n_cap, np.abs(s.amps) ** 2)


def lossy_distribution(d: CountDistribution, eta_a: float, eta_b: float) -> CountDistribution:
    """Push the distribution through independent transmissivity-eta channels.

    probs'(k1,k2) = sum_{l1>=k1, l2>=k2} probs(l1,l2) B(k1; l1, eta_a) B(k2; l2, eta_b).
    Total probability is preserved (the thinning matrices are column
    stochastic); thinning only lowers totals, so the support stays inside
    the same truncated basis.
    """
    n1, n2 = index_pairs(d.n_cap)
    rect = np.zeros((d.n_cap + 1, d.n_cap + 1))
    rect[n1, n2] = d.probs
    ta = binomial_thinning_matrix(d.n_cap, eta_a)
    tb = binomial_thinning_matrix(d.n_cap, eta_b)
    rect = ta @ rect @ tb.T
    return CountDistribution(d.n_cap, rect[n1, n2])


def _sampling_order(d: CountDistribution) -> np.ndarray:
    n1, n2 = index_pairs(d.n_cap)
    return np.lexsort((n1, n1 + n2))


def sample_counts(d: CountDistribution, trials: int, seed: int) -> CountHistogram:
    """Draw ``trials`` i.i.d. outcomes; reproducible and chunk-parallelizable."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    order = _sampling_order(d)
    cdf = np.cumsum(d.probs[order])
    total = cdf[-1]
    cdf /= total  # distribution may carry a truncation deficit ~1e-12
    occupancy = np.zeros(d.probs.size, dtype=np.int64)
    done = 0
    chunk_index = 0
    while done < trials:
        n = min(_SAMPLE_CHUNK, trials - done)
        rng = np.random.default_rng(np.random.SeedSequence([seed, chunk_index]))
        hits = np.searchsorted(cdf, rng.random(n), side="right")
        occupancy += np.bincount(np.minimum(hits, cdf.size - 1), minlength=cdf.size)
        done += n
        chunk_index += 1
    n1, n2 = index_pairs(d.n_cap)
    counts = {}
    for pos in np.nonzero(occupancy)[0]:
        i = order[pos]
        counts[(int(n1[i]), int(n2[i]))] = int(occupancy[pos])
    return CountHistogram(counts=counts, trials=trials, seed=seed)


def jz_moments(src: Union[CountDistribution, CountHistogram]) -> tuple[float, float]:
    """Moments of the half-difference (l1 - l2)/2 of the output counts."""
    if isinstance(src, CountDistribution):
        n1, n2 = index_pairs(src.n_cap)
        v = (n1 - n2) / 2.0
        p = src.probs
        return float(math.fsum(p * v)), float(math.fsum(p * v * v))
    if not src.counts:
        raise ValueError("empty histogram")
    w = 1.0 / src.trials
    mean = math.fsum(c * w * (l1 - l2) / 2.0 for (l1, l2), c in src.counts.items())
    second = math.fsum(c * w * ((l1 - l2) / 2.0) ** 2 for (l1, l2), c in src.counts.items())
    return mean, second


def parity_expectation(d: CountDistribution, mode: OutputMode = "a") -> float:
    """<(-1)^l> on the chosen output mode, from the exact distribution."""
    n1, n2 = index_pairs(d.n_cap)
    l = n1 if mode == "a" else n2
    signs = np.where(l % 2 == 0, 1.0, -1.0)
    return float(math.fsum(d.probs * signs))


def parity_squared_expectation(d: CountDistribution, mode: OutputMode = "a") -> float:
    """<((-1)^l)^2>; equals the total probability outcome by outcome."""
    return d.total()


def parity_from_histogram(h: CountHistogram, post_select_total: int | None = None) -> ParityEstimate:
    """Sample parity of mode a, optionally post-selecting on l1 + l2.

    The standard error uses the plug-in sample variance 1 - estimate^2
    (parity squares to one), which remains valid after post-selection.
    """
    if not h.counts:
        raise ValueError("empty histogram")
    kept = 0
    acc = 0
    for (l1, l2), c in h.counts.items():
        if post_select_total is not None and l1 + l2 != post_select_total:
            continue
        kept += c
        acc += c if l1 % 2 == 0 else -c
    if kept == 0:
        raise FilterExhaustedError(f"post-selection on total={post_select_total} kept no events")
    estimate = acc / kept
    var = max(0.0, 1.0 - estimate * estimate)
    return ParityEstimate(estimate=estimate, stderr=math.sqrt(var / kept), kept_fraction=kept / h.trials)


def histogram_rows(h: CountHistogram) -> list[tuple[int, int, int]]:
    """(l1, l2, count) rows sorted by (l1 + l2, l1)."""
    return sorted(((l1, l2, c) for (l1, l2), c in h.counts.items()), key=lambda r: (r[0] + r[1], r[0]))


def write_histogram_csv(h: CountHistogram, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("l1,l2,count\n")
        for l1, l2, c in histogram_rows(h):
            fh.write(f"{l1},{l2},{c}\n")

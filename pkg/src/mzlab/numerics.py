"""Shared numeric helpers: log-factorials and binomial weights.

Factorials overflow float64 at 171!, so every combinatorial factor in the
package goes through a precomputed log-factorial table and is exponentiated
only after the additions/cancellations are done in log space.
"""

from __future__ import annotations

import math

import numpy as np

_LF_TABLE = np.zeros(1)  # log(0!) = 0


def log_factorials(n_max: int) -> np.ndarray:
    """Read-only view of [log(0!), ..., log(n_max!)], grown on demand."""
    global _LF_TABLE
    if n_max >= _LF_TABLE.size:
        hi = max(n_max + 1, 2 * _LF_TABLE.size)
        t = np.concatenate([_LF_TABLE, np.cumsum(np.log(np.arange(_LF_TABLE.size, hi))) + _LF_TABLE[-1]])
        t.flags.writeable = False
        _LF_TABLE = t
    return _LF_TABLE[: n_max + 1]


def log_factorial(n: int) -> float:
    if n < 0:
        raise ValueError("factorial of a negative integer")
    return float(log_factorials(n)[n])


def log_binomial(n: int, k: int) -> float:
    if k < 0 or k > n:
        return -math.inf
    lf = log_factorials(n)
    return float(lf[n] - lf[k] - lf[n - k])


def binomial_thinning_matrix(l_max: int, eta: float) -> np.ndarray:
    """Column-stochastic matrix T with T[k, l] = C(l, k) eta^k (1-eta)^(l-k).

    Column l is the photon-count distribution left behind when l photons each
    survive independently with probability eta.
    """
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"transmissivity must lie in [0, 1], got {eta}")
    dim = l_max + 1
    if eta == 1.0:
        return np.eye(dim)
    out = np.zeros((dim, dim))
    if eta == 0.0:
        out[0, :] = 1.0
        return out
    lf = log_factorials(l_max)
    k = np.arange(dim)
    log_eta, log_bar = math.log(eta), math.log1p(-eta)
    for l in range(dim):
        kk = k[: l + 1]
        out[: l + 1, l] = np.exp(lf[l] - lf[kk] - lf[l - kk] + kk * log_eta + (l - kk) * log_bar)
    return out

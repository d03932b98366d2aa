"""Closed-form asymptotics: ensemble distance exponents, measurement-count
and rate bounds, and the large-deviations rate function of +-1 correlations.

All exponents are kept in natural logarithms internally; base-2 values only
appear where an interface explicitly asks for them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

LN2 = math.log(2.0)

THETA_STEP = 1e-3      # default sweep resolution
THETA_MARGIN = 1e-6    # entropy derivative is singular at the endpoints


def binary_entropy(theta: float, base: str = "natural") -> float:
    """Shannon entropy -t log t - (1-t) log(1-t); endpoints return 0."""
    if not 0.0 <= theta <= 1.0:
        raise ValueError(f"theta must lie in [0, 1], got {theta}")
    if theta in (0.0, 1.0):
        return 0.0
    h = -theta * math.log(theta) - (1.0 - theta) * math.log(1.0 - theta)
    if base == "two":
        return h / LN2
    if base == "natural":
        return h
    raise ValueError(f"unknown base {base!r}")


def ensemble_exponent(theta: float, rate: float, w_r: int) -> float:
    """Growth rate of the average count of weight-(theta*m) codewords in the
    row-regular ensemble: H(theta) + (1-R) ln((1 + (1-2 theta)^w_r)/2).

    At theta = 1/2 this collapses to R ln 2 for every rate and row weight.
    """
    if not 0.0 < theta < 1.0:
        raise ValueError(f"theta must lie in (0, 1), got {theta}")
    if not 0.0 < rate < 1.0:
        raise ValueError(f"rate must lie in (0, 1), got {rate}")
    arg = (1.0 + (1.0 - 2.0 * theta) ** w_r) / 2.0
    if arg <= 0.0:
        raise ValueError(f"log argument non-positive at theta={theta}, w_r={w_r}")
    return binary_entropy(theta) + (1.0 - rate) * math.log(arg)


@dataclass(frozen=True)
class ExponentCurve:
    """Sampled exponent curve b(theta) for one (rate, w_r) pair."""

    thetas: np.ndarray
    b: np.ndarray
    rate: float
    w_r: int

    @property
    def alpha(self) -> float:
        return 1.0 - self.rate


def exponent_curve(rate: float, w_r: int, step: float = THETA_STEP,
                   margin: float = THETA_MARGIN) -> ExponentCurve:
    thetas = np.arange(step, 1.0, step)
    thetas = thetas[(thetas >= margin) & (thetas <= 1.0 - margin)]
    b = np.array([ensemble_exponent(float(t), rate, w_r) for t in thetas])
    return ExponentCurve(thetas, b, rate, w_r)


def distance_window(k: int) -> tuple[float, float]:
    """Relative-distance window (1/2 - 1/4K, 1/2 + 1/4K) for sparsity K."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return 0.5 - 1.0 / (4 * k), 0.5 + 1.0 / (4 * k)


def critical_rate(k: int) -> float:
    """Rate threshold 1/(8 ln 2 K^2) below which the window argument is run."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return 1.0 / (8.0 * LN2 * k * k)


def measurement_bound(k: int, n_cols: int) -> int:
    """Measurement count (8/3) ln 2 K^2 log2(N), rounded up."""
    if k < 1 or n_cols < 2:
        raise ValueError("need k >= 1 and n_cols >= 2")
    return math.ceil((8.0 / 3.0) * LN2 * k * k * math.log2(n_cols))


def prop3_rate_bound(k: int, proof_variant: bool = False) -> float:
    """Necessary rate for the binary-input isometry argument at sparsity K.

    Statement form: 1 - (1 - sqrt2/K) log2(K-1)/log2(K) - H2(sqrt2/K)/K.
    With ``proof_variant`` the last denominator is log2(K) instead of K.
    """
    if k < 2:
        raise ValueError("k must be >= 2 (sqrt(2)/k must be < 1)")
    gamma = 1.0 - math.sqrt(2.0) / k
    log2k = math.log2(k)
    ent = binary_entropy(math.sqrt(2.0) / k, base="two")
    last = ent / log2k if proof_variant else ent / k
    return 1.0 - gamma * math.log2(k - 1) / log2k - last


class RateFunction(NamedTuple):
    i_exact: float
    i_quadratic: float
    theta_star: float


def rate_function(x: float) -> RateFunction:
    """Legendre transform of the +-1 moment generating function.

    theta* = atanh(x) = (1/2) ln((1+x)/(1-x)); I(x) = x theta* - ln cosh theta*,
    with small-x expansion x^2/2.
    """
    if not 0.0 <= x < 1.0:
        raise ValueError(f"x must lie in [0, 1), got {x}")
    if x == 0.0:
        return RateFunction(0.0, 0.0, 0.0)
    theta_star = 0.5 * math.log((1.0 + x) / (1.0 - x))
    i_exact = x * theta_star - math.log(math.cosh(theta_star))
    return RateFunction(i_exact, 0.5 * x * x, theta_star)


def bernoulli_union_bound(m: int, n_cols: int, k: int) -> float:
    """Log of C(N,2) exp(-2m I(1/2K)): the pre-asymptotic union bound on the
    probability that some +-1 column pair exceeds coherence 1/2K."""
    if m < 1 or n_cols < 2 or k < 1:
        raise ValueError("m, n_cols, k must be positive (n_cols >= 2)")
    log_pairs = (math.lgamma(n_cols + 1) - math.lgamma(n_cols - 1)
                 - math.log(2.0))
    return log_pairs - 2.0 * m * rate_function(1.0 / (2.0 * k)).i_exact

"""Exhaustive-correlation greedy reconstruction: matching pursuit with
re-projection (OMP) and the add-prune subspace iteration (SP).

Both operate against a correlation oracle so the column-scan step can later
be swapped for a decoder-driven candidate generator without touching the
outer loops.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol, Sequence

import numpy as np

LS_RCOND = 1e-10        # relative cutoff for singular directions
DEFAULT_EPS0 = 1e-9     # residual norm early exit
SP_MAX_ITERS = 100      # safety net beyond the natural stopping rule


@dataclass(frozen=True)
class SparseSignal:
    """K-sparse vector in dimension n: sorted support plus values."""

    n: int
    support: tuple[int, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.support) != len(self.values):
            raise ValueError("support and values lengths differ")
        if len(set(self.support)) != len(self.support):
            raise ValueError("duplicate support indices")
        if any(i < 0 or i >= self.n for i in self.support):
            raise ValueError("support index out of range")
        if list(self.support) != sorted(self.support):
            raise ValueError("support must be sorted")

    @property
    def k(self) -> int:
        return len(self.support)

    def to_dense(self) -> np.ndarray:
        x = np.zeros(self.n)
        x[list(self.support)] = self.values
        return x

    @classmethod
    def from_pairs(cls, n: int, pairs: Sequence[tuple[int, float]]) -> "SparseSignal":
        pairs = sorted(pairs)
        return cls(n, tuple(i for i, _ in pairs), tuple(v for _, v in pairs))


@dataclass
class ReconResult:
    estimate: SparseSignal
    residual_norm: float
    iterations: int
    converged: bool
    support_exact: bool | None = None


class CorrelationOracle(Protocol):
    """Column access plus 'top t correlations' used by the greedy loops."""

    n_cols: int

    def top_t(self, v: np.ndarray, t: int) -> np.ndarray: ...

    def column(self, j: int) -> np.ndarray: ...


class ExhaustiveOracle:
    """Brute-force oracle over a dense (m, N) column matrix.

    ``top_t`` sorts all N inner products; ties are broken toward the lowest
    column index by the stable sort.
    """

    def __init__(self, columns: np.ndarray):
        self._cols = np.asarray(columns, dtype=np.float64)
        if self._cols.ndim != 2:
            raise ValueError("need a 2-D column matrix")
        self.n_cols = self._cols.shape[1]

    @classmethod
    def from_sensing(cls, mat, scaling: str = "normalized") -> "ExhaustiveOracle":
        return cls(mat.dense(scaling))

    def top_t(self, v: np.ndarray, t: int) -> np.ndarray:
        corr = self._cols.T @ v
        order = np.argsort(-np.abs(corr), kind="stable")
        return order[:t]

    def column(self, j: int) -> np.ndarray:
        return self._cols[:, j]

    def columns(self, idx: Sequence[int]) -> np.ndarray:
        return self._cols[:, list(idx)]


def least_squares(columns: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Minimum-norm least-squares coefficients for ``columns @ x ~ y``.

    Uses an orthogonal (SVD) factorization; singular values below
    ``LS_RCOND`` times the largest are zeroed, so duplicated columns get the
    minimum-norm split.  An empty column set yields an empty vector.
    """
    columns = np.asarray(columns, dtype=np.float64)
    if columns.size == 0:
        return np.zeros(columns.shape[1] if columns.ndim == 2 else 0)
    sol, *_ = np.linalg.lstsq(columns, y, rcond=LS_RCOND)
    return sol


def resid(y: np.ndarray, columns: np.ndarray) -> np.ndarray:
    """Residual of projecting y onto span(columns)."""
    columns = np.asarray(columns, dtype=np.float64)
    if columns.size == 0:
        return np.asarray(y, dtype=np.float64).copy()
    return y - columns @ least_squares(columns, y)


def omp(oracle: CorrelationOracle, y: np.ndarray, k: int,
        eps0: float = DEFAULT_EPS0) -> ReconResult:
    """Greedy pursuit: add the single best-correlated unused column, re-solve
    least squares on the accumulated support, repeat.

    Runs at most ``k`` iterations (hard cap) and exits early once the
    residual norm drops below ``eps0``.  For unit-norm columns the
    max-|correlation| pick coincides with the per-column error minimizer.
    """
    if k < 1 and eps0 <= 0:
        raise ValueError("need k >= 1 or a positive eps0")
    y = np.asarray(y, dtype=np.float64)
    support: list[int] = []
    chosen: set[int] = set()
    r = y.copy()
    coef = np.zeros(0)
    iterations = 0
    for _ in range(k):
        ranked = oracle.top_t(r, len(support) + 1)
        j = next(int(c) for c in ranked if int(c) not in chosen)
        support.append(j)
        chosen.add(j)
        cols = np.column_stack([oracle.column(i) for i in support])
        coef = least_squares(cols, y)
        r = y - cols @ coef
        iterations += 1
        if float(np.linalg.norm(r)) < eps0:
            break
    rnorm = float(np.linalg.norm(r))
    est = SparseSignal.from_pairs(oracle.n_cols,
                                  list(zip(support, coef.tolist())))
    return ReconResult(est, rnorm, iterations, rnorm < max(eps0, 1e-12))


def sp(oracle: CorrelationOracle, y: np.ndarray, k: int,
       max_iters: int = SP_MAX_ITERS) -> ReconResult:
    """Subspace pursuit: keep a size-k candidate support, each round union it
    with the k best residual correlations, least-squares on the union, prune
    back to the k largest coefficients, and stop as soon as the residual norm
    increases (reverting to the previous support)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    y = np.asarray(y, dtype=np.float64)
    t_cur = sorted(int(j) for j in oracle.top_t(y, k))
    y_r = resid(y, np.column_stack([oracle.column(j) for j in t_cur]))
    prev_norm = float(np.linalg.norm(y_r))
    iterations = 1
    for _ in range(max_iters):
        if prev_norm < 1e-12:
            break
        union = sorted(set(t_cur) | {int(j) for j in oracle.top_t(y_r, k)})
        cols_union = np.column_stack([oracle.column(j) for j in union])
        x_p = least_squares(cols_union, y)
        keep = np.argsort(-np.abs(x_p), kind="stable")[:k]
        t_new = sorted(union[int(i)] for i in keep)
        y_r_new = resid(y, np.column_stack([oracle.column(j) for j in t_new]))
        new_norm = float(np.linalg.norm(y_r_new))
        iterations += 1
        if new_norm > prev_norm:
            break
        t_cur, y_r, prev_norm = t_new, y_r_new, new_norm
    cols = np.column_stack([oracle.column(j) for j in t_cur])
    coef = least_squares(cols, y)
    rnorm = float(np.linalg.norm(y - cols @ coef))
    est = SparseSignal.from_pairs(oracle.n_cols, list(zip(t_cur, coef.tolist())))
    return ReconResult(est, rnorm, iterations, rnorm < 1e-9)

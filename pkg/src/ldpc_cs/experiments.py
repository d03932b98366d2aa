"""Monte-Carlo experiment runner: signal generation, measurement, per-K
reconstruction error rates, cut-off extraction and CSV/SVG emission.

Every trial derives its own RNG from (base_seed, K, trial index) through a
SeedSequence, so results are bit-identical no matter how trials are chunked
or parallelized.  Wall-clock timing is off by default for the same reason:
with ``timing: false`` the runtime column is written as 0.000 so repeated
runs emit byte-identical CSV; flip it on when profiling.
"""

from __future__ import annotations

import io
import logging
import math
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Literal, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from . import greedy, reconstruct
from .bp import mbbp_matrix_set
from .gf2 import (LinearCode, ParityCheckMatrix, expurgate_first_coordinate,
                  gen_column_regular, gen_ensemble_e, gen_peg,
                  generator_from_parity)
from .greedy import ExhaustiveOracle, ReconResult, SparseSignal
from .sensing import SensingMatrix, build_sensing_matrix

log = logging.getLogger(__name__)

CSV_HEADER = ("algorithm,matrix_type,signal_kind,K,trials,failures,"
              "error_rate,mean_runtime_ms,seed")
PLOT_RATE_FLOOR = 1e-4   # zero rates drawn at this floor on a log axis


class BernoulliMatrix:
    """Dense m x n matrix of i.i.d. equiprobable +-1 entries."""

    def __init__(self, entries: np.ndarray):
        self._pm = np.asarray(entries, dtype=np.float64)
        self.m, self.n_cols = self._pm.shape

    def dense(self, scaling: str = "normalized") -> np.ndarray:
        if scaling == "normalized":
            return self._pm / math.sqrt(self.m)
        if scaling == "pm_one":
            return self._pm
        raise ValueError(f"unknown scaling {scaling!r}")

    def column_at(self, p: int, scaling: str = "normalized") -> np.ndarray:
        return self.dense(scaling)[:, p]


def gen_bernoulli_matrix(m: int, n: int, seed) -> BernoulliMatrix:
    if m < 1 or n < 1:
        raise ValueError("matrix dimensions must be positive")
    rng = np.random.default_rng(seed)
    return BernoulliMatrix(rng.integers(0, 2, size=(m, n)) * 2.0 - 1.0)


def gen_signal(n: int, k: int, kind: str, seed) -> SparseSignal:
    """Uniformly random k-subset support; values all one (binary) or i.i.d.
    standard normal (gaussian)."""
    if k > n or k < 0:
        raise ValueError(f"sparsity {k} outside 0..{n}")
    rng = np.random.default_rng(seed)
    support = np.sort(rng.choice(n, size=k, replace=False))
    if kind == "binary":
        values = np.ones(k)
    elif kind == "gaussian":
        values = rng.standard_normal(k)
    else:
        raise ValueError(f"unknown signal kind {kind!r}")
    return SparseSignal(n, tuple(int(i) for i in support),
                        tuple(float(v) for v in values))


def measure(mat: SensingMatrix | BernoulliMatrix, x: SparseSignal,
            scaling: str = "normalized") -> np.ndarray:
    """Exact superposition of the supported columns in the requested scaling."""
    if x.n != mat.n_cols:
        raise ValueError(f"signal dimension {x.n} != column count {mat.n_cols}")
    y = np.zeros(mat.m)
    for idx, val in zip(x.support, x.values):
        y += val * mat.column_at(idx, scaling)
    return y


# ---------------------------------------------------------------------------
# experiment configuration and execution


class ExperimentConfig(BaseModel):
    """Everything a simulation run depends on; unknown keys are rejected."""

    model_config = ConfigDict(extra="forbid")

    matrix: Literal["ldpc", "bernoulli"]
    algorithm: Literal["omp", "sp", "bp-omp", "bp-sp", "mmpc-omp", "mbbp-omp"]
    signal_kind: Literal["binary", "gaussian"]
    m: int = 160
    n_cols: int | None = None                  # bernoulli column count
    matrix_seed: int = 0
    code_kind: Literal["peg", "ensemble-e", "col-regular"] = "peg"
    checks: int = 150
    row_weight: int = 4
    col_weight: int = 3
    peg_degree: int = 3
    expurgate: bool = False
    k_min: int = Field(1, ge=0)
    k_max: int = Field(10, ge=0)
    trials: int = Field(500, ge=1)
    base_seed: int = 0
    success_tol: float = 1e-6
    list_size: int = 20
    bias: float = 100.0
    m_configs: int = 8
    n_bases: int = 4
    systematic_basis: bool = True
    sigma_floor: float = 1e-3
    max_iters: int = 50
    decoder: Literal["bp", "rbp"] = "bp"
    psi0: float = 0.8
    psi1: float = 0.99
    literal_update: bool = False
    timing: bool = False
    workers: int = Field(1, ge=1)
    out_csv: str | None = None
    out_plot: str | None = None

    @model_validator(mode="after")
    def _check_ranges(self):
        if self.k_max < self.k_min:
            raise ValueError("k_max must be >= k_min")
        if self.matrix == "bernoulli" and self.n_cols is None:
            raise ValueError("bernoulli matrix needs n_cols")
        return self


@dataclass
class SummaryRow:
    algorithm: str
    matrix_type: str
    signal_kind: str
    K: int
    trials: int
    failures: int
    error_rate: float
    mean_runtime_ms: float
    seed: int

    def csv_line(self) -> str:
        return (f"{self.algorithm},{self.matrix_type},{self.signal_kind},"
                f"{self.K},{self.trials},{self.failures},"
                f"{self.error_rate:.6f},{self.mean_runtime_ms:.3f},{self.seed}")


def build_code(config: ExperimentConfig) -> LinearCode:
    if config.code_kind == "peg":
        h = gen_peg(config.m, config.checks, config.peg_degree,
                    config.matrix_seed)
    elif config.code_kind == "ensemble-e":
        h = gen_ensemble_e(config.m, config.checks, config.row_weight,
                           config.matrix_seed)
    else:
        h = gen_column_regular(config.m, config.checks, config.col_weight,
                               config.matrix_seed)
    code = generator_from_parity(h)
    if config.expurgate:
        code = expurgate_first_coordinate(code)
    return code


@dataclass
class _RunContext:
    n_cols: int
    measure_fn: Callable[[SparseSignal], np.ndarray]
    reconstruct_fn: Callable[[np.ndarray, int, np.random.Generator], ReconResult]


def _build_context(config: ExperimentConfig) -> _RunContext:
    greedy_alg = config.algorithm in ("omp", "sp")
    if config.matrix == "bernoulli":
        if not greedy_alg:
            raise ValueError("decoder-driven algorithms need an ldpc matrix")
        mat = gen_bernoulli_matrix(config.m, config.n_cols, config.matrix_seed)
        dense = mat.dense("normalized")
    else:
        code = build_code(config)
        mat = build_sensing_matrix(code)
        dense = mat.dense("normalized" if greedy_alg else "pm_one")

    def measure_fn(x: SparseSignal) -> np.ndarray:
        return dense[:, list(x.support)] @ np.asarray(x.values)

    if greedy_alg:
        oracle = ExhaustiveOracle(dense)
        if config.algorithm == "omp":
            recon = lambda y, k, rng: greedy.omp(oracle, y, k)
        else:
            recon = lambda y, k, rng: greedy.sp(oracle, y, k)
        return _RunContext(mat.n_cols, measure_fn, recon)

    basis = "systematic" if config.systematic_basis else None
    if config.algorithm == "bp-omp":
        recon = lambda y, k, rng: reconstruct.bp_omp(
            code, y, k, list_size=config.list_size, bias=config.bias,
            seed=rng, signal_kind=config.signal_kind, basis=basis,
            sigma_floor=config.sigma_floor, max_iters=config.max_iters,
            literal_update=config.literal_update)
    elif config.algorithm == "bp-sp":
        recon = lambda y, k, rng: reconstruct.bp_sp(
            code, y, k, list_size=config.list_size, bias=config.bias,
            seed=rng, signal_kind=config.signal_kind, basis=basis,
            sigma_floor=config.sigma_floor, max_iters=config.max_iters)
    elif config.algorithm == "mmpc-omp":
        recon = lambda y, k, rng: reconstruct.mmpc_omp(
            code, y, k, m_configs=config.m_configs, seed=rng,
            signal_kind=config.signal_kind, basis=basis,
            sigma_floor=config.sigma_floor, max_iters=config.max_iters,
            literal_update=config.literal_update)
    else:
        matrices = mbbp_matrix_set(code.h, config.n_bases, config.matrix_seed)
        recon = lambda y, k, rng: reconstruct.mbbp_omp(
            code, y, k, matrices=matrices, seed=rng,
            signal_kind=config.signal_kind, decoder=config.decoder,
            psi0=config.psi0, psi1=config.psi1,
            sigma_floor=config.sigma_floor, max_iters=config.max_iters,
            literal_update=config.literal_update)
    return _RunContext(mat.n_cols, measure_fn, recon)


def _success(x: SparseSignal, result: ReconResult, tol: float) -> bool:
    if tuple(result.estimate.support) != tuple(x.support):
        return False
    diff = result.estimate.to_dense() - x.to_dense()
    xnorm = float(np.linalg.norm(x.to_dense()))
    return float(np.linalg.norm(diff)) <= tol * max(1.0, xnorm)


def _run_k(config: ExperimentConfig, ctx: _RunContext, k: int,
           trial_range: range) -> tuple[int, float]:
    failures = 0
    total_ms = 0.0
    for t in trial_range:
        ss = np.random.SeedSequence((config.base_seed, k, t))
        sig_seed, alg_seed = ss.spawn(2)
        x = gen_signal(ctx.n_cols, k, config.signal_kind, sig_seed)
        if k == 0:
            continue
        y = ctx.measure_fn(x)
        t0 = time.perf_counter() if config.timing else 0.0
        try:
            result = ctx.reconstruct_fn(y, k, np.random.default_rng(alg_seed))
            ok = _success(x, result, config.success_tol)
        except Exception:
            log.warning("trial K=%d t=%d raised; counted as failure",
                        k, t, exc_info=True)
            ok = False
        if config.timing:
            total_ms += (time.perf_counter() - t0) * 1e3
        if not ok:
            failures += 1
    return failures, total_ms


def _chunk_worker(config_json: str, k: int, start: int, stop: int
                  ) -> tuple[int, int, float]:
    config = ExperimentConfig.model_validate_json(config_json)
    cache_key = (config_json,)
    ctx = _WORKER_CTX.get(cache_key)
    if ctx is None:
        ctx = _build_context(config)
        _WORKER_CTX.clear()
        _WORKER_CTX[cache_key] = ctx
    failures, total_ms = _run_k(config, ctx, k, range(start, stop))
    return k, failures, total_ms


_WORKER_CTX: dict = {}


def run_trials(config: ExperimentConfig) -> list[SummaryRow]:
    """Run the configured sweep; one summary row per K, in K order.

    Per-trial seeds depend only on (base_seed, K, trial index), so worker
    pools and chunk boundaries cannot perturb the outcome; exceptions inside
    a reconstruction are logged and counted as failures.
    """
    ks = list(range(config.k_min, config.k_max + 1))
    per_k: dict[int, tuple[int, float]] = {}
    if config.workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        config_json = config.model_dump_json()
        chunk = max(1, config.trials // config.workers)
        tasks = []
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            for k in ks:
                for start in range(0, config.trials, chunk):
                    stop = min(start + chunk, config.trials)
                    tasks.append(pool.submit(_chunk_worker, config_json,
                                             k, start, stop))
            for fut in tasks:
                k, failures, total_ms = fut.result()
                f0, m0 = per_k.get(k, (0, 0.0))
                per_k[k] = (f0 + failures, m0 + total_ms)
    else:
        ctx = _build_context(config)
        for k in ks:
            per_k[k] = _run_k(config, ctx, k, range(config.trials))
    rows = []
    for k in ks:
        failures, total_ms = per_k[k]
        rows.append(SummaryRow(
            algorithm=config.algorithm,
            matrix_type=config.matrix,
            signal_kind=config.signal_kind,
            K=k,
            trials=config.trials,
            failures=failures,
            error_rate=failures / config.trials,
            mean_runtime_ms=total_ms / config.trials,
            seed=config.base_seed))
    return rows


def cutoff_density(rows: Sequence[SummaryRow], threshold: float = 0.01) -> int:
    """Largest K whose error rate, and that of every smaller covered K, stays
    at or below ``threshold``; 0 when even the smallest K fails."""
    if not rows:
        raise ValueError("no rows")
    ordered = sorted(rows, key=lambda r: r.K)
    ks = [r.K for r in ordered]
    if ks != list(range(ks[0], ks[0] + len(ks))):
        raise ValueError("rows must cover a contiguous K range")
    cutoff = 0
    for row in ordered:
        if row.error_rate <= threshold:
            cutoff = row.K
        else:
            break
    return cutoff


# ---------------------------------------------------------------------------
# emission


def results_csv(rows: Sequence[SummaryRow]) -> str:
    if not rows:
        raise ValueError("no rows to emit")
    return "\n".join([CSV_HEADER] + [r.csv_line() for r in rows]) + "\n"


def parse_results_csv(text: str) -> list[SummaryRow]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError("unrecognized results CSV header")
    rows = []
    for ln in lines[1:]:
        alg, mt, sk, k, trials, fails, rate, ms, seed = ln.split(",")
        rows.append(SummaryRow(alg, mt, sk, int(k), int(trials), int(fails),
                               float(rate), float(ms), int(seed)))
    return rows


def plot_results_svg(rows: Sequence[SummaryRow], logy: bool = False) -> str:
    """Error rate vs K, one line per (algorithm, matrix, signal) series.

    On a log axis zero rates are drawn at the 1e-4 floor so the series stays
    visible.  The SVG is emitted without a creation date so identical inputs
    give identical bytes.
    """
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    if not rows:
        raise ValueError("no rows to plot")
    plt.rcParams["svg.hashsalt"] = "ldpc-cs"
    fig, ax = plt.subplots(figsize=(7, 4.5))
    series: dict[tuple[str, str, str], list[SummaryRow]] = {}
    for r in rows:
        series.setdefault((r.algorithm, r.matrix_type, r.signal_kind),
                          []).append(r)
    for key in sorted(series):
        pts = sorted(series[key], key=lambda r: r.K)
        ks = [p.K for p in pts]
        rates = [max(p.error_rate, PLOT_RATE_FLOOR) if logy else p.error_rate
                 for p in pts]
        ax.plot(ks, rates, marker="o", label="/".join(key))
    if logy:
        ax.set_yscale("log")
    ax.set_xlabel("sparsity K")
    ax.set_ylabel("reconstruction error rate")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buf.getvalue()


def emit_results(rows: Sequence[SummaryRow], fmt: str,
                 path: str | Path) -> None:
    """Write rows as CSV or as an SVG plot; re-emission is byte-identical."""
    path = Path(path)
    if fmt == "csv":
        path.write_text(results_csv(rows))
    elif fmt == "plot":
        path.write_text(plot_results_svg(rows, logy=True))
    else:
        raise ValueError(f"unknown format {fmt!r}")

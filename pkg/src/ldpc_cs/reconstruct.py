"""Greedy reconstruction with a decoder as the correlation-maximization step.

The outer loops are the same pursuit iterations as in :mod:`ldpc_cs.greedy`,
but instead of scanning all N columns they ask a message-passing decoder for
a small candidate list, so each iteration costs O(m) and the total work is
independent of N given the code.

Observations here live in +-1 units (unnormalized BPSK images), so binary
superpositions have integer entries in [-K, K]; that is what the biasing
rules key on.  The 1/sqrt(m) column scaling only matters for coherence
analysis and is a exact scalar away.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .bp import (Candidate, TannerGraph, _verify_same_code, biased_list_bp,
                 interference_priors, mbbp, mbbp_matrix_set, mmpc)
from .gf2 import LinearCode, ParityCheckMatrix, reduced_parity_basis
from .greedy import ReconResult, SparseSignal, least_squares
from .sensing import bpsk_image

CandidateGen = Callable[[np.ndarray, int, np.random.Generator], list[Candidate]]


def _random_column(code: LinearCode, used: set[int],
                   rng: np.random.Generator) -> int:
    n_cols = (1 << code.s) - 1
    while True:
        j = int(rng.integers(1, n_cols + 1))
        if j - 1 not in used:
            return j - 1


def _pick_new(cands: Sequence[Candidate], support: set[int],
              code: LinearCode, rng: np.random.Generator) -> int:
    for c in cands:
        if c.index not in support:
            return c.index
    return _random_column(code, support, rng)


def _omp_with_candidates(code: LinearCode, y: np.ndarray, k: int,
                         gen: CandidateGen, signal_kind: str,
                         rng: np.random.Generator,
                         literal_update: bool) -> ReconResult:
    """Shared pursuit loop: one candidate list per step, best new column kept.

    Binary signals subtract the chosen BPSK image from the running residual
    (cumulatively unless ``literal_update`` asks for the single-subtraction
    variant); Gaussian signals re-solve least squares on all selections and
    project, since amplitudes are unknown.
    """
    y = np.asarray(y, dtype=np.float64)
    rx = y.copy()
    support: list[int] = []
    chosen: set[int] = set()
    coef = np.zeros(0)
    steps = 0
    for step in range(k):
        kk = k - step
        cands = gen(rx, kk, rng)
        idx = _pick_new(cands, chosen, code, rng)
        support.append(idx)
        chosen.add(idx)
        steps += 1
        if signal_kind == "binary":
            img = bpsk_image(code.encode_int(idx + 1), code.m)
            if literal_update:
                rx = y - img
            else:
                rx = rx - img
        else:
            cols = np.column_stack(
                [bpsk_image(code.encode_int(i + 1), code.m) for i in support])
            coef = least_squares(cols, y)
            rx = y - cols @ coef
        if float(np.linalg.norm(rx)) < 1e-12:
            break
    if signal_kind == "binary":
        values = [1.0] * len(support)
    else:
        values = coef.tolist()
    rnorm = float(np.linalg.norm(rx))
    est = SparseSignal.from_pairs((1 << code.s) - 1, list(zip(support, values)))
    return ReconResult(est, rnorm, steps, rnorm < 1e-9)


def _sp_with_candidates(code: LinearCode, y: np.ndarray, k: int,
                        gen: CandidateGen, rng: np.random.Generator,
                        max_iters: int = 100) -> ReconResult:
    """Subspace iteration with decoder lists replacing the top-K scans."""
    y = np.asarray(y, dtype=np.float64)

    def cols_of(idx: Sequence[int]) -> np.ndarray:
        return np.column_stack(
            [bpsk_image(code.encode_int(i + 1), code.m) for i in idx])

    t_cur = sorted({c.index for c in gen(y, k, rng)})
    cols = cols_of(t_cur)
    y_r = y - cols @ least_squares(cols, y)
    prev_norm = float(np.linalg.norm(y_r))
    iterations = 1
    for _ in range(max_iters):
        if prev_norm < 1e-12:
            break
        extra = {c.index for c in gen(y_r, k, rng)}
        union = sorted(set(t_cur) | extra)
        cols_union = cols_of(union)
        x_p = least_squares(cols_union, y)
        keep = np.argsort(-np.abs(x_p), kind="stable")[:k]
        t_new = sorted(union[int(i)] for i in keep)
        cols_new = cols_of(t_new)
        y_r_new = y - cols_new @ least_squares(cols_new, y)
        new_norm = float(np.linalg.norm(y_r_new))
        iterations += 1
        if new_norm > prev_norm:
            break
        t_cur, prev_norm = t_new, new_norm
    cols = cols_of(t_cur)
    coef = least_squares(cols, y)
    rnorm = float(np.linalg.norm(y - cols @ coef))
    est = SparseSignal.from_pairs((1 << code.s) - 1,
                                  list(zip(t_cur, coef.tolist())))
    return ReconResult(est, rnorm, iterations, rnorm < 1e-9)


def _blbp_gen(code: LinearCode, graph: TannerGraph, list_size: int,
              bias: float, sigma_floor: float, max_iters: int) -> CandidateGen:
    def gen(rx: np.ndarray, kk: int, rng: np.random.Generator) -> list[Candidate]:
        return biased_list_bp(code, rx, kk, list_size=list_size, bias=bias,
                              rng=rng, graph=graph, sigma_floor=sigma_floor,
                              max_iters=max_iters)
    return gen


def _resolve_graph(code: LinearCode,
                   basis: ParityCheckMatrix | str | None) -> TannerGraph:
    if basis is None:
        return TannerGraph(code.h)
    if isinstance(basis, str):
        if basis != "systematic":
            raise ValueError(f"unknown basis spec {basis!r}")
        return TannerGraph(reduced_parity_basis(code.h))
    return TannerGraph(basis)


def bp_omp(code: LinearCode, y: np.ndarray, k: int, *,
           list_size: int = 20, bias: float = 100.0,
           seed: int | np.random.Generator | None = None,
           signal_kind: str = "binary",
           basis: ParityCheckMatrix | str | None = None,
           sigma_floor: float = 1e-3, max_iters: int = 50,
           literal_update: bool = False) -> ReconResult:
    """Pursuit with the biased list decoder as its column-identification step.

    ``basis`` selects the parity basis the decoder runs on ("systematic"
    reduces the stock matrix, which handles interference much better than a
    sparse non-systematic basis at small K).
    """
    rng = np.random.default_rng(seed)
    graph = _resolve_graph(code, basis)
    gen = _blbp_gen(code, graph, list_size, bias, sigma_floor, max_iters)
    return _omp_with_candidates(code, y, k, gen, signal_kind, rng,
                                literal_update)


def bp_sp(code: LinearCode, y: np.ndarray, k: int, *,
          list_size: int = 20, bias: float = 100.0,
          seed: int | np.random.Generator | None = None,
          signal_kind: str = "binary",
          basis: ParityCheckMatrix | str | None = None,
          sigma_floor: float = 1e-3, max_iters: int = 50) -> ReconResult:
    """Subspace pursuit whose top-K correlation steps come from the biased
    list decoder (both at initialization and in the union step)."""
    del signal_kind  # the subspace iteration re-fits amplitudes either way
    rng = np.random.default_rng(seed)
    graph = _resolve_graph(code, basis)
    gen = _blbp_gen(code, graph, list_size, bias, sigma_floor, max_iters)
    return _sp_with_candidates(code, y, k, gen, rng)


def mmpc_omp(code: LinearCode, y: np.ndarray, k: int, *,
             m_configs: int = 8,
             seed: int | np.random.Generator | None = None,
             signal_kind: str = "binary",
             basis: ParityCheckMatrix | str | None = None,
             sigma_floor: float = 1e-3, max_iters: int = 50,
             literal_update: bool = False) -> ReconResult:
    """Pursuit fed by the M-best-configurations decoder.

    Only configurations that pass the syndrome check can be selected; when
    none survive, a random unused column keeps the iteration going.
    """
    rng = np.random.default_rng(seed)
    graph = _resolve_graph(code, basis)

    def gen(rx: np.ndarray, kk: int, g: np.random.Generator) -> list[Candidate]:
        priors = interference_priors(rx, kk, sigma_floor)
        configs = mmpc(graph, priors, m_configs, max_iters)
        found = []
        seen = set()
        for cfg in configs:
            if not cfg.is_codeword or cfg.word_mask == 0:
                continue
            if cfg.word_mask in seen:
                continue
            seen.add(cfg.word_mask)
            idx = code.message_of(cfg.word_mask) - 1
            corr = float(bpsk_image(cfg.word_mask, code.m) @ rx)
            found.append(Candidate(idx, cfg.word_mask, corr))
        found.sort(key=lambda c: (-c.correlation, c.index))
        return found

    return _omp_with_candidates(code, y, k, gen, signal_kind, rng,
                                literal_update)


def mbbp_omp(code: LinearCode, y: np.ndarray, k: int, *,
             matrices: list[ParityCheckMatrix] | None = None,
             n_bases: int = 4,
             seed: int | np.random.Generator | None = None,
             signal_kind: str = "binary", decoder: str = "bp",
             psi0: float = 0.8, psi1: float = 0.99,
             sigma_floor: float = 1e-3, max_iters: int = 50,
             literal_update: bool = False) -> ReconResult:
    """Pursuit fed by multiple-basis decoding (default: stock matrix plus
    three reduced bases under distinct random column orders)."""
    rng = np.random.default_rng(seed)
    if matrices is None:
        base_seed = int(rng.integers(0, 2**31 - 1))
        matrices = mbbp_matrix_set(code.h, n_bases, base_seed)
    _verify_same_code(code, matrices)
    graphs = [TannerGraph(h) for h in matrices]

    def gen(rx: np.ndarray, kk: int, g: np.random.Generator) -> list[Candidate]:
        return mbbp(code, rx, kk, graphs=graphs, decoder=decoder,
                    psi0=psi0, psi1=psi1, sigma_floor=sigma_floor,
                    max_iters=max_iters)

    return _omp_with_candidates(code, y, k, gen, signal_kind, rng,
                                literal_update)

"""Tanner-graph message passing under a high-interference channel prior.

Decoders provided here:

* ``bp_decode``          -- flooding sum-product in the probability domain,
                            with the fast delta-product check update.
* ``rbp_decode``         -- reinforced variant: variable messages pick up a
                            powered copy of the previous iteration's marginal.
* ``biased_list_bp``     -- harvest a candidate list by re-decoding copies of
                            the observation with selected coordinates
                            saturated toward +-B.
* ``mmpc``               -- sequential M-best configurations via constrained
                            max-product (min-sum) sweeps.
* ``mbbp``               -- run several parity bases of the same code in
                            parallel and merge the converged words.

The per-edge inner loops are numba-compiled; per call the work is
proportional to the edge count, which is what makes list decoding cost
linear in the code length rather than in the number of sensing columns.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .gf2 import LinearCode, ParityCheckMatrix, bits_from_mask, gf2_rank, \
    mask_from_bits, reduced_parity_basis
from .sensing import bpsk_image

log = logging.getLogger(__name__)

PROB_CLIP = 1e-12        # probabilities kept in [clip, 1 - clip]
DEFAULT_MAX_ITERS = 50
DEFAULT_BIAS = 100.0     # saturates the prior far beyond any +-K entry
DEFAULT_SIGMA_FLOOR = 1e-3
LLR_CONSTRAINT = 1e9     # prior used to clamp a variable in max-product
MSG_CLAMP = 1e4          # min-sum message magnitude cap
CHECK_PENALTY = 1e7      # log-score penalty per violated check


class TannerGraph:
    """CSR-style edge arrays for a parity-check matrix.

    Edges are numbered check-major: edge ``e`` joins check ``a`` (where
    ``check_ptr[a] <= e < check_ptr[a+1]``) to variable ``edge_var[e]``.
    ``var_edge`` lists the same edge ids grouped per variable.
    """

    def __init__(self, h: ParityCheckMatrix):
        self.h = h
        self.n = h.n
        self.n_checks = h.n_checks
        degrees = [len(r) for r in h.row_adjacency]
        self.check_ptr = np.zeros(h.n_checks + 1, dtype=np.int64)
        np.cumsum(degrees, out=self.check_ptr[1:])
        self.edge_var = np.fromiter(
            (b for row in h.row_adjacency for b in row),
            dtype=np.int64, count=int(self.check_ptr[-1]))
        per_var: list[list[int]] = [[] for _ in range(h.n)]
        for e, b in enumerate(self.edge_var):
            per_var[int(b)].append(e)
        self.var_ptr = np.zeros(h.n + 1, dtype=np.int64)
        np.cumsum([len(p) for p in per_var], out=self.var_ptr[1:])
        self.var_edge = np.fromiter(
            (e for p in per_var for e in p),
            dtype=np.int64, count=int(self.check_ptr[-1]))

    @property
    def n_edges(self) -> int:
        return int(self.check_ptr[-1])


@dataclass(frozen=True)
class ChannelPriors:
    """Per-variable bit probabilities p_{b,0}, p_{b,1} (clipped, summing to 1)."""

    p0: np.ndarray
    p1: np.ndarray
    sigma_sq: float

    def __post_init__(self):
        if self.p0.shape != self.p1.shape:
            raise ValueError("p0/p1 shapes differ")


@dataclass
class DecodeOutcome:
    """Result of one decoder run: a codeword or a divergence report."""

    converged: bool
    word: np.ndarray | None
    word_mask: int | None
    iterations: int
    posteriors: np.ndarray   # final P(bit = 0) per variable

    @property
    def status(self) -> str:
        return "codeword" if self.converged else "diverged"


def interference_sigma_sq(v: np.ndarray, k: int,
                          sigma_floor: float = DEFAULT_SIGMA_FLOOR) -> float:
    """Variance of the superposition interference: max|v| (K-1)/K, floored."""
    if k < 1:
        raise ValueError("k must be >= 1")
    peak = float(np.max(np.abs(v))) if len(v) else 0.0
    return max(sigma_floor, peak * (k - 1) / k)


def interference_priors(v: np.ndarray, k: int,
                        sigma_floor: float = DEFAULT_SIGMA_FLOOR,
                        sigma_sq: float | None = None) -> ChannelPriors:
    """Treat each coordinate as +-1 plus Gaussian interference of variance
    sigma^2 = max|v| (K-1)/K, giving LLR = 2 v / sigma^2.

    ``sigma_sq`` overrides the variance; the list decoder uses that to keep
    the interference model anchored to the unbiased observation while
    feeding saturated copies to the decoder.
    """
    v = np.asarray(v, dtype=np.float64)
    if sigma_sq is None:
        sigma_sq = interference_sigma_sq(v, k, sigma_floor)
    llr = 2.0 * v / sigma_sq
    with np.errstate(over="ignore"):
        p0 = 1.0 / (1.0 + np.exp(-llr))
    p0 = np.clip(p0, PROB_CLIP, 1.0 - PROB_CLIP)
    return ChannelPriors(p0, 1.0 - p0, sigma_sq)


# ---------------------------------------------------------------------------
# sum-product kernel


@njit(cache=True)
def _bp_kernel(check_ptr, edge_var, var_ptr, var_edge, p0, p1,
               max_iters, early_stop, reinforce, psi0, psi1,
               word, post0, post1):  # pragma: no cover - exercised via wrapper
    n_edges = edge_var.shape[0]
    n = var_ptr.shape[0] - 1
    n_checks = check_ptr.shape[0] - 1
    eps = 1e-12
    q0 = np.empty(n_edges)
    q1 = np.empty(n_edges)
    for b in range(n):
        for t in range(var_ptr[b], var_ptr[b + 1]):
            e = var_edge[t]
            q0[e] = p0[b]
            q1[e] = p1[b]
    r0 = np.empty(n_edges)
    r1 = np.empty(n_edges)
    dq = np.empty(n_edges)
    mg0 = np.empty(n)
    mg1 = np.empty(n)
    g0 = np.empty(n)
    g1 = np.empty(n)
    for b in range(n):
        g0[b] = p0[b]
        g1[b] = p1[b]
    ok = False
    iters = 0
    for it in range(1, max_iters + 1):
        iters = it
        # horizontal step: dr_ab = prod of dq over the other edges of the check
        for a in range(n_checks):
            lo = check_ptr[a]
            hi = check_ptr[a + 1]
            prod_big = 1.0
            cnt_tiny = 0
            tiny_val = 0.0
            tiny_e = -1
            for e in range(lo, hi):
                d = q0[e] - q1[e]
                dq[e] = d
                if abs(d) > eps:
                    prod_big *= d
                else:
                    cnt_tiny += 1
                    tiny_val = d
                    tiny_e = e
            for e in range(lo, hi):
                if cnt_tiny == 0:
                    dr = prod_big / dq[e]
                elif cnt_tiny == 1:
                    if e == tiny_e:
                        dr = prod_big
                    else:
                        dr = (prod_big / dq[e]) * tiny_val
                else:
                    dr = 1.0
                    for e2 in range(lo, hi):
                        if e2 != e:
                            dr *= dq[e2]
                if dr > 1.0:
                    dr = 1.0
                elif dr < -1.0:
                    dr = -1.0
                r0[e] = 0.5 * (1.0 + dr)
                r1[e] = 0.5 * (1.0 - dr)
        # pseudoposteriors and tentative decision
        for b in range(n):
            m0 = 1.0
            m1 = 1.0
            for t in range(var_ptr[b], var_ptr[b + 1]):
                e = var_edge[t]
                m0 *= r0[e]
                m1 *= r1[e]
                s = m0 + m1
                if 0.0 < s < 1e-280:
                    m0 *= 1e280
                    m1 *= 1e280
            mg0[b] = m0
            mg1[b] = m1
            u0 = p0[b] * m0
            u1 = p1[b] * m1
            s = u0 + u1
            if s > 0.0:
                post0[b] = u0 / s
                post1[b] = u1 / s
            else:
                post0[b] = 0.5
                post1[b] = 0.5
            if post1[b] > post0[b]:
                word[b] = 1
            else:
                word[b] = 0
        ok = True
        for a in range(n_checks):
            par = 0
            for e in range(check_ptr[a], check_ptr[a + 1]):
                par ^= word[edge_var[e]]
            if par == 1:
                ok = False
                break
        if ok and early_stop:
            break
        # vertical step: per-edge message excludes its own r factor; the
        # reinforced variant also multiplies in the stored marginal
        psi_l = 1.0 - psi0 * psi1 ** it
        for b in range(n):
            lo = var_ptr[b]
            hi = var_ptr[b + 1]
            u0 = p0[b] * mg0[b]
            u1 = p1[b] * mg1[b]
            for t in range(lo, hi):
                e = var_edge[t]
                if r0[e] > eps and r1[e] > eps:
                    n0 = u0 / r0[e]
                    n1 = u1 / r1[e]
                else:
                    n0 = p0[b]
                    n1 = p1[b]
                    for t2 in range(lo, hi):
                        if t2 != t:
                            e2 = var_edge[t2]
                            n0 *= r0[e2]
                            n1 *= r1[e2]
                            s = n0 + n1
                            if 0.0 < s < 1e-280:
                                n0 *= 1e280
                                n1 *= 1e280
                if reinforce:
                    n0 *= g0[b] ** psi_l
                    n1 *= g1[b] ** psi_l
                s = n0 + n1
                if s > 0.0:
                    v0 = n0 / s
                else:
                    v0 = 0.5
                if v0 < eps:
                    v0 = eps
                elif v0 > 1.0 - eps:
                    v0 = 1.0 - eps
                q0[e] = v0
                q1[e] = 1.0 - v0
            if reinforce:
                s = mg0[b] + mg1[b]
                if s > 0.0:
                    gg = mg0[b] / s
                else:
                    gg = 0.5
                if gg < eps:
                    gg = eps
                elif gg > 1.0 - eps:
                    gg = 1.0 - eps
                g0[b] = gg
                g1[b] = 1.0 - gg
    return ok, iters


def _run_bp(graph: TannerGraph, priors: ChannelPriors, max_iters: int,
            early_stop: bool, reinforce: bool, psi0: float, psi1: float
            ) -> DecodeOutcome:
    word = np.zeros(graph.n, dtype=np.uint8)
    post0 = np.empty(graph.n)
    post1 = np.empty(graph.n)
    ok, iters = _bp_kernel(graph.check_ptr, graph.edge_var, graph.var_ptr,
                           graph.var_edge, priors.p0, priors.p1,
                           max_iters, early_stop, reinforce, psi0, psi1,
                           word, post0, post1)
    if ok:
        mask = mask_from_bits(word.tolist())
        return DecodeOutcome(True, word.copy(), mask, int(iters), post0)
    return DecodeOutcome(False, None, None, int(iters), post0)


def bp_decode(graph: TannerGraph, priors: ChannelPriors,
              max_iters: int = DEFAULT_MAX_ITERS,
              early_stop: bool = True) -> DecodeOutcome:
    """Flooding sum-product; stops as soon as the hard decision is a codeword.

    ``early_stop=False`` runs all iterations (useful when the pseudoposterior
    marginals themselves are wanted, e.g. on cycle-free graphs where they
    converge to the exact marginals).
    """
    if priors.p0.shape[0] != graph.n:
        raise ValueError("priors length does not match variable count")
    return _run_bp(graph, priors, max_iters, early_stop, False, 0.0, 0.0)


def rbp_decode(graph: TannerGraph, priors: ChannelPriors,
               max_iters: int = DEFAULT_MAX_ITERS,
               psi0: float = 0.8, psi1: float = 0.99,
               early_stop: bool = True) -> DecodeOutcome:
    """Reinforced sum-product with memory-one marginal feedback.

    The vertical step is multiplied by g(b)^psi(l) with psi(l) = 1 - psi0 *
    psi1^l, where g is the previous iteration's normalized product of
    check-to-variable messages (the priors on the first iteration).
    """
    if not (0.0 <= psi0 <= 1.0 and 0.0 <= psi1 <= 1.0):
        raise ValueError("psi0, psi1 must lie in [0, 1]")
    if priors.p0.shape[0] != graph.n:
        raise ValueError("priors length does not match variable count")
    return _run_bp(graph, priors, max_iters, early_stop, True, psi0, psi1)


# ---------------------------------------------------------------------------
# biased list decoding


@dataclass(frozen=True)
class Candidate:
    """One column candidate: 0-based column position plus its codeword."""

    index: int
    word_mask: int
    correlation: float
    padding: bool = False


def _rank_candidates(found: list[tuple[int, int]], v: np.ndarray,
                     m: int) -> list[Candidate]:
    scored = [Candidate(idx, mask, float(bpsk_image(mask, m) @ v))
              for idx, mask in found]
    scored.sort(key=lambda c: (-c.correlation, c.index))
    return scored


def _pad_candidates(cands: list[Candidate], k: int, code: LinearCode,
                    v: np.ndarray, rng: np.random.Generator) -> list[Candidate]:
    n_cols = (1 << code.s) - 1
    used = {c.index for c in cands}
    while len(cands) < k and len(used) < n_cols:
        j = int(rng.integers(1, n_cols + 1))
        if j - 1 in used:
            continue
        used.add(j - 1)
        mask = code.encode_int(j)
        corr = float(bpsk_image(mask, code.m) @ v)
        cands.append(Candidate(j - 1, mask, corr, padding=True))
    return cands


def biased_list_bp(code: LinearCode, v: np.ndarray, k: int, *,
                   list_size: int = 20, bias: float = DEFAULT_BIAS,
                   rng: np.random.Generator | int | None = None,
                   graph: TannerGraph | None = None,
                   sigma_floor: float = DEFAULT_SIGMA_FLOOR,
                   max_iters: int = DEFAULT_MAX_ITERS) -> list[Candidate]:
    """Decode several biased copies of ``v`` and return exactly ``k`` columns.

    The list contains the raw observation, a copy with the +-K entries reset
    to +-B, and for up to (list_size - 2)/2 sampled coordinates with value
    +-(K-1) two more copies biased to +B and -B there.  When no +-(K-1)
    entries exist (noiseless K = 2 superpositions have none), the tie-break
    coordinates are sampled from the zero entries instead.  Diverged runs,
    repeats and the zero word are dropped; survivors are ranked by
    correlation with ``v`` and padded with random distinct columns up to
    ``k``.

    The interference variance is computed once from the unbiased ``v`` so a
    biased coordinate saturates its prior instead of inflating the noise
    model for everything else.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    v = np.asarray(v, dtype=np.float64)
    rng = np.random.default_rng(rng)
    if graph is None:
        graph = TannerGraph(code.h)
    sigma_sq = interference_sigma_sq(v, k, sigma_floor)

    rx_list = [v]
    at_peak = np.isclose(np.abs(v), float(k), atol=1e-9)
    rx2 = v.copy()
    rx2[at_peak] = np.sign(v[at_peak]) * bias
    if at_peak.any():
        rx_list.append(rx2)
    near_peak = np.flatnonzero(np.isclose(np.abs(v), float(k - 1), atol=1e-9))
    if near_peak.size == 0:
        near_peak = np.flatnonzero(np.isclose(v, 0.0, atol=1e-9))
    n_pairs = min(max(list_size - 2, 0) // 2, near_peak.size)
    if n_pairs > 0:
        picks = rng.choice(near_peak, size=n_pairs, replace=False)
        for j in picks:
            for sign in (1.0, -1.0):
                rx = rx2.copy()
                rx[j] = sign * bias
                rx_list.append(rx)

    found: list[tuple[int, int]] = []
    seen: set[int] = set()
    for rx in rx_list:
        priors = interference_priors(rx, k, sigma_floor, sigma_sq=sigma_sq)
        out = bp_decode(graph, priors, max_iters=max_iters)
        if not out.converged or out.word_mask == 0:
            continue
        if out.word_mask in seen:
            continue
        seen.add(out.word_mask)
        found.append((code.message_of(out.word_mask) - 1, out.word_mask))

    cands = _rank_candidates(found, v, code.m)[:k]
    return _pad_candidates(cands, k, code, v, rng)


# ---------------------------------------------------------------------------
# max-product (min-sum) and M best configurations


@njit(cache=True)
def _minsum_kernel(check_ptr, edge_var, var_ptr, var_edge, lam,
                   max_iters, clamp, beliefs, word):  # pragma: no cover
    n_edges = edge_var.shape[0]
    n = var_ptr.shape[0] - 1
    n_checks = check_ptr.shape[0] - 1
    vc = np.empty(n_edges)
    for b in range(n):
        for t in range(var_ptr[b], var_ptr[b + 1]):
            vc[var_edge[t]] = lam[b]
    cv = np.zeros(n_edges)
    for _ in range(max_iters):
        for a in range(n_checks):
            lo = check_ptr[a]
            hi = check_ptr[a + 1]
            min1 = 1e300
            min2 = 1e300
            argmin = -1
            sgn = 1.0
            for e in range(lo, hi):
                val = vc[e]
                if val < 0.0:
                    sgn = -sgn
                av = abs(val)
                if av < min1:
                    min2 = min1
                    min1 = av
                    argmin = e
                elif av < min2:
                    min2 = av
            for e in range(lo, hi):
                mag = min2 if e == argmin else min1
                if mag > clamp:
                    mag = clamp
                s = sgn if vc[e] >= 0.0 else -sgn
                cv[e] = s * mag
        for b in range(n):
            lo = var_ptr[b]
            hi = var_ptr[b + 1]
            tot = lam[b]
            for t in range(lo, hi):
                tot += cv[var_edge[t]]
            beliefs[b] = tot
            word[b] = 1 if tot < 0.0 else 0
            for t in range(lo, hi):
                e = var_edge[t]
                out = tot - cv[e]
                if out > clamp:
                    out = clamp
                elif out < -clamp:
                    out = -clamp
                vc[e] = out


def max_product(graph: TannerGraph, priors: ChannelPriors,
                constraints: dict[int, int] | None = None,
                max_iters: int = DEFAULT_MAX_ITERS
                ) -> tuple[np.ndarray, np.ndarray]:
    """Min-sum max-product sweep; returns (hard word, belief LLRs).

    ``constraints`` clamps variables to fixed values via saturated priors.
    Beliefs are exact max-marginal log-ratios on cycle-free graphs.
    """
    lam = np.log(priors.p0) - np.log(priors.p1)
    if constraints:
        for i, val in constraints.items():
            lam[i] = -LLR_CONSTRAINT if val else LLR_CONSTRAINT
    beliefs = np.empty(graph.n)
    word = np.zeros(graph.n, dtype=np.uint8)
    _minsum_kernel(graph.check_ptr, graph.edge_var, graph.var_ptr,
                   graph.var_edge, lam, max_iters, MSG_CLAMP, beliefs, word)
    return word, beliefs


@dataclass(frozen=True)
class MmpcConfig:
    word: np.ndarray
    word_mask: int
    log_score: float
    is_codeword: bool


def _log_score(word: np.ndarray, graph: TannerGraph,
               priors: ChannelPriors) -> tuple[float, bool]:
    lp = float(np.sum(np.where(word == 0, np.log(priors.p0),
                               np.log(priors.p1))))
    violations = 0
    for a in range(graph.n_checks):
        par = 0
        for e in range(graph.check_ptr[a], graph.check_ptr[a + 1]):
            par ^= int(word[graph.edge_var[e]])
        violations += par
    return lp - CHECK_PENALTY * violations, violations == 0


class _Partition:
    __slots__ = ("constraints", "word", "log_score", "beliefs")

    def __init__(self, constraints, word, log_score, beliefs):
        self.constraints = constraints
        self.word = word
        self.log_score = log_score
        self.beliefs = beliefs


def mmpc(graph: TannerGraph, priors: ChannelPriors, m_configs: int,
         max_iters: int = DEFAULT_MAX_ITERS) -> list[MmpcConfig]:
    """Sequential M most probable configurations.

    The best configuration is the max-product hard decision.  Each further
    configuration is obtained by scoring every (variable, flipped value)
    against the max-marginal gap of its partition, taking the best untried
    triple, and splitting that partition with the corresponding equality /
    inequality constraints (encoded as clamped priors).  Configurations are
    pairwise distinct; branches that reproduce an existing configuration are
    skipped and reported, which can leave fewer than ``m_configs`` results.
    """
    if m_configs < 1:
        raise ValueError("m_configs must be >= 1")

    def solve(constraints: dict[int, int]) -> _Partition:
        word, beliefs = max_product(graph, priors, constraints, max_iters)
        score, _ = _log_score(word, graph, priors)
        return _Partition(constraints, word, score, beliefs)

    partitions = [solve({})]
    configs = [partitions[0]]
    used: set[tuple[int, int, int]] = set()
    while len(configs) < m_configs:
        best_key = None
        best = None
        for s, part in enumerate(partitions):
            for i in range(graph.n):
                if i in part.constraints:
                    continue
                j = 1 - int(part.word[i])
                if (i, j, s) in used:
                    continue
                score = part.log_score - abs(float(part.beliefs[i]))
                key = (-score, s, i, j)
                if best_key is None or key < best_key:
                    best_key = key
                    best = (i, j, s)
        if best is None:
            log.info("mmpc: search space exhausted with %d of %d configs",
                     len(configs), m_configs)
            break
        i_k, j_k, s_k = best
        used.add(best)
        parent = partitions[s_k]
        new_part = solve({**parent.constraints, i_k: j_k})
        # refine the parent partition with the complementary constraint
        refined = solve({**parent.constraints, i_k: 1 - j_k})
        refined.word = parent.word
        refined.log_score = parent.log_score
        partitions[s_k] = refined
        if any(np.array_equal(new_part.word, c.word) for c in configs):
            log.info("mmpc: branch reproduced an existing configuration; skipped")
            continue
        partitions.append(new_part)
        configs.append(new_part)
    out = []
    for part in configs:
        score, valid = _log_score(part.word, graph, priors)
        out.append(MmpcConfig(part.word.copy(),
                              mask_from_bits(part.word.tolist()), score, valid))
    return out


# ---------------------------------------------------------------------------
# multiple-basis decoding


def mbbp_matrix_set(h: ParityCheckMatrix, n_bases: int = 4,
                    seed: int = 0) -> list[ParityCheckMatrix]:
    """The original matrix plus reduced bases under random column orders."""
    rng = np.random.default_rng(seed)
    out = [h]
    for _ in range(max(n_bases - 1, 0)):
        order = rng.permutation(h.n).tolist()
        out.append(reduced_parity_basis(h, order))
    return out


def _verify_same_code(code: LinearCode, matrices: list[ParityCheckMatrix],
                      seed: int = 0, samples: int = 8) -> None:
    rng = np.random.default_rng(seed)
    base_rank = code.h.rank()
    words = [code.encode_int(int(rng.integers(0, 1 << code.s)))
             for _ in range(samples)]
    for idx, h in enumerate(matrices):
        if h.n != code.m:
            raise ValueError(f"matrix {idx}: length {h.n} != code length {code.m}")
        if gf2_rank(h.row_masks) != base_rank:
            raise ValueError(f"matrix {idx}: rank differs; not the same code")
        for w in words:
            if not h.syndrome_zero(w):
                raise ValueError(
                    f"matrix {idx}: sampled codeword fails its syndrome; "
                    f"matrices do not describe the same code")


def mbbp(code: LinearCode, v: np.ndarray, k: int, *,
         matrices: list[ParityCheckMatrix] | None = None,
         graphs: list[TannerGraph] | None = None,
         n_bases: int = 4, seed: int = 0, decoder: str = "bp",
         psi0: float = 0.8, psi1: float = 0.99,
         sigma_floor: float = DEFAULT_SIGMA_FLOOR,
         max_iters: int = DEFAULT_MAX_ITERS) -> list[Candidate]:
    """Decode ``v`` with several parity bases of the same code and merge.

    Non-codewords cannot occur (convergence implies a zero syndrome for the
    basis used, and all bases share the null space); diverged runs and
    duplicates are dropped.  Survivors are ranked by BPSK correlation with
    ``v``.  ``decoder`` selects plain or reinforced message passing; prebuilt
    ``graphs`` skip both re-verification and graph construction.
    """
    v = np.asarray(v, dtype=np.float64)
    if graphs is None:
        if matrices is None:
            matrices = mbbp_matrix_set(code.h, n_bases, seed)
        _verify_same_code(code, matrices, seed)
        graphs = [TannerGraph(h) for h in matrices]
    priors = interference_priors(v, k, sigma_floor)
    found: list[tuple[int, int]] = []
    seen: set[int] = set()
    for graph in graphs:
        if decoder == "rbp":
            out = rbp_decode(graph, priors, max_iters, psi0, psi1)
        elif decoder == "bp":
            out = bp_decode(graph, priors, max_iters)
        else:
            raise ValueError(f"unknown decoder {decoder!r}")
        if not out.converged or out.word_mask == 0:
            continue
        if out.word_mask in seen:
            continue
        seen.add(out.word_mask)
        found.append((code.message_of(out.word_mask) - 1, out.word_mask))
    return _rank_candidates(found, v, code.m)

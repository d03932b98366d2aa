"""Sensing matrices whose columns are normalized BPSK images of codewords.

Column ``j`` (message integer ``j`` in 1..N, N = 2^s - 1) is the image of
``encode(j)`` under bit 0 -> +1, bit 1 -> -1, scaled by 1/sqrt(m).  Columns
are generated on demand from the generator rows, so locating one costs O(s)
word operations; nothing dense is stored unless explicitly requested.
Pairwise column correlations reduce to Hamming distances and are computed by
XOR + popcount, never by floating-point dot products.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .gf2 import (ENUMERATION_CAP, LinearCode, bits_from_mask,
                  distance_spectrum, gf2_rank)


def bpsk_image(word_mask: int, m: int, normalized: bool = False) -> np.ndarray:
    """Map a codeword mask to its +-1 image (optionally scaled by 1/sqrt(m))."""
    bits = bits_from_mask(word_mask, m).astype(np.float64)
    img = 1.0 - 2.0 * bits
    if normalized:
        img /= math.sqrt(m)
    return img


@dataclass(frozen=True)
class CoherenceReport:
    """Coherence mu with the codeword weight attaining it.

    ``window_ok_for_k`` is the largest K for which every relative distance
    lies strictly inside (1/2 - 1/4K, 1/2 + 1/4K); ``guarantee_k`` the largest
    K with mu <= 1/2K (the exhaustive-correlation exact-recovery condition).
    Both are None when every nonzero codeword has weight exactly m/2.
    """

    mu: float
    achieving_weight: int
    window_ok_for_k: int | None
    guarantee_k: int | None

    def recovery_guaranteed(self, k: int) -> bool:
        return self.guarantee_k is not None and k <= self.guarantee_k


class SensingMatrix:
    """m x (2^s - 1) matrix of normalized BPSK codeword images."""

    def __init__(self, code: LinearCode):
        if code.s < 1:
            raise ValueError("code dimension must be at least 1")
        self.code = code
        self.m = code.m
        self.n_cols = (1 << code.s) - 1
        self.normalization = 1.0 / math.sqrt(code.m)
        self._dense: dict[str, np.ndarray] = {}

    def codeword(self, j: int) -> int:
        """Codeword mask for message integer j in 1..N."""
        if not 1 <= j <= self.n_cols:
            raise IndexError(f"column {j} outside 1..{self.n_cols}")
        return self.code.encode_int(j)

    def column(self, j: int, scaling: str = "normalized") -> np.ndarray:
        if scaling not in ("normalized", "pm_one"):
            raise ValueError(f"unknown scaling {scaling!r}")
        return bpsk_image(self.codeword(j), self.m, scaling == "normalized")

    # reconstruction code indexes columns by 0-based position p = j - 1
    def column_at(self, p: int, scaling: str = "normalized") -> np.ndarray:
        return self.column(p + 1, scaling)

    def index_of(self, word_mask: int) -> int:
        """0-based column position of a codeword (inverse of enumeration)."""
        j = self.code.message_of(word_mask)
        if j < 1 or self.code.encode_int(j) != word_mask:
            raise ValueError("word is not a nonzero codeword of this code")
        return j - 1

    def dense(self, scaling: str = "normalized",
              max_elements: int = 1 << 26) -> np.ndarray:
        """Materialize all columns (cached); guarded by ``max_elements``."""
        if scaling not in ("normalized", "pm_one"):
            raise ValueError(f"unknown scaling {scaling!r}")
        if self.m * self.n_cols > max_elements:
            raise ValueError(
                f"dense matrix would hold {self.m * self.n_cols} entries; "
                f"raise max_elements to force materialization")
        if scaling not in self._dense:
            cols = np.empty((self.m, self.n_cols), dtype=np.float64)
            word = 0
            for j in range(1, self.n_cols + 1):
                word ^= self.code.gen_rows[(j & -j).bit_length() - 1]
                cols[:, j - 1] = bpsk_image(word, self.m)
            if scaling == "normalized":
                cols = cols * self.normalization
            self._dense[scaling] = cols
        return self._dense[scaling]


def build_sensing_matrix(code: LinearCode) -> SensingMatrix:
    if code.contains_all_ones():
        warnings.warn(
            "code contains the all-ones codeword: complementary column pairs "
            "sum to zero and coherence is 1; expurgate first to avoid this",
            stacklevel=2)
    return SensingMatrix(code)


def column_correlation(mat: SensingMatrix, i: int, j: int) -> float:
    """<phi_i, phi_j> = 1 - 2 d_H(c_i, c_j)/m, via XOR + popcount."""
    d = (mat.codeword(i) ^ mat.codeword(j)).bit_count()
    return 1.0 - 2.0 * d / mat.m


def coherence(mat: SensingMatrix, cap: int = ENUMERATION_CAP) -> CoherenceReport:
    """Exact coherence from the distance spectrum.

    By linearity the pairwise distances are the weights of nonzero codewords,
    so mu = max over weights w with B_w > 0 of |1 - 2w/m|.  The window and
    guarantee thresholds are computed in exact integer arithmetic.
    """
    spec = distance_spectrum(mat.code, cap=cap)
    weights = spec.nonzero_weights
    if not weights:
        raise ValueError("code has no nonzero codewords")
    m = mat.m
    best_w = max(weights, key=lambda w: (abs(m - 2 * w), -w))
    dev = max(abs(m - 2 * w) for w in weights)  # = m * mu
    mu = dev / m
    if dev == 0:
        return CoherenceReport(0.0, best_w, None, None)
    window_k = (m - 1) // (2 * dev)   # largest K with 2K·dev < m
    guarantee_k = m // (2 * dev)      # largest K with 2K·dev <= m
    return CoherenceReport(mu, best_w, window_k if window_k >= 1 else 0,
                           guarantee_k if guarantee_k >= 1 else 0)


def gershgorin_rip_bound(mu: float, k: int) -> float:
    """Disc-radius isometry bound (k - 1)·mu; values >= 1 are vacuous."""
    if not 0.0 <= mu <= 1.0:
        raise ValueError("mu must lie in [0, 1]")
    if k < 1:
        raise ValueError("k must be >= 1")
    return (k - 1) * mu


def exact_rip_constant(mat, k: int, max_cols: int = 64,
                       max_k: int = 3) -> float:
    """Exact isometry constant delta_k by enumerating all column k-subsets.

    Accepts a SensingMatrix or any dense (m, N) array with unit-norm columns.
    Interlacing makes size-k subsets dominate smaller ones, so only those are
    enumerated.  Eigenvalues of the tiny Gram matrices come from a symmetric
    eigensolve at 1e-10 tolerance.
    """
    dense = mat.dense() if hasattr(mat, "dense") else np.asarray(mat, dtype=float)
    m, n = dense.shape
    if n > max_cols or k > max_k:
        raise ValueError(
            f"exact enumeration limited to N <= {max_cols}, k <= {max_k}")
    if k < 1:
        raise ValueError("k must be >= 1")
    size = min(k, n)
    delta = 0.0
    for idx in itertools.combinations(range(n), size):
        g = dense[:, idx]
        gram = g.T @ g
        eig = np.linalg.eigvalsh(gram)
        delta = max(delta, eig[-1] - 1.0, 1.0 - eig[0])
    return delta


@dataclass(frozen=True)
class IndistinguishablePair:
    """Two disjoint codeword sets whose BPSK images sum identically."""

    support_a: tuple[int, ...]   # 0-based column positions
    support_b: tuple[int, ...]
    words_a: tuple[int, ...]     # codeword masks
    words_b: tuple[int, ...]


def find_indistinguishable_binary_pair(code: LinearCode, r: int,
                                       budget: int = 1 << 16
                                       ) -> IndistinguishablePair | None:
    """Search cosets of r-dimensional subcodes for equal-BPSK-sum halves.

    A subcode spanned by g_1..g_r, split by the coefficient of g_1, yields two
    halves with identical column sums whenever supp(g_1) is covered by the
    union of the other generators' supports.  Translating the coset so it
    avoids the zero word turns the halves into two disjoint 2^(r-1)-sparse
    binary signals x_A, x_B with Phi x_A = Phi x_B exactly.
    """
    if r < 2:
        return None
    if code.n_codewords > budget:
        raise ValueError("code too large for the enumeration budget")
    words = [code.encode_int(j) for j in range(1, code.n_codewords)]
    word_set = set(words)
    tried = 0
    for rest in itertools.combinations(words, r - 1):
        if gf2_rank(rest) != r - 1:
            continue
        cover = 0
        for w in rest:
            cover |= w
        span_rest = _span(rest)
        for g in words:
            tried += 1
            if tried > budget:
                return None
            if g in span_rest or (g & ~cover):
                continue
            sub = span_rest | {w ^ g for w in span_rest}
            # translate the coset away from zero
            shift = next((t for t in words if t not in sub), None)
            if shift is None:
                continue
            half_a = sorted(shift ^ w for w in span_rest)
            half_b = sorted(shift ^ g ^ w for w in span_rest)
            if 0 in half_a or 0 in half_b:
                continue
            if not all(w in word_set for w in half_a + half_b):
                continue
            pair = IndistinguishablePair(
                tuple(code.message_of(w) - 1 for w in half_a),
                tuple(code.message_of(w) - 1 for w in half_b),
                tuple(half_a), tuple(half_b))
            _verify_equal_sums(pair, code.m)
            return pair
    return None


def _span(masks) -> set[int]:
    span = {0}
    for g in masks:
        span |= {w ^ g for w in span}
    return span


def _verify_equal_sums(pair: IndistinguishablePair, m: int) -> None:
    # integer check: per coordinate, (#zeros - #ones) must agree on both halves
    for t in range(m):
        sa = sum(1 - 2 * ((w >> t) & 1) for w in pair.words_a)
        sb = sum(1 - 2 * ((w >> t) & 1) for w in pair.words_b)
        if sa != sb:
            raise AssertionError("candidate halves do not have equal BPSK sums")

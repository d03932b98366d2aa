"""Binary linear-code algebra on bit-packed words.

Parity-check rows and codewords are stored as Python integers used as bit
masks (bit ``i`` = coordinate ``i``).  Row addition over GF(2) is a single
word-wide XOR and Hamming weights come from ``int.bit_count()``, so rank,
reduction and codeword enumeration never materialise dense 0/1 matrices.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

log = logging.getLogger(__name__)

ENUMERATION_CAP = 24  # largest code dimension we enumerate exhaustively


# ---------------------------------------------------------------------------
# bit-packed GF(2) primitives


def mask_from_bits(bits: Iterable[int]) -> int:
    """Pack an iterable of 0/1 values (coordinate 0 first) into a mask."""
    mask = 0
    for i, b in enumerate(bits):
        if b & 1:
            mask |= 1 << i
    return mask


def bits_from_mask(mask: int, n: int) -> np.ndarray:
    """Unpack ``mask`` into a length-``n`` uint8 array (coordinate 0 first)."""
    nbytes = (n + 7) // 8
    raw = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].copy()


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank of the row set over GF(2)."""
    basis: dict[int, int] = {}
    rank = 0
    for row in rows:
        cur = row
        while cur:
            h = cur.bit_length() - 1
            if h in basis:
                cur ^= basis[h]
            else:
                basis[h] = cur
                rank += 1
                break
    return rank


def gf2_rref(rows: Sequence[int], n: int, col_order: Sequence[int] | None = None
             ) -> tuple[list[int], list[int]]:
    """Reduced row echelon form, processing columns in ``col_order``.

    Returns the nonzero reduced rows (one per pivot) and the pivot columns in
    processing order.  Row space is preserved.
    """
    work = list(rows)
    order = range(n) if col_order is None else col_order
    pivots: list[int] = []
    r = 0
    for c in order:
        bit = 1 << c
        piv = next((i for i in range(r, len(work)) if work[i] & bit), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        for i in range(len(work)):
            if i != r and work[i] & bit:
                work[i] ^= work[r]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def gf2_nullspace(rows: Sequence[int], n: int) -> list[int]:
    """Basis of the null space {v : row·v = 0 for every row}, as masks.

    Each basis vector is supported on exactly one free column plus pivot
    columns, so the free columns act as systematic message positions.
    """
    red, pivots = gf2_rref(rows, n)
    pivot_set = set(pivots)
    basis = []
    for f in range(n):
        if f in pivot_set:
            continue
        v = 1 << f
        for i, p in enumerate(pivots):
            if (red[i] >> f) & 1:
                v |= 1 << p
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class ParityCheckMatrix:
    """Sparse binary matrix with both Tanner-graph adjacency views.

    ``row_adjacency[a]`` lists the variable (column) indices checked by row
    ``a``; ``col_adjacency[b]`` lists the rows touching variable ``b``.  The
    two views always describe the same edge set.
    """

    n_checks: int
    n: int
    row_adjacency: tuple[tuple[int, ...], ...]
    col_adjacency: tuple[tuple[int, ...], ...]
    row_masks: tuple[int, ...] = field(repr=False)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], n: int) -> "ParityCheckMatrix":
        row_adj = []
        for a, entries in enumerate(rows):
            ent = sorted(entries)
            if any(e < 0 or e >= n for e in ent):
                raise ValueError(f"row {a}: column index out of range 0..{n - 1}")
            if len(set(ent)) != len(ent):
                raise ValueError(f"row {a}: duplicate column indices")
            row_adj.append(tuple(ent))
        cols: list[list[int]] = [[] for _ in range(n)]
        for a, ent in enumerate(row_adj):
            for b in ent:
                cols[b].append(a)
        masks = tuple(mask_from_bits_at(ent) for ent in row_adj)
        return cls(len(row_adj), n, tuple(row_adj),
                   tuple(tuple(c) for c in cols), masks)

    @classmethod
    def from_masks(cls, masks: Iterable[int], n: int) -> "ParityCheckMatrix":
        rows = [[i for i in range(n) if (m >> i) & 1] for m in masks]
        return cls.from_rows(rows, n)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_checks, self.n)

    def rank(self) -> int:
        return gf2_rank(self.row_masks)

    def syndrome_zero(self, word_mask: int) -> bool:
        return all((m & word_mask).bit_count() % 2 == 0 for m in self.row_masks)

    def row_weights(self) -> list[int]:
        return [len(r) for r in self.row_adjacency]

    def col_weights(self) -> list[int]:
        return [len(c) for c in self.col_adjacency]

    def to_dense(self) -> np.ndarray:
        dense = np.zeros(self.shape, dtype=np.uint8)
        for a, ent in enumerate(self.row_adjacency):
            dense[a, list(ent)] = 1
        return dense


def mask_from_bits_at(positions: Iterable[int]) -> int:
    mask = 0
    for p in positions:
        mask |= 1 << p
    return mask


@dataclass(frozen=True)
class LinearCode:
    """Length-``m`` dimension-``s`` binary code with a systematic generator.

    ``gen_rows[i]`` is the generator row for message bit ``i``;
    ``msg_positions[i]`` is the coordinate carrying that bit, so messages can
    be read back off a codeword directly.  G·Hᵀ = 0 by construction and
    ``s = m - rank(H)`` even when H is rank-deficient.
    """

    h: ParityCheckMatrix
    gen_rows: tuple[int, ...]
    msg_positions: tuple[int, ...]
    m: int
    s: int

    @property
    def rate(self) -> float:
        return self.s / self.m

    @property
    def n_codewords(self) -> int:
        return 1 << self.s

    def encode_int(self, msg: int) -> int:
        """Codeword mask for a message integer in [0, 2**s)."""
        msg = int(msg)
        if not 0 <= msg < (1 << self.s):
            raise ValueError(f"message {msg} outside [0, 2^{self.s})")
        word = 0
        j = msg
        while j:
            i = (j & -j).bit_length() - 1
            word ^= self.gen_rows[i]
            j &= j - 1
        return word

    def message_of(self, word_mask: int) -> int:
        """Inverse of :meth:`encode_int` (reads the systematic positions)."""
        msg = 0
        for i, p in enumerate(self.msg_positions):
            if (word_mask >> p) & 1:
                msg |= 1 << i
        return msg

    def contains(self, word_mask: int) -> bool:
        return self.h.syndrome_zero(word_mask)

    def contains_all_ones(self) -> bool:
        return self.contains((1 << self.m) - 1)

    def iter_codewords(self):
        """Yield (message, codeword mask) over all 2^s words in Gray order of
        the codeword updates; messages appear in natural order 0,1,2,..."""
        for msg in range(1 << self.s):
            yield msg, self.encode_int(msg)


@dataclass(frozen=True)
class DistanceSpectrum:
    """Codeword-weight multiplicities B_0..B_m of a linear code."""

    counts: tuple[int, ...]
    min_distance: int | None

    @property
    def nonzero_weights(self) -> list[int]:
        return [w for w in range(1, len(self.counts)) if self.counts[w]]


# ---------------------------------------------------------------------------
# ensemble and graph constructions


def gen_ensemble_e(m: int, checks: int, w_r: int, seed: int) -> ParityCheckMatrix:
    """Row-regular random matrix: each row an independent uniform w_r-subset."""
    if checks < 1:
        raise ValueError("checks must be >= 1")
    if not 3 <= w_r <= m:
        raise ValueError(f"row weight must satisfy 3 <= w_r <= m, got {w_r}")
    rng = np.random.default_rng(seed)
    rows = [np.sort(rng.choice(m, size=w_r, replace=False)).tolist()
            for _ in range(checks)]
    return ParityCheckMatrix.from_rows(rows, m)


def gen_column_regular(m: int, checks: int, w_c: int, seed: int,
                       max_restarts: int = 50) -> ParityCheckMatrix:
    """Column-regular random matrix via a configuration-model socket permutation.

    Every column gets exactly ``w_c`` distinct rows; row degrees are as even
    as the edge count allows.  A duplicate row inside a column is resampled by
    swapping the offending socket with a random not-yet-consumed one (up to
    100 swaps), after which the whole matrix is restarted.
    """
    if not 1 <= w_c <= checks:
        raise ValueError(f"column weight must satisfy 1 <= w_c <= checks, got {w_c}")
    if w_c == checks:
        return ParityCheckMatrix.from_rows([range(m)] * checks, m)
    rng = np.random.default_rng(seed)
    n_edges = m * w_c
    base, extra = divmod(n_edges, checks)
    for _ in range(max_restarts):
        degrees = np.full(checks, base, dtype=int)
        if extra:
            degrees[rng.choice(checks, size=extra, replace=False)] += 1
        sockets = np.repeat(np.arange(checks), degrees)
        rng.shuffle(sockets)
        sockets = sockets.tolist()
        cols: list[list[int]] = []
        ok = True
        pos = 0
        for _ in range(m):
            chunk = sockets[pos:pos + w_c]
            swaps = 0
            while len(set(chunk)) < w_c:
                swaps += 1
                if swaps > 100 or pos + w_c >= n_edges:
                    ok = False
                    break
                seen: set[int] = set()
                dup_t = 0
                for t, c in enumerate(chunk):
                    if c in seen:
                        dup_t = t
                        break
                    seen.add(c)
                other = int(rng.integers(pos + w_c, n_edges))
                sockets[pos + dup_t], sockets[other] = sockets[other], sockets[pos + dup_t]
                chunk = sockets[pos:pos + w_c]
            if not ok:
                break
            cols.append(sorted(chunk))
            pos += w_c
        if ok:
            rows: list[list[int]] = [[] for _ in range(checks)]
            for b, col in enumerate(cols):
                for a in col:
                    rows[a].append(b)
            return ParityCheckMatrix.from_rows(rows, m)
    raise RuntimeError("column-regular sampling failed after max restarts")


def gen_peg(m: int, checks: int, col_degrees: Sequence[int] | int,
            seed: int = 0) -> ParityCheckMatrix:
    """Progressive-edge-growth construction.

    Each new edge of a variable connects to the check at maximum BFS depth in
    the current subgraph (unreached checks count as infinitely deep); ties are
    broken by lowest current check degree, then lowest index.  With that rule
    the placement is fully deterministic; ``seed`` is accepted for interface
    symmetry with the random constructions.
    """
    del seed
    if isinstance(col_degrees, int):
        col_degrees = [col_degrees] * m
    if len(col_degrees) != m:
        raise ValueError("need one degree per variable")
    if any(d < 1 or d > checks for d in col_degrees):
        raise ValueError("column degrees must lie in 1..checks")
    var_nbrs: list[list[int]] = [[] for _ in range(m)]
    check_nbrs: list[list[int]] = [[] for _ in range(checks)]
    check_deg = [0] * checks

    def bfs_check_depths(root_var: int) -> list[int]:
        # depth of every check from root_var; -1 = unreached
        depth = [-1] * checks
        var_seen = [False] * m
        var_seen[root_var] = True
        frontier = list(var_nbrs[root_var])
        d = 1
        for a in frontier:
            depth[a] = d
        while frontier:
            next_vars = []
            for a in frontier:
                for b in check_nbrs[a]:
                    if not var_seen[b]:
                        var_seen[b] = True
                        next_vars.append(b)
            d += 2
            frontier = []
            for b in next_vars:
                for a in var_nbrs[b]:
                    if depth[a] == -1:
                        depth[a] = d
                        frontier.append(a)
        return depth

    def pick(candidates: Iterable[int]) -> int:
        return min(candidates, key=lambda a: (check_deg[a], a))

    for b in range(m):
        for _ in range(col_degrees[b]):
            if not var_nbrs[b]:
                a = pick(range(checks))
            else:
                depth = bfs_check_depths(b)
                unreached = [a for a in range(checks) if depth[a] == -1]
                if unreached:
                    a = pick(unreached)
                else:
                    dmax = max(depth)
                    if dmax <= 1:
                        raise ValueError(
                            f"infeasible degrees: variable {b} cannot avoid a "
                            f"duplicate edge")
                    a = pick(a for a in range(checks) if depth[a] == dmax)
            var_nbrs[b].append(a)
            check_nbrs[a].append(b)
            check_deg[a] += 1
    rows = [sorted(nb) for nb in check_nbrs]
    return ParityCheckMatrix.from_rows(rows, m)


def girth(h: ParityCheckMatrix) -> float:
    """Length of the shortest cycle in the Tanner graph (inf if acyclic).

    For every edge (b, a) we find the shortest alternative path from b to a;
    the minimum closed length over all edges is the girth.
    """
    best = float("inf")
    for b0 in range(h.n):
        for a0 in h.col_adjacency[b0]:
            # BFS from b0 avoiding the direct edge (b0, a0)
            var_dist = {b0: 0}
            check_dist: dict[int, int] = {}
            frontier_vars = [b0]
            d = 0
            found = None
            while frontier_vars and found is None:
                next_checks = []
                for b in frontier_vars:
                    for a in h.col_adjacency[b]:
                        if b == b0 and a == a0:
                            continue
                        if a not in check_dist:
                            check_dist[a] = d + 1
                            next_checks.append(a)
                if a0 in check_dist:
                    found = check_dist[a0] + 1
                    break
                frontier_vars = []
                for a in next_checks:
                    for b in h.row_adjacency[a]:
                        if b not in var_dist:
                            var_dist[b] = d + 2
                            frontier_vars.append(b)
                d += 2
            if found is not None:
                best = min(best, found)
    return best


# ---------------------------------------------------------------------------
# derived code structure


def generator_from_parity(h: ParityCheckMatrix) -> LinearCode:
    """Null-space generator for ``h``; dimension is m - rank(h)."""
    rank = h.rank()
    s = h.n - rank
    if s == 0:
        raise ValueError("parity-check matrix has full column rank: code dimension 0")
    red, pivots = gf2_rref(h.row_masks, h.n)
    pivot_set = set(pivots)
    frees = [f for f in range(h.n) if f not in pivot_set]
    gen = []
    for f in frees:
        v = 1 << f
        for i, p in enumerate(pivots):
            if (red[i] >> f) & 1:
                v |= 1 << p
        gen.append(v)
    return LinearCode(h, tuple(gen), tuple(frees), h.n, s)


def code_from_generator(gen_rows: Sequence[int], m: int) -> LinearCode:
    """Build a code from independent generator rows, deriving H as the dual."""
    if gf2_rank(gen_rows) != len(gen_rows):
        raise ValueError("generator rows are linearly dependent")
    h_rows = gf2_nullspace(gen_rows, m)
    h = ParityCheckMatrix.from_masks(h_rows, m)
    code = generator_from_parity(h)
    if code.s != len(gen_rows):
        raise ValueError("generator does not span the dual null space")
    return code


def encode(code: LinearCode, msg: Sequence[int] | np.ndarray) -> np.ndarray:
    """msg·G over GF(2); returns the codeword as a uint8 array."""
    msg = np.asarray(msg, dtype=np.uint8)
    if msg.shape != (code.s,):
        raise ValueError(f"message length {msg.shape} != code dimension {code.s}")
    return bits_from_mask(code.encode_int(mask_from_bits(msg.tolist())), code.m)


def distance_spectrum(code: LinearCode, cap: int = ENUMERATION_CAP) -> DistanceSpectrum:
    """Exact weight enumeration over all 2^s codewords (Gray-code walk).

    For a linear code this doubles as the pairwise-distance histogram seen
    from any fixed codeword.
    """
    if code.s > cap:
        raise ValueError(f"dimension {code.s} above enumeration cap {cap}")
    counts = [0] * (code.m + 1)
    counts[0] = 1
    word = 0
    for i in range(1, 1 << code.s):
        word ^= code.gen_rows[(i & -i).bit_length() - 1]
        counts[word.bit_count()] += 1
    min_d = next((w for w in range(1, code.m + 1) if counts[w]), None)
    return DistanceSpectrum(tuple(counts), min_d)


def systematic_form(h: ParityCheckMatrix,
                    column_order: Sequence[int] | None = None
                    ) -> tuple[ParityCheckMatrix, tuple[int, ...]]:
    """Row-reduce ``h`` to [I | P] up to the returned column permutation.

    ``perm[i]`` is the original column sitting at output position ``i``.  The
    row space (hence the code, after permuting coordinates) is unchanged;
    linearly dependent rows are dropped.
    """
    if not any(h.row_masks):
        raise ValueError("cannot reduce an all-zero matrix")
    red, pivots = gf2_rref(h.row_masks, h.n, column_order)
    dropped = h.n_checks - len(red)
    if dropped:
        log.info("systematic_form: dropped %d dependent rows", dropped)
    nonpivots = [c for c in range(h.n) if c not in set(pivots)]
    perm = list(pivots) + nonpivots
    # remap bit positions so the output literally reads [I | P]
    new_masks = []
    for row in red:
        mask = 0
        for new_pos, old_col in enumerate(perm):
            if (row >> old_col) & 1:
                mask |= 1 << new_pos
        new_masks.append(mask)
    return ParityCheckMatrix.from_masks(new_masks, h.n), tuple(perm)


def reduced_parity_basis(h: ParityCheckMatrix,
                         column_order: Sequence[int] | None = None
                         ) -> ParityCheckMatrix:
    """RREF of ``h`` under a column processing order, columns left in place.

    Useful as an alternative parity basis of the *same* code: the null space
    is unchanged, but the sparsity pattern depends strongly on the order.
    """
    red, _ = gf2_rref(h.row_masks, h.n, column_order)
    if not red:
        raise ValueError("cannot reduce an all-zero matrix")
    return ParityCheckMatrix.from_masks(red, h.n)


def expurgate_first_coordinate(code: LinearCode) -> LinearCode:
    """Keep the subcode with first coordinate zero and delete that coordinate.

    Length drops to m-1; dimension drops by one exactly when some codeword
    has a one in coordinate 0.  The new parity-check matrix is the old one
    with column 0 removed (empty rows dropped), whose null space is exactly
    the shortened code.
    """
    new_masks = [m >> 1 for m in code.h.row_masks if m >> 1]
    if not new_masks:
        # no checks remain; the shortened code is the full space of length m-1
        new_masks = []
    new_m = code.m - 1
    if new_masks:
        h = ParityCheckMatrix.from_masks(new_masks, new_m)
    else:
        h = ParityCheckMatrix.from_rows([], new_m)
    rank = gf2_rank(new_masks)
    s = new_m - rank
    if s == 0:
        return LinearCode(h, (), (), new_m, 0)
    return generator_from_parity(h)

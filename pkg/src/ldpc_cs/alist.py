"""Reader/writer for the standard alist LDPC interchange format.

Layout: first line ``<columns> <rows>``, then ``<max_col_deg> <max_row_deg>``,
the per-column and per-row degree lists, and finally the 1-indexed adjacency
lists (one line per column, then one per row).  We write zero-padded
adjacency lines, and accept both padded and unpadded files on read.
"""

from __future__ import annotations

from pathlib import Path

from .gf2 import ParityCheckMatrix


def to_alist(h: ParityCheckMatrix) -> str:
    col_deg = h.col_weights()
    row_deg = h.row_weights()
    max_col = max(col_deg, default=0)
    max_row = max(row_deg, default=0)
    lines = [
        f"{h.n} {h.n_checks}",
        f"{max_col} {max_row}",
        " ".join(str(d) for d in col_deg),
        " ".join(str(d) for d in row_deg),
    ]
    for b in range(h.n):
        entries = [a + 1 for a in h.col_adjacency[b]]
        entries += [0] * (max_col - len(entries))
        lines.append(" ".join(str(e) for e in entries))
    for a in range(h.n_checks):
        entries = [b + 1 for b in h.row_adjacency[a]]
        entries += [0] * (max_row - len(entries))
        lines.append(" ".join(str(e) for e in entries))
    return "\n".join(lines) + "\n"


def from_alist(text: str) -> ParityCheckMatrix:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) < 4:
        raise ValueError("alist: truncated header")
    try:
        n, checks = (int(t) for t in lines[0].split())
        _max_col, _max_row = (int(t) for t in lines[1].split())
        col_deg = [int(t) for t in lines[2].split()]
        row_deg = [int(t) for t in lines[3].split()]
    except ValueError as exc:
        raise ValueError(f"alist: bad header: {exc}") from None
    if len(col_deg) != n or len(row_deg) != checks:
        raise ValueError("alist: degree list lengths disagree with header")
    if len(lines) != 4 + n + checks:
        raise ValueError(f"alist: expected {4 + n + checks} lines, got {len(lines)}")
    col_lists = []
    for b in range(n):
        entries = [int(t) for t in lines[4 + b].split() if int(t) != 0]
        if len(entries) != col_deg[b]:
            raise ValueError(f"alist: column {b}: {len(entries)} entries, "
                             f"declared degree {col_deg[b]}")
        col_lists.append([e - 1 for e in entries])
    rows: list[list[int]] = [[] for _ in range(checks)]
    for a in range(checks):
        entries = [int(t) for t in lines[4 + n + a].split() if int(t) != 0]
        if len(entries) != row_deg[a]:
            raise ValueError(f"alist: row {a}: {len(entries)} entries, "
                             f"declared degree {row_deg[a]}")
        rows[a] = [e - 1 for e in entries]
    h = ParityCheckMatrix.from_rows(rows, n)
    # cross-check the two adjacency views
    for b, col in enumerate(col_lists):
        if tuple(sorted(col)) != h.col_adjacency[b]:
            raise ValueError(f"alist: row/column adjacency disagree at column {b}")
    return h


def write_alist(h: ParityCheckMatrix, path: str | Path) -> None:
    Path(path).write_text(to_alist(h))


def read_alist(path: str | Path) -> ParityCheckMatrix:
    return from_alist(Path(path).read_text())

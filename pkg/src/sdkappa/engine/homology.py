"""Reduced integral homology of finite simplicial complexes.

Complexes are given as collections of simplices, each a tuple of vertices in
a fixed increasing order, closed under taking faces.  Boundary matrices are
reduced first by eliminating unit pivots on a sparse representation, and
whatever is left is brought into Smith normal form densely.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from ..poset import Poset


@dataclass(frozen=True)
class Homology:
    """Reduced homology: ``ranks[k]`` is the Betti number, ``torsion[k]`` the invariant factors > 1."""

    ranks: dict[int, int]
    torsion: dict[int, tuple[int, ...]] = field(default_factory=dict)

    def is_trivial(self) -> bool:
        return not any(self.ranks.values()) and not any(self.torsion.values())

    def first_nontrivial(self) -> int | None:
        dims = [k for k, v in self.ranks.items() if v] + [k for k, v in self.torsion.items() if v]
        return min(dims) if dims else None

    def to_json(self) -> dict:
        return {
            "ranks": {str(k): v for k, v in sorted(self.ranks.items()) if v},
            "torsion": {str(k): list(v) for k, v in sorted(self.torsion.items()) if v},
        }


def _invariant_factors(rows: dict[int, dict[int, int]]) -> list[int]:
    """Non-zero invariant factors of a sparse integer matrix."""
    factors: list[int] = []
    cols: dict[int, set[int]] = {}
    for r, row in rows.items():
        for c in row:
            cols.setdefault(c, set()).add(r)

    def eliminate(pr: int, pc: int) -> None:
        prow = rows.pop(pr)
        u = prow[pc]
        for c in prow:
            cols[c].discard(pr)
        for r in list(cols.get(pc, ())):
            row = rows[r]
            a = row[pc] * u  # u is +-1, so u == 1/u
            for c, v in prow.items():
                nv = row.get(c, 0) - a * v
                if nv:
                    if c not in row:
                        cols[c].add(r)
                    row[c] = nv
                elif c in row:
                    del row[c]
                    cols[c].discard(r)
            if not row:
                del rows[r]
        cols.pop(pc, None)

    progress = True
    while progress:
        progress = False
        for r in sorted(rows, key=lambda r: len(rows[r])):
            row = rows.get(r)
            if row is None:
                continue
            unit = next((c for c, v in row.items() if v in (1, -1)), None)
            if unit is not None:
                eliminate(r, unit)
                factors.append(1)
                progress = True
    if rows:
        col_ids = sorted({c for row in rows.values() for c in row})
        cidx = {c: j for j, c in enumerate(col_ids)}
        dense = []
        for row in rows.values():
            line = [0] * len(col_ids)
            for c, v in row.items():
                line[cidx[c]] = v
            dense.append(line)
        factors.extend(smith_diagonal(dense))
    return factors


def smith_diagonal(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Non-zero diagonal entries of the Smith normal form of a dense integer matrix."""
    A = [list(row) for row in matrix]
    if not A or not A[0]:
        return []
    m, n = len(A), len(A[0])
    out = []
    t = 0
    while t < min(m, n):
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < best):
                    best, pivot = abs(A[i][j]), (i, j)
        if pivot is None:
            break
        i, j = pivot
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    for j in range(t, n):
                        A[i][j] -= q * A[t][j]
                    if A[i][t]:
                        done = False
                        if abs(A[i][t]) < abs(A[t][t]):
                            A[t], A[i] = A[i], A[t]
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    for i in range(t, m):
                        A[i][j] -= q * A[i][t]
                    if A[t][j]:
                        done = False
                        if abs(A[t][j]) < abs(A[t][t]):
                            for row in A:
                                row[t], row[j] = row[j], row[t]
            if done:
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                    None,
                )
                if bad is None:
                    break
                i, _ = bad
                for j in range(t, n):
                    A[t][j] += A[i][j]
        out.append(abs(A[t][t]))
        t += 1
    return out


def simplicial_homology(simplices: Iterable[Sequence]) -> Homology:
    """Reduced homology of a simplicial complex (faces must be present).

    The empty complex has reduced homology ``Z`` in degree ``-1``.
    """
    by_dim: dict[int, list[tuple]] = {}
    for s in simplices:
        s = tuple(s)
        by_dim.setdefault(len(s) - 1, []).append(s)
    if not by_dim:
        return Homology({-1: 1})
    top = max(by_dim)
    index = {k: {s: i for i, s in enumerate(sorted(set(v)))} for k, v in by_dim.items()}
    counts = {k: len(index.get(k, {})) for k in range(-1, top + 2)}
    counts[-1] = 1
    factors: dict[int, list[int]] = {}
    for k in range(0, top + 1):
        rows: dict[int, dict[int, int]] = {}
        for s, i in index[k].items():
            if k == 0:
                rows[i] = {0: 1}
                continue
            row = {}
            for j in range(k + 1):
                f = s[:j] + s[j + 1:]
                row[index[k - 1][f]] = -1 if j % 2 else 1
            rows[i] = row
        factors[k] = _invariant_factors(rows)
    ranks, torsion = {}, {}
    for k in range(-1, top + 1):
        rank_out = len(factors.get(k, [])) if k >= 0 else 0
        rank_in = len(factors.get(k + 1, []))
        ranks[k] = counts[k] - rank_out - rank_in
        tors = tuple(sorted(d for d in factors.get(k + 1, []) if d > 1))
        if tors:
            torsion[k] = tors
    return Homology(ranks, torsion)


def order_complex(poset: Poset) -> list[tuple[int, ...]]:
    """Chains of ``poset`` as index tuples ordered along a linear extension."""
    position = {i: p for p, i in enumerate(poset.linear_extension_indices())}
    out = []
    for chain in poset.chains():
        out.append(tuple(sorted((poset.index(x) for x in chain), key=position.__getitem__)))
    return out


def poset_homology(poset: Poset) -> Homology:
    return simplicial_homology(order_complex(poset))

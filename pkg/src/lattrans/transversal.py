"""Transversal existence, counting and maximum partial transversals."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable

from . import kernels
from .core import HOLE, Entry, GridArray, is_latin


@dataclass(frozen=True)
class Transversal:
    """A set of entries pairwise distinct in row, column and symbol."""

    entries: tuple[Entry, ...]

    @property
    def length(self) -> int:
        return len(self.entries)

    def to_json(self, A: GridArray) -> list[list]:
        return [[e.row, e.col, A.label(e.sym)] for e in self.entries]


@dataclass(frozen=True)
class SearchStats:
    nodes: int
    prunes: int
    wall_time: float
    count: int
    witness: Transversal | None = None

    @property
    def found(self) -> bool:
        return self.count > 0


def validate_transversal(A: GridArray, T: Transversal) -> bool:
    """Check every entry lies on ``A`` and no two agree in any coordinate."""
    rows, cols, syms = set(), set(), set()
    for e in T.entries:
        if not (0 <= e.row < A.order and 0 <= e.col < A.order):
            return False
        if e.sym == HOLE or A.cells[e.row][e.col] != e.sym:
            return False
        if e.row in rows or e.col in cols or e.sym in syms:
            return False
        rows.add(e.row)
        cols.add(e.col)
        syms.add(e.sym)
    return True


def _from_cols(A: GridArray, cols: list[int]) -> Transversal:
    return Transversal(tuple(Entry(r, c, A.cells[r][c]) for r, c in enumerate(cols)))


def _from_cells(A: GridArray, cells: Iterable[tuple[int, int]]) -> Transversal:
    return Transversal(tuple(Entry(r, c, A.cells[r][c]) for r, c in sorted(cells)))


def search(A: GridArray, limit: int = 0, dynamic: bool = False) -> SearchStats:
    """Backtracking over rows with used-column/used-symbol sets.

    ``limit=0`` counts every transversal; ``limit=1`` stops at the first.
    """
    t0 = time.perf_counter()
    count, nodes, prunes, cols = kernels.transversal_search(A.flat, A.order, limit, dynamic)
    witness = _from_cols(A, cols) if cols is not None else None
    return SearchStats(nodes, prunes, time.perf_counter() - t0, count, witness)


def has_transversal(A: GridArray, dynamic: bool = False) -> tuple[bool, Transversal | None]:
    stats = search(A, limit=1, dynamic=dynamic)
    return stats.found, stats.witness


def _count_branch(args) -> int:
    flat, n = args
    return kernels.transversal_search(flat, n, 0, False)[0]


def count_transversals(A: GridArray, jobs: int = 1) -> int:
    """Exact number of transversals.

    With ``jobs > 1`` the first row is split across worker processes; the
    total is the same as the sequential count.
    """
    if jobs <= 1 or A.order < 2:
        return search(A).count
    n = A.order
    flat = list(A.flat)
    tasks = []
    for c in range(n):
        if flat[c] == HOLE:
            continue
        branch = list(flat)
        for cc in range(n):
            if cc != c:
                branch[cc] = HOLE
        tasks.append((tuple(branch), n))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return sum(pool.map(_count_branch, tasks))


def max_partial_within(A: GridArray, rows: Iterable[int], cols: Iterable[int]) -> tuple[int, Transversal]:
    """Longest partial transversal using only cells in ``rows x cols``."""
    rows, cols = set(rows), set(cols)
    if not rows or not cols:
        raise ValueError("row and column sets must be nonempty")
    for k in rows | cols:
        if not 0 <= k < A.order:
            raise IndexError(f"index {k} out of range")
    rowmask = sum(1 << r for r in rows)
    colmask = sum(1 << c for c in cols)
    length, cells = kernels.max_partial(A.flat, A.order, rowmask, colmask)
    return length, _from_cells(A, cells)


def max_partial_transversal(A: GridArray) -> tuple[int, Transversal]:
    full = range(A.order)
    return max_partial_within(A, full, full)


def woolbright_predicate(A: GridArray, t: int) -> bool:
    """``(n-t)^2 > t`` implies a partial transversal of length ``t+1``.

    Returns the truth value of the implication on ``A``; ``False`` would be a
    counterexample.
    """
    n = A.order
    if not 0 <= t < n:
        raise ValueError("t must satisfy 0 <= t < n")
    if not is_latin(A):
        raise ValueError("Woolbright's bound is stated for Latin arrays")
    if (n - t) ** 2 <= t:
        return True
    return max_partial_transversal(A)[0] >= t + 1


def near_transversal_avoiding(A: GridArray, i: int, j: int) -> Transversal | None:
    """A partial transversal of length ``n-1`` missing row ``i`` and column ``j``."""
    n = A.order
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError("index out of range")
    if n == 1:
        return Transversal(())
    rows = [r for r in range(n) if r != i]
    cols = [c for c in range(n) if c != j]
    length, T = max_partial_within(A, rows, cols)
    return T if length == n - 1 else None



def iter_transversals(A: GridArray):
    """Yield every transversal, as a list of columns indexed by row."""
    n = A.order
    cells = A.cells
    cols: list[int] = []

    def rec(r: int, used_c: int, used_s: set[int]):
        if r == n:
            yield list(cols)
            return
        for c in range(n):
            v = cells[r][c]
            if not (used_c >> c) & 1 and v != HOLE and v not in used_s:
                cols.append(c)
                used_s.add(v)
                yield from rec(r + 1, used_c | (1 << c), used_s)
                used_s.discard(v)
                cols.pop()

    yield from rec(0, 0, set())

"""Square symbol arrays with optional holes.

Symbols are dense integer ids ``0..s-1``; holes are stored as :data:`HOLE`
and never count as symbols. Display labels live in a side table.
"""

from __future__ import annotations

import string
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

HOLE = -1
MAX_ORDER = 16
MAX_SYMBOLS = 256


class ArrayFormatError(ValueError):
    """Raised for malformed grid text or invalid array contents."""


class Entry(NamedTuple):
    row: int
    col: int
    sym: int


def default_label(sym: int) -> str:
    if sym < 26:
        return string.ascii_lowercase[sym]
    return f"s{sym}"


@dataclass(frozen=True)
class GridArray:
    """An ``n x n`` array of symbol ids, possibly with holes.

    ``partial`` may be left as ``None`` to infer it from the presence of
    holes; an explicit ``False`` with holes present is an error.
    """

    cells: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None
    partial: bool | None = None
    _nsym: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        cells = tuple(tuple(int(v) for v in row) for row in self.cells)
        object.__setattr__(self, "cells", cells)
        n = len(cells)
        if n == 0:
            raise ArrayFormatError("array has no rows")
        if n > MAX_ORDER:
            raise ArrayFormatError(f"order {n} exceeds maximum {MAX_ORDER}")
        seen = set()
        holes = 0
        for row in cells:
            if len(row) != n:
                raise ArrayFormatError("array is not square")
            for v in row:
                if v == HOLE:
                    holes += 1
                elif v < 0:
                    raise ArrayFormatError(f"invalid symbol id {v}")
                else:
                    seen.add(v)
        if seen != set(range(len(seen))):
            raise ArrayFormatError("symbol ids are not contiguous")
        if len(seen) > MAX_SYMBOLS:
            raise ArrayFormatError("alphabet too large")
        if self.partial is None:
            object.__setattr__(self, "partial", holes > 0)
        elif holes and not self.partial:
            raise ArrayFormatError("holes in an array not declared partial")
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != len(seen):
                raise ArrayFormatError("label table does not match alphabet")
            object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_nsym", len(seen))

    # -- construction -----------------------------------------------------

    @classmethod
    def from_rows(
        cls,
        rows: Iterable[Iterable[int]],
        labels: Sequence[str] | None = None,
        partial: bool | None = None,
    ) -> "GridArray":
        """Build from arbitrary non-negative ids, densifying in id order."""
        rows = [list(r) for r in rows]
        used = sorted({v for r in rows for v in r if v != HOLE})
        remap = {v: i for i, v in enumerate(used)}
        new_labels = None
        if labels is not None:
            new_labels = tuple(labels[v] for v in used)
        cells = tuple(tuple(HOLE if v == HOLE else remap[v] for v in r) for r in rows)
        return cls(cells, new_labels, partial)

    @classmethod
    def from_flat(cls, flat: Sequence[int], n: int, partial: bool | None = None) -> "GridArray":
        return cls.from_rows((flat[i * n:(i + 1) * n] for i in range(n)), partial=partial)

    # -- basic accessors ----------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.cells)

    n = order

    @property
    def num_symbols(self) -> int:
        return self._nsym

    @property
    def num_holes(self) -> int:
        return sum(1 for row in self.cells for v in row if v == HOLE)

    @property
    def flat(self) -> tuple[int, ...]:
        return tuple(v for row in self.cells for v in row)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.cells[i][j]

    def label(self, sym: int) -> str:
        if sym == HOLE:
            return "."
        if self.labels is not None:
            return self.labels[sym]
        return default_label(sym)

    def symbols(self) -> set[int]:
        return set(range(self._nsym))

    def entries(self) -> list[Entry]:
        return [
            Entry(i, j, v)
            for i, row in enumerate(self.cells)
            for j, v in enumerate(row)
            if v != HOLE
        ]

    def transpose(self) -> "GridArray":
        return GridArray.from_rows(zip(*self.cells), self.labels, self.partial)

    def relabel(self, labels: Sequence[str]) -> "GridArray":
        return GridArray(self.cells, tuple(labels), self.partial)

    def with_cells(self, changes: dict[tuple[int, int], int | str]) -> "GridArray":
        """Return a copy with some cells overwritten.

        Values may be ids, existing labels, new labels (which become new
        symbols) or :data:`HOLE`.
        """
        labels = [self.label(s) for s in range(self._nsym)]
        index = {lab: s for s, lab in enumerate(labels)}
        rows = [list(r) for r in self.cells]
        for (i, j), v in changes.items():
            if isinstance(v, str):
                if v not in index:
                    index[v] = len(labels)
                    labels.append(v)
                v = index[v]
            rows[i][j] = v
        return GridArray.from_rows(rows, labels)

    def __str__(self) -> str:
        return render_array(self)


# -- text format -------------------------------------------------------------


def parse_array(text: str) -> GridArray:
    """Parse whitespace-separated grid text; ``.`` is a hole, ``#`` a comment."""
    rows: list[list[str]] = []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        rows.append(stripped.split())
    if not rows:
        raise ArrayFormatError("no rows")
    n = len(rows)
    for r in rows:
        if len(r) != n:
            raise ArrayFormatError(f"ragged rows: expected {n} tokens, got {len(r)}")
    index: dict[str, int] = {}
    cells = []
    for r in rows:
        out = []
        for tok in r:
            if tok == ".":
                out.append(HOLE)
                continue
            if tok not in index:
                index[tok] = len(index)
            out.append(index[tok])
        cells.append(tuple(out))
    labels = tuple(sorted(index, key=index.__getitem__))
    return GridArray(tuple(cells), labels)


def parse_arrays(text: str) -> list[GridArray]:
    """Parse several arrays separated by blank lines."""
    blocks: list[list[str]] = [[]]
    for line in text.splitlines():
        if line.strip():
            blocks[-1].append(line)
        elif blocks[-1]:
            blocks.append([])
    arrays = []
    for block in blocks:
        body = [ln for ln in block if not ln.strip().startswith("#")]
        if body:
            arrays.append(parse_array("\n".join(body)))
    return arrays


def render_array(A: GridArray) -> str:
    return "".join(" ".join(A.label(v) for v in row) + "\n" for row in A.cells)


# -- structural predicates ---------------------------------------------------


def is_row_latin(A: GridArray) -> bool:
    for row in A.cells:
        filled = [v for v in row if v != HOLE]
        if len(set(filled)) != len(filled):
            return False
    return True


def is_latin(A: GridArray) -> bool:
    return is_row_latin(A) and is_row_latin(A.transpose())


@dataclass(frozen=True)
class SymbolClasses:
    counts: dict[int, int]
    singletons: frozenset[int]
    clones: frozenset[int]


def classify_symbols(A: GridArray) -> SymbolClasses:
    counts = Counter(v for row in A.cells for v in row if v != HOLE)
    singles = frozenset(s for s, c in counts.items() if c == 1)
    clones = frozenset(s for s, c in counts.items() if c > 1)
    return SymbolClasses(dict(counts), singles, clones)


def _check_index(A: GridArray, k: int, what: str) -> None:
    if not 0 <= k < A.order:
        raise IndexError(f"{what} index {k} out of range for order {A.order}")


def row_symbols(A: GridArray, i: int) -> set[int]:
    _check_index(A, i, "row")
    return {v for v in A.cells[i] if v != HOLE}


def col_symbols(A: GridArray, j: int) -> set[int]:
    _check_index(A, j, "column")
    return {row[j] for row in A.cells if row[j] != HOLE}


def delete_row_col(A: GridArray, i: int, j: int) -> GridArray:
    """The array ``A(i|j)``; surviving ids keep their relative order."""
    _check_index(A, i, "row")
    _check_index(A, j, "column")
    if A.order == 1:
        raise ArrayFormatError("deleting from a 1x1 array leaves an empty array")
    rows = [
        [v for c, v in enumerate(row) if c != j]
        for r, row in enumerate(A.cells)
        if r != i
    ]
    labels = [A.label(s) for s in range(A.num_symbols)]
    return GridArray.from_rows(rows, labels, partial=A.partial)


def psi(A: GridArray, i: int, j: int) -> set[int]:
    """Symbols of ``A`` that disappear when row ``i`` and column ``j`` go."""
    _check_index(A, i, "row")
    _check_index(A, j, "column")
    rest = {
        v
        for r, row in enumerate(A.cells)
        if r != i
        for c, v in enumerate(row)
        if c != j and v != HOLE
    }
    return A.symbols() - rest


def embed_fresh(L: GridArray, k: int) -> GridArray:
    """Border ``L`` with ``k`` rows and columns of pairwise distinct new symbols."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if not is_latin(L):
        raise ValueError("embed_fresh needs a Latin array")
    n = L.order
    nxt = L.num_symbols
    rows = []
    for i in range(n + k):
        row = []
        for j in range(n + k):
            if i < n and j < n:
                row.append(L.cells[i][j])
            else:
                row.append(nxt)
                nxt += 1
        rows.append(row)
    labels = [L.label(s) for s in range(L.num_symbols)]
    labels += [f"z{t}" for t in range(nxt - L.num_symbols)]
    return GridArray.from_rows(rows, labels, partial=L.partial)

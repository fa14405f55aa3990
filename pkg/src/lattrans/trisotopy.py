"""Canonical forms under row/column permutation, symbol renaming and transposition."""

from __future__ import annotations

import hashlib
import itertools
import random
from collections import Counter
from dataclasses import dataclass

from . import kernels
from .core import HOLE, GridArray

CANONICAL_ORDER_LIMIT = 8


class OrderLimitError(ValueError):
    pass


@dataclass(frozen=True)
class CanonicalKey:
    """Row-major cells of the least arrangement; equal keys mean trisotopic arrays."""

    order: int
    cells: tuple[int, ...]

    @property
    def num_symbols(self) -> int:
        return len({v for v in self.cells if v != HOLE})

    @property
    def num_holes(self) -> int:
        return sum(1 for v in self.cells if v == HOLE)

    def sort_key(self) -> tuple:
        # holes sort after every symbol
        return (self.order, tuple(1 << 30 if v == HOLE else v for v in self.cells))

    def to_array(self) -> GridArray:
        return GridArray.from_flat(self.cells, self.order)

    def __str__(self) -> str:
        toks = ("." if v == HOLE else str(v) for v in self.cells)
        return f"n={self.order};" + ",".join(toks)

    @classmethod
    def parse(cls, text: str) -> "CanonicalKey":
        head, _, body = text.strip().partition(";")
        if not head.startswith("n="):
            raise ValueError(f"bad key {text!r}")
        n = int(head[2:])
        cells = tuple(HOLE if t == "." else int(t) for t in body.split(",")) if n else ()
        if len(cells) != n * n:
            raise ValueError(f"key {text!r} has {len(cells)} cells, expected {n * n}")
        return cls(n, cells)


def canonical_form(A: GridArray, limit: int = CANONICAL_ORDER_LIMIT) -> CanonicalKey:
    if A.order > limit:
        raise OrderLimitError(f"order {A.order} above canonical-form limit {limit}")
    n = A.order
    return CanonicalKey(n, kernels.canonical(A.flat, n, n, True))


def are_trisotopic(A: GridArray, B: GridArray) -> bool:
    if A.order != B.order:
        raise ValueError("arrays of different orders")
    if (A.num_symbols, A.num_holes) != (B.num_symbols, B.num_holes):
        return False
    if fingerprint(A) != fingerprint(B):
        return False
    return canonical_form(A) == canonical_form(B)


def _line_profiles(lines, counts):
    return sorted(
        (sum(1 for v in line if v == HOLE), tuple(sorted(counts[v] for v in line if v != HOLE)))
        for line in lines
    )


def fingerprint(A: GridArray) -> int:
    """64-bit digest of trisotopy invariants (line profiles, frequency spectrum)."""
    counts = Counter(v for row in A.cells for v in row if v != HOLE)
    rows = _line_profiles(A.cells, counts)
    cols = _line_profiles(zip(*A.cells), counts)
    lines = tuple(sorted([tuple(rows), tuple(cols)]))
    spectrum = tuple(sorted(counts.values()))
    payload = repr((A.order, A.num_holes, spectrum, lines)).encode()
    return int.from_bytes(hashlib.blake2b(payload, digest_size=8).digest(), "big")


def _relabelled(cells, n, rperm, cperm):
    lab: dict[int, int] = {}
    out = []
    for r in rperm:
        for c in cperm:
            v = cells[r][c]
            if v == HOLE:
                out.append(1 << 30)
            else:
                if v not in lab:
                    lab[v] = len(lab)
                out.append(lab[v])
    return out


def brute_canonical(A: GridArray) -> CanonicalKey:
    """Exhaustive minimum over all ``2 (n!)^2`` arrangements; oracle for n <= 4."""
    n = A.order
    if n > 4:
        raise OrderLimitError("brute_canonical is limited to order 4")
    best = None
    for cells in (A.cells, tuple(zip(*A.cells))):
        for rperm in itertools.permutations(range(n)):
            for cperm in itertools.permutations(range(n)):
                cand = _relabelled(cells, n, rperm, cperm)
                if best is None or cand < best:
                    best = cand
    return CanonicalKey(n, tuple(HOLE if v == 1 << 30 else v for v in best))


def isotope(
    A: GridArray,
    rperm,
    cperm,
    sperm=None,
    transpose: bool = False,
) -> GridArray:
    """Apply a trisotopy: new cell (i, j) takes old cell (rperm[i], cperm[j])."""
    cells = tuple(zip(*A.cells)) if transpose else A.cells
    rows = []
    for r in rperm:
        row = []
        for c in cperm:
            v = cells[r][c]
            row.append(v if v == HOLE or sperm is None else sperm[v])
        rows.append(row)
    labels = None
    if A.labels is not None and sperm is None:
        labels = A.labels
    return GridArray.from_rows(rows, labels, partial=A.partial)


def scramble(A: GridArray, rng: random.Random) -> GridArray:
    n = A.order
    rperm = rng.sample(range(n), n)
    cperm = rng.sample(range(n), n)
    sperm = rng.sample(range(A.num_symbols), A.num_symbols)
    return isotope(A, rperm, cperm, sperm, transpose=rng.random() < 0.5)

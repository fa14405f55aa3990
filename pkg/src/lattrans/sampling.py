"""Random arrays for property tests and soundness sweeps.

Not uniform samplers; they only need to cover the space reasonably.
"""

from __future__ import annotations

import random

from .core import GridArray


def _random_row(rng: random.Random, n: int, colsyms: list[set[int]]) -> list[int] | None:
    """Random system of distinct representatives for one new row."""
    row = [-1] * n
    used: set[int] = set()
    order = list(range(n))
    rng.shuffle(order)

    def rec(idx: int) -> bool:
        if idx == n:
            return True
        c = order[idx]
        cands = [v for v in range(n) if v not in used and v not in colsyms[c]]
        rng.shuffle(cands)
        for v in cands:
            row[c] = v
            used.add(v)
            if rec(idx + 1):
                return True
            used.discard(v)
        return False

    return row if rec(0) else None


def random_latin_square(n: int, rng: random.Random) -> GridArray:
    """Row-by-row random completion; every Latin rectangle extends, so no
    backtracking across rows is needed."""
    colsyms: list[set[int]] = [set() for _ in range(n)]
    rows = []
    for _ in range(n):
        row = _random_row(rng, n, colsyms)
        assert row is not None
        for c, v in enumerate(row):
            colsyms[c].add(v)
        rows.append(row)
    return GridArray.from_rows(rows)


def _freshen(rows: list[list[int]], extra: int, rng: random.Random) -> list[list[int]]:
    """Give ``extra`` cells holding repeated symbols brand-new symbols."""
    n = len(rows)
    nxt = max(v for r in rows for v in r) + 1
    for _ in range(extra):
        counts: dict[int, int] = {}
        for r in rows:
            for v in r:
                counts[v] = counts.get(v, 0) + 1
        cells = [(i, j) for i in range(n) for j in range(n) if counts[rows[i][j]] > 1]
        if not cells:
            break
        i, j = rng.choice(cells)
        rows[i][j] = nxt
        nxt += 1
    return rows


def random_latin_array(n: int, s: int, rng: random.Random) -> GridArray:
    """Latin array of order ``n`` with exactly ``s`` symbols (``n <= s <= n^2``)."""
    if not n <= s <= n * n:
        raise ValueError("need n <= s <= n^2")
    rows = [list(r) for r in random_latin_square(n, rng).cells]
    return GridArray.from_rows(_freshen(rows, s - n, rng))


def random_row_latin_array(n: int, s: int, rng: random.Random) -> GridArray:
    """Row-Latin array of order ``n`` with ``s`` symbols; columns may repeat."""
    if not n <= s <= n * n:
        raise ValueError("need n <= s <= n^2")
    rows = []
    for _ in range(n):
        r = list(range(n))
        rng.shuffle(r)
        rows.append(r)
    return GridArray.from_rows(_freshen(rows, s - n, rng))


def random_array(n: int, alphabet: int, rng: random.Random, hole_rate: float = 0.0) -> GridArray:
    """Unconstrained array over ``alphabet`` symbols with optional holes."""
    rows = [
        [-1 if rng.random() < hole_rate else rng.randrange(alphabet) for _ in range(n)]
        for _ in range(n)
    ]
    return GridArray.from_rows(rows)


def random_partial_latin(n: int, alphabet: int, rng: random.Random, hole_rate: float = 0.2) -> GridArray:
    """Partial array that is Latin on its filled cells."""
    rows = [[-1] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if rng.random() < hole_rate:
                continue
            bad = {rows[i][k] for k in range(n)} | {rows[k][j] for k in range(n)}
            cands = [v for v in range(alphabet) if v not in bad]
            if cands:
                rows[i][j] = rng.choice(cands)
    if all(v == -1 for r in rows for v in r):
        rows[0][0] = 0
    return GridArray.from_rows(rows)

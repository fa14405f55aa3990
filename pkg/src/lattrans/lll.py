"""Bad events for a uniformly random permutation and the clique local lemma.

Choose a permutation ``sigma`` uniformly; the cells ``(i, sigma(i))`` form a
transversal unless two of them carry the same symbol. For each pair of
cells ``(i, j), (i', j')`` with ``i < i'``, ``j != j'`` and equal symbols the
bad event is ``sigma(i) = j and sigma(i') = j'``, of probability
``1 / (n (n-1))``. Events sharing a row or column are joined; the ``2n``
cliques (one per row and one per column) cover every edge and each event
lies in exactly four of them.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .certificates import meets_lll_threshold
from .core import HOLE, Entry, GridArray, is_latin
from .transversal import Transversal, validate_transversal

MU = 4


@dataclass(frozen=True)
class BadEventModel:
    n: int
    events: tuple[tuple[int, int, int, int], ...]
    row_cliques: tuple[tuple[int, ...], ...]
    col_cliques: tuple[tuple[int, ...], ...]

    @property
    def probability(self) -> Fraction:
        return Fraction(1, self.n * (self.n - 1))

    def cliques(self) -> list[tuple[int, ...]]:
        return list(self.row_cliques) + list(self.col_cliques)

    def membership(self) -> Counter:
        """How many cliques contain each event (by index)."""
        return Counter(e for K in self.cliques() for e in K)

    @property
    def kappa(self) -> int:
        return max((len(K) for K in self.cliques()), default=0)


def build_event_model(A: GridArray) -> BadEventModel:
    if not is_latin(A):
        raise ValueError("the event model is defined for Latin arrays")
    if A.num_holes:
        raise ValueError("the event model needs an array without holes")
    n = A.order
    cells_by_sym: dict[int, list[tuple[int, int]]] = {}
    for i, row in enumerate(A.cells):
        for j, v in enumerate(row):
            cells_by_sym.setdefault(v, []).append((i, j))
    events = []
    for cells in cells_by_sym.values():
        for a in range(len(cells)):
            for b in range(a + 1, len(cells)):
                (i, j), (k, l) = sorted((cells[a], cells[b]))
                if i != k and j != l:
                    events.append((i, j, k, l))
    events.sort()
    rows = [[] for _ in range(n)]
    cols = [[] for _ in range(n)]
    for idx, (i, j, k, l) in enumerate(events):
        rows[i].append(idx)
        rows[k].append(idx)
        cols[j].append(idx)
        cols[l].append(idx)
    return BadEventModel(
        n,
        tuple(events),
        tuple(tuple(r) for r in rows),
        tuple(tuple(c) for c in cols),
    )


def line_clique_sizes(A: GridArray) -> tuple[list[int], list[int]]:
    """Per row and column, the number of cells off the line that share a
    symbol with a cell of the line. Equals the clique sizes without
    building the events."""
    counts = Counter(v for row in A.cells for v in row if v != HOLE)
    rows = [sum(counts[v] - 1 for v in row if v != HOLE) for row in A.cells]
    cols = [sum(counts[v] - 1 for v in col if v != HOLE) for col in zip(*A.cells)]
    return rows, cols


@dataclass(frozen=True)
class LLLReport:
    n: int
    symbols: int
    kappa: int
    x: Fraction | None
    guaranteed: bool
    mu: int = MU
    bound_value: Fraction | None = None
    lll_threshold_met: bool = False

    def to_json(self) -> dict:
        return {
            "kappa": self.kappa,
            "mu": self.mu,
            "x": None if self.x is None else str(self.x),
            "guaranteed": self.guaranteed,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def best_x(kappa: int, mu: int = MU) -> Fraction:
    """Maximiser of ``x (1 - kappa x)^(mu-1)`` on ``(0, 1/kappa)``."""
    return Fraction(1, mu * kappa)


def lll_condition(A: GridArray, optimize: bool = False) -> LLLReport:
    """Check ``1/(n(n-1)) <= x (1 - kappa x)^3`` at ``x = 1/(4 kappa)``.

    With ``optimize`` the right side is maximised over ``x`` exactly; for
    four cliques per event the maximiser is ``1/(4 kappa)`` as well.
    """
    n = A.order
    if n < 2:
        raise ValueError("need n >= 2")
    if not is_latin(A) or A.num_holes:
        raise ValueError("the condition is defined for Latin arrays without holes")
    rows, cols = line_clique_sizes(A)
    kappa = max(rows + cols)
    met = meets_lll_threshold(n, A.num_symbols)
    if kappa == 0:
        return LLLReport(n, A.num_symbols, 0, None, True, lll_threshold_met=met)
    x = best_x(kappa) if optimize else Fraction(1, 4 * kappa)
    value = x * (1 - kappa * x) ** (MU - 1)
    ok = Fraction(1, n * (n - 1)) <= value
    return LLLReport(n, A.num_symbols, kappa, x, ok, bound_value=value, lll_threshold_met=met)


# -- randomised search -------------------------------------------------------------


@dataclass
class RandomSearchResult:
    seed: object
    transversal: Transversal | None
    restarts: int
    steps: int
    trace: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.transversal is not None


def _violations(A: GridArray, sigma: list[int]) -> int:
    seen = Counter()
    bad = 0
    for i, j in enumerate(sigma):
        v = A.cells[i][j]
        if v == HOLE:
            bad += 1
        else:
            bad += seen[v]
            seen[v] += 1
    return bad


def random_transversal_search(
    A: GridArray,
    seed: int | str = 0,
    max_restarts: int = 100,
    plateau: int | None = None,
) -> RandomSearchResult:
    """Swap descent on random permutations.

    Each restart draws a uniform permutation from ``random.Random(f"{seed}:{r}")``
    and repeatedly applies the first improving transposition of two rows,
    scanning pairs in a random order. Up to ``plateau`` (default ``n``)
    non-worsening sideways swaps are allowed before a restart. The trace
    holds ``(restart, steps, final violations)`` per restart.
    """
    n = A.order
    plateau = n if plateau is None else plateau
    trace = []
    total_steps = 0
    for r in range(max_restarts):
        rng = random.Random(f"{seed}:{r}")
        pairs = [(i, k) for i in range(n) for k in range(i + 1, n)]
        sigma = list(range(n))
        rng.shuffle(sigma)
        cost = _violations(A, sigma)
        steps = 0
        side = 0
        while cost > 0:
            rng.shuffle(pairs)
            moved = False
            sideways = None
            for i, k in pairs:
                sigma[i], sigma[k] = sigma[k], sigma[i]
                c = _violations(A, sigma)
                if c < cost:
                    cost = c
                    moved = True
                    steps += 1
                    break
                if c == cost and sideways is None:
                    sideways = (i, k)
                sigma[i], sigma[k] = sigma[k], sigma[i]
            if moved:
                continue
            if sideways is None or side >= plateau:
                break
            i, k = sideways
            sigma[i], sigma[k] = sigma[k], sigma[i]
            side += 1
            steps += 1
        total_steps += steps
        trace.append((r, steps, cost))
        if cost == 0:
            T = Transversal(tuple(Entry(i, j, A.cells[i][j]) for i, j in enumerate(sigma)))
            assert validate_transversal(A, T)
            return RandomSearchResult(seed, T, r + 1, total_steps, trace)
    return RandomSearchResult(seed, None, max_restarts, total_steps, trace)

"""Checkable forms of the non-search arguments.

* a Z_3 weighting certificate (rows, columns and symbols weighted so that
  a counting argument rules out transversals in order-6 arrays);
* predicates for the structural lemmas on clones, singletons and focused
  arrays;
* the closed-form symbol thresholds that force a transversal, evaluated in
  exact integer arithmetic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Mapping, Sequence

from .core import (
    HOLE,
    GridArray,
    classify_symbols,
    col_symbols,
    delete_row_col,
    is_latin,
    psi,
    row_symbols,
)
from .transversal import has_transversal

# -- Z_3 weighting certificate ------------------------------------------------------

DELTA_ORDER = 6
HALF = DELTA_ORDER // 2


@dataclass(frozen=True)
class DeltaCertificate:
    """Data for the weighting argument on an order-6 array.

    ``rows1``/``cols1`` are the first halves of the row and column
    partitions (the block ``D`` is the complement of both). ``sym1`` holds
    the labels of the three symbols allowed in ``rows1 x cols1`` and ``D``;
    every other label belongs to the second class. ``rho_rows``,
    ``rho_cols`` and ``nu`` take values mod 3; ``nu`` is keyed by label.
    """

    rows1: frozenset[int]
    cols1: frozenset[int]
    sym1: frozenset[str]
    rho_rows: tuple[int, ...]
    rho_cols: tuple[int, ...]
    nu: Mapping[str, int] = field(hash=False)

    @property
    def rows2(self) -> frozenset[int]:
        return frozenset(range(DELTA_ORDER)) - self.rows1

    @property
    def cols2(self) -> frozenset[int]:
        return frozenset(range(DELTA_ORDER)) - self.cols1

    def in_d(self, r: int, c: int) -> bool:
        return r not in self.rows1 and c not in self.cols1

    def delta(self, r: int, c: int, label: str) -> int:
        return (self.rho_rows[r] + self.rho_cols[c] - self.nu[label]) % 3


def ldprime_certificate() -> DeltaCertificate:
    """Weights for the order-6 square ``L''`` and its d-to-g variants."""
    rho = (0, 1, 2, 0, 1, 2)
    nu = {"a": 0, "d": 0, "g": 0, "b": 1, "e": 1, "c": 2, "f": 2}
    return DeltaCertificate(
        rows1=frozenset({0, 1, 2}),
        cols1=frozenset({0, 1, 2}),
        sym1=frozenset({"a", "b", "c"}),
        rho_rows=rho,
        rho_cols=rho,
        nu=nu,
    )


def _check_certificate_shape(cert: DeltaCertificate) -> None:
    for name, part in (("row", cert.rows1), ("column", cert.cols1)):
        if len(part) != HALF or not part <= set(range(DELTA_ORDER)):
            raise ValueError(f"{name} half must be 3 indices in 0..5, got {sorted(part)}")
    for name, rho in (("row", cert.rho_rows), ("column", cert.rho_cols)):
        if len(rho) != DELTA_ORDER:
            raise ValueError(f"{name} weights must have length 6")
    if len(cert.sym1) != HALF:
        raise ValueError("first symbol class must have exactly 3 labels")


def delta_premise_failures(L: GridArray, cert: DeltaCertificate) -> list[str]:
    """Names of the premises that do not hold; empty means certified."""
    _check_certificate_shape(cert)
    if L.order != DELTA_ORDER:
        raise ValueError("the weighting certificate is defined for order 6 only")
    fails = []
    if L.num_holes:
        fails.append("holes present")
    labels = {L.label(s) for s in range(L.num_symbols)}
    missing = labels - set(cert.nu)
    if missing:
        fails.append(f"nu undefined on {sorted(missing)}")
        return fails
    s1 = labels & cert.sym1
    s2 = labels - cert.sym1
    if len(s1) != HALF:
        fails.append("first symbol class does not have 3 symbols in the array")
    if len(s2) > 4:
        fails.append("second symbol class has more than 4 symbols in the array")
    if len({cert.nu[s] % 3 for s in s1}) != len(s1):
        fails.append("nu not injective on the first symbol class")
    for r in range(DELTA_ORDER):
        for c in range(DELTA_ORDER):
            v = L.cells[r][c]
            if v == HOLE:
                continue
            lab = L.label(v)
            diagonal_block = (r in cert.rows1) == (c in cert.cols1)
            if diagonal_block != (lab in cert.sym1):
                fails.append(f"block alphabet violated at ({r},{c})")
            d = cert.delta(r, c, lab)
            want = cert.nu[lab] % 3 if cert.in_d(r, c) else 0
            if d != want:
                fails.append(f"weight condition violated at ({r},{c})")
    line_total = sum(cert.rho_rows) + sum(cert.rho_cols)
    if (line_total - sum(cert.nu[s] for s in labels)) % 3:
        fails.append("line weights and symbol weights disagree mod 3")
    return fails


def verify_delta_certificate(L: GridArray, cert: DeltaCertificate) -> bool:
    """True iff every premise holds, which rules out a transversal.

    Write ``x`` for the number of entries a transversal ``T`` has in
    ``D``. It then also has ``x`` entries in ``rows1 x cols1``, so ``2x``
    entries come from the 3 first-class symbols and ``6-2x`` from the
    at most 4 second-class ones. Hence ``x = 1`` (no ``x`` works if the
    second class has 3 or fewer symbols), and exactly one first-class
    symbol ``m`` is absent from ``T``. Summing the weights over ``T``
    gives ``nu(m)`` on one hand (line sums agree with the symbol sum)
    and ``nu`` of the single ``D`` entry's symbol on the other. That
    symbol is also first class and differs from ``m``, against
    injectivity of ``nu``.
    """
    return not delta_premise_failures(L, cert)


# -- lemma predicates -------------------------------------------------------------


def _clone_cells_in_row(A: GridArray, i: int) -> list[int]:
    clones = classify_symbols(A).clones
    return [j for j, v in enumerate(A.cells[i]) if v != HOLE and v in clones]


def good_col_witness(A: GridArray, i: int) -> int | None:
    """A column ``j`` with a clone in row ``i`` meeting the column bound, if any.

    With ``s`` symbols and ``d`` clone cells in row ``i`` the bound is
    ``|R_i u C_j| >= |R_i| + (s - (n-d)(n-1) - |R_i|) / d``, compared
    after multiplying through by ``d``.
    """
    n = A.order
    cols = _clone_cells_in_row(A, i)
    d = len(cols)
    if d == 0:
        raise ValueError(f"row {i} contains no clones")
    r = row_symbols(A, i)
    rhs = d * len(r) + A.num_symbols - (n - d) * (n - 1) - len(r)
    for j in cols:
        if d * len(r | col_symbols(A, j)) >= rhs:
            return j
    return None


def check_good_col(A: GridArray, i: int) -> bool:
    return good_col_witness(A, i) is not None


def larges_bound(n: int, k: Fraction | int) -> Fraction:
    """``((k^2 - 2k + 2) n^2 + (3k - 2) n) / 2``."""
    k = Fraction(k)
    return ((k * k - 2 * k + 2) * n * n + (3 * k - 2) * n) / 2


@dataclass(frozen=True)
class LargesVerdict:
    verdict: str  # "pass", "fail" or "not applicable"
    bound: Fraction
    symbols: int
    cell: tuple[int, int] | None = None
    reason: str = ""


def check_upper_bound_from_larges(A: GridArray, k: Fraction | int) -> LargesVerdict:
    """Check the symbol bound for transversal-free ``A`` given a cell ``(i, j)``
    with ``A(i|j)`` having a transversal and ``|R_i u C_j| >= (k+1)n - 1``.

    Every cell is tried as ``(i, j)``; the verdict is "not applicable"
    when none satisfies the hypotheses.
    """
    n = A.order
    k = Fraction(k)
    bound = larges_bound(n, k)
    s = A.num_symbols
    if n < 2:
        return LargesVerdict("not applicable", bound, s, reason="order below 2")
    if has_transversal(A)[0]:
        return LargesVerdict("not applicable", bound, s, reason="array has a transversal")
    need = (k + 1) * n - 1
    for i in range(n):
        ri = row_symbols(A, i)
        for j in range(n):
            if len(ri | col_symbols(A, j)) < need:
                continue
            if not has_transversal(delete_row_col(A, i, j))[0]:
                continue
            return LargesVerdict("pass" if s <= bound else "fail", bound, s, (i, j))
    return LargesVerdict("not applicable", bound, s, reason="no cell meets the hypotheses")


def uniquemin_diagnostic(A: GridArray, i: int, j: int) -> dict:
    """Quantities in the singleton inequality ``|Psi_ij| > alpha (2n - 1)``
    with ``alpha`` the symbol density of ``A``. Diagnostic only: the
    inequality is guaranteed only for extremal arrays."""
    n = A.order
    v = A.cells[i][j]
    if v == HOLE or v not in classify_symbols(A).singletons:
        raise ValueError(f"cell ({i},{j}) is not a singleton")
    alpha = Fraction(A.num_symbols, n * n)
    p = len(psi(A, i, j))
    return {"psi": p, "alpha": alpha, "rhs": alpha * (2 * n - 1), "holds": p > alpha * (2 * n - 1)}


def check_focused(A: GridArray) -> tuple[bool, tuple[int, int] | None]:
    """Focused: every singleton lies in a row or column of singletons only,
    and some row ``i`` and column ``j`` consist only of singletons."""
    if not is_latin(A):
        raise ValueError("focused is defined for Latin arrays")
    n = A.order
    singles = classify_symbols(A).singletons

    def all_single(cells):
        return all(v != HOLE and v in singles for v in cells)

    rows = [all_single(A.cells[i]) for i in range(n)]
    cols = [all_single([A.cells[r][j] for r in range(n)]) for j in range(n)]
    for i in range(n):
        for j in range(n):
            if A.cells[i][j] in singles and not (rows[i] or cols[j]):
                return False, None
    for i in range(n):
        for j in range(n):
            if rows[i] and cols[j] and len(psi(A, i, j)) == 2 * n - 1:
                return True, (i, j)
    return False, None


# -- closed-form thresholds ----------------------------------------------------------


def latin_threshold(n: int) -> int:
    """Least ``s`` with ``s >= (2 - sqrt 2) n^2``."""
    # s >= 2n^2 - sqrt(2) n^2  <=>  (2n^2 - s)^2 <= 2n^4 for s <= 2n^2
    return 2 * n * n - isqrt(2 * n ** 4)


def row_latin_threshold(n: int) -> int:
    """Least ``s`` with ``s >= (5 - sqrt 5) n^2 / 4``."""
    # 4s >= 5n^2 - sqrt(5) n^2  <=>  5n^2 - 4s <= isqrt(5 n^4)
    return -((isqrt(5 * n ** 4) - 5 * n * n) // 4)


def lll_threshold(n: int) -> int:
    """Least ``s`` with ``s >= (229 n^2 + 27 n) / 256``."""
    return -(-(229 * n * n + 27 * n) // 256)


def meets_latin_threshold(n: int, s: int) -> bool:
    t = 2 * n * n - s
    return t <= 0 or t * t <= 2 * n ** 4


def meets_row_latin_threshold(n: int, s: int) -> bool:
    t = 5 * n * n - 4 * s
    return t <= 0 or t * t <= 5 * n ** 4


def meets_lll_threshold(n: int, s: int) -> bool:
    return 256 * s >= 229 * n * n + 27 * n


THEOREMS = {
    # name: (threshold, predicate, kinds the theorem covers)
    "latin-2-sqrt2": (latin_threshold, meets_latin_threshold, ("latin",)),
    "row-latin-5-sqrt5": (row_latin_threshold, meets_row_latin_threshold, ("latin", "row-latin")),
    "lll-229-27": (lll_threshold, meets_lll_threshold, ("latin",)),
}


@dataclass(frozen=True)
class BoundReport:
    n: int
    symbols: int
    kind: str
    thresholds: dict[str, int]
    fires: dict[str, bool]
    note: str = ""

    @property
    def guaranteed(self) -> bool:
        return any(self.fires.values())

    @property
    def strongest(self) -> str | None:
        fired = [t for t, f in self.fires.items() if f]
        return min(fired, key=lambda t: self.thresholds[t]) if fired else None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "symbols": self.symbols,
            "kind": self.kind,
            "thresholds": self.thresholds,
            "fires": self.fires,
            "guaranteed": self.guaranteed,
            "strongest": self.strongest,
            "note": self.note,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def table(self) -> str:
        lines = [f"n={self.n} symbols={self.symbols} kind={self.kind}"]
        width = max(len(t) for t in self.thresholds)
        for t, thr in self.thresholds.items():
            verdict = "fires" if self.fires[t] else "-"
            lines.append(f"{t.ljust(width)}  >= {thr:<6d} {verdict}")
        if self.note:
            lines.append(self.note)
        return "\n".join(lines) + "\n"


def guarantee_transversal(n: int, s: int, kind: str = "latin") -> BoundReport:
    """Which closed-form thresholds force a transversal at ``(n, s)``."""
    if kind not in ("latin", "row-latin"):
        raise ValueError(f"unknown kind {kind!r}")
    if n < 1 or not n <= s <= n * n:
        raise ValueError(f"need 1 <= n <= s <= n^2, got n={n}, s={s}")
    thresholds, fires = {}, {}
    for name, (thr, pred, kinds) in THEOREMS.items():
        if kind in kinds:
            thresholds[name] = thr(n)
            fires[name] = pred(n, s)
    note = ""
    if kind == "row-latin":
        note = "for comparison, the least forcing count for row-Latin arrays exceeds n^2/2 - O(n)"
    return BoundReport(n, s, kind, thresholds, fires, note)


def guarantee_table(ns: Sequence[int]) -> dict[int, dict[str, int]]:
    return {n: {name: thr(n) for name, (thr, _, _) in THEOREMS.items()} for n in ns}


__all__ = [
    "BoundReport",
    "DeltaCertificate",
    "LargesVerdict",
    "check_focused",
    "check_good_col",
    "check_upper_bound_from_larges",
    "delta_premise_failures",
    "good_col_witness",
    "guarantee_transversal",
    "larges_bound",
    "latin_threshold",
    "lll_threshold",
    "ldprime_certificate",
    "row_latin_threshold",
    "uniquemin_diagnostic",
    "verify_delta_certificate",
]


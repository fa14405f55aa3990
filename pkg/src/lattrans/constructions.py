"""Explicit transversal-free arrays of orders 4, 5 and 6.

Row/column indices in the edit tables below are 1-based to match the
way the arrays are usually written down; everything else is 0-based.
"""

from __future__ import annotations

from .core import GridArray, parse_array

ORDER4_CYCLIC = """\
a b c d
b c d a
c d a b
d a b c
"""

ORDER4_FIVE = """\
a b c d
b c a e
c a d b
e d b a
"""

ORDER5_FIRST = """\
a b c d e
b c a e f
c a b f d
e d f c a
d f e a b
"""

ORDER5_SECOND = """\
f b c d e
b c a e f
c a b f d
e d f c a
d f e a b
"""

L1_TEXT = """\
a b c d e f
b c a f d e
c a b e f d
d e f g b c
f d e b g a
e f d c a g
"""

# cells marked in L1
L1_SHADED = [(1, 1), (2, 2), (3, 3)]

LPRIME_TEXT = """\
a b c d e f
c f b e d a
b c e f a d
d e f a b c
e d a c f b
f a d b c e
"""

# cells marked in L'
LPRIME_SHADED = [(1, 6), (2, 4), (3, 5), (4, 3), (5, 1), (6, 2)]

L10_TEXT = """\
a b c d e f
b c g a f e
c f d g a b
d a f e g c
e g a f c d
g e b c d a
"""

LDPRIME_TEXT = """\
a b c d e f
b c a e f d
c a b f d e
d e f a c b
e f d c b a
f d e b a c
"""

# diagonal rows of L' turned into g for L2..L8
R_PRIME_SETS = [
    {1, 2, 3, 4, 5, 6},
    {1, 2, 4, 5, 6},
    {1, 3, 4, 5},
    {1, 3, 6},
    {1, 4},
    {2, 3, 5, 6},
    {3, 4, 5, 6},
]

# rows of L'' whose d becomes g for L15..L19
R_DPRIME_SETS = [{1}, {1, 2}, {1, 2, 3}, {1, 3, 5}, {1, 4}]


def order4_representatives() -> list[GridArray]:
    return [parse_array(ORDER4_CYCLIC), parse_array(ORDER4_FIVE)]


def order5_representatives() -> list[GridArray]:
    return [parse_array(ORDER5_FIRST), parse_array(ORDER5_SECOND)]


def L1() -> GridArray:
    return parse_array(L1_TEXT)


def L_prime() -> GridArray:
    return parse_array(LPRIME_TEXT)


def L10() -> GridArray:
    return parse_array(L10_TEXT)


def L_dprime() -> GridArray:
    return parse_array(LDPRIME_TEXT)


def _set_cells(A: GridArray, cells, label: str) -> GridArray:
    return A.with_cells({(r - 1, c - 1): label for r, c in cells})


def _replace_in_rows(A: GridArray, old: str, new: str, rows) -> GridArray:
    changes = {}
    for r in rows:
        for c in range(A.order):
            if A.label(A.cells[r - 1][c]) == old:
                changes[(r - 1, c)] = new
    return A.with_cells(changes)


def l1_with_shaded_g() -> GridArray:
    return _set_cells(L1(), L1_SHADED, "g")


def d_replacements(rows) -> GridArray:
    """L'' with the ``d`` in each listed (1-based) row changed to ``g``."""
    return _replace_in_rows(L_dprime(), "d", "g", rows)


def generate_order6_constructions() -> list[GridArray]:
    """The nineteen 7-symbol arrays L1, ..., L19, in that order."""
    out = [L1()]
    lp = L_prime()
    for rows in R_PRIME_SETS:
        out.append(_set_cells(lp, [(r, r) for r in rows], "g"))
    out.append(_set_cells(lp, LPRIME_SHADED, "g"))
    l10 = L10()
    out.append(l10)
    out.append(_set_cells(l10, [(3, 3)], "e"))
    out.append(_set_cells(l10, [(4, 4)], "b"))
    l13 = _replace_in_rows(L_dprime(), "d", "g", [2, 3])
    l13 = _replace_in_rows(l13, "f", "d", [2])
    out.append(l13)
    out.append(_replace_in_rows(l13, "e", "d", [3]))
    for rows in R_DPRIME_SETS:
        out.append(d_replacements(rows))
    return out

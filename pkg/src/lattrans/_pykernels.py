"""Pure-Python search kernels.

Arrays are passed flat (row-major) with ``-1`` for a hole and dense
non-negative symbol ids otherwise. ``_ckernels`` implements the same
functions with identical results; this module is the fallback when the
extension is not built.
"""

from __future__ import annotations

import itertools

HOLE = -1
UNSET = -2
_HOLE_KEY = 1 << 30

IMPLEMENTATION = "python"


# -- transversals --------------------------------------------------------------


def transversal_search(cells, n, limit=0, dynamic=False):
    """Count transversals, stopping once ``limit`` are found (0 = no limit).

    Returns ``(count, nodes, prunes, witness)`` where ``witness`` lists the
    column chosen in each row for the first transversal found.
    """
    cells = list(cells)
    count = 0
    nodes = 0
    prunes = 0
    witness = None
    choice = [0] * n
    row_done = [False] * n

    def feasible(r, colmask, symmask):
        base = r * n
        out = []
        for c in range(n):
            if not (colmask >> c) & 1:
                v = cells[base + c]
                if v != HOLE and not (symmask >> v) & 1:
                    out.append(c)
        return out

    def rec(depth, colmask, symmask):
        nonlocal count, nodes, prunes, witness
        nodes += 1
        if depth == n:
            count += 1
            if witness is None:
                witness = list(choice)
            return limit and count >= limit
        if dynamic:
            r = -1
            opts = None
            for rr in range(n):
                if not row_done[rr]:
                    f = feasible(rr, colmask, symmask)
                    if opts is None or len(f) < len(opts):
                        r, opts = rr, f
                        if not f:
                            break
        else:
            r = depth
            opts = feasible(r, colmask, symmask)
        if not opts:
            prunes += 1
            return False
        row_done[r] = True
        for c in opts:
            choice[r] = c
            if rec(depth + 1, colmask | (1 << c), symmask | (1 << cells[r * n + c])):
                row_done[r] = False
                return True
        row_done[r] = False
        return False

    if n == 0:
        return 1, 1, 0, []
    rec(0, 0, 0)
    return count, nodes, prunes, witness


def max_partial(cells, n, rowmask, colmask):
    """Maximum partial transversal inside the rows/columns selected by masks.

    Returns ``(length, [(row, col), ...])``.
    """
    rows = [r for r in range(n) if (rowmask >> r) & 1]
    ncols = bin(colmask).count("1")
    best = 0
    best_sel: list = []
    sel: list = []

    def rec(idx, used_c, used_s, length):
        nonlocal best, best_sel
        if length > best:
            best = length
            best_sel = list(sel)
        if idx == len(rows):
            return
        remaining = min(len(rows) - idx, ncols - length)
        if length + remaining <= best:
            return
        r = rows[idx]
        for c in range(n):
            if (colmask >> c) & 1 and not (used_c >> c) & 1:
                v = cells[r * n + c]
                if v != HOLE and not (used_s >> v) & 1:
                    sel.append((r, c))
                    rec(idx + 1, used_c | (1 << c), used_s | (1 << v), length + 1)
                    sel.pop()
                    if best == min(len(rows), ncols):
                        return
        rec(idx + 1, used_c, used_s, length)

    rec(0, 0, 0, 0)
    return best, best_sel


# -- canonical forms -----------------------------------------------------------


def canonical(cells, k, m, transpose=False):
    """Lexicographically least relabelled encoding over row and column orders.

    Holes compare greater than every symbol. With ``transpose`` (square
    input only) the transposed array is also considered.
    """
    cells = list(cells)
    variants = [[cells[i * m:(i + 1) * m] for i in range(k)]]
    if transpose and k == m:
        variants.append([[cells[i * m + j] for i in range(k)] for j in range(m)])
    best = [None]
    for rows in variants:
        for perm in itertools.permutations(range(m)):
            P = [tuple(r[c] for c in perm) for r in rows]
            _greedy_rows(P, [], {}, 0, list(range(k)), best)
    return tuple(HOLE if v == _HOLE_KEY else v for v in best[0])


def _relabel(row, lab, nxt):
    out = []
    lab = dict(lab)
    for v in row:
        if v == HOLE:
            out.append(_HOLE_KEY)
        else:
            w = lab.get(v)
            if w is None:
                w = lab[v] = nxt
                nxt += 1
            out.append(w)
    return out, lab, nxt


def _greedy_rows(P, prefix, lab, nxt, remaining, best):
    if not remaining:
        if best[0] is None or prefix < best[0]:
            best[0] = list(prefix)
        return
    cands = []
    for i in remaining:
        s, l2, n2 = _relabel(P[i], lab, nxt)
        cands.append((s, i, l2, n2))
    mn = min(c[0] for c in cands)
    new_prefix = prefix + mn
    if best[0] is not None and new_prefix > best[0][: len(new_prefix)]:
        return
    seen = set()
    for s, i, l2, n2 in cands:
        if s != mn or P[i] in seen:
            continue
        seen.add(P[i])
        _greedy_rows(P, new_prefix, l2, n2, [j for j in remaining if j != i], best)


# -- orderly generation of partial Latin arrays ------------------------------


def _rect_info(rect, k, m):
    colsyms = [0] * m
    colholes = [0] * m
    holes = 0
    s = 0
    for i in range(k):
        for c in range(m):
            v = rect[i * m + c]
            if v == HOLE:
                colholes[c] += 1
                holes += 1
            else:
                colsyms[c] |= 1 << v
                if v + 1 > s:
                    s = v + 1
    return colsyms, colholes, holes, s


def next_rows(rect, k, m, cap, max_total):
    """All extensions of a ``k x m`` partial Latin rectangle by one row.

    New symbols are numbered in order of first use along the row. Hole
    limits: ``cap`` per row and column, ``max_total`` overall.
    """
    colsyms, colholes, holes, s = _rect_info(rect, k, m)
    rect = tuple(rect)
    out = []
    row = [0] * m

    def rec(c, used, nfresh, rh):
        if c == m:
            out.append(rect + tuple(row))
            return
        if rh < cap and colholes[c] < cap and holes + rh < max_total:
            row[c] = HOLE
            rec(c + 1, used, nfresh, rh + 1)
        avail = ~(used | colsyms[c])
        for v in range(s):
            if (avail >> v) & 1:
                row[c] = v
                rec(c + 1, used | (1 << v), nfresh, rh)
        v = s + nfresh
        row[c] = v
        rec(c + 1, used | (1 << v), nfresh + 1, rh)

    rec(0, 0, 0, 0)
    return out


def _blocking_sets(rect, k, m):
    """Per column ``c``: intersection of symbol sets of all transversals of
    the rectangle with column ``c`` removed, or ``None`` if there are none."""
    out = []
    for c in range(m):
        inter = [None]

        def rec(r, used_c, used_s):
            if r == k:
                inter[0] = used_s if inter[0] is None else inter[0] & used_s
                return inter[0] == 0
            base = r * m
            for cc in range(m):
                if not (used_c >> cc) & 1:
                    v = rect[base + cc]
                    if v != HOLE and not (used_s >> v) & 1:
                        if rec(r + 1, used_c | (1 << cc), used_s | (1 << v)):
                            return True
            return False

        rec(0, 1 << c, 0)
        out.append(inter[0])
    return out


def last_rows(rect, m, cap, max_total):
    """Complete an ``(m-1) x m`` rectangle to every transversal-free
    ``m x m`` partial Latin array. Each last-row cell must be a hole or carry
    a symbol that meets every transversal avoiding its column."""
    k = m - 1
    colsyms, colholes, holes, s = _rect_info(rect, k, m)
    blocks = _blocking_sets(rect, k, m)
    rect = tuple(rect)
    out = []
    row = [0] * m

    def rec(c, used, nfresh, rh):
        if c == m:
            out.append(rect + tuple(row))
            return
        if rh < cap and colholes[c] < cap and holes + rh < max_total:
            row[c] = HOLE
            rec(c + 1, used, nfresh, rh + 1)
        allowed = blocks[c]
        avail = ~(used | colsyms[c])
        if allowed is not None:
            avail &= allowed
        for v in range(s):
            if (avail >> v) & 1:
                row[c] = v
                rec(c + 1, used | (1 << v), nfresh, rh)
        if allowed is None:
            v = s + nfresh
            row[c] = v
            rec(c + 1, used | (1 << v), nfresh + 1, rh)

    rec(0, 0, 0, 0)
    return out


# -- border extension -----------------------------------------------------------


def border_order(n):
    cells = [(0, 1), (1, 0)]
    for j in range(2, n):
        cells += [(0, j), (j, 0)]
    for j in range(2, n):
        cells += [(1, j), (j, 1)]
    return cells


def _through(L, n, r, c):
    """Is there a transversal of the assigned cells of ``L`` using (r, c)?"""
    rows = [i for i in range(n) if i != r]

    def rec(idx, used_c, used_s):
        if idx == len(rows):
            return True
        base = rows[idx] * n
        for cc in range(n):
            if not (used_c >> cc) & 1:
                v = L[base + cc]
                if v >= 0 and not (used_s >> v) & 1:
                    if rec(idx + 1, used_c | (1 << cc), used_s | (1 << v)):
                        return True
        return False

    return rec(0, 1 << c, 1 << L[r * n + c])


def border_extend(interior, m, x, y):
    """Extend a full ``m x m`` Latin array by two leading rows and columns
    with ``x`` at (0,0) and ``y`` at (1,1), returning every transversal-free
    Latin completion. New symbols are numbered by first use along the
    fixed fill order, so interchangeable fresh symbols are not repeated.
    """
    n = m + 2
    L = [UNSET] * (n * n)
    s = 0
    for i in range(m):
        for j in range(m):
            v = interior[i * m + j]
            L[(i + 2) * n + j + 2] = v
            s = max(s, v + 1)
    L[0] = x
    L[n + 1] = y
    s = max(s, x + 1, y + 1)
    rowsyms = [0] * n
    colsyms = [0] * n
    for i in range(n):
        for j in range(n):
            v = L[i * n + j]
            if v >= 0:
                rowsyms[i] |= 1 << v
                colsyms[j] |= 1 << v
    order = border_order(n)
    out = []

    def rec(idx, nxt):
        if idx == len(order):
            out.append(tuple(L))
            return
        r, c = order[idx]
        avail = ~(rowsyms[r] | colsyms[c])
        for v in range(nxt + 1):
            if not (avail >> v) & 1:
                continue
            L[r * n + c] = v
            if not _through(L, n, r, c):
                rowsyms[r] |= 1 << v
                colsyms[c] |= 1 << v
                rec(idx + 1, nxt + 1 if v == nxt else nxt)
                rowsyms[r] &= ~(1 << v)
                colsyms[c] &= ~(1 << v)
        L[r * n + c] = UNSET

    rec(0, s)
    return out

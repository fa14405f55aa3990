# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled search kernels; same contracts as ``_pykernels``."""

from libc.stdint cimport uint64_t
from libc.string cimport memset, memcpy, memcmp
from cpython.mem cimport PyMem_Malloc, PyMem_Free

IMPLEMENTATION = "cython"

cdef enum:
    MAXN = 16
    MAXCELLS = 256
    HOLE = -1
    UNSET = -2
    HOLE_KEY = 1 << 30


cdef int _load(object cells, int* buf, int size) except -1:
    cdef int i = 0
    cdef object v
    for v in cells:
        if i >= size:
            raise ValueError("too many cells")
        buf[i] = <int>v
        i += 1
    if i != size:
        raise ValueError("wrong number of cells")
    return 0


# -- transversals --------------------------------------------------------------

ctypedef struct TState:
    int n
    int cells[MAXCELLS]
    unsigned char symused[MAXCELLS]
    int choice[MAXN]
    int rowdone[MAXN]
    int witness[MAXN]
    int have_witness
    int dynamic
    long long count
    long long nodes
    long long prunes
    long long limit


cdef inline int _feasible(TState* st, int r, unsigned int colmask, int* out) noexcept nogil:
    cdef int c, v, k = 0, n = st.n
    for c in range(n):
        if not (colmask >> c) & 1:
            v = st.cells[r * n + c]
            if v != HOLE and not st.symused[v]:
                out[k] = c
                k += 1
    return k


cdef int _tsearch(TState* st, int depth, unsigned int colmask) noexcept nogil:
    cdef int opts[MAXN]
    cdef int tmp[MAXN]
    cdef int k, kk, i, r, rr, c, v, n = st.n
    st.nodes += 1
    if depth == n:
        st.count += 1
        if not st.have_witness:
            memcpy(st.witness, st.choice, n * sizeof(int))
            st.have_witness = 1
        return st.limit > 0 and st.count >= st.limit
    if st.dynamic:
        r = -1
        k = n + 1
        for rr in range(n):
            if not st.rowdone[rr]:
                kk = _feasible(st, rr, colmask, tmp)
                if kk < k:
                    k = kk
                    r = rr
                    memcpy(opts, tmp, kk * sizeof(int))
                    if kk == 0:
                        break
    else:
        r = depth
        k = _feasible(st, r, colmask, opts)
    if k == 0:
        st.prunes += 1
        return 0
    st.rowdone[r] = 1
    for i in range(k):
        c = opts[i]
        v = st.cells[r * n + c]
        st.choice[r] = c
        st.symused[v] = 1
        if _tsearch(st, depth + 1, colmask | (1u << c)):
            st.symused[v] = 0
            st.rowdone[r] = 0
            return 1
        st.symused[v] = 0
    st.rowdone[r] = 0
    return 0


def transversal_search(cells, int n, long long limit=0, bint dynamic=False):
    cdef TState st
    if n < 0 or n > MAXN:
        raise ValueError("order out of range")
    if n == 0:
        return 1, 1, 0, []
    memset(&st, 0, sizeof(TState))
    st.n = n
    st.limit = limit
    st.dynamic = dynamic
    _load(cells, st.cells, n * n)
    with nogil:
        _tsearch(&st, 0, 0)
    witness = [st.witness[i] for i in range(n)] if st.have_witness else None
    return st.count, st.nodes, st.prunes, witness


ctypedef struct MState:
    int n
    int cells[MAXCELLS]
    unsigned char symused[MAXCELLS]
    int rows[MAXN]
    int nrows
    int ncols
    unsigned int colmask
    int best
    int sel[MAXN]
    int best_sel[MAXN]
    int cap


cdef int _msearch(MState* st, int idx, unsigned int usedc, int length) noexcept nogil:
    cdef int remaining, r, c, v, n = st.n
    if length > st.best:
        st.best = length
        memcpy(st.best_sel, st.sel, length * sizeof(int))
    if idx == st.nrows:
        return 0
    remaining = st.nrows - idx
    if st.ncols - length < remaining:
        remaining = st.ncols - length
    if length + remaining <= st.best:
        return 0
    r = st.rows[idx]
    for c in range(n):
        if (st.colmask >> c) & 1 and not (usedc >> c) & 1:
            v = st.cells[r * n + c]
            if v != HOLE and not st.symused[v]:
                st.symused[v] = 1
                st.sel[length] = r * n + c
                _msearch(st, idx + 1, usedc | (1u << c), length + 1)
                st.symused[v] = 0
                if st.best == st.cap:
                    return 1
    _msearch(st, idx + 1, usedc, length)
    return 0


def max_partial(cells, int n, unsigned int rowmask, unsigned int colmask):
    cdef MState st
    cdef int r, i
    if n < 0 or n > MAXN:
        raise ValueError("order out of range")
    memset(&st, 0, sizeof(MState))
    st.n = n
    st.colmask = colmask
    _load(cells, st.cells, n * n)
    for r in range(n):
        if (rowmask >> r) & 1:
            st.rows[st.nrows] = r
            st.nrows += 1
    for r in range(n):
        if (colmask >> r) & 1:
            st.ncols += 1
    st.cap = st.nrows if st.nrows < st.ncols else st.ncols
    with nogil:
        _msearch(&st, 0, 0, 0)
    return st.best, [(st.best_sel[i] // n, st.best_sel[i] % n) for i in range(st.best)]


# -- canonical forms -----------------------------------------------------------

ctypedef struct CState:
    int k
    int m
    int P[MAXCELLS]
    int lab[MAXCELLS]
    int cur[MAXCELLS]
    int best[MAXCELLS]
    int have_best
    int cand[MAXN][MAXN][MAXN]
    int tmp[MAXCELLS]


cdef inline int _cmp_prefix(CState* st, int length) noexcept nogil:
    cdef int i
    for i in range(length):
        if st.cur[i] != st.best[i]:
            return -1 if st.cur[i] < st.best[i] else 1
    return 0


cdef inline int _lexless(int* a, int* b, int length) noexcept nogil:
    cdef int i
    for i in range(length):
        if a[i] != b[i]:
            return a[i] < b[i]
    return 0


cdef void _greedy(CState* st, int t, int nxt, unsigned int remaining) noexcept nogil:
    cdef int i, j, v, w, nn, m = st.m, k = st.k
    cdef int first, same, p
    cdef int newsyms[MAXN]
    cdef int nnew
    cdef int* row
    cdef int* mn
    if remaining == 0:
        if not st.have_best or _cmp_prefix(st, k * m) < 0:
            memcpy(st.best, st.cur, k * m * sizeof(int))
            st.have_best = 1
        return
    # relabel each remaining row with provisional labels
    first = -1
    for i in range(k):
        if not (remaining >> i) & 1:
            continue
        row = st.cand[t][i]
        nn = nxt
        for j in range(m):
            v = st.P[i * m + j]
            if v == HOLE:
                row[j] = HOLE_KEY
            else:
                w = st.lab[v]
                if w < 0:
                    w = st.tmp[v]
                    if w < 0:
                        w = nn
                        st.tmp[v] = nn
                        nn += 1
                row[j] = w
        for j in range(m):
            v = st.P[i * m + j]
            if v != HOLE:
                st.tmp[v] = -1
        if first < 0 or _lexless(row, st.cand[t][first], m):
            first = i
    mn = st.cand[t][first]
    for i in range(k):
        if not (remaining >> i) & 1:
            continue
        if memcmp(st.cand[t][i], mn, m * sizeof(int)) != 0:
            continue
        # identical source rows give identical subtrees
        same = 0
        for p in range(i):
            if (remaining >> p) & 1 and memcmp(st.cand[t][p], mn, m * sizeof(int)) == 0:
                if memcmp(&st.P[p * m], &st.P[i * m], m * sizeof(int)) == 0:
                    same = 1
                    break
        if same:
            continue
        memcpy(&st.cur[t * m], mn, m * sizeof(int))
        if st.have_best and _cmp_prefix(st, (t + 1) * m) > 0:
            return
        nnew = 0
        nn = nxt
        for j in range(m):
            v = st.P[i * m + j]
            if v != HOLE and st.lab[v] < 0:
                st.lab[v] = nn
                nn += 1
                newsyms[nnew] = v
                nnew += 1
        _greedy(st, t + 1, nn, remaining & ~(1u << i))
        for j in range(nnew):
            st.lab[newsyms[j]] = -1


cdef void _canon_variant(CState* st, int* src) noexcept nogil:
    cdef int perm[MAXN]
    cdef int i, j, a, b, tmpv, k = st.k, m = st.m
    for j in range(m):
        perm[j] = j
    while True:
        for i in range(k):
            for j in range(m):
                st.P[i * m + j] = src[i * m + perm[j]]
        _greedy(st, 0, 0, (1u << k) - 1)
        # next permutation
        a = m - 2
        while a >= 0 and perm[a] >= perm[a + 1]:
            a -= 1
        if a < 0:
            break
        b = m - 1
        while perm[b] <= perm[a]:
            b -= 1
        tmpv = perm[a]; perm[a] = perm[b]; perm[b] = tmpv
        i = a + 1
        j = m - 1
        while i < j:
            tmpv = perm[i]; perm[i] = perm[j]; perm[j] = tmpv
            i += 1
            j -= 1


def canonical(cells, int k, int m, bint transpose=False):
    cdef CState* st
    cdef int src[MAXCELLS]
    cdef int srcT[MAXCELLS]
    cdef int i, j
    if k < 0 or m < 0 or k > MAXN or m > MAXN:
        raise ValueError("shape out of range")
    _load(cells, src, k * m)
    st = <CState*>PyMem_Malloc(sizeof(CState))
    if st == NULL:
        raise MemoryError()
    try:
        st.k = k
        st.m = m
        st.have_best = 0
        for i in range(MAXCELLS):
            st.lab[i] = -1
            st.tmp[i] = -1
        with nogil:
            _canon_variant(st, src)
        if transpose and k == m:
            for i in range(k):
                for j in range(m):
                    srcT[j * m + i] = src[i * m + j]
            with nogil:
                _canon_variant(st, srcT)
        return tuple([HOLE if st.best[i] == HOLE_KEY else st.best[i] for i in range(k * m)])
    finally:
        PyMem_Free(st)


# -- orderly generation ----------------------------------------------------------

ctypedef struct GState:
    int k
    int m
    int cap
    int max_total
    int holes
    int s
    int rect[MAXCELLS]
    uint64_t colsyms[MAXN]
    int colholes[MAXN]
    uint64_t allowed[MAXN]
    int free_col[MAXN]
    int row[MAXN]
    int use_blocks


cdef int _rect_info(GState* g) except -1:
    cdef int i, c, v
    g.holes = 0
    g.s = 0
    for c in range(g.m):
        g.colsyms[c] = 0
        g.colholes[c] = 0
    for i in range(g.k):
        for c in range(g.m):
            v = g.rect[i * g.m + c]
            if v == HOLE:
                g.colholes[c] += 1
                g.holes += 1
            else:
                if v >= 64:
                    raise ValueError("too many symbols for generation kernel")
                g.colsyms[c] |= (<uint64_t>1) << v
                if v + 1 > g.s:
                    g.s = v + 1
    return 0


cdef int _emit(GState* g, list out) except -1:
    cdef int i, n0 = g.k * g.m
    t = [g.rect[i] for i in range(n0)]
    t.extend([g.row[i] for i in range(g.m)])
    out.append(tuple(t))
    return 0


cdef int _rows_rec(GState* g, list out, int c, uint64_t used, int nfresh, int rh) except -1:
    cdef int v
    cdef uint64_t avail
    if c == g.m:
        _emit(g, out)
        return 0
    if rh < g.cap and g.colholes[c] < g.cap and g.holes + rh < g.max_total:
        g.row[c] = HOLE
        _rows_rec(g, out, c + 1, used, nfresh, rh + 1)
    avail = ~(used | g.colsyms[c])
    if g.use_blocks and not g.free_col[c]:
        avail &= g.allowed[c]
    for v in range(g.s):
        if (avail >> v) & 1:
            g.row[c] = v
            _rows_rec(g, out, c + 1, used | ((<uint64_t>1) << v), nfresh, rh)
    if not g.use_blocks or g.free_col[c]:
        v = g.s + nfresh
        if v >= 64:
            raise ValueError("too many symbols for generation kernel")
        g.row[c] = v
        _rows_rec(g, out, c + 1, used | ((<uint64_t>1) << v), nfresh + 1, rh)
    return 0


def next_rows(rect, int k, int m, int cap, int max_total):
    cdef GState g
    if m > MAXN or (k + 1) * m > MAXCELLS:
        raise ValueError("shape out of range")
    g.k = k
    g.m = m
    g.cap = cap
    g.max_total = max_total
    g.use_blocks = 0
    _load(rect, g.rect, k * m)
    _rect_info(&g)
    out = []
    _rows_rec(&g, out, 0, 0, 0, 0)
    return out


cdef int _block_rec(GState* g, int r, unsigned int usedc, uint64_t useds, uint64_t* inter, int* found) noexcept nogil:
    cdef int cc, v, m = g.m
    if r == g.k:
        if found[0]:
            inter[0] &= useds
        else:
            inter[0] = useds
            found[0] = 1
        return inter[0] == 0
    for cc in range(m):
        if not (usedc >> cc) & 1:
            v = g.rect[r * m + cc]
            if v != HOLE and not (useds >> v) & 1:
                if _block_rec(g, r + 1, usedc | (1u << cc), useds | ((<uint64_t>1) << v), inter, found):
                    return 1
    return 0


def last_rows(rect, int m, int cap, int max_total):
    cdef GState g
    cdef int c, found
    cdef uint64_t inter
    if m > MAXN or m * m > MAXCELLS:
        raise ValueError("shape out of range")
    g.k = m - 1
    g.m = m
    g.cap = cap
    g.max_total = max_total
    g.use_blocks = 1
    _load(rect, g.rect, g.k * m)
    _rect_info(&g)
    for c in range(m):
        inter = 0
        found = 0
        _block_rec(&g, 0, 1u << c, 0, &inter, &found)
        g.free_col[c] = not found
        g.allowed[c] = inter
    out = []
    _rows_rec(&g, out, 0, 0, 0, 0)
    return out


# -- border extension -----------------------------------------------------------

ctypedef struct BState:
    int n
    int L[MAXCELLS]
    uint64_t rowsyms[MAXN]
    uint64_t colsyms[MAXN]
    int order_r[MAXCELLS]
    int order_c[MAXCELLS]
    int ncells
    int rows_buf[MAXN]
    long long nodes


cdef int _through_rec(BState* b, int idx, int nr, unsigned int usedc, uint64_t useds) noexcept nogil:
    cdef int cc, v, base, n = b.n
    if idx == nr:
        return 1
    base = b.rows_buf[idx] * n
    for cc in range(n):
        if not (usedc >> cc) & 1:
            v = b.L[base + cc]
            if v >= 0 and not (useds >> v) & 1:
                if _through_rec(b, idx + 1, nr, usedc | (1u << cc), useds | ((<uint64_t>1) << v)):
                    return 1
    return 0


cdef inline int _through(BState* b, int r, int c) noexcept nogil:
    cdef int i, nr = 0
    for i in range(b.n):
        if i != r:
            b.rows_buf[nr] = i
            nr += 1
    return _through_rec(b, 0, nr, 1u << c, (<uint64_t>1) << b.L[r * b.n + c])


cdef int _border_rec(BState* b, list out, int idx, int nxt) except -1:
    cdef int r, c, v, i, n = b.n
    cdef uint64_t avail, bit
    b.nodes += 1
    if idx == b.ncells:
        out.append(tuple([b.L[i] for i in range(n * n)]))
        return 0
    r = b.order_r[idx]
    c = b.order_c[idx]
    avail = ~(b.rowsyms[r] | b.colsyms[c])
    for v in range(nxt + 1):
        if not (avail >> v) & 1:
            continue
        b.L[r * n + c] = v
        if not _through(b, r, c):
            bit = (<uint64_t>1) << v
            b.rowsyms[r] |= bit
            b.colsyms[c] |= bit
            _border_rec(b, out, idx + 1, nxt + 1 if v == nxt else nxt)
            b.rowsyms[r] &= ~bit
            b.colsyms[c] &= ~bit
    b.L[r * n + c] = UNSET
    return 0


def border_extend(interior, int m, int x, int y):
    cdef BState b
    cdef int i, j, v, s = 0, n = m + 2
    cdef int buf[MAXCELLS]
    if n > MAXN:
        raise ValueError("order out of range")
    _load(interior, buf, m * m)
    b.n = n
    b.nodes = 0
    for i in range(n * n):
        b.L[i] = UNSET
    for i in range(m):
        for j in range(m):
            v = buf[i * m + j]
            b.L[(i + 2) * n + j + 2] = v
            if v + 1 > s:
                s = v + 1
    b.L[0] = x
    b.L[n + 1] = y
    if x + 1 > s:
        s = x + 1
    if y + 1 > s:
        s = y + 1
    if s + 4 * n - 6 > 64:
        raise ValueError("too many symbols for border kernel")
    for i in range(n):
        b.rowsyms[i] = 0
        b.colsyms[i] = 0
    for i in range(n):
        for j in range(n):
            v = b.L[i * n + j]
            if v >= 0:
                b.rowsyms[i] |= (<uint64_t>1) << v
                b.colsyms[j] |= (<uint64_t>1) << v
    b.ncells = 0
    b.order_r[0] = 0; b.order_c[0] = 1
    b.order_r[1] = 1; b.order_c[1] = 0
    b.ncells = 2
    for j in range(2, n):
        b.order_r[b.ncells] = 0; b.order_c[b.ncells] = j
        b.order_r[b.ncells + 1] = j; b.order_c[b.ncells + 1] = 0
        b.ncells += 2
    for j in range(2, n):
        b.order_r[b.ncells] = 1; b.order_c[b.ncells] = j
        b.order_r[b.ncells + 1] = j; b.order_c[b.ncells + 1] = 1
        b.ncells += 2
    out = []
    _border_rec(&b, out, 0, s)
    return out

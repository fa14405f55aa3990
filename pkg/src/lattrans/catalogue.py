"""Catalogues of transversal-free (partial) Latin arrays.

Two routes produce transversal-free Latin arrays of order ``n``:

* direct: row-by-row orderly generation with isomorph rejection on
  rectangles, the last row restricted to symbols that block every
  transversal of the rows above (``enumerate_partial_catalogue`` with no
  holes allowed);
* extension: take a catalogue of transversal-free partial arrays of order
  ``n-2`` with at most two holes per line, fill the holes with two new
  symbols ``x`` and ``y`` in every line-consistent way, and border the
  result with two rows and columns carrying ``x`` at (0,0) and ``y`` at
  (1,1) (``extend_catalogue``).

Every transversal-free Latin array of order ``n >= 3`` is trisotopic to one
produced by extension: pick two entries in distinct rows and columns with
different symbols, move them to (0,0) and (1,1), delete their rows and
columns and hole out the remaining copies of those two symbols. The
result has no partial transversal of full length, else the two entries
would complete it.
"""

from __future__ import annotations

import json
import logging
import os
import threading
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from . import kernels
from .constructions import generate_order6_constructions  # noqa: F401  (re-export)
from .core import HOLE, GridArray, is_latin
from .transversal import count_transversals
from .trisotopy import CanonicalKey, canonical_form

log = logging.getLogger(__name__)

HEARTBEAT_SECONDS = 30.0


class IncompleteCatalogueError(RuntimeError):
    """The catalogue is not known to contain every class."""


@dataclass(frozen=True)
class CatalogueRecord:
    key: CanonicalKey
    order: int
    symbols: int
    holes: int
    transversal_free: bool = True
    provenance: str = ""

    @classmethod
    def from_key(cls, key: CanonicalKey, tf: bool = True, prov: str = "") -> "CatalogueRecord":
        return cls(key, key.order, key.num_symbols, key.num_holes, tf, prov)

    def to_json(self) -> dict:
        return {
            "key": str(self.key),
            "order": self.order,
            "symbols": self.symbols,
            "holes": self.holes,
            "tf": self.transversal_free,
            "prov": self.provenance,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CatalogueRecord":
        key = CanonicalKey.parse(obj["key"])
        rec = cls(key, obj["order"], obj["symbols"], obj["holes"], obj["tf"], obj.get("prov", ""))
        if (rec.order, rec.symbols, rec.holes) != (key.order, key.num_symbols, key.num_holes):
            raise ValueError(f"record metadata disagrees with its key: {obj}")
        return rec

    def array(self) -> GridArray:
        return self.key.to_array()


def _meta_path(path: Path) -> Path:
    return path.with_name(path.name + ".meta.json")


class CatalogueStore:
    """Append-only set of records keyed by canonical form.

    With a ``path`` every new record is appended to a JSON-lines file at
    once, and a ``.meta.json`` sidecar holds the catalogue parameters
    (``order``, ``kind``, hole limits, ``complete``).
    """

    def __init__(self, path: str | os.PathLike | None = None, **meta) -> None:
        self.path = Path(path) if path is not None else None
        self.meta: dict = {"order": None, "kind": "latin", "cap": 0, "total": None, "complete": False}
        self.meta.update(meta)
        self._records: dict[CanonicalKey, CatalogueRecord] = {}
        self._lock = threading.Lock()
        if self.path is not None:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            if self.path.exists():
                self._reload()
            else:
                self.path.touch()
            self.write_meta()

    @classmethod
    def load(cls, path: str | os.PathLike) -> "CatalogueStore":
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(path)
        meta = {}
        if _meta_path(path).exists():
            meta = json.loads(_meta_path(path).read_text())
        return cls(path, **meta)

    def _reload(self) -> None:
        with open(self.path) as fh:
            for line in fh:
                line = line.strip()
                if line:
                    rec = CatalogueRecord.from_json(json.loads(line))
                    self._records.setdefault(rec.key, rec)
        sidecar = _meta_path(self.path)
        if sidecar.exists():
            self.meta.update(json.loads(sidecar.read_text()))

    def write_meta(self) -> None:
        if self.path is not None:
            _meta_path(self.path).write_text(json.dumps(self.meta, sort_keys=True) + "\n")

    def mark_complete(self, complete: bool = True) -> None:
        self.meta["complete"] = complete
        self.write_meta()

    @property
    def order(self) -> int | None:
        return self.meta.get("order")

    @property
    def complete(self) -> bool:
        return bool(self.meta.get("complete"))

    def add(self, record: CatalogueRecord) -> bool:
        """Insert unless the key is present; returns whether it was new."""
        with self._lock:
            if record.key in self._records:
                return False
            self._records[record.key] = record
            if self.path is not None:
                with open(self.path, "a") as fh:
                    fh.write(json.dumps(record.to_json()) + "\n")
            return True

    def add_key(self, key: CanonicalKey, prov: str = "", tf: bool = True) -> bool:
        return self.add(CatalogueRecord.from_key(key, tf, prov))

    def __contains__(self, key: CanonicalKey) -> bool:
        return key in self._records

    def __len__(self) -> int:
        return len(self._records)

    def __iter__(self) -> Iterator[CatalogueRecord]:
        return iter(self.records())

    def records(self) -> list[CatalogueRecord]:
        return sorted(self._records.values(), key=lambda r: r.key.sort_key())

    def keys(self) -> list[CanonicalKey]:
        return [r.key for r in self.records()]

    def counts(self) -> Counter:
        """Number of classes per ``(holes, symbols)``."""
        return Counter((r.holes, r.symbols) for r in self._records.values())


class _Heartbeat:
    def __init__(self, label: str, every: float = HEARTBEAT_SECONDS) -> None:
        self.label = label
        self.every = every
        self.last = time.monotonic()

    def __call__(self, msg: str) -> None:
        now = time.monotonic()
        if now - self.last >= self.every:
            self.last = now
            log.info("%s: %s", self.label, msg)


# -- direct enumeration ----------------------------------------------------------


def _direct_keys(m: int, cap: int, total: int, beat: _Heartbeat) -> set[tuple[int, ...]]:
    if m == 1:
        # a filled 1x1 array is its own transversal
        return {(HOLE,)} if cap >= 1 and total >= 1 else set()
    level: set[tuple[int, ...]] = {()}
    for k in range(m - 2):
        nxt = set()
        for rect in level:
            for ext in kernels.next_rows(rect, k, m, cap, total):
                nxt.add(kernels.canonical(ext, k + 1, m, False))
        level = nxt
        log.debug("order %d: %d classes of %d-row rectangles", m, len(level), k + 1)
    finals: set[tuple[int, ...]] = set()
    for i, rect in enumerate(sorted(level)):
        for ext in kernels.next_rows(rect, m - 2, m, cap, total):
            for full in kernels.last_rows(ext, m, cap, total):
                finals.add(kernels.canonical(full, m, m, True))
        beat(f"{i + 1}/{len(level)} rectangles, {len(finals)} classes")
    return finals


def enumerate_partial_catalogue(
    m: int,
    max_holes_per_line: int = 2,
    max_holes_total: int | None = None,
    path: str | os.PathLike | None = None,
) -> CatalogueStore:
    """Every trisotopy class of order-``m`` partial Latin arrays with no
    partial transversal of length ``m`` within the hole limits.

    ``max_holes_per_line=0`` gives the transversal-free Latin arrays.
    """
    if m < 1:
        raise ValueError("order must be positive")
    cap = max_holes_per_line
    total = m * m if max_holes_total is None else max_holes_total
    kind = "latin" if cap == 0 or total == 0 else "partial"
    store = CatalogueStore(path, order=m, kind=kind, cap=cap, total=max_holes_total, complete=False)
    beat = _Heartbeat(f"enumerate m={m}")
    prov = f"direct:cap={cap},total={max_holes_total}"
    for cells in _direct_keys(m, cap, total, beat):
        store.add_key(CanonicalKey(m, cells), prov)
    store.mark_complete()
    return store


def direct_latin_catalogue(n: int, path: str | os.PathLike | None = None) -> CatalogueStore:
    return enumerate_partial_catalogue(n, 0, 0, path)


# -- extension ----------------------------------------------------------------------


def fill_xy(seed: Sequence[int], m: int) -> tuple[list[tuple[int, ...]], int, int]:
    """All ways to fill the holes of ``seed`` with two new symbols so that
    neither repeats in a line. Returns ``(fillings, x, y)``."""
    s = max((v for v in seed if v != HOLE), default=-1) + 1
    x, y = s, s + 1
    holes = [i for i, v in enumerate(seed) if v == HOLE]
    cur = list(seed)
    out: list[tuple[int, ...]] = []

    def rec(h, rx, cx, ry, cy):
        if h == len(holes):
            out.append(tuple(cur))
            return
        i = holes[h]
        r, c = divmod(i, m)
        if not (rx >> r) & 1 and not (cx >> c) & 1:
            cur[i] = x
            rec(h + 1, rx | 1 << r, cx | 1 << c, ry, cy)
        if not (ry >> r) & 1 and not (cy >> c) & 1:
            cur[i] = y
            rec(h + 1, rx, cx, ry | 1 << r, cy | 1 << c)
        cur[i] = HOLE

    rec(0, 0, 0, 0, 0)
    return out, x, y


def _extend_seed(seed: tuple[int, ...], m: int) -> set[tuple[int, ...]]:
    n = m + 2
    fillings, x, y = fill_xy(seed, m)
    seen: set[tuple[int, ...]] = set()
    keys: set[tuple[int, ...]] = set()
    for interior in fillings:
        for full in kernels.border_extend(interior, m, x, y):
            if full in seen:
                continue
            seen.add(full)
            keys.add(kernels.canonical(full, n, n, True))
    return keys


def _extend_chunk(args) -> list[tuple[int, list[tuple[int, ...]]]]:
    seeds, m = args
    return [(i, sorted(_extend_seed(cells, m))) for i, cells in seeds]


def _validate_latin_tf(key: CanonicalKey) -> None:
    A = key.to_array()
    if not is_latin(A) or count_transversals(A) != 0:
        raise AssertionError(f"extension produced an invalid array {key}")


def _check_seed_catalogue(C: CatalogueStore, n: int) -> bool:
    if C.order != n - 2:
        raise ValueError(f"seed catalogue has order {C.order}, need {n - 2}")
    if C.meta.get("cap", 0) < 2 or C.meta.get("total") is not None:
        log.warning("seed catalogue hole limits are tighter than two per line; output is a lower bound")
        return False
    if not C.complete:
        log.warning("seed catalogue is incomplete; output is a lower bound")
        return False
    return True


def _shard_paths(checkpoint_dir: Path, n: int, a: int, b: int) -> tuple[Path, Path]:
    stem = checkpoint_dir / f"order{n}-shard-{a}-of-{b}"
    return stem.with_suffix(".jsonl"), stem.with_suffix(".progress")


def extend_catalogue(
    C: CatalogueStore,
    n: int,
    jobs: int = 1,
    checkpoint_dir: str | os.PathLike | None = None,
    shard: tuple[int, int] | None = None,
    path: str | os.PathLike | None = None,
) -> CatalogueStore:
    """Transversal-free Latin arrays of order ``n`` from an order-``n-2`` seed catalogue.

    Seeds are processed in key order. ``shard=(a, b)`` restricts the run to
    seeds with index ``i % b == a``. With a ``checkpoint_dir`` each shard
    appends its classes to ``order<n>-shard-a-of-b.jsonl`` and records the
    last finished seed in the matching ``.progress`` file, so an interrupted run
    resumes where it stopped.
    """
    if n < 3:
        raise ValueError("extension needs n >= 3; use the direct enumeration below that")
    m = n - 2
    complete = _check_seed_catalogue(C, n)
    a, b = shard if shard is not None else (0, 1)
    if not 0 <= a < b:
        raise ValueError(f"bad shard {a}/{b}")
    seeds = [(i, r.key.cells) for i, r in enumerate(C.records()) if i % b == a]

    if checkpoint_dir is not None:
        cdir = Path(checkpoint_dir)
        cdir.mkdir(parents=True, exist_ok=True)
        spath, ppath = _shard_paths(cdir, n, a, b)
        out = CatalogueStore(spath, order=n, kind="latin", cap=0, total=0, complete=False)
        done = int(ppath.read_text()) if ppath.exists() else -1
        seeds = [(i, s) for i, s in seeds if i > done]
    else:
        ppath = None
        out = CatalogueStore(path, order=n, kind="latin", cap=0, total=0, complete=False)

    beat = _Heartbeat(f"extend n={n} shard {a}/{b}")
    chunk = max(1, min(64, len(seeds) // max(1, 4 * jobs)))
    tasks = [(seeds[i:i + chunk], m) for i in range(0, len(seeds), chunk)]

    def consume(results):
        processed = 0
        for batch in results:
            for i, cells_list in batch:
                for cells in cells_list:
                    key = CanonicalKey(n, cells)
                    if key not in out:
                        _validate_latin_tf(key)
                        out.add_key(key, f"extend:seed={i}")
                if ppath is not None:
                    ppath.write_text(f"{i}\n")
                processed += 1
            beat(f"{processed}/{len(seeds)} seeds, {len(out)} classes")

    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            consume(pool.map(_extend_chunk, tasks))
    else:
        consume(map(_extend_chunk, tasks))

    out.meta["shard"] = [a, b]
    out.meta["seeds_complete"] = complete
    out.meta["finished"] = True
    out.mark_complete(complete and b == 1)
    if path is not None and checkpoint_dir is not None:
        final = CatalogueStore(path, order=n, kind="latin", cap=0, total=0)
        for rec in out.records():
            final.add(rec)
        final.mark_complete(complete and b == 1)
        return final
    return out


def merge_shards(
    checkpoint_dir: str | os.PathLike,
    b: int,
    n: int,
    path: str | os.PathLike | None = None,
) -> CatalogueStore:
    """Union of all ``b`` shard stores for order ``n``.

    The result is complete only if every shard finished and its seeds
    came from a complete catalogue.
    """
    cdir = Path(checkpoint_dir)
    merged = CatalogueStore(path, order=n, kind="latin", cap=0, total=0)
    complete = True
    found = 0
    for a in range(b):
        spath, _ = _shard_paths(cdir, n, a, b)
        if not spath.exists():
            complete = False
            continue
        found += 1
        part = CatalogueStore.load(spath)
        complete &= bool(part.meta.get("finished")) and bool(part.meta.get("seeds_complete"))
        for rec in part.records():
            merged.add(rec)
    if not found:
        raise FileNotFoundError(f"no order-{n} shards in {cdir}")
    merged.mark_complete(complete)
    return merged


def latin_catalogue(
    n: int,
    jobs: int = 1,
    checkpoint_dir: str | os.PathLike | None = None,
    path: str | os.PathLike | None = None,
) -> CatalogueStore:
    """Complete catalogue of transversal-free Latin arrays of order ``n``.

    Orders 1 and 2 use direct enumeration, larger orders the extension of a
    freshly enumerated order-``n-2`` seed catalogue.
    """
    if n <= 2:
        return direct_latin_catalogue(n, path)
    seeds = enumerate_partial_catalogue(n - 2, 2)
    return extend_catalogue(seeds, n, jobs=jobs, checkpoint_dir=checkpoint_dir, path=path)


# -- derived quantities -------------------------------------------------------------


def compute_ell(n: int, catalogue: CatalogueStore) -> int:
    """Least ``l >= n`` such that every Latin array of order ``n`` with at
    least ``l`` symbols has a transversal."""
    if catalogue.order is not None and catalogue.order != n:
        raise ValueError(f"catalogue has order {catalogue.order}, not {n}")
    if not catalogue.complete:
        raise IncompleteCatalogueError(f"catalogue for order {n} is not complete")
    best = max((r.symbols for r in catalogue.records() if r.transversal_free), default=0)
    return max(n, best + 1)


@dataclass(frozen=True)
class Table1Row:
    n: int
    ell: int | None
    by_offset: tuple[int, int, int]
    total: int
    complete: bool

    def cells(self) -> list[str]:
        if not self.complete:
            return [str(self.n), "incomplete", "", "", "", ""]
        counts = ["-" if c == 0 else str(c) for c in self.by_offset]
        return [str(self.n), str(self.ell), *counts, str(self.total)]


TABLE1_HEADER = ["n", "ell(n)", "n symbols", "n+1 symbols", "n+2 symbols", "Total"]


def table1_rows(catalogues: dict[int, CatalogueStore | None], upto: int) -> list[Table1Row]:
    rows = []
    for n in range(1, upto + 1):
        C = catalogues.get(n)
        if C is None or not C.complete:
            rows.append(Table1Row(n, None, (0, 0, 0), 0, False))
            continue
        spread = Counter(r.symbols - n for r in C.records())
        if any(k not in (0, 1, 2) for k in spread):
            raise ValueError(f"order {n} has classes outside n..n+2 symbols: {dict(spread)}")
        by = (spread[0], spread[1], spread[2])
        rows.append(Table1Row(n, compute_ell(n, C), by, len(C), True))
    return rows


def _format_table(header: list[str], body: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in [header, *body]) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() for r in [header, *body]]
    return "\n".join(lines) + "\n"


def table1_report(catalogues: dict[int, CatalogueStore | None], upto: int, start: int = 2) -> str:
    rows = [r for r in table1_rows(catalogues, upto) if r.n >= min(start, upto)]
    return _format_table(TABLE1_HEADER, [r.cells() for r in rows])


TABLE2_SYMBOLS = range(3, 14)


def table2_counts(C: CatalogueStore, holes: Iterable[int]) -> dict[int, dict[int, int]]:
    counts = C.counts()
    return {h: {s: counts.get((h, s), 0) for s in TABLE2_SYMBOLS} for h in holes}


def table2_report(C: CatalogueStore, max_holes: int) -> str:
    """Class counts by holes (rows) and symbols (columns 3..13)."""
    limit = C.meta.get("total")
    header = ["holes"] + [str(s) for s in TABLE2_SYMBOLS]
    body = []
    for h, by_sym in table2_counts(C, range(max_holes + 1)).items():
        if (limit is not None and h > limit) or not C.complete:
            body.append([str(h), "incomplete"] + [""] * (len(TABLE2_SYMBOLS) - 1))
        else:
            body.append([str(h)] + ["-" if by_sym[s] == 0 else str(by_sym[s]) for s in TABLE2_SYMBOLS])
    return _format_table(header, body)


# -- completions ------------------------------------------------------------------


def latin_square_completions(A: GridArray) -> list[GridArray]:
    """Every Latin square of order ``n+1`` on ``n+1`` symbols whose top-left
    ``n x n`` block is ``A``; found by backtracking over the border."""
    n = A.order
    N = n + 1
    s = A.num_symbols
    if s > N or not is_latin(A) or A.num_holes:
        return []
    grid = [list(row) + [HOLE] for row in A.cells] + [[HOLE] * N]
    border = [(i, n) for i in range(n)] + [(n, j) for j in range(N)]
    out = []

    def ok(r, c, v):
        return all(grid[r][k] != v for k in range(N)) and all(grid[k][c] != v for k in range(N))

    def rec(idx):
        if idx == len(border):
            labels = [A.label(v) if v < s else f"z{v - s}" for v in range(N)]
            out.append(GridArray.from_rows(grid, labels))
            return
        r, c = border[idx]
        for v in range(N):
            if ok(r, c, v):
                grid[r][c] = v
                rec(idx + 1)
                grid[r][c] = HOLE

    rec(0)
    return out

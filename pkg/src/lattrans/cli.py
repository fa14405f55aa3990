"""Command-line interface.

Exit status: 0 on success, 1 when the answer is negative (no transversal,
certificate rejected, no guarantee, incomplete table), 2 on usage or input
errors. Progress goes to stderr through ``logging``; results go to stdout.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Sequence

from . import catalogue as cat
from . import certificates as cert
from . import lll as lllmod
from . import trisotopy
from .constructions import generate_order6_constructions
from .core import ArrayFormatError, GridArray, parse_arrays, render_array
from .kernels import IMPLEMENTATION
from .sampling import random_latin_array, random_row_latin_array
from .transversal import count_transversals, max_partial_transversal, search

log = logging.getLogger("lattrans")

OK, NEGATIVE, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- helpers ------------------------------------------------------------------------


def _read_arrays(path: str) -> list[GridArray]:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        arrays = parse_arrays(text)
    except ArrayFormatError as exc:
        raise UsageError(f"{path}: {exc}") from exc
    if not arrays:
        raise UsageError(f"{path}: no array found")
    return arrays


def _read_one(path: str) -> GridArray:
    arrays = _read_arrays(path)
    if len(arrays) != 1:
        raise UsageError(f"{path}: expected one array, found {len(arrays)}")
    return arrays[0]


def _emit(args, obj, text: str) -> None:
    if args.json:
        print(json.dumps(obj, sort_keys=True))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _parse_shard(text: str | None) -> tuple[int, int] | None:
    if text is None:
        return None
    try:
        a, b = (int(x) for x in text.split("/"))
    except ValueError as exc:
        raise UsageError(f"bad --shard {text!r}, expected A/B") from exc
    if not 0 <= a < b:
        raise UsageError(f"bad --shard {text!r}, need 0 <= A < B")
    return a, b


def _parse_hole_range(text: str) -> int:
    hi = text.split("..")[-1]
    try:
        return int(hi)
    except ValueError as exc:
        raise UsageError(f"bad --holes {text!r}") from exc


def latin_path(directory: Path, n: int) -> Path:
    return directory / f"latin-{n}.jsonl"


def partial_path(directory: Path, m: int, cap: int, total: int | None) -> Path:
    tail = "" if total is None else f"-total{total}"
    return directory / f"partial-{m}-cap{cap}{tail}.jsonl"


def _load_latin(args, n: int) -> cat.CatalogueStore | None:
    """Catalogue for order ``n`` from ``--from`` (file or directory), or built."""
    src = Path(args.source) if args.source else None
    if src is not None and src.is_file():
        store = cat.CatalogueStore.load(src)
        return store if store.order == n else None
    if src is not None and latin_path(src, n).exists():
        return cat.CatalogueStore.load(latin_path(src, n))
    if args.build:
        if n > args.limit_order:
            log.warning("order %d above --limit-order %d; not building", n, args.limit_order)
            return None
        out = latin_path(src, n) if src is not None else None
        if out is not None and out.exists():
            out.unlink()
        log.info("building order-%d catalogue", n)
        return cat.latin_catalogue(n, jobs=args.jobs, checkpoint_dir=args.checkpoint, path=out)
    return None


# -- commands -----------------------------------------------------------------------


def cmd_check(args) -> int:
    A = _read_one(args.file)
    stats = search(A, limit=1, dynamic=args.dynamic)
    obj = {
        "transversal": stats.found,
        "witness": stats.witness.to_json(A) if stats.witness else None,
        "nodes": stats.nodes,
        "prunes": stats.prunes,
    }
    if stats.found:
        cells = " ".join(f"({r},{c},{s})" for r, c, s in obj["witness"])
        text = f"transversal: {cells}"
    else:
        text = "no transversal"
    _emit(args, obj, text)
    return OK if stats.found else NEGATIVE


def cmd_count(args) -> int:
    A = _read_one(args.file)
    n = count_transversals(A, jobs=args.jobs)
    _emit(args, {"count": n}, str(n))
    return OK


def cmd_maxpt(args) -> int:
    A = _read_one(args.file)
    length, T = max_partial_transversal(A)
    _emit(args, {"length": length, "witness": T.to_json(A)}, str(length))
    return OK


def cmd_canon(args) -> int:
    keys = []
    for path in args.files:
        for A in _read_arrays(path):
            keys.append(str(trisotopy.canonical_form(A, args.limit_order)))
    _emit(args, {"keys": keys}, "\n".join(keys))
    return OK


def cmd_dedupe(args) -> int:
    store = cat.CatalogueStore(args.out, order=None, kind="mixed")
    total = 0
    for path in args.files:
        if path.endswith(".jsonl"):
            for rec in cat.CatalogueStore.load(path).records():
                total += 1
                store.add(rec)
            continue
        for A in _read_arrays(path):
            total += 1
            key = trisotopy.canonical_form(A, args.limit_order)
            store.add_key(key, f"dedupe:{path}", tf=count_transversals(A) == 0)
    keys = [str(k) for k in store.keys()]
    _emit(args, {"input": total, "classes": len(keys), "keys": keys}, "\n".join(keys))
    return OK


def cmd_catalogue(args) -> int:
    out = None
    if args.out:
        out = Path(args.out)
    elif args.checkpoint:
        out = partial_path(Path(args.checkpoint), args.order, args.holes_per_line, args.max_holes)
    if out is not None and out.exists():
        out.unlink()
    store = cat.enumerate_partial_catalogue(args.order, args.holes_per_line, args.max_holes, out)
    counts = store.counts()
    obj = {
        "order": args.order,
        "classes": len(store),
        "counts": [{"holes": h, "symbols": s, "classes": c} for (h, s), c in sorted(counts.items())],
        "path": str(out) if out else None,
    }
    lines = [f"{len(store)} classes"]
    lines += [f"holes={h} symbols={s}: {c}" for (h, s), c in sorted(counts.items())]
    _emit(args, obj, "\n".join(lines))
    return OK


def cmd_extend(args) -> int:
    shard = _parse_shard(args.shard)
    if args.merge is not None:
        if not args.checkpoint:
            raise UsageError("--merge needs --checkpoint")
        if not args.order:
            raise UsageError("--merge needs --order")
        store = cat.merge_shards(args.checkpoint, args.merge, args.order, args.out)
    else:
        if not args.source:
            raise UsageError("extend needs --from <seed catalogue>")
        seeds = cat.CatalogueStore.load(args.source)
        n = args.order if args.order else (seeds.order or 0) + 2
        if n - 2 != seeds.order:
            raise UsageError(f"seed catalogue has order {seeds.order}; cannot extend to {n}")
        if n > args.limit_order:
            raise UsageError(f"order {n} above --limit-order {args.limit_order}")
        try:
            store = cat.extend_catalogue(
                seeds, n, jobs=args.jobs, checkpoint_dir=args.checkpoint, shard=shard, path=args.out
            )
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    by = sorted(store.counts().items())
    obj = {
        "order": store.order,
        "classes": len(store),
        "complete": store.complete,
        "counts": [{"symbols": s, "classes": c} for (_, s), c in by],
    }
    lines = [f"{len(store)} classes" + ("" if store.complete else " (incomplete)")]
    lines += [f"symbols={s}: {c}" for (_, s), c in by]
    _emit(args, obj, "\n".join(lines))
    return OK


def cmd_ell(args) -> int:
    store = _load_latin(args, args.order)
    if store is None:
        raise UsageError(f"no catalogue for order {args.order}; give --from DIR or --build")
    try:
        value = cat.compute_ell(args.order, store)
    except cat.IncompleteCatalogueError as exc:
        _emit(args, {"order": args.order, "ell": None, "error": str(exc)}, f"incomplete: {exc}")
        return NEGATIVE
    _emit(args, {"order": args.order, "ell": value}, str(value))
    return OK


def cmd_table1(args) -> int:
    stores = {n: _load_latin(args, n) for n in range(1, args.upto + 1)}
    rows = cat.table1_rows(stores, args.upto)
    start = min(2, args.upto)
    shown = [r for r in rows if r.n >= start]
    obj = {
        "rows": [
            {
                "n": r.n,
                "ell": r.ell,
                "n_symbols": r.by_offset[0],
                "n1_symbols": r.by_offset[1],
                "n2_symbols": r.by_offset[2],
                "total": r.total,
                "complete": r.complete,
            }
            for r in shown
        ]
    }
    _emit(args, obj, cat.table1_report(stores, args.upto))
    return OK if all(r.complete for r in shown) else NEGATIVE


def cmd_table2(args) -> int:
    h = _parse_hole_range(args.holes)
    src = Path(args.source) if args.source else None
    if src is not None and src.is_file():
        store = cat.CatalogueStore.load(src)
    else:
        out = partial_path(src, 5, 2, h) if src is not None else None
        if out is not None and out.exists():
            store = cat.CatalogueStore.load(out)
        elif args.build:
            store = cat.enumerate_partial_catalogue(5, 2, h, out)
        else:
            raise UsageError("table2 needs --from FILE/DIR or --build")
    counts = cat.table2_counts(store, range(h + 1))
    obj = {"rows": {str(k): {str(s): c for s, c in v.items() if c} for k, v in counts.items()}}
    _emit(args, obj, cat.table2_report(store, h))
    limit = store.meta.get("total")
    return OK if store.complete and (limit is None or limit >= h) else NEGATIVE


def cmd_constructions(args) -> int:
    arrays = generate_order6_constructions()
    items = []
    for idx, A in enumerate(arrays, start=1):
        items.append(
            {
                "name": f"L{idx}",
                "key": str(trisotopy.canonical_form(A)),
                "symbols": A.num_symbols,
                "transversals": count_transversals(A),
                "grid": render_array(A),
            }
        )
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        for item in items:
            (d / f"{item['name']}.txt").write_text(item["grid"])
    text = "\n".join(f"{it['name']}\n{it['grid']}" for it in items)
    _emit(args, {"arrays": items}, text)
    return OK


def cmd_delta_verify(args) -> int:
    certificate = cert.ldprime_certificate()
    if args.certificate:
        try:
            raw = json.loads(Path(args.certificate).read_text())
            certificate = cert.DeltaCertificate(
                rows1=frozenset(raw["rows1"]),
                cols1=frozenset(raw["cols1"]),
                sym1=frozenset(raw["sym1"]),
                rho_rows=tuple(raw["rho_rows"]),
                rho_cols=tuple(raw["rho_cols"]),
                nu=dict(raw["nu"]),
            )
        except (OSError, KeyError, ValueError) as exc:
            raise UsageError(f"bad certificate file: {exc}") from exc
    results = []
    for A in _read_arrays(args.file):
        try:
            fails = cert.delta_premise_failures(A, certificate)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        results.append({"certified": not fails, "failures": fails})
    text = "\n".join("certified" if r["certified"] else "rejected: " + "; ".join(r["failures"][:3]) for r in results)
    _emit(args, {"results": results}, text)
    return OK if all(r["certified"] for r in results) else NEGATIVE


def cmd_bounds(args) -> int:
    try:
        report = cert.guarantee_transversal(args.order, args.symbols, args.kind)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(args, report.to_json(), report.table())
    return OK if report.guaranteed else NEGATIVE


def cmd_lll(args) -> int:
    A = _read_one(args.file)
    try:
        report = lllmod.lll_condition(A, optimize=args.optimize)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    obj = report.to_json()
    text = f"kappa={report.kappa} mu={report.mu} x={obj['x']} guaranteed={report.guaranteed}"
    if args.search:
        res = lllmod.random_transversal_search(A, seed=args.seed, max_restarts=args.restarts)
        obj["search"] = {
            "seed": args.seed,
            "found": res.found,
            "restarts": res.restarts,
            "steps": res.steps,
            "witness": res.transversal.to_json(A) if res.transversal else None,
        }
        text += f"\nsearch seed={args.seed}: " + (
            f"found after {res.restarts} restarts" if res.found else f"exhausted {res.restarts} restarts"
        )
    _emit(args, obj, text)
    return OK if report.guaranteed else NEGATIVE


def cmd_sample(args) -> int:
    import random

    rng = random.Random(args.seed)
    s = args.symbols if args.symbols is not None else args.order
    make = random_latin_array if args.kind == "latin" else random_row_latin_array
    try:
        arrays = [make(args.order, s, rng) for _ in range(args.count)]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    grids = [render_array(A) for A in arrays]
    _emit(args, {"seed": args.seed, "arrays": grids}, "\n".join(grids))
    return OK


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--seed", default="0", help="random seed")
    common.add_argument("--checkpoint", help="checkpoint directory")
    common.add_argument("--shard", help="run shard A of B, written A/B")
    common.add_argument("--limit-order", type=int, default=trisotopy.CANONICAL_ORDER_LIMIT)
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = argparse.ArgumentParser(prog="lattrans", description="Transversals in Latin arrays.")
    p.add_argument("--version", action="version", version=f"%(prog)s ({IMPLEMENTATION} kernels)")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("check", cmd_check, "does the array have a transversal")
    sp.add_argument("file")
    sp.add_argument("--dynamic", action="store_true", help="fewest-options row ordering")

    sp = add("count", cmd_count, "count transversals")
    sp.add_argument("file")

    sp = add("maxpt", cmd_maxpt, "longest partial transversal")
    sp.add_argument("file")

    sp = add("canon", cmd_canon, "canonical keys of the arrays in the files")
    sp.add_argument("files", nargs="+")

    sp = add("dedupe", cmd_dedupe, "distinct trisotopy classes among grid or JSON-lines files")
    sp.add_argument("files", nargs="+")
    sp.add_argument("--out", help="write the deduplicated catalogue here")

    sp = add("catalogue", cmd_catalogue, "enumerate transversal-free partial Latin arrays")
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--holes-per-line", type=int, default=2)
    sp.add_argument("--max-holes", type=int, default=None, help="limit on the total number of holes")
    sp.add_argument("--out")

    sp = add("extend", cmd_extend, "extend an order n-2 seed catalogue to order n")
    sp.add_argument("--from", dest="source")
    sp.add_argument("--order", type=int)
    sp.add_argument("--out")
    sp.add_argument("--merge", type=int, metavar="B", help="merge B shards from --checkpoint")

    for name, func, help_ in (
        ("ell", cmd_ell, "the value of l(n) from a catalogue"),
        ("table1", cmd_table1, "classes of transversal-free Latin arrays by order"),
    ):
        sp = add(name, func, help_)
        sp.add_argument("--from", dest="source", help="catalogue file or directory")
        sp.add_argument("--build", action="store_true", help="compute missing catalogues")
        if name == "ell":
            sp.add_argument("--order", type=int, required=True)
        else:
            sp.add_argument("--upto", type=int, required=True)

    sp = add("table2", cmd_table2, "order-5 partial arrays by holes and symbols")
    sp.add_argument("--holes", default="1", help="H or 0..H")
    sp.add_argument("--from", dest="source")
    sp.add_argument("--build", action="store_true")

    sp = add("constructions", cmd_constructions, "the nineteen 7-symbol order-6 arrays")
    sp.add_argument("--out", help="write L1.txt ... L19.txt here")

    sp = add("delta-verify", cmd_delta_verify, "check the Z_3 weighting certificate")
    sp.add_argument("file")
    sp.add_argument("--certificate", help="JSON certificate (default: the one for L'')")

    sp = add("bounds", cmd_bounds, "closed-form symbol thresholds")
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--symbols", type=int, required=True)
    sp.add_argument("--kind", choices=("latin", "row-latin"), default="latin")

    sp = add("lll", cmd_lll, "local lemma condition for a Latin array")
    sp.add_argument("file")
    sp.add_argument("--optimize", action="store_true")
    sp.add_argument("--search", action="store_true", help="also run the randomised search")
    sp.add_argument("--restarts", type=int, default=100)

    sp = add("sample", cmd_sample, "random arrays")
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--symbols", type=int)
    sp.add_argument("--kind", choices=("latin", "row-latin"), default="latin")
    sp.add_argument("--count", type=int, default=1)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(asctime)s %(name)s: %(message)s")
    if args.jobs < 1:
        print("error: --jobs must be positive", file=sys.stderr)
        return USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except trisotopy.OrderLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run())

"""Command-line interface.

Exit status: 0 when the tool ran and nothing was refuted, 1 when a checked
property failed (counterexample, disagreement, disconnected flip graph),
2 on usage or input errors.  ``--records`` switches output to one JSON
object per line, each carrying ``schema``, ``kind``, ``inputs`` and
``outputs``.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import flips, invariants, mab, regions, signed, solver, words
from .grid import Region, Tiling, TileSet, format_grid, format_tiling
from .textio import load_region, load_tileset

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


class Output:
    def __init__(self, records: bool, stream=None):
        self.records = records
        self.stream = stream or sys.stdout

    def text(self, line: str = "") -> None:
        if not self.records:
            print(line, file=self.stream)

    def record(self, kind: str, inputs: dict, outputs: dict) -> None:
        if self.records:
            rec = {"schema": SCHEMA_VERSION, "kind": kind, "inputs": inputs, "outputs": outputs}
            print(json.dumps(rec, sort_keys=True), file=self.stream)


def _placements_json(tiling: Tiling) -> list[list]:
    return [[p.tile_index, list(p.offset)] for p in tiling]


def _listing(tiling: Tiling) -> str:
    return " ".join(f"({p.tile_index},{p.offset[0]},{p.offset[1]})" for p in tiling)


def _tiles(args) -> TileSet:
    try:
        return load_tileset(args.tiles)
    except (ValueError, OSError) as exc:
        raise UsageError(str(exc)) from exc


def _region(args) -> Region:
    chosen = [x for x in (args.region, args.rect, args.mrect) if x is not None]
    if len(chosen) != 1:
        raise UsageError("give exactly one of --region, --rect, --mrect")
    try:
        if args.region is not None:
            return load_region(args.region)
        if args.rect is not None:
            return regions.rect(*args.rect)
        return regions.modified_rect(*args.mrect)
    except (ValueError, OSError) as exc:
        raise UsageError(str(exc)) from exc


def _region_desc(args) -> dict:
    if args.region is not None:
        return {"region": str(args.region)}
    if args.rect is not None:
        return {"rect": list(args.rect)}
    return {"mrect": list(args.mrect)}


def _budget(args) -> solver.EnumerationBudget:
    try:
        return solver.EnumerationBudget(args.max_tilings, args.max_nodes)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_solve(args, out: Output) -> int:
    tiles, region = _tiles(args), _region(args)
    found = next(solver.iter_tilings(region, tiles), None)
    inputs = {"tiles": args.tiles, **_region_desc(args)}
    if found is None:
        out.text("untileable")
        out.record("solve", inputs, {"tileable": False})
        return 0
    out.text("tileable")
    out.text(format_tiling(found, tiles))
    out.text(_listing(found))
    out.record("solve", inputs, {"tileable": True, "tiling": _placements_json(found)})
    return 0


def cmd_enumerate(args, out: Output) -> int:
    tiles, region = _tiles(args), _region(args)
    result = solver.enumerate_tilings(region, tiles, _budget(args))
    inputs = {"tiles": args.tiles, **_region_desc(args), "max_tilings": args.max_tilings, "max_nodes": args.max_nodes}
    out.text(f"{len(result.tilings)} tilings" + ("" if result.exhausted else " (search incomplete)"))
    for k, t in enumerate(result.tilings, start=1):
        counts = solver.count_vector(t, len(tiles))
        out.text(f"-- tiling {k}  counts {counts}")
        if not args.quiet:
            out.text(format_tiling(t, tiles))
        out.text(_listing(t))
        out.record("tiling", inputs, {"n": k, "tiling": _placements_json(t), "counts": list(counts)})
    out.record("enumerate", inputs, {"count": len(result.tilings), "exhausted": result.exhausted})
    return 0


def cmd_presentation(args, out: Output) -> int:
    tiles = _tiles(args)
    try:
        pres = words.presentation(tiles)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    for tile, rel in zip(tiles, pres.relators):
        out.text(rel.pretty() if args.pretty else str(rel))
        out.record("relator", {"tiles": args.tiles}, {"index": tile.index, "name": tile.name, "word": str(rel),
                                                      "pretty": rel.pretty()})
    return 0


def _parse_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError as exc:
        raise UsageError(f"bad integer list {text!r}") from exc


def cmd_invariants_verify(args, out: Output) -> int:
    tiles = _tiles(args)
    coeffs = _parse_ints(args.coeffs)
    if len(coeffs) != len(tiles):
        raise UsageError(f"{len(coeffs)} coefficients for {len(tiles)} tiles")
    try:
        f = invariants.InvariantFunctional(coeffs, args.mod)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    inputs = {"tiles": args.tiles, "coeffs": list(coeffs), "mod": args.mod}
    if args.max_area is None:
        region = _region(args)
        report = invariants.verify_functional(f, region, tiles, _budget(args))
        out.text(f"{f}: {report.status}" + (f", value {report.value}" if report.ok else ""))
        if report.status == "counterexample":
            a, b = report.counterexample
            out.text(f"values {report.counter_values[0]} and {report.counter_values[1]}")
            out.text(format_tiling(a, tiles))
            out.text()
            out.text(format_tiling(b, tiles))
        out.record("invariant", {**inputs, **_region_desc(args)},
                   {"status": report.status, "value": report.value, "tilings": report.tilings})
        return 1 if report.status == "counterexample" else 0
    corpus = invariants.build_corpus(tiles, args.max_area, jobs=args.jobs)
    bad = 0
    out.text(f"corpus: {corpus.describe()}")
    for entry, report in invariants.verify_on_corpus(f, corpus):
        if report.status == "counterexample":
            bad += 1
            out.text(f"counterexample on region of area {entry.region.area}: counts {report.counterexample}")
            out.text(format_grid(entry.region.cells))
    out.text(f"{f}: {len(corpus) - bad}/{len(corpus)} regions constant, {bad} counterexamples")
    out.record("invariant_corpus", {**inputs, "max_area": args.max_area},
               {"regions": len(corpus), "counterexamples": bad, "corpus": corpus.params})
    return 1 if bad else 0


def cmd_invariants_coloring(args, out: Output) -> int:
    tiles = _tiles(args)
    try:
        coloring = invariants.PeriodicColoring.parse(Path(args.file).read_text())
    except (ValueError, OSError) as exc:
        raise UsageError(str(exc)) from exc
    values = invariants.coloring_tile_values(coloring, tiles)
    inputs = {"tiles": args.tiles, "file": str(args.file)}
    if values is None:
        out.text("coloring is not tile-invariant")
        out.record("coloring", inputs, {"invariant": False})
        return 1
    out.text("tile values: " + " ".join(f"{t.name}={v}" for t, v in zip(tiles, values)))
    out.text(f"functional: {invariants.InvariantFunctional(values, coloring.modulus)}")
    out.record("coloring", inputs, {"invariant": True, "values": list(values), "modulus": coloring.modulus})
    return 0


def cmd_group(args, out: Output) -> int:
    tiles = _tiles(args)
    extras = []
    for path in args.extra or ():
        try:
            extras.append(load_region(path))
        except (ValueError, OSError) as exc:
            raise UsageError(str(exc)) from exc
    corpus = invariants.build_corpus(tiles, args.max_area, extras, max_nodes=args.max_nodes, jobs=args.jobs)
    if not len(corpus):
        raise UsageError("corpus is empty: no tileable regions")
    shape = invariants.counting_group(corpus)
    out.text(f"tile counting group: {shape}")
    out.text(f"corpus: {corpus.describe()}")
    out.text(f"relation rows: {len(invariants.difference_rows(corpus))}")
    out.record("group", {"tiles": args.tiles, "max_area": args.max_area, "extras": [str(p) for p in args.extra or ()]},
               {"free_rank": shape.free_rank, "torsion": list(shape.torsion), "corpus": corpus.params,
                "regions": len(corpus)})
    return 0


def cmd_signed(args, out: Output) -> int:
    tiles, region = _tiles(args), _region(args)
    if args.pad is not None and args.pad < 0:
        raise UsageError("--pad must be >= 0")
    st = signed.signed_solve(region, tiles, args.pad)
    pad = args.pad if args.pad is not None else max(max(t.height, t.width) for t in tiles)
    inputs = {"tiles": args.tiles, **_region_desc(args), "pad": pad}
    if st is None:
        out.text(f"no signed tiling within pad {pad}")
        out.record("signed", inputs, {"found": False})
        return 0
    ok = signed.verify_signed(st, region, tiles)
    out.text(f"signed tiling with {len(st.terms)} terms, verified {ok}")
    for p, w in st.terms:
        out.text(f"({p.tile_index}, ({p.offset[0]},{p.offset[1]}), {w:+d})")
    sums = st.weights(tiles)
    labels = {cell: str(sums.get(cell, 0)) if abs(sums.get(cell, 0)) < 10 else "*" for cell in st.window}
    out.text(format_grid(st.window, labels))
    out.record("signed", inputs, {"found": True, "verified": ok,
                                  "terms": [[p.tile_index, list(p.offset), w] for p, w in st.terms]})
    return 0 if ok else 1


def cmd_flips_templates(args, out: Output) -> int:
    tiles = _tiles(args)
    templates = flips.move_templates(tiles)
    out.text(f"{len(templates)} templates")
    for k, tpl in enumerate(templates, start=1):
        left = format_tiling(Tiling(tpl.side_a), tiles).splitlines()
        right = format_tiling(Tiling(tpl.side_b), tiles).splitlines()
        out.text(f"-- template {k}")
        for a, b in zip(left, right):
            out.text(f"{a}   <->   {b}")
        out.record("template", {"tiles": args.tiles},
                   {"n": k, "side_a": _placements_json(Tiling(tpl.side_a)),
                    "side_b": _placements_json(Tiling(tpl.side_b))})
    out.record("templates", {"tiles": args.tiles}, {"count": len(templates)})
    return 0


def cmd_flips_connectivity(args, out: Output) -> int:
    tiles, region = _tiles(args), _region(args)
    graph = flips.flip_graph(region, tiles, budget=_budget(args))
    out.text(f"{len(graph.nodes)} tilings, {len(graph.edges)} flip edges: {graph.status}")
    out.record("flip_graph", {"tiles": args.tiles, **_region_desc(args)},
               {"nodes": len(graph.nodes), "edges": len(graph.edges), "status": graph.status,
                "components": graph.components() if graph.exhausted else None})
    return 1 if graph.status == "disconnected" else 0


_KINDS = {"rect": "rect", "mrect": "modified_rect", "modified_rect": "modified_rect", "random": "random_disk",
          "random_disk": "random_disk"}


def cmd_regions_make(args, out: Output) -> int:
    kind = _KINDS.get(args.kind)
    if kind is None:
        raise UsageError(f"unknown region kind {args.kind!r}")
    try:
        if kind == "random_disk":
            if args.area is None:
                raise UsageError("--area is required for random regions")
            region = regions.random_disk_region(args.area, args.seed)
        else:
            if args.a is None or args.b is None:
                raise UsageError("--a and --b are required")
            region = regions.rect(args.a, args.b) if kind == "rect" else regions.modified_rect(args.a, args.b)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    grid = format_grid(region.cells)
    if args.out:
        Path(args.out).write_text(grid + "\n")
    else:
        out.text(grid)
    out.record("region", {"kind": kind, "a": args.a, "b": args.b, "area": args.area, "seed": args.seed},
               {"cells": sorted(list(c) for c in region.cells), "area": region.area})
    return 0


def cmd_classify_mab(args, out: Output) -> int:
    if args.construct:
        a, b = args.construct
        if a < 2 or b < 2:
            raise UsageError("M(a, b) needs a, b >= 2")
        tiling = mab.construct(a, b)
        inputs = {"construct": [a, b]}
        if tiling is None:
            out.text(f"M({a},{b}): predicate false, no construction")
            out.record("construct", inputs, {"predicate": False})
            return 0
        out.text(f"M({a},{b}): {len(tiling)} tiles")
        out.text(format_tiling(tiling, mab.T4))
        out.text(_listing(tiling))
        out.record("construct", inputs, {"predicate": True, "tiling": _placements_json(tiling)})
        return 0
    if args.a_max < 2 or args.b_max < 2:
        raise UsageError("--a-max and --b-max must be >= 2")
    report = mab.verify_range(args.a_max, args.b_max, args.max_nodes)
    out.text(report.table())
    for e in report.entries:
        out.record("mab", {"a": e.a, "b": e.b}, {"predicted": e.predicted, "solved": e.solved, "agree": e.agree})
    out.record("mab_summary", {"a_max": args.a_max, "b_max": args.b_max},
               {"agree": report.agreed, "total": len(report.entries), "inconclusive": report.inconclusive})
    return 0 if report.all_agree else 1


def _add_region_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--region", help="region grid file ('#' cells, first line north)")
    p.add_argument("--rect", nargs=2, type=int, metavar=("A", "B"), help="A rows by B columns rectangle")
    p.add_argument("--mrect", nargs=2, type=int, metavar=("A", "B"), help="modified rectangle M(A,B)")


def _add_budget_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-tilings", type=int)
    p.add_argument("--max-nodes", type=int)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--records", action="store_true", help="emit JSON line records")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for corpus sweeps")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="tilecount", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="find one tiling")
    p.add_argument("--tiles", required=True)
    _add_region_args(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("enumerate", parents=[common], help="list all tilings")
    p.add_argument("--tiles", required=True)
    p.add_argument("--quiet", action="store_true", help="omit the grid drawings")
    _add_region_args(p)
    _add_budget_args(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("presentation", parents=[common], help="tile boundary group relators")
    p.add_argument("--tiles", required=True)
    p.add_argument("--pretty", action="store_true", help="power notation")
    p.set_defaults(func=cmd_presentation)

    p = sub.add_parser("invariants", parents=[common], help="tile invariant checks")
    inv = p.add_subparsers(dest="invariants_command", required=True)
    q = inv.add_parser("verify", parents=[common])
    q.add_argument("--tiles", required=True)
    q.add_argument("--coeffs", required=True, help="comma separated, e.g. 0,-1,1,0")
    q.add_argument("--mod", type=int, default=0)
    q.add_argument("--max-area", type=int, help="check every tileable disk region up to this area")
    _add_region_args(q)
    _add_budget_args(q)
    q.set_defaults(func=cmd_invariants_verify)
    q = inv.add_parser("coloring", parents=[common])
    q.add_argument("--tiles", required=True)
    q.add_argument("--file", required=True, help="modulus line, then weight rows (north first)")
    q.set_defaults(func=cmd_invariants_coloring)

    p = sub.add_parser("group", parents=[common], help="empirical tile counting group")
    p.add_argument("--tiles", required=True)
    p.add_argument("--max-area", type=int, required=True)
    p.add_argument("--extra", action="append", help="additional region file (repeatable)")
    p.add_argument("--max-nodes", type=int)
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("signed", parents=[common], help="signed tiling in a padded window")
    p.add_argument("--tiles", required=True)
    p.add_argument("--pad", type=int)
    _add_region_args(p)
    p.set_defaults(func=cmd_signed)

    p = sub.add_parser("flips", parents=[common], help="2-flip moves and flip graphs")
    fl = p.add_subparsers(dest="flips_command", required=True)
    q = fl.add_parser("templates", parents=[common])
    q.add_argument("--tiles", required=True)
    q.set_defaults(func=cmd_flips_templates)
    q = fl.add_parser("connectivity", parents=[common])
    q.add_argument("--tiles", required=True)
    _add_region_args(q)
    _add_budget_args(q)
    q.set_defaults(func=cmd_flips_connectivity)

    p = sub.add_parser("regions", parents=[common], help="region constructors")
    rg = p.add_subparsers(dest="regions_command", required=True)
    q = rg.add_parser("make", parents=[common])
    q.add_argument("--kind", required=True, help="rect, mrect or random")
    q.add_argument("--a", type=int)
    q.add_argument("--b", type=int)
    q.add_argument("--area", type=int)
    q.add_argument("--out")
    q.set_defaults(func=cmd_regions_make)

    p = sub.add_parser("classify-mab", parents=[common], help="check which M(a,b) the set S tiles")
    p.add_argument("--a-max", type=int, default=11)
    p.add_argument("--b-max", type=int, default=11)
    p.add_argument("--construct", nargs=2, type=int, metavar=("A", "B"))
    p.add_argument("--max-nodes", type=int)
    p.set_defaults(func=cmd_classify_mab)
    return parser


def run(argv: list[str] | None = None, stream=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    out = Output(args.records, stream)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())

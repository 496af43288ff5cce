"""Command-line interface: ``garment <command> ...``.

Exit codes: 0 verdict computed, 2 usage error, 3 I/O error, 4 format error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import blocking, convexity, search
from .geom import GeometryError, convex_hull
from .io import DocumentError, PointSetDocument, dump_document, load_document
from .structures import (
    ALL_KINDS,
    StructureKind,
    all_instances,
    empty_monochromatic_structures,
    geometrically_empty,
    kinds_label,
    parse_kinds,
)
from .svg import render_svg

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_FORMAT = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _num(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    return v


def _pt(p):
    return [_num(p[0]), _num(p[1])]


class Output:
    def __init__(self, as_json: bool, stream=None):
        self.as_json = as_json
        self.stream = stream or sys.stdout

    def emit(self, command: str, record: dict, text: str) -> None:
        if self.as_json:
            self.stream.write(json.dumps({"command": command, **record}) + "\n")
        else:
            self.stream.write(text.rstrip("\n") + "\n")


def _kinds(text: str) -> frozenset:
    try:
        kinds = parse_kinds(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not kinds:
        raise UsageError("--kinds must name at least one structure")
    return kinds


def _colored(doc: PointSetDocument):
    if not doc.colored:
        raise UsageError("this command needs a colored document")
    return doc.cps


def _need_seed(args):
    if args.seed is None:
        raise UsageError(f"{args.command} is randomized: pass --seed")
    return args.seed


# -- commands ------------------------------------------------------------------

def cmd_classify(args, out):
    doc = load_document(args.file)
    pts = list(doc.points)
    kinds = _kinds(args.kinds) if args.kinds else ALL_KINDS
    census = {}
    for k in sorted(kinds):
        census[k.name.lower()] = {"instances": 0, "geometrically_empty": 0}
    for inst in all_instances(pts, kinds):
        census[inst.kind.name.lower()]["instances"] += 1
    for inst in geometrically_empty(pts, kinds):
        census[inst.kind.name.lower()]["geometrically_empty"] += 1
    if doc.colored:
        for k in census.values():
            k["empty_monochromatic"] = 0
        for inst in empty_monochromatic_structures(doc.cps, kinds):
            census[inst.kind.name.lower()]["empty_monochromatic"] += 1
    convex = sum(1 for i in all_instances(pts, {StructureKind.CRAVAT}))
    skirts = sum(1 for i in all_instances(pts, {StructureKind.SKIRT}))
    rec = {"n": len(pts), "hull": len(convex_hull(pts)) if len(pts) >= 3 else len(pts),
           "convex_quadruples": convex, "nonconvex_quadruples": skirts, "kinds": census}
    lines = [f"{len(pts)} points, hull {rec['hull']}, quadruples: {convex} convex, {skirts} non-convex"]
    for name, c in census.items():
        lines.append(f"  {name:9s} " + "  ".join(f"{k}={v}" for k, v in c.items()))
    out.emit("classify", rec, "\n".join(lines))


def cmd_check(args, out):
    cps = _colored(load_document(args.file))
    kinds = _kinds(args.kinds)
    found = empty_monochromatic_structures(cps, kinds)
    rec = {"kinds": kinds_label(kinds), "empty_monochromatic": bool(found),
           "witness": found[0].to_row() if found else None, "count": len(found)}
    text = (f"empty monochromatic structure: {found[0].describe()} ({len(found)} in total)" if found
            else "no empty monochromatic structure")
    out.emit("check", rec, text)


def cmd_min_blockers(args, out):
    doc = load_document(args.file)
    kinds = _kinds(args.kinds)
    red = doc.red_points()
    try:
        res = blocking.min_blockers(red, kinds, args.solver)
    except blocking.TooFewPoints as exc:
        raise UsageError(str(exc)) from None
    rec = {"kinds": kinds_label(kinds), "r": len(red), "count": res.count,
           "placement": [_pt(p) for p in res.placement], "targets": res.n_targets, "cells": res.n_cells}
    text = f"{res.count} blockers for {len(red)} red points ({res.n_targets} clean red structures)\n"
    text += "\n".join(f"  ({_num(x)}, {_num(y)})" for x, y in res.placement)
    out.emit("min-blockers", rec, text)


def cmd_verify_pair(args, out):
    kinds = _kinds(args.kinds)
    claim = blocking.BlockersClaim(args.r, args.b, kinds)
    if args.db:
        configs = (pts for _, pts in search.read_order_type_db(args.db, args.r, args.coord_bytes, args.byteorder))
        source = str(args.db)
    else:
        seed = _need_seed(args)
        configs = search.sample_order_types(args.r, args.budget, seed).sets
        source = f"sampled order types (seed {seed})"
    res = blocking.verify_pair_claim(claim, configs, source, args.solver)
    rec = {"claim": res.label(), "status": res.status.value, "checked": res.checked, "min_seen": res.min_seen,
           "source": source, "witness": [_pt(p) for p in res.witness] if res.witness else None}
    out.emit("verify-pair", rec, f"{res.label()}: {res.status.value} over {res.checked} configurations "
                                 f"(fewest blockers seen: {res.min_seen})")


def _pairs(text):
    out = []
    for item in text.split(","):
        r, _, b = item.partition(":")
        try:
            out.append((int(r), int(b)))
        except ValueError:
            raise UsageError(f"bad pair {item!r}; use r:b") from None
    return out


def cmd_closure(args, out):
    kinds = _kinds(args.kinds)
    try:
        rows = blocking.induction_closure(_pairs(args.base), kinds, args.up_to)
    except (blocking.KindsNotCovered, ValueError) as exc:
        raise UsageError(str(exc)) from None
    rec = {"kinds": kinds_label(kinds), "rows": [{"r": r, "b": b, "how": h} for r, b, h in rows]}
    out.emit("closure", rec, "\n".join(f"<{r},{b}>  {h}" for r, b, h in rows))


def cmd_holes(args, out):
    doc = load_document(args.file)
    if args.k < 3 or args.k > len(doc.points):
        raise UsageError("need 3 <= k <= number of points")
    gons, holes = convexity.count_kgons_kholes(list(doc.points), args.k)
    out.emit("holes", {"k": args.k, "gons": gons, "holes": holes}, f"{args.k}-gons: {gons}  {args.k}-holes: {holes}")


def cmd_six_island(args, out):
    doc = load_document(args.file)
    pts = list(doc.points)
    try:
        res = convexity.six_island_conditions(pts) if args.any_size else convexity.six_island_check(pts)
    except convexity.WrongSize as exc:
        raise UsageError(str(exc)) from None
    rec = {"verdict": res.verdict.value, "witness": list(res.witness), "inside": res.inside}
    text = res.verdict.value + (f": {list(res.witness)}" if res.witness else "")
    if res.inside is not None:
        text += f" contains point {res.inside}"
    out.emit("six-island", rec, text)


def cmd_island(args, out):
    cps = _colored(load_document(args.file))
    seed = _need_seed(args)
    try:
        isl = convexity.unbalanced_island(cps, args.threshold, seed=seed)
    except convexity.No9Gon as exc:
        out.emit("island", {"found": False, "reason": str(exc)}, f"no unbalanced island: {exc}")
        return
    rec = {"found": True, "members": list(isl.members), "hull": list(isl.hull), "r": isl.r, "b": isl.b}
    out.emit("island", rec, f"island of {len(isl.members)} points (hull {isl.hull_size}): {isl.r} red, {isl.b} blue")


def cmd_four_holes(args, out):
    doc = load_document(args.file)
    seed = _need_seed(args)
    pts = list(doc.points)
    try:
        fam = convexity.disjoint_4holes(pts, seed)
    except convexity.TooFewPoints as exc:
        raise UsageError(str(exc)) from None
    ok = convexity.verify_hole_family(pts, fam)
    rec = {"m": len(pts), "bound": (len(pts) - 3) // 2, "holes": [list(h) for h in fam.holes], "verified": ok}
    out.emit("four-holes", rec, f"{len(fam)} interior-disjoint 4-holes (bound {(len(pts) - 3) // 2}), "
                                f"verified: {ok}")


def cmd_es_bound(args, out):
    try:
        v = convexity.es_upper_bound(args.k)
    except convexity.OutOfRange as exc:
        raise UsageError(str(exc)) from None
    out.emit("es-bound", {"k": args.k, "bound": v}, str(v))


def cmd_scan_colorings(args, out):
    doc = load_document(args.file)
    kinds = _kinds(args.kinds)
    try:
        rep = search.scan_colorings(list(doc.points), kinds, jobs=args.jobs)
    except search.TooLarge as exc:
        raise UsageError(str(exc)) from None
    text = rep.verdict.value
    if rep.colors:
        text += ": " + " ".join(c.name.lower() for c in rep.colors)
    out.emit("scan-colorings", rep.to_dict(), text)


def cmd_scan_db(args, out):
    kinds = _kinds(args.kinds)

    def progress(summary):
        rec = {"progress": True, **summary.__dict__}
        out.emit("scan-db", rec, f"checkpoint: next record {summary.next_record}, scanned {summary.records}, "
                                 f"counterexamples {summary.counterexamples}")

    total = counter = 0
    for index, rep in search.scan_order_type_db(
            args.db, args.n, kinds, args.coord_bytes, args.byteorder, args.start, args.limit,
            args.hull_size or None, args.policy, args.checkpoint, args.checkpoint_every, progress):
        total += 1
        if rep.counterexample:
            counter += 1
            out.emit("scan-db", {"record": index, **rep.to_dict()}, f"record {index}: {rep.verdict.value}")
    out.emit("scan-db", {"records": total, "counterexamples": counter},
             f"{total} records scanned, {counter} with a counterexample coloring")


def cmd_search_lb(args, out):
    kinds = _kinds(args.kinds)
    seed = _need_seed(args)
    res = search.lower_bound_search(args.n, kinds, args.budget, seed)
    if args.out:
        doc = PointSetDocument.from_cps(res.cps, name=f"{args.n} points avoiding {kinds_label(kinds)}",
                                        source=f"lower_bound_search seed {seed}",
                                        avoids=kinds if res.success else frozenset())
        Path(args.out).write_text(dump_document(doc))
    rec = {"n": args.n, "kinds": kinds_label(kinds), "success": res.success, "energy": res.energy,
           "moves": res.moves, "seed": seed}
    out.emit("search-lb", rec, f"{'success' if res.success else 'failed'}: energy {res.energy} after {res.moves} moves")


def cmd_verify(args, out):
    doc = load_document(args.file)
    cps = _colored(doc)
    kinds = _kinds(args.kinds) if args.kinds else doc.avoids
    if not kinds:
        raise UsageError("no kinds given and the document declares none")
    ok, census = search.verify_construction(cps, kinds)
    rec = {"kinds": kinds_label(kinds), "avoids": ok,
           "census": [{"instance": e.instance.to_row(), "color": e.color.name.lower(), "blocker": e.blocker,
                       "intruder": e.intruder} for e in census]}
    lines = [f"{'no' if ok else 'has an'} empty monochromatic {kinds_label(kinds)} structure"]
    if args.census:
        for e in census:
            spoil = f"blocked by {e.blocker}" if e.blocker is not None else (
                f"contains {e.intruder}" if e.intruder is not None else "EMPTY")
            lines.append(f"  {e.instance.describe():28s} {e.color.name.lower():5s} {spoil}")
    out.emit("verify", rec, "\n".join(lines))


def cmd_render(args, out):
    doc = load_document(args.file)
    highlights = []
    if args.kinds:
        kinds = _kinds(args.kinds)
        highlights = (empty_monochromatic_structures(doc.cps, kinds) if doc.colored
                      else geometrically_empty(list(doc.points), kinds))
    data = render_svg(doc, highlights)
    if args.output:
        Path(args.output).write_bytes(data)
        out.emit("render", {"output": args.output, "highlights": len(highlights)},
                 f"wrote {args.output} ({len(highlights)} highlighted)")
    elif out.as_json:
        out.emit("render", {"svg": data.decode(), "highlights": len(highlights)}, "")
    else:
        out.stream.write(data.decode())


# -- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="garment", description="Empty monochromatic 4-point structures.")
    p.add_argument("--json", action="store_true", help="one JSON record per result")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, file=True, kinds=None, seed=False):
        sp = sub.add_parser(name, help=help_)
        if file:
            sp.add_argument("file", help="point-set document")
        if kinds is not None:
            sp.add_argument("--kinds", required=kinds, default=None, help="comma list, e.g. pant,bowtie")
        if seed:
            sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        sp.set_defaults(func=fn)
        return sp

    add("classify", cmd_classify, "quadruple and structure census", kinds=False)
    add("check", cmd_check, "look for an empty monochromatic structure", kinds=True)
    sp = add("min-blockers", cmd_min_blockers, "fewest blue points blocking all red structures", kinds=True)
    sp.add_argument("--solver", choices=["auto", "bnb", "milp", "greedy"], default="auto")
    sp = add("verify-pair", cmd_verify_pair, "check <r,b> over order types", file=False, kinds=True, seed=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--db", help="order-type file instead of sampling")
    sp.add_argument("--coord-bytes", type=int, default=None)
    sp.add_argument("--byteorder", choices=["little", "big"], default="little")
    sp.add_argument("--budget", type=int, default=20000)
    sp.add_argument("--solver", choices=["auto", "bnb", "milp"], default="auto")
    sp = add("closure", cmd_closure, "induction table from base pairs", file=False, kinds=True)
    sp.add_argument("--base", default="4:2,5:3")
    sp.add_argument("--up-to", type=int, default=12)
    sp = add("holes", cmd_holes, "count convex k-gons and k-holes")
    sp.add_argument("--k", type=int, required=True)
    sp = add("six-island", cmd_six_island, "convex 6-gon or non-empty convex 5-gon")
    sp.add_argument("--any-size", action="store_true", help="allow sizes other than 11")
    sp = add("island", cmd_island, "unbalanced island", seed=True)
    sp.add_argument("--threshold", type=int, default=5)
    add("four-holes", cmd_four_holes, "interior-disjoint convex 4-holes", seed=True)
    sp = add("es-bound", cmd_es_bound, "upper bound on ES(k)", file=False)
    sp.add_argument("--k", type=int, required=True)
    add("scan-colorings", cmd_scan_colorings, "try every 2-coloring", kinds=True)
    sp = add("scan-db", cmd_scan_db, "scan an order-type file", file=False, kinds=True)
    sp.add_argument("db")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--coord-bytes", type=int, default=None)
    sp.add_argument("--byteorder", choices=["little", "big"], default="little")
    sp.add_argument("--start", type=int, default=0)
    sp.add_argument("--limit", type=int, default=None)
    sp.add_argument("--hull-size", type=int, action="append")
    sp.add_argument("--policy", choices=["all", "layered"], default="all")
    sp.add_argument("--checkpoint", default=None)
    sp.add_argument("--checkpoint-every", type=int, default=10**6)
    sp = add("search-lb", cmd_search_lb, "annealing search for a set avoiding the kinds", file=False,
             kinds=True, seed=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--budget", type=int, default=10**6)
    sp.add_argument("--out", default=None, help="write the best set as a document")
    sp = add("verify", cmd_verify, "construction verdict and census", kinds=False)
    sp.add_argument("--census", action="store_true")
    sp = add("render", cmd_render, "SVG drawing; --kinds highlights empty structures", kinds=False)
    sp.add_argument("-o", "--output", default=None)
    return p


def main(argv: Sequence[str] | None = None, stdout=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    out = Output(args.json, stdout)
    err = sys.stderr
    try:
        args.func(args, out)
    except UsageError as exc:
        err.write(f"garment {args.command}: {exc}\n")
        return EXIT_USAGE
    except (DocumentError, GeometryError, search.BadRecordLength, search.CoordOutOfRange) as exc:
        err.write(f"garment {args.command}: {exc}\n")
        return EXIT_FORMAT
    except OSError as exc:
        err.write(f"garment {args.command}: {exc}\n")
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

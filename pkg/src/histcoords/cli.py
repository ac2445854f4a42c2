"""Command-line front end.

Exit codes: 0 success, 1 validation or evaluation findings, 2 I/O or
usage errors.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, List, Optional, Sequence, TextIO

from .codec import dumps_geometry
from .dataset import (
    DEFAULT_ALIASES,
    compute_stats,
    format_stats,
    level_shares,
    load_aliases,
    load_dataset,
    parse_dataset,
    read_json,
    select_same_precision,
)
from .errors import CoordError, DatasetFileError, EmptyRegionSetError, SchemaError, UnmatchedIdError
from .extractor import DEFAULT_RULES, ExtractionRuleSet, extract
from .geodesy import (
    DEFAULT_TABLE,
    MeridianOffsetTable,
    convert_geometry,
    attach_regions,
    load_regions,
)
from .metrics import evaluate, read_predictions
from .model import Entry

log = logging.getLogger("histcoords")

RULES_ENV = "HISTCOORDS_RULES"

EXIT_OK, EXIT_FINDINGS, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _open_out(path: Optional[str]):
    if path in (None, "-"):
        return contextlib.nullcontext(sys.stdout)
    return open(path, "w", encoding="utf-8")


def _emit_json(obj, out: TextIO) -> None:
    json.dump(obj, out, ensure_ascii=False, indent=2)
    out.write("\n")


def _write_report(args, table: str, payload: dict) -> None:
    if args.format == "json":
        _emit_json(payload, sys.stdout)
    else:
        print(table)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            _emit_json(payload, fh)


def _aliases(args):
    return load_aliases(args.aliases) if getattr(args, "aliases", None) else DEFAULT_ALIASES


def _load(args, path):
    return load_dataset(path, _aliases(args))


def _rules(args) -> ExtractionRuleSet:
    path = args.rules or os.environ.get(RULES_ENV)
    if not path:
        return DEFAULT_RULES
    if not os.path.exists(path):
        raise UsageError(f"rules file not found: {path}")
    try:
        return ExtractionRuleSet.from_file(path)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad rules file {path}: {exc}") from None


def _table(args) -> MeridianOffsetTable:
    table = MeridianOffsetTable.rounded() if args.rounded_offset else DEFAULT_TABLE
    overrides = {}
    for item in args.meridian_offset or ():
        name, sep, value = item.partition("=")
        try:
            overrides[name] = float(value)
        except ValueError:
            raise UsageError(f"--meridian-offset expects NAME=DEGREES, got {item!r}") from None
        if not sep:
            raise UsageError(f"--meridian-offset expects NAME=DEGREES, got {item!r}")
    return table.with_overrides(overrides) if overrides else table


# -- validate -----------------------------------------------------------------


def cmd_validate(args) -> int:
    try:
        ds = _load(args, args.dataset)
    except SchemaError as exc:
        print(json.dumps({"id": None, "kind": "SchemaError", "detail": str(exc)}, ensure_ascii=False))
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_FINDINGS
    for diag in ds.diagnostics:
        print(json.dumps(diag.to_json(), ensure_ascii=False))
    n = len(ds.diagnostics)
    print(f"{len(ds.entries)} entries, {n} problem{'s' if n != 1 else ''}", file=sys.stderr)
    return EXIT_FINDINGS if n else EXIT_OK


# -- extract ------------------------------------------------------------------


def _read_entries(path: str) -> List[Entry]:
    try:
        with open(path, encoding="utf-8") as fh:
            head = fh.read(1024).lstrip()
    except FileNotFoundError:
        raise DatasetFileError(f"no such file: {path}") from None
    if head.startswith("["):
        records = read_json(path)
    else:
        records = []
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                if line.strip():
                    try:
                        records.append(json.loads(line))
                    except json.JSONDecodeError as exc:
                        raise DatasetFileError(f"{path}:{lineno}: {exc}") from None
    return parse_dataset(records).entries


def _extract_record(job) -> dict:
    entry, rules = job
    x = extract(entry, rules)
    return {
        "id": x.entry_id,
        "has_coordinates": x.has_coordinates,
        "prediction": dumps_geometry(x.geometry) if x.geometry is not None else None,
        "meridian": [str(m) for m in x.meridians],
        "diagnostics": [d.to_json() for d in x.diagnostics],
    }


def _map(fn, jobs: Iterable, workers: int) -> list:
    if workers <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs, chunksize=64))


def cmd_extract(args) -> int:
    rules = _rules(args)
    entries = _read_entries(args.entries)
    records = _map(_extract_record, [(e, rules) for e in entries], args.jobs)
    records.sort(key=lambda r: r["id"])
    with _open_out(args.output) as out:
        for record in records:
            out.write(json.dumps(record, ensure_ascii=False) + "\n")
    found = sum(r["has_coordinates"] for r in records)
    print(f"{len(records)} entries, {found} with coordinates", file=sys.stderr)
    return EXIT_OK


# -- evaluate -----------------------------------------------------------------


def cmd_evaluate(args) -> int:
    gold_ds = _load(args, args.gold)
    try:
        preds = read_predictions(args.predictions)
    except FileNotFoundError:
        raise DatasetFileError(f"no such file: {args.predictions}") from None
    gold = {e.id: dumps_geometry(e.coordinates) for e in gold_ds.entries if e.coordinates is not None}
    for diag in gold_ds.diagnostics:
        print(f"gold entry {diag.entry_id} skipped: {diag.detail}", file=sys.stderr)
    try:
        report = evaluate(gold, preds, known_ids=[e.id for e in gold_ds.entries])
    except UnmatchedIdError as exc:
        print(f"error: {exc}", file=sys.stderr)
        _emit_json({"error": "UnmatchedIdError", "orphans": exc.orphans}, sys.stderr)
        return EXIT_FINDINGS
    _write_report(args, report.format_table(), report.to_json())
    return EXIT_OK


# -- convert ------------------------------------------------------------------


def cmd_convert(args) -> int:
    ds = _load(args, args.dataset)
    table = _table(args)
    converted = failed = 0
    with _open_out(args.output) as out:
        for entry in sorted(ds.entries, key=lambda e: e.id):
            if entry.coordinates is None:
                continue
            record = {"id": entry.id, "meridian": [str(m) for m in entry.meridians]}
            try:
                record["geometry"] = convert_geometry(entry.coordinates, entry.meridians, table).to_json()
                converted += 1
            except CoordError as exc:
                record["unconvertible"] = f"{type(exc).__name__}: {exc}"
                failed += 1
            out.write(json.dumps(record, ensure_ascii=False) + "\n")
    print(f"{converted} converted, {failed} unconvertible", file=sys.stderr)
    return EXIT_OK


# -- stats --------------------------------------------------------------------


def cmd_stats(args) -> int:
    ds = _load(args, args.dataset)
    stats = compute_stats(ds)
    selection = select_same_precision(ds)
    shares = level_shares(selection)
    payload = stats.to_json()
    payload["same_precision_shares"] = shares
    table = format_stats(stats) + "\nShares: " + ", ".join(f"{k} {v:.0%}" for k, v in shares.items())
    _write_report(args, table, payload)
    return EXIT_OK


# -- attach -------------------------------------------------------------------


def cmd_attach(args) -> int:
    ds = _load(args, args.dataset)
    try:
        regions = load_regions(args.regions, args.label_prop)
    except FileNotFoundError:
        raise DatasetFileError(f"no such file: {args.regions}") from None
    except (KeyError, ValueError) as exc:
        raise UsageError(f"bad regions file {args.regions}: {exc}") from None
    if not regions:
        raise EmptyRegionSetError(f"{args.regions} holds no regions")
    table = _table(args)
    points, levels, skipped = [], [], 0
    for entry, level in select_same_precision(ds):
        try:
            geom = convert_geometry(entry.coordinates, entry.meridians, table)
        except CoordError:
            skipped += 1
            continue
        points.append(geom.parts[0][0])
        levels.append(level.value)
    counts: dict = {}
    for (_, label), level in zip(attach_regions(points, regions), levels):
        counts.setdefault(label, {"D": 0, "DM": 0, "DMS": 0})[level] += 1
    payload = {"skipped_unconvertible": skipped, "regions": {}}
    lines = [f"{'Region':<24}{'Points':>8}{'D':>7}{'DM':>7}{'DMS':>7}"]
    for label in sorted(counts):
        c = counts[label]
        total = sum(c.values())
        shares = {k: v / total for k, v in c.items()}
        payload["regions"][label] = {"points": total, "counts": c, "shares": shares}
        lines.append(f"{label:<24}{total:>8}" + "".join(f"{shares[k]:>7.0%}" for k in ("D", "DM", "DMS")))
    if skipped:
        lines.append(f"{skipped} points skipped (unsupported meridian)")
    _write_report(args, "\n".join(lines), payload)
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="histcoords", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, report=False, aliases=True):
        if aliases:
            p.add_argument("--aliases", help="JSON file mapping dataset keys to accepted spellings")
        if report:
            p.add_argument("--format", choices=("table", "json"), default="table")
            p.add_argument("-o", "--output", help="also write the JSON report here")

    def geo(p):
        p.add_argument("--rounded-offset", action="store_true", help="use 17.66 for Ferro instead of the exact offset")
        p.add_argument("--meridian-offset", action="append", metavar="NAME=DEGREES",
                       help="offset to subtract for a meridian (repeatable)")

    p = sub.add_parser("validate", help="check a dataset file")
    p.add_argument("dataset")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("extract", help="rule-based extraction over an entries file")
    p.add_argument("entries", help="JSON array or JSON Lines of {id, head, text}")
    p.add_argument("--rules", help=f"rules JSON file (default: ${RULES_ENV} or built-in)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("-o", "--output", help="predictions JSON Lines (default stdout)")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("evaluate", help="score a predictions file against a gold dataset")
    p.add_argument("gold")
    p.add_argument("predictions")
    common(p, report=True)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("convert", help="convert to Greenwich decimal degrees")
    p.add_argument("dataset")
    geo(p)
    p.add_argument("-o", "--output", help="JSON Lines output (default stdout)")
    common(p)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("stats", help="dataset statistics and precision matrix")
    p.add_argument("dataset")
    common(p, report=True)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("attach", help="precision levels per region")
    p.add_argument("dataset")
    p.add_argument("regions", help="GeoJSON FeatureCollection")
    p.add_argument("--label-prop", default="name")
    geo(p)
    common(p, report=True)
    p.set_defaults(func=cmd_attach)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (DatasetFileError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SchemaError, EmptyRegionSetError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FINDINGS


if __name__ == "__main__":
    sys.exit(main())

"""Gold-standard dataset files: load, validate, write, summarize.

A dataset is a JSON array of objects, one per article::

    {"id": "v1-123", "head": "AAHUS", "text": "...",
     "coordinates": [["52 10' N 24 36' E"]], "meridian": ["Pékin"]}

``coordinates`` and ``meridian`` are optional. Alternative key spellings
are mapped through an alias table.
"""

from __future__ import annotations

import ast
import json
import logging
import os
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .codec import decode_geometry, encode_geometry
from .errors import CoordError, DatasetFileError, SchemaError
from .model import (
    Diagnostic,
    Entry,
    MeridianRef,
    Misc,
    MultiSource,
    Point,
    PolyChain,
    PrecisionLevel,
    Rectangle,
    SubEntries,
    precision_of,
)

log = logging.getLogger(__name__)

KEYS = ("id", "head", "text", "coordinates", "meridian")

DEFAULT_ALIASES: Dict[str, Tuple[str, ...]] = {
    "id": ("id", "uid", "entry_id", "ID"),
    "head": ("head", "headword", "vedette"),
    "text": ("text", "content", "contenu"),
    "coordinates": ("coordinates", "coords", "coordinate"),
    "meridian": ("meridian", "meridians"),
}

LEVELS = (PrecisionLevel.D, PrecisionLevel.DM, PrecisionLevel.DMS)


@dataclass
class DatasetFile:
    entries: List[Entry] = field(default_factory=list)
    diagnostics: List[Diagnostic] = field(default_factory=list)

    def by_id(self) -> Dict[str, Entry]:
        return {e.id: e for e in self.entries}


def _lookup(record: Mapping, key: str, aliases: Mapping[str, Sequence[str]]):
    for name in aliases.get(key, (key,)):
        if name in record:
            return True, record[name]
    return False, None


def _coordinates_value(value: Any) -> Any:
    # some exports store the nested list as its printed literal
    if isinstance(value, str):
        try:
            return ast.literal_eval(value)
        except (ValueError, SyntaxError):
            return json.loads(value)
    return value


def entry_from_record(record: Mapping, index: int = 0, aliases: Mapping[str, Sequence[str]] = DEFAULT_ALIASES,
                      diagnostics: Optional[List[Diagnostic]] = None) -> Entry:
    """Build an entry from one JSON object.

    Missing or mistyped id/head/text raise :class:`SchemaError`. An
    undecodable annotation keeps the entry, with no geometry and a
    diagnostic.
    """
    if not isinstance(record, Mapping):
        raise SchemaError(f"expected an object, got {type(record).__name__}", index)
    values = {}
    for key in ("id", "head", "text"):
        found, value = _lookup(record, key, aliases)
        if not found:
            raise SchemaError("missing key", index, key)
        if key == "id" and isinstance(value, int) and not isinstance(value, bool):
            value = str(value)
        if not isinstance(value, str):
            raise SchemaError(f"expected a string, got {type(value).__name__}", index, key)
        values[key] = value
    if not values["id"]:
        raise SchemaError("empty id", index, "id")
    entry_id = values["id"]

    meridians: List[MeridianRef] = []
    found, raw_meridians = _lookup(record, "meridian", aliases)
    if found and raw_meridians is not None:
        if isinstance(raw_meridians, str):
            raw_meridians = [raw_meridians]
        if not isinstance(raw_meridians, list) or not all(isinstance(m, str) for m in raw_meridians):
            raise SchemaError("expected a list of strings", index, "meridian")
        meridians = [MeridianRef.parse(m) for m in raw_meridians]

    geometry = None
    found, raw = _lookup(record, "coordinates", aliases)
    if found and raw not in (None, [], ""):
        try:
            geometry = decode_geometry(_coordinates_value(raw))
        except (CoordError, ValueError, SyntaxError) as exc:
            kind = type(exc).__name__
            if diagnostics is not None:
                diagnostics.append(Diagnostic(entry_id, kind, str(exc)))
            log.debug("entry %s: %s: %s", entry_id, kind, exc)
            return Entry(entry_id, values["head"], values["text"], None, tuple(meridians), raw_coordinates=raw)
    return Entry(entry_id, values["head"], values["text"], geometry, tuple(meridians))


def parse_dataset(records: Any, aliases: Mapping[str, Sequence[str]] = DEFAULT_ALIASES) -> DatasetFile:
    if not isinstance(records, list):
        raise SchemaError(f"dataset must be a JSON array, got {type(records).__name__}")
    ds = DatasetFile()
    seen: Dict[str, int] = {}
    for index, record in enumerate(records):
        entry = entry_from_record(record, index, aliases, ds.diagnostics)
        if entry.id in seen:
            raise SchemaError(f"duplicate id {entry.id!r} (first at entry {seen[entry.id]})", index, "id")
        seen[entry.id] = index
        ds.entries.append(entry)
    return ds


def read_json(path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise DatasetFileError(f"no such file: {path}") from None
    except (OSError, UnicodeDecodeError) as exc:
        raise DatasetFileError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise DatasetFileError(f"{path} is not valid JSON: {exc}") from None


def load_dataset(path, aliases: Mapping[str, Sequence[str]] = DEFAULT_ALIASES) -> DatasetFile:
    return parse_dataset(read_json(path), aliases)


def load_aliases(path) -> Dict[str, Tuple[str, ...]]:
    """Read an alias file mapping each canonical key to accepted spellings."""
    data = read_json(path)
    merged = dict(DEFAULT_ALIASES)
    for key, names in data.items():
        if key not in KEYS:
            raise SchemaError(f"alias for unknown key {key!r}")
        merged[key] = tuple([names] if isinstance(names, str) else names)
    return merged


def entry_to_record(entry: Entry) -> Dict[str, Any]:
    record: Dict[str, Any] = {"id": entry.id, "head": entry.head, "text": entry.text}
    if entry.coordinates is not None:
        record["coordinates"] = encode_geometry(entry.coordinates)
    elif entry.raw_coordinates is not None:
        record["coordinates"] = entry.raw_coordinates
    if entry.meridians:
        record["meridian"] = [str(m) for m in entry.meridians]
    return record


def dumps_dataset(ds: DatasetFile) -> str:
    return json.dumps([entry_to_record(e) for e in ds.entries], ensure_ascii=False, indent=1) + "\n"


def write_dataset(ds: DatasetFile, path) -> None:
    payload = dumps_dataset(ds)
    tmp = f"{path}.tmp"
    try:
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except OSError as exc:
        raise DatasetFileError(f"cannot write {path}: {exc}") from None


# -- statistics ---------------------------------------------------------------


@dataclass
class DatasetStats:
    entries: int = 0
    well_formed_points: int = 0
    latitude_only: int = 0
    longitude_only: int = 0
    surfaces: int = 0
    polygonal_chains: int = 0
    subentries: int = 0
    multiple_sources: int = 0
    miscellaneous: int = 0
    meridian_entries: int = 0
    undecodable: int = 0
    # precision[lat level][lon level] over well-formed single points
    precision: Dict[str, Dict[str, int]] = field(
        default_factory=lambda: {lat.value: {lon.value: 0 for lon in LEVELS} for lat in LEVELS})

    @property
    def incomplete_points(self) -> int:
        return self.latitude_only + self.longitude_only

    @property
    def coordinate_bearing(self) -> int:
        return (self.well_formed_points + self.incomplete_points + self.surfaces + self.polygonal_chains
                + self.subentries + self.multiple_sources + self.miscellaneous)

    @property
    def same_precision(self) -> int:
        return sum(self.precision[lvl.value][lvl.value] for lvl in LEVELS)

    def to_json(self) -> Dict[str, Any]:
        return {
            "entries": self.entries,
            "coordinate_bearing": self.coordinate_bearing,
            "well_formed_points": self.well_formed_points,
            "incomplete_points": self.incomplete_points,
            "latitude_only": self.latitude_only,
            "longitude_only": self.longitude_only,
            "surfaces": self.surfaces,
            "polygonal_chains": self.polygonal_chains,
            "subentries": self.subentries,
            "multiple_sources": self.multiple_sources,
            "miscellaneous": self.miscellaneous,
            "meridian_entries": self.meridian_entries,
            "undecodable": self.undecodable,
            "precision_matrix": self.precision,
            "same_precision": self.same_precision,
        }


def compute_stats(ds: DatasetFile) -> DatasetStats:
    stats = DatasetStats(entries=len(ds.entries))
    for entry in ds.entries:
        if entry.meridians:
            stats.meridian_entries += 1
        g = entry.coordinates
        if g is None:
            if entry.raw_coordinates is not None:
                stats.undecodable += 1
            continue
        if isinstance(g, Point):
            if g.point.well_formed:
                stats.well_formed_points += 1
                lat, lon = precision_of(g.point)
                stats.precision[lat.value][lon.value] += 1
            elif g.point.latitude is not None:
                stats.latitude_only += 1
            else:
                stats.longitude_only += 1
        elif isinstance(g, Rectangle):
            stats.surfaces += 1
        elif isinstance(g, PolyChain):
            stats.polygonal_chains += 1
        elif isinstance(g, SubEntries):
            stats.subentries += 1
        elif isinstance(g, MultiSource):
            stats.multiple_sources += 1
        elif isinstance(g, Misc):
            stats.miscellaneous += 1
    return stats


def select_same_precision(ds: DatasetFile) -> List[Tuple[Entry, PrecisionLevel]]:
    """Well-formed single points whose latitude and longitude share a precision level."""
    out = []
    for entry in ds.entries:
        g = entry.coordinates
        if isinstance(g, Point) and g.point.well_formed:
            lat, lon = precision_of(g.point)
            if lat == lon:
                out.append((entry, lat))
    return out


def level_shares(selection: Iterable[Tuple[Entry, PrecisionLevel]]) -> Dict[str, float]:
    counts = {lvl.value: 0 for lvl in LEVELS}
    for _, lvl in selection:
        counts[lvl.value] += 1
    total = sum(counts.values())
    return {k: (v / total if total else 0.0) for k, v in counts.items()}


def format_stats(stats: DatasetStats) -> str:
    rows = [
        ("Well-formed points", stats.well_formed_points),
        ("Incomplete points", stats.incomplete_points),
        ("  - Latitude only", stats.latitude_only),
        ("  - Longitude only", stats.longitude_only),
        ("Surfaces", stats.surfaces),
        ("Polygonal chains", stats.polygonal_chains),
        ("Subentries", stats.subentries),
        ("Multiple sources", stats.multiple_sources),
        ("Miscellaneous", stats.miscellaneous),
        ("Total with coordinates", stats.coordinate_bearing),
        ("Entries with a meridian", stats.meridian_entries),
        ("Entries", stats.entries),
    ]
    if stats.undecodable:
        rows.append(("Undecodable annotations", stats.undecodable))
    width = max(len(r[0]) for r in rows)
    lines = ["Category".ljust(width) + "  Count"]
    lines += [f"{name.ljust(width)}  {count:>5,}" for name, count in rows]
    lines.append("")
    lines.append("Precision (rows: latitude, columns: longitude)")
    lines.append(" " * 9 + "".join(f"{'Long_' + l.value:>11}" for l in LEVELS))
    for lat in LEVELS:
        cells = "".join(f"{stats.precision[lat.value][lon.value]:>11,}" for lon in LEVELS)
        lines.append(f"{'Lat_' + lat.value:<9}{cells}")
    lines.append(f"Same precision in latitude and longitude: {stats.same_precision:,}")
    return "\n".join(lines)

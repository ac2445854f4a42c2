"""Convert historical longitudes to Greenwich-referenced decimal degrees.

Historical longitudes run eastwards from 0 to 360 degrees, counted from the
island of Ferro, which cartographers fixed 20 degrees west of Paris. Paris
itself lies 2°20'14.025" east of Greenwich.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import EmptyRegionSetError, UnsupportedMeridianError
from .model import (
    FERRO,
    PARIS,
    CanonicalPoint,
    Geometry,
    MeridianRef,
    Misc,
    ModernPoint,
    MultiSource,
    Point,
    PolyChain,
    Rectangle,
    SubEntries,
)

PARIS_EAST_OF_GREENWICH = 2 + 20 / 60 + 14.025 / 3600
FERRO_WEST_OF_PARIS = 20.0
FERRO_OFFSET = FERRO_WEST_OF_PARIS - PARIS_EAST_OF_GREENWICH
FERRO_OFFSET_ROUNDED = 17.66

EARTH_RADIUS_KM = 6371.0088


@dataclass(frozen=True)
class MeridianOffsetTable:
    """Degrees to subtract from a longitude counted from each meridian."""

    offsets: Mapping[str, float] = field(
        default_factory=lambda: {FERRO: FERRO_OFFSET, PARIS: -PARIS_EAST_OF_GREENWICH}
    )

    @classmethod
    def rounded(cls) -> "MeridianOffsetTable":
        """Two-decimal offsets (Ferro 17.66), for output comparable with rounded figures."""
        return cls({FERRO: FERRO_OFFSET_ROUNDED, PARIS: round(-PARIS_EAST_OF_GREENWICH, 2)})

    def with_overrides(self, overrides: Mapping[str, float]) -> "MeridianOffsetTable":
        merged = dict(self.offsets)
        merged.update({str(MeridianRef.parse(k)): v for k, v in overrides.items()})
        return MeridianOffsetTable(merged)

    def offset(self, meridian: MeridianRef) -> float:
        key = str(meridian)
        if key not in self.offsets:
            raise UnsupportedMeridianError(f"no offset known for meridian {key!r}")
        return self.offsets[key]


DEFAULT_TABLE = MeridianOffsetTable()


def wrap(longitude: float) -> float:
    """Map any longitude into (-180, 180]."""
    r = math.fmod(longitude + 180.0, 360.0)
    if r <= 0:
        r += 360.0
    return r - 180.0


def unwrap_historical(longitude: float, meridian: MeridianRef = MeridianRef(),
                      table: MeridianOffsetTable = DEFAULT_TABLE) -> float:
    """Inverse of the longitude conversion, back into [0, 360)."""
    return math.fmod(longitude + table.offset(meridian), 360.0) % 360.0


def convert_point(point: CanonicalPoint, meridian: MeridianRef = MeridianRef(),
                  table: MeridianOffsetTable = DEFAULT_TABLE) -> ModernPoint:
    # refused even for latitude-only points: some references concern latitude
    offset = table.offset(meridian)
    lat = point.latitude.to_decimal() if point.latitude is not None else None
    lon = None
    if point.longitude is not None:
        lon = wrap(point.longitude.to_decimal() - offset)
    return ModernPoint(lat, lon)


@dataclass(frozen=True)
class ModernGeometry:
    """Converted geometry mirroring the nested-list layout of its source.

    ``parts`` holds one tuple of points per inner list of the encoding,
    prefix excluded.
    """

    kind: str
    parts: Tuple[Tuple[ModernPoint, ...], ...]
    crosses_antimeridian: bool = False

    def to_json(self) -> dict:
        return {
            "type": self.kind,
            "coordinates": [[[p.latitude, p.longitude] for p in part] for part in self.parts],
            "crosses_antimeridian": self.crosses_antimeridian,
        }


def resolve_meridian(meridians: Sequence[MeridianRef]) -> MeridianRef:
    distinct = list(dict.fromkeys(meridians))
    if not distinct:
        return MeridianRef()
    if len(distinct) > 1:
        names = ", ".join(str(m) for m in distinct)
        raise UnsupportedMeridianError(f"several reference meridians ({names})")
    return distinct[0]


def convert_geometry(geometry: Geometry, meridians: Sequence[MeridianRef] = (),
                     table: MeridianOffsetTable = DEFAULT_TABLE) -> ModernGeometry:
    meridian = resolve_meridian(meridians)

    def conv(p: CanonicalPoint) -> ModernPoint:
        return convert_point(p, meridian, table)

    crosses = False

    def rect(r: Rectangle) -> Tuple[ModernPoint, ModernPoint]:
        nonlocal crosses
        lo, hi = conv(r.corner_min), conv(r.corner_max)
        if lo.longitude is not None and hi.longitude is not None and lo.longitude > hi.longitude:
            crosses = True
        return lo, hi

    def item(x) -> Tuple[ModernPoint, ...]:
        return (conv(x.point),) if isinstance(x, Point) else rect(x)

    if isinstance(geometry, (Point, Rectangle)):
        parts = (item(geometry),)
    elif isinstance(geometry, PolyChain):
        parts = tuple((conv(p),) for p in geometry.points)
    elif isinstance(geometry, (SubEntries, MultiSource)):
        parts = tuple(item(x) for x in geometry.items)
    elif isinstance(geometry, Misc):
        parts = tuple(tuple(conv(p) for p in group) for group in geometry.groups)
    else:
        raise TypeError(f"not a geometry: {geometry!r}")
    return ModernGeometry(geometry.kind, parts, crosses)


# -- regions ------------------------------------------------------------------


def haversine_km(lat1: float, lon1: float, lat2: float, lon2: float) -> float:
    phi1, phi2 = math.radians(lat1), math.radians(lat2)
    dphi = phi2 - phi1
    dlmb = math.radians(lon2 - lon1)
    a = math.sin(dphi / 2) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlmb / 2) ** 2
    return 2 * EARTH_RADIUS_KM * math.asin(min(1.0, math.sqrt(a)))


Ring = List[Tuple[float, float]]  # (lon, lat) as in GeoJSON


def _in_ring(lon: float, lat: float, ring: Ring) -> bool:
    inside = False
    n = len(ring)
    for i in range(n):
        x1, y1 = ring[i]
        x2, y2 = ring[(i + 1) % n]
        if (y1 > lat) != (y2 > lat):
            x = x1 + (lat - y1) * (x2 - x1) / (y2 - y1)
            if lon < x:
                inside = not inside
    return inside


def _on_boundary(lon: float, lat: float, ring: Ring, eps: float = 1e-12) -> bool:
    n = len(ring)
    for i in range(n):
        x1, y1 = ring[i]
        x2, y2 = ring[(i + 1) % n]
        cross = (x2 - x1) * (lat - y1) - (y2 - y1) * (lon - x1)
        if abs(cross) <= eps and min(x1, x2) - eps <= lon <= max(x1, x2) + eps \
                and min(y1, y2) - eps <= lat <= max(y1, y2) + eps:
            return True
    return False


@dataclass(frozen=True)
class Region:
    """A labelled area made of polygons; each polygon is a shell plus holes."""

    label: str
    polygons: Tuple[Tuple[Ring, ...], ...]

    def contains(self, lat: float, lon: float) -> bool:
        for rings in self.polygons:
            shell, holes = rings[0], rings[1:]
            if _on_boundary(lon, lat, shell):
                return True
            if _in_ring(lon, lat, shell) and not any(_in_ring(lon, lat, h) for h in holes):
                return True
        return False

    def vertex_distance_km(self, lat: float, lon: float) -> float:
        return min(haversine_km(lat, lon, vlat, vlon)
                   for rings in self.polygons for ring in rings for vlon, vlat in ring)


def _rings(coords) -> Tuple[Ring, ...]:
    rings = []
    for ring in coords:
        pts = [(float(x), float(y)) for x, y, *_ in ring]
        if len(pts) > 1 and pts[0] == pts[-1]:
            pts = pts[:-1]
        rings.append(pts)
    return tuple(rings)


def regions_from_geojson(data: Mapping, label_prop: str = "name") -> List[Region]:
    """Read labelled regions from a GeoJSON FeatureCollection.

    Features sharing a label are merged into one region.
    """
    polys: Dict[str, list] = {}
    for i, feature in enumerate(data.get("features", [])):
        props = feature.get("properties") or {}
        if label_prop not in props:
            raise KeyError(f"feature {i} has no property {label_prop!r}")
        label = str(props[label_prop])
        geom = feature.get("geometry") or {}
        if geom.get("type") == "Polygon":
            found = [_rings(geom["coordinates"])]
        elif geom.get("type") == "MultiPolygon":
            found = [_rings(p) for p in geom["coordinates"]]
        else:
            raise ValueError(f"feature {i}: unsupported geometry type {geom.get('type')!r}")
        polys.setdefault(label, []).extend(found)
    return [Region(label, tuple(p)) for label, p in polys.items()]


def load_regions(path, label_prop: str = "name") -> List[Region]:
    with open(path, encoding="utf-8") as fh:
        return regions_from_geojson(json.load(fh), label_prop)


def attach_regions(points: Iterable[ModernPoint], regions: Sequence[Region]) -> List[Tuple[ModernPoint, Optional[str]]]:
    """Label each point with a containing region, else the nearest one.

    Nearness is the great-circle distance to the closest polygon vertex.
    Ties go to the lexicographically smallest label. Points lacking a
    latitude or longitude get ``None``.
    """
    if not regions:
        raise EmptyRegionSetError("no regions supplied")
    ordered = sorted(regions, key=lambda r: r.label)
    out = []
    for p in points:
        if not p.complete:
            out.append((p, None))
            continue
        label = next((r.label for r in ordered if r.contains(p.latitude, p.longitude)), None)
        if label is None:
            label = min(ordered, key=lambda r: (r.vertex_distance_km(p.latitude, p.longitude), r.label)).label
        out.append((p, label))
    return out

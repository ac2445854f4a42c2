"""A generated dataset with the category counts of the released gold file.

It stands in for the released gold file when checking the statistics code
and its runtime; it says nothing about the real corpus.
"""

from __future__ import annotations

import random

from histcoords.codec import encode_geometry
from histcoords.model import CanonicalPoint, DmsAngle, Misc, MultiSource, Point, PolyChain, Rectangle, SubEntries

MATRIX = {
    "D": {"D": 116, "DM": 182, "DMS": 2},
    "DM": {"D": 278, "DM": 3356, "DMS": 91},
    "DMS": {"D": 3, "DM": 38, "DMS": 221},
}
COUNTS = {
    "latitude_only": 221,
    "longitude_only": 11,
    "surfaces": 133,
    "polygonal_chains": 11,
    "subentries": 47,
    "multiple_sources": 87,
    "miscellaneous": 1,
}
MERIDIAN_ENTRIES = 40
TOTAL_ENTRIES = 15278


def _angle(rng: random.Random, level: str, hemis: str) -> DmsAngle:
    hemi = rng.choice(hemis)
    deg = rng.randrange(90 if hemi in "NS" else 360)
    minutes = rng.randrange(60) if level != "D" else None
    seconds = rng.randrange(60) if level == "DMS" else None
    return DmsAngle(deg, minutes, seconds, hemi)


def _point(rng: random.Random, lat="DM", lon="DM") -> CanonicalPoint:
    return CanonicalPoint(_angle(rng, lat, "NS"), _angle(rng, lon, "EW"))


def _rect(rng: random.Random) -> Rectangle:
    return Rectangle.from_corners(_point(rng), _point(rng))[0]


def build_records(seed: int = 0) -> list:
    rng = random.Random(seed)
    geometries = []
    for lat, row in MATRIX.items():
        for lon, n in row.items():
            geometries += [Point(_point(rng, lat, lon)) for _ in range(n)]
    geometries += [Point(CanonicalPoint(_angle(rng, "DM", "NS"))) for _ in range(COUNTS["latitude_only"])]
    geometries += [Point(CanonicalPoint(None, _angle(rng, "D", "EW"))) for _ in range(COUNTS["longitude_only"])]
    geometries += [_rect(rng) for _ in range(COUNTS["surfaces"])]
    geometries += [PolyChain((_point(rng), _point(rng))) for _ in range(COUNTS["polygonal_chains"])]
    geometries += [SubEntries((Point(_point(rng)), _rect(rng))) for _ in range(COUNTS["subentries"])]
    geometries += [MultiSource((Point(_point(rng)), Point(_point(rng)))) for _ in range(COUNTS["multiple_sources"])]
    geometries += [Misc(((_point(rng), _point(rng)), (_point(rng),))) for _ in range(COUNTS["miscellaneous"])]
    geometries += [None] * (TOTAL_ENTRIES - len(geometries))
    rng.shuffle(geometries)

    records = []
    meridians_left = MERIDIAN_ENTRIES
    for i, g in enumerate(geometries):
        record = {"id": f"s{i:05d}", "head": f"LIEU{i}", "text": f"* LIEU{i}, ville. " + "x" * rng.randrange(40, 400)}
        if g is not None:
            record["coordinates"] = encode_geometry(g)
            if meridians_left:
                record["meridian"] = [rng.choice(["Paris", "Pékin", "Londres", "Lund"])]
                meridians_left -= 1
        records.append(record)
    return records


def random_angle(rng: random.Random, hemis: str = "NSEW") -> DmsAngle:
    hemi = rng.choice(hemis)
    limit = 90 if hemi in "NS" else 360
    deg = rng.randint(0, limit)
    if deg == limit:
        return DmsAngle(deg, rng.choice([None, 0]), None, hemi)
    minutes = rng.choice([None, rng.randrange(60)])
    seconds = None
    if minutes is not None and rng.random() < 0.5:
        seconds = rng.randrange(60) if rng.random() < 0.5 else rng.randrange(60000) / 1000
    return DmsAngle(deg, minutes, seconds, hemi)


def random_point(rng: random.Random, complete: bool = False) -> CanonicalPoint:
    shape = 0 if complete else rng.randrange(4)
    lat = random_angle(rng, "NS") if shape != 1 else None
    lon = random_angle(rng, "EW") if shape != 2 else None
    return CanonicalPoint(lat, lon)


def random_geometry(rng: random.Random):
    """Any geometry variant, with partial points and fractional seconds."""
    def item():
        if rng.random() < 0.6:
            return Point(random_point(rng))
        return Rectangle.from_corners(random_point(rng, True), random_point(rng, True))[0]

    kind = rng.randrange(6)
    if kind == 0:
        return Point(random_point(rng))
    if kind == 1:
        return Rectangle.from_corners(random_point(rng, True), random_point(rng, True))[0]
    if kind == 2:
        return PolyChain(tuple(random_point(rng) for _ in range(rng.randint(2, 5))))
    if kind == 3:
        return SubEntries(tuple(item() for _ in range(rng.randint(2, 4))))
    if kind == 4:
        return MultiSource(tuple(item() for _ in range(rng.randint(2, 4))))
    return Misc(tuple(tuple(random_point(rng) for _ in range(rng.randint(1, 3))) for _ in range(rng.randint(1, 3))))

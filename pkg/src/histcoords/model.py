"""Value types for historical coordinates.

Everything here is an immutable dataclass. Validation happens in
``__post_init__`` so an invalid value can never be constructed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Iterator, Optional, Tuple, Union

from .errors import CoordError, RangeError

LATITUDE_HEMISPHERES = frozenset("NS")
LONGITUDE_HEMISPHERES = frozenset("EW")


class PrecisionLevel(str, enum.Enum):
    D = "D"
    DM = "DM"
    DMS = "DMS"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class DmsAngle:
    """One angular measure: degrees, optional minutes and seconds, hemisphere.

    ``seconds`` may be fractional. Presence of a field, not its value,
    decides the precision level: ``10 0' N`` is DM, ``10 N`` is D.
    """

    degrees: int
    minutes: Optional[int] = None
    seconds: Optional[float] = None
    hemisphere: str = "N"

    def __post_init__(self) -> None:
        if self.hemisphere not in ("N", "S", "E", "W"):
            raise CoordError(f"unknown hemisphere {self.hemisphere!r}")
        if isinstance(self.degrees, bool) or not isinstance(self.degrees, int):
            raise CoordError(f"degrees must be an integer, got {self.degrees!r}")
        if self.degrees < 0:
            raise RangeError(f"negative degrees {self.degrees}")
        if self.minutes is not None:
            if isinstance(self.minutes, bool) or not isinstance(self.minutes, int):
                raise CoordError(f"minutes must be an integer, got {self.minutes!r}")
            if not 0 <= self.minutes < 60:
                raise RangeError(f"minutes {self.minutes} outside [0, 60)")
        if self.seconds is not None:
            if self.minutes is None:
                raise CoordError("seconds given without minutes")
            if not 0 <= self.seconds < 60:
                raise RangeError(f"seconds {self.seconds} outside [0, 60)")
        limit = 90 if self.is_latitude else 360
        if self.degrees > limit:
            raise RangeError(f"{self.degrees} degrees exceeds {limit} for hemisphere {self.hemisphere}")
        if self.degrees == limit and (self.minutes or self.seconds):
            raise RangeError(f"{limit} degrees admits no minutes or seconds")

    @property
    def is_latitude(self) -> bool:
        return self.hemisphere in LATITUDE_HEMISPHERES

    @property
    def precision(self) -> PrecisionLevel:
        if self.minutes is None:
            return PrecisionLevel.D
        if self.seconds is None:
            return PrecisionLevel.DM
        return PrecisionLevel.DMS

    @property
    def sign(self) -> int:
        return -1 if self.hemisphere in ("S", "W") else 1

    def to_decimal(self) -> float:
        value = self.degrees + (self.minutes or 0) / 60 + (self.seconds or 0) / 3600
        return self.sign * value


@dataclass(frozen=True)
class CanonicalPoint:
    """A latitude part and/or a longitude part."""

    latitude: Optional[DmsAngle] = None
    longitude: Optional[DmsAngle] = None

    def __post_init__(self) -> None:
        if self.latitude is None and self.longitude is None:
            raise CoordError("a point needs a latitude or a longitude")
        if self.latitude is not None and not self.latitude.is_latitude:
            raise CoordError(f"latitude with hemisphere {self.latitude.hemisphere}")
        if self.longitude is not None and self.longitude.is_latitude:
            raise CoordError(f"longitude with hemisphere {self.longitude.hemisphere}")

    @property
    def well_formed(self) -> bool:
        return self.latitude is not None and self.longitude is not None


def precision_of(point: CanonicalPoint) -> Tuple[Optional[PrecisionLevel], Optional[PrecisionLevel]]:
    """Precision level of each present part, ``None`` for an absent part."""
    lat = point.latitude.precision if point.latitude is not None else None
    lon = point.longitude.precision if point.longitude is not None else None
    return lat, lon


# -- geometries ---------------------------------------------------------------


@dataclass(frozen=True)
class Point:
    point: CanonicalPoint

    kind = "point"


def _axis_value(point: CanonicalPoint, axis: str) -> Optional[float]:
    angle = getattr(point, axis)
    return None if angle is None else angle.to_decimal()


@dataclass(frozen=True)
class Rectangle:
    """Bounding box given by its two extreme corners.

    Corners are ordered per axis (``corner_min`` holds the smaller decimal
    value) wherever both corners carry that axis. A corner may lack an axis
    for regions bounded by latitudes or longitudes only.
    """

    corner_min: CanonicalPoint
    corner_max: CanonicalPoint

    kind = "rectangle"

    def __post_init__(self) -> None:
        for axis in ("latitude", "longitude"):
            lo = _axis_value(self.corner_min, axis)
            hi = _axis_value(self.corner_max, axis)
            if lo is not None and hi is not None and lo > hi:
                raise CoordError(f"rectangle corners out of order on {axis}")

    @classmethod
    def from_corners(cls, a: CanonicalPoint, b: CanonicalPoint) -> Tuple["Rectangle", bool]:
        """Build a rectangle, swapping axis values where needed.

        Returns the rectangle and whether any swap happened.
        """
        lo_parts, hi_parts, swapped = {}, {}, False
        for axis in ("latitude", "longitude"):
            x, y = getattr(a, axis), getattr(b, axis)
            if x is not None and y is not None and x.to_decimal() > y.to_decimal():
                x, y = y, x
                swapped = True
            lo_parts[axis], hi_parts[axis] = x, y
        return cls(CanonicalPoint(**lo_parts), CanonicalPoint(**hi_parts)), swapped

    @property
    def well_formed(self) -> bool:
        return self.corner_min.well_formed and self.corner_max.well_formed


Item = Union[Point, Rectangle]


def _check_items(items: tuple, name: str) -> None:
    if len(items) < 2:
        raise CoordError(f"{name} needs at least 2 items, got {len(items)}")
    for item in items:
        if not isinstance(item, (Point, Rectangle)):
            raise CoordError(f"{name} items must be points or rectangles, got {type(item).__name__}")


@dataclass(frozen=True)
class PolyChain:
    points: Tuple[CanonicalPoint, ...]

    kind = "pchain"

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.points))
        if len(self.points) < 2:
            raise CoordError(f"polygonal chain needs at least 2 points, got {len(self.points)}")


@dataclass(frozen=True)
class SubEntries:
    items: Tuple[Item, ...]

    kind = "subart"

    def __post_init__(self) -> None:
        object.__setattr__(self, "items", tuple(self.items))
        _check_items(self.items, "subentry sequence")


@dataclass(frozen=True)
class MultiSource:
    items: Tuple[Item, ...]

    kind = "multsrc"

    def __post_init__(self) -> None:
        object.__setattr__(self, "items", tuple(self.items))
        _check_items(self.items, "multiple-source sequence")


@dataclass(frozen=True)
class Misc:
    """Catch-all sequence; each group keeps the points of one inner list."""

    groups: Tuple[Tuple[CanonicalPoint, ...], ...]

    kind = "misc"

    def __post_init__(self) -> None:
        groups = tuple(tuple(g) for g in self.groups)
        object.__setattr__(self, "groups", groups)
        if not groups or any(not g for g in groups):
            raise CoordError("misc sequence must hold at least one non-empty group")


Geometry = Union[Point, Rectangle, PolyChain, SubEntries, MultiSource, Misc]


def iter_points(geometry: Geometry) -> Iterator[CanonicalPoint]:
    """Every canonical point of a geometry, in encoding order."""
    if isinstance(geometry, Point):
        yield geometry.point
    elif isinstance(geometry, Rectangle):
        yield geometry.corner_min
        yield geometry.corner_max
    elif isinstance(geometry, PolyChain):
        yield from geometry.points
    elif isinstance(geometry, (SubEntries, MultiSource)):
        for item in geometry.items:
            yield from iter_points(item)
    elif isinstance(geometry, Misc):
        for group in geometry.groups:
            yield from group
    else:
        raise TypeError(f"not a geometry: {geometry!r}")


# -- meridians ----------------------------------------------------------------

FERRO = "Ferro"
PARIS = "Paris"
PEKIN = "Pékin"
LONDRES = "Londres"
LUND = "Lund"
OTHER = "other"

_MERIDIAN_ALIASES = {
    "ferro": FERRO,
    "fer": FERRO,
    "île de fer": FERRO,
    "ile de fer": FERRO,
    "hierro": FERRO,
    "el hierro": FERRO,
    "paris": PARIS,
    "pékin": PEKIN,
    "pekin": PEKIN,
    "peking": PEKIN,
    "beijing": PEKIN,
    "londres": LONDRES,
    "london": LONDRES,
    "lund": LUND,
}


@dataclass(frozen=True)
class MeridianRef:
    """A reference meridian; ``name`` is ``"other"`` for unrecognised labels."""

    name: str = FERRO
    label: Optional[str] = None

    @classmethod
    def parse(cls, text: str) -> "MeridianRef":
        name = _MERIDIAN_ALIASES.get(text.strip().casefold())
        if name is None:
            return cls(OTHER, text)
        return cls(name)

    def __str__(self) -> str:
        return self.label if self.name == OTHER else self.name


@dataclass(frozen=True)
class ModernPoint:
    """Greenwich-referenced signed decimal degrees; parts may be absent."""

    latitude: Optional[float] = None
    longitude: Optional[float] = None

    def __post_init__(self) -> None:
        if self.latitude is not None and not -90 <= self.latitude <= 90:
            raise RangeError(f"latitude {self.latitude} outside [-90, 90]")
        if self.longitude is not None and not -180 < self.longitude <= 180:
            raise RangeError(f"longitude {self.longitude} outside (-180, 180]")

    @property
    def complete(self) -> bool:
        return self.latitude is not None and self.longitude is not None


@dataclass(frozen=True)
class Diagnostic:
    """A non-fatal problem found while processing one entry."""

    entry_id: Optional[str]
    kind: str
    detail: str

    def to_json(self) -> dict:
        return {"id": self.entry_id, "kind": self.kind, "detail": self.detail}


@dataclass(frozen=True)
class Entry:
    """One encyclopedia article."""

    id: str
    head: str
    text: str
    coordinates: Optional[Geometry] = None
    meridians: Tuple[MeridianRef, ...] = ()
    # annotation as found in the file when it could not be decoded
    raw_coordinates: Any = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not self.id:
            raise CoordError("entry id must be non-empty")
        object.__setattr__(self, "meridians", tuple(self.meridians))

"""Canonical coordinate strings and the nested-list geometry encoding.

A canonical string is one or two parts separated by single spaces::

    48 51' 20" N 20 21' 30" E
    19 40' N
    117 E

A geometry is encoded as a list of lists of such strings, always of depth 2.
An optional leading singleton list carries a sequence prefix (``pchain``,
``subart``, ``multsrc`` or ``misc``).
"""

from __future__ import annotations

import ast
import json
import logging
import re
from decimal import Decimal
from typing import List, Optional, Sequence

from .errors import (
    CoordError,
    DepthError,
    EmptyError,
    GrammarError,
    RangeError,
    StructureError,
    UnknownPrefixError,
)
from .model import (
    CanonicalPoint,
    DmsAngle,
    Geometry,
    Misc,
    MultiSource,
    Point,
    PolyChain,
    Rectangle,
    SubEntries,
)

log = logging.getLogger(__name__)

PCHAIN = "pchain"
SUBART = "subart"
MULTSRC = "multsrc"
MISC = "misc"
PREFIXES = (PCHAIN, SUBART, MULTSRC, MISC)

_MINUTE_MARKS = "′’‘´ʹ`"
_SECOND_MARKS = "″“”ʺ"
_TRANSLATE = str.maketrans({**{c: "'" for c in _MINUTE_MARKS}, **{c: '"' for c in _SECOND_MARKS}})


def normalize(text: str) -> str:
    """Map typographic prime variants onto ASCII ``'`` and ``"``."""
    return text.translate(_TRANSLATE)


def to_decimal(angle: DmsAngle) -> float:
    return angle.to_decimal()


# -- parsing ------------------------------------------------------------------


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def fail(self, expected: str) -> GrammarError:
        return GrammarError(self.text, self.pos, expected)

    def expect(self, char: str, what: str) -> None:
        if self.peek() != char:
            raise self.fail(what)
        self.pos += 1

    def integer(self, what: str) -> int:
        start = self.pos
        while self.peek().isdigit() and self.peek().isascii():
            self.pos += 1
        digits = self.text[start:self.pos]
        if not digits:
            raise self.fail(what)
        if len(digits) > 1 and digits[0] == "0":
            self.pos = start
            raise self.fail(f"{what} without leading zeros")
        return int(digits)

    def number(self, what: str) -> float | int:
        whole = self.integer(what)
        if self.peek() != ".":
            return whole
        self.pos += 1
        start = self.pos
        while self.peek().isdigit() and self.peek().isascii():
            self.pos += 1
        frac = self.text[start:self.pos]
        if not frac or frac.endswith("0"):
            raise self.fail("fractional digits without trailing zero")
        return float(f"{whole}.{frac}")

    def next_is_digit(self) -> bool:
        """True when a single space is followed by a digit."""
        nxt = self.text[self.pos + 1:self.pos + 2]
        return self.peek() == " " and nxt.isdigit() and nxt.isascii()


def _parse_part(sc: _Scanner, allowed: str) -> DmsAngle:
    start = sc.pos
    degrees = sc.integer("degrees")
    minutes = seconds = None
    if sc.next_is_digit():
        sc.pos += 1
        minutes = sc.integer("minutes")
        sc.expect("'", "minute mark \"'\"")
        if sc.next_is_digit():
            sc.pos += 1
            seconds = sc.number("seconds")
            sc.expect('"', "second mark '\"'")
    sc.expect(" ", "single space")
    hemi = sc.peek()
    if not hemi or hemi not in allowed:
        raise sc.fail(" or ".join(allowed))
    sc.pos += 1
    try:
        return DmsAngle(degrees, minutes, seconds, hemi)
    except RangeError as exc:
        raise RangeError(f"{exc} in {sc.text[start:sc.pos]!r}") from None


_INT = r"(0|[1-9][0-9]*)"
_PART = rf"{_INT}(?: {_INT}'(?: {_INT}(?:\.([0-9]*[1-9]))?\")?)? "
_LAT_FIRST = re.compile(rf"{_PART}([NS])(?: {_PART}([EW]))?", re.ASCII)
_LON_ONLY = re.compile(rf"{_PART}([EW])", re.ASCII)


def _fast_angle(groups, hemi: Optional[str]) -> Optional[DmsAngle]:
    if hemi is None:
        return None
    deg, minutes, whole, frac = groups
    seconds = None
    if whole is not None:
        seconds = float(f"{whole}.{frac}") if frac else int(whole)
    return DmsAngle(int(deg), None if minutes is None else int(minutes), seconds, hemi)


def parse_canonical(text: str) -> CanonicalPoint:
    """Parse a canonical string into a :class:`CanonicalPoint`.

    Raises :class:`GrammarError` on any deviation from the grammar, including
    extra, missing or doubled spaces, and :class:`RangeError` for values out
    of range.
    """
    if not text:
        raise GrammarError(text, 0, "a coordinate")
    text = normalize(text)
    try:
        m = _LAT_FIRST.fullmatch(text)
        if m is not None:
            return CanonicalPoint(_fast_angle(m.group(1, 2, 3, 4), m.group(5)),
                                  _fast_angle(m.group(6, 7, 8, 9), m.group(10)))
        m = _LON_ONLY.fullmatch(text)
        if m is not None:
            return CanonicalPoint(None, _fast_angle(m.group(1, 2, 3, 4), m.group(5)))
    except RangeError as exc:
        raise RangeError(f"{exc} in {text!r}") from None
    return _parse_scanned(text)


def _parse_scanned(text: str) -> CanonicalPoint:
    """Character-level parse; slower, but pinpoints the first deviation."""
    if not text:
        raise GrammarError(text, 0, "a coordinate")
    sc = _Scanner(text)
    first = _parse_part(sc, "NSEW")
    latitude = longitude = None
    if first.is_latitude:
        latitude = first
        if sc.peek():
            sc.expect(" ", "single space or end of string")
            longitude = _parse_part(sc, "EW")
    else:
        longitude = first
    if sc.peek():
        raise sc.fail("end of string")
    point = CanonicalPoint(latitude, longitude)
    formatted = format_canonical(point)
    if formatted != sc.text:
        # belt and braces: the grammar should make this unreachable
        pos = next(i for i, (a, b) in enumerate(zip(formatted + "\0", sc.text + "\0")) if a != b)
        raise GrammarError(sc.text, pos, "normalized form " + repr(formatted))
    return point


# -- formatting ---------------------------------------------------------------


def _format_seconds(value: float) -> str:
    if float(value).is_integer():
        return str(int(value))
    return format(Decimal(repr(float(value))), "f")


def format_angle(angle: DmsAngle) -> str:
    out = str(angle.degrees)
    if angle.minutes is not None:
        out += f" {angle.minutes}'"
        if angle.seconds is not None:
            out += f' {_format_seconds(angle.seconds)}"'
    return f"{out} {angle.hemisphere}"


def format_canonical(point: CanonicalPoint) -> str:
    return " ".join(format_angle(a) for a in (point.latitude, point.longitude) if a is not None)


# -- nested lists -------------------------------------------------------------


def _check_depth(nested) -> List[List[str]]:
    if not isinstance(nested, (list, tuple)):
        raise DepthError(f"expected a list of lists, got {type(nested).__name__}")
    if not nested:
        raise EmptyError("empty coordinate list")
    rows = []
    for i, inner in enumerate(nested):
        if not isinstance(inner, (list, tuple)):
            raise DepthError(f"item {i} is {type(inner).__name__}, not a list (depth must be 2)")
        if not inner:
            raise EmptyError(f"item {i} is an empty list")
        for value in inner:
            if not isinstance(value, str):
                raise DepthError(f"item {i} holds {type(value).__name__}, not a string (depth must be 2)")
        rows.append(list(inner))
    return rows


def _prefix_of(row: List[str]) -> Optional[str]:
    if len(row) != 1:
        return None
    token = row[0].strip()
    if any(c.isdigit() for c in token):
        return None
    if token not in PREFIXES:
        raise UnknownPrefixError(f"unknown prefix {row[0]!r}")
    return token


def _rectangle(a: str, b: str) -> Rectangle:
    rect, swapped = Rectangle.from_corners(parse_canonical(a), parse_canonical(b))
    if swapped:
        log.warning("rectangle corners %r, %r swapped into min/max order", a, b)
    return rect


def _item(row: List[str]):
    if len(row) == 1:
        return Point(parse_canonical(row[0]))
    if len(row) == 2:
        return _rectangle(*row)
    raise StructureError(f"a list of {len(row)} strings is neither a point nor a rectangle")


def decode_geometry(nested: Sequence[Sequence[str]]) -> Geometry:
    """Decode the nested-list annotation of one entry."""
    rows = _check_depth(nested)
    prefix = _prefix_of(rows[0])
    if prefix is None:
        if len(rows) != 1:
            raise StructureError(f"{len(rows)} lists without a sequence prefix")
        return _item(rows[0])
    body = rows[1:]
    if not body:
        raise EmptyError(f"{prefix!r} prefix with no coordinates")
    try:
        if prefix == PCHAIN:
            for row in body:
                if len(row) != 1:
                    raise StructureError("polygonal chain items must be single points")
            return PolyChain(tuple(parse_canonical(row[0]) for row in body))
        if prefix == MISC:
            return Misc(tuple(tuple(parse_canonical(s) for s in row) for row in body))
        items = tuple(_item(row) for row in body)
        return SubEntries(items) if prefix == SUBART else MultiSource(items)
    except (GrammarError, RangeError, StructureError):
        raise
    except CoordError as exc:
        raise StructureError(str(exc)) from None


def _encode_item(item) -> List[str]:
    if isinstance(item, Point):
        return [format_canonical(item.point)]
    return [format_canonical(item.corner_min), format_canonical(item.corner_max)]


def encode_geometry(geometry: Geometry) -> List[List[str]]:
    """Inverse of :func:`decode_geometry`."""
    if isinstance(geometry, (Point, Rectangle)):
        return [_encode_item(geometry)]
    if isinstance(geometry, PolyChain):
        return [[PCHAIN]] + [[format_canonical(p)] for p in geometry.points]
    if isinstance(geometry, (SubEntries, MultiSource)):
        return [[geometry.kind]] + [_encode_item(item) for item in geometry.items]
    if isinstance(geometry, Misc):
        return [[MISC]] + [[format_canonical(p) for p in group] for group in geometry.groups]
    raise TypeError(f"not a geometry: {geometry!r}")


def dumps_geometry(geometry: Geometry) -> str:
    """Flatten a geometry to one string, as the annotations are printed.

    This is the Python literal of the nested list, e.g.
    ``[['6 N 48 E', '20 N 65 E']]``. Exact-match scoring compares these.
    """
    return repr(encode_geometry(geometry))


def loads_geometry(text: str) -> Geometry:
    """Parse a flattened geometry (Python literal or JSON array)."""
    text = text.strip()
    try:
        nested = ast.literal_eval(text)
    except (ValueError, SyntaxError):
        try:
            nested = json.loads(text)
        except json.JSONDecodeError:
            raise StructureError(f"not a nested list literal: {text[:60]!r}") from None
    return decode_geometry(nested)

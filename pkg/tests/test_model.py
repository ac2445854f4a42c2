import pytest
from hypothesis import given

from histcoords.codec import parse_canonical
from histcoords.errors import CoordError, RangeError
from histcoords.model import (
    CanonicalPoint,
    DmsAngle,
    MeridianRef,
    Misc,
    ModernPoint,
    PolyChain,
    PrecisionLevel,
    Rectangle,
    SubEntries,
    Point,
    precision_of,
)

from .conftest import angles

D, DM, DMS = PrecisionLevel.D, PrecisionLevel.DM, PrecisionLevel.DMS


@pytest.mark.parametrize("text, expected", [
    ("52 10' N 24 36' E", (DM, DM)),
    ("6 N 48 E", (D, D)),
    ("19 40' N", (DM, None)),
    ("117 E", (None, D)),
    ("48 51' 20\" N 20 21' 30\" E", (DMS, DMS)),
])
def test_precision_of(text, expected):
    assert precision_of(parse_canonical(text)) == expected


@given(angles())
def test_precision_depends_on_presence_only(a):
    if a.minutes is not None and a.seconds is None and a.degrees < (90 if a.is_latitude else 360):
        with_zero = DmsAngle(a.degrees, a.minutes, 0, a.hemisphere)
        assert a.precision == DM
        assert with_zero.precision == DMS
        assert with_zero.to_decimal() == a.to_decimal()


@pytest.mark.parametrize("kwargs", [
    dict(degrees=52, minutes=60, hemisphere="N"),
    dict(degrees=52, minutes=10, seconds=60, hemisphere="N"),
    dict(degrees=91, hemisphere="S"),
    dict(degrees=90, minutes=1, hemisphere="N"),
    dict(degrees=361, hemisphere="E"),
    dict(degrees=-1, hemisphere="E"),
])
def test_angle_range_errors(kwargs):
    with pytest.raises(RangeError):
        DmsAngle(**kwargs)


def test_angle_shape_errors():
    with pytest.raises(CoordError):
        DmsAngle(10, None, 5, "N")  # seconds without minutes
    with pytest.raises(CoordError):
        DmsAngle(10, hemisphere="X")
    with pytest.raises(CoordError):
        DmsAngle(10.5, hemisphere="N")


def test_pole_and_full_circle_allowed():
    assert DmsAngle(90, 0, 0, "N").to_decimal() == 90
    assert DmsAngle(360, None, None, "E").to_decimal() == 360


def test_point_invariants():
    with pytest.raises(CoordError):
        CanonicalPoint()
    with pytest.raises(CoordError):
        CanonicalPoint(latitude=DmsAngle(10, hemisphere="E"))
    with pytest.raises(CoordError):
        CanonicalPoint(longitude=DmsAngle(10, hemisphere="N"))
    assert CanonicalPoint(DmsAngle(1), DmsAngle(2, hemisphere="E")).well_formed
    assert not CanonicalPoint(DmsAngle(1)).well_formed


def test_rectangle_ordering():
    lo = parse_canonical("6 N 48 E")
    hi = parse_canonical("20 N 65 E")
    Rectangle(lo, hi)
    with pytest.raises(CoordError):
        Rectangle(hi, lo)
    rect, swapped = Rectangle.from_corners(hi, lo)
    assert swapped and rect == Rectangle(lo, hi)
    # per-axis swap
    rect, swapped = Rectangle.from_corners(parse_canonical("6 N 65 E"), parse_canonical("20 N 48 E"))
    assert swapped and rect == Rectangle(lo, hi)
    # southern latitudes order by signed value
    rect, _ = Rectangle.from_corners(parse_canonical("6 S 48 E"), parse_canonical("20 S 65 E"))
    assert rect.corner_min.latitude.degrees == 20


def test_sequence_arity():
    p = Point(parse_canonical("6 N 48 E"))
    with pytest.raises(CoordError):
        SubEntries((p,))
    with pytest.raises(CoordError):
        PolyChain((p.point,))
    with pytest.raises(CoordError):
        Misc(())
    with pytest.raises(CoordError):
        SubEntries((p, PolyChain((p.point, p.point))))


def test_meridian_parse():
    assert MeridianRef.parse("Pékin") == MeridianRef("Pékin")
    assert MeridianRef.parse("Peking") == MeridianRef("Pékin")
    assert MeridianRef.parse("London").name == "Londres"
    ref = MeridianRef.parse("équateur de Quito")
    assert ref.name == "other" and str(ref) == "équateur de Quito"
    assert MeridianRef() == MeridianRef("Ferro")


def test_modern_point_ranges():
    ModernPoint(90, 180)
    with pytest.raises(RangeError):
        ModernPoint(91, 0)
    with pytest.raises(RangeError):
        ModernPoint(0, -180)

"""Rule-based detection and extraction of coordinates from article text.

Keyword cues (``lat.``, ``longitude``...) are tied to the numeric run that
follows them (``Long. 24. 36.``) or, in the ``117. degré de longitude``
form, to the run that precedes them. Runs map positionally onto degrees,
minutes and seconds. Adjacent latitude/longitude mentions are then paired
into points or, for ranges such as ``48-65``, into rectangles, and several
groups become a chain, a multiple-source or a subentry sequence depending
on the cue words around them.
"""

from __future__ import annotations

import dataclasses
import json
import logging
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import CoordError
from .model import (
    LONDRES,
    LUND,
    PARIS,
    PEKIN,
    CanonicalPoint,
    Diagnostic,
    DmsAngle,
    Entry,
    Geometry,
    MeridianRef,
    MultiSource,
    Point,
    PolyChain,
    Rectangle,
    SubEntries,
)

log = logging.getLogger(__name__)

LATITUDE = "latitude"
LONGITUDE = "longitude"


@dataclass(frozen=True)
class ExtractionRuleSet:
    """Patterns driving the extractor. All patterns are case-insensitive regexes."""

    latitude_keywords: Tuple[str, ...] = (r"latitudes?", r"latit\.", r"lat\.")
    longitude_keywords: Tuple[str, ...] = (r"longitudes?", r"longit\.", r"long\.")
    cardinal_words: Dict[str, str] = field(default_factory=lambda: {
        r"septentrionale?s?": "N",
        r"sept\.": "N",
        r"boréale?s?": "N",
        r"nord": "N",
        r"méridionale?s?": "S",
        r"mérid\.": "S",
        r"australe?s?": "S",
        r"sud": "S",
        r"orientale?s?": "E",
        r"orient\.": "E",
        r"occidentale?s?": "W",
        r"occid\.": "W",
        r"ouest": "W",
    })
    # unit after degrees that closes the group, as in "110d."
    degree_terminators: Tuple[str, ...] = (r"d\.", r"deg\.", r"degr\.")
    degree_marks: Tuple[str, ...] = (r"°",)
    minute_marks: Tuple[str, ...] = (r"'", r"′", r"’", r"m\.", r"min\.")
    second_marks: Tuple[str, ...] = (r'"', r"″", r"''", r"s\.", r"sec\.")
    range_separator: str = "-"
    # a keyword does not reach a number across these characters
    gap_breaks: str = ";:"
    # numbers followed by these words are distances, not coordinates
    distance_units: Tuple[str, ...] = (r"lieues?", r"milles?", r"toises?", r"pieds?", r"pas", r"verstes?",
                                       r"stades?", r"journées?", r"heures?", r"ans", r"années?")
    window: int = 40
    pair_window: int = 60
    source_cues: Tuple[str, ...] = (r"selon", r"suivant", r"d'après", r"d’après")
    chain_cues: Tuple[str, ...] = (r"sa source", r"ses sources", r"se jette", r"embouchure",
                                   r"se décharge", r"se perd", r"se rend dans")
    chain_lookback: int = 80
    meridian_cues: Tuple[str, ...] = (r"m[ée]ridiens?",)
    meridian_names: Dict[str, str] = field(default_factory=lambda: {
        r"paris": PARIS,
        r"p[ée]kin(?:g)?": PEKIN,
        r"londres|london": LONDRES,
        r"lund": LUND,
    })
    meridian_window: int = 80
    default_latitude_hemisphere: str = "N"
    default_longitude_hemisphere: str = "E"

    def __post_init__(self) -> None:
        for name in ("latitude_keywords", "longitude_keywords", "degree_terminators", "degree_marks",
                     "minute_marks", "second_marks", "distance_units", "source_cues", "chain_cues", "meridian_cues"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        object.__setattr__(self, "_compiled", _Compiled(self))

    @classmethod
    def from_mapping(cls, data: dict) -> "ExtractionRuleSet":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown rule keys: {', '.join(sorted(unknown))}")
        return cls(**data)

    @classmethod
    def from_file(cls, path) -> "ExtractionRuleSet":
        with open(path, encoding="utf-8") as fh:
            return cls.from_mapping(json.load(fh))

    def to_mapping(self) -> dict:
        out = {}
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            out[f.name] = list(value) if isinstance(value, tuple) else value
        return out


def _alt(patterns) -> str:
    return "|".join(f"(?:{p})" for p in patterns)


def _word(patterns) -> str:
    return rf"(?<!\w)(?:{_alt(patterns)})(?![^\W\d_])"


class _Compiled:
    def __init__(self, rules: ExtractionRuleSet):
        flags = re.IGNORECASE
        self.keyword = re.compile(
            rf"(?P<lat>{_word(rules.latitude_keywords)})|(?P<lon>{_word(rules.longitude_keywords)})", flags)
        self.cardinal_order = list(rules.cardinal_words.items())
        self.cardinal = re.compile(
            r"[\s,.]*(?:" + "|".join(f"(?P<c{i}>{p})" for i, (p, _) in enumerate(self.cardinal_order))
            + r")(?!\w)", flags)
        self.degree = re.compile(
            rf"(?<!\d)(\d{{1,3}})(?!\d)(?:\s?(?:(?P<term>{_alt(rules.degree_terminators)})|{_alt(rules.degree_marks)}))?",
            flags)
        self.sep = re.compile(r"\s*[.,]?\s*")
        self.minute = re.compile(rf"(\d{{1,2}})(?!\d)(?:\s?(?:{_alt(rules.minute_marks)}))?", flags)
        self.second = re.compile(rf"(\d{{1,2}}(?:\.\d+)?)(?![\d])(?:\s?(?:{_alt(rules.second_marks)}))?", flags)
        self.range = re.compile(rf"\s?{re.escape(rules.range_separator)}\s?(?=\d)")
        self.postfix = re.compile(
            r"\.?\s*(?:d[eé]gr[eéè]s?\s+|deg\.\s*|d\.\s*)?(?:de|du)\s+(?:la\s+)?"
            rf"(?:(?P<lat>{_word(rules.latitude_keywords)})|(?P<lon>{_word(rules.longitude_keywords)}))",
            flags)
        self.unit = re.compile(rf"\s*{_word(rules.distance_units)}", flags)
        self.source = re.compile(_word(rules.source_cues), flags)
        self.chain = re.compile(_word(rules.chain_cues), flags)
        self.meridian_cue = re.compile(_word(rules.meridian_cues), flags)
        self.meridian_names = [(re.compile(_word([p]), flags), name) for p, name in rules.meridian_names.items()]

    def cardinal_at(self, text: str, pos: int) -> Optional[str]:
        m = self.cardinal.match(text, pos)
        if m is None:
            return None
        for i, (_, hemi) in enumerate(self.cardinal_order):
            if m.group(f"c{i}") is not None:
                return hemi
        return None


DEFAULT_RULES = ExtractionRuleSet()


@dataclass(frozen=True)
class Mention:
    """One latitude or longitude value found in the text.

    ``range_part`` is 0 or 1 for the low and high ends of a range such as
    ``48-65``, ``None`` otherwise.
    """

    span: Tuple[int, int]
    kind: str
    raw: str
    parsed: DmsAngle
    range_part: Optional[int] = None


# -- numeric runs -------------------------------------------------------------


@dataclass
class _Value:
    start: int
    end: int
    fields: List[float]


def _scan_value(c: _Compiled, text: str, pos: int) -> Optional[_Value]:
    m = c.degree.match(text, pos)
    if m is None:
        return None
    fields: List[float] = [int(m.group(1))]
    end = m.end()
    if m.group("term"):
        return _Value(pos, end, fields)
    had_unit = end > m.end(1)
    for pattern in (c.minute, c.second):
        s = c.sep.match(text, end)
        if s.end() == end and not had_unit:
            break
        n = pattern.match(text, s.end())
        if n is None:
            break
        num = n.group(1)
        fields.append(float(num) if "." in num else int(num))
        had_unit = n.end() > n.end(1)
        end = n.end()
    return _Value(pos, end, fields)


def _angle(fields: Sequence[float], hemisphere: str) -> DmsAngle:
    deg = fields[0]
    minutes = fields[1] if len(fields) > 1 else None
    seconds = fields[2] if len(fields) > 2 else None
    if isinstance(minutes, float):
        raise CoordError(f"fractional minutes {minutes}")
    return DmsAngle(int(deg), minutes, seconds, hemisphere)


def parse_value(raw: str, hemisphere: str, rules: ExtractionRuleSet = DEFAULT_RULES) -> DmsAngle:
    """Parse the raw text of one mention back into an angle."""
    c = rules._compiled
    v = _scan_value(c, raw, 0)
    if v is None or v.end != len(raw):
        raise CoordError(f"not a single numeric value: {raw!r}")
    return _angle(v.fields, hemisphere)


@dataclass
class _Run:
    values: List[_Value]  # 1, or 2 for a range
    kind: Optional[str] = None
    hemisphere: Optional[str] = None

    @property
    def start(self) -> int:
        return self.values[0].start

    @property
    def end(self) -> int:
        return self.values[-1].end


def _runs(c: _Compiled, text: str) -> List[_Run]:
    runs = []
    pos = 0
    digits = re.compile(r"\d+")
    while True:
        m = digits.search(text, pos)
        if m is None:
            return runs
        value = _scan_value(c, text, m.start())
        if value is None:
            pos = m.end()
            continue
        values = [value]
        r = c.range.match(text, value.end)
        if r is not None:
            other = _scan_value(c, text, r.end())
            if other is not None:
                values.append(other)
        runs.append(_Run(values))
        pos = values[-1].end


def _keyword_kind(m: re.Match) -> str:
    return LATITUDE if m.group("lat") else LONGITUDE


def extract_mentions(entry: Entry, rules: ExtractionRuleSet = DEFAULT_RULES,
                     diagnostics: Optional[List[Diagnostic]] = None) -> List[Mention]:
    """Latitude and longitude values of an entry, ordered by position."""
    c = rules._compiled
    text = entry.text
    runs = _runs(c, text)
    keywords = list(c.keyword.finditer(text))
    used_keywords = set()

    # "117. degré de longitude": the keyword follows the number
    for run in runs:
        m = c.postfix.match(text, run.end)
        if m is None:
            continue
        run.kind = LATITUDE if m.group("lat") else LONGITUDE
        run.hemisphere = c.cardinal_at(text, m.end()) or c.cardinal_at(text, run.end)
        used_keywords.add(m.start("lat") if m.group("lat") else m.start("lon"))

    # "Long. 24. 36.": the keyword precedes the number
    for i, kw in enumerate(keywords):
        if kw.start() in used_keywords:
            continue
        nxt = next((r for r in runs if r.start >= kw.end()), None)
        if nxt is None or nxt.kind is not None or nxt.start - kw.end() > rules.window:
            continue
        if any(ch in rules.gap_breaks for ch in text[kw.end():nxt.start]) or c.unit.match(text, nxt.end):
            continue
        if i + 1 < len(keywords) and keywords[i + 1].start() < nxt.start:
            continue
        nxt.kind = _keyword_kind(kw)
        nxt.hemisphere = c.cardinal_at(text, kw.end()) or c.cardinal_at(text, nxt.end)

    mentions: List[Mention] = []
    for run in runs:
        if run.kind is None:
            continue
        allowed = "NS" if run.kind == LATITUDE else "EW"
        default = rules.default_latitude_hemisphere if run.kind == LATITUDE else rules.default_longitude_hemisphere
        hemi = run.hemisphere if run.hemisphere in tuple(allowed) else default
        found = []
        try:
            for part, value in enumerate(run.values):
                angle = _angle(value.fields, hemi)
                found.append(Mention((value.start, value.end), run.kind, text[value.start:value.end], angle,
                                     part if len(run.values) == 2 else None))
        except CoordError as exc:
            detail = f"skipped {run.kind} value {text[run.start:run.end]!r} at {run.start}: {exc}"
            log.info("%s: %s", entry.id, detail)
            if diagnostics is not None:
                diagnostics.append(Diagnostic(entry.id, "unparseable_value", detail))
            continue
        mentions.extend(found)
    mentions.sort(key=lambda m: m.span)
    return mentions


def classify_has_coordinates(entry: Entry, rules: ExtractionRuleSet = DEFAULT_RULES) -> bool:
    """True when the text holds at least one keyword-anchored value."""
    return bool(entry.text) and bool(extract_mentions(entry, rules))


# -- assembly -----------------------------------------------------------------


@dataclass
class _Slot:
    kind: str
    angles: List[DmsAngle]
    start: int
    end: int
    range_open: bool = False


@dataclass
class _Group:
    slots: Dict[str, _Slot] = field(default_factory=dict)

    @property
    def start(self) -> int:
        return min(s.start for s in self.slots.values())

    @property
    def end(self) -> int:
        return max(s.end for s in self.slots.values())

    def item(self):
        lat = self.slots.get(LATITUDE)
        lon = self.slots.get(LONGITUDE)
        lats = lat.angles if lat else [None]
        lons = lon.angles if lon else [None]
        if len(lats) == 1 and len(lons) == 1:
            return Point(CanonicalPoint(lats[0], lons[0]))
        a = CanonicalPoint(lats[0], lons[0])
        b = CanonicalPoint(lats[-1], lons[-1])
        return Rectangle.from_corners(a, b)[0]


def _slots(mentions: Sequence[Mention]) -> List[_Slot]:
    slots: List[_Slot] = []
    for m in mentions:
        prev = slots[-1] if slots else None
        if (m.range_part == 1 and prev is not None and prev.kind == m.kind and len(prev.angles) == 1
                and prev.range_open):
            prev.angles.append(m.parsed)
            prev.end = m.span[1]
            prev.range_open = False
            continue
        slots.append(_Slot(m.kind, [m.parsed], *m.span, range_open=m.range_part == 0))
    return slots


def _headword_patterns(head: str) -> List[re.Pattern]:
    names = [n.strip(" *.") for n in re.split(r"\s+ou\s+|,|;", head or "")]
    return [re.compile(rf"(?<!\w){re.escape(n)}(?!\w)", re.IGNORECASE) for n in names if len(n) > 1]


def assemble_geometry(mentions: Sequence[Mention], entry: Entry, rules: ExtractionRuleSet = DEFAULT_RULES,
                      diagnostics: Optional[List[Diagnostic]] = None) -> Optional[Geometry]:
    """Group mentions into the geometry they describe, or ``None`` if there are none.

    When the structure of a multi-group entry cannot be told apart, a
    multiple-source sequence is returned and an ``assembly_ambiguity``
    diagnostic is recorded.
    """
    if not mentions:
        return None
    c = rules._compiled
    text = entry.text
    chain_cuts = [m.start() for m in c.chain.finditer(text)]

    groups: List[_Group] = []
    prev_end = None
    for slot in _slots(mentions):
        current = groups[-1] if groups else None
        fresh = (
            current is None
            or slot.kind in current.slots
            or slot.start - prev_end > rules.pair_window
            or any(prev_end <= cut < slot.start for cut in chain_cuts)
        )
        if fresh:
            current = _Group()
            groups.append(current)
        current.slots[slot.kind] = slot
        prev_end = slot.end

    items = [g.item() for g in groups]
    if len(items) == 1:
        return items[0]

    gaps = [text[a.end:b.start] for a, b in zip(groups, groups[1:])]
    head_start = max(0, groups[0].start - rules.chain_lookback)
    if all(isinstance(x, Point) for x in items) and any(
            head_start <= cut < groups[-1].end for cut in chain_cuts):
        return PolyChain(tuple(x.point for x in items))
    tail = text[groups[-1].end:groups[-1].end + rules.window]
    if any(c.source.search(g) for g in gaps + [tail]):
        return MultiSource(tuple(items))
    heads = _headword_patterns(entry.head)
    if heads and all(any(p.search(g) for p in heads) for g in gaps):
        return SubEntries(tuple(items))
    detail = f"{len(items)} coordinate groups without source or subentry cue; read as multiple sources"
    log.info("%s: %s", entry.id, detail)
    if diagnostics is not None:
        diagnostics.append(Diagnostic(entry.id, "assembly_ambiguity", detail))
    return MultiSource(tuple(items))


def detect_meridian(entry: Entry, rules: ExtractionRuleSet = DEFAULT_RULES) -> List[MeridianRef]:
    """Explicit non-default reference meridians named in the text."""
    c = rules._compiled
    text = entry.text
    found: List[MeridianRef] = []
    for cue in c.meridian_cue.finditer(text):
        after = text[cue.end():cue.end() + rules.meridian_window]
        before = text[max(0, cue.start() - rules.window):cue.start()]
        for scope in (after, before):
            hits = sorted((m.start(), name) for p, name in c.meridian_names for m in p.finditer(scope))
            if hits:
                ref = MeridianRef(hits[0][1] if scope is after else hits[-1][1])
                if ref not in found:
                    found.append(ref)
                break
    return found


@dataclass(frozen=True)
class Extraction:
    entry_id: str
    has_coordinates: bool
    geometry: Optional[Geometry]
    meridians: Tuple[MeridianRef, ...]
    mentions: Tuple[Mention, ...]
    diagnostics: Tuple[Diagnostic, ...] = ()


def extract(entry: Entry, rules: ExtractionRuleSet = DEFAULT_RULES) -> Extraction:
    """Run detection, extraction, assembly and meridian detection on one entry."""
    diagnostics: List[Diagnostic] = []
    mentions = extract_mentions(entry, rules, diagnostics)
    geometry = None
    try:
        geometry = assemble_geometry(mentions, entry, rules, diagnostics)
    except CoordError as exc:
        diagnostics.append(Diagnostic(entry.id, "assembly_error", str(exc)))
    return Extraction(entry.id, bool(mentions), geometry, tuple(detect_meridian(entry, rules)),
                      tuple(mentions), tuple(diagnostics))

"""Exact match, character error rate and annotator agreement.

CER divides the Levenshtein distance by the length of the gold string.
The micro average pools distances and gold lengths over all pairs. All
characters count, spaces included.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .codec import loads_geometry, parse_canonical
from .errors import CoordError, EmptyEvalError, UnmatchedIdError
from .kernels import edit_distance, edit_distances
from .model import Diagnostic, Point, PrecisionLevel, precision_of

log = logging.getLogger(__name__)

LEVELS = (PrecisionLevel.D, PrecisionLevel.DM, PrecisionLevel.DMS)


@dataclass(frozen=True)
class EvalPair:
    entry_id: str
    gold: str
    pred: Optional[str]

    def __post_init__(self) -> None:
        if not self.gold:
            raise ValueError(f"empty gold string for {self.entry_id!r}")


def exact_match(gold: str, pred: Optional[str]) -> int:
    if pred is None:
        return 0
    return int(gold.strip() == pred.strip())


def cer(gold: str, pred: Optional[str]) -> Fraction:
    if not gold:
        raise ValueError("gold string must be non-empty")
    return Fraction(edit_distance(gold, pred or ""), len(gold))


def _pooled(pairs: Sequence[EvalPair]) -> Tuple[int, int]:
    dists = edit_distances([p.gold for p in pairs], [p.pred or "" for p in pairs])
    return sum(dists), sum(len(p.gold) for p in pairs)


def micro_cer(pairs: Sequence[EvalPair]) -> Fraction:
    """Sum of edit distances over sum of gold lengths."""
    if not pairs:
        raise EmptyEvalError("no pairs to score")
    dist, length = _pooled(pairs)
    return Fraction(dist, length)


@dataclass(frozen=True)
class Agreement:
    union: int
    only_a: int
    only_b: int
    intersection: int
    identical: int
    divergent_micro_cer: Optional[Fraction]

    @property
    def rate(self) -> Optional[Fraction]:
        if not self.intersection:
            return None
        return Fraction(self.identical, self.intersection)


def agreement(set_a: Mapping[str, str], set_b: Mapping[str, str]) -> Agreement:
    """Compare two annotators' strings keyed by entry id.

    The CER over divergent entries takes ``set_a`` as reference.
    """
    common = sorted(set(set_a) & set(set_b))
    identical = [i for i in common if set_a[i] == set_b[i]]
    divergent = [EvalPair(i, set_a[i], set_b[i]) for i in common if set_a[i] != set_b[i]]
    return Agreement(
        union=len(set(set_a) | set(set_b)),
        only_a=len(set(set_a) - set(set_b)),
        only_b=len(set(set_b) - set(set_a)),
        intersection=len(common),
        identical=len(identical),
        divergent_micro_cer=micro_cer(divergent) if divergent else None,
    )


def agreement_from_counts(intersection: int, identical: int) -> Fraction:
    return Fraction(identical, intersection)


def _single_point_levels(gold: str) -> Tuple[PrecisionLevel, PrecisionLevel]:
    text = gold.strip()
    if text.startswith("["):
        geometry = loads_geometry(text)
        if not isinstance(geometry, Point):
            raise CoordError(f"not a single point: {gold!r}")
        point = geometry.point
    else:
        point = parse_canonical(text)
    if not point.well_formed:
        raise CoordError(f"not a well-formed point: {gold!r}")
    return precision_of(point)


def is_single_point(gold: str) -> bool:
    try:
        _single_point_levels(gold)
    except (CoordError, ValueError, SyntaxError):
        return False
    return True


@dataclass(frozen=True)
class Cell:
    em: float
    support: int


def precision_breakdown(pairs: Iterable[EvalPair],
                        diagnostics: Optional[List[Diagnostic]] = None) -> Dict[Tuple[str, str], Cell]:
    """EM per (latitude level, longitude level) of the gold point.

    Pairs whose gold is not a well-formed single point are left out and
    reported as diagnostics. Empty cells are absent.
    """
    hits: Dict[Tuple[str, str], List[int]] = {}
    for pair in pairs:
        try:
            lat, lon = _single_point_levels(pair.gold)
        except (CoordError, ValueError, SyntaxError) as exc:
            if diagnostics is not None:
                diagnostics.append(Diagnostic(pair.entry_id, type(exc).__name__, str(exc)))
            continue
        hits.setdefault((lat.value, lon.value), []).append(exact_match(pair.gold, pair.pred))
    return {k: Cell(sum(v) / len(v), len(v)) for k, v in sorted(hits.items())}


@dataclass
class Scores:
    em: float
    cer_micro: float
    support: int

    def to_json(self) -> dict:
        return {"em": self.em, "cer": self.cer_micro, "support": self.support}


def _scores(pairs: Sequence[EvalPair]) -> Optional[Scores]:
    if not pairs:
        return None
    em = sum(exact_match(p.gold, p.pred) for p in pairs) / len(pairs)
    return Scores(em, float(micro_cer(pairs)), len(pairs))


@dataclass
class EvalReport:
    """Scores over all pairs, over well-formed single points, over the rest."""

    em: float
    cer_micro: float
    support: int
    points: Optional[Scores]
    others: Optional[Scores]
    breakdown: Dict[Tuple[str, str], Cell]
    missing_predictions: int = 0
    diagnostics: List[Diagnostic] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "em": self.em,
            "cer": self.cer_micro,
            "support": self.support,
            "points_only": self.points.to_json() if self.points else None,
            "others_only": self.others.to_json() if self.others else None,
            "missing_predictions": self.missing_predictions,
            "breakdown": {lat.value: {lon.value: self._cell_json(lat, lon) for lon in LEVELS} for lat in LEVELS},
        }

    def _cell_json(self, lat: PrecisionLevel, lon: PrecisionLevel) -> Optional[dict]:
        c = self.breakdown.get((lat.value, lon.value))
        return None if c is None else {"em": c.em, "support": c.support}

    def format_table(self) -> str:
        lines = [f"{'':<12}{'EM':>7}{'CER':>7}{'Support':>9}"]
        for name, s in (("all", Scores(self.em, self.cer_micro, self.support)),
                        ("points only", self.points), ("others only", self.others)):
            if s is None:
                lines.append(f"{name:<12}{'-':>7}{'-':>7}{0:>9}")
            else:
                lines.append(f"{name:<12}{s.em:>7.2f}{s.cer_micro:>7.2f}{s.support:>9}")
        lines.append("")
        lines.append("EM by precision (rows: latitude, columns: longitude)")
        lines.append(f"{'':<6}" + "".join(f"{l.value:>12}" for l in LEVELS))
        for lat in LEVELS:
            cells = []
            for lon in LEVELS:
                c = self.breakdown.get((lat.value, lon.value))
                cells.append(f"{'-':>12}" if c is None else f"{c.em:>6.2f} ({c.support:>3})")
            lines.append(f"{lat.value:<6}" + "".join(cells))
        if self.missing_predictions:
            lines.append(f"\n{self.missing_predictions} gold entries had no prediction")
        return "\n".join(lines)


def evaluate(gold: Mapping[str, str], predictions: Mapping[str, Optional[str]],
             known_ids: Optional[Iterable[str]] = None) -> EvalReport:
    """Score predictions against gold strings keyed by entry id.

    Every gold entry is scored; a missing prediction counts as empty.
    Prediction ids must belong to ``known_ids`` (default: the gold ids),
    otherwise :class:`UnmatchedIdError` is raised.
    """
    known = set(gold) if known_ids is None else set(known_ids) | set(gold)
    orphans = set(predictions) - known
    if orphans:
        raise UnmatchedIdError(orphans)
    pairs = [EvalPair(i, g, predictions.get(i)) for i, g in gold.items()]
    if not pairs:
        raise EmptyEvalError("gold holds no annotated entries")
    diagnostics: List[Diagnostic] = []
    point_pairs = [p for p in pairs if is_single_point(p.gold)]
    point_ids = {p.entry_id for p in point_pairs}
    other_pairs = [p for p in pairs if p.entry_id not in point_ids]
    overall = _scores(pairs)
    return EvalReport(
        em=overall.em,
        cer_micro=overall.cer_micro,
        support=overall.support,
        points=_scores(point_pairs),
        others=_scores(other_pairs),
        breakdown=precision_breakdown(point_pairs, diagnostics),
        missing_predictions=sum(1 for p in pairs if p.pred is None),
        diagnostics=diagnostics,
    )


def read_predictions(path) -> Dict[str, Optional[str]]:
    """Read a JSON Lines prediction file.

    Each line is ``{"id": ..., "prediction": <string or null>}``; a record
    may instead set ``"absent": true``.
    """
    out: Dict[str, Optional[str]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                entry_id = str(record["id"])
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise ValueError(f"{path}:{lineno}: bad prediction record ({exc})") from None
            pred = record.get("prediction")
            if record.get("absent"):
                pred = None
            if pred is not None and not isinstance(pred, str):
                raise ValueError(f"{path}:{lineno}: prediction must be a string or null")
            if entry_id in out:
                raise ValueError(f"{path}:{lineno}: duplicate id {entry_id!r}")
            out[entry_id] = pred
    return out

"""Parse, validate, convert and score coordinates from historical reference works."""

from .codec import (
    decode_geometry,
    dumps_geometry,
    encode_geometry,
    format_canonical,
    loads_geometry,
    parse_canonical,
    to_decimal,
)
from .dataset import DatasetFile, compute_stats, load_dataset, select_same_precision, write_dataset
from .errors import (
    CoordError,
    DatasetFileError,
    DepthError,
    EmptyError,
    EmptyEvalError,
    EmptyRegionSetError,
    GrammarError,
    RangeError,
    SchemaError,
    StructureError,
    UnknownPrefixError,
    UnmatchedIdError,
    UnsupportedMeridianError,
)
from .extractor import (
    ExtractionRuleSet,
    Mention,
    assemble_geometry,
    classify_has_coordinates,
    detect_meridian,
    extract,
    extract_mentions,
)
from .geodesy import MeridianOffsetTable, attach_regions, convert_geometry, convert_point, wrap
from .metrics import agreement, cer, evaluate, exact_match, micro_cer, precision_breakdown
from .model import (
    CanonicalPoint,
    DmsAngle,
    Entry,
    MeridianRef,
    Misc,
    ModernPoint,
    MultiSource,
    Point,
    PolyChain,
    PrecisionLevel,
    Rectangle,
    SubEntries,
    precision_of,
)

__version__ = "0.1.0"

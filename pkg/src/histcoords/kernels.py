"""Select the compiled edit-distance kernel, falling back to pure Python.

Set ``HISTCOORDS_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _levenshtein_py as pure

compiled = None
if os.environ.get("HISTCOORDS_PURE", "") in ("", "0"):
    try:
        from . import _levenshtein as compiled  # type: ignore[no-redef]
    except ImportError:
        compiled = None

_impl = compiled if compiled is not None else pure

BACKEND = "cython" if compiled is not None else "python"
edit_distance = _impl.distance
edit_distances = _impl.distances

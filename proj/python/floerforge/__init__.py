"""Exact link Floer and Khovanov bookkeeping: complexes, summand decompositions,
invariants, constraint rules, candidate enumeration and the link catalog."""

import os
from pathlib import Path

# A wheel carries its own copy of the catalog; an editable build points at the source tree.
_bundled = Path(__file__).with_name("assets")
if "FLOERFORGE_ASSETS" not in os.environ and (_bundled / "catalog").is_dir():
    os.environ["FLOERFORGE_ASSETS"] = str(_bundled)

from ._core import *  # noqa: E402,F401,F403
from ._core import DecompositionError, TruncationError  # noqa: E402,F401

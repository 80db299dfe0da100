"""Access to the published reference constants.

These are reported values for the HOAA design family, shipped in a
versioned data file so they can be displayed next to computed results.
They are labels, not oracles; nothing in the library is calibrated to
reproduce them.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources


@lru_cache(maxsize=None)
def published_reference() -> dict:
    data = resources.files(__package__).joinpath("published_reference.json").read_text()
    return json.loads(data)

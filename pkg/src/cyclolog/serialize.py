"""Canonical JSON: compact separators, insertion field order, no floats.

Every numeric value crossing the package boundary is a decimal string (or
an exact int), never a binary float, so parsing and re-serializing a
payload is byte-identical.
"""

from __future__ import annotations

import json
from fractions import Fraction


def canonical_json(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=True)


def fraction_str(fr: Fraction) -> str:
    """Exact rational rendering: "2", "-1/3"."""
    return str(Fraction(fr))

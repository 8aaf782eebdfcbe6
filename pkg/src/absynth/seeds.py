"""Process-stable seed derivation.

Python's built-in hash() is salted per process, so anything that must be
reproducible across runs derives integer seeds through sha256 instead.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any

MASK64 = (1 << 64) - 1


def derive_seed(master: int, *parts: object) -> int:
    """Derive a 64-bit child seed from a master seed and a label path.

    Same (master, parts) always yields the same child, in any process.
    """
    key = ":".join([str(int(master) & MASK64)] + [str(p) for p in parts])
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def stable_digest(obj: Any) -> int:
    """64-bit digest of a JSON-representable object, stable across processes.

    Used to seed question-selection RNGs from a scenario spec so that
    questions are a pure function of the spec itself.
    """
    blob = json.dumps(obj, sort_keys=True, ensure_ascii=False, default=str)
    digest = hashlib.sha256(blob.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")

"""Size caps. ``CAYLEY_MAX_ORDER`` raises or lowers the group/ring caps."""

import os

DEFAULT_MAX_ORDER = 64
ORACLE_MAX_VERTICES = 20
ORACLE_MAX_DIGRAPH_VERTICES = 16
SWEEP_MAX_ORDER = 16
GENERIC_FALLBACK_MAX_VERTICES = 20
ISOMORPHISM_SEARCH_MAX_VERTICES = 10
SPECTRUM_MAX_VERTICES = 256
ASSOCIATIVITY_EXHAUSTIVE_MAX = 64
ASSOCIATIVITY_SAMPLES = 1_000_000


def max_order() -> int:
    raw = os.environ.get("CAYLEY_MAX_ORDER")
    if raw is None or not raw.strip():
        return DEFAULT_MAX_ORDER
    value = int(raw)
    if value < 1:
        raise ValueError(f"CAYLEY_MAX_ORDER must be positive, got {value}")
    return value

"""Enumerate and classify closed knight paths on small square boards."""
from .classify import (
    CountingMode,
    EquivalenceClass,
    canonical_cycle_form,
    canonical_form,
    check_combination,
    classify,
    cycle_key,
    frame_bucket,
)
from .geometry import (
    TRANSFORMS,
    BoardSpec,
    Cell,
    Frame,
    Transform,
    apply_transform,
    frame_of,
    from_lotto,
    is_knight_move,
    knight_moves,
    normalize_translation,
    to_lotto,
)
from .search import (
    SearchConfig,
    enumerate_cycles_mitm,
    enumerate_cycles_oracle,
    enumerate_half_paths,
    join_paths,
)

__version__ = "0.1.0"

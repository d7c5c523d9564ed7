"""Equivalence classes of closed knight paths under translation and D8."""
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import permutations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .geometry import (
    LOTTO_SIDE,
    BoardSpec,
    Cell,
    Combination,
    Frame,
    frame_of,
    from_lotto,
    is_knight_move,
    is_normalized,
    normalize_translation,
    to_lotto,
)

CanonicalKey = Tuple[Cell, ...]
CycleKey = Tuple[Cell, ...]


class CountingMode(str, Enum):
    COMBINATION = "combination"
    CYCLE = "cycle"


@dataclass(frozen=True)
class EquivalenceClass:
    key: CanonicalKey
    representative: Tuple[Cell, ...]
    frame: Frame
    member_count_on_board: int
    mode: CountingMode = CountingMode.COMBINATION

    @property
    def cells(self) -> Combination:
        return tuple(sorted(self.representative))

    def lotto(self) -> List[int]:
        return to_lotto(self.cells)


def cycle_key(cycle: Sequence) -> CycleKey:
    """Lexicographic minimum over all rotations and reversals of ``cycle``."""
    seq = [Cell(*c) for c in cycle]
    if not seq:
        raise ValueError("empty cycle")
    if len(set(seq)) != len(seq):
        raise ValueError("cycle repeats a cell")
    # distinct cells: the minimal rotation starts at the smallest cell
    i = seq.index(min(seq))
    fwd = seq[i:] + seq[:i]
    back = fwd[:1] + fwd[:0:-1]
    return tuple(min(fwd, back))


def _images(cells: Sequence) -> List[List[Tuple[int, int]]]:
    """The eight translation-normalized images of ``cells``, order kept.

    Plain tuples rather than :class:`Cell`; they compare equal.
    """
    r0 = min(c[0] for c in cells)
    c0 = min(c[1] for c in cells)
    base = [(r - r0, c - c0) for r, c in cells]
    w1 = max(c for _, c in base)
    h1 = max(r for r, _ in base)
    flip = [(r, w1 - c) for r, c in base]
    out = []
    for pts in (base, flip):
        out.append(pts)
        out.append([(c, h1 - r) for r, c in pts])
        out.append([(h1 - r, w1 - c) for r, c in pts])
        out.append([(w1 - c, r) for r, c in pts])
    return out


def _cells(seq) -> Tuple[Cell, ...]:
    return tuple(Cell(*c) for c in seq)


def _cycle_key_raw(seq: List[tuple]) -> tuple:
    i = seq.index(min(seq))
    fwd = seq[i:] + seq[:i]
    back = fwd[:1] + fwd[:0:-1]
    return tuple(min(fwd, back))


def canonical_form(cells: Iterable) -> CanonicalKey:
    cells = list(cells)
    if not cells:
        raise ValueError("canonical_form of an empty set")
    return _cells(min(tuple(sorted(set(img))) for img in _images(cells)))


def canonical_cycle_form(cycle: Sequence) -> CycleKey:
    """Canonical key of a closed path up to translation, D8 and traversal order."""
    if not cycle:
        raise ValueError("canonical_cycle_form of an empty cycle")
    if len(set(map(tuple, cycle))) != len(cycle):
        raise ValueError("cycle repeats a cell")
    return _cells(min(_cycle_key_raw(img) for img in _images(list(cycle))))


def frame_bucket(cells: Sequence) -> Frame:
    if not is_normalized(cells):
        raise ValueError("frame_bucket needs a translation-normalized cell set")
    w, h = frame_of(cells)
    return Frame(max(w, h), min(w, h))


def _placements(key: Sequence, board: BoardSpec, mode: CountingMode) -> set:
    """Every distinct placement of a class on ``board``."""
    out = set()
    for img in _images(list(key)):
        h = 1 + max(c[0] for c in img)
        w = 1 + max(c[1] for c in img)
        for dr in range(board.size - h + 1):
            for dc in range(board.size - w + 1):
                moved = [(r + dr, c + dc) for r, c in img]
                out.add(tuple(sorted(moved)) if mode is CountingMode.COMBINATION else _cycle_key_raw(moved))
    return out


def _representative(key: Sequence, mode: CountingMode, board: Optional[BoardSpec]) -> Tuple[Cell, ...]:
    if board is None:
        return tuple(key)
    placed = _placements(key, board, mode)
    if not placed:
        return tuple(key)
    if mode is CountingMode.COMBINATION:
        return _cells(min(placed))
    return _cells(min(placed, key=lambda cyc: (tuple(sorted(cyc)), cyc)))


def _group_by_key(objs: Iterable[Sequence], mode: CountingMode) -> Dict[tuple, Sequence]:
    keyfn = canonical_form if mode is CountingMode.COMBINATION else canonical_cycle_form
    groups: Dict[tuple, Sequence] = {}
    for o in objs:
        groups.setdefault(keyfn(o), o)
    return groups


def _group_by_frame(objs: Iterable[Sequence], mode: CountingMode) -> Dict[tuple, Sequence]:
    """Bucket by congruent bounding rectangle, then merge within each bucket
    by orbit lookup against the bucket's representatives."""
    def ident(img):
        return tuple(sorted(set(img))) if mode is CountingMode.COMBINATION else _cycle_key_raw(img)

    buckets: Dict[Frame, Dict[tuple, Sequence]] = defaultdict(dict)
    for o in objs:
        imgs = _images(list(o))
        b = frame_bucket(normalize_translation(o))
        reps = buckets[b]
        if any(ident(img) in reps for img in imgs):
            continue
        reps[ident(imgs[0])] = o
    keyfn = canonical_form if mode is CountingMode.COMBINATION else canonical_cycle_form
    groups = {}
    for reps in buckets.values():
        for o in reps.values():
            k = keyfn(o)
            if k in groups:
                raise AssertionError(f"frame bucketing merged two members of class {k}")
            groups[k] = o
    return groups


def classify(cycles: Iterable[Sequence], mode: CountingMode = CountingMode.COMBINATION,
             board: Optional[BoardSpec] = None, use_frame_buckets: bool = True) -> List[EquivalenceClass]:
    """Group cycles into equivalence classes.

    In combination mode a class is a visited-cell set up to translation and
    the eight square symmetries; in cycle mode it is a closed path (an
    ordered cyclic sequence) up to the same moves. ``board`` is the reference
    board for representatives and member counts; without it the canonical
    key itself is the representative.

    Classes are sorted by representative lotto tuple on a 7x7 board and by
    canonical key otherwise.
    """
    mode = CountingMode(mode)
    objs = list(cycles)
    if mode is CountingMode.COMBINATION:
        objs = list({tuple(sorted(Cell(*c) for c in cyc)) for cyc in objs})
    else:
        objs = list({cycle_key(cyc) for cyc in objs})
    objs.sort()
    grouping = _group_by_frame if use_frame_buckets else _group_by_key
    groups = grouping(objs, mode)

    classes = []
    for key in groups:
        rep = _representative(key, mode, board)
        count = len(_placements(key, board, mode)) if board is not None else 1
        classes.append(EquivalenceClass(
            key=key,
            representative=rep,
            frame=frame_bucket(normalize_translation(key)),
            member_count_on_board=count,
            mode=mode,
        ))
    if board is not None and board.size == LOTTO_SIDE:
        classes.sort(key=lambda c: (to_lotto(c.cells), c.representative))
    else:
        classes.sort(key=lambda c: c.key)
    return classes


def traversal(cells: Sequence) -> Optional[Tuple[Cell, ...]]:
    """A closed knight path through exactly ``cells``, or None.

    Brute force over cyclic orders with the first cell fixed.
    """
    cells = sorted(Cell(*c) for c in cells)
    if len(cells) < 3:
        return None
    first, rest = cells[0], cells[1:]
    for perm in permutations(rest):
        if perm[0] > perm[-1]:
            continue  # the reversed order is tried separately
        seq = (first,) + perm
        if all(is_knight_move(seq[i - 1], seq[i]) for i in range(len(seq))):
            return seq
    return None


@lru_cache(maxsize=1)
def six_catalog() -> Tuple[EquivalenceClass, ...]:
    """Combination classes of length-6 closed paths on the 7x7 lotto slip."""
    from .search import SearchConfig, enumerate_cycles_mitm

    board = BoardSpec(LOTTO_SIDE)
    return tuple(classify(enumerate_cycles_mitm(SearchConfig(6, board)), CountingMode.COMBINATION, board))


def catalog_index(key: CanonicalKey, catalog: Sequence[EquivalenceClass]) -> Optional[int]:
    for i, cls in enumerate(catalog, start=1):
        if cls.key == key:
            return i
    return None


def check_combination(numbers: Sequence[int]) -> Tuple[bool, Optional[EquivalenceClass]]:
    numbers = list(numbers)
    if len(numbers) != 6:
        raise ValueError(f"expected 6 numbers, got {len(numbers)}")
    cells = from_lotto(numbers)
    if traversal(cells) is None:
        return False, None
    key = canonical_form(cells)
    for cls in six_catalog():
        if cls.key == key:
            return True, cls
    raise AssertionError(f"traversable combination {numbers} missing from the length-6 catalog")

"""Board coordinates, knight adjacency, square symmetries and the lotto grid.

Cells are ``(row, col)`` pairs with row 0 at the top and column 0 at the
left. A combination is a tuple of distinct cells sorted by ``(row, col)``.
"""
from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Sequence, Tuple

LOTTO_SIDE = 7
LOTTO_MAX = LOTTO_SIDE * LOTTO_SIDE

KNIGHT_OFFSETS = (
    (-2, -1), (-2, 1), (-1, -2), (-1, 2),
    (1, -2), (1, 2), (2, -1), (2, 1),
)


class Cell(NamedTuple):
    row: int
    col: int


Combination = Tuple[Cell, ...]


class Frame(NamedTuple):
    width: int
    height: int


class Transform(NamedTuple):
    """An element of the symmetry group of the square.

    The optional reflection ``(r, c) -> (r, width - 1 - c)`` is applied
    first, then ``quarter_turns`` clockwise turns ``(r, c) -> (c, height - 1 - r)``.
    """

    quarter_turns: int = 0
    reflected: bool = False


IDENTITY = Transform(0, False)
TRANSFORMS = tuple(Transform(q, f) for f in (False, True) for q in range(4))


@dataclass(frozen=True)
class BoardSpec:
    size: int

    def __post_init__(self):
        if not isinstance(self.size, int) or self.size < 3:
            raise ValueError(f"board size must be an integer >= 3, got {self.size!r}")

    def contains(self, c) -> bool:
        return 0 <= c[0] < self.size and 0 <= c[1] < self.size

    def cells(self) -> List[Cell]:
        return [Cell(r, c) for r in range(self.size) for c in range(self.size)]


def _check_on_board(c, board: BoardSpec) -> None:
    if not board.contains(c):
        raise ValueError(f"cell {tuple(c)} is off the {board.size}x{board.size} board")


def knight_moves(c, board: BoardSpec) -> List[Cell]:
    _check_on_board(c, board)
    r, col = c
    out = [Cell(r + dr, col + dc) for dr, dc in KNIGHT_OFFSETS]
    return sorted(x for x in out if board.contains(x))


def is_knight_move(a, b) -> bool:
    dr = abs(a[0] - b[0])
    dc = abs(a[1] - b[1])
    return (dr, dc) in ((1, 2), (2, 1))


def compose(outer: Transform, inner: Transform) -> Transform:
    """Return the transform equal to applying ``inner`` and then ``outer``."""
    # A reflection followed by q turns equals -q turns followed by a reflection.
    if outer.reflected:
        turns = outer.quarter_turns - inner.quarter_turns
    else:
        turns = outer.quarter_turns + inner.quarter_turns
    return Transform(turns % 4, inner.reflected != outer.reflected)


def inverse(t: Transform) -> Transform:
    if t.reflected:
        return t
    return Transform((-t.quarter_turns) % 4, False)


def transformed_frame(t: Transform, f: Frame) -> Frame:
    if t.quarter_turns % 2:
        return Frame(f.height, f.width)
    return Frame(f.width, f.height)


def transform_cell(t: Transform, c, f: Frame) -> Cell:
    r, col = c
    w, h = f
    if t.reflected:
        col = w - 1 - col
    for _ in range(t.quarter_turns):
        r, col = col, h - 1 - r
        w, h = h, w
    return Cell(r, col)


def transform_sequence(t: Transform, cells: Iterable, f: Frame) -> List[Cell]:
    """Map cells through ``t`` keeping their order (used for cycles).

    Same result as :func:`transform_cell` per cell, in closed form.
    """
    w1, h1 = f.width - 1, f.height - 1
    q = t.quarter_turns % 4
    if t.reflected:
        cells = [(r, w1 - c) for r, c in cells]
    if q == 0:
        return [Cell(r, c) for r, c in cells]
    if q == 1:
        return [Cell(c, h1 - r) for r, c in cells]
    if q == 2:
        return [Cell(h1 - r, w1 - c) for r, c in cells]
    return [Cell(w1 - c, r) for r, c in cells]


def apply_transform(t: Transform, cells: Iterable, f: Frame) -> Combination:
    cells = list(cells)
    for c in cells:
        if not (0 <= c[0] < f.height and 0 <= c[1] < f.width):
            raise ValueError(f"cell {tuple(c)} lies outside frame {f.width}x{f.height}")
    return tuple(sorted(transform_sequence(t, cells, f)))


def translate(cells: Iterable, dr: int, dc: int) -> Combination:
    return tuple(sorted(Cell(r + dr, c + dc) for r, c in cells))


def normalize_translation(cells: Iterable) -> Combination:
    cells = list(cells)
    if not cells:
        raise ValueError("cannot normalize an empty cell set")
    r0 = min(c[0] for c in cells)
    c0 = min(c[1] for c in cells)
    return tuple(sorted({Cell(r - r0, c - c0) for r, c in cells}))


def is_normalized(cells: Sequence) -> bool:
    return bool(cells) and min(c[0] for c in cells) == 0 and min(c[1] for c in cells) == 0


def frame_of(cells: Sequence) -> Frame:
    if not is_normalized(cells):
        raise ValueError("frame_of needs a translation-normalized, nonempty cell set")
    return Frame(1 + max(c[1] for c in cells), 1 + max(c[0] for c in cells))


def to_lotto(cells: Iterable) -> List[int]:
    out = []
    for r, c in cells:
        if not (0 <= r < LOTTO_SIDE and 0 <= c < LOTTO_SIDE):
            raise ValueError(f"cell {(r, c)} is outside the {LOTTO_SIDE}x{LOTTO_SIDE} lotto grid")
        out.append(LOTTO_SIDE * r + c + 1)
    return sorted(out)


def from_lotto(numbers: Iterable[int]) -> Combination:
    numbers = list(numbers)
    for x in numbers:
        if isinstance(x, bool) or not isinstance(x, int) or not 1 <= x <= LOTTO_MAX:
            raise ValueError(f"lotto number {x!r} is not in 1..{LOTTO_MAX}")
    if len(set(numbers)) != len(numbers):
        raise ValueError(f"duplicate lotto numbers in {numbers}")
    return tuple(sorted(Cell(*divmod(x - 1, LOTTO_SIDE)) for x in numbers))

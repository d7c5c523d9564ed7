"""Enumeration of closed knight paths.

Two independent enumerators live here:

* :func:`enumerate_cycles_mitm` splits every cycle into two half paths that
  share both endpoints and joins compatible pairs.
* :func:`enumerate_cycles_oracle` is a plain depth-first walk that closes
  back onto its starting square.

Both return a ``set`` of cycles in canonical orientation (see
:func:`knightpaths.classify.cycle_key`), so their outputs compare directly.

Internally cells are integer indices ``row * size + col``; index order
coincides with ``(row, col)`` order, which the min-anchor pruning relies on.
"""
from collections import defaultdict, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .geometry import KNIGHT_OFFSETS, BoardSpec, Cell, is_knight_move

Path = Tuple[Cell, ...]
Cycle = Tuple[Cell, ...]


@dataclass(frozen=True)
class SearchConfig:
    n: int
    board: Optional[BoardSpec] = None
    worker_count: int = 1

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 3:
            raise ValueError(f"cycle length must be an integer >= 3, got {self.n!r}")
        if self.board is None:
            object.__setattr__(self, "board", BoardSpec(self.n + 1))
        elif not isinstance(self.board, BoardSpec):
            raise TypeError("board must be a BoardSpec")
        if not isinstance(self.worker_count, int) or self.worker_count < 1:
            raise ValueError(f"worker_count must be >= 1, got {self.worker_count!r}")


class _Tables:
    """Move and distance tables for one board size."""

    def __init__(self, size: int):
        self.size = size
        cells = size * size
        self.neighbors: List[Tuple[int, ...]] = []
        self.adjmask: List[int] = []
        for i in range(cells):
            r, c = divmod(i, size)
            nb = []
            for dr, dc in KNIGHT_OFFSETS:
                rr, cc = r + dr, c + dc
                if 0 <= rr < size and 0 <= cc < size:
                    nb.append(rr * size + cc)
            nb.sort()
            self.neighbors.append(tuple(nb))
            m = 0
            for j in nb:
                m |= 1 << j
            self.adjmask.append(m)
        self.dist = [self._bfs(i) for i in range(cells)]

    def _bfs(self, src: int) -> List[int]:
        far = self.size * self.size
        d = [far] * (self.size * self.size)
        d[src] = 0
        q = deque([src])
        while q:
            x = q.popleft()
            for y in self.neighbors[x]:
                if d[y] == far:
                    d[y] = d[x] + 1
                    q.append(y)
        return d

    def to_cells(self, seq: Iterable[int]) -> Tuple[Cell, ...]:
        return tuple(Cell(*divmod(i, self.size)) for i in seq)


@lru_cache(maxsize=None)
def tables(size: int) -> _Tables:
    return _Tables(size)


def _orient(seq: Sequence[int]) -> Tuple[int, ...]:
    """Rotate and possibly reverse so the smallest cell leads and second < last."""
    i = seq.index(min(seq))
    rot = tuple(seq[i:]) + tuple(seq[:i])
    if rot[1] > rot[-1]:
        rot = (rot[0],) + rot[:0:-1]
    return rot


# ---------------------------------------------------------------- half paths

def _paths_from(t: _Tables, a: int, k: int, floor: int = -1) -> Dict[int, List[Tuple[int, Tuple[int, ...]]]]:
    """All simple k-move paths from ``a`` grouped by end cell.

    Only cells with index > ``floor`` are visited after ``a``. Each entry is
    ``(interior_mask, cells)``.
    """
    out: Dict[int, List[Tuple[int, Tuple[int, ...]]]] = defaultdict(list)
    nbrs = t.neighbors
    path = [a]

    def walk(x: int, mask: int, left: int) -> None:
        for y in nbrs[x]:
            if y <= floor or (mask >> y) & 1:
                continue
            if left == 1:
                out[y].append((mask & ~(1 << a), tuple(path) + (y,)))
            else:
                path.append(y)
                walk(y, mask | (1 << y), left - 1)
                path.pop()

    walk(a, 1 << a, k)
    return out


def enumerate_half_paths(a, b, k: int, board: BoardSpec) -> List[Path]:
    """Every simple knight path from ``a`` to ``b`` with exactly ``k`` moves."""
    if not board.contains(a) or not board.contains(b):
        raise ValueError(f"endpoints {tuple(a)}, {tuple(b)} must lie on the board")
    if tuple(a) == tuple(b):
        raise ValueError("half-path endpoints must differ")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    t = tables(board.size)
    s = board.size
    ai, bi = a[0] * s + a[1], b[0] * s + b[1]
    found = []
    path = [ai]

    def walk(x: int, mask: int, left: int) -> None:
        if t.dist[x][bi] > left:
            return
        if left == 0:
            if x == bi:
                found.append(t.to_cells(path))
            return
        for y in t.neighbors[x]:
            if not (mask >> y) & 1:
                path.append(y)
                walk(y, mask | (1 << y), left - 1)
                path.pop()

    walk(ai, 1 << ai, k)
    return sorted(found)


def join_paths(p1: Sequence, p2: Sequence) -> Optional[Cycle]:
    """Glue ``p1`` forward and ``p2`` backward into a cycle, or return None."""
    p1, p2 = tuple(map(tuple, p1)), tuple(map(tuple, p2))
    if len(p1) < 2 or len(p1) != len(p2):
        raise ValueError("paths must have the same, nonzero move count")
    if p1[0] != p2[0] or p1[-1] != p2[-1]:
        raise ValueError("paths must share both endpoints")
    ends = {p1[0], p1[-1]}
    in1, in2 = set(p1[1:-1]), set(p2[1:-1])
    if len(in1) != len(p1) - 2 or len(in2) != len(p2) - 2:
        return None
    if in1 & in2 or in1 & ends or in2 & ends:
        return None
    cycle = p1 + p2[-2:0:-1]
    if len(cycle) < 3:
        return None
    return tuple(Cell(*c) for c in cycle)


# ----------------------------------------------------------- meet in the middle

def _mitm_anchor(t: _Tables, a: int, n: int, anchor_min: bool) -> List[Tuple[int, ...]]:
    k1 = n // 2
    k2 = n - k1
    floor = a if anchor_min else -1
    short = _paths_from(t, a, k1, floor)
    long_ = short if k2 == k1 else _paths_from(t, a, k2, floor)
    found = []
    for b, group in short.items():
        if b < a:
            continue
        if k1 == k2:
            for i in range(len(group)):
                m1, c1 = group[i]
                for j in range(i + 1, len(group)):
                    m2, c2 = group[j]
                    if not m1 & m2:
                        found.append(_orient(c1 + c2[-2:0:-1]))
        else:
            for m1, c1 in group:
                for m2, c2 in long_.get(b, ()):
                    if not m1 & m2:
                        found.append(_orient(c1 + c2[-2:0:-1]))
    return found


def _mitm_chunk(args) -> Set[Tuple[int, ...]]:
    size, n, anchors, anchor_min = args
    t = tables(size)
    out: Set[Tuple[int, ...]] = set()
    for a in anchors:
        out.update(_mitm_anchor(t, a, n, anchor_min))
    return out


# ------------------------------------------------------------------- oracle

def _oracle_anchor(t: _Tables, a: int, n: int) -> List[Tuple[int, ...]]:
    nbrs, dist_a = t.neighbors, [d[a] for d in t.dist]
    close = t.adjmask[a]
    found = []
    path = [a]

    def walk(x: int, mask: int, depth: int) -> None:
        # depth = cells already on the path; n - depth moves remain before closing
        if depth == n:
            if (close >> x) & 1 and path[1] < x:
                found.append(tuple(path))
            return
        left = n - depth  # moves left after stepping to y, closing move included
        for y in nbrs[x]:
            if y <= a or (mask >> y) & 1 or dist_a[y] > left:
                continue
            path.append(y)
            walk(y, mask | (1 << y), depth + 1)
            path.pop()

    walk(a, 1 << a, 1)
    return found


def _oracle_chunk(args) -> Set[Tuple[int, ...]]:
    size, n, anchors = args
    t = tables(size)
    out: Set[Tuple[int, ...]] = set()
    for a in anchors:
        out.update(_oracle_anchor(t, a, n))
    return out


# ------------------------------------------------------------------ drivers

def _split(items: List[int], parts: int) -> List[List[int]]:
    # round-robin, since anchors near the top-left carry most of the work
    return [items[i::parts] for i in range(parts) if items[i::parts]]


def _run(chunk_fn, payloads: List[tuple], workers: int) -> Set[Tuple[int, ...]]:
    merged: Set[Tuple[int, ...]] = set()
    if workers == 1:
        for p in payloads:
            merged |= chunk_fn(p)
        return merged
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(chunk_fn, payloads):
            merged |= part
    return merged


def _to_cycles(size: int, raw: Iterable[Tuple[int, ...]]) -> Set[Cycle]:
    t = tables(size)
    return {t.to_cells(c) for c in raw}


def enumerate_cycles_mitm(cfg: SearchConfig, anchor_min: bool = True) -> Set[Cycle]:
    """All closed knight paths of length ``cfg.n``, by joining half paths.

    With ``anchor_min`` (the default) each endpoint pair only considers half
    paths whose cells all come after the first endpoint, so every cycle is
    built from the split through its smallest cell. Turning it off joins
    over all pairs and relies purely on set deduplication.
    """
    size = cfg.board.size
    anchors = list(range(size * size))
    payloads = [(size, cfg.n, part, anchor_min) for part in _split(anchors, cfg.worker_count)]
    return _to_cycles(size, _run(_mitm_chunk, payloads, cfg.worker_count))


def enumerate_cycles_oracle(cfg: SearchConfig) -> Set[Cycle]:
    """All closed knight paths of length ``cfg.n`` by direct depth-first search."""
    size = cfg.board.size
    anchors = list(range(size * size))
    payloads = [(size, cfg.n, part) for part in _split(anchors, cfg.worker_count)]
    return _to_cycles(size, _run(_oracle_chunk, payloads, cfg.worker_count))


def anchor_cycles(size: int, n: int, anchor: int, method: str = "mitm") -> Set[Tuple[int, ...]]:
    """Cycles whose smallest cell is ``anchor``, as oriented index tuples.

    ``method`` is ``"mitm"`` or ``"oracle"``; both partition the full cycle
    set by smallest cell, so per-anchor results compare directly.
    """
    t = tables(size)
    if method == "mitm":
        return set(_mitm_anchor(t, anchor, n, True))
    if method == "oracle":
        return set(_oracle_anchor(t, anchor, n))
    raise ValueError(f"unknown method {method!r}")


def is_valid_cycle(cycle: Sequence, n: Optional[int] = None, board: Optional[BoardSpec] = None) -> bool:
    if n is not None and len(cycle) != n:
        return False
    if len(cycle) < 3 or len(set(map(tuple, cycle))) != len(cycle):
        return False
    if board is not None and not all(board.contains(c) for c in cycle):
        return False
    return all(is_knight_move(cycle[i - 1], cycle[i]) for i in range(len(cycle)))

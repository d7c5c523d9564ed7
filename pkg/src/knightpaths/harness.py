"""Reproduction runs, Appendix B checks and count extension to larger lengths."""
import json
import time
from concurrent.futures import ProcessPoolExecutor
from concurrent.futures import TimeoutError as FutureTimeout
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, List, Optional, Sequence, Set, Tuple, Union

from .classify import (
    CountingMode,
    canonical_form,
    check_combination,
    classify,
    six_catalog,
    traversal,
)
from .geometry import BoardSpec, Cell, from_lotto
from .search import (
    SearchConfig,
    anchor_cycles,
    enumerate_cycles_mitm,
    enumerate_cycles_oracle,
    is_valid_cycle,
)

PUBLISHED_COUNTS = {4: 3, 6: 25, 8: 478}
CHECKPOINT_VERSION = 1


class ReproductionError(RuntimeError):
    pass


class AppendixBError(AssertionError):
    pass


@dataclass
class ReproductionReport:
    n: int
    board_size: int
    combination_class_count: int
    cycle_class_count: int
    raw_cycle_count: int
    oracle_agreement: bool
    elapsed: float
    worker_count: int
    published_count: Optional[int] = None

    @property
    def matching_modes(self) -> List[str]:
        if self.published_count is None:
            return []
        out = []
        if self.combination_class_count == self.published_count:
            out.append(CountingMode.COMBINATION.value)
        if self.cycle_class_count == self.published_count:
            out.append(CountingMode.CYCLE.value)
        return out

    @property
    def ok(self) -> bool:
        if not self.oracle_agreement:
            return False
        return self.published_count is None or bool(self.matching_modes)

    def to_text(self) -> str:
        def fmt(v):
            if isinstance(v, bool):
                return "true" if v else "false"
            return str(v)

        lines = [
            ("n", self.n),
            ("board_size", self.board_size),
            ("raw_cycle_count", self.raw_cycle_count),
            ("combination_class_count", self.combination_class_count),
            ("cycle_class_count", self.cycle_class_count),
            ("oracle_agreement", self.oracle_agreement),
        ]
        if self.published_count is None:
            lines.append(("status", "new result, no published count"))
        else:
            lines.append(("published_count", self.published_count))
            lines.append(("matching_mode", ",".join(self.matching_modes) or "none"))
        lines += [("worker_count", self.worker_count), ("elapsed", f"{self.elapsed:.3f}s")]
        return "\n".join(f"{k}: {fmt(v)}" for k, v in lines) + "\n"


@dataclass
class AppendixBCheck:
    rows_matched_as_classes: int
    bijection_ok: bool
    exact_representative_match: bool


@dataclass
class TimeoutNotice:
    n: int
    completed: int
    total: int
    checkpoint: dict = field(repr=False)

    def to_text(self) -> str:
        return (f"n: {self.n}\nstatus: timeout\n"
                f"progress: {self.completed}/{self.total} anchors\n")


def _check_cycles(cycles: Iterable, n: int, board: BoardSpec) -> None:
    for cyc in cycles:
        if not is_valid_cycle(cyc, n, board):
            raise ReproductionError(f"enumerator produced an invalid cycle {cyc}")


def reproduce(n: int, workers: int = 1, board_size: Optional[int] = None) -> ReproductionReport:
    """Enumerate with both methods, classify in both modes and report."""
    start = time.perf_counter()
    board = BoardSpec(board_size if board_size is not None else n + 1)
    cfg = SearchConfig(n, board, workers)
    mitm = enumerate_cycles_mitm(cfg)
    oracle = enumerate_cycles_oracle(cfg)
    _check_cycles(mitm, n, board)
    _check_cycles(oracle, n, board)
    comb = classify(mitm, CountingMode.COMBINATION, board)
    cyc = classify(mitm, CountingMode.CYCLE, board)
    return ReproductionReport(
        n=n,
        board_size=board.size,
        combination_class_count=len(comb),
        cycle_class_count=len(cyc),
        raw_cycle_count=len(mitm),
        oracle_agreement=mitm == oracle,
        elapsed=time.perf_counter() - start,
        worker_count=workers,
        published_count=PUBLISHED_COUNTS.get(n) if board.size == n + 1 else None,
    )


# ------------------------------------------------------------------ appendix

def parse_rows(text: str) -> List[List[int]]:
    """Parse ``id: a b c ...`` lines; any whitespace separates numbers."""
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        _, _, rest = line.partition(":")
        rows.append([int(tok) for tok in rest.split()])
    return rows


def appendix_b_rows() -> List[List[int]]:
    text = resources.files("knightpaths").joinpath("data/appendix_b.txt").read_text()
    return parse_rows(text)


def verify_appendix_b(rows: Optional[Sequence[Sequence[int]]] = None) -> AppendixBCheck:
    """Check that the fixture rows are exactly the length-6 classes.

    Raises :class:`AppendixBError` naming the first offending row.
    """
    rows = appendix_b_rows() if rows is None else [list(r) for r in rows]
    catalog = six_catalog()
    reference = {cls.key for cls in catalog}
    keys = []
    for i, row in enumerate(rows, start=1):
        try:
            ok, _ = check_combination(row)
        except ValueError as exc:
            raise AppendixBError(f"row {i} {row}: {exc}") from None
        if not ok:
            raise AppendixBError(f"row {i} {row} is not traversable by a closed knight path")
        k = canonical_form(from_lotto(row))
        if k in keys:
            raise AppendixBError(f"row {i} {row} repeats the class of row {keys.index(k) + 1}")
        keys.append(k)
    if len(keys) != len(reference) or set(keys) != reference:
        raise AppendixBError(f"{len(keys)} rows do not biject onto the {len(reference)} length-6 classes")
    exact = [cls.lotto() for cls in catalog] == [sorted(r) for r in rows]
    return AppendixBCheck(len(keys), True, exact)


def render_board(cells: Iterable, size: int) -> str:
    marked = {tuple(c) for c in cells}
    return "\n".join(
        "".join("#" if (r, c) in marked else "." for c in range(size)) for r in range(size)
    )


def regenerate_appendix_a() -> List[str]:
    """ASCII diagrams of the length-4 classes on the 5x5 board."""
    board = BoardSpec(5)
    classes = classify(enumerate_cycles_mitm(SearchConfig(4, board)), CountingMode.COMBINATION, board)
    out = []
    for cls in classes:
        if traversal(cls.cells) is None:
            raise ReproductionError(f"representative {cls.cells} is not a closed knight path")
        out.append(render_board(cls.cells, board.size))
    return out


# ---------------------------------------------------------------- extension

def _extend_anchor(args) -> Tuple[int, int, bool, List[Tuple[int, ...]]]:
    size, n, a = args
    mitm = anchor_cycles(size, n, a, "mitm")
    oracle = anchor_cycles(size, n, a, "oracle")
    r0 = a // size
    shapes = set()
    for cyc in mitm:
        shift = r0 * size + min(x % size for x in cyc)
        shapes.add(tuple(x - shift for x in cyc))
    return a, len(mitm), mitm == oracle, sorted(shapes)


def new_checkpoint(n: int) -> dict:
    return {
        "version": CHECKPOINT_VERSION,
        "n": n,
        "board_size": n + 1,
        "completed_anchors": [],
        "shapes": [],
        "raw_cycle_count": 0,
        "oracle_agreement": True,
        "elapsed": 0.0,
    }


def save_checkpoint(checkpoint: dict, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(checkpoint, fh)


def load_checkpoint(path: str) -> dict:
    with open(path) as fh:
        cp = json.load(fh)
    if cp.get("version") != CHECKPOINT_VERSION:
        raise ValueError(f"unsupported checkpoint version {cp.get('version')!r}")
    return cp


def extend_sequence(n: int, budget: float, checkpoint: Optional[dict] = None,
                    workers: int = 1) -> Union[ReproductionReport, TimeoutNotice]:
    """Count classes for a length past the published ones, within ``budget`` seconds.

    Cycles are enumerated one smallest-cell anchor at a time, each anchor
    by both enumerators; only translation-normalized shapes are kept. On
    timeout the returned notice carries a checkpoint that can be passed
    back in to resume.
    """
    if n < 10 or n % 2:
        raise ValueError(f"extend_sequence takes even n >= 10; use reproduce({n}) for n = {n}")
    start = time.perf_counter()
    deadline = start + budget
    cp = new_checkpoint(n) if checkpoint is None else json.loads(json.dumps(checkpoint))
    if cp.get("version") != CHECKPOINT_VERSION or cp["n"] != n:
        raise ValueError("checkpoint does not match this run")
    size = cp["board_size"]
    done = set(cp["completed_anchors"])
    shapes: Set[Tuple[int, ...]] = {tuple(s) for s in cp["shapes"]}
    todo = [a for a in range(size * size) if a not in done]

    def absorb(res):
        a, count, agree, found = res
        cp["completed_anchors"].append(a)
        cp["raw_cycle_count"] += count
        cp["oracle_agreement"] = cp["oracle_agreement"] and agree
        shapes.update(found)

    def notice():
        cp["shapes"] = sorted(shapes)
        cp["elapsed"] += time.perf_counter() - start
        return TimeoutNotice(n, len(cp["completed_anchors"]), size * size, cp)

    # every call finishes at least one anchor, so resuming always progresses
    if workers == 1:
        for i, a in enumerate(todo):
            if i and time.perf_counter() >= deadline:
                return notice()
            absorb(_extend_anchor((size, n, a)))
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        try:
            futures = [pool.submit(_extend_anchor, (size, n, a)) for a in todo]
            for i, fut in enumerate(futures):
                left = None if i == 0 else deadline - time.perf_counter()
                if left is not None and left <= 0:
                    return notice()
                try:
                    absorb(fut.result(timeout=left))
                except FutureTimeout:
                    return notice()
        finally:
            pool.shutdown(wait=False, cancel_futures=True)

    if time.perf_counter() >= deadline:
        return notice()
    board = BoardSpec(size)
    cycles = [tuple(Cell(*divmod(x, size)) for x in s) for s in sorted(shapes)]
    comb = classify(cycles, CountingMode.COMBINATION, board)
    cyc = classify(cycles, CountingMode.CYCLE, board)
    return ReproductionReport(
        n=n,
        board_size=size,
        combination_class_count=len(comb),
        cycle_class_count=len(cyc),
        raw_cycle_count=cp["raw_cycle_count"],
        oracle_agreement=cp["oracle_agreement"],
        elapsed=cp["elapsed"] + time.perf_counter() - start,
        worker_count=workers,
    )

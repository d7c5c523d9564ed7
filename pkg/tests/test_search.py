import itertools

import pytest

from knightpaths.classify import cycle_key
from knightpaths.geometry import BoardSpec, Cell, is_knight_move, normalize_translation, frame_of
from knightpaths.search import (
    SearchConfig,
    anchor_cycles,
    enumerate_cycles_mitm,
    enumerate_cycles_oracle,
    enumerate_half_paths,
    is_valid_cycle,
    join_paths,
)

from conftest import mitm_cycles, oracle_cycles


def subset_cycles(n, size):
    """Every n-cycle by trying all cyclic orders of every n-cell subset."""
    cells = [(r, c) for r in range(size) for c in range(size)]
    found = set()
    for sub in itertools.combinations(cells, n):
        first, rest = sub[0], sub[1:]
        for perm in itertools.permutations(rest):
            seq = (first,) + perm
            if all(is_knight_move(seq[i - 1], seq[i]) for i in range(n)):
                found.add(cycle_key(seq))
    return found


def brute_half_paths(a, b, k, size):
    cells = [(r, c) for r in range(size) for c in range(size)]
    out = []
    for mid in itertools.permutations([c for c in cells if c not in (a, b)], k - 1):
        seq = (a,) + mid + (b,)
        if all(is_knight_move(seq[i], seq[i + 1]) for i in range(k)):
            out.append(seq)
    return sorted(out)


def test_half_paths_examples():
    b5 = BoardSpec(5)
    assert enumerate_half_paths((0, 0), (2, 4), 2, b5) == [((0, 0), (1, 2), (2, 4))]
    assert enumerate_half_paths((0, 0), (2, 2), 2, b5) == []
    assert enumerate_half_paths((0, 0), (1, 2), 1, b5) == [((0, 0), (1, 2))]


@pytest.mark.parametrize("a,b,k", [((0, 0), (2, 2), 4), ((1, 1), (3, 2), 3), ((0, 4), (4, 0), 4)])
def test_half_paths_match_brute_force(a, b, k):
    assert enumerate_half_paths(a, b, k, BoardSpec(5)) == brute_half_paths(a, b, k, 5)


def test_half_paths_reject_bad_endpoints():
    b5 = BoardSpec(5)
    with pytest.raises(ValueError):
        enumerate_half_paths((0, 0), (0, 0), 2, b5)
    with pytest.raises(ValueError):
        enumerate_half_paths((0, 0), (5, 5), 2, b5)
    with pytest.raises(ValueError):
        enumerate_half_paths((0, 0), (1, 2), 0, b5)


def test_join_paths_examples():
    p1 = [(0, 0), (1, 2), (3, 3)]
    p2 = [(0, 0), (2, 1), (3, 3)]
    cyc = join_paths(p1, p2)
    assert cyc == ((0, 0), (1, 2), (3, 3), (2, 1))
    assert is_valid_cycle(cyc, 4)
    assert join_paths(p1, p1) is None
    q1 = [(0, 0), (1, 2), (2, 4), (3, 2)]
    q2 = [(0, 0), (1, 2), (1, 3), (3, 2)]
    assert join_paths(q1, q2) is None


def test_join_paths_rejects_mismatch():
    with pytest.raises(ValueError):
        join_paths([(0, 0), (1, 2)], [(0, 0), (2, 1)])
    with pytest.raises(ValueError):
        join_paths([(0, 0), (1, 2), (3, 3)], [(0, 0), (1, 2)])


def test_config_validation():
    assert SearchConfig(6).board == BoardSpec(7)
    with pytest.raises(ValueError):
        SearchConfig(2)
    with pytest.raises(ValueError):
        SearchConfig(4, worker_count=0)


def test_no_four_cycle_on_three_by_three():
    assert subset_cycles(4, 3) == set()
    cfg = SearchConfig(4, BoardSpec(3))
    assert enumerate_cycles_mitm(cfg) == set()
    assert enumerate_cycles_oracle(cfg) == set()


@pytest.mark.parametrize("n,size", [(4, 5), (4, 6), (6, 4)])
def test_enumerators_match_subset_brute_force(n, size):
    truth = subset_cycles(n, size)
    assert mitm_cycles(n, size) == truth
    assert oracle_cycles(n, size) == truth


@pytest.mark.parametrize("n", [3, 5, 7])
def test_odd_lengths_are_empty(n):
    assert mitm_cycles(n) == set()
    assert oracle_cycles(n) == set()


@pytest.mark.parametrize("n", [4, 6, 8])
def test_every_cycle_is_valid_and_canonically_oriented(n):
    board = BoardSpec(n + 1)
    for cyc in mitm_cycles(n):
        assert is_valid_cycle(cyc, n, board)
        assert cycle_key(cyc) == cyc


@pytest.mark.parametrize("n", [4, 6])
def test_dedup_without_anchor_pruning(n):
    plain = enumerate_cycles_mitm(SearchConfig(n), anchor_min=False)
    assert plain == mitm_cycles(n)


@pytest.mark.parametrize("n", [4, 6, 8])
def test_board_sufficiency(n):
    for cyc in mitm_cycles(n):
        w, h = frame_of(normalize_translation(cyc))
        assert w <= n + 1 and h <= n + 1


@pytest.mark.parametrize("n,size", [(4, 5), (6, 7)])
def test_monotone_in_board_size(n, size):
    small, big = mitm_cycles(n, size), mitm_cycles(n, size + 1)
    assert small <= big
    inside = {c for c in big if all(r < size and k < size for r, k in c)}
    assert inside == small


@pytest.mark.parametrize("workers", [2, 3])
def test_worker_count_independence(workers):
    cfg = SearchConfig(6, worker_count=workers)
    assert enumerate_cycles_mitm(cfg) == mitm_cycles(6)
    assert enumerate_cycles_oracle(cfg) == mitm_cycles(6)


def test_anchor_partition_matches_full_set():
    size = 7
    merged = set()
    for a in range(size * size):
        m = anchor_cycles(size, 6, a, "mitm")
        assert m == anchor_cycles(size, 6, a, "oracle")
        assert all(min(c) == a for c in m)
        merged |= {tuple(Cell(*divmod(x, size)) for x in c) for c in m}
    assert merged == mitm_cycles(6)
    with pytest.raises(ValueError):
        anchor_cycles(size, 6, 0, "bfs")

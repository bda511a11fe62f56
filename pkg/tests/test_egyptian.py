"""Unit fraction decompositions, grid walks, and the online Kraft allocator."""

from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

from tuatara.binstr import is_prefix_free
from tuatara.egyptian import (
    CodeAssignment,
    ExpansionOverflow,
    KraftAllocator,
    KraftViolation,
    dyadic_diagonal,
    dyadic_row,
    egyptian_floor,
    grid_walk,
    kraft_chaitin,
    unit_sum_to_prefix_free,
)


def test_egyptian_floor_worked_examples():
    assert egyptian_floor(F(1, 2), 2) == [2]
    assert egyptian_floor(F(4, 5), 2) == [2, 4, 20]
    assert egyptian_floor(F(1, 3), 4) == [4, 12]
    assert egyptian_floor(F(1), 1) == [1]


def test_egyptian_floor_guards():
    with pytest.raises(ValueError):
        egyptian_floor(F(0), 2)
    with pytest.raises(ValueError):
        egyptian_floor(F(-1, 2), 2)
    with pytest.raises(ValueError):
        egyptian_floor(F(1, 2), 0)


def _run_remainder(q: F, floor: int) -> F:
    rem = q
    m = floor
    while rem >= F(1, m):
        rem -= F(1, m)
        m += 1
    return rem


def test_egyptian_floor_random():
    # greedy denominator bits double per step, so only remainders with small
    # numerators finish at materializable size; screen the samples accordingly
    rng = random.Random(23)
    checked = 0
    while checked < 200:
        d = rng.randint(2, 40)
        q = F(rng.randint(1, 3 * d - 1), d)
        floor = rng.randint(1, 50)
        if _run_remainder(q, floor).numerator.bit_length() > 24:
            continue
        ms = egyptian_floor(q, floor)
        assert ms[0] >= floor
        assert all(a < b for a, b in zip(ms, ms[1:]))
        assert sum(F(1, m) for m in ms) == q
        checked += 1


def test_egyptian_floor_overflow():
    # run remainder for (5/3, 28) carries a 196-bit numerator; the greedy
    # tail would need denominators far past any practical size
    with pytest.raises(ExpansionOverflow) as info:
        egyptian_floor(F(5, 3), 28, bit_budget=100_000)
    assert info.value.bits == 100_000
    # generous budgets leave feasible instances untouched
    assert egyptian_floor(F(4, 5), 2, bit_budget=100_000) == [2, 4, 20]


def test_dyadic_row_values():
    assert list(dyadic_row(2)) == [F(1, 2)]
    assert list(dyadic_row(4)) == [F(1, 4)]
    row3 = dyadic_row(3)
    assert [next(row3) for _ in range(3)] == [F(1, 4), F(1, 16), F(1, 64)]
    row6 = dyadic_row(6)
    assert [next(row6) for _ in range(3)] == [F(1, 8), F(1, 32), F(1, 128)]
    with pytest.raises(ValueError):
        next(dyadic_row(1))


def test_grid_walk_diagonal_order():
    want = [
        F(1, 2),
        F(1, 4),
        F(1, 4),
        F(1, 16),
        F(1, 8),
        F(1, 64),
        F(1, 8),
        F(1, 16),
        F(1, 256),
    ]
    got = list(grid_walk((2, 3, 4, 5, 6), 9))
    assert [g.term for g in got] == want
    assert all(g.d == g.row + g.col for g in got)
    assert dyadic_diagonal((2, 3, 4, 5, 6), 9) == want


def test_grid_walk_terminates_on_powers_of_two():
    got = list(grid_walk((2, 4, 8), 100))
    assert [g.term for g in got] == [F(1, 2), F(1, 4), F(1, 8)]
    assert [g.d for g in got] == [2, 3, 4]


def test_grid_walk_budget_zero():
    assert list(grid_walk((3, 5), 0)) == []
    with pytest.raises(ValueError):
        list(grid_walk((3,), -1))


def test_kraft_chaitin_examples():
    assert kraft_chaitin([1, 2, 3, 3]) == ["0", "10", "110", "111"]
    assert kraft_chaitin([1, 1]) == ["0", "1"]
    assert kraft_chaitin([0]) == [""]
    assert kraft_chaitin([]) == []


def test_kraft_chaitin_violations():
    with pytest.raises(KraftViolation) as info:
        kraft_chaitin([1, 1, 1])
    assert info.value.index == 3
    assert info.value.length == 1
    with pytest.raises(KraftViolation) as info:
        kraft_chaitin([0, 0])
    assert info.value.index == 2


def test_allocator_guards_and_counter():
    alloc = KraftAllocator()
    with pytest.raises(ValueError):
        alloc.request(-1)  # malformed input, not a counted request
    assert alloc.request(2) == "00"
    assert alloc.requests_served == 1


def _random_admissible_lengths(rng: random.Random) -> list[int]:
    lengths: list[int] = []
    used = F(0)
    for _ in range(rng.randint(1, 200)):
        n = rng.randint(0, 24)
        if used + F(1, 1 << n) <= 1:
            lengths.append(n)
            used += F(1, 1 << n)
    return lengths


def test_kraft_chaitin_random_streams():
    rng = random.Random(31)
    for _ in range(300):
        lengths = _random_admissible_lengths(rng)
        words = kraft_chaitin(lengths)
        assert [len(w) for w in words] == lengths
        assert is_prefix_free(words)


def test_unit_sum_third():
    asg = unit_sum_to_prefix_free((3,), 20)
    assert isinstance(asg, CodeAssignment)
    assert len(asg.words) == 20
    assert asg.terms == tuple(F(1, 4**k) for k in range(1, 21))
    assert [len(w) for w in asg.words] == [2 * k for k in range(1, 21)]
    assert is_prefix_free(asg.words)
    gap = F(1, 3) - asg.total
    assert gap == F(1, 3 * 4**20)
    assert gap < F(1, 1 << 20)


def test_unit_sum_small_budget():
    asg = unit_sum_to_prefix_free((3,), 10)
    assert asg.total == F(4**10 - 1, 3 * 4**10)
    assert all(F(1, 1 << len(w)) == t for w, t in zip(asg.words, asg.terms))


def test_unit_sum_overflow():
    # three halves cannot all be carried by one binary tree
    with pytest.raises(KraftViolation) as info:
        unit_sum_to_prefix_free((2, 2, 2), 5)
    assert info.value.index == 3

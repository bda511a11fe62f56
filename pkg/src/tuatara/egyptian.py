"""Unit fraction sums, dyadic grids, and online prefix-code allocation.

The pipeline here turns a sum of unit fractions into a prefix-free set of
words carrying the same weight: expand each 1/m into its dyadic terms, walk
the grid of terms along anti-diagonals so every term is reached in finitely
many steps, and hand the exponents to an online Kraft allocator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence


class ExpansionOverflow(Exception):
    """Raised when a greedy denominator outgrows the caller's bit budget."""

    def __init__(self, bits: int):
        self.bits = bits
        super().__init__(f"greedy denominator exceeded {bits} bits")


def egyptian_floor(
    q: Fraction, floor: int, bit_budget: int | None = None
) -> list[int]:
    """Egyptian fraction decomposition of q with all denominators >= floor.

    When q >= 1/floor, the output opens with the longest consecutive run
    floor, floor+1, ..., floor+k whose harmonic sum fits inside q; the
    remainder is handled by the greedy rule (always the largest unit
    fraction that fits). Denominators are strictly increasing, so they are
    distinct, and the sum is exactly q.

    The greedy denominators roughly double in bit length per step, so a
    remainder with an n-bit numerator needs on the order of 2^(n/3) bits
    for its final denominator; beyond roughly 64 numerator bits the result
    is too large to materialize. A bit_budget turns that regime into an
    ExpansionOverflow instead of an effectively unbounded computation.
    """
    if q <= 0:
        raise ValueError("q must be positive")
    if floor < 1:
        raise ValueError("floor must be >= 1")
    out: list[int] = []
    rem = q
    m = floor
    while rem >= Fraction(1, m):  # consecutive run
        out.append(m)
        rem -= Fraction(1, m)
        m += 1
    while rem > 0:  # greedy tail: 1/next <= rem < 1/(next-1)
        if bit_budget is not None and rem.denominator.bit_length() > bit_budget:
            raise ExpansionOverflow(bit_budget)
        nxt = -((-rem.denominator) // rem.numerator)
        if out:
            assert nxt > out[-1], "greedy denominator failed to increase"
        out.append(nxt)
        rem -= Fraction(1, nxt)
    return out


def dyadic_row(m: int) -> Iterator[Fraction]:
    """Nonzero dyadic terms of the binary expansion of 1/m, m >= 2, in order.

    Finite exactly when m is a power of two; otherwise the expansion is
    eventually periodic and the iterator never ends.
    """
    if m < 2:
        raise ValueError("rows need m >= 2")
    r = 1
    e = 0
    while r:
        r *= 2
        e += 1
        if r >= m:
            r -= m
            yield Fraction(1, 1 << e)


@dataclass(frozen=True)
class GridTerm:
    """One emitted grid entry: pass index d = row + col, 1-based row and col."""

    d: int
    row: int
    col: int
    term: Fraction


def grid_walk(ms: Sequence[int], budget: int) -> Iterator[GridTerm]:
    """Anti-diagonal walk over the rows for the given denominators.

    Pass d visits cells with row + col = d bottom-up (larger row first).
    Rows are the expansions of 1/m_i in the order given; columns index the
    nonzero terms of a row. Stops after `budget` terms, or earlier if every
    row is exhausted (all m_i powers of two).
    """
    if budget < 0:
        raise ValueError("budget must be >= 0")
    rows = [dyadic_row(m) for m in ms]
    memo: list[list[Fraction]] = [[] for _ in ms]
    done = [False] * len(ms)

    def cell(r: int, c: int) -> Fraction | None:
        while len(memo[r]) < c and not done[r]:
            nxt = next(rows[r], None)
            if nxt is None:
                done[r] = True
            else:
                memo[r].append(nxt)
        return memo[r][c - 1] if len(memo[r]) >= c else None

    emitted = 0
    d = 2
    while emitted < budget:
        hit = False
        for row in range(min(d - 1, len(ms)), 0, -1):
            col = d - row
            t = cell(row - 1, col)
            if t is not None:
                hit = True
                yield GridTerm(d, row, col, t)
                emitted += 1
                if emitted >= budget:
                    return
        # a miss at (r, d-r) means row r holds fewer than d-r terms, so once
        # every row is exhausted a fully missed diagonal rules out all later ones
        if not hit and all(done):
            return
        d += 1


def dyadic_diagonal(ms: Sequence[int], budget: int) -> list[Fraction]:
    """The first `budget` grid terms in anti-diagonal order."""
    return [g.term for g in grid_walk(ms, budget)]


class KraftViolation(Exception):
    """Raised when a requested codeword length would push the Kraft sum past 1."""

    def __init__(self, index: int, length: int):
        self.index = index  # 1-based position of the offending request
        self.length = length
        super().__init__(
            f"request {index} (length {length}) exceeds the remaining code space"
        )


class KraftAllocator:
    """Online assignment of prefix-free words for a stream of lengths.

    The available nodes always occupy pairwise distinct depths and jointly
    carry the unassigned code space, which is why a request of length n is
    satisfiable exactly when some available node sits at depth <= n. Each
    request takes the deepest such node (the tightest fit), extends it with
    zeros, and releases the siblings along the padding path as new available
    nodes at the depths just vacated.
    """

    def __init__(self) -> None:
        self._avail: dict[int, str] = {0: ""}
        self._count = 0

    @property
    def requests_served(self) -> int:
        return self._count

    def request(self, n: int) -> str:
        if n < 0:
            raise ValueError("lengths must be >= 0")
        self._count += 1
        fits = [d for d in self._avail if d <= n]
        if not fits:
            raise KraftViolation(self._count, n)
        d = max(fits)
        node = self._avail.pop(d)
        for i in range(n - d):
            self._avail[d + i + 1] = node + "0" * i + "1"
        return node + "0" * (n - d)


def kraft_chaitin(lengths: Sequence[int]) -> list[str]:
    """Prefix-free words with the given lengths, in order, or KraftViolation."""
    alloc = KraftAllocator()
    return [alloc.request(n) for n in lengths]


@dataclass(frozen=True)
class CodeAssignment:
    """Prefix-free carrier for a partial sum of unit fractions."""

    terms: tuple[Fraction, ...]  # dyadic grid terms in emission order
    words: tuple[str, ...]  # parallel words, 2^-len(word) = term
    total: Fraction  # sum of the emitted terms

    def __post_init__(self) -> None:
        assert len(self.terms) == len(self.words)


def unit_sum_to_prefix_free(ms: Sequence[int], budget: int) -> CodeAssignment:
    """Feed the grid walk for `ms` through the Kraft allocator.

    Raises KraftViolation when the unit fractions sum past 1 and the walk
    reaches the point where no word fits.
    """
    alloc = KraftAllocator()
    terms: list[Fraction] = []
    words: list[str] = []
    for g in grid_walk(ms, budget):
        n = g.term.denominator.bit_length() - 1
        words.append(alloc.request(n))
        terms.append(g.term)
    return CodeAssignment(tuple(terms), tuple(words), sum(terms, Fraction(0)))

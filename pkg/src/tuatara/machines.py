"""Machine domains as streams, and certified sums over them.

A machine is described by its domain, a set of bit strings enumerated in
length-lexicographic order. Two weight sums matter: the halting weight
(omega kind) assigns 2^(-s |w|) to a domain string w, and the index weight
(zeta kind) assigns n^(-s) where n is the integer corresponding to w. At
s = 1 these are the halting probability and the natural halting sum; the
classification vocabulary below is keyed to the unit threshold of the
index sum.

Enclosures returned here are certified: the true sum lies inside, whatever
the budget. Lower bounds come from partial sums rounded down; upper bounds
combine partial sums over fully enumerated lengths with per-kind tail
majorants, or an exact closed form for the total where one exists.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from . import iota as iota_mod
from .binstr import bin_inv, bin_of, is_prefix_free, rational_of_prefix, validate_bits
from .numerics import Enclosure, pow2_bounds, pow_bounds, log2_bounds

DEFAULT_BUDGET = 10 ** 5

# accumulator grid and the rounding allowance folded into tail bounds;
# budgets and finite domains are assumed to stay below _BUDGET_CAP
_ACC_BITS = 128
_BUDGET_CAP = 1 << 40
_TERM_PREC = _ACC_BITS + 32


class MachineSpecError(ValueError):
    """A machine description that fails validation."""


class BudgetExhausted(Exception):
    """A search consumed its stream budget without reaching a certificate."""

    def __init__(self, consumed: int, progress: str = ""):
        self.consumed = consumed
        super().__init__(
            f"budget exhausted after {consumed} stream element(s)"
            + (f": {progress}" if progress else "")
        )


# ---------------------------------------------------------------------------
# machine descriptions


@dataclass(frozen=True)
class FiniteTable:
    """Explicit domain, optionally with an output string per domain string."""

    domain: tuple[str, ...]
    outputs: tuple[str | None, ...] | None = None

    def output_for(self, w: str) -> str | None:
        if self.outputs is None:
            return None
        try:
            return self.outputs[self.domain.index(w)]
        except ValueError:
            return None


@dataclass(frozen=True)
class Builtin:
    """One of the named generators.

    all_strings: every bit string. lukasiewicz: the programs of the
    one-combinator calculus, a complete prefix code. iota: the programs
    that halt within the step and size budgets. geometric: the strings
    0^i 1 for i >= 0 together with the listed extras.
    """

    generator: str
    extras: tuple[str, ...] = ()
    step_budget: int = iota_mod.DEFAULT_STEP_BUDGET
    size_budget: int = iota_mod.DEFAULT_SIZE_BUDGET


@dataclass(frozen=True)
class Construction:
    """A machine built from operand machines.

    kinds: product (concatenations of operand strings, parts in
    nondecreasing index order, the empty one included),
    double (w maps to ww), tuatara_of (each p spawns p plus the strings
    p 0^i for the set bit positions i of p), universal_tuatara (member k
    behind the prefix 0^k 1), universal_convergent (member behind
    0^J 1 with J = 2^i (2M+1) - 1 from the declared bound), prime_product
    (domain strings of the numbers that factor over the primes indexed by
    the operand domain).
    """

    kind: str
    operands: tuple["MachineSpec", ...]
    bounds: tuple[Fraction, ...] = ()


MachineSpec = FiniteTable | Builtin | Construction

_BUILTINS = {"all_strings", "lukasiewicz", "iota", "geometric"}
_CONSTRUCTIONS = {
    "product",
    "double",
    "tuatara_of",
    "universal_tuatara",
    "universal_convergent",
    "prime_product",
}


def validate_spec(spec: MachineSpec) -> None:
    """Raise MachineSpecError unless the description is well formed."""
    if isinstance(spec, FiniteTable):
        seen = set()
        for w in spec.domain:
            try:
                validate_bits(w)
            except ValueError as exc:
                raise MachineSpecError(str(exc)) from None
            if w in seen:
                raise MachineSpecError(f"duplicate domain string {w!r}")
            seen.add(w)
        if spec.outputs is not None:
            if len(spec.outputs) != len(spec.domain):
                raise MachineSpecError("outputs must parallel the domain")
            for out in spec.outputs:
                if out is not None:
                    validate_bits(out)
        return
    if isinstance(spec, Builtin):
        if spec.generator not in _BUILTINS:
            raise MachineSpecError(f"unknown generator {spec.generator!r}")
        if spec.generator != "geometric" and spec.extras:
            raise MachineSpecError("extras are only meaningful for geometric")
        seen = set()
        for w in spec.extras:
            validate_bits(w)
            if w in seen:
                raise MachineSpecError(f"duplicate extra string {w!r}")
            seen.add(w)
            if set(w[:-1]) <= {"0"} and w.endswith("1"):
                raise MachineSpecError(
                    f"extra {w!r} already belongs to the geometric base domain"
                )
        if spec.step_budget < 1 or spec.size_budget < 1:
            raise MachineSpecError("budgets must be positive")
        return
    if isinstance(spec, Construction):
        if spec.kind not in _CONSTRUCTIONS:
            raise MachineSpecError(f"unknown construction {spec.kind!r}")
        single = {"product", "double", "tuatara_of", "prime_product"}
        if spec.kind in single and len(spec.operands) != 1:
            raise MachineSpecError(f"{spec.kind} takes exactly one operand")
        if spec.kind.startswith("universal") and not spec.operands:
            raise MachineSpecError(f"{spec.kind} needs at least one member")
        for op in spec.operands:
            validate_spec(op)
        if spec.kind in {"product", "prime_product"} and not isinstance(
            spec.operands[0], FiniteTable
        ):
            raise MachineSpecError(f"{spec.kind} requires a finite operand")
        if spec.kind == "tuatara_of" and isinstance(spec.operands[0], FiniteTable):
            # overlapping spawn sets would break the per-string unit sums
            if not is_prefix_free(spec.operands[0].domain):
                raise MachineSpecError("tuatara_of needs a prefix-free operand")
        if spec.kind.startswith("universal"):
            for op in spec.operands:
                if not isinstance(op, FiniteTable):
                    raise MachineSpecError(f"{spec.kind} members must be finite")
        if spec.kind == "universal_convergent":
            if len(spec.bounds) != len(spec.operands):
                raise MachineSpecError("one declared bound per member is required")
            for b in spec.bounds:
                if b <= 0:
                    raise MachineSpecError("declared bounds must be positive")
        elif spec.bounds:
            raise MachineSpecError("bounds only apply to universal_convergent")
        return
    raise MachineSpecError(f"not a machine description: {spec!r}")


# ---------------------------------------------------------------------------
# streams


def _lenlex_key(w: str) -> tuple[int, str]:
    return (len(w), w)


class DomainStream:
    """Restartable length-lex enumeration with certified tail information."""

    exhaustible = False

    def __iter__(self) -> Iterator[str]:
        raise NotImplementedError

    def indices(self) -> Iterator[int]:
        return (bin_inv(w) for w in self)

    def count_up_to_length(self, ell: int) -> int | None:
        """Exact number of domain strings of length <= ell, when countable."""
        return None

    def tail_bound(self, ell: int, s: Fraction, kind: str) -> Fraction | None:
        """Upper bound on the weight of domain strings of length > ell."""
        return None

    def total_upper(self, s: Fraction, kind: str) -> Fraction | None:
        """Upper bound on the full weight sum, when a closed form exists."""
        return None


def _universal_tail(ell: int, s: Fraction, kind: str) -> Fraction | None:
    """Tail majorant valid for every domain: all strings longer than ell."""
    if s <= 1:
        return None
    if kind == "omega":
        # sum over k >= ell+1 of 2^k 2^(-s k) = r^(ell+1)/(1-r), r = 2^(1-s)
        lo_k = max(ell + 1, 0)
        if s.denominator == 1:
            r = Fraction(1, 2 ** (s.numerator - 1))
            return r ** lo_k / (1 - r)
        r = pow2_bounds(1 - s, _TERM_PREC).hi
        first = pow2_bounds((1 - s) * lo_k, _TERM_PREC).hi
        return None if r >= 1 else first / (1 - r)
    # zeta: sum over n > N of n^(-s) <= N^(1-s)/(s-1) with N = 2^(ell+1) - 1
    n_min = (1 << (ell + 1)) - 1 if ell >= 0 else 1
    if n_min < 1:
        n_min = 1
    if s.denominator == 1:
        return Fraction(1, n_min ** (s.numerator - 1)) / (s - 1)
    return pow_bounds(Fraction(n_min), 1 - s, _TERM_PREC).hi / (s - 1)


class _FiniteStream(DomainStream):
    exhaustible = True

    def __init__(self, table: FiniteTable):
        self.sorted_domain = tuple(sorted(table.domain, key=_lenlex_key))

    def __iter__(self) -> Iterator[str]:
        return iter(self.sorted_domain)

    def count_up_to_length(self, ell: int) -> int:
        return sum(1 for w in self.sorted_domain if len(w) <= ell)

    def tail_bound(self, ell: int, s: Fraction, kind: str) -> Fraction:
        acc = Fraction(0)
        for w in self.sorted_domain:
            if len(w) > ell:
                acc += _term_weight_hi(w, s, kind)
        return acc

    def total_upper(self, s: Fraction, kind: str) -> Fraction:
        return self.tail_bound(-1, s, kind)


def _term_weight_hi(w: str, s: Fraction, kind: str) -> Fraction:
    if kind == "omega":
        if s.denominator == 1:
            return Fraction(1, 1 << (s.numerator * len(w)))
        return pow2_bounds(-s * len(w), _TERM_PREC).hi
    n = bin_inv(w)
    if s.denominator == 1:
        return Fraction(1, n ** s.numerator)
    return pow_bounds(Fraction(n), -s, _TERM_PREC).hi


class _AllStringsStream(DomainStream):
    def __iter__(self) -> Iterator[str]:
        n = 1
        while True:
            yield bin_of(n)
            n += 1

    def indices(self) -> Iterator[int]:
        return itertools.count(1)

    def count_up_to_length(self, ell: int) -> int:
        return (1 << (ell + 1)) - 1 if ell >= 0 else 0

    def tail_bound(self, ell: int, s: Fraction, kind: str) -> Fraction | None:
        return _universal_tail(ell, s, kind)

    def total_upper(self, s: Fraction, kind: str) -> Fraction | None:
        if kind != "omega" or s <= 1:
            return None
        # sum over k >= 0 of 2^k 2^(-sk) = 1/(1 - 2^(1-s))
        if s.denominator == 1:
            return 1 / (1 - Fraction(1, 2 ** (s.numerator - 1)))
        r = pow2_bounds(1 - s, _TERM_PREC).hi
        return None if r >= 1 else 1 / (1 - r)


class _LukasiewiczStream(DomainStream):
    def __iter__(self) -> Iterator[str]:
        length = 1
        while True:
            yield from iota_mod.words_of_length(length)
            length += 2

    def count_up_to_length(self, ell: int) -> int:
        return sum(iota_mod.count_programs(l) for l in range(1, ell + 1, 2))

    def tail_bound(self, ell: int, s: Fraction, kind: str) -> Fraction | None:
        # programs of length > ell have size m > n0; weight at most the
        # omega weight, and C_{m-1} <= 4^(m-1) bounds the counts
        n0 = max((ell + 1) // 2, 0)
        if s == 1:
            from math import comb

            return Fraction(comb(2 * n0, n0), 4 ** n0)
        if s < 1:
            return None
        if s.denominator == 1:
            q = Fraction(1, 4 ** (s.numerator - 1))
            scale = Fraction(2 ** s.numerator, 4)
        else:
            q = pow2_bounds(2 * (1 - s), _TERM_PREC).hi
            if q >= 1:
                return None
            scale = pow2_bounds(s - 2, _TERM_PREC).hi
        return scale * q ** (n0 + 1) / (1 - q)

    def total_upper(self, s: Fraction, kind: str) -> Fraction | None:
        return Fraction(1) if s == 1 else None  # complete prefix code


class _IotaHaltingStream(DomainStream):
    def __init__(self, spec: Builtin):
        self.step_budget = spec.step_budget
        self.size_budget = spec.size_budget
        self._inner = _LukasiewiczStream()

    def __iter__(self) -> Iterator[str]:
        for w in self._inner:
            r = iota_mod.run_program(w, self.step_budget, self.size_budget)
            if r.halted:
                yield w

    def tail_bound(self, ell: int, s: Fraction, kind: str) -> Fraction | None:
        return self._inner.tail_bound(ell, s, kind)  # halting domain is a subset

    def total_upper(self, s: Fraction, kind: str) -> Fraction | None:
        return self._inner.total_upper(s, kind)


class _GeometricStream(DomainStream):
    def __init__(self, spec: Builtin):
        self.extras = tuple(sorted(spec.extras, key=_lenlex_key))

    def __iter__(self) -> Iterator[str]:
        extras = list(self.extras)
        pos = 0
        for i in itertools.count(0):
            base = "0" * i + "1"
            while pos < len(extras) and _lenlex_key(extras[pos]) < _lenlex_key(base):
                yield extras[pos]
                pos += 1
            yield base

    def count_up_to_length(self, ell: int) -> int:
        base = max(ell, 0)  # lengths 1..ell
        return base + sum(1 for w in self.extras if len(w) <= ell)

    def tail_bound(self, ell: int, s: Fraction, kind: str) -> Fraction | None:
        if s <= 0:
            return None
        i0 = max(ell, 0)  # base strings 0^i 1 with i >= i0 have length > ell
        if s.denominator == 1:
            r = Fraction(1, 2 ** s.numerator)
            acc = r ** i0 * r / (1 - r)
        else:
            r = pow2_bounds(-s, _TERM_PREC).hi
            if r >= 1:
                return None
            acc = pow2_bounds(-s * (i0 + 1), _TERM_PREC).hi / (1 - r)
        for w in self.extras:
            if len(w) > ell:
                acc += _term_weight_hi(w, s, kind)
        return acc

    def total_upper(self, s: Fraction, kind: str) -> Fraction | None:
        return self.tail_bound(-1, s, kind)


class _ProductStream(DomainStream):
    """Concatenations p1..pn (n >= 0) with nondecreasing part indices.

    One string per multiset of parts, so the weight sum telescopes into the
    product of per-part geometric series; deduplication of equal renderings
    can only shrink the true sum below that closed form.
    """

    def __init__(self, spec: Construction):
        table = spec.operands[0]
        assert isinstance(table, FiniteTable)
        self.parts = tuple(sorted(set(table.domain), key=_lenlex_key))
        self.exhaustible = not any(self.parts)
        usable = [p for p in self.parts if p]
        self._usable = usable
        # _tiers[i][L]: strings of length L drawing on parts i and later;
        # the last tier holds the empty multiset alone
        self._tiers: list[list[tuple[str, ...]]] = [
            [("",)] for _ in range(len(usable) + 1)
        ]

    def _level(self, length: int) -> tuple[str, ...]:
        while len(self._tiers[0]) <= length:
            target = len(self._tiers[0])
            self._tiers[-1].append(())
            for i in range(len(self._usable) - 1, -1, -1):
                p = self._usable[i]
                acc = set(self._tiers[i + 1][target])
                if len(p) <= target:
                    acc.update(p + t for t in self._tiers[i][target - len(p)])
                self._tiers[i].append(tuple(sorted(acc)))
        return self._tiers[0][length]

    def __iter__(self) -> Iterator[str]:
        max_len = max((len(p) for p in self._usable), default=0)
        empty_run = 0
        for length in itertools.count(0):
            level = self._level(length)
            yield from level
            if length == 0:
                continue
            empty_run = empty_run + 1 if not level else 0
            # part lengths generate the set of populated lengths, so a gap
            # of max_len consecutive empty levels starves everything after
            if max_len == 0 or empty_run >= max_len:
                return

    def count_up_to_length(self, ell: int) -> int:
        return sum(len(self._level(l)) for l in range(0, max(ell, -1) + 1))

    def total_upper(self, s: Fraction, kind: str) -> Fraction | None:
        # index weights sit below halting weights, so the omega-kind closed
        # form serves both kinds
        acc = Fraction(1)
        for p in self._usable:
            x = _term_weight_hi(p, s, "omega")
            if x >= 1:
                return None
            acc *= 1 / (1 - x)
        return acc

    def tail_bound(self, ell: int, s: Fraction, kind: str) -> Fraction | None:
        total = self.total_upper(s, kind)
        universal = _universal_tail(ell, s, kind)
        if total is None:
            return universal
        head = Fraction(0)
        for l in range(0, ell + 1):
            for w in self._level(l):
                head += _term_weight_lo(w, s, "omega")
        specific = max(total - head, Fraction(0))
        if universal is None or specific <= universal:
            return specific
        return universal


def _term_weight_lo(w: str, s: Fraction, kind: str) -> Fraction:
    if kind == "omega":
        if s.denominator == 1:
            return Fraction(1, 2 ** (s.numerator * len(w)))
        return pow2_bounds(-s * len(w), _TERM_PREC).lo
    n = bin_inv(w)
    if s.denominator == 1:
        return Fraction(1, n ** s.numerator)
    return pow_bounds(Fraction(n), -s, _TERM_PREC).lo


class _DoubleStream(DomainStream):
    def __init__(self, spec: Construction):
        self.inner = domain_stream(spec.operands[0])
        self.exhaustible = self.inner.exhaustible

    def __iter__(self) -> Iterator[str]:
        return (w + w for w in self.inner)

    def count_up_to_length(self, ell: int) -> int | None:
        return self.inner.count_up_to_length(ell // 2)

    def tail_bound(self, ell: int, s: Fraction, kind: str) -> Fraction | None:
        # ww longer than ell means w longer than floor(ell/2); the omega
        # weight of ww at s is the omega weight of w at 2s, and the zeta
        # weight is smaller still
        inner_tail = self.inner.tail_bound(ell // 2, 2 * s, "omega")
        universal = _universal_tail(ell, s, kind)
        candidates = [t for t in (inner_tail, universal) if t is not None]
        return min(candidates) if candidates else None

    def total_upper(self, s: Fraction, kind: str) -> Fraction | None:
        return self.inner.total_upper(2 * s, "omega")


class _TuataraOfStream(DomainStream):
    def __init__(self, spec: Construction):
        self.inner = domain_stream(spec.operands[0])
        self.exhaustible = self.inner.exhaustible

    def __iter__(self) -> Iterator[str]:
        if self.exhaustible:
            members: list[str] = []
            for p in self.inner:
                members.extend(tuatara_unit_identity(p).members)
            yield from sorted(set(members), key=_lenlex_key)
            return
        # lazy: emit length by length; a member of X(p) at length L needs
        # |p| <= L, so the operand prefix up to length L suffices
        stored: list[str] = []
        it = iter(self.inner)
        pending = next(it, None)
        for length in itertools.count(0):
            while pending is not None and len(pending) <= length:
                stored.append(pending)
                pending = next(it, None)
            batch = set()
            for p in stored:
                if len(p) == length:
                    batch.add(p)
                else:
                    i = length - len(p)  # p 0^i needs bit i of p set
                    if 1 <= i <= len(p) and p[i - 1] == "1":
                        batch.add(p + "0" * i)
            yield from sorted(batch)

    def count_up_to_length(self, ell: int) -> int | None:
        if not self.exhaustible:
            return None
        count = 0
        for p in self.inner:
            for x in tuatara_unit_identity(p).members:
                if len(x) <= ell:
                    count += 1
        return count

    def total_upper(self, s: Fraction, kind: str) -> Fraction | None:
        if s != 1:
            return None
        if kind == "zeta":
            # each X(p) carries index weight exactly 2^-|p|
            return self.inner.total_upper(Fraction(1), "omega")
        # omega: X(p) carries 2^-|p| (1 + sum of 2^-i over set bits),
        # which is below 2^(1-|p|)
        if self.exhaustible:
            acc = Fraction(0)
            for p in self.inner:
                acc += Fraction(bin_inv(p), 4 ** len(p))
            return acc
        inner_total = self.inner.total_upper(Fraction(1), "omega")
        return None if inner_total is None else 2 * inner_total


class _UniversalStream(DomainStream):
    """Members behind the self-delimiting prefixes 0^j 1."""

    exhaustible = True  # members are validated to be finite tables

    def __init__(self, spec: Construction):
        self.members = [domain_stream(op) for op in spec.operands]
        if spec.kind == "universal_tuatara":
            self.exponents = list(range(1, len(self.members) + 1))
        else:
            self.exponents = _convergent_exponents(spec)

    def _all(self) -> list[str]:
        out = []
        for j, member in zip(self.exponents, self.members):
            prefix = "0" * j + "1"
            out.extend(prefix + w for w in member)
        return sorted(out, key=_lenlex_key)

    def __iter__(self) -> Iterator[str]:
        return iter(self._all())

    def count_up_to_length(self, ell: int) -> int:
        return sum(1 for w in self._all() if len(w) <= ell)


def _convergent_exponents(spec: Construction) -> list[int]:
    """J = 2^i (2M + 1) - 1 per member, from the declared index-sum bounds.

    M is the bound rounded up to an integer of at least 1; i numbers the
    members sharing the same M, starting from 1.
    """
    ranks: dict[int, int] = {}
    out = []
    for bound in spec.bounds:
        m_class = max(1, -((-bound.numerator) // bound.denominator))
        ranks[m_class] = ranks.get(m_class, 0) + 1
        i = ranks[m_class]
        out.append(2 ** i * (2 * m_class + 1) - 1)
    return out


def _primes_first(k: int) -> list[int]:
    """The first k primes."""
    if k <= 0:
        return []
    out = [2]
    cand = 3
    while len(out) < k:
        if all(cand % p for p in out if p * p <= cand):
            out.append(cand)
        cand += 2
    return out


class _PrimeProductStream(DomainStream):
    def __init__(self, spec: Construction):
        table = spec.operands[0]
        assert isinstance(table, FiniteTable)
        idx = sorted(bin_inv(w) for w in table.domain)
        primes = _primes_first(idx[-1]) if idx else []
        self.primes = [primes[i - 1] for i in idx]
        self.exhaustible = not self.primes

    def indices(self) -> Iterator[int]:
        # ascending smooth numbers over self.primes, starting at 1
        heap = [1]
        seen = {1}
        while heap:
            n = heapq.heappop(heap)
            yield n
            for p in self.primes:
                m = n * p
                if m not in seen:
                    seen.add(m)
                    heapq.heappush(heap, m)

    def __iter__(self) -> Iterator[str]:
        return (bin_of(n) for n in self.indices())

    def tail_bound(self, ell: int, s: Fraction, kind: str) -> Fraction | None:
        universal = _universal_tail(ell, s, kind)
        total = self.total_upper(s, kind)
        if total is None:
            return universal
        # subtract the certainly-present head: 1 alone (conservative)
        specific = total - (Fraction(1) if ell >= 0 else Fraction(0))
        candidates = [t for t in (universal, specific) if t is not None]
        return min(candidates) if candidates else None

    def total_upper(self, s: Fraction, kind: str) -> Fraction | None:
        if s.denominator != 1:
            return None
        k = s.numerator
        euler = Fraction(1)
        for p in self.primes:
            if p ** k <= 1:
                return None
            euler *= Fraction(p ** k, p ** k - 1)
        if kind == "zeta":
            return euler
        # 2^(-s floor(log2 n)) <= (2/n)^s
        return Fraction(2 ** k) * euler

    def zeta_total_exact(self, s: int) -> Fraction:
        """Euler product over the selected primes, exact for integer s >= 1."""
        if s < 1:
            raise ValueError("s must be >= 1")
        acc = Fraction(1)
        for p in self.primes:
            acc *= Fraction(p ** s, p ** s - 1)
        return acc


def domain_stream(spec: MachineSpec) -> DomainStream:
    """Build the enumeration stream for a validated machine description."""
    validate_spec(spec)
    if isinstance(spec, FiniteTable):
        return _FiniteStream(spec)
    if isinstance(spec, Builtin):
        if spec.generator == "all_strings":
            return _AllStringsStream()
        if spec.generator == "lukasiewicz":
            return _LukasiewiczStream()
        if spec.generator == "iota":
            return _IotaHaltingStream(spec)
        return _GeometricStream(spec)
    maker = {
        "product": _ProductStream,
        "double": _DoubleStream,
        "tuatara_of": _TuataraOfStream,
        "universal_tuatara": _UniversalStream,
        "universal_convergent": _UniversalStream,
        "prime_product": _PrimeProductStream,
    }[spec.kind]
    return maker(spec)


# ---------------------------------------------------------------------------
# the weighted sum engine


@dataclass(frozen=True)
class SumReport:
    """Certified enclosure of a weight sum, with how it was reached."""

    enclosure: Enclosure
    consumed: int
    exhausted: bool


def _weight_interval(n_or_len: int, s: Fraction, kind: str) -> tuple[Fraction, Fraction]:
    """Exact or certified interval for one term weight."""
    if kind == "omega":
        if s.denominator == 1:
            v = Fraction(1, 1 << (s.numerator * n_or_len))
            return v, v
        b = pow2_bounds(-s * n_or_len, _TERM_PREC)
    else:
        if s.denominator == 1:
            v = Fraction(1, n_or_len ** s.numerator)
            return v, v
        b = pow_bounds(Fraction(n_or_len), -s, _TERM_PREC)
    return b.lo, b.hi


class _IntervalAcc:
    """Running interval sum: exact until denominators grow past a guard,
    then outward rounded on the 2^-_ACC_BITS grid.

    Exhaustible streams therefore come out exact (lo == hi for integer s),
    while long streams degrade gracefully to dyadic endpoints whose
    rounding error is covered by the pad folded into tail bounds.
    """

    _GUARD_BITS = 1 << 12

    def __init__(self) -> None:
        self.exact = True
        self.lo_f = Fraction(0)
        self.hi_f = Fraction(0)
        self.lo_i = 0
        self.hi_i = 0

    def add(self, t_lo: Fraction, t_hi: Fraction) -> None:
        if self.exact:
            self.lo_f += t_lo
            self.hi_f += t_hi
            if self.lo_f.denominator.bit_length() > self._GUARD_BITS:
                self.lo_i = (
                    self.lo_f.numerator << _ACC_BITS
                ) // self.lo_f.denominator
                self.hi_i = -(
                    (-self.hi_f.numerator << _ACC_BITS) // self.hi_f.denominator
                )
                self.exact = False
            return
        self.lo_i += (t_lo.numerator << _ACC_BITS) // t_lo.denominator
        self.hi_i += -((-t_hi.numerator << _ACC_BITS) // t_hi.denominator)

    @property
    def lo(self) -> Fraction:
        return self.lo_f if self.exact else Fraction(self.lo_i, 1 << _ACC_BITS)

    @property
    def hi(self) -> Fraction:
        return self.hi_f if self.exact else Fraction(self.hi_i, 1 << _ACC_BITS)


def weighted_domain_sum(
    spec: MachineSpec, s: Fraction, budget: int, kind: str
) -> SumReport:
    """Certified enclosure of the omega or zeta kind weight sum at exponent s."""
    if kind not in ("omega", "zeta"):
        raise ValueError("kind must be 'omega' or 'zeta'")
    s = Fraction(s)
    if kind == "omega" and s <= 0:
        raise ValueError("omega sums need s > 0")
    if kind == "zeta" and s < 1:
        raise ValueError("zeta sums need s >= 1")
    if budget < 0 or budget >= _BUDGET_CAP:
        raise ValueError("budget out of range")
    stream = domain_stream(spec)

    acc = _IntervalAcc()
    hi_complete = Fraction(0)  # upper sum over fully consumed lengths
    complete_len = -1
    current_len = -1
    consumed = 0
    exhausted = False
    per_len_cache: dict[int, tuple[Fraction, Fraction]] = {}

    # omega weights depend on the length alone; zeta weights on the index
    src: Iterator[int] = (
        (len(w) for w in stream) if kind == "omega" else stream.indices()
    )

    while consumed < budget:
        key = next(src, None)
        if key is None:
            exhausted = True
            break
        length = key if kind == "omega" else key.bit_length() - 1
        if length > current_len:
            hi_complete = acc.hi
            complete_len = length - 1
            current_len = length
        # sparse streams reach term weights below the accumulator grid long
        # before the budget; the tail bound over the completed lengths covers
        # everything from here on, so stop rather than build huge exact terms
        if not stream.exhaustible and s * length > _ACC_BITS + 8:
            break
        if kind == "omega":
            cached = per_len_cache.get(key)
            if cached is None:
                cached = _weight_interval(key, s, kind)
                per_len_cache[key] = cached
            t_lo, t_hi = cached
        else:
            t_lo, t_hi = _weight_interval(key, s, kind)
        acc.add(t_lo, t_hi)
        consumed += 1
    else:
        # budget reached; probe one more element only when the stream is
        # known finite, to detect exhaustion at the boundary
        if stream.exhaustible and next(src, None) is None:
            exhausted = True

    lo = acc.lo
    if exhausted:
        return SumReport(Enclosure(lo, acc.hi), consumed, True)

    candidates: list[Fraction] = []
    tail = stream.tail_bound(complete_len, s, kind)
    if tail is None:
        tail = _universal_tail(complete_len, s, kind)
    if tail is not None:
        pad = Fraction(_BUDGET_CAP - budget, 1 << (_ACC_BITS - 1))
        candidates.append(hi_complete + tail + pad)
    total = stream.total_upper(s, kind)
    if total is not None:
        candidates.append(total)
    hi = min(candidates) if candidates else None
    if hi is not None and hi < lo:
        hi = lo  # tails are sound, so this only trims rounding slack
    return SumReport(Enclosure(lo, hi), consumed, False)


def omega_enclosure(spec: MachineSpec, budget: int = DEFAULT_BUDGET) -> Enclosure:
    """Certified enclosure of the halting weight sum at s = 1."""
    return weighted_domain_sum(spec, Fraction(1), budget, "omega").enclosure


def zeta_enclosure(spec: MachineSpec, budget: int = DEFAULT_BUDGET) -> Enclosure:
    """Certified enclosure of the index weight sum at s = 1."""
    return weighted_domain_sum(spec, Fraction(1), budget, "zeta").enclosure


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class Verdict:
    """Outcome of one threshold question, with the evidence enclosure."""

    kind: str  # divergent | convergent | tuatara | unknown
    certified: bool
    enclosure: Enclosure
    witness: str


@dataclass(frozen=True)
class Classification:
    zeta: Verdict
    omega: Verdict


def _is_all_strings(spec: MachineSpec) -> bool:
    return isinstance(spec, Builtin) and spec.generator == "all_strings"


def _threshold_verdict(enc: Enclosure, series: str) -> Verdict:
    if enc.hi is not None:
        if enc.hi <= 1:
            return Verdict(
                "tuatara",
                True,
                enc,
                f"{series} sum certified <= 1 (upper bound {enc.hi})",
            )
        if enc.lo > 1:
            return Verdict(
                "convergent",
                True,
                enc,
                f"{series} sum certified finite and > 1 (lower bound {enc.lo})",
            )
        return Verdict(
            "convergent",
            True,
            enc,
            f"{series} sum certified finite; the unit threshold lies inside "
            f"[{enc.lo}, {enc.hi}] and stays unresolved at this budget",
        )
    if enc.lo > 1:
        return Verdict(
            "unknown",
            False,
            enc,
            f"{series} sum exceeds 1 but finiteness is not certified",
        )
    return Verdict(
        "unknown",
        False,
        enc,
        f"{series} sum not separated from the unit threshold at this budget",
    )


def classify(spec: MachineSpec, budget: int = DEFAULT_BUDGET) -> Classification:
    """Certified verdicts for the index sum and the halting weight sum.

    Divergence is only ever certified analytically: the full binary tree is
    the one machine here whose index sum is a tail of the harmonic series.
    """
    if _is_all_strings(spec):
        zeta_enc = weighted_domain_sum(spec, Fraction(1), budget, "zeta").enclosure
        omega_enc = weighted_domain_sum(spec, Fraction(1), budget, "omega").enclosure
        return Classification(
            zeta=Verdict(
                "divergent",
                True,
                Enclosure(zeta_enc.lo, None),
                "index sum over every string is the harmonic series",
            ),
            omega=Verdict(
                "divergent",
                True,
                Enclosure(omega_enc.lo, None),
                "each length k contributes a full unit 2^k 2^-k",
            ),
        )
    zeta_v = _threshold_verdict(zeta_enclosure(spec, budget), "index")
    omega_v = _threshold_verdict(omega_enclosure(spec, budget), "halting weight")
    # finiteness agreement: a certified-finite index sum comes with a
    # certified-finite halting weight sum and conversely
    if zeta_v.certified and omega_v.certified:
        assert (zeta_v.enclosure.hi is not None) == (
            omega_v.enclosure.hi is not None
        )
    return Classification(zeta=zeta_v, omega=omega_v)


# ---------------------------------------------------------------------------
# identities and searches


@dataclass(frozen=True)
class ChainReport:
    """The exact chain 1 >= omega >= zeta >= omega/2 >= 0 for a finite table."""

    omega: Fraction
    zeta: Fraction
    holds: bool
    strict: bool  # every comparison strict


def sanity_chain(spec: FiniteTable) -> ChainReport:
    if not isinstance(spec, FiniteTable):
        raise MachineSpecError("sanity_chain runs on finite tables")
    validate_spec(spec)
    omega = Fraction(0)
    zeta = Fraction(0)
    for w in spec.domain:
        omega += Fraction(1, 1 << len(w))
        zeta += Fraction(1, bin_inv(w))
    holds = 1 >= omega >= zeta >= omega / 2 >= 0
    strict = 1 > omega > zeta > omega / 2 > 0
    return ChainReport(omega, zeta, holds, strict)


@dataclass(frozen=True)
class TuataraUnit:
    """The spawn set X(p) and its exact index weight 2^-|p|."""

    members: tuple[str, ...]
    total: Fraction
    size: int


def tuatara_unit_identity(p: str) -> TuataraUnit:
    """Members {p} u {p 0^i : bit i of p is 1}, their count, and the unit sum."""
    validate_bits(p)
    if not p:
        raise ValueError("p must be nonempty")
    members = [p]
    for i, c in enumerate(p, start=1):
        if c == "1":
            members.append(p + "0" * i)
    total = sum((Fraction(1, bin_inv(x)) for x in members), Fraction(0))
    assert total == Fraction(1, 1 << len(p))
    return TuataraUnit(tuple(members), total, len(members))


def universal_prefix_identity(i: int, n: int) -> tuple[str, int]:
    """The string 0^i 1 bin(n) and its index 2^(i+1+floor(log2 n)) + n."""
    if i < 1 or n < 1:
        raise ValueError("requires i >= 1 and n >= 1")
    w = "0" * i + "1" + bin_of(n)
    value = (1 << (i + 1 + (n.bit_length() - 1))) + n
    assert bin_inv(w) == value
    return w, value


def j_pairing(i: int, m: int) -> int:
    """The exponent 2^i (2m + 1) - 1; injective over pairs i, m >= 1."""
    if i < 1 or m < 1:
        raise ValueError("requires i >= 1 and m >= 1")
    return 2 ** i * (2 * m + 1) - 1


def density_statistic(spec: MachineSpec, n: int) -> Fraction:
    """log2 of the count of domain strings of length <= n, divided by n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    count = domain_stream(spec).count_up_to_length(n)
    if count is None:
        raise MachineSpecError("machine does not support counting by length")
    if count < 1:
        raise ValueError("no domain strings up to that length")
    if count == 1:
        return Fraction(0)
    enc = log2_bounds(Fraction(count), 64)
    return enc.midpoint() / n


def fresh_index(spec: MachineSpec, y: str, budget: int = DEFAULT_BUDGET) -> str:
    """Smallest index outside the enumerated domain once the partial index
    sum strictly exceeds the rational 0.y.

    The enumeration is ascending in the index order, so the partial sums
    and the seen set are exact. Raises BudgetExhausted when the threshold
    is not crossed within the budget.
    """
    threshold = rational_of_prefix(y)
    acc = Fraction(0)
    seen: set[int] = set()
    smallest = 1
    consumed = 0
    for n in domain_stream(spec).indices():
        if consumed >= budget:
            raise BudgetExhausted(consumed, f"partial sum {acc}")
        consumed += 1
        acc += Fraction(1, n)
        seen.add(n)
        while smallest in seen:
            smallest += 1
        if acc > threshold:
            return bin_of(smallest)
    # stream ended; the sum is final
    if acc > threshold:
        return bin_of(smallest)
    raise BudgetExhausted(consumed, f"stream exhausted at partial sum {acc}")

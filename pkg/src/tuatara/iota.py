"""The one-combinator calculus over the binary alphabet.

Programs follow the grammar L = 0 | 1 L L, so "0" is the single combinator
iota and "1" marks an application. Semantics are given by translation into
S and K: iota x rewrites to x S K, and the usual rules S x y z -> x z (y z),
K x y -> x apply. Reduction is normal order (leftmost outermost) under
explicit step and size budgets; running out of budget is an ordinary result,
not an exception.

Valid programs of length 2n-1 are counted by the Catalan number C_{n-1},
and the prefix code they form carries total weight
sum_n C_{n-1} 2^-(2n-1) = 1, with the partial sum through n falling short
of 1 by exactly binom(2n, n) 4^-n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .numerics import Enclosure

DEFAULT_STEP_BUDGET = 10 ** 5
DEFAULT_SIZE_BUDGET = 10 ** 6


# ---------------------------------------------------------------------------
# terms


class Atom:
    """Inert leaf: one of the combinators, or a fresh probe mark."""

    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def __repr__(self) -> str:
        return self.name


class App:
    """Application cell with a cached node count."""

    __slots__ = ("f", "x", "size")

    def __init__(self, f: "Term", x: "Term"):
        self.f = f
        self.x = x
        self.size = size_of(f) + size_of(x) + 1

    def __repr__(self) -> str:
        return f"({self.f!r} {self.x!r})"


Term = Atom | App

IOTA = Atom("i")
S = Atom("S")
K = Atom("K")


def size_of(t: Term) -> int:
    return t.size if isinstance(t, App) else 1


def term_eq(a: Term, b: Term) -> bool:
    """Structural equality; atoms compare by identity."""
    todo = [(a, b)]
    while todo:
        u, v = todo.pop()
        if u is v:
            continue
        if isinstance(u, App) and isinstance(v, App):
            if u.size != v.size:
                return False
            todo.append((u.f, v.f))
            todo.append((u.x, v.x))
            continue
        return False
    return True


# ---------------------------------------------------------------------------
# parsing and printing


class ParseFailure(ValueError):
    """Base class for the two ways a bit string can fail the grammar."""


class Incomplete(ParseFailure):
    """String ended with subterms still open; `missing` counts them."""

    def __init__(self, missing: int):
        self.missing = missing
        super().__init__(f"input ended with {missing} subterm(s) still open")


class TrailingBits(ParseFailure):
    """A complete program ended before the string did; `consumed` is its length."""

    def __init__(self, consumed: int):
        self.consumed = consumed
        super().__init__(f"complete program after {consumed} bit(s), trailing input")


def _clean(bits: str) -> str:
    out = "".join(bits.split())
    if any(c not in "01" for c in out):
        raise ValueError(f"program text must be 0s and 1s: {bits!r}")
    return out


def parse(bits: str) -> Term:
    """Parse a program, ignoring whitespace. Raises Incomplete or TrailingBits."""
    s = _clean(bits)
    if not s:
        raise Incomplete(1)
    need = 1
    for pos, c in enumerate(s):
        need += 1 if c == "1" else -1
        if need == 0:
            if pos != len(s) - 1:
                raise TrailingBits(pos + 1)
            break
    if need > 0:
        raise Incomplete(need)
    # build right to left: each '0' pushes a leaf, each '1' folds the top two
    stack: list[Term] = []
    for c in reversed(s):
        if c == "0":
            stack.append(IOTA)
        else:
            f = stack.pop()
            x = stack.pop()
            stack.append(App(f, x))
    assert len(stack) == 1
    return stack[0]


def is_program(bits: str) -> bool:
    try:
        parse(bits)
        return True
    except ParseFailure:
        return False


_SPELLINGS = {"i": "0", "K": "1010100", "S": "101010100"}
# the K and S spellings are programs that reduce to the bare combinators,
# so unparse . parse is the identity on meaning even after reduction


def unparse(t: Term) -> str:
    """Render a term back to program bits; probe marks are not renderable."""
    out: list[str] = []
    todo: list[Term] = [t]
    while todo:
        u = todo.pop()
        if isinstance(u, App):
            out.append("1")
            todo.append(u.x)
            todo.append(u.f)
        else:
            spelling = _SPELLINGS.get(u.name)
            if spelling is None:
                raise ValueError(f"term contains a non-renderable atom: {u.name}")
            out.append(spelling)
    return "".join(out)


def count_programs(length: int) -> int:
    """Number of valid programs with exactly `length` bits."""
    if length < 1 or length % 2 == 0:
        return 0
    n = (length + 1) // 2
    return comb(2 * (n - 1), n - 1) // n


_WORD_CACHE: dict[int, tuple[str, ...]] = {1: ("0",)}


def words_of_length(length: int) -> tuple[str, ...]:
    """All valid programs of the given bit length, lexicographically sorted."""
    if length < 1 or length % 2 == 0:
        return ()
    cached = _WORD_CACHE.get(length)
    if cached is not None:
        return cached
    acc: list[str] = []
    for left_len in range(1, length - 1, 2):
        for a in words_of_length(left_len):
            prefix = "1" + a
            for b in words_of_length(length - 1 - left_len):
                acc.append(prefix + b)
    out = tuple(sorted(acc))
    _WORD_CACHE[length] = out
    return out


# ---------------------------------------------------------------------------
# reduction


@dataclass(frozen=True)
class ReduceResult:
    """Outcome of a budgeted normalization.

    status is "normal" with the normal form in `term`, or "steps" / "size"
    naming the budget that ran out, with `term` unset.
    """

    status: str
    steps: int
    term: Term | None = None

    @property
    def halted(self) -> bool:
        return self.status == "normal"


class _BudgetStop(Exception):
    def __init__(self, kind: str):
        self.kind = kind


class _Meter:
    """Shared step and size accounting for one reduction session."""

    __slots__ = ("steps", "size", "step_budget", "size_budget")

    def __init__(self, size: int, step_budget: int, size_budget: int):
        self.steps = 0
        self.size = size
        self.step_budget = step_budget
        self.size_budget = size_budget

    def spend(self, delta: int) -> None:
        self.steps += 1
        if self.steps > self.step_budget:
            raise _BudgetStop("steps")
        self.size += delta
        if self.size > self.size_budget:
            raise _BudgetStop("size")


def _normalize(root: Term, meter: _Meter) -> Term:
    """Full normal-order normalization with an explicit work stack."""
    done: list[Term] = []
    todo: list[tuple] = [("norm", root)]
    while todo:
        job = todo.pop()
        if job[0] == "norm":
            t = job[1]
            spine: list[App] = []
            while True:
                while isinstance(t, App):
                    spine.append(t)
                    t = t.f
                if t is IOTA and spine:
                    a = spine.pop()
                    x = a.x
                    t = App(App(x, S), K)
                    meter.spend(2)
                elif t is K and len(spine) >= 2:
                    a1 = spine.pop()
                    a2 = spine.pop()
                    meter.spend(-(size_of(a2.x) + 3))
                    t = a1.x
                elif t is S and len(spine) >= 3:
                    a1 = spine.pop()
                    a2 = spine.pop()
                    a3 = spine.pop()
                    x, y, z = a1.x, a2.x, a3.x
                    meter.spend(size_of(z) - 1)
                    t = App(App(x, z), App(y, z))
                else:
                    break
            # head atom with too few arguments: normalize the args in place
            args = [a.x for a in reversed(spine)]
            done.append(t)
            todo.append(("build", len(args)))
            for a in reversed(args):
                todo.append(("norm", a))
        else:  # build
            n = job[1]
            if n:
                args = done[-n:]
                del done[-n:]
                head = done.pop()
                for a in args:
                    head = App(head, a)
                done.append(head)
    assert len(done) == 1
    return done[0]


def reduce(
    t: Term,
    step_budget: int = DEFAULT_STEP_BUDGET,
    size_budget: int = DEFAULT_SIZE_BUDGET,
) -> ReduceResult:
    """Normalize t under budgets; exhaustion is reported, never raised."""
    if size_of(t) > size_budget:
        return ReduceResult("size", 0)
    meter = _Meter(size_of(t), step_budget, size_budget)
    try:
        nf = _normalize(t, meter)
    except _BudgetStop as stop:
        return ReduceResult(stop.kind, meter.steps)
    return ReduceResult("normal", meter.steps, nf)


def run_program(
    bits: str,
    step_budget: int = DEFAULT_STEP_BUDGET,
    size_budget: int = DEFAULT_SIZE_BUDGET,
) -> ReduceResult:
    """Parse and normalize program bits."""
    return reduce(parse(bits), step_budget, size_budget)


# ---------------------------------------------------------------------------
# canonical constants


def _app_bits(f: str, x: str) -> str:
    return "1" + f + x


def _build_pairing() -> str:
    """Pairing combinator P with P x y z ->* z x y, as program bits.

    Bracket abstraction of the selector lambda:
      P = S (S (KS) (S (KK) (S (KS) (S (K (S I)) K)))) (K K)
    so that P x = S (K (S (S I (K x)))) K, P x y = S (S I (K x)) (K y),
    and P x y z -> z x y. Applying the pair to K selects x, applying it
    to S K selects y.
    """
    k = _SPELLINGS["K"]
    s = _SPELLINGS["S"]
    i = "100"  # iota iota, extensionally the identity
    ks = _app_bits(k, s)
    kk = _app_bits(k, k)
    si = _app_bits(s, i)
    inner = _app_bits(_app_bits(s, _app_bits(k, si)), k)
    lvl3 = _app_bits(_app_bits(s, ks), inner)
    lvl2 = _app_bits(_app_bits(s, kk), lvl3)
    lvl1 = _app_bits(_app_bits(s, ks), lvl2)
    return _app_bits(_app_bits(s, lvl1), kk)


@dataclass(frozen=True)
class Constants:
    """Program spellings of the false/true selectors and the pairing combinator."""

    F: str
    T: str
    P: str


_CONSTANTS = Constants(F="1010100", T="10100", P=_build_pairing())


def iota_constants() -> Constants:
    return _CONSTANTS


def selector_check(
    x: Term,
    y: Term,
    step_budget: int = 10 ** 4,
    size_budget: int = DEFAULT_SIZE_BUDGET,
) -> bool:
    """True when the pair built from x and y yields x under F and y under T."""
    c = iota_constants()
    pair = App(App(parse(c.P), x), y)
    for probe, want in ((parse(c.F), x), (parse(c.T), y)):
        r = reduce(App(pair, probe), step_budget, size_budget)
        if not r.halted or not term_eq(r.term, want):
            return False
    return True


# ---------------------------------------------------------------------------
# bit list codec


class MalformedList(ValueError):
    """Decoded term is not a proper list of booleans."""


class DecodeBudget(Exception):
    """Decoding ran out of reduction budget before the list shape settled."""


def encode_bits(w: str) -> str:
    """Program bits for the boolean list holding the bits of w.

    The empty list is F; a cons cell applies the pairing combinator to the
    bit (F for 0, T for 1) and the encoded tail. F is the longer bit
    spelling, so |encode(w)| <= (2 + |P| + |F|) * |w| + |F|.
    """
    if any(c not in "01" for c in w):
        raise ValueError(f"not a bit string: {w!r}")
    c = iota_constants()
    out = c.F
    for bit in reversed(w):
        out = _app_bits(_app_bits(c.P, c.T if bit == "1" else c.F), out)
    return out


def decode_bits(
    bits: str,
    step_budget: int = DEFAULT_STEP_BUDGET,
    size_budget: int = DEFAULT_SIZE_BUDGET,
) -> str:
    """Inverse of encode_bits up to reduction, for any term of list shape.

    Each node is probed by applying it to two fresh marks: the empty list
    returns the first mark, while a cons cell surfaces the head and tail as
    arguments of the first mark. Total step usage across all probes is
    capped by step_budget.
    """
    t = parse(bits)
    meter = _Meter(0, step_budget, size_budget)
    out: list[str] = []
    probe_a = Atom("a")
    probe_b = Atom("b")
    while True:
        probed = App(App(t, probe_a), probe_b)
        meter.size = size_of(probed)
        try:
            nf = _normalize(probed, meter)
        except _BudgetStop as stop:
            raise DecodeBudget(stop.kind) from None
        if nf is probe_a:
            return "".join(out)
        # expect probe_a applied to exactly (head, tail, probe_b)
        spine: list[App] = []
        u: Term = nf
        while isinstance(u, App):
            spine.append(u)
            u = u.f
        if u is not probe_a or len(spine) != 3:
            raise MalformedList("node is neither the empty list nor a cons cell")
        head = spine[-1].x
        tail = spine[-2].x
        if spine[-3].x is not probe_b:
            raise MalformedList("cons probe did not pass through")
        # booleans are recognized by behaviour: F m n -> m, T m n -> n
        mark_f = Atom("f")
        mark_t = Atom("t")
        choice = App(App(head, mark_f), mark_t)
        meter.size = size_of(choice)
        try:
            picked = _normalize(choice, meter)
        except _BudgetStop as stop:
            raise DecodeBudget(stop.kind) from None
        if picked is mark_f:
            out.append("0")
        elif picked is mark_t:
            out.append("1")
        else:
            raise MalformedList("list element is not a boolean")
        t = tail


# ---------------------------------------------------------------------------
# syntactic weight series


def iota_zeta_partial(n: int) -> Enclosure:
    """Enclosure of the total program-length weight from the first n sizes.

    lo is sum_{m<=n} C_{m-1} 2^-(2m-1); the exact tail binom(2n, n) 4^-n
    brings hi to 1, the full weight of the program code.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    lo = Fraction(0)
    for m in range(1, n + 1):
        lo += Fraction(count_programs(2 * m - 1), 1 << (2 * m - 1))
    tail = Fraction(comb(2 * n, n), 4 ** n)
    return Enclosure(lo, lo + tail)

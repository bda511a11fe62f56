"""Exact rational enclosures and certified elementary bounds.

Everything here returns rational numbers or closed rational intervals that
provably contain the target value. No floats participate in any bound; the
only approximation mechanism is outward dyadic rounding, which can widen an
interval but never lets the target escape.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def parse_rational(text: str) -> Fraction:
    """Parse 'a/b', a decimal literal, or an integer, exactly."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {text!r}") from exc


@dataclass(frozen=True)
class Enclosure:
    """Closed interval [lo, hi] with rational endpoints; hi=None means unbounded above."""

    lo: Fraction
    hi: Fraction | None

    def __post_init__(self) -> None:
        if self.hi is not None and self.hi < self.lo:
            raise ValueError(f"empty enclosure: [{self.lo}, {self.hi}]")

    @staticmethod
    def exact(v: Fraction) -> "Enclosure":
        return Enclosure(v, v)

    @property
    def bounded(self) -> bool:
        return self.hi is not None

    @property
    def width(self) -> Fraction | None:
        return None if self.hi is None else self.hi - self.lo

    @property
    def is_exact(self) -> bool:
        return self.hi is not None and self.hi == self.lo

    def contains(self, v: Fraction) -> bool:
        return self.lo <= v and (self.hi is None or v <= self.hi)

    def encloses(self, other: "Enclosure") -> bool:
        """True when every point of `other` lies in this interval."""
        if other.hi is None:
            return False if self.hi is not None else self.lo <= other.lo
        return self.lo <= other.lo and (self.hi is None or other.hi <= self.hi)

    def midpoint(self) -> Fraction:
        if self.hi is None:
            raise ValueError("midpoint of an unbounded enclosure")
        return (self.lo + self.hi) / 2

    def __add__(self, other: "Enclosure") -> "Enclosure":
        hi = None if (self.hi is None or other.hi is None) else self.hi + other.hi
        return Enclosure(self.lo + other.lo, hi)

    def shift(self, c: Fraction) -> "Enclosure":
        return Enclosure(self.lo + c, None if self.hi is None else self.hi + c)

    def scale(self, c: Fraction) -> "Enclosure":
        # nonnegative scalars only, which is all the accumulation code needs
        if c < 0:
            raise ValueError("scale factor must be nonnegative")
        if c == 0:
            return Enclosure(_ZERO, _ZERO)
        return Enclosure(self.lo * c, None if self.hi is None else self.hi * c)

    def mul(self, other: "Enclosure") -> "Enclosure":
        """Interval product; both operands must be nonnegative."""
        if self.lo < 0 or other.lo < 0:
            raise ValueError("mul requires nonnegative intervals")
        if self.hi is None or other.hi is None:
            hi = None
            if (self.hi == self.lo == _ZERO) or (other.hi == other.lo == _ZERO):
                hi = _ZERO
            return Enclosure(self.lo * other.lo, hi)
        return Enclosure(self.lo * other.lo, self.hi * other.hi)

    def div(self, other: "Enclosure") -> "Enclosure":
        """Interval quotient; numerator nonnegative, denominator strictly positive."""
        if other.lo <= 0:
            raise ValueError("div requires a strictly positive denominator interval")
        if self.lo < 0:
            raise ValueError("div requires a nonnegative numerator interval")
        lo = _ZERO if other.hi is None else self.lo / other.hi
        hi = None if self.hi is None else self.hi / other.lo
        return Enclosure(lo, hi)


def _round_down(f: Fraction, sig: int) -> Fraction:
    """Largest dyadic with about `sig` significant bits that is <= f (f >= 0)."""
    if f == 0:
        return _ZERO
    n, d = f.numerator, f.denominator
    shift = sig - (n.bit_length() - d.bit_length())
    if shift >= 0:
        return Fraction((n << shift) // d, 1 << shift)
    return Fraction(n // (d << -shift)) * (1 << -shift)


def _round_up(f: Fraction, sig: int) -> Fraction:
    if f == 0:
        return _ZERO
    n, d = f.numerator, f.denominator
    shift = sig - (n.bit_length() - d.bit_length())
    if shift >= 0:
        return Fraction(-((-n << shift) // d), 1 << shift)
    return Fraction(-(-n // (d << -shift))) * (1 << -shift)


# ---------------------------------------------------------------------------
# harmonic segments and Catalan numbers


def harmonic_segment(i: int, j: int) -> Fraction:
    """Sum of 1/m for m in [i, j]; empty when j < i. Requires i >= 1."""
    if i < 1:
        raise ValueError("harmonic_segment requires i >= 1")
    return sum((Fraction(1, m) for m in range(i, j + 1)), _ZERO)


def catalan(n: int) -> int:
    """n-th Catalan number, C_0 = 1."""
    if n < 0:
        raise ValueError("catalan requires n >= 0")
    return comb(2 * n, n) // (n + 1)


# ---------------------------------------------------------------------------
# certified exponentials and logarithms


def e_bounds(terms: int = 25) -> Enclosure:
    """Rational interval around e from the factorial series.

    The tail past 1/terms! is below 2/(terms+1)!.
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    acc = _ZERO
    fact = 1
    for k in range(terms + 1):
        if k:
            fact *= k
        acc += Fraction(1, fact)
    rem = Fraction(2, fact * (terms + 1))
    return Enclosure(acc, acc + rem)


def exp_bounds(w: Fraction, prec: int = 64) -> Enclosure:
    """Interval containing e^w for rational w >= 0, width about 2^-prec relative."""
    if w < 0:
        raise ValueError("exp_bounds requires w >= 0")
    if w == 0:
        return Enclosure.exact(_ONE)
    # argument reduction: square t times so the series runs on r <= 1/2
    t = 0
    r = w
    while r > Fraction(1, 2):
        r /= 2
        t += 1
    guard = prec + 2 * t + 8
    cutoff = Fraction(1, 1 << (guard + 1))
    acc = _ONE
    term = _ONE
    k = 0
    while True:
        k += 1
        term *= r / k
        acc += term
        # geometric tail: remaining sum < 2 * next term once r <= 1/2
        if 2 * term * r / (k + 1) <= cutoff:
            break
    lo = acc
    hi = acc + 2 * term * r / (k + 1)
    sig = guard + 8
    for _ in range(t):
        lo = _round_down(lo * lo, sig)
        hi = _round_up(hi * hi, sig)
    return Enclosure(lo, hi)


def _atanh_bounds(z: Fraction, prec: int) -> Enclosure:
    """Interval for atanh(z), 0 <= z <= 1/3."""
    if not (0 <= z <= Fraction(1, 3)):
        raise ValueError("series valid for 0 <= z <= 1/3")
    if z == 0:
        return Enclosure.exact(_ZERO)
    cutoff = Fraction(1, 1 << (prec + 2))
    acc = _ZERO
    zz = z * z
    power = z
    j = 0
    while True:
        acc += power / (2 * j + 1)
        power *= zz
        j += 1
        rem = power / ((2 * j + 1) * (1 - zz))
        if rem <= cutoff:
            return Enclosure(acc, acc + rem)


@functools.lru_cache(maxsize=None)
def ln2_bounds(prec: int = 64) -> Enclosure:
    """Interval for ln 2 = 2 atanh(1/3)."""
    a = _atanh_bounds(Fraction(1, 3), prec + 2)
    return Enclosure(2 * a.lo, 2 * a.hi)


def ln_bounds(x: Fraction, prec: int = 64) -> Enclosure:
    """Interval for ln x, rational x > 0."""
    if x <= 0:
        raise ValueError("ln_bounds requires x > 0")
    if x == 1:
        return Enclosure.exact(_ZERO)
    if x < 1:
        inner = ln_bounds(1 / x, prec)
        return Enclosure(-inner.hi, -inner.lo)
    # normalize to m = x / 2^k in [1, 2)
    k = x.numerator.bit_length() - x.denominator.bit_length()
    if Fraction(2) ** k > x:
        k -= 1
    m = x / Fraction(2) ** k
    assert 1 <= m < 2
    z = (m - 1) / (m + 1)
    a = _atanh_bounds(z, prec + 2)
    body = Enclosure(2 * a.lo, 2 * a.hi)
    l2 = ln2_bounds(prec + 2)
    if k >= 0:
        return Enclosure(body.lo + k * l2.lo, body.hi + k * l2.hi)
    return Enclosure(body.lo + k * l2.hi, body.hi + k * l2.lo)


def log2_bounds(x: Fraction, prec: int = 64) -> Enclosure:
    """Interval for log2 x, rational x > 0."""
    if x == 1:
        return Enclosure.exact(_ZERO)
    num = ln_bounds(x, prec + 4)
    den = ln2_bounds(prec + 4)
    if x > 1:
        return Enclosure(num.lo / den.hi, num.hi / den.lo)
    return Enclosure(num.lo / den.lo, num.hi / den.hi)


# ---------------------------------------------------------------------------
# roots and rational powers


def _ikroot(n: int, k: int) -> int:
    """Integer k-th root: largest s with s**k <= n."""
    if n < 0 or k < 1:
        raise ValueError("_ikroot requires n >= 0, k >= 1")
    if n < 2 or k == 1:
        return n
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def root_bounds(v: Fraction, k: int, prec: int = 64) -> Enclosure:
    """Interval of width <= 2^-prec around v^(1/k), v >= 0 rational, k >= 1."""
    if v < 0:
        raise ValueError("root_bounds requires v >= 0")
    if k < 1:
        raise ValueError("root_bounds requires k >= 1")
    if v == 0:
        return Enclosure.exact(_ZERO)
    if k == 1:
        return Enclosure.exact(v)
    scaled = (v.numerator << (k * prec)) // v.denominator
    s = _ikroot(scaled, k)
    lo = Fraction(s, 1 << prec)
    hi = Fraction(s + 1, 1 << prec)
    assert lo ** k <= v < hi ** k
    return Enclosure(lo, hi)


def pow_bounds(v: Fraction, e: Fraction, prec: int = 64) -> Enclosure:
    """Interval around v^e for rational v > 0 and rational e."""
    if v <= 0:
        raise ValueError("pow_bounds requires v > 0")
    if e.denominator == 1:
        return Enclosure.exact(v ** e.numerator)
    if e < 0:
        p = prec + 4
        inner = pow_bounds(v, -e, p)
        while inner.lo == 0:  # tiny v^|e| can floor to zero, widen until positive
            p *= 2
            inner = pow_bounds(v, -e, p)
        return Enclosure(1 / inner.hi, 1 / inner.lo)
    a, b = e.numerator, e.denominator
    return root_bounds(v ** a, b, prec)


def pow2_bounds(e: Fraction, prec: int = 64) -> Enclosure:
    """Interval around 2^e with relative width about 2^-prec; e any rational."""
    if e.denominator == 1:
        return Enclosure.exact(Fraction(2) ** e.numerator)
    c = e.numerator // e.denominator
    f = e - c
    r = root_bounds(Fraction(2) ** f.numerator, f.denominator, prec)
    scale = Fraction(2) ** c
    return Enclosure(r.lo * scale, r.hi * scale)


# ---------------------------------------------------------------------------
# Lambert W


def lambert_w(x: Fraction | Enclosure, tol: Fraction) -> Enclosure:
    """Interval of width <= tol around the principal W(x), x >= 0.

    Bisection on w * e^w - x. A midpoint sign test uses exp_bounds at
    increasing precision until decisive; for rational w > 0 the product
    w * e^w is irrational, so ties cannot occur and every test terminates.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if isinstance(x, Enclosure):
        if x.hi is None:
            raise ValueError("lambert_w needs a bounded argument")
        lo_side = lambert_w(x.lo, tol / 2)
        hi_side = lambert_w(x.hi, tol / 2)
        return Enclosure(lo_side.lo, hi_side.hi)
    if x < 0:
        raise ValueError("lambert_w requires x >= 0")
    if x == 0:
        return Enclosure.exact(_ZERO)

    def above(w: Fraction) -> bool:
        # True when w * e^w > x, certified
        if w == 0:
            return x < 0
        prec = 64
        while True:
            ex = exp_bounds(w, prec)
            if w * ex.lo > x:
                return True
            if w * ex.hi < x:
                return False
            prec *= 2

    hi = _ONE
    while not above(hi):
        hi *= 2
    lo = _ZERO
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if above(mid):
            hi = mid
        else:
            lo = mid
    return Enclosure(lo, hi)


def w_ratio(m: int, tol: Fraction = Fraction(1, 10 ** 6)) -> Enclosure:
    """Interval of width <= tol around W(2^m) / (m ln 2), m >= 1."""
    if m < 1:
        raise ValueError("w_ratio requires m >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    w_tol = tol * m / 4
    prec = 96
    while True:
        w = lambert_w(Fraction(2) ** m, w_tol)
        l2 = ln2_bounds(prec)
        out = Enclosure(w.lo / (m * l2.hi), w.hi / (m * l2.lo))
        if out.width is not None and out.width <= tol:
            return out
        w_tol /= 4
        prec += 32


# ---------------------------------------------------------------------------
# certified binary digits


@dataclass(frozen=True)
class DigitResult:
    """Certified fractional binary digits shared by every point of an enclosure."""

    digits: str
    determined: int


def digits(e: Enclosure, n: int) -> DigitResult:
    """First n binary digits after the point, as far as the enclosure pins them down.

    Expansions use the convention that dyadic rationals other than 0 take the
    trailing-ones form, so the digit-string classes at depth k are the
    half-open cells ((j)/2^k, (j+1)/2^k], with the leftmost cell closed at 0.
    Digits are reported only while a single cell contains the whole interval.
    """
    if n < 0:
        raise ValueError("digit count must be >= 0")
    if e.hi is None:
        raise ValueError("digits requires a bounded enclosure")
    if e.lo < 0 or e.hi > 1:
        raise ValueError("digits requires an enclosure inside [0, 1]")
    out = 0
    determined = 0
    for k in range(1, n + 1):
        scale = 1 << k
        if e.lo == 0:
            j = 0
        else:
            # cell containing lo is (j/2^k, (j+1)/2^k] with j = ceil(lo 2^k) - 1
            j = -((-e.lo.numerator * scale) // e.lo.denominator) - 1
        if e.hi > Fraction(j + 1, scale):
            break
        out = j
        determined = k
    text = format(out, f"0{determined}b") if determined else ""
    return DigitResult(text, determined)

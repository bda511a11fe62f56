"""Exponent-weighted sums, normalized statistics, and the prime bound scan."""

from __future__ import annotations

from fractions import Fraction as F

import pytest

from tuatara.machines import Builtin, Construction, FiniteTable, domain_stream
from tuatara.spectral import (
    dyadic_weight_sum,
    kappa,
    kappa_natural,
    omega_s,
    pnt_check,
    riemann_zeta,
    zeta_s,
)


def _brackets(e, lo, hi):
    return e.lo <= hi and (e.hi is None or e.hi >= lo)


def test_omega_s_values():
    assert omega_s(FiniteTable(("0",)), F(2)).lo == F(1, 4)
    full = omega_s(Builtin("all_strings"), F(2), 2000)
    assert full.hi == 2  # geometric closed form, attained as the upper bound
    assert full.hi - full.lo < F(1, 500)
    # at s = 3/2 the closed form is 2 + sqrt(2)
    half = omega_s(Builtin("all_strings"), F(3, 2), 4000)
    assert _brackets(half, F("3.414213562373095"), F("3.414213562373096"))


def test_zeta_s_values():
    assert zeta_s(FiniteTable(("1011",)), F(2)).lo == F(1, 729)
    assert zeta_s(FiniteTable(("",)), F(7)).lo == 1
    enc = zeta_s(FiniteTable(("1011",)), F(2))
    assert enc.is_exact


def test_exponent_guards():
    t = FiniteTable(("0",))
    with pytest.raises(ValueError):
        omega_s(t, F(0))
    with pytest.raises(ValueError):
        zeta_s(t, F(1, 2))
    with pytest.raises(ValueError):
        kappa(t, F(1))
    with pytest.raises(ValueError):
        kappa_natural(t, F(1))
    with pytest.raises(ValueError):
        riemann_zeta(F(1))


def test_doubling_shifts_the_exponent():
    base = FiniteTable(("0", "10"))
    doubled = Construction("double", (base,))
    assert omega_s(doubled, F(1)).lo == F(5, 16)
    assert omega_s(doubled, F(1)) == omega_s(base, F(2))


def test_prime_product_euler_value():
    pp = Construction("prime_product", (FiniteTable(("", "0")),))
    enc = zeta_s(pp, F(2), 10**5)
    assert enc.contains(F(3, 2))
    assert enc.width < F(1, 10**6)
    assert domain_stream(pp).zeta_total_exact(2) == F(3, 2)


def test_riemann_zeta_values():
    z2 = riemann_zeta(F(2), 10**4)
    assert z2.contains(F("1.6449340668482264"))
    assert z2.width < F(1, 10**4)
    z3 = riemann_zeta(F(3), 10**4)
    assert z3.contains(F("1.2020569031595943"))
    z4 = riemann_zeta(F(4), 10**4)
    assert z4.contains(F("1.0823232337111382"))
    # the three enclosures are pairwise disjoint and ordered
    assert z2.lo > z3.hi > z4.hi
    assert z3.lo > z4.hi
    z32 = riemann_zeta(F(3, 2), 10**4)
    assert z32.contains(F("2.612375348685488"))
    assert z32.width < F(1, 10**4)


def test_kappa_values():
    full = kappa(Builtin("all_strings"), F(2), 2000)
    assert full.hi == 1
    assert full.lo > F(999, 1000)
    assert kappa(FiniteTable(("0",)), F(2)).lo == F(1, 8)
    assert kappa(FiniteTable(("0",)), F(2)).is_exact
    assert kappa(FiniteTable(()), F(2)).lo == 0


def test_kappa_natural_values():
    # 1/zeta(2) = 6/pi^2 = 0.6079271018540267...
    kn = kappa_natural(FiniteTable(("",)), F(2), 10**4)
    assert _brackets(kn, F("0.607927101854026"), F("0.607927101854027"))
    assert kn.width < F(1, 10**7)
    pp = Construction("prime_product", (FiniteTable(("", "0")),))
    knp = kappa_natural(pp, F(2), 10**4)
    assert _brackets(knp, F("0.911890652762139"), F("0.911890652762140"))
    kna = kappa_natural(Builtin("all_strings"), F(2), 10**4)
    assert kna.contains(F(1))


def test_dyadic_weight_sum():
    assert dyadic_weight_sum(1) == 1
    assert dyadic_weight_sum(3) == F(7, 4)
    for cap in range(1, 31):
        assert dyadic_weight_sum(cap) == 2 - F(1, 1 << (cap - 1))
    with pytest.raises(ValueError):
        dyadic_weight_sum(0)


def test_pnt_check():
    assert pnt_check(100) == []
    with pytest.raises(ValueError):
        pnt_check(5)

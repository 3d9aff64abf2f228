"""q-Pochhammer symbols, infinite products, and the indefinite double sum.

All Pochhammer arguments are monomials (scalar * parameter-power *
q-power), which covers every building block used by the identity
registry.  Everything here is memoized aggressively: the identity
builders re-request the same symbols at the same orders constantly.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .series import (
    INF,
    DivergentProduct,
    MonomialSpec,
    Series,
    invert,
    make_monomial,
)


@lru_cache(maxsize=None)
def _one_minus(a: MonomialSpec, shift: int):
    """The factor 1 - a*q^(shift/2) as an exact series."""
    if a.is_zero():
        return Series.one()
    return Series.one() - make_monomial(
        MonomialSpec(a.scalar, a.param, a.degree, a.qpower + shift), INF
    )


@lru_cache(maxsize=None)
def poch(a: MonomialSpec, step: int, n: int, order=INF) -> Series:
    """(a; q^(step/2))_n = prod_{k<n} (1 - a q^(k*step/2)), truncated at order."""
    if step <= 0:
        raise ValueError("Pochhammer step must be positive")
    if n < 0:
        raise ValueError("Pochhammer length must be nonnegative")
    if n == 0:
        return Series.one(order)
    prev = poch(a, step, n - 1, order)
    out = prev * _one_minus(a, (n - 1) * step)
    return out if order == INF else out.truncated(order)


@lru_cache(maxsize=None)
def poch_inf(a: MonomialSpec, step: int, order: int) -> Series:
    """(a; q^(step/2))_inf truncated at order (order must be finite)."""
    if step <= 0 or (not a.is_zero() and a.qpower < 0):
        raise DivergentProduct(
            f"infinite product with argument {a.text()} and step {step} "
            "does not converge termwise"
        )
    if order == INF:
        raise ValueError("poch_inf needs a finite truncation order")
    out = Series.one(order)
    k = 0
    while a.qpower + k * step < order and not a.is_zero():
        out = (out * _one_minus(a, k * step)).truncated(order)
        k += 1
    return out


@lru_cache(maxsize=None)
def _inv_factor(a: MonomialSpec, shift: int, order: int) -> Series:
    """1 / (1 - a q^(shift/2)) as a geometric series (q-valuation > 0)."""
    h = a.qpower + shift
    if a.is_zero():
        return Series.one(order)
    if h <= 0:
        return invert(_one_minus(a, shift), order=order)
    entries = {}
    m = 0
    term = MonomialSpec(1)
    base = MonomialSpec(a.scalar, a.param, a.degree, h)
    from .coeffring import pack_exponents

    while m * h < order:
        key = pack_exponents({term.param: term.degree}) if term.param else 0
        entries[m * h] = {key: term.scalar}
        m += 1
        term = term.times(base)
    return Series(entries, order, _trusted=True)


@lru_cache(maxsize=None)
def inv_poch(a: MonomialSpec, step: int, n: int, order: int) -> Series:
    """1 / (a; q^(step/2))_n truncated at order."""
    if n == 0:
        return Series.one(order)
    return (inv_poch(a, step, n - 1, order) * _inv_factor(a, (n - 1) * step, order)).truncated(order)


@lru_cache(maxsize=None)
def poch_range(a: MonomialSpec, step: int, k0: int, k1: int) -> Series:
    """Exact product prod_{k0 <= k < k1} (1 - a q^(k*step/2))."""
    if k1 <= k0:
        return Series.one()
    return poch_range(a, step, k0, k1 - 1) * _one_minus(a, (k1 - 1) * step)


@lru_cache(maxsize=None)
def ratio_term(num: MonomialSpec, den: MonomialSpec, step: int, k: int, order: int) -> Series:
    """(num; q^step)_k / (den; q^step)_k truncated at order."""
    if k == 0:
        return Series.one(order)
    prev = ratio_term(num, den, step, k - 1, order)
    out = prev * _one_minus(num, (k - 1) * step) * _inv_factor(den, (k - 1) * step, order)
    return out.truncated(order)


def weighted_ratio_sum(
    num: MonomialSpec, den: MonomialSpec, step: int, weight: int, order: int
) -> Series:
    """sum_{k>=0} [(num)_k / (den)_k] q^(weight*k/2), truncated at order.

    The cutoff k*weight >= order is exact because each ratio term has
    q-valuation 0.
    """
    if weight <= 0:
        raise ValueError("weight must be positive for the sum to truncate")
    total = Series.zero(order)
    k = 0
    while k * weight < order:
        total = total + ratio_term(num, den, step, k, order).shifted(k * weight).truncated(order)
        k += 1
    return total


@lru_cache(maxsize=None)
def hecke_double_sum(order: int) -> Series:
    """Double sum over k >= 0, |2l| <= k of (-1)^(l+k) q^(3(2k+1)^2-(6l+1)^2).

    Only k with 3k^2 + 6k + 2 < order/2 can contribute: the minimum of the
    exponent over admissible l is 3k^2 + 6k + 2 (attained at even k).
    """
    if order == INF:
        raise ValueError("hecke_double_sum needs a finite truncation order")
    entries: dict[int, dict] = {}
    k = 0
    while 2 * (3 * k * k + 6 * k + 2) < order:
        for l in range(-(k // 2), k // 2 + 1):
            e = 3 * (2 * k + 1) ** 2 - (6 * l + 1) ** 2
            h = 2 * e
            if h >= order:
                continue
            sign = -1 if (l + k) % 2 else 1
            cur = entries.setdefault(h, {0: 0})
            cur[0] += sign
        k += 1
    for h in [h for h, c in entries.items() if not c[0]]:
        del entries[h]
    return Series(entries, order, _trusted=True)


def clear_caches():
    """Reset all memoization (mainly for benchmarking fairness)."""
    for fn in (_one_minus, poch, poch_inf, _inv_factor, inv_poch, poch_range, ratio_term, hecke_double_sum):
        fn.cache_clear()

"""The identity registry: every registered claim as an order-bounded check.

Each entry builds its printed sides as series at a requested order and
compares adjacent pairs coefficient-by-coefficient.  Four displays in the
source text are demonstrably misprinted (they fail at the first or second
coefficient, e.g. the eq3.4 display fails at q^(1/2) with residual x);
those entries are registered in the corrected form that follows from the
finite-to-infinite summation lemma and the pair machinery, and the
as-printed variants are kept available as diagnostic checks
(``asprinted_checks``) so the discrepancy is reproducible.  See the
project notes for the derivations.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import partitions
from .bailey import andrews_alpha
from .qseries import (
    _inv_factor,
    _one_minus,
    hecke_double_sum,
    inv_poch,
    poch,
    poch_inf,
    poch_range,
    ratio_term,
    weighted_ratio_sum,
)
from .report import Mismatch, VerificationReport
from .series import (
    INF,
    DivergentProduct,
    InvertNonUnit,
    MonomialSpec,
    OrderExhausted,
    Series,
    equal_up_to,
    invert,
    make_monomial,
    rescale,
)


class UnknownIdentity(KeyError):
    pass


class BindingOutOfDomain(ValueError):
    pass


# frequently used monomials
_Q = MonomialSpec(1, None, 0, 2)        # q
_Q2 = MonomialSpec(1, None, 0, 4)       # q^2
_QH = MonomialSpec(1, None, 0, 1)       # q^(1/2)
_NEG_Q = MonomialSpec(-1, None, 0, 2)   # -q
_NEG_Q2 = MonomialSpec(-1, None, 0, 4)  # -q^2
_NEG_QH = MonomialSpec(-1, None, 0, 1)  # -q^(1/2)
_NEG_Q32 = MonomialSpec(-1, None, 0, 3)  # -q^(3/2)
_ZERO = MonomialSpec(0)
_HALF = Fraction(1, 2)


def _mono(m: MonomialSpec) -> Series:
    return make_monomial(m, INF) if not m.is_zero() else Series.zero(INF)


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


def _fit(sides: list[Series], order) -> list[Series]:
    for i, s in enumerate(sides):
        if s.order < order:
            raise AssertionError(f"side {i + 1} fell short of order {order}: {s.order}")
    return [s.truncated(order) for s in sides]


# ---------------------------------------------------------------------------
# builders; each returns the printed sides left-to-right
# ---------------------------------------------------------------------------


def _eq1_1(p, order):
    a, z = p["a"], p["z"]
    if z.qpower <= 0:
        raise BindingOutOfDomain("z needs positive q-valuation for the sum to truncate")
    W = order
    lhs = Series.zero(W)
    n = 0
    while n * z.qpower < W:
        t = poch(a, 2, n) * inv_poch(_Q, 2, n, W)
        lhs = lhs + (t * _mono(z.pow(n))).truncated(W)
        n += 1
    rhs = poch_inf(a.times(z), 2, W) * invert(poch_inf(z, 2, W))
    return _fit([lhs, rhs], order)


def _eq1_2(p, order):
    a, z = p["a"], p["z"]
    if z.qpower <= 0:
        raise BindingOutOfDomain("z needs positive q-valuation for the sum to truncate")
    W = order
    aq = a.times(_Q)
    lsum = Series.zero(W)
    n = 0
    while n * z.qpower < W:
        lsum = lsum + (poch(aq, 2, n) * _mono(z.pow(n))).truncated(W)
        n += 1
    lhs = poch_inf(z, 2, W) * lsum
    rhs = Series.zero(W)
    inner = Series.zero(W)  # sum_{k<=n} a^(n-k) / (q)_k, updated per n
    n = 0
    while n * z.qpower + n * (n + 1) < W:
        inner = (inner * _mono(a) if not a.is_zero() else Series.zero(W)) + inv_poch(_Q, 2, n, W)
        t = inner.truncated(W) * _mono(z.neg().pow(n))
        rhs = rhs + t.shifted(n * (n + 1)).truncated(W)
        n += 1
    return _fit([lhs, rhs], order)


def _eq1_3(p, order):
    W = order
    partial = Series.zero(W)  # sum_{k<=n} 1/(q)_k
    lhs = Series.zero(W)
    n = 0
    while n * (n + 1) < W:
        partial = partial + inv_poch(_Q, 2, n, W)
        lhs = lhs + partial.scaled(_sign(n)).shifted(n * (n + 1)).truncated(W)
        n += 1
    e = poch_inf(_Q, 2, W)
    return _fit([lhs, e * e], order)


def _eq1_5(p, order):
    return [partitions.omega_series(order), hecke_double_sum(order)]


def _lemma2_2(p, order):
    """Denominator-cleared form of the finite-to-infinite summation lemma:

        b^(N+1) ((a/b)q)_{N+1} (1 - q^(N+1)) sum_n [(aq)_n/(bq)_n] q^((N+1)n)
          = (1-b) (q)_{N+1} [ (aq)_inf / (b)_inf
                              - sum_{n<=N} ((a/b)q)_n b^n / (q)_n ]

    Clearing keeps a symbolic 'a' with negative q-power inside the
    polynomial ring (nothing with a parameter in its leading term is
    ever inverted).
    """
    a, b, N = p["a"], p["b"], p["N"]
    ab_q = a.times(b.inverse()).times(_Q)
    dip = (N + 1) * max(0, -ab_q.qpower) + max(0, -(N + 1) * b.qpower)
    W = order + dip + 4
    tail = weighted_ratio_sum(a.times(_Q), b.times(_Q), 2, 2 * (N + 1), W)
    lhs = poch(ab_q, 2, N + 1) * _one_minus(_Q, 2 * N) * tail
    lhs = (lhs * _mono(b.pow(N + 1))).truncated(order)

    bsum = Series.zero(W)
    for n in range(N + 1):
        bsum = bsum + (poch(ab_q, 2, n) * inv_poch(_Q, 2, n, W) * _mono(b.pow(n))).truncated(W)
    infpart = poch_inf(a.times(_Q), 2, W) * invert(poch_inf(b, 2, W))
    rhs = _one_minus(b, 0) * poch(_Q, 2, N + 1) * (infpart - bsum)
    return _fit([lhs, rhs.truncated(order)], order)


def _eq3_3(p, order):
    x, N = p["x"], p["N"]
    W = order
    xq = x.times(_Q)
    lhs = Series.zero(W)
    for n in range(N + 1):
        lhs = lhs + (poch(x, 2, n) * inv_poch(_Q, 2, n, W)).scaled(_sign(n)).truncated(W)
    rhs = (poch_inf(x.neg(), 2, W) * invert(poch_inf(_NEG_Q, 2, W))).scaled(_HALF)
    tail = weighted_ratio_sum(x.neg(), _NEG_Q, 2, 2 * (N + 1), W)
    t = poch(x, 2, N + 1) * inv_poch(_Q, 2, N, W) * tail
    rhs = rhs + t.scaled(_HALF * _sign(N)).truncated(W)
    return _fit([lhs, rhs], order)


def _eq3_4(p, order):
    """Corrected form (the printed display fails already at q^(1/2); the
    lemma specialization b = -q^(1/2), a = -x/q^(1/2) gives this one)."""
    x, N = p["x"], p["N"]
    W = order
    lhs = Series.zero(W)
    for n in range(N + 1):
        t = poch(x, 2, n) * inv_poch(_Q, 2, n, W)
        lhs = lhs + t.scaled(_sign(n)).shifted(n).truncated(W)
    xqh = x.times(_QH)
    rhs = poch_inf(xqh.neg(), 2, W) * invert(poch_inf(_NEG_QH, 2, W))
    tail = weighted_ratio_sum(xqh.neg(), _NEG_Q32, 2, 2 * (N + 1), W)
    t = poch(x, 2, N + 1) * inv_poch(_Q, 2, N, W) * _inv_factor(_NEG_QH, 0, W) * tail
    rhs = rhs + t.scaled(_sign(N)).shifted(N + 1).truncated(W)
    return _fit([lhs, rhs], order)


def _eq3_4_asprinted(p, order):
    x, N = p["x"], p["N"]
    W = order
    lhs = Series.zero(W)
    for n in range(N + 1):
        t = poch(x, 2, n) * inv_poch(_Q, 2, n, W)
        lhs = lhs + t.scaled(_sign(n)).shifted(n).truncated(W)
    xqh = x.times(_QH)
    rhs = poch_inf(xqh.neg(), 2, W) * invert(poch_inf(_NEG_QH, 2, W))
    tail = weighted_ratio_sum(xqh.neg(), _NEG_QH, 2, 2 * (N + 1), W)
    t = poch(xqh, 2, N + 1) * inv_poch(_Q, 2, N, W) * _inv_factor(_NEG_QH, 0, W) * tail
    rhs = rhs + t.scaled(_sign(N)).shifted(N + 1).truncated(W)
    return _fit([lhs, rhs], order)


def _eq2_10(p, order):
    a, b, t_ = p["a"], p["b"], p["t"]
    if t_.qpower <= 0:
        raise BindingOutOfDomain("t needs positive q-valuation for the sums to truncate")
    W = order
    aq, bq = a.times(_Q), b.times(_Q)
    lsum = Series.zero(W)
    n = 0
    while n * t_.qpower < W:
        lsum = lsum + (ratio_term(aq, bq, 2, n, W) * _mono(t_.pow(n))).truncated(W)
        n += 1
    lhs = poch_inf(t_, 2, W) * lsum
    rhs = Series.zero(W)
    inner = Series.zero(W)  # sum_{k<=n} (b)_k a^(n-k) / (q)_k
    n = 0
    while n * t_.qpower + n * (n + 1) < W:
        inner = (inner * _mono(a) if not a.is_zero() else Series.zero(W)) \
            + (poch(b, 2, n) * inv_poch(_Q, 2, n, W)).truncated(W)
        t = inner.truncated(W) * inv_poch(bq, 2, n, W) * _mono(t_.neg().pow(n))
        rhs = rhs + t.shifted(n * (n + 1)).truncated(W)
        n += 1
    return _fit([lhs, rhs], order)


def _eq2_11(p, order):
    """Exact polynomial identity for each N (both sides multiplied by
    (q)_N^2 (bq)_N, which clears every displayed denominator)."""
    a, b, N = p["a"], p["b"], p["N"]
    bq = b.times(_Q)
    lhs = poch(a.times(_Q), 2, N) * poch(_Q, 2, N) * poch(_Q, 2, N)
    rhs = Series.zero(INF)
    inner = Series.zero(INF)  # sum_{k<=n} (b)_k a^(-k) (q)_N/(q)_k
    for n in range(N + 1):
        inner = inner + poch(b, 2, n) * _mono(a.inverse().pow(n)) * poch_range(_Q, 2, n, N)
        t = poch_range(_Q, 2, N - n, N) * poch_range(bq, 2, n, N) * inner
        t = t * _mono(a.neg().pow(n))
        rhs = rhs + t.shifted(n * (n + 1))
    return [lhs, rhs]


def _thm3_1_parts(p, order, variant: int):
    """Common scaffolding for the two double-sum specializations
    (X = q^-M, Y = q^-L)."""
    x, M, L = p["x"], p["M"], p["L"]
    ntop = min(M, L)
    W = order + 4 * ntop * (M + L) + 2 * ntop * (ntop + 1) + 16
    X = MonomialSpec(1, None, 0, -2 * M)
    Y = MonomialSpec(1, None, 0, -2 * L)
    csh = 2 * (2 + M + L)  # half-units per n in (q^2/XY)^n
    aq_X = MonomialSpec(1, None, 0, 4 + 2 * M)  # q^(2+M)
    aq_Y = MonomialSpec(1, None, 0, 4 + 2 * L)
    xy = [poch(X, 2, n) * poch(Y, 2, n) for n in range(ntop + 1)]
    pref = poch_inf(aq_X, 2, W) * poch_inf(aq_Y, 2, W)
    pref = pref * invert(poch_inf(_Q2, 2, W)) * invert(
        poch_inf(MonomialSpec(1, None, 0, csh), 2, W))
    return x, M, L, ntop, W, csh, aq_X, aq_Y, xy, pref


def _thm3_1_1(p, order):
    x, M, L, ntop, W, csh, aq_X, aq_Y, xy, pref = _thm3_1_parts(p, order, 1)
    xq = x.times(_Q)
    s1 = Series.zero(W)
    s2 = Series.zero(W)
    rsum = Series.zero(W)
    for n in range(ntop + 1):
        t = xy[n] * inv_poch(_NEG_Q, 2, n, W) * inv_poch(xq, 2, n, W)
        s1 = s1 + t.shifted(n * csh).truncated(W)
        k = xy[n] * inv_poch(_Q2, 4, n, W) * weighted_ratio_sum(x.neg(), _NEG_Q, 2, 2 * (n + 1), W)
        s2 = s2 + k.scaled(_sign(n)).shifted(n * csh).truncated(W)
        r = xy[n] * _thm23_alpha_first(x, n, W) * inv_poch(aq_X, 2, n, W) * inv_poch(aq_Y, 2, n, W)
        rsum = rsum + r.shifted(n * csh).truncated(W)
    lhs = (poch_inf(x.neg(), 2, W) * invert(poch_inf(_NEG_Q, 2, W))).scaled(_HALF) * s1
    lhs = lhs + (Series.one() - _mono(x)).scaled(_HALF) * s2
    return _fit([lhs.truncated(order), (pref * rsum).truncated(order)], order)


def _thm23_alpha_first(bspec, n, order):
    w = order if order == INF else order + n * (n + 1) + 4
    out = andrews_alpha(bspec, n, w).shifted(-n * (n + 1))
    return out.truncated(order)


def _thm23_alpha_second(bspec, n, order):
    w = order if order == INF else order + n * n + 2 * n + 4
    out = andrews_alpha(bspec, n, w).shifted(-n * n)
    out = out * poch(_NEG_QH, 2, 1) * _inv_factor(MonomialSpec(-1, None, 0, 2 * n + 1), 0, w)
    return out.truncated(order)


def _thm3_1_2(p, order, printed=False):
    x, M, L, ntop, W, csh, aq_X, aq_Y, xy, pref = _thm3_1_parts(p, order, 2)
    xq = x.times(_Q)
    xqh = x.times(_QH)
    s1 = Series.zero(W)
    s2 = Series.zero(W)
    rsum = Series.zero(W)
    for n in range(ntop + 1):
        t = xy[n] * inv_poch(_NEG_Q32, 2, n, W) * inv_poch(xq, 2, n, W)
        s1 = s1 + t.shifted(n * csh).truncated(W)
        if printed:
            k = xy[n] * poch(xqh, 2, n + 1) * inv_poch(_NEG_Q32, 2, n, W)
            k = k * inv_poch(_Q, 2, n, W) * inv_poch(xq, 2, n, W)
            k = k * weighted_ratio_sum(xqh.neg(), _NEG_QH, 2, 2 * (n + 1), W)
            s2 = s2 + k.scaled(_sign(n)).shifted(n * (csh + 1)).truncated(W)
        else:
            k = xy[n] * inv_poch(_NEG_QH, 2, n + 1, W) * inv_poch(_Q, 2, n, W)
            k = k * weighted_ratio_sum(xqh.neg(), _NEG_Q32, 2, 2 * (n + 1), W)
            s2 = s2 + k.scaled(_sign(n)).shifted(1 + n * (csh + 1)).truncated(W)
        r = xy[n] * _thm23_alpha_second(x, n, W) * inv_poch(aq_X, 2, n, W) * inv_poch(aq_Y, 2, n, W)
        rsum = rsum + r.shifted(n * csh).truncated(W)
    lhs = poch_inf(xqh.neg(), 2, W) * invert(poch_inf(_NEG_QH, 2, W)) * s1
    if printed:
        lhs = lhs + s2
    else:
        lhs = lhs + (Series.one() - _mono(x)) * s2
    # the (1 + q^(1/2))/(1 + q^(n+1/2)) weight already lives in the alpha
    rhs = pref * rsum
    return _fit([lhs.truncated(order), rhs.truncated(order)], order)


def _thm3_2_5(p, order):
    x = p["x"]
    W = order + 4
    xq = x.times(_Q)
    e1 = Series.zero(W)
    e2sum = Series.zero(W)
    e3sum = Series.zero(W)
    n = 0
    while 2 * n * (n + 1) < W:
        t = inv_poch(_NEG_Q, 2, n, W) * inv_poch(xq, 2, n, W)
        e1 = e1 + t.shifted(2 * n * (n + 1)).truncated(W)
        n += 1
    p1 = (poch_inf(x.neg(), 2, W) * invert(poch_inf(_NEG_Q, 2, W))).scaled(_HALF) * e1
    p2 = Series.zero(W)
    n = 0
    while 2 * n * (n + 1) < W:
        k = inv_poch(_Q2, 4, n, W) * weighted_ratio_sum(x.neg(), _NEG_Q, 2, 2 * (n + 1), W)
        p2 = p2 + k.scaled(_sign(n)).shifted(2 * n * (n + 1)).truncated(W)
        n += 1
    p2 = (Series.one() - _mono(x)).scaled(_HALF) * p2
    n = 0
    while 2 * n * n < W:  # term valuation >= n(n+1) + n(n+1) half-units
        e2sum = e2sum + andrews_alpha(x, n, W).shifted(n * (n + 1)).truncated(W)
        n += 1
    # prefactor (q^2; q)_inf, forced by the X,Y limit of the two-parameter
    # identity; the display's 1/(q)_inf belongs to the misprinted alpha
    # normalization (see asprinted_checks)
    e2 = invert(poch_inf(_Q2, 2, W)) * e2sum
    n = 0
    while n * (n + 1) < W:
        t = poch(_NEG_Q, 2, n) * inv_poch(xq, 2, n, W)
        e3sum = e3sum + t.shifted(n * (n + 1)).truncated(W)
        n += 1
    e3 = invert(poch_inf(_NEG_Q, 2, W)) * e3sum
    return _fit([(p1 + p2).truncated(order), e2.truncated(order), e3.truncated(order)], order)


def _thm3_2_6(p, order):
    W = order + 4
    l1 = Series.zero(W)
    n = 0
    while 2 * n * (n + 1) < W:
        l1 = l1 + inv_poch(_NEG_Q, 2, n, W).shifted(2 * n * (n + 1)).truncated(W)
        n += 1
    l1 = invert(poch_inf(_NEG_Q, 2, W)).scaled(_HALF) * l1
    l2 = Series.zero(W)
    n = 0
    while 2 * n < W:
        t = poch_inf(MonomialSpec(1, None, 0, 2 * n + 4), 4, W) * inv_poch(_NEG_Q, 2, n, W)
        l2 = l2 + t.shifted(2 * n).truncated(W)
        n += 1
    l2 = l2.scaled(_HALF)
    r = Series.zero(W)
    n = 0
    while n * (n + 1) < W:
        r = r + poch(_NEG_Q, 2, n).shifted(n * (n + 1)).truncated(W)
        n += 1
    r = invert(poch_inf(_NEG_Q, 2, W)) * r
    return _fit([(l1 + l2).truncated(order), r.truncated(order)], order)


def _thm3_2_7(p, order, printed=False):
    W = order + 4
    p1pref_num = MonomialSpec(-1 if printed else 1, None, 0, 2)
    p1 = Series.zero(W)
    n = 0
    while 4 * n * (n + 1) < W:
        p1 = p1 + inv_poch(_NEG_Q, 2, 2 * n + 1, W).shifted(4 * n * (n + 1)).truncated(W)
        n += 1
    p1 = (poch_inf(p1pref_num, 4, W) * invert(poch_inf(_NEG_Q2, 4, W))).scaled(_HALF) * p1
    p2 = Series.zero(W)
    num = MonomialSpec(-1 if printed else 1, None, 0, 2)
    n = 0
    while 4 * n * (n + 1) < W:
        k = inv_poch(MonomialSpec(1, None, 0, 8), 8, n, W)
        k = k * weighted_ratio_sum(num, _NEG_Q2, 4, 4 * (n + 1), W)
        p2 = p2 + k.scaled(_sign(n)).shifted(4 * n * (n + 1)).truncated(W)
        n += 1
    p2 = p2.scaled(_HALF)
    r = Series.zero(W)
    n = 0
    while 2 * n * (n + 1) < W:
        t = poch(_NEG_Q2, 4, n) * inv_poch(_NEG_Q, 4, n + 1, W)
        r = r + t.shifted(2 * n * (n + 1)).truncated(W)
        n += 1
    r = invert(poch_inf(_NEG_Q2, 4, W)) * r
    return _fit([(p1 + p2).truncated(order), r.truncated(order)], order)


def _thm3_2_8(p, order, printed=False):
    x = p["x"]
    W = order + 4
    xq = x.times(_Q)
    xqh = x.times(_QH)
    f1a = Series.zero(W)
    n = 0
    while 2 * n * (n + 1) < W:
        t = inv_poch(_NEG_QH, 2, n + 1, W) * inv_poch(xq, 2, n, W)
        f1a = f1a + t.shifted(2 * n * (n + 1)).truncated(W)
        n += 1
    f1a = poch_inf(xqh.neg(), 2, W) * invert(poch_inf(_NEG_QH, 2, W)) * f1a
    f1b = Series.zero(W)
    n = 0
    while 1 + n * (2 * n + 3) < W:
        if printed:
            t = poch(xqh, 2, n + 1) * inv_poch(_NEG_QH, 2, n + 1, W)
            t = t * inv_poch(_Q, 2, n, W) * inv_poch(xq, 2, n, W)
            t = t * weighted_ratio_sum(xqh.neg(), _NEG_QH, 2, 2 * (n + 1), W)
        else:
            t = inv_poch(_NEG_QH, 2, n + 1, W) * inv_poch(_Q, 2, n, W)
            t = t * weighted_ratio_sum(xqh.neg(), _NEG_Q32, 2, 2 * (n + 1), W)
        f1b = f1b + t.scaled(_sign(n)).shifted(1 + n * (2 * n + 3)).truncated(W)
        n += 1
    if not printed:
        f1b = (Series.one() - _mono(x)) * _inv_factor(_NEG_QH, 0, W) * f1b
    f2 = Series.zero(W)
    n = 0
    while 2 * n * n + n < W:  # valuation >= (n^2+2n) + n(n-1) half-units
        t = andrews_alpha(x, n, W) * _inv_factor(MonomialSpec(-1, None, 0, 2 * n + 1), 0, W)
        f2 = f2 + t.shifted(n * n + 2 * n).truncated(W)
        n += 1
    f2 = invert(poch_inf(_Q2, 2, W)) * f2
    f3 = Series.zero(W)
    n = 0
    while n * (n + 2) < W:
        t = poch(_NEG_QH, 2, n) * inv_poch(xq, 2, n, W)
        f3 = f3 + t.shifted(n * (n + 2)).truncated(W)
        n += 1
    f3 = invert(poch_inf(_NEG_QH, 2, W)) * f3
    return _fit([(f1a + f1b).truncated(order), f2.truncated(order), f3.truncated(order)], order)


def _thm3_2_9(p, order, printed=False):
    W = order + 4
    neg_q_odd = MonomialSpec(-1, None, 0, 2)   # -q with step q^2
    p1 = Series.zero(W)
    n = 0
    while 4 * n * (n + 1) < W:
        p1 = p1 + inv_poch(neg_q_odd, 4, n + 1, W).shifted(4 * n * (n + 1)).truncated(W)
        n += 1
    p1 = invert(poch_inf(neg_q_odd, 4, W)) * p1
    p2 = Series.zero(W)
    n = 0
    while 2 + 2 * n * (2 * n + 3) < W:
        den = MonomialSpec(-1, None, 0, 2 if printed else 6)
        t = inv_poch(neg_q_odd, 4, n + 1, W) * inv_poch(_Q2, 4, n, W)
        t = t * weighted_ratio_sum(_ZERO, den, 4, 4 * (n + 1), W)
        p2 = p2 + t.scaled(_sign(n)).shifted(2 + 2 * n * (2 * n + 3)).truncated(W)
        n += 1
    if not printed:
        p2 = _inv_factor(_NEG_Q, 0, W) * p2
    r = Series.zero(W)
    n = 0
    while 2 * n * (n + 2) < W:
        r = r + poch(neg_q_odd, 4, n).shifted(2 * n * (n + 2)).truncated(W)
        n += 1
    r = invert(poch_inf(neg_q_odd, 4, W)) * r
    return _fit([(p1 + p2).truncated(order), r.truncated(order)], order)


def _thm3_2_10(p, order, printed=False):
    W = order + 4
    p1 = Series.zero(W)
    n = 0
    while 4 * n * (n + 1) < W:
        p1 = p1 + inv_poch(_NEG_Q, 2, 2 * n + 1, W).shifted(4 * n * (n + 1)).truncated(W)
        n += 1
    p1 = poch_inf(MonomialSpec(1, None, 0, 2), 4, W) * invert(
        poch_inf(MonomialSpec(-1, None, 0, 2), 4, W)) * p1
    p2 = Series.zero(W)
    n = 0
    while 2 + 2 * n * (2 * n + 3) < W:
        num = MonomialSpec(1, None, 0, 2)
        den = MonomialSpec(-1, None, 0, 2 if printed else 6)
        if printed:
            t = inv_poch(MonomialSpec(1, None, 0, 8), 8, n, W)
        else:
            t = inv_poch(MonomialSpec(-1, None, 0, 2), 4, n + 1, W) * inv_poch(_Q2, 4, n, W)
        t = t * weighted_ratio_sum(num, den, 4, 4 * (n + 1), W)
        p2 = p2 + t.scaled(_sign(n)).shifted(2 + 2 * n * (2 * n + 3)).truncated(W)
        n += 1
    if not printed:
        p2 = _inv_factor(_NEG_Q, 0, W).scaled(2) * p2
    r = Series.zero(W)
    n = 0
    while 2 * n * (n + 2) < W:
        t = poch(MonomialSpec(-1, None, 0, 2), 4, n) * inv_poch(_NEG_Q2, 4, n, W)
        r = r + t.shifted(2 * n * (n + 2)).truncated(W)
        n += 1
    r = invert(poch_inf(MonomialSpec(-1, None, 0, 2), 4, W)) * r
    return _fit([(p1 + p2).truncated(order), r.truncated(order)], order)


def _thm3_2_11(p, order, printed=False):
    W = order + 4
    neg_q_odd = MonomialSpec(-1, None, 0, 2)
    p1 = Series.zero(W)
    n = 0
    while 4 * n * (n + 1) < W:
        t = inv_poch(neg_q_odd, 4, n + 1, W)
        p1 = p1 + (t * t).shifted(4 * n * (n + 1)).truncated(W)
        n += 1
    p1num = MonomialSpec(-1 if printed else 1, None, 0, 4)
    p1 = poch_inf(p1num, 4, W) * invert(poch_inf(neg_q_odd, 4, W)) * p1
    p2 = Series.zero(W)
    n = 0
    while 2 + 2 * n * (2 * n + 3) < W:
        inv2 = inv_poch(neg_q_odd, 4, n + 1, W)
        if printed:
            t = inv2 * inv2 * inv_poch(_Q2, 4, n, W) * poch(_NEG_Q2, 4, n + 1)
            t = t * weighted_ratio_sum(_NEG_Q2, neg_q_odd, 4, 4 * (n + 1), W)
        else:
            # the (xq)_n slot telescopes away in the corrected form
            t = inv2 * inv_poch(_Q2, 4, n, W)
            t = t * weighted_ratio_sum(_Q2, MonomialSpec(-1, None, 0, 6), 4, 4 * (n + 1), W)
        p2 = p2 + t.scaled(_sign(n)).shifted(2 + 2 * n * (2 * n + 3)).truncated(W)
        n += 1
    if not printed:
        p2 = _inv_factor(_NEG_Q, 0, W) * p2
    r = Series.zero(W)
    n = 0
    while 2 * n * (n + 2) < W:
        t = _inv_factor(MonomialSpec(-1, None, 0, 4 * n + 2), 0, W)
        r = r + t.shifted(2 * n * (n + 2)).truncated(W)
        n += 1
    r = invert(poch_inf(neg_q_odd, 4, W)) * r
    return _fit([(p1 + p2).truncated(order), r.truncated(order)], order)


def _rem3_12(p, order):
    W = order + 4
    neg_one = MonomialSpec(-1)
    inner = Series.zero(W)  # sum_{k<=n} (-1;q)_k (-1)^k / (q)_k
    lhs = Series.zero(W)
    n = 0
    while 2 * n * (n + 1) < W:
        inner = inner + (poch(neg_one, 2, n) * inv_poch(_Q, 2, n, W)).scaled(_sign(n)).truncated(W)
        t = inv_poch(_NEG_Q, 2, n, W) * inv_poch(_NEG_Q, 2, n, W) * inner
        lhs = lhs + t.shifted(2 * n * (n + 1)).truncated(W)
        n += 1
    rhs = poch_inf(_Q2, 4, W)
    return _fit([lhs.truncated(order), rhs.truncated(order)], order)


def _rem3_13(p, order):
    W = order + 6
    x = MonomialSpec(-1, None, 0, -1)  # -q^(-1/2)
    inner = Series.zero(W)
    lhs = Series.zero(W)
    n = 0
    while 2 * n * (n + 1) - 1 < W:
        inner = inner + (poch(x, 2, n) * inv_poch(_Q, 2, n, W)).scaled(_sign(n)).truncated(W)
        t = inv_poch(_NEG_QH, 2, n + 1, W) * inv_poch(_NEG_QH, 2, n, W) * inner
        lhs = lhs + t.shifted(2 * n * (n + 1)).truncated(W)
        n += 1
    prod = poch_inf(_Q2, 4, W) * invert(poch_inf(MonomialSpec(1, None, 0, 2), 4, W))
    rhs = (prod - Series.one(W)).shifted(-2) * invert(poch_inf(_NEG_QH, 2, W))
    return _fit([lhs.truncated(order), rhs.truncated(order)], order)


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IdentityCase:
    id: str
    claim: str
    param_domain: dict
    default_order: int | None
    build: Callable
    exact: bool = False
    diagnostic: bool = False


def _domain_text(value) -> str:
    if value == "symbolic":
        return "symbolic"
    if isinstance(value, MonomialSpec):
        return value.text()
    return str(value)


_NEG_X_OVER_Q = MonomialSpec(-1, "x", 1, -2)
_NEG_X_OVER_QH = MonomialSpec(-1, "x", 1, -1)

REGISTRY: dict[str, IdentityCase] = {}


def _register(case: IdentityCase):
    if case.id in REGISTRY:
        raise ValueError(f"duplicate identity id {case.id}")
    REGISTRY[case.id] = case


_register(IdentityCase(
    "eq1.1",
    "q-binomial theorem: sum_n (a)_n z^n/(q)_n = (az)_inf/(z)_inf",
    {"a": (_ZERO, _Q, _Q2, _NEG_Q), "z": (_Q, _Q2, _NEG_Q2)},
    80, _eq1_1))
_register(IdentityCase(
    "eq1.2",
    "Fine-type transformation: (z)_inf sum (aq)_n z^n = "
    "sum (-z)^n q^(n(n+1)/2) sum_k a^(n-k)/(q)_k",
    {"a": ("symbolic", _Q, _NEG_Q, _ZERO), "z": (_Q, _Q2, _NEG_Q2)},
    60, _eq1_2))
_register(IdentityCase(
    "eq1.3",
    "alternating triangular-weighted partial sums of 1/(q)_k equal (q)_inf^2",
    {}, 120, _eq1_3))
_register(IdentityCase(
    "eq1.5",
    "signed partition-count series at q^(24n+2) equals the indefinite double sum",
    {}, 1200, _eq1_5))
_register(IdentityCase(
    "lemma2.2",
    "finite-to-infinite summation lemma (denominator-cleared form)",
    {"a": ("symbolic", _NEG_X_OVER_Q, _NEG_X_OVER_QH, _Q2),
     "b": (MonomialSpec(-1), _NEG_QH, _Q),
     "N": tuple(range(4))},
    60, _lemma2_2))
_register(IdentityCase(
    "eq3.3",
    "lemma specialization b=-1, a=-x/q: partial sums of (x)_n(-1)^n/(q)_n",
    {"x": ("symbolic",), "N": tuple(range(13))}, 60, _eq3_3))
_register(IdentityCase(
    "eq3.4",
    "lemma specialization b=-q^(1/2), a=-x/q^(1/2) "
    "(corrected display; see asprinted_checks)",
    {"x": ("symbolic",), "N": tuple(range(13))}, 60, _eq3_4))
_register(IdentityCase(
    "eq2.10",
    "Fine's identity: (t)_inf sum (aq)_n/(bq)_n t^n = "
    "sum (-at)^n q^(n(n+1)/2)/(bq)_n sum_k (b)_k a^(-k)/(q)_k",
    {"a": (_Q, _NEG_Q, _ZERO), "b": (MonomialSpec(-1), _Q, _NEG_QH),
     "t": (_Q, _Q2, _NEG_Q)},
    60, _eq2_10))
_register(IdentityCase(
    "eq2.11",
    "coefficient extraction of Fine's identity: exact per-N polynomial identity",
    {"a": (MonomialSpec(-1), MonomialSpec(-1, None, 0, -1), _Q),
     "b": ("symbolic",), "N": tuple(range(13))},
    None, _eq2_11, exact=True))
_register(IdentityCase(
    "thm3.1-3.1",
    "first double-sum identity under X=q^-M, Y=q^-L",
    {"x": ("symbolic",), "M": (1, 2, 3), "L": (1, 2, 3)}, 50, _thm3_1_1))
_register(IdentityCase(
    "thm3.1-3.2",
    "second double-sum identity under X=q^-M, Y=q^-L "
    "(second piece corrected; see asprinted_checks)",
    {"x": ("symbolic",), "M": (1, 2, 3), "L": (1, 2, 3)}, 50, _thm3_1_2))
_register(IdentityCase(
    "thm3.2-3.5",
    "X,Y->infinity form of the first double-sum identity (three expressions)",
    {"x": ("symbolic", _ZERO, _NEG_QH)}, 60, _thm3_2_5))
_register(IdentityCase(
    "thm3.2-3.6",
    "x=0 case of the first limit identity",
    {}, 60, _thm3_2_6))
_register(IdentityCase(
    "thm3.2-3.7",
    "x=-q^(1/2) case of the first limit identity, base q^2 "
    "(two sign slots corrected; see asprinted_checks)",
    {}, 60, _thm3_2_7))
_register(IdentityCase(
    "thm3.2-3.8",
    "X,Y->infinity form of the second double-sum identity "
    "(second piece corrected; see asprinted_checks)",
    {"x": ("symbolic", _ZERO, _NEG_QH, MonomialSpec(-1))}, 60, _thm3_2_8))
_register(IdentityCase(
    "thm3.2-3.9",
    "x=0 case of the second limit identity, base q^2 "
    "(second piece corrected; see asprinted_checks)",
    {}, 60, _thm3_2_9))
_register(IdentityCase(
    "thm3.2-3.10",
    "x=-1 case of the second limit identity, base q^2 "
    "(second piece corrected; see asprinted_checks)",
    {}, 60, _thm3_2_10))
_register(IdentityCase(
    "thm3.2-3.11",
    "x=-q^(1/2) case of the second limit identity, base q^2 "
    "(prefactor and second piece corrected; see asprinted_checks)",
    {}, 60, _thm3_2_11))
_register(IdentityCase(
    "rem3.12-modular",
    "remark check: the x=-1 double sum equals (q^2;q^2)_inf",
    {}, 80, _rem3_12, diagnostic=True))
_register(IdentityCase(
    "rem3.13-modular",
    "remark check: the x=-q^(-1/2) double sum equals "
    "q^-1((q^2;q^2)_inf/(q;q^2)_inf - 1)/(-q^(1/2))_inf",
    {}, 80, _rem3_13, diagnostic=True))


def list_identities() -> list[IdentityCase]:
    return list(REGISTRY.values())


def _resolve_binding(case: IdentityCase, params: dict) -> dict:
    binding = {}
    for name, domain in case.param_domain.items():
        if name not in params:
            raise BindingOutOfDomain(f"{case.id}: missing parameter {name!r}")
        value = params[name]
        if value not in domain:
            allowed = ", ".join(_domain_text(v) for v in domain)
            raise BindingOutOfDomain(
                f"{case.id}: {name}={_domain_text(value)} not in domain {{{allowed}}}")
        if value == "symbolic":
            value = MonomialSpec(1, name, 1, 0)
        binding[name] = value
    extra = set(params) - set(case.param_domain)
    if extra:
        raise BindingOutOfDomain(f"{case.id}: unknown parameters {sorted(extra)}")
    return binding


def iter_bindings(case: IdentityCase):
    """Cartesian product over the declared domain, deterministic order."""
    names = list(case.param_domain)
    if not names:
        yield {}
        return

    def rec(i, acc):
        if i == len(names):
            yield dict(acc)
            return
        for v in case.param_domain[names[i]]:
            acc[names[i]] = v
            yield from rec(i + 1, acc)

    yield from rec(0, {})


def check_identity(id: str, params: dict | None = None, order=None) -> VerificationReport:
    case = REGISTRY.get(id)
    if case is None:
        raise UnknownIdentity(id)
    raw = dict(params or {})
    binding = _resolve_binding(case, raw)
    if case.exact:
        eff_order = None
    else:
        eff_order = case.default_order if order in (None, "exact") else order
        if eff_order < 1:
            raise BindingOutOfDomain("order must be at least 1 half-unit")
    return run_sides(
        case.id, case.build, binding, eff_order,
        params_text={k: _domain_text(v) for k, v in raw.items()},
    )


def run_sides(check_id: str, build: Callable, binding: dict, order,
              params_text: dict | None = None) -> VerificationReport:
    """Build sides at the given order (None = exact) and compare adjacent pairs."""
    start = time.perf_counter()
    params_text = params_text if params_text is not None else {
        k: _domain_text(v) for k, v in binding.items()}
    status, mismatch, detail = "pass", None, None
    try:
        sides = build(binding, INF if order is None else order)
        cmp_order = INF if order is None else order
        for i in range(len(sides) - 1):
            cmp = equal_up_to(sides[i], sides[i + 1], cmp_order)
            if not cmp.ok:
                status = "fail"
                mismatch = Mismatch(cmp.exponent, cmp.lhs.text(), cmp.rhs.text(),
                                    sides=f"{i + 1}/{i + 2}")
                break
    except (InvertNonUnit, DivergentProduct, OrderExhausted, ZeroDivisionError,
            AssertionError) as exc:
        status, detail = "error", f"{type(exc).__name__}: {exc}"
    return VerificationReport(
        id=check_id,
        params=params_text,
        order_half_units=order,
        status=status,
        first_mismatch=mismatch,
        elapsed_ms=(time.perf_counter() - start) * 1000,
        detail=detail,
    )


def lemma_2_2_check(a: MonomialSpec, b: MonomialSpec, N: int, order: int) -> VerificationReport:
    """Direct lemma check at arbitrary monomial (a, b), outside the registry domain."""
    return run_sides(
        "lemma2.2", _lemma2_2, {"a": a, "b": b, "N": N}, order,
        params_text={"a": a.text(), "b": b.text(), "N": str(N)},
    )


# ---------------------------------------------------------------------------
# specialization coherence and as-printed diagnostics
# ---------------------------------------------------------------------------


def _coherence(check_id, src_id, src_binding, src_sides_idx, dst_id, dst_sides_idx,
               order, factor_one_plus_q: bool):
    """rescale(q->q^2) of selected sides of a specialization against the
    printed base-q^2 identity, with an optional (1+q) normalization (the
    telescoping (-q; q^2)_{n+1} = (1+q)(-q^3; q^2)_n)."""
    start = time.perf_counter()
    status, mismatch, detail = "pass", None, None
    try:
        src = REGISTRY[src_id].build(src_binding, order)
        dst = REGISTRY[dst_id].build({}, 2 * order)
        for i, j in zip(src_sides_idx, dst_sides_idx):
            lifted = rescale(src[i], 2)
            target = dst[j]
            if factor_one_plus_q:
                target = (poch(_NEG_Q, 2, 1) * target).truncated(2 * order)
            cmp = equal_up_to(lifted, target, 2 * order)
            if not cmp.ok:
                status = "fail"
                mismatch = Mismatch(cmp.exponent, cmp.lhs.text(), cmp.rhs.text(),
                                    sides="specialized/printed")
                break
    except (InvertNonUnit, DivergentProduct, OrderExhausted, ZeroDivisionError,
            AssertionError) as exc:
        status, detail = "error", f"{type(exc).__name__}: {exc}"
    return VerificationReport(
        id=check_id,
        params={},
        order_half_units=2 * order,
        status=status,
        first_mismatch=mismatch,
        elapsed_ms=(time.perf_counter() - start) * 1000,
        detail=detail,
    )


def coherence_checks(order: int = 60) -> list[VerificationReport]:
    """The specialization-coherence suite: substituting x into the limit
    identities reproduces the printed specialized displays."""
    out = []

    # x = 0 of the first limit identity: sides match the printed display
    # directly (no rescaling, no factor).
    def _same_base(check_id, src_id, x, dst_id, pairs):
        start = time.perf_counter()
        status, mismatch, detail = "pass", None, None
        try:
            src = REGISTRY[src_id].build({"x": x}, order)
            dst = REGISTRY[dst_id].build({}, order)
            for i, j in pairs:
                cmp = equal_up_to(src[i], dst[j], order)
                if not cmp.ok:
                    status = "fail"
                    mismatch = Mismatch(cmp.exponent, cmp.lhs.text(), cmp.rhs.text(),
                                        sides="specialized/printed")
                    break
        except (InvertNonUnit, DivergentProduct, OrderExhausted, ZeroDivisionError,
                AssertionError) as exc:
            status, detail = "error", f"{type(exc).__name__}: {exc}"
        return VerificationReport(
            id=check_id, params={}, order_half_units=order, status=status,
            first_mismatch=mismatch,
            elapsed_ms=(time.perf_counter() - start) * 1000, detail=detail)

    out.append(_same_base("coherence:thm3.2-3.5@x=0~3.6", "thm3.2-3.5", _ZERO,
                          "thm3.2-3.6", [(0, 0), (2, 1)]))
    out.append(_coherence("coherence:thm3.2-3.5@x=-q^{1/2}~3.7", "thm3.2-3.5",
                          {"x": _NEG_QH}, (0, 2), "thm3.2-3.7", (0, 1),
                          order // 2, factor_one_plus_q=True))
    out.append(_coherence("coherence:thm3.2-3.8@x=0~3.9", "thm3.2-3.8",
                          {"x": _ZERO}, (0, 2), "thm3.2-3.9", (0, 1),
                          order // 2, factor_one_plus_q=False))
    out.append(_coherence("coherence:thm3.2-3.8@x=-q^{1/2}~3.11", "thm3.2-3.8",
                          {"x": _NEG_QH}, (0, 2), "thm3.2-3.11", (0, 1),
                          order // 2, factor_one_plus_q=True))
    out.append(_coherence("coherence:thm3.2-3.8@x=-1~3.10", "thm3.2-3.8",
                          {"x": MonomialSpec(-1)}, (0, 2), "thm3.2-3.10", (0, 1),
                          order // 2, factor_one_plus_q=False))
    return out


def asprinted_checks(order: int = 40) -> list[VerificationReport]:
    """Diagnostic re-evaluation of the displays exactly as printed in the
    source text.  These are expected to FAIL (each report pinpoints the
    first bad coefficient); the registered identities use the corrected
    forms derived from the lemma/pair route."""
    xsym = MonomialSpec(1, "x", 1, 0)
    checks = [
        ("asprinted:eq3.4", _eq3_4_asprinted, {"x": xsym, "N": 2}),
        ("asprinted:thm3.1-3.2", lambda b, o: _thm3_1_2(b, o, printed=True),
         {"x": xsym, "M": 1, "L": 1}),
        ("asprinted:thm3.2-3.7", lambda b, o: _thm3_2_7(b, o, printed=True), {}),
        ("asprinted:thm3.2-3.8", lambda b, o: _thm3_2_8(b, o, printed=True), {"x": xsym}),
        ("asprinted:thm3.2-3.9", lambda b, o: _thm3_2_9(b, o, printed=True), {}),
        ("asprinted:thm3.2-3.10", lambda b, o: _thm3_2_10(b, o, printed=True), {}),
        ("asprinted:thm3.2-3.11", lambda b, o: _thm3_2_11(b, o, printed=True), {}),
    ]
    return [run_sides(cid, build, binding, order) for cid, build, binding in checks]

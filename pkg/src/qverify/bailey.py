"""Bailey pairs as first-class values.

A pair is two generators (alpha_n, beta_n) of series relative to a base
monomial a; the defining relation

    beta_n = sum_{0<=j<=n} alpha_j / ((q)_{n-j} (aq)_{n+j})

is the oracle every constructed pair is checked against.  The module
provides the unit pair, the one-parameter pair with beta_n = 1/(bq)_n,
the two double-sum pairs built from it, and the two quadratic
change-of-base transforms.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from .coeffring import Coefficient
from .qseries import _inv_factor, inv_poch, poch, weighted_ratio_sum
from .report import Mismatch, VerificationReport
from .series import (
    INF,
    InvertNonUnit,
    MonomialSpec,
    Series,
    equal_up_to,
    invert,
    make_monomial,
)

_Q = MonomialSpec(1, None, 0, 2)
_ONE = MonomialSpec(1)


def _require_order(s: Series, order, what: str) -> Series:
    if s.order < order:
        raise AssertionError(f"{what} fell short of order {order} (got {s.order})")
    return s.truncated(order)


@dataclass
class BaileyPair:
    """name + base + memoizing generators for alpha_n and beta_n."""

    name: str
    base_a: MonomialSpec
    _alpha: Callable[[int, object], Series]
    _beta: Callable[[int, object], Series]
    _cache: dict = field(default_factory=dict, repr=False)

    def alpha(self, n: int, order) -> Series:
        key = ("a", n, order)
        out = self._cache.get(key)
        if out is None:
            out = self._alpha(n, order)
            self._cache[key] = out
        return out

    def beta(self, n: int, order) -> Series:
        key = ("b", n, order)
        out = self._cache.get(key)
        if out is None:
            out = self._beta(n, order)
            self._cache[key] = out
        return out


def resolve_b(b) -> MonomialSpec:
    """Accept a monomial or the string 'symbolic' (ring parameter b)."""
    if b == "symbolic":
        return MonomialSpec(1, "b", 1, 0)
    if isinstance(b, MonomialSpec):
        return b
    raise TypeError(f"expected MonomialSpec or 'symbolic', got {b!r}")


# -- the defining relation ----------------------------------------------


def beta_from_alpha(alpha: Callable[[int, object], Series], base_a: MonomialSpec,
                    n: int, order) -> Series:
    """Right side of the defining relation, evaluated exactly to order."""
    aq = base_a.times(_Q)
    total = Series.zero(INF)
    for j in range(n + 1):
        w = order + 4 * j + 8  # alpha_j may dip a few half-units negative
        term = alpha(j, w) * inv_poch(_Q, 2, n - j, w) * inv_poch(aq, 2, n + j, w)
        total = total + term
    return _require_order(total, order, f"beta_from_alpha(n={n})")


def verify_pair(pair: BaileyPair, n_max: int, order) -> VerificationReport:
    """Check beta_n against the defining relation for every n <= n_max."""
    start = time.perf_counter()
    status, mismatch, detail = "pass", None, None
    try:
        for n in range(n_max + 1):
            lhs = pair.beta(n, order)
            rhs = beta_from_alpha(pair.alpha, pair.base_a, n, order)
            cmp = equal_up_to(lhs, rhs, order)
            if not cmp.ok:
                status = "fail"
                mismatch = Mismatch(cmp.exponent, cmp.lhs.text(), cmp.rhs.text(),
                                    sides="beta/defining-relation")
                detail = f"first offending index n = {n}"
                break
    except (InvertNonUnit, ValueError, ZeroDivisionError) as exc:
        status, detail = "error", f"{type(exc).__name__}: {exc}"
    return VerificationReport(
        id=f"pair:{pair.name}",
        params={"n_max": n_max},
        order_half_units=order,
        status=status,
        first_mismatch=mismatch,
        elapsed_ms=(time.perf_counter() - start) * 1000,
        detail=detail,
    )


# -- concrete pairs -------------------------------------------------------


def unit_pair() -> BaileyPair:
    """alpha_0 = 1, alpha_n = 0; beta_n = 1/((q)_n (q^2)_n); base q."""

    def alpha(n, order):
        return Series.one(order) if n == 0 else Series.zero(order)

    def beta(n, order):
        return inv_poch(_Q, 2, n, order) * inv_poch(MonomialSpec(1, None, 0, 4), 2, n, order)

    return BaileyPair("unit", _Q, alpha, beta)


def andrews_alpha(b: MonomialSpec, n: int, order) -> Series:
    """A_n relative to (q, q) with free parameter b, in the
    denominator-cleared form (no negative powers of b):

        (-1)^n (1-q^(2n+1)) q^(n(3n+1)/2) / ((1-q)(bq)_n) *
        [ prod_{k=1..n} (b-q^k)
          + sum_{j=1..n} (q)_{j-1} (1-q^(2j)) (b)_j q^(-j^2)
                         prod_{k=j+1..n} (b-q^k) / (q)_j ]

    The clearing key is b^n (q/b)_n = prod_{k=1..n}(b - q^k), so this is
    the literal one-parameter alpha at base-parameter 1.  The source
    display prints the quadratic weight as a^n q^(n(3n-1)/2); the
    defining relation forces (aq)^n q^(n(3n-1)/2) (checked at n = 1
    against beta_1 = 1/(bq)_1 by hand), hence n(3n+1)/2 here at a = 1.
    """
    W = order if order == INF else order + 4
    # suffix[j] = prod_{k=j+1..n} (b - q^k), exact
    suffix = [Series.one()] * (n + 1)
    for j in range(n - 1, -1, -1):
        factor = make_monomial(b, INF) - make_monomial(MonomialSpec(1, None, 0, 2 * (j + 1)), INF)
        suffix[j] = factor * suffix[j + 1]
    bracket = suffix[0]
    for j in range(1, n + 1):
        base = poch(_Q, 2, j - 1) * poch(b, 2, j)
        t = base - base.shifted(4 * j)  # * (1 - q^(2j))
        t = t * suffix[j] * inv_poch(_Q, 2, j, W + 2 * j * j)
        bracket = bracket + t.shifted(-2 * j * j)
    sign = -1 if n % 2 else 1
    pref = (Series.one() - make_monomial(MonomialSpec(1, None, 0, 2 * (2 * n + 1)), INF)).scaled(sign)
    pref = pref * _inv_factor(_Q, 0, W) * inv_poch(b.times(_Q), 2, n, W)
    out = (pref * bracket).shifted(n * (3 * n + 1))
    return _require_order(out, order, f"andrews_alpha(n={n})")


def andrews_alpha_literal(a: MonomialSpec, b: MonomialSpec, n: int, order) -> Series:
    """A_n relative to (aq, q) straight from its printed shape; needs b to
    be an invertible monomial and every displayed denominator to be a
    unit, so it only exists for some (a, b, n)."""
    W = order if order == INF else order + 4 * n * n + 8
    aq = a.times(_Q)
    binv = b.inverse()
    # prefactor (-1)^n (1 - a q^(2n+1)) a^n q^(n(3n-1)/2) b^n (aq/b)_n / ((1-aq)(bq)_n)
    sign = -1 if n % 2 else 1
    pref = Series.one() - make_monomial(a.times(MonomialSpec(1, None, 0, 2 * (2 * n + 1))), INF)
    pref = pref.scaled(sign)
    pref = pref * make_monomial(a.pow(n).times(b.pow(n)).times(MonomialSpec(1, None, 0, n * (3 * n + 1))), INF)
    pref = pref * poch(aq.times(binv), 2, n)
    pref = pref * _inv_factor(aq, 0, W)
    pref = pref * invert(poch(b.times(_Q), 2, n), order=W)
    bracket = Series.one(INF)
    for j in range(1, n + 1):
        t = poch(aq, 2, j - 1)
        t = t - t * make_monomial(a.times(MonomialSpec(1, None, 0, 4 * j)), INF)  # *(1 - a q^(2j))
        t = t * poch(b, 2, j)
        t = t * make_monomial(a.pow(-j).times(binv.pow(j)).times(MonomialSpec(1, None, 0, -2 * j * j)), INF)
        t = t * invert(poch(_Q, 2, j), order=W) * invert(poch(aq.times(binv), 2, j), order=W)
        bracket = bracket + t
    return _require_order(pref * bracket, order, f"andrews_alpha_literal(n={n})")


def andrews_pair(a: MonomialSpec = _ONE, b="symbolic") -> BaileyPair:
    """The one-parameter pair: alpha = A_n(aq, q, b), beta = 1/(bq)_n,
    relative to (aq, q).  Only a = 1 supports symbolic b (the cleared
    form); monomial a goes through the literal shape."""
    bspec = resolve_b(b)
    if a.param is not None or (a != _ONE and bspec.param is not None):
        raise ValueError("base parameter must be 1 (or a pure q-power with monomial b)")
    name = f"andrews({a.text()},{'symbolic' if bspec.param else bspec.text()})"

    if a == _ONE:
        def alpha(n, order):
            return andrews_alpha(bspec, n, order)
    else:
        def alpha(n, order):
            return andrews_alpha_literal(a, bspec, n, order)

    def beta(n, order):
        return inv_poch(bspec.times(_Q), 2, n, order)

    return BaileyPair(name, a.times(_Q), alpha, beta)


def thm23_pair(variant: str, b="symbolic") -> BaileyPair:
    """The two double-sum pairs relative to (q, q) built from A_n.

    first:  alpha_n = q^(-n(n+1)/2) A_n,
            beta_n = (1/((-q)_n (bq)_n)) sum_k (b)_k (-1)^k / (q)_k
    second: alpha_n = (1+q^(1/2))/(1+q^(n+1/2)) q^(-n^2/2) A_n,
            beta_n = (1/((-q^(3/2))_n (bq)_n)) sum_k (b)_k (-q^(1/2))^k / (q)_k
    """
    if variant not in ("first", "second"):
        raise ValueError("variant must be 'first' or 'second'")
    bspec = resolve_b(b)
    name = f"thm2.3-{variant}({'symbolic' if bspec.param else bspec.text()})"
    neg_q = MonomialSpec(-1, None, 0, 2)
    neg_q32 = MonomialSpec(-1, None, 0, 3)

    def inner_sum(n, order, half_weighted):
        total = Series.zero(order)
        for k in range(n + 1):
            t = poch(bspec, 2, k) * inv_poch(_Q, 2, k, order)
            if half_weighted:
                t = t.shifted(k).scaled(-1 if k % 2 else 1)  # (-q^(1/2))^k
            else:
                t = t.scaled(-1 if k % 2 else 1)  # (-1)^k
            total = total + t.truncated(order)
        return total

    if variant == "first":
        def alpha(n, order):
            w = order if order == INF else order + n * (n + 1) + 4
            return _require_order(
                andrews_alpha(bspec, n, w).shifted(-n * (n + 1)), order, "thm2.3-first alpha")

        def beta(n, order):
            return (inv_poch(neg_q, 2, n, order)
                    * inv_poch(bspec.times(_Q), 2, n, order)
                    * inner_sum(n, order, half_weighted=False)).truncated(order)
    else:
        def alpha(n, order):
            w = order if order == INF else order + n * n + 2 * n + 4
            out = andrews_alpha(bspec, n, w).shifted(-n * n)
            out = out * poch(MonomialSpec(-1, None, 0, 1), 2, 1)          # (1 + q^(1/2))
            out = out * _inv_factor(MonomialSpec(-1, None, 0, 2 * n + 1), 0, w)  # 1/(1+q^(n+1/2))
            return _require_order(out, order, "thm2.3-second alpha")

        def beta(n, order):
            return (inv_poch(neg_q32, 2, n, order)
                    * inv_poch(bspec.times(_Q), 2, n, order)
                    * inner_sum(n, order, half_weighted=True)).truncated(order)

    return BaileyPair(name, _Q, alpha, beta)


# -- change-of-base transforms -------------------------------------------


def _sqrt_qpower(m: MonomialSpec, what: str) -> int:
    if m.param is not None or m.scalar != 1 or m.qpower % 2:
        raise ValueError(f"{what}: base {m.text()} has no monomial square root")
    return m.qpower // 2


def transform_s2(pair: BaileyPair) -> BaileyPair:
    """alpha'_n = a^(n/2) q^(n^2/2) alpha_n;
    beta'_n = (1/(-sqrt(aq))_n) sum_k [(-sqrt(aq))_k / (q)_{n-k}]
              a^(k/2) q^(k^2/2) beta_k."""
    half_a = _sqrt_qpower(pair.base_a, "s2 transform")
    root_aq = MonomialSpec(-1, None, 0, half_a + 1)  # -sqrt(a q)

    def alpha(n, order):
        sh = n * half_a + n * n
        return pair.alpha(n, order).shifted(sh).truncated(order)

    def beta(n, order):
        total = Series.zero(order)
        for k in range(n + 1):
            sh = k * half_a + k * k
            t = poch(root_aq, 2, k) * inv_poch(_Q, 2, n - k, order)
            t = t * pair.beta(k, order)
            total = total + t.shifted(sh).truncated(order)
        return (inv_poch(root_aq, 2, n, order) * total).truncated(order)

    return BaileyPair(f"s2({pair.name})", pair.base_a, alpha, beta)


def transform_s5(pair: BaileyPair) -> BaileyPair:
    """alpha'_n = [(-sqrt(a) q)_n / (-sqrt(a))_n] a^(n/2) q^((n^2-n)/2) alpha_n;
    beta'_n = (1/(-sqrt(a))_n) sum_k [(-sqrt(a) q)_k / (q)_{n-k}]
              a^(k/2) q^((k^2-k)/2) beta_k."""
    half_a = _sqrt_qpower(pair.base_a, "s5 transform")
    root_a = MonomialSpec(-1, None, 0, half_a)        # -sqrt(a)
    root_a_q = MonomialSpec(-1, None, 0, half_a + 2)  # -sqrt(a) q

    def alpha(n, order):
        sh = n * half_a + n * n - n  # nonnegative: half_a >= 1
        if order == INF:
            raise ValueError("s5 alpha needs a finite order (it divides by a product)")
        out = pair.alpha(n, order) * poch(root_a_q, 2, n) * inv_poch(root_a, 2, n, order)
        return out.shifted(sh).truncated(order)

    def beta(n, order):
        total = Series.zero(order)
        for k in range(n + 1):
            sh = k * half_a + k * k - k
            t = poch(root_a_q, 2, k) * inv_poch(_Q, 2, n - k, order)
            t = t * pair.beta(k, order)
            total = total + t.shifted(sh).truncated(order)
        return (inv_poch(root_a, 2, n, order) * total).truncated(order)

    return BaileyPair(f"s5({pair.name})", pair.base_a, alpha, beta)


# -- the two-parameter series identity ------------------------------------


def bailey_lemma_check(pair: BaileyPair, M: int, L: int, order) -> VerificationReport:
    """Check the weighted-sum identity for the pair under X = q^-M, Y = q^-L:

        sum_n (X)_n (Y)_n (aq/XY)^n beta_n
          = [(aq/X)_inf (aq/Y)_inf / ((aq)_inf (aq/XY)_inf)]
            * sum_n (X)_n (Y)_n (aq/XY)^n alpha_n / ((aq/X)_n (aq/Y)_n)

    Both sums vanish beyond n = min(M, L) because (q^-M)_n has the factor
    1 - q^0 once n exceeds M.
    """
    if M < 1 or L < 1:
        raise ValueError("M and L must be positive")
    start = time.perf_counter()
    status, mismatch, detail = "pass", None, None
    try:
        a = pair.base_a
        aq = a.times(_Q)
        X = MonomialSpec(1, None, 0, -2 * M)
        Y = MonomialSpec(1, None, 0, -2 * L)
        c_shift = aq.qpower + 2 * (M + L)  # q-power of aq/XY in half-units
        n_top = min(M, L)
        W = order + 4 * n_top * (M + L) + 8
        aq_X = MonomialSpec(1, None, 0, aq.qpower + 2 * M)
        aq_Y = MonomialSpec(1, None, 0, aq.qpower + 2 * L)

        lhs = Series.zero(INF)
        rhs_sum = Series.zero(INF)
        for n in range(n_top + 1):
            xy = poch(X, 2, n) * poch(Y, 2, n)
            lhs = lhs + (xy * pair.beta(n, W)).shifted(n * c_shift)
            t = xy * pair.alpha(n, W) * inv_poch(aq_X, 2, n, W) * inv_poch(aq_Y, 2, n, W)
            rhs_sum = rhs_sum + t.shifted(n * c_shift)
        from .qseries import poch_inf

        pref = poch_inf(aq_X, 2, W) * poch_inf(aq_Y, 2, W)
        pref = pref * invert(poch_inf(aq, 2, W)) * invert(
            poch_inf(MonomialSpec(1, None, 0, c_shift), 2, W))
        rhs = pref * rhs_sum
        cmp = equal_up_to(lhs.truncated(order), rhs.truncated(order), order)
        if not cmp.ok:
            status = "fail"
            mismatch = Mismatch(cmp.exponent, cmp.lhs.text(), cmp.rhs.text(), sides="lhs/rhs")
    except (InvertNonUnit, ValueError, ZeroDivisionError) as exc:
        status, detail = "error", f"{type(exc).__name__}: {exc}"
    return VerificationReport(
        id=f"bailey-lemma:{pair.name}",
        params={"M": M, "L": L},
        order_half_units=order,
        status=status,
        first_mismatch=mismatch,
        elapsed_ms=(time.perf_counter() - start) * 1000,
        detail=detail,
    )


# -- CLI pair names --------------------------------------------------------


def pair_from_name(name: str) -> BaileyPair:
    """Parse names like 'unit', 'andrews(1,-1)', 'thm2.3-first(symbolic)',
    's2(unit)', 's5(s2(unit))'."""
    name = name.strip()
    if name == "unit":
        return unit_pair()
    for prefix, builder in (("s2(", transform_s2), ("s5(", transform_s5)):
        if name.startswith(prefix) and name.endswith(")"):
            return builder(pair_from_name(name[len(prefix):-1]))
    if name.startswith("andrews(") and name.endswith(")"):
        inner = name[len("andrews("):-1]
        parts = inner.split(",")
        if len(parts) != 2:
            raise ValueError(f"andrews pair needs two arguments: {name!r}")
        a = MonomialSpec.parse(parts[0])
        b = parts[1].strip()
        return andrews_pair(a, b if b == "symbolic" else MonomialSpec.parse(b))
    for variant in ("first", "second"):
        prefix = f"thm2.3-{variant}("
        if name.startswith(prefix) and name.endswith(")"):
            b = name[len(prefix):-1].strip()
            return thm23_pair(variant, b if b == "symbolic" else MonomialSpec.parse(b))
    raise ValueError(f"unknown pair name {name!r}")

"""Partition counts, the triangle-enlargement construction, and the
indefinite-form class excess.

Three independent quantities are computed here and must agree for every
n: the signed partition count omega(n), the coefficient of q^(24n+2) in
the indefinite double sum, and the wedge-representative excess
I(24n+2) for the form 3y^2 - x^2.  The argument normalization (24n+2 on
3y^2 - x^2) follows the exponent bookkeeping of the generating-function
route; see the project notes.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from .qseries import hecke_double_sum, inv_poch, poch
from .report import Mismatch, VerificationReport
from .series import INF, MonomialSpec, Series, make_monomial

_Q = MonomialSpec(1, None, 0, 2)


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing positive parts."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        if any(p < 1 for p in self.parts):
            raise ValueError("parts must be positive")
        if any(self.parts[i] < self.parts[i + 1] for i in range(len(self.parts) - 1)):
            raise ValueError("parts must be weakly decreasing")

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def num_parts(self) -> int:
        return len(self.parts)

    def largest(self) -> int:
        return self.parts[0] if self.parts else 0


def conjugate(p: Partition) -> Partition:
    if not p.parts:
        return p
    return Partition(
        tuple(sum(1 for q in p.parts if q >= j) for j in range(1, p.parts[0] + 1))
    )


def p_rN_enum(r: int, N: int, n: int) -> int:
    """Count partitions of n with parts <= N, every value <= r appearing at
    least once and every value in (r, N] exactly once, by walking the
    multiplicity choices directly."""
    if not 0 <= r <= N:
        raise ValueError("need 0 <= r <= N")
    if n < 0:
        raise ValueError("n must be nonnegative")

    def count(v: int, rem: int) -> int:
        if v == 0:
            return 1 if rem == 0 else 0
        if v > r:
            return count(v - 1, rem - v) if rem >= v else 0
        total = 0
        used = v
        while used <= rem:
            total += count(v - 1, rem - used)
            used += v
        return total

    return count(N, n)


def p_rN_gf(r: int, N: int, order) -> Series:
    """q^(N(N+1)/2) / (q; q)_r truncated at order."""
    if not 0 <= r <= N:
        raise ValueError("need 0 <= r <= N")
    shift = N * (N + 1)  # half-units
    if order != INF and order <= shift:
        return Series.zero(order)
    if r == 0:
        return make_monomial(MonomialSpec(1, None, 0, shift), order)
    if order == INF:
        raise ValueError("generating function with r >= 1 needs a finite order")
    return inv_poch(_Q, 2, r, order - shift).shifted(shift)


def construct_varpi(N: int, mu: Partition) -> Partition:
    """Enlarge mu by the staircase N, N-1, ..., 1 and conjugate.

    tau_i = N - (i-1) + mu_i for i <= N and tau_i = mu_i beyond; the
    result's weight is weight(mu) + N(N+1)/2.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    mu_parts = mu.parts
    tau = [N - i + (mu_parts[i] if i < len(mu_parts) else 0) for i in range(N)]
    tau.extend(mu_parts[N:])
    return conjugate(Partition(tuple(tau)))


def omega(n: int) -> int:
    """Alternating sum over N of all p_{r,N}(n), r = 0..N."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    total = 0
    N = 0
    while N * (N + 1) // 2 <= n:
        sub = sum(p_rN_enum(r, N, n) for r in range(N + 1))
        total += -sub if N % 2 else sub
        N += 1
    return total


def omega_series(order: int) -> Series:
    """sum_n omega(n) q^(24n+2), truncated at order (half-units)."""
    entries = {}
    n = 0
    while 2 * (24 * n + 2) < order:
        w = omega(n)
        if w:
            entries[2 * (24 * n + 2)] = {0: w}
        n += 1
    return Series(entries, order, _trusted=True)


def class_excess_I(m: int) -> int:
    """Excess of wedge representatives of 3y^2 - x^2 = m with
    x + 3y = 4 (mod 12) over those with x + 3y = 10 (mod 12).

    Representatives: y odd positive, x = 1 (mod 6), -(3/2)y < x < (3/2)y.
    Inside the wedge m > (3/4) y^2, so y < sqrt(4m/3).
    """
    if m <= 0 or m % 24 != 2:
        raise ValueError("argument must be positive and = 2 (mod 24)")
    excess = 0
    y = 1
    while 3 * y * y < 4 * m:
        xx = 3 * y * y - m
        if xx >= 0:
            s = math.isqrt(xx)
            if s * s == xx:
                for x in {s, -s}:
                    if x % 6 == 1 and -3 * y < 2 * x < 3 * y:
                        res = (x + 3 * y) % 12
                        assert res in (4, 10)
                        excess += 1 if res == 4 else -1
        y += 2
    return excess


def automorph(x: int, y: int) -> tuple[int, int]:
    """The fundamental automorph of 3y^2 - x^2: (x, y) -> (2x+3y, x+2y)."""
    return 2 * x + 3 * y, x + 2 * y


def wedge_representatives(m: int) -> list[tuple[int, int]]:
    """All (x, y) counted by class_excess_I, for inspection and testing."""
    if m <= 0 or m % 24 != 2:
        raise ValueError("argument must be positive and = 2 (mod 24)")
    reps = []
    y = 1
    while 3 * y * y < 4 * m:
        xx = 3 * y * y - m
        if xx >= 0:
            s = math.isqrt(xx)
            if s * s == xx:
                for x in sorted({s, -s}):
                    if x % 6 == 1 and -3 * y < 2 * x < 3 * y:
                        reps.append((x, y))
        y += 2
    return reps


def partitions_table(n_max: int) -> list[tuple[int, int, int, int, str]]:
    """Rows (n, omega, double-sum coefficient, I, status) for 0 <= n <= n_max."""
    order = 2 * (24 * n_max + 2) + 1
    hecke = hecke_double_sum(order)
    rows = []
    for n in range(n_max + 1):
        w = omega(n)
        h = hecke.coefficient(2 * (24 * n + 2)).scalar_value()
        i = class_excess_I(24 * n + 2)
        status = "ok" if w == h == i else "mismatch"
        rows.append((n, w, h, i, status))
    return rows


def theorem_1_1_check(n_max: int) -> VerificationReport:
    """Three-way equality omega(n) = [q^(24n+2)] double sum = I(24n+2)."""
    start = time.perf_counter()
    for n, w, h, i, status in partitions_table(n_max):
        if status != "ok":
            return VerificationReport(
                id="thm1.1",
                params={"n_max": n_max},
                order_half_units=2 * (24 * n_max + 2) + 1,
                status="fail",
                first_mismatch=Mismatch(
                    2 * (24 * n + 2), str(w), str(h), sides="omega/double-sum"
                ),
                elapsed_ms=(time.perf_counter() - start) * 1000,
                detail=f"n={n}: omega={w}, double-sum={h}, I={i}",
            )
    return VerificationReport(
        id="thm1.1",
        params={"n_max": n_max},
        order_half_units=2 * (24 * n_max + 2) + 1,
        status="pass",
        elapsed_ms=(time.perf_counter() - start) * 1000,
    )

"""Truncated Laurent series in t = q^(1/2) with exact polynomial coefficients.

Exponents are stored in integer half-units (the exponent h stands for
q^(h/2)), which makes every q-power in this codebase -- including the
half-integer and negative ones -- an integer grade.  Each series carries
its own exclusive truncation order; operations propagate the tightest
sound bound, and a comparison never silently reads past it.  Exact
(untruncated) polynomials use the order sentinel ``INF``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from ._backend import kernel
from .coeffring import Coefficient, norm_value, pack_exponents, poly_text, PARAMS

INF = math.inf

HalfExponent = int


class InvertNonUnit(ArithmeticError):
    """Inversion attempted on a series whose leading coefficient is not a
    nonzero rational constant."""


class OrderExhausted(LookupError):
    """The requested information lies at or beyond a truncation order."""


class DivergentProduct(ArithmeticError):
    """An infinite product whose factors do not converge termwise."""


_MONO_RE = re.compile(
    r"""^\s*(?P<sign>-)?\s*
        (?:(?P<num>\d+)(?:/(?P<den>\d+))?)?\s*\*?\s*
        (?:(?P<param>[xabz])(?:\^(?P<deg>\d+))?)?\s*\*?\s*
        (?:q(?:\^(?:(?P<iexp>-?\d+)|\{(?P<hnum>-?\d+)(?P<half>/2)?\}))?)?\s*$""",
    re.VERBOSE,
)


@dataclass(frozen=True)
class MonomialSpec:
    """scalar * param^degree * q^(qpower/2); the argument type for
    Pochhammer symbols and parameter bindings."""

    scalar: object = 1
    param: str | None = None
    degree: int = 0
    qpower: HalfExponent = 0

    def __post_init__(self):
        object.__setattr__(self, "scalar", norm_value(self.scalar))
        if self.scalar == 0:
            object.__setattr__(self, "param", None)
            object.__setattr__(self, "degree", 0)
            object.__setattr__(self, "qpower", 0)
            return
        if self.param is not None:
            if self.param not in PARAMS:
                raise ValueError(f"unknown parameter {self.param!r}")
            if self.degree < 1:
                raise ValueError("a named parameter needs degree >= 1")
        elif self.degree:
            raise ValueError("degree without a parameter")

    def is_zero(self) -> bool:
        return self.scalar == 0

    def times(self, other: "MonomialSpec") -> "MonomialSpec":
        if self.is_zero() or other.is_zero():
            return MonomialSpec(0)
        if self.param and other.param and self.param != other.param:
            raise ValueError("monomial product would mix two parameters")
        param = self.param or other.param
        return MonomialSpec(
            norm_value(Fraction(self.scalar) * Fraction(other.scalar)),
            param,
            self.degree + other.degree,
            self.qpower + other.qpower,
        )

    def pow(self, n: int) -> "MonomialSpec":
        if n < 0:
            return self.inverse().pow(-n)
        if n == 0:
            return MonomialSpec(1)
        if self.is_zero():
            return self
        return MonomialSpec(
            norm_value(Fraction(self.scalar) ** n),
            self.param,
            self.degree * n,
            self.qpower * n,
        )

    def inverse(self) -> "MonomialSpec":
        if self.is_zero():
            raise ZeroDivisionError("zero monomial has no inverse")
        if self.param is not None:
            raise ValueError("cannot invert a monomial with a parameter part")
        return MonomialSpec(norm_value(1 / Fraction(self.scalar)), None, 0, -self.qpower)

    def scaled(self, c) -> "MonomialSpec":
        return MonomialSpec(
            norm_value(Fraction(self.scalar) * Fraction(c)),
            self.param, self.degree, self.qpower,
        ) if c else MonomialSpec(0)

    def neg(self) -> "MonomialSpec":
        return self.scaled(-1)

    def text(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        if self.param:
            parts.append(self.param if self.degree == 1 else f"{self.param}^{self.degree}")
        if self.qpower:
            h = self.qpower
            parts.append(f"q^{{{h}/2}}" if h % 2 else ("q" if h == 2 else f"q^{h // 2}"))
        mag = abs(self.scalar)
        if not parts or mag != 1:
            parts.insert(0, str(mag))
        body = "*".join(parts)
        return f"-{body}" if self.scalar < 0 else body

    @classmethod
    def parse(cls, text: str) -> "MonomialSpec":
        m = _MONO_RE.match(text)
        if not m or not any(m.group(g) for g in ("num", "param", "iexp", "hnum")) and "q" not in text:
            raise ValueError(f"cannot parse monomial {text!r}")
        scalar = Fraction(int(m.group("num") or 1), int(m.group("den") or 1))
        if m.group("sign"):
            scalar = -scalar
        param = m.group("param")
        degree = int(m.group("deg") or (1 if param else 0))
        qpower = 0
        if "q" in text.replace(" ", ""):
            if m.group("iexp") is not None:
                qpower = 2 * int(m.group("iexp"))
            elif m.group("hnum") is not None:
                h = int(m.group("hnum"))
                qpower = h if m.group("half") else 2 * h
            else:
                qpower = 2
        return cls(norm_value(scalar), param, degree, qpower)


@dataclass(frozen=True)
class Comparison:
    """Outcome of an order-bounded equality check."""

    ok: bool
    exponent: HalfExponent | None = None
    lhs: Coefficient | None = None
    rhs: Coefficient | None = None


class Series:
    """Immutable truncated Laurent series.

    entries maps half-exponent -> raw coefficient dict (see coeffring);
    order is the exclusive truncation bound (INF = exact); valuation is
    the least stored exponent, or the order for the zero series.
    """

    __slots__ = ("entries", "order", "valuation")

    def __init__(self, entries: dict, order, _trusted: bool = False):
        if not _trusted:
            clean = {}
            for h, c in entries.items():
                if h >= order:
                    raise ValueError(f"entry at {h} not below order {order}")
                if isinstance(c, Coefficient):
                    c = c.terms
                c = {k: norm_value(v) for k, v in c.items() if norm_value(v)}
                if c:
                    clean[h] = c
            entries = clean
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "valuation", min(entries) if entries else order)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Series is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, order=INF) -> "Series":
        return cls({}, order, _trusted=True)

    @classmethod
    def scalar(cls, v, order=INF) -> "Series":
        v = norm_value(v)
        return cls({0: {0: v}} if v else {}, order, _trusted=True)

    @classmethod
    def one(cls, order=INF) -> "Series":
        return cls.scalar(1, order)

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.entries

    def coefficient(self, h: HalfExponent) -> Coefficient:
        if h >= self.order:
            raise OrderExhausted(
                f"coefficient at half-exponent {h} requested but series is "
                f"only known below {self.order}"
            )
        return Coefficient(dict(self.entries.get(h, ())), _trusted=True)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "Series") -> "Series":
        order = min(self.order, other.order)
        cut = None if order == INF else order
        return Series(kernel.series_add(self.entries, other.entries, cut), order, _trusted=True)

    def __neg__(self) -> "Series":
        return Series(kernel.series_neg(self.entries), self.order, _trusted=True)

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def __mul__(self, other: "Series") -> "Series":
        order = min(self.order + other.valuation, other.order + self.valuation)
        cut = None if order == INF else order
        return Series(kernel.series_mul(self.entries, other.entries, cut), order, _trusted=True)

    def scaled(self, c) -> "Series":
        """Exact multiplication by a nonzero rational (order unchanged)."""
        c = norm_value(c)
        if not c:
            return Series.zero(self.order)
        return Series(kernel.series_scale(self.entries, c), self.order, _trusted=True)

    def shifted(self, h: HalfExponent) -> "Series":
        """Exact multiplication by q^(h/2): everything moves by h."""
        if h == 0:
            return self
        return Series({e + h: c for e, c in self.entries.items()}, self.order + h, _trusted=True)

    def truncated(self, order) -> "Series":
        if order >= self.order:
            return self
        return Series(
            {e: c for e, c in self.entries.items() if e < order}, order, _trusted=True
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.order == other.order and self.entries == other.entries

    def __hash__(self):  # pragma: no cover - identity hashing is enough
        return id(self)

    # -- rendering -----------------------------------------------------------

    def text(self, max_terms: int | None = None) -> str:
        pieces = []
        for h in sorted(self.entries):
            body = poly_text(self.entries[h])
            if " " in body:
                body = f"({body})"
            if h:
                qpart = f"q^{{{h}/2}}" if h % 2 else ("q" if h == 2 else f"q^{h // 2}")
                body = qpart if body == "1" else (f"-{qpart}" if body == "-1" else f"{body} * {qpart}")
            if not pieces:
                pieces.append(body)
            else:
                pieces.append(f"- {body[1:]}" if body.startswith("-") else f"+ {body}")
            if max_terms and len(pieces) >= max_terms:
                pieces.append("+ ...")
                break
        if not pieces:
            pieces.append("0")
        out = " ".join(pieces)
        if self.order != INF:
            h = self.order
            qpart = f"q^{{{h}/2}}" if h % 2 else f"q^{h // 2}"
            out += f" + O({qpart})"
        return out

    __str__ = text

    def __repr__(self) -> str:
        return f"Series<{self.text(max_terms=6)}>"


# -- module-level operations ---------------------------------------------


def make_monomial(m: MonomialSpec, order) -> Series:
    if m.is_zero():
        return Series.zero(order)
    if order <= m.qpower:
        raise ValueError(
            f"order {order} does not exceed the monomial's q-power {m.qpower}; "
            "the result would be indistinguishable from zero"
        )
    key = pack_exponents({m.param: m.degree}) if m.param else 0
    return Series({m.qpower: {key: m.scalar}}, order, _trusted=True)


def add(s1: Series, s2: Series) -> Series:
    return s1 + s2


def mul(s1: Series, s2: Series) -> Series:
    return s1 * s2


def invert(s: Series, order=None) -> Series:
    """Multiplicative inverse of a series with unit (scalar) leading term.

    Exact inputs need an explicit result order, since an inverse is in
    general an infinite series.
    """
    if s.is_zero():
        raise InvertNonUnit("cannot invert the zero series")
    v = s.valuation
    lead = s.entries[v]
    if set(lead) != {0}:
        raise InvertNonUnit(
            f"leading coefficient {poly_text(lead)!r} contains a formal parameter"
        )
    c = lead[0]
    if s.order == INF:
        if order is None:
            raise ValueError("inverting an exact series requires an explicit order")
        target = order
    else:
        target = s.order - 2 * v if order is None else min(order, s.order - 2 * v)
    if target <= -v:
        raise ValueError("requested order leaves no information in the inverse")

    prec = target + v  # half-units of precision above the inverse's valuation
    u = s.shifted(-v)
    cinv = norm_value(Fraction(1, 1) / c)
    r = Series({0: {0: cinv}}, INF, _trusted=True)
    done = 1
    one = Series.one()
    while done < prec:
        done = min(2 * done, prec)
        err = one - u.truncated(done) * r
        rn = r + r * err
        r = Series({e: c2 for e, c2 in rn.entries.items() if e < done}, INF, _trusted=True)
    return Series({e: c2 for e, c2 in r.entries.items() if e < prec}, prec, _trusted=True).shifted(-v)


def coefficient_at(s: Series, h: HalfExponent) -> Coefficient:
    return s.coefficient(h)


def equal_up_to(s1: Series, s2: Series, h) -> Comparison:
    """Compare coefficients at every exponent strictly below h."""
    if h > s1.order or h > s2.order:
        raise OrderExhausted(
            f"comparison up to {h} exceeds truncation orders "
            f"({s1.order}, {s2.order})"
        )
    keys = set(s1.entries) | set(s2.entries)
    mismatches = sorted(
        e for e in keys if e < h and s1.entries.get(e, {}) != s2.entries.get(e, {})
    )
    if not mismatches:
        return Comparison(True)
    e = mismatches[0]
    return Comparison(False, e, s1.coefficient(e), s2.coefficient(e))


def rescale(s: Series, k: int) -> Series:
    """Substitute q -> q^k: all exponents (and the order) multiply by k."""
    if k < 1:
        raise ValueError("rescale factor must be a positive integer")
    return Series({e * k: c for e, c in s.entries.items()}, s.order * k, _trusted=True)

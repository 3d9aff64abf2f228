"""Exact coefficient ring: sparse polynomials in x, a, b, z over the rationals.

A :class:`Coefficient` is the coefficient of a single q-power inside a
series: a polynomial with nonnegative integer exponents in the four
declared formal parameters and arbitrary-precision rational values.
The representation is canonical (no zero terms, integral values stored
as int), so two coefficients are equal iff their term dicts -- and their
text serializations -- are identical.
"""

from __future__ import annotations

from fractions import Fraction

from ._backend import kernel

PARAMS = ("x", "a", "b", "z")

_BITS = 15
_MASK = (1 << _BITS) - 1
_SHIFT = {name: _BITS * i for i, name in enumerate(PARAMS)}
MAX_EXPONENT = _MASK


def pack_exponents(powers: dict[str, int]) -> int:
    """Pack a parameter->exponent map into a single dict key."""
    key = 0
    for name, exp in powers.items():
        if name not in _SHIFT:
            raise ValueError(f"unknown parameter {name!r}; declared set is {PARAMS}")
        if exp == 0:
            continue
        if not 0 <= exp <= MAX_EXPONENT:
            raise ValueError(f"exponent {exp} for {name!r} out of range")
        key |= exp << _SHIFT[name]
    return key


def unpack_exponents(key: int) -> tuple[int, int, int, int]:
    return tuple((key >> _SHIFT[name]) & _MASK for name in PARAMS)


def norm_value(v):
    """Canonical scalar: int when integral, reduced Fraction otherwise."""
    if type(v) is int:
        return v
    f = Fraction(v)
    return f.numerator if f.denominator == 1 else f


def _term_text(key: int, value) -> tuple[bool, str]:
    """Render one term; returns (negative, body-without-sign)."""
    neg = value < 0
    mag = -value if neg else value
    mono = "*".join(
        name if e == 1 else f"{name}^{e}"
        for name, e in zip(PARAMS, unpack_exponents(key))
        if e
    )
    if not mono:
        return neg, str(mag)
    if mag == 1:
        return neg, mono
    return neg, f"{mag}*{mono}"


def poly_text(terms: dict) -> str:
    """Canonical text form: terms in ascending lexicographic exponent order."""
    if not terms:
        return "0"
    pieces = []
    for key in sorted(terms, key=unpack_exponents):
        neg, body = _term_text(key, terms[key])
        if not pieces:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(pieces)


class Coefficient:
    """Immutable sparse polynomial over the rationals."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None, _trusted: bool = False):
        if terms is None:
            terms = {}
        if not _trusted:
            clean = {}
            for k, v in terms.items():
                v = norm_value(v)
                if v:
                    clean[k] = v
            terms = clean
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Coefficient is immutable")

    @classmethod
    def scalar(cls, v) -> "Coefficient":
        v = norm_value(v)
        return cls({0: v} if v else {}, _trusted=True)

    @classmethod
    def term(cls, value, **powers) -> "Coefficient":
        value = norm_value(value)
        if not value:
            return cls({}, _trusted=True)
        return cls({pack_exponents(powers): value}, _trusted=True)

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_scalar(self) -> bool:
        return not self.terms or set(self.terms) == {0}

    def scalar_value(self):
        """The rational value of a parameter-free coefficient."""
        if not self.terms:
            return 0
        if set(self.terms) != {0}:
            raise ValueError(f"coefficient {self.text()!r} is not a scalar")
        return self.terms[0]

    def degree_of(self, param: str) -> int:
        i = PARAMS.index(param)
        return max((unpack_exponents(k)[i] for k in self.terms), default=0)

    # -- ring operations -------------------------------------------------

    def __add__(self, other: "Coefficient") -> "Coefficient":
        return Coefficient(kernel.poly_add(self.terms, other.terms), _trusted=True)

    def __neg__(self) -> "Coefficient":
        return Coefficient(kernel.poly_neg(self.terms), _trusted=True)

    def __sub__(self, other: "Coefficient") -> "Coefficient":
        return self + (-other)

    def __mul__(self, other: "Coefficient") -> "Coefficient":
        return Coefficient(kernel.poly_mul(self.terms, other.terms), _trusted=True)

    def scaled(self, c) -> "Coefficient":
        c = norm_value(c)
        if not c:
            return Coefficient()
        return Coefficient(kernel.poly_scale(self.terms, c), _trusted=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Coefficient):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def text(self) -> str:
        return poly_text(self.terms)

    __str__ = text

    def __repr__(self) -> str:
        return f"Coefficient<{self.text()}>"


ZERO = Coefficient()
ONE = Coefficient.scalar(1)


# Plain-function spellings of the ring operations.

def add(lhs: Coefficient, rhs: Coefficient) -> Coefficient:
    return lhs + rhs


def mul(lhs: Coefficient, rhs: Coefficient) -> Coefficient:
    return lhs * rhs


def neg(c: Coefficient) -> Coefficient:
    return -c


def equals(lhs: Coefficient, rhs: Coefficient) -> bool:
    return lhs == rhs

"""Pure-Python kernels for sparse polynomial / series arithmetic.

This module mirrors the compiled ``qverify._kernel`` extension exactly;
``qverify._backend`` picks whichever is available (or whichever
``QVERIFY_BACKEND`` requests).

Shared data layout:

* polynomial: dict mapping a packed exponent key (int) to a nonzero
  value that is a plain int when integral and a ``fractions.Fraction``
  in lowest terms otherwise.  No zero values are ever stored, so equal
  polynomials have equal dicts.
* series entries: dict mapping a half-exponent (int) to a polynomial.
"""

from fractions import Fraction


def _demote(v):
    # Fraction with denominator 1 -> int, keeping dicts canonical.
    if type(v) is not int and v.denominator == 1:
        return v.numerator
    return v


def poly_normalize(p):
    """Drop zeros and demote integral Fractions, in place; return p."""
    bad = [k for k, v in p.items() if not v]
    for k in bad:
        del p[k]
    for k, v in p.items():
        if type(v) is not int:
            p[k] = _demote(v)
    return p


def poly_add(p1, p2):
    if len(p1) < len(p2):
        p1, p2 = p2, p1
    out = dict(p1)
    for k, v in p2.items():
        w = out.get(k)
        if w is None:
            out[k] = v
        else:
            w = w + v
            if w:
                out[k] = _demote(w)
            else:
                del out[k]
    return out


def poly_neg(p):
    return {k: -v for k, v in p.items()}


def poly_scale(p, c):
    # c must be a nonzero int or Fraction.
    return {k: _demote(v * c) for k, v in p.items()}


def poly_mul(p1, p2):
    if len(p1) > len(p2):
        p1, p2 = p2, p1
    out = {}
    for k1, v1 in p1.items():
        for k2, v2 in p2.items():
            k = k1 + k2
            w = out.get(k)
            if w is None:
                out[k] = v1 * v2
            else:
                w = w + v1 * v2
                if w:
                    out[k] = w
                else:
                    del out[k]
    return poly_normalize(out)


def series_add(e1, e2, cutoff):
    """Merge two entry maps; drop exponents >= cutoff (None = unbounded)."""
    out = {}
    for h, c in e1.items():
        if cutoff is None or h < cutoff:
            out[h] = c
    for h, c in e2.items():
        if cutoff is not None and h >= cutoff:
            continue
        acc = out.get(h)
        if acc is None:
            out[h] = c
        else:
            s = poly_add(acc, c)
            if s:
                out[h] = s
            else:
                del out[h]
    return out


def series_neg(e):
    return {h: poly_neg(c) for h, c in e.items()}


def series_scale(e, c):
    return {h: poly_scale(p, c) for h, p in e.items()}


def series_mul(e1, e2, cutoff):
    """Cauchy product of entry maps, truncated below cutoff (None = unbounded)."""
    if len(e1) > len(e2):
        e1, e2 = e2, e1
    out = {}
    for h1, c1 in e1.items():
        for h2, c2 in e2.items():
            h = h1 + h2
            if cutoff is not None and h >= cutoff:
                continue
            acc = out.get(h)
            if acc is None:
                acc = {}
                out[h] = acc
            for k1, v1 in c1.items():
                for k2, v2 in c2.items():
                    k = k1 + k2
                    w = acc.get(k)
                    if w is None:
                        acc[k] = v1 * v2
                    else:
                        w = w + v1 * v2
                        if w:
                            acc[k] = w
                        else:
                            del acc[k]
    empty = []
    for h, acc in out.items():
        poly_normalize(acc)
        if not acc:
            empty.append(h)
    for h in empty:
        del out[h]
    return out

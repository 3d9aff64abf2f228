# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels for sparse polynomial / series arithmetic.

Contract and data layout are identical to ``qverify._kernel_py``; that
module is the reference implementation.  Values stay Python objects
(arbitrary-precision int / Fraction); the win is the compiled dict
traffic in the convolution loops.
"""

from fractions import Fraction

cdef object _Fraction = Fraction


cdef inline object _demote(object v):
    if type(v) is not int and v.denominator == 1:
        return v.numerator
    return v


def poly_normalize(dict p):
    cdef list bad = []
    cdef object k, v
    for k, v in p.items():
        if not v:
            bad.append(k)
    for k in bad:
        del p[k]
    for k, v in p.items():
        if type(v) is not int:
            p[k] = _demote(v)
    return p


def poly_add(dict p1, dict p2):
    cdef dict out
    cdef object k, v, w
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


def poly_neg(dict p):
    cdef dict out = {}
    cdef object k, v
    for k, v in p.items():
        out[k] = -v
    return out


def poly_scale(dict p, object c):
    cdef dict out = {}
    cdef object k, v
    for k, v in p.items():
        out[k] = _demote(v * c)
    return out


def poly_mul(dict p1, dict p2):
    cdef dict out = {}
    cdef object k1, v1, k2, v2, k, w
    if len(p1) > len(p2):
        p1, p2 = p2, p1
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


def series_add(dict e1, dict e2, object cutoff):
    cdef dict out = {}
    cdef dict s
    cdef object h, c, acc
    cdef bint bounded = cutoff is not None
    cdef long long cut = 0
    if bounded:
        cut = cutoff
    for h, c in e1.items():
        if not bounded or h < cut:
            out[h] = c
    for h, c in e2.items():
        if bounded and h >= cut:
            continue
        acc = out.get(h)
        if acc is None:
            out[h] = c
        else:
            s = poly_add(<dict> acc, <dict> c)
            if s:
                out[h] = s
            else:
                del out[h]
    return out


def series_neg(dict e):
    cdef dict out = {}
    cdef object h, c
    for h, c in e.items():
        out[h] = poly_neg(<dict> c)
    return out


def series_scale(dict e, object c):
    cdef dict out = {}
    cdef object h, p
    for h, p in e.items():
        out[h] = poly_scale(<dict> p, c)
    return out


def series_mul(dict e1, dict e2, object cutoff):
    cdef dict out = {}
    cdef dict c1, c2, acc
    cdef object h1o, h2o, c1o, c2o, k1, v1, k2, v2, k, w, acco
    cdef long long h1, h2, h
    cdef bint bounded = cutoff is not None
    cdef long long cut = 0
    cdef list empty
    if bounded:
        cut = cutoff
    if len(e1) > len(e2):
        e1, e2 = e2, e1
    for h1o, c1o in e1.items():
        h1 = h1o
        c1 = <dict> c1o
        for h2o, c2o in e2.items():
            h2 = h2o
            h = h1 + h2
            if bounded and h >= cut:
                continue
            c2 = <dict> c2o
            acco = out.get(h)
            if acco is None:
                acc = {}
                out[h] = acc
            else:
                acc = <dict> acco
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
    for h1o, c1o in out.items():
        poly_normalize(<dict> c1o)
        if not (<dict> c1o):
            empty.append(h1o)
    for h1o in empty:
        del out[h1o]
    return out

# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot kernels; same layout and semantics as ``_kernel_py``.

The two kernels must stay behaviourally identical (including iteration
order, hence identical step counts); ``tests/test_kernel.py`` enforces it.
"""

from fractions import Fraction
from heapq import heappop, heappush

ZERO_EXP = (0, 0, 0, 0)


cdef inline object _num(object x):
    if x.__class__ is Fraction and x.denominator == 1:
        return x.numerator
    return x


def cd_iadd(dict a, dict b):
    """In-place a += b on coefficient dicts; returns a."""
    cdef object k, v, s
    for k, v in b.items():
        s = a.get(k)
        if s is None:
            a[k] = v
        else:
            s = s + v
            if s:
                a[k] = s
            else:
                del a[k]
    return a


def cd_add(dict a, dict b):
    return cd_iadd(dict(a), b)


def cd_neg(dict a):
    cdef dict out = {}
    cdef object k, v
    for k, v in a.items():
        out[k] = -v
    return out


def cd_sub(dict a, dict b):
    cdef dict out = dict(a)
    cdef object k, v, s
    for k, v in b.items():
        s = out.get(k)
        if s is None:
            out[k] = -v
        else:
            s = s - v
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def cd_scale(dict a, object s):
    """Multiply by a plain number (int or Fraction)."""
    cdef dict out = {}
    cdef object k, v
    if not s:
        return out
    for k, v in a.items():
        out[k] = _num(v * s)
    return out


def cd_mul(dict a, dict b):
    cdef dict out = {}
    cdef tuple ea, eb, k
    cdef object va, vb, s
    if not a or not b:
        return out
    if len(b) == 1:
        for eb, vb in b.items():
            if eb == ZERO_EXP:
                return cd_scale(a, vb)
            for ea, va in a.items():
                out[(ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3])] = _num(va * vb)
        return out
    if len(a) == 1:
        return cd_mul(b, a)
    for ea, va in a.items():
        for eb, vb in b.items():
            k = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3])
            s = out.get(k)
            if s is None:
                out[k] = _num(va * vb)
            else:
                s = s + va * vb
                if s:
                    out[k] = s
                else:
                    del out[k]
    return out


def word_concat(tuple w1, tuple w2):
    """Concatenate two RLE words, merging the seam run if needed."""
    if not w1:
        return w2
    if not w2:
        return w1
    if w1[len(w1) - 2] == w2[0]:
        return w1[: len(w1) - 1] + (w1[len(w1) - 1] + w2[1],) + w2[2:]
    return w1 + w2


def word_is_normal(tuple w):
    cdef Py_ssize_t i, n = len(w)
    for i in range(2, n, 2):
        if w[i] <= w[i - 2]:
            return False
    return True


def word_measure(tuple w, tuple weights):
    """(total degree, weighted letter count, inversion count) of a word."""
    cdef long long deg = 0, wsum = 0, inv = 0
    cdef Py_ssize_t i, j, n = len(w)
    cdef long long g, e
    for i in range(0, n, 2):
        g = w[i]
        e = w[i + 1]
        deg += e
        wsum += <long long> weights[g] * e
        for j in range(i + 2, n, 2):
            if <long long> w[j] < g:
                inv += e * <long long> w[j + 1]
    return deg, wsum, inv


def straighten(items, dict rules, tuple weights, bint own_coeffs=False):
    """Normal-order a batch of (word, cdict) terms.

    Returns ``(normal_terms, steps)`` where ``steps`` counts rule
    applications.  Input coefficient dicts are mutated only when
    ``own_coeffs`` is true.
    """
    cdef dict result = {}
    cdef dict pending = {}
    cdef list heap = []
    cdef long long steps = 0
    cdef Py_ssize_t i, n
    cdef tuple w, nw, prefix, suffix, repl
    cdef object cd, rc, acc
    cdef long long g1, e1, g2, e2

    def push(pw, pcd, owned):
        if word_is_normal(pw):
            racc = result.get(pw)
            if racc is None:
                result[pw] = pcd if owned else dict(pcd)
            else:
                cd_iadd(racc, pcd)
            return
        pacc = pending.get(pw)
        if pacc is None:
            pending[pw] = pcd if owned else dict(pcd)
            deg, wsum, inv = word_measure(pw, weights)
            heappush(heap, (-deg, -wsum, -inv, pw))
        else:
            cd_iadd(pacc, pcd)

    for w, cd in items:
        push(w, cd, own_coeffs)

    while heap:
        w = (<tuple> heappop(heap))[3]
        cd = pending.pop(w, None)
        if not cd:
            continue
        i = 2
        n = len(w)
        while i < n and <long long> w[i] > <long long> w[i - 2]:
            i += 2
        g1 = w[i - 2]
        e1 = w[i - 1]
        g2 = w[i]
        e2 = w[i + 1]
        prefix = w[: i - 2] + ((g1, e1 - 1) if e1 > 1 else ())
        suffix = ((g2, e2 - 1) if e2 > 1 else ()) + w[i + 2:]
        steps += 1
        for repl, rc in rules[(g1, g2)]:
            nw = word_concat(word_concat(prefix, repl), suffix)
            if rc is None:
                push(nw, cd, False)
            else:
                push(nw, cd_mul(cd, rc), True)

    cdef dict clean = {}
    for w, cd in result.items():
        if cd:
            clean[w] = cd
    return clean, steps


def free_mul_terms(dict t1, dict t2):
    """Concatenation product of term maps; no normal ordering."""
    cdef dict out = {}
    cdef tuple w1, w2, w
    cdef object c1, c2, cd, acc
    for w1, c1 in t1.items():
        for w2, c2 in t2.items():
            w = word_concat(w1, w2)
            cd = cd_mul(c1, c2)
            acc = out.get(w)
            if acc is None:
                if cd:
                    out[w] = cd
            else:
                cd_iadd(acc, cd)
                if not acc:
                    del out[w]
    return out


def mul_terms(dict t1, dict t2, dict rules, tuple weights):
    """Distribute, concatenate and normal-order; returns (terms, steps)."""

    def products():
        for w1, c1 in t1.items():
            for w2, c2 in t2.items():
                yield word_concat(w1, w2), cd_mul(c1, c2)

    return straighten(products(), rules, weights, own_coeffs=True)

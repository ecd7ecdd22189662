"""Pure-Python hot kernels: coefficient-dict arithmetic and word straightening.

Data layout shared with the compiled kernel (``_kernel_cy``):

* coefficient dict (``cdict``): maps a 4-tuple of exponents
  ``(e_v, e_alpha, e_eps, e_c)`` to a nonzero ``int`` or ``Fraction``.
  ``e_v`` may be negative (Laurent), the others are >= 0.  The zero
  polynomial is the empty dict.
* word: flat run-length-encoded tuple ``(g0, e0, g1, e1, ...)`` of generator
  positions and positive exponents; adjacent runs carry distinct generators.
  A word is normal when its generator positions strictly increase.
* rewrite rules: ``rules[(g_hi, g_lo)]`` is a tuple of ``(replacement_word,
  coeff)`` branches, where ``coeff`` is a ``cdict`` or ``None`` for 1.

``straighten`` is a worklist that always pops a word of maximal termination
measure, so every distinct word is rewritten at most once and the returned
step count is deterministic.
"""

from fractions import Fraction
from heapq import heappop, heappush

ZERO_EXP = (0, 0, 0, 0)


def _num(x):
    """Collapse integral Fractions to int (cheaper arithmetic downstream)."""
    if x.__class__ is Fraction and x.denominator == 1:
        return x.numerator
    return x


def cd_iadd(a, b):
    """In-place a += b on coefficient dicts; returns a."""
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


def cd_add(a, b):
    return cd_iadd(dict(a), b)


def cd_neg(a):
    return {k: -v for k, v in a.items()}


def cd_sub(a, b):
    out = dict(a)
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


def cd_scale(a, s):
    """Multiply by a plain number (int or Fraction)."""
    if not s:
        return {}
    return {k: _num(v * s) for k, v in a.items()}


def cd_mul(a, b):
    if not a or not b:
        return {}
    if len(b) == 1:
        ((eb, vb),) = b.items()
        if eb == ZERO_EXP:
            return cd_scale(a, vb)
        return {
            (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]): _num(va * vb)
            for ea, va in a.items()
        }
    if len(a) == 1:
        return cd_mul(b, a)
    out = {}
    for ea, va in a.items():
        e0, e1, e2, e3 = ea
        for eb, vb in b.items():
            k = (e0 + eb[0], e1 + eb[1], e2 + eb[2], e3 + eb[3])
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


def word_concat(w1, w2):
    """Concatenate two RLE words, merging the seam run if needed."""
    if not w1:
        return w2
    if not w2:
        return w1
    if w1[-2] == w2[0]:
        return w1[:-1] + (w1[-1] + w2[1],) + w2[2:]
    return w1 + w2


def word_is_normal(w):
    for i in range(2, len(w), 2):
        if w[i] <= w[i - 2]:
            return False
    return True


def word_measure(w, weights):
    """(total degree, weighted letter count, inversion count) of a word."""
    deg = 0
    wsum = 0
    inv = 0
    n = len(w)
    for i in range(0, n, 2):
        g, e = w[i], w[i + 1]
        deg += e
        wsum += weights[g] * e
        for j in range(i + 2, n, 2):
            if w[j] < g:
                inv += e * w[j + 1]
    return deg, wsum, inv


def straighten(items, rules, weights, own_coeffs=False):
    """Normal-order a batch of (word, cdict) terms.

    Returns ``(normal_terms, steps)`` where ``steps`` counts rule
    applications.  Input coefficient dicts are mutated only when
    ``own_coeffs`` is true.
    """
    result = {}
    pending = {}
    heap = []

    def push(w, cd, owned):
        if word_is_normal(w):
            acc = result.get(w)
            if acc is None:
                result[w] = cd if owned else dict(cd)
            else:
                cd_iadd(acc, cd)
            return
        acc = pending.get(w)
        if acc is None:
            pending[w] = cd if owned else dict(cd)
            deg, wsum, inv = word_measure(w, weights)
            heappush(heap, (-deg, -wsum, -inv, w))
        else:
            cd_iadd(acc, cd)

    for w, cd in items:
        push(w, cd, own_coeffs)

    steps = 0
    while heap:
        w = heappop(heap)[3]
        cd = pending.pop(w, None)
        if not cd:
            continue
        # leftmost out-of-order junction
        i = 2
        n = len(w)
        while i < n and w[i] > w[i - 2]:
            i += 2
        g1, e1 = w[i - 2], w[i - 1]
        g2, e2 = w[i], w[i + 1]
        prefix = w[: i - 2] + ((g1, e1 - 1) if e1 > 1 else ())
        suffix = ((g2, e2 - 1) if e2 > 1 else ()) + w[i + 2 :]
        steps += 1
        for repl, rc in rules[(g1, g2)]:
            nw = word_concat(word_concat(prefix, repl), suffix)
            if rc is None:
                push(nw, cd, False)
            else:
                push(nw, cd_mul(cd, rc), True)
    # drop words whose coefficients cancelled
    return {w: cd for w, cd in result.items() if cd}, steps


def free_mul_terms(t1, t2):
    """Concatenation product of term maps; no normal ordering."""
    out = {}
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


def mul_terms(t1, t2, rules, weights):
    """Distribute, concatenate and normal-order; returns (terms, steps)."""

    def products():
        for w1, c1 in t1.items():
            for w2, c2 in t2.items():
                yield word_concat(w1, w2), cd_mul(c1, c2)

    return straighten(products(), rules, weights, own_coeffs=True)

"""Shared helpers: independent oracles and seeded random generators.

The brute-force normal-ordering oracle below deliberately avoids everything
the engine does (run-length encoding, the coalescing worklist, the measure
heap): it works on plain letter sequences with naive leftmost-first
recursion, so agreement with the engine is a meaningful cross-check.
"""

from __future__ import annotations

import random
from fractions import Fraction

from heisenpoly import _kernel as K
from heisenpoly.ncalg import (
    AlgebraSpec,
    NCPoly,
    borel_a,
    borel_b,
    heisenberg_classical,
    heisenberg_q,
    quantum_plane,
)
from heisenpoly.scalars import CoeffPoly


def property_algebras() -> list:
    return [
        heisenberg_classical(),
        heisenberg_classical(2),
        heisenberg_classical(central="c"),
        heisenberg_q(),
        quantum_plane(),
        borel_a(),
        borel_a(q_one=True),
        borel_b(),
    ]


def star_algebras() -> list:
    return [a for a in property_algebras() if a.supports_star]


# -- brute-force normal ordering (letters, recursion, no sharing) -------------


def expand_letters(word: tuple) -> tuple:
    return tuple(g for i in range(0, len(word), 2) for g in [word[i]] * word[i + 1])


def letters_to_word(letters) -> tuple:
    w = ()
    for g in letters:
        w = K.word_concat(w, (g, 1))
    return w


def brute_normal_letters(algebra: AlgebraSpec, letters: tuple) -> dict:
    """Letter-sequence normal ordering by naive leftmost-first recursion."""
    rules = algebra.rules
    for i in range(len(letters) - 1):
        if letters[i] > letters[i + 1]:
            out = {}
            for repl, rc in rules[(letters[i], letters[i + 1])]:
                rest = letters[:i] + expand_letters(repl) + letters[i + 2:]
                for w, cd in brute_normal_letters(algebra, rest).items():
                    scaled = dict(cd) if rc is None else K.cd_mul(cd, rc)
                    acc = out.get(w)
                    if acc is None:
                        out[w] = scaled
                    else:
                        K.cd_iadd(acc, scaled)
                        if not acc:
                            del out[w]
            return out
    return {letters: {(0, 0, 0, 0): 1}}


def brute_normal_poly(poly: NCPoly) -> dict:
    """Normal form of an NCPoly as a letters->CoeffPoly dict, via the oracle."""
    out = {}
    for word, cd in poly._t.items():
        for letters, rcd in brute_normal_letters(poly.algebra, expand_letters(word)).items():
            contrib = K.cd_mul(cd, rcd)
            acc = out.get(letters)
            if acc is None:
                if contrib:
                    out[letters] = contrib
            else:
                K.cd_iadd(acc, contrib)
                if not acc:
                    del out[letters]
    return out


def engine_normal_letters(poly: NCPoly) -> dict:
    return {expand_letters(w): cd for w, cd in poly.normal_order()._t.items()}


# -- random generators ---------------------------------------------------------


def random_coeff(rng: random.Random, symbols: bool = True) -> CoeffPoly:
    terms = {}
    for _ in range(rng.randint(1, 3)):
        ev = rng.randint(-2, 3) if symbols else 0
        ea = rng.randint(0, 1) if symbols else 0
        num = rng.choice([-3, -2, -1, 1, 2, 3])
        den = rng.choice([1, 1, 2])
        key = (ev, ea, 0, 0)
        terms[key] = terms.get(key, 0) + Fraction(num, den)
    return CoeffPoly({k: v for k, v in terms.items() if v})


def random_word(rng: random.Random, algebra: AlgebraSpec, max_letters: int) -> tuple:
    length = rng.randint(0, max_letters)
    return letters_to_word(rng.randrange(algebra.n_gens) for _ in range(length))


def random_ncpoly(rng: random.Random, algebra: AlgebraSpec, max_terms: int = 3,
                  max_letters: int = 4, symbols: bool = True) -> NCPoly:
    out = algebra.zero()
    for _ in range(rng.randint(1, max_terms)):
        w = random_word(rng, algebra, max_letters)
        cd = random_coeff(rng, symbols)._d
        if cd:
            out = out + NCPoly._raw(algebra, {w: cd})
    return out

"""Pure-Python and compiled kernels must agree exactly (values and steps)."""

import random
from fractions import Fraction

import pytest

from conftest import letters_to_word, property_algebras
from heisenpoly import _kernel_py
from heisenpoly._kernel import KERNEL_IMPL

try:
    from heisenpoly import _kernel_cy
except ImportError:  # pragma: no cover - pure-python environment
    _kernel_cy = None

needs_ext = pytest.mark.skipif(_kernel_cy is None, reason="compiled kernel not built")


def random_cdict(rng):
    return {
        (rng.randint(-3, 3), rng.randint(0, 2), rng.randint(0, 1), rng.randint(0, 1)):
        Fraction(rng.choice([-3, -1, 1, 2, 5]), rng.choice([1, 1, 2, 3]))
        for _ in range(rng.randint(1, 4))
    }


def test_kernel_selected():
    assert KERNEL_IMPL in ("python", "cython")


@needs_ext
def test_cd_arithmetic_matches():
    rng = random.Random(61)
    for _ in range(300):
        a, b = random_cdict(rng), random_cdict(rng)
        assert _kernel_py.cd_add(a, b) == _kernel_cy.cd_add(dict(a), dict(b))
        assert _kernel_py.cd_sub(a, b) == _kernel_cy.cd_sub(dict(a), dict(b))
        assert _kernel_py.cd_mul(a, b) == _kernel_cy.cd_mul(dict(a), dict(b))
        assert _kernel_py.cd_neg(a) == _kernel_cy.cd_neg(dict(a))
        s = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        assert _kernel_py.cd_scale(a, s) == _kernel_cy.cd_scale(dict(a), s)


@needs_ext
def test_word_helpers_match():
    rng = random.Random(67)
    for _ in range(200):
        w1 = letters_to_word(rng.randrange(4) for _ in range(rng.randint(0, 6)))
        w2 = letters_to_word(rng.randrange(4) for _ in range(rng.randint(0, 6)))
        assert _kernel_py.word_concat(w1, w2) == _kernel_cy.word_concat(w1, w2)
        assert _kernel_py.word_is_normal(w1) == _kernel_cy.word_is_normal(w1)
        weights = (1, 0, 1, 0)
        assert _kernel_py.word_measure(w1, weights) == _kernel_cy.word_measure(w1, weights)


@needs_ext
def test_straighten_matches_including_steps():
    rng = random.Random(71)
    for algebra in property_algebras():
        for _ in range(40):
            items = []
            for _ in range(rng.randint(1, 3)):
                w = letters_to_word(rng.randrange(algebra.n_gens)
                                    for _ in range(rng.randint(0, 8)))
                items.append((w, random_cdict(rng)))
            got_py = _kernel_py.straighten(list(items), algebra.rules, algebra.weights)
            got_cy = _kernel_cy.straighten(list(items), algebra.rules, algebra.weights)
            assert got_py == got_cy


@needs_ext
def test_mul_terms_matches():
    rng = random.Random(73)
    for algebra in property_algebras():
        for _ in range(30):
            def terms():
                return {
                    letters_to_word(rng.randrange(algebra.n_gens)
                                    for _ in range(rng.randint(0, 5))): random_cdict(rng)
                    for _ in range(rng.randint(1, 3))
                }
            t1, t2 = terms(), terms()
            assert _kernel_py.mul_terms(t1, t2, algebra.rules, algebra.weights) == \
                _kernel_cy.mul_terms(t1, t2, algebra.rules, algebra.weights)

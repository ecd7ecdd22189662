"""Noncommutative polynomials over the supported algebras and their
normal-ordering engine.

An :class:`AlgebraSpec` fixes a generator list in canonical order
(b-type generators before a-type; B before A for the Borel algebras) and a
rewrite table with one rule per out-of-order adjacent generator pair.  An
:class:`NCPoly` is a finite sum of run-length-encoded words with
:class:`~heisenpoly.scalars.CoeffPoly` coefficients; words need not be normal
(builders produce raw sides), and :meth:`NCPoly.normal_order` rewrites any
polynomial to the unique canonical form where every word is ordered.

Rewriting applies the table rule at the leftmost out-of-order junction of a
word; the worklist underneath coalesces equal intermediate words, and the
number of rule applications is reported through :func:`count_rewrite_steps`.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence, Union

from . import _kernel as K
from .scalars import CoeffPoly, q_pow

Scalar = Union[int, Fraction, CoeffPoly]


class AlgebraMismatchError(ValueError):
    """Operands belong to different algebras."""


class UnsupportedAlgebraError(ValueError):
    """Operation not defined for this algebra kind."""


_Q = {(2, 0, 0, 0): 1}
_V = {(1, 0, 0, 0): 1}
_VINV = {(-1, 0, 0, 0): 1}
_QM1 = {(2, 0, 0, 0): 1, (0, 0, 0, 0): -1}


@dataclass(frozen=True)
class AlgebraSpec:
    """One of the five supported algebra kinds.

    kind:     'classical' | 'q' | 'qplane' | 'borelA' | 'borelB'
    pairs:    number p of (b_i, a_i) pairs (classical only; qplane has 2)
    central:  '1' or 'c', the value of [a_i, b_i] (classical only)
    q_one:    borelA with q = 1, i.e. the classical relation [A, B] = A
    """

    kind: str
    pairs: int = 1
    central: str = "1"
    q_one: bool = False

    def __post_init__(self):
        if self.kind not in ("classical", "q", "qplane", "borelA", "borelB"):
            raise ValueError(f"unknown algebra kind {self.kind!r}")
        if self.pairs < 1:
            raise ValueError("need at least one generator pair")
        if self.kind != "classical" and self.pairs != (2 if self.kind == "qplane" else 1):
            raise ValueError(f"pairs is not a free parameter for {self.kind}")
        if self.central not in ("1", "c"):
            raise ValueError("central must be '1' or 'c'")
        if self.central == "c" and self.kind != "classical":
            raise ValueError("symbolic central element is classical-only")
        if self.q_one and self.kind != "borelA":
            raise ValueError("q_one applies to borelA only")

    # -- static structure ---------------------------------------------------

    @property
    def gen_names(self) -> tuple:
        return _gen_names(self)

    @property
    def n_gens(self) -> int:
        return len(self.gen_names)

    @property
    def rules(self) -> dict:
        return _rules(self)

    @property
    def weights(self) -> tuple:
        """Per-generator weights for the middle termination-measure component."""
        if self.kind == "qplane":
            return (1, 0, 1, 0)
        return (0,) * self.n_gens

    @property
    def supports_star(self) -> bool:
        return self.kind in ("classical", "q", "qplane")

    def star_position(self, g: int) -> int:
        p = self.n_gens // 2
        return g + p if g < p else g - p

    def a_positions(self) -> range:
        """Positions of lowering (a-type / A) generators."""
        if self.kind in ("borelA", "borelB"):
            return range(1, 2)
        p = self.n_gens // 2
        return range(p, 2 * p)

    def position(self, name: str) -> int:
        try:
            return self.gen_names.index(name)
        except ValueError:
            raise KeyError(f"unknown generator {name!r} for {self.kind}") from None

    # -- element constructors ------------------------------------------------

    def zero(self) -> "NCPoly":
        return NCPoly._raw(self, {})

    def one(self) -> "NCPoly":
        return NCPoly._raw(self, {(): {(0, 0, 0, 0): 1}})

    def scalar(self, value: Scalar) -> "NCPoly":
        cd = _coeff(value)._d
        return NCPoly._raw(self, {(): dict(cd)} if cd else {})

    def gen(self, name: str) -> "NCPoly":
        return NCPoly._raw(self, {(self.position(name), 1): {(0, 0, 0, 0): 1}})

    def word(self, runs: Sequence[tuple], coeff: Scalar = 1) -> "NCPoly":
        """Build a single-word polynomial from (generator name, exponent) runs."""
        flat = ()
        for name, e in runs:
            if e < 0:
                raise ValueError("word exponents must be >= 0")
            if e:
                flat = K.word_concat(flat, (self.position(name), e))
        cd = _coeff(coeff)._d
        return NCPoly._raw(self, {flat: dict(cd)} if cd else {})

    def clean_word(self, word) -> tuple:
        """Validate and re-encode a flat (gen, exp, ...) word: generators in
        range, exponents positive, adjacent equal runs merged."""
        word = tuple(word)
        if len(word) % 2:
            raise ValueError(f"odd-length word {word}")
        out = ()
        for i in range(0, len(word), 2):
            g, e = word[i], word[i + 1]
            if not 0 <= g < self.n_gens:
                raise ValueError(f"generator position {g} out of range")
            if e < 0:
                raise ValueError("word exponents must be >= 0")
            if e:
                out = K.word_concat(out, (g, e))
        return out

    def from_terms(self, terms: Mapping[tuple, Scalar]) -> "NCPoly":
        out = {}
        for w, c in terms.items():
            cd = _coeff(c)._d
            if not cd:
                continue
            w = self.clean_word(w)
            acc = out.get(w)
            if acc is None:
                out[w] = dict(cd)
            else:
                K.cd_iadd(acc, cd)
                if not acc:
                    del out[w]
        return NCPoly._raw(self, out)


def heisenberg_classical(p: int = 1, central: str = "1") -> AlgebraSpec:
    return AlgebraSpec("classical", pairs=p, central=central)


def heisenberg_q() -> AlgebraSpec:
    return AlgebraSpec("q")


def quantum_plane() -> AlgebraSpec:
    return AlgebraSpec("qplane", pairs=2)


def borel_a(q_one: bool = False) -> AlgebraSpec:
    return AlgebraSpec("borelA", q_one=q_one)


def borel_b() -> AlgebraSpec:
    return AlgebraSpec("borelB")


@lru_cache(maxsize=None)
def _gen_names(spec: AlgebraSpec) -> tuple:
    if spec.kind in ("borelA", "borelB"):
        return ("B", "A")
    if spec.kind == "qplane":
        return ("b1", "b2", "a1", "a2")
    p = spec.pairs
    if spec.kind == "q" or p == 1:
        return ("b", "a")
    return tuple(f"b{i}" for i in range(1, p + 1)) + tuple(f"a{i}" for i in range(1, p + 1))


@lru_cache(maxsize=None)
def _rules(spec: AlgebraSpec) -> dict:
    rules = {}
    if spec.kind == "classical":
        p = spec.pairs
        central = {(0, 0, 0, 1): 1} if spec.central == "c" else None
        for i in range(p):
            bi, ai = i, p + i
            rules[(ai, bi)] = (((bi, 1, ai, 1), None), ((), central))
            for j in range(p):
                bj, aj = j, p + j
                if i != j:
                    rules[(ai, bj)] = (((bj, 1, ai, 1), None),)
                if j < i:
                    rules[(ai, aj)] = (((aj, 1, ai, 1), None),)
                    rules[(bi, bj)] = (((bj, 1, bi, 1), None),)
    elif spec.kind == "q":
        rules[(1, 0)] = (((0, 1, 1, 1), dict(_Q)), ((), None))
    elif spec.kind == "qplane":
        b1, b2, a1, a2 = 0, 1, 2, 3
        rules[(a1, b1)] = (((b1, 1, a1, 1), dict(_Q)), ((), None), ((b2, 1, a2, 1), dict(_QM1)))
        rules[(a2, b2)] = (((b2, 1, a2, 1), dict(_Q)), ((), None))
        rules[(a1, b2)] = (((b2, 1, a1, 1), dict(_V)),)
        rules[(a2, b1)] = (((b1, 1, a2, 1), dict(_V)),)
        rules[(b2, b1)] = (((b1, 1, b2, 1), dict(_VINV)),)
        rules[(a2, a1)] = (((a1, 1, a2, 1), dict(_V)),)
    elif spec.kind == "borelA":
        q = None if spec.q_one else dict(_Q)
        rules[(1, 0)] = (((0, 1, 1, 1), q), ((1, 1), None))
    else:  # borelB
        rules[(1, 0)] = (((0, 1, 1, 1), dict(_Q)), ((0, 1), None))
    return rules


def _coeff(value: Scalar) -> CoeffPoly:
    if isinstance(value, CoeffPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return CoeffPoly.number(value)
    raise TypeError(f"cannot use {type(value).__name__} as a coefficient")


# -- rewrite step accounting -------------------------------------------------

_step_counter: contextvars.ContextVar = contextvars.ContextVar("heisenpoly_steps", default=None)


class StepCounter:
    __slots__ = ("steps",)

    def __init__(self):
        self.steps = 0


@contextlib.contextmanager
def count_rewrite_steps():
    """Context manager collecting rewrite-rule applications into a counter."""
    counter = StepCounter()
    token = _step_counter.set(counter)
    try:
        yield counter
    finally:
        _step_counter.reset(token)


def _add_steps(n: int):
    counter = _step_counter.get()
    if counter is not None:
        counter.steps += n


class NCPoly:
    """Finite sum of words in one algebra with CoeffPoly coefficients."""

    __slots__ = ("algebra", "_t")

    def __init__(self, algebra: AlgebraSpec, terms: Mapping[tuple, Scalar] | None = None):
        self.algebra = algebra
        self._t = algebra.from_terms(terms)._t if terms else {}

    @classmethod
    def _raw(cls, algebra: AlgebraSpec, t: dict) -> "NCPoly":
        p = cls.__new__(cls)
        p.algebra = algebra
        p._t = t
        return p

    # -- inspection -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._t

    @property
    def is_normal(self) -> bool:
        return all(K.word_is_normal(w) for w in self._t)

    @property
    def term_count(self) -> int:
        return len(self._t)

    def words(self) -> list:
        return list(self._t)

    def coefficient(self, word: tuple) -> CoeffPoly:
        cd = self._t.get(self.algebra.clean_word(word))
        return CoeffPoly._raw(dict(cd)) if cd else CoeffPoly.number(0)

    @property
    def terms(self) -> dict:
        return {w: CoeffPoly._raw(dict(cd)) for w, cd in self._t.items()}

    def a_degree(self) -> int:
        """Maximal total a-type degree over stored words."""
        a_set = set(self.algebra.a_positions())
        best = 0
        for w in self._t:
            d = sum(w[i + 1] for i in range(0, len(w), 2) if w[i] in a_set)
            best = max(best, d)
        return best

    def __repr__(self):
        from .exprio import print_poly

        p = self if self.is_normal else self.normal_order()
        return f"NCPoly<{self.algebra.kind}>({print_poly(p)!r})"

    # -- ring operations --------------------------------------------------

    def _check(self, other: "NCPoly"):
        if self.algebra != other.algebra:
            raise AlgebraMismatchError(
                f"operands over different algebras: {self.algebra} vs {other.algebra}")

    def _lift(self, other):
        if isinstance(other, NCPoly):
            return other
        if isinstance(other, (int, Fraction, CoeffPoly)):
            return self.algebra.scalar(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        self._check(o)
        out = {w: dict(cd) for w, cd in self._t.items()}
        for w, cd in o._t.items():
            acc = out.get(w)
            if acc is None:
                out[w] = dict(cd)
            else:
                K.cd_iadd(acc, cd)
                if not acc:
                    del out[w]
        return NCPoly._raw(self.algebra, out)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __neg__(self):
        return NCPoly._raw(self.algebra, {w: K.cd_neg(cd) for w, cd in self._t.items()})

    def __mul__(self, other):
        """Ring product: distribute, concatenate, then normal-order."""
        o = self._lift(other)
        if o is None:
            return NotImplemented
        self._check(o)
        t, steps = K.mul_terms(self._t, o._t, self.algebra.rules, self.algebra.weights)
        _add_steps(steps)
        return NCPoly._raw(self.algebra, t)

    def __rmul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    def scale(self, value: Scalar) -> "NCPoly":
        """Coefficientwise product with a scalar; words are left untouched."""
        cd = _coeff(value)._d
        if not cd:
            return self.algebra.zero()
        out = {}
        for w, c in self._t.items():
            nc = K.cd_mul(c, cd)
            if nc:
                out[w] = nc
        return NCPoly._raw(self.algebra, out)

    def free_mul(self, other) -> "NCPoly":
        """Concatenation product without normal ordering (raw builder form)."""
        o = self._lift(other)
        if o is None:
            raise TypeError(f"cannot multiply NCPoly by {type(other).__name__}")
        self._check(o)
        return NCPoly._raw(self.algebra, K.free_mul_terms(self._t, o._t))

    def free_pow(self, k: int) -> "NCPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = self.algebra.one()
        for _ in range(k):
            out = out.free_mul(self)
        return out

    def normal_order(self) -> "NCPoly":
        """Canonical form: every word normal, no zero coefficients."""
        if self.is_normal:
            return self
        t, steps = K.straighten(self._t.items(), self.algebra.rules, self.algebra.weights)
        _add_steps(steps)
        return NCPoly._raw(self.algebra, t)

    # -- involution and substitution ---------------------------------------

    def adjoint(self) -> "NCPoly":
        """Hermitian conjugate: reverse words and swap a_i with b_i."""
        if not self.algebra.supports_star:
            raise UnsupportedAlgebraError(
                f"adjoint is not defined for the {self.algebra.kind} algebra")
        star = self.algebra.star_position
        out = {}
        for w, cd in self._t.items():
            runs = [(star(w[i]), w[i + 1]) for i in range(len(w) - 2, -1, -2)]
            nw = ()
            for g, e in runs:
                nw = K.word_concat(nw, (g, e))
            acc = out.get(nw)
            if acc is None:
                out[nw] = dict(cd)
            else:
                K.cd_iadd(acc, cd)
                if not acc:
                    del out[nw]
        return NCPoly._raw(self.algebra, out)

    def substitute(self, assignments: Mapping[str, object]) -> "NCPoly":
        """Substitute scalar symbols termwise (see CoeffPoly.substitute)."""
        out = {}
        for w, cd in self._t.items():
            c = CoeffPoly._raw(dict(cd)).substitute(assignments)
            if c:
                out[w] = c._d
        return NCPoly._raw(self.algebra, out)

    def map_to(self, algebra: AlgebraSpec) -> "NCPoly":
        """Reinterpret words positionally in another algebra of equal rank."""
        if algebra.n_gens != self.algebra.n_gens:
            raise AlgebraMismatchError("generator counts differ")
        return NCPoly._raw(algebra, {w: dict(cd) for w, cd in self._t.items()})

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.algebra != o.algebra:
            return False
        return self.normal_order()._t == o.normal_order()._t

    __hash__ = None


def nc_equal(p: NCPoly, r: NCPoly) -> bool:
    """True iff normal_order(p - r) = 0; raises on algebra mismatch."""
    p._check(r)
    return (p - r).normal_order().is_zero


def commutator(x: NCPoly, y: NCPoly) -> NCPoly:
    """[x, y] = xy - yx, in raw (free-product) form."""
    return x.free_mul(y) - y.free_mul(x)


def q_commutator(x: NCPoly, y: NCPoly) -> NCPoly:
    """[x, y]_q = xy - q yx, in raw form."""
    return x.free_mul(y) - y.free_mul(x).scale(q_pow(1))

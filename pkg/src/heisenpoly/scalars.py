"""Exact coefficient ring: Laurent polynomials in v (v**2 = q) over Q.

Coefficients of every operator polynomial live in this ring.  A value is a
finite sum of monomials ``r * v**e_v * alpha**e_a * eps**e_e * c**e_c`` with
rational ``r``; ``e_v`` may be negative, the auxiliary exponents may not.
Storing ``v = q**(1/2)`` instead of q keeps half-integer q-powers (quantum
plane) exact monomials.

Also provides the combinatorial quantities used by the identity builders:
q-numbers ``{n} = 1 + q + ... + q**(n-1)``, q-factorials, q-binomials and
ordinary multinomial coefficients.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

from ._kernel import cd_add, cd_mul, cd_neg, cd_sub

Rational = Fraction
Number = Union[int, Fraction]

_SYMBOLS = ("v", "alpha", "eps", "c")


class CoeffPoly:
    """Immutable sparse Laurent polynomial in v, alpha, eps, c over Q."""

    __slots__ = ("_d", "_hash")

    def __init__(self, terms: Mapping[tuple, Number] | None = None):
        d = {}
        if terms:
            for k, val in terms.items():
                if val:
                    if any(e < 0 for e in k[1:]):
                        raise ValueError("alpha/eps/c exponents must be >= 0")
                    d[tuple(k)] = val
        self._d = d
        self._hash = None

    @classmethod
    def _raw(cls, d: dict) -> "CoeffPoly":
        """Wrap a kernel dict without copying; caller must not reuse it."""
        p = cls.__new__(cls)
        p._d = d
        p._hash = None
        return p

    @classmethod
    def number(cls, x: Number) -> "CoeffPoly":
        return cls._raw({(0, 0, 0, 0): x} if x else {})

    @classmethod
    def monomial(cls, coeff: Number = 1, v: int = 0, alpha: int = 0,
                 eps: int = 0, c: int = 0) -> "CoeffPoly":
        if alpha < 0 or eps < 0 or c < 0:
            raise ValueError("alpha/eps/c exponents must be >= 0")
        return cls._raw({(v, alpha, eps, c): coeff} if coeff else {})

    # -- ring structure -----------------------------------------------------

    def _lift(self, other) -> "CoeffPoly | None":
        if isinstance(other, CoeffPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return CoeffPoly.number(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return CoeffPoly._raw(cd_add(self._d, o._d))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return CoeffPoly._raw(cd_sub(self._d, o._d))

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return CoeffPoly._raw(cd_sub(o._d, self._d))

    def __neg__(self):
        return CoeffPoly._raw(cd_neg(self._d))

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return CoeffPoly._raw(cd_mul(self._d, o._d))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._d == o._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._d.items()))
        return self._hash

    def __bool__(self):
        return bool(self._d)

    @property
    def is_zero(self) -> bool:
        return not self._d

    @property
    def terms(self) -> dict:
        return dict(self._d)

    def __len__(self):
        return len(self._d)

    # -- substitution -------------------------------------------------------

    def substitute(self, assignments: Mapping[str, object]) -> "CoeffPoly":
        """Evaluate some symbols exactly; unassigned symbols remain.

        Keys: ``v``, ``alpha``, ``eps``, ``c`` and the convenience key ``q``
        (requires every v-exponent to be even).  Values are rationals or
        CoeffPoly (the latter only for non-negative exponents).
        """
        if "q" in assignments and "v" in assignments:
            raise ValueError("assign either q or v, not both")
        vals = {}
        use_q = "q" in assignments
        for sym, val in assignments.items():
            if sym not in ("q", "v", "alpha", "eps", "c"):
                raise KeyError(f"unknown symbol {sym!r}")
            vals[sym] = val if isinstance(val, CoeffPoly) else Fraction(val)
        out = ZERO
        for exps, coeff in sorted(self._d.items()):
            ev, ea, ee, ec = exps
            factor = CoeffPoly.number(coeff)
            rem = [0, 0, 0, 0]
            for pos, (sym, e) in enumerate(
                    (("v", ev), ("alpha", ea), ("eps", ee), ("c", ec))):
                if sym == "v" and use_q:
                    sym = "q"
                if sym not in vals:
                    rem[pos] = e
                    continue
                val = vals[sym]
                if sym == "q":
                    if e % 2:
                        raise ValueError(
                            "cannot substitute q with odd v-exponents present; "
                            "substitute v instead")
                    e //= 2
                if isinstance(val, CoeffPoly):
                    if e < 0:
                        raise ValueError(f"negative power of {sym} needs a rational value")
                    factor = factor * val ** e
                else:
                    if e < 0 and val == 0:
                        raise ZeroDivisionError(f"zero assigned to {sym} with negative exponent")
                    factor = factor * CoeffPoly.number(val ** e)
            out = out + factor * CoeffPoly._raw({tuple(rem): 1})
        return out

    # -- rendering ----------------------------------------------------------

    def sorted_terms(self) -> list:
        """Terms sorted ascending by (e_v, e_alpha, e_eps, e_c)."""
        return sorted(self._d.items())

    def report_str(self) -> str:
        """Human-readable form with q and fractional q-powers (q^(1/2))."""
        if not self._d:
            return "0"
        parts = []
        for exps, coeff in self.sorted_terms():
            atom = _term_text(exps, coeff, report=True)
            if not parts:
                parts.append(atom)
            else:
                mag = atom[1:] if atom.startswith("-") else atom
                parts.append(("- " if coeff < 0 else "+ ") + mag)
        return " ".join(parts)

    def __str__(self):
        return self.report_str()

    def __repr__(self):
        return f"CoeffPoly({self.report_str()!r})"


def _exp_text(base: str, e: int, report: bool) -> str:
    if e == 1:
        return base
    if e < 0 and report:
        return f"{base}^({e})"
    return f"{base}^{e}"


def _v_text(ev: int, report: bool) -> str:
    if report:
        if ev % 2 == 0:
            return _exp_text("q", ev // 2, True)
        if ev == 1:
            return "q^(1/2)"
        return f"q^({ev}/2)"
    if ev % 2 == 0:
        return _exp_text("q", ev // 2, False)
    return _exp_text("v", ev, False)


def _term_text(exps, coeff, report: bool) -> str:
    """Text of one monomial, sign included when negative."""
    ev, ea, ee, ec = exps
    factors = []
    if ev:
        factors.append(_v_text(ev, report))
    if ea:
        factors.append(_exp_text("alpha", ea, report))
    if ee:
        factors.append(_exp_text("eps", ee, report))
    if ec:
        factors.append(_exp_text("c", ec, report))
    f = Fraction(coeff)
    if not factors:
        return str(f)
    if f == 1:
        return "*".join(factors)
    if f == -1:
        return "-" + "*".join(factors)
    return str(f) + "*" + "*".join(factors)


ZERO = CoeffPoly.number(0)
ONE = CoeffPoly.number(1)
Q = CoeffPoly.monomial(v=2)
V = CoeffPoly.monomial(v=1)
ALPHA = CoeffPoly.monomial(alpha=1)
EPS = CoeffPoly.monomial(eps=1)
C = CoeffPoly.monomial(c=1)


def rational(num: int, den: int = 1) -> CoeffPoly:
    return CoeffPoly.number(Fraction(num, den))


def q_pow(k: int) -> CoeffPoly:
    """q**k as a CoeffPoly (k may be negative)."""
    return CoeffPoly.monomial(v=2 * k)


def v_pow(k: int) -> CoeffPoly:
    """q**(k/2) as a CoeffPoly (k may be negative)."""
    return CoeffPoly.monomial(v=k)


@lru_cache(maxsize=None)
def qnum(n: int) -> CoeffPoly:
    """The q-number {n} = 1 + q + ... + q**(n-1); {0} = 0."""
    if n < 0:
        raise ValueError("q-number needs n >= 0")
    return CoeffPoly({(2 * i, 0, 0, 0): 1 for i in range(n)})


@lru_cache(maxsize=None)
def qfactorial(n: int) -> CoeffPoly:
    """{n}! = {1}{2}...{n}; {0}! = 1."""
    if n < 0:
        raise ValueError("q-factorial needs n >= 0")
    if n == 0:
        return ONE
    return qfactorial(n - 1) * qnum(n)


@lru_cache(maxsize=None)
def qbinomial(n: int, k: int) -> CoeffPoly:
    """Gaussian binomial {n}!/({k}!{n-k}!), computed by the q-Pascal rule."""
    if k < 0 or n < 0 or k > n:
        raise ValueError("q-binomial needs 0 <= k <= n")
    if k == 0 or k == n:
        return ONE
    return qbinomial(n - 1, k - 1) + q_pow(k) * qbinomial(n - 1, k)


def multinomial(n: int, parts: Iterable[int]) -> Fraction:
    """n! / prod(parts!) for parts summing to n."""
    parts = list(parts)
    if any(p < 0 for p in parts):
        raise ValueError("parts must be >= 0")
    if sum(parts) != n:
        raise ValueError(f"parts sum to {sum(parts)}, expected {n}")
    den = 1
    for p in parts:
        den *= math.factorial(p)
    return Fraction(math.factorial(n), den)

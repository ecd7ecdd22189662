"""Concrete module actions of the algebras on commutative polynomial spaces.

These realizations are the independent cross-check on the rewrite engine:
an operator polynomial acts on monomials letter by letter, with no normal
ordering involved.

* ``diff(p)``: b_i multiplies by x_i, a_i differentiates; realizes the
  classical p-pair algebra with central element 1.
* ``jackson()``: b multiplies by x, a is the Jackson q-derivative
  D x^k = {k} x^(k-1); realizes the q-deformed pair.
* ``qplane_fock()``: the vacuum module of the quantum plane: the basis
  monomial x^i y^j stands for b1^i b2^j applied to a vacuum annihilated by
  a1, a2.  The generator actions below follow from the commutation rules
  alone:

      b1: |i,j> -> |i+1,j>          b2: |i,j> -> q^(-i/2) |i,j+1>
      a1: |i,j> -> q^j {i} |i-1,j>  a2: |i,j> -> q^(i/2) {j} |i,j-1>

Equality of operators is decided on all monomials with per-variable exponent
up to J + 2 where J bounds the a-degree; a normal-ordered element of
a-degree <= J annihilating x^0..x^J is zero by triangularity of the diagonal
action, so the margin of 2 is pure caution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Mapping, Union

from . import _kernel as K
from .ncalg import AlgebraSpec, NCPoly, quantum_plane
from .scalars import CoeffPoly, qnum

Scalar = Union[int, Fraction, CoeffPoly]


class RealizationMismatchError(ValueError):
    """Operator algebra does not match the realization."""


class ModulePoly:
    """Commutative polynomial in the module variables with CoeffPoly coefficients."""

    __slots__ = ("nvars", "_t")

    def __init__(self, nvars: int, terms: Mapping[tuple, Scalar] | None = None):
        self.nvars = nvars
        self._t = {}
        if terms:
            for exps, c in terms.items():
                exps = tuple(exps)
                if len(exps) != nvars or any(e < 0 for e in exps):
                    raise ValueError(f"bad monomial {exps} for {nvars} variables")
                cd = c._d if isinstance(c, CoeffPoly) else CoeffPoly.number(Fraction(c))._d
                if cd:
                    self._t[exps] = dict(cd)

    @classmethod
    def _raw(cls, nvars: int, t: dict) -> "ModulePoly":
        m = cls.__new__(cls)
        m.nvars = nvars
        m._t = t
        return m

    @classmethod
    def monomial(cls, exps: tuple, coeff: Scalar = 1) -> "ModulePoly":
        return cls(len(exps), {tuple(exps): coeff})

    @property
    def is_zero(self) -> bool:
        return not self._t

    @property
    def terms(self) -> dict:
        return {e: CoeffPoly._raw(dict(cd)) for e, cd in self._t.items()}

    def _check(self, other: "ModulePoly"):
        if self.nvars != other.nvars:
            raise ValueError("variable counts differ")

    def __add__(self, other: "ModulePoly"):
        self._check(other)
        out = {e: dict(cd) for e, cd in self._t.items()}
        for e, cd in other._t.items():
            acc = out.get(e)
            if acc is None:
                out[e] = dict(cd)
            else:
                K.cd_iadd(acc, cd)
                if not acc:
                    del out[e]
        return ModulePoly._raw(self.nvars, out)

    def __neg__(self):
        return ModulePoly._raw(self.nvars, {e: K.cd_neg(cd) for e, cd in self._t.items()})

    def __sub__(self, other: "ModulePoly"):
        return self + (-other)

    def scale(self, coeff: Scalar) -> "ModulePoly":
        cd = coeff._d if isinstance(coeff, CoeffPoly) else CoeffPoly.number(coeff)._d
        out = {}
        for e, c in self._t.items():
            nc = K.cd_mul(c, cd)
            if nc:
                out[e] = nc
        return ModulePoly._raw(self.nvars, out)

    def substitute(self, assignments) -> "ModulePoly":
        out = {}
        for e, cd in self._t.items():
            c = CoeffPoly._raw(dict(cd)).substitute(assignments)
            if c:
                out[e] = c._d
        return ModulePoly._raw(self.nvars, out)

    def __eq__(self, other):
        if not isinstance(other, ModulePoly):
            return NotImplemented
        return self.nvars == other.nvars and self._t == other._t

    __hash__ = None

    def __repr__(self):
        if not self._t:
            return "ModulePoly(0)"
        names = ("x", "y") if self.nvars == 2 else (
            ("x",) if self.nvars == 1 else tuple(f"x{i+1}" for i in range(self.nvars)))
        parts = []
        for exps, cd in sorted(self._t.items()):
            mono = "*".join(f"{names[i]}^{e}" for i, e in enumerate(exps) if e) or "1"
            parts.append(f"({CoeffPoly._raw(dict(cd)).report_str()})*{mono}")
        return "ModulePoly(" + " + ".join(parts) + ")"


@dataclass(frozen=True)
class Realization:
    """A module action: one of diff(p), jackson, qplane-fock."""

    kind: str  # 'diff' | 'jackson' | 'qplane-fock'
    p: int = 1

    @property
    def name(self) -> str:
        return self.kind

    @property
    def nvars(self) -> int:
        return 2 if self.kind == "qplane-fock" else self.p

    def check_algebra(self, algebra: AlgebraSpec):
        ok = ((self.kind == "diff" and algebra.kind == "classical" and algebra.pairs == self.p)
              or (self.kind == "jackson" and algebra.kind == "q")
              or (self.kind == "qplane-fock" and algebra.kind == "qplane"))
        if not ok:
            raise RealizationMismatchError(
                f"{self.kind} realization cannot represent the {algebra.kind} algebra")


def diff(p: int = 1) -> Realization:
    return Realization("diff", p)


def jackson() -> Realization:
    return Realization("jackson")


def qplane_fock() -> Realization:
    return Realization("qplane-fock", 2)


@lru_cache(maxsize=None)
def _qfalling(k: int, e: int) -> CoeffPoly:
    """{k}{k-1}...{k-e+1}; zero when e > k."""
    if e > k:
        return CoeffPoly.number(0)
    out = CoeffPoly.number(1)
    for t in range(e):
        out = out * qnum(k - t)
    return out


def _int_falling(k: int, e: int) -> int:
    out = 1
    for t in range(e):
        out *= k - t
    return out


def _act_run(r: Realization, g: int, e: int, exps: tuple):
    """Action of one generator run on a monomial: (new_exps, cdict coeff) or None."""
    if r.kind == "diff":
        p = r.p
        if g < p:
            new = list(exps)
            new[g] += e
            return tuple(new), None
        i = g - p
        k = exps[i]
        if e > k:
            return None
        new = list(exps)
        new[i] = k - e
        return tuple(new), {(0, 0, 0, 0): _int_falling(k, e)}
    if r.kind == "jackson":
        k = exps[0]
        if g == 0:
            return (k + e,), None
        c = _qfalling(k, e)
        if c.is_zero:
            return None
        return (k - e,), c._d
    # quantum-plane vacuum module
    i, j = exps
    if g == 0:
        return (i + e, j), None
    if g == 1:
        return (i, j + e), {(-i * e, 0, 0, 0): 1}
    if g == 2:
        c = _qfalling(i, e)
        if c.is_zero:
            return None
        return (i - e, j), K.cd_mul(c._d, {(2 * j * e, 0, 0, 0): 1})
    c = _qfalling(j, e)
    if c.is_zero:
        return None
    return (i, j - e), K.cd_mul(c._d, {(i * e, 0, 0, 0): 1})


def apply(op: NCPoly, value: ModulePoly, r: Realization) -> ModulePoly:
    """Act with an operator polynomial on a module polynomial, letter by letter."""
    r.check_algebra(op.algebra)
    if value.nvars != r.nvars:
        raise ValueError(f"module polynomial has {value.nvars} variables, expected {r.nvars}")
    if r.kind == "diff" and op.algebra.central == "c":
        for cd in op._t.values():
            if any(exps[3] for exps in cd):
                raise RealizationMismatchError(
                    "operator coefficients carry the symbolic central element c")
    out = {}
    for word, wcd in op._t.items():
        runs = [(word[i], word[i + 1]) for i in range(0, len(word), 2)]
        for exps, mcd in value._t.items():
            cur = exps
            coeff = None  # None means 1
            dead = False
            for g, e in reversed(runs):
                res = _act_run(r, g, e, cur)
                if res is None:
                    dead = True
                    break
                cur, c = res
                if c is not None:
                    coeff = dict(c) if coeff is None else K.cd_mul(coeff, c)
            if dead:
                continue
            contrib = K.cd_mul(wcd, mcd)
            if coeff is not None:
                contrib = K.cd_mul(contrib, coeff)
            acc = out.get(cur)
            if acc is None:
                if contrib:
                    out[cur] = contrib
            else:
                K.cd_iadd(acc, contrib)
                if not acc:
                    del out[cur]
    return ModulePoly._raw(r.nvars, out)


def sufficiency_bound(diff_poly: NCPoly) -> int:
    """Maximal total a-degree over stored words (0 for the zero polynomial)."""
    return diff_poly.a_degree()


def oracle_equal(lhs: NCPoly, rhs: NCPoly, r: Realization) -> bool:
    """Decide lhs = rhs by acting on all monomials up to the sufficiency bound."""
    difference = lhs - rhs
    bound = sufficiency_bound(difference) + 2
    for exps in product(range(bound + 1), repeat=r.nvars):
        if not apply(difference, ModulePoly.monomial(exps), r).is_zero:
            return False
    return True


def fock_action_table(r: Realization, max_degree: int) -> dict:
    """Action of each quantum-plane generator on x^i y^j for i, j <= max_degree."""
    if r.kind != "qplane-fock":
        raise RealizationMismatchError("action table is defined for the qplane-fock module")
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    A = quantum_plane()
    table = {}
    for name in A.gen_names:
        g = A.gen(name)
        for exps in product(range(max_degree + 1), repeat=2):
            table[(name, exps)] = apply(g, ModulePoly.monomial(exps), r)
    return table

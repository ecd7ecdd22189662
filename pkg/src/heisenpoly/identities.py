"""Builders and verification driver for the operator identities.

Each tag builds a left and right side as raw (not yet normal-ordered)
``NCPoly`` values over its own algebra; ``verify`` normal-orders both sides
and reports the residual of the difference.  A few tags bundle more than one
relation (the embedding relation sets E9/E25 and the basic-commutator pairs
F3BASIC/F5BASIC); those are checked relation by relation and reported as a
single merged result, with ``verify_embedding`` exposing the per-relation
results for the embeddings.

E2EPS is the deliberate counterexample: one factor of the E2 product is
shifted by the symbol eps, so its residual is expected to be a nonzero
combination of eps-proportional diagonal words b^k a^k, k <= n.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Iterator, Mapping

from .ncalg import (
    AlgebraSpec,
    NCPoly,
    borel_a,
    borel_b,
    commutator,
    count_rewrite_steps,
    heisenberg_classical,
    heisenberg_q,
    q_commutator,
    quantum_plane,
)
from .scalars import ALPHA, EPS, ONE, Q, multinomial, q_pow, qbinomial, qnum, v_pow


class UnknownTagError(KeyError):
    """Identity tag is not one of the declared IdentityId values."""


class ParameterError(ValueError):
    """Missing or out-of-range identity parameter."""


@dataclass
class VerificationResult:
    id: str
    params: dict
    status: str  # 'pass' | 'fail'  (pass iff residual == 0)
    residual: NCPoly
    lhs_terms: int
    rhs_terms: int
    rewrite_steps: int
    elapsed_ms: int

    @property
    def outcome(self) -> str:
        """Reported status: E2EPS failing in the documented shape is expected."""
        if self.id == "E2EPS":
            ok = self.status == "fail" and eps_residual_ok(self.residual, self.params["n"])
            return "expected-fail" if ok else "fail"
        return self.status


def _prod(factors) -> NCPoly:
    out = None
    for f in factors:
        out = f if out is None else out.free_mul(f)
    return out


def _compositions(total: int, parts: int) -> Iterator[tuple]:
    """All tuples of `parts` non-negative integers summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


# -- builders (one per tag, returning a list of (label, lhs, rhs)) -----------


def _b_e2(n):
    A = heisenberg_classical()
    ba = A.word([("b", 1), ("a", 1)])
    lhs = _prod(ba - m for m in range(n + 1))
    rhs = A.word([("b", n + 1), ("a", n + 1)])
    return [("E2", lhs, rhs)]


def _b_e2eps(n):
    A = heisenberg_classical()
    ba = A.word([("b", 1), ("a", 1)])
    shifted = min(1, n)
    lhs = _prod(ba - m - (EPS if m == shifted else 0) for m in range(n + 1))
    rhs = A.word([("b", n + 1), ("a", n + 1)])
    return [("E2EPS", lhs, rhs)]


def _b_e5(n):
    A = heisenberg_classical()
    a, b = A.gen("a"), A.gen("b")
    aa_bb = a.free_mul(a) - b.free_mul(b)
    lhs = _prod(aa_bb - (2 * k + 1) for k in range(n + 1))
    rhs = (a + b).free_pow(n + 1).free_mul((a - b).free_pow(n + 1))
    return [("E5", lhs, rhs)]


def _b_e7(n):
    A = borel_a(q_one=True)
    B, Ag = A.gen("B"), A.gen("A")
    lhs = B.free_mul(Ag).free_pow(n + 1)
    rhs = _prod(B + k for k in range(n + 1)).free_mul(A.word([("A", n + 1)]))
    return [("E7", lhs, rhs)]


def _b_e8(n):
    A = borel_a(q_one=True)
    B, Ag = A.gen("B"), A.gen("A")
    lhs = Ag.free_mul(B).free_pow(n + 1)
    rhs = A.word([("A", n + 1)]).free_mul(_prod(B - k for k in range(n + 1)))
    return [("E8", lhs, rhs)]


def _sl2_generators(A: AlgebraSpec):
    jp = A.word([("b", 2), ("a", 1)]) - A.word([("b", 1)]).scale(2 * ALPHA)
    j0 = A.word([("b", 1), ("a", 1)]) - A.scalar(ALPHA)
    jm = A.gen("a")
    return jp, j0, jm


def _b_e9():
    jp, j0, jm = _sl2_generators(heisenberg_classical())
    return [
        ("[J+,J0]=-J+", commutator(jp, j0), -jp),
        ("[J-,J0]=+J-", commutator(jm, j0), jm),
        ("[J+,J-]=-2J0", commutator(jp, jm), j0.scale(-2)),
    ]


def _b_e10(n):
    A = heisenberg_classical()
    x = A.word([("b", 1), ("a", 2)]) - A.word([("a", 1)], coeff=n)
    return [("E10", x.free_pow(n + 1), A.word([("b", n + 1), ("a", 2 * n + 2)]))]


def _b_e11(n):
    A = heisenberg_classical()
    x = A.word([("b", 2), ("a", 1)]) - A.word([("b", 1)], coeff=n)
    return [("E11", x.free_pow(n + 1), A.word([("b", 2 * n + 2), ("a", n + 1)]))]


def _b_e13(n):
    A = heisenberg_classical(central="c")
    lhs = A.word([("a", 1), ("b", 1), ("a", 1)]).free_pow(n + 1)
    rhs = A.word([("a", n + 1), ("b", n + 1), ("a", n + 1)])
    return [("E13", lhs, rhs)]


def _b_e13q(n):
    A = heisenberg_q()
    lhs = A.word([("a", 1), ("b", 1), ("a", 1)]).free_pow(n + 1)
    rhs = A.word([("a", n + 1), ("b", n + 1), ("a", n + 1)])
    return [("E13Q", lhs, rhs)]


def _b_f3alt(m, n):
    A = heisenberg_classical(central="c")
    runs = [("a", 1), ("b", 1)] * (m - 1) + [("a", 1)]
    lhs = A.word(runs).free_pow(n)
    rhs = A.word(([("a", n), ("b", n)] * (m - 1)) + [("a", n)])
    return [("F3ALT", lhs, rhs)]


def _b_f3basic(n):
    A = heisenberg_classical()
    a, b = A.gen("a"), A.gen("b")
    an, bn = A.word([("a", n)]), A.word([("b", n)])
    rhs_a = A.word([("a", n - 1)], coeff=n) if n else A.zero()
    rhs_b = A.word([("b", n - 1)], coeff=-n) if n else A.zero()
    return [
        ("[a^n,b]=n a^(n-1)", an.free_mul(b) - b.free_mul(an), rhs_a),
        ("[b^n,a]=-n b^(n-1)", bn.free_mul(a) - a.free_mul(bn), rhs_b),
    ]


def _b_f5basic(n):
    A = heisenberg_q()
    a, b = A.gen("a"), A.gen("b")
    an, bn = A.word([("a", n)]), A.word([("b", n)])
    lhs_a = an.free_mul(b) - b.free_mul(an).scale(q_pow(n))
    rhs_a = A.word([("a", n - 1)], coeff=qnum(n)) if n else A.zero()
    lhs_b = bn.free_mul(a) - a.free_mul(bn).scale(q_pow(-n))
    rhs_b = A.word([("b", n - 1)], coeff=-qnum(n) * q_pow(-n)) if n else A.zero()
    return [
        ("a^n b - q^n b a^n = {n} a^(n-1)", lhs_a, rhs_a),
        ("b^n a - q^-n a b^n = -{n}q^-n b^(n-1)", lhs_b, rhs_b),
    ]


def _diag_sum(A: AlgebraSpec) -> NCPoly:
    p = A.n_gens // 2
    names = A.gen_names
    out = A.zero()
    for i in range(p):
        out = out + A.word([(names[i], 1), (names[p + i], 1)])
    return out


def _b_e15(n, p):
    A = heisenberg_classical(p)
    s = _diag_sum(A)
    lhs = _prod(s - el for el in range(n + 1))
    rhs = A.zero()
    for js in _compositions(n + 1, p):
        runs = []
        for i, j in enumerate(js):
            runs += [(f"b{i + 1}" if p > 1 else "b", j), (f"a{i + 1}" if p > 1 else "a", j)]
        rhs = rhs + A.word(runs, coeff=multinomial(n + 1, js))
    return [("E15", lhs, rhs)]


def _grouped_word(A: AlgebraSpec, js, extra_front=None, extra_back=None):
    p = len(js)
    names = A.gen_names
    runs = list(extra_front or [])
    runs += [(names[i], js[i]) for i in range(p)]
    runs += [(names[p + i], js[i]) for i in range(p)]
    runs += list(extra_back or [])
    return runs


def _b_e16(n, p, l):
    A = heisenberg_classical(p)
    names = A.gen_names
    bl = names[l - 1]
    lhs = A.gen(bl).free_mul(_diag_sum(A) - n).free_pow(n + 1)
    rhs = A.zero()
    for js in _compositions(n + 1, p):
        runs = _grouped_word(A, js, extra_front=[(bl, n + 1)])
        rhs = rhs + A.word(runs, coeff=multinomial(n + 1, js))
    return [("E16", lhs, rhs)]


def _b_e17(n, p, l):
    A = heisenberg_classical(p)
    names = A.gen_names
    al = names[p + l - 1]
    lhs = (_diag_sum(A) - n).free_mul(A.gen(al)).free_pow(n + 1)
    rhs = A.zero()
    for js in _compositions(n + 1, p):
        runs = _grouped_word(A, js, extra_back=[(al, n + 1)])
        rhs = rhs + A.word(runs, coeff=multinomial(n + 1, js))
    return [("E17", lhs, rhs)]


def _b_e19(n):
    A = heisenberg_q()
    ba = A.word([("b", 1), ("a", 1)])
    lhs = _prod(ba - qnum(el) for el in range(n + 1))
    rhs = A.word([("b", n + 1), ("a", n + 1)], coeff=v_pow(n * (n + 1)))
    return [("E19", lhs, rhs)]


def _b_e22(n):
    A = borel_a()
    B, Ag = A.gen("B"), A.gen("A")
    lhs = B.free_mul(Ag).free_pow(n + 1)
    rising = _prod(B.scale(q_pow(k)) + qnum(k) for k in range(n + 1))
    return [("E22", lhs, rising.free_mul(A.word([("A", n + 1)])))]


def _b_e23(n):
    A = borel_a()
    B, Ag = A.gen("B"), A.gen("A")
    lhs = Ag.free_mul(B).free_pow(n + 1)
    falling = _prod(B.scale(q_pow(-k)) - A.scalar(qnum(k) * q_pow(-k)) for k in range(n + 1))
    return [("E23", lhs, A.word([("A", n + 1)]).free_mul(falling))]


def _b_e25():
    A = heisenberg_q()
    a = A.gen("a")
    m_plus = A.word([("b", 2), ("a", 1)]) - A.word([("b", 1)]).scale(2 * ALPHA)
    n0_coeff = (ONE + Q) + 2 * ALPHA * (Q * Q - Q)
    n0 = A.word([("b", 1), ("a", 1)], coeff=n0_coeff) - A.scalar(2 * ALPHA)
    sigma = ONE - 2 * ALPHA * (ONE - Q)
    one_q = ONE + Q
    return [
        ("q N0 a - a N0 = -(1+q)s a",
         n0.free_mul(a).scale(Q) - a.free_mul(n0), a.scale(-(one_q * sigma))),
        ("N0 M+ - q M+ N0 = (1+q)s M+",
         n0.free_mul(m_plus) - m_plus.free_mul(n0).scale(Q), m_plus.scale(one_q * sigma)),
        ("q^2 M+ a - a M+ = -N0",
         m_plus.free_mul(a).scale(Q * Q) - a.free_mul(m_plus), -n0),
    ]


def _b_e26(n):
    A = heisenberg_q()
    x = A.word([("b", 1), ("a", 2)]) - A.word([("a", 1)], coeff=qnum(n))
    rhs = A.word([("b", n + 1), ("a", 2 * n + 2)], coeff=q_pow(n * (n + 1)))
    return [("E26", x.free_pow(n + 1), rhs)]


def _b_e28(n):
    A = heisenberg_q()
    x = A.word([("b", 2), ("a", 1)]) - A.word([("b", 1)], coeff=qnum(n))
    rhs = A.word([("b", 2 * n + 2), ("a", n + 1)], coeff=q_pow(n * (n + 1)))
    return [("E28", x.free_pow(n + 1), rhs)]


def _b_e30(n):
    A = quantum_plane()
    s = _diag_sum(A)
    lhs = _prod(s - qnum(el) for el in range(n + 1))
    rhs = A.zero()
    for el in range(n + 2):
        coeff = v_pow(n * (n + 1) + el * (el - n - 1)) * qbinomial(n + 1, el)
        word = [("b1", n + 1 - el), ("b2", el), ("a1", n + 1 - el), ("a2", el)]
        rhs = rhs + A.word(word, coeff=coeff)
    return [("E30", lhs, rhs)]


def _b_e31():
    A = quantum_plane()
    a1 = A.gen("a1")
    k = _diag_sum(A) - A.scalar(ALPHA)
    lhs = q_commutator(a1, k)
    rhs = a1.scale(ONE - ALPHA + ALPHA * Q)
    return [("E31", lhs, rhs)]


def _b_e32(n):
    A = quantum_plane()
    x = (A.word([("b1", 1), ("a1", 2)])
         + A.word([("b2", 1), ("a2", 1), ("a1", 1)])
         - A.word([("a1", 1)], coeff=qnum(n)))
    rhs = A.zero()
    for el in range(n + 2):
        coeff = v_pow(2 * n * (n + 1) + el * (el - n - 1)) * qbinomial(n + 1, el)
        word = [("b1", n + 1 - el), ("b2", el), ("a1", n + 1 - el), ("a2", el), ("a1", n + 1)]
        rhs = rhs + A.word(word, coeff=coeff)
    return [("E32", x.free_pow(n + 1), rhs)]


def _b_e33(n):
    A = quantum_plane()
    x = (A.word([("b1", 2), ("a1", 1)])
         + A.word([("b1", 1), ("b2", 1), ("a2", 1)])
         - A.word([("b1", 1)], coeff=qnum(n)))
    rhs = A.zero()
    for el in range(n + 2):
        coeff = v_pow(2 * n * (n + 1) + el * (el - n - 1)) * qbinomial(n + 1, el)
        word = [("b1", 2 * n + 2 - el), ("b2", el), ("a1", n + 1 - el), ("a2", el)]
        rhs = rhs + A.word(word, coeff=coeff)
    return [("E33", x.free_pow(n + 1), rhs)]


def _b_bb(n):
    A = borel_b()
    B, Ag = A.gen("B"), A.gen("A")
    lhs = B.free_mul(Ag).free_pow(n + 1)
    rising = _prod(Ag.scale(q_pow(k)) + qnum(k) for k in range(n + 1))
    return [("BB", lhs, A.word([("B", n + 1)]).free_mul(rising))]


@dataclass(frozen=True)
class TagInfo:
    builder: Callable
    params: tuple  # declared parameter names, iteration order for the suite
    realization: str | None = None
    expected_fail: bool = False


TAGS: dict[str, TagInfo] = {
    "E2": TagInfo(_b_e2, ("n",), realization="diff"),
    "E5": TagInfo(_b_e5, ("n",)),
    "E7": TagInfo(_b_e7, ("n",)),
    "E8": TagInfo(_b_e8, ("n",)),
    "E9": TagInfo(_b_e9, ()),
    "E10": TagInfo(_b_e10, ("n",), realization="diff"),
    "E11": TagInfo(_b_e11, ("n",), realization="diff"),
    "E13": TagInfo(_b_e13, ("n",), realization="diff"),
    "E13Q": TagInfo(_b_e13q, ("n",)),
    "F3ALT": TagInfo(_b_f3alt, ("m", "n")),
    "F3BASIC": TagInfo(_b_f3basic, ("n",)),
    "F5BASIC": TagInfo(_b_f5basic, ("n",)),
    "E15": TagInfo(_b_e15, ("n", "p"), realization="diff"),
    "E16": TagInfo(_b_e16, ("n", "p", "l"), realization="diff"),
    "E17": TagInfo(_b_e17, ("n", "p", "l"), realization="diff"),
    "E19": TagInfo(_b_e19, ("n",), realization="jackson"),
    "E22": TagInfo(_b_e22, ("n",)),
    "E23": TagInfo(_b_e23, ("n",)),
    "E25": TagInfo(_b_e25, ()),
    "E26": TagInfo(_b_e26, ("n",), realization="jackson"),
    "E28": TagInfo(_b_e28, ("n",), realization="jackson"),
    "E30": TagInfo(_b_e30, ("n",), realization="qplane-fock"),
    "E31": TagInfo(_b_e31, ()),
    "E32": TagInfo(_b_e32, ("n",), realization="qplane-fock"),
    "E33": TagInfo(_b_e33, ("n",), realization="qplane-fock"),
    "BB": TagInfo(_b_bb, ("n",)),
    "E2EPS": TagInfo(_b_e2eps, ("n",), expected_fail=True),
}

EMBEDDING_TAGS = ("E9", "E25")


def _info(tag: str) -> TagInfo:
    try:
        return TAGS[tag]
    except KeyError:
        raise UnknownTagError(f"unknown identity tag {tag!r}") from None


def _check_params(tag: str, params: Mapping[str, int]) -> dict:
    info = _info(tag)
    out = {}
    for name in info.params:
        if name not in params:
            raise ParameterError(f"{tag} requires parameter {name!r}")
        value = params[name]
        if not isinstance(value, int):
            raise ParameterError(f"parameter {name!r} must be an integer")
        out[name] = value
    extra = set(params) - set(info.params)
    if extra:
        raise ParameterError(f"{tag} does not take parameters {sorted(extra)}")
    if "n" in out and out["n"] < 0:
        raise ParameterError("n must be >= 0")
    if "p" in out and out["p"] < 1:
        raise ParameterError("p must be >= 1")
    if "m" in out and out["m"] < 1:
        raise ParameterError("m must be >= 1")
    if "l" in out and not (1 <= out["l"] <= out.get("p", 1)):
        raise ParameterError("l must satisfy 1 <= l <= p")
    return out


def relations(tag: str, **params) -> list:
    """The (label, lhs, rhs) relations behind a tag, raw sides."""
    checked = _check_params(tag, params)
    return _info(tag).builder(**checked)


def build(tag: str, **params):
    """One (lhs, rhs) pair; multi-relation tags are stacked by summation."""
    rels = relations(tag, **params)
    if len(rels) == 1:
        return rels[0][1], rels[0][2]
    lhs = rels[0][1]
    rhs = rels[0][2]
    for _, l, r in rels[1:]:
        lhs = lhs + l
        rhs = rhs + r
    return lhs, rhs


def eps_residual_ok(residual: NCPoly, n: int) -> bool:
    """Nonzero and made only of eps-proportional diagonal words b^k a^k, k <= n."""
    if residual.is_zero:
        return False
    for word, coeff in residual.terms.items():
        if word == ():
            pass
        elif not (len(word) == 4 and word[0] == 0 and word[2] == 1
                  and word[1] == word[3] and word[1] <= n):
            return False
        if any(exps[2] < 1 for exps in coeff.terms):
            return False
    return True


def verify(tag: str, **params) -> VerificationResult:
    """Normal-order both sides of every relation and compare."""
    checked = _check_params(tag, params)
    start = time.perf_counter()
    with count_rewrite_steps() as counter:
        rels = relations(tag, **checked)
        residual = None
        lhs_terms = rhs_terms = 0
        ok = True
        for _, lhs, rhs in rels:
            ln = lhs.normal_order()
            rn = rhs.normal_order()
            lhs_terms += ln.term_count
            rhs_terms += rn.term_count
            diff = ln - rn
            ok = ok and diff.is_zero
            residual = diff if residual is None else residual + diff
    elapsed = int(round((time.perf_counter() - start) * 1000))
    return VerificationResult(
        id=tag, params=checked, status="pass" if ok else "fail", residual=residual,
        lhs_terms=lhs_terms, rhs_terms=rhs_terms, rewrite_steps=counter.steps,
        elapsed_ms=elapsed)


def verify_embedding(tag: str) -> list:
    """Per-relation results for the sl2 embeddings (E9 classical, E25 cleared q)."""
    if tag not in EMBEDDING_TAGS:
        raise UnknownTagError(f"{tag!r} is not an embedding tag (expected E9 or E25)")
    results = []
    for idx, (label, lhs, rhs) in enumerate(relations(tag), start=1):
        start = time.perf_counter()
        with count_rewrite_steps() as counter:
            ln = lhs.normal_order()
            rn = rhs.normal_order()
            diff = ln - rn
        elapsed = int(round((time.perf_counter() - start) * 1000))
        results.append(VerificationResult(
            id=tag, params={"relation": idx},
            status="pass" if diff.is_zero else "fail", residual=diff,
            lhs_terms=ln.term_count, rhs_terms=rn.term_count,
            rewrite_steps=counter.steps, elapsed_ms=elapsed))
    return results


def suite_grid(tag: str, max_n: int, max_p: int, max_m: int) -> Iterator[dict]:
    """Parameter assignments for one tag, ascending in declared order."""
    names = _info(tag).params
    if not names:
        yield {}
        return
    if names == ("n",):
        for n in range(max_n + 1):
            yield {"n": n}
    elif names == ("m", "n"):
        for m in range(1, max_m + 1):
            for n in range(max_n + 1):
                yield {"m": m, "n": n}
    elif names == ("n", "p"):
        for n in range(max_n + 1):
            for p in range(1, max_p + 1):
                yield {"n": n, "p": p}
    elif names == ("n", "p", "l"):
        for n in range(max_n + 1):
            for p in range(1, max_p + 1):
                for l in range(1, p + 1):
                    yield {"n": n, "p": p, "l": l}
    else:  # pragma: no cover
        raise AssertionError(f"unhandled parameter signature {names}")


def verify_suite(max_n: int, max_p: int = 1, max_m: int = 1) -> list:
    """Run every tag over its full parameter grid, in deterministic order."""
    if max_n < 0 or max_p < 0 or max_m < 0:
        raise ParameterError("suite bounds must be >= 0")
    results = []
    for tag in TAGS:
        for params in suite_grid(tag, max_n, max_p, max_m):
            results.append(verify(tag, **params))
    return results

"""Exact symbolic engine for polynomial identities in Heisenberg-type algebras.

The package normal-orders noncommutative polynomials over the classical
p-pair Heisenberg algebra, its q-deformation, the two-dimensional quantum
plane and the two Borel variants, and verifies a fixed catalogue of
operator identities with exact rational/Laurent coefficients.
"""

from ._kernel import KERNEL_IMPL
from .exprio import ParseError, parse, parse_scalar, print_poly
from .identities import (
    TAGS,
    VerificationResult,
    build,
    relations,
    verify,
    verify_embedding,
    verify_suite,
)
from .ncalg import (
    AlgebraMismatchError,
    AlgebraSpec,
    NCPoly,
    UnsupportedAlgebraError,
    borel_a,
    borel_b,
    commutator,
    count_rewrite_steps,
    heisenberg_classical,
    heisenberg_q,
    nc_equal,
    q_commutator,
    quantum_plane,
)
from .realizations import (
    ModulePoly,
    Realization,
    apply,
    diff,
    fock_action_table,
    jackson,
    oracle_equal,
    qplane_fock,
    sufficiency_bound,
)
from .scalars import (
    ALPHA,
    C,
    EPS,
    ONE,
    Q,
    V,
    ZERO,
    CoeffPoly,
    Rational,
    multinomial,
    q_pow,
    qbinomial,
    qfactorial,
    qnum,
    v_pow,
)

__version__ = "0.1.0"

__all__ = [
    "ALPHA", "AlgebraMismatchError", "AlgebraSpec", "C", "CoeffPoly", "EPS",
    "KERNEL_IMPL", "ModulePoly", "NCPoly", "ONE", "ParseError", "Q",
    "Rational", "Realization", "TAGS", "UnsupportedAlgebraError", "V",
    "VerificationResult", "ZERO", "apply", "borel_a", "borel_b", "build",
    "commutator", "count_rewrite_steps", "diff", "fock_action_table",
    "heisenberg_classical", "heisenberg_q", "jackson", "multinomial",
    "nc_equal", "oracle_equal", "parse", "parse_scalar", "print_poly",
    "q_commutator", "q_pow", "qbinomial", "qfactorial", "qnum",
    "qplane_fock", "quantum_plane", "relations", "sufficiency_bound",
    "v_pow", "verify", "verify_embedding", "verify_suite",
]

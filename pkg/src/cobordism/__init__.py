"""Exact algebra for cobordism of manifolds with boundary and codimension-2 embeddings."""

from .chain import (
    ChainComplex,
    ChainMap,
    HalfHandleData,
    RelativeCobordismTriad,
    cone,
    dual,
    half_handle_complex,
    is_acyclic,
    is_H_cobordism,
    is_quasi_iso,
    shift,
    split_triad,
    union,
)
from .exact_linalg import AbelianGroup, IntMatrix, homology_at, saturation, smith_normal_form
from .forms import (
    EnlargementSpec,
    EpsSymmetricForm,
    RankEnlargementSpec,
    Subform,
    TriadLagrangians,
    enlarge,
    inertia,
    sublagrangian_quotient,
    wall_triad_signature,
)
from .polyarith import CyclotomicNumber, LaurentPolynomial, RootOfUnity, certified_sign, s_normalize
from .seifert import (
    MKInstance,
    SeifertEnlargementSpec,
    SeifertForm,
    alexander,
    distinguish,
    h_enlarge,
    lt_invariants,
    mk_check,
    s_enlarge,
    symmetrize,
)

__all__ = [
    "AbelianGroup",
    "alexander",
    "certified_sign",
    "ChainComplex",
    "ChainMap",
    "cone",
    "CyclotomicNumber",
    "distinguish",
    "dual",
    "enlarge",
    "EnlargementSpec",
    "EpsSymmetricForm",
    "h_enlarge",
    "half_handle_complex",
    "HalfHandleData",
    "homology_at",
    "inertia",
    "IntMatrix",
    "is_acyclic",
    "is_H_cobordism",
    "is_quasi_iso",
    "LaurentPolynomial",
    "lt_invariants",
    "mk_check",
    "MKInstance",
    "RankEnlargementSpec",
    "RelativeCobordismTriad",
    "RootOfUnity",
    "s_enlarge",
    "s_normalize",
    "saturation",
    "SeifertEnlargementSpec",
    "SeifertForm",
    "shift",
    "smith_normal_form",
    "split_triad",
    "Subform",
    "sublagrangian_quotient",
    "symmetrize",
    "TriadLagrangians",
    "union",
    "wall_triad_signature",
]

__version__ = "0.1.0"

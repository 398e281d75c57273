"""ε-symmetric forms over Z and their enlargements."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd

from .exact_linalg import (
    IntMatrix,
    det,
    is_saturated,
    kernel_basis,
    rank,
    saturation,
    smith_normal_form,
    solve_integer,
)
from .pivoting import hermitian_inertia

__all__ = [
    "EpsSymmetricForm",
    "Subform",
    "EnlargementSpec",
    "RankEnlargementSpec",
    "InertiaProfile",
    "TriadLagrangians",
    "Inv1Report",
    "SublagrangianError",
    "LagrangianError",
    "inertia",
    "radical",
    "annihilator",
    "is_isotropic",
    "is_sublagrangian",
    "is_lagrangian",
    "sublagrangian_quotient",
    "enlarge",
    "is_H_enlargement",
    "perp_of_base",
    "verify_inv1",
    "wall_triad_signature",
    "metabolic_bound",
    "find_lagrangian",
]


def _check_epsilon(epsilon: int) -> None:
    if epsilon not in (1, -1):
        raise ValueError(f"epsilon must be +1 or -1, got {epsilon}")


@dataclass(frozen=True)
class EpsSymmetricForm:
    epsilon: int
    gram: IntMatrix

    def __post_init__(self):
        _check_epsilon(self.epsilon)
        if not self.gram.is_square():
            raise ValueError(f"gram matrix must be square, got {self.gram.rows}x{self.gram.cols}")
        if self.gram != self.gram.T.scale(self.epsilon):
            loc = (self.gram - self.gram.T.scale(self.epsilon)).first_nonzero()
            raise ValueError(f"gram matrix is not {self.epsilon:+d}-symmetric (entry {loc})")

    @classmethod
    def from_rows(cls, epsilon: int, rows) -> "EpsSymmetricForm":
        rows = [list(r) for r in rows]
        return cls(epsilon, IntMatrix.from_rows(rows, cols=len(rows)))

    @classmethod
    def zero(cls, epsilon: int, dim: int) -> "EpsSymmetricForm":
        return cls(epsilon, IntMatrix.zeros(dim, dim))

    @classmethod
    def hyperbolic(cls, epsilon: int, rank: int = 1) -> "EpsSymmetricForm":
        I, Z = IntMatrix.identity(rank), IntMatrix.zeros(rank, rank)
        return cls(epsilon, IntMatrix.block([[Z, I], [I.scale(epsilon), Z]]))

    @property
    def dim(self) -> int:
        return self.gram.rows

    def __add__(self, other: "EpsSymmetricForm") -> "EpsSymmetricForm":
        """Orthogonal direct sum."""
        if self.epsilon != other.epsilon:
            raise ValueError("cannot add forms of different symmetry")
        if self.dim == 0:
            return other
        if other.dim == 0:
            return self
        Z1, Z2 = IntMatrix.zeros(self.dim, other.dim), IntMatrix.zeros(other.dim, self.dim)
        return EpsSymmetricForm(self.epsilon, IntMatrix.block([[self.gram, Z1], [Z2, other.gram]]))

    def __neg__(self) -> "EpsSymmetricForm":
        return EpsSymmetricForm(self.epsilon, -self.gram)

    def restrict(self, j: IntMatrix) -> "EpsSymmetricForm":
        """The pulled-back form jᵀ·B·j."""
        if j.rows != self.dim:
            raise ValueError(f"inclusion has {j.rows} rows, form has dimension {self.dim}")
        return EpsSymmetricForm(self.epsilon, j.T @ self.gram @ j)

    def pair(self, x: IntMatrix, y: IntMatrix) -> IntMatrix:
        return x.T @ self.gram @ y

    def determinant(self) -> int:
        return det(self.gram)

    def is_nonsingular(self) -> bool:
        """B: F → F* is an isomorphism over Z."""
        return abs(self.determinant()) == 1

    def is_nondegenerate(self) -> bool:
        return self.determinant() != 0


@dataclass(frozen=True)
class InertiaProfile:
    r_plus: int
    r_minus: int
    nullity: int

    @property
    def signature(self) -> int:
        return self.r_plus - self.r_minus

    @property
    def dimension(self) -> int:
        return self.r_plus + self.r_minus + self.nullity


def _content_normalize(block: list[list[int]]) -> list[list[int]]:
    g = 0
    for row in block:
        for x in row:
            g = gcd(g, x)
    if g > 1:
        return [[x // g for x in row] for row in block]
    return block


def _symmetric_inertia(rows: list[list[int]]) -> tuple[int, int, int]:
    return hermitian_inertia(
        rows,
        sign=lambda x: 1 if x > 0 else -1,
        is_zero=lambda x: x == 0,
        normalize=_content_normalize,
    )


def inertia(f: EpsSymmetricForm) -> InertiaProfile:
    """Inertia of B (ε = +1) or of the hermitian form iB (ε = −1)."""
    if f.epsilon == 1:
        return InertiaProfile(*_symmetric_inertia(f.gram.to_rows()))
    # iB is hermitian; its realification [[0, −B], [B, 0]] has every count doubled
    Z = IntMatrix.zeros(f.dim, f.dim)
    doubled = IntMatrix.block([[Z, -f.gram], [f.gram, Z]]) if f.dim else Z
    p, m, z = _symmetric_inertia(doubled.to_rows())
    return InertiaProfile(p // 2, m // 2, z // 2)


def signature(f: EpsSymmetricForm) -> int:
    return inertia(f).signature


def nullity(f: EpsSymmetricForm) -> int:
    return f.dim - rank(f.gram)


@dataclass(frozen=True)
class Subform:
    """Saturated sublattice of a form, given by the columns of ``inclusion``.

    A non-saturated (or dependent) basis is replaced by its saturation and
    ``input_was_saturated`` records that this happened.
    """

    parent: EpsSymmetricForm
    inclusion: IntMatrix
    input_was_saturated: bool = field(default=True)

    def __post_init__(self):
        if self.inclusion.rows != self.parent.dim:
            raise ValueError(
                f"inclusion has {self.inclusion.rows} rows, form has dimension {self.parent.dim}"
            )
        if not is_saturated(self.inclusion):
            object.__setattr__(self, "inclusion", saturation(self.inclusion, self.parent.dim))
            object.__setattr__(self, "input_was_saturated", False)

    @property
    def rank(self) -> int:
        return self.inclusion.cols

    def form(self) -> EpsSymmetricForm:
        return self.parent.restrict(self.inclusion)

    def same_span(self, other: "Subform") -> bool:
        if self.rank != other.rank:
            return False
        return rank(IntMatrix.hstack([self.inclusion, other.inclusion])) == self.rank if self.rank else True


def radical(f: EpsSymmetricForm) -> Subform:
    return Subform(f, kernel_basis(f.gram))


def annihilator(s: Subform) -> Subform:
    """F′^⊥ = ker(j*B: F → F′*)."""
    return Subform(s.parent, kernel_basis(s.inclusion.T @ s.parent.gram))


def is_isotropic(s: Subform) -> bool:
    return s.form().gram.is_zero()


def _adjoint_onto(s: Subform) -> bool:
    """j*B: F → L* is surjective over Z."""
    m = s.inclusion.T @ s.parent.gram
    snf = smith_normal_form(m)
    return snf.rank == s.rank and all(d == 1 for d in snf.invariant_factors)


def is_sublagrangian(s: Subform) -> bool:
    return s.input_was_saturated and is_isotropic(s) and _adjoint_onto(s)


def is_lagrangian(s: Subform) -> bool:
    return is_sublagrangian(s) and annihilator(s).rank == s.rank


class SublagrangianError(ValueError):
    """The subform is not a sublagrangian; ``reason`` is one of
    ``"not isotropic"``, ``"not saturated"``, ``"adjoint not surjective"``."""

    def __init__(self, reason: str):
        super().__init__(f"subform is not a sublagrangian: {reason}")
        self.reason = reason


class LagrangianError(ValueError):
    """A supplied inclusion is not a lagrangian."""


def _complement_basis(M: IntMatrix) -> IntMatrix:
    """Columns completing the saturated columns of M to a basis of Z^rows."""
    snf = smith_normal_form(M)
    # M = U⁻¹ [I; 0] V⁻¹, so the last columns of U⁻¹ complete the span of M
    return snf.U_inv.columns(range(M.cols, M.rows))


def sublagrangian_quotient(f: EpsSymmetricForm, L: Subform) -> EpsSymmetricForm:
    """The form induced on L^⊥/L."""
    if L.parent != f:
        raise ValueError("subform belongs to a different form")
    if not L.input_was_saturated:
        raise SublagrangianError("not saturated")
    if not is_isotropic(L):
        raise SublagrangianError("not isotropic")
    if not _adjoint_onto(L):
        raise SublagrangianError("adjoint not surjective")
    perp = annihilator(L).inclusion
    # coordinates of L inside the basis of L^⊥
    coords = _solve_in_basis(perp, L.inclusion)
    comp = _complement_basis(coords) if coords.rows else IntMatrix.zeros(0, 0)
    Q = perp @ comp
    return f.restrict(Q)


def _solve_in_basis(basis: IntMatrix, vectors: IntMatrix) -> IntMatrix:
    x = solve_integer(basis, vectors)
    if x is None:
        raise ValueError("vectors do not lie in the span of the basis")
    return x


@dataclass(frozen=True)
class RankEnlargementSpec:
    """Rank ℓ enlargement (F ⊕ L, [[B, C], [εCᵀ, D]]) with D ε-symmetric."""

    base: EpsSymmetricForm
    C: IntMatrix
    D: IntMatrix

    def __post_init__(self):
        k, eps = self.base.dim, self.base.epsilon
        if self.C.rows != k or self.D.shape != (self.C.cols, self.C.cols):
            raise ValueError(
                f"blocks do not fit: base {k}x{k}, C {self.C.shape}, D {self.D.shape}"
            )
        if self.D != self.D.T.scale(eps):
            raise ValueError("D must be ε-symmetric")

    @property
    def ell(self) -> int:
        return self.C.cols

    def full_blocks(self) -> tuple[IntMatrix, IntMatrix]:
        return self.C, self.D


@dataclass(frozen=True)
class EnlargementSpec:
    """Rank (ℓ⁻, ℓ⁺) enlargement of the block shape

        [[B,    0,    C],
         [0,    0,    D],
         [εCᵀ,  εDᵀ,  E]]

    with C: k×ℓ⁺, D: ℓ⁻×ℓ⁺ and E = εEᵀ: ℓ⁺×ℓ⁺.
    """

    base: EpsSymmetricForm
    l_minus: int
    l_plus: int
    C: IntMatrix
    D: IntMatrix
    E: IntMatrix

    def __post_init__(self):
        k, eps = self.base.dim, self.base.epsilon
        want = {"C": (k, self.l_plus), "D": (self.l_minus, self.l_plus), "E": (self.l_plus, self.l_plus)}
        for name, shape in want.items():
            got = getattr(self, name).shape
            if got != shape:
                raise ValueError(f"block {name} has shape {got}, expected {shape}")
        if self.E != self.E.T.scale(eps):
            raise ValueError("E must be ε-symmetric")

    @property
    def ell(self) -> int:
        return self.l_minus + self.l_plus

    def full_blocks(self) -> tuple[IntMatrix, IntMatrix]:
        """The (C, D) blocks of the same form read as a rank ℓ⁻+ℓ⁺ enlargement."""
        eps = self.base.epsilon
        k = self.base.dim
        C = IntMatrix.hstack([IntMatrix.zeros(k, self.l_minus), self.C])
        D = IntMatrix.block([
            [IntMatrix.zeros(self.l_minus, self.l_minus), self.D],
            [self.D.T.scale(eps), self.E],
        ]) if self.ell else IntMatrix.zeros(0, 0)
        return C, D


def _assemble(base: EpsSymmetricForm, C: IntMatrix, D: IntMatrix) -> EpsSymmetricForm:
    eps = base.epsilon
    if C.cols == 0:
        return base
    if base.dim == 0:
        return EpsSymmetricForm(eps, D)
    return EpsSymmetricForm(eps, IntMatrix.block([[base.gram, C], [C.T.scale(eps), D]]))


def enlarge(spec: EnlargementSpec | RankEnlargementSpec) -> EpsSymmetricForm:
    C, D = spec.full_blocks()
    return _assemble(spec.base, C, D)


def is_H_enlargement(spec: EnlargementSpec) -> bool:
    return spec.l_minus == spec.l_plus and abs(det(spec.D)) == 1


def perp_of_base(spec: EnlargementSpec | RankEnlargementSpec) -> EpsSymmetricForm:
    """Annihilator of F inside F′: ker((B C): F ⊕ L → F*) with the restricted pairing."""
    C, _ = spec.full_blocks()
    base = spec.base
    enlarged = enlarge(spec)
    if base.dim == 0:
        return enlarged
    K = kernel_basis(IntMatrix.hstack([base.gram, C]))
    return enlarged.restrict(K)


@dataclass(frozen=True)
class Inv1Report:
    delta_sigma: int
    delta_nullity: int
    bound_ok: bool
    equality_if_rank1: bool | None

    @property
    def total(self) -> int:
        return abs(self.delta_sigma) + abs(self.delta_nullity)


def verify_inv1(base: EpsSymmetricForm, enlarged: EpsSymmetricForm, ell: int) -> Inv1Report:
    """Signature/nullity jumps of an enlargement against the rank bound."""
    if enlarged.dim != base.dim + ell:
        raise ValueError(
            f"enlarged form has dimension {enlarged.dim}, expected {base.dim} + {ell}"
        )
    a, b = inertia(base), inertia(enlarged)
    ds, dn = b.signature - a.signature, b.nullity - a.nullity
    total = abs(ds) + abs(dn)
    return Inv1Report(
        delta_sigma=ds,
        delta_nullity=dn,
        bound_ok=total <= ell,
        equality_if_rank1=(total == 1) if ell == 1 else None,
    )


@dataclass(frozen=True)
class TriadLagrangians:
    """Three lagrangians L⁻, L″, L⁺ of one ε-symmetric form."""

    ambient: EpsSymmetricForm
    j_minus: IntMatrix
    j_dprime: IntMatrix
    j_plus: IntMatrix

    def __post_init__(self):
        for name in ("j_minus", "j_dprime", "j_plus"):
            j = getattr(self, name)
            if j.rows != self.ambient.dim:
                raise LagrangianError(f"{name} has {j.rows} rows, ambient form has dimension {self.ambient.dim}")
            if not is_lagrangian(Subform(self.ambient, j)):
                raise LagrangianError(f"{name} is not a lagrangian of the ambient form")


def wall_triad_signature(t: TriadLagrangians) -> int:
    """Signature of the (−ε)-symmetric kernel form on ker((j″ j⁻ j⁺)).

    On L″ ⊕ L⁻ ⊕ L⁺ the form is
        [[0,             j″ᵀBj⁻,   j″ᵀBj⁺],
         [−j⁻ᵀBj″,       0,        j⁻ᵀBj⁺],
         [−j⁺ᵀBj″,      −j⁺ᵀBj⁻,   0     ]]
    restricted to the kernel of the sum map into F″.
    """
    B = t.ambient.gram
    js = [t.j_dprime, t.j_minus, t.j_plus]
    sizes = [j.cols for j in js]
    blocks = []
    for a in range(3):
        row = []
        for b in range(3):
            if a == b:
                row.append(IntMatrix.zeros(sizes[a], sizes[b]))
            elif a < b:
                row.append(js[a].T @ B @ js[b])
            else:
                row.append(-(js[a].T @ B @ js[b]))
        blocks.append(row)
    total = sum(sizes)
    if total == 0:
        return 0
    # zero-width summands are dropped before assembly
    M = IntMatrix.block([[blk for blk, w in zip(row, sizes) if w] for row, h in zip(blocks, sizes) if h])
    K = kernel_basis(IntMatrix.hstack(js))
    kernel_form = EpsSymmetricForm(-t.ambient.epsilon, K.T @ M @ K)
    return inertia(kernel_form).signature


def metabolic_bound(
    f_sub: EpsSymmetricForm, f_meta: EpsSymmetricForm, j: IntMatrix, lagrangian: IntMatrix
) -> bool:
    """|σ(F′)| ≤ dim F − dim F′ + n(F′) for a morphism F′ → F into a metabolic form."""
    if j.shape != (f_meta.dim, f_sub.dim):
        raise ValueError(f"morphism has shape {j.shape}, expected {(f_meta.dim, f_sub.dim)}")
    if j.T @ f_meta.gram @ j != f_sub.gram:
        raise ValueError("j is not a morphism of forms: jᵀ·B·j differs from the subform's gram")
    if not is_lagrangian(Subform(f_meta, lagrangian)):
        raise LagrangianError("supplied lagrangian is not a lagrangian of the metabolic form")
    prof = inertia(f_sub)
    return abs(prof.signature) <= f_meta.dim - f_sub.dim + prof.nullity


def find_lagrangian(f: EpsSymmetricForm, bound: int = 3) -> IntMatrix | None:
    """Exhaustive search for a lagrangian with entries in [−bound, bound].

    Only attempted for dimension ≤ 4; larger forms raise ValueError.
    """
    n = f.dim
    if n > 4:
        raise ValueError("lagrangian search is exhaustive only for dimension ≤ 4")
    if n % 2:
        return None
    m = n // 2
    if m == 0:
        return IntMatrix.zeros(0, 0)
    B = f.gram
    vecs = []
    for v in itertools.product(range(-bound, bound + 1), repeat=n):
        if not any(v):
            continue
        g = 0
        for x in v:
            g = gcd(g, x)
        if g != 1 or next(x for x in v if x) < 0:
            continue
        col = IntMatrix(n, 1, v)
        if (col.T @ B @ col).is_zero():
            vecs.append(col)
    for combo in itertools.combinations(vecs, m):
        j = IntMatrix.hstack(list(combo))
        if not (j.T @ B @ j).is_zero():
            continue
        if is_lagrangian(Subform(f, j)):
            return j
    return None

"""Seifert forms: moves, Alexander polynomials and Levine–Tristram invariants."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from .exact_linalg import IntMatrix, det
from .forms import EnlargementSpec, EpsSymmetricForm
from .pivoting import hermitian_inertia
from .polyarith import (
    CyclotomicNumber,
    LaurentPolynomial,
    RootOfUnity,
    certified_sign,
    cyclo_det,
    cyclo_rank,
    eval_at,
    laurent_det,
    primitive_roots,
    s_normalize,
)

__all__ = [
    "SeifertForm",
    "SeifertEnlargementSpec",
    "LTResult",
    "MKInstance",
    "MKReport",
    "InvarianceReport",
    "DistinguishReport",
    "symmetrize",
    "alexander",
    "alexander_determinant",
    "enlargement_alexander_factor",
    "s_enlarge",
    "s_reduce_candidates",
    "h_enlarge",
    "is_h_enlargement",
    "b_matrix",
    "lt_invariants",
    "verify_enlargement_invariance",
    "mk_check",
    "distinguish",
    "s_equivalence_search",
]


@dataclass(frozen=True)
class SeifertForm:
    A: IntMatrix
    parity: int

    def __post_init__(self):
        if not self.A.is_square():
            raise ValueError(f"Seifert matrix must be square, got {self.A.rows}x{self.A.cols}")
        object.__setattr__(self, "parity", self.parity % 2)

    @classmethod
    def from_rows(cls, rows, parity: int) -> "SeifertForm":
        rows = [list(r) for r in rows]
        return cls(IntMatrix.from_rows(rows, cols=len(rows)), parity)

    @property
    def epsilon(self) -> int:
        return -1 if self.parity else 1

    @property
    def dim(self) -> int:
        return self.A.rows

    def congruent(self, P: IntMatrix) -> "SeifertForm":
        """Change of basis Pᵀ·A·P."""
        return SeifertForm(P.T @ self.A @ P, self.parity)

    def mirror(self) -> "SeifertForm":
        return SeifertForm(-self.A.T, self.parity)


def symmetrize(s: SeifertForm) -> EpsSymmetricForm:
    return EpsSymmetricForm(s.epsilon, s.A + s.A.T.scale(s.epsilon))


def _linear_matrix(x: IntMatrix, y: IntMatrix) -> list[list[LaurentPolynomial]]:
    """Entries of t·x + y as Laurent polynomials."""
    return [
        [LaurentPolynomial(0, [y[i, j], x[i, j]]) for j in range(x.cols)]
        for i in range(x.rows)
    ]


def alexander_determinant(s: SeifertForm) -> LaurentPolynomial:
    """det(tA + εAᵀ) exactly, without normalization (1 for the 0×0 form)."""
    return laurent_det(_linear_matrix(s.A, s.A.T.scale(s.epsilon)))


def alexander(s: SeifertForm) -> LaurentPolynomial:
    return s_normalize(alexander_determinant(s))


@dataclass(frozen=True)
class SeifertEnlargementSpec:
    """Rank (ℓ⁻, ℓ⁺) enlargement

        [[A, 0, α],
         [0, 0, x],
         [β, y, z]]

    with α: k×ℓ⁺, β: ℓ⁺×k, x: ℓ⁻×ℓ⁺, y: ℓ⁺×ℓ⁻, z: ℓ⁺×ℓ⁺.
    """

    base: SeifertForm
    l_minus: int
    l_plus: int
    alpha: IntMatrix
    beta: IntMatrix
    x: IntMatrix
    y: IntMatrix
    z: IntMatrix

    def __post_init__(self):
        k, lm, lp = self.base.dim, self.l_minus, self.l_plus
        want = {"alpha": (k, lp), "beta": (lp, k), "x": (lm, lp), "y": (lp, lm), "z": (lp, lp)}
        for name, shape in want.items():
            got = getattr(self, name).shape
            if got != shape:
                raise ValueError(f"block {name} has shape {got}, expected {shape}")

    @property
    def ell(self) -> tuple[int, int]:
        return (self.l_minus, self.l_plus)

    def symmetrized(self) -> EnlargementSpec:
        """The induced enlargement of the symmetrized form."""
        eps = self.base.epsilon
        return EnlargementSpec(
            symmetrize(self.base), self.l_minus, self.l_plus,
            C=self.alpha + self.beta.T.scale(eps),
            D=self.x + self.y.T.scale(eps),
            E=self.z + self.z.T.scale(eps),
        )


def h_enlarge(spec: SeifertEnlargementSpec) -> SeifertForm:
    k, lm, lp = spec.base.dim, spec.l_minus, spec.l_plus
    Z = IntMatrix.zeros
    rows = [
        [spec.base.A, Z(k, lm), spec.alpha],
        [Z(lm, k), Z(lm, lm), spec.x],
        [spec.beta, spec.y, spec.z],
    ]
    sizes = [k, lm, lp]
    blocks = [[b for b, w in zip(row, sizes) if w] for row, h in zip(rows, sizes) if h]
    A = IntMatrix.block(blocks) if blocks else IntMatrix.zeros(0, 0)
    return SeifertForm(A, spec.base.parity)


def is_h_enlargement(spec: SeifertEnlargementSpec) -> bool:
    if spec.l_minus != spec.l_plus:
        return False
    return abs(det(spec.x + spec.y.T.scale(spec.base.epsilon))) == 1


def enlargement_alexander_factor(spec: SeifertEnlargementSpec) -> LaurentPolynomial:
    """The factor f with Δ_{A′} = f · Δ_A for a rank (ℓ, ℓ) enlargement.

    Block elimination gives f = (−1)^ℓ det(tx + εyᵀ) det(ty + εxᵀ).
    """
    if spec.l_minus != spec.l_plus:
        raise ValueError("the factorization needs ℓ⁻ = ℓ⁺")
    eps = spec.base.epsilon
    f1 = laurent_det(_linear_matrix(spec.x, spec.y.T.scale(eps)))
    f2 = laurent_det(_linear_matrix(spec.y, spec.x.T.scale(eps)))
    sign = -1 if spec.l_minus % 2 else 1
    return f1 * f2 * sign


def _move_spec(s: SeifertForm, variant: str, vector: IntMatrix) -> SeifertEnlargementSpec:
    k = s.dim
    Z = IntMatrix.zeros
    one = IntMatrix.identity(1)
    if variant == "column":
        if vector.shape != (k, 1):
            raise ValueError(f"column move needs a {k}x1 vector, got {vector.rows}x{vector.cols}")
        return SeifertEnlargementSpec(s, 1, 1, alpha=vector, beta=Z(1, k), x=Z(1, 1), y=one, z=Z(1, 1))
    if variant == "row":
        if vector.shape != (1, k):
            raise ValueError(f"row move needs a 1x{k} vector, got {vector.rows}x{vector.cols}")
        return SeifertEnlargementSpec(s, 1, 1, alpha=Z(k, 1), beta=vector, x=one, y=Z(1, 1), z=Z(1, 1))
    raise ValueError(f"unknown move variant {variant!r}; expected 'column' or 'row'")


def s_enlarge(s: SeifertForm, variant: str, vector: IntMatrix) -> SeifertForm:
    """[[A,0,α],[0,0,0],[0,1,0]] (column) or [[A,0,0],[0,0,1],[β,0,0]] (row)."""
    return h_enlarge(_move_spec(s, variant, vector))


def s_reduce_candidates(s: SeifertForm) -> list[SeifertForm]:
    """All S-reductions visible on coordinate pairs.

    Coordinate i can be the new L⁻ line paired with coordinate j when row i
    and column i vanish except for x = A[i, j] and y = A[j, i], and
    (x, y) ∈ {(±1, 0), (0, ±1)}. Deleting i and j undoes the move.
    """
    A = s.A
    k = s.dim
    out = []
    seen = set()
    for i in range(k):
        for j in range(k):
            if i == j:
                continue
            x, y = A[i, j], A[j, i]
            if (abs(x), abs(y)) not in ((1, 0), (0, 1)):
                continue
            if any(A[i, c] for c in range(k) if c != j) or any(A[r, i] for r in range(k) if r != j):
                continue
            keep = [c for c in range(k) if c not in (i, j)]
            reduced = SeifertForm(A.submatrix(keep, keep), s.parity)
            if reduced not in seen:
                seen.add(reduced)
                out.append(reduced)
    return out


# ---------------------------------------------------------------- Levine–Tristram invariants

@dataclass(frozen=True)
class LTResult:
    xi: RootOfUnity
    nullity: int
    signature: int
    alexander_value_is_zero: bool


def b_matrix(s: SeifertForm, xi: RootOfUnity, modulus: int | None = None) -> list[list[CyclotomicNumber]]:
    """B_A(ξ) = (1 − ξ)A − ε(1 − ξ̄)Aᵀ over Q(ζ_modulus)."""
    N = xi.q if modulus is None else modulus
    z = xi.value(N)
    a = 1 - z
    b = (1 - z.conjugate()) * (-s.epsilon)
    A = s.A
    return [[a * A[i, j] + b * A[j, i] for j in range(s.dim)] for i in range(s.dim)]


def _hermitian_profile(H: list[list[CyclotomicNumber]]) -> tuple[int, int, int]:
    return hermitian_inertia(
        H,
        sign=certified_sign,
        is_zero=lambda z: z.is_zero(),
        conj=lambda z: z.conjugate(),
        inverse=lambda z: z.inverse(),
    )


def _hermitized(B: list[list[CyclotomicNumber]], epsilon: int, xi: RootOfUnity):
    """A hermitian matrix with the inertia of B (ε = −1) or of iB (ε = +1).

    Returns the matrix and the orientation relating its signature to the
    wanted one. For ε = +1 the scalar ξ − ξ̄ = 2i·sin θ stays inside Q(ζ_q),
    so the orientation is the sign of sin θ. At ξ = −1 that scalar vanishes,
    but then B is a real skew matrix and the orientation 0 records that
    iB has a spectrum symmetric about zero.
    """
    if epsilon == -1:
        return B, 1
    if xi.q == 2:
        return B, 0
    z = xi.value()
    w = z - z.conjugate()
    return [[w * x for x in row] for row in B], (1 if 2 * xi.p < xi.q else -1)


def _inertia_of(H: list[list[CyclotomicNumber]], orientation: int) -> tuple[int, int, int]:
    if orientation == 0:
        nul = len(H) - cyclo_rank(H)
        half = (len(H) - nul) // 2
        return half, half, nul
    p, m, z = _hermitian_profile(H)
    return (p, m, z) if orientation == 1 else (m, p, z)


def lt_invariants(s: SeifertForm, xi: RootOfUnity, delta: LaurentPolynomial | None = None) -> LTResult:
    """Nullity and signature of B_A(ξ), plus whether Δ(ξ) = 0.

    ``delta`` may pass a precomputed det(tA + εAᵀ) when sweeping many ξ.
    """
    B = b_matrix(s, xi)
    nullity = s.dim - cyclo_rank(B)
    r_plus, r_minus, zero = _inertia_of(*_hermitized(B, s.epsilon, xi))
    if zero != nullity:
        raise ArithmeticError(f"pivoting found nullity {zero}, elimination found {nullity}")
    if delta is None:
        delta = alexander_determinant(s)
    delta_zero = eval_at(delta, xi).is_zero()
    if (nullity > 0) != delta_zero:
        raise ArithmeticError(f"nullity {nullity} disagrees with Δ(ξ) = 0 being {delta_zero} at ξ = {xi}")
    return LTResult(xi, nullity, r_plus - r_minus, delta_zero)


@dataclass(frozen=True)
class InvarianceReport:
    applicable: bool
    preserved: bool
    base: tuple[int, int]       # (nullity, signature) of the base at ξ
    enlarged: tuple[int, int]   # (nullity, signature) of the enlargement at ξ
    jump: int                   # σ_{A′}(ξ) − σ_A(ξ)
    kernel_signature: int       # signature of the annihilator of the base inside B_{A′}(ξ)


def _cyclo_kernel(rows: list[list[CyclotomicNumber]], ncols: int, modulus: int) -> list[list[CyclotomicNumber]]:
    """Basis (as column vectors) of the right kernel, by reduced row echelon form."""
    A = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if not A[i][c].is_zero()), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = A[r][c].inverse()
        A[r] = [z * inv for z in A[r]]
        for i in range(len(A)):
            if i != r and not A[i][c].is_zero():
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    zero = CyclotomicNumber.from_int(modulus, 0)
    one = CyclotomicNumber.from_int(modulus, 1)
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [zero] * ncols
        v[free] = one
        for row_idx, pc in enumerate(pivots):
            v[pc] = -A[row_idx][free]
        basis.append(v)
    return basis


def verify_enlargement_invariance(spec: SeifertEnlargementSpec, xi: RootOfUnity) -> InvarianceReport:
    """Compare (n, σ) at ξ before and after an enlargement.

    Invariance is promised when det(ξx + εyᵀ) ≠ 0; otherwise the jump is
    reported with the signature of the annihilator of the base, which must
    agree with it.
    """
    base, enlarged = spec.base, h_enlarge(spec)
    eps = base.epsilon
    applicable = False
    if spec.l_minus == spec.l_plus:
        if spec.l_minus == 0:
            applicable = True
        else:
            N = xi.q
            z = xi.value(N)
            M = [[z * spec.x[i, j] + eps * spec.y[j, i] for j in range(spec.l_plus)] for i in range(spec.l_minus)]
            applicable = not cyclo_det(M, N).is_zero()
    r0, r1 = lt_invariants(base, xi), lt_invariants(enlarged, xi)

    N = xi.q
    H1, orientation = _hermitized(b_matrix(enlarged, xi), eps, xi)
    k = base.dim
    if k == 0:
        kernel_sig = r1.signature
    else:
        basis = _cyclo_kernel(H1[:k], enlarged.dim, N)
        restricted = [
            [sum((u[a].conjugate() * H1[a][b] * v[b] for a in range(enlarged.dim) for b in range(enlarged.dim)),
                 CyclotomicNumber.from_int(N, 0))
             for v in basis]
            for u in basis
        ]
        p, m, _ = _inertia_of(restricted, orientation)
        kernel_sig = p - m
    a, b = (r0.nullity, r0.signature), (r1.nullity, r1.signature)
    return InvarianceReport(
        applicable=applicable,
        preserved=a == b,
        base=a,
        enlarged=b,
        jump=r1.signature - r0.signature,
        kernel_signature=kernel_sig,
    )


# ---------------------------------------------------------------- Murasugi–Kawauchi

@dataclass(frozen=True)
class MKInstance:
    A0: SeifertForm
    A1: SeifertForm
    b_sigma: int
    b_sigma0: int
    b_sigma1: int
    xi: RootOfUnity

    def __post_init__(self):
        for name in ("b_sigma", "b_sigma0", "b_sigma1"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.A0.parity != self.A1.parity:
            raise ValueError("A0 and A1 must share the parity n")


@dataclass(frozen=True)
class MKReport:
    lhs: int
    rhs: int
    holds: bool
    slack: int


def mk_check(inst: MKInstance) -> MKReport:
    """|σ₀(ξ) − σ₁(ξ)| against b(Σ) − b(Σ₀) − b(Σ₁) + n₀(ξ) + n₁(ξ)."""
    r0, r1 = lt_invariants(inst.A0, inst.xi), lt_invariants(inst.A1, inst.xi)
    lhs = abs(r0.signature - r1.signature)
    rhs = inst.b_sigma - inst.b_sigma0 - inst.b_sigma1 + r0.nullity + r1.nullity
    return MKReport(lhs=lhs, rhs=rhs, holds=lhs <= rhs, slack=rhs - lhs)


# ---------------------------------------------------------------- distinguishing and search

@dataclass(frozen=True)
class DistinguishReport:
    distinguished: bool
    witness: str | None

    def __str__(self) -> str:
        if self.distinguished:
            return f"distinguished by {self.witness}"
        return "not distinguished by computed invariants"


def distinguish(s0: SeifertForm, s1: SeifertForm, sample_q: int) -> DistinguishReport:
    if s0.parity != s1.parity:
        raise ValueError("forms must share the parity n")
    d0, d1 = alexander_determinant(s0), alexander_determinant(s1)
    if s_normalize(d0) != s_normalize(d1):
        return DistinguishReport(True, f"Alexander polynomial ({s_normalize(d0)} vs {s_normalize(d1)})")
    for xi in primitive_roots(sample_q):
        a, b = lt_invariants(s0, xi, d0), lt_invariants(s1, xi, d1)
        if a.signature != b.signature:
            return DistinguishReport(True, f"signature at ξ = {xi} ({a.signature} vs {b.signature})")
        if a.nullity != b.nullity:
            return DistinguishReport(True, f"nullity at ξ = {xi} ({a.nullity} vs {b.nullity})")
    return DistinguishReport(False, None)


def _congruent(a: SeifertForm, b: SeifertForm, bound: int) -> bool:
    """Brute-force search for unimodular P with Pᵀ·A·P = B.

    All entries in [−bound, bound] are tried for k ≤ 2; larger forms only try
    signed permutation matrices.
    """
    if a.dim != b.dim or a.parity != b.parity:
        return False
    k = a.dim
    if a.A == b.A:
        return True
    if k <= 2:
        candidates = (
            IntMatrix(k, k, entries)
            for entries in itertools.product(range(-bound, bound + 1), repeat=k * k)
        )
    else:
        candidates = (
            IntMatrix(k, k, [signs[i] if perm[i] == j else 0 for i in range(k) for j in range(k)])
            for perm in itertools.permutations(range(k))
            for signs in itertools.product((1, -1), repeat=k)
        )
    for P in candidates:
        if abs(det(P)) == 1 and P.T @ a.A @ P == b.A:
            return True
    return False


def _reductions_within(s: SeifertForm, depth: int) -> set[SeifertForm]:
    seen = {s}
    queue = deque([(s, 0)])
    while queue:
        cur, d = queue.popleft()
        if d == depth:
            continue
        for nxt in s_reduce_candidates(cur):
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, d + 1))
    return seen


def s_equivalence_search(s0: SeifertForm, s1: SeifertForm, depth: int = 4, bound: int = 3) -> bool | None:
    """Bounded search for an S-equivalence: True when a witness is found, None otherwise.

    Explores up to ``depth`` visible reductions from each side and compares
    same-dimensional results up to brute-force congruence. A None result
    says nothing about non-equivalence.
    """
    if s0.parity != s1.parity:
        return None
    left, right = _reductions_within(s0, depth), _reductions_within(s1, depth)
    for a in sorted(left, key=lambda f: f.dim):
        for b in right:
            if a.dim == b.dim and _congruent(a, b, bound):
                return True
    return None

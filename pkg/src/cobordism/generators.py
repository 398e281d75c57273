"""Seeded random instances for the property suites.

Every generator takes a ``random.Random`` so a suite run is reproducible from
its seed alone.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .chain import (
    ChainComplex,
    ChainMap,
    HalfHandleData,
    RelativeCobordismTriad,
    _block,
    _joint_degrees,
    direct_sum,
    juxtapose,
    shift,
)
from .exact_linalg import IntMatrix, kernel_basis
from .forms import EnlargementSpec, EpsSymmetricForm, RankEnlargementSpec
from .seifert import SeifertEnlargementSpec, SeifertForm

__all__ = [
    "random_matrix",
    "random_unimodular",
    "random_complex",
    "random_chain_map",
    "random_half_handle",
    "random_triad",
    "random_eps_matrix",
    "random_form",
    "random_rank_enlargement",
    "random_enlargement",
    "random_seifert",
    "random_seifert_enlargement",
]


def random_matrix(rng: random.Random, rows: int, cols: int, bound: int) -> IntMatrix:
    return IntMatrix(rows, cols, [rng.randint(-bound, bound) for _ in range(rows * cols)])


def random_unimodular(rng: random.Random, n: int, steps: int = 4, bound: int = 2) -> tuple[IntMatrix, IntMatrix]:
    """A random product of elementary matrices together with its inverse."""
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    Q = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([c for c in range(-bound, bound + 1) if c])
        P[i] = [a + c * b for a, b in zip(P[i], P[j])]  # P ← E·P
        for row in Q:                                     # Q ← Q·E⁻¹
            row[j] -= c * row[i]
    if n and rng.random() < 0.5:
        k = rng.randrange(n)
        P[k] = [-a for a in P[k]]
        for row in Q:
            row[k] = -row[k]
    return IntMatrix.from_rows(P, cols=n), IntMatrix.from_rows(Q, cols=n)


@dataclass(frozen=True)
class _Piece:
    kind: str          # "cycle" or "pair"
    degree: int        # degree of the cycle, or of the lower generator of a pair
    coeff: int         # d(upper) = coeff · lower for pairs
    index: int         # position of the (lower) generator in its degree
    upper: int = -1    # position of the upper generator in degree + 1


@dataclass(frozen=True)
class RandomComplex:
    complex: ChainComplex
    pieces: tuple[_Piece, ...]
    basis_inverse: dict[int, IntMatrix]  # standard coordinates of the actual basis


def random_complex(rng: random.Random, lo: int = 0, length: int = 3, max_pieces: int = 2) -> RandomComplex:
    """Direct sum of Z[r] and (Z →×a Z) pieces, in a scrambled basis."""
    ranks = {r: 0 for r in range(lo, lo + length)}
    pieces = []
    for r in range(lo, lo + length):
        for _ in range(rng.randint(0, max_pieces)):
            pieces.append(_Piece("cycle", r, 0, ranks[r]))
            ranks[r] += 1
    for r in range(lo, lo + length - 1):
        for _ in range(rng.randint(0, max_pieces)):
            a = rng.choice([1, 1, 2, 3, rng.randint(-5, 5) or 1])
            pieces.append(_Piece("pair", r, a, ranks[r], ranks[r + 1]))
            ranks[r] += 1
            ranks[r + 1] += 1
    std = {r: [[0] * ranks[r] for _ in range(ranks[r - 1])] for r in range(lo + 1, lo + length)}
    for p in pieces:
        if p.kind == "pair":
            std[p.degree + 1][p.index][p.upper] = p.coeff
    P, Pinv = {}, {}
    for r in range(lo, lo + length):
        P[r], Pinv[r] = random_unimodular(rng, ranks[r])
    diffs = {
        r: P[r - 1] @ IntMatrix.from_rows(std[r], cols=ranks[r]) @ Pinv[r]
        for r in range(lo + 1, lo + length)
    }
    c = ChainComplex(lo, [ranks[r] for r in range(lo, lo + length)], diffs)
    return RandomComplex(c, tuple(pieces), Pinv)


def _random_vector_in(rng: random.Random, basis: IntMatrix, bound: int) -> list[int]:
    coeffs = [rng.randint(-bound, bound) for _ in range(basis.cols)]
    return [sum(basis[i, k] * coeffs[k] for k in range(basis.cols)) for i in range(basis.rows)]


def random_chain_map(rng: random.Random, src: RandomComplex, target: ChainComplex, bound: int = 2) -> ChainMap:
    """A chain map built piecewise on the standard basis plus a null-homotopic term."""
    C = src.complex
    cols = {r: [[0] * target.rank(r) for _ in range(C.rank(r))] for r in C.degrees}
    for p in src.pieces:
        r = p.degree
        if p.kind == "cycle":
            cols[r][p.index] = _random_vector_in(rng, kernel_basis(target.d(r)), bound)
        else:
            y = [rng.randint(-bound, bound) for _ in range(target.rank(r + 1))]
            z = _random_vector_in(rng, kernel_basis(target.d(r + 1)), bound)
            cols[r + 1][p.upper] = [p.coeff * a + b for a, b in zip(y, z)]
            dy = target.d(r + 1) @ IntMatrix(len(y), 1, y)
            cols[r][p.index] = list(dy.entries)
    comps = {}
    for r in C.degrees:
        std = IntMatrix.from_columns(cols[r], target.rank(r)) if C.rank(r) else IntMatrix.zeros(target.rank(r), 0)
        comps[r] = std @ src.basis_inverse[r]
    h = {r: random_matrix(rng, target.rank(r + 1), C.rank(r), 1) for r in range(C.lo - 1, C.hi + 1)}
    degs = range(min(C.lo, target.lo), max(C.hi, target.hi) + 1)
    full = {}
    for r in degs:
        base = comps.get(r, IntMatrix.zeros(target.rank(r), C.rank(r)))
        hr = h.get(r, IntMatrix.zeros(target.rank(r + 1), C.rank(r)))
        hr1 = h.get(r - 1, IntMatrix.zeros(target.rank(r), C.rank(r - 1)))
        full[r] = base + target.d(r + 1) @ hr + hr1 @ C.d(r)
    return ChainMap(C, target, full)


def random_half_handle(rng: random.Random, length: int = 3) -> HalfHandleData:
    """Random d: C⁺ → C⁻_{*−1}; about a third of the time d is an isomorphism."""
    lo = rng.randint(-1, 1)
    if rng.random() < 0.3:
        cp = random_complex(rng, lo, length)
        P = {r: random_unimodular(rng, cp.complex.rank(r)) for r in cp.complex.degrees}
        # transport C⁺ along a degreewise isomorphism to get C⁻_{*−1}
        cm_shifted = ChainComplex(
            lo, [cp.complex.rank(r) for r in cp.complex.degrees],
            {r: P[r - 1][0] @ cp.complex.d(r) @ P[r][1] for r in range(lo + 1, lo + length)},
        )
        d = ChainMap(cp.complex, cm_shifted, {r: P[r][0] for r in cp.complex.degrees})
        return HalfHandleData(cp.complex, shift(cm_shifted, 1), d)
    cp = random_complex(rng, lo, length)
    cm = random_complex(rng, lo - 1, length + 1).complex
    d = random_chain_map(rng, cp, shift(cm, -1))
    return HalfHandleData(cp.complex, cm, d)


def _inclusion(src: ChainComplex, parts: list[ChainComplex], index: int) -> ChainMap:
    tgt = direct_sum(*parts)
    degs = _joint_degrees(src, tgt)
    return ChainMap(src, tgt, {
        r: _block([p.rank(r) for p in parts], [src.rank(r)], {(index, 0): IntMatrix.identity(src.rank(r))})
        for r in degs
    })


def random_triad(rng: random.Random, length: int = 2) -> RelativeCobordismTriad:
    """A commuting triad: E is E₀ ⊕ B ⊕ B′ with B, B′ mapped in through C, C′."""
    lo = rng.randint(0, 1)
    D = random_complex(rng, lo, length).complex
    C = random_complex(rng, lo, length, 1)
    Cp = random_complex(rng, lo, length, 1)
    E0 = random_complex(rng, lo, length, 1)
    B = random_complex(rng, lo, length, 1)
    Bp = random_complex(rng, lo, length, 1)
    j = random_chain_map(rng, C, D, 1)
    jp = random_chain_map(rng, Cp, D, 1)
    k0 = random_chain_map(rng, E0, D, 1)
    g = random_chain_map(rng, B, C.complex, 1)
    gp = random_chain_map(rng, Bp, Cp.complex, 1)
    parts = [E0.complex, B.complex, Bp.complex]
    k = juxtapose(k0, j @ g, jp @ gp)
    return RelativeCobordismTriad(
        b_to_c=g,
        b_to_e=_inclusion(B.complex, parts, 1),
        bp_to_cp=gp,
        bp_to_e=_inclusion(Bp.complex, parts, 2),
        c_to_d=j,
        cp_to_d=jp,
        e_to_d=k,
    )


# ---------------------------------------------------------------- forms and Seifert forms

def random_eps_matrix(rng: random.Random, epsilon: int, n: int, bound: int) -> IntMatrix:
    """A random ε-symmetric n×n matrix (zero diagonal when ε = −1)."""
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        if epsilon == 1:
            rows[i][i] = rng.randint(-bound, bound)
        for j in range(i + 1, n):
            v = rng.randint(-bound, bound)
            rows[i][j], rows[j][i] = v, epsilon * v
    return IntMatrix.from_rows(rows, cols=n)


def random_form(rng: random.Random, epsilon: int, max_dim: int = 6, bound: int = 5) -> EpsSymmetricForm:
    return EpsSymmetricForm(epsilon, random_eps_matrix(rng, epsilon, rng.randint(0, max_dim), bound))


def random_rank_enlargement(rng: random.Random, base: EpsSymmetricForm, ell: int, bound: int = 5) -> RankEnlargementSpec:
    C = random_matrix(rng, base.dim, ell, bound)
    return RankEnlargementSpec(base, C, random_eps_matrix(rng, base.epsilon, ell, bound))


def random_enlargement(
    rng: random.Random, base: EpsSymmetricForm, l_minus: int, l_plus: int, bound: int = 3, h: bool = False
) -> EnlargementSpec:
    """Random rank (ℓ⁻, ℓ⁺) enlargement; ``h`` forces ℓ⁻ = ℓ⁺ and D unimodular."""
    if h:
        if l_minus != l_plus:
            raise ValueError("an H-enlargement needs ℓ⁻ = ℓ⁺")
        D = random_unimodular(rng, l_plus)[0]
    else:
        D = random_matrix(rng, l_minus, l_plus, bound)
    return EnlargementSpec(
        base, l_minus, l_plus,
        C=random_matrix(rng, base.dim, l_plus, bound),
        D=D,
        E=random_eps_matrix(rng, base.epsilon, l_plus, bound),
    )


def random_seifert(rng: random.Random, max_dim: int = 5, bound: int = 2, parity: int | None = None) -> SeifertForm:
    k = rng.randint(0, max_dim)
    if parity is None:
        parity = rng.randint(0, 1)
    return SeifertForm(random_matrix(rng, k, k, bound), parity)


def random_seifert_enlargement(
    rng: random.Random, base: SeifertForm, ell: int, bound: int = 2, h: bool = False
) -> SeifertEnlargementSpec:
    """Random rank (ℓ, ℓ) enlargement; ``h`` makes x + εyᵀ unimodular."""
    k = base.dim
    y = random_matrix(rng, ell, ell, bound)
    if h:
        P = random_unimodular(rng, ell)[0]
        x = P - y.T.scale(base.epsilon)
    else:
        x = random_matrix(rng, ell, ell, bound)
    return SeifertEnlargementSpec(
        base, ell, ell,
        alpha=random_matrix(rng, k, ell, bound),
        beta=random_matrix(rng, ell, k, bound),
        x=x, y=y,
        z=random_matrix(rng, ell, ell, bound),
    )

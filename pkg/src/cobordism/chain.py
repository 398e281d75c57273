"""Bounded chain complexes of free abelian groups and the constructions on them.

Sign conventions, all fixed by the mapping cone:

* cone(f: C → D)_r = D_r ⊕ C_{r−1},  d = [[d_D, (−1)^{r−1} f], [0, d_C]]
* shift(C, k)_r = C_{r+k}, differential unchanged
* dual(C, m)_r = (C_{m−r})*,  d_r = (−1)^r (d_{m−r+1})ᵀ
* D ∪_C D′ = cone((f; f′): C → D ⊕ D′)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .exact_linalg import AbelianGroup, IntMatrix, homology_at

__all__ = [
    "ChainComplex",
    "ChainMap",
    "ChainMapError",
    "HalfHandleData",
    "RelativeCobordismTriad",
    "SplitTriad",
    "TriadCommutationError",
    "cone",
    "shift",
    "dual",
    "direct_sum",
    "stack",
    "juxtapose",
    "union",
    "is_acyclic",
    "is_quasi_iso",
    "half_handle_complex",
    "is_H_cobordism",
    "split_triad",
]


class ChainMapError(ValueError):
    """A family of matrices fails the chain-map condition."""


class TriadCommutationError(ValueError):
    """A triad square does not commute."""


def _sign(r: int) -> int:
    return -1 if r % 2 else 1


def _block(row_dims: Sequence[int], col_dims: Sequence[int], blocks: Mapping[tuple[int, int], IntMatrix]) -> IntMatrix:
    """Block matrix with the given block sizes; unspecified blocks are zero."""
    rows = []
    for i, h in enumerate(row_dims):
        row = []
        for j, w in enumerate(col_dims):
            b = blocks.get((i, j))
            if b is None:
                b = IntMatrix.zeros(h, w)
            elif b.shape != (h, w):
                raise ValueError(f"block {(i, j)} has shape {b.shape}, expected {(h, w)}")
            row.append(b)
        rows.append(row)
    total_rows, total_cols = sum(row_dims), sum(col_dims)
    if not row_dims or not col_dims or total_rows == 0 or total_cols == 0:
        return IntMatrix.zeros(total_rows, total_cols)
    return IntMatrix.block(
        [[b for b, w in zip(row, col_dims) if w] for row, h in zip(rows, row_dims) if h]
    )


class ChainComplex:
    """C_lo ← … ← C_hi with free modules of the given ranks.

    ``ranks[i]`` is the rank in degree ``lo + i``; ``differentials[r]`` is the
    rank_{r−1} × rank_r matrix of d_r. Missing differentials are zero and
    d_{r−1}·d_r = 0 is checked on construction.
    """

    __slots__ = ("lo", "hi", "_ranks", "_diffs")

    def __init__(self, lo: int, ranks: Sequence[int], differentials: Mapping[int, IntMatrix] | None = None):
        ranks = tuple(int(r) for r in ranks)
        if any(r < 0 for r in ranks):
            raise ValueError("ranks must be non-negative")
        self.lo = lo
        self.hi = lo + len(ranks) - 1
        self._ranks = ranks
        diffs = {}
        for r, m in (differentials or {}).items():
            want = (self.rank(r - 1), self.rank(r))
            if m.shape != want:
                raise ValueError(f"d_{r} has shape {m.shape}, expected {want}")
            if not m.is_zero():
                diffs[r] = m
        self._diffs = diffs
        for r in range(self.lo + 1, self.hi + 1):
            prod = self.d(r - 1) @ self.d(r)
            loc = prod.first_nonzero()
            if loc is not None:
                raise ValueError(f"d_{r - 1} · d_{r} is nonzero at entry {loc}")

    @classmethod
    def zero(cls) -> "ChainComplex":
        return cls(0, ())

    @classmethod
    def concentrated(cls, degree: int, rank: int) -> "ChainComplex":
        return cls(degree, (rank,))

    @classmethod
    def from_differentials(cls, lo: int, ranks: Sequence[int], diffs: Sequence[Sequence[Sequence[int]]]) -> "ChainComplex":
        """Convenience: diffs[i] is the nested-list matrix of d_{lo+i+1}."""
        mats = {}
        for i, rows in enumerate(diffs):
            r = lo + i + 1
            mats[r] = IntMatrix.from_rows(rows, cols=ranks[i + 1]) if rows else IntMatrix.zeros(ranks[i], ranks[i + 1])
        return cls(lo, ranks, mats)

    def rank(self, r: int) -> int:
        if self.lo <= r <= self.hi:
            return self._ranks[r - self.lo]
        return 0

    def d(self, r: int) -> IntMatrix:
        m = self._diffs.get(r)
        return m if m is not None else IntMatrix.zeros(self.rank(r - 1), self.rank(r))

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    @property
    def support(self) -> tuple[int, int] | None:
        """Smallest [lo, hi] outside which all ranks vanish, or None if the complex is zero."""
        nz = [r for r in self.degrees if self.rank(r)]
        return (nz[0], nz[-1]) if nz else None

    def total_rank(self) -> int:
        return sum(self._ranks)

    def euler_characteristic(self) -> int:
        return sum(_sign(r) * self.rank(r) for r in self.degrees)

    def homology(self, r: int) -> AbelianGroup:
        return homology_at(self.d(r + 1), self.d(r))

    def homology_all(self) -> dict[int, AbelianGroup]:
        """Homology in every degree of the range (zero groups included)."""
        return {r: self.homology(r) for r in self.degrees}

    def is_zero(self) -> bool:
        return self.total_rank() == 0

    def trimmed(self) -> "ChainComplex":
        s = self.support
        if s is None:
            return ChainComplex.zero()
        lo, hi = s
        return ChainComplex(lo, [self.rank(r) for r in range(lo, hi + 1)], {r: self.d(r) for r in range(lo + 1, hi + 1)})

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainComplex):
            return NotImplemented
        a, b = self.trimmed(), other.trimmed()
        return a._ranks == b._ranks and (a.is_zero() or a.lo == b.lo) and a._diffs == b._diffs

    def __hash__(self) -> int:
        t = self.trimmed()
        return hash((t.lo if t._ranks else 0, t._ranks, tuple(sorted((r, m) for r, m in t._diffs.items()))))

    def __repr__(self) -> str:
        return f"ChainComplex(lo={self.lo}, ranks={list(self._ranks)}, nonzero_d={sorted(self._diffs)})"


def _joint_degrees(*cs: ChainComplex) -> range:
    nz = [c for c in cs if c._ranks]
    if not nz:
        return range(0)
    return range(min(c.lo for c in nz), max(c.hi for c in nz) + 1)


class ChainMap:
    """f: source → target given degreewise; missing components are zero."""

    __slots__ = ("source", "target", "_comps")

    def __init__(self, source: ChainComplex, target: ChainComplex, components: Mapping[int, IntMatrix] | None = None):
        self.source = source
        self.target = target
        comps = {}
        for r, m in (components or {}).items():
            want = (target.rank(r), source.rank(r))
            if m.shape != want:
                raise ChainMapError(f"component f_{r} has shape {m.shape}, expected {want}")
            if not m.is_zero():
                comps[r] = m
        self._comps = comps
        for r in _joint_degrees(source, target):
            lhs = target.d(r) @ self.f(r)
            rhs = self.f(r - 1) @ source.d(r)
            if lhs != rhs:
                loc = (lhs - rhs).first_nonzero()
                raise ChainMapError(f"chain-map condition fails in degree {r} at entry {loc}")

    def f(self, r: int) -> IntMatrix:
        m = self._comps.get(r)
        return m if m is not None else IntMatrix.zeros(self.target.rank(r), self.source.rank(r))

    @classmethod
    def identity(cls, c: ChainComplex) -> "ChainMap":
        return cls(c, c, {r: IntMatrix.identity(c.rank(r)) for r in c.degrees})

    @classmethod
    def zero(cls, source: ChainComplex, target: ChainComplex) -> "ChainMap":
        return cls(source, target)

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        """Composition self ∘ other."""
        if other.target != self.source:
            raise ChainMapError("cannot compose: target of the right map is not the source of the left")
        degs = _joint_degrees(other.source, self.target)
        return ChainMap(other.source, self.target, {r: self.f(r) @ other.f(r) for r in degs})

    def __add__(self, other: "ChainMap") -> "ChainMap":
        if self.source != other.source or self.target != other.target:
            raise ChainMapError("cannot add chain maps with different source or target")
        degs = _joint_degrees(self.source, self.target)
        return ChainMap(self.source, self.target, {r: self.f(r) + other.f(r) for r in degs})

    def __neg__(self) -> "ChainMap":
        return ChainMap(self.source, self.target, {r: -m for r, m in self._comps.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainMap):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self._comps == other._comps

    def __hash__(self) -> int:
        return hash((self.source, self.target, tuple(sorted(self._comps.items()))))

    def __repr__(self) -> str:
        return f"ChainMap({self.source!r} -> {self.target!r}, nonzero_f={sorted(self._comps)})"


def cone(f: ChainMap) -> ChainComplex:
    C, D = f.source, f.target
    degs = _joint_degrees(D, shift(C, -1))
    if not degs:
        return ChainComplex.zero()
    ranks = [D.rank(r) + C.rank(r - 1) for r in degs]
    diffs = {}
    for r in degs:
        if r == degs.start:
            continue
        diffs[r] = _block(
            [D.rank(r - 1), C.rank(r - 2)],
            [D.rank(r), C.rank(r - 1)],
            {(0, 0): D.d(r), (0, 1): f.f(r - 1).scale(_sign(r - 1)), (1, 1): C.d(r - 1)},
        )
    return ChainComplex(degs.start, ranks, diffs)


def shift(C: ChainComplex, k: int) -> ChainComplex:
    """The complex C_{*+k}: degree r holds C_{r+k}."""
    if not C._ranks:
        return C
    return ChainComplex(C.lo - k, C._ranks, {r - k: m for r, m in C._diffs.items()})


def dual(C: ChainComplex, m: int) -> ChainComplex:
    """The complex C^{m−*}."""
    if not C._ranks:
        return C
    lo = m - C.hi
    ranks = [C.rank(m - r) for r in range(lo, m - C.lo + 1)]
    diffs = {r: C.d(m - r + 1).T.scale(_sign(r)) for r in range(lo + 1, m - C.lo + 1)}
    return ChainComplex(lo, ranks, diffs)


def direct_sum(*cs: ChainComplex) -> ChainComplex:
    degs = _joint_degrees(*cs)
    if not degs:
        return ChainComplex.zero()
    ranks = [sum(c.rank(r) for c in cs) for r in degs]
    diffs = {}
    for r in degs:
        if r == degs.start:
            continue
        diffs[r] = _block(
            [c.rank(r - 1) for c in cs], [c.rank(r) for c in cs],
            {(i, i): c.d(r) for i, c in enumerate(cs)},
        )
    return ChainComplex(degs.start, ranks, diffs)


def stack(*fs: ChainMap) -> ChainMap:
    """(f₁; f₂; …): C → D₁ ⊕ D₂ ⊕ … for maps sharing a source."""
    src = fs[0].source
    for g in fs[1:]:
        if g.source != src:
            raise ChainMapError("stacked maps must share a source")
    tgt = direct_sum(*(g.target for g in fs))
    degs = _joint_degrees(src, tgt)
    return ChainMap(src, tgt, {
        r: _block([g.target.rank(r) for g in fs], [src.rank(r)], {(i, 0): g.f(r) for i, g in enumerate(fs)})
        for r in degs
    })


def juxtapose(*fs: ChainMap) -> ChainMap:
    """(f₁ f₂ …): C₁ ⊕ C₂ ⊕ … → D for maps sharing a target."""
    tgt = fs[0].target
    for g in fs[1:]:
        if g.target != tgt:
            raise ChainMapError("juxtaposed maps must share a target")
    src = direct_sum(*(g.source for g in fs))
    degs = _joint_degrees(src, tgt)
    return ChainMap(src, tgt, {
        r: _block([tgt.rank(r)], [g.source.rank(r) for g in fs], {(0, i): g.f(r) for i, g in enumerate(fs)})
        for r in degs
    })


def union(f: ChainMap, f_prime: ChainMap) -> ChainComplex:
    """D ∪_C D′ for f: C → D and f′: C → D′."""
    if f.source != f_prime.source:
        raise ChainMapError("union needs two maps out of the same complex")
    return cone(stack(f, f_prime))


def is_acyclic(C: ChainComplex) -> bool:
    return all(C.homology(r).is_trivial() for r in C.degrees)


def is_quasi_iso(f: ChainMap) -> bool:
    return is_acyclic(cone(f))


@dataclass(frozen=True)
class HalfHandleData:
    """Chain map d: C⁺ → C⁻_{*−1}, i.e. d_r: C⁺_r → C⁻_{r−1} with d⁻·d = d·d⁺."""

    c_plus: ChainComplex
    c_minus: ChainComplex
    d: ChainMap

    def __post_init__(self):
        if self.d.source != self.c_plus:
            raise ChainMapError("d must start at C⁺")
        if self.d.target != shift(self.c_minus, -1):
            raise ChainMapError("d must land in C⁻ shifted down by one")

    @classmethod
    def from_components(cls, c_plus: ChainComplex, c_minus: ChainComplex, components: Mapping[int, IntMatrix]) -> "HalfHandleData":
        """``components[r]`` is the matrix C⁺_r → C⁻_{r−1}."""
        return cls(c_plus, c_minus, ChainMap(c_plus, shift(c_minus, -1), components))


def half_handle_complex(h: HalfHandleData) -> ChainComplex:
    """C_r = C⁺_r ⊕ C⁻_r with ∂ = [[d⁺, 0], [(−1)^r d, d⁻]]."""
    cp, cm = h.c_plus, h.c_minus
    degs = _joint_degrees(cp, cm)
    if not degs:
        return ChainComplex.zero()
    ranks = [cp.rank(r) + cm.rank(r) for r in degs]
    diffs = {}
    for r in degs:
        if r == degs.start:
            continue
        diffs[r] = _block(
            [cp.rank(r - 1), cm.rank(r - 1)], [cp.rank(r), cm.rank(r)],
            {(0, 0): cp.d(r), (1, 0): h.d.f(r).scale(_sign(r)), (1, 1): cm.d(r)},
        )
    return ChainComplex(degs.start, ranks, diffs)


def is_H_cobordism(h: HalfHandleData) -> bool:
    return is_quasi_iso(h.d)


@dataclass(frozen=True)
class RelativeCobordismTriad:
    """Commuting diagram B → C → D ← E ← B and B′ → C′ → D ← E ← B′."""

    b_to_c: ChainMap
    b_to_e: ChainMap
    bp_to_cp: ChainMap
    bp_to_e: ChainMap
    c_to_d: ChainMap
    cp_to_d: ChainMap
    e_to_d: ChainMap

    def __post_init__(self):
        B, Bp = self.b_to_c.source, self.bp_to_cp.source
        C, Cp, E, D = self.c_to_d.source, self.cp_to_d.source, self.e_to_d.source, self.e_to_d.target
        checks = [
            (self.b_to_e.source == B, "B → E does not start at B"),
            (self.bp_to_e.source == Bp, "B′ → E does not start at B′"),
            (self.b_to_c.target == C, "B → C does not land in C"),
            (self.bp_to_cp.target == Cp, "B′ → C′ does not land in C′"),
            (self.b_to_e.target == E and self.bp_to_e.target == E, "maps into E disagree on E"),
            (self.c_to_d.target == D and self.cp_to_d.target == D, "maps into D disagree on D"),
        ]
        for ok, msg in checks:
            if not ok:
                raise TriadCommutationError(msg)
        if self.c_to_d @ self.b_to_c != self.e_to_d @ self.b_to_e:
            raise TriadCommutationError("square B → C → D versus B → E → D does not commute")
        if self.cp_to_d @ self.bp_to_cp != self.e_to_d @ self.bp_to_e:
            raise TriadCommutationError("square B′ → C′ → D versus B′ → E → D does not commute")

    @property
    def B(self) -> ChainComplex:
        return self.b_to_c.source

    @property
    def Bp(self) -> ChainComplex:
        return self.bp_to_cp.source

    @property
    def C(self) -> ChainComplex:
        return self.c_to_d.source

    @property
    def Cp(self) -> ChainComplex:
        return self.cp_to_d.source

    @property
    def E(self) -> ChainComplex:
        return self.e_to_d.source

    @property
    def D(self) -> ChainComplex:
        return self.e_to_d.target


@dataclass(frozen=True)
class SplitTriad:
    """The four complexes of the splitting with their glue and comparison maps.

    Layouts (degree r):
      C″_r = D_{r+1} ⊕ C_r ⊕ C′_r
      B″_r = D_{r+1} ⊕ D_{r+1} ⊕ C_r ⊕ E_r ⊕ C′_r
      W⁻_r = D_{r+1} ⊕ C_r ⊕ E_r
      W⁺_r = D_{r+1} ⊕ E_r ⊕ C′_r
    """

    c_dprime: ChainComplex
    b_dprime: ChainComplex
    w_minus: ChainComplex
    w_plus: ChainComplex
    glue: dict[str, ChainMap] = field(default_factory=dict)
    comparisons: dict[str, ChainMap] = field(default_factory=dict)

    def certificates(self) -> dict[str, bool]:
        """is_quasi_iso on each comparison map."""
        return {name: is_quasi_iso(m) for name, m in self.comparisons.items()}


def _desuspended_cone(g: ChainMap) -> ChainComplex:
    return shift(cone(g), 1)


def split_triad(g: RelativeCobordismTriad) -> SplitTriad:
    B, Bp, C, Cp, E, D = g.B, g.Bp, g.C, g.Cp, g.E, g.D
    j, jp, k = g.c_to_d, g.cp_to_d, g.e_to_d

    c2 = _desuspended_cone(juxtapose(j, jp))
    big = ChainMap(direct_sum(C, E, Cp), direct_sum(D, D), {
        r: _block([D.rank(r)] * 2, [C.rank(r), E.rank(r), Cp.rank(r)],
                  {(0, 0): j.f(r), (0, 1): k.f(r), (1, 1): k.f(r), (1, 2): jp.f(r)})
        for r in _joint_degrees(C, E, Cp, D)
    })
    b2 = _desuspended_cone(big)
    wm = _desuspended_cone(juxtapose(j, k))
    wp = _desuspended_cone(juxtapose(k, jp))

    degs = _joint_degrees(B, Bp, C, Cp, E, shift(D, 1))
    I = IntMatrix.identity

    def mk(src, tgt, builder):
        return ChainMap(src, tgt, {r: builder(r) for r in degs})

    def b2_dims(r):
        return [D.rank(r + 1), D.rank(r + 1), C.rank(r), E.rank(r), Cp.rank(r)]

    # glue maps
    c2_to_c = mk(c2, C, lambda r: _block([C.rank(r)], [D.rank(r + 1), C.rank(r), Cp.rank(r)], {(0, 1): I(C.rank(r))}))
    c2_to_cp = mk(c2, Cp, lambda r: _block([Cp.rank(r)], [D.rank(r + 1), C.rank(r), Cp.rank(r)], {(0, 2): I(Cp.rank(r))}))
    c2_to_ccp = mk(c2, direct_sum(C, Cp), lambda r: _block(
        [C.rank(r), Cp.rank(r)], [D.rank(r + 1), C.rank(r), Cp.rank(r)],
        {(0, 1): I(C.rank(r)), (1, 2): I(Cp.rank(r))}))
    b2_to_wm = mk(b2, wm, lambda r: _block(
        [D.rank(r + 1), C.rank(r), E.rank(r)], b2_dims(r),
        {(0, 0): I(D.rank(r + 1)), (1, 2): I(C.rank(r)), (2, 3): I(E.rank(r))}))
    b2_to_wp = mk(b2, wp, lambda r: _block(
        [D.rank(r + 1), E.rank(r), Cp.rank(r)], b2_dims(r),
        {(0, 1): I(D.rank(r + 1)), (1, 3): I(E.rank(r)), (2, 4): I(Cp.rank(r))}))
    b2_to_c2 = mk(b2, c2, lambda r: _block(
        [D.rank(r + 1), C.rank(r), Cp.rank(r)], b2_dims(r),
        {(0, 0): I(D.rank(r + 1)), (0, 1): -I(D.rank(r + 1)), (1, 2): I(C.rank(r)), (2, 4): -I(Cp.rank(r))}))
    b_to_wm = mk(B, wm, lambda r: _block(
        [D.rank(r + 1), C.rank(r), E.rank(r)], [B.rank(r)],
        {(1, 0): g.b_to_c.f(r), (2, 0): -g.b_to_e.f(r)}))
    bp_to_wp = mk(Bp, wp, lambda r: _block(
        [D.rank(r + 1), E.rank(r), Cp.rank(r)], [Bp.rank(r)],
        {(1, 0): g.bp_to_e.f(r), (2, 0): -g.bp_to_cp.f(r)}))

    # comparison maps, one per splitting identity:
    #   cone(C″ → C ⊕ C′) → D : (x, y, x′) ↦ (j j′)x − y
    #   E  → cone(B″ → W⁻ ⊕ W⁺) : e  ↦ ((0, 0, e), 0, (ke, 0, 0, 0, 0))
    #   C  → cone(B″ → W⁻ ⊕ C″) : c  ↦ ((0, c, 0), 0, (jc, jc, 0, 0, 0))
    #   C′ → cone(B″ → C″ ⊕ W⁺) : c′ ↦ (0, (0, 0, c′), (j′c′, j′c′, 0, 0, 0))
    cone_p = cone(c2_to_ccp)
    to_d = ChainMap(cone_p, D, {
        r: _block([D.rank(r)], [C.rank(r), Cp.rank(r), D.rank(r), C.rank(r - 1), Cp.rank(r - 1)],
                  {(0, 0): j.f(r), (0, 1): jp.f(r), (0, 2): -I(D.rank(r))})
        for r in _joint_degrees(cone_p, D)
    })

    def into_cone(src, glue_map, builder):
        tgt = cone(glue_map)
        return ChainMap(src, tgt, {r: builder(r) for r in _joint_degrees(src, tgt)})

    wm_dims = lambda r: [D.rank(r + 1), C.rank(r), E.rank(r)]
    wp_dims = lambda r: [D.rank(r + 1), E.rank(r), Cp.rank(r)]
    c2_dims = lambda r: [D.rank(r + 1), C.rank(r), Cp.rank(r)]

    def stacked(r, first, second, width, col_block):
        """Column into first_r ⊕ second_r ⊕ B″_{r−1}; keys index the flattened summand list."""
        row_dims = first(r) + second(r) + b2_dims(r - 1)
        return _block(row_dims, [width], {(i, 0): m for i, m in col_block.items()})

    e_cmp = into_cone(E, stack(b2_to_wm, b2_to_wp), lambda r: stacked(
        r, wm_dims, wp_dims, E.rank(r),
        {2: I(E.rank(r)), 6: k.f(r)}))
    c_cmp = into_cone(C, stack(b2_to_wm, b2_to_c2), lambda r: stacked(
        r, wm_dims, c2_dims, C.rank(r),
        {1: I(C.rank(r)), 6: j.f(r), 7: j.f(r)}))
    cp_cmp = into_cone(Cp, stack(b2_to_c2, b2_to_wp), lambda r: stacked(
        r, c2_dims, wp_dims, Cp.rank(r),
        {5: I(Cp.rank(r)), 6: jp.f(r), 7: jp.f(r)}))

    return SplitTriad(
        c_dprime=c2, b_dprime=b2, w_minus=wm, w_plus=wp,
        glue={
            "C'' -> C": c2_to_c,
            "C'' -> C'": c2_to_cp,
            "C'' -> C+C'": c2_to_ccp,
            "B'' -> W-": b2_to_wm,
            "B'' -> W+": b2_to_wp,
            "B'' -> C''": b2_to_c2,
            "B -> W-": b_to_wm,
            "B' -> W+": bp_to_wp,
        },
        comparisons={
            "D": to_d,
            "E": e_cmp,
            "C": c_cmp,
            "C'": cp_cmp,
        },
    )

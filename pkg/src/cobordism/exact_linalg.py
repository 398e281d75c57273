"""Exact integer matrix algebra.

Everything here works over Python ints, so no entry ever overflows or rounds.
The Smith normal form is the workhorse: kernels, saturations, homology groups
and torsion-free quotients are all read off from it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "IntMatrix",
    "SmithDecomposition",
    "AbelianGroup",
    "CompositionError",
    "smith_normal_form",
    "rank",
    "det",
    "kernel_basis",
    "saturation",
    "is_saturated",
    "solve_integer",
    "homology_at",
    "torsion_free_part",
    "induced_tf_map",
]


class CompositionError(ValueError):
    """Raised when a product of two maps that should vanish does not."""


class IntMatrix:
    """Immutable integer matrix stored row-major."""

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable[int]):
        entries = tuple(int(e) for e in entries)
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(entries) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(entries)}"
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    # construction

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for i, r in enumerate(rows):
            if len(r) != cols:
                raise ValueError(f"row {i} has {len(r)} entries, expected {cols}")
        return cls(len(rows), cols, (e for r in rows for e in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        cols = [list(c) for c in columns]
        return cls.from_rows([[c[i] for c in cols] for i in range(rows)], cols=len(cols))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, (1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        return cls(n, n, (values[i] if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def block(cls, blocks: Sequence[Sequence["IntMatrix"]]) -> "IntMatrix":
        """Assemble a block matrix; every block row must share heights, every block column widths."""
        if not blocks:
            return cls.zeros(0, 0)
        return cls.vstack([cls.hstack(list(row)) for row in blocks])

    @classmethod
    def hstack(cls, mats: Sequence["IntMatrix"]) -> "IntMatrix":
        if not mats:
            raise ValueError("hstack needs at least one matrix")
        rows = mats[0].rows
        for m in mats:
            if m.rows != rows:
                raise ValueError(f"hstack height mismatch: {m.rows} vs {rows}")
        out = [[] for _ in range(rows)]
        for m in mats:
            for i in range(rows):
                out[i].extend(m.row(i))
        return cls.from_rows(out, cols=sum(m.cols for m in mats))

    @classmethod
    def vstack(cls, mats: Sequence["IntMatrix"]) -> "IntMatrix":
        if not mats:
            raise ValueError("vstack needs at least one matrix")
        cols = mats[0].cols
        for m in mats:
            if m.cols != cols:
                raise ValueError(f"vstack width mismatch: {m.cols} vs {cols}")
        return cls(sum(m.rows for m in mats), cols, (e for m in mats for e in m.entries))

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"index {ij} out of range for {self.rows}x{self.cols} matrix")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self, indices: Iterable[int]) -> "IntMatrix":
        idx = list(indices)
        return IntMatrix(self.rows, len(idx), (self.entries[i * self.cols + j] for i in range(self.rows) for j in idx))

    def select_rows(self, indices: Iterable[int]) -> "IntMatrix":
        idx = list(indices)
        return IntMatrix(len(idx), self.cols, (e for i in idx for e in self.row(i)))

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "IntMatrix":
        return self.select_rows(rows).columns(cols)

    # algebra

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, (self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        ocols = [other.col(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.extend(sum(a * b for a, b in zip(r, c)) for c in ocols)
        return IntMatrix(self.rows, other.cols, out)

    def _check_same_shape(self, other: "IntMatrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix(self.rows, self.cols, (a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix(self.rows, self.cols, (a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, (-a for a in self.entries))

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, (c * a for a in self.entries))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def first_nonzero(self) -> tuple[int, int] | None:
        for k, e in enumerate(self.entries):
            if e:
                return divmod(k, self.cols)
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.rows, self.cols, self.entries))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        return f"IntMatrix.from_rows({self.to_rows()!r}, cols={self.cols})"


@dataclass(frozen=True)
class SmithDecomposition:
    """U · source · V = D with U, V unimodular and D in Smith form.

    The inverses of U and V are kept as well since kernels and coordinate
    changes need them and they come for free during the reduction.
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    source: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix

    @property
    def invariant_factors(self) -> list[int]:
        n = min(self.D.rows, self.D.cols)
        return [self.D[i, i] for i in range(n) if self.D[i, i]]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank ⊕ Z/t₁ ⊕ … ⊕ Z/t_m with t₁ | t₂ | … | t_m, all tᵢ > 1."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion coefficients {self.torsion} are not a divisibility chain")
        if any(t <= 1 for t in self.torsion):
            raise ValueError("torsion coefficients must exceed 1")

    @classmethod
    def from_invariant_factors(cls, free_rank: int, factors: Iterable[int]) -> "AbelianGroup":
        return cls(free_rank, tuple(abs(f) for f in factors if abs(f) > 1))

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


def _mutable(m: IntMatrix) -> list[list[int]]:
    return m.to_rows()


def _freeze(rows: list[list[int]], ncols: int) -> IntMatrix:
    return IntMatrix.from_rows(rows, cols=ncols)


def _identity_rows(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(M: IntMatrix) -> SmithDecomposition:
    """Diagonalize M by unimodular row and column operations.

    Pivots are chosen with the smallest nonzero magnitude to keep the
    intermediate entries small.
    """
    m, n = M.rows, M.cols
    A = _mutable(M)
    U, Ui = _identity_rows(m), _identity_rows(m)
    V, Vi = _identity_rows(n), _identity_rows(n)

    # Row op "row_i += c·row_k" is E·A; U picks up E on the left, U⁻¹ the inverse on the right.
    def row_add(i, k, c):
        if not c:
            return
        A[i] = [a + c * b for a, b in zip(A[i], A[k])]
        U[i] = [a + c * b for a, b in zip(U[i], U[k])]
        for r in Ui:
            r[k] -= c * r[i]

    def row_swap(i, k):
        if i == k:
            return
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]
        for r in Ui:
            r[i], r[k] = r[k], r[i]

    def row_negate(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]
        for r in Ui:
            r[i] = -r[i]

    def col_add(j, k, c):
        if not c:
            return
        for r in A:
            r[j] += c * r[k]
        for r in V:
            r[j] += c * r[k]
        Vi[k] = [a - c * b for a, b in zip(Vi[k], Vi[j])]

    def col_swap(j, k):
        if j == k:
            return
        for r in A:
            r[j], r[k] = r[k], r[j]
        for r in V:
            r[j], r[k] = r[k], r[j]
        Vi[j], Vi[k] = Vi[k], Vi[j]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = A[i][j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
        if best is None:
            break
        _, bi, bj = best
        row_swap(t, bi)
        col_swap(t, bj)
        while True:
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    row_add(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    col_add(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        dirty = True
            if dirty:
                # move the smallest leftover in row/column t onto the pivot
                best = (abs(A[t][t]), t, t)
                for i in range(t + 1, m):
                    if A[i][t] and abs(A[i][t]) < best[0]:
                        best = (abs(A[i][t]), i, t)
                for j in range(t + 1, n):
                    if A[t][j] and abs(A[t][j]) < best[0]:
                        best = (abs(A[t][j]), t, j)
                row_swap(t, best[1])
                col_swap(t, best[2])
                continue
            p = A[t][t]
            bad = next(
                (i for i in range(t + 1, m) if any(A[i][j] % p for j in range(t + 1, n))),
                None,
            )
            if bad is None:
                break
            row_add(t, bad, 1)
        if A[t][t] < 0:
            row_negate(t)
        t += 1

    return SmithDecomposition(
        U=_freeze(U, m), D=_freeze(A, n), V=_freeze(V, n), source=M,
        U_inv=_freeze(Ui, m), V_inv=_freeze(Vi, n),
    )


def rank(M: IntMatrix) -> int:
    """Rank over Q."""
    return _rational_rank(M.to_rows())


def _rational_rank(rows: list[list]) -> int:
    rows = [[Fraction(x) for x in r] for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c]:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def det(M: IntMatrix) -> int:
    """Determinant by Bareiss fraction-free elimination."""
    if not M.is_square():
        raise ValueError(f"determinant of non-square {M.rows}x{M.cols} matrix")
    n = M.rows
    if n == 0:
        return 1
    A = M.to_rows()
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def kernel_basis(M: IntMatrix) -> IntMatrix:
    """Columns form a basis of {x ∈ Z^cols : Mx = 0}; the span is always a direct summand."""
    snf = smith_normal_form(M)
    return snf.V.columns(range(snf.rank, M.cols))


def saturation(A_basis: IntMatrix, ambient_rank: int) -> IntMatrix:
    """Basis of the smallest direct summand of Z^ambient_rank containing the column span."""
    if A_basis.rows != ambient_rank:
        raise ValueError(
            f"basis vectors have {A_basis.rows} coordinates but the ambient rank is {ambient_rank}"
        )
    snf = smith_normal_form(A_basis)
    # span(A) = U⁻¹·D·Z^m, so its rational hull meets Z^n in the first r columns of U⁻¹
    return snf.U_inv.columns(range(snf.rank))


def is_saturated(A_basis: IntMatrix) -> bool:
    """True when the columns are independent and span a direct summand."""
    snf = smith_normal_form(A_basis)
    return snf.rank == A_basis.cols and all(f == 1 for f in snf.invariant_factors)


def solve_integer(M: IntMatrix, b: IntMatrix) -> IntMatrix | None:
    """An integer X with M·X = b, or None when no integer solution exists."""
    if M.rows != b.rows:
        raise ValueError(f"right-hand side has {b.rows} rows, matrix has {M.rows}")
    snf = smith_normal_form(M)
    c = snf.U @ b
    r = snf.rank
    y = [[0] * b.cols for _ in range(M.cols)]
    for i in range(M.rows):
        for j in range(b.cols):
            v = c[i, j]
            if i < r:
                d = snf.D[i, i]
                if v % d:
                    return None
                y[i][j] = v // d
            elif v:
                return None
    return snf.V @ IntMatrix.from_rows(y, cols=b.cols)


def _check_composable(d_in: IntMatrix, d_out: IntMatrix) -> None:
    if d_out.cols != d_in.rows:
        raise ValueError(
            f"differentials do not compose: outgoing map has {d_out.cols} columns, incoming has {d_in.rows} rows"
        )
    prod = d_out @ d_in
    loc = prod.first_nonzero()
    if loc is not None:
        raise CompositionError(
            f"d_out · d_in is nonzero at entry {loc} (value {prod[loc]})"
        )


def homology_at(d_in: IntMatrix, d_out: IntMatrix) -> AbelianGroup:
    """ker(d_out) / im(d_in) in canonical form."""
    _check_composable(d_in, d_out)
    snf = smith_normal_form(d_out)
    r = snf.rank
    z = d_out.cols - r
    # coordinates of im(d_in) in the kernel basis V[:, r:]
    coords = (snf.V_inv @ d_in).select_rows(range(r, d_out.cols))
    inner = smith_normal_form(coords)
    return AbelianGroup.from_invariant_factors(z - inner.rank, inner.invariant_factors)


def torsion_free_part(G: AbelianGroup) -> int:
    """Rank of G/T(G)."""
    return G.free_rank


def _tf_projection(relations: IntMatrix) -> IntMatrix:
    """Surjection Z^a → Z^(a−r) whose kernel is the saturation of the relation lattice."""
    return kernel_basis(relations.T).T


def _right_inverse(P: IntMatrix) -> IntMatrix:
    """Integer S with P·S = I for a surjective integer matrix P."""
    snf = smith_normal_form(P)
    if snf.rank != P.rows or any(f != 1 for f in snf.invariant_factors):
        raise ValueError("matrix is not surjective over Z")
    # P = U⁻¹ [I 0] V⁻¹  ⇒  S = V [I;0] U
    return snf.V.columns(range(P.rows)) @ snf.U


def induced_tf_map(f: IntMatrix, source_relations: IntMatrix, target_relations: IntMatrix) -> IntMatrix:
    """The map F(A) → F(B) on torsion-free quotients induced by f.

    A = Z^a / im(source_relations), B = Z^b / im(target_relations), and f is a
    b×a integer matrix sending relations into relations. Both quotients are
    given the basis coming from the saturated-kernel projections.
    """
    if f.cols != source_relations.rows or f.rows != target_relations.rows:
        raise ValueError(
            f"map is {f.rows}x{f.cols} but the presentations have "
            f"{source_relations.rows} source and {target_relations.rows} target generators"
        )
    if solve_integer(target_relations, f @ source_relations) is None:
        raise ValueError("map does not send source relations into target relations")
    p_src = _tf_projection(source_relations)
    p_tgt = _tf_projection(target_relations)
    if p_src.rows == 0:
        return IntMatrix.zeros(p_tgt.rows, 0)
    return p_tgt @ f @ _right_inverse(p_src)

"""Division-free congruence diagonalization of hermitian matrices.

Works over any field whose elements support +, −, * and provide a
conjugation; the caller supplies an exact sign oracle for real elements.
The Schur complement after a pivot is rescaled by a real number of known
sign instead of divided, so no field inverses are ever taken.
"""

from __future__ import annotations

from typing import Callable, Sequence, TypeVar

T = TypeVar("T")

__all__ = ["hermitian_inertia"]


def hermitian_inertia(
    H: Sequence[Sequence[T]],
    sign: Callable[[T], int],
    is_zero: Callable[[T], bool],
    conj: Callable[[T], T] = lambda x: x,
    normalize: Callable[[list[list[T]]], list[list[T]]] | None = None,
    inverse: Callable[[T], T] | None = None,
) -> tuple[int, int, int]:
    """(r₊, r₋, nullity) of a hermitian matrix H.

    ``sign`` is only ever called on real diagonal entries known to be
    nonzero. ``normalize`` may rescale the working block by a positive
    scalar to keep entries small. When ``inverse`` is given the true Schur
    complement is formed instead, which keeps entries small over fields
    where content normalization does not help.
    """
    n = len(H)
    M = [list(row) for row in H]
    for i in range(n):
        if len(M[i]) != n:
            raise ValueError("hermitian_inertia needs a square matrix")
    active = list(range(n))
    r_plus = r_minus = nullity = 0
    scale_sign = 1  # working block = c · (true Schur complement), sign(c) = scale_sign

    while active:
        zero_rows = [a for a in active if all(is_zero(M[a][b]) for b in active)]
        if zero_rows:
            nullity += len(zero_rows)
            active = [a for a in active if a not in zero_rows]
            continue
        piv = next((a for a in active if not is_zero(M[a][a])), None)
        if piv is not None:
            p = M[piv][piv]
            s = sign(p)
            if s * scale_sign > 0:
                r_plus += 1
            else:
                r_minus += 1
            rest = [a for a in active if a != piv]
            new = {}
            if inverse is None:
                for a in rest:
                    for b in rest:
                        new[a, b] = p * M[a][b] - M[a][piv] * M[piv][b]
                scale_sign *= s
            else:
                p_inv = inverse(p)
                for a in rest:
                    f = M[a][piv] * p_inv
                    for b in rest:
                        new[a, b] = M[a][b] - f * M[piv][b]
            for (a, b), v in new.items():
                M[a][b] = v
            active = rest
        else:
            # all diagonal entries vanish; use a hyperbolic 2×2 block
            i, j = next((a, b) for a in active for b in active if not is_zero(M[a][b]))
            h = M[i][j]
            hc = conj(h)
            r_plus += 1
            r_minus += 1
            rest = [a for a in active if a not in (i, j)]
            new = {}
            if inverse is None:
                for a in rest:
                    for b in rest:
                        new[a, b] = h * hc * M[a][b] - hc * M[a][j] * M[i][b] - h * M[a][i] * M[j][b]
            else:
                # Schur complement of [[0, h], [h̄, 0]]
                h_inv, hc_inv = inverse(h), inverse(hc)
                for a in rest:
                    fa, fb = M[a][j] * h_inv, M[a][i] * hc_inv
                    for b in rest:
                        new[a, b] = M[a][b] - fa * M[i][b] - fb * M[j][b]
            for (a, b), v in new.items():
                M[a][b] = v
            active = rest
        if normalize is not None and active:
            block = normalize([[M[a][b] for b in active] for a in active])
            for x, a in enumerate(active):
                for y, b in enumerate(active):
                    M[a][b] = block[x][y]
    return r_plus, r_minus, nullity

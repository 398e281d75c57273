"""Randomized property suites, reproducible from a seed.

Case ``i`` of suite ``name`` run with seed ``s`` draws from
``random.Random(f"{name}/{s}/{i}")``, so any failure can be replayed on its
own. A failing case records the full instance as text.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .chain import cone, half_handle_complex, is_acyclic, is_H_cobordism, split_triad
from .exact_linalg import IntMatrix, det, kernel_basis, rank
from .forms import (
    EnlargementSpec,
    EpsSymmetricForm,
    RankEnlargementSpec,
    enlarge,
    inertia,
    is_H_enlargement,
    perp_of_base,
    verify_inv1,
)
from .generators import (
    random_enlargement,
    random_form,
    random_half_handle,
    random_matrix,
    random_rank_enlargement,
    random_seifert,
    random_seifert_enlargement,
    random_triad,
    random_unimodular,
)
from .polyarith import LaurentPolynomial, primitive_roots
from .seifert import (
    SeifertEnlargementSpec,
    SeifertForm,
    alexander,
    alexander_determinant,
    b_matrix,
    enlargement_alexander_factor,
    h_enlarge,
    lt_invariants,
    s_enlarge,
    s_reduce_candidates,
    verify_enlargement_invariance,
)
from .textio import format_chain_triad, format_complex, format_seifert

__all__ = ["Failure", "SuiteResult", "SUITES", "run_suite"]


@dataclass(frozen=True)
class Failure:
    case: int
    message: str
    instance: str


@dataclass
class SuiteResult:
    name: str
    cases: int
    seed: int
    failures: list[Failure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def report(self) -> str:
        lines = []
        for f in self.failures:
            lines.append(f"FAIL {self.name} case {f.case} (seed {self.seed}): {f.message}")
            lines += ["  " + ln for ln in f.instance.rstrip("\n").splitlines()]
        status = "pass" if self.passed else f"{len(self.failures)} failed"
        lines.append(f"{self.name}: {self.cases} cases, seed {self.seed}: {status}")
        return "\n".join(lines)


class _CaseFailure(Exception):
    def __init__(self, message: str, instance: str):
        super().__init__(message)
        self.message = message
        self.instance = instance


def _rows(M: IntMatrix) -> str:
    return "\n".join("  " + " ".join(map(str, r)) for r in M.to_rows()) if M.rows and M.cols else "  (empty)"


def _describe(**blocks) -> str:
    out = []
    for name, value in blocks.items():
        if isinstance(value, IntMatrix):
            out.append(f"{name}: {value.rows}x{value.cols}")
            out.append(_rows(value))
        else:
            out.append(f"{name}: {value}")
    return "\n".join(out) + "\n"


def _form_spec_text(spec) -> str:
    base = spec.base
    if isinstance(spec, RankEnlargementSpec):
        return _describe(epsilon=base.epsilon, B=base.gram, C=spec.C, D=spec.D)
    return _describe(epsilon=base.epsilon, l_minus=spec.l_minus, l_plus=spec.l_plus,
                     B=base.gram, C=spec.C, D=spec.D, E=spec.E)


def _seifert_spec_text(spec: SeifertEnlargementSpec) -> str:
    return format_seifert(spec.base, "base") + _describe(
        ell=spec.l_minus, alpha=spec.alpha, beta=spec.beta, x=spec.x, y=spec.y, z=spec.z
    )


def _profile(s: SeifertForm, roots) -> list[tuple[int, int]]:
    d = alexander_determinant(s)
    return [(r.nullity, r.signature) for r in (lt_invariants(s, xi, d) for xi in roots)]


# ---------------------------------------------------------------- forms

def _case_inv1(rng: random.Random) -> None:
    eps = rng.choice((1, -1))
    base = random_form(rng, eps, 6, 5)
    ell = 1 if rng.random() < 0.5 else rng.randint(1, 4)
    spec = random_rank_enlargement(rng, base, ell, 5)
    enlarged = enlarge(spec)
    rep = verify_inv1(base, enlarged, ell)
    problems = []
    if not rep.bound_ok:
        problems.append(f"|Δσ| + |Δn| = {rep.total} exceeds ℓ = {ell}")
    if rep.equality_if_rank1 is False:
        problems.append(f"rank 1 enlargement has |Δσ| + |Δn| = {rep.total}, expected 1")
    perp = perp_of_base(spec)
    if inertia(perp).signature != rep.delta_sigma:
        problems.append(f"Δσ = {rep.delta_sigma} but σ of the annihilator is {inertia(perp).signature}")
    if enlarged.is_nonsingular() and inertia(base).nullity != inertia(perp).nullity:
        problems.append("nonsingular enlargement but n(F) differs from n(F^⊥)")
    if problems:
        raise _CaseFailure("; ".join(problems), _form_spec_text(spec))


def _kernel_form(spec: EnlargementSpec) -> EpsSymmetricForm:
    """The form on ker((B C; 0 D)) / ker B, as a restriction of the enlarged form."""
    k, lm, lp = spec.base.dim, spec.l_minus, spec.l_plus
    enlarged = enlarge(spec)
    if k + lp == 0:
        return EpsSymmetricForm.zero(spec.base.epsilon, 0)
    top = IntMatrix.hstack([spec.base.gram, spec.C]) if k else IntMatrix.zeros(0, lp)
    bottom = IntMatrix.hstack([IntMatrix.zeros(lm, k), spec.D])
    K = kernel_basis(IntMatrix.vstack([top, bottom]))
    # embed F ⊕ L⁺ into F ⊕ L⁻ ⊕ L⁺
    rows = K.to_rows()
    embedded = rows[:k] + [[0] * K.cols for _ in range(lm)] + rows[k:]
    return enlarged.restrict(IntMatrix.from_rows(embedded, cols=K.cols))


def _case_cor_inv(rng: random.Random) -> None:
    eps = rng.choice((1, -1))
    base = random_form(rng, eps, 5, 3)
    if rng.random() < 0.4:
        lm = lp = rng.randint(1, 3)
        spec = random_enlargement(rng, base, lm, lp, 3, h=True)
    else:
        lm, lp = rng.randint(0, 3), rng.randint(0, 3)
        spec = random_enlargement(rng, base, lm, lp, 3)
    enlarged = enlarge(spec)
    a, b = inertia(base), inertia(enlarged)
    ds, dn = b.signature - a.signature, b.nullity - a.nullity
    problems = []
    ker_sig = inertia(_kernel_form(spec)).signature
    if ds != ker_sig:
        problems.append(f"Δσ = {ds} but the kernel form has signature {ker_sig}")
    if abs(ds) + abs(dn) > lm + lp:
        problems.append(f"|Δσ| + |Δn| = {abs(ds) + abs(dn)} exceeds ℓ⁻ + ℓ⁺ = {lm + lp}")
    n_D = lp - rank(spec.D)
    # the min(n(D), n + n′) bound only survives for ℓ⁻ = ℓ⁺: with F = 0 and a
    # nonsingular odd-rank enlargement the signature is odd while n(D) = 0 is possible
    if lm == lp and abs(ds) > min(n_D, a.nullity + b.nullity):
        problems.append(f"|Δσ| = {abs(ds)} exceeds min(n(D), n + n′) = {min(n_D, a.nullity + b.nullity)}")
    if is_H_enlargement(spec) and (ds, dn) != (0, 0):
        problems.append(f"H-enlargement changed (σ, n) by ({ds}, {dn})")
    if lm == lp:
        want = (-eps) ** lm * base.determinant() * det(spec.D) ** 2
        got = enlarged.determinant()
        if got != want:
            problems.append(f"det B′ = {got}, expected (−ε)^ℓ·det B·det D·det Dᵀ = {want}")
    if problems:
        raise _CaseFailure("; ".join(problems), _form_spec_text(spec))


# ---------------------------------------------------------------- Seifert forms

def _case_sequiv(rng: random.Random) -> None:
    base = random_seifert(rng, 4, 2)
    spec = random_seifert_enlargement(rng, base, rng.randint(1, 3), 2, h=rng.random() < 0.3)
    problems = []
    got = alexander_determinant(h_enlarge(spec))
    want = enlargement_alexander_factor(spec) * alexander_determinant(base)
    if got != want:
        problems.append(f"Δ of the enlargement is {got}, expected {want}")
    k, eps = base.dim, base.epsilon
    transposed = alexander_determinant(SeifertForm(base.A.T, base.parity))
    expected = alexander_determinant(base).inverted() * LaurentPolynomial.monomial(k, eps ** k)
    if transposed != expected:
        problems.append(f"Δ of Aᵀ is {transposed}, expected (εt)^k·Δ(t⁻¹) = {expected}")
    if problems:
        raise _CaseFailure("; ".join(problems), _seifert_spec_text(spec))


_LEMMA_ROOTS = primitive_roots(12)


def _case_lt_lemma(rng: random.Random) -> None:
    s = random_seifert(rng, 5, 2)
    d = alexander_determinant(s)
    for xi in _LEMMA_ROOTS:
        try:
            r = lt_invariants(s, xi, d)
        except ArithmeticError as exc:
            raise _CaseFailure(f"at ξ = {xi}: {exc}", format_seifert(s)) from None
        if (r.nullity > 0) != r.alexander_value_is_zero:
            raise _CaseFailure(f"at ξ = {xi}: nullity {r.nullity} but Δ(ξ) = 0 is {r.alexander_value_is_zero}",
                               format_seifert(s))
    # B_A(ξ) = (ξ̄ − 1)(ξA + εAᵀ) as an exact matrix identity
    xi = rng.choice(_LEMMA_ROOTS)
    z = xi.value()
    B = b_matrix(s, xi)
    c = z.conjugate() - 1
    for i in range(s.dim):
        for j in range(s.dim):
            if B[i][j] != c * (z * s.A[i, j] + s.epsilon * s.A[j, i]):
                raise _CaseFailure(f"B_A(ξ) rewriting fails at ({i}, {j}) for ξ = {xi}", format_seifert(s))


_MOVE_ROOTS = primitive_roots(8)


def _case_s_moves(rng: random.Random) -> None:
    s = random_seifert(rng, 3, 2)
    start_delta, start_profile = alexander(s), _profile(s, _MOVE_ROOTS)
    history = [format_seifert(s, "start")]
    for step in range(rng.randint(1, 6)):
        kind = rng.choice(("column", "row", "congruence", "reduce"))
        if kind == "reduce" and s_reduce_candidates(s):
            s = rng.choice(s_reduce_candidates(s))
        elif kind == "congruence" and s.dim:
            s = s.congruent(random_unimodular(rng, s.dim)[0])
        elif kind == "row":
            s = s_enlarge(s, "row", random_matrix(rng, 1, s.dim, 2))
        else:
            s = s_enlarge(s, "column", random_matrix(rng, s.dim, 1, 2))
        history.append(format_seifert(s, f"after move {step + 1}"))
        if alexander(s) != start_delta:
            raise _CaseFailure(f"normalized Δ changed from {start_delta} to {alexander(s)}", "".join(history))
        if _profile(s, _MOVE_ROOTS) != start_profile:
            raise _CaseFailure("(n(ξ), σ(ξ)) changed along S-moves", "".join(history))


def _case_lt_invariance(rng: random.Random) -> None:
    base = random_seifert(rng, 3, 2)
    spec = random_seifert_enlargement(rng, base, rng.randint(1, 2), 2, h=rng.random() < 0.5)
    xi = rng.choice(_MOVE_ROOTS)
    rep = verify_enlargement_invariance(spec, xi)
    problems = []
    if rep.applicable and not rep.preserved:
        problems.append(f"at ξ = {xi}: (n, σ) went from {rep.base} to {rep.enlarged} although det(ξx + εyᵀ) ≠ 0")
    if rep.jump != rep.kernel_signature:
        problems.append(f"at ξ = {xi}: signature jump {rep.jump} but annihilator signature {rep.kernel_signature}")
    if problems:
        raise _CaseFailure("; ".join(problems), _seifert_spec_text(spec))


# ---------------------------------------------------------------- chain level

def _case_split(rng: random.Random) -> None:
    g = random_triad(rng)
    certs = split_triad(g).certificates()
    bad = [k for k, ok in certs.items() if not ok]
    if bad:
        raise _CaseFailure(f"quasi-isomorphism certificate fails for {', '.join(bad)}", format_chain_triad(g))


def _case_half_handle(rng: random.Random) -> None:
    h = random_half_handle(rng)
    C = half_handle_complex(h)
    cd = cone(h.d)
    problems = []
    for r in range(min(C.lo, cd.lo - 1) - 1, max(C.hi, cd.hi) + 2):
        if C.homology(r) != cd.homology(r + 1):
            problems.append(f"H_{r} = {C.homology(r)} but the cone of d has H_{r + 1} = {cd.homology(r + 1)}")
    if is_H_cobordism(h) != is_acyclic(cd):
        problems.append("is_H_cobordism disagrees with acyclicity of the cone")
    if C.euler_characteristic() != h.c_plus.euler_characteristic() + h.c_minus.euler_characteristic():
        problems.append("Euler characteristic is not additive")
    if problems:
        text = "[C+]\n" + format_complex(h.c_plus) + "[C-]\n" + format_complex(h.c_minus)
        text += "".join(f"[d {r}]\n{_rows(h.d.f(r))}\n" for r in h.c_plus.degrees)
        raise _CaseFailure("; ".join(problems), text)


SUITES: dict[str, tuple[Callable[[random.Random], None], int, str]] = {
    "inv1": (_case_inv1, 1000, "rank ℓ enlargement bounds, rank 1 equality and annihilator signature"),
    "cor-inv": (_case_cor_inv, 500, "rank (ℓ⁻, ℓ⁺) enlargements: kernel signature, bounds, H-invariance, determinant"),
    "sequiv": (_case_sequiv, 500, "Alexander polynomial of enlargements and of the transpose"),
    "lt-lemma": (_case_lt_lemma, 200, "nullity(ξ) > 0 exactly when Δ(ξ) = 0, for all q ≤ 12"),
    "s-moves": (_case_s_moves, 100, "Δ and (n, σ) constant along chains of S-moves"),
    "lt-invariance": (_case_lt_invariance, 200, "(n, σ) under enlargements with det(ξx + εyᵀ) ≠ 0"),
    "split": (_case_split, 100, "all four splitting quasi-isomorphism certificates"),
    "half-handle": (_case_half_handle, 200, "half-handle homology equals shifted cone homology"),
}


def run_suite(name: str, cases: int | None = None, seed: int = 0) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; available: {', '.join(SUITES)}")
    case_fn, default_cases, _ = SUITES[name]
    n = default_cases if cases is None else cases
    result = SuiteResult(name, n, seed)
    for i in range(n):
        rng = random.Random(f"{name}/{seed}/{i}")
        try:
            case_fn(rng)
        except _CaseFailure as exc:
            result.failures.append(Failure(i, exc.message, exc.instance))
    return result

import random
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cobordism import CyclotomicNumber, LaurentPolynomial, RootOfUnity, certified_sign, s_normalize
from cobordism.polyarith import (
    conjugate,
    cyclo_det,
    cyclo_rank,
    cyclotomic_polynomial,
    eval_at,
    h_equivalence_witness,
    laurent_det,
    poly_s_equivalent,
    primitive_roots,
)

from oracle_values import ORACLE

t = LaurentPolynomial.t()
P = LaurentPolynomial.parse


def _num(z: CyclotomicNumber) -> mpmath.mpc:
    """Direct evaluation at 200 bits, independent of the library's own evaluator."""
    with mpmath.workprec(200):
        w = mpmath.expjpi(mpmath.mpf(2) / z.modulus)
        return sum((c * w**k for k, c in enumerate(z.coeffs)), mpmath.mpc(0)) / z.denom


def _close(a, b) -> bool:
    # callers combine values at the default 53-bit precision
    return abs(a - b) < 2.0**-40


laurents = st.builds(
    LaurentPolynomial,
    st.integers(-3, 3),
    st.lists(st.integers(-4, 4), max_size=5),
)
roots = st.sampled_from(primitive_roots(12))


@st.composite
def cyclotomics(draw, modulus=None):
    q = modulus or draw(st.integers(1, 12))
    coeffs = draw(st.lists(st.integers(-5, 5), min_size=q, max_size=q))
    return CyclotomicNumber(q, coeffs, draw(st.integers(1, 4)))


class TestLaurent:
    def test_parse_and_print(self):
        assert str(P("1 - t + t^2")) == "1 - t + t^2"
        assert P("t^-1 + 2") == LaurentPolynomial(-1, [1, 2])

    def test_arithmetic(self):
        assert (t - 1) * (t + 1) == t * t - 1
        assert t.inverted() * t == LaurentPolynomial.constant(1)

    @settings(max_examples=100, deadline=None)
    @given(laurents, laurents, laurents)
    def test_ring_axioms(self, a, b, c):
        assert (a + b) * c == a * c + b * c
        assert a * b == b * a
        assert (a * b).inverted() == a.inverted() * b.inverted()


class TestLaurentDet:
    def test_one_by_one(self):
        assert laurent_det([[t - 1]]) == t - 1

    def test_units(self):
        one, zero = LaurentPolynomial.constant(1), LaurentPolynomial()
        assert laurent_det([[t, zero], [zero, t.inverted()]]) == one

    def test_worked_example(self):
        one = LaurentPolynomial.constant(1)
        d = laurent_det([[one - t, t], [-one, one - t]])
        assert [d.coefficient(k) for k in range(3)] == ORACLE["laurent_det_example"]

    def test_empty(self):
        assert laurent_det([]) == LaurentPolynomial.constant(1)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 3).flatmap(lambda n: st.lists(st.lists(laurents, min_size=n, max_size=n), min_size=n, max_size=n)),
           st.integers(1, 3).flatmap(lambda n: st.lists(st.lists(laurents, min_size=n, max_size=n), min_size=n, max_size=n)))
    def test_block_triangular_multiplicative(self, a, b):
        zero = LaurentPolynomial()
        n, m = len(a), len(b)
        block = [row + [t] * m for row in a] + [[zero] * n + row for row in b]
        assert laurent_det(block) == laurent_det(a) * laurent_det(b)


class TestSNormalize:
    def test_factor_out_monomial(self):
        # −t³ + t² = t²(1 − t): lowest degree 0 with positive lowest coefficient
        assert s_normalize(P("-t^3 + t^2")) == P("1 - t")

    def test_shift_equivalence(self):
        p = P("1 - 3t + t^2")
        assert poly_s_equivalent(p, p * LaurentPolynomial.monomial(5))
        assert poly_s_equivalent(P("t^2 - t + 1"), P("1 - t + t^2") * t.inverted())

    @settings(max_examples=100, deadline=None)
    @given(laurents, st.integers(-6, 6), st.sampled_from((1, -1)))
    def test_idempotent_and_class_invariant(self, p, k, sign):
        n = s_normalize(p)
        assert s_normalize(n) == n
        assert s_normalize(p * LaurentPolynomial.monomial(k, sign)) == n
        if not p.is_zero():
            assert n.lowest_degree == 0 and n.coefficient(0) > 0

    def test_h_equivalence_witness(self):
        q = P("2 - t")  # q(1) = 1
        p = P("1 - t + t^2")
        assert h_equivalence_witness(p * q * q.inverted(), p, LaurentPolynomial.constant(1), q)
        assert not h_equivalence_witness(p, p, P("2"), LaurentPolynomial.constant(1))


class TestCyclotomic:
    def test_polynomials(self):
        assert cyclotomic_polynomial(6) == (1, -1, 1)
        assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)

    def test_zeta_sums(self):
        z6 = CyclotomicNumber.zeta(6)
        assert z6 + z6.conjugate() == ORACLE["zeta6_trace"]
        z5 = CyclotomicNumber.zeta(5)
        s = z5 + z5.conjugate() + z5 * z5 + (z5 * z5).conjugate()
        assert s == CyclotomicNumber.from_int(5, ORACLE["zeta5_sum"])

    def test_mixed_moduli(self):
        with pytest.raises(ValueError, match="mixed moduli"):
            CyclotomicNumber.zeta(3) + CyclotomicNumber.zeta(4)

    def test_zero_has_no_inverse(self):
        with pytest.raises(ZeroDivisionError):
            CyclotomicNumber.from_int(5, 0).inverse()

    @settings(max_examples=100, deadline=None)
    @given(st.integers(1, 12).flatmap(lambda q: st.tuples(cyclotomics(q), cyclotomics(q))))
    def test_field_operations_match_numerics(self, pair):
        a, b = pair
        assert _close(_num(a + b), _num(a) + _num(b))
        assert _close(_num(a * b), _num(a) * _num(b))
        assert _close(_num(a.conjugate()), mpmath.conj(_num(a)))
        assert conjugate(conjugate(a)) == a
        if not a.is_zero():
            assert a * a.inverse() == 1

    @settings(max_examples=60, deadline=None)
    @given(cyclotomics(), st.integers(1, 12))
    def test_galois_is_a_ring_morphism(self, a, k):
        from math import gcd

        if gcd(k, a.modulus) != 1:
            return
        b = a * a + 3
        assert b.galois(k) == a.galois(k) * a.galois(k) + 3


class TestEvalAt:
    def test_minus_one(self):
        assert eval_at(t, RootOfUnity(1, 2)) == CyclotomicNumber.from_int(2, -1)

    def test_root_of_phi6(self):
        assert eval_at(P("t^2 - t + 1"), RootOfUnity(1, 6)).is_zero()

    def test_conjugate_of_i(self):
        i = CyclotomicNumber.zeta(4)
        assert i.conjugate() == -i

    @settings(max_examples=100, deadline=None)
    @given(laurents, laurents, roots)
    def test_ring_morphism_with_involution(self, a, b, xi):
        assert eval_at(a * b, xi) == eval_at(a, xi) * eval_at(b, xi)
        assert eval_at(a + b, xi) == eval_at(a, xi) + eval_at(b, xi)
        assert conjugate(eval_at(a, xi)) == eval_at(a.inverted(), xi)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(laurents, min_size=n, max_size=n), min_size=n, max_size=n)), roots)
    def test_respects_determinant(self, m, xi):
        entrywise = [[eval_at(x, xi) for x in row] for row in m]
        assert eval_at(laurent_det(m), xi) == cyclo_det(entrywise, xi.q)


class TestCycloRank:
    def test_zero_and_identity(self):
        z, o = CyclotomicNumber.from_int(6, 0), CyclotomicNumber.from_int(6, 1)
        assert cyclo_rank([[z, z], [z, z]]) == 0
        assert cyclo_rank([[o, z], [z, o]]) == 2

    def test_worked_example(self):
        z = CyclotomicNumber.zeta(6)
        one = CyclotomicNumber.from_int(6, 1)
        assert cyclo_rank([[one, z], [z.inverse(), one]]) == ORACLE["cyclo_rank_example"]

    def test_mixed_moduli(self):
        with pytest.raises(ValueError, match="mixed"):
            cyclo_rank([[CyclotomicNumber.zeta(3), CyclotomicNumber.zeta(4)]])

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 12).flatmap(lambda q: st.lists(st.lists(cyclotomics(q), min_size=3, max_size=3), min_size=2, max_size=2)))
    def test_dependent_rows_drop_rank(self, rows):
        a, b = rows
        q = a[0].modulus
        c = CyclotomicNumber.zeta(q, 2) * 3
        third = [x * c + y for x, y in zip(a, b)]
        assert cyclo_rank([a, b, third]) == cyclo_rank([a, b])


class TestCertifiedSign:
    def test_zero(self):
        assert certified_sign(CyclotomicNumber.from_int(7, 0)) == 0

    def test_positive(self):
        z = CyclotomicNumber.zeta(6)
        assert certified_sign(z + z.conjugate()) == 1

    def test_negative(self):
        z = CyclotomicNumber.zeta(5)
        assert certified_sign(z + z.conjugate() + z * z + (z * z).conjugate()) == -1

    def test_rejects_non_real(self):
        with pytest.raises(ValueError, match="real"):
            certified_sign(CyclotomicNumber.zeta(4))

    def test_tiny_nonzero_value(self):
        # 2cos(2π/12) = √3, and 1351² − 3·780² = 1, so 1351 − 780√3 ≈ 3.7e−4
        z = CyclotomicNumber.zeta(12)
        root3 = z + z.conjugate()
        assert certified_sign(1351 - root3 * 780) == 1
        assert certified_sign(root3 * 780 - 1351) == -1

    @settings(max_examples=200, deadline=None)
    @given(cyclotomics())
    def test_agrees_with_direct_evaluation(self, a):
        r = a + a.conjugate()
        s = certified_sign(r)
        value = _num(r).real
        if r.is_zero():
            assert s == 0
        else:
            assert s == (1 if value > 0 else -1)

    def test_concurrent_callers(self):
        rng = random.Random(11)
        values = []
        for _ in range(300):
            q = rng.randint(2, 12)
            a = CyclotomicNumber(q, [rng.randint(-9, 9) for _ in range(q)])
            values.append(a + a.conjugate())
        serial = [certified_sign(v) for v in values]
        with ThreadPoolExecutor(max_workers=8) as pool:
            assert list(pool.map(certified_sign, values)) == serial


class TestRootOfUnity:
    def test_reduces(self):
        xi = RootOfUnity(2, 4)
        assert (xi.p, xi.q) == (1, 2)
        assert xi.angle == Fraction(1, 2)

    def test_one_is_excluded(self):
        with pytest.raises(ValueError, match="excluded"):
            RootOfUnity(0, 1)
        with pytest.raises(ValueError, match="excluded"):
            RootOfUnity.parse("3/3")

    def test_primitive_roots_sorted(self):
        rs = primitive_roots(4)
        assert [str(r) for r in rs] == ["1/4", "1/3", "1/2", "2/3", "3/4"]

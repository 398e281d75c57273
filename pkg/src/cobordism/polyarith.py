"""Laurent polynomials over Z and exact arithmetic in cyclotomic fields.

Elements of Q(ζ_N) are stored as an integer coefficient vector over the
power basis 1, ζ, …, ζ^{φ(N)−1} together with a positive common
denominator; reduction is modulo the cyclotomic polynomial Φ_N so the ring
is a field and zero tests are exact.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

import mpmath

__all__ = [
    "LaurentPolynomial",
    "RootOfUnity",
    "CyclotomicNumber",
    "SignCertificationError",
    "cyclotomic_polynomial",
    "euler_phi",
    "laurent_det",
    "s_normalize",
    "poly_s_equivalent",
    "h_equivalence_witness",
    "eval_at",
    "conjugate",
    "cyclo_rank",
    "cyclo_det",
    "certified_sign",
    "primitive_roots",
]


# ---------------------------------------------------------------- integer polynomials
# Plain lists of ints, ascending degree, no trailing zeros; [] is zero.

def _trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _padd(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def _pneg(a: Sequence[int]) -> list[int]:
    return [-x for x in a]


def _pmul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _pexact_div(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """a / b in Z[t], assuming the division is exact."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    for k in range(len(q) - 1, -1, -1):
        c = rem[k + len(b) - 1]
        if c % lead:
            raise ArithmeticError("polynomial division is not exact over Z")
        c //= lead
        q[k] = c
        if c:
            for i, y in enumerate(b):
                rem[k + i] -= c * y
    if any(rem):
        raise ArithmeticError("polynomial division leaves a remainder")
    return _trim(q)


# ---------------------------------------------------------------- Laurent polynomials

class LaurentPolynomial:
    """Σ coefficients[i] · t^(lowest_degree + i) with integer coefficients."""

    __slots__ = ("lowest_degree", "coefficients")

    def __init__(self, lowest_degree: int = 0, coefficients: Iterable[int] = ()):
        coeffs = [int(c) for c in coefficients]
        _trim(coeffs)
        start = 0
        while start < len(coeffs) and coeffs[start] == 0:
            start += 1
        coeffs = coeffs[start:]
        object.__setattr__(self, "coefficients", tuple(coeffs))
        object.__setattr__(self, "lowest_degree", lowest_degree + start if coeffs else 0)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPolynomial is immutable")

    @classmethod
    def constant(cls, c: int) -> "LaurentPolynomial":
        return cls(0, [c])

    @classmethod
    def monomial(cls, degree: int, c: int = 1) -> "LaurentPolynomial":
        return cls(degree, [c])

    @classmethod
    def t(cls) -> "LaurentPolynomial":
        return cls(1, [1])

    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def highest_degree(self) -> int:
        return self.lowest_degree + len(self.coefficients) - 1

    def coefficient(self, k: int) -> int:
        i = k - self.lowest_degree
        return self.coefficients[i] if 0 <= i < len(self.coefficients) else 0

    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, int):
            return LaurentPolynomial.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.lowest_degree, other.lowest_degree)
        a = [0] * (self.lowest_degree - lo) + list(self.coefficients)
        b = [0] * (other.lowest_degree - lo) + list(other.coefficients)
        return LaurentPolynomial(lo, _padd(a, b))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial(self.lowest_degree, _pneg(self.coefficients))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPolynomial(self.lowest_degree + other.lowest_degree, _pmul(self.coefficients, other.coefficients))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPolynomial":
        if n < 0:
            raise ValueError("negative powers are only defined for monomials; use monomial()")
        out = LaurentPolynomial.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by t^k."""
        return LaurentPolynomial(self.lowest_degree + k, self.coefficients) if self.coefficients else self

    def inverted(self) -> "LaurentPolynomial":
        """Substitute t ↦ t⁻¹."""
        if self.is_zero():
            return self
        return LaurentPolynomial(-self.highest_degree, reversed(self.coefficients))

    def __call__(self, value):
        """Evaluate at an int, Fraction or anything supporting ** with integer exponents."""
        return sum((c * value ** (self.lowest_degree + i) for i, c in enumerate(self.coefficients) if c), 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.lowest_degree == other.lowest_degree and self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash((self.lowest_degree, self.coefficients))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coefficients):
            if not c:
                continue
            k = self.lowest_degree + i
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                power = "t" if k == 1 else f"t^{k}"
                body = power if mag == 1 else f"{mag}{power}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self.lowest_degree}, {list(self.coefficients)})"

    _TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(t(?:\s*\^\s*(-?\d+))?)?")

    @classmethod
    def parse(cls, text: str) -> "LaurentPolynomial":
        """Inverse of ``str``: terms like ``3``, ``-t``, ``2t^-3``, ``+ 5*t^2``."""
        s = text.strip()
        if not s:
            raise ValueError("empty polynomial")
        out = cls()
        pos = 0
        first = True
        while pos < len(s):
            while pos < len(s) and s[pos].isspace():
                pos += 1
            if pos >= len(s):
                break
            m = cls._TERM.match(s, pos)
            if not m or m.end() == pos or not (m.group(2) or m.group(3)):
                raise ValueError(f"cannot parse polynomial term at position {pos}: {s[pos:]!r}")
            sign, digits, var, exp = m.groups()
            if not first and not sign:
                raise ValueError(f"missing '+' or '-' before term at position {pos}")
            c = int(digits) if digits else 1
            if sign == "-":
                c = -c
            k = 0 if not var else (int(exp) if exp is not None else 1)
            out = out + cls.monomial(k, c)
            pos = m.end()
            first = False
        return out


def laurent_det(M: Sequence[Sequence[LaurentPolynomial]]) -> LaurentPolynomial:
    """Determinant by Bareiss elimination over Z[t] after clearing negative powers rowwise."""
    n = len(M)
    for row in M:
        if len(row) != n:
            raise ValueError("laurent_det needs a square matrix")
    if n == 0:
        return LaurentPolynomial.constant(1)
    total_shift = 0
    A = []
    for row in M:
        nonzero = [p for p in row if not p.is_zero()]
        if not nonzero:
            return LaurentPolynomial()
        s = min(p.lowest_degree for p in nonzero)
        total_shift += s
        A.append([[0] * (p.lowest_degree - s) + list(p.coefficients) if not p.is_zero() else [] for p in row])
    sign, prev = 1, [1]
    for k in range(n - 1):
        if not A[k][k]:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return LaurentPolynomial()
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = _padd(_pmul(A[i][j], A[k][k]), _pneg(_pmul(A[i][k], A[k][j])))
                A[i][j] = _pexact_div(num, prev) if num else []
        prev = A[k][k]
    d = A[n - 1][n - 1]
    return LaurentPolynomial(total_shift, [sign * c for c in d])


def s_normalize(p: LaurentPolynomial) -> LaurentPolynomial:
    """Representative of p up to ±t^k: lowest degree 0, positive lowest coefficient."""
    if p.is_zero():
        return p
    c = p.coefficients
    return LaurentPolynomial(0, c if c[0] > 0 else [-x for x in c])


def poly_s_equivalent(p0: LaurentPolynomial, p1: LaurentPolynomial) -> bool:
    return s_normalize(p0) == s_normalize(p1)


def h_equivalence_witness(
    p0: LaurentPolynomial, p1: LaurentPolynomial, q0: LaurentPolynomial, q1: LaurentPolynomial
) -> bool:
    """Check q0(t)q0(t⁻¹)p0(t) and q1(t)q1(t⁻¹)p1(t) agree up to ±t^k with q0(1), q1(1) = ±1.

    This only verifies a supplied witness; it never searches for one.
    """
    if abs(q0(1)) != 1 or abs(q1(1)) != 1:
        return False
    return poly_s_equivalent(q0 * q0.inverted() * p0, q1 * q1.inverted() * p1)


# ---------------------------------------------------------------- cyclotomic fields

@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Φ_n, ascending."""
    if n < 1:
        raise ValueError("cyclotomic polynomial index must be positive")
    p = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            p = _pexact_div(p, cyclotomic_polynomial(d))
    return tuple(p)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """ζ_n^j in the power basis, for 0 ≤ j < n."""
    phi = euler_phi(n)
    Phi = cyclotomic_polynomial(n)
    table = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(n):
        table.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(phi):
                cur[i] -= top * Phi[i]
    return tuple(table)


def _reduce(n: int, prod: list[int]) -> list[int]:
    phi = euler_phi(n)
    Phi = cyclotomic_polynomial(n)
    for k in range(len(prod) - 1, phi - 1, -1):
        c = prod[k]
        if c:
            base = k - phi
            for i in range(phi):
                prod[base + i] -= c * Phi[i]
            prod[k] = 0
    out = prod[:phi]
    return out + [0] * (phi - len(out))


class CyclotomicNumber:
    """(Σ coeffs[i] ζ^i) / denom in Q(ζ_modulus)."""

    __slots__ = ("modulus", "coeffs", "denom")

    def __init__(self, modulus: int, coeffs: Sequence[int], denom: int = 1):
        if modulus < 1:
            raise ValueError("modulus must be positive")
        if denom == 0:
            raise ZeroDivisionError("zero denominator")
        phi = euler_phi(modulus)
        coeffs = list(coeffs)
        if len(coeffs) > phi:
            coeffs = _reduce(modulus, coeffs)
        coeffs += [0] * (phi - len(coeffs))
        if denom < 0:
            coeffs, denom = [-c for c in coeffs], -denom
        g = denom
        for c in coeffs:
            if g == 1:
                break
            g = gcd(g, c)
        if g > 1:
            coeffs = [c // g for c in coeffs]
            denom //= g
        if not any(coeffs):
            denom = 1
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "denom", denom)

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicNumber is immutable")

    @classmethod
    def from_int(cls, modulus: int, value: int) -> "CyclotomicNumber":
        return cls(modulus, [value])

    @classmethod
    def from_fraction(cls, modulus: int, value: Fraction) -> "CyclotomicNumber":
        value = Fraction(value)
        return cls(modulus, [value.numerator], value.denominator)

    @classmethod
    def zeta(cls, modulus: int, k: int = 1) -> "CyclotomicNumber":
        """ζ_modulus^k for any integer k."""
        return cls(modulus, _power_table(modulus)[k % modulus])

    @classmethod
    def from_rationals(cls, modulus: int, coeffs: Sequence[Fraction]) -> "CyclotomicNumber":
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // gcd(den, c.denominator)
        return cls(modulus, [int(c * den) for c in fr], den)

    def rational_coefficients(self) -> list[Fraction]:
        return [Fraction(c, self.denom) for c in self.coeffs]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def _lift(self, other) -> "CyclotomicNumber":
        if isinstance(other, CyclotomicNumber):
            if other.modulus != self.modulus:
                raise ValueError(f"mixed moduli {self.modulus} and {other.modulus}")
            return other
        if isinstance(other, int):
            return CyclotomicNumber.from_int(self.modulus, other)
        if isinstance(other, Fraction):
            return CyclotomicNumber.from_fraction(self.modulus, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        d1, d2 = self.denom, other.denom
        return CyclotomicNumber(self.modulus, [a * d2 + b * d1 for a, b in zip(self.coeffs, other.coeffs)], d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.modulus, [-a for a in self.coeffs], self.denom)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicNumber(self.modulus, [c * other for c in self.coeffs], self.denom)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        n = self.modulus
        if self.is_zero() or other.is_zero():
            return CyclotomicNumber(n, ())
        phi = len(self.coeffs)
        prod = [0] * (2 * phi - 1) if phi else []
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        prod[i + j] += x * y
        return CyclotomicNumber(n, _reduce(n, prod), self.denom * other.denom)

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        """z⁻¹ = (product of the other Galois conjugates of z) / N(z).

        The norm N(z) is a nonzero rational, so everything stays in integer
        arithmetic.
        """
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        n = self.modulus
        num = CyclotomicNumber(n, [1])
        for a in range(2, n):
            if gcd(a, n) == 1:
                num = num * self.galois(a)
        norm = num * self
        # the norm is rational, so only its constant coefficient survives
        if any(norm.coeffs[1:]):
            raise ArithmeticError("norm of a cyclotomic number is not rational")
        return CyclotomicNumber(n, [c * norm.denom for c in num.coeffs], num.denom * norm.coeffs[0])

    def galois(self, a: int) -> "CyclotomicNumber":
        """Image under the automorphism ζ ↦ ζ^a (a coprime to the modulus)."""
        n = self.modulus
        if gcd(a, n) != 1:
            raise ValueError(f"{a} is not a unit modulo {n}")
        table = _power_table(n)
        out = [0] * len(self.coeffs)
        for j, c in enumerate(self.coeffs):
            if c:
                for i, v in enumerate(table[(a * j) % n]):
                    out[i] += c * v
        return CyclotomicNumber(n, out, self.denom)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def conjugate(self) -> "CyclotomicNumber":
        table = _power_table(self.modulus)
        n = self.modulus
        out = [0] * len(self.coeffs)
        for j, c in enumerate(self.coeffs):
            if c:
                for i, v in enumerate(table[(-j) % n]):
                    out[i] += c * v
        return CyclotomicNumber(n, out, self.denom)

    def is_real(self) -> bool:
        return self.conjugate() == self

    def embed(self, modulus: int) -> "CyclotomicNumber":
        """Image under Q(ζ_n) ⊂ Q(ζ_m), ζ_n ↦ ζ_m^{m/n}."""
        if modulus % self.modulus:
            raise ValueError(f"Q(ζ_{self.modulus}) does not embed in Q(ζ_{modulus})")
        step = modulus // self.modulus
        table = _power_table(modulus)
        out = [0] * euler_phi(modulus)
        for j, c in enumerate(self.coeffs):
            if c:
                for i, v in enumerate(table[(j * step) % modulus]):
                    out[i] += c * v
        return CyclotomicNumber(modulus, out, self.denom)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self._lift(other)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        return self.modulus == other.modulus and self.coeffs == other.coeffs and self.denom == other.denom

    def __hash__(self) -> int:
        return hash((self.modulus, self.coeffs, self.denom))

    def complex_value(self, prec: int = 53) -> mpmath.mpc:
        """Numerical value, for diagnostics only."""
        with mpmath.workprec(prec):
            z = mpmath.expjpi(mpmath.mpf(2) / self.modulus)
            return sum((c * z ** i for i, c in enumerate(self.coeffs)), mpmath.mpc(0)) / self.denom

    def __repr__(self) -> str:
        terms = [f"{c}·ζ^{i}" if i else f"{c}" for i, c in enumerate(self.coeffs) if c]
        body = " + ".join(terms) if terms else "0"
        if self.denom != 1:
            body = f"({body})/{self.denom}"
        return f"CyclotomicNumber[{self.modulus}]({body})"


def conjugate(z: CyclotomicNumber) -> CyclotomicNumber:
    return z.conjugate()


@dataclass(frozen=True, order=False)
class RootOfUnity:
    """ξ = e^{2πi p/q} with gcd(p, q) = 1, 0 ≤ p < q and q ≥ 2 (so ξ ≠ 1)."""

    p: int
    q: int

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("denominator must be positive")
        p = self.p % self.q
        g = gcd(p, self.q)
        p, q = p // g, self.q // g
        if q < 2:
            raise ValueError("ξ = 1 is excluded: the invariants are only defined for ξ ≠ 1 on the unit circle")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @classmethod
    def parse(cls, text: str) -> "RootOfUnity":
        m = re.fullmatch(r"\s*(-?\d+)\s*/\s*(\d+)\s*", text)
        if not m:
            raise ValueError(f"expected a root of unity written p/q, got {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))

    def value(self, modulus: int | None = None) -> CyclotomicNumber:
        """ξ as an element of Q(ζ_modulus); modulus defaults to q."""
        m = self.q if modulus is None else modulus
        if m % self.q:
            raise ValueError(f"ξ = e^(2πi·{self}) does not lie in Q(ζ_{m})")
        return CyclotomicNumber.zeta(m, self.p * (m // self.q))

    @property
    def angle(self) -> Fraction:
        """Argument of ξ as a fraction of a full turn."""
        return Fraction(self.p, self.q)

    def conjugate(self) -> "RootOfUnity":
        return RootOfUnity(self.q - self.p, self.q)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


def primitive_roots(max_q: int) -> list[RootOfUnity]:
    """All ξ ≠ 1 with denominator ≤ max_q, sorted by angle."""
    out = {RootOfUnity(p, q) for q in range(2, max_q + 1) for p in range(1, q) if gcd(p, q) == 1}
    return sorted(out, key=lambda x: x.angle)


def eval_at(p: LaurentPolynomial, xi: RootOfUnity, modulus: int | None = None) -> CyclotomicNumber:
    """p(ξ) in Q(ζ_modulus) (modulus defaults to the order of ξ)."""
    m = xi.q if modulus is None else modulus
    if m % xi.q:
        raise ValueError(f"ξ = {xi} does not lie in Q(ζ_{m})")
    step = xi.p * (m // xi.q)
    table = _power_table(m)
    out = [0] * euler_phi(m)
    for i, c in enumerate(p.coefficients):
        if c:
            for k, v in enumerate(table[(step * (p.lowest_degree + i)) % m]):
                out[k] += c * v
    return CyclotomicNumber(m, out)


def _common_modulus(M: Sequence[Sequence[CyclotomicNumber]]) -> int | None:
    mods = {z.modulus for row in M for z in row}
    if len(mods) > 1:
        raise ValueError(f"mixed moduli {sorted(mods)}")
    return mods.pop() if mods else None


def _primitive_row(row: list[CyclotomicNumber]) -> list[CyclotomicNumber]:
    """Rescale a row by a positive rational to clear denominators and content."""
    den = 1
    for z in row:
        den = den * z.denom // gcd(den, z.denom)
    ints = [[c * (den // z.denom) for c in z.coeffs] for z in row]
    g = 0
    for v in ints:
        for c in v:
            g = gcd(g, c)
    if g == 0:
        return row
    return [CyclotomicNumber(z.modulus, [c // g for c in v]) for z, v in zip(row, ints)]


def cyclo_rank(M: Sequence[Sequence[CyclotomicNumber]]) -> int:
    """Rank over Q(ζ) by division-free elimination (rows rescaled to primitive content)."""
    _common_modulus(M)
    rows = [list(r) for r in M]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        for i in range(r + 1, len(rows)):
            m = rows[i][c]
            if not m.is_zero():
                rows[i] = _primitive_row([p * a - m * b for a, b in zip(rows[i], rows[r])])
        r += 1
        if r == len(rows):
            break
    return r


def cyclo_det(M: Sequence[Sequence[CyclotomicNumber]], modulus: int) -> CyclotomicNumber:
    """Determinant over Q(ζ_modulus) by Gaussian elimination with field division."""
    n = len(M)
    A = [list(r) for r in M]
    det = CyclotomicNumber.from_int(modulus, 1)
    for k in range(n):
        piv = next((i for i in range(k, n) if not A[i][k].is_zero()), None)
        if piv is None:
            return CyclotomicNumber.from_int(modulus, 0)
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            det = -det
        p = A[k][k]
        det = det * p
        inv = p.inverse()
        for i in range(k + 1, n):
            if not A[i][k].is_zero():
                f = A[i][k] * inv
                A[i] = [a - f * b for a, b in zip(A[i], A[k])]
    return det


class SignCertificationError(ArithmeticError):
    """Interval refinement hit the precision cap without separating the value from zero."""


_START_BITS = 64
_MAX_BITS = 4096


_local = threading.local()


def _interval_cosines(n: int, bits: int):
    """Enclosures of cos(2πk/n) at the given precision, cached per thread.

    Each thread owns its interval context, so precision changes never leak
    between concurrent callers.
    """
    if not hasattr(_local, "ctx"):
        _local.ctx = type(mpmath.iv)()
        _local.cache = {}
    ctx = _local.ctx
    key = (n, bits)
    if key not in _local.cache:
        ctx.prec = bits
        two_pi = 2 * ctx.pi
        _local.cache[key] = [ctx.cos(two_pi * k / n) for k in range(euler_phi(n))]
    ctx.prec = bits
    return ctx, _local.cache[key]


def certified_sign(z: CyclotomicNumber) -> int:
    """Sign (−1, 0 or 1) of a real cyclotomic number, certified by interval arithmetic.

    Realness is checked exactly first, then zero is decided in the field, so
    refinement only runs on values known to be nonzero.
    """
    if z.conjugate() != z:
        raise ValueError("certified_sign needs a real (conjugation-fixed) cyclotomic number")
    if z.is_zero():
        return 0
    n = z.modulus
    terms = [(k, c) for k, c in enumerate(z.coeffs) if c]
    # precision is counted beyond the size of the coefficients themselves
    magnitude = max(abs(c) for _, c in terms).bit_length()
    bits = _START_BITS
    while bits <= _MAX_BITS:
        ctx, cosines = _interval_cosines(n, bits + magnitude)
        total = ctx.mpf(0)
        for k, c in terms:
            total += c * cosines[k]
        if total.a > 0:
            return 1
        if total.b < 0:
            return -1
        bits *= 2
    raise SignCertificationError(f"sign of {z!r} not separated from zero at {_MAX_BITS} bits")

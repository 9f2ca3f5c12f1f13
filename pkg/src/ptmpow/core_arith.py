"""Exact integer foundations: binary-digit utilities, dense integer
polynomials, and the sqrt-substitution calculus used by the generating
function machinery.

No floating point: every operation is over Python big integers.
"""

from __future__ import annotations

import math
from fractions import Fraction


# ---------------------------------------------------------------------------
# binary-digit utilities


def s2(n: int) -> int:
    """Number of ones in the binary expansion of n >= 0."""
    if n < 0:
        raise ValueError("s2 is defined for nonnegative integers")
    return n.bit_count()


def nu2(n: int) -> int:
    """2-adic valuation of a nonzero integer: largest e with 2^e | n.

    nu2(0) is rejected; the valuation of zero lives only in valuation-report
    values, as the INFINITE sentinel.
    """
    if n == 0:
        raise ValueError("nu2(0) is undefined; use the INFINITE sentinel in reports")
    return (n & -n).bit_length() - 1


def nu2_factorial(n: int) -> int:
    """nu2(n!) = n - s2(n) (Legendre)."""
    return n - s2(n)


def binom(a: int, b: int) -> int:
    """Exact binomial coefficient; 0 when b > a or b < 0."""
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)


def nu2_binom(a: int, b: int) -> int:
    """nu2(C(a, b)) via Legendre's formula, without computing the binomial.

    Equals s2(b) + s2(a-b) - s2(a); rejected when the binomial is zero.
    """
    if b < 0 or b > a:
        raise ValueError("nu2_binom of a zero binomial")
    return s2(b) + s2(a - b) - s2(a)


class _InfiniteValuation:
    """Valuation of zero. A dedicated sentinel, never a large integer.

    Absorbs addition (3 + INFINITE == INFINITE) so recursive valuation
    formulas can propagate it.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("INFINITE-valuation")


INFINITE = _InfiniteValuation()


# ---------------------------------------------------------------------------
# dense integer polynomials

_KARATSUBA_CUTOFF = 64


def _mul_schoolbook(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _mul_lists(a, b):
    # Karatsuba above the cutoff; exactness is mandatory, speed secondary.
    n = min(len(a), len(b))
    if n <= _KARATSUBA_CUTOFF:
        return _mul_schoolbook(a, b)
    h = max(len(a), len(b)) // 2
    a0, a1 = a[:h], a[h:]
    b0, b1 = b[:h], b[h:]
    if not a1 or not b1:
        return _mul_schoolbook(a, b)
    z0 = _mul_lists(a0, b0)
    z2 = _mul_lists(a1, b1)
    s0 = [x + y for x, y in _zip_pad(a0, a1)]
    s1 = [x + y for x, y in _zip_pad(b0, b1)]
    z1 = _mul_lists(s0, s1)
    out = [0] * (len(a) + len(b) - 1)
    for i, v in enumerate(z0):
        out[i] += v
        out[i + h] -= v
    for i, v in enumerate(z1):
        out[i + h] += v
    for i, v in enumerate(z2):
        out[i + h] -= v
        out[i + 2 * h] += v
    return out


def _zip_pad(a, b):
    if len(a) < len(b):
        a = a + [0] * (len(b) - len(a))
    else:
        b = b + [0] * (len(a) - len(b))
    return zip(a, b)


class IntPoly:
    """Dense polynomial over Z; coeffs[i] is the coefficient of the i-th power.

    The trailing (highest-index) coefficient is nonzero unless the polynomial
    is zero, which is the empty tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def zero(cls) -> "IntPoly":
        return cls(())

    @classmethod
    def one(cls) -> "IntPoly":
        return cls((1,))

    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "IntPoly":
        return cls((0,) * exp + (coeff,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> int:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __eq__(self, other):
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        return IntPoly(x + y for x, y in _zip_pad(list(self.coeffs), list(other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(other * c for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return IntPoly.zero()
        return IntPoly(_mul_lists(list(self.coeffs), list(other.coeffs)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = IntPoly.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def shift(self, k: int) -> "IntPoly":
        """Multiply by x^k."""
        if self.is_zero():
            return self
        return IntPoly((0,) * k + self.coeffs)

    def evaluate(self, v):
        """Horner evaluation; v may be an int or a Fraction."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def mod(self, p: int) -> "IntPoly":
        """Reduce every coefficient to its canonical representative in {0..p-1}."""
        return IntPoly(c % p for c in self.coeffs)

    def divexact_scalar(self, d: int) -> "IntPoly":
        """Divide every coefficient by d; raises if any is not divisible."""
        out = []
        for c in self.coeffs:
            q, r = divmod(c, d)
            if r:
                raise ArithmeticError(f"coefficient {c} not divisible by {d}")
            out.append(q)
        return IntPoly(out)

    def divexact(self, divisor: "IntPoly") -> "IntPoly":
        """Exact polynomial division over Z; raises on a nonzero remainder."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dc = divisor.coeffs
        lead = dc[-1]
        qlen = len(rem) - len(dc) + 1
        if qlen <= 0:
            if any(rem):
                raise ArithmeticError("not divisible (degree too small)")
            return IntPoly.zero()
        quot = [0] * qlen
        for i in range(qlen - 1, -1, -1):
            q, r = divmod(rem[i + len(dc) - 1], lead)
            if r:
                raise ArithmeticError("not divisible (leading coefficient)")
            quot[i] = q
            if q:
                for j, d in enumerate(dc):
                    rem[i + j] -= q * d
        if any(rem):
            raise ArithmeticError("not divisible (nonzero remainder)")
        return IntPoly(quot)

    def content_nu2(self) -> int:
        """Largest e with 2^e dividing every coefficient (zero poly rejected)."""
        if self.is_zero():
            raise ValueError("content of the zero polynomial")
        return min(nu2(c) for c in self.coeffs if c != 0)

    def format(self, var: str = "x") -> str:
        """Render per the documented grammar: terms in increasing degree joined
        by " + ", each term `c`, `c*v`, or `c*v^k` with exact decimal c."""
        if self.is_zero():
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*{var}")
            else:
                terms.append(f"{c}*{var}^{i}")
        return " + ".join(terms)

    def __repr__(self):
        return f"IntPoly({self.format()})"


# ---------------------------------------------------------------------------
# sqrt-substitution calculus


class SqrtPoly:
    """Integer polynomial in the auxiliary variable y, with x = y^2.

    Two distinct ways in: `embed` sends P(x) to P(y^2) (so even_part(embed(P))
    is P again), while `subst_sqrt` renames the variable (P evaluated at
    sqrt(x), i.e. y-degree equals x-degree).
    """

    __slots__ = ("poly",)

    def __init__(self, poly: IntPoly):
        object.__setattr__(self, "poly", poly)

    def __setattr__(self, name, value):
        raise AttributeError("SqrtPoly is immutable")

    @classmethod
    def embed(cls, p: IntPoly) -> "SqrtPoly":
        out = [0] * (2 * len(p.coeffs))
        for i, c in enumerate(p.coeffs):
            out[2 * i] = c
        return cls(IntPoly(out))

    @classmethod
    def subst_sqrt(cls, p: IntPoly) -> "SqrtPoly":
        return cls(IntPoly(p.coeffs))

    @classmethod
    def from_coeffs(cls, coeffs) -> "SqrtPoly":
        return cls(IntPoly(coeffs))

    def sign_flip(self) -> "SqrtPoly":
        """y -> -y."""
        return SqrtPoly(IntPoly(-c if i & 1 else c for i, c in enumerate(self.poly.coeffs)))

    def __add__(self, other):
        return SqrtPoly(self.poly + other.poly)

    def __sub__(self, other):
        return SqrtPoly(self.poly - other.poly)

    def __mul__(self, other):
        if isinstance(other, int):
            return SqrtPoly(self.poly * other)
        return SqrtPoly(self.poly * other.poly)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return SqrtPoly(self.poly**e)

    def __eq__(self, other):
        return isinstance(other, SqrtPoly) and self.poly == other.poly

    def __hash__(self):
        return hash(("SqrtPoly", self.poly))

    def is_even(self) -> bool:
        return all(c == 0 for i, c in enumerate(self.poly.coeffs) if i & 1)

    def is_odd(self) -> bool:
        return all(c == 0 for i, c in enumerate(self.poly.coeffs) if not i & 1)

    def even_part(self) -> IntPoly:
        """P(y) = even(y^2) + y*odd_half(y^2); this is `even` as a poly in x."""
        return IntPoly(self.poly.coeffs[0::2])

    def odd_half(self) -> IntPoly:
        return IntPoly(self.poly.coeffs[1::2])

    def divexact_scalar(self, d: int) -> "SqrtPoly":
        return SqrtPoly(self.poly.divexact_scalar(d))

    def __repr__(self):
        return f"SqrtPoly({self.poly.format('y')})"


def sqrt_split(p: SqrtPoly) -> tuple[IntPoly, IntPoly]:
    """Split P(y) into (even, odd_half) with P(y) = even(y^2) + y*odd_half(y^2)."""
    return p.even_part(), p.odd_half()


# ---------------------------------------------------------------------------
# base-4 digits from {0,1,3,6}


def base4_digits_0136(n: int) -> list[int]:
    """The unique expansion n = sum 4^j a_j with a_j in {0,1,3,6} below the
    leading digit and the leading digit in {1,2,3,6}.

    Built least-significant digit first: the digit is forced by n mod 4
    (residue 2 maps to 6, residue 3 to 3), except that a remaining value of
    exactly 2 terminates as a leading 2.
    """
    if n < 1:
        raise ValueError("expansion defined for n >= 1")
    digits = []
    by_residue = (0, 1, 6, 3)
    while n:
        if n == 2:
            digits.append(2)
            break
        d = by_residue[n % 4]
        digits.append(d)
        n = (n - d) >> 2
    return digits


def base4_value_0136(digits) -> int:
    """Inverse of base4_digits_0136: sum 4^j a_j."""
    return sum(d << (2 * j) for j, d in enumerate(digits))


# ---------------------------------------------------------------------------
# packed exact convolution (nonnegative sequences only)


def convolve_nonneg_prefix(a: list[int], b: list[int], count: int) -> list[int]:
    """First `count` coefficients of the Cauchy product of two nonnegative
    integer sequences, computed exactly by big-integer packing.

    Each output coefficient is bounded by max(a)*max(b)*min(len(a),len(b)),
    so a block width above that bound makes the packed product carry-free.
    """
    if count <= 0:
        return []
    if not a or not b:
        return [0] * count
    if min(a) < 0 or min(b) < 0:
        raise ValueError("packing requires nonnegative sequences")
    bound = max(a) * max(b) * min(len(a), len(b)) + 1
    width = bound.bit_length() + 1
    pa = sum(v << (i * width) for i, v in enumerate(a))
    pb = sum(v << (i * width) for i, v in enumerate(b))
    prod = pa * pb
    mask = (1 << width) - 1
    return [(prod >> (i * width)) & mask for i in range(count)]


def rational(num: int, den: int) -> Fraction:
    """Exact rational in lowest terms."""
    return Fraction(num, den)

"""The polynomial family f_n(t) defined by F(x)^t = sum f_n(t) x^n.

Three equivalent recurrences are implemented and cross-validated:

  (log-derivative)  f_n(t) = (t/n) sum_{k<n} (1 - 2^(nu2(n-k)+1)) f_k(t)
  (alt 1)           f_n(t) = -sum_{k<n} C(t+n-k-1, n-k) f_k(t) + chi2(n) f_{n/2}(t)
  (alt 2)           f_n(t) = sum_{k<=n/2} C(n-2k-1-t, n-2k) f_k(t)

All polynomial arithmetic happens on the integer companion g_n = n! * f_n,
so no rational polynomial arithmetic is needed anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core_arith import IntPoly, nu2, rational
from .reports import CheckReport


def _weight(j: int) -> int:
    # 1 - 2^(nu2(j)+1); the x^j coefficient of log F times j
    return 1 - (1 << (nu2(j) + 1))


@dataclass(frozen=True)
class FactPoly:
    """num / fact_index! with num an integer polynomial.

    Deliberately not normalized: fact_index is pinned to n for f_n, so that
    num is exactly g_n.
    """

    num: IntPoly
    fact_index: int

    def coefficient(self, i: int) -> Fraction:
        return rational(self.num[i], math.factorial(self.fact_index))

    def coefficients(self) -> tuple[Fraction, ...]:
        d = math.factorial(self.fact_index)
        return tuple(rational(c, d) for c in self.num.coeffs)

    def evaluate(self, v) -> Fraction:
        return rational(1, math.factorial(self.fact_index)) * self.num.evaluate(v)

    def same_polynomial(self, other: "FactPoly") -> bool:
        a = self.num * math.factorial(other.fact_index)
        b = other.num * math.factorial(self.fact_index)
        return a == b

    def format(self, var: str = "t") -> str:
        return f"({self.num.format(var)})/{self.fact_index}!"


class FSeries:
    """Append-only cache of g_n = n! * f_n, built by the log-derivative
    recurrence in integer form:

        g_n(t) = t * sum_{k<n} (1 - 2^(nu2(n-k)+1)) * ((n-1)!/k!) * g_k(t)
    """

    def __init__(self):
        self._g: list[IntPoly] = [IntPoly.one()]

    def extend(self, n: int) -> None:
        g = self._g
        while len(g) <= n:
            m = len(g)
            acc = [0] * m
            ratio = 1  # (m-1)!/k!, updated as k decreases
            for k in range(m - 1, -1, -1):
                w = _weight(m - k) * ratio
                for i, gc in enumerate(g[k].coeffs):
                    acc[i] += w * gc
                if k:
                    ratio *= k
            g.append(IntPoly([0] + acc))

    def g(self, n: int) -> IntPoly:
        self.extend(n)
        return self._g[n]

    def f(self, n: int) -> FactPoly:
        return FactPoly(self.g(n), n)

    def f_value(self, n: int, t0: int) -> Fraction:
        return self.f(n).evaluate(t0)

    def value_prefix(self, t0: int, n_max: int) -> list[int]:
        """(f_n(t0))_{n<=n_max} for integer t0, by the same recurrence on
        values; each partial sum is exactly divisible by n."""
        vals = [1]
        for n in range(1, n_max + 1):
            s = sum(_weight(n - k) * vals[k] for k in range(n))
            q, r = divmod(t0 * s, n)
            if r:
                raise ArithmeticError(f"value recurrence not integral at n={n}")
            vals.append(q)
        return vals


_shared = FSeries()


def shared_fseries() -> FSeries:
    return _shared


def f_poly(n: int, series: FSeries | None = None) -> FactPoly:
    return (series or _shared).f(n)


def _rising_factorials(j_max: int) -> list[IntPoly]:
    # R_j(t) = t(t+1)...(t+j-1), with R_0 = 1; C(t+j-1, j) = R_j / j!
    out = [IntPoly.one()]
    for j in range(1, j_max + 1):
        out.append(out[-1] * IntPoly((j - 1, 1)))
    return out


def _falling_factorials(j_max: int) -> list[IntPoly]:
    # FF_j(t) = t(t-1)...(t-j+1); C(n-2k-1-t, j) = (-1)^j FF_j / j! when n-2k = j
    out = [IntPoly.one()]
    for j in range(1, j_max + 1):
        out.append(out[-1] * IntPoly((-(j - 1), 1)))
    return out


def g_prefix_alt1(n_max: int) -> list[IntPoly]:
    """g_0..g_{n_max} via the binomial recurrence (alt 1), recursing on its
    own values.  Assembled at the g level so every division is exact:

        g_n = -sum_k C(n,k) R_{n-k}(t) g_k + chi2(n) * (n!/(n/2)!) * g_{n/2}
    """
    rising = _rising_factorials(n_max)
    g = [IntPoly.one()]
    for n in range(1, n_max + 1):
        acc = IntPoly.zero()
        for k in range(n):
            acc = acc + math.comb(n, k) * (rising[n - k] * g[k])
        acc = -acc
        if n % 2 == 0:
            acc = acc + (math.factorial(n) // math.factorial(n // 2)) * g[n // 2]
        g.append(acc)
    return g


def g_prefix_alt2(n_max: int) -> list[IntPoly]:
    """g_0..g_{n_max} via the half-index recurrence (alt 2):

        g_n = (-1)^n sum_{k<=n/2} (n!/((n-2k)! k!)) FF_{n-2k}(t) g_k
    """
    falling = _falling_factorials(n_max)
    g = [IntPoly.one()]
    for n in range(1, n_max + 1):
        acc = IntPoly.zero()
        for k in range(n // 2 + 1):
            j = n - 2 * k
            w = math.factorial(n) // (math.factorial(j) * math.factorial(k))
            acc = acc + w * (falling[j] * g[k])
        if n % 2:
            acc = -acc
        g.append(acc)
    return g


def f_poly_alt1(n: int) -> FactPoly:
    return FactPoly(g_prefix_alt1(n)[n], n)


def f_poly_alt2(n: int) -> FactPoly:
    return FactPoly(g_prefix_alt2(n)[n], n)


class CoeffTable:
    """a(i, n): the t^i coefficient of f_n(t), built by the coefficient
    recurrence rather than read off g_n (the two routes cross-check):

        a(i+1, n) = (1/n) sum_{j=i}^{n-1} (1 - 2^(nu2(n-j)+1)) a(i, j)
    """

    def __init__(self):
        self._a: dict[tuple[int, int], Fraction] = {(0, 0): Fraction(1)}

    def a(self, i: int, n: int) -> Fraction:
        if i > n:
            raise ValueError("a(i, n) requires i <= n")
        key = (i, n)
        if key in self._a:
            return self._a[key]
        if i == 0:
            v = Fraction(0) if n > 0 else Fraction(1)
        else:
            s = sum(_weight(n - j) * self.a(i - 1, j) for j in range(i - 1, n))
            v = s / n
        self._a[key] = v
        return v


_shared_table = CoeffTable()


def coeff_a(i: int, n: int, table: CoeffTable | None = None) -> Fraction:
    return (table or _shared_table).a(i, n)


def _lagrange_int_poly(points: list[tuple[int, Fraction]]) -> IntPoly:
    # exact Lagrange interpolation; fails loudly if the result is not integral
    acc = [Fraction(0)] * len(points)
    for xi, yi in points:
        basis = [Fraction(1)]
        denom = Fraction(1)
        for xj, _ in points:
            if xj == xi:
                continue
            new = [Fraction(0)] * (len(basis) + 1)
            for d, c in enumerate(basis):
                new[d] -= c * xj
                new[d + 1] += c
            basis = new
            denom *= xi - xj
        scale = yi / denom
        for d, c in enumerate(basis):
            acc[d] += scale * c
    coeffs = []
    for c in acc:
        if c.denominator != 1:
            raise ArithmeticError(f"interpolated coefficient {c} is not an integer")
        coeffs.append(c.numerator)
    return IntPoly(coeffs)


def w_poly(k: int, table: CoeffTable | None = None, extra_checks: int = 20) -> IntPoly:
    """The degree-(k-1) integer polynomial W_k with

        a(n-k, n) = (-1)^(n+k) W_k(n) / ((2k)! (n-k-1)!)   for n >= k+1,

    recovered by exact interpolation at n = k+1 .. 2k and verified at
    `extra_checks` further sample points.
    """
    if k < 3:
        raise ValueError("w_poly is defined for k >= 3")
    table = table or _shared_table
    fac2k = math.factorial(2 * k)

    def sample(n: int) -> Fraction:
        sign = -1 if (n + k) % 2 else 1
        return sign * fac2k * math.factorial(n - k - 1) * table.a(n - k, n)

    pts = [(n, sample(n)) for n in range(k + 1, 2 * k + 1)]
    w = _lagrange_int_poly(pts)
    for n in range(2 * k + 1, 2 * k + 1 + extra_checks):
        if sample(n) != w.evaluate(n):
            raise ArithmeticError(f"W_{k} mismatch at extra sample n={n}")
    return w


def check_g_factorization(n: int, p: int, series: FSeries | None = None) -> CheckReport:
    """g_n(t) == g_{n mod p}(t) * (t - t^p)^(n//p)  (mod p), coefficientwise."""
    series = series or _shared
    lhs = series.g(n).mod(p)
    base = (IntPoly.x() - IntPoly.monomial(p)).mod(p)
    rhs = series.g(n % p).mod(p)
    for _ in range(n // p):
        rhs = (rhs * base).mod(p)
    if lhs == rhs:
        return CheckReport(f"g-factorization n={n} p={p}", True, checked=1)
    bad = next(i for i in range(max(len(lhs.coeffs), len(rhs.coeffs))) if lhs[i] != rhs[i])
    return CheckReport(
        f"g-factorization n={n} p={p}", False,
        witness={"n": n, "p": p, "coeff_index": bad, "lhs": lhs[bad], "rhs": rhs[bad]},
    )


def check_addition_formula(n: int, t1: int, t2: int, series: FSeries | None = None) -> CheckReport:
    """f_n(t1+t2) == sum_k f_k(t1) f_{n-k}(t2), evaluated over exact rationals."""
    series = series or _shared
    lhs = series.f_value(n, t1 + t2)
    rhs = sum(series.f_value(k, t1) * series.f_value(n - k, t2) for k in range(n + 1))
    ok = lhs == rhs
    w = {} if ok else {"n": n, "t1": t1, "t2": t2, "lhs": str(lhs), "rhs": str(rhs)}
    return CheckReport(f"addition-formula n={n}", ok, checked=1, witness=w)


# ---------------------------------------------------------------------------
# logarithm coefficients


def log_coeff(n: int) -> Fraction:
    """x^n coefficient of log F(x): (1 - 2^(nu2(n)+1)) / n."""
    if n < 1:
        raise ValueError("log coefficient defined for n >= 1")
    return rational(_weight(n), n)


def phi_base(k: int, n: int) -> int:
    """Largest e with k^e | n (n >= 1, k >= 2)."""
    e = 0
    while n % k == 0:
        n //= k
        e += 1
    return e


def log_coeff_base(k: int, n: int) -> Fraction:
    """x^n coefficient of log prod (1 - x^(k^j)), which is
    (1 - k^(phi_k(n)+1)) / ((k-1) n): the k-power divisors of n contribute
    the geometric sum (k^(phi+1)-1)/(k-1).  For k = 2 the k-1 factor
    vanishes and this reduces to log_coeff."""
    if n < 1 or k < 2:
        raise ValueError("need n >= 1 and base k >= 2")
    return rational(1 - k ** (phi_base(k, n) + 1), (k - 1) * n)


def log_series_oracle(n_max: int, base: int = 2) -> list[Fraction]:
    """Coefficients of log prod (1 - x^(base^j)) up to x^n_max, by formally
    expanding -sum_{j, i} x^(i * base^j) / i.  Independent of log_coeff."""
    acc = [Fraction(0)] * (n_max + 1)
    step = 1
    while step <= n_max:
        for i in range(1, n_max // step + 1):
            acc[i * step] -= Fraction(1, i)
        step *= base
    return acc


def product_series_oracle(t0: int, n_max: int) -> list[int]:
    """Coefficients of prod_{2^j <= n_max} (1 - x^(2^j))^t0 up to x^n_max,
    multiplied out term by term; the independent oracle for f_n(t0)."""
    series = [1] + [0] * n_max
    step = 1
    while step <= n_max:
        if t0 >= 0:
            factor = [0] * (n_max + 1)
            for i in range(0, n_max // step + 1):
                if i <= t0:
                    factor[i * step] = (-1) ** i * math.comb(t0, i)
        else:
            s = -t0
            factor = [0] * (n_max + 1)
            for i in range(0, n_max // step + 1):
                factor[i * step] = math.comb(i + s - 1, s - 1)
        series = _truncated_mul(series, factor, n_max)
        step *= 2
    return series


def _truncated_mul(a: list[int], b: list[int], n_max: int) -> list[int]:
    out = [0] * (n_max + 1)
    for i, ai in enumerate(a):
        if ai:
            for j in range(0, n_max + 1 - i):
                if b[j]:
                    out[i + j] += ai * b[j]
    return out

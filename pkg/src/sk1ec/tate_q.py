"""Finite-precision l-adic numbers and the Tate parameter q with j(q) = j."""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from .algebra import is_prime, valuation
from .errors import PrecisionError, ReductionTypeError

__all__ = ["LadicElement", "JQSeries", "j_series", "tate_parameter", "j_of_q"]


@dataclass(frozen=True)
class LadicElement:
    """l^valuation * unit, with the unit known modulo l^precision."""

    l: int
    valuation: int
    unit: int
    precision: int

    def __post_init__(self):
        if self.precision < 1:
            raise PrecisionError("an l-adic element needs at least one known unit digit")
        mod = self.l**self.precision
        object.__setattr__(self, "unit", self.unit % mod)
        if self.unit % self.l == 0:
            raise ValueError(f"unit part {self.unit} is divisible by {self.l}")

    @classmethod
    def from_rational(cls, x, l: int, precision: int) -> LadicElement:
        """Nonzero rational x with ``precision`` unit digits."""
        x = Fraction(x)
        if x == 0:
            raise ValueError("zero has no unit part")
        v = valuation(x, l)
        y = x / Fraction(l) ** v
        mod = l**precision
        return cls(l, v, y.numerator * pow(y.denominator, -1, mod) % mod, precision)

    @property
    def absolute_precision(self) -> int:
        return self.valuation + self.precision

    @property
    def unit_residue(self) -> int:
        return self.unit % self.l

    def digits(self) -> list[int]:
        """Base-l digits of the unit part, least significant first."""
        out, u = [], self.unit
        for _ in range(self.precision):
            u, d = divmod(u, self.l)
            out.append(d)
        return out

    def representative(self) -> Fraction:
        return Fraction(self.l) ** self.valuation * self.unit

    def _same_prime(self, other):
        if not isinstance(other, LadicElement):
            return NotImplemented
        if other.l != self.l:
            raise ValueError("elements of different l-adic fields")
        return other

    def __mul__(self, other):
        other = self._same_prime(other)
        if other is NotImplemented:
            return other
        k = min(self.precision, other.precision)
        return LadicElement(self.l, self.valuation + other.valuation, self.unit * other.unit, k)

    def inverse(self) -> LadicElement:
        mod = self.l**self.precision
        return LadicElement(self.l, -self.valuation, pow(self.unit, -1, mod), self.precision)

    def __truediv__(self, other):
        other = self._same_prime(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        mod = self.l**self.precision
        return LadicElement(self.l, self.valuation * e, pow(self.unit, e, mod), self.precision)

    def __add__(self, other):
        other = self._same_prime(other)
        if other is NotImplemented:
            return other
        A = min(self.absolute_precision, other.absolute_precision)
        s = self.representative() + other.representative()
        if s == 0 or valuation(s, self.l) >= A:
            raise PrecisionError("sum cancels to zero at the known precision")
        v = valuation(s, self.l)
        return LadicElement.from_rational(s, self.l, A - v)

    def __neg__(self):
        return LadicElement(self.l, self.valuation, -self.unit, self.precision)

    def __sub__(self, other):
        return self + (-other)

    def agrees_with(self, x) -> bool:
        """Whether the rational x equals this element at its absolute precision."""
        d = self.representative() - Fraction(x)
        return d == 0 or valuation(d, self.l) >= self.absolute_precision

    def __str__(self):
        terms = []
        for i, d in enumerate(self.digits()):
            if d:
                e = self.valuation + i
                terms.append(f"{d}*{self.l}^{e}" if d != 1 else f"{self.l}^{e}")
        terms.append(f"O({self.l}^{self.absolute_precision})")
        return " + ".join(terms)


# ---------------------------------------------------------------------------
# j(q) = 1/q + 744 + 196884 q + ...


@dataclass(frozen=True)
class JQSeries:
    """Coefficients c(-1), c(0), ..., c(N) of j as a Laurent series in q."""

    N: int
    coefficients: tuple

    def c(self, n: int) -> int:
        if not -1 <= n <= self.N:
            raise IndexError(f"c({n}) outside truncation N={self.N}")
        return self.coefficients[n + 1]


def _series_mul(a, b, n):
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for k, y in enumerate(b[: n - i]):
                out[i + k] += x * y
    return out


def _j_coefficients(count: int) -> list[int]:
    """First ``count`` coefficients of q * j(q)."""
    n = count
    e4 = [1] + [240 * sum(d**3 for d in range(1, k + 1) if k % d == 0) for k in range(1, n)]
    e4_cubed = _series_mul(_series_mul(e4, e4, n), e4, n)
    eta24 = [1] + [0] * (n - 1)
    for k in range(1, n):
        # multiply by (1 - q^k)^24 one factor at a time
        for _ in range(24):
            for i in range(n - 1, k - 1, -1):
                eta24[i] -= eta24[i - k]
    inv = [1] + [0] * (n - 1)
    for i in range(1, n):
        inv[i] = -sum(eta24[k] * inv[i - k] for k in range(1, i + 1))
    return _series_mul(e4_cubed, inv, n)


_j_cache: list[int] = []
_j_lock = threading.Lock()


def j_series(N: int) -> JQSeries:
    if N < 0:
        raise ValueError("N must be non-negative")
    need = N + 2
    if len(_j_cache) < need:
        with _j_lock:
            if len(_j_cache) < need:
                fresh = _j_coefficients(max(need, 2 * len(_j_cache)))
                _j_cache[:] = fresh
    return JQSeries(N, tuple(_j_cache[:need]))


# ---------------------------------------------------------------------------


def tate_parameter(j, l: int, abs_prec: int | None = None) -> LadicElement:
    """Tate parameter q in Q_l with j(q) = j, for v_l(j) < 0.

    ``abs_prec`` is the absolute precision of q; the default is v(q) + 2.
    """
    if not is_prime(l):
        raise ValueError(f"{l} is not prime")
    j = Fraction(j)
    if j == 0 or valuation(j, l) >= 0:
        raise ReductionTypeError(f"v_{l}(j) >= 0: no Tate parameter at a non-multiplicative place")
    m = -valuation(j, l)
    if abs_prec is None:
        abs_prec = m + 2
    if abs_prec <= m:
        raise PrecisionError(f"abs_prec={abs_prec} must exceed v(q)={m}")
    k = abs_prec - m
    mod = l**k
    series = j_series(math.ceil(abs_prec / m) + 1)
    ju = j * Fraction(l) ** m
    J = ju.numerator * pow(ju.denominator, -1, mod) % mod
    lm = l**m
    u = pow(J, -1, mod)
    for _ in range(abs_prec):
        q = lm * u
        tail, qn = 0, 1
        for n in range(0, series.N + 1):
            tail += series.c(n) * qn
            qn = qn * q % (mod * lm)
        new = pow((J - lm * tail) % mod, -1, mod)
        if new == u:
            return LadicElement(l, m, u, k)
        u = new
    raise ArithmeticError(f"Tate parameter iteration did not stabilise at l={l}")


def j_of_q(q: LadicElement) -> LadicElement:
    """Evaluate the truncated j series at q, tracking precision."""
    m = q.valuation
    if m <= 0:
        raise ValueError("q must have positive valuation")
    A = q.absolute_precision
    series = j_series(math.ceil(A / m) + 1)
    total = q.inverse()
    exact = A + m * series.N + 1
    for n in range(0, series.N + 1):
        c = series.c(n)
        term = LadicElement.from_rational(c, q.l, exact) * (q**n if n else LadicElement(q.l, 0, 1, exact))
        total = total + term
    return total

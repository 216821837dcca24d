"""Weierstrass models over Q: invariants, minimal models, points, torsion."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Optional

from sympy import factorint

from .algebra import PolyQ, rational_factors, rational_sqrt, valuation
from .errors import ReductionTypeError, SingularCurveError

__all__ = [
    "WeierstrassModel",
    "Invariants",
    "CurvePoint",
    "invariants",
    "minimal_model",
    "is_minimal_at",
    "add_points",
    "negate_point",
    "multiply_point",
    "on_curve",
    "enumerate_points_fl",
    "point_count_fl",
    "division_polynomial",
    "two_division_cubic",
    "rational_p_torsion",
    "rational_p_torsion_points",
]

POINT_COUNT_CAP = 10**6
SUPPORTED_P = (2, 3, 5, 7)


@dataclass(frozen=True)
class Invariants:
    b2: Fraction
    b4: Fraction
    b6: Fraction
    b8: Fraction
    c4: Fraction
    c6: Fraction
    disc: Fraction
    j: Fraction


def _invariants_of(a1, a2, a3, a4, a6) -> Invariants:
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -b2**3 + 36 * b2 * b4 - 216 * b6
    disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    if disc == 0:
        raise SingularCurveError(f"singular model [{a1},{a2},{a3},{a4},{a6}]: discriminant is zero")
    return Invariants(b2, b4, b6, b8, c4, c6, disc, c4**3 / disc)


@dataclass(frozen=True)
class WeierstrassModel:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q."""

    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        # raises on a singular model
        self.invariants

    @classmethod
    def from_ainvs(cls, ainvs) -> WeierstrassModel:
        if len(ainvs) != 5:
            raise ValueError(f"expected five a-invariants, got {len(ainvs)}")
        return cls(*ainvs)

    @property
    def ainvs(self) -> tuple:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @cached_property
    def invariants(self) -> Invariants:
        return _invariants_of(*self.ainvs)

    @property
    def disc(self) -> Fraction:
        return self.invariants.disc

    @property
    def j(self) -> Fraction:
        return self.invariants.j

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.ainvs)

    def transform(self, u, r, s, t) -> WeierstrassModel:
        """Model for the substitution x = u^2 x' + r, y = u^3 y' + s u^2 x' + t."""
        u, r, s, t = map(Fraction, (u, r, s, t))
        if u == 0:
            raise ValueError("u must be nonzero")
        a1, a2, a3, a4, a6 = self.ainvs
        return WeierstrassModel(
            (a1 + 2 * s) / u,
            (a2 - s * a1 + 3 * r - s * s) / u**2,
            (a3 + r * a1 + 2 * t) / u**3,
            (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u**4,
            (a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1) / u**6,
        )

    def __str__(self):
        return "[" + ",".join(str(a) for a in self.ainvs) + "]"


def invariants(W: WeierstrassModel) -> Invariants:
    return W.invariants


# ---------------------------------------------------------------------------
# minimal models


def _v(x: int, l: int) -> float:
    return math.inf if x == 0 else valuation(x, l)


def _kraus_ok(c4: int, c6: int, l: int) -> bool:
    """Local condition for (c4, c6) to come from a model integral at l."""
    if l == 3:
        return _v(c6, 3) != 2
    if l == 2:
        if c6 % 4 == 3:
            return True
        return _v(c4, 2) >= 4 and c6 % 32 in (0, 8)
    return True


def _ainvs_from_c4c6(c4: int, c6: int) -> tuple:
    b2 = (-c6) % 12
    if b2 > 6:
        b2 -= 12
    b4, r4 = divmod(b2 * b2 - c4, 24)
    b6, r6 = divmod(-b2**3 + 36 * b2 * b4 - c6, 216)
    if r4 or r6:
        raise ArithmeticError(f"no integral model with c4={c4}, c6={c6}")
    a1, a3 = b2 % 2, b6 % 2
    return (a1, (b2 - a1) // 4, a3, (b4 - a1 * a3) // 2, (b6 - a3) // 4)


def _reduced(W: WeierstrassModel):
    """Unimodular change making a1, a3 in {0,1} and a2 in {-1,0,1}."""
    a1, a2, a3 = (int(a) for a in W.ainvs[:3])
    s = (a1 % 2 - a1) // 2
    a2s = a2 - s * a1 - s * s
    target = ((a2s + 1) % 3) - 1
    r = (target - a2s) // 3
    a3s = a3 + r * a1
    t = (a3s % 2 - a3s) // 2
    return W.transform(1, r, s, t), (1, r, s, t)


def _compose(first, second):
    """Transformation equal to applying ``first`` then ``second``."""
    u1, r1, s1, t1 = map(Fraction, first)
    u2, r2, s2, t2 = map(Fraction, second)
    return (
        u1 * u2,
        r1 + u1 * u1 * r2,
        s1 + u1 * s2,
        t1 + u1 * u1 * s1 * r2 + u1**3 * t2,
    )


def is_minimal_at(W: WeierstrassModel, l: int) -> bool:
    """Whether an l-integral model is minimal at l."""
    if any(a.denominator % l == 0 for a in W.ainvs):
        return False
    inv = W.invariants
    c4, c6, disc = int(inv.c4), int(inv.c6), int(inv.disc)
    if _v(disc, l) < 12 or _v(c4, l) < 4 or _v(c6, l) < 6:
        return True
    return not _kraus_ok(c4 // l**4, c6 // l**6, l)


@lru_cache(maxsize=2048)
def minimal_model(W: WeierstrassModel):
    """Global minimal model in reduced form.

    Returns ``(W_min, (u, r, s, t))`` with ``W.transform(u, r, s, t) == W_min``.
    """
    den = 1
    for a in W.ainvs:
        den = den * a.denominator // math.gcd(den, a.denominator)
    step = (Fraction(1, den), 0, 0, 0)
    W1 = W.transform(*step)
    inv = W1.invariants
    c4, c6, disc = int(inv.c4), int(inv.c6), int(inv.disc)
    g = math.gcd(c4, c6)
    u = 1
    for l in factorint(abs(g)) if g else ():
        e = min(valuation(x, l) // k for x, k in ((c4, 4), (c6, 6), (disc, 12)) if x)
        while e > 0 and not _kraus_ok(c4 // l ** (4 * e), c6 // l ** (6 * e), l):
            e -= 1
        u *= l**e
    c4m, c6m = c4 // u**4, c6 // u**6
    Wk = WeierstrassModel(*_ainvs_from_c4c6(c4m, c6m))
    # the Kraus model shares c4, c6 with W1 scaled by u; find the isomorphism
    W2 = W1.transform(u, 0, 0, 0)
    iso = _isomorphism(W2, Wk)
    Wmin, red = _reduced(Wk)
    total = _compose(_compose(_compose(step, (u, 0, 0, 0)), iso), red)
    assert W.transform(*total) == Wmin
    return Wmin, total


def _isomorphism(A: WeierstrassModel, B: WeierstrassModel):
    """(1, r, s, t) or (-1, r, s, t) taking A to B when c4, c6 agree."""
    ia, ib = A.invariants, B.invariants
    if (ia.c4, ia.c6) != (ib.c4, ib.c6):
        raise ArithmeticError("models have different c4, c6")
    for u in (1, -1):
        s = (u * B.a1 - A.a1) / 2
        r = (u * u * B.a2 - A.a2 + s * A.a1 + s * s) / 3
        t = (u**3 * B.a3 - A.a3 - r * A.a1) / 2
        if A.transform(u, r, s, t) == B:
            return (u, r, s, t)
    raise ArithmeticError("no isomorphism found between models with equal c4, c6")


# ---------------------------------------------------------------------------
# points


@dataclass(frozen=True)
class CurvePoint:
    """A point over Q (``l`` is None) or over F_l; ``x is None`` means infinity."""

    x: Optional[object] = None
    y: Optional[object] = None
    l: Optional[int] = None

    @classmethod
    def infinity(cls, l: Optional[int] = None) -> CurvePoint:
        return cls(None, None, l)

    @property
    def is_infinity(self) -> bool:
        return self.x is None


def _coeffs_in(W: WeierstrassModel, l):
    if l is None:
        return W.ainvs
    out = []
    for a in W.ainvs:
        if a.denominator % l == 0:
            raise ValueError(f"model is not {l}-integral")
        out.append(a.numerator * pow(a.denominator, -1, l) % l)
    return tuple(out)


def _div(a, b, l):
    if l is None:
        return Fraction(a) / b
    return a * pow(b, -1, l) % l


def on_curve(W: WeierstrassModel, P: CurvePoint) -> bool:
    if P.is_infinity:
        return True
    a1, a2, a3, a4, a6 = _coeffs_in(W, P.l)
    x, y = P.x, P.y
    lhs = y * y + a1 * x * y + a3 * y - (x**3 + a2 * x * x + a4 * x + a6)
    return (lhs % P.l == 0) if P.l is not None else lhs == 0


def negate_point(W: WeierstrassModel, P: CurvePoint) -> CurvePoint:
    if P.is_infinity:
        return P
    a1, _, a3, _, _ = _coeffs_in(W, P.l)
    y = -P.y - a1 * P.x - a3
    return CurvePoint(P.x, y % P.l if P.l is not None else y, P.l)


def add_points(W: WeierstrassModel, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    if P.l != Q.l:
        raise ValueError("points over different fields")
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    l = P.l
    a1, a2, a3, a4, a6 = _coeffs_in(W, l)
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y

    def zero(v):
        return v % l == 0 if l is not None else v == 0

    if zero(x1 - x2):
        if zero(y1 + y2 + a1 * x2 + a3):
            return CurvePoint.infinity(l)
        den = 2 * y1 + a1 * x1 + a3
        lam = _div(3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1, den, l)
        nu = _div(-(x1**3) + a4 * x1 + 2 * a6 - a3 * y1, den, l)
    else:
        lam = _div(y2 - y1, x2 - x1, l)
        nu = _div(y1 * x2 - y2 * x1, x2 - x1, l)
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    if l is not None:
        x3, y3 = x3 % l, y3 % l
    return CurvePoint(x3, y3, l)


def multiply_point(W: WeierstrassModel, n: int, P: CurvePoint) -> CurvePoint:
    if n < 0:
        return multiply_point(W, -n, negate_point(W, P))
    result = CurvePoint.infinity(P.l)
    addend = P
    while n:
        if n & 1:
            result = add_points(W, result, addend)
        n >>= 1
        if n:
            addend = add_points(W, addend, addend)
    return result


# ---------------------------------------------------------------------------
# counting over F_l


def _good_model_at(W: WeierstrassModel, l: int) -> WeierstrassModel:
    if all(a.denominator % l for a in W.ainvs) and valuation(W.disc, l) == 0:
        return W
    Wm = minimal_model(W)[0]
    if Wm.disc.numerator % l == 0:
        raise ReductionTypeError(f"bad reduction at {l}")
    return Wm


def enumerate_points_fl(W: WeierstrassModel, l: int) -> list[CurvePoint]:
    """Every point of the reduction at a good prime l, by brute force."""
    Wl = _good_model_at(W, l)
    a1, a2, a3, a4, a6 = _coeffs_in(Wl, l)
    pts = [CurvePoint.infinity(l)]
    for x in range(l):
        rhs = (x**3 + a2 * x * x + a4 * x + a6) % l
        lin = (a1 * x + a3) % l
        for y in range(l):
            if (y * y + lin * y - rhs) % l == 0:
                pts.append(CurvePoint(x, y, l))
    return pts


@lru_cache(maxsize=65536)
def point_count_fl(W: WeierstrassModel, l: int) -> tuple[int, int]:
    """``(#E(F_l), a_l)`` at a prime of good reduction."""
    if l > POINT_COUNT_CAP:
        raise ValueError(f"point counting is capped at l <= {POINT_COUNT_CAP}")
    Wl = _good_model_at(W, l)
    if l == 2:
        n = len(enumerate_points_fl(Wl, 2))
        return n, 3 - n
    inv = Wl.invariants
    b2, b4, b6 = (int(c.numerator * pow(c.denominator, -1, l)) % l for c in (inv.b2, inv.b4, inv.b6))
    # (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    is_sq = bytearray(l)
    for y in range(1, (l + 1) // 2):
        is_sq[y * y % l] = 1
    n = 1
    for x in range(l):
        d = (((4 * x + b2) * x + 2 * b4) * x + b6) % l
        n += 1 if d == 0 else (2 if is_sq[d] else 0)
    return n, l + 1 - n


# ---------------------------------------------------------------------------
# division polynomials and torsion


def two_division_cubic(W: WeierstrassModel) -> PolyQ:
    inv = W.invariants
    return PolyQ([inv.b6, 2 * inv.b4, inv.b2, 4])


@lru_cache(maxsize=1024)
def division_polynomial(W: WeierstrassModel, p: int) -> PolyQ:
    """x-only division polynomial: the 2-division cubic for p=2, psi_p for odd p."""
    if p not in SUPPORTED_P:
        raise ValueError(f"division polynomial only supported for p in {SUPPORTED_P}")
    F = two_division_cubic(W)
    if p == 2:
        return F
    b2, b4, b6, b8 = (W.invariants.b2, W.invariants.b4, W.invariants.b6, W.invariants.b8)
    # f_n = psi_n for odd n, psi_n / psi_2 for even n
    f = {
        0: PolyQ(),
        1: PolyQ([1]),
        2: PolyQ([1]),
        3: PolyQ([b8, 3 * b6, 3 * b4, b2, 3]),
        4: PolyQ([b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, 10 * b8, 10 * b6, 5 * b4, b2, 2]),
    }
    F2 = F * F
    for n in range(5, p + 1):
        m = n // 2
        if n % 2:
            if m % 2 == 0:
                f[n] = F2 * f[m + 2] * f[m] ** 3 - f[m - 1] * f[m + 1] ** 3
            else:
                f[n] = f[m + 2] * f[m] ** 3 - F2 * f[m - 1] * f[m + 1] ** 3
        else:
            f[n] = f[m] * (f[m + 2] * f[m - 1] ** 2 - f[m - 2] * f[m + 1] ** 2)
    return f[p]


def _points_above_x(W: WeierstrassModel, x0: Fraction) -> list[CurvePoint]:
    a1, _, a3, _, _ = W.ainvs
    disc = two_division_cubic(W)(x0)
    root = rational_sqrt(disc)
    if root is None:
        return []
    ys = {(-(a1 * x0 + a3) + root) / 2, (-(a1 * x0 + a3) - root) / 2}
    return [CurvePoint(x0, y) for y in sorted(ys)]


def rational_p_torsion_points(W: WeierstrassModel, p: int) -> list[CurvePoint]:
    """Nonzero rational points of E[p]."""
    psi = division_polynomial(W, p)
    pts = []
    for h in rational_factors(psi, 1):
        pts.extend(_points_above_x(W, -h.coeffs[0]))
    return pts


@lru_cache(maxsize=4096)
def rational_p_torsion(W: WeierstrassModel, p: int) -> int:
    """Dimension of E(Q)[p] over F_p."""
    n = len(rational_p_torsion_points(W, p)) + 1
    dim = 0
    while n > 1:
        if n % p:
            raise ArithmeticError(f"{n} rational p-torsion points is not a power of {p}")
        n //= p
        dim += 1
    return dim

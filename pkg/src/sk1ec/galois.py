"""Rational p-isogenies, Velu quotients, and the mod-p coinvariant dimension."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from sympy import primerange

from .algebra import PolyQ, rational_factors, rational_sqrt
from .curves import (
    SUPPORTED_P,
    WeierstrassModel,
    division_polynomial,
    minimal_model,
    point_count_fl,
    rational_p_torsion,
    rational_p_torsion_points,
    two_division_cubic,
)
from .reduction import bad_primes, is_semistable

__all__ = [
    "Tag",
    "IsogenyKernel",
    "ModPClassification",
    "Coinvariants",
    "ScreenResult",
    "duplication_closed",
    "p_isogeny_kernels",
    "velu_quotient",
    "isogeny_x_map",
    "classify",
    "coinvariant_dim",
    "coinvariants",
    "frobenius_screen",
]


class Tag(enum.Enum):
    NO_ISOGENY = "NoIsogeny"
    SC = "SC"
    BPRIME = "Bprime"
    B = "B"
    FULL_TORSION = "FullTorsion"


@dataclass(frozen=True)
class IsogenyKernel:
    p: int
    kernel_polynomial: PolyQ
    verified: bool = True


@dataclass(frozen=True)
class ModPClassification:
    p: int
    tag: Tag
    torsion_dim: int
    kernels: tuple = ()
    quotients: tuple = ()
    quotient_torsion: tuple = ()


@dataclass(frozen=True)
class Coinvariants:
    dim: int
    classification: ModPClassification
    caveat: Optional[str] = None


@dataclass(frozen=True)
class ScreenResult:
    passed: bool
    witness: Optional[int] = None
    checked: tuple = field(default=(), compare=False)

    def __bool__(self):
        return self.passed


# ---------------------------------------------------------------------------
# kernels


def _duplication(W: WeierstrassModel) -> tuple[PolyQ, PolyQ]:
    """x([2]P) = N(x) / D(x)."""
    inv = W.invariants
    N = PolyQ([-inv.b8, -2 * inv.b6, -inv.b4, 0, 1])
    return N, two_division_cubic(W)


def duplication_closed(W: WeierstrassModel, h: PolyQ) -> bool:
    """Whether x -> x([2]P) maps the roots of h into the roots of h."""
    N, D = _duplication(W)
    N, D = N % h, D % h
    d = h.degree
    acc = PolyQ()
    Npow = PolyQ([1])
    Dpows = [PolyQ([1])]
    for _ in range(d):
        Dpows.append((Dpows[-1] * D) % h)
    for i, c in enumerate(h.coeffs):
        acc = (acc + c * Npow * Dpows[d - i]) % h
        Npow = (Npow * N) % h
    return acc.is_zero()


@lru_cache(maxsize=2048)
def p_isogeny_kernels(W: WeierstrassModel, p: int) -> tuple[IsogenyKernel, ...]:
    """Kernels of rational p-isogenies; for p = 2, the linear factors of the 2-division cubic."""
    if p not in SUPPORTED_P:
        raise ValueError(f"p must be one of {SUPPORTED_P}")
    psi = division_polynomial(W, p)
    if p == 2:
        return tuple(IsogenyKernel(2, h) for h in rational_factors(psi, 1))
    d = (p - 1) // 2
    return tuple(IsogenyKernel(p, h) for h in rational_factors(psi, d) if duplication_closed(W, h))


def _power_sums(h: PolyQ, upto: int) -> list[Fraction]:
    """Sums of k-th powers of the roots of monic h, k = 0..upto."""
    d = h.degree
    c = h.coeffs
    s = [Fraction(d)]
    for k in range(1, upto + 1):
        acc = sum((c[d - i] * s[k - i] for i in range(1, min(k - 1, d) + 1)), Fraction(0))
        if k <= d:
            acc += k * c[d - k]
        s.append(-acc)
    return s


def _velu_tw(W: WeierstrassModel, kernel: IsogenyKernel) -> tuple[Fraction, Fraction]:
    inv = W.invariants
    h = kernel.kernel_polynomial.monic()
    if kernel.p == 2:
        x0 = -h.coeffs[0]
        a1, a2, a3, a4, _ = W.ainvs
        y0 = -(a1 * x0 + a3) / 2
        t = 3 * x0 * x0 + 2 * a2 * x0 + a4 - a1 * y0
        return t, x0 * t
    s = _power_sums(h, 3)
    t = 6 * s[2] + inv.b2 * s[1] + inv.b4 * s[0]
    w = 10 * s[3] + 2 * inv.b2 * s[2] + 3 * inv.b4 * s[1] + inv.b6 * s[0]
    return t, w


def velu_quotient(W: WeierstrassModel, kernel: IsogenyKernel) -> WeierstrassModel:
    if not kernel.verified:
        raise ValueError("kernel has not passed the closure test")
    t, w = _velu_tw(W, kernel)
    a1, a2, a3, a4, a6 = W.ainvs
    b2 = W.invariants.b2
    return WeierstrassModel(a1, a2, a3, a4 - 5 * t, a6 - b2 * t - 7 * w)


def isogeny_x_map(W: WeierstrassModel, kernel: IsogenyKernel) -> tuple[PolyQ, PolyQ]:
    """(N, D) with x(phi(P)) = N(x(P)) / D(x(P)) for phi: W -> velu_quotient(W, kernel)."""
    h = kernel.kernel_polynomial.monic()
    x = PolyQ.x()
    if kernel.p == 2:
        t, _ = _velu_tw(W, kernel)
        return x * h + PolyQ([t]), h
    inv = W.invariants
    tpoly = PolyQ([inv.b4, inv.b2, 6])
    hp = h.derivative()
    Rt = (tpoly * hp) % h
    Ru = (two_division_cubic(W) * hp) % h
    return x * h * h + Rt * h - Ru.derivative() * h + Ru * hp, h * h


# ---------------------------------------------------------------------------
# classification


@lru_cache(maxsize=2048)
def classify(W: WeierstrassModel, p: int) -> ModPClassification:
    torsion = rational_p_torsion(W, p)
    if p == 2:
        kernels = p_isogeny_kernels(W, 2)
        if torsion == 2:
            tag = Tag.FULL_TORSION
        elif torsion == 1:
            tag = Tag.SC if rational_sqrt(W.disc) is not None else Tag.BPRIME
        else:
            tag = Tag.NO_ISOGENY
        return ModPClassification(p, tag, torsion, kernels)
    kernels = p_isogeny_kernels(W, p)
    quotients = tuple(velu_quotient(W, k) for k in kernels)
    qtors = tuple(rational_p_torsion(Q, p) for Q in quotients)
    if torsion >= 1:
        tag = Tag.SC if len(kernels) >= 2 else Tag.BPRIME
    elif any(qtors):
        tag = Tag.B
    else:
        tag = Tag.NO_ISOGENY
    return ModPClassification(p, tag, torsion, kernels, quotients, qtors)


def _dual_kernel_rational(W: WeierstrassModel, kernel: IsogenyKernel) -> bool:
    """Whether the kernel of the dual of W -> W/C consists of rational points."""
    p = kernel.p
    E2 = velu_quotient(W, kernel)
    pts = rational_p_torsion_points(E2, p)
    if not pts:
        return False
    N, D = isogeny_x_map(W, kernel)
    rest = division_polynomial(W, p).exact_div(kernel.kernel_polynomial)
    for x0 in {P.x for P in pts}:
        if (N - x0 * D).gcd(rest).degree >= 1:
            return True
    return False


@lru_cache(maxsize=2048)
def coinvariants(W: WeierstrassModel, p: int) -> Coinvariants:
    cls = classify(W, p)
    if p == 2:
        # trivial image: 2; one rational point (image of order 2): 1; else 0
        return Coinvariants(cls.torsion_dim, cls)
    semistable, _ = is_semistable(W)
    if semistable:
        return Coinvariants(1 if cls.tag in (Tag.SC, Tag.B) else 0, cls)
    dim = 1 if any(_dual_kernel_rational(W, k) for k in cls.kernels) else 0
    caveat = None
    if cls.kernels:
        caveat = "not semi-stable: decided by the dual-kernel rationality test"
    return Coinvariants(dim, cls, caveat)


def coinvariant_dim(W: WeierstrassModel, p: int) -> int:
    return coinvariants(W, p).dim


def frobenius_screen(W: WeierstrassModel, p: int, B: int = 100) -> ScreenResult:
    """Necessary condition a_l = l + 1 mod p at good l <= B, l != p.

    A failing result carries the witness prime and proves the coinvariants vanish.
    """
    if B < 5:
        raise ValueError("screen bound must be at least 5")
    Wm = minimal_model(W)[0]
    bad = set(bad_primes(Wm))
    checked = []
    for l in primerange(2, B + 1):
        if l == p or l in bad:
            continue
        _, a = point_count_fl(Wm, l)
        checked.append(l)
        if (a - l - 1) % p:
            return ScreenResult(False, l, tuple(checked))
    return ScreenResult(True, None, tuple(checked))

"""Local dimensions dim V(E_v)/p at finite and real places, and the symbols behind them."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Union

from sympy.ntheory import discrete_log, primitive_root

from .algebra import ResidueUnit, is_pth_power_fl, padic_root_count, valuation
from .curves import WeierstrassModel, two_division_cubic
from .errors import PrecisionError, ReductionTypeError
from .reduction import GoodType, Reduction, good_type_at_p, reduction_type
from .tate_q import LadicElement, tate_parameter

__all__ = [
    "REAL",
    "DimBound",
    "LocalVReport",
    "tame_symbol",
    "hilbert_symbol_2",
    "dim_v_split_mult",
    "dim_v_nonsplit_mult",
    "ker_dim_good_at_p",
    "dim_v_real",
    "dim_v_additive",
    "dim_v_place",
    "discrete_log_witness",
]

REAL = "R"
Place = Union[int, str]
DLOG_CAP = 10**6


@dataclass(frozen=True)
class DimBound:
    lo: int
    hi: int

    def __post_init__(self):
        if not 0 <= self.lo <= self.hi:
            raise ValueError(f"invalid dimension interval [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, n: int) -> DimBound:
        return cls(n, n)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def __add__(self, other: DimBound) -> DimBound:
        return DimBound(self.lo + other.lo, self.hi + other.hi)

    def __contains__(self, n: int) -> bool:
        return self.lo <= n <= self.hi

    def __iter__(self):
        return iter(range(self.lo, self.hi + 1))

    def __str__(self):
        return str(self.lo) if self.is_exact else f"[{self.lo},{self.hi}]"


@dataclass(frozen=True)
class LocalVReport:
    place: Place
    p: int
    dim: DimBound
    method: str
    reduction: str
    witnesses: dict = field(default_factory=dict, compare=False)


# ---------------------------------------------------------------------------
# symbols


def tame_symbol(a: LadicElement, b: LadicElement) -> ResidueUnit:
    """(-1)^(v(a)v(b)) * b^v(a) / a^v(b) reduced mod l."""
    for name, x in (("a", a), ("b", b)):
        if x.precision < 1:
            raise PrecisionError(f"operand {name} has no known unit digit")
    if a.l != b.l:
        raise ValueError("operands live over different primes")
    l = a.l
    alpha, beta = a.valuation, b.valuation
    sign = -1 if (alpha * beta) % 2 else 1
    ua, ub = ResidueUnit(l, a.unit_residue), ResidueUnit(l, b.unit_residue)
    return ResidueUnit(l, sign % l) * ub**alpha / ua**beta


def _eps(u: int) -> int:
    return ((u - 1) // 2) % 2


def _omega(u: int) -> int:
    return ((u * u - 1) // 8) % 2


def hilbert_symbol_2(a: LadicElement, b: LadicElement) -> int:
    """Quadratic Hilbert symbol over Q_2, as +1 or -1."""
    for name, x in (("a", a), ("b", b)):
        if x.l != 2:
            raise ValueError(f"operand {name} is not 2-adic")
        if x.precision < 3:
            raise PrecisionError(f"operand {name} needs its unit known mod 8")
    u, v = a.unit % 8, b.unit % 8
    e = _eps(u) * _eps(v) + a.valuation * _omega(v) + b.valuation * _omega(u)
    return -1 if e % 2 else 1


def discrete_log_witness(u: int, l: int) -> tuple[int, int]:
    """(generator g, n) with g^n = u mod l, using the least primitive root."""
    if l > DLOG_CAP:
        raise ValueError(f"discrete log witness capped at l <= {DLOG_CAP}")
    g = _generator(l)
    return g, int(discrete_log(l, u % l, g))


@lru_cache(maxsize=1024)
def _generator(l: int) -> int:
    return int(primitive_root(l))


# ---------------------------------------------------------------------------
# branches


def _split_branch(l: int, p: int, q: LadicElement) -> tuple[DimBound, str, dict]:
    m = q.valuation
    if l == p:
        if p > 2:
            return DimBound.exact(0), "split-mult:residue-char-equals-p", {}
        if q.precision < 3:
            raise PrecisionError("2-adic branch needs the unit of q known mod 8")
        gens = {g: LadicElement.from_rational(g, 2, 3) for g in (-1, 5, 2)}
        symbols = {g: hilbert_symbol_2(q, x) for g, x in gens.items()}
        trivial = all(s == 1 for s in symbols.values())
        wit = {"m": m, "unit": q.unit % 8, "hilbert": symbols}
        return DimBound.exact(1 if trivial else 0), "split-mult:hilbert-symbol-2-adic", wit
    wit = {"m": m, "unit": q.unit_residue}
    if (l - 1) % p:
        return DimBound.exact(0), "split-mult:no-pth-roots-of-unity", wit
    wit["symbol_q_l"] = int(tame_symbol(q, LadicElement(l, 1, 1, 1)))
    if l <= DLOG_CAP:
        wit["generator"], wit["dlog"] = discrete_log_witness(q.unit_residue, l)
    if m % p:
        return DimBound.exact(0), "split-mult:valuation-not-divisible", wit
    power = is_pth_power_fl(ResidueUnit(l, q.unit_residue), p)
    wit["pth_power"] = power
    return DimBound.exact(1 if power else 0), "split-mult:tame-symbol", wit


def dim_v_split_mult(l: int, p: int, q: LadicElement) -> DimBound:
    return _split_branch(l, p, q)[0]


def _nonsplit_branch(l: int, p: int, q: LadicElement) -> tuple[DimBound, str, dict]:
    if p == 2:
        return DimBound(0, 2), "nonsplit-mult:generic-bound", {}
    if l == p:
        return DimBound.exact(0), "nonsplit-mult:residue-char-equals-p", {}
    m = q.valuation
    wit = {"m": m, "unit": q.unit_residue}
    if (l * l - 1) % p:
        return DimBound.exact(0), "nonsplit-mult:no-pth-roots-over-quadratic", wit
    if m % p:
        return DimBound.exact(0), "nonsplit-mult:valuation-not-divisible", wit
    power = pow(q.unit_residue, (l - 1) * (l + 1) // p, l) == 1
    wit["pth_power"] = power
    if not power:
        return DimBound.exact(0), "nonsplit-mult:unit-not-pth-power", wit
    return DimBound(0, 1), "nonsplit-mult:upper-bound", wit


def dim_v_nonsplit_mult(l: int, p: int, q: LadicElement) -> DimBound:
    return _nonsplit_branch(l, p, q)[0]


def _good_at_p_branch(W: WeierstrassModel, p: int) -> tuple[DimBound, str, dict]:
    if reduction_type(W, p).tag is not Reduction.GOOD:
        raise ReductionTypeError(f"bad reduction at {p}")
    if p > 2:
        return DimBound.exact(0), "good-at-p:ramification-below-p-1", {}
    ordinary = good_type_at_p(W, 2) is GoodType.ORDINARY
    full = padic_root_count(two_division_cubic(W), 2) == 3
    wit = {"ordinary": ordinary, "full_local_2_torsion": full}
    # the ordinary bound wins when both hold; see the package README
    if ordinary:
        return DimBound(0, 1), "good-at-p:ordinary", wit
    if full:
        return DimBound.exact(2), "good-at-p:full-local-2-torsion", wit
    return DimBound(0, 2), "good-at-p:generic-bound", wit


def ker_dim_good_at_p(W: WeierstrassModel, p: int) -> DimBound:
    return _good_at_p_branch(W, p)[0]


def _real_branch(disc_sign: int, p: int) -> tuple[DimBound, str]:
    if p > 2:
        return DimBound.exact(0), "real:odd-p"
    if disc_sign < 0:
        return DimBound(0, 1), "real:delta-negative"
    return DimBound(0, 2), "real:delta-positive"


def dim_v_real(disc_sign: int, p: int) -> DimBound:
    return _real_branch(disc_sign, p)[0]


def dim_v_additive(l: int, p: int) -> DimBound:
    return DimBound(0, 2)


def dim_v_place(W: WeierstrassModel, place: Place, p: int, precision: int | None = None) -> LocalVReport:
    """Local term at ``place`` for a minimal model W.

    At a prime of good reduction this is only defined for l = p, where it is
    the kernel of the local boundary map.  ``precision`` is the number of
    unit digits of q to compute (at least 3 on the 2-adic path).
    """
    if place == REAL:
        dim, tag = _real_branch(1 if W.disc > 0 else -1, p)
        return LocalVReport(REAL, p, dim, tag, "Real")
    l = int(place)
    rt = reduction_type(W, l, p)
    if rt.tag is Reduction.GOOD:
        if l != p:
            raise ReductionTypeError(f"good reduction at {l} != p contributes no local term")
        dim, tag, wit = _good_at_p_branch(W, p)
        return LocalVReport(l, p, dim, tag, str(rt), wit)
    if rt.tag is Reduction.ADDITIVE:
        return LocalVReport(l, p, dim_v_additive(l, p), "additive:reciprocity-bound", str(rt))
    digits = max(precision or 2, 3 if l == 2 else 1)
    m = -valuation(W.j, l)
    q = tate_parameter(W.j, l, m + digits)
    if rt.tag is Reduction.SPLIT:
        dim, tag, wit = _split_branch(l, p, q)
    else:
        dim, tag, wit = _nonsplit_branch(l, p, q)
    wit = {**wit, "q": str(q)} if wit else wit
    return LocalVReport(l, p, dim, tag, str(rt), wit)


"""Reduction type of a minimal model at each prime."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from sympy import factorint

from .algebra import PolyFl, valuation
from .curves import WeierstrassModel, is_minimal_at, minimal_model, point_count_fl
from .errors import ReductionTypeError

__all__ = [
    "Reduction",
    "GoodType",
    "ReductionType",
    "LocalPlaceData",
    "reduction_type",
    "local_place_data",
    "is_semistable",
    "bad_primes",
    "good_type_at_p",
    "node_tangents_split",
]


class Reduction(enum.Enum):
    GOOD = "Good"
    SPLIT = "SplitMultiplicative"
    NONSPLIT = "NonsplitMultiplicative"
    ADDITIVE = "Additive"

    @property
    def is_multiplicative(self) -> bool:
        return self in (Reduction.SPLIT, Reduction.NONSPLIT)


class GoodType(enum.Enum):
    ORDINARY = "Ordinary"
    SUPERSINGULAR = "Supersingular"


@dataclass(frozen=True)
class ReductionType:
    tag: Reduction
    good_type: Optional[GoodType] = None

    def __str__(self):
        if self.good_type is not None:
            return f"{self.tag.value}({self.good_type.value})"
        return self.tag.value


@dataclass(frozen=True)
class LocalPlaceData:
    l: int
    type: ReductionType
    m: int
    v_c4: float
    v_j: float


def _val(x, l):
    return float("inf") if x == 0 else valuation(x, l)


def _mod(a, l):
    return a.numerator * pow(a.denominator, -1, l) % l


def _singular_point(W: WeierstrassModel, l: int) -> tuple[int, int]:
    a1, a2, a3, a4, a6 = (_mod(a, l) for a in W.ainvs)
    if l <= 3:
        for x in range(l):
            for y in range(l):
                f = y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6
                fx = a1 * y - 3 * x * x - 2 * a2 * x - a4
                fy = 2 * y + a1 * x + a3
                if f % l == 0 and fx % l == 0 and fy % l == 0:
                    return x, y
        raise ArithmeticError(f"reduction at {l} has no singular point")
    inv = W.invariants
    cubic = PolyFl([_mod(inv.b6, l), 2 * _mod(inv.b4, l), _mod(inv.b2, l), 4], l)
    g = cubic.gcd(cubic.derivative())
    if g.degree != 1:
        raise ArithmeticError(f"reduction at {l} is not nodal")
    x0 = -g.coeffs[0] * pow(g.coeffs[1], -1, l) % l
    y0 = -(a1 * x0 + a3) * pow(2, -1, l) % l
    return x0, y0


def node_tangents_split(W: WeierstrassModel, l: int) -> bool:
    """Whether the two tangent lines at the node of the reduction are defined over F_l."""
    x0, y0 = _singular_point(W, l)
    T = W.transform(1, x0, 0, y0)
    a1, a2 = _mod(T.a1, l), _mod(T.a2, l)
    # tangent cone y^2 + a1 xy - a2 x^2 = 0, split iff t^2 + a1 t - a2 has a root
    return bool(PolyFl([-a2, a1, 1], l).roots())


def reduction_type(W: WeierstrassModel, l: int, p: Optional[int] = None) -> ReductionType:
    """Classify the reduction of a model minimal at l.

    Passing ``p == l`` attaches the ordinary/supersingular sub-tag at good l.
    """
    if not is_minimal_at(W, l):
        raise ReductionTypeError(f"model {W} is not minimal at {l}")
    inv = W.invariants
    if _val(inv.disc, l) == 0:
        if p is not None and p == l:
            return ReductionType(Reduction.GOOD, good_type_at_p(W, l))
        return ReductionType(Reduction.GOOD)
    if _val(inv.c4, l) > 0:
        return ReductionType(Reduction.ADDITIVE)
    split = node_tangents_split(W, l)
    return ReductionType(Reduction.SPLIT if split else Reduction.NONSPLIT)


def local_place_data(W: WeierstrassModel, l: int, p: Optional[int] = None) -> LocalPlaceData:
    inv = W.invariants
    rt = reduction_type(W, l, p)
    return LocalPlaceData(l, rt, int(_val(inv.disc, l)), _val(inv.c4, l), _val(inv.j, l))


@lru_cache(maxsize=4096)
def bad_primes(W: WeierstrassModel) -> tuple[int, ...]:
    Wm = minimal_model(W)[0]
    return tuple(sorted(factorint(abs(int(Wm.disc)))))


def is_semistable(W: WeierstrassModel) -> tuple[bool, frozenset]:
    Wm = minimal_model(W)[0]
    bad = bad_primes(W)
    c4 = Wm.invariants.c4
    semistable = all(_val(c4, l) == 0 for l in bad)
    return semistable, frozenset(bad)


def good_type_at_p(W: WeierstrassModel, p: int) -> GoodType:
    _, a = point_count_fl(W, p)
    return GoodType.SUPERSINGULAR if a % p == 0 else GoodType.ORDINARY

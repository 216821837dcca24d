"""Exact polynomial arithmetic over Q and F_l.

Everything here is immutable and exact.  Polynomials store coefficients
lowest degree first.  The factorisation machinery is deliberately small:
it exists to pull rational factors of degree at most three out of division
polynomials, and to count l-adic roots of the 2-division cubic.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from sympy import isprime

__all__ = [
    "PolyQ",
    "PolyFl",
    "ResidueUnit",
    "valuation",
    "is_prime",
    "poly_factor_mod_l",
    "hensel_lift",
    "rational_factors",
    "is_pth_power_fl",
    "padic_root_count",
    "rational_sqrt",
]


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    return n >= 2 and bool(isprime(n))


def valuation(x, l: int) -> int:
    """l-adic valuation of a nonzero integer or rational."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero is infinite")
    v = 0
    num, den = x.numerator, x.denominator
    while num % l == 0:
        num //= l
        v += 1
    while den % l == 0:
        den //= l
        v -= 1
    return v


def rational_sqrt(x) -> Fraction | None:
    """Return a rational square root of ``x`` or None if there is none."""
    x = Fraction(x)
    if x < 0:
        return None
    rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


# ---------------------------------------------------------------------------
# coefficient-list helpers (lowest degree first, integers mod n)


def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _add(a, b, n):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _trim([x % n for x in out])


def _sub(a, b, n):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, x in enumerate(b):
        out[i] -= x
    return _trim([x % n for x in out])


def _mul(a, b, n):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([x % n for x in out])


def _scale(a, c, n):
    return _trim([(x * c) % n for x in a])


def _divmod(a, b, n):
    """Division with remainder mod n; the leading coefficient of b must be a unit."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], -1, n)
    rem = list(a)
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [], _trim(rem)
    quo = [0] * (len(rem) - db)
    for i in range(len(rem) - 1 - db, -1, -1):
        c = (rem[i + db] * inv) % n
        quo[i] = c
        if c:
            for j, y in enumerate(b):
                rem[i + j] = (rem[i + j] - c * y) % n
    return _trim(quo), _trim([x % n for x in rem[:db]])


def _monic(a, l):
    if not a:
        return []
    return _scale(a, pow(a[-1], -1, l), l)


def _gcd(a, b, l):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _divmod(a, b, l)[1]
    return _monic(a, l)


def _xgcd(a, b, l):
    """Return (g, s, t) with s*a + t*b = g monic, over F_l."""
    r0, r1 = _trim(list(a)), _trim(list(b))
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = _divmod(r0, r1, l)
        r0, r1 = r1, r
        s0, s1 = s1, _sub(s0, _mul(q, s1, l), l)
        t0, t1 = t1, _sub(t0, _mul(q, t1, l), l)
    inv = pow(r0[-1], -1, l)
    return _scale(r0, inv, l), _scale(s0, inv, l), _scale(t0, inv, l)


def _powmod(base, e, mod, l):
    result = [1]
    base = _divmod(base, mod, l)[1]
    while e:
        if e & 1:
            result = _divmod(_mul(result, base, l), mod, l)[1]
        e >>= 1
        if e:
            base = _divmod(_mul(base, base, l), mod, l)[1]
    return result


def _deriv(a, n):
    return _trim([(i * a[i]) % n for i in range(1, len(a))])


def _eval(a, x, n):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % n
    return acc


# ---------------------------------------------------------------------------
# polynomial types


class PolyQ:
    """Polynomial with exact rational coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable = ()):
        self._c = tuple(_trim([Fraction(c) for c in coeffs]))

    @classmethod
    def x(cls) -> PolyQ:
        return cls([0, 1])

    @classmethod
    def constant(cls, c) -> PolyQ:
        return cls([c])

    @classmethod
    def from_roots(cls, roots) -> PolyQ:
        out = cls([1])
        for r in roots:
            out = out * cls([-Fraction(r), 1])
        return out

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    @property
    def lc(self) -> Fraction:
        return self._c[-1] if self._c else Fraction(0)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, PolyQ):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == PolyQ([other])._c
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def __repr__(self):
        if not self._c:
            return "PolyQ(0)"
        terms = []
        for i in range(len(self._c) - 1, -1, -1):
            c = self._c[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return "PolyQ(" + " + ".join(terms).replace("+ -", "- ") + ")"

    @staticmethod
    def _coerce(other) -> PolyQ:
        return other if isinstance(other, PolyQ) else PolyQ([other])

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return PolyQ(out)

    __radd__ = __add__

    def __neg__(self):
        return PolyQ([-c for c in self._c])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PolyQ([c * other for c in self._c])
        a, b = self._c, other._c
        if not a or not b:
            return PolyQ()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return PolyQ(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        out, base = PolyQ([1]), self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __divmod__(self, other):
        other = self._coerce(other)
        if not other._c:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._c)
        db = other.degree
        if len(rem) - 1 < db:
            return PolyQ(), self
        inv = 1 / other.lc
        quo = [Fraction(0)] * (len(rem) - db)
        for i in range(len(rem) - 1 - db, -1, -1):
            c = rem[i + db] * inv
            quo[i] = c
            if c:
                for j, y in enumerate(other._c):
                    rem[i + j] -= c * y
        return PolyQ(quo), PolyQ(rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> PolyQ:
        q, r = divmod(self, other)
        if r:
            raise ValueError("polynomial division is not exact")
        return q

    def __call__(self, x):
        acc = Fraction(0) if not isinstance(x, PolyQ) else PolyQ()
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def compose(self, inner: PolyQ) -> PolyQ:
        return self(inner)

    def derivative(self) -> PolyQ:
        return PolyQ([i * self._c[i] for i in range(1, len(self._c))])

    def monic(self) -> PolyQ:
        if not self._c:
            return self
        return self * (1 / self.lc)

    def gcd(self, other: PolyQ) -> PolyQ:
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic()

    def to_integer_primitive(self) -> list[int]:
        """Scale to a primitive integer coefficient list with positive lead."""
        if not self._c:
            return []
        den = 1
        for c in self._c:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self._c]
        g = 0
        for c in ints:
            g = math.gcd(g, c)
        ints = [c // g for c in ints]
        if ints[-1] < 0:
            ints = [-c for c in ints]
        return ints

    def reduce_mod(self, l: int) -> PolyFl:
        out = []
        for c in self._c:
            if c.denominator % l == 0:
                raise ValueError(f"coefficient {c} is not {l}-integral")
            out.append(c.numerator * pow(c.denominator, -1, l))
        return PolyFl(out, l)


class PolyFl:
    """Polynomial over the prime field F_l."""

    __slots__ = ("_l", "_c")

    def __init__(self, coeffs: Iterable[int], l: int):
        if not is_prime(l):
            raise ValueError(f"modulus {l} is not prime")
        self._l = l
        self._c = tuple(_trim([int(c) % l for c in coeffs]))

    @classmethod
    def _raw(cls, coeffs, l) -> PolyFl:
        obj = cls.__new__(cls)
        obj._l = l
        obj._c = tuple(coeffs)
        return obj

    @property
    def l(self) -> int:
        return self._l

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    @property
    def lc(self) -> int:
        return self._c[-1] if self._c else 0

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if not isinstance(other, PolyFl):
            return NotImplemented
        return self._l == other._l and self._c == other._c

    def __hash__(self):
        return hash((self._l, self._c))

    def __repr__(self):
        return f"PolyFl({list(self._c)}, l={self._l})"

    def _check(self, other):
        if other._l != self._l:
            raise ValueError("polynomials over different prime fields")

    def __add__(self, other):
        self._check(other)
        return PolyFl._raw(_add(self._c, other._c, self._l), self._l)

    def __sub__(self, other):
        self._check(other)
        return PolyFl._raw(_sub(self._c, other._c, self._l), self._l)

    def __mul__(self, other):
        if isinstance(other, int):
            return PolyFl._raw(_scale(self._c, other, self._l), self._l)
        self._check(other)
        return PolyFl._raw(_mul(self._c, other._c, self._l), self._l)

    def __divmod__(self, other):
        self._check(other)
        q, r = _divmod(self._c, other._c, self._l)
        return PolyFl._raw(q, self._l), PolyFl._raw(r, self._l)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __call__(self, x: int) -> int:
        return _eval(self._c, x, self._l)

    def monic(self) -> PolyFl:
        return PolyFl._raw(_monic(list(self._c), self._l), self._l)

    def derivative(self) -> PolyFl:
        return PolyFl._raw(_deriv(self._c, self._l), self._l)

    def gcd(self, other) -> PolyFl:
        self._check(other)
        return PolyFl._raw(_gcd(self._c, other._c, self._l), self._l)

    def roots(self) -> list[int]:
        """All roots in F_l by exhaustive search (small l only)."""
        return [x for x in range(self._l) if self(x) == 0]


@dataclass(frozen=True)
class ResidueUnit:
    """A unit of F_l."""

    l: int
    value: int

    def __post_init__(self):
        v = self.value % self.l
        if v == 0:
            raise ValueError(f"{self.value} is not a unit mod {self.l}")
        object.__setattr__(self, "value", v)

    def __mul__(self, other):
        if other.l != self.l:
            raise ValueError("residues modulo different primes")
        return ResidueUnit(self.l, self.value * other.value)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, e: int):
        return ResidueUnit(self.l, pow(self.value, e, self.l))

    def inverse(self) -> ResidueUnit:
        return ResidueUnit(self.l, pow(self.value, -1, self.l))

    def __int__(self):
        return self.value


# ---------------------------------------------------------------------------
# factorisation over F_l


def _pth_root(a, l):
    # a(x) = b(x^l) over F_l, and c^l = c for constants
    return [a[i] for i in range(0, len(a), l)]


def _squarefree(f, l):
    """Squarefree decomposition of a monic f: list of (g, multiplicity)."""
    out = []
    fp = _deriv(f, l)
    if not fp:
        return [(g, e * l) for g, e in _squarefree(_pth_root(f, l), l)]
    c = _gcd(f, fp, l)
    w = _divmod(f, c, l)[0]
    i = 1
    while len(w) > 1:
        y = _gcd(w, c, l)
        z = _divmod(w, y, l)[0]
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = _divmod(c, y, l)[0]
    if len(c) > 1:
        out.extend((g, e * l) for g, e in _squarefree(_pth_root(c, l), l))
    return out


def _distinct_degree(f, l):
    out = []
    h = [0, 1]
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = _powmod(h, l, f, l)
        g = _gcd(_sub(h, [0, 1], l), f, l)
        if len(g) > 1:
            out.append((g, d))
            f = _divmod(f, g, l)[0]
            h = _divmod(h, f, l)[1]
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _equal_degree(f, d, l, rng):
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = _trim([rng.randrange(l) for _ in range(n)])
        if len(a) < 2:
            continue
        if l == 2:
            t, acc = a, a
            for _ in range(d - 1):
                t = _divmod(_mul(t, t, l), f, l)[1]
                acc = _add(acc, t, l)
            b = acc
        else:
            b = _sub(_powmod(a, (l**d - 1) // 2, f, l), [1], l)
        g = _gcd(b, f, l)
        if 1 < len(g) < len(f):
            return _equal_degree(g, d, l, rng) + _equal_degree(_divmod(f, g, l)[0], d, l, rng)


def poly_factor_mod_l(f: PolyFl) -> list[tuple[PolyFl, int]]:
    """Factor ``f`` into monic irreducibles over F_l.

    Returns ``(factor, multiplicity)`` pairs sorted by degree then
    coefficients; the product equals ``f`` up to its leading coefficient.
    """
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    l = f.l
    mono = _monic(list(f.coeffs), l)
    rng = random.Random(0x5EED ^ l)
    found: dict[tuple, int] = {}
    for part, mult in _squarefree(mono, l):
        for block, d in _distinct_degree(part, l):
            for g in _equal_degree(block, d, l, rng):
                key = tuple(g)
                found[key] = found.get(key, 0) + mult
    items = sorted(found.items(), key=lambda kv: (len(kv[0]), kv[0][::-1]))
    return [(PolyFl._raw(k, l), m) for k, m in items]


# ---------------------------------------------------------------------------
# Hensel lifting


def _lift_pair(f, g, h, l, K):
    """Lift f = g*h from mod l to mod l^K (g, h monic and coprime mod l)."""
    one, s, t = _xgcd(g, h, l)
    if one != [1]:
        raise ValueError("factors are not coprime mod l; squarefree preprocessing needed")
    target = l**K
    m = l
    while m < target:
        M = min(m * m, target)
        e = _sub(f, _mul(g, h, M), M)
        r = _divmod(_mul(t, e, M), g, M)[1]
        g = _add(g, r, M)
        h = _divmod(f, g, M)[0]
        b = _sub(_add(_mul(s, g, M), _mul(t, h, M), M), [1], M)
        c, d = _divmod(_mul(t, b, M), g, M)
        s = _sub(s, _add(_mul(s, b, M), _mul(c, h, M), M), M)
        t = _sub(t, d, M)
        m = M
    return g, h


def _to_mod(f: PolyQ, n: int, l: int) -> list[int]:
    out = []
    for c in f.coeffs:
        if c.denominator % l == 0:
            raise ValueError(f"coefficient {c} is not {l}-integral")
        out.append(c.numerator * pow(c.denominator, -1, n) % n)
    return _trim(out)


def hensel_lift(f: PolyQ, factors: Sequence[PolyFl], k: int) -> list[PolyQ]:
    """Lift a coprime factorisation of ``f`` mod l to one mod l^k.

    ``f`` is normalised to be monic mod l^k (its leading coefficient must be
    an l-adic unit).  The lifted factors are monic with integer coefficients
    in ``[0, l^k)``; they reduce to the inputs mod l and their product is
    congruent to the normalised ``f`` mod l^k.
    """
    if not factors:
        raise ValueError("no factors to lift")
    if k < 1:
        raise ValueError("target exponent must be positive")
    l = factors[0].l
    if any(g.l != l for g in factors):
        raise ValueError("factors live over different prime fields")
    n = l**k
    fk = _to_mod(f, n, l)
    if not fk or fk[-1] % l == 0:
        raise ValueError("leading coefficient of f must be a unit mod l")
    fk = _scale(fk, pow(fk[-1], -1, n), n)
    gs = [list(g.monic().coeffs) for g in factors]
    prod = [1]
    for g in gs:
        prod = _mul(prod, g, l)
    if prod != [c % l for c in fk] or len(prod) != len(fk):
        raise ValueError("factors do not multiply to f mod l")
    for a, b in itertools.combinations(gs, 2):
        if _gcd(a, b, l) != [1]:
            raise ValueError("factors are not coprime mod l; squarefree preprocessing needed")
    lifted = []
    rest = fk
    for i, g in enumerate(gs[:-1]):
        h = [1]
        for other in gs[i + 1:]:
            h = _mul(h, other, l)
        gi, rest = _lift_pair(rest, g, h, l, k)
        lifted.append(gi)
    lifted.append(rest)
    return [PolyQ(c) for c in lifted]


# ---------------------------------------------------------------------------
# rational factors


def _working_prime(F: list[int]) -> int:
    fp = [i * F[i] for i in range(1, len(F))]
    l = 2
    while True:
        if F[-1] % l:
            Fl = _trim([c % l for c in F])
            if len(_gcd(Fl, _trim([c % l for c in fp]), l)) == 1:
                return l
        l += 1
        while not is_prime(l):
            l += 1


def _symmetric(c: int, n: int) -> int:
    c %= n
    return c - n if c > n // 2 else c


def _irreducible_factors_upto(F: list[int], d: int) -> list[PolyQ]:
    """Irreducible rational factors of degree <= d of a squarefree integer polynomial."""
    l = _working_prime(F)
    modular = [g for g, _ in poly_factor_mod_l(PolyFl(F, l))]
    norm2 = math.isqrt(sum(c * c for c in F)) + 1
    bound = 2 * abs(F[-1]) * (2**d) * norm2
    K = 1
    while l**K <= bound:
        K += 1
    n = l**K
    lifted = [list(map(int, g.coeffs)) for g in hensel_lift(PolyQ(F), modular, K)]
    degs = [len(g) - 1 for g in lifted]
    remaining = list(range(len(lifted)))
    Fcur = PolyQ(F)
    found = []
    size = 1
    while size <= len(remaining):
        hit = False
        for subset in itertools.combinations(remaining, size):
            if sum(degs[i] for i in subset) > d:
                continue
            lead = int(Fcur.to_integer_primitive()[-1])
            cand = [lead % n]
            for i in subset:
                cand = _mul(cand, lifted[i], n)
            cand = [_symmetric(c, n) for c in cand]
            cand_poly = PolyQ(PolyQ(cand).to_integer_primitive())
            if cand_poly.degree < 1:
                continue
            q, r = divmod(Fcur, cand_poly)
            if not r:
                found.append(cand_poly.monic())
                Fcur = q
                remaining = [i for i in remaining if i not in subset]
                hit = True
                break
        if not hit:
            size += 1
    return found


def rational_factors(f: PolyQ, d: int) -> list[PolyQ]:
    """All monic degree-``d`` rational polynomials dividing ``f``.

    Works by factoring the squarefree part modulo a prime of good
    reduction, Hensel lifting past a Landau-Mignotte bound and recombining
    subsets of modular factors of total degree at most ``d``; every
    candidate is confirmed by exact division.
    """
    if not f:
        raise ValueError("zero polynomial")
    if not 1 <= d <= f.degree:
        raise ValueError(f"degree {d} out of range for a degree-{f.degree} polynomial")
    sqfree = f.exact_div(f.gcd(f.derivative())) if f.degree > 0 else f
    F = sqfree.to_integer_primitive()
    irreducibles = _irreducible_factors_upto(F, d)
    mults = []
    for g in irreducibles:
        e, rest = 0, f
        while True:
            q, r = divmod(rest, g)
            if r:
                break
            e, rest = e + 1, q
        mults.append(e)
    results = set()

    def extend(i, deg, acc):
        if deg == d:
            results.add(acc)
            return
        if i == len(irreducibles):
            return
        g, e = irreducibles[i], mults[i]
        power = PolyQ([1])
        for j in range(e + 1):
            if deg + j * g.degree > d:
                break
            extend(i + 1, deg + j * g.degree, acc * power)
            power = power * g

    extend(0, 0, PolyQ([1]))
    return sorted(results, key=lambda p: tuple(p.coeffs))


# ---------------------------------------------------------------------------
# residue power test and l-adic roots


def is_pth_power_fl(u: ResidueUnit, p: int) -> bool:
    """Whether ``u`` lies in the subgroup of p-th powers of F_l^x.

    Only meaningful when p divides l - 1; otherwise every unit is a p-th
    power and callers are expected to short-circuit before reaching here.
    """
    l = u.l
    if (l - 1) % p:
        raise ValueError(f"{p} does not divide {l} - 1")
    return pow(u.value, (l - 1) // p, l) == 1


def _zl_roots(g: list[int], l: int, residues=None, depth=0) -> int:
    if depth > 4096:
        raise ValueError("root recursion did not terminate; is the polynomial squarefree?")
    while g and all(c % l == 0 for c in g):
        g = [c // l for c in g]
    count = 0
    gp = [i * g[i] for i in range(1, len(g))]
    for a in residues if residues is not None else range(l):
        if sum(c * a**i for i, c in enumerate(g)) % l:
            continue
        if sum(c * a**i for i, c in enumerate(gp)) % l:
            count += 1
            continue
        # g(a + l x)
        shifted = PolyQ(g)(PolyQ([a, l]))
        count += _zl_roots([int(c) for c in shifted.coeffs], l, None, depth + 1)
    return count


def padic_root_count(f: PolyQ, l: int) -> int:
    """Number of distinct roots of a squarefree rational polynomial in Q_l."""
    if f.degree < 1:
        return 0
    if f.gcd(f.derivative()).degree > 0:
        raise ValueError("polynomial is not squarefree")
    F = f.to_integer_primitive()
    rev = F[::-1]
    return _zl_roots(F, l) + _zl_roots(rev, l, residues=(0,))

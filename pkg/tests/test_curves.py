import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import primerange

from sk1ec.curves import (
    CurvePoint,
    add_points,
    division_polynomial,
    enumerate_points_fl,
    is_minimal_at,
    minimal_model,
    multiply_point,
    negate_point,
    on_curve,
    point_count_fl,
    rational_p_torsion,
    rational_p_torsion_points,
)
from sk1ec.errors import ReductionTypeError, SingularCurveError

from .conftest import model


def test_invariant_identity_on_random_models():
    rng = random.Random(1)
    seen = 0
    while seen < 1000:
        a = [rng.randint(-50, 50) for _ in range(5)]
        try:
            W = model(*a)
        except SingularCurveError:
            continue
        inv = W.invariants
        assert inv.c4**3 - inv.c6**2 == 1728 * inv.disc
        assert 4 * inv.b8 == inv.b2 * inv.b6 - inv.b4**2
        assert inv.j == inv.c4**3 / inv.disc
        seen += 1


def test_singular_model_rejected():
    with pytest.raises(SingularCurveError):
        model(0, 0, 0, 0, 0)
    with pytest.raises(SingularCurveError):
        model(0, 0, 0, -3, 2)


@pytest.mark.parametrize(
    "label, disc",
    [
        ("651e2", -(3**3) * 7**3 * 31**3),
        ("651e3", -3 * 7 * 31),
        ("35a1", -(5**3) * 7**3),
        ("35a2", -(5**9) * 7),
        ("17a2", 17**2),
    ],
)
def test_discriminants(ref, label, disc):
    assert ref[label].disc == disc


def test_651e2_from_torsion_normal_form():
    # y^2 - 26xy - 651y = x^3 has (0,0) of order 3
    W = model(-26, 0, -651, 0, 0)
    Wm, t = minimal_model(W)
    assert Wm.disc == -(651**3)
    assert W.transform(*t) == Wm
    P = CurvePoint(Fraction(0), Fraction(0))
    assert multiply_point(W, 3, P).is_infinity


def test_minimal_model_identity_on_minimal_input():
    W = model(1, -1, 1, -6, -4)
    Wm, t = minimal_model(W)
    assert Wm == W
    assert t == (1, 0, 0, 0)


@pytest.mark.parametrize("u", [2, 3, 6, Fraction(1, 5)])
def test_minimal_model_recovers_rescaled(ref, u):
    for W in ref.values():
        scaled = W.transform(Fraction(1, 1) / u, 3, -1, 2)
        Wm, t = minimal_model(scaled)
        assert Wm == W
        assert scaled.transform(*t) == Wm
        assert scaled.disc / Wm.disc == t[0] ** 12


def test_minimal_model_idempotent(corpus):
    for _, W in corpus:
        assert minimal_model(W)[0] == W
        for l in (2, 3, 5, 7):
            assert is_minimal_at(W, l)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(-40, 40), min_size=5, max_size=5), st.integers(1, 4))
def test_minimal_model_divides_discriminant(a, u):
    try:
        W = model(*a)
    except SingularCurveError:
        return
    Wm, t = minimal_model(W.transform(u, 1, 0, -1))
    assert Wm.is_integral()
    q = W.transform(u, 1, 0, -1).disc / Wm.disc
    assert q == t[0] ** 12
    assert minimal_model(Wm)[0] == Wm


def test_hasse_bound_on_corpus(corpus):
    for _, W in corpus:
        bad = {l for l in primerange(2, 51) if W.disc.numerator % l == 0}
        for l in primerange(2, 51):
            if l in bad:
                continue
            _, a = point_count_fl(W, l)
            assert a * a <= 4 * l


def test_point_count_matches_enumeration(corpus):
    for _, W in corpus[:40]:
        for l in primerange(2, 51):
            if W.disc.numerator % l == 0:
                continue
            n, a = point_count_fl(W, l)
            assert n == len(enumerate_points_fl(W, l))
            assert a == l + 1 - n


def test_point_count_rejects_bad_prime(ref):
    with pytest.raises(ReductionTypeError):
        point_count_fl(ref["17a2"], 17)


def test_17a2_full_two_torsion_injects_mod_3(ref):
    n, _ = point_count_fl(ref["17a2"], 3)
    assert n % 4 == 0


def test_651e2_count_at_2(ref):
    W = ref["651e2"]
    pts = enumerate_points_fl(W, 2)
    assert point_count_fl(W, 2)[0] == len(pts)


def test_group_law_on_small_fields(corpus):
    rng = random.Random(7)
    for _, W in corpus[:25]:
        for l in primerange(3, 50):
            if W.disc.numerator % l == 0:
                continue
            pts = enumerate_points_fl(W, l)
            O = CurvePoint.infinity(l)
            for _ in range(5):
                P, Q, R = (rng.choice(pts) for _ in range(3))
                assert on_curve(W, add_points(W, P, Q))
                assert add_points(W, add_points(W, P, Q), R) == add_points(W, P, add_points(W, Q, R))
                assert add_points(W, P, negate_point(W, P)) == O
                assert add_points(W, P, Q) == add_points(W, Q, P)
            # Lagrange
            P = rng.choice(pts)
            assert multiply_point(W, len(pts), P) == O


def test_division_polynomial_degrees(ref):
    W = ref["651e2"]
    inv = W.invariants
    psi2 = division_polynomial(W, 2)
    assert psi2.coeffs == (inv.b6, 2 * inv.b4, inv.b2, 4)
    for p in (3, 5, 7):
        assert division_polynomial(W, p).degree == (p * p - 1) // 2


def test_division_polynomial_unsupported_p(ref):
    with pytest.raises(ValueError):
        division_polynomial(ref["17a2"], 11)


def test_division_polynomial_vanishes_on_torsion_mod_l(corpus):
    """Every F_l point killed by p has x-coordinate a root of psi_p mod l."""
    hits = 0
    for _, W in corpus[:20]:
        for p in (2, 3, 5, 7):
            psi = division_polynomial(W, p)
            for l in (11, 13, 29, 31, 41, 43):
                if W.disc.numerator % l == 0 or any(c.denominator % l == 0 for c in psi.coeffs):
                    continue
                red = psi.reduce_mod(l)
                for P in enumerate_points_fl(W, l):
                    if P.is_infinity:
                        continue
                    if multiply_point(W, p, P).is_infinity:
                        assert red(P.x) == 0
                        hits += 1
    assert hits > 20


@pytest.mark.parametrize(
    "label, p, dim",
    [("651e1", 3, 1), ("651e2", 3, 1), ("651e3", 3, 0), ("17a2", 2, 2), ("17a2", 3, 0), ("35a3", 3, 1)],
)
def test_rational_torsion_examples(ref, label, p, dim):
    assert rational_p_torsion(ref[label], p) == dim


def test_rational_torsion_points_are_torsion(corpus):
    for _, W in corpus:
        for p in (2, 3, 5, 7):
            pts = rational_p_torsion_points(W, p)
            for P in pts:
                assert on_curve(W, P)
                assert multiply_point(W, p, P).is_infinity
            assert len(pts) + 1 == p ** rational_p_torsion(W, p)
            if p > 2:
                assert rational_p_torsion(W, p) <= 1


def test_points_over_q(ref):
    W = ref["17a2"]
    pts = rational_p_torsion_points(W, 2)
    assert len(pts) == 3
    s = add_points(W, pts[0], pts[1])
    assert s == pts[2]

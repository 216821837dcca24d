"""Acceptance criteria, one check per criterion.

Run ``python3 -m tests.test_acceptance`` for a PASS/FAIL line per criterion,
or collect with pytest (``-s`` shows the lines).
"""
import random
import sys

import pytest
from sympy import primerange

from sk1ec.algebra import ResidueUnit, is_pth_power_fl, rational_sqrt, valuation
from sk1ec.assemble import APPLICABLE, NOT_APPLICABLE, assemble
from sk1ec.corpus import bundled, scan
from sk1ec.curves import WeierstrassModel, minimal_model, point_count_fl, rational_p_torsion, two_division_cubic
from sk1ec.errors import SingularCurveError
from sk1ec.galois import Tag, classify, coinvariant_dim, frobenius_screen, p_isogeny_kernels, velu_quotient
from sk1ec.local_v import tame_symbol
from sk1ec.reduction import bad_primes, reduction_type
from sk1ec.tate_q import LadicElement, j_of_q, tate_parameter

from .test_galois import coinvariants_brute, galois_group_of_cubic, mod2_cases


def _ref():
    return {r.label: minimal_model(r.model)[0] for r in bundled("reference_curves")}


def _corpus():
    return [(r.label, minimal_model(r.model)[0]) for r in bundled("reference_curves") + bundled("smoke_corpus")]


def _expect(fails, what, got, want):
    if got != want:
        fails.append(f"{what}: got {got}, want {want}")


def _bounds(d):
    return (d.lo, d.hi)


def criterion_1():
    E, fails = _ref(), []
    r = assemble(E["651e2"], 3)
    _expect(fails, "651e2 class", classify(E["651e2"], 3).tag, Tag.SC)
    _expect(fails, "651e2 coinvariants", r.coinvariant_dim, 1)
    _expect(fails, "651e2 locals", {v.place: _bounds(v.dim) for v in r.locals}, {3: (0, 0), 7: (1, 1), 31: (1, 1)})
    _expect(fails, "651e2 ker", _bounds(r.ker), (1, 1))
    _expect(fails, "651e2 coker", _bounds(r.coker), (0, 0))
    r = assemble(E["651e3"], 3)
    _expect(fails, "651e3 class", classify(E["651e3"], 3).tag, Tag.B)
    _expect(fails, "651e3 locals", {_bounds(v.dim) for v in r.locals}, {(0, 0)})
    _expect(fails, "651e3 ker", _bounds(r.ker), (0, 0))
    _expect(fails, "651e3 coker", _bounds(r.coker), (1, 1))
    r = assemble(E["651e1"], 3)
    _expect(fails, "651e1 class", classify(E["651e1"], 3).tag, Tag.BPRIME)
    _expect(fails, "651e1 coinvariants", r.coinvariant_dim, 0)
    _expect(fails, "651e1 status", r.status, NOT_APPLICABLE)
    return "conductor 651 at p=3", fails


def criterion_2():
    E, fails = _ref(), []
    q = tate_parameter(E["651e2"].j, 7, 4)
    _expect(fails, "651e2 q7 mod 7^4", q.representative() % 7**4, 6 * 7**3)
    q = tate_parameter(E["651e2"].j, 31)
    _expect(fails, "651e2 q31 unit mod 31", q.unit_residue, 8)
    q = tate_parameter(E["35a1"].j, 7, 5)
    _expect(fails, "35a1 q7", (q.valuation, q.digits()[:2], q.absolute_precision), (3, [1, 4], 5))
    q = tate_parameter(E["17a2"].j, 17, 4)
    _expect(fails, "17a2 q17", (q.valuation, q.digits()[:2], q.absolute_precision), (2, [1, 3], 4))
    return "Tate parameter digits", fails


def criterion_3():
    E, fails = _ref(), []
    r = assemble(E["35a1"], 3)
    _expect(fails, "35a1 class", r.classification, Tag.SC.value)
    _expect(fails, "35a1 V7", _bounds(r.local(7).dim), (1, 1))
    _expect(fails, "35a1 V5", _bounds(r.local(5).dim), (0, 1))
    _expect(fails, "35a1 coker", _bounds(r.coker), (0, 0))
    _expect(fails, "35a1 ker", _bounds(r.ker), (0, 1))
    r = assemble(E["35a2"], 3)
    _expect(fails, "35a2 class", r.classification, Tag.B.value)
    _expect(fails, "35a2 V7", _bounds(r.local(7).dim), (0, 0))
    _expect(fails, "35a3 class", classify(E["35a3"], 3).tag, Tag.BPRIME)
    _expect(fails, "35a3 coinvariants", coinvariant_dim(E["35a3"], 3), 0)
    return "conductor 35 at p=3", fails


def criterion_4():
    W, fails = _ref()["17a2"], []
    r = assemble(W, 2)
    _expect(fails, "E(Q)[2]", rational_p_torsion(W, 2), 2)
    _expect(fails, "disc square", rational_sqrt(W.disc), 17)
    _expect(fails, "coinvariants", r.coinvariant_dim, 2)
    _expect(fails, "V17", _bounds(r.local(17).dim), (1, 1))
    _expect(fails, "coker", _bounds(r.coker), (0, 0))
    _expect(fails, "ker.hi", r.ker.hi, 2)
    return "17a2 at p=2", fails


def criterion_5():
    E, fails = _ref(), []
    want = {
        "651e2": -(3**3) * 7**3 * 31**3,
        "651e3": -3 * 7 * 31,
        "35a1": -(5**3) * 7**3,
        "35a2": -(5**9) * 7,
        "17a2": 17**2,
    }
    for label, d in want.items():
        _expect(fails, f"disc {label}", E[label].disc, d)
    return "discriminants", fails


def _property_identity(fails):
    rng, seen = random.Random(6), 0
    while seen < 1000:
        try:
            W = WeierstrassModel.from_ainvs([rng.randint(-50, 50) for _ in range(5)])
        except SingularCurveError:
            continue
        inv = W.invariants
        if inv.c4**3 - inv.c6**2 != 1728 * inv.disc:
            fails.append(f"c4^3 - c6^2 != 1728 disc for {W}")
        seen += 1


def _property_hasse(fails, corpus):
    for label, W in corpus:
        for l in primerange(2, 51):
            if l not in bad_primes(W):
                a = point_count_fl(W, l)[1]
                if a * a > 4 * l:
                    fails.append(f"Hasse fails for {label} at {l}")


def _property_tate(fails, corpus):
    for label, W in corpus:
        for l in bad_primes(W):
            if not reduction_type(W, l).tag.is_multiplicative:
                continue
            m = -valuation(W.j, l)
            q = tate_parameter(W.j, l, 2 * m + 3)
            jq = j_of_q(q)
            if jq.absolute_precision != 3 or not jq.agrees_with(W.j):
                fails.append(f"j(q) != j for {label} at {l}")


def _property_velu(fails, corpus):
    for label, W in corpus:
        for p in (2, 3, 5, 7):
            for k in p_isogeny_kernels(W, p):
                E2 = minimal_model(velu_quotient(W, k))[0]
                bad = set(bad_primes(W)) | set(bad_primes(E2)) | {p}
                ls = [l for l in primerange(2, 200) if l not in bad][:20]
                if any(point_count_fl(E2, l)[1] != point_count_fl(W, l)[1] for l in ls):
                    fails.append(f"a_l changes under a {p}-isogeny of {label}")


def _property_pth_power(fails):
    for l in primerange(3, 101):
        for p in (2, 3, 5, 7):
            if (l - 1) % p:
                continue
            powers = {pow(x, p, l) for x in range(1, l)}
            for u in range(1, l):
                if is_pth_power_fl(ResidueUnit(l, u), p) != (u in powers):
                    fails.append(f"pth power test wrong for {u} mod {l}, p={p}")


def _property_tame(fails):
    rng = random.Random(7)
    for _ in range(200):
        l = rng.choice([3, 5, 7, 11, 13, 31])

        def elt():
            u = rng.randint(1, 10**5)
            return LadicElement(l, rng.randint(-4, 4), u if u % l else u + 1, 3)

        a, b, c = elt(), elt(), elt()
        if tame_symbol(a * b, c) != tame_symbol(a, c) * tame_symbol(b, c):
            fails.append(f"tame symbol not multiplicative at {l}")
        if int(tame_symbol(a, b) * tame_symbol(b, a)) != 1:
            fails.append(f"tame symbol not antisymmetric at {l}")


def _property_mod2(fails, corpus):
    curves = mod2_cases() + [W for _, W in corpus]
    cases = set()
    for W in curves[:50]:
        want = coinvariants_brute(galois_group_of_cubic(two_division_cubic(W)))
        if coinvariant_dim(W, 2) != want:
            fails.append(f"mod-2 coinvariants wrong for {W}")
        t = rational_p_torsion(W, 2)
        cases.add((min(t, 1), t > 0 and rational_sqrt(W.disc) is not None))
    # no 2-torsion; 2-torsion with non-square disc; 2-torsion with square disc
    if not {(0, False), (1, False), (1, True)} <= cases:
        fails.append(f"mod-2 sample misses a case: {sorted(cases)}")


def criterion_6():
    corpus, fails = _corpus(), []
    _property_identity(fails)
    _property_hasse(fails, corpus)
    _property_tate(fails, corpus)
    _property_velu(fails, corpus)
    _property_pth_power(fails)
    _property_tame(fails)
    _property_mod2(fails, corpus)
    return "property suite", fails


def criterion_7():
    fails = []
    for label, W in _corpus():
        for p in (2, 3, 5, 7):
            if coinvariant_dim(W, p) >= 1 and not frobenius_screen(W, p, 100):
                fails.append(f"{label} at p={p} is nonzero but fails the screen")
    s = frobenius_screen(_ref()["17a2"], 3, 100)
    if s:
        fails.append("17a2 passes the screen at p=3")
    return f"screen soundness (17a2 p=3 witness l={s.witness})", fails


def criterion_8():
    fails = []
    summary, results = scan(bundled("reference_curves"))
    _expect(fails, "semistable", summary.semistable, 7)
    _expect(fails, "nonzero", {r.label for r in results if r.nonzero}, {"651e2", "651e3", "35a1", "35a2", "17a2"})
    return "fixture scan (full census: see test_corpus.py::test_full_census)", fails


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8]


def report(check):
    n = check.__name__.split("_")[1]
    what, fails = check()
    print(f"criterion {n}: {'PASS' if not fails else 'FAIL'} {what}" + "".join(f"\n    {f}" for f in fails))
    return fails


@pytest.mark.parametrize("check", CRITERIA, ids=lambda c: c.__name__)
def test_criterion(check):
    assert report(check) == []


if __name__ == "__main__":
    sys.exit(1 if sum(bool(report(c)) for c in CRITERIA) else 0)

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

import importlib
from sk1ec.assemble import APPLICABLE, NOT_APPLICABLE, assemble, render_report, solve_states
from sk1ec.errors import AssemblyInconsistency
from sk1ec.galois import Tag, coinvariant_dim
from sk1ec.local_v import REAL, DimBound

assemble_mod = importlib.import_module("sk1ec.assemble")


@pytest.mark.parametrize(
    "label, p, status, ker, coker",
    [
        ("651e2", 3, APPLICABLE, (1, 1), (0, 0)),
        ("651e3", 3, APPLICABLE, (0, 0), (1, 1)),
        ("651e1", 3, NOT_APPLICABLE, None, None),
        ("35a1", 3, APPLICABLE, (0, 1), (0, 0)),
        ("35a2", 3, APPLICABLE, (0, 1), (0, 1)),
        ("35a3", 3, NOT_APPLICABLE, None, None),
        ("17a2", 2, APPLICABLE, (0, 2), (0, 0)),
        ("17a2", 3, NOT_APPLICABLE, None, None),
    ],
)
def test_examples(ref, label, p, status, ker, coker):
    r = assemble(ref[label], p, label)
    assert r.status == status
    if ker is None:
        assert r.ker is None and r.coker is None and not r.locals
    else:
        assert (r.ker.lo, r.ker.hi) == ker
        assert (r.coker.lo, r.coker.hi) == coker


def test_651e2_local_terms(ref):
    r = assemble(ref["651e2"], 3)
    assert {loc.place: loc.dim.lo for loc in r.locals} == {3: 0, 7: 1, 31: 1}
    assert all(loc.dim.is_exact for loc in r.locals)
    assert r.local(7).witnesses["m"] == 3
    with pytest.raises(KeyError):
        r.local(5)


def test_17a2_route_includes_p_and_real(ref):
    r = assemble(ref["17a2"], 2)
    assert [loc.place for loc in r.locals] == [17, 2, REAL]
    assert r.local(2).method == "good-at-p:ordinary"
    assert any("ordinary bound" in t for t in r.trace)


def test_odd_semistable_route_skips_real(ref):
    r = assemble(ref["35a1"], 3)
    assert REAL not in [loc.place for loc in r.locals]


def test_corpus_invariants(corpus):
    n = 0
    for label, W in corpus:
        for p in (2, 3, 5, 7):
            r = assemble(W, p, label)
            c = coinvariant_dim(W, p)
            assert r.coinvariant_dim == c
            if c == 0:
                assert r.status == NOT_APPLICABLE
                continue
            n += 1
            assert r.status == APPLICABLE
            # every reported state satisfies the rank identity
            for s, k, x in r.states:
                assert s in r.local_sum and k - x == s - c and 0 <= k <= s and 0 <= x <= c
            # the envelope is tight: each end is attained by some state
            assert r.ker.lo == min(k for _, k, _ in r.states)
            assert r.ker.hi == max(k for _, k, _ in r.states)
            assert r.ker.hi <= r.local_sum.hi and r.coker.hi <= c
            if p != 2 and r.classification == Tag.SC.value:
                assert (r.coker.lo, r.coker.hi) == (0, 0)
                if r.local_sum.is_exact:
                    assert r.ker.is_exact and r.ker.lo == r.local_sum.lo - c
            if r.classification == Tag.B.value and r.local_sum.hi == 0:
                assert (r.ker.hi, r.coker.lo) == (0, c)
    assert n >= 40


def test_coordinate_change_does_not_matter(ref):
    W = ref["35a1"]
    T = W.transform(2, 1, -1, 3)
    a, b = assemble(W, 3), assemble(T, 3)
    assert (a.ker, a.coker, a.states) == (b.ker, b.coker, b.states)


@given(st.integers(0, 4), st.integers(0, 4), st.integers(1, 2))
def test_solve_states_identity(lo, width, c):
    states = solve_states(DimBound(lo, lo + width), c, range(c + 1))
    for s, k, x in states:
        assert k - x == s - c and 0 <= k <= s
    # coker = c, ker = s is always admissible, so every sum appears
    assert {s for s, _, _ in states} == set(range(lo, lo + width + 1))
    assert len(states) == sum(min(s, c) + 1 for s in range(lo, lo + width + 1))


def test_solve_states_empty():
    # sum 0, c = 1, coker forced to 0 has no solution
    assert solve_states(DimBound(0, 0), 1, (0,)) == []


def test_inconsistency_raised(ref, monkeypatch):
    monkeypatch.setattr(assemble_mod, "solve_states", lambda *a: [])
    with pytest.raises(AssemblyInconsistency):
        assemble(ref["651e2"], 3)


def test_render_text(ref):
    text = render_report(assemble(ref["651e2"], 3, "651e2"))
    line = text.splitlines()[1]
    assert line == "0 → Ker:1 → V(E_3)/3:0 ⊕ V(E_7)/3:1 ⊕ V(E_31)/3:1 → Z/3 → Coker:0 → 0"
    text = render_report(assemble(ref["17a2"], 2, "17a2"))
    assert "Ker_2:[0,1]" in text and "(Z/2)^2" in text and "Ker:[0,2]" in text


def test_render_not_applicable(ref):
    text = assemble(ref["651e1"], 3, "651e1").text
    assert "not applicable" in text and "E[3]_G" in text


def test_render_json_round_trip(ref):
    r = assemble(ref["35a2"], 3, "35a2")
    d = json.loads(render_report(r, "json"))
    assert d["label"] == "35a2" and d["status"] == APPLICABLE
    assert (d["ker_lo"], d["ker_hi"], d["coker_lo"], d["coker_hi"]) == (0, 1, 0, 1)
    assert [row["place"] for row in d["locals"]] == ["5", "7"]
    assert d["locals"][1]["m"] == 1
    na = json.loads(render_report(assemble(ref["35a3"], 3), "json"))
    assert na["status"] == NOT_APPLICABLE and na["ker_lo"] is None and na["locals"] == []


def test_render_unknown_format(ref):
    with pytest.raises(ValueError):
        render_report(assemble(ref["651e2"], 3), "xml")

"""Kernel and cokernel of the global boundary map mod p, solved from the local terms."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .algebra import rational_sqrt
from .curves import WeierstrassModel, minimal_model
from .errors import AssemblyInconsistency
from .galois import Tag, coinvariants
from .local_v import REAL, DimBound, LocalVReport, dim_v_place
from .reduction import is_semistable

__all__ = ["APPLICABLE", "NOT_APPLICABLE", "ExactSequenceReport", "assemble", "render_report", "solve_states"]

APPLICABLE = "Applicable"
NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class ExactSequenceReport:
    p: int
    status: str
    coinvariant_dim: int
    classification: str
    locals: tuple = ()
    local_sum: Optional[DimBound] = None
    ker: Optional[DimBound] = None
    coker: Optional[DimBound] = None
    states: tuple = ()
    trace: tuple = ()
    label: Optional[str] = None
    caveat: Optional[str] = field(default=None)

    def local(self, place) -> LocalVReport:
        for r in self.locals:
            if r.place == place:
                return r
        raise KeyError(place)

    @property
    def text(self) -> str:
        return render_report(self, "text")


def solve_states(local_sum: DimBound, c: int, cokers) -> list[tuple[int, int, int]]:
    """All (sum, ker, coker) with ker - coker = sum - c, 0 <= ker <= sum."""
    states = []
    for s in local_sum:
        for coker in cokers:
            ker = s - c + coker
            if 0 <= ker <= s:
                states.append((s, ker, coker))
    return states


def assemble(W: WeierstrassModel, p: int, label: Optional[str] = None, precision: Optional[int] = None) -> ExactSequenceReport:
    Wm = minimal_model(W)[0]
    co = coinvariants(Wm, p)
    c = co.dim
    tag = co.classification.tag
    trace = [f"classification {tag.value}, E(Q)[{p}] of dimension {co.classification.torsion_dim}"]
    trace.append(f"coinvariant dimension {c}")
    if co.caveat:
        trace.append(co.caveat)
    if c == 0:
        trace.append("coinvariants vanish: the exact sequence does not apply")
        return ExactSequenceReport(p, NOT_APPLICABLE, 0, tag.value, trace=tuple(trace), label=label, caveat=co.caveat)

    semistable, bad = is_semistable(Wm)
    places = sorted(bad)
    if p == 2 or not semistable:
        trace.append("route: bad places, good place above p, and the real place")
        if p not in bad:
            places.append(p)
        places.append(REAL)
    else:
        trace.append(f"route: bad places only (good term at {p} and real term vanish for odd p)")
    locals_ = tuple(dim_v_place(Wm, v, p, precision) for v in places)
    for r in locals_:
        trace.append(f"local {r.place}: {r.dim} via {r.method}")
        if r.method == "good-at-p:ordinary" and r.witnesses.get("full_local_2_torsion"):
            trace.append("local 2: full 2-torsion over Q_2 as well; the ordinary bound is used")
    total = DimBound(0, 0)
    for r in locals_:
        total = total + r.dim
    trace.append(f"local sum {total}")

    cokers = range(c + 1)
    if p != 2 and tag is Tag.SC:
        cokers = (0,)
        trace.append("coker = 0: split-Cartan-type image makes the global map surjective")
    elif p == 2 and co.classification.torsion_dim >= 1 and rational_sqrt(Wm.disc) is not None:
        cokers = (0,)
        trace.append("coker = 0: rational 2-torsion with square discriminant")
    states = solve_states(total, c, cokers)
    if not states:
        raise AssemblyInconsistency(
            f"no (ker, coker) solves ker - coker = sum - {c} with sum in {total} and coker in {list(cokers)}"
        )
    ker = DimBound(min(k for _, k, _ in states), max(k for _, k, _ in states))
    coker = DimBound(min(x for _, _, x in states), max(x for _, _, x in states))
    if not coker.is_exact:
        trace.append("coker undetermined: both cokernel values are consistent")
    trace.append(f"ker {ker}, coker {coker}")
    return ExactSequenceReport(
        p, APPLICABLE, c, tag.value, locals_, total, ker, coker, tuple(states), tuple(trace), label, co.caveat
    )


# ---------------------------------------------------------------------------
# rendering


def _place_name(place) -> str:
    return "R" if place == REAL else str(place)


def _render_text(r: ExactSequenceReport) -> str:
    p = r.p
    head = f"{r.label or 'E'}  p={p}  classification={r.classification}  dim E[{p}]_G={r.coinvariant_dim}"
    if r.status == NOT_APPLICABLE:
        return f"{head}\nnot applicable: the hypothesis E[{p}]_G != 0 fails (coinvariants are zero)"
    terms = []
    for loc in r.locals:
        name = f"Ker_{_place_name(loc.place)}" if loc.method.startswith("good-at-p") else f"V(E_{_place_name(loc.place)})/{p}"
        terms.append(f"{name}:{loc.dim}")
    target = f"Z/{p}" if r.coinvariant_dim == 1 else f"(Z/{p})^{r.coinvariant_dim}"
    lines = [
        head,
        f"0 → Ker:{r.ker} → {' ⊕ '.join(terms) or '0'} → {target} → Coker:{r.coker} → 0",
    ]
    for loc in r.locals:
        extra = ""
        if "m" in loc.witnesses:
            extra = f"  m={loc.witnesses['m']} unit={loc.witnesses['unit']}"
        lines.append(f"  {_place_name(loc.place):>6}  {loc.reduction:<24} dim {str(loc.dim):<6} {loc.method}{extra}")
    return "\n".join(lines)


def _as_json(r: ExactSequenceReport) -> dict:
    out = {
        "label": r.label,
        "p": r.p,
        "status": r.status,
        "classification": r.classification,
        "coinvariant_dim": r.coinvariant_dim,
        "locals": [],
        "ker_lo": r.ker.lo if r.ker else None,
        "ker_hi": r.ker.hi if r.ker else None,
        "coker_lo": r.coker.lo if r.coker else None,
        "coker_hi": r.coker.hi if r.coker else None,
        "trace": list(r.trace),
    }
    for loc in r.locals:
        row = {
            "place": _place_name(loc.place),
            "type": loc.reduction,
            "dim_lo": loc.dim.lo,
            "dim_hi": loc.dim.hi,
            "method": loc.method,
        }
        for key in ("m", "unit"):
            if key in loc.witnesses:
                row[key] = loc.witnesses[key]
        out["locals"].append(row)
    return out


def render_report(report: ExactSequenceReport, format: str = "text") -> str:
    if format == "text":
        return _render_text(report)
    if format == "json":
        return json.dumps(_as_json(report), ensure_ascii=False)
    raise ValueError(f"unknown format {format!r}")

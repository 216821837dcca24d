"""Curve files, per-curve analysis, and batch scans."""
from __future__ import annotations

import io
import logging
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Sequence, TextIO, Union

from .assemble import ExactSequenceReport, assemble
from .curves import SUPPORTED_P, WeierstrassModel, minimal_model
from .errors import AssemblyInconsistency, CurveFileError, SingularCurveError
from .galois import coinvariants, frobenius_screen
from .reduction import is_semistable

__all__ = [
    "CurveRecord",
    "CurveResult",
    "ScanSummary",
    "parse_curve_file",
    "parse_curve_text",
    "analyze",
    "scan",
    "bundled",
    "JOBS_ENV",
]

log = logging.getLogger(__name__)

JOBS_ENV = "SK1EC_JOBS"


@dataclass(frozen=True)
class CurveRecord:
    label: str
    ainvs: tuple

    @property
    def model(self) -> WeierstrassModel:
        return WeierstrassModel.from_ainvs(self.ainvs)


def _parse_line(line: str, lineno: int) -> Optional[CurveRecord]:
    text = line.split("#", 1)[0].strip()
    if not text:
        return None
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 6:
        raise CurveFileError(lineno, f"expected label and five coefficients, got {len(parts)} fields")
    label = parts[0]
    try:
        ainvs = tuple(Fraction(s) for s in parts[1:])
    except (ValueError, ZeroDivisionError) as exc:
        raise CurveFileError(lineno, f"bad coefficient: {exc}") from None
    try:
        WeierstrassModel.from_ainvs(ainvs)
    except SingularCurveError as exc:
        raise CurveFileError(lineno, str(exc)) from None
    return CurveRecord(label, ainvs)


def parse_curve_text(stream: TextIO, strict: bool = True) -> list[CurveRecord]:
    records = []
    for lineno, line in enumerate(stream, 1):
        try:
            rec = _parse_line(line, lineno)
        except CurveFileError as exc:
            if strict:
                raise
            log.warning("skipping %s", exc)
            continue
        if rec is not None:
            records.append(rec)
    return records


def parse_curve_file(source: Union[str, Path, TextIO], strict: bool = True) -> list[CurveRecord]:
    """Read ``label,a1,a2,a3,a4,a6`` lines; ``#`` starts a comment."""
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as fh:
            return parse_curve_text(fh, strict)
    return parse_curve_text(source, strict)


def bundled(name: str) -> list[CurveRecord]:
    """A curve file shipped with the package: ``reference_curves`` or ``smoke_corpus``."""
    data = resources.files("sk1ec").joinpath("data", f"{name}.csv").read_text(encoding="utf-8")
    return parse_curve_text(io.StringIO(data))


# ---------------------------------------------------------------------------


def analyze(record: CurveRecord, ps: Sequence[int] = SUPPORTED_P, precision: Optional[int] = None) -> dict[int, ExactSequenceReport]:
    out = {}
    for p in ps:
        try:
            out[p] = assemble(record.model, p, record.label, precision)
        except AssemblyInconsistency as exc:
            raise AssemblyInconsistency(f"curve {record.label}: {exc}") from exc
        except ValueError as exc:
            raise ValueError(f"curve {record.label}: {exc}") from exc
    return out


@dataclass(frozen=True)
class CurveResult:
    label: str
    semistable: bool
    coinvariants: dict = field(default_factory=dict)
    classifications: dict = field(default_factory=dict)
    screened: dict = field(default_factory=dict)
    reports: dict = field(default_factory=dict)
    error: Optional[str] = None
    inconsistent: bool = False

    @property
    def nonzero(self) -> bool:
        return any(self.coinvariants.values())


@dataclass
class ScanSummary:
    total: int = 0
    semistable: int = 0
    nonzero: int = 0
    nonzero_semistable: int = 0
    per_p: dict = field(default_factory=dict)
    per_classification: dict = field(default_factory=dict)
    screened_out: int = 0
    errors: int = 0

    def as_dict(self) -> dict:
        return {
            "total": self.total,
            "semistable": self.semistable,
            "nonzero": self.nonzero,
            "nonzero_semistable": self.nonzero_semistable,
            "per_p": {str(p): n for p, n in sorted(self.per_p.items())},
            "per_classification": {f"{p}:{t}": n for (p, t), n in sorted(self.per_classification.items())},
            "screened_out": self.screened_out,
            "errors": self.errors,
        }


def _scan_one(args) -> CurveResult:
    record, ps, summary_only, screen_bound = args
    try:
        W = minimal_model(record.model)[0]
        semistable, _ = is_semistable(W)
        dims, tags, screened, reports = {}, {}, {}, {}
        for p in ps:
            screen = frobenius_screen(W, p, screen_bound)
            if not screen:
                dims[p], tags[p], screened[p] = 0, "Screened", screen.witness
                continue
            co = coinvariants(W, p)
            dims[p], tags[p] = co.dim, co.classification.tag.value
            if not summary_only and co.dim:
                reports[p] = assemble(W, p, record.label)
        return CurveResult(record.label, semistable, dims, tags, screened, reports)
    except Exception as exc:
        return CurveResult(record.label, False, error=f"{type(exc).__name__}: {exc}",
                           inconsistent=isinstance(exc, AssemblyInconsistency))


def scan(
    records: Iterable[CurveRecord],
    ps: Sequence[int] = SUPPORTED_P,
    jobs: Optional[int] = None,
    summary_only: bool = False,
    screen_bound: int = 100,
) -> tuple[ScanSummary, list[CurveResult]]:
    """Screen then classify every record; results keep input order.

    Duplicate records are counted once per occurrence.
    """
    records = list(records)
    if jobs is None:
        jobs = int(os.environ.get(JOBS_ENV, "1") or 1)
    tasks = [(r, tuple(ps), summary_only, screen_bound) for r in records]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan_one, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        results = [_scan_one(t) for t in tasks]

    summary = ScanSummary(per_p={p: 0 for p in ps})
    classes = Counter()
    for res in results:
        summary.total += 1
        if res.error:
            summary.errors += 1
            continue
        summary.semistable += res.semistable
        summary.nonzero += res.nonzero
        summary.nonzero_semistable += res.nonzero and res.semistable
        summary.screened_out += len(res.screened)
        for p, d in res.coinvariants.items():
            if d:
                summary.per_p[p] += 1
            classes[(p, res.classifications[p])] += 1
    summary.per_classification = dict(classes)
    return summary, results

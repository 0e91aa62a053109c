"""Batch screening of code files and report emission."""

from __future__ import annotations

import csv
import io
import json
import logging
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Union

from . import distill
from .classical import (
    TERNARY_HEADER,
    ClassicalTernaryCode,
    is_self_orthogonal,
    parse_classical,
    parse_magma_listing,
)
from .enumerators import (
    DEFAULT_MEM_CAP,
    WeightEnumerator,
    distance_from_enums,
    fast_path_bytes,
    macwilliams,
    simple_wenum_css_fast,
    simple_wenum_naive,
)
from .errors import (
    InvalidInputError,
    MSDError,
    NotSelfOrthogonalError,
    ResourceLimitError,
    UnsupportedError,
)
from .stabilizer import STABILIZER_HEADER, StabilizerCode, parse_stabilizer, shorten_all

log = logging.getLogger(__name__)

Code = Union[ClassicalTernaryCode, StabilizerCode]

CSV_COLUMNS = (
    "id", "n", "k", "distance", "b_num", "b_den", "distills", "classification", "delta",
    "leading_num", "leading_den", "threshold", "success_num", "success_den",
    "enumerator_digest", "wall_time_ms",
)


@dataclass(frozen=True)
class IngestError:
    source: str
    line: int | None
    message: str

    def __str__(self):
        where = self.source if self.line is None else f"{self.source}:{self.line}"
        return f"{where}: {self.message}"


@dataclass
class IngestResult:
    codes: list
    errors: list[IngestError] = field(default_factory=list)


def _split_documents(text: str, header: str):
    """Split a file holding several documents that each start with ``header``."""
    docs, current, start = [], [], 1
    for lineno, line in enumerate(text.splitlines(), 1):
        if line.split("#", 1)[0].strip() == header and any(
                s.split("#", 1)[0].strip() for s in current):
            docs.append((start, "\n".join(current)))
            current, start = [], lineno
        if not current:
            start = lineno
        current.append(line)
    if any(s.split("#", 1)[0].strip() for s in current):
        docs.append((start, "\n".join(current)))
    return docs


def _first_content_line(text: str) -> str:
    for line in text.splitlines():
        s = line.split("#", 1)[0].strip()
        if s:
            return s
    return ""


def _ingest_file(path: Path, result: IngestResult) -> None:
    src = str(path)
    try:
        text = path.read_text()
    except (OSError, UnicodeDecodeError) as exc:
        result.errors.append(IngestError(src, None, f"unreadable: {exc}"))
        return
    head = _first_content_line(text)
    if head == TERNARY_HEADER or head == STABILIZER_HEADER:
        parse = parse_classical if head == TERNARY_HEADER else parse_stabilizer
        for offset, doc in _split_documents(text, head):
            try:
                code = parse(doc, source=src)
                if isinstance(code, ClassicalTernaryCode) and not is_self_orthogonal(code):
                    raise NotSelfOrthogonalError(f"{code.id}: not self-orthogonal")
            except MSDError as exc:
                line = getattr(exc, "line", None)
                line = offset + line - 1 if line is not None else offset
                result.errors.append(IngestError(src, line, getattr(exc, "message", str(exc))))
                continue
            result.codes.append(code)
        return
    stem = path.stem
    found = parse_magma_listing(text, source=src, prefix=stem)
    if not found:
        result.errors.append(IngestError(src, None, "no recognisable code in file"))
    for item, lineno in found:
        if isinstance(item, Exception):
            result.errors.append(IngestError(src, lineno, getattr(item, "message", str(item))))
        elif not is_self_orthogonal(item):
            result.errors.append(IngestError(src, lineno, f"{item.id}: not self-orthogonal"))
        else:
            result.codes.append(item)


def ingest(path) -> IngestResult:
    """Read every code under ``path`` (a file or a directory, recursively).

    Malformed entries become :class:`IngestError` records; the rest load.
    """
    root = Path(path)
    if not root.exists():
        raise InvalidInputError(f"{root}: no such file or directory")
    files = sorted(p for p in root.rglob("*") if p.is_file()) if root.is_dir() else [root]
    result = IngestResult([])
    for f in files:
        if f.name.startswith("."):
            continue
        _ingest_file(f, result)
    for err in result.errors:
        log.warning("skipped %s", err)
    if not result.codes:
        raise InvalidInputError(f"{root}: no valid codes found")
    return result


# -- screening ----------------------------------------------------------------

@dataclass(frozen=True)
class ScreeningRecord:
    id: str
    n: int
    k: int
    distance: int | None
    b_at_minus_half: Fraction
    distills: bool
    classification: str
    delta: int | None
    leading: Fraction | None
    threshold: float
    success_at_zero: Fraction
    enumerator_digest: str
    wall_time_ms: int = 0

    def csv_row(self) -> list[str]:
        def opt(x):
            return "" if x is None else str(x)
        lead = self.leading
        lead_num = None if lead is None else lead.numerator
        lead_den = None if lead is None else lead.denominator
        return [
            self.id, str(self.n), str(self.k), opt(self.distance),
            str(self.b_at_minus_half.numerator), str(self.b_at_minus_half.denominator),
            "true" if self.distills else "false", self.classification, opt(self.delta),
            opt(lead_num), opt(lead_den),
            f"{self.threshold:.9f}",
            str(self.success_at_zero.numerator), str(self.success_at_zero.denominator),
            self.enumerator_digest, str(self.wall_time_ms),
        ]

    def to_json(self) -> dict:
        def rat(q):
            return None if q is None else {"num": str(q.numerator), "den": str(q.denominator)}
        return {
            "id": self.id, "n": self.n, "k": self.k, "distance": self.distance,
            "b_at_minus_half": rat(self.b_at_minus_half), "distills": self.distills,
            "classification": self.classification, "delta": self.delta,
            "leading": rat(self.leading), "threshold": f"{self.threshold:.9f}",
            "success_at_zero": rat(self.success_at_zero),
            "enumerator_digest": self.enumerator_digest, "wall_time_ms": self.wall_time_ms,
        }

    @classmethod
    def from_json(cls, d: dict) -> ScreeningRecord:
        def rat(q):
            return None if q is None else Fraction(int(q["num"]), int(q["den"]))
        return cls(
            id=d["id"], n=d["n"], k=d["k"], distance=d["distance"],
            b_at_minus_half=rat(d["b_at_minus_half"]), distills=d["distills"],
            classification=d["classification"], delta=d["delta"], leading=rat(d["leading"]),
            threshold=float(d["threshold"]), success_at_zero=rat(d["success_at_zero"]),
            enumerator_digest=d["enumerator_digest"], wall_time_ms=d["wall_time_ms"],
        )


def enumerator_for(code: Code, mem_cap: int = DEFAULT_MEM_CAP) -> WeightEnumerator:
    """A(z) of an ``[[n, 1]]`` code, through the fast path for classical input."""
    if isinstance(code, ClassicalTernaryCode):
        if code.n % 2 == 0 or 2 * code.k != code.n - 1:
            raise UnsupportedError(
                f"{code.id}: [{code.n},{code.k}] does not give an [[n,1]] CSS code")
        return simple_wenum_css_fast(code, mem_cap=mem_cap)
    if code.k != 1:
        raise UnsupportedError(f"{code.id}: screening needs k=1, got k={code.k}")
    return simple_wenum_naive(code)


def screen_enumerator(a: WeightEnumerator, id: str, k: int = 1) -> ScreeningRecord:
    start = time.perf_counter()
    b = macwilliams(a, a.n, k)
    prof = distill.profile(a, b, k)
    if prof.classification.startswith("order-") and a.n % 2 and prof.conditions.order1:
        assert prof.delta >= 3, f"{id}: odd-length code with 3A'+B'=0 must have delta >= 3"
    return ScreeningRecord(
        id=id, n=a.n, k=k, distance=distance_from_enums(a, b),
        b_at_minus_half=prof.b_at_minus_half, distills=prof.distills,
        classification=prof.classification, delta=prof.delta, leading=prof.leading,
        threshold=round(prof.threshold, 9), success_at_zero=prof.success_at_zero,
        enumerator_digest=a.digest(),
        wall_time_ms=int(round((time.perf_counter() - start) * 1000)),
    )


def screen(code: Code, mem_cap: int = DEFAULT_MEM_CAP) -> ScreeningRecord:
    """Enumerator, MacWilliams, conditions, map, exponent, threshold, success."""
    start = time.perf_counter()
    try:
        a = enumerator_for(code, mem_cap)
    except ResourceLimitError as exc:
        raise ResourceLimitError(f"{code.id}: {exc}") from exc
    rec = screen_enumerator(a, code.id)
    return replace(rec, wall_time_ms=int(round((time.perf_counter() - start) * 1000)))


# -- reports ------------------------------------------------------------------

@dataclass
class SearchReport:
    records: list[ScreeningRecord]
    summary: dict[str, int]
    groups: dict[str, list[str]]
    errors: list[str] = field(default_factory=list)

    @property
    def distinct_enumerators(self) -> int:
        return len(self.groups)

    def to_json(self) -> dict:
        return {
            "records": [r.to_json() for r in self.records],
            "summary": self.summary,
            "distinct_enumerators": self.distinct_enumerators,
            "groups": self.groups,
            "errors": self.errors,
        }

    @classmethod
    def from_json(cls, d: dict) -> SearchReport:
        return cls([ScreeningRecord.from_json(r) for r in d["records"]],
                   dict(d["summary"]), {k: list(v) for k, v in d["groups"].items()},
                   list(d.get("errors", [])))


def _order_key(rec: ScreeningRecord):
    return rec.n, -rec.threshold, rec.id


def dedupe(records, errors=()) -> SearchReport:
    """Group by enumerator digest; canonical order is (n, -threshold, id)."""
    ordered = sorted(records, key=_order_key)
    groups: dict[str, list[str]] = {}
    for rec in ordered:
        groups.setdefault(rec.enumerator_digest, []).append(rec.id)
    summary = dict(sorted(Counter(r.classification for r in ordered).items()))
    return SearchReport(ordered, summary, groups, sorted(errors))


def report_csv(report: SearchReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in report.records:
        writer.writerow(rec.csv_row())
    return buf.getvalue()


def write_report(report: SearchReport, path, format: str = "csv") -> None:
    if format == "csv":
        text = report_csv(report)
    elif format == "json":
        text = json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n"
    else:
        raise InvalidInputError(f"unknown report format {format!r}")
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise InvalidInputError(f"cannot write report to {path}: {exc}") from exc


def read_report(path) -> SearchReport:
    return SearchReport.from_json(json.loads(Path(path).read_text()))


# -- batch driver -------------------------------------------------------------

def _screen_job(args):
    code, mem_cap = args
    try:
        return screen(code, mem_cap), None
    except ResourceLimitError as exc:
        return None, f"{code.id}: resource limit: {exc}"
    except MSDError as exc:
        return None, f"{code.id}: {exc}"


def _job_bytes(code: Code) -> int:
    if isinstance(code, ClassicalTernaryCode):
        return fast_path_bytes(code.n)
    return 0


def screen_all(codes, jobs: int = 1, mem_cap: int = DEFAULT_MEM_CAP, omit_timing=False):
    """Screen codes in a worker pool.

    Jobs whose fast-path allocation would push ``jobs`` concurrent workers
    over ``mem_cap`` run afterwards, one at a time. Returns ``(records,
    errors, resource_errors)``.
    """
    jobs = max(1, int(jobs))
    small = [c for c in codes if _job_bytes(c) * jobs <= mem_cap]
    large = [c for c in codes if _job_bytes(c) * jobs > mem_cap]
    outcomes = []
    if jobs > 1 and len(small) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes += list(pool.map(_screen_job, [(c, mem_cap) for c in small]))
    else:
        outcomes += [_screen_job((c, mem_cap)) for c in small]
    outcomes += [_screen_job((c, mem_cap)) for c in large]
    records, errors, resource = [], [], 0
    for rec, err in outcomes:
        if rec is not None:
            if omit_timing:
                rec = replace(rec, wall_time_ms=0)
            records.append(rec)
        else:
            errors.append(err)
            resource += "resource limit" in err
    return records, errors, resource


def shortened_codes(states, all_rotations: bool = True, coords=None):
    """Every distinct-enumerator ``[[n-1, 1]]`` code obtained by shortening ``states``."""
    seen = set()
    out = []
    for state in states:
        if not isinstance(state, StabilizerCode) or state.k != 0:
            continue
        for _, _, code in shorten_all(state, coords, all_rotations):
            if isinstance(code, Exception):
                continue
            digest = simple_wenum_naive(code).digest()
            if digest not in seen:
                seen.add(digest)
                out.append(code)
    return out


def search(path, jobs: int = 1, mem_cap: int = DEFAULT_MEM_CAP, shorten: bool = False,
           all_rotations: bool = True, omit_timing: bool = False):
    """Ingest, screen and dedupe. Returns ``(report, resource_error_count)``."""
    ingested = ingest(path)
    codes = ingested.codes
    if shorten:
        codes = shortened_codes(codes, all_rotations)
    records, errors, resource = screen_all(codes, jobs, mem_cap, omit_timing)
    errors += [str(e) for e in ingested.errors]
    return dedupe(records, errors), resource


def default_jobs() -> int:
    return os.cpu_count() or 1

"""Empirical survey of #E(F_p) over all primes up to a bound."""

from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .arith import iter_prime_segments
from .conjecture import CurveConjecture, curve_conjecture
from .count import compute_trace, is_anomalous
from .curve import WeierstrassCurve, reduce_mod_p
from .gl2 import special_fraction

CSV_COLUMNS = ("p", "ap", "cardinality", "gcd_ok", "re_member", "anomalous", "method")
EVENT_ELLS = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31)
WARN_SIGMA = 3.0
FAIL_SIGMA = 4.0
# below this many expected events (or non-events) the normal approximation is not used
MIN_EXPECTED = 10
CHUNK = 4096


@dataclass(frozen=True)
class PrimeRecord:
    p: int
    ap: int
    cardinality: int
    gcd_ok: bool
    re_member: bool
    anomalous: bool
    method: str

    def __post_init__(self) -> None:
        if self.cardinality != self.p + 1 - self.ap or self.ap * self.ap >= 4 * self.p:
            raise AssertionError(f"inconsistent record at p={self.p}")

    def csv_row(self) -> list[str]:
        return [str(self.p), str(self.ap), str(self.cardinality), str(int(self.gcd_ok)),
                str(int(self.re_member)), str(int(self.anomalous)), self.method]


@dataclass(frozen=True)
class SurveyConfig:
    seed: int = 0
    threads: int = 1
    conjecture_limit: int = 10**6


@dataclass(frozen=True)
class LocalEventRow:
    ell: int
    events: int
    n: int
    predicted: Fraction

    @property
    def observed(self) -> Fraction:
        return Fraction(self.events, self.n) if self.n else Fraction(0)

    @property
    def std_error(self) -> float:
        q = float(self.predicted)
        return math.sqrt(q * (1 - q) / self.n) if self.n else math.inf

    @property
    def z(self) -> float:
        return (float(self.observed) - float(self.predicted)) / self.std_error

    @property
    def testable(self) -> bool:
        q = float(self.predicted)
        return self.n * q >= MIN_EXPECTED and self.n * (1 - q) >= MIN_EXPECTED

    @property
    def status(self) -> str:
        if not self.testable:
            return "skip"
        z = abs(self.z)
        if z >= FAIL_SIGMA:
            return "fail"
        return "warn" if z >= WARN_SIGMA else "ok"


@dataclass(frozen=True)
class SurveyReport:
    curve: WeierstrassCurve
    limit: int
    records: tuple[PrimeRecord, ...]
    total_primes: int
    conjecture: CurveConjecture | None = None
    good_primes: int = field(init=False)
    gcd_ok: int = field(init=False)
    re_member: int = field(init=False)
    anomalous: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "good_primes", len(self.records))
        object.__setattr__(self, "gcd_ok", sum(r.gcd_ok for r in self.records))
        object.__setattr__(self, "re_member", sum(r.re_member for r in self.records))
        object.__setattr__(self, "anomalous", sum(r.anomalous for r in self.records))

    @property
    def empirical_density(self) -> Fraction:
        return Fraction(self.gcd_ok, self.good_primes) if self.good_primes else Fraction(0)

    @property
    def event_table(self) -> list[LocalEventRow]:
        return local_event_table(self)

    @property
    def hard_failure(self) -> bool:
        return any(row.status == "fail" for row in self.event_table)


def make_record(p: int, ap: int, method: str) -> PrimeRecord:
    n = p + 1 - ap
    anomalous = ap == 1 if p >= 7 else n % p == 0
    gcd_ok = math.gcd(p - 1, n) == 1
    return PrimeRecord(p, ap, n, gcd_ok, gcd_ok and not anomalous, anomalous, method)


def _survey_chunk(args) -> list[PrimeRecord]:
    ainvs, primes, seed = args
    curve = WeierstrassCurve(*ainvs)
    out = []
    for p in primes:
        if curve.delta % p == 0:
            continue
        tr = compute_trace(reduce_mod_p(curve, p), seed=f"{seed}:{curve.label}:{p}")
        rec = make_record(p, tr.ap, str(tr.method))
        if rec.anomalous != is_anomalous(tr):
            raise AssertionError(f"anomalous predicate mismatch at p={p}")
        out.append(rec)
    return out


def run_survey(curve: WeierstrassCurve, limit: int,
               config: SurveyConfig = SurveyConfig(), with_conjecture: bool = True) -> SurveyReport:
    """Trace every good prime p <= limit and aggregate.

    Primes dividing the discriminant of the given model are skipped. Work
    is split into contiguous chunks; each prime is seeded from
    (seed, curve, p) alone so output does not depend on the split.
    """
    if limit < 100:
        raise ValueError("limit must be at least 100")
    primes = [int(p) for seg in iter_prime_segments(limit) for p in seg]
    chunks = [(curve.ainvs, primes[i : i + CHUNK], config.seed)
              for i in range(0, len(primes), CHUNK)]
    if config.threads > 1:
        with ProcessPoolExecutor(max_workers=config.threads) as pool:
            parts = list(pool.map(_survey_chunk, chunks))
    else:
        parts = [_survey_chunk(c) for c in chunks]
    records = tuple(r for part in parts for r in part)
    conj = curve_conjecture(curve, config.conjecture_limit) if with_conjecture else None
    return SurveyReport(curve, limit, records, len(primes), conj)


def local_event_table(report: SurveyReport, ells: Iterable[int] = EVENT_ELLS) -> list[LocalEventRow]:
    """Per-l rate of good p with p = 1 mod l and l | #E(F_p), against the prediction."""
    rows = []
    for ell in ells:
        events = sum(1 for r in report.records if r.p % ell == 1 and r.cardinality % ell == 0)
        rows.append(LocalEventRow(ell, events, report.good_primes, special_fraction(ell)))
    return rows


def _frac(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


def report_json(report: SurveyReport) -> dict:
    return {
        "curve": report.curve.label,
        "X": report.limit,
        "counts": {
            "total_primes": report.total_primes,
            "good_primes": report.good_primes,
            "gcd_ok": report.gcd_ok,
            "re_member": report.re_member,
            "anomalous": report.anomalous,
        },
        "empirical_density": _frac(report.empirical_density),
        "local_events": [
            {
                "ell": row.ell,
                "events": row.events,
                "observed": _frac(row.observed),
                "predicted": _frac(row.predicted),
                "z": row.z if row.n else None,
                "status": row.status,
            }
            for row in report.event_table
        ],
        "conjecture": report.conjecture.to_json() if report.conjecture else None,
    }


def emit_csv(report: SurveyReport, path) -> None:
    try:
        with open(path, "w", newline="", encoding="ascii") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for rec in report.records:
                writer.writerow(rec.csv_row())
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc}") from exc


def emit_json(report: SurveyReport, path) -> None:
    try:
        with open(path, "w", encoding="ascii") as fh:
            json.dump(report_json(report), fh, indent=2)
            fh.write("\n")
    except OSError as exc:
        raise OSError(f"cannot write JSON to {path}: {exc}") from exc


def read_csv(path) -> list[PrimeRecord]:
    try:
        with open(path, newline="", encoding="ascii") as fh:
            rows = list(csv.DictReader(fh))
    except OSError as exc:
        raise OSError(f"cannot read CSV {path}: {exc}") from exc
    return [
        PrimeRecord(int(r["p"]), int(r["ap"]), int(r["cardinality"]), r["gcd_ok"] == "1",
                    r["re_member"] == "1", r["anomalous"] == "1", r["method"])
        for r in rows
    ]


def aggregate(records: Sequence[PrimeRecord]) -> dict:
    return {
        "good_primes": len(records),
        "gcd_ok": sum(r.gcd_ok for r in records),
        "re_member": sum(r.re_member for r in records),
        "anomalous": sum(r.anomalous for r in records),
    }

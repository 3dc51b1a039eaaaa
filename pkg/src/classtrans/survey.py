"""Exhaustive surveys over all pairs of class transpositions up to a modulus bound.

Every unordered pair (a transposition paired with itself included) is sent
through the oracle once; ``ord(s*t) == ord(t*s)`` makes ordered pairs
redundant. Work is split into contiguous chunks of the pair list so that
partial histograms can be merged in any order without changing the result.
"""
from __future__ import annotations

import csv
import json
import logging
import math
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import gcd
from typing import Callable, Iterable, Optional

from . import certificates as cert
from .oracle import (
    FINITE,
    INCONCLUSIVE,
    INFINITE_CERTIFIED,
    INFINITE_HEURISTIC,
    OracleConfig,
    OrderVerdict,
    order_of_product,
)
from .residue import ClassTransposition, ResidueClass

log = logging.getLogger(__name__)

KOHL_ORDERS = frozenset({1, 2, 3, 4, 6, 8, 10, 12, 15, 20, 24, 30, 40, 42, 60, 84, 120, 168, 420})

CSV_COLUMNS = [
    "m1", "r1", "m2", "r2", "m3", "r3", "m4", "r4",
    "horizontal", "common_vertex", "equal_residue", "equal_modulus",
    "order", "certified", "method",
]


@dataclass(frozen=True)
class SurveyConfig:
    mod_max: int
    oracle: OracleConfig = OracleConfig()
    pair_filter: Optional[cert.PairClass] = None
    parallelism: int = 1

    def __post_init__(self):
        if self.mod_max < 2:
            raise ValueError("mod_max must be >= 2")


def enumerate_class_transpositions(mod_max: int) -> list[ClassTransposition]:
    """All valid transpositions with moduli in ``2..mod_max``, in canonical order."""
    if mod_max < 2:
        raise ValueError("mod_max must be >= 2")
    out = []
    for m1 in range(2, mod_max + 1):
        for m2 in range(m1, mod_max + 1):
            g = gcd(m1, m2)
            for r1 in range(m1):
                for r2 in range(m2):
                    if (r1 - r2) % g == 0 or (m1, r1) >= (m2, r2):
                        continue
                    out.append(ClassTransposition(ResidueClass(m1, r1), ResidueClass(m2, r2)))
    return out


def enumerate_pairs(mod_max: int, pair_filter: Optional[cert.PairClass] = None):
    """Unordered pairs ``(i, j, tau_i, tau_j)`` with ``i <= j`` passing the filter."""
    taus = enumerate_class_transpositions(mod_max)
    for i, t1 in enumerate(taus):
        for j in range(i, len(taus)):
            t2 = taus[j]
            if pair_filter is None or cert.classify_pair(t1, t2).matches(pair_filter):
                yield i, j, t1, t2


@dataclass
class PairRecord:
    index: tuple[int, int]
    tau1: ClassTransposition
    tau2: ClassTransposition
    flags: cert.PairClass
    verdict: Optional[OrderVerdict]
    error: Optional[str] = None

    def csv_row(self) -> dict:
        row = {
            "m1": self.tau1.m1, "r1": self.tau1.r1, "m2": self.tau1.m2, "r2": self.tau1.r2,
            "m3": self.tau2.m1, "r3": self.tau2.r1, "m4": self.tau2.m2, "r4": self.tau2.r2,
        }
        row.update({f: int(getattr(self.flags, f)) for f in cert.PairClass.FLAGS})
        if self.verdict is None:
            row.update(order="error", certified=0, method=self.error or "")
        else:
            rep = self.verdict.to_report()
            row.update(order=rep["order"], certified=int(rep["certified"]), method="|".join(rep["method"]))
        return row


@dataclass
class OrderHistogram:
    finite_counts: Counter = field(default_factory=Counter)
    infinite_certified: int = 0
    infinite_heuristic: int = 0
    inconclusive: int = 0
    errors: int = 0
    # order -> (pair index, "[..]", "[..]"); the smallest index wins on merge
    realizations: dict = field(default_factory=dict)
    inconclusive_pairs: list = field(default_factory=list)
    inconsistent_pairs: list = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(self.finite_counts.values()) + self.infinite_certified + self.infinite_heuristic + self.inconclusive + self.errors

    def add(self, rec: PairRecord) -> None:
        label = (rec.index, str(rec.tau1), str(rec.tau2))
        v = rec.verdict
        if v is None:
            self.errors += 1
            return
        if not v.consistent:
            self.inconsistent_pairs.append(label)
        if v.kind == FINITE:
            self.finite_counts[v.order] += 1
            if v.order not in self.realizations or label < self.realizations[v.order]:
                self.realizations[v.order] = label
        elif v.kind == INFINITE_CERTIFIED:
            self.infinite_certified += 1
        elif v.kind == INFINITE_HEURISTIC:
            self.infinite_heuristic += 1
        else:
            self.inconclusive += 1
            self.inconclusive_pairs.append(label)

    def merge(self, other: "OrderHistogram") -> "OrderHistogram":
        out = OrderHistogram(
            self.finite_counts + other.finite_counts,
            self.infinite_certified + other.infinite_certified,
            self.infinite_heuristic + other.infinite_heuristic,
            self.inconclusive + other.inconclusive,
            self.errors + other.errors,
            dict(self.realizations),
            sorted(self.inconclusive_pairs + other.inconclusive_pairs),
            sorted(self.inconsistent_pairs + other.inconsistent_pairs),
        )
        for order, label in other.realizations.items():
            if order not in out.realizations or label < out.realizations[order]:
                out.realizations[order] = label
        return out

    def to_json(self) -> dict:
        return {
            "finite_counts": {str(k): v for k, v in sorted(self.finite_counts.items())},
            "infinite_certified": self.infinite_certified,
            "infinite_heuristic": self.infinite_heuristic,
            "inconclusive": self.inconclusive,
            "errors": self.errors,
            "realizations": {str(k): [v[1], v[2]] for k, v in sorted(self.realizations.items())},
            "inconclusive_pairs": [[v[1], v[2]] for v in self.inconclusive_pairs],
            "inconsistent_pairs": [[v[1], v[2]] for v in self.inconsistent_pairs],
        }


def evaluate_pair(i: int, j: int, t1, t2, oracle_cfg: OracleConfig) -> PairRecord:
    flags = cert.classify_pair(t1, t2)
    try:
        verdict = order_of_product(t1, t2, oracle_cfg)
    except Exception as exc:  # recorded per pair, never fatal for the survey
        log.warning("pair %s %s failed: %s", t1, t2, exc)
        return PairRecord((i, j), t1, t2, flags, None, f"{type(exc).__name__}: {exc}")
    return PairRecord((i, j), t1, t2, flags, verdict)


def _run_chunk(args) -> tuple[OrderHistogram, list[PairRecord]]:
    pairs, oracle_cfg, keep = args
    hist, records = OrderHistogram(), []
    for i, j, t1, t2 in pairs:
        rec = evaluate_pair(i, j, t1, t2, oracle_cfg)
        hist.add(rec)
        if keep:
            records.append(rec)
    return hist, records


def _chunks(items: list, size: int) -> Iterable[list]:
    for k in range(0, len(items), size):
        yield items[k:k + size]


def run_survey(cfg: SurveyConfig, *, keep_records: bool = False) -> tuple[OrderHistogram, list[PairRecord]]:
    """Histogram plus (optionally) every per-pair record, sorted by pair index."""
    pairs = list(enumerate_pairs(cfg.mod_max, cfg.pair_filter))
    workers = max(1, cfg.parallelism)
    jobs = [(chunk, cfg.oracle, keep_records) for chunk in _chunks(pairs, max(1, math.ceil(len(pairs) / (8 * workers))))]
    hist, records = OrderHistogram(), []
    if workers == 1:
        results = map(_run_chunk, jobs)
        for h, recs in results:
            hist = hist.merge(h)
            records.extend(recs)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for h, recs in pool.map(_run_chunk, jobs):
                hist = hist.merge(h)
                records.extend(recs)
    records.sort(key=lambda r: r.index)
    return hist, records


def survey_orders(cfg: SurveyConfig) -> OrderHistogram:
    return run_survey(cfg)[0]


@dataclass
class KohlCheckReport:
    all_in_kohl_set: bool
    all_divide_840: bool
    violations: list = field(default_factory=list)


def check_kohl_set(h: OrderHistogram) -> KohlCheckReport:
    violations, in_set, divides = [], True, True
    for order in sorted(h.finite_counts):
        bad_set, bad_div = order not in KOHL_ORDERS, 840 % order != 0
        in_set &= not bad_set
        divides &= not bad_div
        if bad_set or bad_div:
            _, s1, s2 = h.realizations.get(order, (None, "?", "?"))
            violations.append(((s1, s2), order))
    return KohlCheckReport(in_set, divides, violations)


# -- theorem cross-validation ---------------------------------------------------------

Certifier = Callable[[ClassTransposition, ClassTransposition], Optional[cert.OrderCertificate]]


def _common_vertex(t1, t2):
    if cert.classify_pair(t1, t2).common_vertex:
        return cert.common_vertex_order(t1, t2)
    return None


def _equal_residue(t1, t2):
    if cert.classify_pair(t1, t2).equal_residue:
        return cert.equal_residue_infinite(t1, t2)
    return None


def _equal_modulus(t1, t2):
    if cert.classify_pair(t1, t2).equal_modulus:
        return cert.equal_modulus_allowed_set(t1, t2)
    return None


def _horizontal(t1, t2):
    if cert.classify_pair(t1, t2).horizontal:
        return cert.horizontal_order_set(t1, t2)
    return None


DEFAULT_CERTIFIERS: tuple[Certifier, ...] = (_common_vertex, _equal_residue, _equal_modulus, _horizontal)


@dataclass(frozen=True)
class Discrepancy:
    tau1: ClassTransposition
    tau2: ClassTransposition
    certificate: cert.OrderCertificate
    verdict_kind: str
    verdict_order: Optional[int]

    def __str__(self):
        found = self.verdict_order if self.verdict_kind == FINITE else self.verdict_kind
        return f"{self.tau1} {self.tau2}: {self.certificate.source} claims {self.certificate.to_report()['verdict']}, oracle found {found}"


def theorem_consistency_sweep(cfg: SurveyConfig, certifiers: Iterable[Certifier] = DEFAULT_CERTIFIERS) -> list[Discrepancy]:
    """Compare certificates against certificate-free oracle verdicts.

    A finite claim must be matched exactly, an infinite claim must not meet a
    finite order, and an allowed set must contain any finite order found.
    Heuristic and inconclusive oracle verdicts never contradict a claim.
    """
    certifiers = tuple(certifiers)
    out = []
    for _, _, t1, t2 in enumerate_pairs(cfg.mod_max, cfg.pair_filter):
        claims = [c for c in (f(t1, t2) for f in certifiers) if c is not None]
        if not claims:
            continue
        v = order_of_product(t1, t2, cfg.oracle, use_certificates=False)
        for c in claims:
            if c.kind == "finite":
                ok = (v.kind == FINITE and v.order == c.order) or v.kind == INCONCLUSIVE
            elif v.kind == FINITE:
                ok = c.admits(v.order)
            else:
                ok = True
            if not ok:
                out.append(Discrepancy(t1, t2, c, v.kind, v.order))
    return out


# -- reports ------------------------------------------------------------------------------

def write_csv(path, records: Iterable[PairRecord]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for rec in records:
            writer.writerow(rec.csv_row())


def summary_json(cfg: SurveyConfig, hist: OrderHistogram, kohl: KohlCheckReport, discrepancies, runtime_seconds: float) -> dict:
    oracle = asdict(cfg.oracle)
    return {
        "config": {
            "mod_max": cfg.mod_max,
            "oracle": oracle,
            "pair_filter": cfg.pair_filter.names() if cfg.pair_filter else [],
            "parallelism": cfg.parallelism,
        },
        "histogram": hist.to_json(),
        "kohl_check": {
            "all_in_kohl_set": kohl.all_in_kohl_set,
            "all_divide_840": kohl.all_divide_840,
            "violations": [[list(p), o] for p, o in kohl.violations],
        },
        "discrepancies": [str(d) for d in discrepancies],
        "runtime_seconds": runtime_seconds,
    }


def write_json(path, summary: dict) -> None:
    with open(path, "w") as fh:
        json.dump(summary, fh, indent=2)


def timed_survey(cfg: SurveyConfig, *, keep_records: bool = False):
    start = time.perf_counter()
    hist, records = run_survey(cfg, keep_records=keep_records)
    return hist, records, time.perf_counter() - start

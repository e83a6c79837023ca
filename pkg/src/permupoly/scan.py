"""Whole-parameter-space scans: sufficiency verification and necessity tests.

A sufficiency scan runs the exhaustive permutation check on every
hypothesis-satisfying tuple and records any non-permutation as a
discrepancy.  A necessity scan (families P5 and P6) enumerates both sides
of the designated condition and fills a 2x2 confusion matrix over
(condition holds, is permutation); it passes when the off-diagonal cells
are exactly zero.

Scans are deterministic: the parameter space is split into contiguous
index ranges, partial reports are merged in range order, and the result
is independent of the worker count.  PERMUPOLY_THREADS bounds workers.
"""

import csv
import itertools
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

from .families import (NECESSITY_CLAUSE, check_enumeration_guard,
                       field_for_family, iter_family)
from .perm import is_permutation

DISCREPANCY_CAP = 100
ROW_CAP = 1 << 17
SAMPLE_THRESHOLD = 1 << 16


@dataclass
class ScanReport:
    family: str
    mode: str
    field: dict
    field_params: dict
    total: int = 0
    satisfying: int = 0
    pp_true_satisfying: int = 0
    pp_true_violating: int = 0
    confusion: dict = dc_field(default_factory=lambda: dict(tt=0, tf=0, ft=0, ff=0))
    discrepancies: list = dc_field(default_factory=list)
    discrepancy_count: int = 0
    rows: list = dc_field(default_factory=list)
    rows_truncated: bool = False
    sampled: bool = False
    duration_ms: float = 0.0
    command: str | None = None

    @property
    def passed(self):
        if self.mode == "necessity":
            return self.confusion["tf"] == 0 and self.confusion["ft"] == 0
        return self.discrepancy_count == 0

    def to_dict(self):
        return {
            "family": self.family,
            "mode": self.mode,
            "field": self.field,
            "params": self.field_params,
            "totals": {
                "tuples": self.total,
                "satisfying": self.satisfying,
                "pp_true_among_satisfying": self.pp_true_satisfying,
                "pp_true_among_violating": self.pp_true_violating,
            },
            "confusion": dict(self.confusion),
            "discrepancies": list(self.discrepancies),
            "discrepancy_count": self.discrepancy_count,
            "sampled": self.sampled,
            "passed": self.passed,
            "duration_ms": self.duration_ms,
            "command": self.command,
        }

    @staticmethod
    def from_dict(d):
        t = d["totals"]
        rep = ScanReport(
            family=d["family"], mode=d["mode"], field=d["field"],
            field_params=d["params"], total=t["tuples"],
            satisfying=t["satisfying"],
            pp_true_satisfying=t["pp_true_among_satisfying"],
            pp_true_violating=t["pp_true_among_violating"],
            confusion=dict(d["confusion"]),
            discrepancies=list(d["discrepancies"]),
            discrepancy_count=d["discrepancy_count"],
            sampled=d["sampled"], duration_ms=d["duration_ms"],
            command=d.get("command"),
        )
        return rep


def _workers(workers):
    if workers is None:
        workers = int(os.environ.get("PERMUPOLY_THREADS", "1"))
    return max(1, int(workers))


def _slices(total, workers):
    width = (total + workers - 1) // workers if total else 1
    out = []
    lo = 0
    while lo < total:
        hi = min(lo + width, total)
        out.append((lo, hi))
        lo = hi
    return out or [(0, 0)]


def _discrepancy(ctx, params, expected, observed, witness):
    d = {"params": params.to_dict(), "expected": expected, "observed": observed}
    if witness is not None:
        d["witness"] = [ctx.format_element(witness[0]),
                        ctx.format_element(witness[1])]
    return d


def _row(params, satisfied, condition, is_pp):
    row = dict(params.to_dict())
    row["satisfied"] = satisfied
    if condition is not None:
        row["condition"] = condition
    if is_pp is not None:
        row["is_pp"] = is_pp
    return row


@dataclass
class _Partial:
    total: int = 0
    satisfying: int = 0
    pp_sat: int = 0
    pp_viol: int = 0
    tt: int = 0
    tf: int = 0
    ft: int = 0
    ff: int = 0
    discrepancies: list = dc_field(default_factory=list)
    discrepancy_count: int = 0
    rows: list = dc_field(default_factory=list)


def _scan(family, field_params, mode, ctx, workers, row_cap, sample_threshold):
    check_enumeration_guard(family, field_params)
    if mode == "necessity" and family not in NECESSITY_CLAUSE:
        raise ValueError(f"necessity scans exist only for "
                         f"{sorted(NECESSITY_CLAUSE)}; got {family}")
    cond_name = NECESSITY_CLAUSE.get(family)
    workers = _workers(workers)
    start = time.perf_counter()

    def tuples():
        return iter_family(family, field_params, ctx)

    domain = check_enumeration_guard(family, field_params)
    slices = _slices(domain, workers)

    # Sampling pre-pass: necessity scans evaluate the condition-violating
    # side exhaustively up to the threshold; above it, a deterministic
    # stride sample is taken over global violating ordinals.
    stride = 1
    viol_prefix = [0] * len(slices)
    if mode == "necessity" and domain > sample_threshold:
        viol_counts = []
        it = tuples()
        for lo, hi in slices:
            cnt = 0
            for _, _, checklist in itertools.islice(it, hi - lo):
                gates_ok = all(e.ok for e in checklist.entries
                               if e.gating and e.name != cond_name)
                if gates_ok and not checklist.entry(cond_name).ok:
                    cnt += 1
            viol_counts.append(cnt)
        total_viol = sum(viol_counts)
        if total_viol > sample_threshold:
            stride = -(-total_viol // sample_threshold)  # ceil
        acc = 0
        for i, cnt in enumerate(viol_counts):
            viol_prefix[i] = acc
            acc += cnt

    def run_slice(idx):
        lo, hi = slices[idx]
        part = _Partial()
        viol_ordinal = viol_prefix[idx]
        it = itertools.islice(tuples(), lo, hi)
        for params, poly, checklist in it:
            if mode == "sufficiency":
                part.total += 1
                if not checklist.satisfied():
                    continue
                part.satisfying += 1
                rep = is_permutation(ctx, poly)
                if rep.permutation:
                    part.pp_sat += 1
                else:
                    part.discrepancy_count += 1
                    part.discrepancies.append(_discrepancy(
                        ctx, params, "permutation", "not-permutation",
                        rep.witness))
                part.rows.append(_row(params, True, None, rep.permutation))
            else:
                gates_ok = all(e.ok for e in checklist.entries
                               if e.gating and e.name != cond_name)
                if not gates_ok:
                    continue
                cond = checklist.entry(cond_name).ok
                if not cond:
                    take = (viol_ordinal % stride) == 0
                    viol_ordinal += 1
                    if not take:
                        continue
                part.total += 1
                rep = is_permutation(ctx, poly)
                if cond:
                    part.satisfying += 1
                    if rep.permutation:
                        part.tt += 1
                        part.pp_sat += 1
                    else:
                        part.tf += 1
                        part.discrepancy_count += 1
                        part.discrepancies.append(_discrepancy(
                            ctx, params, "permutation", "not-permutation",
                            rep.witness))
                else:
                    if rep.permutation:
                        part.ft += 1
                        part.pp_viol += 1
                        part.discrepancy_count += 1
                        part.discrepancies.append(_discrepancy(
                            ctx, params, "not-permutation", "permutation",
                            None))
                    else:
                        part.ff += 1
                part.rows.append(_row(params, checklist.satisfied(), cond,
                                      rep.permutation))
        return part

    if workers == 1 or len(slices) == 1:
        parts = [run_slice(i) for i in range(len(slices))]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run_slice, range(len(slices))))

    report = ScanReport(
        family=family, mode=mode,
        field={"p": ctx.p, "n": ctx.n, "modulus": hex(ctx.modulus_code)},
        field_params=dict(field_params),
        sampled=stride > 1,
    )
    for part in parts:
        report.total += part.total
        report.satisfying += part.satisfying
        report.pp_true_satisfying += part.pp_sat
        report.pp_true_violating += part.pp_viol
        report.confusion["tt"] += part.tt
        report.confusion["tf"] += part.tf
        report.confusion["ft"] += part.ft
        report.confusion["ff"] += part.ff
        report.discrepancy_count += part.discrepancy_count
        report.discrepancies.extend(part.discrepancies)
        if not report.rows_truncated:
            room = row_cap - len(report.rows)
            if len(part.rows) > room:
                report.rows.extend(part.rows[:room])
                report.rows_truncated = True
            else:
                report.rows.extend(part.rows)
    report.discrepancies = report.discrepancies[:DISCREPANCY_CAP]
    report.duration_ms = (time.perf_counter() - start) * 1e3
    return report


def scan_sufficiency(family, field_params, modulus=None, ctx=None,
                     workers=None, row_cap=ROW_CAP):
    """Check that every hypothesis-satisfying tuple yields a permutation."""
    if ctx is None:
        ctx = field_for_family(family, field_params, modulus)
    return _scan(family, field_params, "sufficiency", ctx, workers, row_cap,
                 SAMPLE_THRESHOLD)


def scan_necessity(family, field_params, modulus=None, ctx=None,
                   workers=None, row_cap=ROW_CAP,
                   sample_threshold=SAMPLE_THRESHOLD):
    """Confusion-matrix test of the designated condition (P5, P6 only)."""
    if ctx is None:
        ctx = field_for_family(family, field_params, modulus)
    return _scan(family, field_params, "necessity", ctx, workers, row_cap,
                 sample_threshold)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

_CSV_PARAM_COLS = ("m", "k", "e", "q", "s", "r", "b", "c", "bprime",
                   "delta", "a")


def report_json(report):
    return json.dumps(report.to_dict(), indent=2) + "\n"


def write_report(report, path, fmt="json"):
    """Deterministic report file; json round-trips through load_report,
    csv flattens one evaluated tuple per row."""
    if fmt == "json":
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(report_json(report))
    elif fmt == "csv":
        cols = ["family"] + [c for c in _CSV_PARAM_COLS
                             if any(c in row for row in report.rows)]
        cols += ["satisfied"]
        if report.mode == "necessity":
            cols += ["condition"]
        cols += ["is_pp"]
        with open(path, "w", encoding="utf-8", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=cols, extrasaction="ignore")
            w.writeheader()
            for row in report.rows:
                w.writerow(row)
    else:
        raise ValueError(f"unknown report format {fmt!r}")


def load_report(path):
    with open(path, encoding="utf-8") as fh:
        return ScanReport.from_dict(json.load(fh))

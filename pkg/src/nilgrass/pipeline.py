"""End-to-end analysis: shuffle system -> elimination -> basis -> invariants.

analyze() produces the (sigma, delta, gamma) record for one cell;
run_table() reproduces a whole reference table, diffing every cell and
honouring a per-cell wall-clock budget.  Cells that exceed the budget
are reported as skipped, never as wrong numbers.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .combinat import Partition, partitions_table_order
from .grassmann import (duality_map, jordan_matrix, linear_form_row,
                        plucker_quadrics, shuffle_equations)
from .groebner import (BudgetExceeded, buchberger, eliminate_linear,
                       hilbert_data, quadric_span_basis)
from .linalg import SparseEchelon
from .tables import CellExpectation, expectations_for, quadric_generator_count


@dataclass
class AnalysisRecord:
    """One computed table cell."""

    lam: Partition
    l: int
    sigma: int
    delta: int | None
    gamma: int | None
    min_linear: int | None = None
    min_quadrics: int | None = None
    status: str = "ok"           # "ok" or "incomplete"
    seconds: float = 0.0

    def to_json(self) -> dict:
        out = {"lambda": list(self.lam), "l": self.l, "sigma": self.sigma,
               "delta": self.delta, "gamma": self.gamma, "status": self.status}
        if self.min_linear is not None:
            out["min_linear"] = self.min_linear
            out["min_quadrics"] = self.min_quadrics
        return out


def analyze(lam, l: int, budget: float | None = None,
            with_min_generators: bool = False) -> AnalysisRecord:
    """Compute (sigma, delta, gamma) for the fixed locus of one partition.

    budget is a wall-clock allowance in seconds; on overrun the record
    comes back with status "incomplete" and no dimension or degree.
    """
    lam = Partition(lam)
    n = lam.n
    if not 0 <= l <= n:
        raise ValueError(f"l={l} out of range for n={n}")
    start = time.monotonic()
    deadline = start + budget if budget is not None else None
    if l in (0, n):
        # single reduced point, one Pluecker coordinate
        return AnalysisRecord(lam=lam, l=l, sigma=0, delta=0, gamma=1,
                              min_linear=0 if with_min_generators else None,
                              min_quadrics=0 if with_min_generators else None,
                              seconds=time.monotonic() - start)
    system = shuffle_equations(jordan_matrix(lam), l)
    record = AnalysisRecord(lam=lam, l=l, sigma=system.sigma, delta=None, gamma=None)
    try:
        quadrics = plucker_quadrics(n, l)
        if not system.basis and not quadrics:
            # no equations at all: the locus is the whole projective space
            record.delta, record.gamma = len(system.ring.names) - 1, 1
            if with_min_generators:
                record.min_linear = record.min_quadrics = 0
            record.seconds = time.monotonic() - start
            return record
        elim = eliminate_linear(list(system.basis) + quadrics, deadline=deadline)
        basis = quadric_span_basis(elim.gens_small, deadline=deadline)
        if with_min_generators:
            record.min_linear = system.sigma
            record.min_quadrics = len(basis)
        if basis:
            G = buchberger(basis, deadline=deadline)
            record.delta, record.gamma = hilbert_data(G, nvars=elim.small_ring.nvars)
        else:
            record.delta, record.gamma = elim.small_ring.nvars - 1, 1
    except BudgetExceeded:
        record.status = "incomplete"
    record.seconds = time.monotonic() - start
    return record


def shuffle_rank(lam, l: int) -> int:
    lam = Partition(lam)
    if l in (0, lam.n):
        return 0
    return shuffle_equations(jordan_matrix(lam), l).sigma


def dual_check(lam, l: int) -> bool:
    """The duality substitution carries the shuffle span of (lam, l)
    onto the shuffle span of (lam, n-l)."""
    lam = Partition(lam)
    n = lam.n
    if not 0 <= l <= n:
        raise ValueError(f"l={l} out of range for n={n}")
    T = jordan_matrix(lam)
    source = shuffle_equations(T, l)
    target = shuffle_equations(T, n - l)
    image = SparseEchelon()
    for form in source.basis:
        image.add(linear_form_row(duality_map(lam, l, form)))
    return image.spans_same(target.span())


@dataclass
class CellResult:
    expected: CellExpectation
    sigma: int | None = None
    delta: int | None = None
    gamma: int | None = None
    status: str = "skipped"      # "pass" | "fail" | "skipped"
    note: str = ""

    def to_json(self) -> dict:
        e = self.expected
        return {"lambda": list(e.lam), "l": e.l,
                "expected": {"sigma": e.sigma, "delta": e.delta,
                             "gamma": e.gamma, "kappa": e.kappa},
                "computed": {"sigma": self.sigma, "delta": self.delta,
                             "gamma": self.gamma},
                "status": self.status, "note": self.note}


@dataclass
class TableReport:
    n: int
    sigma_only: bool
    cells: list = field(default_factory=list)

    @property
    def counts(self) -> dict:
        out = {"pass": 0, "fail": 0, "skipped": 0}
        for cell in self.cells:
            out[cell.status] += 1
        return out

    @property
    def exit_code(self) -> int:
        counts = self.counts
        if counts["fail"]:
            return 1
        if counts["skipped"]:
            return 3
        return 0

    def to_json(self) -> dict:
        return {"n": self.n, "sigma_only": self.sigma_only,
                "cells": [c.to_json() for c in self.cells],
                "summary": self.counts}


def _compare_cell(expected: CellExpectation, record: AnalysisRecord,
                  sigma_only: bool) -> CellResult:
    result = CellResult(expected=expected, sigma=record.sigma,
                        delta=record.delta, gamma=record.gamma)
    notes = []
    ok = True
    if expected.sigma_is_quadric_count:
        # recorded slot holds the quadric generator count, not the rank
        if record.sigma != 0:
            ok = False
        count = quadric_generator_count(expected.n, expected.l)
        if count != expected.sigma:
            ok = False
        notes.append(f"sigma slot records {expected.sigma} quadric generators; rank is 0")
    elif record.sigma != expected.sigma:
        ok = False
    if not ok:
        result.status = "fail"
        result.note = "; ".join(notes + ["sigma mismatch"])
        return result
    if sigma_only:
        result.status = "pass"
        result.note = "; ".join(notes + ["sigma only"])
        return result
    if record.status == "incomplete" or record.delta is None:
        result.status = "skipped"
        result.note = "; ".join(notes + ["budget exceeded"])
        return result
    if record.delta != expected.delta:
        ok = False
        notes.append("delta mismatch")
    if expected.gamma is not None and record.gamma != expected.gamma:
        ok = False
        notes.append("gamma mismatch")
    result.status = "pass" if ok else "fail"
    result.note = "; ".join(notes)
    return result


def _cell_worker(payload):
    lam, l, sigma_only, budget = payload
    if sigma_only:
        return {"sigma": shuffle_rank(lam, l), "delta": None, "gamma": None,
                "status": "ok"}
    record = analyze(Partition(lam), l, budget=budget)
    return {"sigma": record.sigma, "delta": record.delta, "gamma": record.gamma,
            "status": record.status}


def run_table(n: int, l_values=None, sigma_only: bool = False,
              budget: float = 300.0, threads: int = 1) -> TableReport:
    """Recompute and diff every recorded cell of one reference table."""
    expectations = expectations_for(n)
    if not expectations:
        raise ValueError(f"no reference table for n={n}")
    if n > 8 and not sigma_only:
        raise ValueError(f"full runs are limited to n <= 8; use sigma_only for n={n}")
    available_lams = {lam for lam, _ in expectations}
    order = [lam for lam in partitions_table_order(n) if lam in available_lams]
    keys = []
    for lam in order:
        for l in sorted(l for lam2, l in expectations if lam2 == lam):
            if l_values is None or l in l_values:
                keys.append((lam, l))
    payloads = [(tuple(lam), l, sigma_only, budget) for lam, l in keys]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            computed = list(pool.map(_cell_worker, payloads))
    else:
        computed = [_cell_worker(p) for p in payloads]
    report = TableReport(n=n, sigma_only=sigma_only)
    for (lam, l), data in zip(keys, computed):
        record = AnalysisRecord(lam=lam, l=l, sigma=data["sigma"],
                                delta=data["delta"], gamma=data["gamma"],
                                status=data["status"])
        report.cells.append(_compare_cell(expectations[(lam, l)], record, sigma_only))
    return report

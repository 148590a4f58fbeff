"""L-sweeps: fan out solves over interval lengths, collect ordered rows, write CSV."""
from __future__ import annotations

import csv
import io
import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import astuple, dataclass, fields

import numpy as np

from . import stepsolver
from .bounds import BoundReport, bound_report, is_step
from .eigensolver import solve_extrapolated
from .potentials import PotentialSpec, validate_hypotheses


@dataclass(frozen=True)
class SweepRecord:
    L: float
    lambda0: float
    lambda1: float
    gap: float
    k0: float
    kirsch_rhs: float
    lemma_rhs: float | None
    theorem_rhs: float | None
    separation: float | None
    err_estimate: float
    lemma_gate: bool
    theorem_gate: bool
    hypotheses_ok: bool
    intermediate_ok: bool | None
    dominated_kirsch: bool
    dominated_lemma: bool | None
    dominated_theorem: bool | None
    converged: bool


COLUMNS = tuple(f.name for f in fields(SweepRecord))


def geometric_grid(L_min: float, L_max: float, points: int) -> list[float]:
    if not 0 < L_min < L_max:
        raise ValueError("need 0 < L_min < L_max")
    if points < 2:
        raise ValueError("need at least 2 points")
    return [float(x) for x in np.geomspace(L_min, L_max, points)]


def default_jobs() -> int:
    env = os.environ.get("SGL_JOBS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def step_separation(spec: PotentialSpec, L: float) -> float | None:
    if not is_step(spec) or spec.height <= 0 or L <= 2 * spec.b:
        return None
    try:
        return stepsolver.separation(stepsolver.StepProblem(L, spec.b, spec.height))
    except stepsolver.BracketError:
        return None


def solve_row(spec: PotentialSpec, L: float, tol: float, hypotheses=None):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        res = solve_extrapolated(spec, L, tol)
    rep = bound_report(res, spec, L, hypotheses)
    rec = SweepRecord(
        L=L, lambda0=res.lambda0, lambda1=res.lambda1, gap=res.gap, k0=res.k0,
        kirsch_rhs=rep.kirsch_rhs, lemma_rhs=rep.lemma_rhs, theorem_rhs=rep.theorem_rhs,
        separation=step_separation(spec, L), err_estimate=res.err_estimate,
        lemma_gate=rep.lemma_gate, theorem_gate=rep.theorem_gate,
        hypotheses_ok=rep.hypotheses.lemma_ok, intermediate_ok=rep.intermediate_ok,
        dominated_kirsch=rep.dominated_kirsch, dominated_lemma=rep.dominated_lemma,
        dominated_theorem=rep.dominated_theorem, converged=res.converged,
    )
    return rec, rep


def run_sweep(spec: PotentialSpec, L_values, tol: float = 1e-9,
              jobs: int | None = None) -> list[tuple[SweepRecord, BoundReport]]:
    """Solve every L (in parallel) and return rows ordered by L."""
    Ls = sorted(float(L) for L in L_values)
    hyp = validate_hypotheses(spec)
    jobs = default_jobs() if jobs is None else jobs
    if jobs <= 1:
        return [solve_row(spec, L, tol, hyp) for L in Ls]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda L: solve_row(spec, L, tol, hyp), Ls))


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value) or math.isinf(value):
            return repr(value)
        return format(value, ".17g")
    return str(value)


def records_to_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for rec in records:
        writer.writerow([_cell(v) for v in astuple(rec)])
    return buf.getvalue()


def write_csv(records, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(records_to_csv(records))

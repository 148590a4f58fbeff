"""Lower bounds on the Neumann gap and asymptotic fits over L-sweeps.

Bounds evaluated for one (potential, L) pair:

* ratio bound      (inf phi / sup phi)^2 pi^2 / L^2
* cosine bound     (1 - 2 b^2 |v|)^2 pi^2 / L^2 cos^2(k0 (L/2 - b))
* quartic bound    the cosine bound with cos^2 replaced by its quadratic
                   minorant (pi/2 - k0 (L/2 - b))^2 / 4

The cosine and quartic bounds only claim to hold for L large enough; the
thresholds used here are explicit gates (``LEMMA_GATE_FACTOR`` and
``THEOREM_GATE``) that every report records.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .eigensolver import EigenResult
from .potentials import HypothesisReport, Kind, PotentialSpec, validate_hypotheses

LEMMA_GATE_FACTOR = 10.0
THEOREM_GATE = 0.5


class HypothesisError(ValueError):
    pass


class GateError(ValueError):
    pass


def coupling_factor(spec: PotentialSpec) -> float:
    return 1.0 - 2.0 * spec.b ** 2 * spec.sup_norm


def cos_argument(res: EigenResult, spec: PotentialSpec, L: float) -> float:
    """k0 (L/2 - b)."""
    return res.k0 * (L / 2 - spec.b)


def lemma_gate(spec: PotentialSpec, L: float) -> bool:
    return L >= LEMMA_GATE_FACTOR * spec.b


def theorem_gate(res: EigenResult, spec: PotentialSpec, L: float) -> bool:
    return abs(math.pi / 2 - cos_argument(res, spec, L)) < THEOREM_GATE


def kirsch_bound(res: EigenResult, L: float) -> float:
    return (res.inf_phi / res.sup_phi) ** 2 * math.pi ** 2 / L ** 2


def _require_small_coupling(spec, L):
    if not spec.b ** 2 * spec.sup_norm < 0.5:
        raise HypothesisError(f"b^2 |v| = {spec.b ** 2 * spec.sup_norm:g} is not below 1/2")
    if not lemma_gate(spec, L):
        raise GateError(f"L={L:g} below the gate {LEMMA_GATE_FACTOR:g} b")


def lemma_bound(res: EigenResult, spec: PotentialSpec, L: float) -> float:
    _require_small_coupling(spec, L)
    return (coupling_factor(spec) ** 2 * math.pi ** 2 / L ** 2
            * math.cos(cos_argument(res, spec, L)) ** 2)


def intermediate_ratio_check(res: EigenResult, spec: PotentialSpec, L: float,
                             slack: float = 1e-10) -> bool:
    """inf phi >= (1 - 2 b^2 |v|) sup phi cos(k0 (L/2 - b)), up to ``slack * sup phi``."""
    rhs = coupling_factor(spec) * res.sup_phi * math.cos(cos_argument(res, spec, L))
    return res.inf_phi >= rhs - slack * res.sup_phi


def compose_theorem(res: EigenResult, spec: PotentialSpec, L: float) -> float:
    _require_small_coupling(spec, L)
    if not theorem_gate(res, spec, L):
        raise GateError(f"|pi/2 - k0 (L/2 - b)| >= {THEOREM_GATE} at L={L:g}")
    s = math.pi / 2 - cos_argument(res, spec, L)
    return coupling_factor(spec) ** 2 * math.pi ** 2 / L ** 2 * 0.25 * s * s


def domination_slack(res: EigenResult) -> float:
    return 2.0 * res.err_estimate + 1e-12 * abs(res.gap)


@dataclass(frozen=True)
class BoundReport:
    L: float
    gap_numeric: float
    err_estimate: float
    kirsch_rhs: float
    lemma_rhs: float | None
    theorem_rhs: float | None
    intermediate_ok: bool | None
    lemma_gate: bool
    theorem_gate: bool
    hypotheses: HypothesisReport
    dominated_kirsch: bool
    dominated_lemma: bool | None
    dominated_theorem: bool | None

    @property
    def violations(self) -> list[str]:
        checks = {"kirsch": self.dominated_kirsch, "lemma": self.dominated_lemma,
                  "theorem": self.dominated_theorem, "intermediate": self.intermediate_ok}
        return [k for k, ok in checks.items() if ok is False]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["hypotheses"] = self.hypotheses.to_dict()
        return d


def bound_report(res: EigenResult, spec: PotentialSpec, L: float,
                 hypotheses: HypothesisReport | None = None) -> BoundReport:
    """Evaluate every bound for (spec, L) and compare each with the gap.

    Bounds whose hypotheses or gates fail are left as ``None``.
    """
    hyp = validate_hypotheses(spec) if hypotheses is None else hypotheses
    gap = res.gap
    top = gap + domination_slack(res)
    kirsch = kirsch_bound(res, L)
    lgate = lemma_gate(spec, L)
    tgate = lgate and theorem_gate(res, spec, L)

    lemma = theorem = inter = None
    if hyp.lemma_ok and lgate:
        lemma = lemma_bound(res, spec, L)
        inter = intermediate_ratio_check(res, spec, L)
        if tgate:
            theorem = compose_theorem(res, spec, L)
    return BoundReport(
        L=L, gap_numeric=gap, err_estimate=res.err_estimate,
        kirsch_rhs=kirsch, lemma_rhs=lemma, theorem_rhs=theorem,
        intermediate_ok=inter, lemma_gate=lgate, theorem_gate=tgate,
        hypotheses=hyp,
        dominated_kirsch=top >= kirsch,
        dominated_lemma=None if lemma is None else top >= lemma,
        dominated_theorem=None if theorem is None else top >= theorem,
    )


@dataclass(frozen=True)
class FitResult:
    exponent_p: float
    amplitude_c: float
    r_squared: float
    beta_hat: float
    delta_hat: float | None
    points: int
    gap_ratio_free: tuple[float, ...] = ()

    def to_dict(self) -> dict:
        d = asdict(self)
        d["gap_ratio_free"] = list(self.gap_ratio_free)
        return d


def fit_power_law(L, gap) -> tuple[float, float, float]:
    """Least-squares fit gap ~ c L^-p on log-log axes; returns (p, c, r^2)."""
    x, y = np.log(np.asarray(L, float)), np.log(np.asarray(gap, float))
    slope, intercept = np.polyfit(x, y, 1)
    pred = slope * x + intercept
    ss_res = float(np.sum((y - pred) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return -float(slope), math.exp(intercept), r2


def fit_exponent(records) -> FitResult:
    """Fit the decay of the gap over a sweep and collect empirical constants.

    ``records`` are SweepRecord-like objects with ``L``, ``gap`` and
    ``separation`` (None unless the potential is a step).
    """
    records = list(records)
    if len(records) < 5:
        raise ValueError(f"need at least 5 sweep points, got {len(records)}")
    Ls = np.array([r.L for r in records], float)
    if np.any(np.diff(Ls) <= 0):
        raise ValueError("sweep L values must be strictly increasing")
    gaps = np.array([r.gap for r in records], float)
    if np.any(gaps <= 0):
        raise ValueError("gap must be positive for a log-log fit")
    p, c, r2 = fit_power_law(Ls, gaps)
    seps = [r.separation * r.L for r in records if r.separation is not None]
    return FitResult(
        exponent_p=p, amplitude_c=c, r_squared=r2,
        beta_hat=float(np.min(gaps * Ls ** 4)),
        delta_hat=min(seps) if seps else None,
        points=len(records),
        gap_ratio_free=tuple(float(g) for g in gaps * Ls ** 2 / math.pi ** 2),
    )


def is_step(spec: PotentialSpec) -> bool:
    return spec.kind is Kind.STEP

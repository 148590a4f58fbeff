"""Symmetric, nonnegative, compactly supported potentials.

A potential is described by a :class:`PotentialSpec` and realized pointwise by
:func:`evaluate`.  :func:`validate_hypotheses` checks the standing assumptions
(symmetry, support, strict ramp monotonicity, core floor, small coupling) on a
sampling grid.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

HYPOTHESIS_GRID = 10_000


class Kind(str, enum.Enum):
    STEP = "step"
    TRAPEZOID = "trapezoid"
    BUMP = "bump"
    ZERO = "zero"


class InvalidSpecError(ValueError):
    """Raised for a PotentialSpec that violates its shape invariants."""


@dataclass(frozen=True)
class PotentialSpec:
    kind: Kind
    b: float
    height: float = 0.0
    eps: float | None = None
    gamma: float = 0.5

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.eps is None:
            object.__setattr__(self, "eps", self.b)
        for name in ("b", "height", "eps", "gamma"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @property
    def sup_norm(self) -> float:
        """||v||_inf, known in closed form for every family."""
        return 0.0 if self.kind is Kind.ZERO else self.height

    @property
    def breakpoints(self) -> tuple[float, ...]:
        """Nonnegative abscissae where v may fail to be smooth (mirrored for x < 0)."""
        if self.kind is Kind.ZERO:
            return (0.0,)
        return tuple(sorted({0.0, self.eps, self.b}))

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "b": self.b, "height": self.height,
                "eps": self.eps, "gamma": self.gamma}

    @classmethod
    def from_dict(cls, d: dict) -> "PotentialSpec":
        unknown = set(d) - {"kind", "b", "height", "eps", "gamma"}
        if unknown:
            raise InvalidSpecError(f"unknown potential fields: {sorted(unknown)}")
        try:
            return cls(kind=Kind(d["kind"]), b=d["b"], height=d.get("height", 0.0),
                       eps=d.get("eps"), gamma=d.get("gamma", 0.5))
        except KeyError as exc:
            raise InvalidSpecError(f"missing potential field {exc}") from None
        except ValueError as exc:
            raise InvalidSpecError(str(exc)) from None


def step(b, height, gamma=None):
    return PotentialSpec(Kind.STEP, b, height, b, height / 2 if gamma is None else gamma)


def trapezoid(b, eps, height, gamma=None):
    return PotentialSpec(Kind.TRAPEZOID, b, height, eps, height / 2 if gamma is None else gamma)


def bump(b, eps, height, gamma=None):
    return PotentialSpec(Kind.BUMP, b, height, eps, height / 4 if gamma is None else gamma)


def zero(b=1.0, gamma=0.5):
    return PotentialSpec(Kind.ZERO, b, 0.0, b, gamma)


def validate_shape(spec: PotentialSpec) -> None:
    vals = (spec.b, spec.height, spec.eps, spec.gamma)
    if not all(math.isfinite(v) for v in vals):
        raise InvalidSpecError("potential parameters must be finite")
    if spec.b <= 0:
        raise InvalidSpecError("b must be positive")
    if not 0 < spec.eps <= spec.b:
        raise InvalidSpecError("eps must satisfy 0 < eps <= b")
    if spec.height < 0:
        raise InvalidSpecError("height must be nonnegative")
    if spec.gamma <= 0:
        raise InvalidSpecError("gamma must be positive")


def evaluate(spec: PotentialSpec, x):
    """v(x); accepts scalars or arrays and returns the same shape."""
    x = np.asarray(x, dtype=float)
    a = np.abs(x)
    inside = a <= spec.b
    if spec.kind is Kind.ZERO:
        out = np.zeros_like(a)
    elif spec.kind is Kind.STEP:
        out = np.where(inside, spec.height, 0.0)
    elif spec.kind is Kind.TRAPEZOID:
        ramp_len = spec.b - spec.eps
        if ramp_len > 0:
            ramp = spec.height * (spec.b - a) / ramp_len
        else:
            ramp = np.full_like(a, spec.height)
        out = np.where(a <= spec.eps, spec.height, np.where(inside, ramp, 0.0))
    else:
        out = np.where(inside, spec.height * np.cos(np.pi * a / (2 * spec.b)) ** 2, 0.0)
    return float(out) if out.ndim == 0 else out


def one_sided(spec: PotentialSpec, x):
    """Left and right limits of v at the points ``x``.

    Only the step has jumps (at +-b), so elsewhere both limits equal v(x).
    """
    x = np.asarray(x, dtype=float)
    v = evaluate(spec, x)
    left = np.array(v, dtype=float, copy=True)
    right = np.array(v, dtype=float, copy=True)
    if spec.kind is Kind.STEP:
        left[x == -spec.b] = 0.0
        right[x == spec.b] = 0.0
    return left, right


@dataclass(frozen=True)
class HypothesisReport:
    symmetric: bool
    nonnegative: bool
    compact_support: bool
    monotone_on_ramp: bool
    floor_on_core: bool
    small_coupling: bool
    grid_points: int = HYPOTHESIS_GRID

    @property
    def lemma_ok(self) -> bool:
        """Everything the cosine/polynomial bounds assume."""
        return self.proposition_ok and self.small_coupling

    @property
    def proposition_ok(self) -> bool:
        return (self.symmetric and self.nonnegative and self.compact_support
                and self.monotone_on_ramp and self.floor_on_core)

    def to_dict(self) -> dict:
        return {"symmetric": self.symmetric, "nonnegative": self.nonnegative,
                "compact_support": self.compact_support,
                "monotone_on_ramp": self.monotone_on_ramp,
                "floor_on_core": self.floor_on_core,
                "small_coupling": self.small_coupling,
                "grid_points": self.grid_points}


def validate_hypotheses(spec: PotentialSpec, points: int = HYPOTHESIS_GRID) -> HypothesisReport:
    """Check the standing assumptions on equispaced samples.

    Never raises: a degenerate spec just produces false flags.
    """
    try:
        validate_shape(spec)
    except InvalidSpecError:
        return HypothesisReport(False, False, False, False, False, False, points)

    b, eps = spec.b, spec.eps
    xs = np.linspace(-2 * b, 2 * b, points)
    v = evaluate(spec, xs)
    symmetric = bool(np.array_equal(v, evaluate(spec, -xs)))
    nonnegative = bool(np.all(v >= 0))
    outside = np.abs(xs) > b
    compact = bool(np.all(v[outside] == 0))

    if eps < b:
        ramp = evaluate(spec, np.linspace(-b, -eps, points))
        monotone = bool(np.all(np.diff(ramp) > 0))
    else:
        monotone = True  # empty ramp

    core = evaluate(spec, np.linspace(-eps, 0.0, points))
    floor = bool(core.min() > spec.gamma)
    small = spec.b ** 2 * spec.sup_norm < 0.5
    return HypothesisReport(symmetric, nonnegative, compact, monotone, floor, small, points)

"""Even ground state of the centered step potential from its matching condition.

For v = vt * 1_[-c, c] on (-L/2, L/2) with Neumann ends, the ground state is
cos(k(L/2 - |x|)) outside the step and cosh(kappa x) inside.  Matching the
logarithmic derivative at |x| = c gives, in the dimensionless variables

    omega = k L,  M = sqrt(L^2 vt - omega^2),  l1 = 1/2 - c/L,  l2 = c/L,

the condition  (M / omega) tanh(M l2) = tan(omega l1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

EDGE = 1e-9
BRACKET_RTOL = 1e-14


class BracketError(ValueError):
    """No sign change of the matching residual on the below-barrier branch."""


@dataclass(frozen=True)
class StepProblem:
    L: float
    c: float
    vtilde: float

    def __post_init__(self):
        if not self.L > 0:
            raise ValueError("L must be positive")
        if not 0 < self.c < self.L / 2:
            raise ValueError("step half-width must satisfy 0 < c < L/2")
        if not self.vtilde > 0:
            raise ValueError("step height must be positive")

    @property
    def l1(self) -> float:
        return 0.5 - self.c / self.L

    @property
    def l2(self) -> float:
        return self.c / self.L

    @property
    def omega_max(self) -> float:
        """Upper end of the first tan branch and of the below-barrier range."""
        return min(math.pi / (2 * self.l1), self.L * math.sqrt(self.vtilde))


@dataclass(frozen=True)
class QuantizationRoot:
    omega0: float
    M0: float
    ktilde0: float
    lambda0: float
    residual: float

    def to_dict(self) -> dict:
        return {"omega0": self.omega0, "M0": self.M0, "ktilde0": self.ktilde0,
                "lambda0": self.lambda0, "residual": self.residual}


def quantization_residual(p: StepProblem, omega: float) -> float:
    """(M/omega) tanh(M l2) - tan(omega l1) for 0 < omega <= L sqrt(vtilde)."""
    barrier = p.L ** 2 * p.vtilde
    if not 0 < omega <= math.sqrt(barrier):
        raise ValueError(f"omega={omega!r} outside (0, L*sqrt(vtilde)]")
    M = math.sqrt(max(barrier - omega * omega, 0.0))
    return M / omega * math.tanh(M * p.l2) - math.tan(omega * p.l1)


def solve_ground(p: StepProblem) -> QuantizationRoot:
    """Smallest positive root by bisection, refined to floating-point resolution."""
    lo, hi = EDGE, p.omega_max - EDGE
    f_lo, f_hi = quantization_residual(p, lo), quantization_residual(p, hi)
    if not (f_lo > 0 > f_hi):
        raise BracketError(f"no sign change on ({lo:g}, {hi:g}): "
                           f"residuals {f_lo:g}, {f_hi:g}")
    # bisect past the 1e-14 relative width until the bracket cannot shrink;
    # the tan term is steep near the root, so the extra steps buy the residual
    while True:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        if quantization_residual(p, mid) > 0:
            lo = mid
        else:
            hi = mid
    omega = lo if abs(quantization_residual(p, lo)) <= abs(quantization_residual(p, hi)) else hi
    M = math.sqrt(p.L ** 2 * p.vtilde - omega ** 2)
    k = omega / p.L
    rel = abs(quantization_residual(p, omega)) / abs(math.tan(omega * p.l1))
    return QuantizationRoot(omega, M, k, k * k, rel)


def separation(p: StepProblem) -> float:
    """pi/2 - omega0 l1: distance of the ground state below the hard-wall limit."""
    return math.pi / 2 - solve_ground(p).omega0 * p.l1

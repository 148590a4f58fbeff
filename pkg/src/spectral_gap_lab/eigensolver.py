"""Two lowest Neumann eigenpairs of -d^2/dx^2 + v on (-L/2, L/2).

The operator is discretized with linear elements and lumped (trapezoidal) mass
and potential on a piecewise-uniform nodal grid whose nodes include every
breakpoint of v.  On a uniform grid this is exactly the second-order central
difference with symmetric ghost-point Neumann rows (diagonal 2/h^2, boundary
off-diagonal -sqrt(2)/h^2 after symmetrization).

Eigenvalues come from Sturm-count bisection, the ground state from inverse
iteration; both run on the flux form in :mod:`._kernels`.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .potentials import PotentialSpec, one_sided, validate_shape

MAX_INVERSE_ITERATIONS = 100
RESIDUAL_TOL = 1e-13
MAX_CELLS = 2 ** 22


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class Discretization:
    L: float
    n: int
    nodes: np.ndarray
    h: np.ndarray
    mass: np.ndarray
    weight: np.ndarray

    @property
    def diag(self) -> np.ndarray:
        inv_h = 1.0 / self.h
        stiff = np.zeros(self.n + 1)
        stiff[:-1] += inv_h
        stiff[1:] += inv_h
        return (stiff + self.weight) / self.mass

    @property
    def offdiag(self) -> np.ndarray:
        return -1.0 / (self.h * np.sqrt(self.mass[:-1] * self.mass[1:]))

    @property
    def norm(self) -> float:
        """Infinity norm of the symmetric tridiagonal matrix."""
        off = np.abs(self.offdiag)
        row = np.abs(self.diag)
        row[:-1] += off
        row[1:] += off
        return float(row.max())

    def matrix(self) -> np.ndarray:
        """Dense symmetric matrix; for tests on small grids only."""
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


def _segment_edges(spec: PotentialSpec, L: float) -> np.ndarray:
    half = L / 2
    inner = [p for p in spec.breakpoints if p < half]
    pts = sorted({-half, half, *inner, *(-p for p in inner)})
    return np.array(pts)


def discretize(spec: PotentialSpec, L: float, n: int, refine: int = 1) -> Discretization:
    """Grid with about ``n`` cells (times ``refine``), breakpoints of v on nodes.

    Each segment between breakpoints gets ``max(1, round(n * len / L))`` cells,
    multiplied by ``refine``; refining by 2 halves every cell exactly, which is
    what Richardson extrapolation needs.
    """
    if not L > 0 or not math.isfinite(L):
        raise ValueError("L must be positive")
    if n < 2:
        raise ValueError("n must be at least 2")
    validate_shape(spec)

    edges = _segment_edges(spec, L)
    lengths = np.diff(edges)
    counts = np.maximum(1, np.rint(n * lengths / L).astype(np.int64)) * int(refine)
    pieces = [np.linspace(a, b, c + 1)[:-1] for a, b, c in zip(edges[:-1], edges[1:], counts)]
    nodes = np.concatenate(pieces + [edges[-1:]])
    h = np.diff(nodes)

    mass = np.zeros(len(nodes))
    mass[:-1] += h / 2
    mass[1:] += h / 2
    left, right = one_sided(spec, nodes)
    weight = np.zeros(len(nodes))
    weight[:-1] += h / 2 * right[:-1]
    weight[1:] += h / 2 * left[1:]
    return Discretization(float(L), len(h), nodes, h, mass, weight)


@dataclass(frozen=True, eq=False)
class EigenResult:
    lambda0: float
    lambda1: float
    phi0: np.ndarray
    nodes: np.ndarray
    err_estimate: float = 0.0
    n: int = 0
    residual: float = 0.0
    converged: bool = True
    levels: tuple = field(default=())

    @property
    def gap(self) -> float:
        return self.lambda1 - self.lambda0

    @property
    def k0(self) -> float:
        return math.sqrt(max(self.lambda0, 0.0))

    @property
    def inf_phi(self) -> float:
        return float(self.phi0.min())

    @property
    def sup_phi(self) -> float:
        return float(self.phi0.max())

    def to_dict(self) -> dict:
        return {"lambda0": self.lambda0, "lambda1": self.lambda1, "gap": self.gap,
                "k0": self.k0, "inf_phi": self.inf_phi, "sup_phi": self.sup_phi,
                "err_estimate": self.err_estimate, "n": self.n,
                "residual": self.residual, "converged": self.converged}


def sturm_count(disc: Discretization, sigma: float) -> int:
    """Number of eigenvalues strictly below ``sigma``."""
    return _kernels.sturm_count(disc.h, disc.mass, disc.weight, float(sigma))


def _bisect(disc, k, lo, hi, floor):
    while True:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi or hi - lo <= 4 * np.finfo(float).eps * hi + floor:
            return mid
        if sturm_count(disc, mid) > k:
            hi = mid
        else:
            lo = mid


def _eigenvalues(disc: Discretization) -> tuple[float, float]:
    scale = (math.pi / disc.L) ** 2
    vmax = float(np.max(disc.weight / disc.mass))
    hi = 1.5 * scale + vmax
    while sturm_count(disc, hi) < 2:
        hi *= 2
    floor = 1e-22 * scale
    lam0 = _bisect(disc, 0, 0.0, hi, floor)
    lam1 = _bisect(disc, 1, lam0, hi, floor)
    return lam0, lam1


def _ground_state(disc: Discretization, lam0: float) -> tuple[np.ndarray, float]:
    h, m, w = disc.h, disc.mass, disc.weight
    norm = disc.norm
    x = np.ones(disc.n + 1)
    for _ in range(MAX_INVERSE_ITERATIONS):
        y = _kernels.solve_shifted(h, m, w, lam0, x)
        y /= math.sqrt(float(np.sum(m * y * y)))
        if y[np.argmax(np.abs(y))] < 0:
            y = -y
        res = float(np.linalg.norm(_kernels.pencil_residual(h, m, w, lam0, y))) / norm
        if res < RESIDUAL_TOL:
            return y, res
        x = y
    raise ConvergenceError(f"inverse iteration stalled at residual {res:.3e}")


def lowest_two(disc: Discretization) -> EigenResult:
    """lambda_0, lambda_1 and the positive, L^2-normalized ground state."""
    lam0, lam1 = _eigenvalues(disc)
    phi, res = _ground_state(disc, lam0)
    return EigenResult(lam0, lam1, phi, disc.nodes, n=disc.n, residual=res)


def default_cells(L: float) -> int:
    return max(1024, math.ceil(40 * L))


def solve_extrapolated(spec: PotentialSpec, L: float, tol: float = 1e-9,
                       n0: int | None = None, max_cells: int = MAX_CELLS) -> EigenResult:
    """Richardson-extrapolated eigenvalues under grid doubling.

    Stops once both eigenvalues satisfy |extrapolated - fine| < tol*max(|lam|, L^-2).
    The eigenvector comes from the finest grid.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    n0 = default_cells(L) if n0 is None else n0
    coarse = lowest_two(discretize(spec, L, n0))
    levels = [(coarse.n, coarse.lambda0, coarse.lambda1)]
    refine = 1
    while True:
        refine *= 2
        disc = discretize(spec, L, n0, refine)
        fine = lowest_two(disc)
        levels.append((fine.n, fine.lambda0, fine.lambda1))
        ext0 = (4 * fine.lambda0 - coarse.lambda0) / 3
        ext1 = (4 * fine.lambda1 - coarse.lambda1) / 3
        d0, d1 = abs(ext0 - fine.lambda0), abs(ext1 - fine.lambda1)
        floor = L ** -2
        ok = d0 < tol * max(abs(ext0), floor) and d1 < tol * max(abs(ext1), floor)
        if ok or 2 * disc.n > max_cells:
            if not ok:
                warnings.warn(f"extrapolation did not reach tol={tol:g} at L={L:g} "
                              f"with {disc.n} cells", RuntimeWarning, stacklevel=2)
            return EigenResult(ext0, ext1, fine.phi0, fine.nodes, max(d0, d1),
                               fine.n, fine.residual, ok, tuple(levels))
        coarse = fine


def turning_point_residual(res: EigenResult, spec: PotentialSpec, L: float) -> float:
    """Max over nodes x in [-b, 0] of |phi'(x) - int_x^0 (lambda0 - v) phi ds|.

    phi' is the three-point derivative on the (possibly nonuniform) grid; the
    integral is cumulative trapezoid with one-sided values of v at breakpoints.
    """
    x, phi = res.nodes, res.phi0
    tiny = 1e-12 * max(1.0, L)
    idx = np.nonzero((x >= -spec.b - tiny) & (x <= tiny))[0]
    idx = idx[(idx > 0) & (idx < len(x) - 1)]
    if len(idx) == 0:
        return 0.0
    i0, i1 = idx[0], idx[-1]

    hl = x[idx] - x[idx - 1]
    hr = x[idx + 1] - x[idx]
    deriv = (hl ** 2 * phi[idx + 1] - hr ** 2 * phi[idx - 1]
             - (hl ** 2 - hr ** 2) * phi[idx]) / (hl * hr * (hl + hr))

    xs = x[i0:i1 + 1]
    left, right = one_sided(spec, xs)
    f_left = (res.lambda0 - left) * phi[i0:i1 + 1]
    f_right = (res.lambda0 - right) * phi[i0:i1 + 1]
    cells = 0.5 * np.diff(xs) * (f_right[:-1] + f_left[1:])
    # integral from x_j to the last node (x = 0)
    tail = np.concatenate([np.cumsum(cells[::-1])[::-1], [0.0]])
    return float(np.max(np.abs(deriv - tail)))

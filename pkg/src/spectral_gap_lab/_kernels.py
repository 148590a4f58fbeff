"""Compiled inner loops for the tridiagonal pencil (A - sigma M).

The pencil comes from the lumped linear-element discretization on a nodal grid
with cell widths ``h`` (n), lumped masses ``m`` (n+1) and lumped potential
weights ``w`` (n+1).  Every loop works in flux form

    q_i = q_{i-1} + (w_i - sigma m_i) u_i,      u_{i+1} = u_i + h_i q_i,

which never forms ``2/h^2 - sigma`` and so keeps full relative precision in
sigma even when sigma is many orders below the matrix norm.
"""
import numpy as np
from numba import njit

_BIG = 1e150
_TINY = 1e-300


@njit(cache=True, nogil=True)
def sturm_count(h, m, w, sigma):
    """Number of pencil eigenvalues strictly below ``sigma``.

    Counts negative pivots of the LDL^T factorization of A - sigma M; the
    pivot for row i < n has the sign of u_{i+1}/u_i, the last one that of q_n/u_n.
    """
    n = h.shape[0]
    u = 1.0
    q = 0.0
    count = 0
    for i in range(n):
        q = q + (w[i] - sigma * m[i]) * u
        un = u + h[i] * q
        if un == 0.0:
            un = -_TINY if u > 0 else _TINY
        if (un < 0.0) != (u < 0.0):
            count += 1
        u = un
        a = abs(u)
        if a > _BIG:
            u /= a
            q /= a
    q = q + (w[n] - sigma * m[n]) * u
    # a zero last pivot means sigma itself is an eigenvalue, not one below it
    if q != 0.0 and (q < 0.0) != (u < 0.0):
        count += 1
    return count


@njit(cache=True, nogil=True)
def solve_shifted(h, m, w, sigma, rhs):
    """Solve (A - sigma M) y = M rhs by forward shooting.

    y = p + c u with p the particular solution (p_0 = 0) and u the homogeneous
    one (u_0 = 1); c is fixed by the closing Neumann row.
    """
    n = h.shape[0]
    p = np.empty(n + 1)
    u = np.empty(n + 1)
    p[0] = 0.0
    u[0] = 1.0
    qp = 0.0
    qu = 0.0
    scale = 1.0
    for i in range(n):
        d = w[i] - sigma * m[i]
        qp = qp + d * p[i] - m[i] * rhs[i] * scale
        qu = qu + d * u[i]
        p[i + 1] = p[i] + h[i] * qp
        u[i + 1] = u[i] + h[i] * qu
        a = max(abs(p[i + 1]), abs(u[i + 1]))
        if a > _BIG:
            for j in range(i + 2):
                p[j] /= a
                u[j] /= a
            qp /= a
            qu /= a
            scale /= a
    d = w[n] - sigma * m[n]
    qp = qp + d * p[n] - m[n] * rhs[n] * scale
    qu = qu + d * u[n]
    if qu == 0.0:
        return u
    c = -qp / qu
    return p + c * u


@njit(cache=True, nogil=True)
def pencil_residual(h, m, w, lam, u):
    """M^{-1/2} (A - lam M) u, the residual in symmetric coordinates."""
    n = h.shape[0]
    r = np.empty(n + 1)
    q_prev = 0.0
    for i in range(n + 1):
        q = (u[i + 1] - u[i]) / h[i] if i < n else 0.0
        r[i] = (q_prev - q + (w[i] - lam * m[i]) * u[i]) / np.sqrt(m[i])
        q_prev = q
    return r

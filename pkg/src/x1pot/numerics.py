"""Numerical oracle: finite-difference Hamiltonians, Sturm bisection, quadrature, FD.

Everything here is independent of the analytic constructions in the other
modules.  Callables passed in (potentials, integrands) are expected to accept
numpy arrays.
"""
import heapq
import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import BuildError, DomainError, NumericError

EPS = np.finfo(float).eps

# 20-point Gauss-Legendre rule on [-1, 1]
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(20)


@dataclass(frozen=True)
class Grid:
    """Uniform grid on [a, b]; only the interior points carry unknowns."""

    a: float
    b: float
    n_interior: int

    def __post_init__(self):
        if not self.a < self.b:
            raise DomainError(f"grid needs a < b, got a={self.a}, b={self.b}")
        if self.n_interior < 1:
            raise DomainError("grid needs at least one interior point")

    @property
    def h(self) -> float:
        return (self.b - self.a) / (self.n_interior + 1)

    @property
    def points(self) -> np.ndarray:
        return self.a + self.h * np.arange(1, self.n_interior + 1)

    def halved(self) -> "Grid":
        """Same interval with spacing h/2."""
        return Grid(self.a, self.b, 2 * (self.n_interior + 1) - 1)


@dataclass(frozen=True)
class TridiagonalMatrix:
    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        if len(self.offdiag) != len(self.diag) - 1:
            raise DomainError("offdiag must have length len(diag) - 1")

    @property
    def n(self) -> int:
        return len(self.diag)

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


def build_hamiltonian(potential, grid: Grid) -> TridiagonalMatrix:
    """Three-point discretization of -d^2/dx^2 + V with Dirichlet ends."""
    xs = grid.points
    v = np.asarray(potential(xs), dtype=float)
    v = np.broadcast_to(v, xs.shape)
    bad = ~np.isfinite(v)
    if bad.any():
        i = int(np.argmax(bad))
        raise BuildError(f"potential is not finite at x={float(xs[i])!r} (value {float(v[i])!r})", point=float(xs[i]))
    inv_h2 = 1.0 / grid.h**2
    return TridiagonalMatrix(2.0 * inv_h2 + v, np.full(grid.n_interior - 1, -inv_h2))


@njit(cache=True)
def _sturm_count(d, e2, lam):
    # number of eigenvalues strictly below lam (LDL^T inertia)
    tiny = 1e-300
    count = 0
    q = d[0] - lam
    if q < 0.0:
        count += 1
    for i in range(1, d.shape[0]):
        if q == 0.0:
            q = tiny
        q = d[i] - lam - e2[i - 1] / q
        if q < 0.0:
            count += 1
    return count


@njit(cache=True)
def _bisect_lowest(d, e2, k, lo, hi, rtol):
    out = np.empty(k)
    for j in range(k):
        a = lo
        b = hi
        for _ in range(400):
            mid = 0.5 * (a + b)
            if b - a <= rtol * max(1.0, abs(mid)):
                break
            if _sturm_count(d, e2, mid) >= j + 1:
                b = mid
            else:
                a = mid
        out[j] = 0.5 * (a + b)
        # eigenvalue j+1 cannot lie below eigenvalue j
        lo = a
    return out


def sturm_count(m: TridiagonalMatrix, lam: float) -> int:
    """Number of eigenvalues of `m` strictly less than `lam`."""
    d = np.ascontiguousarray(m.diag, dtype=float)
    e2 = np.ascontiguousarray(m.offdiag, dtype=float) ** 2
    return int(_sturm_count(d, e2, float(lam)))


def gershgorin_bounds(m: TridiagonalMatrix):
    r = np.zeros(m.n)
    off = np.abs(m.offdiag)
    r[:-1] += off
    r[1:] += off
    return float(np.min(m.diag - r)), float(np.max(m.diag + r))


def eigen_lowest(m: TridiagonalMatrix, k: int, rtol: float = 1e-10) -> np.ndarray:
    """The `k` smallest eigenvalues of a symmetric tridiagonal matrix, ascending.

    Sturm-sequence counting plus bisection; each eigenvalue is bracketed to
    ``rtol * max(1, |lambda|)``.  Multiple eigenvalues are returned with their
    multiplicity.
    """
    if k < 1 or k > m.n:
        raise DomainError(f"k must be in 1..{m.n}, got {k}")
    lo, hi = gershgorin_bounds(m)
    span = max(hi - lo, 1.0)
    lo -= 1e-3 * span
    hi += 1e-3 * span
    d = np.ascontiguousarray(m.diag, dtype=float)
    e2 = np.ascontiguousarray(m.offdiag, dtype=float) ** 2
    return _bisect_lowest(d, e2, int(k), lo, hi, rtol)


def solve_spectrum(potential, domain, k: int, n: int = 8000, refine: bool = True) -> np.ndarray:
    """Lowest `k` Dirichlet eigenvalues of -d^2/dx^2 + V on the open interval `domain`.

    With ``refine`` the eigenvalues from spacings h and h/2 are combined as
    (4 E_{h/2} - E_h) / 3, cancelling the leading O(h^2) discretization error.
    """
    grid = Grid(float(domain[0]), float(domain[1]), int(n))
    e_h = eigen_lowest(build_hamiltonian(potential, grid), k)
    if not refine:
        return e_h
    e_h2 = eigen_lowest(build_hamiltonian(potential, grid.halved()), k)
    return (4.0 * e_h2 - e_h) / 3.0


def _gl_panel(f, a, b):
    half = 0.5 * (b - a)
    x = 0.5 * (a + b) + half * _GL_NODES
    y = np.broadcast_to(np.asarray(f(x), dtype=float), x.shape)
    return half * float(np.dot(_GL_WEIGHTS, y)), half * float(np.dot(_GL_WEIGHTS, np.abs(y)))


def _refined_panel(f, lo, hi):
    # estimate from the two halves, error from disagreement with the whole
    whole, absval = _gl_panel(f, lo, hi)
    mid = 0.5 * (lo + hi)
    left, _ = _gl_panel(f, lo, mid)
    right, _ = _gl_panel(f, mid, hi)
    return abs(left + right - whole), lo, hi, left + right, absval


def quad(f, a: float, b: float, rtol: float = 1e-12, panels: int = 1, max_splits: int = 5000) -> float:
    """Adaptive composite Gauss-Legendre quadrature of `f` over [a, b].

    The interval starts as `panels` equal pieces.  The piece with the largest
    error estimate (whole-panel rule vs. sum over its two halves) is halved
    until the summed error falls below ``rtol`` times the integral of |f|.
    The rule is open, so integrable endpoint singularities are never sampled.

    Raises:
        NumericError: tolerance not met within `max_splits` halvings; the
            best available estimate is attached as ``.estimate``.
    """
    if a == b:
        return 0.0
    if b < a:
        return -quad(f, b, a, rtol, panels, max_splits)
    edges = np.linspace(a, b, panels + 1)
    heap = [_refined_panel(f, lo, hi) for lo, hi in zip(edges[:-1], edges[1:])]
    scale = sum(p[4] for p in heap)
    if not np.isfinite(scale) or not all(np.isfinite(p[3]) for p in heap):
        raise NumericError("integrand is not finite at a quadrature node", estimate=scale)
    heap = [(-p[0],) + p[1:] for p in heap]
    heapq.heapify(heap)
    err = -sum(p[0] for p in heap)
    tol = rtol * scale
    splits = 0
    while err > tol:
        if splits >= max_splits:
            raise NumericError(
                f"quadrature on [{a}, {b}] did not converge (error {err:.3e})",
                estimate=sum(p[3] for p in heap),
            )
        neg_e, lo, hi, _, _ = heapq.heappop(heap)
        err += neg_e
        mid = 0.5 * (lo + hi)
        for piece in (_refined_panel(f, lo, mid), _refined_panel(f, mid, hi)):
            err += piece[0]
            heapq.heappush(heap, (-piece[0],) + piece[1:])
        splits += 1
    return float(math.fsum(p[3] for p in heap))


_STENCILS = {
    1: (np.array([-1.0, 1.0]), np.array([-0.5, 0.5])),
    2: (np.array([-1.0, 0.0, 1.0]), np.array([1.0, -2.0, 1.0])),
    3: (np.array([-2.0, -1.0, 1.0, 2.0]), np.array([-0.5, 1.0, -1.0, 0.5])),
}


def fd_derivative(f, x: float, order: int = 1, h: float | None = None) -> float:
    """Central-difference derivative of order 1, 2 or 3 with Richardson extrapolation.

    Ridders' scheme: the step starts at `h` (default ``0.01 * (1 + |x|)``) and
    shrinks by 1.4 per column while a Neville tableau eliminates successive
    h^2 error terms.  Steps are never taken below the roundoff-optimal
    ``eps ** (1 / (order + 2)) * (1 + |x|)``.

    Raises:
        NumericError: the starting step is already below that floor.
    """
    if order not in _STENCILS:
        raise DomainError(f"order must be 1, 2 or 3, got {order}")
    offsets, weights = _STENCILS[order]
    floor = EPS ** (1.0 / (order + 2)) * (1.0 + abs(x))
    if h is None:
        h = 0.01 * (1.0 + abs(x))
    if h < floor:
        raise NumericError(f"finite-difference step {h:g} underflows floor {floor:g}")

    def central(step):
        vals = np.asarray(f(x + step * offsets), dtype=float)
        return float(np.dot(weights, vals)) / step**order

    con, con2, safe, ntab = 1.4, 1.96, 2.0, 10
    tab = np.zeros((ntab, ntab))
    tab[0, 0] = central(h)
    best, err = tab[0, 0], np.inf
    for i in range(1, ntab):
        h /= con
        if h < floor:
            break
        tab[0, i] = central(h)
        fac = con2
        for j in range(1, i + 1):
            tab[j, i] = (tab[j - 1, i] * fac - tab[j - 1, i - 1]) / (fac - 1.0)
            fac *= con2
            errt = max(abs(tab[j, i] - tab[j - 1, i]), abs(tab[j, i] - tab[j - 1, i - 1]))
            if errt <= err:
                err, best = errt, tab[j, i]
        if abs(tab[i, i] - tab[i - 1, i - 1]) >= safe * err:
            break
    return best

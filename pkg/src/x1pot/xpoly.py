"""Classical and X1 exceptional Laguerre/Jacobi polynomials.

The X1 families are built straight from their second-order ODEs

    F'' + Q(g) F' + R(g) F = 0

by clearing denominators and matching powers of g for a monic degree-n
ansatz.  Polynomials are dense coefficient arrays in ascending powers.
"""
from dataclasses import dataclass
from functools import lru_cache
from math import factorial

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.special import binom

from .errors import ConstructionError, DomainError
from .numerics import quad

LAGUERRE_X1 = "laguerreX1"
JACOBI_X1 = "jacobiX1"


@dataclass(frozen=True, eq=False)
class Polynomial:
    """Real polynomial, ``coeffs[k]`` multiplies g**k."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=float)).copy()
        if not np.all(np.isfinite(c)):
            raise DomainError("polynomial coefficients must be finite")
        nz = np.flatnonzero(c)
        c = c[: nz[-1] + 1] if nz.size else c[:1]
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, g):
        return eval_poly(self, g)

    def deriv(self, m: int = 1) -> "Polynomial":
        if self.degree < m:
            return Polynomial([0.0])
        return Polynomial(P.polyder(self.coeffs, m))

    def rounding_scale(self, g):
        """sum_k |c_k| |g|^k: the magnitude that sets Horner's rounding error."""
        return eval_poly(Polynomial(np.abs(self.coeffs)), np.abs(g))

    def roots(self) -> np.ndarray:
        return P.polyroots(self.coeffs)

    def real_roots_in(self, lo: float, hi: float, imag_tol: float = 1e-9) -> np.ndarray:
        r = self.roots()
        scale = np.maximum(1.0, np.abs(r))
        real = r[np.abs(r.imag) <= imag_tol * scale].real
        return np.sort(real[(real > lo) & (real < hi)])

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)})"


@dataclass(frozen=True)
class LaguerreX1Params:
    alpha: float

    def __post_init__(self):
        if not self.alpha > 0:
            raise DomainError(f"Laguerre X1 needs alpha > 0, got {self.alpha}")


@dataclass(frozen=True)
class JacobiX1Params:
    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > -1 and self.beta > -1):
            raise DomainError(f"Jacobi X1 needs alpha, beta > -1, got {self.alpha}, {self.beta}")
        if self.alpha == self.beta:
            raise DomainError("Jacobi X1 family degenerates for alpha == beta")


def eval_poly(poly: Polynomial, g):
    """Horner evaluation; works elementwise on arrays."""
    c = poly.coeffs
    acc = np.zeros_like(np.asarray(g, dtype=float)) + c[-1]
    for a in c[-2::-1]:
        acc = acc * g + a
    return acc if np.ndim(acc) else float(acc)


def classical_laguerre(n: int, alpha: float) -> Polynomial:
    """Generalized Laguerre L_n^(alpha) from the explicit finite sum.

    L_n^(alpha)(g) = sum_k (-1)^k binom(n + alpha, n - k) g^k / k!
    """
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    if not alpha > -1:
        raise DomainError(f"Laguerre needs alpha > -1, got {alpha}")
    k = np.arange(n + 1)
    coeffs = (-1.0) ** k * binom(n + alpha, n - k) / np.array([factorial(i) for i in k], dtype=float)
    return Polynomial(coeffs)


def classical_jacobi(n: int, alpha: float, beta: float) -> Polynomial:
    """Jacobi P_n^(alpha, beta) in the standard normalization P_n(1) = binom(n + alpha, n).

    Coefficients come from the three-term recurrence carried out in the
    monomial basis; expanding the closed form about g = 1 loses several
    digits to cancellation once n grows past ~8.
    """
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    if not (alpha > -1 and beta > -1):
        raise DomainError(f"Jacobi needs alpha, beta > -1, got {alpha}, {beta}")
    prev = np.array([1.0])
    if n == 0:
        return Polynomial(prev)
    cur = np.array([(alpha - beta) / 2, (alpha + beta + 2) / 2])
    for k in range(1, n):
        c = 2 * k + alpha + beta
        lead = 2 * (k + 1) * (k + alpha + beta + 1) * c
        lin = [(c + 1) * (alpha * alpha - beta * beta), (c + 1) * (c + 2) * c]
        back = 2 * (k + alpha) * (k + beta) * (c + 2)
        prev, cur = cur, P.polysub(P.polymul(lin, cur), back * prev) / lead
    return Polynomial(cur)


def _laguerre_operator(alpha, n):
    # g(g+a) F'' - (g-a)(g+a+1) F' + [(n-2)(g+a) + 2g] F
    p2 = np.array([0.0, alpha, 1.0])
    p1 = -P.polymul([-alpha, 1.0], [alpha + 1.0, 1.0])
    p0 = np.array([(n - 2) * alpha, n])
    return p2, p1, p0


def _jacobi_operator(alpha, beta, n):
    # multiply by (1 - g^2) * d(g), d(g) = (beta-alpha) g - (beta+alpha)
    s, dlt = beta + alpha, beta - alpha
    one_m_g2 = np.array([1.0, 0.0, -1.0])
    d = np.array([-s, dlt])
    p2 = P.polymul(one_m_g2, d)
    p1 = P.polysub(-P.polymul([-dlt, s + 2.0], d), 2.0 * dlt * one_m_g2)
    p0 = P.polysub(P.polymul([(n - 1) * (n + s), -dlt], d), dlt**2 * one_m_g2)
    return p2, p1, p0


def _operator(family, params, n):
    if family == LAGUERRE_X1:
        return _laguerre_operator(params.alpha, n)
    if family == JACOBI_X1:
        return _jacobi_operator(params.alpha, params.beta, n)
    raise DomainError(f"unknown family {family!r}")


def _apply(ops, coeffs):
    p2, p1, p0 = ops
    terms = [
        P.polymul(p2, P.polyder(coeffs, 2)) if len(coeffs) > 2 else np.zeros(1),
        P.polymul(p1, P.polyder(coeffs, 1)) if len(coeffs) > 1 else np.zeros(1),
        P.polymul(p0, coeffs),
    ]
    out = np.zeros(max(len(t) for t in terms))
    for t in terms:
        out[: len(t)] += t
    return out


def _backward_error(M, coeffs):
    # componentwise (Oettli-Prager) backward error of M @ coeffs = 0
    num = np.abs(M @ coeffs)
    den = np.abs(M) @ np.abs(coeffs)
    live = den > 0
    return float(np.max(num[live] / den[live])) if live.any() else 0.0


def _triangular_candidate(M, n):
    # column k reaches at most g^(k+1), so rows 1..n against the n free
    # coefficients form an upper-triangular square system
    A = M[1 : n + 1, :n]
    if np.any(np.diag(A) == 0):
        return None
    return np.linalg.solve(A, -M[1 : n + 1, n])


def _equilibrated_candidate(M, n):
    A, b = M[:, :n], -M[:, n]
    rows = np.maximum(np.abs(A).max(axis=1), np.abs(b))
    rows[rows == 0] = 1.0
    A, b = A / rows[:, None], b / rows
    cols = np.abs(A).max(axis=0)
    if np.any(cols == 0):
        return None
    sol, _, rank, _ = np.linalg.lstsq(A / cols, b, rcond=None)
    return sol / cols if rank == n else None


@lru_cache(maxsize=256)
def _solve_monic(family, params, n):
    if n < 1:
        raise DomainError("X1 families start at degree 1; n must be >= 1")
    ops = _operator(family, params, n)
    cols = []
    for k in range(n + 1):
        e = np.zeros(k + 1)
        e[k] = 1.0
        col = np.zeros(n + 4)
        img = _apply(ops, e)
        col[: len(img)] = img
        cols.append(col)
    M = np.column_stack(cols)
    # entries that cancel exactly in theory come out as rounding residue
    M[np.abs(M) <= 1e-13 * np.abs(M).max()] = 0.0
    # the triangular solve is accurate for most parameters, the equilibrated
    # least-squares solve near alpha ~ beta; keep whichever fits the full
    # system better
    best = None
    for solver in (_triangular_candidate, _equilibrated_candidate):
        sol = solver(M, n)
        if sol is None or not np.all(np.isfinite(sol)):
            continue
        coeffs = np.append(sol, 1.0)
        err = _backward_error(M, coeffs)
        if best is None or err < best[0]:
            best = (err, coeffs)
    if best is None:
        raise ConstructionError(f"{family} ansatz of degree {n} is singular")
    if best[0] > 1e-8:
        raise ConstructionError(
            f"{family} ansatz of degree {n} has no polynomial solution (backward error {best[0]:.3e})"
        )
    return Polynomial(best[1])


def x1_laguerre(n: int, p: LaguerreX1Params) -> Polynomial:
    """Monic Laguerre-type X1 polynomial of degree n >= 1."""
    return _solve_monic(LAGUERRE_X1, p, n)


def x1_jacobi(n: int, p: JacobiX1Params) -> Polynomial:
    """Monic Jacobi-type X1 polynomial of degree n >= 1."""
    return _solve_monic(JACOBI_X1, p, n)


def x1_polynomial(family, params, n):
    if family == LAGUERRE_X1:
        return x1_laguerre(n, params)
    if family == JACOBI_X1:
        return x1_jacobi(n, params)
    raise DomainError(f"unknown family {family!r}")


def poles(family, params):
    if family == LAGUERRE_X1:
        return (0.0, -params.alpha)
    a, b = params.alpha, params.beta
    return (-1.0, 1.0, (b + a) / (b - a))


def q_coefficient(family, params, g):
    g = np.asarray(g, dtype=float)
    if family == LAGUERRE_X1:
        a = params.alpha
        return -1.0 + (a + 1.0) / g - 2.0 / (g + a)
    a, b = params.alpha, params.beta
    s, dlt = b + a, b - a
    return -((s + 2.0) * g - dlt) / (1.0 - g * g) - 2.0 * dlt / (dlt * g - s)


def r_coefficient(family, params, n, g):
    g = np.asarray(g, dtype=float)
    if family == LAGUERRE_X1:
        return (n - 2.0) / g + 2.0 / (g + params.alpha)
    a, b = params.alpha, params.beta
    s, dlt = b + a, b - a
    return -(dlt * g - (n - 1.0) * (n + s)) / (1.0 - g * g) - dlt**2 / (dlt * g - s)


def _check_not_pole(family, params, g):
    for p in poles(family, params):
        if np.any(np.asarray(g) == p):
            raise DomainError(f"g={p} is a pole of the {family} coefficients")


def ode_residual(poly: Polynomial, family, params, n: int, g):
    """F'' + Q F' + R F at g for the level-n member of `family`."""
    _check_not_pole(family, params, g)
    return (
        eval_poly(poly.deriv(2), g)
        + q_coefficient(family, params, g) * eval_poly(poly.deriv(1), g)
        + r_coefficient(family, params, n, g) * eval_poly(poly, g)
    )


def weight(family, params, g):
    """Orthogonality weight of the X1 family."""
    g = np.asarray(g, dtype=float)
    if family == LAGUERRE_X1:
        a = params.alpha
        return g**a * np.exp(-g) / (g + a) ** 2
    a, b = params.alpha, params.beta
    return (1.0 - g) ** a * (1.0 + g) ** b / ((b - a) * g - (b + a)) ** 2


def x1_inner_product(family, params, m: int, n: int) -> float:
    """Weighted inner product <X_m, X_n>_w of two X1 family members."""
    pm = x1_polynomial(family, params, m)
    pn = x1_polynomial(family, params, n)

    def integrand(g):
        return weight(family, params, g) * eval_poly(pm, g) * eval_poly(pn, g)

    if family == LAGUERRE_X1:
        g_max = max(50.0, 10.0 * (params.alpha + max(m, n)))
        return quad(integrand, 0.0, g_max, panels=int(np.ceil(g_max)))
    return quad(integrand, -1.0, 1.0, panels=2)

"""Point canonical transformation psi(x) = f(x) F(g(x)).

Given the ODE coefficients Q, R of F and a change of variable g(x), the
Schrodinger equation fixes

    E - V(x) = g'''/(2g') - 3/4 (g''/g')^2 + g'^2 (R - Q'/2 - Q^2/4)
    f(x)    ~ g'^(-1/2) exp(1/2 int^g(x) Q du)

This module evaluates both generically and carries the closed-form expansions
of R - Q'/2 - Q^2/4 for the two X1 families as independent oracles.
"""
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from . import models, xpoly
from .errors import DomainError
from .numerics import quad


@dataclass(frozen=True)
class CoefficientFunctions:
    Q: Callable
    Qdot: Callable
    R: Callable  # R(g, n)
    poles: tuple

    def combination(self, g, n):
        """R - Qdot/2 - Q^2/4, evaluated directly."""
        q = self.Q(g)
        return self.R(g, n) - 0.5 * self.Qdot(g) - 0.25 * q * q


@dataclass(frozen=True)
class ChangeOfVariable:
    g: Callable
    g1: Callable
    g2: Callable
    g3: Callable
    domain: tuple


def laguerre_coefficients(alpha: float) -> CoefficientFunctions:
    p = xpoly.LaguerreX1Params(alpha)
    fam = xpoly.LAGUERRE_X1
    return CoefficientFunctions(
        Q=lambda g: xpoly.q_coefficient(fam, p, g),
        Qdot=lambda g: -(alpha + 1.0) / np.asarray(g) ** 2 + 2.0 / (np.asarray(g) + alpha) ** 2,
        R=lambda g, n: xpoly.r_coefficient(fam, p, n, g),
        poles=xpoly.poles(fam, p),
    )


def jacobi_coefficients(alpha: float, beta: float) -> CoefficientFunctions:
    p = xpoly.JacobiX1Params(alpha, beta)
    fam = xpoly.JACOBI_X1
    s, dlt = beta + alpha, beta - alpha

    def qdot(g):
        g = np.asarray(g, dtype=float)
        num = (s + 2.0) * g - dlt
        one_m = 1.0 - g * g
        return -((s + 2.0) * one_m + 2.0 * g * num) / one_m**2 + 2.0 * dlt**2 / (dlt * g - s) ** 2

    return CoefficientFunctions(
        Q=lambda g: xpoly.q_coefficient(fam, p, g),
        Qdot=qdot,
        R=lambda g, n: xpoly.r_coefficient(fam, p, n, g),
        poles=xpoly.poles(fam, p),
    )


def quadratic_change(c: float) -> ChangeOfVariable:
    """g = C x^2 / 4 on the half-line, so that g'^2 / g = C."""
    return ChangeOfVariable(
        g=lambda x: 0.25 * c * np.asarray(x) ** 2,
        g1=lambda x: 0.5 * c * np.asarray(x),
        g2=lambda x: 0.5 * c + 0.0 * np.asarray(x),
        g3=lambda x: 0.0 * np.asarray(x),
        domain=(0.0, np.inf),
    )


def sine_change() -> ChangeOfVariable:
    """g = sin x on (-pi/2, pi/2), so that g'^2 / (1 - g^2) = 1."""
    return ChangeOfVariable(
        g=np.sin,
        g1=np.cos,
        g2=lambda x: -np.sin(x),
        g3=lambda x: -np.cos(x),
        domain=(-0.5 * np.pi, 0.5 * np.pi),
    )


class Instance(NamedTuple):
    cf: CoefficientFunctions
    cv: ChangeOfVariable
    anchor: float


def instance(params) -> Instance:
    """Coefficient functions, change of variable and integration anchor for a model."""
    if models.family_of(params) == models.OSCILLATOR:
        return Instance(laguerre_coefficients(params.alpha), quadratic_change(2.0 * params.omega), 1.0)
    return Instance(jacobi_coefficients(params.alpha, params.beta), sine_change(), 0.0)


def _check_point(cf, cv, x):
    lo, hi = cv.domain
    if not lo < x < hi:
        raise DomainError(f"x={x} outside ({lo}, {hi})")
    g = float(cv.g(x))
    if any(g == p for p in cf.poles):
        raise DomainError(f"g(x)={g} is a pole of Q or R")
    if float(cv.g1(x)) == 0.0:
        raise DomainError(f"g'(x) vanishes at x={x}")
    return g


def pct_rhs(cf: CoefficientFunctions, cv: ChangeOfVariable, n: int, x: float) -> float:
    """E - V(x) for the level-n solution."""
    g = _check_point(cf, cv, x)
    g1, g2, g3 = float(cv.g1(x)), float(cv.g2(x)), float(cv.g3(x))
    return g3 / (2.0 * g1) - 0.75 * (g2 / g1) ** 2 + g1 * g1 * float(cf.combination(g, n))


def pct_prefactor(cf: CoefficientFunctions, cv: ChangeOfVariable, xs, anchor: float = 0.0) -> np.ndarray:
    """f(x) up to a global constant, with the Q-integral done numerically from `anchor`."""
    xs = np.asarray(xs, dtype=float)
    out = np.empty_like(xs)
    for i, x in enumerate(xs):
        g = _check_point(cf, cv, x)
        lo, hi = sorted((anchor, g))
        if any(lo <= p <= hi for p in cf.poles):
            raise DomainError(f"pole of Q between anchor {anchor} and g={g}")
        integral = quad(cf.Q, anchor, g)
        out[i] = np.exp(0.5 * integral) / np.sqrt(abs(float(cv.g1(x))))
    return out


def laguerre_expansion(g: float, alpha: float, n: int) -> float:
    """Closed form of R - Qdot/2 - Q^2/4 for the Laguerre X1 coefficients."""
    if g == 0 or g == -alpha:
        raise DomainError(f"g={g} is a pole of the Laguerre X1 coefficients")
    return (
        -0.25
        + (2 * alpha * n + alpha**2 - alpha + 2) / (2 * alpha * g)
        - 1.0 / (alpha * (g + alpha))
        - (alpha + 1) * (alpha - 1) / (4 * g * g)
        - 2.0 / (g + alpha) ** 2
    )


class JacobiConstants(NamedTuple):
    C: float
    D: float
    G: float
    J: float
    K: float
    L: float


def jacobi_expansion_constants(alpha: float, beta: float, n: int) -> JacobiConstants:
    if alpha * beta == 0:
        raise DomainError("closed-form constants are singular at alpha * beta = 0")
    if alpha == beta:
        raise DomainError("Jacobi X1 family degenerates for alpha == beta")
    s, dlt, ab2 = beta + alpha, beta - alpha, 2 * alpha * beta
    return JacobiConstants(
        C=dlt * s / ab2,
        D=n * n + (s - 1) * n + 0.25 * (s * s - 2 * s - 4) + (alpha**2 + beta**2) / ab2,
        G=0.5 * dlt * s,
        J=-0.5 * (alpha**2 + beta**2 - 2),
        K=dlt**2 * s / ab2,
        L=-2 * dlt**2,
    )


def jacobi_expansion(g: float, alpha: float, beta: float, n: int) -> float:
    """R - Qdot/2 - Q^2/4 for the Jacobi X1 coefficients, rebuilt from the constants."""
    c = jacobi_expansion_constants(alpha, beta, n)
    one_m = 1.0 - g * g
    d = (beta - alpha) * g - (beta + alpha)
    if one_m == 0 or d == 0:
        raise DomainError(f"g={g} is a pole of the Jacobi X1 coefficients")
    return (c.C * g + c.D) / one_m + (c.G * g + c.J) / one_m**2 + c.K / d + c.L / d**2


def energy_extract(cf, cv, n: int, xs, potential):
    """Recover E as the mean of pct_rhs + V over `xs`.

    Returns ``(E, max_dev)``; a genuine solution has max_dev at rounding level.
    """
    xs = np.asarray(xs, dtype=float)
    if xs.size < 10:
        raise DomainError("energy_extract needs at least 10 sample points")
    vals = np.array([pct_rhs(cf, cv, n, x) + float(potential(x)) for x in xs])
    e = float(np.mean(vals))
    return e, float(np.max(np.abs(vals - e)))

"""Superpotential, partner potential and translational shape invariance.

The extended potential is identified with V(+) = W^2 - W' + E0 at the
factorization energy E0 = E_0 of the model, W = -psi0'/psi0.  The partner
V(-) = V(+) + 2W' = W^2 + W' + E0.
"""
from dataclasses import dataclass

import numpy as np

from . import models
from .errors import DomainError
from .numerics import fd_derivative


@dataclass(frozen=True)
class FactorizationSpec:
    params: object

    @property
    def family(self) -> str:
        return models.family_of(self.params)

    @property
    def e0(self) -> float:
        return models.energy(self.params, 0)


def _check_x(spec, x):
    x = np.asarray(x, dtype=float)
    lo, hi = models.domain(spec.params)
    if np.any(x <= lo) or np.any(x >= hi):
        raise DomainError(f"superpotential is singular outside ({lo}, {hi})")
    return x


def _out(v):
    return v if np.ndim(v) else float(v)


def superpotential_closed(spec: FactorizationSpec, x):
    """Closed forms ``(W1, W2)``: conventional part and rational correction."""
    x = _check_x(spec, x)
    p = spec.params
    if spec.family == models.OSCILLATOR:
        w, l = p.omega, p.l
        u = w * x**2 + 2 * l + 1
        w1 = 0.5 * w * x - (l + 1) / x
        w2 = 2 * w * x * (1 / u - 1 / (u + 2))
    else:
        a, b = p.bigA, p.bigB
        s, c = np.sin(x), np.cos(x)
        q = 2 * a - 1 - 2 * b * s
        w1 = a * np.tan(x) - b / c
        w2 = -2 * b * c * (1 / q - 1 / (q + 2))
    return _out(w1), _out(w2)


def superpotential_derivative(spec: FactorizationSpec, x):
    """Analytic ``(W1', W2')``."""
    x = _check_x(spec, x)
    p = spec.params
    if spec.family == models.OSCILLATOR:
        w, l = p.omega, p.l
        u = w * x**2 + 2 * l + 1
        v = u + 2
        d1 = 0.5 * w + (l + 1) / x**2
        d2 = 2 * w * (1 / u - 1 / v) - 4 * w * w * x * x * (1 / u**2 - 1 / v**2)
    else:
        a, b = p.bigA, p.bigB
        s, c = np.sin(x), np.cos(x)
        q = 2 * a - 1 - 2 * b * s
        r = q + 2
        d1 = (a - b * s) / c**2
        d2 = 2 * b * s * (1 / q - 1 / r) - 4 * b * b * c * c * (1 / q**2 - 1 / r**2)
    return _out(d1), _out(d2)


def superpotential(spec: FactorizationSpec, x):
    w1, w2 = superpotential_closed(spec, x)
    return _out(np.asarray(w1) + w2)


def superpotential_prime(spec: FactorizationSpec, x):
    d1, d2 = superpotential_derivative(spec, x)
    return _out(np.asarray(d1) + d2)


def superpotential_from_ground_state(spec: FactorizationSpec, x: float, scale: float = 1.0) -> float:
    """-psi0'/psi0 with psi0' from Richardson-extrapolated central differences."""
    x = float(_check_x(spec, x))
    lo, hi = models.domain(spec.params)

    def psi0(t):
        return scale * models.psi(spec.params, 0, t)

    h = min(0.01 * (1.0 + abs(x)), 0.1 * (x - lo), 0.1 * (hi - x))
    return -fd_derivative(psi0, x, order=1, h=h) / psi0(x)


def partner_potential(spec: FactorizationSpec, x):
    """V(-) = V_extended + 2 W'."""
    return _out(np.asarray(models.potential(spec.params, x)) + 2.0 * np.asarray(superpotential_prime(spec, x)))


def susy_potential(spec: FactorizationSpec, x, sign: int):
    """W^2 - sign * W' + E0; sign=+1 gives V(+), sign=-1 gives V(-)."""
    w = np.asarray(superpotential(spec, x))
    return _out(w * w - sign * np.asarray(superpotential_prime(spec, x)) + spec.e0)


def shape_invariance_report(spec: FactorizationSpec, xs):
    """Measure V(-)(x; a0) - V(+)(x; a1) with a1 = (omega, l+1) or (A+1, B).

    Both sides are taken relative to their own factorization energies, i.e.
    the partner Hamiltonians H(-) = AA^dagger at a0 and H(+) = A^dagger A at a1.
    Their difference is the constant remainder R(a1) = E_1(a0) - E_0(a0).

    Returns:
        (gap, max_dev, raw_offset): mean remainder, its largest deviation over
        `xs`, and the same offset without the zero-point subtraction
        (V(-)(x; a0) - V_extended(x; a1)).
    """
    xs = np.asarray(xs, dtype=float)
    if xs.size < 20:
        raise DomainError("shape_invariance_report needs at least 20 sample points")
    shifted = FactorizationSpec(spec.params.shifted())
    diff = (partner_potential(spec, xs) - spec.e0) - (models.potential(shifted.params, xs) - shifted.e0)
    gap = float(np.mean(diff))
    raw = gap + spec.e0 - shifted.e0
    return gap, float(np.max(np.abs(diff - gap))), raw

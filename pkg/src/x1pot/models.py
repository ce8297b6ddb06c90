"""Standard and rationally extended radial oscillator / Scarf I potentials.

Units are hbar = 2m = 1, so H = -d^2/dx^2 + V(x).  Wavefunctions are returned
unnormalized, built on the monic X1 polynomials from :mod:`x1pot.xpoly`;
normalization is done numerically on sampled tables.
"""
from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import simpson

from . import xpoly
from .errors import DomainError
from .numerics import fd_derivative

OSCILLATOR = "oscillator"
SCARF = "scarf"
FAMILIES = (OSCILLATOR, SCARF)

HALF_PI = 0.5 * np.pi


@dataclass(frozen=True)
class OscillatorParams:
    omega: float = 1.0
    l: int = 0

    family = OSCILLATOR

    def __post_init__(self):
        if not self.omega > 0:
            raise DomainError(f"omega must be > 0, got {self.omega}")
        if int(self.l) != self.l or self.l < 0:
            raise DomainError(f"l must be a nonnegative integer, got {self.l}")
        object.__setattr__(self, "l", int(self.l))

    @property
    def alpha(self) -> float:
        return self.l + 0.5

    def laguerre(self) -> xpoly.LaguerreX1Params:
        return xpoly.LaguerreX1Params(self.alpha)

    def shifted(self) -> "OscillatorParams":
        """Parameters of the shape-invariant partner: l -> l + 1."""
        return replace(self, l=self.l + 1)


@dataclass(frozen=True)
class ScarfParams:
    bigA: float
    bigB: float

    family = SCARF

    def __post_init__(self):
        if not 0 < self.bigB < self.bigA - 1:
            raise DomainError(f"Scarf I needs 0 < B < A - 1, got A={self.bigA}, B={self.bigB}")

    @property
    def alpha(self) -> float:
        return self.bigA - self.bigB - 0.5

    @property
    def beta(self) -> float:
        return self.bigA + self.bigB - 0.5

    def jacobi(self) -> xpoly.JacobiX1Params:
        return xpoly.JacobiX1Params(self.alpha, self.beta)

    def shifted(self) -> "ScarfParams":
        """Parameters of the shape-invariant partner: A -> A + 1."""
        return replace(self, bigA=self.bigA + 1)


@dataclass(frozen=True, eq=False)
class WavefunctionTable:
    xs: np.ndarray
    values: np.ndarray
    nu: int
    normalized: bool = False

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        if xs.shape != vals.shape or xs.ndim != 1:
            raise DomainError("xs and values must be 1-D arrays of equal length")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "values", vals)


def family_of(params) -> str:
    if isinstance(params, OscillatorParams):
        return OSCILLATOR
    if isinstance(params, ScarfParams):
        return SCARF
    raise DomainError(f"unsupported parameter set {params!r}")


def domain(params):
    """Open interval on which the family lives."""
    if family_of(params) == OSCILLATOR:
        return (0.0, np.inf)
    return (-HALF_PI, HALF_PI)


def support_cutoff(params: OscillatorParams, nu_max: int = 5) -> float:
    """Effective right end of the oscillator support for levels up to `nu_max`."""
    e_max = energy_oscillator(nu_max, params)
    return max(10.0, np.sqrt(4.0 * e_max / params.omega) + 6.0 / np.sqrt(params.omega))


def oracle_domain(params, nu_max: int = 5):
    """Interval handed to the finite-difference oracle (Dirichlet at both ends)."""
    if family_of(params) == OSCILLATOR:
        return (0.0, max(20.0 / np.sqrt(params.omega), support_cutoff(params, nu_max)))
    return (-HALF_PI, HALF_PI)


def _check_oscillator_x(x, p):
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("the radial oscillator lives on x >= 0")
    if p.l > 0 and np.any(x == 0):
        raise DomainError("centrifugal term l(l+1)/x^2 is singular at x = 0")
    return x


def _check_scarf_x(x, closed=False):
    x = np.asarray(x, dtype=float)
    bad = np.abs(x) > HALF_PI if closed else np.abs(x) >= HALF_PI
    if np.any(bad):
        raise DomainError("Scarf I lives on -pi/2 < x < pi/2")
    return x


def _out(v):
    return v if np.ndim(v) else float(v)


def v_oscillator_standard(x, p: OscillatorParams):
    x = _check_oscillator_x(x, p)
    with np.errstate(divide="ignore", invalid="ignore"):
        cent = np.where(x == 0, 0.0, p.l * (p.l + 1) / np.where(x == 0, 1.0, x) ** 2)
    return _out(0.25 * p.omega**2 * x**2 + cent)


def v_oscillator_rational(x, p: OscillatorParams):
    """Rational correction V2 added to the standard oscillator."""
    x = np.asarray(x, dtype=float)
    u = p.omega * x**2 + 2 * p.l + 1
    return _out(4.0 * p.omega / u - 8.0 * p.omega * (2 * p.l + 1) / u**2)


def v_oscillator_extended(x, p: OscillatorParams):
    return _out(v_oscillator_standard(x, p) + v_oscillator_rational(x, p))


def v_scarf_standard(x, p: ScarfParams):
    x = _check_scarf_x(x)
    a, b = p.bigA, p.bigB
    sec = 1.0 / np.cos(x)
    return _out((a * (a - 1) + b * b) * sec**2 - b * (2 * a - 1) * sec * np.tan(x))


def v_scarf_rational(x, p: ScarfParams):
    x = np.asarray(x, dtype=float)
    a, b = p.bigA, p.bigB
    den = 2 * a - 1 - 2 * b * np.sin(x)
    return _out(2 * (2 * a - 1) / den - 2 * ((2 * a - 1) ** 2 - 4 * b * b) / den**2)


def v_scarf_extended(x, p: ScarfParams):
    return _out(v_scarf_standard(x, p) + v_scarf_rational(x, p))


def potential(params, x, extended: bool = True):
    if family_of(params) == OSCILLATOR:
        f = v_oscillator_extended if extended else v_oscillator_standard
    else:
        f = v_scarf_extended if extended else v_scarf_standard
    return f(x, params)


def energy_oscillator(nu: int, p: OscillatorParams) -> float:
    return p.omega * (2 * nu + p.l + 1.5)


def energy_scarf(nu: int, p: ScarfParams) -> float:
    return (nu + p.bigA) ** 2


def energy(params, nu: int) -> float:
    """Bound-state energy; identical for the standard and extended potentials."""
    if nu < 0:
        raise DomainError(f"nu must be >= 0, got {nu}")
    if family_of(params) == OSCILLATOR:
        return energy_oscillator(nu, params)
    return energy_scarf(nu, params)


def psi_oscillator(nu: int, p: OscillatorParams, x):
    """Unnormalized extended-oscillator eigenfunction of level `nu`."""
    x = _check_oscillator_x(x, OscillatorParams(p.omega, 0))
    poly = xpoly.x1_laguerre(nu + 1, p.laguerre())
    w = p.omega * x**2
    return _out(x ** (p.l + 1) / (w + 2 * p.l + 1) * xpoly.eval_poly(poly, 0.5 * w) * np.exp(-0.25 * w))


def psi_oscillator_standard(nu: int, p: OscillatorParams, x):
    """Unnormalized standard radial-oscillator eigenfunction (classical Laguerre)."""
    x = _check_oscillator_x(x, OscillatorParams(p.omega, 0))
    poly = xpoly.classical_laguerre(nu, p.alpha)
    w = p.omega * x**2
    return _out(x ** (p.l + 1) * xpoly.eval_poly(poly, 0.5 * w) * np.exp(-0.25 * w))


def _scarf_envelope(p: ScarfParams, x):
    s = np.sin(x)
    return np.clip(1.0 - s, 0.0, None) ** (0.5 * (p.bigA - p.bigB)) * (1.0 + s) ** (0.5 * (p.bigA + p.bigB))


def psi_scarf(nu: int, p: ScarfParams, x):
    """Unnormalized extended-Scarf eigenfunction; zero at the endpoints."""
    x = _check_scarf_x(x, closed=True)
    poly = xpoly.x1_jacobi(nu + 1, p.jacobi())
    s = np.sin(x)
    val = _scarf_envelope(p, x) / (2 * p.bigA - 1 - 2 * p.bigB * s) * xpoly.eval_poly(poly, s)
    return _out(np.where(np.abs(x) == HALF_PI, 0.0, val))


def psi_scarf_standard(nu: int, p: ScarfParams, x):
    x = _check_scarf_x(x, closed=True)
    poly = xpoly.classical_jacobi(nu, p.alpha, p.beta)
    val = _scarf_envelope(p, x) * xpoly.eval_poly(poly, np.sin(x))
    return _out(np.where(np.abs(x) == HALF_PI, 0.0, val))


def psi(params, nu: int, x, extended: bool = True):
    if family_of(params) == OSCILLATOR:
        f = psi_oscillator if extended else psi_oscillator_standard
    else:
        f = psi_scarf if extended else psi_scarf_standard
    return f(nu, params, x)


def ground_state_factorized(params, x):
    """Ground state split as psi10 * (1 + phi).

    psi10 is the conventional ground state and phi carries the effect of the
    rational terms.  Returns ``(psi10, one_plus_phi)``.
    """
    if family_of(params) == OSCILLATOR:
        x = _check_oscillator_x(x, OscillatorParams(params.omega, 0))
        psi10 = x ** (params.l + 1) * np.exp(-0.25 * params.omega * x**2)
        phi = 2.0 / (params.omega * x**2 + 2 * params.l + 1)
    else:
        x = _check_scarf_x(x, closed=True)
        psi10 = _scarf_envelope(params, x)
        phi = 2.0 / (2 * params.bigA - 1 - 2 * params.bigB * np.sin(x))
    return _out(psi10), _out(1.0 + phi)


def sample_grid(params, n_points: int = 4001, nu_max: int = 5) -> np.ndarray:
    """Closed uniform grid covering the effective support, endpoints included."""
    if family_of(params) == OSCILLATOR:
        return np.linspace(0.0, support_cutoff(params, nu_max), n_points)
    return np.linspace(-HALF_PI, HALF_PI, n_points)


def wavefunction_table(params, nu: int, xs=None, extended: bool = True, normalized: bool = False):
    if xs is None:
        xs = sample_grid(params, nu_max=max(nu, 5))
    xs = np.asarray(xs, dtype=float)
    table = WavefunctionTable(xs, psi(params, nu, xs, extended=extended), nu)
    return normalize(table) if normalized else table


def count_nodes(table: WavefunctionTable) -> int:
    """Sign changes between consecutive samples; exact zeros are skipped."""
    if len(table.values) < 2:
        raise DomainError("need at least two samples to count nodes")
    s = np.sign(table.values)
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def table_norm2(table: WavefunctionTable) -> float:
    return float(simpson(table.values**2, x=table.xs))


def table_overlap(t1: WavefunctionTable, t2: WavefunctionTable) -> float:
    if t1.xs.shape != t2.xs.shape or not np.array_equal(t1.xs, t2.xs):
        raise DomainError("overlap needs tables on the same grid")
    return float(simpson(t1.values * t2.values, x=t1.xs))


def normalize(table: WavefunctionTable) -> WavefunctionTable:
    """Rescale so the composite-Simpson norm of the table is 1."""
    n2 = table_norm2(table)
    if not n2 > 0:
        raise DomainError("cannot normalize a table with zero norm")
    return WavefunctionTable(table.xs, table.values / np.sqrt(n2), table.nu, normalized=True)


def schrodinger_residual(params, nu: int, xs, extended: bool = True, energy_shift: float = 0.0) -> float:
    """max |-psi'' + V psi - E psi| / max |E psi| over `xs`.

    psi'' comes from Richardson-extrapolated central differences of the
    analytic wavefunction; `energy_shift` perturbs E (a control that must fail).
    """
    xs = np.asarray(xs, dtype=float)
    e = energy(params, nu) + energy_shift
    lo, hi = domain(params)

    def f(t):
        return psi(params, nu, t, extended=extended)

    res = np.empty_like(xs)
    epsi = np.empty_like(xs)
    for i, x in enumerate(xs):
        h = min(0.01 * (1.0 + abs(x)), 0.1 * (x - lo), 0.1 * (hi - x))
        d2 = fd_derivative(f, x, order=2, h=h)
        y = f(x)
        res[i] = -d2 + (potential(params, x, extended=extended) - e) * y
        epsi[i] = e * y
    return float(np.max(np.abs(res)) / np.max(np.abs(epsi)))

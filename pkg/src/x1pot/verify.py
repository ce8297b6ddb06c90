"""Verification suites run by ``x1pot verify``.

Every check reports a nonnegative deviation ``value`` and a ``tolerance``;
a check passes iff value <= tolerance, so a saved summary can be re-judged
from its numbers alone.
"""
from dataclasses import asdict, dataclass, field

import numpy as np

from . import models, pct, susy, xpoly
from .numerics import eigen_lowest, solve_spectrum, sturm_count, TridiagonalMatrix

SCHEMA_VERSION = 1

OSCILLATOR_SWEEP = [models.OscillatorParams(w, l) for w in (1.0, 2.0) for l in (0, 1, 2)]
SCARF_SWEEP = [models.ScarfParams(a, b) for a, b in ((3.0, 1.0), (4.0, 1.5), (5.0, 2.0))]
SWEEP = OSCILLATOR_SWEEP + SCARF_SWEEP

NU_MAX = 5
ORACLE_N = 8000
SPECTRUM_TOL = {models.OSCILLATOR: 1e-4, models.SCARF: 1e-3}


@dataclass
class CheckResult:
    name: str
    value: float
    tolerance: float
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.value <= self.tolerance)

    def to_dict(self):
        d = asdict(self)
        d["passed"] = self.passed
        return d


@dataclass
class VerifySummary:
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }


def label(params) -> str:
    if models.family_of(params) == models.OSCILLATOR:
        return f"oscillator(omega={params.omega:g},l={params.l})"
    return f"scarf(A={params.bigA:g},B={params.bigB:g})"


def residual_points(params, n: int = 50) -> np.ndarray:
    """Interior sample points used by the pointwise checks."""
    if models.family_of(params) == models.OSCILLATOR:
        return np.linspace(0.2, 6.0 / np.sqrt(params.omega), n)
    return np.linspace(-1.3, 1.3, n)


def perturbed_potential(params, factor: float):
    """Extended potential with its rational part scaled by `factor` (fault injection)."""
    if models.family_of(params) == models.OSCILLATOR:
        return lambda x: models.v_oscillator_standard(x, params) + factor * models.v_oscillator_rational(x, params)
    return lambda x: models.v_scarf_standard(x, params) + factor * models.v_scarf_rational(x, params)


def numeric_spectrum(params, k: int = NU_MAX + 1, extended: bool = True, n: int = ORACLE_N, refine: bool = True, v=None):
    if v is None:
        v = lambda x: models.potential(params, x, extended=extended)  # noqa: E731
    return solve_spectrum(v, models.oracle_domain(params, k - 1), k, n=n, refine=refine)


def check_spectrum():
    out = []
    for p in SWEEP:
        exact = np.array([models.energy(p, nu) for nu in range(NU_MAX + 1)])
        for ext in (True, False):
            dev = float(np.max(np.abs(numeric_spectrum(p, extended=ext) - exact)))
            kind = "extended" if ext else "standard"
            out.append(CheckResult(f"spectrum/{label(p)}/{kind}", dev, SPECTRUM_TOL[models.family_of(p)]))
    return out


def check_isospectrality(perturb_v2: bool = False):
    out = []
    for p in SWEEP:
        v = perturbed_potential(p, 1.25) if perturb_v2 else None
        ext = numeric_spectrum(p, v=v)
        std = numeric_spectrum(p, extended=False)
        tol = 2 * SPECTRUM_TOL[models.family_of(p)]
        out.append(CheckResult(f"isospectrality/{label(p)}", float(np.max(np.abs(ext - std))), tol))
    return out


def check_point_value():
    out = []
    for w in (1.0, 2.0):
        p = models.OscillatorParams(w, 0)
        dev = abs(models.v_oscillator_extended(0.0, p) + 4 * w)
        out.append(CheckResult(f"point-value/V(0)=-4omega/omega={w:g}", dev, 0.0))
    return out


def check_residual():
    out = []
    for p in SWEEP:
        xs = residual_points(p)
        for ext in (True, False):
            worst = max(models.schrodinger_residual(p, nu, xs, extended=ext) for nu in range(NU_MAX + 1))
            kind = "extended" if ext else "standard"
            out.append(CheckResult(f"residual/{label(p)}/{kind}", worst, 1e-6))
    return out


def _node_grid(params, n_points):
    if models.family_of(params) == models.OSCILLATOR:
        return np.linspace(0.0, models.support_cutoff(params, NU_MAX), n_points)[1:]
    return np.linspace(-models.HALF_PI, models.HALF_PI, n_points)[1:-1]


def check_nodes():
    out = []
    for p in SWEEP:
        worst = 0
        for nu in range(NU_MAX + 1):
            for n_points in (2001, 4001):
                t = models.wavefunction_table(p, nu, xs=_node_grid(p, n_points))
                worst = max(worst, abs(models.count_nodes(t) - nu))
        out.append(CheckResult(f"nodes/{label(p)}", float(worst), 0.0))
    return out


def check_orthogonality():
    out = []
    for p in (models.OscillatorParams(1.0, 0), models.ScarfParams(3.0, 1.0)):
        tables = [models.wavefunction_table(p, nu, normalized=True) for nu in range(5)]
        gram = np.array([[models.table_overlap(a, b) for b in tables] for a in tables])
        out.append(CheckResult(f"orthogonality/{label(p)}", float(np.max(np.abs(gram - np.eye(5)))), 1e-7))
    for fam, prm in ((xpoly.LAGUERRE_X1, xpoly.LaguerreX1Params(0.5)), (xpoly.JACOBI_X1, xpoly.JacobiX1Params(1.5, 3.5))):
        gram = np.array([[xpoly.x1_inner_product(fam, prm, m, n) for n in range(1, 9)] for m in range(1, 9)])
        d = np.sqrt(np.diag(gram))
        rel = np.abs(gram) / np.outer(d, d) - np.eye(8)
        out.append(CheckResult(f"x1-gram/{fam}", float(np.max(np.abs(rel))), 1e-8))
    return out


def check_xpoly():
    out = []
    for fam, prm, pts in (
        (xpoly.LAGUERRE_X1, xpoly.LaguerreX1Params(0.5), np.linspace(0.1, 5.0, 50)),
        (xpoly.LAGUERRE_X1, xpoly.LaguerreX1Params(2.5), np.linspace(0.1, 5.0, 50)),
        (xpoly.JACOBI_X1, xpoly.JacobiX1Params(1.5, 3.5), np.linspace(-0.95, 0.95, 50)),
        (xpoly.JACOBI_X1, xpoly.JacobiX1Params(2.5, 6.5), np.linspace(-0.95, 0.95, 50)),
    ):
        worst = 0.0
        for n in range(1, 13):
            poly = xpoly.x1_polynomial(fam, prm, n)
            res = np.abs(xpoly.ode_residual(poly, fam, prm, n, pts)).max()
            worst = max(worst, res / (1.0 + np.abs(poly.deriv(2)(pts)).max()))
        out.append(CheckResult(f"x1-ode/{fam}/{prm}", float(worst), 1e-9))
    return out


def check_pct():
    out = []
    for p in SWEEP:
        inst = pct.instance(p)
        xs = residual_points(p)
        worst = 0.0
        for nu in range(NU_MAX + 1):
            e, dev = pct.energy_extract(inst.cf, inst.cv, nu + 1, xs, lambda x: models.potential(p, x))
            exact = models.energy(p, nu)
            worst = max(worst, max(dev, abs(e - exact)) / (1 + abs(exact)))
        out.append(CheckResult(f"pct-constancy/{label(p)}", worst, 1e-8))
    rng = np.random.default_rng(20240601)
    worst = 0.0
    cf = pct.laguerre_coefficients
    for _ in range(30):
        alpha, n, g = rng.uniform(0.5, 4.0), int(rng.integers(1, 9)), rng.uniform(0.05, 20.0)
        num = float(cf(alpha).combination(g, n))
        worst = max(worst, abs(pct.laguerre_expansion(g, alpha, n) - num) / max(1.0, abs(num)))
    out.append(CheckResult("pct-expansion/laguerre", worst, 1e-10))
    worst = 0.0
    for _ in range(30):
        alpha, beta = rng.uniform(0.5, 4.0), rng.uniform(4.5, 8.0)
        n, g = int(rng.integers(1, 9)), rng.uniform(-0.98, 0.98)
        num = float(pct.jacobi_coefficients(alpha, beta).combination(g, n))
        worst = max(worst, abs(pct.jacobi_expansion(g, alpha, beta, n) - num) / max(1.0, abs(num)))
    out.append(CheckResult("pct-expansion/jacobi", worst, 1e-10))
    return out


def check_susy():
    out = []
    for p in SWEEP:
        spec = susy.FactorizationSpec(p)
        xs = residual_points(p)
        w = np.asarray(susy.superpotential(spec, xs))
        w_fd = np.array([susy.superpotential_from_ground_state(spec, x) for x in xs])
        out.append(CheckResult(f"susy-W/{label(p)}", float(np.max(np.abs(w - w_fd) / (1 + np.abs(w)))), 1e-7))
        v_ext = np.asarray(models.potential(p, xs))
        vp = np.asarray(susy.susy_potential(spec, xs, +1))
        vm = np.asarray(susy.susy_potential(spec, xs, -1))
        rel = max(
            np.max(np.abs(vp - v_ext) / (1 + np.abs(v_ext))),
            np.max(np.abs(vm - np.asarray(susy.partner_potential(spec, xs))) / (1 + np.abs(vm))),
        )
        out.append(CheckResult(f"susy-V/{label(p)}", float(rel), 1e-7))
        tol = SPECTRUM_TOL[models.family_of(p)]
        exact = np.array([models.energy(p, nu) for nu in range(1, NU_MAX + 1)])
        part = numeric_spectrum(p, k=NU_MAX, v=lambda x: susy.partner_potential(spec, x))
        out.append(CheckResult(f"susy-partner-spectrum/{label(p)}", float(np.max(np.abs(part - exact))), tol))
    return out


def check_shape_invariance():
    out = []
    for p in SWEEP:
        spec = susy.FactorizationSpec(p)
        gap, dev, raw = susy.shape_invariance_report(spec, residual_points(p))
        expected = models.energy(p, 1) - models.energy(p, 0)
        value = max(dev, abs(gap - expected)) / (1 + abs(gap))
        out.append(
            CheckResult(
                f"shape-invariance/{label(p)}",
                float(value),
                1e-8,
                {"gap": gap, "expected_gap": expected, "max_dev": dev, "raw_offset": raw},
            )
        )
    return out


def check_numerics():
    out = []
    rng = np.random.default_rng(7)
    worst = 0
    for _ in range(20):
        n = int(rng.integers(2, 9))
        m = TridiagonalMatrix(rng.normal(size=n), rng.normal(size=n - 1))
        eig = np.sort(np.linalg.eigvalsh(m.dense()))
        for lam in rng.normal(scale=2.0, size=5):
            worst = max(worst, abs(sturm_count(m, lam) - int(np.sum(eig < lam))))
        worst = max(worst, float(np.max(np.abs(eigen_lowest(m, n) - eig))) > 1e-9)
    out.append(CheckResult("numerics/sturm-vs-dense", float(worst), 0.0))
    e = solve_spectrum(lambda x: 0.25 * x**2, (-30.0, 30.0), 3)
    out.append(CheckResult("numerics/harmonic-well", float(np.max(np.abs(e - [0.5, 1.5, 2.5]))), 1e-6))
    return out


SUITES = {
    "xpoly": check_xpoly,
    "numerics": check_numerics,
    "point-value": check_point_value,
    "spectrum": check_spectrum,
    "isospectrality": check_isospectrality,
    "residual": check_residual,
    "nodes": check_nodes,
    "orthogonality": check_orthogonality,
    "pct": check_pct,
    "susy": check_susy,
    "shape-invariance": check_shape_invariance,
}


def run(only=None, perturb_v2: bool = False) -> VerifySummary:
    names = list(SUITES) if not only else list(only)
    checks = []
    for name in names:
        if name == "isospectrality":
            checks.extend(check_isospectrality(perturb_v2=perturb_v2))
        else:
            checks.extend(SUITES[name]())
    return VerifySummary(checks)

import numpy as np
import pytest
import sympy as sp

from x1pot import models, pct
from x1pot.errors import DomainError
from x1pot.models import OscillatorParams, ScarfParams
from x1pot.numerics import fd_derivative


def _lag_sym(alpha, n):
    g = sp.symbols("g")
    a = sp.nsimplify(alpha)
    # Laguerre X1 equation written as g(g+a)F'' - (g-a)(g+a+1)F' + [(n-2)a + n g]F = 0
    Q = -(g - a) * (g + a + 1) / (g * (g + a))
    R = ((n - 2) * a + n * g) / (g * (g + a))
    return g, sp.simplify(R - sp.diff(Q, g) / 2 - Q**2 / 4)


class TestCoefficients:
    @pytest.mark.parametrize("alpha", [0.5, 1.5, 3.0])
    def test_laguerre_qdot_matches_fd(self, alpha):
        cf = pct.laguerre_coefficients(alpha)
        for g in (0.3, 1.0, 4.5):
            assert cf.Qdot(g) == pytest.approx(fd_derivative(cf.Q, g, 1, h=0.05), rel=1e-9)

    @pytest.mark.parametrize("ab", [(1.5, 3.5), (2.5, 6.5), (0.7, 4.1)])
    def test_jacobi_qdot_matches_fd(self, ab):
        cf = pct.jacobi_coefficients(*ab)
        for g in (-0.6, 0.1, 0.7):
            assert cf.Qdot(g) == pytest.approx(fd_derivative(cf.Q, g, 1, h=0.02), rel=1e-9)


class TestExpansions:
    def test_laguerre_reference_value(self):
        assert pct.laguerre_expansion(1.0, 0.5, 1) == pytest.approx(0.46528, abs=5e-6)

    def test_laguerre_large_g(self):
        assert pct.laguerre_expansion(1e9, 0.5, 3) == pytest.approx(-0.25, abs=1e-8)

    @pytest.mark.parametrize("alpha,n", [(0.5, 1), (1.5, 3), (2.5, 6)])
    def test_laguerre_symbolic(self, alpha, n):
        g, expr = _lag_sym(alpha, n)
        f = sp.lambdify(g, expr)
        for x in (0.2, 1.0, 3.3, 11.0):
            assert pct.laguerre_expansion(x, alpha, n) == pytest.approx(float(f(x)), rel=1e-13)

    def test_laguerre_pole(self):
        with pytest.raises(DomainError):
            pct.laguerre_expansion(0.0, 0.5, 1)

    def test_jacobi_constants_example(self):
        c = pct.jacobi_expansion_constants(1.5, 3.5, 1)
        np.testing.assert_allclose(c, [20 / 21, 767 / 84, 5.0, -6.25, 40 / 21, -8.0], rtol=1e-14)

    def test_jacobi_constants_singular(self):
        with pytest.raises(DomainError):
            pct.jacobi_expansion_constants(0.0, 2.0, 1)

    @pytest.mark.parametrize("seed", range(3))
    def test_expansions_match_direct(self, seed):
        rng = np.random.default_rng(seed)
        for _ in range(30):
            alpha, beta, n = rng.uniform(0.3, 4.0), rng.uniform(4.5, 8.0), int(rng.integers(1, 9))
            g = rng.uniform(-0.97, 0.97)
            direct = float(pct.jacobi_coefficients(alpha, beta).combination(g, n))
            assert pct.jacobi_expansion(g, alpha, beta, n) == pytest.approx(direct, rel=1e-10, abs=1e-10)
            gl = rng.uniform(0.05, 30.0)
            direct = float(pct.laguerre_coefficients(alpha).combination(gl, n))
            assert pct.laguerre_expansion(gl, alpha, n) == pytest.approx(direct, rel=1e-10, abs=1e-10)


class TestRhs:
    def test_oscillator_points(self):
        inst = pct.instance(OscillatorParams(1.0, 0))
        assert pct.pct_rhs(inst.cf, inst.cv, 1, 1.0) == pytest.approx(1.25, abs=1e-13)
        assert pct.pct_rhs(inst.cf, inst.cv, 1, 2.0) == pytest.approx(0.02, abs=1e-13)

    @pytest.mark.parametrize("x", np.linspace(0.1, 7.0, 9))
    def test_oscillator_constancy(self, x):
        p = OscillatorParams(1.0, 0)
        inst = pct.instance(p)
        assert pct.pct_rhs(inst.cf, inst.cv, 1, x) + models.v_oscillator_extended(x, p) == pytest.approx(1.5, abs=1e-11)

    def test_rhs_domain(self):
        inst = pct.instance(ScarfParams(3.0, 1.0))
        with pytest.raises(DomainError):
            pct.pct_rhs(inst.cf, inst.cv, 1, 1.6)


class TestPrefactor:
    def test_trivial_change(self):
        cf = pct.CoefficientFunctions(Q=lambda g: 0.0 * g, Qdot=lambda g: 0.0 * g, R=lambda g, n: 0.0 * g, poles=())
        cv = pct.ChangeOfVariable(g=lambda x: x, g1=lambda x: 1.0, g2=lambda x: 0.0, g3=lambda x: 0.0, domain=(-5, 5))
        np.testing.assert_allclose(pct.pct_prefactor(cf, cv, [-1.0, 0.5, 3.0]), 1.0)

    @pytest.mark.parametrize("p", [OscillatorParams(1.0, 0), OscillatorParams(2.0, 2)])
    def test_oscillator_structure(self, p):
        inst = pct.instance(p)
        xs = np.linspace(0.3, 5.0, 12)
        ref = xs ** (p.l + 1) * np.exp(-p.omega * xs**2 / 4) / (p.omega * xs**2 + 2 * p.l + 1)
        ratio = pct.pct_prefactor(inst.cf, inst.cv, xs, inst.anchor) / ref
        np.testing.assert_allclose(ratio, ratio[0], rtol=1e-6)

    @pytest.mark.parametrize("p", [ScarfParams(3.0, 1.0), ScarfParams(5.0, 2.0)])
    def test_scarf_structure(self, p):
        inst = pct.instance(p)
        xs = np.linspace(-1.3, 1.3, 12)
        s = np.sin(xs)
        a, b = p.bigA, p.bigB
        ref = (1 - s) ** ((a - b) / 2) * (1 + s) ** ((a + b) / 2) / (2 * a - 1 - 2 * b * s)
        ratio = pct.pct_prefactor(inst.cf, inst.cv, xs, inst.anchor) / ref
        np.testing.assert_allclose(ratio, ratio[0], rtol=1e-6)


class TestEnergyExtract:
    def test_oscillator(self):
        p = OscillatorParams(1.0, 0)
        inst = pct.instance(p)
        e, dev = pct.energy_extract(inst.cf, inst.cv, 1, np.linspace(0.2, 6, 50), lambda x: models.potential(p, x))
        assert e == pytest.approx(1.5, abs=1e-9) and dev <= 1e-9

    def test_scarf(self):
        p = ScarfParams(3.0, 1.0)
        inst = pct.instance(p)
        e, dev = pct.energy_extract(inst.cf, inst.cv, 1, np.linspace(-1.3, 1.3, 50), lambda x: models.potential(p, x))
        assert e == pytest.approx(9.0, abs=1e-9) and dev <= 1e-9

    def test_wrong_potential(self):
        p = OscillatorParams(1.0, 0)
        inst = pct.instance(p)
        _, dev = pct.energy_extract(inst.cf, inst.cv, 1, np.linspace(0.2, 6, 50), lambda x: models.potential(p, x, extended=False))
        assert dev > 0.1

    def test_too_few_points(self):
        inst = pct.instance(OscillatorParams())
        with pytest.raises(DomainError):
            pct.energy_extract(inst.cf, inst.cv, 1, np.linspace(0.2, 6, 5), lambda x: 0.0)

    @pytest.mark.parametrize("p", [OscillatorParams(2.0, 1), ScarfParams(4.0, 1.5)])
    def test_all_levels(self, p):
        inst = pct.instance(p)
        xs = np.linspace(0.2, 4.0, 30) if models.family_of(p) == models.OSCILLATOR else np.linspace(-1.3, 1.3, 30)
        for nu in range(6):
            e, dev = pct.energy_extract(inst.cf, inst.cv, nu + 1, xs, lambda x: models.potential(p, x))
            exact = models.energy(p, nu)
            assert abs(e - exact) <= 1e-8 * (1 + exact) and dev <= 1e-8 * (1 + exact)


class TestChangeOfVariable:
    @pytest.mark.parametrize("cv", [pct.quadratic_change(2.0), pct.quadratic_change(4.0), pct.sine_change()], ids=["quad-2", "quad-4", "sine"])
    def test_derivative_chain(self, cv):
        lo, hi = cv.domain
        hi = min(hi, 6.0)
        for x in np.linspace(lo, hi, 22)[1:-1]:
            assert cv.g1(x) > 0
            for f, df in ((cv.g, cv.g1), (cv.g1, cv.g2), (cv.g2, cv.g3)):
                ref = float(df(x))
                assert fd_derivative(f, x, 1, h=0.01) == pytest.approx(ref, rel=1e-7, abs=1e-9)

    def test_quadratic_matches_model_variable(self):
        cv = pct.instance(OscillatorParams(2.0, 1)).cv
        assert cv.g(1.5) == pytest.approx(2.0 * 1.5**2 / 2)

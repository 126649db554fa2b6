import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import green_series_ref, mellin_kernel_ref, rel
from fracschro import (ContourSpec, ConvergenceError, DomainError, FractionalParams, GreenEval,
                       HFunctionSpec, PoleError, complex_gamma, fox_h, fox_h_eval, fox_h_zero_limit,
                       mellin_kernel, reciprocal, wright_m)
from fracschro.free_particle import green_foxh_eval, green_spec, mellin_form_spec
from fracschro.linear_potential import f_beta_spec, linear_spec

SOLUTION_SPECS = {
    "green": green_spec(1.5, (1.5 - 0.3) / 3.0),
    "linear": linear_spec(1.5, 0.3),
    "fbeta": f_beta_spec(0.5),
}


class TestSpec:
    def test_orders_checked(self):
        with pytest.raises(DomainError):
            HFunctionSpec.from_pairs(2, 1, [(0.5, 1.0)], [(0.0, 1.0)])

    def test_positive_scales(self):
        with pytest.raises(DomainError, match="positive"):
            HFunctionSpec.from_pairs(1, 0, [], [(0.0, -1.0)])

    def test_empty_strip(self):
        # left poles reach up to 2, right poles start at 0
        with pytest.raises(DomainError, match="strip"):
            HFunctionSpec.from_pairs(1, 1, [(1.0, 1.0)], [(-2.0, 1.0)])

    def test_strip_and_mu(self):
        sp = green_spec(1.5, 0.4)
        assert sp.strip == (-1.0, 0.0)
        assert sp.mu == pytest.approx(1 - 1 / 1.5)

    def test_contour_spec_checks(self):
        with pytest.raises(DomainError):
            ContourSpec(nodes=8)
        with pytest.raises(DomainError):
            ContourSpec(half_height=0.0)


class TestKernel:
    def test_gaussian_case(self):
        # Gamma(s/2)Gamma(1-s)/(Gamma(s/2)Gamma(1-s/2)) at s = 1/2
        val = mellin_kernel(mellin_form_spec(2.0, 0.5), 0.5)
        assert val == pytest.approx(1.446409084632077142535701449843129003399, rel=1e-14)

    def test_composed_by_hand(self):
        a, th = 1.5, 0.3
        tau = (a - th) / (2 * a)
        s = 0.5
        hand = (complex_gamma(s / a) * complex_gamma(1 - s)
                / (complex_gamma(tau * s) * complex_gamma(1 - tau * s)))
        val = mellin_kernel(mellin_form_spec(a, tau), s)
        assert val == pytest.approx(0.888395803193841, rel=1e-13)
        assert val == pytest.approx(hand, rel=1e-14)

    @given(st.floats(-0.9, -0.1), st.floats(-40, 40))
    def test_against_mpmath(self, x, y):
        sp = SOLUTION_SPECS["green"]
        s = complex(x, y)
        ref = mellin_kernel_ref(sp.upper, sp.lower, sp.m, sp.n, s)
        assert abs(mellin_kernel(sp, s) - ref) <= 1e-11 * abs(ref)

    @given(st.floats(0.05, 0.95), st.floats(-30, 30))
    def test_schwarz_reflection(self, x, y):
        sp = SOLUTION_SPECS["linear"]
        s = complex(x, y)
        assert abs(mellin_kernel(sp, s.conjugate()) - mellin_kernel(sp, s).conjugate()) <= 1e-12 * abs(
            mellin_kernel(sp, s))

    def test_pole(self):
        with pytest.raises(PoleError):
            mellin_kernel(green_spec(1.5, 0.4), -1.0)


class TestReciprocal:
    @pytest.mark.parametrize("name", sorted(SOLUTION_SPECS))
    def test_involution(self, name):
        sp = SOLUTION_SPECS[name]
        assert reciprocal(reciprocal(sp)) == sp

    def test_mellin_form_maps_to_green_form(self):
        for a, tau in ((1.5, 0.4), (1.8, 0.55)):
            assert reciprocal(mellin_form_spec(a, tau)) == green_spec(a, tau)

    def test_rule(self):
        sp = SOLUTION_SPECS["fbeta"]
        r = reciprocal(sp)
        assert (r.m, r.n, r.p, r.q) == (sp.n, sp.m, sp.q, sp.p)
        assert r.upper == tuple((1 - b, B) for b, B in sp.lower)
        assert r.lower == tuple((1 - a, A) for a, A in sp.upper)


class TestEvaluation:
    def test_gaussian_reduction(self):
        # at alpha = 2 the Green H-function is z M_{1/2}(z) = z exp(-z^2/4)/sqrt(pi)
        sp = green_spec(2.0, 0.5)
        for r in (0.3, 1.0, 2.5, 5.0):
            for phase in (0.0, -math.pi / 4, -0.6):
                z = r * cmath.exp(1j * phase)
                want = z * wright_m(0.5, z)
                assert abs(fox_h(sp, z) - want) <= 1e-10 * abs(want)

    @pytest.mark.parametrize("a, tau", [(1.5, 0.4), (1.2, 0.5), (1.9, 0.52)])
    def test_small_argument_single_residue(self, a, tau):
        # the pole of Gamma(1+s) at s = -1 dominates: H ~ z Gamma(1/a) sin(pi tau)/pi
        z = 1e-4 * cmath.exp(-0.7j)
        lead = z * math.gamma(1 / a) * math.sin(math.pi * tau) / math.pi
        assert abs(fox_h(green_spec(a, tau), z) - lead) <= 1e-3 * abs(lead)

    @pytest.mark.parametrize("alpha, beta, theta, x", [
        (1.5, 0.9, 0.3, 1.0), (1.5, 0.9, 0.3, -2.5), (1.8, 0.7, -0.2, 4.0),
        (1.2, 1.0, 0.5, 3.0), (1.7, 0.4, 0.0, -6.0), (1.1, 0.9, -0.81, -2.0),
    ])
    def test_green_against_series_reference(self, alpha, beta, theta, x):
        ref = green_series_ref(x, 1.0, alpha, beta, theta)
        g = GreenEval(FractionalParams(alpha, beta, theta))
        assert rel(green_foxh_eval(g, x, 1.0).value, ref) < 1e-8

    @pytest.mark.parametrize("method", ["contour", "series"])
    def test_methods_agree(self, method):
        sp = SOLUTION_SPECS["green"]
        z = 1.7 * cmath.exp(-0.9j)
        ref = fox_h_eval(sp, z, method="series" if method == "contour" else "contour").value
        assert rel(fox_h_eval(sp, z, method=method).value, ref) < 1e-10

    def test_vertical_line_with_explicit_truncation(self):
        sp = green_spec(1.5, 0.5)
        z = 1.3
        plain = fox_h_eval(sp, z, ContourSpec(gamma=-0.4, half_height=30.0, nodes=401, deform=False),
                           method="contour")
        assert plain.method == "contour"
        assert rel(plain.value, fox_h(sp, z)) < 1e-8

    def test_error_estimate_returned(self):
        res = fox_h_eval(SOLUTION_SPECS["green"], 2.0 * cmath.exp(-1.2j))
        assert 0 <= res.rel_error < 1e-8
        assert res.evaluations > 0

    @given(st.floats(0.2, 4.0), st.floats(-1.9, -0.3))
    def test_conjugation(self, r, phase):
        sp = SOLUTION_SPECS["green"]
        z = r * cmath.exp(1j * phase)
        a, b = fox_h(sp, z), fox_h(sp, z.conjugate())
        assert abs(b - a.conjugate()) <= 1e-10 * abs(a)

    def test_zero_limit(self):
        # H for the linear spec at y = 0 is the s = 0 residue
        sp = linear_spec(2.0, 0.0)
        small = fox_h(sp, 1e-7)
        assert rel(fox_h_zero_limit(sp), small) < 1e-5

    def test_zero_limit_unbounded(self):
        with pytest.raises(DomainError):
            # Gamma(s - 1/2) has its top left pole at s = 1/2
            fox_h_zero_limit(HFunctionSpec.from_pairs(1, 0, [], [(-0.5, 1.0)]))


class TestFailures:
    def test_zero_argument(self):
        with pytest.raises(DomainError):
            fox_h(SOLUTION_SPECS["green"], 0.0)

    def test_gamma_outside_strip(self):
        with pytest.raises(DomainError, match="strip"):
            fox_h_eval(SOLUTION_SPECS["green"], 1.0, ContourSpec(gamma=0.5), method="contour")

    def test_unknown_method(self):
        with pytest.raises(DomainError):
            fox_h_eval(SOLUTION_SPECS["green"], 1.0, method="magic")

    def test_out_of_class_raises(self):
        # double-range overflow of both evaluators near alpha = 1
        g = GreenEval(FractionalParams(1.3, 0.3, 0.0))
        with pytest.raises(ConvergenceError):
            green_foxh_eval(g, -8.0, 1.0)

    @pytest.mark.parametrize("alpha, beta, theta, x", [
        (1.3, 0.6, -0.63, -8.0), (1.1, 1.0, 0.0, 2.0), (1.1, 0.9, -0.81, -2.0), (1.5, 0.9, 0.0, 8.0),
    ])
    def test_hard_cases_are_right_or_refused(self, alpha, beta, theta, x):
        # these once produced confident but wrong contour values
        g = GreenEval(FractionalParams(alpha, beta, theta))
        ref = green_series_ref(x, 1.0, alpha, beta, theta)
        try:
            res = green_foxh_eval(g, x, 1.0)
        except ConvergenceError:
            return
        assert abs(res.value - ref) <= max(10 * res.error, 1e-8 * abs(ref))


@given(st.floats(1.1, 1.95), st.floats(0.3, 1.0), st.floats(-1, 1), st.floats(-8, 8).filter(lambda v: abs(v) > 0.05))
def test_accuracy_estimate_is_honest(alpha, beta, thf, x):
    theta = thf * (2 - alpha)
    g = GreenEval(FractionalParams(alpha, beta, theta))
    try:
        res = green_foxh_eval(g, x, 1.0)
    except ConvergenceError:
        return
    ref = green_series_ref(x, 1.0, alpha, beta, theta)
    assert abs(res.value - ref) <= max(10 * res.error, 1e-9 * abs(ref))


def _arg(name, rng):
    r = rng.uniform(0.2, 4.0)
    if name == "green":
        return r * cmath.exp(-1j * rng.uniform(0.3, 1.9))
    if name == "linear":
        return complex(rng.uniform(0.2, 4.0) if rng.random() < 0.5 else -rng.uniform(0.2, 2.5))
    return r * cmath.exp(1j * rng.uniform(-1.5, 1.5))


@pytest.mark.parametrize("name", sorted(SOLUTION_SPECS))
def test_reciprocal_identity(name):
    rng = np.random.default_rng(hash(name) % 2 ** 32)
    sp = SOLUTION_SPECS[name]
    for _ in range(10):
        z = _arg(name, rng)
        assert rel(fox_h(reciprocal(sp), 1 / z), fox_h(sp, z)) < 1e-7


@pytest.mark.parametrize("name", sorted(SOLUTION_SPECS))
def test_contour_independence(name):
    rng = np.random.default_rng(7 + len(name))
    sp = SOLUTION_SPECS[name]
    lo, hi = sp.strip
    for _ in range(10):
        z = _arg(name, rng)
        g1, g2 = lo + 0.2 * (hi - lo), lo + 0.8 * (hi - lo)
        a = fox_h_eval(sp, z, ContourSpec(gamma=g1), method="contour").value
        b = fox_h_eval(sp, z, ContourSpec(gamma=g2), method="contour").value
        assert rel(a, b) < 1e-7

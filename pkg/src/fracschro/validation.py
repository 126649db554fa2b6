"""Built-in invariant checks behind ``fracschro validate``.

Each check is small (well under a second or two) and reports the measured
discrepancy next to the bound it is held to.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, List

import numpy as np

from .core import FractionalParams, PhysicalParams
from .foxh import fox_h_eval, reciprocal
from .free_particle import (GreenEval, argument_scale, gaussian_green, green_foxh_eval,
                            green_spec, green_zero, laskin_scale)
from .linear_potential import (BranchCase, LinearPotentialSpec, TimeFractionalSpec, airy_scaled,
                               mittag_leffler_solution, phi_space, pole_set,
                               talbot_inverse_laplace, time_solution)
from .special import airy_ai, wright_m


@dataclass(frozen=True)
class CheckResult:
    name: str
    measure: float
    bound: float

    @property
    def passed(self) -> bool:
        return bool(self.measure <= self.bound)


def _rel(a, b):
    return abs(a - b) / abs(b)


def _gaussian_limit():
    g = GreenEval(FractionalParams(2.0, 1.0, 0.0))
    xs = np.linspace(0.25, 3.0, 6)
    return max(_rel(green_foxh_eval(g, x, 1.0).value, complex(gaussian_green(x, 1.0))) for x in xs)


def _laskin():
    pp = PhysicalParams()
    return max(abs(argument_scale(FractionalParams(a, 1.0), pp, t) - laskin_scale(a, pp, t))
               for a in (1.2, 1.5, 1.9) for t in (0.5, 1.0, 3.0))


def _scaling():
    fp = FractionalParams(1.5, 0.9, 0.3)
    g = GreenEval(fp)
    worst = 0.0
    for x, t, lam in ((0.7, 1.0, 2.0), (-1.3, 0.5, 4.0), (2.1, 2.0, 0.5)):
        lhs = green_foxh_eval(g, lam ** (1 / fp.alpha) * x, lam * t).value
        rhs = lam ** (-1 / fp.alpha) * green_foxh_eval(g, x, t).value
        worst = max(worst, _rel(lhs, rhs))
    return worst


def _symmetry():
    worst = 0.0
    for x in (0.4, 1.7, 3.2):
        a = green_foxh_eval(GreenEval(FractionalParams(1.5, 0.9, 0.3)), -x, 1.0).value
        b = green_foxh_eval(GreenEval(FractionalParams(1.5, 0.9, -0.3)), x, 1.0).value
        worst = max(worst, _rel(a, b))
    return worst


def _origin():
    fp, pp = FractionalParams(1.5, 0.9, 0.3), PhysicalParams()
    g = GreenEval(fp, pp)
    z = green_zero(fp, pp, 1.0)
    return max(_rel(green_foxh_eval(g, x, 1.0).value, z) for x in (-1e-3, 1e-3))


def _reciprocal():
    spec = green_spec(1.5, 0.4)
    worst = 0.0
    for z in (0.5 * cmath.exp(-0.3j), 2.0 * cmath.exp(0.4j), 1.3):
        a = fox_h_eval(spec, z).value
        b = fox_h_eval(reciprocal(spec), 1 / z).value
        worst = max(worst, _rel(a, b))
    return worst


def _time_triple():
    worst = 0.0
    for beta, e in ((0.5, 1.0), (0.8, -1.0), (0.4, -1.0)):
        spec = TimeFractionalSpec(beta, e)
        for t in (0.3, 1.5, 4.0):
            a, b = time_solution(spec, t), mittag_leffler_solution(spec, t)
            c = talbot_inverse_laplace(spec, t)
            worst = max(worst, _rel(a, b), _rel(c, b))
    return worst


def _pole_table():
    bad = 0
    for beta in np.arange(0.01, 1.0, 0.01):
        for e in (-1.0, 1.0):
            rep = pole_set(TimeFractionalSpec(float(beta), e))
            want = 0 if (e < 0 and beta <= 2 / 3 + 1e-12) else 1
            bad += len(rep.poles) != want
    return float(bad)


def _airy():
    spec = LinearPotentialSpec(FractionalParams(2.0, 1.0, 0.0), PhysicalParams(slope_a=1.0, energy_e=0.5))
    xs = np.linspace(-2.0, 3.0, 6)
    ratios = [phi_space(spec, x) / airy_ai(airy_scaled(spec, x)) for x in xs]
    return max(_rel(r, ratios[0]) for r in ratios)


def _wright_gauss():
    xs = np.linspace(-4, 4, 9)
    return max(abs(wright_m(0.5, x) - math.exp(-x * x / 4) / math.sqrt(math.pi)) for x in xs)


CHECKS: List[tuple] = [
    ("gaussian limit", _gaussian_limit, 1e-6),
    ("laskin argument scale", _laskin, 1e-12),
    ("scaling law", _scaling, 1e-8),
    ("skewness symmetry", _symmetry, 1e-12),
    ("origin closed form", _origin, 1e-3),
    ("reciprocal identity", _reciprocal, 1e-7),
    ("time solution equivalence", _time_triple, 1e-5),
    ("pole count table", _pole_table, 0.0),
    ("airy reduction", _airy, 1e-6),
    ("wright M_1/2 gaussian", _wright_gauss, 1e-10),
]


def run_suite(checks=None) -> List[CheckResult]:
    out = []
    for name, fn, bound in (checks or CHECKS):
        try:
            val = float(fn())
        except Exception:  # a check that raises counts as failed
            val = math.inf
        out.append(CheckResult(name, val, bound))
    return out

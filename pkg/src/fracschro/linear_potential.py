"""Separated solution for the potential V(x) = A x.

Space part: phi(x) as an H^{1,1}_{2,2} function of the scaled coordinate
y, with a momentum-space oracle and the Airy reduction at alpha = 2.

Time part: f(t) solving (i hbar)^beta D^beta f = E f through the Laplace
image F(s) = f0 s^{beta-1} / (s^beta - rho), rho = (i hbar)^{-beta} E, as a
residue sum minus a branch-cut integral, with a Mittag-Leffler closed form
and a Talbot numerical inversion as independent checks.
"""
from __future__ import annotations

import cmath
import enum
import logging
import math
import warnings
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from scipy import integrate, special

from ._backend import kernels
from .core import (ComplexValue, FractionalParams, PhysicalParams, Regime,
                   SampledField, as_complex, validate_params)
from .errors import ConvergenceError, DomainError
from .foxh import ContourSpec, FoxHResult, HFunctionSpec, fox_h_eval, fox_h_zero_limit
from .fourier import damped_arg, half_line, richardson_zero
from .special import DEFAULT_SERIES, SeriesConfig, _fsum_complex, mittag_leffler, sum_series

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# space part


@dataclass(frozen=True)
class LinearPotentialSpec:
    fp: FractionalParams
    pp: PhysicalParams

    def __post_init__(self):
        validate_params(self.fp, Regime.LINEAR_POTENTIAL)
        if self.pp.slope_a is None:
            raise DomainError("slope_a must be set for the linear potential")
        if self.pp.energy_e is None:
            raise DomainError("energy_e must be set for the linear potential")

    @property
    def turning_point(self) -> float:
        return self.pp.energy_e / self.pp.slope_a

    @property
    def k0(self) -> float:
        """Momentum scale (C/(A hbar (alpha+1)))^{1/(alpha+1)}."""
        a, pp = self.fp.alpha, self.pp
        return (pp.c_alpha / (pp.slope_a * pp.hbar * (a + 1.0))) ** (1.0 / (a + 1.0))

    @property
    def norm(self) -> float:
        """N = 1/(2 pi hbar k0)."""
        return 1.0 / (2.0 * math.pi * self.pp.hbar * self.k0)

    def scaled(self, x: float) -> float:
        """y = (x - E/A) / (hbar k0)."""
        return (x - self.turning_point) / (self.pp.hbar * self.k0)


def phi_hat(spec: LinearPotentialSpec, p: float) -> complex:
    """Momentum-space eigenfunction, normalised to 1 at p = 0."""
    if p == 0:
        return 1.0 + 0j
    a, th = spec.fp.alpha, spec.fp.theta
    pp = spec.pp
    ca = pp.c_alpha / (a + 1.0)
    if p > 0:
        inner = pp.energy_e * p - ca * p ** (a + 1.0) * cmath.exp(0.5j * th * math.pi)
    else:
        inner = pp.energy_e * p + ca * abs(p) ** (a + 1.0) * cmath.exp(-0.5j * th * math.pi)
    return cmath.exp(-1j / (pp.slope_a * pp.hbar) * inner)


def linear_spec(alpha: float, theta: float) -> HFunctionSpec:
    c2 = (2.0 + alpha - theta) / (2.0 * (alpha + 1.0))
    d2 = (alpha + theta) / (2.0 * (alpha + 1.0))
    return HFunctionSpec.from_pairs(1, 1, [(alpha / (alpha + 1.0), 1.0 / (alpha + 1.0)), (c2, d2)],
                                    [(0.0, 1.0), (c2, d2)])


def phi_space_eval(spec: LinearPotentialSpec, x: float,
                   contour: Optional[ContourSpec] = None, method: str = "auto") -> FoxHResult:
    a = spec.fp.alpha
    pref = 2.0 * math.pi * spec.norm / (a + 1.0)
    y = spec.scaled(x)
    hs = linear_spec(a, spec.fp.theta)
    if y == 0:
        return FoxHResult(pref * fox_h_zero_limit(hs), 0.0, "closed-form")
    # y < 0 is taken on the principal sheet, arg y = pi
    res = fox_h_eval(hs, complex(y), contour, method=method)
    return FoxHResult(pref * res.value, abs(pref) * res.error, res.method, res.evaluations)


def phi_space(spec: LinearPotentialSpec, x: float, contour: Optional[ContourSpec] = None) -> complex:
    return phi_space_eval(spec, x, contour).value


def _phi_pieces(nu, theta, y, damping):
    # phi_1: int_0^inf e^{iyw} exp(i e^{i theta pi/2} w^nu) dw
    # phi_2: int_0^inf e^{-iyw} exp(-i e^{-i theta pi/2} w^nu) dw
    total = 0j
    for sx, A in ((y, 0.5 * math.pi * (theta - 1.0)), (-y, 0.5 * math.pi * (1.0 - theta))):
        a = cmath.exp(1j * A)
        if damping:
            a, A = damped_arg(a, A, damping)
        total += half_line(sx, a, nu, arg_a=A)
    return total


def phi_space_oracle(spec: LinearPotentialSpec, x: float, dampings=()) -> complex:
    """N (phi_1 + phi_2) by direct quadrature of the inverse momentum transform.

    With no dampings the oscillatory integrals are continued along rotated
    rays; otherwise damped values are extrapolated to zero damping.
    """
    nu = spec.fp.alpha + 1.0
    y = spec.scaled(x)
    if dampings:
        vals = [_phi_pieces(nu, spec.fp.theta, y, d) for d in dampings]
        return spec.norm * richardson_zero(dampings, vals)
    return spec.norm * _phi_pieces(nu, spec.fp.theta, y, 0.0)


def airy_scaled(spec: LinearPotentialSpec, x: float) -> float:
    """u = (x - E/A)(2 m A / hbar^2)^{1/3} with C = 1/(2m)."""
    pp = spec.pp
    return (x - spec.turning_point) * (pp.slope_a / (pp.c_alpha * pp.hbar ** 2)) ** (1.0 / 3.0)


def airy_series(lam: ComplexValue, u: float, cfg: SeriesConfig = DEFAULT_SERIES) -> complex:
    """(lam/pi) sum_k Gamma((k+1)/3) sin(2(k+1)pi/3) (3^{1/3} u)^k / k!."""
    lam = as_complex(lam)
    v = 3.0 ** (1.0 / 3.0) * float(u)

    def term(k):
        s = math.sin(2.0 * (k + 1) * math.pi / 3.0)
        # every third sine vanishes; round it to an exact zero
        if abs(s) < 1e-12:
            return 0j
        if v == 0:
            return complex(special.gamma(1.0 / 3.0) * s) if k == 0 else 0j
        mag = math.exp(special.gammaln((k + 1) / 3.0) - special.gammaln(k + 1.0) + k * math.log(abs(v)))
        return complex(mag * s * (1 if v > 0 or k % 2 == 0 else -1))

    return lam / math.pi * sum_series(term, cfg, min_terms=int(abs(v) ** 1.5) + 4)


# ---------------------------------------------------------------------------
# time part


@dataclass(frozen=True)
class TimeFractionalSpec:
    beta: float
    energy_e: float
    hbar: float = 1.0
    f0: ComplexValue = 1.0 + 0j

    def __post_init__(self):
        if not (math.isfinite(self.beta) and 0 < self.beta < 1):
            raise DomainError(f"0 < beta < 1 violated (beta={self.beta})")
        if not (math.isfinite(self.energy_e) and self.energy_e != 0):
            raise DomainError(f"energy_e != 0 violated (energy_e={self.energy_e})")
        if not (math.isfinite(self.hbar) and self.hbar > 0):
            raise DomainError(f"hbar > 0 violated (hbar={self.hbar})")
        object.__setattr__(self, "f0", as_complex(self.f0))

    @property
    def rho(self) -> complex:
        """(i hbar)^{-beta} E with i^beta = e^{i beta pi/2}."""
        return self.energy_e * self.hbar ** -self.beta * cmath.exp(-0.5j * math.pi * self.beta)


class BranchCase(enum.Enum):
    POS_ENERGY = "PosEnergy"
    NEG_ENERGY_SMALL_BETA = "NegEnergySmallBeta"
    NEG_ENERGY_LARGE_BETA = "NegEnergyLargeBeta"


@dataclass(frozen=True)
class PoleReport:
    poles: List[complex]
    residues: List[complex]
    branch_case: BranchCase

    def __post_init__(self):
        if len(self.poles) != len(self.residues):
            raise ValueError("poles and residues differ in length")


def pole_set(spec: TimeFractionalSpec, t: float = 0.0) -> PoleReport:
    """Poles of s^{beta-1}/(s^beta - rho) off the cut, with the residues of G(s)e^{st}.

    The pole condition s^beta = rho on the principal sheet gives
    s_k = |rho|^{1/beta} exp(i(arg rho + 2 pi k)/beta) with |arg s_k| < pi.
    Residues are e^{s_k t}/beta (t = 0 gives the bare weights 1/beta).
    """
    b = spec.beta
    if spec.energy_e > 0:
        case = BranchCase.POS_ENERGY
    elif b <= 2.0 / 3.0:
        case = BranchCase.NEG_ENERGY_SMALL_BETA
    else:
        case = BranchCase.NEG_ENERGY_LARGE_BETA
    rho = spec.rho
    r = abs(rho) ** (1.0 / b)
    phase = cmath.phase(rho)
    poles = []
    k_max = int(math.ceil(b / 2.0)) + 1
    for k in range(-k_max, k_max + 1):
        ang = (phase + 2.0 * math.pi * k) / b
        # the boundary beta = 2/3, E < 0 puts the pole on the cut; it is excluded
        if abs(ang) < math.pi - 1e-12:
            poles.append(r * cmath.exp(1j * ang))
    residues = [cmath.exp(s * t) / b for s in poles]
    return PoleReport(poles, residues, case)


class FMethod(enum.Enum):
    QUADRATURE = "Quadrature"
    FOXH = "FoxH"


def f_beta_spec(beta: float) -> HFunctionSpec:
    """H^{2,1}_{2,3} with (1,1/beta),(beta,1) over (beta,1),(1,1/beta),(beta,1)."""
    return HFunctionSpec.from_pairs(2, 1, [(1.0, 1.0 / beta), (beta, 1.0)],
                                    [(beta, 1.0), (1.0, 1.0 / beta), (beta, 1.0)])


def _f_beta_quadrature(rho: complex, beta: float, t: float) -> complex:
    # v = x^beta turns the weight x^{beta-1} dx into dv/beta
    c = 2.0 * rho * math.cos(math.pi * beta)
    r2 = rho * rho

    def f(v):
        return cmath.exp(-v ** (1.0 / beta) * t) / (v * v - c * v + r2)

    # split where the exponential turns over and where the quadratic is smallest
    knots = sorted({abs(rho), t ** -beta, 1e-300})
    edges = [0.0] + [k for k in knots if k > 1e-200] + [np.inf]
    kw = dict(limit=500, epsabs=0.0, epsrel=1e-13)
    total, err = 0j, 0.0
    with warnings.catch_warnings():
        # quad's own roundoff warning; the error estimate is checked below
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        for a, b in zip(edges[:-1], edges[1:]):
            if b <= a:
                continue
            re, e1 = integrate.quad(lambda v: f(v).real, a, b, **kw)
            im, e2 = integrate.quad(lambda v: f(v).imag, a, b, **kw)
            total += complex(re, im)
            err += e1 + e2
    pref = rho * math.sin(math.pi * beta) / (math.pi * beta)
    val = pref * total
    if abs(pref) * err > max(1e-8 * abs(val), 1e-13):
        raise ConvergenceError("branch-cut quadrature did not converge", estimate=val, error=abs(pref) * err)
    return val


def f_beta_argument(spec: TimeFractionalSpec, t: float) -> complex:
    """(-rho)^{1/beta} t on the principal branch."""
    w = -spec.rho
    return cmath.exp(cmath.log(w) / spec.beta) * t


def _f_beta_foxh(spec: TimeFractionalSpec, t: float, contour=None) -> complex:
    b = spec.beta
    w = -spec.rho
    # the Mellin pair behind the H form needs the roots rho e^{+-i pi beta}
    # of the denominator off the positive axis: |arg(-rho)| < pi (1 - beta)
    if abs(cmath.phase(w)) >= math.pi * (1.0 - b) + 1e-12:
        logger.warning("arg(-rho)=%.6g is outside |arg| < pi(1-beta)=%.6g, where the H form "
                       "represents the branch-cut integral", cmath.phase(w), math.pi * (1.0 - b))
    z = f_beta_argument(spec, t)
    h = fox_h_eval(f_beta_spec(b), z, contour).value
    return h / (b * spec.rho * t ** b)


def f_beta_integral(spec: TimeFractionalSpec, t: float, method="Quadrature",
                    contour: Optional[ContourSpec] = None) -> complex:
    """Branch-cut contribution F_beta(rho, t)."""
    if not t > 0:
        raise DomainError("t > 0 violated")
    method = FMethod(method)
    if method is FMethod.QUADRATURE:
        return _f_beta_quadrature(spec.rho, spec.beta, t)
    return _f_beta_foxh(spec, t, contour)


def time_solution(spec: TimeFractionalSpec, t: float, method: str = "auto") -> complex:
    """f0 [sum of residues - F_beta(rho, t)].

    ``method="auto"`` evaluates F_beta through the H form when there are no
    poles (the form is exact there, and the cut integral can be nearly
    singular at the pole-count boundary) and by quadrature otherwise.
    """
    if not t > 0:
        raise DomainError("t > 0 violated")
    rep = pole_set(spec, t)
    if method == "auto":
        method = FMethod.QUADRATURE if rep.poles else FMethod.FOXH
    elif FMethod(method) is FMethod.FOXH and rep.poles:
        logger.warning("FoxH branch-cut form requested with %d pole(s) present", len(rep.poles))
    fb = f_beta_integral(spec, t, method)
    return spec.f0 * (_fsum_complex(rep.residues) - fb)


def mittag_leffler_solution(spec: TimeFractionalSpec, t: float,
                            cfg: SeriesConfig = DEFAULT_SERIES) -> complex:
    """f0 E_beta(rho t^beta), i.e. f0 E_beta((t/(i hbar))^beta E)."""
    if t < 0:
        raise DomainError("t >= 0 violated")
    if t == 0:
        return spec.f0
    return spec.f0 * mittag_leffler(spec.beta, spec.rho * t ** spec.beta, cfg)


def laplace_image(spec: TimeFractionalSpec, s):
    """F(s) = f0 s^{beta-1}/(s^beta - rho), principal powers."""
    s = np.asarray(s, dtype=complex)
    sb = np.exp(spec.beta * np.log(s))
    return spec.f0 * sb / s / (sb - spec.rho)


# Weideman-Trefethen parameters for the cotangent contour
_TALBOT = (-0.6122, 0.5017, 0.6407, 0.2645)


def _talbot_sum(F, t, n, scale):
    a0, a1, a2, a3 = _TALBOT
    theta = -math.pi + (np.arange(n) + 0.5) * (2.0 * math.pi / n)
    mu = scale * n / t
    z = mu * (a0 + a1 * theta / np.tan(a2 * theta) + 1j * a3 * theta)
    dz = mu * (a1 / np.tan(a2 * theta) - a1 * a2 * theta / np.sin(a2 * theta) ** 2 + 1j * a3)
    v = np.exp(z * t) * F(z) * dz
    # (1/(2 pi i)) sum v * (2 pi / n); the second value bounds roundoff
    return _fsum_complex(v) / (1j * n), float(np.abs(v).sum()) / n, z


def _encloses(z, pole, margin):
    # the contour is a graph Re z = g(Im z) and must pass right of the pole
    order = np.argsort(z.imag)
    zi, zr = z.imag[order], z.real[order]
    if not zi[0] < pole.imag < zi[-1]:
        return False
    return float(np.interp(pole.imag, zi, zr)) > pole.real + margin


def talbot_inverse_laplace(spec: TimeFractionalSpec, t: float, *, scale: float = 1.0,
                           n0: int = 16, step: int = 8, rtol: float = 1e-11,
                           max_nodes: int = 512) -> complex:
    """Invert F(s) on a cotangent (Talbot) contour wrapped around the negative axis.

    The node count grows until the contour passes right of every pole and
    successive sums agree to ``rtol`` (or to the roundoff level, which grows
    with the node count).
    """
    if not t > 0:
        raise DomainError("t > 0 violated")
    poles = pole_set(spec).poles
    F = lambda s: laplace_image(spec, s)
    eps = np.finfo(float).eps
    prev = None
    best = None
    n = n0
    while n <= max_nodes:
        val, mag, z = _talbot_sum(F, t, n, scale)
        ok = all(_encloses(z, p, 0.5 / t + 0.1 * abs(p)) for p in poles)
        noise = 100 * eps * mag
        if ok and prev is not None:
            diff = abs(val - prev)
            if best is None or diff < best[1]:
                best = (val, diff)
            # a sum drowned in its own roundoff agrees with anything
            if noise > 1e-6 * abs(val):
                break
            if diff <= max(rtol * abs(val), noise):
                return val
        prev = val if ok else None
        n += step
    raise ConvergenceError("Talbot inversion did not converge",
                           estimate=None if best is None else best[0],
                           error=None if best is None else best[1])


def caputo_l1(f: SampledField, beta: float) -> np.ndarray:
    """L1 approximation of the Caputo derivative at every grid point (0 at t_0)."""
    if not f.is_uniform():
        raise DomainError("caputo_l1 needs a uniform grid")
    if not 0 < beta < 1:
        raise DomainError(f"0 < beta < 1 violated (beta={beta})")
    h = float(f.points[1] - f.points[0])
    d = kernels.caputo_l1(np.ascontiguousarray(f.values), h, beta, math.gamma(2.0 - beta))
    return np.concatenate([[0j], d])


# residual is taken away from t = 0, where f has a t^beta singularity that
# the piecewise-linear interpolant cannot resolve
CAPUTO_T_MIN = 0.1


def caputo_residual(spec: TimeFractionalSpec, f: SampledField, t_min: float = CAPUTO_T_MIN) -> float:
    """max over grid points with t >= t_min of |(i hbar)^beta D^beta f - E f|."""
    if len(f) < 3:
        raise DomainError("need at least three samples")
    if not f.is_uniform():
        raise DomainError("caputo_residual needs a uniform grid")
    if f.points[0] != 0:
        raise DomainError("the grid must start at t = 0")
    if abs(f.values[0] - spec.f0) > 1e-12 * max(1.0, abs(spec.f0)):
        raise DomainError("f(0) differs from f0")
    d = caputo_l1(f, spec.beta)
    ih = spec.hbar ** spec.beta * cmath.exp(0.5j * math.pi * spec.beta)
    r = np.abs(ih * d - spec.energy_e * f.values)
    mask = f.points >= t_min
    mask[0] = False
    if not mask.any():
        raise DomainError("no grid points beyond t_min")
    return float(r[mask].max())

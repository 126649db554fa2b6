"""Fox H-function evaluation.

The H-function is the Mellin-Barnes integral

    H(z) = 1/(2 pi i) * int Theta(s) z^(-s) ds,

    Theta(s) = prod_{j<=m} Gamma(b_j + B_j s) prod_{j<=n} Gamma(1 - a_j - A_j s)
               / (prod_{j>m} Gamma(1 - b_j - B_j s) prod_{j>n} Gamma(a_j + A_j s)),

with the principal branch of z^(-s).  Internally the kernel is a list of
numerator and denominator factors Gamma(c + C s); identical pairs cancel.

Two evaluators are provided.  The quadrature runs along a contour that starts
as the vertical line Re s = gamma and, far from the real axis, bends into the
half plane where |Theta(s) z^(-s)| decays (left when mu > 0).  The bend turns
the algebraic or slow exponential decay of the vertical line into a fast
one without crossing poles.  The residue series sums the residues of the
left (mu > 0) or right (mu < 0) pole family.  ``method="auto"`` keeps the
result with the smaller error estimate.
"""
from __future__ import annotations

import cmath
import functools
import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy import special

from ._backend import kernels
from .errors import ConvergenceError, DomainError, PoleError

logger = logging.getLogger(__name__)

_EPS = np.finfo(float).eps
_POLE_TOL = 1e-10


@dataclass(frozen=True)
class HFunctionSpec:
    """Orders (m, n, p, q) and the parameter pairs of an H-function."""

    m: int
    n: int
    p: int
    q: int
    upper: tuple
    lower: tuple

    def __post_init__(self):
        upper = tuple((float(a), float(A)) for a, A in self.upper)
        lower = tuple((float(b), float(B)) for b, B in self.lower)
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "lower", lower)
        if min(self.m, self.n, self.p, self.q) < 0:
            raise DomainError("orders must be nonnegative")
        if len(upper) != self.p or len(lower) != self.q:
            raise DomainError(f"expected {self.p} upper and {self.q} lower pairs")
        if self.n > self.p or self.m > self.q:
            raise DomainError("n <= p and m <= q violated")
        if any(A <= 0 for _, A in upper) or any(B <= 0 for _, B in lower):
            raise DomainError("all A_j and B_j must be positive")
        lo, hi = self.strip
        if not lo < hi:
            raise DomainError(f"empty Mellin strip ({lo:g}, {hi:g})")

    @classmethod
    def from_pairs(cls, m: int, n: int, upper: Sequence, lower: Sequence) -> "HFunctionSpec":
        return cls(m, n, len(upper), len(lower), tuple(upper), tuple(lower))

    @property
    def strip(self) -> tuple:
        lo = max((-b / B for b, B in self.lower[: self.m]), default=-math.inf)
        hi = min(((1 - a) / A for a, A in self.upper[: self.n]), default=math.inf)
        return lo, hi

    @property
    def mu(self) -> float:
        return sum(B for _, B in self.lower) - sum(A for _, A in self.upper)

    @property
    def a_star(self) -> float:
        """Vertical-line decay rate: |Theta(gamma + iy)| ~ exp(-a* pi |y| / 2)."""
        A, B = [x for _, x in self.upper], [x for _, x in self.lower]
        return sum(A[: self.n]) - sum(A[self.n:]) + sum(B[: self.m]) - sum(B[self.m:])

    def midpoint(self) -> float:
        lo, hi = self.strip
        if math.isinf(lo) and math.isinf(hi):
            return 0.0
        if math.isinf(lo):
            return hi - 1.0
        if math.isinf(hi):
            return lo + 1.0
        return 0.5 * (lo + hi)


@dataclass(frozen=True)
class ContourSpec:
    """Contour configuration.

    ``gamma`` is the abscissa of the vertical part (strip midpoint when None).
    ``half_height`` and ``nodes`` seed the truncation and node count of the
    plain vertical line (``deform=False``); with ``deform=True`` they are
    chosen automatically and only ``gamma`` is honoured.
    """

    gamma: Optional[float] = None
    half_height: Optional[float] = None
    nodes: Optional[int] = None
    deform: bool = True

    def __post_init__(self):
        if self.nodes is not None and self.nodes < 16:
            raise DomainError("nodes >= 16 violated")
        if self.half_height is not None and not self.half_height > 0:
            raise DomainError("half_height > 0 violated")


@dataclass(frozen=True)
class FoxHResult:
    value: complex
    error: float
    method: str
    evaluations: int = 0

    @property
    def rel_error(self) -> float:
        return self.error / abs(self.value) if self.value != 0 else (0.0 if self.error == 0 else math.inf)


def reciprocal(spec: HFunctionSpec) -> HFunctionSpec:
    """Spec of H(1/z) equal to H(z): swap (m,n), (p,q) and map (c, C) -> (1-c, C)."""
    return HFunctionSpec(
        spec.n, spec.m, spec.q, spec.p,
        tuple((1.0 - b, B) for b, B in spec.lower),
        tuple((1.0 - a, A) for a, A in spec.upper),
    )


# ---------------------------------------------------------------------------
# kernel as Gamma(c + C s) factor lists


class _Kernel:
    def __init__(self, spec: HFunctionSpec):
        num, den = [], []
        for j, (b, B) in enumerate(spec.lower):
            (num if j < spec.m else den).append((b, B) if j < spec.m else (1.0 - b, -B))
        for j, (a, A) in enumerate(spec.upper):
            (num if j < spec.n else den).append((1.0 - a, -A) if j < spec.n else (a, A))
        # identical numerator/denominator factors cancel
        for f in list(num):
            for g in den:
                if abs(f[0] - g[0]) <= 1e-14 and abs(f[1] - g[1]) <= 1e-14:
                    num.remove(f)
                    den.remove(g)
                    break
        self.spec = spec
        self.num = num
        self.den = den
        self.num_c = np.array([c for c, _ in num], dtype=float)
        self.num_C = np.array([C for _, C in num], dtype=float)
        self.den_c = np.array([c for c, _ in den], dtype=float)
        self.den_C = np.array([C for _, C in den], dtype=float)
        self.strip = spec.strip
        self.mu = spec.mu

    def log(self, s: np.ndarray) -> np.ndarray:
        s = np.ascontiguousarray(s, dtype=np.complex128)
        return kernels.log_kernel(s, self.num_c, self.num_C, self.den_c, self.den_C)

    def dlog(self, s: np.ndarray) -> np.ndarray:
        out = np.zeros_like(s, dtype=complex)
        for c, C in self.num:
            out += C * special.psi(c + C * s)
        for c, C in self.den:
            out -= C * special.psi(c + C * s)
        return out

    def pole_families(self, side: str):
        """Numerator factors generating poles on the given side of the strip."""
        if side == "left":
            return [(c, C) for c, C in self.num if C > 0]
        return [(c, C) for c, C in self.num if C < 0]

    def laurent_log(self, s: np.ndarray):
        """Leading Laurent coefficient (log) and pole order at each point of s.

        Regular factors contribute log Gamma; a factor sitting on a Gamma pole
        contributes the log of its leading coefficient, and the order counts
        numerator poles minus denominator poles.
        """
        s = np.asarray(s, dtype=complex)
        logc = np.zeros(s.shape, dtype=complex)
        order = np.zeros(s.shape, dtype=int)
        for sign, factors in ((1, self.num), (-1, self.den)):
            for c, C in factors:
                a = c + C * s
                k = np.round(a.real)
                sing = (np.abs(a - k) <= _POLE_TOL * np.maximum(1.0, np.abs(a))) & (k <= 0)
                reg = ~sing
                if np.any(reg):
                    logc[reg] += sign * kernels.loggamma(np.ascontiguousarray(a[reg]))
                if np.any(sing):
                    kk = -k[sing]
                    # Gamma(-k + C e) ~ (-1)^k / (k! C e)
                    coef = 1j * np.pi * kk - special.gammaln(kk + 1.0) - np.log(complex(C))
                    logc[sing] += sign * coef
                    order[sing] += sign
        return logc, order


@functools.lru_cache(maxsize=256)
def _kernel(spec: HFunctionSpec) -> _Kernel:
    return _Kernel(spec)


def mellin_kernel(spec: HFunctionSpec, s) -> complex:
    """Theta(s); PoleError at a pole, the finite limit at removable points."""
    kern = _kernel(spec)
    s = complex(s)
    logc, order = kern.laurent_log(np.array([s]))
    if order[0] > 0:
        raise PoleError(f"kernel has a pole at s={s}")
    if order[0] < 0:
        return 0j
    return complex(np.exp(logc[0]))


# ---------------------------------------------------------------------------
# contour quadrature


class _Infeasible(Exception):
    pass


@dataclass
class _Path:
    gamma: float
    d: float  # bend direction: -1 left, +1 right, 0 none
    lam: float
    y_plus: float
    y_minus: float
    width: float

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        w = self.width
        if self.d == 0:
            return self.gamma + 1j * u, np.full(u.shape, 1j)
        sp = w * (np.logaddexp(0.0, (u - self.y_plus) / w) + np.logaddexp(0.0, (-u - self.y_minus) / w))
        sg = special.expit((u - self.y_plus) / w) - special.expit((-u - self.y_minus) / w)
        s = self.gamma + 1j * u + self.d * self.lam * sp
        ds = 1j + self.d * self.lam * sg
        return s, ds


def _log_integrand(kern, path, logz, u):
    s, ds = path(u)
    return kern.log(s) - s * logz + np.log(ds)


def _bend_start(kern, gamma, d, logz, sign):
    ys = np.logspace(-1, 6, 351)
    D = -d * (kern.dlog(gamma + 1j * sign * ys).real - logz.real)
    bad = np.nonzero(D < 0.3)[0]
    if bad.size == 0:
        return 2.0
    if bad[-1] == ys.size - 1:
        raise _Infeasible("bending never reduces the integrand")
    return max(2.0, 1.15 * ys[bad[-1]] + 2.0)


def _arm_extent(kern, path, logz, sign, start, drop=45.0):
    """Truncation point of one arm: where log|integrand| has fallen by `drop`."""
    u_end = start + 30.0
    while True:
        u = sign * np.linspace(0.0, u_end, int(u_end / 0.5) + 2)
        lg = _log_integrand(kern, path, logz, u).real
        lg = np.where(np.isfinite(lg), lg, -np.inf)
        peak = lg.max()
        tail = lg[int(0.9 * lg.size):]
        if lg[-1] < peak - drop and np.all(np.diff(tail) <= 1e-9):
            return u_end, peak, lg
        u_end *= 1.6
        if u_end > 2e6:
            raise _Infeasible("integrand does not decay along the contour")


def _design_path(kern, logz, gamma, deform):
    d = 0.0
    if deform:
        if kern.mu > 1e-12:
            d = -1.0
        elif kern.mu < -1e-12:
            d = 1.0
        else:
            r = kern.dlog(np.array([gamma + 1e3j, gamma - 1e3j])).real - logz.real
            r = float(np.mean(r))
            d = -1.0 if r > 0.05 else (1.0 if r < -0.05 else 0.0)
    if d == 0:
        return _Path(gamma, 0.0, 0.0, 0.0, 0.0, 1.0)
    yp = _bend_start(kern, gamma, d, logz, +1)
    ym = _bend_start(kern, gamma, d, logz, -1)
    width = max(min(yp, ym) / 8.0, 0.25)
    path = _Path(gamma, d, 2.0, yp, ym, width)
    # the softplus tails shift the crossing of the real axis; keep that
    # shift well short of the nearest pole so no residue is lost
    lo, hi = kern.strip
    room = 0.25 * min(gamma - lo, hi - gamma)
    while abs(path(np.array([0.0]))[0][0].real - gamma) > room:
        path.width *= 0.7
    return path


def _trapezoid(kern, path, logz, u_minus, u_plus, h0, rtol, max_nodes=1 << 21):
    """Trapezoid rule on [-u_minus, u_plus] with step halving."""
    def sample(u):
        return _log_integrand(kern, path, logz, u)

    h = h0
    u = np.arange(-math.ceil(u_minus / h), math.ceil(u_plus / h) + 1) * h
    lg = sample(u)
    scale = float(np.max(lg.real))
    vals = np.exp(lg - scale)
    abs_sum = float(np.sum(np.abs(vals)))
    # numpy sums pairwise: O(log n) error growth and a fixed order
    total = complex(np.sum(vals)) * h
    n_eval = u.size
    prev_diff = None
    for _ in range(12):
        mid = u[:-1] + 0.5 * h
        lg_mid = sample(mid)
        new_scale = max(scale, float(np.max(lg_mid.real)))
        if new_scale > scale:
            f = math.exp(scale - new_scale)
            total *= f
            abs_sum *= f
            scale = new_scale
        vm = np.exp(lg_mid - scale)
        abs_sum += float(np.sum(np.abs(vm)))
        half = 0.5 * total + 0.5 * h * complex(np.sum(vm))
        n_eval += mid.size
        h *= 0.5
        u = np.sort(np.concatenate([u, mid]))
        diff = abs(half - total)
        total = half
        roundoff = 8.0 * _EPS * h * abs_sum
        if diff <= max(rtol * abs(total), 2.0 * roundoff):
            # converged: the next halving would change the sum by far less
            est = diff if prev_diff is None else min(diff, diff * diff / max(prev_diff, 1e-300))
            err = max(est, roundoff)
            break
        err = max(diff, roundoff)
        if u.size > max_nodes or roundoff > 0.1 * abs(total):
            # out of budget, or cancellation swamps the result
            break
        prev_diff = diff
    if scale > 700.0:
        raise ConvergenceError("contour integrand exceeds the double range")
    factor = math.exp(scale) / (2.0 * math.pi)
    value = total * factor / 1j
    return value, max(err, roundoff) * factor, n_eval


def _quadrature(kern, logz, contour: ContourSpec, rtol):
    gamma = contour.gamma if contour.gamma is not None else kern.spec.midpoint()
    lo, hi = kern.strip
    if not lo < gamma < hi:
        raise DomainError(f"gamma={gamma} is not inside the strip ({lo:g}, {hi:g})")
    if not contour.deform:
        return _vertical(kern, logz, gamma, contour, rtol)
    path = _design_path(kern, logz, gamma, True)
    up, peak_p, _ = _arm_extent(kern, path, logz, +1, path.y_plus)
    um, peak_m, _ = _arm_extent(kern, path, logz, -1, path.y_minus)
    dist = min(gamma - lo, hi - gamma)
    h0 = min(0.5, dist / 3.0)
    # resolve the oscillation of z^(-s) Theta(s) along the path
    uu = np.linspace(-um, up, 1201)
    s, ds = path(uu)
    omega = np.abs(((kern.dlog(s) - logz) * ds).imag)
    omega = omega[np.isfinite(omega)]
    if omega.size:
        h0 = min(h0, 1.5 / max(float(omega.max()), 1e-3))
    value, err, n_eval = _trapezoid(kern, path, logz, um, up, h0, rtol)
    return FoxHResult(value, err, "contour", n_eval)


def _vertical(kern, logz, gamma, contour, rtol):
    """Plain truncated vertical line; T and node count grow together."""
    T = contour.half_height or 40.0
    nodes = contour.nodes or 801
    path = _Path(gamma, 0.0, 0.0, 0.0, 0.0, 1.0)
    prev = None
    n_eval = 0
    for _ in range(10):
        u = np.linspace(-T, T, nodes)
        h = u[1] - u[0]
        lg = _log_integrand(kern, path, logz, u)
        scale = float(np.max(lg.real))
        vals = np.exp(lg - scale)
        value = h * complex(math.fsum(vals.real), math.fsum(vals.imag)) * math.exp(scale) / (2j * math.pi)
        n_eval += nodes
        tail = math.exp(max(lg.real[0], lg.real[-1])) * 5.0 / (2 * math.pi)
        roundoff = 8.0 * _EPS * h * float(np.sum(np.abs(vals))) * math.exp(scale) / (2 * math.pi)
        if prev is not None:
            diff = abs(value - prev)
            if diff <= rtol * abs(value) and tail <= rtol * abs(value):
                return FoxHResult(value, max(diff, tail, roundoff), "contour", n_eval)
        prev = value
        T *= 1.5
        nodes = 2 * int(nodes * 1.5) + 1
        if nodes > (1 << 22):
            break
    raise ConvergenceError(
        "vertical-line tail not decaying; parameters outside the evaluable class",
        estimate=prev, error=tail,
    )


# ---------------------------------------------------------------------------
# residue series


def _residue_series(kern, logz, side, rtol, max_poles=40000):
    fams = kern.pole_families(side)
    if not fams:
        return FoxHResult(0j, 0.0, "series", 0)
    K = 48
    while True:
        cand = []
        for c, C in fams:
            k = np.arange(K, dtype=float)
            cand.append(-(c + k) / C)
        # keep only poles above the deepest point every family has reached
        limits = [arr[-1] for arr in cand]
        allp = np.concatenate(cand)
        if side == "left":
            cut = max(limits)
            allp = allp[allp >= cut - 1e-12]
            allp = np.sort(allp)[::-1]
        else:
            cut = min(limits)
            allp = allp[allp <= cut + 1e-12]
            allp = np.sort(allp)
        # merge coincident poles from different families
        keep = np.ones(allp.size, dtype=bool)
        keep[1:] = np.abs(np.diff(allp)) > 1e-9 * np.maximum(1.0, np.abs(allp[1:]))
        poles = allp[keep]
        logc, order = kern.laurent_log(poles.astype(complex))
        if np.any(order >= 2):
            raise ConvergenceError("higher-order poles are not supported by the residue series")
        lt = logc - poles * logz
        live = order == 1
        shift = float(np.max(lt.real[live])) if live.any() else 0.0
        if not math.isfinite(shift):
            raise ConvergenceError("residue series terms are not finite")
        # factor out the largest term so huge but representable sums survive
        terms = np.where(live, np.exp(np.where(live, lt - shift, 0.0)), 0.0)
        if side == "right":
            terms = -terms
        nz = np.abs(terms)[live]
        rel_total = complex(math.fsum(terms.real), math.fsum(terms.imag))
        if nz.size >= 6:
            tail = nz[-4:]
            settled = np.all(tail <= 1e-17 * max(abs(rel_total), 1e-300)) and tail[-1] <= nz.max()
            if settled:
                if shift > 709.0:
                    raise ConvergenceError("H-function value overflows double precision")
                scale = math.exp(shift)
                # exp(lt) carries a relative error of about eps*|lt| per term
                rounding = _EPS * float(np.sum((16.0 + np.abs(lt[live])) * nz))
                err = (rounding + float(np.sum(tail))) * scale
                return FoxHResult(rel_total * scale, err, "series", int(poles.size))
        if poles.size > max_poles:
            raise ConvergenceError(
                f"residue series did not converge ({poles.size} poles)",
                estimate=rel_total * math.exp(min(shift, 709.0)),
            )
        K *= 2


# ---------------------------------------------------------------------------
# public entry points


def _log_arg(z, log_z):
    if log_z is not None:
        return complex(log_z)
    z = complex(z)
    if z == 0:
        raise DomainError("H-function argument must be nonzero")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError("H-function argument must be finite")
    return cmath.log(z)


def fox_h_eval(spec: HFunctionSpec, z, contour: Optional[ContourSpec] = None, *,
               method: str = "auto", rtol: float = 1e-10, accept: float = 1e-6,
               log_z: Optional[complex] = None) -> FoxHResult:
    """Evaluate H(z) and return the value with an accuracy estimate.

    method: "contour", "series" or "auto".  ``log_z`` overrides the principal
    logarithm of z (continuation onto another sheet).  A ConvergenceError is
    raised when the best relative error estimate exceeds ``accept``.
    """
    kern = _kernel(spec)
    logz = _log_arg(z, log_z)
    contour = contour or ContourSpec()
    results = []
    failures = []

    def try_contour():
        try:
            results.append(_quadrature(kern, logz, contour, rtol))
        except (_Infeasible, ConvergenceError) as exc:
            failures.append(f"contour: {exc}")

    def try_series():
        sides = ["left"] if kern.mu > 0 else (["right"] if kern.mu < 0 else ["left", "right"])
        for side in sides:
            try:
                results.append(_residue_series(kern, logz, side, rtol))
            except ConvergenceError as exc:
                failures.append(f"series ({side}): {exc}")

    if method == "contour":
        try_contour()
    elif method == "series":
        try_series()
    elif method == "auto":
        # the residue series is far cheaper when it converges cleanly
        try_series()
        if not results or min(r.rel_error for r in results) > rtol:
            try_contour()
    else:
        raise DomainError(f"unknown method {method!r}")
    if not results:
        raise ConvergenceError("; ".join(failures) or "no evaluator applicable")
    best = min(results, key=lambda r: r.rel_error)
    if len(results) > 1:
        a, b = results[0], results[1]
        gap = abs(a.value - b.value)
        if gap > 10 * (a.error + b.error) and max(a.rel_error, b.rel_error) < 1e-3:
            logger.warning("%s and %s disagree by %.3g (estimates %.3g, %.3g)",
                           a.method, b.method, gap, a.error, b.error)
    if best.rel_error > accept:
        raise ConvergenceError(
            f"H-function accuracy estimate {best.rel_error:.3g} exceeds {accept:g}",
            estimate=best.value, error=best.error,
        )
    return best


def fox_h(spec: HFunctionSpec, z, contour: Optional[ContourSpec] = None, **kw) -> complex:
    """H(z) as a complex number; see :func:`fox_h_eval` for keyword options."""
    return fox_h_eval(spec, z, contour, **kw).value


def fox_h_zero_limit(spec: HFunctionSpec) -> complex:
    """lim_{z->0} H(z) when it is finite (mu > 0 and left poles at s <= 0)."""
    kern = _kernel(spec)
    fams = kern.pole_families("left")
    if not fams:
        return 0j
    top = max(-c / C for c, C in fams)
    if top < -1e-12:
        return 0j
    if top > 1e-12:
        raise DomainError("H(z) is unbounded as z -> 0")
    logc, order = kern.laurent_log(np.array([0j]))
    if order[0] <= 0:
        return 0j
    if order[0] > 1:
        raise DomainError("double pole at s=0")
    return complex(np.exp(logc[0]))

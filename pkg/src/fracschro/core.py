"""Parameter types, validation and the complex Gamma function."""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ._backend import kernels
from .errors import DomainError, PoleError

ComplexValue = complex


class Regime(enum.Enum):
    GENERAL = "general"
    FREE_PARTICLE = "free_particle"
    LINEAR_POTENTIAL = "linear_potential"


@dataclass(frozen=True)
class FractionalParams:
    """Orders of the space (alpha) and time (beta) derivatives and skewness theta."""

    alpha: float
    beta: float
    theta: float = 0.0

    @property
    def strict_free_particle(self) -> bool:
        return 1.0 < self.alpha < 2.0 and abs(self.theta) <= 2.0 - self.alpha

    def with_theta(self, theta: float) -> "FractionalParams":
        return FractionalParams(self.alpha, self.beta, theta)


@dataclass(frozen=True)
class PhysicalParams:
    hbar: float = 1.0
    c_alpha: float = 1.0
    slope_a: Optional[float] = None
    energy_e: Optional[float] = None

    def __post_init__(self):
        if not (math.isfinite(self.hbar) and self.hbar > 0):
            raise DomainError(f"hbar > 0 violated (hbar={self.hbar})")
        if not (math.isfinite(self.c_alpha) and self.c_alpha > 0):
            raise DomainError(f"c_alpha > 0 violated (c_alpha={self.c_alpha})")
        if self.slope_a is not None and not (math.isfinite(self.slope_a) and self.slope_a > 0):
            raise DomainError(f"slope_a > 0 violated (slope_a={self.slope_a})")
        if self.energy_e is not None and not (math.isfinite(self.energy_e) and self.energy_e != 0):
            raise DomainError(f"energy_e != 0 violated (energy_e={self.energy_e})")


@dataclass(frozen=True)
class SampledField:
    """Complex samples on a strictly increasing real grid."""

    points: np.ndarray
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        vals = np.asarray(self.values, dtype=complex)
        if pts.ndim != 1 or vals.shape != pts.shape:
            raise DomainError("points and values must be 1-d arrays of equal length")
        if pts.size > 1 and not np.all(np.diff(pts) > 0):
            raise DomainError("points must be strictly increasing")
        if not (np.all(np.isfinite(pts)) and np.all(np.isfinite(vals))):
            raise DomainError("sampled field contains non-finite entries")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return self.points.size

    def is_uniform(self, rtol: float = 1e-9) -> bool:
        if self.points.size < 3:
            return True
        d = np.diff(self.points)
        return bool(np.all(np.abs(d - d[0]) <= rtol * abs(d[0])))


def as_complex(z) -> complex:
    """Coerce to a finite Python complex."""
    w = complex(z)
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise DomainError(f"non-finite complex value {w!r}")
    return w


# closed constraints are compared with a little slack: 2 - 1.8 < 0.2 in binary
_BOUND_TOL = 1e-12


def validate_params(fp: FractionalParams, regime: Regime = Regime.GENERAL) -> None:
    """Raise DomainError naming the first violated inequality."""
    a, b, th = fp.alpha, fp.beta, fp.theta
    for name, v in (("alpha", a), ("beta", b), ("theta", th)):
        if not math.isfinite(v):
            raise DomainError(f"{name} must be finite")
    if not 0 < a <= 2:
        raise DomainError(f"0 < alpha <= 2 violated (alpha={a})")
    if not 0 < b <= 1:
        raise DomainError(f"0 < beta <= 1 violated (beta={b})")
    if abs(th) > min(a, 2 - a) + _BOUND_TOL:
        raise DomainError(f"|theta| <= min(alpha, 2-alpha) violated (theta={th}, alpha={a})")
    if regime is Regime.FREE_PARTICLE:
        if not 1 < a < 2:
            raise DomainError(f"1 < alpha < 2 violated (alpha={a})")
        if abs(th) > 2 - a + _BOUND_TOL:
            raise DomainError(f"|theta| > 2-alpha (theta={th}, alpha={a})")
    elif regime is Regime.LINEAR_POTENTIAL:
        if not 1 < a <= 2:
            raise DomainError(f"1 < alpha <= 2 violated (alpha={a})")
        if abs(th) > 2 - a + _BOUND_TOL:
            raise DomainError(f"|theta| > 2-alpha (theta={th}, alpha={a})")


def _check_poles(z: np.ndarray) -> None:
    re = z.real
    bad = (z.imag == 0) & (re <= 0) & (re == np.round(re))
    if np.any(bad):
        raise PoleError(f"Gamma has a pole at {z[bad][0].real:g}")


def loggamma(z):
    """log Gamma(z) on a branch whose exponential is Gamma(z).

    The imaginary part is not the principal continuous branch; only
    ``exp(loggamma(z))`` and the real part are meaningful.
    """
    arr = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    _check_poles(arr)
    out = kernels.loggamma(np.ascontiguousarray(arr.ravel())).reshape(arr.shape)
    if np.ndim(z) == 0:
        return complex(out[0])
    return out


def complex_gamma(z):
    """Gamma(z) for complex scalars or arrays; PoleError at 0, -1, -2, ..."""
    arr = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    _check_poles(arr)
    lg = kernels.loggamma(np.ascontiguousarray(arr.ravel())).reshape(arr.shape)
    out = np.exp(lg)
    # Gamma is real on the real axis; drop rounding noise there
    real_axis = arr.imag == 0
    out[real_axis] = out[real_axis].real
    if np.ndim(z) == 0:
        return complex(out[0])
    return out


def principal_power(base: complex, exponent) -> complex:
    """base**exponent with the principal logarithm."""
    if base == 0:
        return 0j
    return cmath.exp(exponent * cmath.log(base))

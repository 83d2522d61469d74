"""Isoperimetric functionals of a side list paired with an area.

Notation follows the usual one for n-gons: ``L`` perimeter, ``A`` area,
``P`` the Heron/Brahmagupta product expression, ``Lhat`` the pseudo-perimeter
of the second kind, ``phi = A/P`` (Levy's ratio), ``phi0`` its value on the
regular n-gon, ``tau = phi/phi0`` and ``nu = (L/Lhat)**(n/2 - 2)``.

The area is always an explicit argument: pass the cyclic area for the
conjectures as stated, or a vertex (shoelace) area to audit other pairings.
"""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import asdict, dataclass

import numpy as np

from .errors import BadCount, CenterNotInside, NonPositiveArea
from .geometry import SideList, validate_sides

E_OVER_PI = math.e / math.pi

# above this many sides the factor product is accumulated in log space
_LOG_PRODUCT_N = 32


def _factors(s: SideList) -> np.ndarray:
    a = s.array()
    L = s.L
    return (L - 2.0 * a) / L


def _log_product(s: SideList) -> float:
    return math.fsum(np.log(_factors(s)))


def _product(s: SideList) -> float:
    if s.n > _LOG_PRODUCT_N:
        return math.exp(_log_product(s))
    return float(math.prod(_factors(s)))


def _check_area(A: float) -> float:
    A = float(A)
    if not (A > 0 and math.isfinite(A)):
        raise NonPositiveArea(f"area must be positive, got {A!r}")
    return A


def regular_constant(n: int) -> float:
    """n tan(pi/n): the isoperimetric constant of the regular n-gon."""
    return n * math.tan(math.pi / n)


def p_functional(s: SideList | Iterable[float]) -> float:
    s = validate_sides(s)
    L = s.L
    if s.n > _LOG_PRODUCT_N:
        return 0.25 * L * L * math.exp(0.5 * _log_product(s))
    return 0.25 * L * L * math.sqrt(_product(s))


def pseudo_perimeter(s: SideList | Iterable[float]) -> float:
    s = validate_sides(s)
    n = s.n
    if n > _LOG_PRODUCT_N:
        root = math.exp(_log_product(s) / n)
    else:
        root = _product(s) ** (1.0 / n)
    return s.L * n / (n - 2) * root


def phi(s: SideList | Iterable[float], A: float) -> float:
    return _check_area(A) / p_functional(s)


def phi_regular(n: int) -> float:
    if n < 3:
        raise BadCount(f"n must be >= 3, got {n}")
    return 1.0 / (regular_constant(n) * (1.0 - 2.0 / n) ** (0.5 * n))


def phi_regular_limit() -> float:
    return E_OVER_PI


def tau(s: SideList | Iterable[float], A: float) -> float:
    s = validate_sides(s)
    return phi(s, A) / phi_regular(s.n)


def nu(s: SideList | Iterable[float]) -> float:
    s = validate_sides(s)
    if s.n == 4:
        return 1.0
    return (s.L / pseudo_perimeter(s)) ** (0.5 * s.n - 2.0)


def zeta(s: SideList | Iterable[float], A: float) -> float:
    """(4 n tan(pi/n) A / L^2) (Lhat/L)^(n/2).

    Equal to tau / nu**(2n/(n-4)) for n != 4, and finite at n = 4.
    """
    s = validate_sides(s)
    A = _check_area(A)
    n, L = s.n, s.L
    return 4.0 * regular_constant(n) * A / (L * L) * (pseudo_perimeter(s) / L) ** (0.5 * n)


def classic_deficit(n: int, L: float, A: float) -> float:
    if n < 3:
        raise BadCount(f"n must be >= 3, got {n}")
    return L * L - 4.0 * regular_constant(n) * A


def zhang_deficit(s: SideList | Iterable[float], A: float) -> float:
    s = validate_sides(s)
    A = _check_area(A)
    Lh = pseudo_perimeter(s)
    return Lh * Lh - 4.0 * regular_constant(s.n) * A


@dataclass(frozen=True)
class Corollary2:
    lhs: float
    rhs: float
    margin: float
    tau: float
    nu: float
    sharper_rhs: float | None = None  # only when tau * nu >= 1
    sharper_margin: float | None = None

    @property
    def in_scope(self) -> bool:
        """Whether the corollary's hypothesis tau <= 1 holds."""
        return self.tau <= 1.0


def corollary2_check(s: SideList | Iterable[float], A: float) -> Corollary2:
    """Deficit against the lower bound Lhat^2 (1 - tau).

    The sharper bound Lhat^2 (1 - 1/nu) is added when tau * nu >= 1.
    """
    s = validate_sides(s)
    Lh = pseudo_perimeter(s)
    t = tau(s, A)
    v = nu(s)
    lhs = zhang_deficit(s, A)
    rhs = Lh * Lh * (1.0 - t)
    sharper = sharper_margin = None
    if t * v >= 1.0:
        sharper = Lh * Lh * (1.0 - 1.0 / v)
        sharper_margin = lhs - sharper
    return Corollary2(lhs, rhs, lhs - rhs, t, v, sharper, sharper_margin)


@dataclass(frozen=True)
class ZhangBounds:
    zeta: float
    upper_R: float
    upper_r: float
    lower_r: float

    @property
    def passes(self) -> dict[str, bool]:
        return {
            "upper_R": self.zeta <= self.upper_R,
            "upper_r": self.zeta <= self.upper_r,
            "lower_r": self.zeta >= self.lower_r,
        }

    @property
    def margins(self) -> dict[str, float]:
        return {
            "upper_R": self.upper_R - self.zeta,
            "upper_r": self.upper_r - self.zeta,
            "lower_r": self.zeta - self.lower_r,
        }


def zhang_bounds_check(
    s: SideList | Iterable[float], A: float, R: float, r: float
) -> ZhangBounds:
    """Evaluate zeta against the circumradius/inradius bounds.

    ``r`` must be a genuine inradius about the circumcenter, so ``r <= 0``
    (what an outside or boundary center would give) is rejected.
    """
    s = validate_sides(s)
    if not r > 0:
        raise CenterNotInside("inradius must be positive")
    n, L = s.n, s.L
    z = zeta(s, A)
    x_R = 2.0 * R * n * math.sin(math.pi / n) / L
    x_r = 2.0 * r * regular_constant(n) / L
    return ZhangBounds(
        zeta=z,
        upper_R=1.0 - (x_R - 1.0) ** 2,
        upper_r=1.0 - (1.0 - x_r) ** 2,
        lower_r=x_r * x_r,
    )


@dataclass(frozen=True)
class IdentityResiduals:
    r10: float
    r14: float
    r13: float | None  # undefined at n = 4

    def max(self) -> float:
        vals = [self.r10, self.r14] + ([self.r13] if self.r13 is not None else [])
        return max(vals)


def identity_residuals(s: SideList | Iterable[float], A: float) -> IdentityResiduals:
    """Relative residuals of the Lhat/P relation and the two tau/nu relations."""
    s = validate_sides(s)
    A = _check_area(A)
    n, L = s.n, s.L
    Lh = pseudo_perimeter(s)
    P = p_functional(s)
    t = tau(s, A)
    v = nu(s)
    k = 4.0 * regular_constant(n) * A

    lh_from_p = n / (n - 2) * (4.0 * P) ** (2.0 / n) * L ** ((n - 4) / n)
    r10 = abs(Lh - lh_from_p) / abs(Lh)
    r14 = abs(t - k / (Lh * Lh) * v) / abs(t)
    r13 = None
    if n != 4:
        r13 = abs(t - k / (L * L) * v ** (n / (n - 4))) / abs(t)
    return IdentityResiduals(r10, r14, r13)


@dataclass(frozen=True)
class FunctionalReport:
    n: int
    L: float
    A: float
    P: float
    Lhat: float
    phi: float
    phi0: float
    tau: float
    nu: float
    zeta: float
    classic_deficit: float
    zhang_deficit: float
    corollary2_rhs: float

    def as_dict(self) -> dict:
        return asdict(self)


def report(s: SideList | Iterable[float], A: float) -> FunctionalReport:
    s = validate_sides(s)
    A = _check_area(A)
    n, L = s.n, s.L
    P = p_functional(s)
    Lh = pseudo_perimeter(s)
    ph = A / P
    ph0 = phi_regular(n)
    t = ph / ph0
    return FunctionalReport(
        n=n,
        L=L,
        A=A,
        P=P,
        Lhat=Lh,
        phi=ph,
        phi0=ph0,
        tau=t,
        nu=nu(s),
        zeta=zeta(s, A),
        classic_deficit=classic_deficit(n, L, A),
        zhang_deficit=Lh * Lh - 4.0 * regular_constant(n) * A,
        corollary2_rhs=Lh * Lh * (1.0 - t),
    )

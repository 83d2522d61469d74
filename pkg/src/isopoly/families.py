"""Closed-form evaluators for special polygon families.

Families
--------
Macnab
    Cyclic equiangular 2n-gon whose sides alternate between ``a`` and ``b``.
Perturbed
    Regular n-gon on a circle of radius R in which two adjacent sides have
    half-angles pi/n - eps and pi/n + eps.
LevyOne, Pi(alpha)
    Region of the unit disc cut off by a chord; the remaining boundary arc
    has half-angle ``alpha`` (length 2 alpha), the chord has length
    2 sin(alpha).  alpha -> pi is the full circle, alpha -> 0 a thin sliver.
LevyTwo, Pi(alpha, theta)
    Pi(alpha) with its chord replaced by two chords of half-angles theta and
    pi - alpha - theta (lengths 2 sin(theta) and 2 sin(alpha + theta)).

The curvilinear shapes are limits of inscribed polygons whose arc is split
into m equal chords.  As m -> inf the pseudo-perimeter tends to L and the
functionals have closed forms; ``levy_discrete`` and ``levy_discrete_split``
give the finite approximants used to check them.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import (
    AlphaOutOfRange,
    BadCount,
    ChordDominates,
    EpsilonTooLarge,
    NonPositiveSide,
    PolygonInequalityViolated,
    ThetaOutOfRange,
)
from .functionals import (
    E_OVER_PI,
    nu,
    phi_regular,
    pseudo_perimeter,
    p_functional,
)
from .geometry import SideList

SQRT_E_OVER_3 = math.sqrt(math.e / 3.0)


class Family(str, enum.Enum):
    REGULAR = "Regular"
    MACNAB = "Macnab"
    PERTURBED = "Perturbed"
    LEVY_ONE = "LevyOne"
    LEVY_TWO = "LevyTwo"


@dataclass(frozen=True)
class FamilyPoint:
    family: Family
    params: dict
    L: float
    A: float
    Lhat: float
    phi: float
    ratio: float
    nu: float | None
    aux: dict = field(default_factory=dict)
    sides: tuple[float, ...] | None = None

    def as_dict(self) -> dict:
        return {
            "family": self.family.value,
            "params": dict(self.params),
            "L": self.L,
            "A": self.A,
            "Lhat": self.Lhat,
            "phi": self.phi,
            "ratio": self.ratio,
            "nu": self.nu,
            "aux": dict(self.aux),
            "sides": list(self.sides) if self.sides is not None else None,
        }


def _x_minus_sin(x: float) -> float:
    """x - sin(x) without cancellation for small x."""
    if abs(x) > 0.5:
        return x - math.sin(x)
    term = x * x * x / 6.0
    total = 0.0
    k = 3
    x2 = x * x
    while abs(term) > 1e-18 * abs(total) or total == 0.0:
        total += term
        term *= -x2 / ((k + 1) * (k + 2))
        k += 2
        if term == 0.0:
            break
    return total


# -- regular ---------------------------------------------------------------


def regular(n: int, R: float = 1.0) -> FamilyPoint:
    if n < 3:
        raise BadCount(f"n must be >= 3, got {n}")
    side = 2.0 * R * math.sin(math.pi / n)
    s = SideList((side,) * n)
    A = 0.5 * n * R * R * math.sin(2.0 * math.pi / n)
    ph = A / p_functional(s)
    return FamilyPoint(
        family=Family.REGULAR,
        params={"n": n, "R": R},
        L=s.L,
        A=A,
        Lhat=pseudo_perimeter(s),
        phi=ph,
        ratio=ph / phi_regular(n),
        nu=nu(s),
        sides=s.lengths,
    )


# -- Macnab alternate-sided 2n-gon -----------------------------------------


def macnab_sides(n: int, a: float, b: float) -> tuple[float, ...]:
    return (float(a), float(b)) * n


def macnab(n: int, a: float, b: float) -> FamilyPoint:
    """Closed forms for the cyclic equiangular 2n-gon with sides a, b, a, b, ...

    ``ratio`` is phi/phi0 with phi0 taken for 2n sides:

        (1 + (E - 1)/(n - 1)^2)^(-n/2) * (1 + (E - 1) (1 - cos(pi/n)) / (1 + cos(pi/n)))

    with E = 4ab/(a + b)^2, which lies in (0, 1] and equals 1 iff a == b.
    """
    if n < 2:
        raise BadCount(f"Macnab polygons need n >= 2, got {n}")
    if not (a > 0 and b > 0):
        raise NonPositiveSide("Macnab side lengths must be positive")
    a, b = float(a), float(b)
    c = math.cos(math.pi / n)
    E = 4.0 * a * b / (a + b) ** 2
    A = n / (4.0 * math.sin(math.pi / n)) * ((a * a + b * b) * c + 2.0 * a * b)
    lhat2 = (n * n / (n - 1) ** 2) * (
        n * (n - 2) * (a * a + b * b) + n * n * a * b + (n - 2) ** 2 * a * b
    )
    L = n * (a + b)
    P = 0.25 * L * L * (1.0 - 2.0 / n + E / (n * n)) ** (0.5 * n)
    ph = A / P
    ratio = (1.0 + (E - 1.0) / (n - 1) ** 2) ** (-0.5 * n) * (
        1.0 + (E - 1.0) * (1.0 - c) / (1.0 + c)
    )
    Lhat = math.sqrt(lhat2)
    return FamilyPoint(
        family=Family.MACNAB,
        params={"n": n, "a": a, "b": b},
        L=L,
        A=A,
        Lhat=Lhat,
        phi=ph,
        ratio=ratio,
        nu=(L / Lhat) ** (n - 2),
        aux={"E": E, "phi0": phi_regular(2 * n), "sides_count": 2 * n},
        sides=macnab_sides(n, a, b),
    )


# -- perturbed regular n-gon -----------------------------------------------


def perturbed_sides(n: int, eps: float, R: float = 1.0) -> tuple[float, ...]:
    h = math.pi / n
    return (2 * R * math.sin(h - eps), 2 * R * math.sin(h + eps)) + (2 * R * math.sin(h),) * (n - 2)


def perturbed_prediction(n: int, eps: float) -> float:
    """Second-order prediction of phi^eps / phi0 (exactly 1 at n = 4)."""
    bracket = (n - 2) ** 2 / (2 * n) + (n - 2) / 2 + 2 / n - 1 / math.sin(math.pi / n) ** 2
    return 1.0 - 2.0 * eps * eps / (n - 2) ** 2 * bracket


def perturbed_regular(n: int, eps: float, R: float = 1.0) -> FamilyPoint:
    if n < 4:
        raise BadCount(f"perturbed family needs n >= 4, got {n}")
    if abs(eps) >= math.pi / n:
        raise EpsilonTooLarge(f"|eps| must be below pi/n = {math.pi / n}")
    if not R > 0:
        raise ValueError("R must be positive")
    sides = perturbed_sides(n, eps, R)
    s = SideList(sides)
    h = math.pi / n
    # all vertices stay on the circle of radius R and the center stays inside
    half = [h - eps, h + eps] + [h] * (n - 2)
    A = 0.5 * R * R * math.fsum(math.sin(2 * t) for t in half)
    L = s.L
    ph = A / p_functional(s)
    A0 = 0.5 * n * R * R * math.sin(2 * h)
    L0 = 2 * n * R * math.sin(h)
    pred = perturbed_prediction(n, eps)
    ratio = ph / phi_regular(n)
    return FamilyPoint(
        family=Family.PERTURBED,
        params={"n": n, "eps": eps, "R": R},
        L=L,
        A=A,
        Lhat=pseudo_perimeter(s),
        phi=ph,
        ratio=ratio,
        nu=nu(s),
        aux={
            "A0": A0,
            "L0": L0,
            "predicted_A": A0 * (1 - 4 * eps * eps / n),
            "predicted_L": L0 * (1 - eps * eps / n),
            "predicted_ratio": pred,
            "ratio_error": ratio - pred,
        },
        sides=sides,
    )


# -- Levy curvilinear polygons ---------------------------------------------


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not (0.0 < alpha < math.pi):
        raise AlphaOutOfRange(f"alpha must lie strictly inside (0, pi), got {alpha!r}")
    return alpha


def levy_phi(alpha: float) -> float:
    """phi of Pi(alpha) on the closed interval [0, pi].

    The endpoints are the limits sqrt(e/3) (sliver, alpha = 0) and e/pi
    (circle, alpha = pi).
    """
    if alpha == 0.0:
        return SQRT_E_OVER_3
    if not (0.0 <= alpha <= math.pi):
        raise AlphaOutOfRange(f"alpha must lie in [0, pi], got {alpha!r}")
    s = math.sin(alpha)
    area = 0.5 * _x_minus_sin(2.0 * alpha)
    slack = _x_minus_sin(alpha)
    half_L = alpha + s
    return area / (half_L**1.5 * math.sqrt(slack)) * math.exp(alpha / half_L)


def levy_pi(alpha: float) -> FamilyPoint:
    alpha = _check_alpha(alpha)
    s = math.sin(alpha)
    half_L = alpha + s
    area = 0.5 * _x_minus_sin(2.0 * alpha)
    slack = _x_minus_sin(alpha)
    ph = levy_phi(alpha)
    ratio = ph / E_OVER_PI
    nu_lim = math.sqrt(half_L / slack) * math.exp(-s / half_L)
    four_a_l2 = area / (half_L * half_L)
    return FamilyPoint(
        family=Family.LEVY_ONE,
        params={"alpha": alpha},
        L=2.0 * half_L,
        A=area,
        Lhat=2.0 * half_L,
        phi=ph,
        ratio=ratio,
        nu=nu_lim,
        aux={
            "four_A_over_Lhat2": four_a_l2,
            "isoperimetric_ratio": math.pi * four_a_l2,
            "chord": 2.0 * s,
        },
    )


def levy_discrete(alpha: float, m: int) -> SideList:
    """(m+1)-gon approximating Pi(alpha): m equal chords of the arc plus the chord."""
    alpha = _check_alpha(alpha)
    if m < 3:
        raise BadCount(f"need m >= 3 arc chords, got {m}")
    sides = (2.0 * math.sin(alpha / m),) * m + (2.0 * math.sin(alpha),)
    try:
        return SideList(sides)
    except PolygonInequalityViolated as exc:
        raise ChordDominates(str(exc)) from None


def _check_theta(alpha: float, theta: float) -> float:
    theta = float(theta)
    top = math.pi - alpha
    if not (-1e-15 <= theta <= top + 1e-15):
        raise ThetaOutOfRange(f"theta must lie in [0, pi - alpha] = [0, {top}], got {theta!r}")
    return min(max(theta, 0.0), top)


def _levy_two_parts(alpha: float, theta: float):
    s1 = math.sin(theta)
    s2 = math.sin(alpha + theta)
    half_L = alpha + s1 + s2
    # the shape is symmetric under theta -> pi - alpha - theta; fold onto
    # the side nearer to theta = 0 so the small terms below stay positive
    tf = min(theta, math.pi - alpha - theta)
    sa2 = math.sin(0.5 * alpha)
    area = _x_minus_sin(alpha) + 2.0 * math.sin(alpha) * math.sin(0.5 * alpha + tf) ** 2
    d = abs(2.0 * sa2 * math.cos(0.5 * alpha + theta))  # |s2 - s1|
    u = _x_minus_sin(alpha) + 4.0 * sa2 * math.sin(0.5 * alpha + 0.5 * tf) * math.sin(0.5 * tf)
    v = alpha + d
    return half_L, area, u, v


def levy_phi2(alpha: float, theta: float) -> float:
    alpha = _check_alpha(alpha)
    theta = _check_theta(alpha, theta)
    half_L, area, u, v = _levy_two_parts(alpha, theta)
    return area / (half_L * math.sqrt(u * v)) * math.exp(alpha / half_L)


def levy_pi2(alpha: float, theta: float) -> FamilyPoint:
    alpha = _check_alpha(alpha)
    theta = _check_theta(alpha, theta)
    half_L, area, u, v = _levy_two_parts(alpha, theta)
    ph = area / (half_L * math.sqrt(u * v)) * math.exp(alpha / half_L)
    nu_lim = half_L * math.exp(alpha / half_L - 1.0) / math.sqrt(u * v)
    four_a_l2 = area / (half_L * half_L)
    at_opt = (alpha + math.sin(alpha)) / (alpha + 2.0 * math.cos(0.5 * alpha)) ** 2
    return FamilyPoint(
        family=Family.LEVY_TWO,
        params={"alpha": alpha, "theta": theta},
        L=2.0 * half_L,
        A=area,
        Lhat=2.0 * half_L,
        phi=ph,
        ratio=ph / E_OVER_PI,
        nu=nu_lim,
        aux={
            "theta0": 0.5 * (math.pi - alpha),
            "four_A_over_Lhat2": four_a_l2,
            "four_A_over_Lhat2_at_theta0": at_opt,
            "isoperimetric_ratio_at_theta0": math.pi * at_opt,
        },
    )


def levy_discrete_split(alpha: float, theta: float, m: int) -> SideList:
    """Polygon approximating Pi(alpha, theta): m arc chords plus the two split chords."""
    alpha = _check_alpha(alpha)
    theta = _check_theta(alpha, theta)
    if m < 3:
        raise BadCount(f"need m >= 3 arc chords, got {m}")
    chords = [2.0 * math.sin(theta), 2.0 * math.sin(alpha + theta)]
    chords = [c for c in chords if c > 1e-15]
    try:
        return SideList((2.0 * math.sin(alpha / m),) * m + tuple(chords))
    except PolygonInequalityViolated as exc:
        raise ChordDominates(str(exc)) from None

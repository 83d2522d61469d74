"""Directed counterexample search over normalized side lengths.

A plain Nelder-Mead simplex works in the first n-1 coordinates of a side
list scaled to unit perimeter (the last side is 1 minus the rest).  Points
outside the admissible region are rejected by scoring them as +inf, which
the reflection/contraction steps then walk away from.  When the best value
has not improved for ``STALL`` iterations the simplex is restarted from a
fresh random sample.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .cyclic import build_cyclic, cyclic_area
from .errors import IsopolyError
from .functionals import E_OVER_PI, report
from .geometry import DEFAULT_TOL, SideList, Tolerance
from .lab import sample_cyclic

RHO, CHI, GAMMA, SIGMA = 1.0, 2.0, 0.5, 0.5
STALL = 50


class Objective(str, enum.Enum):
    TAU_MINUS_NU = "TauMinusNu"
    NEG_ZHANG_DEFICIT = "NegZhangDeficit"
    PHI_MINUS_1 = "PhiMinus1"
    E_OVER_PI_MINUS_PHI = "EOverPiMinusPhi"


def margin(objective: Objective, s: SideList, tol: Tolerance = DEFAULT_TOL) -> float:
    """Violation margin of ``s`` (cyclic area); positive means a counterexample."""
    r = report(s, cyclic_area(build_cyclic(s, tol)))
    if objective is Objective.TAU_MINUS_NU:
        return r.tau - r.nu
    if objective is Objective.NEG_ZHANG_DEFICIT:
        return -r.zhang_deficit / (r.Lhat * r.Lhat)
    if objective is Objective.PHI_MINUS_1:
        return r.phi - 1.0
    return E_OVER_PI - r.phi


@dataclass(frozen=True)
class SearchResult:
    best_sides: SideList
    objective_name: str
    best_margin: float
    evaluations: int
    converged: bool
    restarts: int
    trace: tuple[float, ...]


def _to_sides(x: np.ndarray) -> SideList | None:
    last = 1.0 - math.fsum(x)
    try:
        return SideList(tuple(x) + (last,))
    except IsopolyError:
        return None


class _Budget(Exception):
    pass


def search_counterexample(
    n: int,
    objective: Objective | str,
    seed: int,
    budget: int,
    tol: Tolerance = DEFAULT_TOL,
) -> SearchResult:
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    if budget < 1:
        raise ValueError("budget must be >= 1")
    objective = Objective(objective)
    trace: list[float] = []
    best = {"f": math.inf, "x": None}
    evals = 0

    def f(x: np.ndarray) -> float:
        nonlocal evals
        if evals >= budget:
            raise _Budget
        evals += 1
        s = _to_sides(x)
        if s is None:
            return math.inf
        try:
            m = margin(objective, s, tol)
        except IsopolyError:
            return math.inf
        trace.append(m)
        if -m < best["f"]:
            best["f"], best["x"] = -m, x.copy()
        return -m

    converged = False
    restarts = 0
    try:
        while True:
            x0 = np.asarray(sample_cyclic(n, seed, restarts).lengths[:-1])
            simplex = [x0]
            for i in range(n - 1):
                step = 0.1 * x0[i]
                for _ in range(30):
                    y = x0.copy()
                    y[i] += step
                    if _to_sides(y) is not None:
                        break
                    step *= -0.5
                simplex.append(y)
            values = [f(v) for v in simplex]
            if _run_simplex(f, simplex, values):
                converged = True
            restarts += 1
    except _Budget:
        pass

    if best["x"] is None:
        raise IsopolyError("no admissible point evaluated within budget")
    sides = _to_sides(best["x"])
    return SearchResult(
        best_sides=sides,
        objective_name=objective.value,
        best_margin=-best["f"],
        evaluations=evals,
        converged=converged,
        restarts=restarts,
        trace=tuple(trace),
    )


def _run_simplex(f, simplex: list, values: list) -> bool:
    """Iterate until stalled or collapsed; True if the simplex collapsed."""
    best_seen = min(values)
    stalled = 0
    while True:
        order = np.argsort(values, kind="stable")
        simplex = [simplex[i] for i in order]
        values = [values[i] for i in order]
        spread = values[-1] - values[0]
        size = max(float(np.max(np.abs(v - simplex[0]))) for v in simplex[1:])
        if math.isfinite(spread) and spread <= 1e-15 * (1 + abs(values[0])) and size < 1e-12:
            return True

        centroid = np.mean(simplex[:-1], axis=0)
        worst = simplex[-1]
        xr = centroid + RHO * (centroid - worst)
        fr = f(xr)
        if values[0] <= fr < values[-2]:
            simplex[-1], values[-1] = xr, fr
        elif fr < values[0]:
            xe = centroid + CHI * (xr - centroid)
            fe = f(xe)
            if fe < fr:
                simplex[-1], values[-1] = xe, fe
            else:
                simplex[-1], values[-1] = xr, fr
        else:
            if fr < values[-1]:
                xc = centroid + GAMMA * (xr - centroid)
                fc = f(xc)
                accept = fc <= fr
            else:
                xc = centroid - GAMMA * (centroid - worst)
                fc = f(xc)
                accept = fc < values[-1]
            if accept:
                simplex[-1], values[-1] = xc, fc
            else:
                for i in range(1, len(simplex)):
                    simplex[i] = simplex[0] + SIGMA * (simplex[i] - simplex[0])
                    values[i] = f(simplex[i])

        current = min(values)
        if current < best_seen:
            best_seen = current
            stalled = 0
        else:
            stalled += 1
            if stalled >= STALL:
                return False

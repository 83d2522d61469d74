"""Populations of cyclic polygons, conjecture verdicts and corpus summaries.

Conjectures tracked on every record (all margins are scale free):

c1a  phi >= e/pi                 margin phi - e/pi
c1b  phi <= 1                    margin 1 - phi
c2   Lhat^2 >= 4 n tan(pi/n) A   margin zhang_deficit / Lhat^2
c3   1 <= tau <= nu              margin min(tau - 1, nu - tau)

A margin within ``BAND`` of zero is a Boundary verdict rather than a
violation: regular polygons sit exactly on every one of these inequalities.
"""

from __future__ import annotations

import enum
import math
from collections import Counter, defaultdict
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import families
from .cyclic import CyclicPolygon, build_cyclic, cyclic_area
from .errors import IsopolyError
from .functionals import E_OVER_PI, FunctionalReport, report
from .geometry import DEFAULT_TOL, SideList, Tolerance, validate_sides

BAND = 1e-9

CONJECTURES = ("c1a", "c1b", "c2", "c3")


class Theorem1Case(str, enum.Enum):
    REGULAR = "RegularEquality"
    CASE_I = "CaseI_tau_le_1"
    CASE_II = "CaseII_between"
    CASE_III = "CaseIII_nu_lt_tau"


class Verdict(str, enum.Enum):
    HOLDS = "Holds"
    BOUNDARY = "Boundary"
    VIOLATED = "Violated"


def verdict_of(margin: float, band: float = BAND) -> Verdict:
    if margin > band:
        return Verdict.HOLDS
    if margin >= -band:
        return Verdict.BOUNDARY
    return Verdict.VIOLATED


def classify_values(tau: float, nu: float, band: float = BAND) -> Theorem1Case:
    # tau within the band of 1 counts as "not below 1", so exact ties such as
    # every triangle (tau == 1 identically) are decided by the tau/nu test
    if abs(tau - 1.0) < band and abs(nu - 1.0) < band:
        return Theorem1Case.REGULAR
    if tau < 1.0 - band:
        return Theorem1Case.CASE_I
    if tau <= nu + band:
        return Theorem1Case.CASE_II
    return Theorem1Case.CASE_III


def classify_theorem1(s: SideList | Iterable[float], A: float) -> Theorem1Case:
    r = report(s, A)
    return classify_values(r.tau, r.nu)


def conjecture_margins(r: FunctionalReport) -> dict[str, float]:
    return {
        "c1a": r.phi - E_OVER_PI,
        "c1b": 1.0 - r.phi,
        "c2": r.zhang_deficit / (r.Lhat * r.Lhat),
        "c3": min(r.tau - 1.0, r.nu - r.tau),
    }


# -- sampling ---------------------------------------------------------------


def _generator(seed: int, index: int) -> np.random.Generator:
    seed = int(seed) & 0xFFFF_FFFF_FFFF_FFFF
    return np.random.Generator(np.random.Philox(key=(int(index) << 64) | seed))


def sample_cyclic(n: int, seed: int, index: int = 0) -> SideList:
    """Random side list: normalized exponential variates, resampled until valid.

    The generator is Philox (counter based) keyed by ``seed`` and ``index``,
    so draw ``index`` of a stream never depends on the draws before it.
    """
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    rng = _generator(seed, index)
    while True:
        x = rng.standard_exponential(n)
        x /= x.sum()
        try:
            return SideList(tuple(x))
        except IsopolyError:
            continue


# -- records ----------------------------------------------------------------


@dataclass(frozen=True)
class TrialRecord:
    trial_id: int
    source: str
    sides: tuple[float, ...]
    report: FunctionalReport | None
    theorem1_case: Theorem1Case | None
    verdicts: dict[str, Verdict] = field(default_factory=dict)
    margins: dict[str, float] = field(default_factory=dict)
    center: str | None = None
    error: str | None = None

    @property
    def n(self) -> int:
        return len(self.sides)

    @property
    def ok(self) -> bool:
        return self.error is None


def record_from_report(
    trial_id: int, source: str, sides: Sequence[float], r: FunctionalReport, center: str | None = None
) -> TrialRecord:
    margins = conjecture_margins(r)
    return TrialRecord(
        trial_id=trial_id,
        source=source,
        sides=tuple(float(a) for a in sides),
        report=r,
        theorem1_case=classify_values(r.tau, r.nu),
        verdicts={k: verdict_of(m) for k, m in margins.items()},
        margins=margins,
        center=center,
    )


def evaluate(
    trial_id: int,
    source: str,
    sides: Sequence[float],
    area: float | None = None,
    tol: Tolerance = DEFAULT_TOL,
) -> TrialRecord:
    """Build one record; failures are captured on the record, never raised.

    With ``area`` omitted the cyclic (maximal) area is used.
    """
    try:
        s = validate_sides(sides)
        center = None
        if area is None:
            c: CyclicPolygon = build_cyclic(s, tol)
            area = cyclic_area(c)
            center = str(c.center)
        return record_from_report(trial_id, source, s.lengths, report(s, area), center)
    except (IsopolyError, ValueError, ArithmeticError) as exc:
        return TrialRecord(
            trial_id=trial_id,
            source=source,
            sides=tuple(float(a) for a in sides),
            report=None,
            theorem1_case=None,
            error=f"{type(exc).__name__}: {exc}",
        )


# -- reduction property -----------------------------------------------------


@dataclass(frozen=True)
class ReductionCheck:
    phi_reduced: float  # phi of the given (n-1)-gon
    phi_extended: float  # phi of the n-gon with an appended near-zero side
    phi_difference: float
    tau_reduced: float
    tau_extended: float
    ordering: str  # "less", "equal" or "greater": tau_reduced vs tau_extended


def reduction_check(
    s: SideList | Iterable[float], rel_side: float = 1e-8, tol: Tolerance = DEFAULT_TOL
) -> ReductionCheck:
    """Compare phi and tau of ``s`` with those of ``s`` plus a vanishing side.

    The given list plays the (n-1)-gon; a side of length ``rel_side * L`` is
    appended to form the n-gon.
    """
    s = validate_sides(s)
    small = rel_side * s.L
    ext = SideList(s.lengths + (small,))
    r0 = report(s, cyclic_area(build_cyclic(s, tol)))
    r1 = report(ext, cyclic_area(build_cyclic(ext, tol)))
    diff = r1.tau - r0.tau
    # phi of the two agree to O(rel_side); anything that small is a tie
    scale = max(1e-9, 10 * rel_side)
    if abs(diff) <= scale:
        ordering = "equal"
    else:
        ordering = "less" if diff > 0 else "greater"
    return ReductionCheck(r0.phi, r1.phi, abs(r1.phi - r0.phi), r0.tau, r1.tau, ordering)


# -- sweeps -----------------------------------------------------------------


@dataclass(frozen=True)
class RandomSweep:
    n: int
    count: int
    seed: int


@dataclass(frozen=True)
class GridSweep:
    family: str
    grid: tuple[tuple[str, tuple[float, ...]], ...]


FAMILY_DEFAULTS: dict[str, dict[str, float]] = {
    "regular": {"n": 5, "R": 1.0},
    "macnab": {"n": 3, "a": 1.0, "b": 2.0},
    "perturbed": {"n": 5, "eps": 0.01, "R": 1.0},
    "levy": {"alpha": math.pi / 2, "m": 64},
    "levy2": {"alpha": math.pi / 2, "theta": math.pi / 4, "m": 64},
}

_INT_PARAMS = {"n", "m"}


def family_sides(family: str, params: dict) -> tuple[float, ...]:
    p = dict(FAMILY_DEFAULTS[family])
    p.update(params)
    for k in _INT_PARAMS & p.keys():
        p[k] = int(round(p[k]))
    if family == "regular":
        return families.regular(p["n"], p["R"]).sides
    if family == "macnab":
        return families.macnab_sides(p["n"], p["a"], p["b"])
    if family == "perturbed":
        return families.perturbed_regular(p["n"], p["eps"], p["R"]).sides
    if family == "levy":
        return families.levy_discrete(p["alpha"], p["m"]).lengths
    if family == "levy2":
        return families.levy_discrete_split(p["alpha"], p["theta"], p["m"]).lengths
    raise KeyError(family)


def _fmt_param(k, v) -> str:
    return f"{k}={int(round(v))}" if k in _INT_PARAMS else f"{k}={v!r}"


def _jobs(spec, tol: Tolerance):
    if isinstance(spec, RandomSweep):
        for i in range(spec.count):
            yield ("random", i, spec.n, spec.seed, tol)
        return
    if spec.family not in FAMILY_DEFAULTS:
        raise KeyError(f"unknown family {spec.family!r}")
    names = [k for k, _ in spec.grid]
    for i, values in enumerate(product(*(v for _, v in spec.grid))):
        yield ("grid", i, spec.family, dict(zip(names, values)), tol)


def _run_job(job) -> TrialRecord:
    kind, i = job[0], job[1]
    if kind == "random":
        _, _, n, seed, tol = job
        src = f"Random(seed={seed},index={i})"
        return evaluate(i, src, sample_cyclic(n, seed, i).lengths, tol=tol)
    _, _, family, params, tol = job
    src = "Grid(" + ",".join([family] + [_fmt_param(k, v) for k, v in params.items()]) + ")"
    try:
        sides = family_sides(family, params)
    except (IsopolyError, ValueError) as exc:
        return TrialRecord(i, src, (), None, None, error=f"{type(exc).__name__}: {exc}")
    return evaluate(i, src, sides, tol=tol)


def sweep(
    spec: RandomSweep | GridSweep, tol: Tolerance = DEFAULT_TOL, workers: int = 1
) -> list[TrialRecord]:
    """Evaluate every point of ``spec`` in trial order.

    ``workers > 1`` fans out to processes; results are collected in order,
    so the output is identical to a sequential run.
    """
    jobs = list(_jobs(spec, tol))
    if workers <= 1 or len(jobs) < 2:
        return [_run_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_job, jobs, chunksize=max(1, len(jobs) // (8 * workers))))


# -- corpus summary ---------------------------------------------------------


@dataclass
class CorpusSummary:
    total: int = 0
    errors: int = 0
    verdicts: dict = field(default_factory=dict)
    cases: dict = field(default_factory=dict)
    worst: dict = field(default_factory=dict)
    by_n: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    @property
    def success(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "total": self.total,
            "errors": self.errors,
            "success": self.success,
            "verdicts": self.verdicts,
            "theorem1_cases": self.cases,
            "worst_margins": self.worst,
            "by_n": self.by_n,
            "violations": self.violations,
        }


def verify_corpus(records: Iterable[TrialRecord]) -> CorpusSummary:
    records = sorted(records, key=lambda r: r.trial_id)
    out = CorpusSummary(total=len(records))
    verdicts = {c: Counter() for c in CONJECTURES}
    cases: Counter = Counter()
    by_n: dict = defaultdict(lambda: {c: Counter() for c in CONJECTURES})
    worst: dict = {}
    for rec in records:
        if not rec.ok:
            out.errors += 1
            continue
        if rec.theorem1_case is not None:
            cases[rec.theorem1_case.value] += 1
        for c in CONJECTURES:
            v = rec.verdicts.get(c)
            if v is None:
                continue
            verdicts[c][v.value] += 1
            by_n[rec.n][c][v.value] += 1
            m = rec.margins.get(c)
            if m is not None and (c not in worst or m < worst[c]["margin"]):
                worst[c] = {"margin": m, "trial_id": rec.trial_id}
            if v is Verdict.VIOLATED:
                out.violations.append({"trial_id": rec.trial_id, "conjecture": c, "margin": m})

    def plain(counter):
        return {k.value: counter.get(k.value, 0) for k in Verdict}

    out.verdicts = {c: plain(verdicts[c]) for c in CONJECTURES}
    out.cases = {k.value: cases.get(k.value, 0) for k in Theorem1Case}
    out.worst = {c: worst[c] for c in CONJECTURES if c in worst}
    out.by_n = {str(n): {c: plain(v[c]) for c in CONJECTURES} for n, v in sorted(by_n.items())}
    return out

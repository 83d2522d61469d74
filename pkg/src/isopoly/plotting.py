"""Static figures for the CLI report paths.

Everything renders off-screen (Agg) straight to a file; the delimited
output on stdout is unaffected by whether a figure is requested.
"""

from __future__ import annotations

import math
import os
from collections.abc import Sequence
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .functionals import E_OVER_PI  # noqa: E402
from .lab import Theorem1Case, TrialRecord  # noqa: E402

STYLE = {
    "font.size": 10,
    "axes.titlesize": 11,
    "axes.labelsize": 10,
    "legend.fontsize": 8,
    "axes.linewidth": 0.8,
    "figure.dpi": 110,
}

CASE_COLORS = {
    Theorem1Case.REGULAR: "#0C5DA5",
    Theorem1Case.CASE_I: "#F2AD00",
    Theorem1Case.CASE_II: "#00A08A",
    Theorem1Case.CASE_III: "#B40F20",
}

# keeps PNG bytes stable across runs
_META = {"Software": None}


def _finish(ax):
    for spine in ("top", "right"):
        ax.spines[spine].set_visible(False)
    ax.grid(alpha=0.25, linewidth=0.5, linestyle="--")


def _save(fig, path: str | os.PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fmt = path.suffix.lstrip(".").lower() or "png"
    meta = _META if fmt == "png" else None
    fig.savefig(path, format=fmt, dpi=150, metadata=meta)
    plt.close(fig)
    return path


def plot_limits(rows: Sequence[dict], path: str | os.PathLike) -> Path:
    """phi0(n) against n, with the e/pi asymptote."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(5.0, 3.4))
        ns = [r["n"] for r in rows]
        ax.plot(ns, [r["phi0"] for r in rows], "o-", ms=2.5, lw=1.0, color="#0C5DA5", label=r"$\varphi^0_n$")
        ax.axhline(E_OVER_PI, color="0.3", lw=0.8, ls="--", label=r"$e/\pi$")
        ax.set_xlabel("n")
        ax.set_ylabel(r"$\varphi^0_n$")
        ax.legend(frameon=False)
        _finish(ax)
        return _save(fig, path)


def plot_sweep(records: Sequence[TrialRecord], path: str | os.PathLike) -> Path:
    """tau against nu per record, coloured by trichotomy case; tau = nu dashed."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(4.6, 4.2))
        lo, hi = math.inf, -math.inf
        for case, color in CASE_COLORS.items():
            pts = [(r.report.nu, r.report.tau) for r in records if r.ok and r.theorem1_case is case]
            if not pts:
                continue
            xs, ys = zip(*pts)
            lo = min(lo, *xs, *ys)
            hi = max(hi, *xs, *ys)
            ax.scatter(xs, ys, s=6, color=color, label=f"{case.value} ({len(pts)})", lw=0)
        if math.isfinite(lo):
            pad = 0.05 * (hi - lo or 1.0)
            ax.plot([lo - pad, hi + pad], [lo - pad, hi + pad], color="0.3", lw=0.8, ls="--")
            ax.axhline(1.0, color="0.6", lw=0.6)
        ax.set_xlabel(r"$\nu$")
        ax.set_ylabel(r"$\tau$")
        ax.legend(frameon=False, loc="best")
        _finish(ax)
        return _save(fig, path)


def plot_family_grid(
    x_name: str, xs: Sequence[float], series: dict[str, Sequence[float]], path: str | os.PathLike
) -> Path:
    """One line per named series against the swept parameter."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(5.0, 3.4))
        for name, ys in series.items():
            ys = [math.nan if y is None else y for y in ys]
            ax.plot(xs, ys, lw=1.1, label=name)
        if "phi" in series:
            ax.axhline(E_OVER_PI, color="0.4", lw=0.7, ls=":", label=r"$e/\pi$")
        ax.set_xlabel(x_name)
        ax.legend(frameon=False)
        _finish(ax)
        return _save(fig, path)

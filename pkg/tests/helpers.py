"""Shared strategies and small numeric helpers for the test suite."""

import math

import numpy as np
from hypothesis import strategies as st


@st.composite
def side_lists(draw, min_n=3, max_n=12, slack=1e-3):
    """Valid side lists with every factor 1 - 2 a_i / L at least ``slack``."""
    n = draw(st.integers(min_n, max_n))
    w = draw(st.lists(st.floats(0.05, 1.0), min_size=n, max_size=n))
    w = np.asarray(w)
    L = w.sum()
    while np.any(1 - 2 * w / L < slack):
        # pull towards the regular polygon until every factor clears the slack
        w = 0.5 * (w + L / n)
    scale = draw(st.floats(0.1, 10.0))
    return tuple(float(x) for x in w * scale)


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def random_sides(rng, n):
    while True:
        x = rng.standard_exponential(n)
        if np.all(2 * x < x.sum()):
            return tuple(x / x.sum())


PI = math.pi


def mp_functionals(sides, area, dps=40):
    """High-precision L, Lhat, P, tau, nu, zhang deficit written straight from the definitions."""
    import mpmath as mp

    with mp.workdps(dps):
        a = [mp.mpf(x) for x in sides]
        A = mp.mpf(area)
        n = len(a)
        L = mp.fsum(a)
        prod = mp.fprod([1 - 2 * x / L for x in a])
        P = L**2 / 4 * mp.sqrt(prod)
        Lh = L * n / (n - 2) * prod ** (mp.mpf(1) / n)
        k = 4 * n * mp.tan(mp.pi / n)
        phi0 = 1 / (n * mp.tan(mp.pi / n) * (1 - mp.mpf(2) / n) ** (mp.mpf(n) / 2))
        return {
            "L": L,
            "P": P,
            "Lhat": Lh,
            "phi": A / P,
            "tau": A / P / phi0,
            "nu": (L / Lh) ** (mp.mpf(n) / 2 - 2),
            "zeta": k * A / L**2 * (Lh / L) ** (mp.mpf(n) / 2),
            "classic_deficit": L**2 - k * A,
            "zhang_deficit": Lh**2 - k * A,
        }


def mp_heron(a, b, c, dps=40):
    import mpmath as mp

    with mp.workdps(dps):
        a, b, c = (mp.mpf(x) for x in (a, b, c))
        s = (a + b + c) / 2
        return mp.sqrt(s * (s - a) * (s - b) * (s - c))

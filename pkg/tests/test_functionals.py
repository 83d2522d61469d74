import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from isopoly.cyclic import build_cyclic, cyclic_area, cyclic_inradius
from isopoly.errors import BadCount, CenterNotInside, NonPositiveArea
from isopoly.families import macnab, perturbed_regular
from isopoly.functionals import (
    E_OVER_PI,
    classic_deficit,
    corollary2_check,
    identity_residuals,
    nu,
    p_functional,
    phi,
    phi_regular,
    phi_regular_limit,
    pseudo_perimeter,
    report,
    tau,
    zeta,
    zhang_bounds_check,
    zhang_deficit,
)
from isopoly.geometry import heron_area, regular_sides

from .helpers import mp_functionals, mp_heron, random_sides, rel, side_lists

HEX_AREA = 3 * math.sqrt(3) / 2


def regular_area(n, side=1.0):
    return n * side * side / (4 * math.tan(math.pi / n))


class TestP:
    def test_examples(self):
        assert p_functional([1, 1, 1]) == pytest.approx(math.sqrt(3) / 4, rel=1e-14)
        assert p_functional([3, 4, 5]) == pytest.approx(6, rel=1e-14)
        assert p_functional([1, 4, 1, 4]) == pytest.approx(4, rel=1e-14)

    @given(side_lists())
    def test_lhat_form(self, sides):
        # P = (1/4)((n-2)/n)^(n/2) Lhat^(n/2) L^((4-n)/2)
        n, L = len(sides), sum(sides)
        Lh = pseudo_perimeter(sides)
        alt = 0.25 * ((n - 2) / n) ** (n / 2) * Lh ** (n / 2) * L ** ((4 - n) / 2)
        assert rel(p_functional(sides), alt) < 1e-11

    def test_log_space_large_n(self):
        # above the log-space threshold the two paths must agree
        rng = np.random.default_rng(2)
        s = random_sides(rng, 40)
        m = mp_functionals(s, 1.0)
        assert rel(p_functional(s), float(m["P"])) < 1e-12
        assert rel(pseudo_perimeter(s), float(m["Lhat"])) < 1e-12


class TestPseudoPerimeter:
    def test_regular(self):
        assert pseudo_perimeter([1, 1, 1]) == pytest.approx(3, rel=1e-14)

    def test_rectangle(self):
        assert pseudo_perimeter([1, 4, 1, 4]) == pytest.approx(8, rel=1e-14)

    def test_isosceles(self):
        # mpmath value
        assert pseudo_perimeter([1, 1, 1.5]) == pytest.approx(3.1201257345778562, rel=1e-13)

    @given(side_lists())
    def test_at_most_perimeter(self, sides):
        assert pseudo_perimeter(sides) <= sum(sides) * (1 + 1e-14)

    @given(side_lists())
    def test_matches_mpmath(self, sides):
        assert rel(pseudo_perimeter(sides), float(mp_functionals(sides, 1.0)["Lhat"])) < 1e-12


class TestPhi:
    def test_triangle(self):
        assert phi([3, 4, 5], 6) == pytest.approx(1, rel=1e-14)

    def test_rectangle(self):
        assert phi([1, 4, 1, 4], 4) == pytest.approx(1, rel=1e-14)

    def test_hexagon(self):
        assert phi([1] * 6, HEX_AREA) == pytest.approx(0.974278, abs=1e-6)
        assert phi([1] * 6, HEX_AREA) == pytest.approx(phi_regular(6), rel=1e-13)

    @pytest.mark.parametrize("A", [0.0, -1.0, float("nan"), float("inf")])
    def test_bad_area(self, A):
        with pytest.raises(NonPositiveArea):
            phi([1, 1, 1], A)


class TestPhiRegular:
    def test_small(self):
        assert phi_regular(3) == pytest.approx(1, rel=1e-15)
        assert phi_regular(4) == pytest.approx(1, rel=1e-15)
        assert phi_regular(6) == pytest.approx(0.97427857925749348, rel=1e-14)

    def test_bad(self):
        with pytest.raises(BadCount):
            phi_regular(2)

    def test_limit(self):
        assert phi_regular_limit() == pytest.approx(0.8652559794, abs=1e-10)
        assert abs(phi_regular(10**4) - E_OVER_PI) < 1e-3

    def test_decreasing(self):
        vals = [phi_regular(n) for n in range(4, 65)]
        assert all(b < a for a, b in zip(vals, vals[1:]))

    def test_matches_mpmath(self):
        import mpmath as mp

        for n in (3, 5, 7, 12, 64):
            exact = 1 / (n * mp.tan(mp.pi / n) * (1 - mp.mpf(2) / n) ** (mp.mpf(n) / 2))
            assert rel(phi_regular(n), float(exact)) < 1e-14


class TestTauNu:
    @pytest.mark.parametrize("n", [3, 5, 8, 17])
    @pytest.mark.parametrize("side", [0.01, 1.0, 250.0])
    def test_regular(self, n, side):
        s = regular_sides(n, side).lengths
        A = regular_area(n, side)
        assert tau(s, A) == pytest.approx(1, abs=1e-12)
        assert nu(s) == pytest.approx(1, abs=1e-12)

    def test_isosceles_triangle(self):
        A = heron_area(1, 1, 1.5)
        assert tau([1, 1, 1.5], A) == pytest.approx(1, abs=1e-12)
        assert nu([1, 1, 1.5]) == pytest.approx(0.94417397527874766, rel=1e-13)

    @given(side_lists())
    def test_nu_side_of_one(self, sides):
        # L/Lhat >= 1, raised to n/2 - 2: below 1 only for triangles
        v = nu(sides)
        if len(sides) == 3:
            assert v <= 1 + 1e-15
        else:
            assert v >= 1 - 1e-13

    def test_quadrilateral_nu_exact(self):
        assert nu([1, 2, 3, 4]) == 1.0

    def test_macnab_sandwich(self):
        r = report([1, 2, 1, 2, 1, 2], macnab(3, 1, 2).A)
        assert 1 <= r.tau <= r.nu
        assert r.tau == pytest.approx(1.004526199905894, rel=1e-13)
        assert r.nu == pytest.approx(1.0141851056742199, rel=1e-13)


class TestZeta:
    def test_regular(self):
        assert zeta([1] * 5, regular_area(5)) == pytest.approx(1, abs=1e-12)

    def test_rectangle(self):
        assert zeta([1, 4, 1, 4], 4) == pytest.approx(0.4096, rel=1e-13)

    def test_isosceles(self):
        z = zeta([1, 1, 1.5], heron_area(1, 1, 1.5))
        # mpmath oracle; equals nu^6 because tau = 1 here
        assert z == pytest.approx(0.70845481049562682, rel=1e-12)
        assert z == pytest.approx(nu([1, 1, 1.5]) ** 6, rel=1e-12)

    @given(side_lists())
    def test_tau_nu_form(self, sides):
        n = len(sides)
        if n == 4:
            return
        A = cyclic_area(build_cyclic(sides))
        assert rel(zeta(sides, A), tau(sides, A) / nu(sides) ** (2 * n / (n - 4))) < 1e-9


class TestDeficits:
    def test_classic_square(self):
        assert classic_deficit(4, 4, 1) == pytest.approx(0, abs=1e-12)

    def test_classic_obtuse(self):
        A = cyclic_area(build_cyclic([1, 1, 1.9]))
        d = classic_deficit(3, 3.9, A)
        # L = 3.9, so L^2 = 15.21
        assert d == pytest.approx(9.0445073189565783, rel=1e-12)
        assert d == pytest.approx(3.9**2 - 12 * math.sqrt(3) * A, rel=1e-14)

    def test_zhang_square_and_rectangle(self):
        assert zhang_deficit([1, 1, 1, 1], 1) == pytest.approx(0, abs=1e-12)
        assert zhang_deficit([1, 4, 1, 4], 4) == pytest.approx(0, abs=1e-12)

    def test_zhang_isosceles_is_negative(self):
        d = zhang_deficit([1, 1, 1.5], heron_area(1, 1, 1.5))
        exact = mp_functionals([1, 1, 1.5], mp_heron(1, 1, 1.5))["zhang_deficit"]
        assert d == pytest.approx(-0.57561071407563343, rel=1e-12)
        assert rel(d, float(exact)) < 1e-12

    def test_classic_bad_n(self):
        with pytest.raises(BadCount):
            classic_deficit(2, 1, 1)

    @given(side_lists())
    def test_classic_nonnegative_cyclic(self, sides):
        A = cyclic_area(build_cyclic(sides))
        assert classic_deficit(len(sides), sum(sides), A) >= -1e-9 * sum(sides) ** 2


class TestCorollary2:
    def test_regular(self):
        c = corollary2_check([1] * 6, HEX_AREA)
        assert c.lhs == pytest.approx(0, abs=1e-12)
        assert c.rhs == pytest.approx(0, abs=1e-12)
        assert c.margin == pytest.approx(0, abs=1e-12)

    def test_rectangle(self):
        c = corollary2_check([1, 4, 1, 4], 4)
        assert (c.lhs, c.rhs, c.margin) == pytest.approx((0, 0, 0), abs=1e-12)
        assert c.in_scope

    def test_sharper_bound_only_when_tau_nu_at_least_one(self):
        c = corollary2_check([1, 2, 1, 2, 1, 2], macnab(3, 1, 2).A)
        assert c.tau * c.nu >= 1
        assert c.sharper_rhs is not None and c.sharper_margin <= c.lhs
        small = corollary2_check([1, 1, 1.5], 0.3)
        assert small.tau * small.nu < 1 and small.sharper_rhs is None

    def test_pentagon_vertex_pairing_in_scope(self):
        # non-cyclic area below the cyclic one puts tau under 1
        s = [1, 1.2, 0.9, 1.1, 1.0]
        A = 0.9 * cyclic_area(build_cyclic(s))
        c = corollary2_check(s, A)
        assert c.in_scope
        assert c.margin >= -1e-9


class TestZhangBounds:
    def test_regular_tight(self):
        n = 7
        c = build_cyclic([1] * n)
        b = zhang_bounds_check([1] * n, cyclic_area(c), c.R, cyclic_inradius(c))
        assert b.zeta == pytest.approx(1, abs=1e-12)
        for v in (b.upper_R, b.upper_r, b.lower_r):
            assert v == pytest.approx(1, abs=1e-12)

    def test_macnab_hexagon_strictly_inside(self):
        s = [1, 2, 1, 2, 1, 2]
        c = build_cyclic(s)
        b = zhang_bounds_check(s, cyclic_area(c), c.R, cyclic_inradius(c))
        assert all(b.passes.values())
        assert all(m > 1e-3 for m in b.margins.values())
        assert b.zeta == pytest.approx(0.92311944489380, rel=1e-12)

    def test_perturbed_pentagon_margin_orders(self):
        """Upper margins shrink like eps^2; the lower-r margin only like eps."""
        eps = np.array([0.04, 0.02, 0.01, 0.005])
        rows = []
        for e in eps:
            s = perturbed_regular(5, float(e)).sides
            c = build_cyclic(s)
            b = zhang_bounds_check(s, cyclic_area(c), c.R, cyclic_inradius(c))
            assert all(b.passes.values())
            rows.append([b.margins[k] for k in ("upper_R", "upper_r", "lower_r")])
        slopes = np.polyfit(np.log(eps), np.log(np.asarray(rows)), 1)[0]
        assert slopes[0] == pytest.approx(2, abs=0.1)
        assert slopes[1] == pytest.approx(2, abs=0.1)
        assert slopes[2] == pytest.approx(1, abs=0.1)

    def test_rejects_zero_inradius(self):
        with pytest.raises(CenterNotInside):
            zhang_bounds_check([3, 4, 5], 6, 2.5, 0.0)


class TestIdentities:
    def test_regular_triangle(self):
        r = identity_residuals([1, 1, 1], math.sqrt(3) / 4)
        assert r.max() < 1e-12

    def test_pentagon(self):
        s = [1, 2, 3, 4, 5]
        r = identity_residuals(s, cyclic_area(build_cyclic(s)))
        assert r.r10 < 1e-10 and r.r13 < 1e-10 and r.r14 < 1e-10

    def test_rectangle_skips_r13(self):
        r = identity_residuals([1, 4, 1, 4], 4)
        assert r.r13 is None
        assert r.r10 < 1e-12 and r.r14 < 1e-12


class TestReport:
    def test_regular_pentagon(self):
        r = report([1] * 5, regular_area(5))
        assert r.tau == pytest.approx(1, abs=1e-12)
        assert r.nu == pytest.approx(1, abs=1e-12)
        assert abs(r.classic_deficit) < 1e-12 and abs(r.zhang_deficit) < 1e-12

    def test_isosceles(self):
        r = report([1, 1, 1.5], heron_area(1, 1, 1.5))
        assert r.tau == pytest.approx(1, abs=1e-12)
        assert r.nu == pytest.approx(0.9442, abs=1e-4)
        assert r.zhang_deficit < 0

    def test_fields_against_mpmath(self):
        rng = np.random.default_rng(8)
        for n in range(3, 13):
            s = random_sides(rng, n)
            A = cyclic_area(build_cyclic(s))
            r = report(s, A)
            m = mp_functionals(s, A)
            for k in ("L", "P", "Lhat", "phi", "tau", "nu", "zeta"):
                assert rel(getattr(r, k), float(m[k])) < 1e-11, k

    @given(side_lists(), st.floats(0.01, 100))
    def test_scale_invariance(self, sides, c):
        A = cyclic_area(build_cyclic(sides))
        r1 = report(sides, A)
        r2 = report([c * x for x in sides], c * c * A)
        for k in ("phi", "tau", "nu", "zeta"):
            assert rel(getattr(r2, k), getattr(r1, k)) < 1e-11

    @given(side_lists(min_n=3, max_n=3))
    def test_triangle_collapse(self, sides):
        r = report(sides, heron_area(*sides))
        assert abs(r.phi - 1) < 1e-12 and abs(r.tau - 1) < 1e-12

    @given(side_lists(min_n=4, max_n=4))
    def test_quadrilateral_collapse(self, sides):
        r = report(sides, cyclic_area(build_cyclic(sides)))
        assert r.nu == 1.0
        assert abs(r.phi - 1) < 1e-10
        assert abs(r.zhang_deficit) < 1e-10 * r.Lhat**2

    def test_as_dict(self):
        d = report([3, 4, 5], 6).as_dict()
        assert list(d)[:3] == ["n", "L", "A"]
        assert d["corollary2_rhs"] == pytest.approx(0, abs=1e-12)

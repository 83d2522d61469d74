import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from isopoly.errors import (
    BadCount,
    DegenerateVertices,
    NonPositiveSide,
    PolygonInequalityViolated,
    TooFewSides,
)
from isopoly.geometry import (
    SideList,
    Tolerance,
    VertexPolygon,
    brahmagupta_bound,
    heron_area,
    perimeter,
    regular_polygon,
    regular_sides,
    shoelace_area,
    validate_sides,
)

from .helpers import rel, side_lists


def heron_s_form(a, b, c):
    s = 0.5 * (a + b + c)
    return math.sqrt(s * (s - a) * (s - b) * (s - c))


class TestValidateSides:
    def test_equilateral(self):
        s = validate_sides([1, 1, 1])
        assert s.n == 3 and s.L == 3

    def test_pentagon(self):
        s = validate_sides([1, 2, 3, 4, 5])
        assert s.n == 5 and s.L == 15
        assert s.lengths == (1, 2, 3, 4, 5)

    def test_inequality_violated(self):
        with pytest.raises(PolygonInequalityViolated):
            validate_sides([10, 1, 1])

    def test_flat_is_rejected(self):
        with pytest.raises(PolygonInequalityViolated):
            validate_sides([2, 1, 1])

    def test_near_degenerate_is_rejected(self):
        # factor 1 - 2 a/L below 1e-14
        with pytest.raises(PolygonInequalityViolated):
            validate_sides([1.0, 0.5, 0.5 + 1e-16])

    @pytest.mark.parametrize("raw", [[1, 0, 1], [1, -1, 1, 1], [1, float("nan"), 1]])
    def test_non_positive(self, raw):
        with pytest.raises(NonPositiveSide):
            validate_sides(raw)

    def test_too_few(self):
        with pytest.raises(TooFewSides):
            validate_sides([1, 1])

    def test_errors_are_value_errors(self):
        with pytest.raises(ValueError):
            validate_sides([10, 1, 1])

    @given(st.lists(st.floats(0.01, 10), min_size=3, max_size=9), st.randoms())
    def test_verdict_permutation_invariant(self, raw, rnd):
        def ok(x):
            try:
                validate_sides(x)
                return True
            except PolygonInequalityViolated:
                return False

        shuffled = list(raw)
        rnd.shuffle(shuffled)
        assert ok(raw) == ok(shuffled)

    @given(side_lists())
    def test_factors_in_open_unit_interval(self, sides):
        s = validate_sides(sides)
        f = 1 - 2 * s.array() / s.L
        assert np.all(f > 0) and np.all(f < 1)


class TestPerimeter:
    @pytest.mark.parametrize("sides, L", [([1, 1, 1], 3), ([1, 4, 1, 4], 10), ([3, 4, 5], 12)])
    def test_examples(self, sides, L):
        assert perimeter(validate_sides(sides)) == L


class TestTolerance:
    def test_defaults(self):
        t = Tolerance()
        assert (t.rel_tol, t.abs_tol, t.max_iter) == (1e-12, 1e-12, 200)

    @pytest.mark.parametrize("kw", [{"rel_tol": 0}, {"abs_tol": -1}, {"max_iter": 0}])
    def test_invalid(self, kw):
        with pytest.raises(ValueError):
            Tolerance(**kw)


class TestShoelace:
    def test_unit_square(self):
        assert shoelace_area(VertexPolygon(((0, 0), (1, 0), (1, 1), (0, 1)))) == 1

    def test_triangle(self):
        assert shoelace_area(VertexPolygon(((0, 0), (3, 0), (0, 4)))) == 6

    def test_regular_hexagon(self):
        assert shoelace_area(regular_polygon(6, 1.0)) == pytest.approx(3 * math.sqrt(3) / 2, rel=1e-12)

    def test_clockwise_is_reversed(self):
        p = VertexPolygon(((0, 0), (0, 1), (1, 1), (1, 0)))
        assert shoelace_area(p) == 1
        assert p.vertices[0] == (1, 0)

    def test_degenerate(self):
        with pytest.raises(DegenerateVertices):
            shoelace_area(VertexPolygon(((0, 0), (1, 0), (2, 0))))

    def test_repeated_vertex(self):
        with pytest.raises(DegenerateVertices):
            VertexPolygon(((0, 0), (0, 0), (1, 1)))

    def test_from_flat(self):
        p = VertexPolygon.from_flat([0, 0, 2, 0, 2, 1, 0, 1])
        assert p.side_lengths() == (2, 1, 2, 1)
        with pytest.raises(ValueError):
            VertexPolygon.from_flat([0, 0, 1])

    @pytest.mark.parametrize("n", range(3, 65))
    def test_regular_area_formula(self, n):
        R = 1.7
        assert rel(shoelace_area(regular_polygon(n, R)), 0.5 * n * R * R * math.sin(2 * math.pi / n)) < 1e-12


class TestHeron:
    def test_right_triangle(self):
        assert heron_area(3, 4, 5) == pytest.approx(6, rel=1e-15)

    def test_equilateral(self):
        assert heron_area(1, 1, 1) == pytest.approx(math.sqrt(3) / 4, rel=1e-15)

    def test_isosceles(self):
        assert heron_area(1, 1, 1.5) == pytest.approx(0.496078, abs=1e-6)
        assert heron_area(1, 1, 1.5) == pytest.approx(heron_s_form(1, 1, 1.5), rel=1e-14)

    def test_invalid(self):
        with pytest.raises(PolygonInequalityViolated):
            heron_area(1, 1, 3)

    def test_matches_s_form_on_random_triples(self):
        rng = np.random.default_rng(11)
        checked = 0
        while checked < 1000:
            a, b, c = rng.uniform(0.01, 1, 3)
            if 2 * max(a, b, c) >= a + b + c - 1e-6:
                continue
            assert rel(heron_area(a, b, c), heron_s_form(a, b, c)) < 1e-10
            checked += 1


class TestBrahmagupta:
    def test_rectangle(self):
        assert brahmagupta_bound(1, 4, 1, 4) == pytest.approx(4, rel=1e-15)

    def test_square(self):
        assert brahmagupta_bound(1, 1, 1, 1) == pytest.approx(1, rel=1e-15)

    def test_general(self):
        assert brahmagupta_bound(2, 3, 4, 5) == pytest.approx(math.sqrt(120), rel=1e-14)

    def test_bounds_non_cyclic_realization(self):
        # a 2x1 parallelogram sheared by 45 degrees: same sides as the 2x1 rectangle
        h = math.sqrt(0.5)
        p = VertexPolygon(((0, 0), (2, 0), (2 + h, h), (h, h)))
        assert shoelace_area(p) < brahmagupta_bound(*p.side_lengths())


class TestRegularPolygon:
    def test_square(self):
        p = regular_polygon(4, math.sqrt(2) / 2)
        assert np.allclose(p.side_lengths(), 1, rtol=1e-14)

    def test_triangle(self):
        assert np.allclose(regular_polygon(3, 1 / math.sqrt(3)).side_lengths(), 1, rtol=1e-14)

    def test_hexagon(self):
        p = regular_polygon(6, 1.0)
        assert np.allclose(p.side_lengths(), 1, rtol=1e-14)
        assert shoelace_area(p) == pytest.approx(2.598076, abs=1e-6)

    def test_bad_count(self):
        with pytest.raises(BadCount):
            regular_polygon(2)
        with pytest.raises(BadCount):
            regular_sides(2)

    def test_regular_sides(self):
        assert regular_sides(5, 2.0) == SideList((2.0,) * 5)

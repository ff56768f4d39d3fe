import numpy as np
import pytest

from ordinaryplanes import families
from ordinaryplanes.errors import (
    DegenerateConfigurationError,
    DegenerateSubsetError,
    IllConditionedError,
)
from ordinaryplanes.geometry import Configuration, FloatConfiguration
from ordinaryplanes.incidence import (
    ResidueScan,
    bettercount_lhs,
    check_bettercount,
    check_ints,
    check_trivcount,
    per_point_from_profile,
    per_point_ordinary,
    pigeonhole_check,
    profile_document,
    projection_matches,
    scan_residues,
    secant_profile,
    secant_profile_numeric,
)


class TestExactProfile:
    def test_cube(self, cube):
        p = secant_profile(cube)
        assert p.ordinary == 8
        assert p.tau == {3: 8, 4: 12}
        assert p.tau_vector() == (8, 12, 0, 0, 0)
        assert p.hyperplane_count == 20
        assert check_trivcount(p)

    def test_cube_bettercount(self, cube):
        p = secant_profile(cube)
        assert bettercount_lhs(p) == 48
        assert check_bettercount(p)

    def test_cube_per_point(self, cube):
        assert per_point_ordinary(cube).counts == (3,) * 8

    def test_cube_minus_vertex(self):
        assert secant_profile(families.cube_minus_vertex()).tau == {3: 11, 4: 6}

    def test_broken_fano(self):
        p = secant_profile(families.broken_fano())
        assert p.ordinary == 3
        assert p.tau == {2: 3, 3: 6}

    def test_trivial_example(self):
        p = secant_profile(families.trivial_example(8, 4), keep_hyperplanes=True)
        assert p.tau == {4: 35, 7: 1}
        assert per_point_from_profile(p).counts[0] == 35

    def test_hyperplanes_are_sorted_and_incident(self, cube):
        p = secant_profile(cube, keep_hyperplanes=True)
        keys = [h for h, _ in p.hyperplanes]
        assert keys == sorted(keys)
        for h, points in p.hyperplanes:
            assert all(sum(a * b for a, b in zip(h.coeffs, cube.points[j].coords)) == 0 for j in points)

    def test_degenerate_subset(self, collinear_triple):
        with pytest.raises(DegenerateSubsetError) as excinfo:
            secant_profile(collinear_triple)
        assert excinfo.value.witness == (0, 1, 2)

    def test_degenerate_subset_skipped(self, collinear_triple):
        p = secant_profile(collinear_triple, validate=False)
        assert p.skipped[0] == (0, 1, 2)

    def test_not_spanning(self):
        c = Configuration.from_coordinates(2, [(1, 0, 0), (0, 1, 0), (1, 1, 0)])
        with pytest.raises(DegenerateConfigurationError):
            secant_profile(c)

    def test_worker_count_does_not_change_output(self):
        c = families.trivial_example(14, 5)
        one = secant_profile(c, keep_hyperplanes=True, workers=1)
        two = secant_profile(c, keep_hyperplanes=True, workers=2)
        assert one == two
        assert one.hyperplanes == two.hyperplanes

    def test_per_point_needs_hyperplanes(self, cube):
        with pytest.raises(ValueError):
            per_point_from_profile(secant_profile(cube))


class TestIdentities:
    def test_ints_holds_for_cube(self, cube):
        assert check_ints(cube) == (True, None)

    def test_ints_witness(self, collinear_triple):
        ok, witness = check_ints(collinear_triple)
        assert not ok
        assert witness == (0, 1, 2, 3, 4)

    def test_pigeonhole_equality_on_cube(self, cube):
        report = pigeonhole_check(cube)
        assert report.double_count_holds
        assert report.inequality_holds
        assert report.equality
        assert report.minimizer == 0

    def test_projection_matches(self, cube):
        assert projection_matches(cube, 0) == (3, 3)


class TestNumericProfile:
    def test_agrees_with_exact(self, cube):
        numeric = secant_profile_numeric(FloatConfiguration.from_configuration(cube))
        assert numeric.tau == secant_profile(cube).tau
        assert numeric.backend == 'float'

    def test_polygon_x12(self):
        assert secant_profile_numeric(families.polygon_points(12)).ordinary == 6

    def test_prism_p10(self):
        assert secant_profile_numeric(families.prism_points(10)).ordinary == 20

    def test_plain_arrays(self):
        coords = np.array([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]], dtype=float)
        assert secant_profile_numeric(coords).tau == {2: 6}

    def test_ill_conditioned(self):
        coords = np.array([[1, 0, 0], [1, 1e-12, 0], [0, 1, 0], [0, 0, 1]], dtype=float)
        with pytest.raises(IllConditionedError) as excinfo:
            secant_profile_numeric(coords)
        assert excinfo.value.witness == (0, 1)

    def test_per_point_from_numeric(self):
        p = secant_profile_numeric(families.polygon_points(12), keep_hyperplanes=True)
        assert per_point_from_profile(p).total == 2 * p.ordinary


class TestResidues:
    def test_gap(self):
        assert ResidueScan(1e-15, 1e-3).has_gap(1e-7)
        assert not ResidueScan(5e-8, 1e-3).has_gap(1e-7)
        assert not ResidueScan(1e-15, 5e-7).has_gap(1e-7)

    @pytest.mark.parametrize("points", [
        families.polygon_points(24),
        families.prism_points(24),
    ])
    def test_family_gap(self, points):
        assert scan_residues(points).has_gap(1e-7)


class TestDocument:
    def test_profile_document(self, cube):
        p = secant_profile(cube, keep_hyperplanes=True)
        doc = profile_document(
            p,
            {'trivcount': True, 'bettercount': True},
            per_point=per_point_from_profile(p),
            include_hyperplanes=True,
        )
        assert doc.ordinary == 8
        assert doc.tau == {'3': 8, '4': 12}
        assert doc.per_point == [3] * 8
        assert len(doc.hyperplanes) == 20
        assert doc.hyperplanes[0].points == sorted(doc.hyperplanes[0].points)

import json
from fractions import Fraction

import numpy as np
import pytest

from ordinaryplanes import families
from ordinaryplanes.errors import (
    ConfigurationParseError,
    DegenerateError,
    DimensionMismatchError,
    DuplicatePointError,
    DuplicateProjectionError,
    IndexOutOfRangeError,
    SingularMapError,
    UnsupportedDimensionError,
    ZeroVectorError,
)
from ordinaryplanes.geometry import (
    Configuration,
    FloatConfiguration,
    Hyperplane,
    ProjectiveMap,
    ProjectivePoint,
    canonicalize,
    delete_point,
    dump_configuration,
    incident,
    load_configuration,
    project_from_point,
    spanning_hyperplane,
    transform,
    validate_general_position,
)


class TestCanonicalize:
    def test_primitive_positive(self):
        assert canonicalize((2, 4, -6)) == (1, 2, -3)
        assert canonicalize((-2, 4, -6)) == (1, -2, 3)

    def test_rationals_and_strings(self):
        assert canonicalize((Fraction(-1, 2), 1)) == (1, -2)
        assert canonicalize(("0", "-3", "6")) == (0, 1, -2)

    def test_scaling_invariant(self):
        v = (3, -1, 7, 2)
        assert canonicalize([Fraction(-5, 3) * x for x in v]) == canonicalize(v)

    def test_zero_vector(self):
        with pytest.raises(ZeroVectorError):
            canonicalize((0, 0, 0))

    def test_projective_equality(self):
        assert ProjectivePoint.of((2, 2, 2)) == ProjectivePoint.of((1, 1, 1))
        assert Hyperplane.of((0, -1, 0)).coeffs == (0, 1, 0)


class TestConfiguration:
    def test_duplicates_rejected(self):
        with pytest.raises(DuplicatePointError):
            Configuration.from_coordinates(2, [(1, 0, 0), (2, 0, 0), (0, 1, 0)])

    def test_cube_is_valid(self, cube):
        report = validate_general_position(cube)
        assert report.valid
        assert report.rank == 4
        assert report.witness is None

    def test_degenerate_subset_witness(self, collinear_triple):
        report = validate_general_position(collinear_triple)
        assert report.full_span
        assert not report.general_position
        assert report.witness == (0, 1, 2)

    def test_not_spanning(self):
        c = Configuration.from_coordinates(2, [(1, 0, 0), (0, 1, 0), (1, 1, 0)])
        report = validate_general_position(c)
        assert not report.full_span
        assert not report.valid
        assert report.rank == 2

    def test_projective_line_rejected(self):
        with pytest.raises(UnsupportedDimensionError):
            Configuration.from_coordinates(1, [(1, 0), (0, 1), (1, 1)])
        with pytest.raises(UnsupportedDimensionError):
            FloatConfiguration(1, np.array([[1.0, 0.0], [0.0, 1.0]]))

    def test_delete_point(self, cube):
        c = delete_point(cube, 3)
        assert c.n == 7
        assert cube.points[3] not in c.points
        with pytest.raises(IndexOutOfRangeError):
            delete_point(cube, 8)


class TestHyperplanes:
    def test_spanning_hyperplane(self):
        h = spanning_hyperplane([ProjectivePoint.of((1, 0, 0)), ProjectivePoint.of((0, 1, 0))])
        assert h == Hyperplane((0, 0, 1))

    def test_spanning_hyperplane_in_space(self):
        points = [ProjectivePoint.of(r) for r in ((1, 0, 0, 1), (0, 1, 0, 1), (0, 0, 1, 1))]
        assert spanning_hyperplane(points) == Hyperplane((1, 1, 1, -1))

    def test_collinear_points_span_no_plane(self):
        points = [ProjectivePoint.of(r) for r in ((1, 0, 0, 0), (0, 1, 0, 0), (1, 1, 0, 0))]
        with pytest.raises(DegenerateError):
            spanning_hyperplane(points)

    @pytest.mark.parametrize("h, p, expected", [
        ((0, 0, 1), (1, 5, 0), True),
        ((0, 0, 1), (0, 0, 1), False),
        ((1, 1, 1, -1), (1, 0, 0, 1), True),
    ])
    def test_incident(self, h, p, expected):
        assert incident(Hyperplane.of(h), ProjectivePoint.of(p)) is expected

    def test_incident_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            incident(Hyperplane.of((0, 0, 1)), ProjectivePoint.of((1, 0, 0, 0)))

    def test_spanned_hyperplane_is_incident(self, cube):
        h = spanning_hyperplane(cube.points[:3])
        assert all(incident(h, p) for p in cube.points[:3])

    def test_degenerate(self):
        p = ProjectivePoint.of((1, 0, 0))
        with pytest.raises(DegenerateError):
            spanning_hyperplane([p, p])


class TestMaps:
    def test_singular_map(self):
        with pytest.raises(SingularMapError):
            ProjectiveMap.from_rows([[1, 2], [2, 4]])

    def test_identity(self, cube):
        assert transform(cube, ProjectiveMap.identity(3)).points == cube.points

    def test_permutation_and_scaling(self):
        p = ProjectivePoint.of((1, 2, 3))
        assert ProjectiveMap.permutation((2, 0, 1)).apply(p) == ProjectivePoint.of((3, 1, 2))
        with pytest.raises(SingularMapError):
            ProjectiveMap.diagonal((1, 1, 0))
        assert ProjectiveMap.diagonal((2, 2, 2)).apply(p) == p


class TestProjection:
    def test_cube_projects_to_seven_planar_points(self, cube):
        projected = project_from_point(cube, 0)
        assert projected.dim == 2
        assert projected.n == 7

    def test_projection_needs_dimension_three(self):
        with pytest.raises(UnsupportedDimensionError):
            project_from_point(families.trivial_example(5, 2), 0)

    def test_index_out_of_range(self, cube):
        with pytest.raises(IndexOutOfRangeError):
            project_from_point(cube, 8)

    def test_duplicate_projection(self):
        c = Configuration.from_coordinates(3, [(1, 0, 0, 0), (0, 1, 0, 0), (2, 1, 0, 0), (0, 0, 1, 0)])
        with pytest.raises(DuplicateProjectionError) as excinfo:
            project_from_point(c, 0)
        assert excinfo.value.witness == (0, 1, 2)


class TestFiles:
    def test_exact_round_trip(self, tmp_path):
        c = Configuration.from_coordinates(2, [(1, 0, 0), (0, 1, 0), ("1/2", "1/3", 1), (1, 1, 1)], 'mixed')
        path = tmp_path / 'c.json'
        path.write_text(dump_configuration(c))
        loaded = load_configuration(path)
        assert loaded == c
        assert 'backend' not in json.loads(path.read_text())

    def test_float_round_trip(self, tmp_path):
        fc = families.polygon_points(8)
        path = tmp_path / 'p.json'
        path.write_text(dump_configuration(fc))
        loaded = load_configuration(path)
        assert isinstance(loaded, FloatConfiguration)
        assert json.loads(path.read_text())['backend'] == 'float'
        np.testing.assert_array_equal(loaded.coords, fc.coords)

    def test_bare_numbers_accepted(self, write_json):
        path = write_json('c.json', {'dim': 2, 'points': [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]})
        assert load_configuration(path).n == 4

    def test_repeated_point(self, write_json):
        path = write_json('c.json', {'dim': 2, 'points': [["1", "0", "0"], ["2", "0", "0"], ["0", "0", "1"]]})
        with pytest.raises(DuplicatePointError):
            load_configuration(path)

    def test_wrong_length(self, write_json):
        path = write_json('c.json', {'dim': 2, 'points': [["1", "0"], ["0", "1", "0"]]})
        with pytest.raises(ConfigurationParseError):
            load_configuration(path)

    def test_malformed(self, tmp_path, write_json):
        broken = tmp_path / 'broken.json'
        broken.write_text('{"dim": 2, "points": [')
        with pytest.raises(ConfigurationParseError):
            load_configuration(broken)
        with pytest.raises(ConfigurationParseError):
            load_configuration(write_json('nodim.json', {'points': [["1", "0", "0"]]}))
        with pytest.raises(ConfigurationParseError):
            load_configuration(tmp_path / 'missing.json')

    def test_projective_line_file_rejected(self, write_json):
        path = write_json('c.json', {'dim': 1, 'points': [["1", "0"], ["0", "1"], ["1", "1"]]})
        with pytest.raises(ConfigurationParseError):
            load_configuration(path)

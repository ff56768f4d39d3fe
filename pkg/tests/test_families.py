import random
from math import comb

import pytest

from ordinaryplanes import families
from ordinaryplanes.errors import (
    AlphasNotDistinctError,
    IndexOutOfRangeError,
    NotOddError,
    UnsupportedBackendError,
    UnsupportedDimensionError,
    UnsupportedSizeError,
    VerificationMismatchError,
)
from ordinaryplanes.geometry import Configuration, FloatConfiguration, validate_general_position
from ordinaryplanes.incidence import per_point_from_profile, secant_profile, secant_profile_numeric


class TestClosedForms:
    @pytest.mark.parametrize("n, expected", [(8, 4), (12, 6), (13, 9), (11, 6), (9, 6), (10, 5)])
    def test_polygon_formula(self, n, expected):
        assert families.polygon_formula(n) == expected

    @pytest.mark.parametrize("n, expected", [(8, 8), (10, 20), (16, 48), (9, 22), (11, 31)])
    def test_prism_formula(self, n, expected):
        assert families.prism_formula(n) == expected

    def test_ring_size(self):
        with pytest.raises(UnsupportedSizeError):
            families.polygon_formula(7)
        with pytest.raises(UnsupportedSizeError):
            families.prism_model(6)

    def test_dplus3_formula(self):
        assert [families.dplus3_odd_formula(d) for d in (3, 5, 7)] == [8, 32, 80]


class TestPolygonModel:
    def test_chord_meets_infinity(self):
        model = families.polygon_model(12)
        assert model.span(['A0', 'A1']) == {'A0', 'A1', 'B1'}

    def test_tangent(self):
        assert families.polygon_model(12).span(['A1', 'B2']) == {'A1', 'B2'}

    def test_line_at_infinity(self):
        assert len(families.polygon_model(12).span(['B0', 'B3'])) == 6

    def test_diameter_through_centre(self):
        model = families.polygon_model(13)
        assert 'O' in model.span(['A0', 'A3'])
        assert model.span(['A0', 'O']) == model.span(['A0', 'A3'])

    def test_unknown_label(self):
        with pytest.raises(IndexOutOfRangeError):
            families.polygon_model(12).span(['A0', 'A9'])

    @pytest.mark.parametrize("n", range(8, 25))
    def test_model_matches_formula(self, n):
        model = families.polygon_model(n)
        assert model.n == n
        assert len(model.points) == n
        assert families.combinatorial_profile(model).ordinary == families.polygon_formula(n)

    @pytest.mark.parametrize("n", range(8, 21))
    def test_numeric_matches_model(self, n):
        numeric = secant_profile_numeric(families.polygon_points(n))
        assert numeric.tau == families.combinatorial_profile(families.polygon_model(n)).tau

    def test_odd_deleted_direction(self):
        assert families.combinatorial_profile(families.polygon_model(11, variant=1)).ordinary == 9
        assert families.combinatorial_profile(families.polygon_model(11, variant=2)).ordinary == 6

    def test_deleted_index_range(self):
        with pytest.raises(IndexOutOfRangeError):
            families.polygon_model(11, variant=6)


class TestPrismModel:
    def test_coplanar_quadruple(self):
        model = families.prism_model(10)
        assert model.span(['T1', 'T2', 'U0']) == {'T1', 'T2', 'U0', 'U3'}
        assert model.span(['T0', 'U1', 'U2']) == {'T0', 'T3', 'U1', 'U2'}

    def test_top_plane(self):
        assert families.prism_model(10).span(['T0', 'T1', 'T2']) == {'T0', 'T1', 'T2', 'T3', 'T4'}

    @pytest.mark.parametrize("n", range(8, 25))
    def test_model_matches_formula(self, n):
        assert families.combinatorial_profile(families.prism_model(n)).ordinary == families.prism_formula(n)

    @pytest.mark.parametrize("n", [8, 10, 11, 13])
    def test_numeric_matches_model(self, n):
        numeric = secant_profile_numeric(families.prism_points(n))
        assert numeric.tau == families.combinatorial_profile(families.prism_model(n)).tau

    def test_deleted_index_independent(self):
        counts = {families.combinatorial_profile(families.prism_model(13, v)).ordinary for v in range(7)}
        assert counts == {families.prism_formula(13)}

    def test_per_point_symmetric(self):
        p = families.combinatorial_profile(families.prism_model(10), keep_hyperplanes=True)
        assert set(per_point_from_profile(p).counts) == {6}


class TestCertifiedCount:
    @pytest.mark.parametrize("n", range(8, 25))
    def test_polygon(self, n):
        profile = families.combinatorial_ordinary_count(families.polygon_model(n))
        assert profile.ordinary == families.polygon_formula(n)

    @pytest.mark.parametrize("n", [11, 15, 19])
    def test_every_deleted_direction(self, n):
        for variant in range((n + 1) // 2):
            model = families.polygon_model(n, variant)
            expected = 3 * (n + 1) // 4 if variant % 2 else families.polygon_formula(n)
            assert families.model_formula(model) == expected
            assert families.combinatorial_ordinary_count(model).ordinary == expected

    @pytest.mark.parametrize("n", [8, 9, 10, 13, 16])
    def test_prism(self, n):
        profile = families.combinatorial_ordinary_count(families.prism_model(n))
        assert profile.ordinary == families.prism_formula(n)

    def test_wrong_closed_form_raises(self, monkeypatch):
        monkeypatch.setattr(families, 'prism_formula', lambda n: 0)
        with pytest.raises(VerificationMismatchError):
            families.combinatorial_ordinary_count(families.prism_model(10))

    def test_base_model_is_abstract(self):
        with pytest.raises(TypeError):
            families.CombinatorialModel('polygon', 8, 2, 4, ())


class TestExactFamilies:
    def test_cube(self):
        c = families.cube()
        assert c.n == 8
        assert c.dim == 3

    def test_trivial_example(self):
        for n, d in [(7, 2), (9, 3), (8, 4)]:
            p = secant_profile(families.trivial_example(n, d))
            assert p.ordinary == families.trivial_formula(n, d) == comb(n - 1, d - 1)
            assert p.tau_at(n - 1) == 1

    def test_trivial_example_too_small(self):
        with pytest.raises(UnsupportedSizeError):
            families.trivial_example(4, 3)

    @pytest.mark.parametrize("d", [3, 5])
    def test_dplus3_odd(self, d):
        p = secant_profile(families.dplus3_odd(d))
        assert p.ordinary == families.dplus3_odd_formula(d)
        assert p.tau_at(d + 1) == (d + 3) // 2

    def test_dplus3_other_alphas(self):
        p = secant_profile(families.dplus3_odd(5, ['3/2', '5']))
        assert p.ordinary == 32

    def test_dplus3_rejects_even(self):
        with pytest.raises(NotOddError):
            families.dplus3_odd(4)

    def test_dplus3_rejects_repeated_alpha(self):
        with pytest.raises(AlphasNotDistinctError):
            families.dplus3_odd(5, ['1', '1'])
        with pytest.raises(AlphasNotDistinctError):
            families.dplus3_odd(5, ['0', '1'])

    def test_random_configuration_is_seeded(self):
        a = families.random_configuration(8, 3, random.Random(7))
        b = families.random_configuration(8, 3, random.Random(7))
        assert a == b
        assert validate_general_position(a).valid

    def test_random_map_is_invertible(self, rng):
        m = families.random_projective_map(3, rng)
        assert m.dim == 3


class TestConstruct:
    def test_exact_family(self):
        c = families.construct(families.FamilySpec('cube'))
        assert isinstance(c, Configuration)

    def test_exact_family_on_float_backend(self):
        fc = families.construct(families.FamilySpec('trivial', n=7, d=3, backend='float'))
        assert isinstance(fc, FloatConfiguration)
        assert fc.n == 7

    def test_ring_family_backends(self):
        assert isinstance(families.construct(families.FamilySpec('polygon', n=12)), FloatConfiguration)
        model = families.construct(families.FamilySpec('prism', n=10, backend='combinatorial'))
        assert isinstance(model, families.PrismModel)

    def test_no_exact_polygon(self):
        with pytest.raises(UnsupportedBackendError):
            families.construct(families.FamilySpec('polygon', n=12, backend='exact'))

    def test_no_model_for_cube(self):
        with pytest.raises(UnsupportedBackendError):
            families.construct(families.FamilySpec('cube', backend='comb'))

    def test_prism_dimension(self):
        with pytest.raises(UnsupportedDimensionError):
            families.construct(families.FamilySpec('prism', n=10, d=2))

    def test_missing_size(self):
        with pytest.raises(UnsupportedSizeError):
            families.construct(families.FamilySpec('trivial', d=3))

    def test_random_family(self):
        spec = families.FamilySpec('random', n=7, d=3, seed=11)
        assert families.construct(spec) == families.construct(spec)

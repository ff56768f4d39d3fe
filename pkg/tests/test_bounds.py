from math import comb

import pytest

from ordinaryplanes import bounds, families
from ordinaryplanes.bounds import (
    REGISTRY,
    BoundCalculator,
    DerivationPolicy,
    best_lower,
    best_upper,
    cell_text,
    cs_projection_bound,
    csima_sawyer_bound,
    generate_table,
    improved_cells,
    ip_bound,
    normalize_cell,
    projection_lower,
    registry_bound,
    render_table,
    replay,
    smalls_bound,
    table_rows,
    witness_is_feasible,
)
from ordinaryplanes.errors import (
    SearchTooLargeError,
    UnsupportedDimensionError,
    UnsupportedSizeError,
    VerificationMismatchError,
)


class TestSingleMethods:
    def test_planar_bound(self):
        assert csima_sawyer_bound(13).value == 6
        assert csima_sawyer_bound(8).value == 4

    def test_planar_bound_excludes_seven(self):
        result = csima_sawyer_bound(7)
        assert result.value == 3
        assert result.trace[0].method == 'registry'

    def test_smalls(self):
        assert smalls_bound(8, 4).value == 24
        assert smalls_bound(9, 4).value == 21
        assert smalls_bound(20, 3).value == 0

    def test_registry(self):
        assert registry_bound(7, 3).value == 11
        assert registry_bound(9, 3, 'upper') is None
        assert registry_bound(8, 4) is None
        assert registry_bound(30, 2) is None

    def test_projection(self):
        result = projection_lower(8, 3, lambda n, d: csima_sawyer_bound(n))
        assert result.value == 8
        assert result.method == 'project'
        with pytest.raises(UnsupportedDimensionError):
            projection_lower(8, 2, lambda n, d: csima_sawyer_bound(n))

    def test_repeated_projection(self):
        assert cs_projection_bound(9, 3).value == 12
        assert cs_projection_bound(10, 4).value == 30
        assert cs_projection_bound(10, 4).trace[0].trace[0].method == 'cs'


class TestCountingSearch:
    def test_eight_points_in_four_space(self):
        result = ip_bound(8, 4)
        assert result.value == 25
        assert result.witness[0] == 25
        assert witness_is_feasible(8, 4, result.witness)

    def test_nine_points_in_five_space(self):
        assert ip_bound(9, 5).value == 54

    @pytest.mark.parametrize("d", range(2, 8))
    def test_d_plus_two(self, d):
        assert ip_bound(d + 2, d).value == comb(d + 1, 2)

    @pytest.mark.parametrize("d", [4, 6])
    def test_d_plus_three_even(self, d):
        assert ip_bound(d + 3, d).value == comb(d + 2, 3)

    @pytest.mark.parametrize("d", [3, 5, 7])
    def test_d_plus_three_odd(self, d):
        assert ip_bound(d + 3, d).value == families.dplus3_odd_formula(d)

    def test_realized_profile_is_feasible(self):
        assert witness_is_feasible(8, 3, (8, 12, 0, 0, 0))
        assert not witness_is_feasible(8, 3, (8, 11, 0, 0, 0))
        assert not witness_is_feasible(8, 3, (8, 12, 0, 0))

    def test_guard(self):
        with pytest.raises(SearchTooLargeError):
            ip_bound(30, 3, search_limit=12)
        with pytest.raises(UnsupportedSizeError):
            ip_bound(5, 4)

    def test_replay(self):
        result = ip_bound(8, 4)
        assert replay(result) == 25


class TestCalculator:
    def test_cell_checks(self):
        with pytest.raises(UnsupportedSizeError):
            BoundCalculator.check_cell(5, 4)
        with pytest.raises(UnsupportedDimensionError):
            BoundCalculator.check_cell(5, 1)

    def test_best_lower_traces_winner(self):
        result = best_lower(8, 4)
        assert result.value == 25
        assert result.method == 'best'
        assert result.trace[0].method == 'ip'

    def test_tie_goes_to_registry(self):
        assert best_lower(8, 2).trace[0].method == 'registry'

    def test_best_upper(self):
        assert best_upper(8, 4).value == 35
        assert best_upper(7, 3).value == 11
        assert best_upper(7, 3).trace[0].method == 'cube_minus_vertex'
        assert best_upper(10, 3).trace[0].method == 'prism'

    def test_planar_uppers_name_their_example(self):
        result = best_upper(7, 2)
        assert result.value == 3
        assert result.trace[0].method == 'broken_fano'
        assert replay(result) == 3
        assert REGISTRY[(10, 2)].construction == 'polygon'
        for n in (4, 5, 6, 13):
            assert REGISTRY[(n, 2)].construction is None
            assert 'literature' in REGISTRY[(n, 2)].citation

    def test_registry_upper_must_match_its_example(self, monkeypatch):
        monkeypatch.setattr(families, 'broken_fano', lambda: families.trivial_example(7, 2))
        with pytest.raises(VerificationMismatchError):
            BoundCalculator().best_upper(7, 2)

    def test_strongest_improves_published(self):
        published = best_lower(9, 4).value
        strongest = best_lower(9, 4, DerivationPolicy.STRONGEST).value
        assert published == 18
        assert strongest >= 21

    def test_broken_closed_form_is_caught(self, monkeypatch):
        monkeypatch.setattr(families, 'prism_formula', lambda n: 19)
        calculator = BoundCalculator()
        with pytest.raises(VerificationMismatchError):
            calculator.best_upper(10, 3)

    def test_certification_is_memoized(self, monkeypatch):
        calculator = BoundCalculator()
        calculator.best_upper(10, 3)
        calls = []
        original = bounds._construction_count

        def counting(*args, **kwargs):
            calls.append(args)
            return original(*args, **kwargs)

        monkeypatch.setattr(bounds, '_construction_count', counting)
        calculator.certify('prism', 10, 3)
        assert calls == []

    @pytest.mark.parametrize("n, d", [(8, 3), (10, 4), (13, 5), (9, 7), (12, 2)])
    def test_replay_best_lower(self, n, d):
        result = best_lower(n, d)
        assert replay(result) == result.value


class TestTable:
    def test_cell_text(self):
        assert cell_text(3, 3) == '3'
        assert cell_text(25, 35) == '25...35'
        assert cell_text(None, None) == '.'

    def test_normalize(self):
        assert normalize_cell('14..22') == '14...22'
        assert normalize_cell(' . ') == '.'
        assert normalize_cell('25...35') == '25...35'

    def test_published_table(self, published_rows):
        table = generate_table(13, 7, row_limits={6: 10, 7: 10})
        rows = table_rows(table)
        for n, expected in published_rows.items():
            assert rows[n] == [normalize_cell(text) for text in expected], f"row n={n}"

    def test_strongest_lists_improvements(self):
        base = generate_table(10, 4)
        strong = generate_table(10, 4, policy=DerivationPolicy.STRONGEST)
        improved = {(c.n, c.d) for c in improved_cells(base, strong)}
        assert (9, 4) in improved
        assert all(c.lower <= c.upper for c in strong.cells if c.lower is not None)

    def test_render_formats(self):
        table = generate_table(8, 3)
        md = render_table(table, 'md')
        assert md.splitlines()[0] == '| n | d=2 | d=3 | ⌊n/2⌋ |'
        assert '| 7 | 3 | 11 | 3 |' in md
        csv = render_table(table, 'csv').splitlines()
        assert csv[0] == 'n,d=2,d=3'
        assert csv[-1] == '8,4,8'
        assert '"policy": "published"' in render_table(table, 'json')
        with pytest.raises(ValueError):
            render_table(table, 'html')

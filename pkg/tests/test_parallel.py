from itertools import combinations
from math import comb

import pytest

from ordinaryplanes import families
from ordinaryplanes.incidence import span_chunk
from ordinaryplanes.parallel import ParallelEnumerator, get_optimal_worker_count, resolve_workers


class TestPlan:
    @pytest.mark.parametrize("workers, n, d", [(1, 8, 3), (3, 10, 4), (4, 5, 4), (8, 6, 2)])
    def test_chunks_cover_every_subset_once(self, workers, n, d):
        enumerator = ParallelEnumerator(workers=1)
        enumerator.workers = workers
        chunks = enumerator.plan(n, d)
        assert chunks[0][0] == 0
        assert chunks[-1][1] == comb(n, d)
        assert all(a[1] == b[0] for a, b in zip(chunks, chunks[1:]))
        assert all(start < stop for start, stop in chunks)

    def test_resolve_workers(self):
        assert resolve_workers(1) == 1
        assert resolve_workers('1') == 1
        assert resolve_workers('auto') == get_optimal_worker_count()
        assert resolve_workers(None) >= 1


class TestEnumerate:
    def test_matches_single_chunk(self):
        c = families.trivial_example(9, 3)
        rows = c.coordinate_rows()
        found, degenerate = ParallelEnumerator(workers=1, chunks_per_worker=5).enumerate(rows, 3)
        whole, _ = span_chunk(rows, 3, 0, comb(9, 3))
        assert found == whole
        assert degenerate == []

    def test_degenerate_subsets_in_order(self, collinear_triple):
        rows = collinear_triple.coordinate_rows()
        _, degenerate = ParallelEnumerator(workers=1, chunks_per_worker=3).enumerate(rows, 3)
        expected = [s for s in combinations(range(5), 3) if set(s) == {0, 1, 2}]
        assert degenerate == expected

    def test_process_pool(self):
        c = families.trivial_example(14, 5)
        rows = c.coordinate_rows()
        sequential, _ = ParallelEnumerator(workers=1).enumerate(rows, 5)
        pooled, _ = ParallelEnumerator(workers=2).enumerate(rows, 5)
        assert pooled == sequential

"""
Parallel hyperplane enumeration

Splits the lexicographic d-subset space into contiguous chunks and spans them
in a multiprocessing worker pool. Chunk results are merged by set union, so
the outcome does not depend on the worker count or on scheduling.
"""

from dataclasses import dataclass
from math import comb
from multiprocessing import Pool, cpu_count
from typing import List, Optional, Sequence, Set, Tuple, Union
import logging

from .progress import create_progress_bar

logger = logging.getLogger('ordinaryplanes')

# Below this many subsets a pool costs more than it saves
MIN_PARALLEL_SUBSETS = 2000


@dataclass
class ChunkTask:
    """
    A contiguous range of d-subsets to span
    """
    rows: Tuple[Tuple[int, ...], ...]
    d: int
    start: int
    stop: int


@dataclass
class ChunkResult:
    """
    Hyperplanes and degenerate subsets found in one chunk
    """
    start: int
    hyperplanes: Set[Tuple[int, ...]]
    degenerate: List[Tuple[int, ...]]


def _worker_span_chunk(task: ChunkTask) -> ChunkResult:
    """
    Worker function spanning one chunk

    Runs in a separate process when the pool is used.
    """
    # Imported here so worker processes resolve it after fork/spawn
    from .incidence import span_chunk

    found, degenerate = span_chunk(task.rows, task.d, task.start, task.stop)
    return ChunkResult(start=task.start, hyperplanes=found, degenerate=degenerate)


def resolve_workers(workers: Union[int, str, None]) -> int:
    """
    Turn a configured worker setting into a process count

    Args:
        workers: 'auto', None, or a positive number

    Returns:
        Worker count, at least 1 and at most the CPU count
    """
    if workers is None or workers == 'auto':
        return get_optimal_worker_count()
    count = int(workers)
    if count <= 0:
        return get_optimal_worker_count()
    return min(count, cpu_count())


class ParallelEnumerator:
    """
    Spans every d-subset of a point list, optionally across worker processes
    """

    def __init__(
        self,
        workers: Union[int, str, None] = 1,
        chunks_per_worker: int = 4,
        show_progress: bool = False,
        simple_progress: bool = False
    ):
        """
        Initialize enumerator

        Args:
            workers: Number of worker processes ('auto' or None to auto-detect)
            chunks_per_worker: Chunks handed to each worker
            show_progress: Show a progress bar over chunks
            simple_progress: Use the plain-text progress bar
        """
        self.workers = resolve_workers(workers)
        self.chunks_per_worker = max(1, chunks_per_worker)
        self.show_progress = show_progress
        self.simple_progress = simple_progress

    def plan(self, n: int, d: int) -> List[Tuple[int, int]]:
        """Contiguous (start, stop) ranges covering all C(n, d) subsets"""
        total = comb(n, d)
        if total == 0:
            return []
        pieces = min(total, self.workers * self.chunks_per_worker)
        bounds = [total * k // pieces for k in range(pieces + 1)]
        return [(bounds[k], bounds[k + 1]) for k in range(pieces) if bounds[k] < bounds[k + 1]]

    def enumerate(
        self,
        rows: Sequence[Tuple[int, ...]],
        d: int
    ) -> Tuple[Set[Tuple[int, ...]], List[Tuple[int, ...]]]:
        """
        Span every d-subset of rows

        Args:
            rows: Integer coordinate rows
            d: Projective dimension (subset size)

        Returns:
            Tuple of (canonical hyperplanes, degenerate subsets in lexicographic order)
        """
        rows = tuple(tuple(r) for r in rows)
        tasks = [ChunkTask(rows, d, start, stop) for start, stop in self.plan(len(rows), d)]
        total = comb(len(rows), d)

        if self.workers == 1 or total < MIN_PARALLEL_SUBSETS or len(tasks) == 1:
            results = self._run_sequential(tasks)
        else:
            logger.debug(f"Spanning {total} subsets in {len(tasks)} chunks with {self.workers} workers")
            results = self._run_parallel(tasks)

        found: Set[Tuple[int, ...]] = set()
        degenerate: List[Tuple[int, ...]] = []
        for result in sorted(results, key=lambda r: r.start):
            found |= result.hyperplanes
            degenerate.extend(result.degenerate)
        return found, degenerate

    def _run_sequential(self, tasks: List[ChunkTask]) -> List[ChunkResult]:
        results = []
        bar = create_progress_bar(
            desc="Spanning",
            total=len(tasks),
            simple=self.simple_progress,
            disable=not self.show_progress
        )
        with bar:
            for i, task in enumerate(tasks, 1):
                results.append(_worker_span_chunk(task))
                bar.update(i, len(tasks))
        return results

    def _run_parallel(self, tasks: List[ChunkTask]) -> List[ChunkResult]:
        results = []
        bar = create_progress_bar(
            desc="Spanning",
            total=len(tasks),
            simple=self.simple_progress,
            disable=not self.show_progress
        )
        with Pool(processes=self.workers) as pool:
            with bar:
                pending = [pool.apply_async(_worker_span_chunk, args=(task,)) for task in tasks]
                for i, async_result in enumerate(pending, 1):
                    results.append(async_result.get())
                    bar.update(i, len(tasks))
        return results


def get_optimal_worker_count() -> int:
    """
    Determine optimal number of workers for this system

    Returns:
        Recommended worker count
    """
    cpu_cores = cpu_count()

    # Leave one core free for system
    optimal = max(1, cpu_cores - 1)

    logger.debug(f"CPU cores: {cpu_cores}, optimal workers: {optimal}")

    return optimal

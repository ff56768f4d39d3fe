"""
Hyperplane enumeration and secant profiles

The exact engine spans every d-subset of a configuration, deduplicates the
resulting hyperplanes by canonical form and counts incident points. A numeric
backend does the same on floating coordinates with a tolerance, for families
whose coordinates are trigonometric.
"""

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations, islice
from math import comb, inf
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Set, Tuple, Union
import logging

import numpy as np

from .errors import (
    DegenerateConfigurationError,
    DegenerateSubsetError,
    IllConditionedError,
    RankDeficientError,
    VerificationMismatchError,
)
from .exact_linalg import nullspace_of_rows, rank_of_rows
from .geometry import Configuration, FloatConfiguration, Hyperplane, canonicalize, project_from_point
from .parallel import ParallelEnumerator
from .schemas import HyperplaneEntry, ProfileDocument

logger = logging.getLogger('ordinaryplanes')

DEFAULT_EPS = 1e-7

# A spanned hyperplane: its key (canonical Hyperplane, rounded float tuple or
# label description) and the indices of the points it contains
HyperplaneRecord = Tuple[Hashable, FrozenSet[int]]


@dataclass(frozen=True)
class SecantProfile:
    """
    Secant profile of an n-point set in PG(d)

    tau maps i to the number of hyperplanes containing exactly i points; only
    nonzero counts are stored.
    """
    n: int
    d: int
    tau: Dict[int, int]
    hyperplanes: Optional[Tuple[HyperplaneRecord, ...]] = field(default=None, compare=False)
    skipped: Tuple[Tuple[int, ...], ...] = field(default=(), compare=False)
    backend: str = field(default='exact', compare=False)
    label: str = field(default='', compare=False)

    @property
    def ordinary(self) -> int:
        return self.tau.get(self.d, 0)

    def tau_at(self, i: int) -> int:
        return self.tau.get(i, 0)

    def tau_vector(self) -> Tuple[int, ...]:
        """(tau_d, ..., tau_{n-1})"""
        return tuple(self.tau_at(i) for i in range(self.d, self.n))

    @property
    def hyperplane_count(self) -> int:
        return sum(self.tau.values())


@dataclass(frozen=True)
class PerPointIncidence:
    """Number of ordinary hyperplanes through each point"""
    counts: Tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True)
class PigeonholeReport:
    """Counts behind the projection averaging argument"""
    n: int
    d: int
    ordinary: int
    per_point: Tuple[int, ...]
    minimizer: int

    @property
    def double_count_holds(self) -> bool:
        return sum(self.per_point) == self.d * self.ordinary

    @property
    def inequality_holds(self) -> bool:
        return self.d * self.ordinary >= self.n * self.per_point[self.minimizer]

    @property
    def equality(self) -> bool:
        return self.d * self.ordinary == self.n * self.per_point[self.minimizer]


@dataclass(frozen=True)
class ResidueScan:
    """Separation of incident and non-incident residues |h.p| for unit vectors"""
    max_incident: float
    min_nonincident: float

    def has_gap(self, eps: float, factor: float = 10.0) -> bool:
        """True iff eps sits at least `factor` away from both sides"""
        return self.max_incident * factor <= eps and eps * factor <= self.min_nonincident


# Exact engine

def span_chunk(
    rows: Sequence[Tuple[int, ...]],
    d: int,
    start: int,
    stop: int
) -> Tuple[Set[Tuple[int, ...]], List[Tuple[int, ...]]]:
    """
    Canonical hyperplanes spanned by d-subsets number start..stop-1

    Subsets are numbered in lexicographic order. Subsets that fail to span are
    returned separately.
    """
    found: Set[Tuple[int, ...]] = set()
    degenerate: List[Tuple[int, ...]] = []
    for subset in islice(combinations(range(len(rows)), d), start, stop):
        try:
            found.add(canonicalize(nullspace_of_rows([rows[i] for i in subset])))
        except RankDeficientError:
            degenerate.append(subset)
    return found, degenerate


def _incident_indices(coeffs: Tuple[int, ...], rows: Sequence[Tuple[int, ...]]) -> FrozenSet[int]:
    return frozenset(
        j for j, p in enumerate(rows) if sum(a * b for a, b in zip(coeffs, p)) == 0
    )


def tau_from_records(records: Iterable[HyperplaneRecord]) -> Dict[int, int]:
    tau: Dict[int, int] = defaultdict(int)
    for _, points in records:
        tau[len(points)] += 1
    return dict(sorted(tau.items()))


def secant_profile(
    c: Configuration,
    validate: bool = True,
    keep_hyperplanes: bool = False,
    workers: int = 1,
    show_progress: bool = False,
    simple_progress: bool = False
) -> SecantProfile:
    """
    Exact secant profile of a configuration

    Args:
        c: Configuration to analyze
        validate: Enforce full span and general position; when False,
            degenerate d-subsets are recorded in `skipped` instead of raising
        keep_hyperplanes: Attach the sorted (hyperplane, incident indices) list
        workers: Number of enumeration worker processes
        show_progress: Show a progress bar over enumeration chunks
        simple_progress: Use the plain-text progress bar

    Returns:
        SecantProfile

    Raises:
        DegenerateConfigurationError: If validating and the points lie in a hyperplane
        DegenerateSubsetError: If validating and some d-subset does not span
        VerificationMismatchError: If a validated profile violates the tuple count
    """
    d = c.dim
    rows = c.coordinate_rows()
    if validate and rank_of_rows(rows) < d + 1:
        raise DegenerateConfigurationError(
            f"Configuration '{c.label}' is contained in a hyperplane",
            witness=range(c.n),
        )

    enumerator = ParallelEnumerator(
        workers=workers,
        show_progress=show_progress,
        simple_progress=simple_progress
    )
    found, degenerate = enumerator.enumerate(rows, d)

    if degenerate and validate:
        witness = degenerate[0]
        raise DegenerateSubsetError(
            f"Points {list(witness)} of '{c.label}' do not span a hyperplane",
            witness=witness,
        )
    if degenerate:
        logger.debug(f"Skipped {len(degenerate)} degenerate subset(s) of '{c.label}'")

    records = tuple(
        (Hyperplane(coeffs), _incident_indices(coeffs, rows)) for coeffs in sorted(found)
    )
    profile = SecantProfile(
        n=c.n,
        d=d,
        tau=tau_from_records(records),
        hyperplanes=records if keep_hyperplanes else None,
        skipped=tuple(degenerate),
        backend='exact',
        label=c.label,
    )
    logger.debug(
        f"Exact profile of '{c.label}': {len(records)} hyperplanes from {comb(c.n, d)} subsets, "
        f"ordinary {profile.ordinary}"
    )
    if validate and not check_trivcount(profile):
        raise VerificationMismatchError(
            f"Tuple count identity fails for '{c.label}': tau = {profile.tau}"
        )
    return profile


def per_point_from_profile(p: SecantProfile) -> PerPointIncidence:
    """Per-point ordinary counts from a profile that carries its hyperplanes"""
    if p.hyperplanes is None:
        raise ValueError("Profile was computed without hyperplanes")
    counts = [0] * p.n
    for _, points in p.hyperplanes:
        if len(points) == p.d:
            for j in points:
                counts[j] += 1
    return PerPointIncidence(tuple(counts))


def per_point_ordinary(c: Configuration, workers: int = 1) -> PerPointIncidence:
    """Number of ordinary hyperplanes through each point of c"""
    return per_point_from_profile(secant_profile(c, keep_hyperplanes=True, workers=workers))


def check_trivcount(p: SecantProfile) -> bool:
    """Sum of C(i,d) tau_i equals C(n,d): every d-subset spans exactly one hyperplane"""
    return sum(comb(i, p.d) * t for i, t in p.tau.items()) == comb(p.n, p.d)


def bettercount_lhs(p: SecantProfile) -> int:
    n, d = p.n, p.d
    return sum((n - d - i) * comb(d + i, i - 1) * p.tau_at(d + i) for i in range(1, n - d))


def check_bettercount(p: SecantProfile) -> bool:
    """Weighted count of (d+1)-subsets inside secant hyperplanes is at most C(n, d+2)"""
    return bettercount_lhs(p) <= comb(p.n, p.d + 2)


def check_ints(c: Configuration) -> Tuple[bool, Optional[Tuple[int, ...]]]:
    """
    Among d+2 points spanning the space, at most one d+1 of them are cohyperplanar

    Returns:
        (True, None) when every spanning (d+2)-subset passes, otherwise
        (False, the first violating subset)
    """
    d = c.dim
    rows = c.coordinate_rows()
    for subset in combinations(range(c.n), d + 2):
        sub_rows = [rows[i] for i in subset]
        if rank_of_rows(sub_rows) < d + 1:
            continue
        flat = 0
        for drop in range(d + 2):
            if rank_of_rows(sub_rows[:drop] + sub_rows[drop + 1:]) <= d:
                flat += 1
                if flat > 1:
                    logger.debug(f"Subset {subset} of '{c.label}' has two flat (d+1)-subsets")
                    return False, subset
    return True, None


def pigeonhole_check(c: Configuration, workers: int = 1) -> PigeonholeReport:
    """Ordinary count, per-point counts and the averaging inequality from one enumeration"""
    profile = secant_profile(c, keep_hyperplanes=True, workers=workers)
    counts = per_point_from_profile(profile).counts
    minimizer = min(range(c.n), key=lambda j: (counts[j], j))
    return PigeonholeReport(c.n, c.dim, profile.ordinary, counts, minimizer)


def projection_matches(c: Configuration, index: int, workers: int = 1) -> Tuple[int, int]:
    """
    Ordinary count of the projection from point `index` against the number of
    ordinary hyperplanes of c through that point

    Returns:
        (ordinary count of the projected set, ordinary hyperplanes of c through the point)
    """
    projected = secant_profile(project_from_point(c, index), workers=workers)
    through = per_point_ordinary(c, workers=workers).counts[index]
    return projected.ordinary, through


# Numeric backend

def _unit_rows(points: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(points, axis=1)
    if np.any(norms == 0):
        raise IllConditionedError("Zero coordinate vector", witness=[int(np.argmin(norms))])
    return points / norms[:, None]


def _as_array(points: Union[FloatConfiguration, np.ndarray, Sequence[Sequence[float]]]) -> np.ndarray:
    if isinstance(points, FloatConfiguration):
        return np.asarray(points.coords, dtype=float)
    return np.asarray(points, dtype=float)


def _numeric_spans(unit: np.ndarray, eps: float) -> Tuple[np.ndarray, np.ndarray]:
    """Unit normals of all d-subsets, sign-fixed, with the subset index array"""
    n, width = unit.shape
    d = width - 1
    subsets = np.array(list(combinations(range(n), d)), dtype=np.intp).reshape(-1, d)
    if subsets.shape[0] == 0:
        return np.zeros((0, width)), subsets
    stacks = unit[subsets]
    _, s, vh = np.linalg.svd(stacks, full_matrices=True)
    bad = np.nonzero(s[:, -1] <= eps)[0]
    if bad.size:
        witness = tuple(int(i) for i in subsets[bad[0]])
        raise IllConditionedError(
            f"Subset {list(witness)} is numerically degenerate "
            f"(smallest singular value {s[bad[0], -1]:.3g} <= {eps:g})",
            witness=witness,
        )
    normals = vh[:, -1, :]
    first = np.argmax(np.abs(normals) > eps, axis=1)
    signs = np.sign(normals[np.arange(normals.shape[0]), first])
    return normals * signs[:, None], subsets


def secant_profile_numeric(
    points: Union[FloatConfiguration, np.ndarray, Sequence[Sequence[float]]],
    eps: float = DEFAULT_EPS,
    keep_hyperplanes: bool = False,
    label: str = ''
) -> SecantProfile:
    """
    Secant profile of floating coordinates with tolerance eps

    Hyperplanes are unit normals with first significant entry positive; a point
    is incident when |h.p| <= eps for the unit vectors. Duplicates are grouped
    on a rounding grid of resolution eps and confirmed pairwise; hyperplanes
    that straddle a grid boundary are merged by their incident point sets.

    Raises:
        IllConditionedError: If some d-subset has smallest singular value <= eps
    """
    if isinstance(points, FloatConfiguration):
        label = label or points.label
    coords = _as_array(points)
    n, width = coords.shape
    d = width - 1
    unit = _unit_rows(coords)
    normals, subsets = _numeric_spans(unit, eps)

    buckets: Dict[Tuple[int, ...], List[int]] = defaultdict(list)
    representatives: List[int] = []
    keys = np.rint(normals / eps).astype(np.int64)
    for row in range(normals.shape[0]):
        bucket = buckets[tuple(keys[row])]
        if any(np.max(np.abs(normals[row] - normals[r])) <= eps for r in bucket):
            continue
        bucket.append(row)
        representatives.append(row)

    by_points: Dict[FrozenSet[int], int] = {}
    if representatives:
        residues = np.abs(normals[representatives] @ unit.T)
        for k, row in enumerate(representatives):
            incident = frozenset(int(j) for j in np.nonzero(residues[k] <= eps)[0])
            if not incident.issuperset(int(j) for j in subsets[row]):
                raise IllConditionedError(
                    f"Subset {subsets[row].tolist()} is not incident with its own span at eps={eps:g}",
                    witness=subsets[row].tolist(),
                )
            by_points.setdefault(incident, row)
        merged = len(representatives) - len(by_points)
        if merged:
            logger.debug(f"Merged {merged} hyperplane(s) split across grid cells")

    records = tuple(sorted(
        ((tuple(float(x) for x in np.round(normals[row], 12)), pts) for pts, row in by_points.items()),
        key=lambda rec: rec[0],
    ))
    profile = SecantProfile(
        n=n,
        d=d,
        tau=tau_from_records(records),
        hyperplanes=records if keep_hyperplanes else None,
        backend='float',
        label=label,
    )
    logger.debug(f"Numeric profile of '{label}': {len(records)} hyperplanes, ordinary {profile.ordinary}")
    return profile


def scan_residues(
    points: Union[FloatConfiguration, np.ndarray, Sequence[Sequence[float]]],
    batch: int = 20000
) -> ResidueScan:
    """
    Locate the gap between incident and non-incident residues

    Every d-subset is spanned and every point tested against it. The residues
    are split at the largest multiplicative jump between consecutive sorted
    values; exact zeros are clipped to 1e-18.
    """
    unit = _unit_rows(_as_array(points))
    n, width = unit.shape
    d = width - 1
    spans = combinations(range(n), d)
    collected: List[np.ndarray] = []
    while True:
        chunk = np.array(list(islice(spans, batch)), dtype=np.intp).reshape(-1, d)
        if chunk.shape[0] == 0:
            break
        _, _, vh = np.linalg.svd(unit[chunk], full_matrices=True)
        residues = np.abs(vh[:, -1, :] @ unit.T)
        collected.append(np.unique(np.maximum(residues.ravel(), 1e-18)))
    if not collected:
        return ResidueScan(0.0, inf)
    values = np.unique(np.concatenate(collected))
    if values.size < 2:
        return ResidueScan(float(values[0]), inf)
    jumps = values[1:] / values[:-1]
    split = int(np.argmax(jumps))
    return ResidueScan(float(values[split]), float(values[split + 1]))


def profile_document(
    p: SecantProfile,
    identities: Optional[Dict[str, bool]] = None,
    per_point: Optional[PerPointIncidence] = None,
    include_hyperplanes: bool = False,
    ints_witness: Optional[Sequence[int]] = None
) -> ProfileDocument:
    """Build the JSON report for a profile"""
    hyperplanes = None
    if include_hyperplanes and p.hyperplanes is not None:
        hyperplanes = []
        for key, pts in p.hyperplanes:
            if isinstance(key, Hyperplane):
                coeffs = [str(x) for x in key.coeffs]
            elif isinstance(key, tuple):
                coeffs = [format(x, '.12g') if isinstance(x, float) else str(x) for x in key]
            else:
                coeffs = [str(key)]
            hyperplanes.append(HyperplaneEntry(coeffs=coeffs, points=sorted(pts)))
    return ProfileDocument(
        n=p.n,
        d=p.d,
        ordinary=p.ordinary,
        tau={str(i): t for i, t in p.tau.items()},
        identities=identities or {},
        label=p.label or None,
        backend=p.backend,
        per_point=list(per_point.counts) if per_point is not None else None,
        hyperplanes=hyperplanes,
        skipped_subsets=[list(s) for s in p.skipped] or None,
        ints_witness=list(ints_witness) if ints_witness is not None else None,
    )

"""
Example configurations and their closed-form ordinary-hyperplane counts

Exact families (cube, trivial example, the odd d+3 construction) have rational
coordinates. The polygon and prism families have trigonometric coordinates;
they come as floating configurations or as combinatorial models, where
incidence is decided by index arithmetic mod m.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb, cos, pi, sin
from typing import FrozenSet, Optional, Sequence, Set, Tuple, Union
import logging
import random

import numpy as np

from .errors import (
    AlphasNotDistinctError,
    DuplicatePointError,
    IndexOutOfRangeError,
    NotOddError,
    SingularMapError,
    UnsupportedBackendError,
    UnsupportedDimensionError,
    UnsupportedSizeError,
    VerificationMismatchError,
    ZeroVectorError,
)
from .exact_linalg import Scalar
from .geometry import (
    Configuration,
    FloatConfiguration,
    ProjectiveMap,
    delete_point,
    project_from_point,
    validate_general_position,
)
from .incidence import SecantProfile, tau_from_records

logger = logging.getLogger('ordinaryplanes')

FAMILIES = ('polygon', 'prism', 'trivial', 'cube', 'broken_fano', 'cube_minus_vertex', 'dplus3_odd', 'random')
BACKENDS = ('exact', 'float', 'comb')
BACKEND_ALIASES = {'floating': 'float', 'combinatorial': 'comb'}

MIN_RING_POINTS = 8

Label = Tuple[str, int]


def _label_name(label: Label) -> str:
    kind, index = label
    return kind if kind == 'O' else f"{kind}{index}"


def _check_ring_size(family: str, n: int):
    if n < MIN_RING_POINTS:
        raise UnsupportedSizeError(f"The {family} family needs n >= {MIN_RING_POINTS}, got {n}")


# Combinatorial models

@dataclass(frozen=True)
class CombinatorialModel(ABC):
    """Point labels of a trigonometric family with an exact span rule"""
    family: str
    n: int
    d: int
    m: int
    points: Tuple[Label, ...]

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(_label_name(p) for p in self.points)

    @abstractmethod
    def _closure(self, chosen: Sequence[Label]) -> Set[Label]:
        """Every label, present or deleted, on the hyperplane through chosen"""

    def span(self, labels: Sequence[Union[str, Label]]) -> FrozenSet[str]:
        """
        Labels of all present points on the hyperplane spanned by d labels

        Args:
            labels: d distinct labels, as names ("A3") or (kind, index) pairs
        """
        chosen = [self._parse(x) for x in labels]
        if len(set(chosen)) != self.d:
            raise ValueError(f"Need {self.d} distinct labels, got {list(labels)}")
        present = set(self.points)
        return frozenset(_label_name(p) for p in self._closure(chosen) if p in present)

    def _parse(self, label: Union[str, Label]) -> Label:
        if isinstance(label, tuple):
            parsed = label
        elif label == 'O':
            parsed = ('O', 0)
        else:
            parsed = (label[0], int(label[1:]))
        if parsed not in set(self.points):
            raise IndexOutOfRangeError(f"Label {label} is not a point of this model")
        return parsed


@dataclass(frozen=True)
class PolygonModel(CombinatorialModel):
    """
    Regular m-gon A_0..A_{m-1} with its m directions at infinity B_0..B_{m-1}

    The chord A_iA_j meets infinity at B_{i+j}; the tangent at A_i meets it at
    B_{2i}. With a centre O (m even) the diameter A_i A_{i+m/2} passes through O.
    """
    has_center: bool = False
    deleted: Optional[int] = None

    def _chord(self, i: int, j: int) -> Set[Label]:
        m = self.m
        line = {('A', i), ('A', j), ('B', (i + j) % m)}
        if self.has_center and (j - i) % m == m // 2:
            line.add(('O', 0))
        return line

    def _closure(self, chosen: Sequence[Label]) -> Set[Label]:
        m = self.m
        (k1, x1), (k2, x2) = sorted(chosen)
        if k1 == 'A' and k2 == 'A':
            return self._chord(x1, x2)
        if k1 == 'A' and k2 == 'B':
            if x2 == (2 * x1) % m:
                return {('A', x1), ('B', x2)}
            return self._chord(x1, (x2 - x1) % m)
        if k1 == 'A' and k2 == 'O':
            return self._chord(x1, (x1 + m // 2) % m)
        if k1 == 'B' and k2 == 'B':
            return {('B', k) for k in range(m)}
        # B and O: the diameter in direction B_k, if there is one
        r = (x1 - m // 2) % m
        if r % 2:
            return {('B', x1), ('O', 0)}
        return self._chord(r // 2, (r // 2 + m // 2) % m)


@dataclass(frozen=True)
class PrismModel(CombinatorialModel):
    """
    Two regular m-gons T_0..T_{m-1} and U_0..U_{m-1} in parallel planes

    T_i, T_j, U_k, U_l are coplanar exactly when i + j = k + l mod m.
    """
    deleted: Optional[int] = None

    def _closure(self, chosen: Sequence[Label]) -> Set[Label]:
        m = self.m
        tops = sorted(x for kind, x in chosen if kind == 'T')
        bottoms = sorted(x for kind, x in chosen if kind == 'U')
        if len(tops) == 3:
            return {('T', i) for i in range(m)}
        if len(bottoms) == 3:
            return {('U', k) for k in range(m)}
        if len(tops) == 2:
            (i, j), (k,) = tops, bottoms
            return {('T', i), ('T', j), ('U', k), ('U', (i + j - k) % m)}
        (i,), (k, l) = tops, bottoms
        return {('T', i), ('T', (k + l - i) % m), ('U', k), ('U', l)}


def polygon_model(n: int, variant: int = 0) -> PolygonModel:
    """
    Combinatorial model of the n-point polygon example

    n even gives X_n; n = 1 mod 4 adds the centre to X_{n-1}; n = 3 mod 4 deletes
    infinity point B_variant from X_{n+1}.
    """
    _check_ring_size('polygon', n)
    if n % 2 == 0:
        m, center, deleted = n // 2, False, None
    elif n % 4 == 1:
        m, center, deleted = (n - 1) // 2, True, None
    else:
        m, center, deleted = (n + 1) // 2, False, variant
        if not 0 <= variant < m:
            raise IndexOutOfRangeError(f"Deleted infinity index {variant} out of range 0..{m - 1}")
    points = [('A', i) for i in range(m)] + [('B', k) for k in range(m) if k != deleted]
    if center:
        points.append(('O', 0))
    return PolygonModel('polygon', n, 2, m, tuple(points), has_center=center, deleted=deleted)


def prism_model(n: int, variant: int = 0) -> PrismModel:
    """Combinatorial model of P_n, or of P_{n+1} minus bottom point U_variant for odd n"""
    _check_ring_size('prism', n)
    if n % 2 == 0:
        m, deleted = n // 2, None
    else:
        m, deleted = (n + 1) // 2, variant
        if not 0 <= variant < m:
            raise IndexOutOfRangeError(f"Deleted bottom index {variant} out of range 0..{m - 1}")
    points = [('T', i) for i in range(m)] + [('U', k) for k in range(m) if k != deleted]
    return PrismModel('prism', n, 3, m, tuple(points), deleted=deleted)


def combinatorial_profile(model: CombinatorialModel, keep_hyperplanes: bool = False) -> SecantProfile:
    """Secant profile of a model by enumerating d-subsets and deduplicating incident sets"""
    index = {p: i for i, p in enumerate(model.points)}
    present = set(model.points)
    found: Set[FrozenSet[int]] = set()
    for subset in combinations(model.points, model.d):
        found.add(frozenset(index[p] for p in model._closure(subset) if p in present))
    names = model.labels
    records = tuple(sorted(
        ((' '.join(names[i] for i in sorted(pts)), pts) for pts in found),
        key=lambda rec: sorted(rec[1]),
    ))
    profile = SecantProfile(
        n=len(model.points),
        d=model.d,
        tau=tau_from_records(records),
        hyperplanes=records if keep_hyperplanes else None,
        backend='comb',
        label=f"{model.family} model n={model.n}",
    )
    logger.debug(f"Combinatorial {model.family} n={model.n}: ordinary {profile.ordinary}")
    return profile


def model_formula(model: CombinatorialModel) -> int:
    """Closed-form ordinary count of a polygon or prism model"""
    if model.family == 'prism':
        return prism_formula(model.n)
    deleted = getattr(model, 'deleted', None)
    if deleted is not None and deleted % 2:
        # an odd infinity index breaks the pairing of the closed form
        return 3 * (model.n + 1) // 4
    return polygon_formula(model.n)


def combinatorial_ordinary_count(model: CombinatorialModel) -> SecantProfile:
    """
    Profile of a model, checked against its closed form at the ordinary entry

    Raises:
        VerificationMismatchError: If enumeration and closed form disagree
    """
    profile = combinatorial_profile(model)
    expected = model_formula(model)
    if profile.ordinary != expected:
        raise VerificationMismatchError(
            f"{model.family} model n={model.n}: enumeration gives {profile.ordinary}, closed form {expected}"
        )
    return profile


# Floating coordinates

def polygon_points(n: int, variant: int = 0) -> FloatConfiguration:
    """Floating coordinates of the polygon example, in the model's label order"""
    model = polygon_model(n, variant)
    m = model.m
    rows = []
    for kind, j in model.points:
        if kind == 'A':
            rows.append((cos(2 * pi * j / m), sin(2 * pi * j / m), 1.0))
        elif kind == 'B':
            rows.append((-sin(pi * j / m), cos(pi * j / m), 0.0))
        else:
            rows.append((0.0, 0.0, 1.0))
    return FloatConfiguration(2, np.array(rows, dtype=float), f"polygon n={n}")


def prism_points(n: int, variant: int = 0) -> FloatConfiguration:
    """Floating coordinates of the prism example, in the model's label order"""
    model = prism_model(n, variant)
    m = model.m
    rows = []
    for kind, j in model.points:
        level = (1.0, 0.0) if kind == 'T' else (0.0, 1.0)
        rows.append((cos(2 * pi * j / m), sin(2 * pi * j / m)) + level)
    return FloatConfiguration(3, np.array(rows, dtype=float), f"prism n={n}")


def polygon(n: int, backend: str = 'float', variant: int = 0) -> Union[FloatConfiguration, PolygonModel]:
    backend = BACKEND_ALIASES.get(backend, backend)
    if backend == 'float':
        return polygon_points(n, variant)
    if backend == 'comb':
        return polygon_model(n, variant)
    raise UnsupportedBackendError(f"The polygon family has no {backend} backend (coordinates are irrational)")


def prism(n: int, backend: str = 'float', variant: int = 0) -> Union[FloatConfiguration, PrismModel]:
    backend = BACKEND_ALIASES.get(backend, backend)
    if backend == 'float':
        return prism_points(n, variant)
    if backend == 'comb':
        return prism_model(n, variant)
    raise UnsupportedBackendError(f"The prism family has no {backend} backend (coordinates are irrational)")


# Closed forms

def polygon_formula(n: int) -> int:
    """Ordinary lines of the n-point polygon example"""
    _check_ring_size('polygon', n)
    if n % 2 == 0:
        return n // 2
    if n % 4 == 1:
        return (3 * n - 3) // 4
    return (3 * n - 9) // 4


def prism_formula(n: int) -> int:
    """Ordinary planes of the n-point prism example"""
    _check_ring_size('prism', n)
    residue = n % 4
    if residue == 0:
        return n * n // 4 - n
    if residue == 2:
        return n * n // 4 - n // 2
    if residue == 1:
        return (3 * n * n - 8 * n + 5) // 8
    return (3 * n * n - 12 * n + 17) // 8


def trivial_formula(n: int, d: int) -> int:
    return comb(n - 1, d - 1)


def dplus3_odd_formula(d: int) -> int:
    return (d + 3) * (d + 1) * (d - 1) // 6


# Exact constructions

def cube() -> Configuration:
    """The eight vertices (+-1, +-1, +-1, 1) of a cube in PG(3)"""
    return Configuration.from_coordinates(
        3, [(x, y, z, 1) for x, y, z in product((1, -1), repeat=3)], 'cube'
    )


def broken_fano() -> Configuration:
    """The cube projected from its first vertex: seven points spanning three ordinary lines"""
    return project_from_point(cube(), 0).with_label('broken_fano')


def cube_minus_vertex(index: int = 0) -> Configuration:
    return delete_point(cube(), index).with_label('cube_minus_vertex')


def trivial_example(n: int, d: int) -> Configuration:
    """
    Apex plus n-1 moment-curve points in the hyperplane x_0 = 0

    The curve points are (0, 1, t, ..., t^(d-1)) for t = 0..n-2. Every
    hyperplane through the apex and d-1 curve points is ordinary.

    Raises:
        UnsupportedDimensionError: If d < 2
        UnsupportedSizeError: If n < d + 2
    """
    if d < 2:
        raise UnsupportedDimensionError(f"The trivial example needs d >= 2, got {d}")
    if n < d + 2:
        raise UnsupportedSizeError(f"The trivial example needs n >= d + 2 = {d + 2}, got {n}")
    apex = (1,) + (0,) * d
    curve = [(0,) + tuple(t ** e for e in range(d)) for t in range(n - 1)]
    return Configuration.from_coordinates(d, [apex] + curve, f"trivial n={n} d={d}")


def default_alphas(d: int) -> Tuple[Fraction, ...]:
    return tuple(Fraction(k) for k in range(1, (d - 1) // 2 + 1))


def dplus3_odd(d: int, alphas: Optional[Sequence[Union[Scalar, str]]] = None) -> Configuration:
    """
    d+3 points in PG(d), d odd, with the fewest possible ordinary hyperplanes

    The points are the d+1 coordinate points, u = e_0 + ... + e_{d-1} and
    v = a_1(e_0 + e_1) + ... + a_k(e_{d-3} + e_{d-2}) + e_d with k = (d-1)/2.

    Raises:
        NotOddError: If d is even
        AlphasNotDistinctError: If the alphas repeat or one is zero
    """
    if d < 3:
        raise UnsupportedDimensionError(f"The odd d+3 construction needs d >= 3, got {d}")
    if d % 2 == 0:
        raise NotOddError(f"The d+3 construction needs odd d, got {d}")
    k = (d - 1) // 2
    values = default_alphas(d) if alphas is None else tuple(Fraction(a) for a in alphas)
    if len(values) != k:
        raise UnsupportedSizeError(f"Need {k} alphas for d={d}, got {len(values)}")
    if len(set(values)) != k:
        raise AlphasNotDistinctError(f"Alphas must be distinct, got {[str(a) for a in values]}")
    if any(a == 0 for a in values):
        raise AlphasNotDistinctError("Alphas must be nonzero")

    basis = [tuple(1 if i == j else 0 for j in range(d + 1)) for i in range(d + 1)]
    u = tuple(1 if j < d else 0 for j in range(d + 1))
    v = [Fraction(0)] * (d + 1)
    for i, a in enumerate(values):
        v[2 * i] = a
        v[2 * i + 1] = a
    v[d] = Fraction(1)
    label = f"dplus3_odd d={d} alphas={','.join(str(a) for a in values)}"
    return Configuration.from_coordinates(d, basis + [u, tuple(v)], label)


# Random instances

def random_configuration(
    n: int,
    d: int,
    rng: random.Random,
    coordinate_range: int = 4,
    max_attempts: int = 10000
) -> Configuration:
    """
    Random integer configuration in general position

    Coordinates are drawn uniformly from [-coordinate_range, coordinate_range];
    draws are repeated until the points are distinct and pass validation.
    """
    for attempt in range(1, max_attempts + 1):
        rows = [
            tuple(rng.randint(-coordinate_range, coordinate_range) for _ in range(d + 1))
            for _ in range(n)
        ]
        try:
            c = Configuration.from_coordinates(d, rows, f"random n={n} d={d}")
        except (ZeroVectorError, DuplicatePointError):
            continue
        if validate_general_position(c).valid:
            if attempt > 1:
                logger.debug(f"Random configuration n={n} d={d} found after {attempt} draws")
            return c
    raise UnsupportedSizeError(
        f"No general-position configuration with n={n}, d={d} in {max_attempts} draws"
    )


def random_projective_map(d: int, rng: random.Random, entry_range: int = 3) -> ProjectiveMap:
    """Random invertible integer (d+1) x (d+1) map"""
    while True:
        rows = [[rng.randint(-entry_range, entry_range) for _ in range(d + 1)] for _ in range(d + 1)]
        try:
            return ProjectiveMap.from_rows(rows)
        except SingularMapError:
            continue


# Dispatch

@dataclass(frozen=True)
class FamilySpec:
    """
    A family member to construct

    backend None picks the family's natural backend: float for polygon and
    prism, exact for everything else.
    """
    family: str
    n: Optional[int] = None
    d: Optional[int] = None
    variant: int = 0
    backend: Optional[str] = None
    alphas: Optional[Tuple[str, ...]] = None
    seed: Optional[int] = None

    @property
    def resolved_backend(self) -> str:
        if self.backend is None:
            return 'float' if self.family in ('polygon', 'prism') else 'exact'
        return BACKEND_ALIASES.get(self.backend, self.backend)


def _require(value: Optional[int], name: str, family: str) -> int:
    if value is None:
        raise UnsupportedSizeError(f"The {family} family needs --{name}")
    return value


def construct(spec: FamilySpec) -> Union[Configuration, FloatConfiguration, CombinatorialModel]:
    """
    Build the configuration or model described by spec

    Raises:
        UnsupportedBackendError: If the family has no constructor for the backend
        UnsupportedSizeError: If a required size is missing or out of range
    """
    family = spec.family
    backend = spec.resolved_backend
    if family not in FAMILIES:
        raise UnsupportedSizeError(f"Unknown family '{family}'. Choose from {', '.join(FAMILIES)}")
    if backend not in BACKENDS:
        raise UnsupportedBackendError(f"Unknown backend '{backend}'. Choose from {', '.join(BACKENDS)}")

    if family in ('polygon', 'prism'):
        expected_d = 2 if family == 'polygon' else 3
        if spec.d is not None and spec.d != expected_d:
            raise UnsupportedDimensionError(f"The {family} family lives in PG({expected_d})")
        n = _require(spec.n, 'n', family)
        builder = polygon if family == 'polygon' else prism
        return builder(n, backend, spec.variant)

    if backend == 'comb':
        raise UnsupportedBackendError(f"The {family} family has no combinatorial model")

    if family == 'cube':
        c = cube()
    elif family == 'broken_fano':
        c = broken_fano()
    elif family == 'cube_minus_vertex':
        c = cube_minus_vertex(spec.variant)
    elif family == 'trivial':
        c = trivial_example(_require(spec.n, 'n', family), _require(spec.d, 'd', family))
    elif family == 'dplus3_odd':
        d = _require(spec.d, 'd', family)
        if spec.n is not None and spec.n != d + 3:
            raise UnsupportedSizeError(f"The d+3 construction has exactly {d + 3} points")
        c = dplus3_odd(d, spec.alphas)
    else:
        rng = random.Random(spec.seed)
        c = random_configuration(_require(spec.n, 'n', family), _require(spec.d, 'd', family), rng)

    logger.debug(f"Constructed {c.label} with {c.n} points")
    if backend == 'float':
        return FloatConfiguration.from_configuration(c)
    return c

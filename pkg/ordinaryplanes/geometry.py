"""
Projective geometry over the rationals

Points and hyperplanes of PG(d, R) are stored in canonical primitive form:
integer coordinates with gcd 1 and first nonzero entry positive. Two objects
are equal exactly when their canonical tuples are equal.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union
import json
import logging

import numpy as np
from pydantic import ValidationError

from .errors import (
    ConfigurationParseError,
    DegenerateError,
    DimensionMismatchError,
    DuplicatePointError,
    DuplicateProjectionError,
    IndexOutOfRangeError,
    RankDeficientError,
    SingularMapError,
    UnsupportedDimensionError,
    ZeroVectorError,
)
from .exact_linalg import (
    Matrix,
    Scalar,
    determinant,
    format_rational,
    nullspace_of_rows,
    rank_of_rows,
    to_rational,
)
from .schemas import ConfigurationDocument

logger = logging.getLogger('ordinaryplanes')

MIN_DIMENSION = 2


def canonicalize(v: Sequence[Union[Scalar, str]]) -> Tuple[int, ...]:
    """
    Canonical primitive integer representative of a nonzero vector

    Clears denominators, divides by the gcd and makes the first nonzero entry
    positive. Idempotent and invariant under nonzero rational scaling.

    Raises:
        ZeroVectorError: If every entry is zero
    """
    fracs = [to_rational(x) for x in v]
    if not any(fracs):
        raise ZeroVectorError("The zero vector is not a projective object")
    scale = lcm(*(f.denominator for f in fracs))
    ints = [int(f * scale) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    first = next(x for x in ints if x != 0)
    if first < 0:
        ints = [-x for x in ints]
    return tuple(ints)


@dataclass(frozen=True, order=True)
class ProjectivePoint:
    """A point of PG(d, R) with canonical homogeneous coordinates"""
    coords: Tuple[int, ...]

    @classmethod
    def of(cls, values: Sequence[Union[Scalar, str]]) -> 'ProjectivePoint':
        return cls(canonicalize(values))

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def __str__(self) -> str:
        return f"<({', '.join(str(x) for x in self.coords)})>"


@dataclass(frozen=True, order=True)
class Hyperplane:
    """A hyperplane of PG(d, R) given by canonical coefficients"""
    coeffs: Tuple[int, ...]

    @classmethod
    def of(cls, values: Sequence[Union[Scalar, str]]) -> 'Hyperplane':
        return cls(canonicalize(values))

    @property
    def dim(self) -> int:
        return len(self.coeffs) - 1

    def __str__(self) -> str:
        return f"[{', '.join(str(x) for x in self.coeffs)}]"


@dataclass(frozen=True)
class Configuration:
    """
    Ordered set of distinct points in PG(d, R)

    Raises DuplicatePointError on construction when two points coincide.
    """
    dim: int
    points: Tuple[ProjectivePoint, ...]
    label: str = ''

    def __post_init__(self):
        if self.dim < MIN_DIMENSION:
            raise UnsupportedDimensionError(f"Configurations live in PG(d) with d >= 2, got d = {self.dim}")
        seen = {}
        for index, p in enumerate(self.points):
            if len(p.coords) != self.dim + 1:
                raise DimensionMismatchError(
                    f"Point {index} has {len(p.coords)} coordinates, expected {self.dim + 1}"
                )
            if p in seen:
                raise DuplicatePointError(f"Points {seen[p]} and {index} coincide: {p}")
            seen[p] = index

    @classmethod
    def from_coordinates(
        cls,
        dim: int,
        rows: Iterable[Sequence[Union[Scalar, str]]],
        label: str = ''
    ) -> 'Configuration':
        return cls(dim, tuple(ProjectivePoint.of(r) for r in rows), label)

    @property
    def n(self) -> int:
        return len(self.points)

    def coordinate_rows(self, indices: Optional[Iterable[int]] = None) -> List[Tuple[int, ...]]:
        if indices is None:
            return [p.coords for p in self.points]
        return [self.points[i].coords for i in indices]

    def with_label(self, label: str) -> 'Configuration':
        return Configuration(self.dim, self.points, label)


@dataclass(frozen=True)
class FloatConfiguration:
    """Numeric configuration for families with irrational coordinates"""
    dim: int
    coords: np.ndarray = field(compare=False)
    label: str = ''

    def __post_init__(self):
        if self.dim < MIN_DIMENSION:
            raise UnsupportedDimensionError(f"Configurations live in PG(d) with d >= 2, got d = {self.dim}")
        if self.coords.ndim != 2 or self.coords.shape[1] != self.dim + 1:
            raise DimensionMismatchError(
                f"Float coordinates must have shape (n, {self.dim + 1}), got {self.coords.shape}"
            )

    @property
    def n(self) -> int:
        return int(self.coords.shape[0])

    @classmethod
    def from_configuration(cls, c: Configuration) -> 'FloatConfiguration':
        return cls(c.dim, np.array([[float(x) for x in p.coords] for p in c.points], dtype=float), c.label)


@dataclass(frozen=True)
class ProjectiveMap:
    """Invertible (d+1) x (d+1) rational matrix acting on column vectors"""
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.rows != self.matrix.cols:
            raise DimensionMismatchError(
                f"Projective map needs a square matrix, got {self.matrix.rows}x{self.matrix.cols}"
            )
        if determinant(self.matrix) == 0:
            raise SingularMapError("Projective map matrix is singular")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Union[Scalar, str]]]) -> 'ProjectiveMap':
        return cls(Matrix.from_rows(rows))

    @classmethod
    def identity(cls, dim: int) -> 'ProjectiveMap':
        return cls(Matrix.identity(dim + 1))

    @classmethod
    def diagonal(cls, values: Sequence[Scalar]) -> 'ProjectiveMap':
        size = len(values)
        return cls.from_rows([[values[i] if i == j else 0 for j in range(size)] for i in range(size)])

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> 'ProjectiveMap':
        """Map sending coordinate perm[i] of the input to coordinate i of the output"""
        size = len(perm)
        return cls.from_rows([[1 if j == perm[i] else 0 for j in range(size)] for i in range(size)])

    @property
    def dim(self) -> int:
        return self.matrix.rows - 1

    def apply(self, p: ProjectivePoint) -> ProjectivePoint:
        return ProjectivePoint.of(self.matrix.apply(p.coords))


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the general-position check"""
    full_span: bool
    general_position: bool
    rank: int
    witness: Optional[Tuple[int, ...]] = None

    @property
    def valid(self) -> bool:
        return self.full_span and self.general_position


def incident(h: Hyperplane, p: ProjectivePoint) -> bool:
    """True iff the exact dot product of h and p is zero"""
    if len(h.coeffs) != len(p.coords):
        raise DimensionMismatchError(
            f"Hyperplane in PG({h.dim}) against point in PG({p.dim})"
        )
    return sum(a * b for a, b in zip(h.coeffs, p.coords)) == 0


def spanning_hyperplane(points: Sequence[ProjectivePoint]) -> Hyperplane:
    """
    The unique hyperplane through d points of PG(d)

    Raises:
        DegenerateError: If the points have rank below d
    """
    if not points:
        raise DimensionMismatchError("Need d points to span a hyperplane")
    width = len(points[0].coords)
    if len(points) != width - 1:
        raise DimensionMismatchError(
            f"PG({width - 1}) needs exactly {width - 1} points to span a hyperplane, got {len(points)}"
        )
    try:
        return Hyperplane.of(nullspace_of_rows([p.coords for p in points]))
    except RankDeficientError as e:
        raise DegenerateError(f"Points do not span a hyperplane: {e}") from e


def validate_general_position(c: Configuration) -> ValidationReport:
    """
    Check the full-span and general-position hypotheses exactly

    Every d-subset is tested; the first failing subset (lexicographic order)
    is reported as the witness.
    """
    d = c.dim
    total_rank = rank_of_rows(c.coordinate_rows())
    full_span = total_rank == d + 1
    witness = None
    general = True
    for subset in combinations(range(c.n), d):
        if rank_of_rows(c.coordinate_rows(subset)) < d:
            general = False
            witness = subset
            break
    if not full_span and witness is None:
        witness = tuple(range(c.n))
    logger.debug(
        f"Validated '{c.label}': rank {total_rank}, full span {full_span}, general position {general}"
    )
    return ValidationReport(full_span=full_span, general_position=general, rank=total_rank, witness=witness)


def transform(c: Configuration, m: ProjectiveMap) -> Configuration:
    """Apply a projective map to every point, preserving order"""
    if m.dim != c.dim:
        raise DimensionMismatchError(f"Map acts on PG({m.dim}), configuration lives in PG({c.dim})")
    label = f"{c.label} (transformed)" if c.label else 'transformed'
    return Configuration(c.dim, tuple(m.apply(p) for p in c.points), label)


def delete_point(c: Configuration, index: int) -> Configuration:
    """Configuration with point `index` removed"""
    if not 0 <= index < c.n:
        raise IndexOutOfRangeError(f"Point index {index} out of range 0..{c.n - 1}")
    points = c.points[:index] + c.points[index + 1:]
    return Configuration(c.dim, points, f"{c.label} minus point {index}")


def project_from_point(c: Configuration, index: int) -> Configuration:
    """
    Project a configuration of PG(d) from one of its points into PG(d-1)

    The pivot coordinate k is the first nonzero coordinate of x = points[index].
    Each other point y becomes y - (y_k / x_k) x with coordinate k deleted.
    Point order is preserved, minus the projection centre.

    Raises:
        UnsupportedDimensionError: If d < 3
        IndexOutOfRangeError: If index is not a point of c
        DuplicateProjectionError: If two points project onto the same point
    """
    if c.dim < 3:
        raise UnsupportedDimensionError(f"Projection needs d >= 3, configuration is in PG({c.dim})")
    if not 0 <= index < c.n:
        raise IndexOutOfRangeError(f"Point index {index} out of range 0..{c.n - 1}")

    x = c.points[index].coords
    k = next(i for i, v in enumerate(x) if v != 0)
    projected: List[ProjectivePoint] = []
    origin: dict = {}
    for j, p in enumerate(c.points):
        if j == index:
            continue
        y = p.coords
        ratio = Fraction(y[k], x[k])
        image = [Fraction(y[i]) - ratio * x[i] for i in range(len(y))]
        del image[k]
        q = ProjectivePoint.of(image)
        if q in origin:
            raise DuplicateProjectionError(
                f"Points {origin[q]} and {j} are collinear with point {index}",
                witness=(index, origin[q], j),
            )
        origin[q] = j
        projected.append(q)

    label = f"{c.label} projected from {index}" if c.label else f"projected from {index}"
    return Configuration(c.dim - 1, tuple(projected), label)


def configuration_from_document(doc: ConfigurationDocument) -> Union[Configuration, FloatConfiguration]:
    """Turn a parsed document into an exact or floating configuration"""
    try:
        if doc.backend == 'float':
            coords = np.array([[float(x) for x in row] for row in doc.points], dtype=float)
            if coords.size == 0:
                coords = coords.reshape(0, doc.dim + 1)
            return FloatConfiguration(doc.dim, coords, doc.label)
        return Configuration.from_coordinates(doc.dim, doc.points, doc.label)
    except DuplicatePointError:
        raise
    except (ValueError, ZeroDivisionError, ZeroVectorError, DimensionMismatchError) as e:
        raise ConfigurationParseError(f"Invalid configuration '{doc.label}': {e}") from e


def load_configuration(path: Union[str, Path]) -> Union[Configuration, FloatConfiguration]:
    """
    Load a configuration JSON file

    Raises:
        ConfigurationParseError: If the file is unreadable or malformed
        DuplicatePointError: If two points coincide after canonicalization
    """
    path = Path(path)
    try:
        with open(path, 'r') as f:
            raw = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigurationParseError(f"Could not read {path}: {e}") from e
    try:
        doc = ConfigurationDocument.model_validate(raw)
    except ValidationError as e:
        raise ConfigurationParseError(f"Invalid configuration document {path}: {e}") from e
    logger.debug(f"Loaded configuration from {path}")
    return configuration_from_document(doc)


def configuration_document(c: Union[Configuration, FloatConfiguration]) -> ConfigurationDocument:
    if isinstance(c, FloatConfiguration):
        return ConfigurationDocument(
            dim=c.dim,
            label=c.label,
            backend='float',
            points=[[format(float(x), '.17g') for x in row] for row in c.coords],
        )
    return ConfigurationDocument(
        dim=c.dim,
        label=c.label,
        points=[[format_rational(x) for x in p.coords] for p in c.points],
    )


def dump_configuration(c: Union[Configuration, FloatConfiguration]) -> str:
    """Serialize a configuration to its JSON file format"""
    doc = configuration_document(c)
    if doc.backend == 'exact':
        return doc.model_dump_json(indent=2, exclude={'backend'})
    return doc.model_dump_json(indent=2)

"""
Randomized invariants of the exact engine, seeded
"""

import random

import pytest

from ordinaryplanes import families
from ordinaryplanes.geometry import Configuration, FloatConfiguration, transform
from ordinaryplanes.incidence import (
    check_bettercount,
    check_ints,
    check_trivcount,
    per_point_from_profile,
    secant_profile,
    secant_profile_numeric,
)

SEEDS = range(30)


def sample(seed):
    rng = random.Random(seed)
    d = rng.choice((2, 3, 4))
    n = rng.randint(6, 10)
    return rng, families.random_configuration(n, d, rng)


@pytest.mark.parametrize("seed", SEEDS)
def test_counting_identities(seed):
    _, c = sample(seed)
    p = secant_profile(c, keep_hyperplanes=True)
    assert check_trivcount(p)
    assert check_bettercount(p)
    assert check_ints(c)[0]
    assert per_point_from_profile(p).total == c.dim * p.ordinary


@pytest.mark.parametrize("seed", SEEDS)
def test_projective_invariance(seed):
    rng, c = sample(seed)
    mapped = transform(c, families.random_projective_map(c.dim, rng))
    assert secant_profile(mapped).tau == secant_profile(c).tau


@pytest.mark.parametrize("seed", SEEDS)
def test_permutation_invariance(seed):
    rng, c = sample(seed)
    order = list(range(c.n))
    rng.shuffle(order)
    shuffled = Configuration(c.dim, tuple(c.points[i] for i in order), c.label)
    p = secant_profile(c, keep_hyperplanes=True)
    q = secant_profile(shuffled, keep_hyperplanes=True)
    assert p.tau == q.tau
    counts = per_point_from_profile(p).counts
    assert per_point_from_profile(q).counts == tuple(counts[i] for i in order)


@pytest.mark.parametrize("seed", range(10))
def test_numeric_agrees_with_exact(seed):
    _, c = sample(seed)
    assert secant_profile_numeric(FloatConfiguration.from_configuration(c)).tau == secant_profile(c).tau

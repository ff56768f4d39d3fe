"""
ordinaryplanes - ordinary hyperplanes of point sets in real projective space

This package provides:
- Exact rational linear algebra (fraction-free elimination)
- Secant profiles of point configurations, exact and floating
- The extremal constructions and their combinatorial models
- Lower and upper bounds on e_d(n) and the small-values table
- A reproduction suite for the known results
"""

__version__ = '1.0.0'
__author__ = 'ordinaryplanes Contributors'

# Public API exports
from .geometry import (
    Configuration,
    FloatConfiguration,
    Hyperplane,
    ProjectiveMap,
    ProjectivePoint,
    load_configuration,
    project_from_point,
)
from .incidence import (
    SecantProfile,
    secant_profile,
    secant_profile_numeric,
)
from .bounds import (
    BoundResult,
    DerivationPolicy,
    best_lower,
    best_upper,
    generate_table,
)

__all__ = [
    'Configuration',
    'FloatConfiguration',
    'Hyperplane',
    'ProjectiveMap',
    'ProjectivePoint',
    'load_configuration',
    'project_from_point',
    'SecantProfile',
    'secant_profile',
    'secant_profile_numeric',
    'BoundResult',
    'DerivationPolicy',
    'best_lower',
    'best_upper',
    'generate_table',
    '__version__',
]

#!/usr/bin/env python3
"""
Ordinary Hyperplanes Toolkit v1.0
Counts the ordinary hyperplanes spanned by point sets in real projective space

Features:
- Exact rational incidence engine with optional parallel enumeration
- Floating backend and combinatorial models for the trigonometric families
- Lower and upper bounds on e_d(n), small-values table
- Reproduction suite for the known results
- Flexible configuration via files or CLI
"""

import sys

from ordinaryplanes.cli import main


if __name__ == "__main__":
    sys.exit(main())

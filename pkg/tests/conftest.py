"""
Shared fixtures
"""

import json
import random

import pytest

from ordinaryplanes import families
from ordinaryplanes.geometry import Configuration, dump_configuration


# Small values of e_d(n), rows n = 4..13, columns d = 2..7, as printed
# (including the two-dot range in row 9)
PUBLISHED_ROWS = {
    4: ['3', '.', '.', '.', '.', '.'],
    5: ['4', '6', '.', '.', '.', '.'],
    6: ['3', '8', '10', '.', '.', '.'],
    7: ['3', '11', '20', '15', '.', '.'],
    8: ['4', '8', '25...35', '32', '21', '.'],
    9: ['6', '14..22', '18...56', '54...70', '56', '28'],
    10: ['5', '20', '35...84', '36...126', '90...126', '80'],
    11: ['6', '19...31', '55...120', '77...210', '.', '.'],
    12: ['6', '24', '57...165', '132...330', '.', '.'],
    13: ['6', '26...51', '78...220', '149...495', '.', '.'],
}


@pytest.fixture
def published_rows():
    return PUBLISHED_ROWS


@pytest.fixture
def cube():
    return families.cube()


@pytest.fixture
def rng():
    return random.Random(2016)


@pytest.fixture
def collinear_triple():
    """Five points of PG(3) spanning the space, the first three on a line"""
    return Configuration.from_coordinates(3, [
        (1, 0, 0, 0),
        (0, 1, 0, 0),
        (1, 1, 0, 0),
        (0, 0, 1, 0),
        (0, 0, 0, 1),
    ], 'collinear triple')


@pytest.fixture
def cube_file(tmp_path, cube):
    path = tmp_path / 'cube.json'
    path.write_text(dump_configuration(cube))
    return path


@pytest.fixture
def write_json(tmp_path):
    """Write a JSON document to a temporary file and return its path"""
    def _write(name, document):
        path = tmp_path / name
        path.write_text(json.dumps(document))
        return path
    return _write

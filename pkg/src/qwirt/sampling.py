"""Seeded random draws used by the numeric test suites and the CLI."""

import math

from .quaternion import Quaternion


def random_unit(rng):
    """A uniformly random imaginary unit (J*J = -1)."""
    while True:
        v = (rng.gauss(0.0, 1.0), rng.gauss(0.0, 1.0), rng.gauss(0.0, 1.0))
        norm = math.sqrt(v[0] ** 2 + v[1] ** 2 + v[2] ** 2)
        if norm > 1e-6:
            return Quaternion(0.0, v[0] / norm, v[1] / norm, v[2] / norm)


def random_slice_point(rng, n, re_range=(-1.0, 1.0), im_range=(0.3, 2.0)):
    """A point of H^n with every |Im(x_m)| inside the admissible band."""
    coords = []
    for _ in range(n):
        alpha = rng.uniform(*re_range)
        beta = rng.uniform(*im_range)
        coords.append(Quaternion(alpha) + random_unit(rng) * beta)
    return tuple(coords)


def respin_units(rng, point, upto):
    """Replace the units of the first ``upto`` coordinates by fresh random
    ones, keeping every real part and imaginary radius."""
    coords = list(point)
    for m in range(upto):
        alpha, beta, _ = coords[m].split_slice()
        coords[m] = Quaternion(alpha) + random_unit(rng) * beta
    return tuple(coords)

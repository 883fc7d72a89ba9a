"""Shared fixtures: the two hand-checked corpus points and corpus builders."""

from __future__ import annotations

import random

import pytest

from quadric_gaudin.scalars import gr
from quadric_gaudin.phase import Pencil, PhasePoint
from quadric_gaudin.sov import point_from_polynomial
from quadric_gaudin.unipoly import Polynomial


@pytest.fixture
def pencil01234() -> Pencil:
    return Pencil([gr(k) for k in range(5)])


@pytest.fixture
def fix_a(pencil01234) -> list:
    # sum x^2 = 1+1-4+1+1 = 0, sum mu x^2 = 0+1-8+3+4 = 0
    return [gr(1), gr(1), gr(0, 2), gr(1), gr(1)]


@pytest.fixture
def fix_b() -> list:
    # sum x^2 = -1+1+1-1+0 = 0, sum mu x^2 = 1+2-3 = 0
    return [gr(0, 1), gr(1), gr(1), gr(0, 1), gr(0)]


@pytest.fixture
def fix_c(pencil01234, fix_a) -> PhasePoint:
    # sum xy = 3-4+0+0+1 = 0, sum mu xy = -4+4 = 0
    y = [gr(3), gr(-4), gr(0), gr(0), gr(1)]
    return PhasePoint(pencil01234, fix_a, y)


# -- pencils whose node weights are all Gaussian-rational squares -------------
#
# mu = lam * (-a, -b, 0, b, a) + c has node weights prod_{j != i}(mu_i - mu_j)
# equal to squares of Gaussian rationals whenever a^2 - b^2 = 2 s^2; the
# (a, b) pairs below satisfy that, and scaling (even power of lam) and
# shifting preserve it.  On such pencils any perfect-square target
# polynomial pulls back to an exact wobbly point.

SQUARE_FRIENDLY_AB = [(3, 1), (9, 7), (11, 7), (19, 17), (33, 31)]


def square_friendly_pencil(seed: int) -> Pencil:
    rng = random.Random(seed)
    a, b = SQUARE_FRIENDLY_AB[rng.randrange(len(SQUARE_FRIENDLY_AB))]
    lam = rng.randint(1, 3)
    shift = rng.randint(-6, 6)
    return Pencil([gr(lam * v + shift) for v in (-a, -b, 0, b, a)])


def exact_wobbly_point(seed: int):
    """Exact x whose auxiliary polynomial is s*(v1 z + v0)^2: a double root."""
    rng = random.Random(seed + 77003)
    while True:
        pencil = square_friendly_pencil(rng.randrange(1 << 30))
        v1 = rng.randint(1, 9)
        v0 = rng.randint(-9, 9)
        root_num = gr(-v0) / gr(v1)
        if any((root_num - m).is_zero() for m in pencil.mu):
            continue
        sgn = rng.choice((1, -1))
        s = gr(sgn * rng.randint(1, 4) ** 2)
        target = Polynomial([gr(v0), gr(v1)])
        target = (target * target).scale(s)
        x = point_from_polynomial(target, pencil, mode="exact")
        if any(v.is_zero() for v in x):
            continue
        return pencil, x, target

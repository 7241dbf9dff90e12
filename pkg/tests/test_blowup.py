import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxcanon import toric
from coxcanon.blowup import (
    BlowupDivisor,
    PointConfig,
    canonical_divisor_blowup,
    class_group_blowup,
    default_points,
    divisor_class_blowup,
    is_ample_blowup,
    section_dimension_blowup,
)
from coxcanon.catalog import coordinate_points_p2, dp6_divisor


def test_section_examples():
    one = PointConfig(2, [(1, 0, 0)])
    assert section_dimension_blowup(one, BlowupDivisor(1, (1,))) == 2
    two = PointConfig(2, [(1, 0, 0), (0, 1, 0)])
    assert section_dimension_blowup(two, BlowupDivisor(1, (1, 1))) == 1
    assert section_dimension_blowup(two, BlowupDivisor(2, (0, -3))) == 6
    assert section_dimension_blowup(two, BlowupDivisor(-1, (0, 0))) == 0


def test_single_point_formula():
    config = PointConfig(2, [(3, "1/2", -2)])
    for d in range(7):
        for m in range(d + 1):
            assert section_dimension_blowup(config, BlowupDivisor(d, (m,))) == comb(d + 2, 2) - comb(m + 1, 2)


def test_collinear_points_impose_dependent_conditions():
    # three collinear points impose only two conditions on lines
    config = PointConfig(2, [(1, 0, 0), (0, 1, 0), (1, 1, 0)])
    assert section_dimension_blowup(config, BlowupDivisor(1, (1, 1, 1))) == 1
    # conics through them are the line times a linear form
    assert section_dimension_blowup(config, BlowupDivisor(2, (1, 1, 1))) == 3


def test_class_group_and_canonical():
    assert class_group_blowup(PointConfig(3, default_points(3, 2))).free_rank == 3
    assert class_group_blowup(PointConfig(2, [])).free_rank == 1
    assert class_group_blowup(PointConfig(2, [(1, 0, 0)])).free_rank == 2
    assert canonical_divisor_blowup(PointConfig(2, default_points(2, 4))) == BlowupDivisor(-3, (-1,) * 4)
    assert canonical_divisor_blowup(PointConfig(3, default_points(3, 2))) == BlowupDivisor(-4, (-2, -2))
    assert canonical_divisor_blowup(PointConfig(2, [])) == BlowupDivisor(-3, ())
    K = divisor_class_blowup(PointConfig(3, default_points(3, 2)), canonical_divisor_blowup(PointConfig(3, default_points(3, 2))))
    assert K.coordinates == (2, 2, -4)


def test_point_config_validation():
    with pytest.raises(ValueError):
        PointConfig(2, [(1, 0, 0), (2, 0, 0)])
    with pytest.raises(ValueError):
        PointConfig(2, [(0, 0, 0)])
    with pytest.raises(ValueError):
        PointConfig(1, [(1, 0)])


def test_ampleness():
    one = PointConfig(2, [(1, 0, 0)])
    assert is_ample_blowup(one, BlowupDivisor(2, (1,))) is True
    assert is_ample_blowup(one, BlowupDivisor(1, (1,))) is False
    assert is_ample_blowup(one, BlowupDivisor(3, (0,))) is False
    three = PointConfig(2, [(1, 0, 0), (0, 1, 0), (1, 1, 0)])
    assert is_ample_blowup(three, BlowupDivisor(3, (1, 1, 1))) is False
    general = PointConfig(2, coordinate_points_p2())
    assert is_ample_blowup(general, BlowupDivisor(3, (1, 1, 1))) is None


def test_ampleness_agrees_with_toric_when_decided():
    config = PointConfig(2, coordinate_points_p2())
    fan = toric.del_pezzo_6()
    for d in range(-1, 7):
        for c in [(a, b, e) for a in range(-1, 4) for b in range(-1, 4) for e in range(-1, 4)]:
            verdict = is_ample_blowup(config, BlowupDivisor(d, c))
            if verdict is not None:
                assert verdict == toric.is_ample(fan, dp6_divisor(d, c))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_monotonicity(seed):
    rng = random.Random(seed)
    n = rng.choice([2, 3])
    r = rng.randint(1, 3)
    config = PointConfig(n, default_points(n, r))
    d = rng.randint(0, 4)
    c = tuple(rng.randint(-1, 3) for _ in range(r))
    base = section_dimension_blowup(config, BlowupDivisor(d, c))
    assert section_dimension_blowup(config, BlowupDivisor(d + 1, c)) >= base
    i = rng.randrange(r)
    bumped = tuple(x + (j == i) for j, x in enumerate(c))
    assert section_dimension_blowup(config, BlowupDivisor(d, bumped)) <= base


def test_cross_backend_sample():
    config = PointConfig(2, coordinate_points_p2())
    fan = toric.del_pezzo_6()
    for d in range(-2, 4):
        for c in [(0, 0, 0), (1, 0, 0), (1, 1, 1), (2, 1, -1), (3, 3, 3), (-2, 1, 2)]:
            assert section_dimension_blowup(config, BlowupDivisor(d, c)) == toric.section_dimension(fan, dp6_divisor(d, c))

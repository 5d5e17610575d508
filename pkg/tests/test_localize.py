from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from braneindex import (
    DomainError,
    EquivBundleAtFixedPoints,
    ExpSum,
    GenericDirection,
    InputError,
    bundle_from_divisor,
    charge_at_fixed_points,
    chern_character_at_fixed_points,
    divisor_is_nef,
    fixed_points,
    koszul_charge,
    lattice_point_character,
    localization_index,
)
from braneindex.toricfan import Fan

from conftest import CORPUS_NAMES, load_fan


def test_chern_character_trivial():
    fan = load_fan("p2")
    chern = chern_character_at_fixed_points(fan, [0, 0, 0])
    assert all(c == ExpSum.monomial((0, 0)) for c in chern)


def test_chern_character_twisted_line():
    fan = load_fan("p1")
    chern = chern_character_at_fixed_points(fan, [2, 0])
    assert {tuple(sorted(c.terms)) for c in chern} == {((0,),), ((2,),)}


def test_chern_character_direct_sum():
    fan = load_fan("p1")
    line0 = bundle_from_divisor(fan, [0, 0]).local_weights
    line1 = bundle_from_divisor(fan, [1, 0]).local_weights
    both = EquivBundleAtFixedPoints(tuple((a, b) for a, b in zip(line0, line1)))
    chern = chern_character_at_fixed_points(fan, both)
    assert all(c.total() == 2 for c in chern)
    charge = charge_at_fixed_points(fan, both)
    assert len(charge.chern) == len(charge.todd_denominator_data) == 2


def test_chern_rank_mismatch():
    fan = load_fan("p1")
    with pytest.raises(InputError):
        chern_character_at_fixed_points(
            fan, EquivBundleAtFixedPoints((((0,),),))  # one fixed point only
        )


def test_index_on_projective_line():
    fan = load_fan("p1")
    for d in range(6):
        assert localization_index(fan, [d, 0]).index == d + 1
    assert localization_index(fan, [-1, 0]).index == 0
    for d in range(2, 6):
        assert localization_index(fan, [-d, 0]).index == -(d - 1)


def test_index_examples():
    assert localization_index(load_fan("p2"), [0, 0, 1]).index == 3
    assert localization_index(load_fan("p3"), [0, 0, 0, 2]).index == 10
    # [1, 0, 2, 0] is the (3, 0) twist: (3 + 1) * (0 + 1) sections
    assert localization_index(load_fan("p1xp1"), [1, 0, 2, 0]).index == 4
    assert localization_index(load_fan("p1xp1"), [1, 1, 2, 0]).index == 8


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_structure_sheaf_has_index_one(name):
    fan = load_fan(name)
    trivial = [0 for _ in fan.rays]
    assert localization_index(fan, trivial).index == 1


def test_lattice_points_examples():
    p1 = load_fan("p1")
    assert lattice_point_character(p1, [0, 2]).terms == {(0,): 1, (1,): 1, (2,): 1}
    assert lattice_point_character(p1, [0, 0]).terms == {(0,): 1}
    p2 = load_fan("p2")
    triangle = lattice_point_character(p2, [0, 0, 1])
    assert triangle.terms == {(0, 0): 1, (1, 0): 1, (0, 1): 1}


def test_lattice_points_empty_polytope():
    p1 = load_fan("p1")
    assert lattice_point_character(p1, [-1, 0]).is_zero()


def test_lattice_points_unbounded_rejected():
    # a half-space "fan" bypasses validation to exercise the boundedness guard
    half = Fan(dim=2, rays=((1, 0), (0, 1)), max_cones=((0, 1),))
    with pytest.raises(DomainError, match="unbounded"):
        lattice_point_character(half, [1, 1])


def test_koszul_charge_zero():
    for r in range(1, 13):
        assert koszul_charge(r).is_zero()
    with pytest.raises(DomainError):
        koszul_charge(0)


def test_twisted_additivity():
    fan = load_fan("p1xp1")
    d1 = [2, 0, 0, 0]
    d2 = [0, 1, 1, 0]
    w1 = bundle_from_divisor(fan, d1).local_weights
    w2 = bundle_from_divisor(fan, d2).local_weights
    direct_sum = EquivBundleAtFixedPoints(tuple((a, b) for a, b in zip(w1, w2)))
    lhs = localization_index(fan, direct_sum).index
    rhs = localization_index(fan, d1).index + localization_index(fan, d2).index
    assert lhs == rhs


def test_direction_independence():
    fan = load_fan("f3")
    coeffs = [3, 2, 1, 0]
    default = localization_index(fan, coeffs)
    for v in ((1, 5), (1, -7), (2, 11)):
        alt = localization_index(fan, coeffs, direction=GenericDirection(v))
        assert alt.index == default.index


def test_fixed_point_order_independence():
    rays = [[1, 0], [0, 1], [-1, 2], [0, -1]]
    cones = [[0, 1], [1, 2], [2, 3], [0, 3]]
    base = load_fan("f2")
    shuffled = Fan(
        dim=2,
        rays=tuple(tuple(r) for r in rays),
        max_cones=tuple(tuple(c) for c in reversed(cones)),
    )
    coeffs = [1, 2, 0, 1]
    assert localization_index(base, coeffs).index == localization_index(shuffled, coeffs).index


def test_jobs_parameter_is_deterministic():
    fan = load_fan("p3")
    coeffs = [1, 1, 0, 2]
    seq = localization_index(fan, coeffs, jobs=1)
    par = localization_index(fan, coeffs, jobs=4)
    assert seq.index == par.index
    assert seq.terms == par.terms


@pytest.mark.parametrize("name", ["p1", "p2", "f1"])
def test_oracle_agreement_small_sweep(name):
    fan = load_fan(name)
    for a in itertools.product(range(-1, 3), repeat=len(fan.rays)):
        if not divisor_is_nef(fan, a):
            continue
        index = localization_index(fan, a).index
        count = lattice_point_character(fan, a).total()
        assert index == count == int(index)


def test_index_is_integral_fraction():
    fan = load_fan("p2")
    res = localization_index(fan, [4, 0, 0])
    assert isinstance(res.index, Fraction)
    assert res.index.denominator == 1
    assert len(res.terms) == len(fixed_points(fan))

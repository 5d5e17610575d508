from __future__ import annotations

import json

import pytest

from braneindex import (
    EquivBundleAtFixedPoints,
    InputError,
    build_fan,
    bundle_from_divisor,
    divisor_is_nef,
    fixed_points,
    parse_fan,
    parse_fan_document,
)

from conftest import CORPUS_NAMES, load_fan


def test_parse_p1():
    fan = parse_fan('{"dim": 1, "rays": [[1], [-1]], "max_cones": [[0], [1]]}')
    assert fan.dim == 1
    assert len(fan.max_cones) == 2


def test_parse_p2():
    fan = load_fan("p2")
    assert fan.rays == ((1, 0), (0, 1), (-1, -1))
    assert len(fan.max_cones) == 3


def test_rejects_non_primitive_ray():
    with pytest.raises(InputError, match="primitive"):
        build_fan(2, [[2, 0], [0, 1], [-1, -1]], [[0, 1], [1, 2], [0, 2]])


def test_rejects_non_smooth_cone():
    with pytest.raises(InputError, match="determinant"):
        build_fan(2, [[1, 0], [1, 2]], [[0, 1]])


def test_rejects_incomplete_fan():
    with pytest.raises(InputError, match="complete"):
        build_fan(2, [[1, 0], [0, 1], [-1, -1]], [[0, 1], [1, 2]])


def test_rejects_malformed_input():
    with pytest.raises(InputError, match="JSON"):
        parse_fan("{not json")
    with pytest.raises(InputError, match="unknown"):
        parse_fan('{"dim": 1, "rays": [[1], [-1]], "max_cones": [[0], [1]], "x": 0}')
    with pytest.raises(InputError, match="missing"):
        parse_fan('{"dim": 1, "rays": [[1], [-1]]}')
    with pytest.raises(InputError, match="distinct"):
        build_fan(2, [[1, 0], [0, 1], [-1, -1]], [[0, 0], [1, 2], [0, 2]])
    with pytest.raises(InputError, match="unknown ray"):
        build_fan(1, [[1], [-1]], [[0], [7]])
    with pytest.raises(InputError, match="duplicate ray"):
        build_fan(1, [[1], [1]], [[0], [1]])


def test_divisor_payloads():
    doc = parse_fan_document(
        '{"dim": 1, "rays": [[1], [-1]], "max_cones": [[0], [1]], "divisor": [3, 0]}'
    )
    assert doc.divisor == (3, 0)
    with pytest.raises(InputError, match="coefficients"):
        parse_fan_document(
            '{"dim": 1, "rays": [[1], [-1]], "max_cones": [[0], [1]], "divisor": [3]}'
        )


def test_bundle_weights_payload():
    text = json.dumps(
        {
            "dim": 1,
            "rays": [[1], [-1]],
            "max_cones": [[0], [1]],
            "bundle_fixed_weights": [[[0], [2]], [[0], [0]]],
        }
    )
    doc = parse_fan_document(text)
    assert doc.bundle_fixed_weights.rank == 2
    with pytest.raises(InputError, match="mixed ranks"):
        EquivBundleAtFixedPoints((((0,),), ((0,), (1,))))


def test_fixed_points_p1():
    fan = load_fan("p1")
    fps = fixed_points(fan)
    assert fps[0].isotropy_weights == ((1,),)
    assert fps[1].isotropy_weights == ((-1,),)


def test_fixed_points_p2():
    fan = load_fan("p2")
    fps = {fan.max_cones[fp.cone_index]: fp.isotropy_weights for fp in fixed_points(fan)}
    assert fps[(0, 1)] == ((1, 0), (0, 1))
    # dual basis of {(0,1), (-1,-1)}
    assert fps[(1, 2)] == ((-1, 1), (-1, 0))


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_dual_basis_identity(name):
    fan = load_fan(name)
    for fp in fixed_points(fan):
        cone = fan.max_cones[fp.cone_index]
        for i, w in enumerate(fp.isotropy_weights):
            for j, ray_idx in enumerate(cone):
                ray = fan.rays[ray_idx]
                assert sum(a * b for a, b in zip(w, ray)) == int(i == j)


def test_bundle_from_divisor_examples():
    p1 = load_fan("p1")
    trivial = bundle_from_divisor(p1, [0, 0])
    assert set(trivial.local_weights) == {(0,)}
    twisted = bundle_from_divisor(p1, [3, 0])
    assert set(twisted.local_weights) == {(0,), (3,)}
    p2 = load_fan("p2")
    o1 = bundle_from_divisor(p2, [0, 0, 1])
    assert len(set(o1.local_weights)) == 3


def test_bundle_coeff_count():
    p1 = load_fan("p1")
    with pytest.raises(InputError):
        bundle_from_divisor(p1, [1])


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_cartier_gluing(name):
    """Local weights of adjacent cones agree on the shared rays."""
    fan = load_fan(name)
    coeffs = [(i % 3) - 1 for i in range(len(fan.rays))]
    bundle = bundle_from_divisor(fan, coeffs)
    for i, ci in enumerate(fan.max_cones):
        for j, cj in enumerate(fan.max_cones):
            if i >= j:
                continue
            shared = set(ci) & set(cj)
            diff = tuple(a - b for a, b in zip(bundle.local_weights[i], bundle.local_weights[j]))
            for ray_idx in shared:
                ray = fan.rays[ray_idx]
                assert sum(a * b for a, b in zip(diff, ray)) == 0


def test_reordering_invariance():
    base = build_fan(2, [[1, 0], [0, 1], [-1, -1]], [[0, 1], [1, 2], [0, 2]])
    permuted = build_fan(2, [[0, 1], [-1, -1], [1, 0]], [[1, 2], [0, 2], [0, 1]])

    def signature(fan, coeffs):
        bundle = bundle_from_divisor(fan, coeffs)
        out = set()
        for fp, m in zip(fixed_points(fan), bundle.local_weights):
            cone_rays = frozenset(fan.rays[i] for i in fan.max_cones[fp.cone_index])
            out.add((cone_rays, m, tuple(sorted(fp.isotropy_weights))))
        return out

    # same divisor expressed against each fan's own ray order
    assert signature(base, [0, 0, 1]) == signature(permuted, [0, 1, 0])


def test_nef_detection():
    f2 = load_fan("f2")
    assert divisor_is_nef(f2, [0, 0, 0, 0])
    assert divisor_is_nef(f2, [1, 1, 1, 1])
    assert not divisor_is_nef(f2, [0, 1, 0, 0])  # the negative section
    p2 = load_fan("p2")
    assert divisor_is_nef(p2, [0, 0, 2])
    assert not divisor_is_nef(p2, [0, 0, -1])

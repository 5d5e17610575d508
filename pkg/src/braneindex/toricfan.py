"""Smooth complete fans, their fixed points, and equivariant divisor data.

A fan is given by primitive ray generators in Z^n and full-dimensional
cones listed as 0-based ray index sets.  Smoothness (each cone a lattice
basis) makes every dual basis integral, so fixed-point data stays in exact
integer arithmetic throughout.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Optional, Sequence

from .errors import InputError

IntVector = tuple[int, ...]

_FAN_FIELDS = {"dim", "rays", "max_cones", "divisor", "bundle_fixed_weights"}


@dataclass(frozen=True)
class Fan:
    dim: int
    rays: tuple[IntVector, ...]
    max_cones: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class FixedPoint:
    """Torus fixed point of the cone max_cones[cone_index].

    isotropy_weights[i] is dual to the cone's i-th ray generator.
    """

    cone_index: int
    isotropy_weights: tuple[IntVector, ...]


@dataclass(frozen=True)
class EquivLineBundle:
    """Divisor coefficients plus the solved local weight on each maximal cone."""

    divisor_coeffs: tuple[int, ...]
    local_weights: tuple[IntVector, ...]


@dataclass(frozen=True)
class EquivBundleAtFixedPoints:
    """Rank-m bundle described by its m fiber weights at every fixed point."""

    fiber_weights: tuple[tuple[IntVector, ...], ...]

    def __post_init__(self):
        ranks = {len(ws) for ws in self.fiber_weights}
        if len(ranks) > 1:
            raise InputError(f"fiber weight lists have mixed ranks {sorted(ranks)}")

    @property
    def rank(self) -> int:
        return len(self.fiber_weights[0]) if self.fiber_weights else 0


# ---------------------------------------------------------------------------
# exact linear algebra on small integer matrices


def _det(rows: Sequence[Sequence[int]]) -> Fraction:
    n = len(rows)
    m = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] * inv
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return det


def _inverse(rows: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(rows)
    work = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
            for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            raise InputError("singular cone matrix")
        work[col], work[pivot] = work[pivot], work[col]
        inv = 1 / work[col][col]
        work[col] = [x * inv for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [a - f * b for a, b in zip(work[r], work[col])]
    return [row[n:] for row in work]


def _dual_basis(rays: Sequence[IntVector]) -> tuple[IntVector, ...]:
    """Rows w_i with <w_i, v_j> = delta_ij; integral by unimodularity."""
    inv = _inverse(rays)
    n = len(rays)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            x = inv[j][i]
            if x.denominator != 1:
                raise InputError("cone is not unimodular, dual basis not integral")
            row.append(int(x))
        out.append(tuple(row))
    return tuple(out)


# ---------------------------------------------------------------------------
# construction and validation


def build_fan(dim: int, rays: Sequence[Sequence[int]], max_cones: Sequence[Sequence[int]]) -> Fan:
    """Validate and freeze fan data: primitive rays, unimodular full cones,
    and a cheap completeness certificate (facets paired, generic point covered once)."""
    if dim < 1:
        raise InputError(f"fan dimension must be positive, got {dim}")
    clean_rays: list[IntVector] = []
    for idx, ray in enumerate(rays):
        v = tuple(int(x) for x in ray)
        if len(v) != dim:
            raise InputError(f"ray {idx} has length {len(v)}, expected {dim}")
        g = 0
        for x in v:
            g = gcd(g, x)
        if g != 1:
            raise InputError(f"ray {idx} = {list(v)} is not primitive (gcd {g})")
        clean_rays.append(v)
    if len(set(clean_rays)) != len(clean_rays):
        raise InputError("duplicate ray generators")

    clean_cones: list[tuple[int, ...]] = []
    for cdx, cone in enumerate(max_cones):
        idxs = tuple(int(i) for i in cone)
        if len(idxs) != dim or len(set(idxs)) != dim:
            raise InputError(f"cone {cdx} must list {dim} distinct ray indices")
        for i in idxs:
            if not 0 <= i < len(clean_rays):
                raise InputError(f"cone {cdx} references unknown ray index {i}")
        det = _det([clean_rays[i] for i in idxs])
        if det not in (1, -1):
            raise InputError(
                f"cone {cdx} with rays {list(idxs)} is not smooth (determinant {det})"
            )
        clean_cones.append(idxs)
    if not clean_cones:
        raise InputError("fan has no maximal cones")
    if len({tuple(sorted(c)) for c in clean_cones}) != len(clean_cones):
        raise InputError("duplicate maximal cones")

    _check_completeness(dim, clean_rays, clean_cones)
    return Fan(dim=dim, rays=tuple(clean_rays), max_cones=tuple(clean_cones))


def _check_completeness(dim, rays, cones) -> None:
    # every facet of a maximal cone must be shared by exactly two of them
    facet_count: dict[frozenset, int] = {}
    for cone in cones:
        for drop in cone:
            key = frozenset(i for i in cone if i != drop)
            facet_count[key] = facet_count.get(key, 0) + 1
    bad = {k: c for k, c in facet_count.items() if c != 2}
    if bad:
        sample = sorted(next(iter(bad)))
        raise InputError(
            f"fan is not complete: facet {sample} is on {bad[frozenset(sample)]} maximal cones"
        )
    # a generic rational point must land strictly inside exactly one cone
    duals = [_dual_basis([rays[i] for i in cone]) for cone in cones]
    for s in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29):
        probe = tuple(s**i for i in range(dim))
        strict = 0
        touched_wall = False
        for dual in duals:
            coeffs = [sum(a * b for a, b in zip(w, probe)) for w in dual]
            if all(c > 0 for c in coeffs):
                strict += 1
            elif all(c >= 0 for c in coeffs):
                touched_wall = True
        if touched_wall:
            continue
        if strict != 1:
            raise InputError(f"fan is not complete: generic point lies in {strict} maximal cones")
        return
    raise InputError("could not certify completeness with the deterministic probes")


def parse_fan(text: str) -> Fan:
    """Parse the JSON fan format and validate it."""
    return parse_fan_document(text).fan


@dataclass(frozen=True)
class FanDocument:
    fan: Fan
    divisor: Optional[tuple[int, ...]]
    bundle_fixed_weights: Optional[EquivBundleAtFixedPoints]


def parse_fan_document(text: str) -> FanDocument:
    """Parse a fan file, including the optional divisor / fiber-weight payloads."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"fan file is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("fan file must contain a JSON object")
    unknown = set(data) - _FAN_FIELDS
    if unknown:
        raise InputError(f"unknown fan file fields: {sorted(unknown)}")
    for field in ("dim", "rays", "max_cones"):
        if field not in data:
            raise InputError(f"fan file is missing required field {field!r}")
    fan = build_fan(data["dim"], data["rays"], data["max_cones"])

    divisor = None
    if "divisor" in data:
        divisor = tuple(int(x) for x in data["divisor"])
        if len(divisor) != len(fan.rays):
            raise InputError(
                f"divisor has {len(divisor)} coefficients for {len(fan.rays)} rays"
            )
    weights = None
    if "bundle_fixed_weights" in data:
        raw = data["bundle_fixed_weights"]
        if len(raw) != len(fan.max_cones):
            raise InputError(
                f"bundle_fixed_weights lists {len(raw)} fixed points, fan has {len(fan.max_cones)}"
            )
        per_point = []
        for entry in raw:
            vecs = []
            for vec in entry:
                v = tuple(int(x) for x in vec)
                if len(v) != fan.dim:
                    raise InputError(f"fiber weight {list(v)} has wrong length")
                vecs.append(v)
            per_point.append(tuple(vecs))
        weights = EquivBundleAtFixedPoints(tuple(per_point))
    return FanDocument(fan=fan, divisor=divisor, bundle_fixed_weights=weights)


# ---------------------------------------------------------------------------
# fixed points and divisor data


@lru_cache(maxsize=None)
def fixed_points(fan: Fan) -> tuple[FixedPoint, ...]:
    """One fixed point per maximal cone, with the dual-basis isotropy weights."""
    out = []
    for idx, cone in enumerate(fan.max_cones):
        dual = _dual_basis([fan.rays[i] for i in cone])
        out.append(FixedPoint(cone_index=idx, isotropy_weights=dual))
    return tuple(out)


def bundle_from_divisor(fan: Fan, coeffs: Sequence[int]) -> EquivLineBundle:
    """Equivariant line bundle of the divisor sum_rho a_rho D_rho.

    The local weight on a cone solves <m, v_rho> = a_rho over its rays, i.e.
    m = sum a_rho w_rho in the dual basis; this sign makes the localization
    index of O(d) on the projective line equal d + 1.
    """
    a = tuple(int(x) for x in coeffs)
    if len(a) != len(fan.rays):
        raise InputError(f"expected {len(fan.rays)} divisor coefficients, got {len(a)}")
    locals_: list[IntVector] = []
    for fp in fixed_points(fan):
        cone = fan.max_cones[fp.cone_index]
        m = tuple(
            sum(a[ray] * w[j] for ray, w in zip(cone, fp.isotropy_weights))
            for j in range(fan.dim)
        )
        locals_.append(m)
    return EquivLineBundle(divisor_coeffs=a, local_weights=tuple(locals_))


def divisor_is_nef(fan: Fan, coeffs: Sequence[int]) -> bool:
    """Convexity test: every cone's vertex satisfies all ray inequalities."""
    a = tuple(int(x) for x in coeffs)
    if len(a) != len(fan.rays):
        raise InputError(f"expected {len(fan.rays)} divisor coefficients, got {len(a)}")
    bundle = bundle_from_divisor(fan, a)
    for m in bundle.local_weights:
        # vertex of the section polytope is -m
        for ray, coeff in zip(fan.rays, a):
            if -sum(x * y for x, y in zip(m, ray)) < -coeff:
                return False
    return True

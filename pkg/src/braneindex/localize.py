"""Equivariant charges at fixed points and the localization index.

The charge of a bundle brane restricts at each fixed point to an exponential
sum of fiber weights against the factored Todd denominator built from the
isotropy weights.  Restricting to a generic one-parameter subgroup turns each
fixed-point contribution into an exact rational function of q, and the index
is the exact value of their sum at q = 1.  The Todd factor is never expanded
as a series; it stays in factored form inside the denominators.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Optional, Sequence, Union

from .charseries import (
    ExpSum,
    GenericDirection,
    RatFunc,
    choose_generic_direction,
    localization_term,
    sum_and_evaluate_at_one,
)
from .errors import DomainError, InputError
from .toricfan import (
    EquivBundleAtFixedPoints,
    EquivLineBundle,
    Fan,
    IntVector,
    bundle_from_divisor,
    fixed_points,
)

BundleLike = Union[EquivBundleAtFixedPoints, EquivLineBundle, Sequence[int]]


@dataclass(frozen=True)
class ChargeAtFixedPoints:
    """Per fixed point: the Chern exponential sum and the factored Todd data."""

    chern: tuple[ExpSum, ...]
    todd_denominator_data: tuple[tuple[IntVector, ...], ...]


@dataclass(frozen=True)
class LocalizationResult:
    terms: tuple[RatFunc, ...]
    index: Fraction
    direction: GenericDirection


def _fixed_point_weights(fan: Fan, bundle: BundleLike) -> tuple[tuple[IntVector, ...], ...]:
    if isinstance(bundle, EquivBundleAtFixedPoints):
        if len(bundle.fiber_weights) != len(fan.max_cones):
            raise InputError(
                f"bundle lists {len(bundle.fiber_weights)} fixed points, fan has {len(fan.max_cones)}"
            )
        for ws in bundle.fiber_weights:
            for w in ws:
                if len(w) != fan.dim:
                    raise InputError(f"fiber weight {list(w)} has wrong length")
        return bundle.fiber_weights
    if isinstance(bundle, EquivLineBundle):
        return tuple((m,) for m in bundle.local_weights)
    # a bare coefficient list means the divisor sum a_rho D_rho
    return tuple((m,) for m in bundle_from_divisor(fan, bundle).local_weights)


def chern_character_at_fixed_points(fan: Fan, bundle: BundleLike) -> tuple[ExpSum, ...]:
    """At each fixed point, the sum of exponentials of the fiber weights."""
    out = []
    for ws in _fixed_point_weights(fan, bundle):
        acc = ExpSum.zero()
        for w in ws:
            acc = acc + ExpSum.monomial(w)
        out.append(acc)
    return tuple(out)


def charge_at_fixed_points(fan: Fan, bundle: BundleLike) -> ChargeAtFixedPoints:
    return ChargeAtFixedPoints(
        chern=chern_character_at_fixed_points(fan, bundle),
        todd_denominator_data=tuple(fp.isotropy_weights for fp in fixed_points(fan)),
    )


def localization_index(
    fan: Fan,
    bundle: BundleLike,
    direction: Optional[GenericDirection] = None,
    jobs: int = 1,
) -> LocalizationResult:
    """Exact equivariant index as a fixed-point sum.

    Each fixed point contributes (sum_j q^<m_j,v>) / prod_i (1 - q^-<w_i,v>);
    the terms are reported for inspection and their exact sum at q = 1 is the
    index.  A non-integer value signals inconsistent bundle data to callers.
    """
    weights = _fixed_point_weights(fan, bundle)
    points = fixed_points(fan)
    if direction is None:
        direction = choose_generic_direction(
            [w for fp in points for w in fp.isotropy_weights]
        )

    def term(i: int) -> RatFunc:
        return localization_term(weights[i], points[i].isotropy_weights, direction)

    indices = range(len(points))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            terms = tuple(pool.map(term, indices))
    else:
        terms = tuple(term(i) for i in indices)
    index = sum_and_evaluate_at_one(terms)
    return LocalizationResult(terms=terms, index=index, direction=direction)


# ---------------------------------------------------------------------------
# lattice-point oracle


def _polytope_vertices(fan: Fan, coeffs: Sequence[int]) -> list[tuple[Fraction, ...]]:
    """All vertices of {u : <u, v_rho> >= -a_rho}, by basic-solution enumeration."""
    n = fan.dim
    rays = fan.rays
    a = list(coeffs)
    verts: set[tuple[Fraction, ...]] = set()
    for subset in combinations(range(len(rays)), n):
        u = _solve_square([rays[i] for i in subset], [Fraction(-a[i]) for i in subset])
        if u is None:
            continue
        if all(
            sum(x * y for x, y in zip(u, ray)) >= -c
            for ray, c in zip(rays, a)
        ):
            verts.add(u)
    return sorted(verts)


def _solve_square(rows, rhs) -> Optional[tuple[Fraction, ...]]:
    n = len(rows)
    m = [[Fraction(x) for x in row] + [rhs[i]] for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return None
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return tuple(m[i][n] for i in range(n))


def _has_unbounded_direction(fan: Fan) -> bool:
    """True when some nonzero u satisfies <u, v_rho> >= 0 for every ray."""
    n = fan.dim
    rays = fan.rays
    if n == 1:
        candidates = [(1,), (-1,)]
    else:
        candidates = []
        for subset in combinations(range(len(rays)), n - 1):
            for u in _nullspace_directions([rays[i] for i in subset]):
                candidates.append(u)
    for u in candidates:
        for s in (1, -1):
            v = tuple(s * x for x in u)
            if any(v) and all(sum(a * b for a, b in zip(v, ray)) >= 0 for ray in rays):
                return True
    return False


def _nullspace_directions(rows) -> list[IntVector]:
    """Integer spanning vectors of the common kernel of the given row vectors."""
    n = len(rows[0]) if rows else 0
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    out = []
    for fc in free:
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            vec[pc] = -m[row_idx][fc]
        den = 1
        for x in vec:
            den = den * x.denominator // _gcd_int(den, x.denominator)
        out.append(tuple(int(x * den) for x in vec))
    return out


def _gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def lattice_point_character(fan: Fan, divisor_coeffs: Sequence[int]) -> ExpSum:
    """Exponential sum over the lattice points of the divisor's section polytope.

    The polytope {u : <u, v_rho> >= -a_rho} must be bounded; points are found
    by scanning the integer bounding box of its vertices.
    """
    a = tuple(int(x) for x in divisor_coeffs)
    if len(a) != len(fan.rays):
        raise InputError(f"expected {len(fan.rays)} divisor coefficients, got {len(a)}")
    if _has_unbounded_direction(fan):
        raise DomainError("section polytope is unbounded for this fan")
    verts = _polytope_vertices(fan, a)
    if not verts:
        return ExpSum.zero()
    n = fan.dim
    lo = [min(v[i] for v in verts) for i in range(n)]
    hi = [max(v[i] for v in verts) for i in range(n)]
    ranges = []
    for i in range(n):
        start = lo[i].numerator // lo[i].denominator  # floor
        stop = -((-hi[i].numerator) // hi[i].denominator)  # ceil
        ranges.append(range(start, stop + 1))
    terms: dict[IntVector, int] = {}
    rays = fan.rays
    for point in product(*ranges):
        ok = True
        for ray, coeff in zip(rays, a):
            if sum(x * y for x, y in zip(point, ray)) < -coeff:
                ok = False
                break
        if ok:
            terms[point] = 1
    return ExpSum(terms)


def koszul_charge(r: int) -> ExpSum:
    """Alternating binomial charge of a rank-r regular-sequence quotient.

    sum_k (-1)^k C(r, k) e^0 collapses to (1 - 1)^r = 0, so the result is
    always the zero sum; computing it term by term keeps the cancellation
    checkable.
    """
    if r < 1:
        raise DomainError(f"Koszul rank must be at least 1, got {r}")
    acc = ExpSum.zero()
    origin = (0,)
    for k in range(r + 1):
        acc = acc + ExpSum.monomial(origin, (-1) ** k * comb(r, k))
    return acc

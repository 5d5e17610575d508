"""Cohomology of equivariant bundles on flag quotients and string spectra.

A weight with zero coordinates on the Levi's simple roots defines a character
of the parabolic, hence a line bundle on the quotient.  Its cohomology is
nonzero in at most one degree: the count of positive roots pairing negatively
with the rho-shifted weight.  Strings between vector-bundle branes reduce to
a sum of such line-bundle computations over a Levi tensor decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import DomainError, InputError
from .rootsys import (
    RootSystem,
    Weight,
    count_negative_roots,
    is_regular,
    make_dominant,
    rho,
    weyl_dimension,
)
from .tensorrep import dual_irrep, tensor_decompose


@dataclass(frozen=True)
class ParabolicSubset:
    """Simple-root indices of the Levi factor; the empty set is the Borel case."""

    ambient: RootSystem
    levi_simple_roots: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "levi_simple_roots", frozenset(int(i) for i in self.levi_simple_roots))
        for i in self.levi_simple_roots:
            if not 1 <= i <= self.ambient.rank:
                raise InputError(f"Levi index {i} out of range 1..{self.ambient.rank}")


@dataclass(frozen=True)
class CohomologyResult:
    """Either identically zero, or concentrated in a single degree."""

    vanishes_identically: bool
    degree: Optional[int] = None
    highest_weight: Optional[Weight] = None
    dimension: Optional[int] = None

    def __post_init__(self):
        populated = (self.degree is not None and self.highest_weight is not None
                     and self.dimension is not None)
        if self.vanishes_identically == populated:
            raise InputError("result must be either vanishing or a populated triple")

    @classmethod
    def zero(cls) -> "CohomologyResult":
        return cls(vanishes_identically=True)

    @classmethod
    def concentrated(cls, degree: int, highest_weight: Weight, dimension: int) -> "CohomologyResult":
        return cls(False, degree, highest_weight, dimension)


def _check_ambient(rs: RootSystem, q: ParabolicSubset) -> None:
    if q.ambient is not rs and q.ambient != rs:
        raise InputError("parabolic subset belongs to a different root system")


def validate_q_character(rs: RootSystem, q: ParabolicSubset, xi: Weight) -> bool:
    """A weight extends to a character of the parabolic iff it vanishes on the Levi."""
    _check_ambient(rs, q)
    xi = tuple(int(x) for x in xi)
    if len(xi) != rs.rank:
        raise InputError(f"weight length {len(xi)} does not match rank {rs.rank}")
    return all(xi[i - 1] == 0 for i in q.levi_simple_roots)


def line_bundle_cohomology(rs: RootSystem, q: ParabolicSubset, xi: Weight) -> CohomologyResult:
    """Cohomology of the line bundle attached to the character xi.

    Vanishes identically when xi + rho is singular; otherwise lives in degree
    p(xi) = #{positive roots pairing negatively with xi + rho} and carries the
    irreducible with highest weight w(xi + rho) - rho.
    """
    if not validate_q_character(rs, q, xi):
        raise DomainError(f"{tuple(xi)} is not a character of the parabolic (nonzero on the Levi)")
    shifted = tuple(x + 1 for x in xi)
    if not is_regular(rs, shifted):
        return CohomologyResult.zero()
    degree = count_negative_roots(rs, shifted)
    _, dom = make_dominant(rs, shifted)
    hw = tuple(a - b for a, b in zip(dom, rho(rs)))
    return CohomologyResult.concentrated(degree, hw, weyl_dimension(rs, hw))


def string_space_line_bundles(
    rs: RootSystem, q: ParabolicSubset, mu: Weight, lam: Weight
) -> CohomologyResult:
    """Spectrum of strings between the line-bundle branes labeled mu and lam.

    The nonzero degree, when present, is the unique ghost number; the
    dimension and highest weight describe the vertex-operator representation.
    """
    for name, w in (("mu", mu), ("lambda", lam)):
        if not validate_q_character(rs, q, w):
            raise DomainError(f"{name}={tuple(w)} is not a character of the parabolic")
    xi = tuple(b - a for a, b in zip(mu, lam))
    return line_bundle_cohomology(rs, q, xi)


def ext_dim_vector_bundles(
    rs: RootSystem, q: ParabolicSubset, alpha: Weight, beta: Weight, k: int
) -> int:
    """Dimension of the ghost-number-k string space between the homogeneous
    bundles induced from the Levi irreducibles alpha and beta.

    Decomposes dual(alpha) (x) beta inside the Levi, then adds the dimension
    of each summand's line-of-sight cohomology landing in degree k; summands
    with singular rho-shift contribute nothing.
    """
    _check_ambient(rs, q)
    if k < 0:
        return 0
    dual = dual_irrep(q, alpha)  # raises DomainError unless Levi-dominant
    decomposition = tensor_decompose(q, dual, beta)
    total = 0
    for tau, mult in decomposition:
        shifted = tuple(x + 1 for x in tau)
        if not is_regular(rs, shifted):
            continue
        if count_negative_roots(rs, shifted) != k:
            continue
        _, dom = make_dominant(rs, shifted)
        hw = tuple(a - 1 for a in dom)
        total += mult * weyl_dimension(rs, hw)
    return total

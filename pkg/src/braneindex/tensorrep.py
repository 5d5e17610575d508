"""Weight diagrams and tensor decompositions, for a full system or a Levi.

A Levi irreducible is labeled by an ambient weight that is dominant on the
Levi's simple-root indices; the remaining coordinates ride along under Levi
reflections and encode the central character.  Passing a plain RootSystem
selects the full system.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .errors import DomainError, Error
from .rootsys import (
    RootSystem,
    Weight,
    levi_positive_roots,
    pair_with_root,
    reflect_simple,
    weyl_dimension,
)


@dataclass
class WeightMultiset:
    """Weights of a representation with their multiplicities."""

    entries: dict[Weight, int]

    def total(self) -> int:
        return sum(self.entries.values())

    def __iter__(self):
        return iter(sorted(self.entries.items()))


@dataclass
class TensorDecomposition:
    """Multiplicities of the irreducible summands of a tensor product."""

    summands: dict[Weight, int]

    def __iter__(self):
        return iter(sorted(self.summands.items()))


SystemLike = Union[RootSystem, "object"]


@dataclass(frozen=True)
class _System:
    rs: RootSystem
    indices: tuple[int, ...]  # 1-based simple-root indices, sorted


def _as_system(system: SystemLike) -> _System:
    if isinstance(system, _System):
        return system
    if isinstance(system, RootSystem):
        return _System(system, tuple(range(1, system.rank + 1)))
    ambient = getattr(system, "ambient", None)
    levi = getattr(system, "levi_simple_roots", None)
    if isinstance(ambient, RootSystem) and levi is not None:
        return _System(ambient, tuple(sorted(levi)))
    raise DomainError(f"cannot interpret {system!r} as a root system or Levi")


def _is_dominant(sys: _System, w: Weight) -> bool:
    return all(w[i - 1] >= 0 for i in sys.indices)


def _require_dominant(sys: _System, w: Weight) -> Weight:
    w = tuple(int(x) for x in w)
    if len(w) != sys.rs.rank:
        raise DomainError(f"weight length {len(w)} does not match rank {sys.rs.rank}")
    if not _is_dominant(sys, w):
        raise DomainError(f"weight {w} is not dominant for the system")
    return w


def _dominantize(sys: _System, w: Weight) -> tuple[Weight, int]:
    """Dominant conjugate under the (Levi) Weyl group and the number of
    reflections used, which equals the Weyl length when w is regular."""
    count = 0
    while True:
        neg = next((i for i in sys.indices if w[i - 1] < 0), None)
        if neg is None:
            return w, count
        w = reflect_simple(sys.rs, neg, w)
        count += 1


def _is_singular(sys: _System, dom: Weight) -> bool:
    # valid only on a dominant representative
    return any(dom[i - 1] == 0 for i in sys.indices)


def _orbit(sys: _System, w: Weight) -> list[Weight]:
    seen = {w}
    frontier = [w]
    while frontier:
        nxt = []
        for v in frontier:
            for i in sys.indices:
                r = reflect_simple(sys.rs, i, v)
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
    return sorted(seen)


@lru_cache(maxsize=None)
def _dominant_multiplicities(sys: _System, lam: Weight) -> tuple[tuple[Weight, int], ...]:
    """Freudenthal recursion over the dominant weights below lam.

    mult(mu) * ((lam+rho, lam+rho) - (mu+rho, mu+rho)) =
        2 * sum over positive roots b, k >= 1 of mult(mu + k b) * (mu + k b, b),
    everything scaled by the common integer denominator of the pairing.
    """
    rs = sys.rs
    roots = levi_positive_roots(rs, sys.indices)

    # dominant candidates reachable from lam by subtracting positive roots
    # while staying dominant; track lam - mu in root coordinates
    offsets: dict[Weight, tuple[int, ...]] = {lam: tuple(0 for _ in range(rs.rank))}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            off = offsets[mu]
            for wc, rc in roots:
                cand = tuple(a - b for a, b in zip(mu, wc))
                if cand not in offsets and _is_dominant(sys, cand):
                    offsets[cand] = tuple(a + b for a, b in zip(off, rc))
                    nxt.append(cand)
        frontier = nxt

    by_height = sorted(offsets.items(), key=lambda kv: (sum(kv[1]), kv[0]))
    mults: dict[Weight, int] = {}
    for mu, off in by_height:
        if not mults:
            mults[mu] = 1
            continue
        num = 0
        for wc, rc in roots:
            k = 1
            while True:
                nu = tuple(a + k * b for a, b in zip(mu, wc))
                dom, _ = _dominantize(sys, nu)
                m = mults.get(dom, 0)
                if m == 0:
                    break
                num += m * pair_with_root(rs, nu, rc)
                k += 1
        # denominator (lam + mu + 2 rho, lam - mu) in the same scaling
        shifted = tuple(a + b + 2 for a, b in zip(lam, mu))
        den = pair_with_root(rs, shifted, off)
        if den <= 0 or (2 * num) % den:
            raise Error("Freudenthal recursion produced a non-integer multiplicity")
        m = 2 * num // den
        if m:
            mults[mu] = m
    return tuple(sorted(mults.items()))


def weight_multiplicities(system: SystemLike, lam: Weight) -> WeightMultiset:
    """Full weight diagram of the irreducible with highest weight lam."""
    sys = _as_system(system)
    lam = _require_dominant(sys, lam)
    entries: dict[Weight, int] = {}
    for mu, m in _dominant_multiplicities(sys, lam):
        for w in _orbit(sys, mu):
            entries[w] = m
    return WeightMultiset(entries)


def dual_irrep(system: SystemLike, alpha: Weight) -> Weight:
    """Highest weight of the dual: the dominant conjugate of -alpha."""
    sys = _as_system(system)
    alpha = _require_dominant(sys, alpha)
    dom, _ = _dominantize(sys, tuple(-x for x in alpha))
    return dom


def irrep_dimension(system: SystemLike, lam: Weight) -> int:
    sys = _as_system(system)
    lam = _require_dominant(sys, lam)
    return weyl_dimension(sys.rs, lam, sys.indices)


def tensor_decompose(system: SystemLike, alpha: Weight, beta: Weight) -> TensorDecomposition:
    """Decompose the tensor product of two irreducibles.

    Racah-Speiser: run over the weight diagram of the smaller factor, shift
    the other highest weight by rho, reflect to the dominant chamber and
    accumulate signed multiplicities; terms on a chamber wall drop out.
    """
    sys = _as_system(system)
    alpha = _require_dominant(sys, alpha)
    beta = _require_dominant(sys, beta)
    if irrep_dimension(sys, alpha) > irrep_dimension(sys, beta):
        alpha, beta = beta, alpha
    acc: dict[Weight, int] = {}
    for mu, n in weight_multiplicities(sys, alpha):
        shifted = tuple(b + 1 + m for b, m in zip(beta, mu))
        dom, flips = _dominantize(sys, shifted)
        if _is_singular(sys, dom):
            continue
        key = tuple(x - 1 for x in dom)
        acc[key] = acc.get(key, 0) + (n if flips % 2 == 0 else -n)
    summands = {k: v for k, v in acc.items() if v}
    if any(v < 0 for v in summands.values()):
        raise Error("tensor decomposition produced a negative multiplicity")
    return TensorDecomposition(summands)

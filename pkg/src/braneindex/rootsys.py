"""Simple root systems in fundamental-weight coordinates.

Weights are integer tuples of length ``rank`` holding coefficients on the
fundamental weights.  A simple root then appears as the corresponding row of
the Cartan matrix, and the simple reflection ``s_i`` acts by

    s_i(w) = w - w[i] * alpha_i,

which keeps every computation in integer arithmetic.  The invariant bilinear
form is normalized so that long roots have squared length 2; only signs and
vanishing of pairings are consumed downstream, so this differs from the
Killing form by an irrelevant positive scalar.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DomainError, Error, InputError

Weight = tuple[int, ...]
WeylWord = tuple[int, ...]

# number of positive roots per classical family, used as a hard cap on the
# closure loop so a bad Cartan table fails loudly instead of looping
_POSITIVE_COUNTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E6": lambda n: 36,
    "E7": lambda n: 63,
    "E8": lambda n: 120,
    "F4": lambda n: 24,
    "G2": lambda n: 6,
}

_RANK_RANGE = {
    "A": (1, None),
    "B": (2, None),
    "C": (2, None),
    "D": (3, None),
    "E6": (6, 6),
    "E7": (7, 7),
    "E8": (8, 8),
    "F4": (4, 4),
    "G2": (2, 2),
}


@dataclass(frozen=True)
class RootSystem:
    """A simple root system with its pairing data, immutable after build."""

    family: str
    rank: int
    cartan_matrix: tuple[tuple[int, ...], ...]
    simple_roots: tuple[Weight, ...]
    positive_roots: tuple[Weight, ...]
    pairing_matrix: tuple[tuple[Fraction, ...], ...]
    # root coordinates of positive_roots (same order); private convenience
    positive_root_coords: tuple[tuple[int, ...], ...]
    # scaled root half-lengths: d_i = root_length_num[i] / root_length_den
    root_length_num: tuple[int, ...]
    root_length_den: int


def _cartan_matrix(family: str, rank: int) -> list[list[int]]:
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def edge(i: int, j: int, aij: int = -1, aji: int = -1) -> None:
        a[i][j] = aij
        a[j][i] = aji

    if family == "A":
        for i in range(rank - 1):
            edge(i, i + 1)
    elif family == "B":
        for i in range(rank - 2):
            edge(i, i + 1)
        edge(rank - 2, rank - 1, -2, -1)  # last simple root is short
    elif family == "C":
        for i in range(rank - 2):
            edge(i, i + 1)
        edge(rank - 2, rank - 1, -1, -2)  # last simple root is long
    elif family == "D":
        for i in range(rank - 2):
            edge(i, i + 1)
        # remove the final path edge and fork instead
        edge(rank - 2, rank - 1, 0, 0)
        edge(rank - 3, rank - 1)
    elif family in ("E6", "E7", "E8"):
        for i in range(rank - 2):
            edge(i, i + 1)
        edge(rank - 4, rank - 1)
    elif family == "F4":
        edge(0, 1)
        edge(1, 2, -2, -1)  # roots 3 and 4 are short
        edge(2, 3)
    elif family == "G2":
        edge(0, 1, -1, -3)  # first simple root is short
    return a


def _symmetrizer(cartan: Sequence[Sequence[int]]) -> list[Fraction]:
    """Half squared lengths d_i with d_i * a[i][j] = d_j * a[j][i], max = 1."""
    rank = len(cartan)
    d: list[Optional[Fraction]] = [None] * rank
    d[0] = Fraction(1)
    pending = [0]
    while pending:
        i = pending.pop()
        for j in range(rank):
            if cartan[i][j] != 0 and i != j and d[j] is None:
                d[j] = d[i] * cartan[j][i] / cartan[i][j]
                pending.append(j)
    if any(x is None for x in d):
        raise Error("Dynkin diagram is not connected")
    top = max(d)
    return [x / top for x in d]


def _invert(mat: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(mat)
    work = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            raise Error("singular matrix")
        work[col], work[pivot] = work[pivot], work[col]
        inv = 1 / work[col][col]
        work[col] = [x * inv for x in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return [row[n:] for row in work]


def _close_positive_roots(cartan: Sequence[Sequence[int]], cap: int):
    """Generate all positive roots by walking root strings upward.

    For a root b and simple root a_i, b + a_i is a root exactly when the
    downward string length p = max{k : b - k a_i is a root} exceeds the
    Cartan pairing b[i].
    """
    rank = len(cartan)
    by_root_coords: dict[tuple[int, ...], Weight] = {}
    order: list[tuple[tuple[int, ...], Weight]] = []
    level = []
    for i in range(rank):
        rc = tuple(int(i == j) for j in range(rank))
        wc = tuple(cartan[i])
        by_root_coords[rc] = wc
        level.append((rc, wc))
    order.extend(level)
    while level:
        nxt = []
        for rc, wc in level:
            for i in range(rank):
                down = list(rc)
                p = 0
                while True:
                    down[i] -= 1
                    if tuple(down) not in by_root_coords:
                        break
                    p += 1
                if p - wc[i] > 0:
                    up = list(rc)
                    up[i] += 1
                    key = tuple(up)
                    if key not in by_root_coords:
                        new_wc = tuple(w + c for w, c in zip(wc, cartan[i]))
                        by_root_coords[key] = new_wc
                        nxt.append((key, new_wc))
                        if len(by_root_coords) > cap:
                            raise Error("positive-root closure exceeded the classical count")
        order.extend(sorted(nxt))
        level = nxt
    return order


def build_root_system(family: str, rank: int) -> RootSystem:
    """Construct the root system of the given family and rank.

    Raises InputError when (family, rank) is not a valid pair.  D at rank 3
    is accepted; its diagram is the A3 one relabeled.
    """
    if family not in _RANK_RANGE:
        raise InputError(f"unknown family {family!r}")
    lo, hi = _RANK_RANGE[family]
    if rank < lo or (hi is not None and rank > hi):
        raise InputError(f"rank {rank} is invalid for family {family}")

    cartan = _cartan_matrix(family, rank)
    cap = _POSITIVE_COUNTS[family](rank)
    closure = _close_positive_roots(cartan, cap)
    if len(closure) != cap:
        raise Error(f"{family}{rank}: found {len(closure)} positive roots, expected {cap}")

    d = _symmetrizer(cartan)
    den = 1
    for x in d:
        den = den * x.denominator // _gcd(den, x.denominator)
    d_num = tuple(int(x * den) for x in d)

    cartan_frac = [[Fraction(x) for x in row] for row in cartan]
    inv = _invert(cartan_frac)
    pairing = tuple(
        tuple(inv[j][i] * d[i] for j in range(rank)) for i in range(rank)
    )

    root_coords = tuple(rc for rc, _ in closure)
    pos = tuple(wc for _, wc in closure)

    # consistency guards against table typos
    for i in range(rank):
        for j in range(rank):
            if pairing[i][j] != pairing[j][i]:
                raise Error("pairing matrix is not symmetric")
    two_rho = tuple(sum(col) for col in zip(*pos))
    if two_rho != tuple(2 for _ in range(rank)):
        raise Error("positive roots do not sum to 2*rho")
    # (b, b) = sum_j m_j d_j w_j for b with root coords m and weight coords w
    norms = {
        sum(m * dn * w for m, dn, w in zip(rc, d_num, wc))
        for wc, rc in zip(pos, root_coords)
    }
    if max(norms) != 2 * den:
        raise Error("long-root normalization is off")

    return RootSystem(
        family=family,
        rank=rank,
        cartan_matrix=tuple(tuple(row) for row in cartan),
        simple_roots=tuple(tuple(row) for row in cartan),
        positive_roots=pos,
        pairing_matrix=pairing,
        positive_root_coords=root_coords,
        root_length_num=d_num,
        root_length_den=den,
    )


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _check_length(rs_like, weight: Sequence[int]) -> Weight:
    w = tuple(int(x) for x in weight)
    if len(w) != rs_like.rank:
        raise InputError(f"weight length {len(w)} does not match rank {rs_like.rank}")
    return w


def rho(rs: RootSystem) -> Weight:
    """The Weyl vector: all-ones in fundamental-weight coordinates."""
    return tuple(1 for _ in range(rs.rank))


def inner_product(rs: RootSystem, lam: Sequence[int], mu: Sequence[int]) -> Fraction:
    """Invariant symmetric pairing, long roots normalized to squared length 2."""
    a = _check_length(rs, lam)
    b = _check_length(rs, mu)
    total = Fraction(0)
    for i, ai in enumerate(a):
        if ai:
            row = rs.pairing_matrix[i]
            total += ai * sum(row[j] * bj for j, bj in enumerate(b) if bj)
    return total


def pair_with_root(rs: RootSystem, lam: Sequence[int], root_coords: Sequence[int]) -> int:
    """Scaled pairing (lam, beta) * root_length_den for beta given in root coordinates."""
    return sum(
        m * d * l
        for m, d, l in zip(root_coords, rs.root_length_num, lam)
        if m
    )


def is_regular(rs: RootSystem, lam: Sequence[int]) -> bool:
    """True when lam pairs nonzero with every positive root."""
    w = _check_length(rs, lam)
    return all(pair_with_root(rs, w, rc) != 0 for rc in rs.positive_root_coords)


def is_dominant(rs: RootSystem, lam: Sequence[int], levi: Optional[Iterable[int]] = None) -> bool:
    """True when every coordinate (or every Levi coordinate) is >= 0."""
    w = _check_length(rs, lam)
    for i in _levi_indices(rs, levi):
        if w[i - 1] < 0:
            return False
    return True


def reflect_simple(rs: RootSystem, i: int, lam: Sequence[int]) -> Weight:
    """Simple reflection s_i, with i in 1..rank."""
    if not 1 <= i <= rs.rank:
        raise InputError(f"simple-root index {i} out of range")
    w = _check_length(rs, lam)
    c = w[i - 1]
    if c == 0:
        return w
    row = rs.cartan_matrix[i - 1]
    return tuple(x - c * r for x, r in zip(w, row))


def apply_weyl_word(rs: RootSystem, word: Sequence[int], lam: Sequence[int]) -> Weight:
    """Apply reflections in the order listed (first letter acts first)."""
    w = _check_length(rs, lam)
    for i in word:
        w = reflect_simple(rs, i, w)
    return w


def make_dominant(
    rs: RootSystem, lam: Sequence[int], levi: Optional[Iterable[int]] = None
) -> tuple[WeylWord, Weight]:
    """Reflect lam into the (Levi-)dominant chamber.

    Repeatedly reflects at the lowest-index negative coordinate and records
    the letters in the order applied, so apply_weyl_word(rs, word, lam)
    reproduces the result and the reversed word is the inverse.  For regular
    lam the word is reduced.
    """
    w = _check_length(rs, lam)
    indices = _levi_indices(rs, levi)
    letters: list[int] = []
    while True:
        neg = next((i for i in indices if w[i - 1] < 0), None)
        if neg is None:
            return tuple(letters), w
        w = reflect_simple(rs, neg, w)
        letters.append(neg)


def count_negative_roots(rs: RootSystem, lam: Sequence[int]) -> int:
    """Number of positive roots pairing strictly negatively with lam."""
    w = _check_length(rs, lam)
    return sum(1 for rc in rs.positive_root_coords if pair_with_root(rs, w, rc) < 0)


def _levi_indices(rs: RootSystem, levi) -> tuple[int, ...]:
    if levi is None:
        return tuple(range(1, rs.rank + 1))
    indices = getattr(levi, "levi_simple_roots", levi)
    out = tuple(sorted(int(i) for i in indices))
    for i in out:
        if not 1 <= i <= rs.rank:
            raise InputError(f"simple-root index {i} out of range 1..{rs.rank}")
    if len(set(out)) != len(out):
        raise InputError("duplicate simple-root index in Levi subset")
    return out


def levi_positive_roots(
    rs: RootSystem, levi: Optional[Iterable[int]] = None
) -> tuple[tuple[Weight, tuple[int, ...]], ...]:
    """Positive roots supported on the given simple-root subset.

    Returns (weight coordinates, root coordinates) pairs; with levi=None this
    is the full positive system.
    """
    indices = set(_levi_indices(rs, levi))
    out = []
    for wc, rc in zip(rs.positive_roots, rs.positive_root_coords):
        if all(m == 0 or (j + 1) in indices for j, m in enumerate(rc)):
            out.append((wc, rc))
    return tuple(out)


def weyl_dimension(
    rs: RootSystem, lam: Sequence[int], levi: Optional[Iterable[int]] = None
) -> int:
    """dim of the irreducible with highest weight lam via the product formula.

    With a Levi subset given, the product runs over the Levi's positive roots
    only, yielding the dimension of the corresponding Levi irreducible.
    """
    w = _check_length(rs, lam)
    if not is_dominant(rs, w, levi):
        raise DomainError(f"weight {w} is not dominant for the requested system")
    shifted = tuple(x + 1 for x in w)
    one = tuple(1 for _ in range(rs.rank))
    result = Fraction(1)
    for _, rc in levi_positive_roots(rs, levi):
        result *= Fraction(pair_with_root(rs, shifted, rc), pair_with_root(rs, one, rc))
    if result.denominator != 1:
        raise Error("Weyl dimension product is not an integer")
    return int(result)

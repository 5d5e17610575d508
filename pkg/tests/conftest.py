from __future__ import annotations

from pathlib import Path

import pytest

from braneindex import parse_fan

DATA = Path(__file__).parent / "data"

CORPUS_NAMES = ("p1", "p2", "p1xp1", "p3", "f1", "f2", "f3")


def load_fan(name: str):
    return parse_fan((DATA / f"{name}.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def fan_corpus():
    return {name: load_fan(name) for name in CORPUS_NAMES}


def enumerate_weyl_group(rs):
    """All Weyl elements as matrices on weight coordinates, with their lengths.

    Only usable at test scale; the group is generated by breadth-first
    composition with the simple reflections.
    """
    rank = rs.rank
    identity = tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank))

    def reflection_matrix(i):
        # s_i(w)_j = w_j - w_{i-1} * alpha_i[j]
        row = rs.cartan_matrix[i - 1]
        return tuple(
            tuple(int(j == k) - (row[j] if k == i - 1 else 0) for k in range(rank))
            for j in range(rank)
        )

    def compose(a, b):
        # (a then b) acting on column vectors: matrix product b @ a
        return tuple(
            tuple(sum(b[i][k] * a[k][j] for k in range(rank)) for j in range(rank))
            for i in range(rank)
        )

    gens = [reflection_matrix(i) for i in range(1, rank + 1)]
    lengths = {identity: 0}
    frontier = [identity]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                new = compose(w, g)
                if new not in lengths:
                    lengths[new] = lengths[w] + 1
                    nxt.append(new)
        frontier = nxt
    return lengths


def apply_matrix(mat, vec):
    return tuple(sum(row[j] * vec[j] for j in range(len(vec))) for row in mat)


def convolve(a: dict, b: dict) -> dict:
    out: dict = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            key = tuple(x + y for x, y in zip(w1, w2))
            out[key] = out.get(key, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def dominant_weights_up_to(rank: int, total: int):
    """All dominant integer weights with coordinate sum <= total."""
    if rank == 0:
        yield ()
        return
    for head in range(total + 1):
        for tail in dominant_weights_up_to(rank - 1, total - head):
            yield (head,) + tail

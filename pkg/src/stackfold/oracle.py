"""Exponential-time exact optimum, used as ground truth on short sequences.

Positions are decided left to right. A free position is left unpaired,
paired with the partner that extends the ladder directly outside it, or opens
a new ladder of two stacked pairs. Structures where every pair sits in a
stacking pair are the only ones worth visiting: dropping a pair that stacks
with nothing keeps the count and never adds a crossing. Branches whose count
plus half the free positions cannot beat the incumbent are cut.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .core import BasePair, RnaSequence, SecondaryStructure, is_watson_crick


class OracleMode(str, enum.Enum):
    GENERAL = "general"
    NESTED = "nested"
    PLANAR = "planar"


DEFAULT_LIMITS = {OracleMode.GENERAL: 18, OracleMode.NESTED: 18, OracleMode.PLANAR: 16}


class OracleLimitError(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    optimum: int
    witness: SecondaryStructure
    explored: int


def _bipartite(pairs: list[tuple[int, int]]) -> bool:
    color = {}
    for root in range(len(pairs)):
        if root in color:
            continue
        color[root] = 0
        todo = [root]
        while todo:
            a = todo.pop()
            ai, aj = pairs[a]
            for b, (bi, bj) in enumerate(pairs):
                if ai < bi < aj < bj or bi < ai < bj < aj:
                    if b not in color:
                        color[b] = 1 - color[a]
                        todo.append(b)
                    elif color[b] == color[a]:
                        return False
    return True


def exact_optimum(seq: RnaSequence, mode: OracleMode | str = OracleMode.GENERAL,
                  limit: int | None = None) -> OracleResult:
    mode = OracleMode(mode)
    n = len(seq)
    if limit is None:
        limit = DEFAULT_LIMITS[mode]
    if n > limit:
        raise OracleLimitError(
            f"exact search refused: length {n} exceeds the {mode.value}-mode limit of "
            f"{limit}; pass a larger limit explicitly if you accept the runtime")
    s = seq.text
    wc = [[j >= i + 2 and is_watson_crick(s[i], s[j]) for j in range(n)] for i in range(n)]
    partner = [-1] * n
    pairs: list[tuple[int, int]] = []
    best = [-1, []]
    explored = 0

    def admissible(i: int, j: int) -> bool:
        if mode is OracleMode.GENERAL:
            return True
        if mode is OracleMode.NESTED:
            return not any(a < i < b < j for a, b in pairs)
        pairs.append((i, j))
        ok = _bipartite(pairs)
        pairs.pop()
        return ok

    def place(i: int, j: int) -> None:
        partner[i] = j
        partner[j] = i
        pairs.append((i, j))

    def unplace(i: int, j: int) -> None:
        partner[i] = -1
        partner[j] = -1
        pairs.pop()

    def search(x: int, count: int) -> None:
        nonlocal explored
        explored += 1
        while x < n and partner[x] >= 0:
            x += 1
        free = sum(1 for y in range(x, n) if partner[y] < 0)
        if count + free // 2 <= best[0]:
            return
        if x >= n:
            best[0], best[1] = count, list(pairs)
            return
        ext = -1
        if x > 0 and partner[x - 1] > x:
            ext = partner[x - 1] - 1
            if partner[ext] < 0 and wc[x][ext] and admissible(x, ext):
                place(x, ext)
                search(x + 1, count + 1)
                unplace(x, ext)
        if x + 1 < n and partner[x + 1] < 0:
            for y in range(x + 4, n):
                if y == ext or partner[y] >= 0 or partner[y - 1] >= 0:
                    continue
                if not (wc[x][y] and wc[x + 1][y - 1]) or not admissible(x, y):
                    continue
                place(x, y)
                if admissible(x + 1, y - 1):
                    place(x + 1, y - 1)
                    search(x + 2, count + 1)
                    unplace(x + 1, y - 1)
                unplace(x, y)
        search(x + 1, count)

    search(0, 0)
    witness = SecondaryStructure(seq, tuple(BasePair(a + 1, b + 1) for a, b in best[1]))
    return OracleResult(best[0] if best[0] >= 0 else 0, witness, explored)

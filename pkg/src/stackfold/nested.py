"""Exact maximum stacking pairs over pseudoknot-free structures.

``V(i, j)`` is the best count on ``s_i..s_j`` with ``(s_i, s_j)`` paired and
``W(i, j)`` the best count on ``s_i..s_j`` overall. Besides dropping an end
base, ``W`` may split into two side-by-side intervals; without that branch two
adjacent helices under no common pair cannot be combined (``AAGUUAAGUU``
scores 1 instead of 2). ``literal=True`` runs the recurrence without it.

Keeping the larger page of any two-page drawing leaves a pseudoknot-free
structure, so the count is also at least half the best planar count.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _backend
from .core import BasePair, RnaSequence, SecondaryStructure

# choice codes, shared with the kernels
V_UNDEFINED, V_BASIS, V_STACK, V_SPLIT = -2, -1, 0, 1
W_BASIS, W_PAIR, W_CONCAT, W_SKIP_LEFT, W_SKIP_RIGHT = -1, 0, 1, 2, 3


@dataclass(frozen=True, eq=False)
class DpTables:
    """Filled tables, 0-based arrays; the accessors take 1-based positions."""

    sequence: RnaSequence
    v: np.ndarray
    w: np.ndarray
    v_choice: np.ndarray
    v_split: np.ndarray
    w_choice: np.ndarray
    w_split: np.ndarray
    literal: bool = False

    def V(self, i: int, j: int) -> int | None:
        """``None`` where ``(s_i, s_j)`` cannot pair."""
        if self.v_choice[i - 1, j - 1] == V_UNDEFINED:
            return None
        return int(self.v[i - 1, j - 1])

    def W(self, i: int, j: int) -> int:
        if j < i:
            return 0
        return int(self.w[i - 1, j - 1])


@dataclass(frozen=True)
class NestedResult:
    count: int
    structure: SecondaryStructure


def dp_tables(seq: RnaSequence, literal: bool = False, backend: str | None = None) -> DpTables:
    codes = _backend.encode(seq.text)
    v, w, vch, vk, wch, wk = _backend.get(backend).fill_tables(codes, literal)
    return DpTables(seq, np.asarray(v), np.asarray(w), np.asarray(vch),
                    np.asarray(vk), np.asarray(wch), np.asarray(wk), literal)


def traceback(tables: DpTables) -> list[BasePair]:
    n = len(tables.sequence)
    pairs: list[BasePair] = []
    if n == 0:
        return pairs
    wch, wk, vch, vk = tables.w_choice, tables.w_split, tables.v_choice, tables.v_split
    stack = [("W", 0, n - 1)]
    while stack:
        kind, i, j = stack.pop()
        if i >= j:
            continue
        if kind == "W":
            c = wch[i, j]
            if c == W_BASIS:
                continue
            if c == W_PAIR:
                stack.append(("V", i, j))
            elif c == W_CONCAT:
                k = int(wk[i, j])
                stack.append(("W", k + 1, j))
                stack.append(("W", i, k))
            elif c == W_SKIP_LEFT:
                stack.append(("W", i + 1, j))
            else:
                stack.append(("W", i, j - 1))
        else:
            pairs.append(BasePair(i + 1, j + 1))
            c = vch[i, j]
            if c == V_STACK:
                stack.append(("V", i + 1, j - 1))
            elif c == V_SPLIT:
                k = int(vk[i, j])
                stack.append(("W", k + 1, j - 1))
                stack.append(("W", i + 1, k))
    return sorted(pairs)


def max_stacking_pairs_nested(seq: RnaSequence, literal: bool = False,
                              backend: str | None = None) -> NestedResult:
    tables = dp_tables(seq, literal=literal, backend=backend)
    count = tables.W(1, len(seq)) if len(seq) else 0
    return NestedResult(count, SecondaryStructure(seq, tuple(traceback(tables))))

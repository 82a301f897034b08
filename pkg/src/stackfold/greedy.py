"""Greedy selection of disjoint stacking runs, longest width first.

Phase ``width`` takes leftmost runs of ``width`` consecutive stacking pairs,
then phases ``width-1`` down to 2 take further runs of each length, and the
last phase takes single stacking pairs. Every selected base is marked and never
reused. With ``width >= 3`` the total is at least a third of the optimum over
all (possibly knotted) structures.

Each phase is one left-to-right sweep. Candidate partners for a window come
from a table of window start positions grouped by pattern; every table entry
is passed over at most once per phase, so a run costs O(width * n).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _backend
from .core import MIN_PAIR_SEPARATION, RnaSequence, StackRun, conjugate

# above this every window pattern is renumbered before bucketing
_DENSE_BUCKETS = 1 << 22


@dataclass(frozen=True)
class GreedyConfig:
    width: int = 3

    def __post_init__(self):
        if self.width < 3:
            raise ValueError(f"width must be >= 3, got {self.width}")


class GreedyResult:
    """Selected runs in selection order, held as parallel arrays.

    ``phases[t]`` is the run length that was being sought when run ``t`` was
    taken; it always equals that run's length.
    """

    def __init__(self, p: np.ndarray, q: np.ndarray, phases: np.ndarray):
        self.p = p
        self.q = q
        self.phases = phases
        self._runs = None

    @property
    def runs(self) -> tuple[StackRun, ...]:
        if self._runs is None:
            self._runs = tuple(StackRun(int(a), int(b), int(k))
                               for a, b, k in zip(self.p, self.q, self.phases))
        return self._runs

    @property
    def total(self) -> int:
        return int(self.phases.sum())

    def __len__(self) -> int:
        return len(self.p)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GreedyResult) and np.array_equal(self.p, other.p)
                and np.array_equal(self.q, other.q)
                and np.array_equal(self.phases, other.phases))


class MarkSet:
    """Per-position flags over 1..n; marking is one-way."""

    def __init__(self, n: int):
        self.flags = np.zeros(n, dtype=np.uint8)

    def __contains__(self, pos: int) -> bool:
        return bool(self.flags[pos - 1])

    def mark(self, positions) -> None:
        for x in positions:
            self.flags[x - 1] = 1

    def count(self) -> int:
        return int(self.flags.sum())


@dataclass(frozen=True)
class OccurrenceIndex:
    """Ascending 1-based start positions of every window, by length then pattern."""

    by_length: dict[int, dict[str, list[int]]]

    def positions(self, pattern: str) -> list[int]:
        return self.by_length.get(len(pattern), {}).get(pattern, [])


def build_index(seq: RnaSequence, max_len: int) -> OccurrenceIndex:
    if max_len < 2:
        raise ValueError("max_len must be >= 2")
    text = seq.text
    by_length: dict[int, dict[str, list[int]]] = {}
    for L in range(2, max_len + 1):
        table: dict[str, list[int]] = {}
        for x in range(len(text) - L + 1):
            table.setdefault(text[x:x + L], []).append(x + 1)
        if table:
            by_length[L] = table
    return OccurrenceIndex(by_length)


def find_run(seq: RnaSequence, k: int, marks: MarkSet,
             leftmost_only: bool = True) -> StackRun | None:
    """Smallest-p, then smallest-q run of exactly ``k`` stacking pairs on unmarked bases.

    ``leftmost_only=False`` accepts any run; this implementation still returns
    the leftmost one, so both settings agree.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    text = seq.text
    n = len(text)
    L = k + 1
    flags = marks.flags
    for p in range(n - L + 1):
        if flags[p:p + L].any():
            continue
        target = conjugate(text[p:p + L])
        r = text.find(target, p + k + MIN_PAIR_SEPARATION)
        while r >= 0:
            if not flags[r:r + L].any():
                return StackRun(p + 1, r + k + 1, k)
            r = text.find(target, r + 1)
    return None


def _window_codes(kern, codes: np.ndarray, L: int) -> tuple[np.ndarray, np.ndarray, int]:
    """Pattern ids of each window and of its conjugate (-1 where absent)."""
    nb = 4 ** L
    if nb <= _DENSE_BUCKETS:
        fw, rc = kern.window_codes(codes, L)
        return fw, rc, nb
    nw = len(codes) - L + 1
    c = codes.astype(np.int64)
    fw = np.zeros(nw, np.int64)
    rc = np.zeros(nw, np.int64)
    for t in range(L):
        fw = fw * 4 + c[t:t + nw]
        rc = rc * 4 + (3 - c[L - 1 - t:L - 1 - t + nw])
    uniq, fw_ids = np.unique(fw, return_inverse=True)
    pos = np.minimum(np.searchsorted(uniq, rc), len(uniq) - 1)
    rc_ids = np.where(uniq[pos] == rc, pos, -1)
    return fw_ids.astype(np.int32), rc_ids.astype(np.int32), len(uniq)


def greedy_fold(seq: RnaSequence, cfg: GreedyConfig = GreedyConfig(),
                backend: str | None = None) -> GreedyResult:
    kern = _backend.get(backend)
    codes = _backend.encode(seq.text)
    marks = np.zeros(len(codes), dtype=np.uint8)
    ps, qs, ks = [], [], []
    for k in range(cfg.width, 0, -1):
        if len(codes) < 2 * k + 1 + MIN_PAIR_SEPARATION:
            continue
        fw, rc, nb = _window_codes(kern, codes, k + 1)
        p, q = kern.greedy_phase(codes, marks, fw, rc, nb, k, MIN_PAIR_SEPARATION)
        ps.append(p)
        qs.append(q)
        ks.append(np.full(len(p), k, dtype=np.int32))
    if not ps:
        empty = np.zeros(0, dtype=np.int32)
        return GreedyResult(empty, empty, empty)
    return GreedyResult(np.concatenate(ps) + 1, np.concatenate(qs) + 1, np.concatenate(ks))

"""Shared brute-force oracles and the acceptance summary hook.

The oracles here are deliberately naive and share no code with the package
beyond the data types.
"""
from __future__ import annotations

from itertools import product

import pytest

WC = {("A", "U"), ("U", "A"), ("C", "G"), ("G", "C")}

ACCEPTANCE: dict[int, tuple[str, str]] = {}


def record(criterion: int, status: str, detail: str) -> None:
    ACCEPTANCE[criterion] = (status, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for c in sorted(ACCEPTANCE):
        status, detail = ACCEPTANCE[c]
        terminalreporter.write_line(f"criterion {c:2d}: {status:4s} {detail}")


def all_matchings(s: str, min_sep: int = 2):
    """Every set of disjoint Watson-Crick pairs (i + min_sep <= j), 1-based."""
    n = len(s)
    used = [False] * n
    cur: list[tuple[int, int]] = []

    def rec(x):
        while x < n and used[x]:
            x += 1
        if x >= n:
            yield list(cur)
            return
        yield from rec(x + 1)
        for y in range(x + min_sep, n):
            if not used[y] and (s[x], s[y]) in WC:
                used[x] = used[y] = True
                cur.append((x + 1, y + 1))
                yield from rec(x + 1)
                cur.pop()
                used[x] = used[y] = False

    yield from rec(0)


def stack_count(pairs) -> int:
    ps = set(pairs)
    return sum(1 for i, j in ps if i + 4 <= j and (i + 1, j - 1) in ps)


def _cross(a, b) -> bool:
    return a[0] < b[0] < a[1] < b[1] or b[0] < a[0] < b[1] < a[1]


def is_nested(pairs) -> bool:
    ps = list(pairs)
    return not any(_cross(a, b) for x, a in enumerate(ps) for b in ps[x + 1:])


def two_page_exhaustive(pairs) -> bool:
    """Try every above/below choice for the stacking pairs.

    Each stacking pair is drawn with both of its base pairs on one side; a base
    pair shared by two stacking pairs forces them onto the same side.
    """
    ps = set(pairs)
    stacks = [((i, j), (i + 1, j - 1)) for i, j in sorted(ps)
              if i + 4 <= j and (i + 1, j - 1) in ps]
    for sides in product((0, 1), repeat=len(stacks)):
        side_of: dict[tuple[int, int], int] = {}
        ok = True
        for st, sd in zip(stacks, sides):
            for bp in st:
                if side_of.setdefault(bp, sd) != sd:
                    ok = False
        if not ok:
            continue
        drawn = list(side_of)
        if all(side_of[a] != side_of[b] or not _cross(a, b)
               for x, a in enumerate(drawn) for b in drawn[x + 1:]):
            return True
    return False


def brute_optimum(s: str, mode: str = "general") -> int:
    best = 0
    for m in all_matchings(s):
        c = stack_count(m)
        if c <= best:
            continue
        if mode == "nested" and not is_nested(m):
            continue
        if mode == "planar" and not two_page_exhaustive(m):
            continue
        best = c
    return best


def naive_greedy(s: str, width: int, min_sep: int = 2):
    """Repeatedly take the smallest (p, q) run of the current length."""
    n = len(s)
    used = [False] * n
    runs = []
    for k in range(width, 0, -1):
        while True:
            hit = None
            for p in range(n):
                if hit:
                    break
                if p + k >= n or any(used[p:p + k + 1]):
                    continue
                for q in range(p + 2 * k + min_sep, n):
                    r = q - k
                    if any(used[r:q + 1]):
                        continue
                    if all((s[p + t], s[q - t]) in WC for t in range(k + 1)):
                        hit = (p, q)
                        break
            if not hit:
                break
            p, q = hit
            for t in range(k + 1):
                used[p + t] = used[q - t] = True
            runs.append((p + 1, q + 1, k))
    return runs


@pytest.fixture(scope="session")
def backends():
    from stackfold import _backend
    return sorted(_backend.BACKENDS)

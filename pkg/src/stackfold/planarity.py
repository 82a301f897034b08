"""Crossing graphs, two-page assignments and the interleaving-block test."""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass

from .core import BasePair, SecondaryStructure


class Page(str, enum.Enum):
    ABOVE = "above"
    BELOW = "below"


def crosses(a: BasePair, b: BasePair) -> bool:
    return a.i < b.i < a.j < b.j or b.i < a.i < b.j < a.j


@dataclass(frozen=True)
class CrossingGraph:
    nodes: tuple[BasePair, ...]
    edges: frozenset[frozenset[BasePair]]

    def adjacency(self) -> dict[BasePair, list[BasePair]]:
        adj: dict[BasePair, list[BasePair]] = {v: [] for v in self.nodes}
        for e in self.edges:
            a, b = sorted(e)
            adj[a].append(b)
            adj[b].append(a)
        for v in adj:
            adj[v].sort()
        return adj

    def is_edgeless(self) -> bool:
        return not self.edges


def crossing_graph(struct: SecondaryStructure) -> CrossingGraph:
    pairs = struct.pairs
    edges = set()
    for x, a in enumerate(pairs):
        # pairs are sorted by i, so only later pairs opening inside a can cross it
        for b in pairs[x + 1:]:
            if b.i > a.j:
                break
            if b.j > a.j:
                edges.add(frozenset((a, b)))
    return CrossingGraph(pairs, frozenset(edges))


def stacking_substructure(struct: SecondaryStructure) -> SecondaryStructure:
    """Keep only pairs that take part in at least one stacking pair."""
    keep = set()
    for p in struct.stacking_pairs():
        keep.add(p)
        keep.add(BasePair(p.i + 1, p.j - 1))
    return struct.replace(sorted(keep))


def has_interleaving_block(struct: SecondaryStructure) -> bool:
    """Three stacking pairs with outer pairs (i,j), (i',j'), (i'',j'') and
    i < i' < i'' < j < j' < j''."""
    outer = struct.stacking_pairs()
    for x, a in enumerate(outer):
        for y in range(x + 1, len(outer)):
            b = outer[y]
            if b.i >= a.j:
                break
            if not a.j < b.j:
                continue
            for c in outer[y + 1:]:
                if c.i >= a.j:
                    break
                if b.j < c.j:
                    return True
    return False


def page_assignment(struct: SecondaryStructure) -> dict[BasePair, Page] | None:
    """Two-colour the crossing graph, or ``None`` if it has an odd cycle.

    Components are coloured in order of their smallest left endpoint and that
    pair goes above, so the result is reproducible.
    """
    adj = crossing_graph(struct).adjacency()
    color: dict[BasePair, Page] = {}
    flip = {Page.ABOVE: Page.BELOW, Page.BELOW: Page.ABOVE}
    for root in struct.pairs:
        if root in color:
            continue
        color[root] = Page.ABOVE
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in color:
                    color[w] = flip[color[v]]
                    queue.append(w)
                elif color[w] == color[v]:
                    return None
    return color


def is_planar_stacked(struct: SecondaryStructure) -> bool:
    return page_assignment(stacking_substructure(struct)) is not None


def layer_assignment(struct: SecondaryStructure, max_layers: int = 4) -> list[int] | None:
    """Layers for drawing arbitrary structures, one per pair in ``struct.pairs`` order.

    Uses the two-page assignment when one exists, otherwise greedy colouring by
    left endpoint. Returns ``None`` when more than ``max_layers`` are needed.
    """
    pages = page_assignment(struct)
    if pages is not None:
        return [0 if pages[p] is Page.ABOVE else 1 for p in struct.pairs]
    adj = crossing_graph(struct).adjacency()
    layer: dict[BasePair, int] = {}
    for p in struct.pairs:
        taken = {layer[q] for q in adj[p] if q in layer}
        k = next(k for k in range(len(taken) + 1) if k not in taken)
        if k >= max_layers:
            return None
        layer[p] = k
    return [layer[p] for p in struct.pairs]

"""Encoding of tripartite matching instances as RNA sequences.

Each edge becomes a region built from two delimiter gadgets and the node
gadgets of all three node sets; a final special region closes the sequence.
With a perfect matching, :func:`build_witness` lays out a planar structure
with exactly ``h`` stacking pairs.

Gadgets (``0 < k < d``)::

    delta(k)     = U^d A^k G U^d A^(d-k)
    delta_bar(k) = U^(d-k) A^d G U^k A^d
    pi(k)        = C^(2d+2k) A G C^(4d-2k)
    pi_bar(k)    = G^(4d-2k) A G^(2d+2k)

The barred gadget's two fragments are the conjugates of the plain gadget's
fragments in reverse order; the separators are not conjugated, so a barred
gadget is not the reverse complement of the plain one as a whole.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .core import (BasePair, Census, PATTERNS_2, RnaSequence, SecondaryStructure,
                   census)


class InstanceError(ValueError):
    pass


@dataclass(frozen=True)
class TripartiteInstance:
    n: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(int(v) for v in e) for e in self.edges))
        if self.n < 1:
            raise InstanceError("n must be >= 1")
        if not self.edges:
            raise InstanceError("at least one edge is required")
        seen = set()
        for idx, e in enumerate(self.edges, 1):
            if len(e) != 3 or not all(1 <= v <= self.n for v in e):
                raise InstanceError(f"edge {idx} {e} must be three nodes in 1..{self.n}")
            if e in seen:
                raise InstanceError(f"edge {idx} {e} is a duplicate")
            seen.add(e)

    @property
    def m(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class GadgetParams:
    d: int
    sigma: int
    h: int

    @classmethod
    def for_instance(cls, inst: TripartiteInstance) -> "GadgetParams":
        n, m = inst.n, inst.m
        d = max(6 * n, 4 * (m + 1)) + 1
        sigma = 3 * n * (3 * d - 2) + 6 * d - 1
        h = m * sigma + n * (6 * d - 4) + 12 * d - 5
        return cls(d, sigma, h)


@dataclass(frozen=True)
class Matching:
    selected: tuple[int, ...]


def _check_k(k: int, d: int) -> None:
    if not 0 < k < d:
        raise ValueError(f"gadget index {k} outside 0 < k < {d}")


def delta(k: int, d: int) -> str:
    _check_k(k, d)
    return "U" * d + "A" * k + "G" + "U" * d + "A" * (d - k)


def delta_bar(k: int, d: int) -> str:
    _check_k(k, d)
    return "U" * (d - k) + "A" * d + "G" + "U" * k + "A" * d


def pi(k: int, d: int) -> str:
    _check_k(k, d)
    return "C" * (2 * d + 2 * k) + "AG" + "C" * (4 * d - 2 * k)


def pi_bar(k: int, d: int) -> str:
    _check_k(k, d)
    return "G" * (4 * d - 2 * k) + "A" + "G" * (2 * d + 2 * k)


def fragments(kind: str, k: int, d: int) -> list[tuple[int, int]]:
    """(offset, length) of the two fragments of a gadget, offsets 0-based."""
    if kind == "delta":
        return [(0, d + k), (d + k + 1, 2 * d - k)]
    if kind == "delta_bar":
        return [(0, 2 * d - k), (2 * d - k + 1, d + k)]
    if kind == "pi":
        return [(0, 2 * d + 2 * k), (2 * d + 2 * k + 2, 4 * d - 2 * k)]
    if kind == "pi_bar":
        return [(0, 4 * d - 2 * k), (4 * d - 2 * k + 1, 2 * d + 2 * k)]
    raise ValueError(kind)


@dataclass(frozen=True)
class Anchor:
    """One gadget instance; ``start``/``end`` are 1-based inclusive."""

    kind: str  # delta | delta_bar | pi | pi_bar
    k: int
    start: int
    end: int


@dataclass(frozen=True)
class ReductionLayout:
    instance: TripartiteInstance
    params: GadgetParams
    sequence: RnaSequence
    regions: dict[int, tuple[int, int]]
    anchors: dict[int, dict[str, Anchor]] = field(repr=False)

    def gadget(self, region: int, name: str) -> str:
        a = self.anchors[region][name]
        return self.sequence.text[a.start - 1:a.end]

    def to_json(self) -> dict:
        return {
            "instance": {"n": self.instance.n, "edges": [list(e) for e in self.instance.edges]},
            "d": self.params.d,
            "sigma": self.params.sigma,
            "h": self.params.h,
            "length": len(self.sequence),
            "regions": {str(j): list(span) for j, span in self.regions.items()},
            "anchors": {
                str(j): {name: {"kind": a.kind, "k": a.k, "start": a.start, "end": a.end}
                         for name, a in names.items()}
                for j, names in self.anchors.items()
            },
        }


class _Builder:
    def __init__(self, d: int):
        self.d = d
        self.parts: list[str] = []
        self.pos = 0  # characters emitted so far

    def raw(self, text: str) -> None:
        self.parts.append(text)
        self.pos += len(text)

    def gadget(self, kind: str, k: int) -> Anchor:
        text = {"delta": delta, "delta_bar": delta_bar, "pi": pi, "pi_bar": pi_bar}[kind](k, self.d)
        a = Anchor(kind, k, self.pos + 1, self.pos + len(text))
        self.raw(text)
        return a


def encode_instance(inst: TripartiteInstance) -> ReductionLayout:
    params = GadgetParams.for_instance(inst)
    n, m, d = inst.n, inst.m, params.d
    b = _Builder(d)
    regions: dict[int, tuple[int, int]] = {}
    anchors: dict[int, dict[str, Anchor]] = {}
    # node-set letter -> gadget index offset for node i
    offset = {"x": 0, "y": n, "z": 2 * n}

    def node_lists(j: int) -> list[list[tuple[str, int]]]:
        if j == m + 1:
            return [[(f"{s}bar", i) for i in range(n, 0, -1)] for s in "zyx"]
        p, q, r = inst.edges[j - 1]
        removed = {"x": p, "y": q, "z": r}
        lists = [[(s, i) for i in range(1, n + 1)] for s in "xyz"]
        lists += [[(f"{s}bar", i) for i in range(n, 0, -1) if i != removed[s]] for s in "zyx"]
        return lists

    for j in range(m + 1, 0, -1):
        start = b.pos + 1
        names: dict[str, Anchor] = {}
        b.raw("AG")
        names["V"] = b.gadget("pi", j)
        b.raw("AG")
        names["W"] = b.gadget("pi", m + 1 + j)
        b.raw("AG")
        # an emptied node list drops out together with its separator
        first = True
        for items in node_lists(j):
            for name, i in items:
                if not first:
                    b.raw("G")
                first = False
                kind = "delta_bar" if name.endswith("bar") else "delta"
                names[f"{name}{i}"] = b.gadget(kind, offset[name[0]] + i)
        names["Vbar"] = b.gadget("pi_bar", j)
        b.raw("A")
        names["Wbar"] = b.gadget("pi_bar", m + 1 + j)
        regions[j] = (start, b.pos)
        anchors[j] = names
    seq = RnaSequence("".join(b.parts))
    return ReductionLayout(inst, params, seq, regions, anchors)


def expected_length(inst: TripartiteInstance) -> int:
    """Closed-form length of the encoded sequence."""
    n, m = inst.n, inst.m
    d = GadgetParams.for_instance(inst).d
    delta_len = 3 * d + 1
    per_region_fixed = 2 * (6 * d + 2) + 2 * (6 * d + 1) + 7  # delimiters, AG x3, A
    edge_gadgets = 6 * n - 3
    special_gadgets = 3 * n
    return (m * (per_region_fixed + edge_gadgets * delta_len + edge_gadgets - 1)
            + per_region_fixed + special_gadgets * delta_len + special_gadgets - 1)


def expected_census(inst: TripartiteInstance) -> Census:
    """2-substring counts of the encoded sequence in closed form.

    Covers the six pairable patterns and the four unpairable ones that occur
    (AG, GA, GU, CA); the remaining six patterns never occur.
    """
    n, m = inst.n, inst.m
    d = GadgetParams.for_instance(inst).d
    counts = dict.fromkeys(PATTERNS_2, 0)
    counts["AA"] = m * (3 * n * (d - 2) + (3 * n - 3) * (2 * d - 2)) + 3 * n * (2 * d - 2)
    counts["UU"] = m * (3 * n * (2 * d - 2) + (3 * n - 3) * (d - 2)) + 3 * n * (d - 2)
    counts["UA"] = 2 * m * (6 * n - 3) + 6 * n
    counts["GG"] = 2 * (m + 1) * (6 * d - 2)
    counts["CC"] = 2 * (m + 1) * (6 * d - 2)
    counts["GC"] = 4 * m + 4
    # per region with t node gadgets: t + (t-1) + 9 AG, t + (t-1) + 1 GU,
    # 4 CA, 3 GA; plus one GA at each of the m region boundaries
    t_edge, t_special = 6 * n - 3, 3 * n
    counts["AG"] = m * (2 * t_edge + 8) + 2 * t_special + 8
    counts["GU"] = m * 2 * t_edge + 2 * t_special
    counts["CA"] = 4 * (m + 1)
    counts["GA"] = 3 * (m + 1) + m
    return Census(counts)


def fact2_bound(inst: TripartiteInstance) -> int:
    """Upper bound on any structure's stacking pairs from pattern counts alone.

    Equals ``h + n + 1 + 2m + 2`` whenever ``m >= n``; for ``m < n`` the
    UU-substrings are the scarcer side and the bound is ``3d(n - m)`` lower.
    """
    c = expected_census(inst)
    return (min(c["AA"], c["UU"]) + min(c["GG"], c["CC"])
            + c["UA"] // 2 + c["GC"] // 2)


def verify_matching(inst: TripartiteInstance, matching) -> bool:
    selected = matching.selected if isinstance(matching, Matching) else tuple(matching)
    if len(selected) != inst.n or len(set(selected)) != inst.n:
        return False
    if not all(1 <= j <= inst.m for j in selected):
        return False
    edges = [inst.edges[j - 1] for j in selected]
    return all(len({e[c] for e in edges}) == inst.n for c in range(3))


def ladder_pairs(a: Anchor, b: Anchor, d: int) -> list[BasePair]:
    """Pair the fragments of two gadgets, outermost first.

    The earlier gadget is read left to right and the later one right to left;
    each base pairs with the next unused base on the other side.
    """
    left, right = (a, b) if a.start < b.start else (b, a)
    lk = [(left.start + o, ln) for o, ln in fragments(left.kind, left.k, d)]
    rk = [(right.start + o, ln) for o, ln in fragments(right.kind, right.k, d)]
    lpos = [x for s, ln in lk for x in range(s, s + ln)]
    rpos = [x for s, ln in reversed(rk) for x in range(s + ln - 1, s - 1, -1)]
    return [BasePair(a, b) for a, b in zip(lpos, rpos)]


def self_fold(a: Anchor, d: int) -> list[BasePair]:
    """Hairpin of ``d`` stacked pairs inside a single node gadget."""
    s, k = a.start, a.k
    if a.kind == "delta":
        return [BasePair(s + k + t, s + 3 * d - t) for t in range(d)]
    if a.kind == "delta_bar":
        return [BasePair(s + t, s + 3 * d - k - t) for t in range(d)]
    raise ValueError(a.kind)


def build_witness(layout: ReductionLayout, matching) -> SecondaryStructure:
    """Structure with exactly ``h`` stacking pairs for a perfect matching.

    Matched regions, taken in increasing edge order ``j_1 < ... < j_n`` with
    ``j_{n+1} = m + 1``, hand their ``W`` delimiter to the barred ``W`` of the
    next matched region, and each node already covered by ``e_{j_1}..e_{j_k}``
    pairs its gadget in region ``j_k`` with its barred gadget in region
    ``j_{k+1}``. Unmatched regions pair internally and fold their three
    uncovered node gadgets on themselves.
    """
    inst, d = layout.instance, layout.params.d
    if not verify_matching(inst, matching):
        raise InstanceError(f"{matching} is not a perfect matching")
    selected = matching.selected if isinstance(matching, Matching) else tuple(matching)
    chosen = sorted(selected)
    nxt = {j: (chosen[t + 1] if t + 1 < len(chosen) else inst.m + 1)
           for t, j in enumerate(chosen)}
    A = layout.anchors
    n, m = inst.n, inst.m
    pairs: list[BasePair] = []

    def link(r1, g1, r2, g2):
        pairs.extend(ladder_pairs(A[r1][g1], A[r2][g2], d))

    covered = {"x": set(), "y": set(), "z": set()}
    for j in range(1, m + 1):
        edge = dict(zip("xyz", inst.edges[j - 1]))
        link(j, "V", j, "Vbar")
        if j in nxt:
            link(j, "W", nxt[j], "Wbar")
            for s in "xyz":
                covered[s].add(edge[s])
        else:
            link(j, "W", j, "Wbar")
        for s in "xyz":
            for i in range(1, n + 1):
                if j not in nxt and i == edge[s]:
                    pairs.extend(self_fold(A[j][f"{s}{i}"], d))
                elif j in nxt and i in covered[s]:
                    link(j, f"{s}{i}", nxt[j], f"{s}bar{i}")
                else:
                    link(j, f"{s}{i}", j, f"{s}bar{i}")
    link(m + 1, "V", m + 1, "Vbar")
    link(m + 1, "W", chosen[0], "Wbar")
    return SecondaryStructure(layout.sequence, tuple(pairs))


_FIELD = re.compile(r"^\s*([nm])\s*[:=]?\s*(\d+)\s*$", re.IGNORECASE)


def parse_instance(text: str) -> TripartiteInstance:
    """Read ``n N`` / ``m M`` header lines and one ``p q r`` triple per line."""
    header: dict[str, int] = {}
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        mt = _FIELD.match(line)
        if mt:
            header[mt.group(1).lower()] = int(mt.group(2))
            continue
        fields = line.replace(",", " ").split()
        if len(fields) != 3 or not all(f.isdigit() for f in fields):
            raise InstanceError(f"line {lineno}: expected 'p q r', got {line!r}")
        edges.append(tuple(int(f) for f in fields))
    if "n" not in header:
        raise InstanceError("missing 'n' field")
    if "m" in header and header["m"] != len(edges):
        raise InstanceError(f"header says m={header['m']} but {len(edges)} triples follow")
    return TripartiteInstance(header["n"], tuple(edges))


def format_instance(inst: TripartiteInstance) -> str:
    lines = [f"n {inst.n}", f"m {inst.m}"] + [" ".join(map(str, e)) for e in inst.edges]
    return "\n".join(lines) + "\n"


def layout_from_json(doc: dict) -> ReductionLayout:
    """Regenerate a layout from its sidecar and check the stored parameters."""
    inst = TripartiteInstance(doc["instance"]["n"], tuple(map(tuple, doc["instance"]["edges"])))
    layout = encode_instance(inst)
    stored = {k: doc.get(k) for k in ("d", "sigma", "h", "length")}
    actual = {"d": layout.params.d, "sigma": layout.params.sigma,
              "h": layout.params.h, "length": len(layout.sequence)}
    for key, val in stored.items():
        if val is not None and val != actual[key]:
            raise InstanceError(f"sidecar {key}={val} does not match regenerated {actual[key]}")
    if "anchors" in doc and json.loads(json.dumps(layout.to_json()["anchors"])) != doc["anchors"]:
        raise InstanceError("sidecar anchors do not match the regenerated layout")
    return layout

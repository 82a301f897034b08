"""Sequences, base pairs, structures and stacking-pair bookkeeping.

Positions are 1-based everywhere in this module's public surface.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Mapping

# Minimum j - i for a base pair (i, j); one base must sit between the endpoints.
MIN_PAIR_SEPARATION = 2

ALPHABET = "ACGU"
PATTERNS_2 = tuple("".join(p) for p in product(ALPHABET, repeat=2))

_COMPLEMENT = str.maketrans("ACGU", "UGCA")
_INVALID = re.compile(r"[^ACGU]")
_WC = frozenset({("A", "U"), ("U", "A"), ("C", "G"), ("G", "C")})


class Base(str, enum.Enum):
    A = "A"
    C = "C"
    G = "G"
    U = "U"


class SequenceError(ValueError):
    def __init__(self, position: int, char: str):
        super().__init__(f"invalid character {char!r} at position {position}")
        self.position = position
        self.char = char


class StructureError(ValueError):
    pass


@dataclass(frozen=True)
class RnaSequence:
    """An RNA string over ``ACGU``. Use :func:`parse_sequence` for raw input."""

    text: str

    def __post_init__(self):
        bad = _INVALID.search(self.text)
        if bad:
            raise SequenceError(bad.start() + 1, bad.group())

    def __len__(self) -> int:
        return len(self.text)

    def __str__(self) -> str:
        return self.text

    @property
    def n(self) -> int:
        return len(self.text)

    @property
    def bases(self) -> tuple[Base, ...]:
        return tuple(Base(c) for c in self.text)

    def at(self, i: int) -> str:
        if not 1 <= i <= len(self.text):
            raise IndexError(f"position {i} outside 1..{len(self.text)}")
        return self.text[i - 1]

    def window(self, start: int, length: int) -> str:
        """Substring ``s_start .. s_{start+length-1}``."""
        return self.text[start - 1:start - 1 + length]


def parse_sequence(text: str) -> RnaSequence:
    """Validate free-form input: whitespace dropped, case folded, T read as U."""
    pos = 0
    cleaned = []
    for ch in text:
        if ch.isspace():
            continue
        pos += 1
        up = ch.upper()
        if up == "T":
            up = "U"
        if up not in ALPHABET:
            raise SequenceError(pos, ch)
        cleaned.append(up)
    return RnaSequence("".join(cleaned))


def is_watson_crick(a, b) -> bool:
    return (str(a.value if isinstance(a, Base) else a),
            str(b.value if isinstance(b, Base) else b)) in _WC


def conjugate(seq):
    """Reverse complement; returns the same type it was given (str or RnaSequence)."""
    if isinstance(seq, RnaSequence):
        return RnaSequence(seq.text[::-1].translate(_COMPLEMENT))
    return seq[::-1].translate(_COMPLEMENT)


@dataclass(frozen=True, order=True)
class BasePair:
    i: int
    j: int

    def __iter__(self):
        yield self.i
        yield self.j


@dataclass(frozen=True)
class SecondaryStructure:
    """A set of disjoint Watson-Crick pairs over one sequence.

    Pairs are kept sorted by left endpoint.
    """

    sequence: RnaSequence
    pairs: tuple[BasePair, ...] = ()
    min_separation: int = MIN_PAIR_SEPARATION
    _partner: Mapping[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        pairs = tuple(sorted(BasePair(*p) for p in self.pairs))
        object.__setattr__(self, "pairs", pairs)
        partner: dict[int, int] = {}
        n = len(self.sequence)
        for p in pairs:
            if not (1 <= p.i and p.j <= n):
                raise StructureError(f"pair ({p.i},{p.j}) outside 1..{n}")
            if p.i + self.min_separation > p.j:
                raise StructureError(
                    f"pair ({p.i},{p.j}) violates i + {self.min_separation} <= j")
            if not is_watson_crick(self.sequence.at(p.i), self.sequence.at(p.j)):
                raise StructureError(
                    f"pair ({p.i},{p.j}) is {self.sequence.at(p.i)}-"
                    f"{self.sequence.at(p.j)}, not Watson-Crick")
            for x in p:
                if x in partner:
                    raise StructureError(f"position {x} appears in two pairs")
            partner[p.i] = p.j
            partner[p.j] = p.i
        object.__setattr__(self, "_partner", partner)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[BasePair]:
        return iter(self.pairs)

    def __contains__(self, pair) -> bool:
        i, j = pair
        return self._partner.get(i) == j

    def partner(self, x: int) -> int | None:
        return self._partner.get(x)

    def stacking_pairs(self) -> list[BasePair]:
        """Outer pairs (i, j) whose inner neighbour (i+1, j-1) is also present."""
        return [p for p in self.pairs
                if p.i + 4 <= p.j and self._partner.get(p.i + 1) == p.j - 1]

    def replace(self, pairs: Iterable) -> "SecondaryStructure":
        return SecondaryStructure(self.sequence, tuple(pairs), self.min_separation)


def count_stacking_pairs(struct: SecondaryStructure) -> int:
    return len(struct.stacking_pairs())


@dataclass(frozen=True, order=True)
class StackRun:
    """``length`` consecutive stacking pairs: pairs (p+t, q-t) for t = 0..length."""

    p: int
    q: int
    length: int

    def pairs(self) -> list[BasePair]:
        return [BasePair(self.p + t, self.q - t) for t in range(self.length + 1)]

    @property
    def left(self) -> range:
        return range(self.p, self.p + self.length + 1)

    @property
    def right(self) -> range:
        return range(self.q - self.length, self.q + 1)

    def positions(self) -> list[int]:
        return [*self.left, *self.right]

    def check(self, seq: RnaSequence, min_separation: int = MIN_PAIR_SEPARATION) -> None:
        if self.length < 1:
            raise StructureError(f"run {self} has no stacking pair")
        if (self.q - self.length) - (self.p + self.length) < min_separation:
            raise StructureError(f"run {self} folds too tightly")
        if self.p < 1 or self.q > len(seq):
            raise StructureError(f"run {self} outside 1..{len(seq)}")
        for bp in self.pairs():
            if not is_watson_crick(seq.at(bp.i), seq.at(bp.j)):
                raise StructureError(f"run {self} pairs {bp.i},{bp.j} non-complementary")


def runs_to_structure(seq: RnaSequence, runs: Iterable[StackRun]) -> SecondaryStructure:
    used: set[int] = set()
    pairs = []
    for run in runs:
        run.check(seq)
        pos = run.positions()
        if used.intersection(pos):
            raise StructureError(f"run {run} overlaps an earlier run")
        used.update(pos)
        pairs.extend(run.pairs())
    return SecondaryStructure(seq, tuple(pairs))


@dataclass(frozen=True)
class Census:
    counts: Mapping[str, int]

    def __getitem__(self, pattern: str) -> int:
        return self.counts[pattern]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def nonzero(self) -> dict[str, int]:
        return {k: v for k, v in self.counts.items() if v}


def census(seq) -> Census:
    text = seq.text if isinstance(seq, RnaSequence) else seq
    counts = dict.fromkeys(PATTERNS_2, 0)
    for a, b in zip(text, text[1:]):
        counts[a + b] += 1
    return Census(counts)


def parse_pair_list(text: str, seq: RnaSequence) -> SecondaryStructure:
    """Read ``i j`` lines (1-based); ``#`` starts a comment line."""
    pairs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise StructureError(f"line {lineno}: expected 'i j', got {line!r}")
        try:
            i, j = int(fields[0]), int(fields[1])
        except ValueError:
            raise StructureError(f"line {lineno}: non-integer position in {line!r}") from None
        if i > j:
            i, j = j, i
        pairs.append(BasePair(i, j))
    return SecondaryStructure(seq, tuple(pairs))


def format_pair_list(struct: SecondaryStructure) -> str:
    return "".join(f"{p.i} {p.j}\n" for p in struct.pairs)

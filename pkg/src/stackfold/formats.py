"""FASTA reading and writing, dot-bracket rendering."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import (BasePair, RnaSequence, SecondaryStructure, StructureError,
                   format_pair_list, parse_sequence)
from .planarity import layer_assignment

BRACKETS = ("()", "[]", "{}", "<>")


@dataclass(frozen=True)
class Record:
    name: str
    sequence: RnaSequence


def parse_fasta(text: str) -> list[Record]:
    """Records in file order. Text without any '>' line is one unnamed record."""
    records: list[Record] = []
    name, chunks = None, []
    started = False

    def flush():
        if started:
            records.append(Record(name or f"seq{len(records) + 1}", parse_sequence("".join(chunks))))

    for line in text.splitlines():
        s = line.strip()
        if s.startswith(">"):
            flush()
            name, chunks, started = s[1:].strip(), [], True
        elif s and not s.startswith(";"):
            chunks.append(s)
            started = True
    flush()
    return records


def write_fasta(records: Iterable[Record], width: int = 80) -> str:
    out = []
    for rec in records:
        out.append(f">{rec.name}")
        t = rec.sequence.text
        out.extend(t[i:i + width] for i in range(0, len(t), width))
    return "\n".join(out) + "\n"


def format_dotbracket(struct: SecondaryStructure, pages: list[int] | None = None) -> str:
    """One line, ``()`` for the first layer, ``[]`` for the second, then ``{}`` and ``<>``.

    ``pages`` gives a layer per pair in ``struct.pairs`` order; by default the
    planar page assignment, or a greedy colouring when the structure is not
    planar. Structures needing more than four layers come back as a pair list
    behind a comment line.
    """
    if pages is None:
        pages = layer_assignment(struct, max_layers=len(BRACKETS))
    if pages is None or any(k >= len(BRACKETS) for k in pages):
        return "# more than four bracket layers needed; pair list follows\n" + format_pair_list(struct)
    line = ["."] * len(struct.sequence)
    for p, k in zip(struct.pairs, pages):
        line[p.i - 1] = BRACKETS[k][0]
        line[p.j - 1] = BRACKETS[k][1]
    return "".join(line)


def parse_dotbracket(line: str, seq: RnaSequence) -> SecondaryStructure:
    opening = {b[0]: b[1] for b in BRACKETS}
    stacks: dict[str, list[int]] = {b[1]: [] for b in BRACKETS}
    pairs = []
    for x, ch in enumerate(line.strip(), 1):
        if ch in opening:
            stacks[opening[ch]].append(x)
        elif ch in stacks:
            if not stacks[ch]:
                raise StructureError(f"unmatched {ch!r} at {x}")
            pairs.append(BasePair(stacks[ch].pop(), x))
        elif ch != ".":
            raise StructureError(f"unexpected {ch!r} at {x}")
    if any(stacks.values()):
        raise StructureError("unclosed bracket")
    return SecondaryStructure(seq, tuple(pairs))

"""Command-line front end."""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
import tracemalloc
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import _backend
from .core import (SecondaryStructure, census, count_stacking_pairs, format_pair_list,
                   parse_pair_list, runs_to_structure)
from .corpus import random_sequence, trial_rng, trial_sequence
from .formats import Record, format_dotbracket, parse_fasta, write_fasta
from .greedy import GreedyConfig, greedy_fold
from .nested import max_stacking_pairs_nested
from .oracle import DEFAULT_LIMITS, OracleLimitError, OracleMode, exact_optimum
from .planarity import (crossing_graph, has_interleaving_block, is_planar_stacked,
                        layer_assignment, page_assignment, stacking_substructure)
from .reduction import (Matching, build_witness, encode_instance, fact2_bound,
                        expected_census, layout_from_json, parse_instance)

PROG = "stackfold"


class CliError(Exception):
    pass


def read_records(arg: str | None) -> list[Record]:
    if arg is None or arg == "-":
        text = sys.stdin.read()
    elif os.path.isfile(arg):
        text = Path(arg).read_text()
    else:
        text = arg
    records = parse_fasta(text)
    if not records:
        raise CliError("no sequence found in input")
    return records


def timed(fn, enabled: bool):
    """Result of ``fn()`` and its wall time; with timing on, one warm-up call runs first."""
    if enabled:
        fn()
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def structure_doc(rec: Record, algorithm: str, params: dict, struct: SecondaryStructure,
                  count: int, runs=None) -> dict:
    if struct.sequence.text != rec.sequence.text:
        raise AssertionError("structure is over a different sequence")
    if count != count_stacking_pairs(struct):
        raise AssertionError(f"{algorithm}: reported {count}, structure has "
                             f"{count_stacking_pairs(struct)} stacking pairs")
    doc = {
        "name": rec.name,
        "sequence": rec.sequence.text,
        "algorithm": algorithm,
        "params": params,
        "count": count,
        "pairs": [[p.i, p.j] for p in struct.pairs],
    }
    if runs is not None:
        doc["runs"] = [[r.p, r.q, r.length] for r in runs]
    pages = page_assignment(struct)
    if pages is not None:
        doc["layers"] = [0 if pages[p].value == "above" else 1 for p in struct.pairs]
    return doc


def show_structure(doc: dict, struct: SecondaryStructure) -> str:
    lines = [f">{doc['name']} length={len(doc['sequence'])} {doc['algorithm']}",
             doc["sequence"], format_dotbracket(struct), f"stacking pairs: {doc['count']}"]
    if "runs" in doc:
        lines.append(f"runs: {len(doc['runs'])}")
    if "timing" in doc:
        lines.append(f"time: {doc['timing']['seconds']:.6f} s")
    return "\n".join(lines)


def emit(args, docs: list[dict], human: list[str]) -> None:
    """Per-sequence commands wrap their documents in ``records``."""
    if args.json:
        if "name" in docs[0]:
            out = {"command": args.command, "records": docs}
        else:
            out = {"command": args.command, **docs[0]}
        print(json.dumps(out, indent=2))
    else:
        print("\n\n".join(human))


def cmd_dp(args) -> int:
    docs, human = [], []
    for rec in read_records(args.input):
        res, dt = timed(lambda: max_stacking_pairs_nested(rec.sequence, literal=args.literal,
                                                          backend=args.backend), args.timing)
        doc = structure_doc(rec, "nested-dp", {"literal": args.literal}, res.structure, res.count)
        if args.timing:
            doc["timing"] = {"seconds": dt}
        docs.append(doc)
        human.append(show_structure(doc, res.structure))
    emit(args, docs, human)
    return 0


def cmd_greedy(args) -> int:
    cfg = GreedyConfig(args.width)
    docs, human = [], []
    for rec in read_records(args.input):
        res, dt = timed(lambda: greedy_fold(rec.sequence, cfg, backend=args.backend), args.timing)
        struct = runs_to_structure(rec.sequence, res.runs)
        doc = structure_doc(rec, "greedy", {"width": args.width}, struct, res.total, res.runs)
        if args.timing:
            doc["timing"] = {"seconds": dt}
        docs.append(doc)
        human.append(show_structure(doc, struct))
    emit(args, docs, human)
    return 0


def cmd_exact(args) -> int:
    docs, human = [], []
    for rec in read_records(args.input):
        try:
            res, dt = timed(lambda: exact_optimum(rec.sequence, args.mode, args.max_len),
                            args.timing)
        except OracleLimitError as exc:
            raise CliError(f"{rec.name}: {exc} (--max-len N)") from None
        doc = structure_doc(rec, f"exact-{args.mode}", {"mode": args.mode},
                            res.witness, res.optimum)
        doc["explored"] = res.explored
        if args.timing:
            doc["timing"] = {"seconds": dt}
        docs.append(doc)
        human.append(show_structure(doc, res.witness) + f"\nsearch nodes: {res.explored}")
    emit(args, docs, human)
    return 0


def cmd_planar(args) -> int:
    records = read_records(args.input)
    if len(records) != 1:
        raise CliError("planar takes exactly one sequence")
    rec = records[0]
    struct = parse_pair_list(Path(args.pairs).read_text(), rec.sequence)
    stacked = stacking_substructure(struct)
    doc = {
        "name": rec.name,
        "sequence": rec.sequence.text,
        "pairs": [[p.i, p.j] for p in struct.pairs],
        "count": count_stacking_pairs(struct),
        "planar": is_planar_stacked(struct),
        "interleaving_block": has_interleaving_block(struct),
        "crossing_edges": len(crossing_graph(stacked).edges),
    }
    layers = layer_assignment(struct)
    if doc["planar"]:
        doc["layers"] = layers
    human = [f">{rec.name} length={len(rec.sequence)}", rec.sequence.text,
             format_dotbracket(struct, layers),
             f"stacking pairs: {doc['count']}",
             f"planar: {'yes' if doc['planar'] else 'no'}",
             f"interleaving block: {'yes' if doc['interleaving_block'] else 'no'}",
             f"crossings among stacked pairs: {doc['crossing_edges']}"]
    emit(args, [doc], ["\n".join(human)])
    return 0


def cmd_census(args) -> int:
    docs, human = [], []
    for rec in read_records(args.input):
        c = census(rec.sequence)
        docs.append({"name": rec.name, "length": len(rec.sequence), "counts": c.counts})
        human.append(f">{rec.name} length={len(rec.sequence)}\n"
                     + "\n".join(f"{k} {v}" for k, v in c.counts.items()))
    emit(args, docs, human)
    return 0


def cmd_reduce(args) -> int:
    inst = parse_instance(Path(args.instance).read_text())
    layout = encode_instance(inst)
    prefix = Path(args.out_prefix)
    fasta_path = prefix.with_name(prefix.name + ".fa")
    json_path = prefix.with_name(prefix.name + ".json")
    name = f"S_E n={inst.n} m={inst.m} h={layout.params.h}"
    fasta_path.write_text(write_fasta([Record(name, layout.sequence)]))
    side = layout.to_json()
    side["fasta"] = fasta_path.name
    json_path.write_text(json.dumps(side, indent=1) + "\n")
    census_ok = census(layout.sequence).counts == expected_census(inst).counts
    doc = {"n": inst.n, "m": inst.m, "d": layout.params.d, "sigma": layout.params.sigma,
           "h": layout.params.h, "length": len(layout.sequence),
           "fact2_bound": fact2_bound(inst), "census_matches": census_ok,
           "fasta": str(fasta_path), "sidecar": str(json_path)}
    human = "\n".join(f"{k}: {v}" for k, v in doc.items())
    emit(args, [doc], [human])
    return 0 if census_ok else 1


def cmd_witness(args) -> int:
    layout = layout_from_json(json.loads(Path(args.layout).read_text()))
    try:
        selected = tuple(int(t) for t in args.matching.replace(" ", "").split(",") if t)
    except ValueError:
        raise CliError(f"--matching expects comma-separated edge indices, got {args.matching!r}")
    struct = build_witness(layout, Matching(selected))
    count = count_stacking_pairs(struct)
    doc = {"h": layout.params.h, "count": count, "matches_target": count == layout.params.h,
           "planar": is_planar_stacked(struct),
           "crossing_edges": len(crossing_graph(struct).edges),
           "pairs": [[p.i, p.j] for p in struct.pairs]}
    if args.out:
        Path(args.out).write_text(format_pair_list(struct))
    human = "\n".join(f"{k}: {doc[k]}" for k in ("h", "count", "matches_target", "planar",
                                                   "crossing_edges"))
    if args.out:
        human += f"\npairs written to {args.out}"
    emit(args, [doc], [human])
    return 0


def _ratio_trial(task):
    seed, index, lo, hi, width, limit = task
    seq = trial_sequence(seed, index, lo, hi)
    g = greedy_fold(seq, GreedyConfig(width)).total
    opt = exact_optimum(seq, OracleMode.GENERAL, limit).optimum
    return {"trial": index, "sequence": seq.text, "greedy": g, "optimum": opt}


def parse_range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition("-")
    try:
        a, b = int(lo), int(hi or lo)
    except ValueError:
        raise CliError(f"expected L or A-B, got {text!r}") from None
    if a < 1 or b < a:
        raise CliError(f"bad length range {text!r}")
    return a, b


def cmd_ratio_bench(args) -> int:
    lo, hi = parse_range(args.len)
    limit = args.max_len or DEFAULT_LIMITS[OracleMode.GENERAL]
    if hi > limit:
        raise CliError(f"length {hi} exceeds the general-mode oracle limit {limit}; "
                       "lower --len or raise --max-len")
    tasks = [(args.seed, t, lo, hi, args.width, limit) for t in range(args.count)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            trials = list(ex.map(_ratio_trial, tasks, chunksize=8))
    else:
        trials = [_ratio_trial(t) for t in tasks]
    ratios = [t["greedy"] / t["optimum"] for t in trials if t["optimum"] > 0]
    violations = [t["trial"] for t in trials if 3 * t["greedy"] < t["optimum"]]
    doc = {"count": args.count, "length": [lo, hi], "seed": args.seed, "width": args.width,
           "scored": len(ratios),
           "min_ratio": min(ratios) if ratios else None,
           "mean_ratio": sum(ratios) / len(ratios) if ratios else None,
           "violations": violations}
    if args.verbose:
        doc["trials"] = trials
    human = (f"trials {args.count} (lengths {lo}-{hi}, seed {args.seed}), "
             f"{len(ratios)} with a nonzero optimum\n"
             f"min ratio {doc['min_ratio']}\nmean ratio {doc['mean_ratio']}\n"
             f"violations of 1/3: {len(violations)}")
    emit(args, [doc], [human])
    return 1 if violations else 0


def measure(algo: str, n: int, backend: str, seed: int, width: int, memory: bool) -> dict:
    seq = random_sequence(trial_rng(seed, n), n)
    if algo == "dp":
        fn = lambda: max_stacking_pairs_nested(seq, backend=backend).count  # noqa: E731
    else:
        cfg = GreedyConfig(width)
        fn = lambda: greedy_fold(seq, cfg, backend=backend).total  # noqa: E731
    count, dt = timed(fn, True)
    row = {"n": n, "backend": backend, "seconds": dt, "count": count}
    if memory:
        tracemalloc.start()
        fn()
        row["peak_bytes"] = tracemalloc.get_traced_memory()[1]
        tracemalloc.stop()
    return row


def cmd_scale_bench(args) -> int:
    try:
        sizes = [int(float(s)) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        raise CliError(f"--sizes expects comma-separated integers, got {args.sizes!r}") from None
    if args.backend == "both":
        backends = sorted(_backend.BACKENDS)
    else:
        backends = [_backend.NAME if args.backend == "auto" else args.backend]
        _backend.get(backends[0])
    rows = []
    for b in backends:
        prev = None
        for n in sizes:
            row = measure(args.algo, n, b, args.seed, args.width, args.memory)
            if prev is not None:
                row["time_ratio"] = row["seconds"] / prev["seconds"] if prev["seconds"] else None
                if args.memory and prev.get("peak_bytes"):
                    row["memory_ratio"] = row["peak_bytes"] / prev["peak_bytes"]
            rows.append(row)
            prev = row
    doc = {"algo": args.algo, "sizes": sizes, "rows": rows}
    lines = [f"{'backend':9} {'n':>10} {'seconds':>10} {'ratio':>7}" + ("  peak MB" if args.memory else "")]
    for r in rows:
        ratio = f"{r['time_ratio']:7.2f}" if r.get("time_ratio") else "      -"
        line = f"{r['backend']:9} {r['n']:>10} {r['seconds']:>10.4f} {ratio}"
        if args.memory:
            line += f"  {r['peak_bytes'] / 2**20:7.2f}"
        lines.append(line)
    emit(args, [doc], ["\n".join(lines)])
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog=PROG, description="Stacking-pair RNA folding tools.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_input=True, with_backend=False):
        p.add_argument("--json", action="store_true", help="structured output")
        if with_input:
            p.add_argument("input", nargs="?",
                           help="FASTA file, raw sequence, or '-'/omitted for stdin")
            p.add_argument("--timing", action="store_true",
                           help="report wall time (one warm-up run excluded)")
        if with_backend:
            p.add_argument("--backend", default="auto", choices=["auto", "python", "compiled"])
        return p

    p = common(sub.add_parser("dp", help="exact pseudoknot-free optimum"), with_backend=True)
    p.add_argument("--literal", action="store_true",
                   help="omit the side-by-side split branch (for comparison)")
    p.set_defaults(func=cmd_dp)

    p = common(sub.add_parser("greedy", help="greedy stacking runs"), with_backend=True)
    p.add_argument("--width", type=int, default=3)
    p.set_defaults(func=cmd_greedy)

    p = common(sub.add_parser("exact", help="exhaustive optimum for short sequences"))
    p.add_argument("--mode", default="general", choices=[m.value for m in OracleMode])
    p.add_argument("--max-len", type=int, default=None,
                   help="override the length limit of the chosen mode")
    p.set_defaults(func=cmd_exact)

    p = common(sub.add_parser("planar", help="planarity of a given structure"))
    p.add_argument("--pairs", required=True, help="pair-list file, one 'i j' per line")
    p.set_defaults(func=cmd_planar)

    p = common(sub.add_parser("census", help="2-substring counts"))
    p.set_defaults(func=cmd_census)

    p = common(sub.add_parser("reduce", help="encode a tripartite matching instance"),
               with_input=False)
    p.add_argument("--instance", required=True)
    p.add_argument("--out-prefix", required=True)
    p.set_defaults(func=cmd_reduce)

    p = common(sub.add_parser("witness", help="structure for a perfect matching"),
               with_input=False)
    p.add_argument("--layout", required=True, help="sidecar JSON written by reduce")
    p.add_argument("--matching", required=True, help='edge indices, e.g. "1,3"')
    p.add_argument("--out", help="write the pair list here")
    p.set_defaults(func=cmd_witness)

    p = common(sub.add_parser("ratio-bench", help="greedy against the exact optimum"),
               with_input=False)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--len", required=True, help="length L or range A-B")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--width", type=int, default=3)
    p.add_argument("--max-len", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--verbose", action="store_true", help="include every trial")
    p.set_defaults(func=cmd_ratio_bench)

    p = common(sub.add_parser("scale-bench", help="runtime scaling"), with_input=False)
    p.add_argument("--algo", required=True, choices=["dp", "greedy"])
    p.add_argument("--sizes", required=True, help="comma-separated lengths")
    p.add_argument("--backend", default="auto", choices=["auto", "python", "compiled", "both"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--width", type=int, default=3)
    p.add_argument("--memory", action="store_true", help="also record peak traced memory")
    p.set_defaults(func=cmd_scale_bench)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"{PROG} {args.command}: error: {exc}", file=sys.stderr)
        return 2


run_cli = main

if __name__ == "__main__":
    sys.exit(main())

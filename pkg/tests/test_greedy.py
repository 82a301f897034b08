import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stackfold import _backend
from stackfold.core import RnaSequence, StackRun, count_stacking_pairs, runs_to_structure
from stackfold.corpus import random_sequence, trial_rng
from stackfold.greedy import (GreedyConfig, MarkSet, build_index, find_run, greedy_fold)
from stackfold.oracle import exact_optimum

from conftest import naive_greedy


def test_width_must_be_at_least_three():
    with pytest.raises(ValueError):
        GreedyConfig(2)


@pytest.mark.parametrize("text,total", [("AAGUU", 1), ("AAAA", 0), ("GGGGAAACCCC", 3),
                                        ("GGGAAACCC", 2), ("", 0)])
def test_examples(text, total, backends):
    for b in backends:
        assert greedy_fold(RnaSequence(text), backend=b).total == total


def test_hairpin_is_one_run():
    res = greedy_fold(RnaSequence("GGGGAAACCCC"))
    assert res.runs == (StackRun(1, 11, 3),)
    assert list(res.phases) == [3]


def test_find_run_reference():
    seq = RnaSequence("GGGGAAACCCC")
    marks = MarkSet(len(seq))
    assert find_run(seq, 3, marks) == StackRun(1, 11, 3)
    marks.mark(range(1, 5))
    assert find_run(seq, 1, marks) is None
    assert marks.count() == 4
    assert find_run(seq, 1, MarkSet(len(seq)), leftmost_only=False) == StackRun(1, 9, 1)


def test_occurrence_index():
    idx = build_index(RnaSequence("ACACA"), 3)
    assert idx.positions("AC") == [1, 3]
    assert idx.positions("ACA") == [1, 3]
    assert idx.positions("UU") == []


@pytest.mark.parametrize("width", [3, 4, 5])
def test_matches_naive_greedy(width, backends):
    rng = random.Random(width)
    for _ in range(60):
        s = "".join(rng.choice("ACGU") for _ in range(rng.randint(5, 50)))
        want = naive_greedy(s, width)
        for b in backends:
            got = greedy_fold(RnaSequence(s), GreedyConfig(width), backend=b)
            assert [(r.p, r.q, r.length) for r in got.runs] == want, (s, b)


def test_long_patterns_use_renumbered_buckets():
    # width 11 means 12-base windows, beyond the dense bucket table
    rng = trial_rng(3, 0)
    seq = random_sequence(rng, 400)
    s = "GGGGGGGGGGGGAAACCCCCCCCCCCC" + seq.text
    res = greedy_fold(RnaSequence(s), GreedyConfig(11))
    assert res.runs[0] == StackRun(1, 27, 11)
    assert [(r.p, r.q, r.length) for r in res.runs] == naive_greedy(s, 11)


@settings(max_examples=150, deadline=None)
@given(st.text(alphabet="ACGU", max_size=80), st.integers(3, 6))
def test_runs_are_disjoint_and_valid(s, width):
    seq = RnaSequence(s)
    res = greedy_fold(seq, GreedyConfig(width))
    struct = runs_to_structure(seq, res.runs)
    # adjacent runs on the same helix may merge, so the structure can only count more
    assert count_stacking_pairs(struct) >= res.total
    assert all(1 <= r.length <= width for r in res.runs)
    assert list(res.phases) == sorted(res.phases, reverse=True)


@settings(max_examples=80, deadline=None)
@given(st.text(alphabet="ACGU", max_size=14))
def test_never_beats_optimum_and_keeps_a_third(s):
    seq = RnaSequence(s)
    g = greedy_fold(seq).total
    opt = exact_optimum(seq).optimum
    assert g <= opt and 3 * g >= opt


def test_backends_agree_on_long_input():
    if len(_backend.BACKENDS) < 2:
        pytest.skip("compiled kernels not built")
    seq = random_sequence(trial_rng(11, 0), 50_000)
    a = greedy_fold(seq, backend="python")
    b = greedy_fold(seq, backend="compiled")
    assert a == b and a.total > 0
    assert np.array_equal(a.p, b.p)

import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stackfold import _backend
from stackfold.core import RnaSequence, count_stacking_pairs
from stackfold.nested import dp_tables, max_stacking_pairs_nested
from stackfold.planarity import crossing_graph

from conftest import brute_optimum


@pytest.mark.parametrize("text,count", [("AAGUU", 1), ("AAAA", 0), ("GGGAAACCC", 2),
                                        ("GGGGAAACCCC", 3), ("AAGUUAAGUU", 2), ("", 0),
                                        ("A", 0)])
def test_examples(text, count, backends):
    for b in backends:
        assert max_stacking_pairs_nested(RnaSequence(text), backend=b).count == count


def test_hairpin_traceback():
    res = max_stacking_pairs_nested(RnaSequence("GGGAAACCC"))
    assert [tuple(p) for p in res.structure.pairs] == [(1, 9), (2, 8), (3, 7)]


def test_literal_recurrence_misses_adjacent_helices(backends):
    seq = RnaSequence("AAGUUAAGUU")
    for b in backends:
        assert max_stacking_pairs_nested(seq, literal=True, backend=b).count == 1
        assert max_stacking_pairs_nested(seq, backend=b).count == 2


def test_table_accessors():
    t = dp_tables(RnaSequence("GGGAAACCC"))
    assert t.V(1, 9) == 2
    assert t.V(1, 4) is None  # G-A cannot pair
    assert t.W(1, 9) == 2 and t.W(5, 4) == 0
    assert t.V(3, 7) == 0


def test_against_brute_force_small():
    rng = random.Random(5)
    for _ in range(80):
        s = "".join(rng.choice("ACGU") for _ in range(rng.randint(4, 10)))
        assert max_stacking_pairs_nested(RnaSequence(s)).count == brute_optimum(s, "nested"), s


@settings(max_examples=200, deadline=None)
@given(st.text(alphabet="ACGU", max_size=40))
def test_structure_realises_count_and_is_nested(s):
    res = max_stacking_pairs_nested(RnaSequence(s))
    assert count_stacking_pairs(res.structure) == res.count
    assert crossing_graph(res.structure).is_edgeless()


@settings(max_examples=100, deadline=None)
@given(st.text(alphabet="ACGU", max_size=40))
def test_literal_never_exceeds_corrected(s):
    seq = RnaSequence(s)
    lit = max_stacking_pairs_nested(seq, literal=True)
    assert lit.count <= max_stacking_pairs_nested(seq).count
    assert count_stacking_pairs(lit.structure) == lit.count


@settings(max_examples=60, deadline=None)
@given(st.text(alphabet="ACGU", min_size=1, max_size=60), st.booleans())
def test_backends_fill_identical_tables(s, literal):
    if len(_backend.BACKENDS) < 2:
        pytest.skip("compiled kernels not built")
    a = dp_tables(RnaSequence(s), literal, backend="python")
    b = dp_tables(RnaSequence(s), literal, backend="compiled")
    for name in ("v", "w", "v_choice", "v_split", "w_choice", "w_split"):
        assert np.array_equal(getattr(a, name), getattr(b, name)), name


@settings(max_examples=50, deadline=None)
@given(st.text(alphabet="ACGU", max_size=30), st.text(alphabet="ACGU", max_size=30))
def test_concatenation_is_superadditive(a, b):
    f = lambda t: max_stacking_pairs_nested(RnaSequence(t)).count  # noqa: E731
    assert f(a + b) >= f(a) + f(b)


def test_unknown_backend_rejected():
    with pytest.raises(ValueError):
        max_stacking_pairs_nested(RnaSequence("ACGU"), backend="fortran")

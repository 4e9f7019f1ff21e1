import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from treeramsey.coloring import coloring_from_json
from treeramsey.errors import CapExceeded, DepthExhausted
from treeramsey.ramsey_bridge import (
    IntTupleColoring,
    brute_force_rt,
    extract_homogeneous_set,
    is_homogeneous,
    lift_length_coloring,
    rt_solve,
)
from treeramsey.tree_core import Embedding, TruncatedTree, enumerate_chains, verify_embedding


def homogeneous_by_hand(f, subset):
    colors = set()
    for t in itertools.combinations(sorted(subset), f.n):
        colors.add(f(t))
    return len(colors) <= 1


def test_lift_constant():
    f = IntTupleColoring.from_function(2, 2, 5, lambda i, j: 1)
    g = lift_length_coloring(f, 4)
    assert {g.color(c) for c in enumerate_chains(TruncatedTree(4), 2)} == {1}


def test_lift_parity():
    f = IntTupleColoring.from_function(2, 2, 5, lambda i, j: (i + j) % 2)
    assert lift_length_coloring(f, 4).color(("", "0")) == 1


def test_lift_seeded_reads_lengths():
    f = IntTupleColoring(2, 3, 4, seed=77)
    g = lift_length_coloring(f, 3)
    for c in enumerate_chains(TruncatedTree(3), 2):
        assert g.color(c) == f((len(c[0]), len(c[1])))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_lift_depends_only_on_lengths(n):
    D = 4
    g = lift_length_coloring(IntTupleColoring(n, 2, D + 1, seed=5), D)
    seen = {}
    for c in enumerate_chains(TruncatedTree(D), n):
        profile = tuple(len(x) for x in c)
        assert seen.setdefault(profile, g.color(c)) == g.color(c)


def test_lift_needs_domain():
    with pytest.raises(ValueError):
        lift_length_coloring(IntTupleColoring(2, 2, 4, seed=1), 4)


def test_extract_identity():
    assert extract_homogeneous_set(Embedding.identity(2), 3) == [0, 1, 2]


def test_extract_reads_lengths():
    w = Embedding(2, {
        "": "00", "0": "00000", "1": "001",
        "00": "000000000", "01": "000001", "10": "0010", "11": "0011",
    })
    assert verify_embedding(w, TruncatedTree(9))
    assert extract_homogeneous_set(w, 3) == [2, 5, 9]


def test_extract_needs_depth():
    with pytest.raises(ValueError):
        extract_homogeneous_set(Embedding.identity(1), 3)


def test_rt_constant():
    f = IntTupleColoring.from_function(2, 2, 7, lambda i, j: 1)
    color, subset = rt_solve(f, 3, 6)
    assert color == 1 and len(subset) == 3 and len(set(subset)) == 3
    assert homogeneous_by_hand(f, subset)


def test_rt_parity():
    f = IntTupleColoring.from_function(2, 2, 11, lambda i, j: (i + j) % 2)
    color, subset = rt_solve(f, 3, 10)
    assert len(subset) == 3 and homogeneous_by_hand(f, subset)
    assert all(f(t) == color for t in itertools.combinations(subset, 2))
    # same-parity-sum pairs force all elements to share a parity
    assert len({x % 2 for x in subset}) == 1


def test_rt_unary():
    f = IntTupleColoring.from_function(1, 2, 5, lambda i: i % 2)
    color, subset = rt_solve(f, 3, 4)
    assert is_homogeneous(f, subset, color)


def test_rt_too_shallow():
    f = IntTupleColoring.from_function(2, 2, 3, lambda i, j: int(i == 0))
    with pytest.raises(DepthExhausted):
        rt_solve(f, 3, 2)


def test_rt_rejects_small_size():
    with pytest.raises(ValueError):
        rt_solve(IntTupleColoring(2, 2, 6, seed=0), 1, 5)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 32), st.integers(1, 2), st.integers(1, 2), st.integers(4, 16))
def test_rt_output_always_homogeneous(seed, n, k, N):
    f = IntTupleColoring(n, k, N, seed=seed)
    try:
        color, subset = rt_solve(f, 3, N - 1)
    except DepthExhausted:
        return
    assert homogeneous_by_hand(f, subset) and f(tuple(subset[:n])) == color


def test_rt_and_brute_force_both_verify():
    wins = 0
    for seed in range(20):
        f = IntTupleColoring(2, 2, 14, seed=seed)
        brute = brute_force_rt(f, 3)
        assert brute is not None and is_homogeneous(f, brute[1], brute[0])
        try:
            color, subset = rt_solve(f, 3, 13)
        except DepthExhausted:
            continue
        wins += 1
        assert is_homogeneous(f, subset, color)
    assert wins >= 1


def test_brute_constant():
    f = IntTupleColoring.from_function(2, 3, 8, lambda i, j: 2)
    assert brute_force_rt(f, 4) == (2, [0, 1, 2, 3])


def test_brute_planted():
    planted = {1, 4, 6, 7}
    f = IntTupleColoring.from_function(
        2, 3, 9, lambda i, j: 0 if {i, j} <= planted else 1 + (i * 7 + j * 3) % 2)
    color, subset = brute_force_rt(f, 4)
    assert is_homogeneous(f, subset, color)


def test_brute_none_when_domain_equals_size():
    f = IntTupleColoring.from_function(2, 2, 3, lambda i, j: int(i == 0))
    assert brute_force_rt(f, 3) is None


def test_brute_cap():
    with pytest.raises(CapExceeded):
        brute_force_rt(IntTupleColoring(2, 2, 40, seed=1), 6, cap=1000)


def test_tuple_json_round_trip():
    for f in (IntTupleColoring(2, 2, 6, seed=3),
              IntTupleColoring.from_function(2, 2, 5, lambda i, j: (i * j) % 2)):
        text = json.dumps(f.to_json())
        assert json.dumps(IntTupleColoring.from_json(json.loads(text)).to_json()) == text


def test_length_profile_json():
    g = lift_length_coloring(IntTupleColoring(2, 2, 6, seed=3), 5)
    back = coloring_from_json(json.loads(json.dumps(g.to_json())))
    assert back.to_json() == g.to_json()

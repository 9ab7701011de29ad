"""
Tests for finite-type recognition, the E/T split and 2-links
"""

import itertools

import pytest

from oracles import cayley_distances
from utils.finite_types import group_order, is_finite_type, lk2, odd_classes, split_ea
from utils.system_utils import system_from_dict


def _system(generators, pairs):
    return system_from_dict({"generators": generators, "m": [list(p) for p in pairs]})


def test_single_generator_is_a1(sys_a):
    verdict = is_finite_type(sys_a, ["c"])
    assert verdict.finite
    assert [(c.subset, c.tag) for c in verdict.components] == [(("c",), "A1")]


def test_infinite_dihedral_pair_is_infinite(sys_a):
    verdict = is_finite_type(sys_a, ["x", "y"])
    assert not verdict.finite
    assert verdict.components[0].tag == "infinite"
    assert verdict.order is None


def test_a3_is_recognized_with_order_24(a3, analyzer_for):
    verdict = is_finite_type(a3, a3.generators)
    assert verdict.finite
    assert verdict.components[0].tag == "A3"
    assert verdict.order == 24
    assert len(analyzer_for("a3").words.enumerate_group(a3.generators)) == 24


@pytest.mark.parametrize("generators, pairs, tag, order", [
    (["s", "t"], [("s", "t", 4)], "B2", 8),
    (["s", "t"], [("s", "t", 5)], "I2(5)", 10),
    (["s", "t"], [("s", "t", 6)], "I2(6)", 12),
    (["r", "s", "t"], [("r", "s", 4), ("s", "t", 3), ("r", "t", 2)], "B3", 48),
    (["r", "s", "t"], [("r", "s", 5), ("s", "t", 3), ("r", "t", 2)], "H3", 120),
    (["p", "q", "r", "s"], [("p", "q", 3), ("q", "r", 4), ("r", "s", 3),
                            ("p", "r", 2), ("p", "s", 2), ("q", "s", 2)], "F4", 1152),
    (["p", "q", "r", "s"], [("p", "q", 3), ("q", "r", 3), ("q", "s", 3),
                            ("p", "r", 2), ("p", "s", 2), ("r", "s", 2)], "D4", 192),
    (["p", "q", "r", "s"], [("p", "q", 5), ("q", "r", 3), ("r", "s", 3),
                            ("p", "r", 2), ("p", "s", 2), ("q", "s", 2)], "H4", 14400),
])
def test_catalog_tags_and_orders(generators, pairs, tag, order):
    system = _system(generators, pairs)
    verdict = is_finite_type(system, generators)
    assert verdict.finite
    assert [c.tag for c in verdict.components] == [tag]
    assert verdict.order == order
    assert group_order(system, generators) == order


def test_affine_and_cyclic_diagrams_are_infinite():
    triangle = _system(["r", "s", "t"], [("r", "s", 3), ("s", "t", 3), ("r", "t", 3)])
    assert not is_finite_type(triangle, triangle.generators).finite
    b_in_middle = _system(["p", "q", "r", "s", "u"], [
        ("p", "q", 3), ("q", "r", 4), ("r", "s", 3), ("s", "u", 3),
        ("p", "r", 2), ("p", "s", 2), ("p", "u", 2), ("q", "s", 2), ("q", "u", 2), ("r", "u", 2),
    ])
    assert not is_finite_type(b_in_middle, b_in_middle.generators).finite


def test_exceptional_branched_diagrams():
    # E6: arms of lengths 1, 2, 2 around the branch point b
    generators = ["b", "x", "y1", "y2", "z1", "z2"]
    edges = {("b", "x"), ("b", "y1"), ("y1", "y2"), ("b", "z1"), ("z1", "z2")}
    pairs = []
    for s, t in itertools.combinations(generators, 2):
        pairs.append((s, t, 3 if (s, t) in edges or (t, s) in edges else 2))
    system = _system(generators, pairs)
    verdict = is_finite_type(system, generators)
    assert [c.tag for c in verdict.components] == ["E6"]
    assert verdict.order == 51840


def test_classification_agrees_with_cayley_bfs():
    """Every rank <= 3 system with labels in {2,...,5}: finite iff the Cayley BFS closes, with the catalog order"""
    labels = [2, 3, 4, 5]
    for rank in (1, 2, 3):
        generators = ["r", "s", "t"][:rank]
        pairs = list(itertools.combinations(generators, 2))
        for chosen in itertools.product(labels, repeat=len(pairs)):
            system = _system(generators, [(s, t, m) for (s, t), m in zip(pairs, chosen)])
            verdict = is_finite_type(system, generators)
            # the longest element of a rank 3 finite group has length at most 15
            reached = cayley_distances(system, radius=16)
            closed = max(reached.values()) < 16
            assert verdict.finite == closed, (chosen, verdict)
            if verdict.finite:
                assert verdict.order == len(reached), (chosen, verdict)


def test_split_ea_examples(sys_a):
    split = split_ea(sys_a, ["x", "c", "y"])
    assert (split.E, split.T) == (("x", "y"), ("c",))
    split = split_ea(sys_a, [])
    assert (split.E, split.T) == ((), ())
    split = split_ea(sys_a, ["x", "b", "y"])
    assert (split.E, split.T) == (("b", "x", "y"), ())


def test_lk2_examples(sys_a, sys_c):
    assert lk2(sys_a, []) == sys_a.generators
    assert lk2(sys_a, ["x", "y"]) == ("a", "c", "d")
    assert lk2(sys_c, ["s6", "s7"]) == ("s1", "s2", "s3", "s4", "s5")


def test_odd_classes(sys_a, dinf):
    classes = odd_classes(sys_a)
    assert classes["x"] == classes["b"] == classes["y"]
    assert classes["c"] == classes["d"]
    assert len({classes["a"], classes["b"], classes["c"]}) == 3
    assert odd_classes(dinf)["a"] != odd_classes(dinf)["b"]

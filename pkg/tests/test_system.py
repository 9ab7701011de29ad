"""
Tests for Coxeter system parsing, restriction and separator queries
"""

import json
import math

import pytest

from errors import InputError
from models import EngineCaps
from utils.system_utils import (
    noncommuting_diagram,
    parse_system,
    presentation_diagram,
    restrict,
    separates,
    separates_within,
    serialize_system,
    system_from_dict,
)


def test_parse_sys_b_gives_cycle_plus_chord(sys_b):
    graph = presentation_diagram(sys_b)
    assert sorted(graph.nodes()) == ["a1", "a2", "a3", "a4", "a5"]
    edges = {frozenset(edge) for edge in graph.edges()}
    assert edges == {
        frozenset(pair) for pair in
        [("a1", "a2"), ("a2", "a3"), ("a3", "a4"), ("a4", "a5"), ("a5", "a1"), ("a2", "a5")]
    }
    assert sys_b.order("a1", "a3") == math.inf


def test_parse_single_generator():
    system = parse_system('{"generators": ["s"]}')
    assert system.generators == ("s",)
    assert presentation_diagram(system).number_of_edges() == 0
    assert system.order("s", "s") == 1


@pytest.mark.parametrize("data", [
    {"generators": ["s", "t"], "m": [["s", "t", 1]]},
    {"generators": ["s", "s"]},
    {"generators": ["s", "t"], "m": [["s", "u", 3]]},
    {"generators": ["s", "t"], "m": [["s", "t", 3], ["t", "s", 4]]},
    {"generators": ["s", "t"], "m": [["s", "s", 2]]},
    {"generators": ["s", "t"], "m": [["s", "t", 2.5]]},
    {"m": []},
    {"generators": "ab"},
    {"generators": ["s", 1]},
    {"generators": ["a", "b"], "m": [[["a"], "b", 3]]},
    {"generators": ["a", "b"], "m": [5]},
    {"generators": ["a", "b"], "m": 5},
    {"generators": ["a", "b"], "m": [["a", "b"]]},
])
def test_parse_rejects_bad_systems(data):
    with pytest.raises(InputError):
        system_from_dict(data)


def test_parse_rejects_malformed_json():
    with pytest.raises(InputError):
        parse_system("{generators: ")


def test_symmetric_duplicate_pair_is_accepted():
    system = system_from_dict({"generators": ["s", "t"], "m": [["t", "s", 3], ["s", "t", 3]]})
    assert system.m == (("s", "t", 3),)


def test_zero_means_infinity_and_is_not_stored():
    system = system_from_dict({"generators": ["a", "b"], "m": [["a", "b", 0]]})
    assert system.order("a", "b") == math.inf
    assert system.m == ()


def test_restrict_examples(sys_a, sys_b):
    sub = restrict(sys_a, ["y", "x", "c"])
    assert sub.generators == ("c", "x", "y")
    assert sub.order("x", "c") == 2
    assert sub.order("c", "y") == 2
    assert sub.order("x", "y") == math.inf

    assert restrict(sys_a, []).generators == ()
    assert restrict(sys_b, ["a2", "a4"]).order("a2", "a4") == math.inf


def test_restrict_rejects_unknown_generator(sys_a):
    with pytest.raises(InputError):
        restrict(sys_a, ["x", "q"])


def test_separates_examples(sys_a):
    assert separates(sys_a, ["x", "c", "y"]) == [("a", "b"), ("d",)]
    assert separates(sys_a, ["x", "b", "y"]) == [("a",), ("c", "d")]
    assert separates(sys_a, []) is None


def test_disconnected_diagram_is_separated_by_empty_set(dinf):
    assert separates(dinf, []) == [("a",), ("b",)]


def test_separates_within_examples(sys_b):
    assert not separates_within(sys_b, ["a2", "a5"], ["a2", "a3", "a4", "a5"])
    assert separates_within(sys_b, ["a2", "a5"], sys_b.generators)
    assert not separates_within(sys_b, ["a2", "a5"], ["a2"])


def test_diagram_membership_rule(sys_a):
    """m = 2 lies in neither diagram, finite m >= 3 in both, infinity only in the non-commuting one"""
    gamma = presentation_diagram(sys_a)
    noncommuting = noncommuting_diagram(sys_a)
    for i, s in enumerate(sys_a.generators):
        for t in sys_a.generators[i + 1:]:
            m = sys_a.order(s, t)
            assert gamma.has_edge(s, t) == (m != math.inf)
            assert noncommuting.has_edge(s, t) == (m != 2)


def test_separator_components_cover_complement(sys_a):
    gamma = presentation_diagram(sys_a)
    components = separates(sys_a, ["x", "c", "y"])
    covered = set().union(*map(set, components))
    assert covered == set(sys_a.generators) - {"x", "c", "y"}
    for first, second in [(components[0], components[1])]:
        assert not any(gamma.has_edge(u, v) for u in first for v in second)


def test_serialize_round_trip(sys_a, sys_c):
    for system in (sys_a, sys_c):
        text = serialize_system(system)
        again = parse_system(text)
        assert again == system
        assert serialize_system(again) == text
        assert json.loads(text)["generators"] == list(system.generators)


def test_caps_from_text_overrides_defaults():
    caps = EngineCaps.from_text("generators=8, order=64")
    assert caps.generators == 8
    assert caps.order == 64
    assert caps.length == EngineCaps().length


@pytest.mark.parametrize("text", ["colour=3", "length=0", "order=-2", "closure=many", "memo"])
def test_caps_from_text_rejects_bad_values(text):
    with pytest.raises(InputError):
        EngineCaps.from_text(text)

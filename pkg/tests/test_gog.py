"""
Tests for visual decompositions: validation, compatible splits, reduction
and irreducible refinement
"""

import pytest

from data.sample_decompositions import get_sample_decompositions, get_sample_trace
from errors import InputError, InvalidMoveError, PreconditionError
from models import GogEdge, GogVertex, SplitMove, ViolationKind, VisualGog
from utils.gog_builder import (
    GogBuilder,
    collapse_edge,
    export_gog,
    import_gog,
    is_collapsible,
    reduce_gog,
    trivial_gog,
)
from utils.system_utils import system_from_dict

DECOMPOSITIONS = get_sample_decompositions()


def _gog(vertices, edges=()):
    return VisualGog(
        vertices=tuple(GogVertex(id=i, label=tuple(label)) for i, label in vertices),
        edges=tuple(GogEdge(u=u, v=v, label=tuple(label)) for u, v, label in edges),
    )


def _all_reductions(g):
    """Label signatures of every fully reduced result over all collapse orders"""
    positions = [i for i, edge in enumerate(g.edges) if is_collapsible(g, edge)]
    if not positions:
        return {g.label_signature()}
    results = set()
    for position in positions:
        results |= _all_reductions(collapse_edge(g, position))
    return results


@pytest.mark.parametrize("name", [n for n in DECOMPOSITIONS if n != "sysB_missing_edge"])
def test_sample_decompositions_are_valid(analyzer_for, name):
    system_name, g = DECOMPOSITIONS[name]
    report = analyzer_for(system_name).validate(g)
    assert report.valid, report.violations
    assert report.violations == []


def test_missing_diagram_edge_is_reported(analyzer_for):
    _, g = DECOMPOSITIONS["sysB_missing_edge"]
    report = analyzer_for("sysB").validate(g)
    assert not report.valid
    assert [v.kind for v in report.violations] == [ViolationKind.MISSING_DIAGRAM_EDGE]
    assert "a1-a5" in report.violations[0].detail


def test_trivial_decomposition_is_valid(analyzer_for):
    for name in ("sysA", "sysB", "dinf"):
        analyzer = analyzer_for(name)
        g = trivial_gog(analyzer.system)
        assert g.vertices == (GogVertex(id=0, label=analyzer.system.generators),)
        assert analyzer.validate(g).valid


@pytest.mark.parametrize("g, kind", [
    (_gog([(0, ["a"]), (1, ["b"])]), ViolationKind.NOT_A_TREE),
    (_gog([(0, ["a"]), (1, ["b"])], [(0, 1, []), (1, 0, [])]), ViolationKind.NOT_A_TREE),
    (_gog([(0, ["a"]), (1, ["b"])], [(0, 2, [])]), ViolationKind.UNKNOWN_VERTEX),
    (_gog([(0, ["a"]), (1, ["b"])], [(0, 1, ["a"])]), ViolationKind.EDGE_NOT_IN_ENDPOINT),
    (_gog([(0, ["a"])]), ViolationKind.EMPTY_SUPPORT),
    (_gog([(0, ["a", "b"]), (1, ["c"]), (2, ["a"])], [(0, 1, []), (1, 2, [])]), ViolationKind.DISCONNECTED_SUPPORT),
])
def test_structural_violations(g, kind):
    system = system_from_dict({"generators": ["a", "b", "c"]})
    report = GogBuilder(system).validate(g)
    assert not report.valid
    assert report.violations[0].kind == kind


def test_replay_of_sys_d_trace_reduces_to_two_vertices(analyzer_for):
    builder = analyzer_for("sysD").builder
    states = builder.replay(get_sample_trace("sysD"))
    assert len(states) == 4
    assert states[2].label_signature() == DECOMPOSITIONS["sysD_chain"][1].label_signature()
    assert states[-1].label_signature() == DECOMPOSITIONS["sysD_collapsed"][1].label_signature()
    for state in states:
        assert builder.validate(state).valid


def test_collapse_orders_agree(analyzer_for):
    builder = analyzer_for("sysD").builder
    _, chain = DECOMPOSITIONS["sysD_chain"]
    unreduced = builder.apply_split(chain, get_sample_trace("sysD")[2])
    assert len(unreduced.vertices) == 4
    results = _all_reductions(unreduced)
    assert results == {DECOMPOSITIONS["sysD_collapsed"][1].label_signature()}
    assert reduce_gog(unreduced).label_signature() in results


def test_collapse_keeps_the_larger_endpoint():
    g = _gog([(0, ["a", "b"]), (1, ["b"]), (2, ["b", "c"])], [(0, 1, ["b"]), (1, 2, ["b"])])
    collapsed = collapse_edge(g, 0)
    assert [v.id for v in collapsed.vertices] == [0, 2]
    assert collapsed.edges == (GogEdge(u=0, v=2, label=("b",)),)


def test_collapse_rejects_proper_edge():
    g = _gog([(0, ["a", "b"]), (1, ["b", "c"])], [(0, 1, ["b"])])
    with pytest.raises(InvalidMoveError):
        collapse_edge(g, 0)


def test_reduce_is_idempotent():
    for _, g in DECOMPOSITIONS.values():
        reduced = reduce_gog(g)
        assert reduce_gog(reduced) == reduced
        assert not any(is_collapsible(reduced, edge) for edge in reduced.edges)


def test_compatible_splits_of_trivial_sys_b(analyzer_for):
    builder = analyzer_for("sysB").builder
    moves = builder.compatible_splits(trivial_gog(builder.system), 0)
    assert len(moves) == 1
    move = moves[0]
    assert move.E == ("a2", "a5")
    assert (move.part_a, move.part_b) == (("a1", "a2", "a5"), ("a2", "a3", "a4", "a5"))


def test_compatible_splits_of_trivial_sys_d(analyzer_for):
    builder = analyzer_for("sysD").builder
    moves = builder.compatible_splits(trivial_gog(builder.system), 0)
    # seven side assignments over {s1,s2}, three over each {s1,s2,si}, one over {s3,...,s6}
    assert len(moves) == 7 + 4 * 3 + 1
    assert moves[0].E == ("s1", "s2")
    assert moves[0].part_a == ("s1", "s2", "s3")
    assert moves[-1].E == ("s3", "s4", "s5", "s6")
    unrestricted = builder.compatible_splits(trivial_gog(builder.system), 0, restrict_minimal=False)
    assert len(unrestricted) > len(moves)


def test_mirrored_split_is_listed_once(analyzer_for):
    builder = analyzer_for("sysD").builder
    _, chain = DECOMPOSITIONS["sysD_chain"]
    # {s4} and {s5} on swapped sides give the same pair of vertices
    moves = builder.compatible_splits(chain, 1)
    assert len(moves) == 1
    assert moves[0].E == ("s1", "s2")
    assert (moves[0].part_a, moves[0].part_b) == (("s1", "s2", "s4"), ("s1", "s2", "s5"))


@pytest.mark.parametrize("name", ["sysB", "sysC", "sysD"])
def test_compatible_splits_have_distinct_vertex_pairs(analyzer_for, name):
    builder = analyzer_for(name).builder
    g = trivial_gog(builder.system)
    for _ in range(3):
        for vertex in g.vertices:
            moves = builder.compatible_splits(g, vertex.id, restrict_minimal=False)
            pairs = [(move.E, frozenset((move.part_a, move.part_b))) for move in moves]
            assert len(pairs) == len(set(pairs))
        move = builder.first_move(g)
        if move is None:
            break
        g = reduce_gog(builder.apply_split(g, move))


@pytest.mark.parametrize("name", ["sysB", "sysC", "sysD"])
def test_every_compatible_split_applies(analyzer_for, name):
    builder = analyzer_for(name).builder
    frontier = [trivial_gog(builder.system)]
    for _ in range(2):
        grown = []
        for g in frontier:
            for vertex in g.vertices:
                for move in builder.compatible_splits(g, vertex.id):
                    assert builder.splittings.is_minimal(move.E)
                    assert set(move.part_a) & set(move.part_b) == set(move.E)
                    after = builder.apply_split(g, move)
                    assert builder.validate(after).valid
                    assert len(after.vertices) == len(g.vertices) + 1
                    grown.append(reduce_gog(after))
        frontier = grown[:10]


def test_apply_split_of_sys_c(analyzer_for):
    builder = analyzer_for("sysC").builder
    move = SplitMove(
        vertex_label=builder.system.generators,
        E=("s2", "s6", "s7"),
        side_a=("s1", "s2", "s6", "s7"),
        side_b=("s2", "s3", "s4", "s5", "s6", "s7"),
    )
    g = builder.apply_split(trivial_gog(builder.system), move)
    assert [v.label for v in g.vertices] == [("s1", "s2", "s6", "s7"), ("s2", "s3", "s4", "s5", "s6", "s7")]
    assert g.edges == (GogEdge(u=0, v=1, label=("s2", "s6", "s7")),)

    again = move.model_copy(update={"vertex_label": ("s2", "s3", "s4", "s5", "s6", "s7")})
    with pytest.raises(InvalidMoveError):
        builder.apply_split(g, again)


@pytest.mark.parametrize("update", [
    {"vertex_label": ("s1", "s2")},
    {"E": ("s3", "s6", "s7"), "side_a": ("s1", "s2", "s3", "s6", "s7")},
    {"side_b": ("s3", "s4", "s5", "s6", "s7")},
    {"E": ("s6",), "side_a": ("s1", "s6"), "side_b": ("s2", "s3", "s4", "s5", "s6", "s7")},
    {"side_a": ("s1", "s2", "s3", "s6", "s7"), "side_b": ("s2", "s4", "s5", "s6", "s7")},
])
def test_bind_move_rejects_bad_moves(analyzer_for, update):
    builder = analyzer_for("sysC").builder
    move = SplitMove(
        vertex_label=builder.system.generators,
        E=("s2", "s6", "s7"),
        side_a=("s1", "s2", "s6", "s7"),
        side_b=("s2", "s3", "s4", "s5", "s6", "s7"),
    ).model_copy(update=update)
    with pytest.raises(InvalidMoveError):
        builder.bind_move(trivial_gog(builder.system), move)


@pytest.mark.parametrize("system_name, start", [
    ("sysB", None),
    ("sysD", None),
    ("sysD", "sysD_chain"),
    ("sysC", "sysC_chain"),
    ("sysB", "sysB_chain"),
])
def test_merging_the_new_edge_undoes_a_split(analyzer_for, system_name, start):
    builder = analyzer_for(system_name).builder
    g = trivial_gog(builder.system) if start is None else DECOMPOSITIONS[start][1]
    for vertex in g.vertices:
        for move in builder.compatible_splits(g, vertex.id, restrict_minimal=False):
            after = builder.apply_split(g, move)
            merged = builder.merge_edge(after, len(after.edges) - 1)
            assert merged == g
            assert sorted(v.label for v in merged.vertices) == sorted(v.label for v in g.vertices)


def test_merge_edge_takes_the_union_label(analyzer_for):
    builder = analyzer_for("sysD").builder
    _, chain = DECOMPOSITIONS["sysD_chain"]
    merged = builder.merge_edge(chain, 1)
    assert [v.label for v in merged.vertices] == [("s1", "s2", "s3", "s4"), ("s1", "s2", "s4", "s5", "s6")]
    assert merged.edges == (GogEdge(u=0, v=1, label=("s1", "s2", "s4")),)
    assert builder.validate(merged).valid
    with pytest.raises(InvalidMoveError):
        builder.merge_edge(chain, 2)


def test_split_keeps_edges_on_their_side(analyzer_for):
    builder = analyzer_for("sysD").builder
    _, chain = DECOMPOSITIONS["sysD_chain"]
    g = builder.apply_split(chain, get_sample_trace("sysD")[2])
    by_label = {edge.label: edge for edge in g.edges}
    new_id = max(v.id for v in g.vertices)
    assert g.label_of(new_id) == ("s1", "s2", "s5")
    assert new_id in (by_label[("s1", "s2", "s5")].u, by_label[("s1", "s2", "s5")].v)
    assert 1 in (by_label[("s1", "s2", "s4")].u, by_label[("s1", "s2", "s4")].v)
    assert by_label[("s1", "s2")] == GogEdge(u=1, v=new_id, label=("s1", "s2"))


def test_looks_irreducible_examples(analyzer_for):
    sys_b = analyzer_for("sysB").builder
    assert not sys_b.looks_irreducible(trivial_gog(sys_b.system))
    collapsed = _gog([(0, ["a1", "a2", "a5"]), (1, ["a2", "a3", "a4", "a5"])], [(0, 1, ["a2", "a5"])])
    assert sys_b.looks_irreducible(collapsed)
    assert analyzer_for("sysC").builder.looks_irreducible(DECOMPOSITIONS["sysC_chain"][1])


def test_looks_irreducible_preconditions(analyzer_for):
    sys_b = analyzer_for("sysB").builder
    with pytest.raises(PreconditionError):
        sys_b.looks_irreducible(DECOMPOSITIONS["sysB_chain"][1])
    with pytest.raises(PreconditionError):
        sys_b.looks_irreducible(DECOMPOSITIONS["sysB_missing_edge"][1])
    unreduced = _gog(
        [(0, ["a1", "a2", "a5"]), (1, ["a2", "a5"]), (2, ["a2", "a3", "a4", "a5"])],
        [(0, 1, ["a2", "a5"]), (1, 2, ["a2", "a5"])],
    )
    with pytest.raises(PreconditionError):
        sys_b.looks_irreducible(unreduced)


def test_decomposition_of_sys_b(analyzer_for):
    result = analyzer_for("sysB").decompose()
    assert result.looks_irreducible
    assert result.gog.label_signature() == (
        (("a1", "a2", "a5"), ("a2", "a3", "a4", "a5")),
        ((("a1", "a2", "a5"), ("a2", "a3", "a4", "a5"), ("a2", "a5")),),
    )
    assert [move.E for move in result.trace] == [("a2", "a5")]


def test_decomposition_of_sys_c_is_the_chain(analyzer_for):
    result = analyzer_for("sysC").decompose()
    assert result.looks_irreducible
    assert result.gog.label_signature() == DECOMPOSITIONS["sysC_chain"][1].label_signature()


def test_decomposition_of_sys_d_is_irreducible(analyzer_for):
    analyzer = analyzer_for("sysD")
    result = analyzer.decompose()
    assert result.looks_irreducible
    assert analyzer.validate(result.gog).valid
    assert all(len(vertex.label) == 3 for vertex in result.gog.vertices)
    assert all(analyzer.splittings.is_minimal(edge.label) for edge in result.gog.edges)


def test_complete_diagram_stays_trivial():
    triangle = system_from_dict({"generators": ["r", "s", "t"], "m": [["r", "s", 2], ["s", "t", 2], ["r", "t", 2]]})
    result = GogBuilder(triangle).irreducible_decomposition()
    assert result.gog == trivial_gog(triangle)
    assert result.trace == []
    assert result.looks_irreducible


def test_replay_reports_failing_step(analyzer_for):
    builder = analyzer_for("sysD").builder
    trace = get_sample_trace("sysD")
    with pytest.raises(InvalidMoveError, match="trace step 1"):
        builder.replay([trace[0], trace[2]])


def test_export_dot():
    _, g = DECOMPOSITIONS["dinf_free_product"]
    assert export_gog(g, "dot") == (
        "graph gog {\n"
        '  v0 [label="a"];\n'
        '  v1 [label="b"];\n'
        '  v0 -- v1 [label=""];\n'
        "}\n"
    )


def test_export_json_reimports(analyzer_for):
    _, g = DECOMPOSITIONS["sysD_chain"]
    text = export_gog(g, "json")
    assert import_gog(text) == g
    assert analyzer_for("sysD").load_gog(text) == g


def test_export_rejects_unknown_format():
    with pytest.raises(InputError):
        export_gog(DECOMPOSITIONS["dinf_free_product"][1], "svg")


def test_import_rejects_malformed_decomposition(analyzer_for):
    with pytest.raises(InputError):
        import_gog('{"vertices": [{"id": "zero"}]}')
    with pytest.raises(InputError):
        analyzer_for("sysB").load_gog('{"vertices": [{"id": 0, "label": ["q"]}], "edges": []}')


@pytest.mark.parametrize("name", ["sysB", "sysC", "sysD"])
def test_irreducible_vertices_see_minimal_parts_on_adjacent_edges(analyzer_for, name):
    analyzer = analyzer_for(name)
    g = analyzer.decompose().gog
    infinite_part = {record.C: record.E for record in analyzer.splittings.classify_minimal()}
    for vertex in g.vertices:
        adjacent = {infinite_part[edge.label] for edge in g.incident_edges(vertex.id)}
        for record in analyzer.splittings.minimal_separators():
            if set(record.E) <= set(vertex.label):
                assert record.E in adjacent, (vertex.label, record.C)

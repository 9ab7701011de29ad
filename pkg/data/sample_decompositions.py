"""
Sample visual decompositions and split traces over the bundled systems
"""

from typing import Dict, List, Sequence, Tuple

from models import GogEdge, GogVertex, SplitMove, VisualGog


def _chain(vertex_labels: Sequence[Sequence[str]], edge_labels: Sequence[Sequence[str]]) -> VisualGog:
    """Path decomposition with vertex i joined to vertex i + 1"""
    vertices = tuple(GogVertex(id=i, label=tuple(label)) for i, label in enumerate(vertex_labels))
    edges = tuple(GogEdge(u=i, v=i + 1, label=tuple(label)) for i, label in enumerate(edge_labels))
    return VisualGog(vertices=vertices, edges=edges)


def get_sample_decompositions() -> Dict[str, Tuple[str, VisualGog]]:
    """
    Returns decompositions keyed by name, each with the corpus system it belongs to
    """
    return {
        "sysB_chain": ("sysB", _chain(
            [("a1", "a2", "a5"), ("a2", "a4", "a5"), ("a2", "a3", "a4")],
            [("a2", "a5"), ("a2", "a4")],
        )),
        # a5-a1 lies in no vertex label
        "sysB_missing_edge": ("sysB", _chain(
            [("a1", "a2"), ("a2", "a3", "a4", "a5")],
            [("a2",)],
        )),
        "sysC_chain": ("sysC", _chain(
            [
                ("s1", "s2", "s6", "s7"),
                ("s2", "s3", "s6", "s7"),
                ("s3", "s4", "s6", "s7"),
                ("s4", "s5", "s6", "s7"),
            ],
            [("s2", "s6", "s7"), ("s3", "s6", "s7"), ("s4", "s6", "s7")],
        )),
        "sysD_chain": ("sysD", _chain(
            [("s1", "s2", "s3", "s4"), ("s1", "s2", "s4", "s5"), ("s1", "s2", "s5", "s6")],
            [("s1", "s2", "s4"), ("s1", "s2", "s5")],
        )),
        "sysD_collapsed": ("sysD", _chain(
            [("s1", "s2", "s3", "s4"), ("s1", "s2", "s5", "s6")],
            [("s1", "s2")],
        )),
        "dinf_free_product": ("dinf", VisualGog(
            vertices=(GogVertex(id=0, label=("a",)), GogVertex(id=1, label=("b",))),
            edges=(GogEdge(u=0, v=1, label=()),),
        )),
    }


def get_sample_trace(name: str = "sysD") -> List[SplitMove]:
    """
    Split trace from the trivial decomposition, given by vertex labels

    sysD builds the three vertex chain, then splits its middle vertex over
    {s1, s2}; reducing leaves two vertices
    """
    traces = {
        "sysD": [
            SplitMove(
                vertex_label=("s1", "s2", "s3", "s4", "s5", "s6"),
                E=("s1", "s2", "s4"),
                side_a=("s1", "s2", "s3", "s4"),
                side_b=("s1", "s2", "s4", "s5", "s6"),
            ),
            SplitMove(
                vertex_label=("s1", "s2", "s4", "s5", "s6"),
                E=("s1", "s2", "s5"),
                side_a=("s1", "s2", "s3", "s4", "s5"),
                side_b=("s1", "s2", "s5", "s6"),
            ),
            SplitMove(
                vertex_label=("s1", "s2", "s4", "s5"),
                E=("s1", "s2"),
                side_a=("s1", "s2", "s3", "s4"),
                side_b=("s1", "s2", "s5", "s6"),
            ),
        ],
        "sysB": [
            SplitMove(
                vertex_label=("a1", "a2", "a3", "a4", "a5"),
                E=("a2", "a5"),
                side_a=("a1", "a2", "a5"),
                side_b=("a2", "a3", "a4", "a5"),
            ),
        ],
    }
    return traces[name]

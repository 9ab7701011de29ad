"""
Visual graph of groups decompositions
Building, validating, splitting and reducing labeled trees, and driving
them to decompositions irreducible with respect to minimal splittings
"""

import json
import logging
from typing import Iterable, List, Optional

import networkx as nx
from pydantic import ValidationError

from errors import InputError, InvalidMoveError, PreconditionError
from models import (
    CoxeterSystem,
    DecompositionResult,
    EngineCaps,
    GogEdge,
    GogVertex,
    SplitMove,
    ValidationReport,
    Violation,
    ViolationKind,
    VisualGog,
)
from utils.splitting_engine import SplittingEngine
from utils.system_utils import format_subset, presentation_diagram, separates, separates_within

logger = logging.getLogger(__name__)


def trivial_gog(system: CoxeterSystem) -> VisualGog:
    """One vertex labeled S"""
    return VisualGog(vertices=(GogVertex(id=0, label=system.generators),))


def is_collapsible(g: VisualGog, edge: GogEdge) -> bool:
    return edge.label in (g.label_of(edge.u), g.label_of(edge.v))


def _contract(g: VisualGog, position: int, removed: int, kept: int, label: Iterable[str]) -> VisualGog:
    """Drop the edge at position, fold removed into kept and relabel kept"""
    edges = []
    for i, other in enumerate(g.edges):
        if i == position:
            continue
        u = kept if other.u == removed else other.u
        v = kept if other.v == removed else other.v
        edges.append(GogEdge(u=u, v=v, label=other.label))
    vertices = tuple(
        GogVertex(id=kept, label=tuple(label)) if vertex.id == kept else vertex
        for vertex in g.vertices
        if vertex.id != removed
    )
    return VisualGog(vertices=vertices, edges=tuple(edges))


def collapse_edge(g: VisualGog, position: int) -> VisualGog:
    """
    Collapse the edge at a position in the edge list

    The endpoint whose label equals the edge label is merged into the
    other endpoint, which keeps its id and label

    Raises:
        InvalidMoveError: the edge label equals neither endpoint label
    """
    edge = g.edges[position]
    if edge.label == g.label_of(edge.u):
        removed, kept = edge.u, edge.v
    elif edge.label == g.label_of(edge.v):
        removed, kept = edge.v, edge.u
    else:
        raise InvalidMoveError(f"edge {edge.u}-{edge.v} label differs from both endpoint labels")
    return _contract(g, position, removed, kept, g.label_of(kept))


def reduce_gog(g: VisualGog) -> VisualGog:
    """Collapse edges whose label equals an endpoint label, least edge first, until none is left"""
    while True:
        position = next((i for i, edge in enumerate(g.edges) if is_collapsible(g, edge)), None)
        if position is None:
            return g
        g = collapse_edge(g, position)


def export_gog(g: VisualGog, fmt: str = "dot") -> str:
    """
    Serialize a decomposition

    Args:
        g: decomposition to write
        fmt: "dot" for Graphviz, "json" for the decomposition schema

    Raises:
        InputError: unknown format
    """
    if fmt == "json":
        return json.dumps(g.model_dump(mode="json"), indent=2)
    if fmt != "dot":
        raise InputError(f"unknown export format '{fmt}'")

    lines = ["graph gog {"]
    for vertex in g.vertices:
        lines.append(f'  v{vertex.id} [label="{",".join(vertex.label)}"];')
    for edge in g.edges:
        lines.append(f'  v{edge.u} -- v{edge.v} [label="{",".join(edge.label)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def import_gog(text: str) -> VisualGog:
    """
    Parse the JSON form {"vertices": [{"id", "label"}], "edges": [{"u", "v", "label"}]}

    Raises:
        InputError: malformed JSON or schema mismatch
    """
    try:
        return VisualGog.model_validate_json(text)
    except ValidationError as e:
        raise InputError(f"invalid decomposition: {e.errors()[0].get('msg', str(e))}") from e


class GogBuilder:
    """
    Split and reduce engine for visual decompositions of one Coxeter system
    Labels are compared as sets, which is sound because distinct subsets of S
    generate distinct special subgroups
    """

    def __init__(
        self,
        system: CoxeterSystem,
        splitting_engine: Optional[SplittingEngine] = None,
        caps: Optional[EngineCaps] = None,
    ):
        self.system = system
        self.splittings = splitting_engine or SplittingEngine(system, caps=caps)

    def trivial_gog(self) -> VisualGog:
        return trivial_gog(self.system)

    def canonicalize(self, g: VisualGog) -> VisualGog:
        """
        Sort every label into generator order

        Raises:
            InputError: a label uses an unknown generator
        """
        return VisualGog(
            vertices=tuple(GogVertex(id=v.id, label=self.system.subset(v.label)) for v in g.vertices),
            edges=tuple(GogEdge(u=e.u, v=e.v, label=self.system.subset(e.label)) for e in g.edges),
        )

    def load_gog(self, text: str) -> VisualGog:
        return self.canonicalize(import_gog(text))

    def validate(self, g: VisualGog) -> ValidationReport:
        """
        Check that a labeled tree is a visual decomposition

        Every presentation diagram edge must lie in a vertex label and, for
        each generator, the vertices and edges whose labels contain it must
        form a nonempty subtree; edge labels must lie in both endpoints
        """
        violations: List[Violation] = []

        ids = [vertex.id for vertex in g.vertices]
        if len(set(ids)) != len(ids):
            violations.append(Violation(kind=ViolationKind.NOT_A_TREE, detail="duplicate vertex id"))
        for edge in g.edges:
            for end in (edge.u, edge.v):
                if end not in ids:
                    violations.append(Violation(kind=ViolationKind.UNKNOWN_VERTEX, detail=f"edge endpoint {end} is not a vertex"))
        if violations:
            return ValidationReport(valid=False, violations=violations)

        tree = nx.MultiGraph()
        tree.add_nodes_from(ids)
        tree.add_edges_from((edge.u, edge.v) for edge in g.edges)
        if not ids or not nx.is_tree(tree):
            return ValidationReport(
                valid=False,
                violations=[Violation(kind=ViolationKind.NOT_A_TREE, detail="underlying graph is not a tree")],
            )

        labels = {vertex.id: set(vertex.label) for vertex in g.vertices}
        for edge in g.edges:
            for end in (edge.u, edge.v):
                if not set(edge.label) <= labels[end]:
                    violations.append(Violation(
                        kind=ViolationKind.EDGE_NOT_IN_ENDPOINT,
                        detail=f"edge {edge.u}-{edge.v} label {format_subset(edge.label)} not inside vertex {end}",
                    ))

        for s, t in presentation_diagram(self.system).edges():
            if not any({s, t} <= label for label in labels.values()):
                s, t = self.system.subset((s, t))
                violations.append(Violation(
                    kind=ViolationKind.MISSING_DIAGRAM_EDGE,
                    detail=f"diagram edge {s}-{t} lies in no vertex label",
                ))

        for s in self.system.generators:
            support = [vertex_id for vertex_id, label in labels.items() if s in label]
            if not support:
                violations.append(Violation(kind=ViolationKind.EMPTY_SUPPORT, detail=f"no vertex label contains {s}"))
                continue
            subtree = nx.Graph()
            subtree.add_nodes_from(support)
            subtree.add_edges_from((edge.u, edge.v) for edge in g.edges if s in edge.label)
            if not nx.is_connected(subtree):
                violations.append(Violation(
                    kind=ViolationKind.DISCONNECTED_SUPPORT,
                    detail=f"vertices and edges containing {s} do not form a subtree",
                ))

        return ValidationReport(valid=not violations, violations=violations)

    def compatible_splits(self, g: VisualGog, vertex_id: int, restrict_minimal: bool = True) -> List[SplitMove]:
        """
        Every non-trivial split of a vertex compatible with its adjacent edges

        Args:
            g: valid reduced decomposition
            vertex_id: vertex to split
            restrict_minimal: only split over minimal separators

        Returns:
            Moves ordered by separator (size, lexicographic) then by side
            assignment, component 0 always on side A; a split whose two parts
            repeat an earlier move, in either order, is dropped
        """
        label = g.label_of(vertex_id)
        vertex_set = set(label)
        adjacent = [set(edge.label) for edge in g.incident_edges(vertex_id)]

        moves = []
        for record in self.splittings.classify_minimal():
            if restrict_minimal and not record.minimal:
                continue
            separator = set(record.C)
            if not separator <= vertex_set or not separates_within(self.system, record.C, label):
                continue

            first, rest = record.components[0], record.components[1:]
            seen = set()
            for mask in range(2 ** len(rest) - 1):
                side_a = separator | set(first)
                side_b = set(separator)
                for bit, component in enumerate(rest):
                    (side_a if mask >> bit & 1 else side_b).update(component)
                part_a = self.system.subset(side_a & vertex_set)
                part_b = self.system.subset(side_b & vertex_set)
                if set(part_a) == separator or set(part_b) == separator:
                    continue
                if any(not (edge <= side_a or edge <= side_b) for edge in adjacent):
                    continue
                pair = frozenset((part_a, part_b))
                if pair in seen:
                    continue
                seen.add(pair)
                moves.append(SplitMove(
                    vertex=vertex_id,
                    vertex_label=label,
                    E=record.C,
                    side_a=self.system.subset(side_a),
                    side_b=self.system.subset(side_b),
                    part_a=part_a,
                    part_b=part_b,
                ))
        return moves

    def bind_move(self, g: VisualGog, move: SplitMove) -> SplitMove:
        """
        Resolve a move against g, locating the vertex by label when needed,
        and check every split condition

        Raises:
            InvalidMoveError: the move is not a non-trivial compatible split of g
        """
        vertex_label = self.system.subset(move.vertex_label)
        if move.vertex is not None and g.has_vertex(move.vertex):
            vertex_id = move.vertex
            if g.label_of(vertex_id) != vertex_label:
                raise InvalidMoveError(f"vertex {vertex_id} is not labeled {format_subset(vertex_label)}")
        else:
            vertex = g.vertex_with_label(vertex_label)
            if vertex is None:
                raise InvalidMoveError(f"no vertex labeled {format_subset(vertex_label)}")
            vertex_id = vertex.id

        separator = set(self.system.subset(move.E))
        side_a = set(self.system.subset(move.side_a))
        side_b = set(self.system.subset(move.side_b))
        vertex_set = set(vertex_label)

        if not separator <= vertex_set:
            raise InvalidMoveError(f"{format_subset(move.E)} is not inside the vertex label")
        if side_a & side_b != separator or side_a | side_b != set(self.system.generators):
            raise InvalidMoveError("sides must meet in E and cover S")
        components = separates(self.system, move.E)
        if components is None:
            raise InvalidMoveError(f"{format_subset(move.E)} does not separate the presentation diagram")
        if any(not (set(c) <= side_a or set(c) <= side_b) for c in components):
            raise InvalidMoveError("a component of the diagram minus E is cut between the sides")

        part_a = self.system.subset(side_a & vertex_set)
        part_b = self.system.subset(side_b & vertex_set)
        if set(part_a) == separator or set(part_b) == separator:
            raise InvalidMoveError("split is trivial: a side meets the vertex label only in E")
        for edge in g.incident_edges(vertex_id):
            if not (set(edge.label) <= side_a or set(edge.label) <= side_b):
                raise InvalidMoveError(f"adjacent edge {format_subset(edge.label)} lies in neither side")

        return SplitMove(
            vertex=vertex_id,
            vertex_label=vertex_label,
            E=self.system.subset(separator),
            side_a=self.system.subset(side_a),
            side_b=self.system.subset(side_b),
            part_a=part_a,
            part_b=part_b,
        )

    def apply_split(self, g: VisualGog, move: SplitMove) -> VisualGog:
        """
        Replace a vertex by its two parts joined by an edge labeled E

        The split vertex keeps its id with label A ∩ V; B ∩ V gets a new id.
        Each old edge goes to the side containing its label, side A on ties

        Raises:
            InvalidMoveError: the move does not apply to g
        """
        move = self.bind_move(g, move)
        new_id = g.next_vertex_id()
        part_a = set(move.part_a)

        vertices = []
        for vertex in g.vertices:
            vertices.append(GogVertex(id=vertex.id, label=move.part_a) if vertex.id == move.vertex else vertex)
        vertices.append(GogVertex(id=new_id, label=move.part_b))

        edges = []
        for edge in g.edges:
            if move.vertex in (edge.u, edge.v) and not set(edge.label) <= part_a:
                u = new_id if edge.u == move.vertex else edge.u
                v = new_id if edge.v == move.vertex else edge.v
                edge = GogEdge(u=u, v=v, label=edge.label)
            edges.append(edge)
        edges.append(GogEdge(u=move.vertex, v=new_id, label=move.E))

        result = VisualGog(vertices=tuple(vertices), edges=tuple(edges))
        report = self.validate(result)
        if not report.valid:
            raise InvalidMoveError(f"split produced an invalid decomposition: {report.violations[0].detail}")
        logger.debug(
            f"Split {format_subset(move.vertex_label)} over {format_subset(move.E)} into "
            f"{format_subset(move.part_a)} and {format_subset(move.part_b)}"
        )
        return result

    def merge_edge(self, g: VisualGog, position: int) -> VisualGog:
        """
        Contract the edge at a position into one vertex labeled by the union
        of its endpoint labels; the smaller endpoint id survives

        Undoes apply_split on the edge the split created

        Raises:
            InvalidMoveError: no edge at that position
        """
        if not 0 <= position < len(g.edges):
            raise InvalidMoveError(f"no edge at position {position}")
        edge = g.edges[position]
        kept, removed = sorted((edge.u, edge.v))
        label = self.system.subset(g.label_of(kept) + g.label_of(removed))
        return _contract(g, position, removed, kept, label)

    def ordered_vertices(self, g: VisualGog) -> List[GogVertex]:
        return sorted(g.vertices, key=lambda vertex: self.splittings.subset_key(vertex.label))

    def looks_irreducible(self, g: VisualGog) -> bool:
        """
        True iff no vertex admits a compatible split over a minimal separator

        Raises:
            PreconditionError: g is invalid, not reduced, or has an edge label
                that is not a minimal separator
        """
        report = self.validate(g)
        if not report.valid:
            raise PreconditionError(f"decomposition is invalid: {report.violations[0].detail}")
        if any(is_collapsible(g, edge) for edge in g.edges):
            raise PreconditionError("decomposition is not reduced")
        for edge in g.edges:
            if not self.splittings.is_minimal(edge.label):
                raise PreconditionError(f"edge label {format_subset(edge.label)} is not a minimal separator")
        return all(not self.compatible_splits(g, vertex.id, restrict_minimal=True) for vertex in g.vertices)

    def first_move(self, g: VisualGog) -> Optional[SplitMove]:
        for vertex in self.ordered_vertices(g):
            moves = self.compatible_splits(g, vertex.id, restrict_minimal=True)
            if moves:
                return moves[0]
        return None

    def irreducible_decomposition(self) -> DecompositionResult:
        """
        Split the trivial decomposition by the canonically least minimal move
        and reduce, until no vertex splits further
        """
        g = self.trivial_gog()
        trace: List[SplitMove] = []
        while True:
            move = self.first_move(g)
            if move is None:
                break
            g = reduce_gog(self.apply_split(g, move))
            trace.append(move)
        logger.info(f"Irreducible decomposition with {len(g.vertices)} vertices after {len(trace)} moves")
        return DecompositionResult(gog=g, trace=trace, looks_irreducible=self.looks_irreducible(g))

    def replay(self, moves: Iterable[SplitMove]) -> List[VisualGog]:
        """
        Decompositions along a trace from the trivial one, reducing after each move

        Raises:
            InvalidMoveError: a step does not apply
        """
        states = [self.trivial_gog()]
        for step, move in enumerate(moves):
            try:
                states.append(reduce_gog(self.apply_split(states[-1], move)))
            except InvalidMoveError as e:
                raise InvalidMoveError(f"trace step {step}: {e}") from e
        return states

"""
Coxeter system helpers
Parsing, restriction, the two derived diagrams and separator queries
"""

import json
import logging
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Optional

import networkx as nx
import numpy as np
from pydantic import ValidationError

from config import INFINITY_MARKER
from errors import InputError
from models import CoxeterSystem, SpecialSubset

logger = logging.getLogger(__name__)


def system_from_dict(data: Dict[str, Any]) -> CoxeterSystem:
    """
    Build a validated system from the JSON schema
    {"generators": [...], "m": [[s, t, m], ...]} where 0 means infinity

    Raises:
        InputError: duplicate generator, unknown symbol, bad or asymmetric m
    """
    if not isinstance(data, dict) or "generators" not in data:
        raise InputError("system must be an object with a 'generators' list")
    try:
        return CoxeterSystem(generators=data["generators"], m=data.get("m") or [])
    except ValidationError as e:
        first = e.errors()[0]
        raise InputError(f"invalid system: {first.get('msg', str(e))}") from e


def parse_system(text: str) -> CoxeterSystem:
    """Parse system JSON text"""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"system is not valid JSON: {e}") from e
    return system_from_dict(data)


def load_system(path: str) -> CoxeterSystem:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise InputError(f"cannot read system file {path}: {e}") from e
    return parse_system(text)


def serialize_system(system: CoxeterSystem) -> str:
    return json.dumps(system.to_schema(), indent=2)


def restrict(system: CoxeterSystem, subset: Iterable[str]) -> CoxeterSystem:
    """
    Subsystem on a subset of the generators with m restricted

    Raises:
        InputError: subset not contained in S
    """
    chosen = system.subset(subset)
    members = set(chosen)
    return CoxeterSystem(
        generators=chosen,
        m=[(s, t, value) for s, t, value in system.m if s in members and t in members],
    )


@lru_cache(maxsize=256)
def coxeter_matrix(system: CoxeterSystem) -> np.ndarray:
    """Symmetric matrix of orders, 1 on the diagonal and 0 for infinity"""
    n = system.rank
    matrix = np.full((n, n), INFINITY_MARKER, dtype=np.int64)
    np.fill_diagonal(matrix, 1)
    for s, t, value in system.m:
        i, j = system.index_of(s), system.index_of(t)
        matrix[i, j] = matrix[j, i] = value
    matrix.setflags(write=False)
    return matrix


@lru_cache(maxsize=256)
def presentation_diagram(system: CoxeterSystem) -> nx.Graph:
    """Graph on S with an edge labeled m(s,t) whenever m(s,t) is finite"""
    graph = nx.Graph()
    graph.add_nodes_from(system.generators)
    for s, t, value in system.m:
        graph.add_edge(s, t, label=value)
    return nx.freeze(graph)


@lru_cache(maxsize=256)
def noncommuting_diagram(system: CoxeterSystem) -> nx.Graph:
    """Graph on S with an edge whenever m(s,t) != 2, infinite labels included"""
    graph = nx.Graph()
    graph.add_nodes_from(system.generators)
    for i, s in enumerate(system.generators):
        for t in system.generators[i + 1:]:
            value = system.order(s, t)
            if value != 2:
                graph.add_edge(s, t, label=value)
    return nx.freeze(graph)


def canonical_components(system: CoxeterSystem, graph: nx.Graph, nodes: Iterable[str]) -> List[SpecialSubset]:
    """Connected components of the induced subgraph, ordered by smallest generator index"""
    induced = graph.subgraph(nodes)
    components = [system.subset(component) for component in nx.connected_components(induced)]
    return sorted(components, key=lambda comp: system.index_of(comp[0]))


def diagram_components_without(system: CoxeterSystem, removed: Iterable[str]) -> List[SpecialSubset]:
    """Components of the presentation diagram minus a set of generators"""
    removed = set(system.subset(removed))
    rest = [s for s in system.generators if s not in removed]
    return canonical_components(system, presentation_diagram(system), rest)


def separates(system: CoxeterSystem, subset: Iterable[str]) -> Optional[List[SpecialSubset]]:
    """
    Components of the presentation diagram minus C when there are at least two

    Returns:
        Canonically ordered component list, or None when C does not separate
    """
    components = diagram_components_without(system, subset)
    if len(components) < 2:
        return None
    return components


def separates_within(system: CoxeterSystem, subset: Iterable[str], within: Iterable[str]) -> bool:
    """True iff two points of D - C lie in different components of the diagram minus C"""
    removed = set(system.subset(subset))
    remaining = [s for s in system.subset(within) if s not in removed]
    if len(remaining) < 2:
        return False
    component_of = {}
    for position, component in enumerate(diagram_components_without(system, removed)):
        for s in component:
            component_of[s] = position
    return len({component_of[s] for s in remaining}) > 1


def format_subset(subset: Iterable[str]) -> str:
    subset = list(subset)
    return "{" + ",".join(subset) + "}"

"""
Finite-type recognition for special subgroups
Components of the non-commuting diagram are matched against the catalog
of irreducible finite Coxeter diagrams
"""

import logging
import math
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple

import networkx as nx

from models import (
    CoxeterSystem,
    FiniteTypeComponent,
    FiniteTypeVerdict,
    SpecialSubset,
    SplitEA,
    TypeTag,
)
from utils.system_utils import canonical_components, noncommuting_diagram, presentation_diagram

logger = logging.getLogger(__name__)

# Exceptional groups keyed by the sorted arm lengths of their branch point
BRANCHED_EXCEPTIONAL = {
    (1, 2, 2): ("E6", 51_840),
    (1, 2, 3): ("E7", 2_903_040),
    (1, 2, 4): ("E8", 696_729_600),
}


def _path_order(graph: nx.Graph) -> List[str]:
    """Vertices of a path graph from one end to the other"""
    start = min((v for v, d in graph.degree() if d == 1), key=str)
    return list(nx.dfs_preorder_nodes(graph, start))


def _arm_lengths(graph: nx.Graph, branch: str) -> Tuple[int, ...]:
    lengths = []
    for neighbor in graph.neighbors(branch):
        length, previous, current = 1, branch, neighbor
        while True:
            onward = [v for v in graph.neighbors(current) if v != previous]
            if not onward:
                break
            previous, current = current, onward[0]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths))


def classify_component(system: CoxeterSystem, component: SpecialSubset) -> Tuple[str, Optional[int]]:
    """
    Catalog tag and group order of one connected non-commuting component

    Returns:
        (tag, order) with order None for the infinite tag
    """
    infinite = (TypeTag.INFINITE.value, None)
    n = len(component)
    if n == 1:
        return "A1", 2

    graph = noncommuting_diagram(system).subgraph(component)
    labels = [data["label"] for _, _, data in graph.edges(data=True)]
    if any(label == math.inf for label in labels):
        return infinite

    if n == 2:
        m = labels[0]
        if m == 3:
            return "A2", 6
        if m == 4:
            return "B2", 8
        return f"I2({m})", 2 * m

    if not nx.is_tree(graph):
        return infinite
    degrees = dict(graph.degree())
    if max(degrees.values()) > 3:
        return infinite
    branches = [v for v, d in degrees.items() if d == 3]
    heavy = [label for label in labels if label > 3]

    if branches:
        if len(branches) > 1 or heavy:
            return infinite
        arms = _arm_lengths(graph, branches[0])
        if arms[0] == 1 and arms[1] == 1:
            return f"D{n}", 2 ** (n - 1) * math.factorial(n)
        if arms in BRANCHED_EXCEPTIONAL:
            return BRANCHED_EXCEPTIONAL[arms]
        return infinite

    if not heavy:
        return f"A{n}", math.factorial(n + 1)
    if len(heavy) > 1:
        return infinite

    path = _path_order(graph)
    position = next(
        k for k in range(n - 1) if graph[path[k]][path[k + 1]]["label"] > 3
    )
    at_end = position in (0, n - 2)
    if heavy[0] == 4:
        if at_end:
            return f"B{n}", 2 ** n * math.factorial(n)
        if n == 4:
            return "F4", 1152
    elif heavy[0] == 5 and at_end:
        if n == 3:
            return "H3", 120
        if n == 4:
            return "H4", 14_400
    return infinite


def is_finite_type(system: CoxeterSystem, subset: Iterable[str]) -> FiniteTypeVerdict:
    """
    Decide whether the special subgroup generated by a subset is finite

    Args:
        system: Coxeter system
        subset: generators of the special subgroup, in any order

    Returns:
        Verdict with one catalog entry per non-commuting component
    """
    return _verdict(system, system.subset(subset))


@lru_cache(maxsize=65_536)
def _verdict(system: CoxeterSystem, subset: SpecialSubset) -> FiniteTypeVerdict:
    components = []
    for component in canonical_components(system, noncommuting_diagram(system), subset):
        tag, component_order = classify_component(system, component)
        components.append(FiniteTypeComponent(subset=component, tag=tag, order=component_order))
    finite = all(component.order is not None for component in components)
    return FiniteTypeVerdict(
        subset=subset,
        finite=finite,
        components=components,
        order=math.prod(component.order for component in components) if finite else None,
    )


def group_order(system: CoxeterSystem, subset: SpecialSubset) -> Optional[int]:
    return is_finite_type(system, system.subset(subset)).order


def split_ea(system: CoxeterSystem, subset: SpecialSubset) -> SplitEA:
    """
    Split A into its infinite-type part E and the largest finite factor T
    commuting with E: T is the union of the finite components
    """
    verdict = is_finite_type(system, system.subset(subset))
    finite_part, infinite_part = [], []
    for component in verdict.components:
        target = finite_part if component.order is not None else infinite_part
        target.extend(component.subset)
    return SplitEA(
        subset=verdict.subset,
        E=system.subset(infinite_part),
        T=system.subset(finite_part),
    )


def lk2(system: CoxeterSystem, subset: SpecialSubset) -> SpecialSubset:
    """Generators outside A with m = 2 to every element of A; lk2 of the empty set is S"""
    members = set(system.subset(subset))
    return tuple(
        s for s in system.generators
        if s not in members and all(system.order(s, a) == 2 for a in members)
    )


def odd_classes(system: CoxeterSystem) -> Dict[str, int]:
    """
    Conjugacy classes of generators as class numbers

    Two generators are conjugate iff they are joined by a path of odd labels
    """
    graph = nx.Graph()
    graph.add_nodes_from(system.generators)
    graph.add_edges_from(
        (u, v) for u, v, data in presentation_diagram(system).edges(data=True) if data["label"] % 2 == 1
    )
    classes = {}
    for number, component in enumerate(canonical_components(system, graph, system.generators)):
        for s in component:
            classes[s] = number
    return classes

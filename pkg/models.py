"""
Data models for the coxsplit toolkit
Pydantic models ensure type safety and validation across the system
"""

import math
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, field_validator, model_validator

from config import DEFAULT_CAPS, DEFAULT_SEARCH_BOUND, COMMANDS, OUTPUT_FORMATS, INFINITY_MARKER
from errors import InputError

# Canonical generator subsets and words are plain tuples of generator names
SpecialSubset = Tuple[str, ...]
Word = Tuple[str, ...]
Order = Union[int, float]


class CoxeterSystem(BaseModel):
    """
    Coxeter system given by its generators and the finite orders m(s,t)
    Pairs not listed have m = infinity; the generator order is canonical
    """
    model_config = ConfigDict(frozen=True)

    generators: Tuple[str, ...] = Field(description="Ordered distinct generator names")
    m: Tuple[Tuple[str, str, int], ...] = Field(
        default=(),
        description="Finite orders (s, t, m) with s before t; unlisted pairs are infinite"
    )

    _index: Dict[str, int] = PrivateAttr(default_factory=dict)
    _orders: Dict[Tuple[int, int], int] = PrivateAttr(default_factory=dict)

    @model_validator(mode="before")
    @classmethod
    def _canonicalize(cls, data: Any) -> Any:
        """Drop infinite entries, orient pairs by generator order and reject bad labels"""
        if not isinstance(data, dict):
            return data
        raw_generators = data.get("generators") or []
        if not isinstance(raw_generators, (list, tuple)) or not all(isinstance(s, str) for s in raw_generators):
            raise ValueError(f"generators must be a list of names, got {raw_generators!r}")
        generators = list(raw_generators)
        if len(set(generators)) != len(generators):
            raise ValueError(f"duplicate generator in {generators}")
        index = {name: i for i, name in enumerate(generators)}

        raw_orders = data.get("m") or []
        if not isinstance(raw_orders, (list, tuple)):
            raise ValueError(f"m must be a list of [s, t, m] entries, got {raw_orders!r}")
        orders: Dict[Tuple[int, int], int] = {}
        for entry in raw_orders:
            if not isinstance(entry, (list, tuple)) or len(entry) != 3:
                raise ValueError(f"m entry must be [s, t, m], got {entry!r}")
            s, t, value = entry
            if not isinstance(s, str) or not isinstance(t, str):
                raise ValueError(f"m entry must name two generators, got {entry!r}")
            if s not in index or t not in index:
                raise ValueError(f"unknown symbol in pair ({s}, {t})")
            if s == t:
                raise ValueError(f"diagonal entry ({s}, {t}) must not be listed")
            if isinstance(value, bool) or not isinstance(value, int):
                raise ValueError(f"m({s},{t}) must be an integer, got {value!r}")
            if value != INFINITY_MARKER and value < 2:
                raise ValueError(f"m({s},{t}) = {value} is outside {{2, 3, ...}} and 0 for infinity")
            key = tuple(sorted((index[s], index[t])))
            if key in orders and orders[key] != value:
                raise ValueError(f"asymmetric m for ({s}, {t}): {orders[key]} vs {value}")
            orders[key] = value

        data = dict(data)
        data["generators"] = tuple(generators)
        data["m"] = tuple(
            (generators[i], generators[j], value)
            for (i, j), value in sorted(orders.items())
            if value != INFINITY_MARKER
        )
        return data

    def model_post_init(self, __context: Any) -> None:
        self._index = {name: i for i, name in enumerate(self.generators)}
        self._orders = {
            (self._index[s], self._index[t]): value for s, t, value in self.m
        }

    @property
    def rank(self) -> int:
        return len(self.generators)

    def index_of(self, symbol: str) -> int:
        if symbol not in self._index:
            raise InputError(f"unknown generator '{symbol}'")
        return self._index[symbol]

    def order(self, s: str, t: str) -> Order:
        """m(s,t) with math.inf for infinite order and 1 on the diagonal"""
        i, j = self.index_of(s), self.index_of(t)
        return self.order_by_index(i, j)

    def order_by_index(self, i: int, j: int) -> Order:
        if i == j:
            return 1
        key = (i, j) if i < j else (j, i)
        return self._orders.get(key, math.inf)

    def subset(self, symbols: Iterable[str]) -> SpecialSubset:
        """Canonical special subset: sorted by generator index, duplicates removed"""
        indices = {self.index_of(s) for s in symbols}
        return tuple(self.generators[i] for i in sorted(indices))

    def word(self, letters: Iterable[str]) -> Word:
        letters = tuple(letters)
        for letter in letters:
            self.index_of(letter)
        return letters

    def to_schema(self) -> Dict[str, Any]:
        """JSON system schema with 0 standing for infinity; infinite pairs are omitted"""
        return {
            "generators": list(self.generators),
            "m": [[s, t, value] for s, t, value in self.m],
        }


class TypeTag(str, Enum):
    """Catalog families that do not carry a rank suffix"""
    INFINITE = "infinite"


class FiniteTypeComponent(BaseModel):
    """One component of a subset in the non-commuting diagram"""
    subset: SpecialSubset
    tag: str = Field(description="Catalog tag eg A3 B2 D4 E6 F4 H3 I2(5), or infinite")
    order: Optional[int] = Field(default=None, description="Group order for finite tags")


class FiniteTypeVerdict(BaseModel):
    """Finiteness verdict of a special subgroup with its component breakdown"""
    subset: SpecialSubset
    finite: bool
    components: List[FiniteTypeComponent] = Field(default_factory=list)
    order: Optional[int] = Field(default=None, description="Product of component orders when finite")


class SplitEA(BaseModel):
    """Infinite-type part E and largest finite commuting factor T of a subset"""
    subset: SpecialSubset
    E: SpecialSubset
    T: SpecialSubset


class GeodesicClass(BaseModel):
    """Element of W given by its lexicographically least geodesic"""
    canonical: Word
    length: int


class SeparatorRecord(BaseModel):
    """Separator of the presentation diagram with its complementary components"""
    C: SpecialSubset
    components: List[SpecialSubset]
    E: SpecialSubset = Field(description="Infinite-type part of C")
    minimal: Optional[bool] = Field(default=None, description="Set once minimality has been classified")
    witness: Optional[SpecialSubset] = Field(
        default=None,
        description="A separator whose infinite-type part is properly contained in E"
    )


class KGroup(BaseModel):
    """Canonical record <E> x F of the finite family of accessibility subgroups"""
    E: SpecialSubset
    finite_factor: List[Word] = Field(description="Sorted canonical geodesics of the finite factor")
    support: SpecialSubset = Field(description="Generators occurring in the finite factor")

    def key(self) -> Tuple[SpecialSubset, Tuple[Word, ...]]:
        return self.E, tuple(self.finite_factor)


class KEnumeration(BaseModel):
    """Result of enumerating the finite family of accessibility subgroups"""
    count: int
    raw_count: int = Field(description="Number of (A, D, M) triples before deduplication")
    deduplicated: bool
    records: List[KGroup]


class ConjugateRecord(BaseModel):
    """Non-separating subset found conjugate onto a minimal separator by bounded search"""
    subset: SpecialSubset
    conjugator: Word
    image: SpecialSubset
    method: str = "bounded search"


class GogVertex(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: int
    label: SpecialSubset


class GogEdge(BaseModel):
    model_config = ConfigDict(frozen=True)

    u: int
    v: int
    label: SpecialSubset


class VisualGog(BaseModel):
    """
    Visual graph of groups decomposition
    A tree with special subsets on vertices and edges; values are never mutated
    """
    model_config = ConfigDict(frozen=True)

    vertices: Tuple[GogVertex, ...]
    edges: Tuple[GogEdge, ...] = ()

    def label_of(self, vertex_id: int) -> SpecialSubset:
        for vertex in self.vertices:
            if vertex.id == vertex_id:
                return vertex.label
        raise KeyError(vertex_id)

    def has_vertex(self, vertex_id: int) -> bool:
        return any(vertex.id == vertex_id for vertex in self.vertices)

    def incident_edges(self, vertex_id: int) -> List[GogEdge]:
        return [edge for edge in self.edges if vertex_id in (edge.u, edge.v)]

    def vertex_with_label(self, label: SpecialSubset) -> Optional[GogVertex]:
        for vertex in self.vertices:
            if vertex.label == label:
                return vertex
        return None

    def next_vertex_id(self) -> int:
        return max((vertex.id for vertex in self.vertices), default=-1) + 1

    def label_signature(self) -> Tuple[Tuple[SpecialSubset, ...], Tuple[Tuple[SpecialSubset, SpecialSubset, SpecialSubset], ...]]:
        """Vertex and edge labels with ids forgotten, for label-set comparisons"""
        vertex_labels = tuple(sorted(vertex.label for vertex in self.vertices))
        edge_labels = []
        for edge in self.edges:
            ends = sorted((self.label_of(edge.u), self.label_of(edge.v)))
            edge_labels.append((ends[0], ends[1], edge.label))
        return vertex_labels, tuple(sorted(edge_labels))


class SplitMove(BaseModel):
    """
    Compatible split of one vertex over a separator E into sides A and B
    Trace files may give only vertex_label, E and the sides; the builder
    resolves the vertex id and the parts against the current decomposition
    """
    model_config = ConfigDict(frozen=True)

    vertex: Optional[int] = None
    vertex_label: SpecialSubset
    E: SpecialSubset
    side_a: SpecialSubset = Field(description="E plus the components of the diagram minus E on side A")
    side_b: SpecialSubset
    part_a: SpecialSubset = Field(default=(), description="Side A intersected with the vertex label")
    part_b: SpecialSubset = ()


class ViolationKind(str, Enum):
    """Reasons a labeled tree fails to be a visual decomposition"""
    NOT_A_TREE = "not_a_tree"
    UNKNOWN_VERTEX = "unknown_vertex"
    EDGE_NOT_IN_ENDPOINT = "edge_not_in_endpoint"
    MISSING_DIAGRAM_EDGE = "missing_diagram_edge"
    EMPTY_SUPPORT = "empty_support"
    DISCONNECTED_SUPPORT = "disconnected_support"


class Violation(BaseModel):
    kind: ViolationKind
    detail: str


class ValidationReport(BaseModel):
    """Outcome of checking a decomposition; the first violation leads the list"""
    valid: bool
    violations: List[Violation] = Field(default_factory=list)


class DecompositionResult(BaseModel):
    """Irreducible decomposition together with the moves that produced it"""
    gog: VisualGog
    trace: List[SplitMove] = Field(default_factory=list)
    looks_irreducible: bool


class NValue(BaseModel):
    """Number of accessibility subgroups inside some conjugate of a special subgroup"""
    subset: SpecialSubset
    count: int
    exact: bool


class MeasureReport(BaseModel):
    """Potential of a decomposition; big integers stay exact in JSON"""
    n_values: List[NValue]
    c_value: int
    bound: int
    k_count: int
    exact: bool = Field(description="True when every n value is exact")
    search_bound: int


class StepStatus(str, Enum):
    """Outcome of one replayed trace step"""
    DECREASE = "decrease"
    CONSISTENT = "consistent (lower-bound n)"
    VIOLATION = "violation"


class CertificationStep(BaseModel):
    index: int
    vertex_label: SpecialSubset
    E: SpecialSubset
    c_before: int
    c_after: int
    exact: bool
    status: StepStatus


class CertificationReport(BaseModel):
    """Replay of a split/reduce trace against the potential"""
    certified: bool
    steps: List[CertificationStep] = Field(default_factory=list)
    length: int
    bound: int
    within_bound: bool
    final_gog: VisualGog


class TraceExploration(BaseModel):
    """All maximal minimal-split/reduce traces from the trivial decomposition"""
    states: int = Field(description="Distinct decompositions visited")
    lengths: List[int] = Field(description="Distinct lengths of maximal traces, ascending")
    longest: int
    bound: int


class EngineCaps(BaseModel):
    """Resource caps shared by all engines"""
    generators: int = Field(default=DEFAULT_CAPS["generators"], gt=0)
    length: int = Field(default=DEFAULT_CAPS["length"], gt=0)
    closure: int = Field(default=DEFAULT_CAPS["closure"], gt=0)
    memo: int = Field(default=DEFAULT_CAPS["memo"], gt=0)
    order: int = Field(default=DEFAULT_CAPS["order"], gt=0)

    @classmethod
    def from_text(cls, text: Optional[str], base: Optional["EngineCaps"] = None) -> "EngineCaps":
        """
        Parse key=value,key=value overrides on top of base (defaults when None)

        Raises:
            InputError: unknown key or a value that is not a positive integer
        """
        values = (base or cls()).model_dump()
        if not text:
            return cls(**values)
        for item in text.split(","):
            item = item.strip()
            if not item:
                continue
            key, sep, raw = item.partition("=")
            key = key.strip()
            if not sep or key not in values:
                raise InputError(f"unknown cap '{item}', expected one of {sorted(values)}")
            try:
                value = int(raw.strip())
            except ValueError:
                raise InputError(f"cap {key} must be an integer, got '{raw.strip()}'")
            if value <= 0:
                raise InputError(f"cap {key} must be positive, got {value}")
            values[key] = value
        return cls(**values)


class RunConfig(BaseModel):
    """One CLI invocation"""
    command: str
    action: Optional[str] = None
    system_path: Optional[str] = None
    gog_path: Optional[str] = None
    trace_path: Optional[str] = None
    subset: List[str] = Field(default_factory=list)
    words: List[str] = Field(default_factory=list, description="Whitespace separated words")
    left: List[str] = Field(default_factory=list, description="I for coset and intersect")
    right: List[str] = Field(default_factory=list, description="J for coset and intersect")
    search_bound: int = Field(default=DEFAULT_SEARCH_BOUND, ge=0)
    conjugacy_search: int = Field(default=2, ge=0)
    caps: EngineCaps = Field(default_factory=EngineCaps)
    output_format: str = "json"
    out: Optional[str] = None
    dedupe: bool = True
    show_trace: bool = False
    verbose: bool = False

    @field_validator("command")
    @classmethod
    def _known_command(cls, value: str) -> str:
        if value not in COMMANDS:
            raise ValueError(f"command must be one of {COMMANDS}, got '{value}'")
        return value

    @field_validator("output_format")
    @classmethod
    def _known_format(cls, value: str) -> str:
        if value not in OUTPUT_FORMATS:
            raise ValueError(f"format must be one of {OUTPUT_FORMATS}, got '{value}'")
        return value

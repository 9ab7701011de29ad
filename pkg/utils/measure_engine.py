"""
Accessibility potential of visual decompositions
n(G) counts the K(W,S) records inside some conjugate of <G>, a decomposition
scores the sum of 3^n(G) over its vertices, and split/reduce sequences are
certified against that score and against the bound 3^|K(W,S)|
"""

import itertools
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from config import DEFAULT_SEARCH_BOUND, DEFAULT_STATE_CAP
from errors import ResourceBoundExceeded
from models import (
    CertificationReport,
    CertificationStep,
    KGroup,
    MeasureReport,
    NValue,
    SpecialSubset,
    SplitMove,
    StepStatus,
    TraceExploration,
    VisualGog,
)
from utils.finite_types import is_finite_type, lk2, odd_classes
from utils.gog_builder import GogBuilder, reduce_gog, trivial_gog
from utils.system_utils import restrict

logger = logging.getLogger(__name__)


class MeasureEngine:
    """
    Computes n(G), c(g) and the sequence-length bound for one system

    Conjugate containment is decided exactly where a certificate exists and
    otherwise by a bounded conjugator search, which can only under-count
    """

    def __init__(self, builder: GogBuilder, search_bound: int = DEFAULT_SEARCH_BOUND):
        self.builder = builder
        self.system = builder.system
        self.splittings = builder.splittings
        self.words = self.splittings.words
        self.search_bound = search_bound
        self._classes: Dict[SpecialSubset, Dict[str, int]] = {}
        self._n_cache: Dict[Tuple[SpecialSubset, int], NValue] = {}
        self._orders: Dict[SpecialSubset, frozenset] = {}
        self._generators: Dict[tuple, Tuple[Tuple[str, ...], ...]] = {}
        self._images: Dict[Tuple[Tuple[str, ...], Tuple[str, ...]], frozenset] = {}

    def k_records(self) -> List[KGroup]:
        return self.splittings.enumerate_k(dedupe=True).records

    def k_count(self) -> int:
        return len(self.k_records())

    def bound_of(self) -> int:
        """3^|K(W,S)|, an exact big integer"""
        return 3 ** self.k_count()

    def _link(self, infinite_part: SpecialSubset) -> SpecialSubset:
        return lk2(self.system, infinite_part) if infinite_part else self.system.generators

    def _classes_of(self, link: SpecialSubset) -> Dict[str, int]:
        if link not in self._classes:
            self._classes[link] = odd_classes(restrict(self.system, link))
        return self._classes[link]

    def _finite_orders(self, subset: SpecialSubset) -> frozenset:
        """Orders of the finite special subgroups generated by subsets of a subset"""
        if subset not in self._orders:
            self._orders[subset] = frozenset(
                verdict.order
                for size in range(len(subset) + 1)
                for chosen in itertools.combinations(subset, size)
                for verdict in [is_finite_type(self.system, chosen)]
                if verdict.finite
            )
        return self._orders[subset]

    def containment(self, record: KGroup, subset: SpecialSubset, search_bound: int) -> Tuple[bool, bool]:
        """
        Whether <E> x F lies in some conjugate of <G>

        A conjugator can be taken in <lk2(E)> and then fixes E, so E must lie
        in G; conjugation inside <lk2(E)> preserves the parity of each odd
        class of generators, so F must have its odd classes inside G; and
        |F| must divide the order of a finite special subgroup of <G ∩ lk2(E)>

        Returns:
            (contained, exact); contained=False with exact=False means the
            bounded search found no conjugator
        """
        members = set(subset)
        if not set(record.E) <= members:
            return False, True
        if set(record.support) <= members:
            return True, True

        link = self._link(record.E)
        target = members & set(link)
        classes = self._classes_of(link)
        allowed = {classes[s] for s in target}
        for element in record.finite_factor:
            parity: Dict[int, int] = {}
            for letter in element:
                parity[classes[letter]] = parity.get(classes[letter], 0) ^ 1
            if any(odd and number not in allowed for number, odd in parity.items()):
                return False, True

        # finite subgroups of a Coxeter group sit in conjugates of finite special subgroups
        orders = self._finite_orders(self.system.subset(target))
        if not any(order % len(record.finite_factor) == 0 for order in orders):
            return False, True

        conjugators, closed = self.words.ball(link, search_bound)
        generators = self._factor_generators(record)
        for u in conjugators:
            if all(self._image_support(u, element) <= target for element in generators):
                logger.debug(f"conjugator {' '.join(u) or 'e'} moves a K record into <{','.join(subset)}>")
                return True, True
        return False, closed

    def _factor_generators(self, record: KGroup) -> Tuple[Tuple[str, ...], ...]:
        """A generating set of the finite factor, shortest elements first"""
        key = record.key()
        if key not in self._generators:
            try:
                table = self.words.group_table(record.support)
            except ResourceBoundExceeded:
                self._generators[key] = tuple(record.finite_factor)
                return self._generators[key]
            chosen: List[int] = []
            span = frozenset([0])
            for element in sorted(record.finite_factor, key=len):
                idx = table.elem_to_idx(element)
                if idx not in span:
                    chosen.append(idx)
                    span = table.closure(chosen)
            self._generators[key] = tuple(table.idx_to_elem(idx) for idx in chosen)
        return self._generators[key]

    def _image_support(self, conjugator: Tuple[str, ...], element: Tuple[str, ...]) -> frozenset:
        """Letters of conjugator * element * conjugator^-1, cached across records and vertex groups"""
        key = (conjugator, element)
        if key not in self._images:
            self._images[key] = frozenset(self.words.conjugate(conjugator, element))
        return self._images[key]

    def n_of(self, subset: Sequence[str], search_bound: Optional[int] = None) -> NValue:
        """
        Number of K(W,S) records inside some conjugate of <G>

        The count is exact when every record was decided by a certificate or
        a closed search ball, otherwise it is a lower bound
        """
        subset = self.system.subset(subset)
        bound = self.search_bound if search_bound is None else search_bound
        key = (subset, bound)
        if key in self._n_cache:
            return self._n_cache[key]

        count, exact = 0, True
        for record in self.k_records():
            contained, decided = self.containment(record, subset, bound)
            count += contained
            exact = exact and decided
        result = NValue(subset=subset, count=count, exact=exact)
        self._n_cache[key] = result
        return result

    def c_of(self, g: VisualGog, search_bound: Optional[int] = None) -> MeasureReport:
        """Potential c(g) = sum over vertices of 3^n(vertex group)"""
        bound = self.search_bound if search_bound is None else search_bound
        n_values = [self.n_of(vertex.label, bound) for vertex in g.vertices]
        return MeasureReport(
            n_values=n_values,
            c_value=sum(3 ** value.count for value in n_values),
            bound=self.bound_of(),
            k_count=self.k_count(),
            exact=all(value.exact for value in n_values),
            search_bound=bound,
        )

    def certify_sequence(self, trace: Sequence[SplitMove], search_bound: Optional[int] = None) -> CertificationReport:
        """
        Replay a split/reduce trace from the trivial decomposition

        A step whose n values are all exact must strictly decrease c. With
        lower-bound n values a decrease is still a decrease, and a
        non-decrease is a violation only when it cannot be explained by
        under-counted vertices of the decomposition before the step

        Raises:
            InvalidMoveError: a step does not apply
        """
        states = self.builder.replay(trace)
        steps = []
        for index, (move, before, after) in enumerate(zip(trace, states, states[1:])):
            c_before = self.c_of(before, search_bound)
            c_after = self.c_of(after, search_bound)
            exact = c_before.exact and c_after.exact
            if c_after.c_value < c_before.c_value:
                status = StepStatus.DECREASE
            elif c_before.exact:
                status = StepStatus.VIOLATION
            else:
                status = StepStatus.CONSISTENT
            steps.append(CertificationStep(
                index=index,
                vertex_label=self.system.subset(move.vertex_label),
                E=self.system.subset(move.E),
                c_before=c_before.c_value,
                c_after=c_after.c_value,
                exact=exact,
                status=status,
            ))
            if status == StepStatus.VIOLATION:
                logger.warning(f"Trace step {index} does not decrease c ({c_before.c_value} -> {c_after.c_value})")

        bound = self.bound_of()
        within = len(trace) <= bound
        return CertificationReport(
            certified=within and all(step.status != StepStatus.VIOLATION for step in steps),
            steps=steps,
            length=len(trace),
            bound=bound,
            within_bound=within,
            final_gog=states[-1],
        )

    def maximal_trace_lengths(self, state_cap: int = DEFAULT_STATE_CAP) -> TraceExploration:
        """
        Lengths of every maximal minimal-split/reduce sequence from the trivial
        decomposition, memoized on the label signature of each decomposition

        Raises:
            ResourceBoundExceeded: more than state_cap distinct decompositions
        """
        memo: Dict[tuple, frozenset] = {}

        def lengths_from(g: VisualGog) -> frozenset:
            signature = g.label_signature()
            if signature in memo:
                return memo[signature]
            if len(memo) >= state_cap:
                raise ResourceBoundExceeded("states", state_cap, "exploring maximal traces")

            moves = [
                move
                for vertex in self.builder.ordered_vertices(g)
                for move in self.builder.compatible_splits(g, vertex.id, restrict_minimal=True)
            ]
            if not moves:
                result = frozenset([0])
            else:
                result = frozenset(
                    1 + length
                    for move in moves
                    for length in lengths_from(reduce_gog(self.builder.apply_split(g, move)))
                )
            memo[signature] = result
            return result

        lengths = sorted(lengths_from(trivial_gog(self.system)))
        logger.info(f"Explored {len(memo)} decompositions, maximal trace lengths {lengths}")
        return TraceExploration(states=len(memo), lengths=lengths, longest=max(lengths), bound=self.bound_of())

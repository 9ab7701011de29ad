"""
Visual splittings of a Coxeter group
Separators of the presentation diagram, their minimality and the finite
family K(W,S) of subgroups <E> x F used by the accessibility potential
"""

import itertools
import logging
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from errors import InputError, ResourceBoundExceeded
from models import (
    ConjugateRecord,
    CoxeterSystem,
    EngineCaps,
    KEnumeration,
    KGroup,
    SeparatorRecord,
    SpecialSubset,
    Word,
)
from utils.finite_types import is_finite_type, lk2, split_ea
from utils.system_utils import format_subset, presentation_diagram, separates
from utils.word_engine import WordEngine

logger = logging.getLogger(__name__)


class SplittingEngine:
    """
    Enumerates separating special subsets and classifies the minimal ones

    A separator C is minimal iff no separator D has an infinite-type part
    properly contained in the infinite-type part of C
    """

    def __init__(
        self,
        system: CoxeterSystem,
        word_engine: Optional[WordEngine] = None,
        caps: Optional[EngineCaps] = None,
    ):
        self.system = system
        self.caps = caps or (word_engine.caps if word_engine else EngineCaps())
        self.words = word_engine or WordEngine(system, self.caps)
        self._classified: Optional[List[SeparatorRecord]] = None
        self._subgroups: Dict[SpecialSubset, List[frozenset]] = {}
        self._k_results: Dict[bool, KEnumeration] = {}

    def _check_generator_cap(self) -> None:
        if self.system.rank > self.caps.generators:
            raise ResourceBoundExceeded(
                "generators", self.caps.generators, f"system has {self.system.rank} generators"
            )

    @staticmethod
    def _subsets(pool: Sequence[str]) -> Iterator[SpecialSubset]:
        """Subsets of a canonical pool by size, then lexicographically"""
        for size in range(len(pool) + 1):
            yield from itertools.combinations(pool, size)

    def word_key(self, word: Word) -> Tuple[int, Tuple[int, ...]]:
        return len(word), tuple(self.system.index_of(letter) for letter in word)

    def subset_key(self, subset: SpecialSubset) -> Tuple[int, Tuple[int, ...]]:
        return self.word_key(subset)

    # Separators

    def enumerate_separators(self) -> List[SeparatorRecord]:
        """All separators of the presentation diagram, by size then lexicographically"""
        return [record.model_copy(update={"minimal": None, "witness": None}) for record in self.classify_minimal()]

    def _scan_separators(self) -> List[SeparatorRecord]:
        self._check_generator_cap()
        records = []
        for subset in self._subsets(self.system.generators):
            components = separates(self.system, subset)
            if components is None:
                continue
            records.append(
                SeparatorRecord(C=subset, components=components, E=split_ea(self.system, subset).E)
            )
        logger.info(f"Found {len(records)} separators over {self.system.rank} generators")
        return records

    def classify_minimal(self) -> List[SeparatorRecord]:
        """
        Separators with minimal flags set

        A non-minimal record carries a witness separator D whose
        infinite-type part is a proper subset of its own
        """
        if self._classified is not None:
            return self._classified

        records = self._scan_separators()
        classified = []
        for record in records:
            own = set(record.E)
            witness = next((other.C for other in records if set(other.E) < own), None)
            classified.append(record.model_copy(update={"minimal": witness is None, "witness": witness}))
        self._classified = classified
        logger.info(f"{sum(1 for r in classified if r.minimal)} of {len(classified)} separators are minimal")
        return classified

    def separator_record(self, subset: Sequence[str]) -> Optional[SeparatorRecord]:
        subset = self.system.subset(subset)
        for record in self.classify_minimal():
            if record.C == subset:
                return record
        return None

    def minimal_separators(self) -> List[SeparatorRecord]:
        return [record for record in self.classify_minimal() if record.minimal]

    def is_minimal(self, subset: Sequence[str]) -> bool:
        record = self.separator_record(subset)
        return bool(record and record.minimal)

    def visual_split(self, separator: Sequence[str], side_assignment: Sequence[str]) -> Tuple[SpecialSubset, SpecialSubset]:
        """
        Sides of the visual splitting over a separator

        Args:
            separator: separating subset C
            side_assignment: "A" or "B" for each component of the diagram minus C,
                in canonical component order

        Returns:
            (A, B) with A ∩ B = C and A ∪ B = S

        Raises:
            InputError: C does not separate, the assignment has the wrong length,
                or one side gets no component
        """
        separator = self.system.subset(separator)
        components = separates(self.system, separator)
        if components is None:
            raise InputError(f"{format_subset(separator)} does not separate the presentation diagram")
        if len(side_assignment) != len(components):
            raise InputError(f"expected {len(components)} side labels, got {len(side_assignment)}")
        sides = [str(side).upper() for side in side_assignment]
        if set(sides) - {"A", "B"}:
            raise InputError(f"side labels must be A or B, got {side_assignment}")
        if "A" not in sides or "B" not in sides:
            raise InputError("both sides of a visual splitting need a component")

        side_a = list(separator)
        side_b = list(separator)
        for component, side in zip(components, sides):
            (side_a if side == "A" else side_b).extend(component)
        return self.system.subset(side_a), self.system.subset(side_b)

    # K(W,S)

    def subgroups(self, subset: Sequence[str]) -> List[frozenset]:
        """
        Every subgroup of a finite special subgroup as a set of element indices
        into its Cayley table, grown from the trivial group one generator at a time
        """
        subset = self.system.subset(subset)
        if subset in self._subgroups:
            return self._subgroups[subset]

        group = self.words.group_table(subset)
        trivial = frozenset([0])
        generating: Dict[frozenset, Tuple[int, ...]] = {trivial: ()}
        frontier = [trivial]
        while frontier:
            grown = []
            for subgroup in frontier:
                for g in range(1, len(group)):
                    if g in subgroup:
                        continue
                    generators = generating[subgroup] + (g,)
                    extended = group.closure(generators)
                    if extended not in generating:
                        generating[extended] = generators
                        grown.append(extended)
            frontier = grown

        result = sorted(generating, key=lambda h: (len(h), sorted(h)))
        logger.debug(f"<{','.join(subset)}> of order {len(group)} has {len(result)} subgroups")
        self._subgroups[subset] = result
        return result

    def enumerate_k(self, dedupe: bool = True) -> KEnumeration:
        """
        Enumerate K(W,S): for each A with split (E, T) and each finite-type
        D inside lk2(A), the groups <E> x (<T> x M) for every subgroup M of <D>

        Args:
            dedupe: collapse records with equal E and equal finite factor

        Raises:
            ResourceBoundExceeded: generator or order cap hit
        """
        if dedupe in self._k_results:
            return self._k_results[dedupe]
        self._check_generator_cap()

        factors: Dict[Tuple[SpecialSubset, SpecialSubset, frozenset], Tuple[Word, ...]] = {}
        records: List[KGroup] = []
        seen = set()
        raw_count = 0

        for subset in self._subsets(self.system.generators):
            split = split_ea(self.system, subset)
            t_elements = self.words.group_table(split.T).elements
            for finite_subset in self._subsets(lk2(self.system, subset)):
                if not is_finite_type(self.system, finite_subset).finite:
                    continue
                table = self.words.group_table(finite_subset)
                for subgroup in self.subgroups(finite_subset):
                    raw_count += 1
                    factor_key = (split.T, finite_subset, subgroup)
                    if factor_key not in factors:
                        product = {
                            self.words.multiply(t, table.idx_to_elem(m))
                            for t in t_elements
                            for m in subgroup
                        }
                        factors[factor_key] = tuple(sorted(product, key=self.word_key))
                    factor = factors[factor_key]

                    key = (split.E, factor)
                    if dedupe and key in seen:
                        continue
                    seen.add(key)
                    records.append(
                        KGroup(
                            E=split.E,
                            finite_factor=list(factor),
                            support=self.system.subset(letter for element in factor for letter in element),
                        )
                    )

        records.sort(key=lambda r: (self.subset_key(r.E), len(r.finite_factor), [self.word_key(w) for w in r.finite_factor]))
        result = KEnumeration(count=len(records), raw_count=raw_count, deduplicated=dedupe, records=records)
        logger.info(f"K(W,S): {result.count} records ({raw_count} raw triples, dedupe={dedupe})")
        self._k_results[dedupe] = result
        return result

    # Bounded extras

    def conjugate_minimal_search(self, radius: int) -> List[ConjugateRecord]:
        """
        Non-separating subsets conjugated letterwise onto a minimal separator
        by some element of geodesic length at most radius

        Only finds what the bounded search reaches; absence proves nothing
        """
        self._check_generator_cap()
        minimal = {record.C for record in self.minimal_separators()}
        separating = {record.C for record in self.classify_minimal()}
        conjugators, _ = self.words.ball(self.system.generators, radius)

        found = []
        for subset in self._subsets(self.system.generators):
            if not subset or subset in separating:
                continue
            for w in conjugators[1:]:
                images = [self.words.conjugate(w, (c,)) for c in subset]
                if any(len(image) != 1 for image in images):
                    continue
                image = self.system.subset(letter for (letter,) in images)
                if image in minimal:
                    logger.debug(f"{format_subset(subset)} conjugates onto {format_subset(image)} by {' '.join(w)}")
                    found.append(ConjugateRecord(subset=subset, conjugator=w, image=image))
                    break
        return found

    def maximal_complete_subsets(self) -> List[SpecialSubset]:
        """Maximal cliques of the presentation diagram; their special subgroups admit no visual splitting"""
        cliques = [self.system.subset(clique) for clique in nx.find_cliques(presentation_diagram(self.system))]
        return sorted(cliques, key=self.subset_key)

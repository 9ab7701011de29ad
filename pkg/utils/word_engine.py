"""
Word problem engine for Coxeter systems
Geodesics are found by closing a word under braid moves and deleting an
adjacent equal pair whenever one appears, then starting over
"""

import logging
from collections import deque
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

import numpy as np

from errors import PreconditionError, ResourceBoundExceeded
from models import CoxeterSystem, EngineCaps, GeodesicClass, SpecialSubset, Word
from utils.finite_types import is_finite_type
from utils.system_utils import coxeter_matrix

logger = logging.getLogger(__name__)

IndexWord = Tuple[int, ...]


class FiniteGroupTable:
    """
    Finite special subgroup as an element list and a Cayley table on indices
    Index 0 is the identity
    """

    def __init__(self, subset: SpecialSubset, elements: List[Word], cayley_table: np.ndarray):
        self.subset = subset
        self.elements = elements
        self.cayley_table = cayley_table
        self._index = {element: i for i, element in enumerate(elements)}
        self.inverses = np.argmin(cayley_table, axis=1)

    def __len__(self) -> int:
        return len(self.elements)

    def elem_to_idx(self, element: Word) -> int:
        return self._index[element]

    def idx_to_elem(self, idx: int) -> Word:
        return self.elements[idx]

    def closure(self, generators: Iterable[int]) -> frozenset:
        """Element indices of the subgroup generated by the given indices"""
        generators = [g for g in set(generators) if g != 0]
        found = {0}
        frontier = [0]
        while frontier:
            products = self.cayley_table[np.ix_(frontier, generators)].ravel() if generators else []
            frontier = [int(x) for x in set(products) if int(x) not in found]
            found.update(frontier)
        return frozenset(found)


class WordEngine:
    """
    Tits-style word problem solver for one Coxeter system

    Words are tuples of generator names; canonical forms are the
    lexicographically least geodesic under the generator order
    """

    def __init__(self, system: CoxeterSystem, caps: Optional[EngineCaps] = None):
        """
        Initialize the engine for a system

        Args:
            system: Coxeter system the words live in
            caps: resource caps; defaults apply when None
        """
        self.system = system
        self.caps = caps or EngineCaps()
        self._orders = coxeter_matrix(system).tolist()
        self._reduce_memo = lru_cache(maxsize=self.caps.memo)(self._reduce_indices)
        self._tables: Dict[SpecialSubset, FiniteGroupTable] = {}
        self._balls: Dict[Tuple[SpecialSubset, int], Tuple[List[Word], bool]] = {}

    # Encoding between names and generator indices

    def _encode(self, word: Iterable[str]) -> IndexWord:
        letters = tuple(word)
        if len(letters) > self.caps.length:
            raise ResourceBoundExceeded("length", self.caps.length, f"word of length {len(letters)}")
        return tuple(self.system.index_of(letter) for letter in letters)

    def _decode(self, word: IndexWord) -> Word:
        return tuple(self.system.generators[i] for i in word)

    @staticmethod
    def _cancel(word: IndexWord) -> IndexWord:
        """Free cancellation of adjacent equal letters"""
        stack: List[int] = []
        for letter in word:
            if stack and stack[-1] == letter:
                stack.pop()
            else:
                stack.append(letter)
        return tuple(stack)

    def _braid_neighbors(self, word: IndexWord) -> Iterator[IndexWord]:
        """Words obtained by one braid move sts... -> tst... of length m(s,t)"""
        n = len(word)
        for i in range(n - 1):
            s, t = word[i], word[i + 1]
            m = self._orders[s][t]
            if m == 0 or i + m > n:
                continue
            if all(word[i + k] == (s if k % 2 == 0 else t) for k in range(m)):
                replacement = tuple(t if k % 2 == 0 else s for k in range(m))
                yield word[:i] + replacement + word[i + m:]

    def _reduce_indices(self, word: IndexWord) -> IndexWord:
        current = self._cancel(word)
        seen = {current}
        queue = deque([current])
        while queue:
            for neighbor in self._braid_neighbors(queue.popleft()):
                if neighbor in seen:
                    continue
                cancelled = self._cancel(neighbor)
                if len(cancelled) < len(neighbor):
                    return self._reduce_memo(cancelled)
                seen.add(neighbor)
                if len(seen) > self.caps.closure:
                    raise ResourceBoundExceeded(
                        "closure", self.caps.closure, f"braid closure of a word of length {len(current)}"
                    )
                queue.append(neighbor)
        if len(seen) > 1:
            logger.debug(f"Braid closure of size {len(seen)} at length {len(current)}")
        return min(seen)

    def _reduce(self, word: IndexWord) -> IndexWord:
        return self._reduce_memo(word)

    # Element operations

    def reduce_to_geodesic(self, word: Iterable[str]) -> GeodesicClass:
        """
        Geodesic representative of the element spelled by a word

        Raises:
            InputError: unknown letter
            ResourceBoundExceeded: word longer than the length cap or closure too large
        """
        reduced = self._reduce(self._encode(word))
        return GeodesicClass(canonical=self._decode(reduced), length=len(reduced))

    def canonical(self, word: Iterable[str]) -> Word:
        return self._decode(self._reduce(self._encode(word)))

    def equal(self, u: Iterable[str], v: Iterable[str]) -> bool:
        return self._reduce(self._encode(u)) == self._reduce(self._encode(v))

    def word_length(self, word: Iterable[str]) -> int:
        return len(self._reduce(self._encode(word)))

    def is_geodesic(self, word: Iterable[str]) -> bool:
        letters = tuple(word)
        return self.word_length(letters) == len(letters)

    def lett(self, word: Iterable[str]) -> SpecialSubset:
        """Letters of any geodesic of the element; independent of the geodesic chosen"""
        return self.system.subset(self.canonical(word))

    def multiply(self, *words: Iterable[str]) -> Word:
        product: Tuple[str, ...] = ()
        for word in words:
            product = self.canonical(product + tuple(word))
        return product

    def inverse(self, word: Iterable[str]) -> Word:
        return self.canonical(tuple(reversed(tuple(word))))

    def conjugate(self, w: Iterable[str], x: Iterable[str]) -> Word:
        """Canonical form of w x w^-1"""
        w = tuple(w)
        return self.canonical(w + tuple(x) + tuple(reversed(w)))

    # Cosets and special intersections

    def min_double_coset_rep(self, left: Iterable[str], word: Iterable[str], right: Iterable[str]) -> GeodesicClass:
        """
        Shortest element of <I> w <J> by greedy descent

        The least eligible generator of I is tried first, then of J;
        the fixed point is unique so the order only affects speed
        """
        left_idx = [self.system.index_of(s) for s in self.system.subset(left)]
        right_idx = [self.system.index_of(s) for s in self.system.subset(right)]
        current = self._reduce(self._encode(word))
        while True:
            shorter = None
            for i in left_idx:
                candidate = self._reduce((i,) + current)
                if len(candidate) < len(current):
                    shorter = candidate
                    break
            if shorter is None:
                for j in right_idx:
                    candidate = self._reduce(current + (j,))
                    if len(candidate) < len(current):
                        shorter = candidate
                        break
            if shorter is None:
                return GeodesicClass(canonical=self._decode(current), length=len(current))
            current = shorter

    def special_intersection(
        self, left: Iterable[str], word: Iterable[str], right: Iterable[str]
    ) -> Tuple[Word, SpecialSubset]:
        """
        Minimal double coset representative d and K = I ∩ d J d^-1

        <I> ∩ w<J>w^-1 is then a conjugate of <K> by an element of <I>
        """
        left = self.system.subset(left)
        right = self.system.subset(right)
        d = self._encode(self.min_double_coset_rep(left, word, right).canonical)
        d_inv = tuple(reversed(d))
        images = {self._reduce(d + (self.system.index_of(t),) + d_inv) for t in right}
        kept = [s for s in left if (self.system.index_of(s),) in images]
        return self._decode(d), self.system.subset(kept)

    # Finite subgroups and balls

    def enumerate_group(self, subset: Iterable[str]) -> List[Word]:
        """
        All elements of a finite special subgroup, identity first, by
        breadth-first closure under right multiplication

        Raises:
            PreconditionError: the subgroup is infinite
            ResourceBoundExceeded: order above the order cap
        """
        return list(self.group_table(subset).elements)

    def group_table(self, subset: Iterable[str]) -> FiniteGroupTable:
        """Cayley table of a finite special subgroup, cached per subset"""
        subset = self.system.subset(subset)
        if subset in self._tables:
            return self._tables[subset]

        verdict = is_finite_type(self.system, subset)
        if not verdict.finite:
            raise PreconditionError(f"<{','.join(subset)}> is of infinite type")
        if verdict.order > self.caps.order:
            raise ResourceBoundExceeded("order", self.caps.order, f"<{','.join(subset)}> has order {verdict.order}")

        generators = [self.system.index_of(s) for s in subset]
        elements: List[IndexWord] = [()]
        index = {(): 0}
        queue = deque([()])
        while queue:
            element = queue.popleft()
            for g in generators:
                product = self._reduce(element + (g,))
                if product not in index:
                    index[product] = len(elements)
                    elements.append(product)
                    queue.append(product)

        size = len(elements)
        table = np.zeros((size, size), dtype=np.int32)
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                table[i, j] = index[self._reduce(a + b)]
        logger.debug(f"Cayley table for <{','.join(subset)}> with {size} elements")

        group = FiniteGroupTable(subset, [self._decode(e) for e in elements], table)
        self._tables[subset] = group
        return group

    def ball(self, subset: Iterable[str], radius: int) -> Tuple[List[Word], bool]:
        """
        Elements of <A> of geodesic length at most radius

        Returns:
            (elements sorted by length then canonical form, closed) where closed
            means <A> has no element longer than the ones listed
        """
        subset = self.system.subset(subset)
        key = (subset, radius)
        if key in self._balls:
            return self._balls[key]

        generators = [self.system.index_of(s) for s in subset]
        layers: List[List[IndexWord]] = [[()]]
        seen = {()}
        closed = False
        for _ in range(radius):
            layer = []
            for element in layers[-1]:
                for g in generators:
                    product = self._reduce(element + (g,))
                    if product not in seen:
                        seen.add(product)
                        layer.append(product)
            if not layer:
                closed = True
                break
            layers.append(sorted(layer))
        if not closed:
            # closed when nothing in the outer layer can be lengthened
            closed = all(
                len(self._reduce(element + (g,))) < len(element)
                for element in layers[-1] for g in generators
            )

        result = ([self._decode(e) for layer in layers for e in layer], closed)
        self._balls[key] = result
        return result

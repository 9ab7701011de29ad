"""
Accessibility analyzer for Coxeter systems

This class wires the engines together for one system
1 Word problem and cosets
2 Finite-type recognition and the E/T split
3 Separators, minimality and K(W,S)
4 Visual decompositions and irreducible refinement
5 The potential c and certification of split traces

Every engine caches its own results, so one analyzer should be reused for
all queries about a system
"""

import logging
from typing import Iterable, List, Optional, Sequence

from config import DEFAULT_SEARCH_BOUND
from models import (
    CertificationReport,
    ConjugateRecord,
    CoxeterSystem,
    DecompositionResult,
    EngineCaps,
    FiniteTypeVerdict,
    KEnumeration,
    MeasureReport,
    SeparatorRecord,
    SpecialSubset,
    SplitEA,
    SplitMove,
    TraceExploration,
    ValidationReport,
    VisualGog,
)
from utils.finite_types import is_finite_type, lk2, split_ea
from utils.gog_builder import GogBuilder, export_gog
from utils.measure_engine import MeasureEngine
from utils.splitting_engine import SplittingEngine
from utils.system_utils import load_system
from utils.word_engine import WordEngine

logger = logging.getLogger(__name__)


class AccessibilityAnalyzer:
    """
    Orchestrates the word, splitting, decomposition and measure engines
    over a single Coxeter system
    """

    def __init__(
        self,
        system: CoxeterSystem,
        caps: Optional[EngineCaps] = None,
        search_bound: int = DEFAULT_SEARCH_BOUND,
    ):
        """
        Initialize the analyzer

        Args:
            system: Coxeter system under study
            caps: resource caps shared by all engines
            search_bound: conjugator length used for n(G)
        """
        self.system = system
        self.caps = caps or EngineCaps()
        self.words = WordEngine(system, self.caps)
        self.splittings = SplittingEngine(system, self.words, self.caps)
        self.builder = GogBuilder(system, self.splittings)
        self.measure = MeasureEngine(self.builder, search_bound)
        logger.info(f"Analyzer ready for {system.rank} generators with caps {self.caps.model_dump()}")

    def subset(self, symbols: Iterable[str]) -> SpecialSubset:
        return self.system.subset(symbols)

    # finiteness

    def finite_type(self, subset: Iterable[str]) -> FiniteTypeVerdict:
        return is_finite_type(self.system, subset)

    def split_ea(self, subset: Iterable[str]) -> SplitEA:
        return split_ea(self.system, subset)

    def lk2(self, subset: Iterable[str]) -> SpecialSubset:
        return lk2(self.system, subset)

    # splittings

    def separators(self) -> List[SeparatorRecord]:
        return self.splittings.enumerate_separators()

    def minimal(self) -> List[SeparatorRecord]:
        return self.splittings.classify_minimal()

    def kgroups(self, dedupe: bool = True) -> KEnumeration:
        return self.splittings.enumerate_k(dedupe=dedupe)

    def cliques(self) -> List[SpecialSubset]:
        return self.splittings.maximal_complete_subsets()

    def conjugates(self, radius: int) -> List[ConjugateRecord]:
        return self.splittings.conjugate_minimal_search(radius)

    # decompositions

    def decompose(self) -> DecompositionResult:
        return self.builder.irreducible_decomposition()

    def validate(self, g: VisualGog) -> ValidationReport:
        return self.builder.validate(g)

    def load_gog(self, text: str) -> VisualGog:
        return self.builder.load_gog(text)

    def export(self, g: Optional[VisualGog] = None, fmt: str = "dot") -> str:
        """Export a decomposition, computing the irreducible one when none is given"""
        if g is None:
            g = self.decompose().gog
        return export_gog(g, fmt)

    # measure

    def measure_c(self, g: VisualGog, search_bound: Optional[int] = None) -> MeasureReport:
        return self.measure.c_of(g, search_bound)

    def measure_bound(self) -> int:
        return self.measure.bound_of()

    def certify(self, trace: Sequence[SplitMove], search_bound: Optional[int] = None) -> CertificationReport:
        return self.measure.certify_sequence(trace, search_bound)

    def explore_traces(self, state_cap: Optional[int] = None) -> TraceExploration:
        if state_cap is None:
            return self.measure.maximal_trace_lengths()
        return self.measure.maximal_trace_lengths(state_cap)


def create_analyzer(
    system: Optional[CoxeterSystem] = None,
    system_path: Optional[str] = None,
    caps: Optional[EngineCaps] = None,
    search_bound: int = DEFAULT_SEARCH_BOUND,
) -> AccessibilityAnalyzer:
    """
    Factory function to create an analyzer from a system or a system file

    Args:
        system: already parsed system
        system_path: JSON system file, used when system is None
        caps: resource caps
        search_bound: conjugator length used for n(G)

    Returns:
        AccessibilityAnalyzer ready for queries
    """
    if system is None:
        if system_path is None:
            raise ValueError("either system or system_path is required")
        system = load_system(system_path)
    return AccessibilityAnalyzer(system, caps=caps, search_bound=search_bound)

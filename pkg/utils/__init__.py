"""
Engine modules for the coxsplit toolkit
"""

from utils.system_utils import (
    parse_system,
    system_from_dict,
    load_system,
    serialize_system,
    restrict,
    separates,
    separates_within,
    presentation_diagram,
    noncommuting_diagram,
)
from utils.finite_types import is_finite_type, split_ea, lk2, group_order, odd_classes
from utils.word_engine import WordEngine, FiniteGroupTable
from utils.splitting_engine import SplittingEngine
from utils.gog_builder import GogBuilder, trivial_gog, collapse_edge, reduce_gog, export_gog, import_gog
from utils.measure_engine import MeasureEngine

__all__ = [
    'parse_system',
    'system_from_dict',
    'load_system',
    'serialize_system',
    'restrict',
    'separates',
    'separates_within',
    'presentation_diagram',
    'noncommuting_diagram',
    'is_finite_type',
    'split_ea',
    'lk2',
    'group_order',
    'odd_classes',
    'WordEngine',
    'FiniteGroupTable',
    'SplittingEngine',
    'GogBuilder',
    'trivial_gog',
    'collapse_edge',
    'reduce_gog',
    'export_gog',
    'import_gog',
    'MeasureEngine',
]

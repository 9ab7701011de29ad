"""
Data package containing sample Coxeter systems, decompositions and traces
"""

from data.sample_systems import get_sample_system, get_sample_systems
from data.sample_decompositions import get_sample_decompositions, get_sample_trace

__all__ = ['get_sample_system', 'get_sample_systems', 'get_sample_decompositions', 'get_sample_trace']

"""
Shared fixtures for the coxsplit test suite
"""

import os
import sys

import pytest

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from analysis.accessibility_analyzer import AccessibilityAnalyzer
from data.sample_systems import get_sample_system


@pytest.fixture(scope="session")
def analyzer_for():
    """Analyzer per corpus name, shared across tests so engine caches are reused"""
    cache = {}

    def get(name: str) -> AccessibilityAnalyzer:
        if name not in cache:
            cache[name] = AccessibilityAnalyzer(get_sample_system(name))
        return cache[name]

    return get


@pytest.fixture
def sys_a():
    return get_sample_system("sysA")


@pytest.fixture
def sys_b():
    return get_sample_system("sysB")


@pytest.fixture
def sys_c():
    return get_sample_system("sysC")


@pytest.fixture
def sys_d():
    return get_sample_system("sysD")


@pytest.fixture
def dinf():
    return get_sample_system("dinf")


@pytest.fixture
def a3():
    return get_sample_system("a3")

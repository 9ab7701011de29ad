"""
Orchestration of the coxsplit engines
"""

from analysis.accessibility_analyzer import AccessibilityAnalyzer, create_analyzer

__all__ = ['AccessibilityAnalyzer', 'create_analyzer']

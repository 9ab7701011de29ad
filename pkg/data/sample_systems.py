"""
Sample Coxeter systems for testing and for the corpus command
Each system is stored in the JSON schema accepted by --system
"""

from typing import Any, Dict, List

from errors import InputError
from models import CoxeterSystem
from utils.system_utils import system_from_dict


def _right_angled(generators: List[str], commuting: List[tuple]) -> Dict[str, Any]:
    """Right-angled system: listed pairs commute, every other pair is infinite"""
    return {"generators": generators, "m": [[s, t, 2] for s, t in commuting]}


def get_sample_systems() -> Dict[str, Dict[str, Any]]:
    """
    Returns the bundled systems keyed by corpus name
    Missing pairs have infinite order
    """
    sys_a = {
        "generators": ["a", "b", "c", "d", "x", "y"],
        "m": [
            # a, c, d commute with x and y
            ["a", "x", 2], ["a", "y", 2],
            ["c", "x", 2], ["c", "y", 2],
            ["d", "x", 2], ["d", "y", 2],
            ["a", "b", 2], ["b", "c", 2],
            ["c", "d", 3],
            ["b", "x", 3], ["b", "y", 3],
        ],
    }

    # 5-cycle plus the chord a2-a5
    sys_b = _right_angled(
        ["a1", "a2", "a3", "a4", "a5"],
        [("a1", "a2"), ("a2", "a3"), ("a3", "a4"), ("a4", "a5"), ("a1", "a5"), ("a2", "a5")],
    )

    # path s1..s5 times the infinite dihedral group on s6, s7
    path = ["s1", "s2", "s3", "s4", "s5"]
    sys_c = _right_angled(
        path + ["s6", "s7"],
        [(path[i], path[i + 1]) for i in range(4)] + [(s, t) for s in path for t in ("s6", "s7")],
    )

    # complete bipartite between {s1, s2} and {s3, ..., s6}
    sys_d = _right_angled(
        ["s1", "s2", "s3", "s4", "s5", "s6"],
        [(s, t) for s in ("s1", "s2") for t in ("s3", "s4", "s5", "s6")],
    )

    return {
        "sysA": sys_a,
        "sysB": sys_b,
        "sysC": sys_c,
        "sysD": sys_d,
        "dinf": {"generators": ["a", "b"], "m": [["a", "b", 0]]},
        "a2": {"generators": ["s", "t"], "m": [["s", "t", 3]]},
        "a3": {"generators": ["s", "t", "u"], "m": [["s", "t", 3], ["t", "u", 3], ["s", "u", 2]]},
        "b2": {"generators": ["s", "t"], "m": [["s", "t", 4]]},
    }


def get_sample_system(name: str) -> CoxeterSystem:
    """
    Load one bundled system by corpus name

    Raises:
        InputError: unknown name
    """
    systems = get_sample_systems()
    if name not in systems:
        raise InputError(f"unknown sample system '{name}', expected one of {sorted(systems)}")
    return system_from_dict(systems[name])

"""Capacity caps for the exact desk-scale computations.

Every cap guards an exhaustive enumeration whose cost explodes past the
default; callers may pass an explicit override, and the environment
variable HYPERTURAN_MAX_N, when set, replaces all vertex-count caps.
"""

import os

WEAK_CHROMATIC_MAX_N = 16
INDEPENDENT_DELETION_MAX_N = 20
EXPANSION_DETECTOR_MAX_N = 24
ORACLE_PROVEN_MAX_N = 12
RAINBOW_ORACLE_MAX_N = 8
RAINBOW_ORACLE_MAX_K = 4
PARTITION_DISTANCE_MAX_N = 14
GTZ_INNER_MAX_S = 8


def vertex_cap(default: int, override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("HYPERTURAN_MAX_N")
    return int(env) if env else default

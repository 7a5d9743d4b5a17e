"""Design and analysis tools for air-based soft heat engines."""

from .cycles import (
    Cycle,
    CycleMetrics,
    build_carnot_cycle,
    build_constant_load_cycle,
    build_otto_cycle,
    carnot_efficiency,
    efficiency_cl_general,
    efficiency_cl_ideal,
    efficiency_otto_general,
    efficiency_otto_ideal,
    evaluate,
    max_expansion_ratio_cl,
    max_expansion_ratio_otto,
)
from .thermo import AIR, GasProperties, GasState, ProcessKind, ProcessStep, state_from_pvn

__version__ = "0.1.0"

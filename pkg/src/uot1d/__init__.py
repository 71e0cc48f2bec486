"""Exact solvers for one-dimensional unbalanced optimal transport."""

from .balanced import solve_balanced
from .encoding import (
    Flow,
    check_monotonic,
    check_no_hole,
    decode,
    encode,
    feasibility_violations,
    flow_cost,
)
from .errors import (
    CapacityError,
    EncodingError,
    FlowError,
    InfeasibleError,
    InstanceError,
    OracleGuardError,
    SolverConsistencyError,
    UOTError,
)
from .fast import CostChangeQueue, FastStats, solve, solve_fast
from .instance import ABSOLUTE, SQUARED, CostModel, Instance, build_instance
from .reference import solve_mincostflow_oracle, solve_ssp_baseline

__version__ = "0.1.0"

__all__ = [
    "ABSOLUTE",
    "SQUARED",
    "CapacityError",
    "CostChangeQueue",
    "CostModel",
    "EncodingError",
    "FastStats",
    "Flow",
    "FlowError",
    "InfeasibleError",
    "Instance",
    "InstanceError",
    "OracleGuardError",
    "SolverConsistencyError",
    "UOTError",
    "build_instance",
    "check_monotonic",
    "check_no_hole",
    "decode",
    "encode",
    "feasibility_violations",
    "flow_cost",
    "solve",
    "solve_balanced",
    "solve_fast",
    "solve_mincostflow_oracle",
    "solve_ssp_baseline",
]

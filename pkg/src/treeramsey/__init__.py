"""Finite-truncation solvers for Ramsey's theorem on trees."""
from .coloring import (
    ChainColoring,
    ConstantColoring,
    FinsetCode,
    LengthProfileColoring,
    SeededColoring,
    TableColoring,
    code_less,
    coloring_from_json,
    eval_coloring,
    induced_value,
    mix64,
)
from .errors import CapExceeded, DepthExhausted
from .jump_lab import (
    OracleApprox,
    Outcome,
    check_reduction_certificate,
    iter_jump_stage,
    jump_stage,
    ledger_jump_cost,
    pair,
    step_run,
    unpair,
)
from .ramsey_bridge import (
    IntTupleColoring,
    brute_force_rt,
    extract_homogeneous_set,
    lift_length_coloring,
    rt_solve,
)
from .reduction import (
    ReductionLedger,
    reduce_step,
    select_color_and_root,
    standard_subtree_successors,
)
from .tree_core import (
    Embedding,
    TruncatedTree,
    compose_embeddings,
    enumerate_chains,
    verify_embedding,
)
from .tt_solver import SolveResult, brute_force_tt, tt1_solve, tt_solve, verify_monochromatic

__version__ = "0.1.0"

"""Maximum-sum pair of non-intersecting falling paths on integer grids."""

from .disjoint import (
    Cp2Result,
    FirstIntersection,
    MTables,
    compute_M,
    compute_M_four_case,
    first_intersection,
    solve_cp2,
    solve_cp2_fast,
)
from .extensions import (
    UNREACHABLE,
    TwoRobotInstance,
    reduce_diamond_mine,
    solve_cp2_extended,
    solve_diamond_mine,
    solve_two_robots,
)
from .falling import BoundPair, FTable, UdFTable, compute_bounds, compute_F, compute_udF, solve_mfps
from .grid import (
    NEG_INF,
    VALUE_BOUND,
    CellValue,
    FallingPath,
    Grid,
    NegInfinity,
    StepProfile,
    generate_grid,
    path_sum,
    validate_path,
)
from .oracle import oracle_cubic, oracle_dm, oracle_exhaustive, oracle_exhaustive_starts
from .suurballe import (
    DisjointPathsAnswer,
    WeightedDag,
    build_reduction_dag,
    solve_cp2_via_suurballe,
    suurballe_two_disjoint,
)
from .swm import Swm, swm_build

__version__ = "0.1.0"

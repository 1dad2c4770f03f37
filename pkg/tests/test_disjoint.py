import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cherrypick.disjoint import (
    compute_M,
    compute_M_four_case,
    corridor_grid,
    first_intersection,
    solve_cp2,
    solve_cp2_fast,
)
from cherrypick.falling import compute_bounds, compute_F
from cherrypick.grid import NEG_INF, Grid, generate_grid, path_sum, validate_path
from cherrypick.oracle import oracle_cubic, oracle_exhaustive_starts

from conftest import EXAMPLE, SMALL, grids


def tables(g, four_case=False):
    F = compute_F(g)
    b = compute_bounds(F)
    return (compute_M_four_case if four_case else compute_M)(g, F, b)


def assert_witness(g, res):
    assert res.left_path is not None
    L, R = res.left_path, res.right_path
    assert validate_path(g, L) and validate_path(g, R)
    assert L.start_row == R.start_row == 0
    assert L.at_row(0) == 0 and R.at_row(0) == g.W - 1
    assert all(l < r for l, r in zip(L.cols, R.cols))
    assert path_sum(g, L) + path_sum(g, R) == res.total


# ---------------------------------------------------------------- examples

def test_compute_M_small_example():
    M = tables(Grid(SMALL))
    assert M.mr(1, 0) == 7
    assert M.ml_lo[1] > 1  # Ml row 1 has an empty domain
    assert M.ml(0, 1) == 10
    assert M.same_defined(tables(Grid(SMALL), four_case=True))


def test_compute_M_hand_example():
    M = tables(Grid(EXAMPLE))
    assert M.ml(0, 2) == M.mr(0, 0) == 24


def test_compute_M_zero_grid():
    M = tables(Grid([[0] * 3] * 3))
    assert M.ml(0, 2) == 0
    assert M.same_defined(tables(Grid([[0] * 3] * 3), four_case=True))


def test_compute_M_rejects_inconsistent_inputs():
    g = Grid(EXAMPLE)
    F = compute_F(g)
    b = compute_bounds(F)
    with pytest.raises(ValueError, match="bounds/F mismatch"):
        compute_M(Grid([[9, 9, 9]] * 4), F, b)
    with pytest.raises(ValueError, match="bounds/F mismatch"):
        compute_M(g, compute_F(Grid([[1, 1, 1]] * 4)), b)


@pytest.mark.parametrize("solver", [solve_cp2, solve_cp2_fast])
def test_solver_examples(solver):
    res = solver(EXAMPLE)
    assert res.total == 24
    assert_witness(Grid(EXAMPLE), res)
    assert solver(SMALL).total == 10
    zero = Grid(np.zeros((2, 50), dtype=np.int64))
    res = solver(zero)
    assert res.total == 0
    assert list(res.left_path.cols) == [0, 0] and list(res.right_path.cols) == [49, 49]


def test_all_neg_inf_row_has_no_witness():
    g = Grid([[1, 2, 3], ["-inf", "-inf", "-inf"], [1, 1, 1]])
    for solver in (solve_cp2, solve_cp2_fast):
        res = solver(g)
        assert res.total is NEG_INF and res.left_path is None


def test_single_lane_between_neg_inf_has_no_witness():
    g = Grid([[1, 2, 3], ["-inf", 5, "-inf"], [1, 1, 1]])
    assert solve_cp2(g).total is NEG_INF
    assert solve_cp2_fast(g).total is NEG_INF
    assert oracle_cubic(g) is NEG_INF


def test_fast_equals_linear_on_6x6_sweep():
    for seed in range(200):
        g = generate_grid(6, 6, 0, 9, seed)
        assert solve_cp2_fast(g).total == solve_cp2(g).total


def test_first_intersection_and_corridor():
    g = Grid(EXAMPLE)
    b = compute_bounds(compute_F(g))
    fx = first_intersection(b)
    assert b.lp[fx.fi] == b.rp[fx.fi] == fx.fj
    assert all(b.lp[i] < b.rp[i] for i in range(fx.fi))
    cg = corridor_grid(g, b, right=True)
    assert cg[0, g.W - 1] == g[0, g.W - 1]
    assert all(cg[0, j] is NEG_INF for j in range(g.W - 1))
    assert all(cg[i, j] is NEG_INF for i in range(fx.fi + 1, g.H) for j in range(g.W))
    assert first_intersection(compute_bounds(compute_F(np.zeros((2, 50), dtype=np.int64)))) is None


def test_four_case_tables_on_small_value_sets():
    rng = np.random.default_rng(5)
    for _ in range(400):
        h, w = rng.integers(2, 8, size=2)
        g = Grid(rng.integers(0, 3, size=(h, w)))
        assert tables(g).same_defined(tables(g, four_case=True))


# ---------------------------------------------------------------- properties

@given(grids(hmax=8, wmax=8))
def test_matches_cubic_and_fast_with_valid_witnesses(g):
    res = solve_cp2(g)
    assert res.total == oracle_cubic(g)
    assert_witness(g, res)
    fast = solve_cp2_fast(g)
    assert fast.total == res.total
    assert_witness(g, fast)


@given(grids(hmax=8, wmax=8, lo=-9, hi=9, neg_inf=True))
def test_signed_grids_match_cubic(g):
    # no optimality claim is made here; the equality is an observed property
    res = solve_cp2(g)
    assert res.total == oracle_cubic(g) == solve_cp2_fast(g).total
    if res.total is not NEG_INF:
        assert_witness(g, res)


@given(grids(lo=-9, hi=9))
def test_ml_mr_corner_symmetry(g):
    b = compute_bounds(compute_F(g))
    if first_intersection(b) is None:
        return
    M = tables(g)
    assert M.ml(0, g.W - 1) == M.mr(0, 0)


@given(grids())
def test_mirror_symmetry(g):
    assert solve_cp2(g).total == solve_cp2(g.mirrored()).total


@given(grids(), st.integers(0, 50))
def test_translation_covariance(g, c):
    shifted = Grid(g.array + c)
    assert solve_cp2(shifted).total == solve_cp2(g).total + 2 * g.H * c


@given(grids(hmax=6, wmax=6), st.data())
def test_witness_tails_are_optimal(g, data):
    res = solve_cp2(g)
    i = data.draw(st.integers(0, g.H - 1))
    L, R = res.left_path.sub(i, g.H - 1), res.right_path.sub(i, g.H - 1)
    sub = Grid(g.array[i:]) if i < g.H - 1 else None
    tail = path_sum(g, L) + path_sum(g, R)
    if sub is None:
        assert tail == g[i, L.cols[0]] + g[i, R.cols[0]]
        return
    best = oracle_exhaustive_starts(sub, L.cols[0], R.cols[0], allow_overlap=False)
    assert tail == best


@given(grids(lo=-9, hi=9, neg_inf=True))
def test_four_case_agrees_with_combined(g):
    b = compute_bounds(compute_F(g))
    if first_intersection(b) is None:
        return
    assert tables(g).same_defined(tables(g, four_case=True))
    assert solve_cp2(g, four_case=True).total == solve_cp2(g).total

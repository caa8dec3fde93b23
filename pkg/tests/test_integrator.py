"""Residual/Jacobian correctness and structural properties of the step."""

import dataclasses

import numpy as np
import pytest

from decmhd import (Form1, NewtonConfig, State, advance, cross_helicity,
                    div_staggered, energy, newton_solve)
from decmhd.errors import NewtonConvergenceError
from decmhd.integrator import (jacobian, residual, state_from_vector,
                               unknown_vector)

from conftest import random_smooth_state, random_state

TIGHT = NewtonConfig(tol=1e-12)


def uniform_state(grid, vx=0.7, vy=-0.3, bx=1.1, by=0.2, p=0.1):
    v = Form1(grid, "primal", np.full(grid.shape, vx), np.full(grid.shape, vy))
    b = Form1(grid, "primal", np.full(grid.shape, bx), np.full(grid.shape, by))
    return State(v=v, b=b, p=np.full(grid.shape, p), t=0.0)


# ----------------------------------------------------------- residual

def test_uniform_state_is_steady(grid):
    s = uniform_state(grid)
    guess = dataclasses.replace(s, t=0.1)
    r = residual(s, guess, 0.1)
    assert np.max(np.abs(r)) < 1e-14


def test_residual_block_order(rng, grid):
    """Blocks are stacked vx, vy, bx, by, div, each C-order."""
    s = random_state(rng, grid)
    guess = random_state(rng, grid)
    r = residual(s, guess, 0.1)
    n = grid.n_cells
    assert r.shape == (5 * n,)
    div = r[4 * n:].reshape(grid.shape)
    assert np.allclose(div, div_staggered(guess.v), atol=0)


def test_residual_flags_divergence(rng, grid):
    s = random_state(rng, grid)
    bad = dataclasses.replace(s, p=np.full(grid.shape, np.nan))
    r = residual(s, bad, 0.1)
    assert not np.all(np.isfinite(r))


# ----------------------------------------------------------- jacobian

def test_jacobian_matches_finite_differences(rng, grid):
    s_n = random_state(rng, grid)
    guess = random_state(rng, grid)
    ht = 0.07
    u0 = unknown_vector(guess)
    jac = jacobian(s_n, guess, ht).toarray()
    eps = 1e-6
    for k in rng.choice(5 * grid.n_cells, size=25, replace=False):
        e = np.zeros_like(u0)
        e[k] = 1.0
        rp = residual(s_n, state_from_vector(u0 + eps * e, grid, guess.t), ht)
        rm = residual(s_n, state_from_vector(u0 - eps * e, grid, guess.t), ht)
        fd = (rp - rm) / (2 * eps)
        scale = max(float(np.max(np.abs(jac[:, k]))), 1.0)
        assert np.max(np.abs(fd - jac[:, k])) <= 1e-6 * scale


def test_jacobian_row_sparsity(rng, grid):
    s_n = random_state(rng, grid)
    jac = jacobian(s_n, random_state(rng, grid), 0.1).tocsr()
    per_row = np.diff(jac.indptr)
    assert per_row.max() <= 20


def test_jacobian_uniform_state_structure(grid):
    """At a uniform state, uniform field perturbations feel only the time
    derivative: the advection terms respond to such a perturbation
    neither through the averages (curl is zero) nor through the curl
    (perturbation is constant)."""
    s = uniform_state(grid)
    ht = 0.25
    jac = jacobian(s, dataclasses.replace(s, t=ht), ht)
    n = grid.n_cells
    for block in range(4):                  # vx, vy, bx, by
        e = np.zeros(5 * n)
        e[block * n:(block + 1) * n] = 1.0
        assert np.allclose(jac @ e, e / ht, atol=1e-13)
    # constant pressure perturbations are in the nullspace
    e = np.zeros(5 * n)
    e[4 * n:] = 1.0
    assert np.max(np.abs(jac @ e)) == 0.0


def test_pressure_block_is_minus_divergence_transpose(rng, grid):
    s_n = random_state(rng, grid)
    jac = jacobian(s_n, random_state(rng, grid), 0.1).toarray()
    n = grid.n_cells
    grad_block = jac[:2 * n, 4 * n:]
    div_block = jac[4 * n:, :2 * n]
    assert np.array_equal(grad_block, -div_block.T)


# ----------------------------------------------------------- newton

def test_uniform_state_converges_immediately(grid):
    s = uniform_state(grid)
    out, report = newton_solve(s, 0.1, TIGHT)
    assert report.newton_iterations == 0
    assert np.allclose(out.v.x_values, s.v.x_values, atol=0)


def test_rejects_nonpositive_time_step(grid):
    with pytest.raises(ValueError):
        newton_solve(uniform_state(grid), 0.0)


def test_newton_converges_on_smooth_state(rng):
    from decmhd import make_grid
    g = make_grid(16, 16, 2.0, 2.0)
    s = random_smooth_state(rng, g)
    out, report = newton_solve(s, 0.05, TIGHT)
    assert report.final_residual_norm <= 1e-12
    assert 1 <= report.newton_iterations <= 6
    assert np.max(np.abs(div_staggered(out.v))) <= 1e-12


def test_newton_failure_carries_history(rng):
    from decmhd import make_grid
    g = make_grid(8, 8, 2.0, 2.0)
    s = random_smooth_state(rng, g)
    with pytest.raises(NewtonConvergenceError) as info:
        newton_solve(s, 0.05, NewtonConfig(tol=1e-30, max_iter=2))
    assert len(info.value.residual_history) == 3


def test_pressure_updates_are_mean_free(rng):
    from decmhd import make_grid
    g = make_grid(16, 16, 2.0, 2.0)
    s = random_smooth_state(rng, g)
    out, _ = newton_solve(s, 0.05, TIGHT)
    assert abs(np.mean(out.p) - np.mean(s.p)) < 1e-13


def test_gmres_matches_direct(rng):
    from decmhd import make_grid
    g = make_grid(12, 12, 2.0, 2.0)
    s = random_smooth_state(rng, g)
    direct, _ = newton_solve(s, 0.05, TIGHT)
    gm, report = newton_solve(s, 0.05, dataclasses.replace(
        TIGHT, linear_solver="gmres"))
    assert report.linear_iterations_total > 0
    assert np.allclose(gm.v.x_values, direct.v.x_values, atol=1e-10)
    assert np.allclose(gm.b.y_values, direct.b.y_values, atol=1e-10)


@pytest.mark.parametrize("pc", ["none", "block-jacobi"])
def test_gmres_preconditioner_variants(rng, pc):
    from decmhd import make_grid
    g = make_grid(8, 8, 2.0, 2.0)
    s = random_smooth_state(rng, g)
    cfg = NewtonConfig(tol=1e-10, linear_solver="gmres", preconditioner=pc,
                       gmres_restart=400)
    out, _ = newton_solve(s, 0.05, cfg)
    direct, _ = newton_solve(s, 0.05, TIGHT)
    assert np.allclose(out.v.y_values, direct.v.y_values, atol=1e-8)


def test_newton_config_validation():
    with pytest.raises(ValueError):
        NewtonConfig(tol=-1.0)
    with pytest.raises(ValueError):
        NewtonConfig(max_iter=0)
    with pytest.raises(ValueError):
        NewtonConfig(linear_solver="magic")


# ----------------------------------------------------------- step properties

def test_divergence_of_b_preserved_exactly(rng):
    from decmhd import make_grid
    g = make_grid(16, 16, 2.0, 2.0)
    s = random_smooth_state(rng, g)
    div0 = div_staggered(s.b)
    # loose tolerance on purpose: flux form does not care about Newton
    out, _ = newton_solve(s, 0.05, NewtonConfig(tol=1e-5))
    assert np.max(np.abs(div_staggered(out.b) - div0)) < 1e-13


def test_conservation_single_step(rng):
    from decmhd import make_grid
    g = make_grid(16, 16, 2.0, 2.0)
    s = random_smooth_state(rng, g)
    e0 = sum(energy(s))
    c0 = cross_helicity(s)
    out, _ = newton_solve(s, 0.05, TIGHT)
    assert sum(energy(out)) == pytest.approx(e0, abs=50 * 1e-12 * max(e0, 1.0))
    assert cross_helicity(out) == pytest.approx(c0, abs=50 * 1e-12)


def test_time_reversal_symmetry(rng):
    from decmhd import make_grid
    g = make_grid(16, 16, 2.0, 2.0)
    s0 = random_smooth_state(rng, g)
    s1, _ = newton_solve(s0, 0.05, TIGHT)
    flipped = State(Form1(g, "primal", -s1.v.x_values, -s1.v.y_values),
                    Form1(g, "primal", -s1.b.x_values, -s1.b.y_values),
                    s1.p, 0.0)
    back, _ = newton_solve(flipped, 0.05, TIGHT)
    err = max(np.max(np.abs(back.v.x_values + s0.v.x_values)),
              np.max(np.abs(back.v.y_values + s0.v.y_values)),
              np.max(np.abs(back.b.x_values + s0.b.x_values)),
              np.max(np.abs(back.b.y_values + s0.b.y_values)))
    assert err <= 10 * TIGHT.tol


# ----------------------------------------------------------- advance

def test_advance_single_step_equals_newton_solve(rng):
    from decmhd import make_grid
    g = make_grid(12, 12, 2.0, 2.0)
    s = random_smooth_state(rng, g)
    one, _ = newton_solve(s, 0.05, TIGHT)
    via_advance = advance(s, 0.05, 1, TIGHT)
    assert np.array_equal(one.v.x_values, via_advance.v.x_values)


def test_advance_invokes_observer(rng):
    from decmhd import make_grid
    g = make_grid(8, 8, 2.0, 2.0)
    s = random_smooth_state(rng, g)
    seen = []
    advance(s, 0.05, 3, TIGHT, observer=lambda k, st, rep: seen.append((k, st.t)))
    assert [k for k, _ in seen] == [1, 2, 3]
    assert seen[-1][1] == pytest.approx(0.15)


def test_advance_failure_reports_step(rng):
    from decmhd import make_grid
    g = make_grid(8, 8, 2.0, 2.0)
    s = random_smooth_state(rng, g)
    with pytest.raises(NewtonConvergenceError) as info:
        advance(s, 0.05, 5, NewtonConfig(tol=1e-30, max_iter=1))
    assert info.value.step == 1


def test_action_oracle_fast_matches_loop_transcription(rng, grid):
    """The vectorised action oracle is pinned to the per-cell loop one."""
    from oracle_action import discrete_action, discrete_action_slow
    for _ in range(3):
        args = [rng.standard_normal(grid.shape) for _ in range(15)]
        fast = discrete_action(grid, 0.08, *args)
        slow = discrete_action_slow(grid, 0.08, *args)
        assert fast == pytest.approx(slow, rel=1e-13)

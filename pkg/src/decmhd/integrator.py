"""Implicit-midpoint time integrator with an exact-Jacobian Newton solver.

One time step solves the coupled nonlinear system for the new velocity
and magnetic edge fields and the half-step pressure:

* x/y momentum on the primal edges, with the curl-transport operator
  acting on velocity and magnetic field and the one-sided pressure
  gradient,
* x/y induction on the primal edges, in flux form,
* the staggered divergence constraint on the new velocity at the
  pressure points.

The nonlinear terms evaluate space-time bar-averages of the old and new
states, which makes the step the implicit midpoint method: symmetric in
time and conservative for the discrete energy, cross helicity and
magnetic helicity up to the nonlinear-solver tolerance.

The pressure is determined only up to a constant and the divergence rows
sum to zero; the Newton system is therefore solved in bordered form with
one Lagrange multiplier, and the constant mode is projected out of every
pressure update (mean-free gauge), keeping the sparse pattern uniform.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .dec import Form1
from .errors import FormMismatchError, NewtonConvergenceError
from .grid import Grid, shift
from .operators import (EdgePair, bar_average, curl_midpoint, div_staggered,
                        flux_function, grad_pressure)

__all__ = ["State", "NewtonConfig", "StepReport", "residual", "jacobian",
           "newton_solve", "advance", "unknown_vector", "state_from_vector"]


@dataclass(frozen=True)
class State:
    """Physical unknowns at one time level.

    ``v`` and ``b`` are primal one-forms (velocity and Alfven velocity);
    ``p`` is the combined pressure at the dual cell centres, attached to
    the half step that produced it.
    """

    v: Form1
    b: Form1
    p: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        if self.v.kind != "primal" or self.b.kind != "primal":
            raise FormMismatchError("state fields must be primal one-forms")
        if self.v.grid != self.b.grid:
            raise FormMismatchError("velocity and magnetic field grids differ")
        p = np.asarray(self.p, dtype=float)
        if p.shape != self.v.grid.shape:
            raise FormMismatchError("pressure array shape does not match the grid")
        object.__setattr__(self, "p", p)

    @property
    def grid(self) -> Grid:
        return self.v.grid


@dataclass(frozen=True)
class NewtonConfig:
    """Newton and linear-solver settings.

    ``tol`` is an absolute bound on the max-norm of the stacked residual.
    The sparse direct factorisation is the default; GMRES with an
    incomplete factorisation becomes worthwhile on grids beyond 64x64.
    """

    tol: float = 1e-10
    max_iter: int = 20
    linear_solver: str = "sparse-direct"      # or "gmres"
    gmres_restart: int = 50
    gmres_tol: float = 1e-13
    preconditioner: str = "incomplete-factorization"  # "none" | "block-jacobi" | ...

    def __post_init__(self):
        if not self.tol > 0.0:
            raise ValueError("Newton tolerance must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if self.linear_solver not in ("sparse-direct", "gmres"):
            raise ValueError(f"unknown linear solver {self.linear_solver!r}")
        if self.preconditioner not in ("none", "block-jacobi",
                                       "incomplete-factorization"):
            raise ValueError(f"unknown preconditioner {self.preconditioner!r}")


@dataclass
class StepReport:
    """Convergence record of one implicit step."""

    newton_iterations: int = 0
    final_residual_norm: float = np.inf
    linear_iterations_total: int = 0
    residual_history: list = field(default_factory=list)


# unknown vector layout: [vx, vy, bx, by, p], each flattened C-order
_N_FIELDS = 5


def unknown_vector(s: State) -> np.ndarray:
    return np.concatenate([s.v.x_values.ravel(), s.v.y_values.ravel(),
                           s.b.x_values.ravel(), s.b.y_values.ravel(),
                           s.p.ravel()])


def state_from_vector(u: np.ndarray, grid: Grid, t: float) -> State:
    n = grid.n_cells
    parts = [u[k * n:(k + 1) * n].reshape(grid.shape) for k in range(_N_FIELDS)]
    v = Form1(grid, "primal", parts[0], parts[1])
    b = Form1(grid, "primal", parts[2], parts[3])
    return State(v=v, b=b, p=parts[4], t=t)


def _pairs(s_n: State, guess: State) -> tuple[EdgePair, EdgePair]:
    return EdgePair(s_n.v, guess.v), EdgePair(s_n.b, guess.b)


def residual(s_n: State, guess: State, ht: float) -> np.ndarray:
    """Stacked residual of the implicit step, length ``5*nx*ny``.

    Block order: x-momentum, y-momentum, x-induction, y-induction,
    divergence of the new velocity.  Non-finite entries signal a
    diverged Newton iterate and are the caller's cue to abort.
    """
    g = s_n.grid
    vp, bp = _pairs(s_n, guess)
    vbar = bar_average(vp)
    bbar = bar_average(bp)
    cv = curl_midpoint(vp)
    cb = curl_midpoint(bp)
    gpx, gpy = grad_pressure(guess.p, g)

    yc_v = vbar.ybar * cv
    xc_v = vbar.xbar * cv
    yc_b = bbar.ybar * cb
    xc_b = bbar.xbar * cb

    r_vx = ((guess.v.x_values - s_n.v.x_values) / ht
            + 0.5 * (yc_v + shift(yc_v, 0, 1))
            - 0.5 * (yc_b + shift(yc_b, 0, 1))
            + gpx)
    r_vy = ((guess.v.y_values - s_n.v.y_values) / ht
            - 0.5 * (xc_v + shift(xc_v, 1, 0))
            + 0.5 * (xc_b + shift(xc_b, 1, 0))
            + gpy)

    w = flux_function(vbar, bbar)
    r_bx = (guess.b.x_values - s_n.b.x_values) / ht - (shift(w, 0, 1) - w) / g.hy
    r_by = (guess.b.y_values - s_n.b.y_values) / ht + (shift(w, 1, 0) - w) / g.hx

    r_div = div_staggered(guess.v)

    return np.concatenate([r_vx.ravel(), r_vy.ravel(), r_bx.ravel(),
                           r_by.ravel(), r_div.ravel()])


def jacobian(s_n: State, guess: State, ht: float) -> sp.csr_matrix:
    """Analytic Jacobian of :func:`residual` w.r.t. the new-state unknowns.

    Compact stencils only: every row couples at most 16 unknowns.  The
    pressure-gradient block is exactly minus the transpose of the
    divergence block.
    """
    g = s_n.grid
    nx, ny = g.shape
    n = g.n_cells
    hx, hy = g.hx, g.hy

    vp, bp = _pairs(s_n, guess)
    vbar = bar_average(vp)
    bbar = bar_average(bp)
    cv = curl_midpoint(vp)
    cb = curl_midpoint(bp)

    idx = np.arange(n).reshape(g.shape)

    def col(di, dj):
        return shift(idx, di, dj)

    rows, cols, vals = [], [], []
    ones = np.ones(g.shape)

    def add(r_block, c_block, dij, coeff):
        rows.append(r_block * n + idx)
        cols.append(c_block * n + col(*dij))
        vals.append(np.broadcast_to(coeff, g.shape))

    VX, VY, BX, BY, P = range(_N_FIELDS)
    DIV = 4  # divergence rows share the pressure slot of the vector layout

    inv_ht = ones / ht

    # --- x-momentum rows -------------------------------------------------
    vyb0, vyb1 = vbar.ybar, shift(vbar.ybar, 0, 1)
    byb0, byb1 = bbar.ybar, shift(bbar.ybar, 0, 1)
    cv1, cb1 = shift(cv, 0, 1), shift(cb, 0, 1)

    add(VX, VX, (0, 0), inv_ht + (vyb0 - vyb1) / (4 * hy))
    add(VX, VX, (0, -1), -vyb0 / (4 * hy))
    add(VX, VX, (0, 1), vyb1 / (4 * hy))

    add(VX, VY, (-1, 0), cv / 8 + vyb0 / (4 * hx))
    add(VX, VY, (0, 0), cv / 8 - vyb0 / (4 * hx))
    add(VX, VY, (-1, 1), cv1 / 8 + vyb1 / (4 * hx))
    add(VX, VY, (0, 1), cv1 / 8 - vyb1 / (4 * hx))

    add(VX, BX, (0, 0), (byb1 - byb0) / (4 * hy))
    add(VX, BX, (0, -1), byb0 / (4 * hy))
    add(VX, BX, (0, 1), -byb1 / (4 * hy))

    add(VX, BY, (-1, 0), -cb / 8 - byb0 / (4 * hx))
    add(VX, BY, (0, 0), -cb / 8 + byb0 / (4 * hx))
    add(VX, BY, (-1, 1), -cb1 / 8 - byb1 / (4 * hx))
    add(VX, BY, (0, 1), -cb1 / 8 + byb1 / (4 * hx))

    add(VX, P, (0, 0), ones / hx)
    add(VX, P, (-1, 0), -ones / hx)

    # --- y-momentum rows -------------------------------------------------
    vxb0, vxb1 = vbar.xbar, shift(vbar.xbar, 1, 0)
    bxb0, bxb1 = bbar.xbar, shift(bbar.xbar, 1, 0)
    cvx1, cbx1 = shift(cv, 1, 0), shift(cb, 1, 0)

    add(VY, VY, (0, 0), inv_ht + (vxb0 - vxb1) / (4 * hx))
    add(VY, VY, (-1, 0), -vxb0 / (4 * hx))
    add(VY, VY, (1, 0), vxb1 / (4 * hx))

    add(VY, VX, (0, -1), -cv / 8 + vxb0 / (4 * hy))
    add(VY, VX, (0, 0), -cv / 8 - vxb0 / (4 * hy))
    add(VY, VX, (1, -1), -cvx1 / 8 + vxb1 / (4 * hy))
    add(VY, VX, (1, 0), -cvx1 / 8 - vxb1 / (4 * hy))

    add(VY, BX, (0, -1), cb / 8 - bxb0 / (4 * hy))
    add(VY, BX, (0, 0), cb / 8 + bxb0 / (4 * hy))
    add(VY, BX, (1, -1), cbx1 / 8 - bxb1 / (4 * hy))
    add(VY, BX, (1, 0), cbx1 / 8 + bxb1 / (4 * hy))

    add(VY, BY, (-1, 0), bxb0 / (4 * hx))
    add(VY, BY, (0, 0), (bxb1 - bxb0) / (4 * hx))
    add(VY, BY, (1, 0), -bxb1 / (4 * hx))

    add(VY, P, (0, 0), ones / hy)
    add(VY, P, (0, -1), -ones / hy)

    # --- x-induction rows:  d/dt bx - (W[i,j+1] - W[i,j]) / hy -----------
    bby0, bby1 = bbar.ybar, shift(bbar.ybar, 0, 1)
    bbx0, bbx1 = bbar.xbar, shift(bbar.xbar, 0, 1)
    vby0, vby1 = vbar.ybar, shift(vbar.ybar, 0, 1)
    vbx0, vbx1 = vbar.xbar, shift(vbar.xbar, 0, 1)

    add(BX, VX, (0, -1), bby0 / (4 * hy))
    add(BX, VX, (0, 0), (bby0 - bby1) / (4 * hy))
    add(BX, VX, (0, 1), -bby1 / (4 * hy))

    add(BX, VY, (-1, 0), -bbx0 / (4 * hy))
    add(BX, VY, (0, 0), -bbx0 / (4 * hy))
    add(BX, VY, (-1, 1), bbx1 / (4 * hy))
    add(BX, VY, (0, 1), bbx1 / (4 * hy))

    add(BX, BX, (0, -1), -vby0 / (4 * hy))
    add(BX, BX, (0, 0), inv_ht + (vby1 - vby0) / (4 * hy))
    add(BX, BX, (0, 1), vby1 / (4 * hy))

    add(BX, BY, (-1, 0), vbx0 / (4 * hy))
    add(BX, BY, (0, 0), vbx0 / (4 * hy))
    add(BX, BY, (-1, 1), -vbx1 / (4 * hy))
    add(BX, BY, (0, 1), -vbx1 / (4 * hy))

    # --- y-induction rows:  d/dt by + (W[i+1,j] - W[i,j]) / hx -----------
    bbyx1 = shift(bbar.ybar, 1, 0)
    bbxx1 = shift(bbar.xbar, 1, 0)
    vbyx1 = shift(vbar.ybar, 1, 0)
    vbxx1 = shift(vbar.xbar, 1, 0)

    add(BY, VX, (1, -1), bbyx1 / (4 * hx))
    add(BY, VX, (1, 0), bbyx1 / (4 * hx))
    add(BY, VX, (0, -1), -bby0 / (4 * hx))
    add(BY, VX, (0, 0), -bby0 / (4 * hx))

    add(BY, VY, (0, 0), (bbx0 - bbxx1) / (4 * hx))
    add(BY, VY, (1, 0), -bbxx1 / (4 * hx))
    add(BY, VY, (-1, 0), bbx0 / (4 * hx))

    add(BY, BX, (1, -1), -vbyx1 / (4 * hx))
    add(BY, BX, (1, 0), -vbyx1 / (4 * hx))
    add(BY, BX, (0, -1), vby0 / (4 * hx))
    add(BY, BX, (0, 0), vby0 / (4 * hx))

    add(BY, BY, (0, 0), inv_ht + (vbxx1 - vbx0) / (4 * hx))
    add(BY, BY, (1, 0), vbxx1 / (4 * hx))
    add(BY, BY, (-1, 0), -vbx0 / (4 * hx))

    # --- divergence rows --------------------------------------------------
    add(DIV, VX, (1, 0), ones / hx)
    add(DIV, VX, (0, 0), -ones / hx)
    add(DIV, VY, (0, 1), ones / hy)
    add(DIV, VY, (0, 0), -ones / hy)

    rows = np.concatenate([r.ravel() for r in rows])
    cols = np.concatenate([c.ravel() for c in cols])
    vals = np.concatenate([v.ravel() for v in vals])
    return sp.coo_matrix((vals, (rows, cols)),
                         shape=(_N_FIELDS * n, _N_FIELDS * n)).tocsr()


def _bordered(mat: sp.csr_matrix, n: int) -> sp.csc_matrix:
    """Append a rank-1 gauge border making the saddle point invertible.

    The pressure appears only through differences (constant nullspace)
    and the divergence rows sum to zero (consistent right-hand sides),
    so bordering with single-entry vectors -- one multiplier feeding the
    first divergence row, one constraint pinning the first pressure
    update -- yields a nonsingular matrix whose solution still solves
    the original system exactly; the multiplier comes out zero.  Sparse
    border vectors keep the factor fill low; the mean-zero pressure
    gauge is restored after the solve (adding a constant to the pressure
    update does not change the residual equation).
    """
    total = _N_FIELDS * n
    c = np.zeros(total)
    c[4 * n] = 1.0
    r = np.zeros(total)
    r[4 * n] = 1.0
    return sp.bmat([[mat, c[:, None]], [r[None, :], None]], format="csc")


class _LinearSolver:
    """Solves the bordered Newton systems per configuration."""

    def __init__(self, cfg: NewtonConfig):
        self.cfg = cfg
        self.iterations = 0

    def solve(self, mat: sp.csc_matrix, rhs: np.ndarray) -> np.ndarray:
        if self.cfg.linear_solver == "sparse-direct":
            self.iterations += 1
            return spla.splu(mat).solve(rhs)
        m = None
        if self.cfg.preconditioner == "incomplete-factorization":
            # conservative fill: aggressive dropping hits exact zero pivots
            # in the pressure block of the saddle point
            ilu = spla.spilu(mat, drop_tol=1e-6, fill_factor=30)
            m = spla.LinearOperator(mat.shape, ilu.solve)
        elif self.cfg.preconditioner == "block-jacobi":
            diag = mat.diagonal()
            diag[diag == 0.0] = 1.0
            m = spla.LinearOperator(mat.shape, lambda x: x / diag)
        count = [0]

        def cb(_):
            count[0] += 1

        x, info = spla.gmres(mat, rhs, rtol=self.cfg.gmres_tol,
                             atol=0.0, restart=self.cfg.gmres_restart,
                             maxiter=2000, M=m, callback=cb,
                             callback_type="legacy")
        self.iterations += count[0]
        if info != 0:
            raise NewtonConvergenceError(f"GMRES failed to converge (info={info})")
        return x


def newton_solve(s_n: State, ht: float,
                 cfg: NewtonConfig = NewtonConfig()) -> tuple[State, StepReport]:
    """Advance one implicit step with Newton's method.

    The initial guess is the previous state.  Convergence is declared on
    the max-norm of the stacked residual; failure raises
    :class:`NewtonConvergenceError` carrying the residual history.
    """
    if not ht > 0.0:
        raise ValueError("time step must be positive")
    g = s_n.grid
    n = g.n_cells
    guess = replace(s_n, t=s_n.t + ht)
    report = StepReport()
    solver = _LinearSolver(cfg)

    for iteration in range(cfg.max_iter + 1):
        r = residual(s_n, guess, ht)
        norm = float(np.max(np.abs(r)))
        report.residual_history.append(norm)
        report.final_residual_norm = norm
        if not np.isfinite(norm):
            raise NewtonConvergenceError(
                f"Newton iterate diverged (residual norm {norm})",
                residual_history=report.residual_history)
        if norm <= cfg.tol:
            report.linear_iterations_total = solver.iterations
            return guess, report
        if iteration == cfg.max_iter:
            break
        mat = _bordered(jacobian(s_n, guess, ht), n)
        rhs = np.concatenate([-r, [0.0]])
        delta = solver.solve(mat, rhs)[:-1]
        delta[4 * n:] -= np.mean(delta[4 * n:])   # mean-free pressure gauge
        guess = state_from_vector(unknown_vector(guess) + delta, g, guess.t)
        report.newton_iterations += 1

    raise NewtonConvergenceError(
        f"Newton did not reach tol={cfg.tol:g} within {cfg.max_iter} iterations "
        f"(last residual {report.final_residual_norm:.3e})",
        residual_history=report.residual_history)


def advance(s: State, ht: float, n_steps: int,
            cfg: NewtonConfig = NewtonConfig(), observer=None) -> State:
    """Repeat :func:`newton_solve`; call ``observer(step, state, report)``
    after every accepted step.  Solver failures propagate with the step
    index attached."""
    if n_steps < 1:
        raise ValueError("n_steps must be at least 1")
    for step in range(1, n_steps + 1):
        try:
            s, report = newton_solve(s, ht, cfg)
        except NewtonConvergenceError as exc:
            exc.step = step
            raise
        if observer is not None:
            observer(step, s, report)
    return s

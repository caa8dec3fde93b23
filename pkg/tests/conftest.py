import numpy as np
import pytest

from decmhd import Form0, Form1, Form2, State, make_grid
from decmhd.cases import project_solenoidal
from decmhd.dec import Chain


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def grid():
    return make_grid(8, 8, 2.0, 2.0)


@pytest.fixture
def rect_grid():
    # deliberately anisotropic and offset to catch hx/hy mixups
    return make_grid(12, 8, 3.0, 2.0, -1.0, 0.5)


def random_form(rng, grid, degree, kind="primal"):
    if degree == 0:
        return Form0(grid, kind, rng.standard_normal(grid.shape))
    if degree == 1:
        return Form1(grid, kind, rng.standard_normal(grid.shape),
                     rng.standard_normal(grid.shape))
    return Form2(grid, kind, rng.standard_normal(grid.shape))


def random_chain(rng, grid, degree, kind="primal"):
    if degree == 1:
        return Chain(grid, 1, kind, x_values=rng.standard_normal(grid.shape),
                     y_values=rng.standard_normal(grid.shape))
    return Chain(grid, degree, kind, values=rng.standard_normal(grid.shape))


def smooth_edge_field(rng, grid, modes=2, amplitude=0.25):
    """Band-limited random edge field (trig samples at edge midpoints)."""
    xex, xey = grid.mesh("int", "half")
    yex, yey = grid.mesh("half", "int")

    def trig(x, y):
        out = np.zeros_like(x)
        for kx in range(-modes, modes + 1):
            for ky in range(-modes, modes + 1):
                a, b = rng.normal(size=2) * amplitude / (modes * 2 + 1)
                phase = 2.0 * np.pi * (kx * (x - grid.x0) / grid.lx
                                       + ky * (y - grid.y0) / grid.ly)
                out += a * np.cos(phase) + b * np.sin(phase)
        return out

    return Form1(grid, "primal", trig(xex, xey), trig(yex, yey))


def random_smooth_state(rng, grid, amplitude=0.25):
    """Divergence-free random state for integrator tests."""
    v = project_solenoidal(smooth_edge_field(rng, grid, amplitude=amplitude))
    b = project_solenoidal(smooth_edge_field(rng, grid, amplitude=amplitude))
    p = rng.standard_normal(grid.shape) * amplitude
    return State(v=v, b=b, p=p, t=0.0)


def random_state(rng, grid):
    """White-noise state; enough for algebraic identities."""
    v = Form1(grid, "primal", rng.standard_normal(grid.shape),
              rng.standard_normal(grid.shape))
    b = Form1(grid, "primal", rng.standard_normal(grid.shape),
              rng.standard_normal(grid.shape))
    return State(v=v, b=b, p=rng.standard_normal(grid.shape), t=0.0)

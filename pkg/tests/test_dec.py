"""Structural identities and literal-stencil cross-checks for the DEC kernel."""

import numpy as np
import pytest

from decmhd import Form0, Form1, Form2, boundary, d, hodge, integrate, pairing, wedge
from decmhd.dec import Chain, cell_chain, domain_chain, edge_chain, vertex_chain
from decmhd.errors import FormMismatchError, UnsupportedWedgeError
from decmhd.grid import shift

from conftest import random_chain, random_form

KINDS = ("primal", "dual")


# --------------------------------------------------------------- boundary

def test_boundary_single_cell_has_four_signed_edges(grid):
    a = np.zeros(grid.shape)
    a[2, 3] = 1.0
    e = boundary(cell_chain(grid, a))
    # counter-clockwise: +bottom -top +right -left
    assert e.x_values[2, 2] == 1.0 and e.x_values[2, 3] == -1.0
    assert e.y_values[2, 3] == 1.0 and e.y_values[1, 3] == -1.0
    assert np.count_nonzero(e.x_values) == 2 and np.count_nonzero(e.y_values) == 2


@pytest.mark.parametrize("kind", KINDS)
def test_boundary_of_boundary_vanishes(rng, rect_grid, kind):
    for _ in range(10):
        c = random_chain(rng, rect_grid, 2, kind)
        v = boundary(boundary(c))
        assert np.max(np.abs(v.values)) < 1e-14


def test_full_domain_has_empty_boundary(grid):
    e = boundary(domain_chain(grid))
    assert np.max(np.abs(e.x_values)) == 0.0
    assert np.max(np.abs(e.y_values)) == 0.0


def test_boundary_rejects_vertex_chain(grid):
    with pytest.raises(FormMismatchError):
        boundary(vertex_chain(grid, np.zeros(grid.shape)))


def test_boundary_is_linear(rng, grid):
    c1 = random_chain(rng, grid, 2)
    c2 = random_chain(rng, grid, 2)
    lin = Chain(grid, 2, "primal", values=2.0 * c1.values - 3.0 * c2.values)
    got = boundary(lin)
    want_x = 2.0 * boundary(c1).x_values - 3.0 * boundary(c2).x_values
    assert np.allclose(got.x_values, want_x, atol=1e-14)


# --------------------------------------------------------------- integrate

def test_integrate_constant_two_form_gives_area(grid):
    omega = Form2(grid, "primal", np.ones(grid.shape))
    assert integrate(omega, domain_chain(grid)) == pytest.approx(
        grid.lx * grid.ly, rel=1e-15)


def test_integrate_basis_pairing_weights(rect_grid):
    g = rect_grid
    f = np.zeros(g.shape)
    f[3, 4] = 1.0
    ex = np.zeros(g.shape)
    ex[3, 4] = 1.0
    form = Form1(g, "primal", f, np.zeros(g.shape))
    chain = edge_chain(g, ex, np.zeros(g.shape))
    assert integrate(form, chain) == pytest.approx(g.hx, rel=1e-15)
    # off-diagonal and cross-component pairings vanish
    chain_y = edge_chain(g, np.zeros(g.shape), ex)
    assert integrate(form, chain_y) == 0.0


def test_integrate_matches_double_loop_oracle(rng, rect_grid):
    g = rect_grid
    f = random_form(rng, g, 1)
    c = random_chain(rng, g, 1)
    total = 0.0
    for i in range(g.nx):
        for j in range(g.ny):
            total += g.hx * c.x_values[i, j] * f.x_values[i, j]
            total += g.hy * c.y_values[i, j] * f.y_values[i, j]
    assert integrate(f, c) == pytest.approx(total, rel=1e-14)


def test_integrate_rejects_mismatch(rng, grid):
    f = random_form(rng, grid, 1)
    with pytest.raises(FormMismatchError):
        integrate(f, random_chain(rng, grid, 2))
    with pytest.raises(FormMismatchError):
        integrate(f, random_chain(rng, grid, 1, "dual"))


# --------------------------------------------------------------- hodge

def test_hodge_double_application_signs(rng, rect_grid):
    f0 = random_form(rng, rect_grid, 0)
    f1 = random_form(rng, rect_grid, 1)
    f2 = random_form(rng, rect_grid, 2)
    assert np.array_equal(hodge(hodge(f0)).values, f0.values)
    assert np.array_equal(hodge(hodge(f2)).values, f2.values)
    h2 = hodge(hodge(f1))
    assert np.array_equal(h2.x_values, -f1.x_values)
    assert np.array_equal(h2.y_values, -f1.y_values)


def test_hodge_unit_x_edges_map_to_dual_y(grid):
    f = Form1(grid, "primal", np.ones(grid.shape), np.zeros(grid.shape))
    h = hodge(f)
    assert h.kind == "dual"
    assert np.array_equal(h.y_values, np.ones(grid.shape))
    assert np.array_equal(h.x_values, np.zeros(grid.shape))


def test_hodge_kind_toggles(rng, grid):
    for degree in (0, 1, 2):
        f = random_form(rng, grid, degree)
        assert hodge(f).kind == "dual"
        assert hodge(hodge(f)).kind == "primal"


# --------------------------------------------------------------- d

@pytest.mark.parametrize("kind", KINDS)
def test_d_constant_is_zero(grid, kind):
    f = Form0(grid, kind, np.full(grid.shape, 3.7))
    df = d(f)
    assert np.max(np.abs(df.x_values)) == 0.0
    assert np.max(np.abs(df.y_values)) == 0.0


@pytest.mark.parametrize("kind", KINDS)
def test_d_of_d_vanishes(rng, rect_grid, kind):
    g = rect_grid
    bound = 1e-14 / min(g.hx, g.hy) ** 2
    for _ in range(10):
        f = random_form(rng, g, 0, kind)
        dd = d(d(f))
        assert np.max(np.abs(dd.values)) <= bound * np.max(np.abs(f.values))


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("degree", [0, 1])
def test_discrete_stokes(rng, rect_grid, kind, degree):
    for _ in range(10):
        f = random_form(rng, rect_grid, degree, kind)
        c = random_chain(rng, rect_grid, degree + 1, kind)
        lhs = integrate(d(f), c)
        rhs = integrate(f, boundary(c))
        assert lhs == pytest.approx(rhs, rel=1e-13, abs=1e-13)


def test_d_rejects_two_forms(rng, grid):
    with pytest.raises(FormMismatchError):
        d(random_form(rng, grid, 2))


def test_d_is_linear(rng, grid):
    a = random_form(rng, grid, 0)
    b = random_form(rng, grid, 0)
    lin = Form0(grid, "primal", 1.5 * a.values - 0.5 * b.values)
    got = d(lin)
    assert np.allclose(got.x_values,
                       1.5 * d(a).x_values - 0.5 * d(b).x_values, atol=1e-13)


# --------------------------------------------------------------- wedge

def test_wedge_zero_zero_pointwise(grid):
    two = Form0(grid, "primal", np.full(grid.shape, 2.0))
    out = wedge(two, two)
    assert np.array_equal(out.values, np.full(grid.shape, 4.0))


@pytest.mark.parametrize("kind", KINDS)
def test_wedge_one_one_antisymmetry(rng, rect_grid, kind):
    a = random_form(rng, rect_grid, 1, kind)
    assert np.max(np.abs(wedge(a, a).values)) == 0.0
    b = random_form(rng, rect_grid, 1, kind)
    ab = wedge(a, b).values
    ba = wedge(b, a).values
    assert np.allclose(ab, -ba, atol=1e-14)


def test_wedge_primal_one_one_literal_stencil(rng, rect_grid):
    g = rect_grid
    a = random_form(rng, g, 1)
    b = random_form(rng, g, 1)
    out = wedge(a, b).values
    for i, j in ((0, 0), (3, 5), (g.nx - 1, g.ny - 1)):
        im, jm = (i - 1) % g.nx, (j - 1) % g.ny
        want = 0.25 * (
            (a.x_values[i, jm] + a.x_values[i, j])
            * (b.y_values[im, j] + b.y_values[i, j])
            - (a.y_values[im, j] + a.y_values[i, j])
            * (b.x_values[i, jm] + b.x_values[i, j]))
        assert out[i, j] == pytest.approx(want, rel=1e-14)


def test_wedge_mixed_one_one_literal_stencil(rng, rect_grid):
    g = rect_grid
    a = random_form(rng, g, 1, "primal")
    b = random_form(rng, g, 1, "dual")
    out = wedge(a, b)
    assert out.kind == "primal"
    for i, j in ((0, 0), (2, 7), (g.nx - 1, g.ny - 1)):
        jm = (j - 1) % g.ny
        im = (i - 1) % g.nx
        want = 0.5 * (a.x_values[i, jm] * b.y_values[i, jm]
                      + a.x_values[i, j] * b.y_values[i, j]
                      - a.y_values[im, j] * b.x_values[im, j]
                      - a.y_values[i, j] * b.x_values[i, j])
        assert out.values[i, j] == pytest.approx(want, rel=1e-14)


def test_wedge_dual_primal_lands_on_dual(rng, grid):
    a = random_form(rng, grid, 1, "dual")
    b = random_form(rng, grid, 1, "primal")
    assert wedge(a, b).kind == "dual"


def test_wedge_zero_one_averages_endpoints(rng, rect_grid):
    g = rect_grid
    f = random_form(rng, g, 0)
    a = random_form(rng, g, 1)
    out = wedge(f, a)
    i, j = 4, 2
    want = 0.5 * (f.values[(i - 1) % g.nx, j] + f.values[i, j]) * a.x_values[i, j]
    assert out.x_values[i, j] == pytest.approx(want, rel=1e-14)
    # commutes with the 0-form on either side
    swapped = wedge(a, f)
    assert np.allclose(out.x_values, swapped.x_values, atol=1e-15)


def test_wedge_rejected_combinations(rng, grid):
    f0d = random_form(rng, grid, 0, "dual")
    f1p = random_form(rng, grid, 1, "primal")
    with pytest.raises(UnsupportedWedgeError):
        wedge(f0d, f1p)
    with pytest.raises(UnsupportedWedgeError):
        wedge(random_form(rng, grid, 1), random_form(rng, grid, 2))


def test_wedge_bilinear(rng, grid):
    a1 = random_form(rng, grid, 1)
    a2 = random_form(rng, grid, 1)
    b = random_form(rng, grid, 1)
    lin = Form1(grid, "primal",
                2.0 * a1.x_values + a2.x_values,
                2.0 * a1.y_values + a2.y_values)
    got = wedge(lin, b).values
    want = 2.0 * wedge(a1, b).values + wedge(a2, b).values
    assert np.allclose(got, want, atol=1e-13)


# --------------------------------------------------------------- pairing

def test_pairing_constant_two_forms_area():
    from decmhd import make_grid
    g = make_grid(32, 32, 2.0, 2.0)
    one = Form2(g, "primal", np.ones(g.shape))
    assert pairing(one, one) == pytest.approx(4.0, rel=1e-15)


@pytest.mark.parametrize("degree", [0, 1, 2])
def test_hodge_isometry(rng, rect_grid, degree):
    for _ in range(10):
        a = random_form(rng, rect_grid, degree)
        b = random_form(rng, rect_grid, degree)
        assert pairing(hodge(a), hodge(b)) == pytest.approx(
            pairing(a, b), rel=1e-13)


def test_pairing_symmetry_exact(rng, rect_grid):
    for degree in (0, 1, 2):
        a = random_form(rng, rect_grid, degree)
        b = random_form(rng, rect_grid, degree)
        assert pairing(a, b) == pairing(b, a)


def test_pairing_equals_wedge_hodge_integral(rng, rect_grid):
    """Reduced pairing sums agree with the literal ``a ^ hodge(b)`` route."""
    g = rect_grid
    for degree in (0, 1, 2):
        for kind in KINDS:
            a = random_form(rng, g, degree, kind)
            b = random_form(rng, g, degree, kind)
            lit = integrate(wedge(a, hodge(b)), domain_chain(g, kind))
            assert pairing(a, b) == pytest.approx(lit, rel=1e-13)


def test_pairing_one_forms_reduces_to_plain_sum(rng, rect_grid):
    g = rect_grid
    a = random_form(rng, g, 1)
    b = random_form(rng, g, 1)
    want = g.hx * g.hy * float(
        np.sum(a.x_values * b.x_values + a.y_values * b.y_values))
    assert pairing(a, b) == pytest.approx(want, rel=1e-15)
    # the half-weighted duplicate-edge stencil gives the same number
    lit = 0.5 * g.hx * g.hy * float(np.sum(
        a.x_values * b.x_values + shift(a.x_values, 0, -1) * shift(b.x_values, 0, -1)
        + a.y_values * b.y_values + shift(a.y_values, -1, 0) * shift(b.y_values, -1, 0)))
    assert pairing(a, b) == pytest.approx(lit, rel=1e-14)


def test_pairing_rejects_mismatch(rng, grid):
    with pytest.raises(FormMismatchError):
        pairing(random_form(rng, grid, 1), random_form(rng, grid, 2))
    with pytest.raises(FormMismatchError):
        pairing(random_form(rng, grid, 1), random_form(rng, grid, 1, "dual"))


def test_hodge_linear(rng, grid):
    a = random_form(rng, grid, 1)
    b = random_form(rng, grid, 1)
    lin = Form1(grid, "primal", 2.0 * a.x_values - b.x_values,
                2.0 * a.y_values - b.y_values)
    got = hodge(lin)
    assert np.allclose(got.x_values,
                       2.0 * hodge(a).x_values - hodge(b).x_values, atol=0)


def test_pairing_bilinear(rng, grid):
    a1 = random_form(rng, grid, 1)
    a2 = random_form(rng, grid, 1)
    b = random_form(rng, grid, 1)
    lin = Form1(grid, "primal", 0.5 * a1.x_values + 2.0 * a2.x_values,
                0.5 * a1.y_values + 2.0 * a2.y_values)
    assert pairing(lin, b) == pytest.approx(
        0.5 * pairing(a1, b) + 2.0 * pairing(a2, b), rel=1e-13)


def test_integrate_linear_in_both_arguments(rng, grid):
    f1 = random_form(rng, grid, 2)
    f2 = random_form(rng, grid, 2)
    c = random_chain(rng, grid, 2)
    lin = Form2(grid, "primal", 3.0 * f1.values - 2.0 * f2.values)
    assert integrate(lin, c) == pytest.approx(
        3.0 * integrate(f1, c) - 2.0 * integrate(f2, c), rel=1e-12)

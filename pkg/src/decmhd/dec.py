"""Discrete exterior calculus on the periodic staggered grid pair.

Discrete p-forms carry one coefficient per p-dimensional mesh element
(vertices, edges, cells) on either the primal or the dual grid; chains
are formal weighted sums of those elements.  The operations implemented
here are the boundary operator, integration of forms over chains, the
Hodge star, the exterior derivative, the exterior (wedge) products and
the L2 pairings.  All of them are linear (or bilinear) and exact in the
sense that the structural identities

* ``boundary(boundary(c)) == 0``,
* ``d(d(f)) == 0``,
* ``integrate(d(f), c) == integrate(f, boundary(c))``  (Stokes),
* ``hodge(hodge(f)) == (-1)^(p*(2-p)) * f``,
* ``pairing(hodge(a), hodge(b)) == pairing(a, b)``     (isometry)

hold up to floating-point roundoff on the periodic domain.

Storage convention: every coefficient array has shape ``(nx, ny)``; see
:mod:`decmhd.grid` for how half-integer stations map onto integer array
indices.  Cell-boundary orientation is counter-clockwise, which is the
unique choice consistent with the exterior derivative above and the
discrete Stokes theorem.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FormMismatchError, UnsupportedWedgeError
from .grid import Grid, shift

__all__ = [
    "Form0", "Form1", "Form2", "Chain",
    "boundary", "integrate", "hodge", "d", "wedge", "pairing",
    "vertex_chain", "edge_chain", "cell_chain", "domain_chain",
]

PRIMAL = "primal"
DUAL = "dual"
_KINDS = (PRIMAL, DUAL)


def _check_kind(kind: str):
    if kind not in _KINDS:
        raise FormMismatchError(f"stagger kind must be 'primal' or 'dual', got {kind!r}")


def _as_field(grid: Grid, values) -> np.ndarray:
    a = np.asarray(values, dtype=float)
    if a.shape != grid.shape:
        raise FormMismatchError(f"expected array of shape {grid.shape}, got {a.shape}")
    return a


@dataclass(frozen=True)
class Form0:
    """Discrete 0-form: one coefficient per (primal or dual) vertex."""

    grid: Grid
    kind: str
    values: np.ndarray

    def __post_init__(self):
        _check_kind(self.kind)
        object.__setattr__(self, "values", _as_field(self.grid, self.values))

    degree = 0


@dataclass(frozen=True)
class Form1:
    """Discrete 1-form: coefficients on x-edges and y-edges."""

    grid: Grid
    kind: str
    x_values: np.ndarray
    y_values: np.ndarray

    def __post_init__(self):
        _check_kind(self.kind)
        object.__setattr__(self, "x_values", _as_field(self.grid, self.x_values))
        object.__setattr__(self, "y_values", _as_field(self.grid, self.y_values))

    degree = 1


@dataclass(frozen=True)
class Form2:
    """Discrete 2-form: one coefficient per (primal or dual) cell."""

    grid: Grid
    kind: str
    values: np.ndarray

    def __post_init__(self):
        _check_kind(self.kind)
        object.__setattr__(self, "values", _as_field(self.grid, self.values))

    degree = 2


@dataclass(frozen=True)
class Chain:
    """Formal weighted sum of mesh elements of one degree and kind.

    Degree-1 chains carry separate weight arrays for x- and y-edges; the
    array layout matches the corresponding form coefficients.
    """

    grid: Grid
    degree: int
    kind: str
    values: np.ndarray | None = None
    x_values: np.ndarray | None = None
    y_values: np.ndarray | None = None

    def __post_init__(self):
        _check_kind(self.kind)
        if self.degree not in (0, 1, 2):
            raise FormMismatchError(f"chain degree must be 0, 1 or 2, got {self.degree}")
        if self.degree == 1:
            if self.x_values is None or self.y_values is None:
                raise FormMismatchError("degree-1 chain needs x_values and y_values")
            object.__setattr__(self, "x_values", _as_field(self.grid, self.x_values))
            object.__setattr__(self, "y_values", _as_field(self.grid, self.y_values))
        else:
            if self.values is None:
                raise FormMismatchError(f"degree-{self.degree} chain needs values")
            object.__setattr__(self, "values", _as_field(self.grid, self.values))


def vertex_chain(grid: Grid, values, kind: str = PRIMAL) -> Chain:
    return Chain(grid, 0, kind, values=values)


def edge_chain(grid: Grid, x_values, y_values, kind: str = PRIMAL) -> Chain:
    return Chain(grid, 1, kind, x_values=x_values, y_values=y_values)


def cell_chain(grid: Grid, values, kind: str = PRIMAL) -> Chain:
    return Chain(grid, 2, kind, values=values)


def domain_chain(grid: Grid, kind: str = PRIMAL) -> Chain:
    """Cell chain with unit weights: the whole computational domain."""
    return cell_chain(grid, np.ones(grid.shape), kind)


def _check_same_grid(a, b):
    if a.grid != b.grid:
        raise FormMismatchError("operands live on different grids")


# ---------------------------------------------------------------------------
# boundary operator
# ---------------------------------------------------------------------------

def boundary(c: Chain) -> Chain:
    """Boundary of an edge or cell chain (degree p -> p-1), periodic.

    On the primal grid an x-edge runs from vertex (i-1/2, j+1/2) to
    (i+1/2, j+1/2) and a y-edge from (i+1/2, j-1/2) to (i+1/2, j+1/2);
    cell boundaries are traversed counter-clockwise.  The dual grid is
    handled in complete analogy.
    """
    if c.degree == 0:
        raise FormMismatchError("boundary of a vertex chain is not defined")

    if c.degree == 1:
        ax, ay = c.x_values, c.y_values
        if c.kind == PRIMAL:
            # vertex (i+1/2, j+1/2) receives  +e^x_{i} -e^x_{i+1} +e^y_{j} -e^y_{j+1}
            out = ax - shift(ax, 1, 0) + ay - shift(ay, 0, 1)
        else:
            # dual vertex (i, j) receives     +e^x_{i-1/2} -e^x_{i+1/2} ...
            out = shift(ax, -1, 0) - ax + shift(ay, 0, -1) - ay
        return Chain(c.grid, 0, c.kind, values=out)

    a = c.values
    if c.kind == PRIMAL:
        # counter-clockwise: +bottom -top +right -left
        bx = shift(a, 0, 1) - a        # x-edge (i, j+1/2): from cell (i,j+1) minus (i,j)
        by = a - shift(a, 1, 0)        # y-edge (i+1/2, j): from cell (i,j) minus (i+1,j)
    else:
        bx = a - shift(a, 0, -1)       # dual x-edge (i+1/2, j)
        by = shift(a, -1, 0) - a       # dual y-edge (i, j+1/2)
    return Chain(c.grid, 1, c.kind, x_values=bx, y_values=by)


# ---------------------------------------------------------------------------
# integration of forms over chains
# ---------------------------------------------------------------------------

def integrate(f, c: Chain) -> float:
    """Evaluate a discrete form on a chain of matching degree and kind.

    Edge basis forms integrate to ``hx``/``hy`` over their own edge and
    cell basis forms to ``hx*hy``, so degree-1 and degree-2 integrals
    carry the corresponding metric weights.  Summation order is fixed
    (row-major) so results are reproducible bit-for-bit.
    """
    _check_same_grid(f, c)
    if f.degree != c.degree or f.kind != c.kind:
        raise FormMismatchError(
            f"cannot integrate degree-{f.degree} {f.kind} form over "
            f"degree-{c.degree} {c.kind} chain"
        )
    g = f.grid
    if f.degree == 0:
        return float(np.sum(c.values * f.values))
    if f.degree == 1:
        return float(np.sum(g.hx * c.x_values * f.x_values
                            + g.hy * c.y_values * f.y_values))
    return float(g.cell_area * np.sum(c.values * f.values))


# ---------------------------------------------------------------------------
# Hodge star
# ---------------------------------------------------------------------------

def hodge(f):
    """Hodge star: bijective re-tagging between the primal and dual grid.

    Coefficient arrays are reused as-is for degrees 0 and 2; for 1-forms
    the components swap with one sign flip, ``(x, y) -> (-y, x)``, in
    both directions, so that applying the star twice gives ``+f`` on
    degrees 0 and 2 and ``-f`` on degree 1.
    """
    other = DUAL if f.kind == PRIMAL else PRIMAL
    if isinstance(f, Form0):
        return Form2(f.grid, other, f.values)
    if isinstance(f, Form2):
        return Form0(f.grid, other, f.values)
    if isinstance(f, Form1):
        return Form1(f.grid, other, -f.y_values, f.x_values)
    raise FormMismatchError(f"hodge expects a discrete form, got {type(f).__name__}")


# ---------------------------------------------------------------------------
# exterior derivative
# ---------------------------------------------------------------------------

def d(f):
    """Exterior derivative by one-sided difference quotients, periodic.

    Maps 0-forms to 1-forms and 1-forms to 2-forms on the same grid;
    degree-2 input is rejected since the 2D complex ends there.
    Satisfies the discrete Stokes theorem against :func:`boundary`.
    """
    g = f.grid
    hx, hy = g.hx, g.hy
    if isinstance(f, Form0):
        v = f.values
        if f.kind == PRIMAL:
            dx = (v - shift(v, -1, 0)) / hx       # edge (i, j+1/2)
            dy = (v - shift(v, 0, -1)) / hy       # edge (i+1/2, j)
        else:
            dx = (shift(v, 1, 0) - v) / hx        # dual edge (i+1/2, j)
            dy = (shift(v, 0, 1) - v) / hy        # dual edge (i, j+1/2)
        return Form1(g, f.kind, dx, dy)
    if isinstance(f, Form1):
        ax, ay = f.x_values, f.y_values
        if f.kind == PRIMAL:
            w = (ay - shift(ay, -1, 0)) / hx - (ax - shift(ax, 0, -1)) / hy
        else:
            w = (shift(ay, 1, 0) - ay) / hx - (shift(ax, 0, 1) - ax) / hy
        return Form2(g, f.kind, w)
    raise FormMismatchError(
        "d on a 2-form would leave the two-dimensional complex; rejected"
    )


# ---------------------------------------------------------------------------
# exterior (wedge) products
# ---------------------------------------------------------------------------

def _avg2(a, da, db):
    return 0.5 * (a + shift(a, da, db))


def _wedge_same_kind(a, b):
    """Primal^primal wedge; the dual^dual product mirrors it with the
    dual stagger offsets."""
    g = a.grid
    kind = a.kind
    sgn = 1 if kind == PRIMAL else -1   # offset direction of the stagger
    if isinstance(a, Form0) and isinstance(b, Form0):
        return Form0(g, kind, a.values * b.values)
    if isinstance(a, Form0) and isinstance(b, Form1):
        # average the vertex values onto the two endpoints of each edge
        fx = _avg2(a.values, -sgn, 0) * b.x_values
        fy = _avg2(a.values, 0, -sgn) * b.y_values
        return Form1(g, kind, fx, fy)
    if isinstance(a, Form1) and isinstance(b, Form0):
        return _wedge_same_kind(b, a)
    if isinstance(a, Form0) and isinstance(b, Form2):
        v = a.values
        four = v + shift(v, -sgn, 0) + shift(v, 0, -sgn) + shift(v, -sgn, -sgn)
        return Form2(g, kind, 0.25 * four * b.values)
    if isinstance(a, Form2) and isinstance(b, Form0):
        return _wedge_same_kind(b, a)
    if isinstance(a, Form1) and isinstance(b, Form1):
        # x-components averaged across the cell in y, y-components in x
        axm = a.x_values + shift(a.x_values, 0, -sgn)
        aym = a.y_values + shift(a.y_values, -sgn, 0)
        bxm = b.x_values + shift(b.x_values, 0, -sgn)
        bym = b.y_values + shift(b.y_values, -sgn, 0)
        return Form2(g, kind, 0.25 * (axm * bym - aym * bxm))
    raise UnsupportedWedgeError("wedge of these degrees exceeds the top form")


def _wedge_mixed(a, b):
    """Primal^dual and dual^primal products; only the volume-form
    combinations (p + q = 2) are defined.  The result lives on the first
    operand's grid."""
    g = a.grid
    if isinstance(a, Form0) and isinstance(b, Form2):
        # both arrays sit at the same stations; gather the four around a cell
        p = a.values * b.values
        if a.kind == PRIMAL:     # result at primal cell (i, j)
            out = 0.25 * (p + shift(p, -1, 0) + shift(p, 0, -1) + shift(p, -1, -1))
        else:                    # result at dual cell (i+1/2, j+1/2)
            out = 0.25 * (p + shift(p, 1, 0) + shift(p, 0, 1) + shift(p, 1, 1))
        return Form2(g, a.kind, out)
    if isinstance(a, Form2) and isinstance(b, Form0):
        return Form2(g, a.kind, a.values * b.values)
    if isinstance(a, Form1) and isinstance(b, Form1):
        ax, ay = a.x_values, a.y_values
        bx, by = b.x_values, b.y_values
        if a.kind == PRIMAL:
            # primal x-edges pair with dual y-edges at the same stations
            out = 0.5 * (ax * by + shift(ax * by, 0, -1)
                         - ay * bx - shift(ay * bx, -1, 0))
        else:
            out = 0.5 * (ax * by + shift(ax * by, -1, 0)
                         - ay * bx - shift(ay * bx, 0, -1))
        return Form2(g, a.kind, out)
    raise UnsupportedWedgeError(
        "mixed primal/dual wedge is defined only for volume-form combinations"
    )


def wedge(a, b):
    """Discrete exterior product with the grid-appropriate averaging.

    Same-kind products are defined for every ``p + q <= 2``; mixed
    primal/dual products only where the result is a volume form.  The
    result kind follows the first operand for mixed products.
    """
    _check_same_grid(a, b)
    if a.kind == b.kind:
        return _wedge_same_kind(a, b)
    return _wedge_mixed(a, b)


# ---------------------------------------------------------------------------
# pairings
# ---------------------------------------------------------------------------

def pairing(a, b) -> float:
    """L2 pairing ``integral of a ^ hodge(b)`` over the domain.

    On the periodic grid the half-weighted duplicate edge terms of the
    literal stencil telescope to plain unweighted sums, which is what is
    evaluated here (the equivalence is covered by tests).  Symmetric in
    its arguments; the Hodge star is an isometry for it.
    """
    _check_same_grid(a, b)
    if type(a) is not type(b) or a.kind != b.kind:
        raise FormMismatchError("pairing needs two forms of equal degree and kind")
    w = a.grid.cell_area
    if isinstance(a, Form1):
        return float(w * np.sum(a.x_values * b.x_values + a.y_values * b.y_values))
    return float(w * np.sum(a.values * b.values))


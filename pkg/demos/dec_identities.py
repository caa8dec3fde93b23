#!/usr/bin/env python3
"""Tour of the discrete exterior calculus kernel.

Builds random forms and chains on a small periodic grid and prints the
structural identities that hold exactly (to roundoff) by construction:
the boundary of a boundary, the discrete Stokes theorem, the double
Hodge star, the isometry of the star with respect to the L2 pairing,
and the equivalence of the staggered divergence with star-d-star.
"""

import numpy as np

from decmhd import (Form0, Form1, boundary, d, div_staggered, hodge,
                    integrate, make_grid, pairing, wedge)
from decmhd.dec import cell_chain, domain_chain, edge_chain

rng = np.random.default_rng(1)
grid = make_grid(16, 12, 2.0, 1.5)
print(f"grid: {grid.nx} x {grid.ny} cells, hx = {grid.hx}, hy = {grid.hy}\n")

phi = Form0(grid, "primal", rng.standard_normal(grid.shape))
alpha = Form1(grid, "primal", rng.standard_normal(grid.shape),
              rng.standard_normal(grid.shape))

print("d(d(phi))            max |.| =", np.max(np.abs(d(d(phi)).values)))

cells = cell_chain(grid, rng.standard_normal(grid.shape))
print("boundary(boundary)   max |.| =",
      np.max(np.abs(boundary(boundary(cells)).values)))

edges = edge_chain(grid, rng.standard_normal(grid.shape),
                   rng.standard_normal(grid.shape))
lhs = integrate(d(phi), edges)
rhs = integrate(phi, boundary(edges))
print(f"Stokes, 0-forms      {lhs:+.15f} vs {rhs:+.15f}")

lhs = integrate(d(alpha), cells)
rhs = integrate(alpha, boundary(cells))
print(f"Stokes, 1-forms      {lhs:+.15f} vs {rhs:+.15f}")

twice = hodge(hodge(alpha))
print("star(star(alpha)) + alpha =",
      np.max(np.abs(twice.x_values + alpha.x_values)))

beta = Form1(grid, "primal", rng.standard_normal(grid.shape),
             rng.standard_normal(grid.shape))
print(f"isometry             <*a,*b> - <a,b> = "
      f"{pairing(hodge(alpha), hodge(beta)) - pairing(alpha, beta):+.2e}")

lit = integrate(wedge(alpha, hodge(beta)), domain_chain(grid))
print(f"pairing via wedge    {pairing(alpha, beta):+.15f} vs {lit:+.15f}")

print("div vs star-d-star   max |.| =",
      np.max(np.abs(div_staggered(alpha) - hodge(d(hodge(alpha))).values)))

print("\nwedge antisymmetry: alpha ^ alpha =",
      np.max(np.abs(wedge(alpha, alpha).values)))

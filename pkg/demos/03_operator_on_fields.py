"""Applying the operator to periodic form-valued fields.

Single modes are mapped by the frequency-domain matrix; random fields
probe the L^p -> L^p ratio from below, while the bound constants cap it
from above. Also reports the numeric spectrum of M(xi)^2, which is not
asserted anywhere: whether the operator squares to the identity beyond
two dimensions is left open.
"""

import numpy as np

from heatforms import (
    apply_beurling_ahlfors,
    beurling_ahlfors_symbol,
    cosine_field,
    norm_search,
    symbol_norms_on_grid,
)

# a grade-1 single mode flips sign at an axis frequency
f = cosine_field(2, (64, 64), 1.0, [1, 0], mask=1)
g = apply_beurling_ahlfors(f)
print("single mode e_{1} cos(2 pi x1):  T f = c f with c =",
      g.components[1][3, 5] / f.components[1][3, 5])

norms = symbol_norms_on_grid(2, (64, 64), 1.0)
print("sup over lattice frequencies of ||M(xi)|| (n=2):", norms.max())

result = norm_search(2, 4.0, dims=(64, 64), budget=120, seed=0)
print(f"norm search n=2 p=4: best ratio {result.best_ratio:.6f} "
      f"(candidate {result.best_index}, {result.best_kind}), ceiling {result.ceiling}")

for n in (2, 3):
    xi = np.array([1.0, 0.7, -0.4][:n])
    m = beurling_ahlfors_symbol(xi, n).matrix
    eig_sq = np.sort(np.linalg.eigvalsh(m @ m))
    print(f"spectrum of M(xi)^2 for n={n}: min {eig_sq[0]:.12f}, max {eig_sq[-1]:.12f}")

"""Projecting the form index onto a direction and the large-p constants.

For a unit coefficient vector sigma the projected matrix has norm at most
sqrt(sum_I sigma_I^2 (1 + #I #I^c)); dividing the resulting (p* - 1) bound
by the p-norm of one sphere coordinate gives an asymptotic operator bound
of order sqrt((n/2)^2 + 1) * (p - 1). The observed slack between the
numeric norm and the aggregate bound is reported, not interpreted.
"""

import numpy as np

from heatforms import (
    aggregate_bound,
    asymptotic_bound,
    asymptotic_constant,
    random_direction,
    sigma_dot_matrix,
    sphere_coordinate_lp_norm,
    spectral_norm,
)

rng = np.random.default_rng(0)
n = 3
print(f"random directions in the 2^{n}-dimensional coefficient space:")
for _ in range(5):
    d = random_direction(n, rng)
    numeric = spectral_norm(sigma_dot_matrix(d))
    agg = aggregate_bound(d)
    print(f"  numeric {numeric:.6f} <= aggregate {agg:.6f} (slack {agg - numeric:.6f})")

print("\nasymptotic constants: n=2 -> sqrt(2), n=3 -> sqrt(3), n=4 -> sqrt(5)")
for dim in (2, 3, 4):
    print(f"  n={dim}: {asymptotic_constant(dim):.10f}")

print("\nsphere coordinate p-norms converge to 1:")
for p in (2.0, 10.0, 100.0, 10000.0):
    print(f"  p={p:>7}: {sphere_coordinate_lp_norm(8, p):.6f}")

print("\nbound / (p - 1) approaches the constant:")
for p in (10.0, 100.0, 1000.0):
    ratio = asymptotic_bound(2, p) / (p - 1.0)
    print(f"  n=2 p={p:>6}: {ratio:.6f} (constant {asymptotic_constant(2):.6f})")

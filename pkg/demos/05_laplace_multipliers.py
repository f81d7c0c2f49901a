"""Spectral multipliers of Laplace-transform type, imaginary powers first.

The profile t^{-is}/Gamma(1-is) averages to the multiplier lambda^{is}.
Its operator bound (p* - 1)/|Gamma(1-is)| grows like exp(pi s / 2) but
collapses to the bare p* - 1 as s -> 0.
"""

import numpy as np

from heatforms import (
    apply_spectral_multiplier,
    cosine_field,
    imaginary_power_constant,
    imaginary_power_symbol,
    laplace_symbol_eval,
    lp_norm,
)

print("quadrature of the imaginary-power multiplier versus lambda^{is}:")
for s in (0.5, 1.0, 2.0):
    sym = imaginary_power_symbol(s)
    for lam in (0.1, 10.0):
        got = laplace_symbol_eval(sym, lam)
        want = lam ** (1j * s)
        print(f"  s={s:>3} lambda={lam:>5}: |error| = {abs(got - want):.2e}")

print("\nconstants (p = 2, so p* - 1 = 1):")
for s in (0.0, 1e-4, 0.5, 1.0, 2.0, 5.0):
    print(f"  s={s:<7} bound = {imaginary_power_constant(s, 2.0):.6f}")

f = cosine_field(2, (32, 32), 1.0, [2, 1], mask=1)
g = apply_spectral_multiplier(imaginary_power_symbol(1.0), f)
print(f"\nunimodular multiplier preserves the L2 norm: "
      f"{lp_norm(f, 2):.10f} -> {lp_norm(g, 2):.10f}")
print("output is complex-valued:", np.iscomplexobj(g.components[1]))

"""Grade blocks of the heat matrix, their spectra, and the bound table.

The representing matrix splits per grade r; each grade further splits into
small blocks whose eigenvalues are known in closed form. Minimizing the
block norm over the free weight gives the per-grade constant
2r(n-r)/n + 1 and the dimensional bound n/2 + 1 (even n) or
n/2 + 1 - 1/(2n) (odd n), times p* - 1.
"""

import numpy as np

from heatforms import (
    HeatMatrixSpec,
    MultiIndex,
    bound_constants,
    build_grade_matrix,
    closed_form_spectrum,
    in_block,
    out_block,
    spectral_norm,
)

n, r, alpha = 4, 2, 0.4
spec = HeatMatrixSpec(n, (alpha,) * (n + 1))
block = build_grade_matrix(spec, r)
print(f"grade-{r} block for n={n}, alpha={alpha}: shape {block.shape}")
print(f"  numeric norm      {spectral_norm(block):.12f}")
print(f"  closed-form value {max(2*alpha*r + 1, 2*(1-alpha)*(n-r) + 1):.12f}")

i_tilde = MultiIndex.from_elements([1, 3, 4], n)
out = out_block(i_tilde, alpha)
print(f"\nout-type sub-block for {i_tilde.elements()}:\n{out}")
print("  eigenvalues (numeric):", np.sort(np.linalg.eigvalsh(out)))
print("  eigenvalues (closed): ", closed_form_spectrum("out", n, 2, alpha))

i_tilde = MultiIndex.from_elements([2], n)
inn = in_block(i_tilde, alpha)
print(f"\nin-type sub-block around {i_tilde.elements()}:\n{inn}")
print("  eigenvalues (closed): ", closed_form_spectrum("in", n, 2, alpha))

print("\nbound constants at p = 4 (so p* - 1 = 3):")
print(f"{'n':>3} {'overall constant':>18} {'bound':>8}")
for dim in (2, 3, 4, 5, 6, 10):
    b = bound_constants(dim, 4.0)
    print(f"{dim:>3} {str(b.overall_constant):>18} {b.overall_bound:>8.4f}")

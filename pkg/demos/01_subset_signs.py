"""Subset calculus behind the exterior-algebra basis.

Every matrix in the package is indexed by pairs (subset, axis). The only
algebra it needs is: replace one element of a subset by another and track
the sign that reorders the wedge factors.
"""

from heatforms import MultiIndex, enumerate_grade, substitute_with_sign, wedge_reorder_oracle

n = 4
print(f"grade-2 subsets of {{1..{n}}} in ascending mask order:")
for I in enumerate_grade(n, 2):
    print(f"  mask {I.mask:04b} -> {I.elements()}")

K = MultiIndex.from_elements([1, 2, 3], 5)
print("\nsubstitutions out of K =", K.elements())
for k in K.elements():
    for l in (4, 5):
        target, sign = substitute_with_sign(K, k, l)
        print(f"  {k} -> {l}: {target.elements()} with sign {sign:+d}")

# the sign is exactly the inversion parity of the raw wedge sequence
seq = [5, 1, 3]
oracle_set, oracle_sign = wedge_reorder_oracle(seq, 5)
print(f"\nwedge {seq} sorts to {oracle_set.elements()} with sign {oracle_sign:+d}")

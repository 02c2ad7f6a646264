"""Width-2 logarithmic compression when generators centrally commute.

Commutative structures (and more generally those with a x y b = a y x b for
a, b in some power ideal) admit a simultaneous square-and-multiply: sort the
witness word into generator powers, minimise the exponent tuple, and share
one accumulator across all generators.
"""

import math

from slpforge import evaluate
from slpforge.compressors import compress_permutative, minimize_exponents
from slpforge.zoo import make_abelian, make_subset_semilattice, _abelian_unit_generators

# Z2^10: every element is a sum of unit vectors
dims = [2] * 10
S = make_abelian(dims)
gens = _abelian_unit_generators(dims)
target = S.n - 1  # the all-ones vector needs every generator
slp = compress_permutative(S, gens, target)
print(f"Z2^10: |S| = {S.n}, target needs all 10 generators")
print(f"  program length {slp.length} (log2 N = {math.log2(S.n):.0f}), width {slp.width}")
assert evaluate(S, slp).output_value == target

# the exponent minimiser prefers lexicographically small tuples; in a
# semilattice every exponent collapses to one
w = make_subset_semilattice(8)
nf = minimize_exponents(w.semigroup, [], w.generators, [], w.target)
print(f"\nsubset semilattice 2^[8]: exponents for the full set: {nf.exponents}")
slp = compress_permutative(w.semigroup, w.generators, w.target)
print(f"  program length {slp.length}, width {slp.width}")

# scaling: length grows linearly in log N on a doubling family
print("\nlength versus log2 N over Z2^d:")
for d in range(4, 13, 2):
    dims = [2] * d
    S = make_abelian(dims)
    gens = _abelian_unit_generators(dims)
    slp = compress_permutative(S, gens, S.n - 1)
    print(f"  d={d:>2}  N={S.n:>5}  length={slp.length:>3}")

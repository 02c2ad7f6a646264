"""Why not every semigroup compresses: the square-root obstructions.

Three families force straight-line programs of length on the order of
sqrt(N): left-regular bands, their right duals, and a nilpotent family where
all products of non-consecutive generators vanish.  In each, one target
needs every generator, so no program can be shorter than the generator
count, which is about sqrt(2N).
"""

import math

from slpforge import compress
from slpforge.membership import irredundancy
from slpforge.zoo import make_obstruction_witness, make_u_witness

for variant in ("LRB", "RRB", "T"):
    w = make_obstruction_witness(variant, 20)
    S = w.semigroup
    necessary = irredundancy(S, w.generators, w.target)
    report = compress(S, w.generators, w.target, "auto")
    print(
        f"{variant:>3} witness n=20: |S| = {S.n:>3}, "
        f"necessary generators = {len(necessary)}/{len(w.generators)}, "
        f"best found length = {report.length} >= sqrt(2N)-1 = {math.sqrt(2 * S.n) - 1:.1f}"
    )

# the commutative cousin: exponentially many elements, linearly many generators
w = make_u_witness(10)
print(
    f"\nU witness n=10: |S| = {w.semigroup.n} = 2^10, "
    f"necessary = {len(irredundancy(w.semigroup, w.generators, w.target))}"
)
print("so even with efficient compression, length >= n = log2 N here: the")
print("logarithmic lower bound for everything outside bounded-diameter land")

"""Walk a cocycle down the filtration onto the quasi-diagonal subcomplex.

The retraction works one tensor position at a time.  At each level the
insertion homotopy s looks up, for a behaviourally inequivalent pair
(x, y), a witness pair (u, v) with u != v but u * x = v * y, and the level
projection p = id -+ (d s - s d) clears the tested position.  On a cocycle
each step changes the representative by an explicit coboundary, so the
final quasi-diagonal cochain is cohomologous to the input.
"""

import numpy as np

import ybrack as yb
from ybrack import linalg

F2 = yb.PrimeField(2)
rack = yb.catalog.quandle3()

wm = yb.build_witness_map(rack)
print("witness pairs (x, y) -> (u, v) with u * x = v * y:")
for x, y in wm.domain():
    print(f"  ({x}, {y}) -> {wm.pair(x, y)}")
print()

# draw a random 2-cocycle from the kernel of the degree-2 coboundary
matrix = yb.coboundary_matrix(rack, F2, 2)
basis = linalg.kernel_basis(matrix)
rng = np.random.default_rng(5)
coeffs = rng.integers(0, 2, size=len(basis))
values = np.zeros((9, 9), dtype=np.int64)
for c, vec in zip(coeffs, basis):
    values = (values + int(c) * np.asarray(vec, dtype=np.int64).reshape(9, 9)) % 2
cocycle = yb.Cochain(rack, 2, F2, values)

print(f"random cocycle: filtration level {yb.filtration_level(cocycle)}, "
      f"{int(np.count_nonzero(cocycle.values))} nonzero entries")

step = cocycle
for m in range(2):
    step = yb.level_projection(step, m)
    print(f"after level-{m} projection: filtration level "
          f"{yb.filtration_level(step)}")

representative, correction = yb.quasidiagonal_representative(cocycle)
assert np.array_equal(representative.values, step.values)
check = (cocycle.values + yb.coboundary(correction).values) % 2
assert np.array_equal(check, representative.values)
print()
print("the quasi-diagonal representative equals the input plus the")
print(f"coboundary of a degree-1 correction with "
      f"{int(np.count_nonzero(correction.values))} nonzero entries")

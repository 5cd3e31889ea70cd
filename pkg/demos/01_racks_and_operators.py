"""Build the example racks and look at their braid operators.

Every finite rack gives a permutation solution of the Yang-Baxter equation
on its tensor square: (x, y) goes to (y, x * y).  This script constructs the
three quandles used throughout the package, prints their structural data,
and checks the braid relation for each operator.
"""

import numpy as np

import ybrack as yb

F2 = yb.PrimeField(2)


def show(name, rack):
    part = yb.behavior_partition(rack)
    print(f"{name}: size {rack.size}, quandle {rack.quandle}, "
          f"|Inn| = {yb.inner_group(rack).order}, "
          f"behaviour classes {[list(c) for c in part.classes]}")
    op = yb.rack_operator(rack, F2)
    print(f"  braid relation: {yb.check_ybe(op).holds}")
    rows = []
    for row in np.asarray(op.matrix):
        rows.append(" ".join("1" if v else "." for v in row))
    print("  operator matrix:")
    for line in rows:
        print("   ", line)
    print()


# conjugation on the three transpositions of S3: the rigid dihedral quandle
show("dihedral3", yb.catalog.dihedral3())

# the smallest deformable quandle: c swaps a and b, a and b act trivially
show("quandle3", yb.catalog.quandle3())

# the four reflections of a square in S4
show("dihedral4", yb.catalog.dihedral4())

# a rack that is not a quandle: constant rotation
rotation = yb.permutation_rack((1, 2, 0))
print(f"rotation rack is a quandle: {rotation.quandle}")
print(f"its operator still solves the braid relation: "
      f"{yb.check_ybe(yb.rack_operator(rotation, F2)).holds}")

"""Gauge an arbitrary complete deformation into quasi-diagonal form.

Over a ring that is complete with respect to its maximal ideal, every
deformation of a rack operator is gauge equivalent to one in which only
behaviourally equivalent basis elements interact.  The engine proceeds one
ideal power at a time: extract the offending order-k coefficients, present
the resulting residue-field cocycle quasi-diagonally via the homotopy
retraction, and conjugate by the lifted correction.

Here we hide a known quasi-diagonal deformation behind a random gauge and
watch the engine recover a quasi-diagonal form and an exact gauge sequence
back to the input.
"""

import numpy as np

import ybrack as yb
from ybrack.cochains import pair_mask

ring = yb.parse_ring("F2[h]/h^4")
rack = yb.catalog.quandle3()
rng = np.random.default_rng(11)

params = yb.random_family_parameters("quandle3-f", ring, rng)
clean = yb.instantiate_family("quandle3-f", ring, params)
print(f"clean family instance over {ring}: braid relation {clean.check().holds}")

pert = ring.zeros(3, 3)
for k in range(1, ring.order):
    pert = ring.mat_add(pert, ring.lift_digit_matrix(rng.integers(0, 2, size=(3, 3)), k))
alpha = yb.GaugeTransform(ring, ring.mat_add(ring.eye(3), pert))
disguised = yb.TruncatedDeformation(
    rack=rack, ring=ring, operator=yb.gauge_conjugate(clean.operator, alpha))

offqd = ~pair_mask(rack, 2, "quasidiagonal")
term = disguised.term_offset()
junk = sum(int(np.count_nonzero(ring.digit_matrix(term, k).T * offqd))
           for k in range(ring.order))
print(f"disguised input: {junk} non-quasi-diagonal term entries, "
      f"braid relation {disguised.check().holds}")

gauges, final = yb.quasidiagonalize(disguised)
term = final.term_offset()
junk = sum(int(np.count_nonzero(ring.digit_matrix(term, k).T * offqd))
           for k in range(ring.order))
print(f"engine output: {junk} non-quasi-diagonal entries after "
      f"{len(gauges.factors)} gauge steps at orders {gauges.orders}")
print(f"braid relation preserved: {final.check().holds}")

back = gauges.unconjugate(final.operator)
print(f"re-conjugating by the emitted sequence reproduces the input: "
      f"{ring.mat_eq(back.matrix, disguised.operator.matrix)}")

"""Yang-Baxter operators as exact matrices on a tensor square.

The matrix convention throughout: column index = input basis tuple, row
index = output basis tuple, both ordered lexicographically over pairs.  For
a rack Q the operator sends (x1, x2) to (x2, x1 * x2), so its matrix is the
permutation matrix with a one in row code(x2, x1 * x2) of column
code(x1, x2).  The braid relation is checked on the three-strand lifts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .racks import RackTable
from .rings import Ring, ring_spec, parse_ring
from . import linalg


class InvalidOperatorError(ValueError):
    pass


@dataclass(frozen=True)
class YBEVerdict:
    """Outcome of a braid-relation check.

    On failure ``witness`` holds the first differing entry (row, col) of the
    two composite matrices together with both entry values; over a truncated
    ring ``failure_order`` is the lowest k such that the relation breaks
    modulo the (k+1)-st ideal power.
    """

    holds: bool
    witness: tuple | None = None
    failure_order: int | None = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class YBOperator:
    ring: Ring
    dim: int                 # rank of V; the matrix acts on V tensor V
    matrix: object           # ring-layout array of logical shape (dim^2, dim^2)
    rack: RackTable | None = None

    def entry(self, out_pair: tuple[int, int], in_pair: tuple[int, int]):
        code_out = out_pair[0] * self.dim + out_pair[1]
        code_in = in_pair[0] * self.dim + in_pair[1]
        return self.ring.mat_entry(self.matrix, code_out, code_in)


def rack_operator(rack: RackTable, ring: Ring) -> YBOperator:
    """The permutation operator (x1, x2) -> (x2, x1 * x2) of a rack."""
    n = rack.size
    grid = np.zeros((n * n, n * n), dtype=np.int64)
    for x1 in range(n):
        for x2 in range(n):
            grid[x2 * n + rack.op(x1, x2), x1 * n + x2] = 1
    return YBOperator(ring=ring, dim=n, matrix=ring.from_int_matrix(grid), rack=rack)


def operator_from_matrix(ring: Ring, dim: int, matrix, rack: RackTable | None = None,
                         check_invertible: bool = True) -> YBOperator:
    """Wrap a matrix as an operator, checking invertibility over the ring.

    Over a truncated ring invertibility is equivalent to invertibility of
    the residue matrix, which is what gets checked.
    """
    rows, cols = ring.shape(matrix)
    if rows != dim * dim or cols != dim * dim:
        raise InvalidOperatorError(f"matrix is {rows}x{cols}, expected {dim * dim} square")
    if check_invertible:
        if ring.is_truncated:
            grid = ring.residue_matrix(matrix)
            field = ring.residue_field()
        else:
            grid = matrix
            field = ring
        m = linalg.ExactMatrix(field, dim * dim, dim * dim, entries=field.mat_copy(grid))
        if linalg.rank(m) != dim * dim:
            raise InvalidOperatorError("matrix is not invertible over its ring")
    return YBOperator(ring=ring, dim=dim, matrix=matrix, rack=rack)


def lift(op: YBOperator, strands: int, position: int):
    """Matrix of id^(i-1) tensor c tensor id^(n-i-1) on the n-strand space."""
    if not 1 <= position <= strands - 1:
        raise ValueError(f"position {position} outside 1..{strands - 1}")
    ring = op.ring
    left = ring.eye(op.dim ** (position - 1))
    right = ring.eye(op.dim ** (strands - position - 1))
    return ring.mat_kron(ring.mat_kron(left, op.matrix), right)


def check_ybe(op: YBOperator) -> YBEVerdict:
    """Check the braid relation c1 c2 c1 = c2 c1 c2 on the tensor cube."""
    ring = op.ring
    c1 = lift(op, 3, 1)
    c2 = lift(op, 3, 2)
    lhs = ring.mat_mul(c1, ring.mat_mul(c2, c1))
    rhs = ring.mat_mul(c2, ring.mat_mul(c1, c2))
    where = ring.first_difference(lhs, rhs)
    if where is None:
        return YBEVerdict(holds=True)
    i, j = where
    witness = (i, j, ring.mat_entry(lhs, i, j), ring.mat_entry(rhs, i, j))
    order = None
    if ring.is_truncated:
        order = ring.min_valuation(ring.mat_sub(lhs, rhs))
    return YBEVerdict(holds=False, witness=witness, failure_order=order)


def ybe_holds_mod(op: YBOperator, k: int) -> bool:
    """Braid relation modulo the k-th ideal power (truncated rings)."""
    verdict = check_ybe(op)
    if verdict.holds:
        return True
    return verdict.failure_order is not None and verdict.failure_order >= k


@dataclass(frozen=True)
class GaugeTransform:
    """An automorphism of V congruent to the identity modulo the ideal."""

    ring: Ring
    matrix: object  # logical shape (dim, dim)

    def __post_init__(self):
        ring = self.ring
        n = ring.shape(self.matrix)[0]
        if ring.is_truncated:
            residue = ring.residue_matrix(self.matrix)
            if np.any((residue - np.eye(n, dtype=np.int64)) % ring.p):
                raise InvalidOperatorError("gauge transform must be the identity mod the ideal")
        else:
            if not ring.mat_eq(self.matrix, ring.eye(n)):
                raise InvalidOperatorError(
                    "over a field the ideal is zero, so the only gauge transform is the identity")


def gauge_conjugate(op: YBOperator, alpha: GaugeTransform) -> YBOperator:
    """(alpha tensor alpha)^-1 . c . (alpha tensor alpha), exactly."""
    ring = op.ring
    a2 = ring.mat_kron(alpha.matrix, alpha.matrix)
    a2_inv = ring.mat_inv(a2)
    conjugated = ring.mat_mul(a2_inv, ring.mat_mul(op.matrix, a2))
    return YBOperator(ring=ring, dim=op.dim, matrix=conjugated, rack=op.rack)


def deform(base: YBOperator, term) -> YBOperator:
    """Compose a rack operator with id + f for a degree-2 deformation term.

    ``term`` is either a Cochain of degree 2 over the same truncated ring or
    a ring-layout matrix; every entry must have positive valuation, so the
    residue of the result is the undeformed operator.
    """
    ring = base.ring
    if not ring.is_truncated:
        raise InvalidOperatorError("deformations live over a truncated ring")
    matrix = term.as_operator_matrix() if hasattr(term, "as_operator_matrix") else term
    if np.any(ring.residue_matrix(matrix)):
        raise InvalidOperatorError("deformation term must take values in the maximal ideal")
    deformed = ring.mat_mul(base.matrix, ring.mat_add(ring.eye(base.dim ** 2), matrix))
    return YBOperator(ring=ring, dim=base.dim, matrix=deformed, rack=base.rack)


def deformation_term(op: YBOperator) -> object:
    """F with c = c_Q . (id + F), for an operator carrying its rack."""
    if op.rack is None:
        raise InvalidOperatorError("operator does not carry a rack")
    ring = op.ring
    base = rack_operator(op.rack, ring)
    # the rack operator is a permutation matrix, so its inverse is exact
    base_inv = ring.mat_inv(base.matrix)
    composite = ring.mat_mul(base_inv, op.matrix)
    return ring.mat_sub(composite, ring.eye(op.dim ** 2))


# -- operator dump format -----------------------------------------------------

def dump_operator(op: YBOperator) -> str:
    mat = linalg.ExactMatrix(op.ring, op.dim ** 2, op.dim ** 2,
                             entries=op.ring.mat_copy(op.matrix))
    return ring_spec(op.ring) + "\n" + linalg.dump_matrix(mat)


def load_operator(text: str, rack: RackTable | None = None) -> YBOperator:
    head, _, rest = text.partition("\n")
    ring = parse_ring(head)
    loaded = linalg.load_matrix(rest, ring=ring)
    dim = int(round(loaded.rows ** 0.5))
    if dim * dim != loaded.rows:
        raise InvalidOperatorError("operator matrix size is not a perfect square")
    matrix = ring.zeros(loaded.rows, loaded.cols)
    for (i, j), v in loaded.nonzero_items():
        ring.mat_set_entry(matrix, i, j, v)
    return operator_from_matrix(ring, dim, matrix, rack=rack)

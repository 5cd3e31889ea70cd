"""The Yang-Baxter chain complex, dual to the cochain complex by tr(fg).

A degree-n chain is an endomorphism coefficient array values[xcode, ycode],
the coefficient of the elementary endomorphism sending the x-tuple to the
y-tuple.  The partial boundary contracts one tensor position; on a basis
element it reads, for position i = 1..n,

   boundary_i |x_1..x_n ; y_1..y_n|
       = [x_i^{x_{i+1}..x_n} == y_i^{y_{i+1}..y_n}] * |..x_{i-1}, x_{i+1}.. ; ..|
       - [x_i == y_i] * |x_1^{x_i}..x_{i-1}^{x_i}, x_{i+1}.. ; ..|

so it is the scatter adjoint of the partial coboundary at position i-1, and
the pairing <f | g> = tr(f g) = sum f[x, y] g[y, x] intertwines the two.
Degree-0 chains are scalars.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .indexing import position_data
from .racks import RackTable
from .rings import Ring
from .cochains import Cochain, _modulus, _reduce


@dataclass(frozen=True)
class Chain:
    rack: RackTable
    degree: int
    ring: Ring
    values: np.ndarray

    def is_zero(self) -> bool:
        return not np.any(self.values)

    def entry(self, xs, ys):
        q = self.rack.size
        xi = yi = 0
        for x, y in zip(xs, ys):
            xi = xi * q + x
            yi = yi * q + y
        return self.values[xi, yi]

    @property
    def scalar(self):
        """Degree-0 chains are scalars; the single stored coefficient."""
        if self.degree != 0:
            raise ValueError("scalar view only exists in degree 0")
        return int(self.values[0, 0])


def zero_chain(rack: RackTable, degree: int, ring: Ring) -> Chain:
    side = rack.size**degree
    return Chain(rack, degree, ring, np.zeros((side, side), dtype=np.int64))


def chain_from_entries(rack: RackTable, degree: int, ring: Ring, entries) -> Chain:
    out = zero_chain(rack, degree, ring)
    q = rack.size
    for (xs, ys), v in entries.items():
        xi = yi = 0
        for x, y in zip(xs, ys):
            xi = xi * q + x
            yi = yi * q + y
        out.values[xi, yi] = v
    return Chain(rack, degree, ring, _reduce(out.values, ring))


def partial_boundary(f: Chain, i: int) -> Chain:
    """Boundary summand contracting tensor position i (1-based)."""
    n = f.degree
    if not 1 <= i <= n:
        raise IndexError(f"partial boundary index {i} outside 1..{n}")
    if n < 1:
        raise ValueError("boundaries start at degree 1")
    data = position_data(f.rack, n, i - 1)
    side_out = f.rack.size ** (n - 1)
    out = np.zeros((side_out, side_out), dtype=np.int64)
    plus = f.values * np.equal.outer(data.act, data.act)
    np.add.at(out, (data.drop[:, None], data.drop[None, :]), plus)
    minus = f.values * np.equal.outer(data.coord, data.coord)
    np.subtract.at(out, (data.conj[:, None], data.conj[None, :]), minus)
    return Chain(f.rack, n - 1, f.ring, _reduce(out, f.ring))


def boundary(f: Chain) -> Chain:
    """Alternating sum with signs (-1)^(i-1) over i = 1..degree."""
    n = f.degree
    total = zero_chain(f.rack, n - 1, f.ring).values
    for i in range(1, n + 1):
        term = partial_boundary(f, i).values
        total += term if (i - 1) % 2 == 0 else -term
    return Chain(f.rack, n - 1, f.ring, _reduce(total, f.ring))


def pairing(f: Chain, g: Cochain):
    """The duality pairing tr(f g), exact in the common coefficient ring."""
    if f.degree != g.degree or f.rack != g.rack:
        raise ValueError("pairing needs matching rack and degree")
    total = int(np.sum(f.values * g._grid().T, dtype=object))
    mod = _modulus(f.ring)
    return total % mod if mod else total


def dump_chain(f: Chain) -> str:
    """Cochain dump format with a leading "chain" tag."""
    from .indexing import decode_tuple
    from .rings import ring_spec
    lines = [f"chain degree {f.degree} ring {ring_spec(f.ring)}"]
    q = f.rack.size
    for xi, yi in zip(*np.nonzero(f.values)):
        coords = decode_tuple(q, int(xi), f.degree) + decode_tuple(q, int(yi), f.degree)
        value = f.ring.scalar_str(f.ring.from_int(int(f.values[xi, yi])))
        lines.append(" ".join(map(str, coords)) + f" {value}")
    return "\n".join(lines) + "\n"

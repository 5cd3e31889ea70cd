"""Standard example racks and the parameterised deformation families.

The racks are produced by the constructions in :mod:`ybrack.racks` (never
typed in as raw tables): the two dihedral quandles come from conjugation in
a symmetric group, the deformable three-element quandle from its defining
translations.  Golden copies of the associated operator matrices live under
``data/golden`` as an independent cross-check.

Each deformation family is a sparse pattern assigning a parameter name to
matrix positions of the 2-tensor space; instantiating it with maximal-ideal
values over a truncated ring gives the deformation term of a candidate
Yang-Baxter operator.
"""

from __future__ import annotations

from .racks import (RackTable, conjugation_rack, cycles_to_permutation,
                    rack_from_translations, trivial_rack)


def dihedral3() -> RackTable:
    """Conjugation on the three transpositions of S3, ordered (12),(13),(23)."""
    gens = [cycles_to_permutation(3, [cycle]) for cycle in ((1, 2), (1, 3), (2, 3))]
    return conjugation_rack(gens)


def dihedral4() -> RackTable:
    """Conjugation on the four reflections of a square inside S4."""
    gens = [
        cycles_to_permutation(4, [(1, 3)]),
        cycles_to_permutation(4, [(2, 4)]),
        cycles_to_permutation(4, [(1, 2), (3, 4)]),
        cycles_to_permutation(4, [(1, 4), (2, 3)]),
    ]
    return conjugation_rack(gens)


def quandle3() -> RackTable:
    """The deformable three-element quandle: c swaps a and b, a and b act trivially."""
    identity = (0, 1, 2)
    swap_ab = (1, 0, 2)
    return rack_from_translations([identity, identity, swap_ab])


def trivial4() -> RackTable:
    return trivial_rack(4)


FIXTURE_RACKS = {
    "trivial4": trivial4,
    "quandle3": quandle3,
    "dihedral3": dihedral3,
    "dihedral4": dihedral4,
}


# -- deformation family patterns ------------------------------------------------
#
# positions are (row, col) in the 2-tensor basis, row = output pair code,
# col = input pair code, matching the operator matrix convention.

QUANDLE3_F = {
    (0, 0): "l1", (0, 1): "l2", (0, 3): "l3", (0, 4): "l4",
    (1, 0): "l2", (1, 1): "l1", (1, 3): "l4", (1, 4): "l3",
    (2, 2): "l5", (2, 5): "l6",
    (3, 0): "l3", (3, 1): "l4", (3, 3): "l1", (3, 4): "l2",
    (4, 0): "l4", (4, 1): "l3", (4, 3): "l2", (4, 4): "l1",
    (5, 2): "l6", (5, 5): "l5",
    (6, 6): "l7", (6, 7): "l8",
    (7, 6): "l8", (7, 7): "l7",
    (8, 8): "l9",
}

DIHEDRAL4_F = {
    (0, 0): "l1", (0, 1): "l2", (0, 4): "l3", (0, 5): "l4",
    (1, 0): "l2", (1, 1): "l1", (1, 4): "l4", (1, 5): "l3",
    (2, 2): "l5p", (2, 3): "l6", (2, 6): "l7p", (2, 7): "l8",
    (3, 2): "l6", (3, 3): "l5p", (3, 6): "l8", (3, 7): "l7p",
    (4, 0): "l3", (4, 1): "l4", (4, 4): "l1", (4, 5): "l2",
    (5, 0): "l4", (5, 1): "l3", (5, 4): "l2", (5, 5): "l1",
    (6, 2): "l7pp", (6, 3): "l8", (6, 6): "l5pp", (6, 7): "l6",
    (7, 2): "l8", (7, 3): "l7pp", (7, 6): "l6", (7, 7): "l5pp",
    (8, 8): "l9p", (8, 9): "l10", (8, 12): "l11p", (8, 13): "l12",
    (9, 8): "l10", (9, 9): "l9p", (9, 12): "l12", (9, 13): "l11p",
    (10, 10): "l13", (10, 11): "l14", (10, 14): "l15", (10, 15): "l16",
    (11, 10): "l14", (11, 11): "l13", (11, 14): "l16", (11, 15): "l15",
    (12, 8): "l11pp", (12, 9): "l12", (12, 12): "l9pp", (12, 13): "l10",
    (13, 8): "l12", (13, 9): "l11pp", (13, 12): "l10", (13, 13): "l9pp",
    (14, 10): "l15", (14, 11): "l16", (14, 14): "l13", (14, 15): "l14",
    (15, 10): "l16", (15, 11): "l15", (15, 14): "l14", (15, 15): "l13",
}

DIHEDRAL4_G = {
    (0, 0): "ap", (0, 4): "bp",
    (1, 1): "app", (1, 5): "bpp",
    (2, 2): "ap", (2, 6): "bp",
    (3, 3): "app", (3, 7): "bpp",
    (4, 0): "bpp", (4, 4): "app",
    (5, 1): "bp", (5, 5): "ap",
    (6, 2): "bpp", (6, 6): "app",
    (7, 3): "bp", (7, 7): "ap",
    (8, 8): "gp", (8, 12): "dp",
    (9, 9): "gpp", (9, 13): "dpp",
    (10, 10): "gp", (10, 14): "dp",
    (11, 11): "gpp", (11, 15): "dpp",
    (12, 8): "dpp", (12, 12): "gpp",
    (13, 9): "dp", (13, 13): "gp",
    (14, 10): "dpp", (14, 14): "gpp",
    (15, 11): "dp", (15, 15): "gp",
}


def family_parameters(pattern) -> list[str]:
    names = []
    for name in pattern.values():
        if name not in names:
            names.append(name)
    return sorted(names, key=lambda s: (len(s), s))


FAMILIES = {
    "quandle3-f": (quandle3, QUANDLE3_F),
    "dihedral4-f": (dihedral4, DIHEDRAL4_F),
    "dihedral4-g": (dihedral4, DIHEDRAL4_G),
}

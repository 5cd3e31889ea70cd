"""Acceptance suite.

One test per criterion; each prints a single PASS line (run with ``-s`` to
see them) and asserts its stated wall-clock budget.  All arithmetic is
exact, so every comparison is equality, no tolerances anywhere.
"""

import time

import numpy as np

import ybrack as yb
from ybrack.cochains import sub as csub
from ybrack.indexing import class_coordinates

from conftest import random_chain, random_cochain
from test_deformations import (asymmetric_f_params, asymmetric_g_params,
                               offdiagonal_entry_count, random_gauge)

F2, F3, F5 = yb.PrimeField(2), yb.PrimeField(3), yb.PrimeField(5)
QQ = yb.Rationals()

RACKS = {
    "trivial4": yb.catalog.trivial4(),
    "quandle3": yb.catalog.quandle3(),
    "dihedral3": yb.catalog.dihedral3(),
    "dihedral4": yb.catalog.dihedral4(),
}

GOLDEN = {
    "dihedral3": {0: 0, 1: 6, 2: 3, 3: 7, 4: 4, 5: 1, 6: 5, 7: 2, 8: 8},
    "dihedral4": {0: 0, 1: 4, 2: 12, 3: 8, 4: 1, 5: 5, 6: 13, 7: 9,
                  8: 6, 9: 2, 10: 10, 11: 14, 12: 7, 13: 3, 14: 11, 15: 15},
}


def _report(number, description, elapsed, budget):
    print(f"PASS criterion {number}: {description} "
          f"({elapsed:.2f}s < {budget:.0f}s)")
    assert elapsed < budget, f"criterion {number} exceeded its {budget}s budget"


def test_criterion_01_operator_golden_match():
    started = time.perf_counter()
    for name, golden in GOLDEN.items():
        rack = RACKS[name]
        op = yb.rack_operator(rack, F2)
        n2 = rack.size ** 2
        want = np.zeros((n2, n2), dtype=np.int64)
        for row, col in golden.items():
            want[row, col] = 1
        assert np.array_equal(op.matrix, want), f"{name} operator mismatch"
    _report(1, "printed 9x9 and 16x16 operator matrices match entry for entry",
            time.perf_counter() - started, 1.0)


def test_criterion_02_quandle3_dimension():
    started = time.perf_counter()
    assert yb.cohomology_dim(RACKS["quandle3"], F2, 2) == 9
    _report(2, "dim H2_YB(quandle3; F2) = 9", time.perf_counter() - started, 10.0)


def test_criterion_03_dihedral4_dimensions():
    budgets = []
    for ring, want in ((F2, 20), (F3, 16), (F5, 16)):
        started = time.perf_counter()
        assert yb.cohomology_dim(RACKS["dihedral4"], ring, 2) == want
        budgets.append(time.perf_counter() - started)
        assert budgets[-1] < 60.0
    _report(3, "dim H2_YB(dihedral4) = 20 over F2 and 16 over F3, F5",
            max(budgets), 60.0)


def test_criterion_04_dihedral3_rigidity():
    started = time.perf_counter()
    for ring in (F2, F3, F5):
        assert yb.cohomology_dim(RACKS["dihedral3"], ring, 2) == 1
        assert yb.rack_cohomology_dim(RACKS["dihedral3"], ring, 2) == 1
        assert yb.rigidity_check(RACKS["dihedral3"], ring).rigid
    _report(4, "dihedral3 rigid: dim H2_YB = dim H2_R = 1 over F2, F3, F5",
            time.perf_counter() - started, 10.0)


def test_criterion_05_quasidiagonal_isomorphism():
    started = time.perf_counter()
    for name, rack in RACKS.items():
        for ring in (F2, F3, F5):
            full = yb.cohomology_dim(rack, ring, 2)
            quasi = yb.cohomology_dim(rack, ring, 2, subcomplex="quasidiagonal")
            assert full == quasi, (name, ring.p, full, quasi)
    _report(5, "dim H2 of the quasi-diagonal subcomplex equals the full dimension "
               "on all four racks over F2, F3, F5",
            time.perf_counter() - started, 120.0)


def test_criterion_06_deformation_families():
    started = time.perf_counter()
    rng = np.random.default_rng(2024)

    ring = yb.parse_ring("F5[h]/h^4")
    for _ in range(100):
        params = yb.random_family_parameters("quandle3-f", ring, rng)
        assert yb.check_family_claims("quandle3-f", ring, params).exact

    for spec in ("F2[h]/h^3", "F3[h]/h^4"):
        ring = yb.parse_ring(spec)
        for _ in range(15):
            params = yb.random_family_parameters("dihedral4-f", ring, rng,
                                                 symmetric=True)
            report = yb.check_family_claims("dihedral4-f", ring, params)
            assert report.symmetric and report.exact
        for _ in range(15):
            params = asymmetric_f_params(ring, rng)
            report = yb.check_family_claims("dihedral4-f", ring, params)
            assert not report.symmetric
            assert report.verdict_by_order[2] and not report.exact

    ring = yb.parse_ring("F2[h]/h^3")
    for _ in range(15):
        params = yb.random_family_parameters("dihedral4-g", ring, rng,
                                             symmetric=True)
        report = yb.check_family_claims("dihedral4-g", ring, params)
        assert report.verdict_by_order[2] and report.verdict_by_order[3]
    for _ in range(15):
        params = asymmetric_g_params(ring, rng)
        report = yb.check_family_claims("dihedral4-g", ring, params)
        assert report.verdict_by_order[2] and not report.verdict_by_order[3]

    _report(6, "quandle3-f exact on 100 draws; dihedral4-f and dihedral4-g "
               "match their order conditions in both directions",
            time.perf_counter() - started, 60.0)


def test_criterion_07_homotopy_identity_suite():
    started = time.perf_counter()
    combos = [(1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)]
    per_combo = 17  # about one hundred cochains per (rack, field) cell
    failures = 0
    for rack in RACKS.values():
        for ring in (F2, F3, F5):
            rng = np.random.default_rng(7000 + 31 * rack.size + ring.p)
            for n, m in combos:
                k = n - m
                stripe = None
                sides = class_coordinates(rack, n)
                stripe = ~np.equal.outer(sides[k - 1], sides[k - 1])
                for _ in range(per_combo):
                    f = random_cochain(rack, n, ring, rng, level=m)
                    df = yb.coboundary(f)
                    s_f = yb.insertion_homotopy(f, m)
                    t = yb.homotopy_defect(f, m)
                    # (a) defect equals d(s f) - s(d f), recomputed from parts
                    recomputed = csub(yb.coboundary(s_f),
                                      yb.insertion_homotopy(df, m))
                    failures += not np.array_equal(t.values, recomputed.values)
                    # (b) the defect scales by (-1)^k on the tested stripe
                    want = (-1) ** k * f.values % ring.p
                    failures += not np.array_equal(t.values[stripe], want[stripe])
                    # (c) the defect kills the next level
                    deeper = random_cochain(rack, n, ring, rng,
                                            level=min(m + 1, n))
                    failures += not yb.homotopy_defect(deeper, m).is_zero()
                    # (d) the projection advances the level
                    p_f = yb.level_projection(f, m)
                    failures += not yb.filtration_level(p_f) >= m + 1
                    # (e) and fixes the next level pointwise
                    failures += not np.array_equal(
                        yb.level_projection(deeper, m).values, deeper.values)
                    # (f) and is a cochain map
                    failures += not np.array_equal(
                        yb.coboundary(p_f).values,
                        yb.level_projection(df, m).values)
    assert failures == 0
    _report(7, "homotopy identities (a)-(f), four racks x three fields, "
               "degrees <= 3, zero failures",
            time.perf_counter() - started, 300.0)


def test_criterion_08_complex_axioms():
    started = time.perf_counter()
    failures = 0
    for rack in RACKS.values():
        for ring in (F2, F3, F5, QQ):
            rng = np.random.default_rng(8000 + 31 * rack.size
                                        + (ring.p if hasattr(ring, "p") else 0))
            for n in (1, 2, 3):
                for trial in range(34):  # about one hundred per (rack, field)
                    f = random_cochain(rack, n, ring, rng)
                    df = yb.coboundary(f)
                    failures += not yb.coboundary(df).is_zero()
                    if n == 3 and trial >= 10:
                        continue  # degree-3 commutation on a ten-draw share
                    lower = {i: yb.partial_coboundary(f, i) for i in range(n + 1)}
                    for j in range(n + 1):
                        for i in range(j + 1):
                            lhs = yb.partial_coboundary(lower[j], i)
                            rhs = yb.partial_coboundary(lower[i], j + 1)
                            failures += not np.array_equal(lhs.values, rhs.values)
            for n in (2, 3):
                for _ in range(34):
                    chain = random_chain(rack, n, ring, rng)
                    failures += not yb.boundary(yb.boundary(chain)).is_zero()
                    g = random_cochain(rack, n - 1, ring, rng)
                    failures += yb.pairing(yb.boundary(chain), g) != \
                        yb.pairing(chain, yb.coboundary(g))
    assert failures == 0
    _report(8, "d.d = 0, partial commutation, boundary.boundary = 0, and the "
               "trace-pairing adjunction, zero failures",
            time.perf_counter() - started, 600.0)


def test_criterion_09_quasidiagonalization_round_trip():
    started = time.perf_counter()
    plans = [("F2[h]/h^4", "quandle3-f", 40), ("F2[h]/h^4", "dihedral4-f", 10),
             ("F3[h]/h^3", "quandle3-f", 40), ("F3[h]/h^3", "dihedral4-f", 10),
             ("Z/2^2", "quandle3-f", 40), ("Z/2^2", "dihedral4-f", 10),
             ("Z/3^2", "quandle3-f", 40), ("Z/3^2", "dihedral4-f", 10)]
    rng = np.random.default_rng(9000)
    for spec, family, count in plans:
        ring = yb.parse_ring(spec)
        for _ in range(count):
            params = yb.random_family_parameters(family, ring, rng, symmetric=True)
            clean = yb.instantiate_family(family, ring, params)
            alpha = random_gauge(ring, clean.rack.size, rng)
            disguised = yb.TruncatedDeformation(
                rack=clean.rack, ring=ring,
                operator=yb.gauge_conjugate(clean.operator, alpha))
            gauges, final = yb.quasidiagonalize(disguised)
            assert offdiagonal_entry_count(final) == 0
            assert final.check().holds
            back = gauges.unconjugate(final.operator)
            assert ring.mat_eq(back.matrix, disguised.operator.matrix)
    _report(9, "50 oracle round trips per ring family: quasi-diagonal output, "
               "braid relation preserved, gauge sequence inverts exactly",
            time.perf_counter() - started, 300.0)


def test_criterion_10_non_functoriality_witnesses():
    started = time.perf_counter()
    # orbit-quotient instance: the pullback of any nonzero constant cochain
    # on the one-point quotient of dihedral3 has nonzero coboundary
    rack = RACKS["dihedral3"]
    quotient, projection = yb.orbit_quotient(rack)
    f = yb.cochain_from_entries(quotient, 1, QQ, {((0,), (0,)): 1})
    pulled_df = yb.pullback(projection, yb.coboundary(f), rack)
    d_pulled = yb.coboundary(yb.pullback(projection, f, rack))
    defect = csub(d_pulled, pulled_df)
    assert not defect.is_zero()
    assert int(defect.entry((0, 1), (0, 2))) == -1

    # trivial-extension instance with behaviourally equivalent y and z
    base = RACKS["dihedral3"]
    ext, proj = yb.trivial_extension(base, 2)
    moved = base.op(0, 1)
    g = yb.cochain_from_entries(base, 1, QQ, {((moved,), (moved,)): 1})
    defect = csub(yb.coboundary(yb.pullback(proj, g, ext)),
                  yb.pullback(proj, yb.coboundary(g), ext))
    assert not defect.is_zero()
    assert int(defect.entry((0, 2), (0, 3))) == -1
    _report(10, "both non-functoriality constructions produce nonzero "
                "naturality defects", time.perf_counter() - started, 10.0)

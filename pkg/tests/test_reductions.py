"""Reduction census, Whitney arithmetic, strata and the tau=0 verdict."""

import math
from fractions import Fraction

import numpy as np
import pytest

from monopoles import (
    BundleData,
    CohClass2,
    CurvatureBounds,
    FourManifold,
    InconsistentCandidateError,
    SpincStructure,
    chern_weil_c2_window,
    component_dims,
    enumerate_reductions,
    generic_tau0_vanishing,
    tau_parameter,
    uhlenbeck_strata,
    whitney_complement,
)
from monopoles.reductions import identity_metric, lattice_points_in_ball

from conftest import (
    brute_force_ball,
    hyperbolic,
    k3_like,
    make_rng,
    random_unimodular,
    s4_like,
)


class TestWhitneyComplement:
    def test_rank1_complement_with_forced_c2_rejected(self):
        m = s4_like()
        e = BundleData(2, [], 1)
        f = BundleData(1, [], 0)
        with pytest.raises(InconsistentCandidateError, match="no such line bundle"):
            whitney_complement(e, f, m)

    def test_improper_subbundle_rejected(self):
        m = hyperbolic()
        e = BundleData(2, [0, 0], 1)
        with pytest.raises(ValueError, match="rank"):
            whitney_complement(e, e, m)

    def test_rank3_hand_arithmetic(self):
        m = FourManifold("diag", 0, [[1, 0], [0, -1]])
        e = BundleData(3, [0, 0], 2)
        f = BundleData(1, [1, 0], 0)
        perp = whitney_complement(e, f, m)
        assert perp.rank == 2
        assert perp.c1.coeffs == (-1, 0)
        assert perp.c2 == 2 - 0 - (1 * (-1))  # pairing <c1F, c1Fperp> = -1

    def test_whitney_identities_hold(self, rng):
        m = hyperbolic()
        for k in (0, 1, 3):
            e = BundleData(4, [1, -1], 5)
            f = BundleData(2, [2, 1], int(rng.integers(-3, 4)))
            perp = whitney_complement(e, f, m, k)
            assert (f.c1 + perp.c1).coeffs == e.c1.coeffs
            from monopoles import cup

            total = f.c2 + perp.c2 + cup(f.c1, perp.c1, m)
            assert total == e.c2 - k


class TestTauParameter:
    @pytest.mark.parametrize(
        "n,N,expected",
        [(1, 2, Fraction(1, 2)), (1, 3, Fraction(2, 3)), (4, 5, Fraction(1, 5))],
    )
    def test_values(self, n, N, expected):
        assert tau_parameter(n, N) == expected

    def test_range_enforced(self):
        with pytest.raises(ValueError):
            tau_parameter(2, 2)
        with pytest.raises(ValueError):
            tau_parameter(0, 2)

    def test_always_strictly_interior(self):
        for big_n in range(2, 8):
            for n in range(1, big_n):
                t = tau_parameter(n, big_n)
                assert 0 < t < 1


class TestComponentDims:
    def test_rank1_complement_contributes_zero(self):
        m = k3_like()
        s = SpincStructure(m.zero_class())
        e = BundleData(2, m.zero_class(), 0)
        f = BundleData(1, m.zero_class(), 0)
        dim_un, dim_asd, total = component_dims(e, s, m, f)
        assert dim_asd == 0
        assert total == dim_un

    def test_k3_line_subbundle(self):
        m = k3_like()
        s = SpincStructure(m.zero_class())
        e = BundleData(2, m.zero_class(), 1)
        c1L = [0, 0, 0, 1, 1] + [0] * 17  # <c1L^2> = -2
        f = BundleData(1, c1L, 0)
        dim_un, dim_asd, _ = component_dims(e, s, m, f)
        assert (dim_un, dim_asd) == (-2, 0)

    def test_s4_rank3(self):
        m = s4_like()
        s = SpincStructure([])
        e = BundleData(3, [], 0)
        f = BundleData(1, [], 0)
        dim_un, dim_asd, total = component_dims(e, s, m, f)
        assert (dim_un, dim_asd, total) == (-1, -3, -4)


class TestChernWeilWindow:
    def test_zero_bounds_force_half_square(self):
        m = FourManifold("diag", 0, [[1, 0], [0, 1]])
        bounds = CurvatureBounds(1.0, 0.0, 0.0, identity_metric(2))
        w = chern_weil_c2_window(CohClass2([1, 1]), m, bounds)  # <c1^2> = 2
        assert list(w) == [1]

    def test_odd_square_gives_empty_window(self):
        m = FourManifold("diag", 0, [[1, 0], [0, 1]])
        bounds = CurvatureBounds(1.0, 0.0, 0.0, identity_metric(2))
        w = chern_weil_c2_window(CohClass2([1, 0]), m, bounds)  # <c1^2> = 1
        assert list(w) == []

    def test_asd_energy_widens_downward_bound(self):
        m = hyperbolic()
        c_minus = 2 * math.pi * math.sqrt(2.0)  # c_minus^2 / (8 pi^2) = 1
        bounds = CurvatureBounds(1.0, 0.0, c_minus, identity_metric(2))
        w = chern_weil_c2_window(CohClass2([0, 0]), m, bounds)
        assert list(w) == [0, 1]


class TestLatticeEnumeration:
    def test_matches_brute_force_on_random_instances(self):
        rng = make_rng(77)
        for _ in range(25):
            b2 = int(rng.integers(1, 5))
            a = rng.integers(-2, 3, size=(b2, b2))
            g = a.T @ a + np.eye(b2, dtype=int) * int(rng.integers(1, 4))
            metric = tuple(tuple(Fraction(int(x)) for x in row) for row in g)
            radius_sq = Fraction(int(rng.integers(0, 26)))
            fast = lattice_points_in_ball(metric, radius_sq)
            assert len(fast) <= 10_000
            assert fast == brute_force_ball(metric, radius_sq)

    def test_zero_radius_is_origin_only(self):
        assert lattice_points_in_ball(identity_metric(3), 0) == [(0, 0, 0)]

    def test_rational_metric_denominators_cleared_exactly(self):
        g = (
            (Fraction(1), Fraction(1, 2)),
            (Fraction(1, 2), Fraction(2, 3)),
        )
        got = lattice_points_in_ball(g, Fraction(5, 2))
        assert got == brute_force_ball(g, Fraction(5, 2))
        # boundary point: v = (1, -1) has v^T G v = 1 - 1 + 2/3 = 2/3 <= 5/2
        assert (1, -1) in got

    def test_rejects_indefinite_metric(self):
        with pytest.raises(ValueError, match="positive definite"):
            lattice_points_in_ball(((Fraction(1), Fraction(0)), (Fraction(0), Fraction(-1))), 4)


def _basic_census():
    m = hyperbolic()
    s = SpincStructure(m.zero_class())
    e = BundleData(2, m.zero_class(), 0)
    bounds = CurvatureBounds(2 * math.pi, 0.0, 0.0, identity_metric(2))
    return m, s, e, bounds


class TestEnumerateReductions:
    def test_unit_ball_census(self):
        m, s, e, bounds = _basic_census()
        rep = enumerate_reductions(m, e, s, bounds)
        c1s = [c.F.c1.coeffs for c in rep.candidates]
        assert c1s == sorted(c1s)
        assert set(c1s) == {(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)}
        assert len(rep.candidates) == 5
        assert all(c.tau == Fraction(1, 2) for c in rep.candidates)
        assert all(c.Fperp.rank == 1 and c.dim_asd_part == 0 for c in rep.candidates)

    def test_zero_trace_bound_keeps_origin_only(self):
        m, s, e, _ = _basic_census()
        bounds = CurvatureBounds(0.0, 0.0, 0.0, identity_metric(2))
        rep = enumerate_reductions(m, e, s, bounds)
        assert [c.F.c1.coeffs for c in rep.candidates] == [(0, 0)]

    def test_rank2_bundle_gives_rank1_subbundles_only(self):
        m, s, e, bounds = _basic_census()
        rep = enumerate_reductions(m, e, s, bounds, k_max=2)
        assert all(c.F.rank == 1 for c in rep.candidates)

    def test_census_against_brute_force(self):
        """Independent re-enumeration: ball oracle + window + Whitney filter."""
        from conftest import characteristic_class, unimodular_manifold

        rng = make_rng(123)
        for _ in range(10):
            m = unimodular_manifold(rng, b2_max=4)
            b2 = m.b2
            s = SpincStructure(characteristic_class(m, rng))
            big_n = int(rng.integers(2, 4))
            e = BundleData(
                big_n,
                CohClass2(rng.integers(-1, 2, size=b2).tolist()),
                int(rng.integers(-2, 3)),
            )
            gmat = rng.integers(-1, 2, size=(b2, b2))
            g = tuple(
                tuple(Fraction(int(x)) for x in row)
                for row in (gmat.T @ gmat + 2 * np.eye(b2, dtype=int))
            )
            bounds = CurvatureBounds(
                float(rng.uniform(0, 4 * math.pi)),
                float(rng.uniform(0, 6)),
                float(rng.uniform(0, 12)),
                g,
            )
            rep = enumerate_reductions(m, e, s, bounds, k_max=1)
            # oracle: rebuild the census from scratch
            r = Fraction(bounds.c_trace / (2 * math.pi))
            expected = []
            for n in range(1, big_n):
                for k in (0, 1):
                    for v in brute_force_ball(g, r * r):
                        for c2f in chern_weil_c2_window(CohClass2(v), m, bounds):
                            if n == 1 and c2f != 0:
                                continue
                            f = BundleData(n, CohClass2(v), c2f)
                            try:
                                whitney_complement(e, f, m, k)
                            except InconsistentCandidateError:
                                continue
                            expected.append((n, k, tuple(v), c2f))
            got = [
                (c.F.rank, c.stratum_k, c.F.c1.coeffs, c.F.c2) for c in rep.candidates
            ]
            assert got == sorted(expected)

    def test_unimodular_basis_change_permutes_census(self, rng):
        m, s, e, bounds = _basic_census()
        rep = enumerate_reductions(m, e, s, bounds)
        p = random_unimodular(rng, 2)
        p_inv = np.round(np.linalg.inv(p)).astype(int)
        q2 = (p.T @ np.array(m.intersection_form) @ p).tolist()
        g2 = tuple(
            tuple(Fraction(int(x)) for x in row)
            for row in (p.T @ np.array([[1, 0], [0, 1]]) @ p)
        )
        m2 = FourManifold(m.name, 0, q2)
        bounds2 = CurvatureBounds(bounds.c_trace, 0.0, 0.0, g2)
        rep2 = enumerate_reductions(m2, e, s, bounds2)
        mapped = sorted(
            tuple((p_inv @ np.array(c.F.c1.coeffs)).tolist()) for c in rep.candidates
        )
        got = sorted(tuple(c.F.c1.coeffs) for c in rep2.candidates)
        assert got == mapped

    def test_nonzero_b1_warns_in_report(self):
        q = [[0, 1], [1, 0]]
        m = FourManifold("b1", 2, q)
        s = SpincStructure([0, 0])
        e = BundleData(2, [0, 0], 0)
        bounds = CurvatureBounds(1.0, 0.0, 0.0, identity_metric(2))
        rep = enumerate_reductions(m, e, s, bounds)
        assert any("b1" in w for w in rep.warnings)


class TestUhlenbeckStrata:
    def test_top_stratum_is_input_bundle(self):
        m = k3_like()
        s = SpincStructure(m.zero_class())
        e = BundleData(2, m.zero_class(), 3)
        rows = uhlenbeck_strata(e, m, s, 4)
        assert rows[0].bundle == e

    def test_c2_strictly_decreasing(self):
        m = k3_like()
        s = SpincStructure(m.zero_class())
        rows = uhlenbeck_strata(BundleData(3, m.zero_class(), 2), m, s, 5)
        c2s = [r.bundle.c2 for r in rows]
        assert c2s == [2 - k for k in range(6)]
        assert all(r.bundle.c1 == rows[0].bundle.c1 for r in rows)

    @pytest.mark.parametrize("big_n", [2, 3, 4])
    def test_index_part_drops(self, big_n):
        """Instanton part drops by 4Nk; the Dirac index gains k per stratum,
        so the full multiplicity-2 dimension drops by (4N - 2)k."""
        m = k3_like()
        s = SpincStructure(m.zero_class())
        rows = uhlenbeck_strata(BundleData(big_n, m.zero_class(), 5), m, s, 5)
        for k, row in enumerate(rows):
            assert rows[0].instanton_part - row.instanton_part == 4 * big_n * k
            assert row.dirac_index - rows[0].dirac_index == k
            assert rows[0].expected_dim - row.expected_dim == (4 * big_n - 2) * k


class TestTau0Verdict:
    def test_positive_b2plus(self):
        v = generic_tau0_vanishing(k3_like())
        assert v.vanishes_generically is True
        assert v.cokernel_dimension == 3

    def test_zero_b2plus(self):
        m = FourManifold("neg", 0, [[-1]])
        v = generic_tau0_vanishing(m)
        assert v.vanishes_generically is False
        assert v.cokernel_dimension == 0

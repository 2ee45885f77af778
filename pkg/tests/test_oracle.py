import math

import pytest
from scipy.integrate import dblquad

from hartogs_bergman import (
    DomainSpec,
    Point2C,
    bergman_fat,
    bergman_thin,
)
from hartogs_bergman.domain import sample_uniform_arrays
from hartogs_bergman.oracle import (
    Monomial,
    NonconvergentTruncation,
    b_min,
    basis_norms,
    inner_product_mc,
    is_admissible,
    kernel_series,
    monomial_norm_sq,
    parse_function,
    reproducing_check,
)

PI_SQ = math.pi**2


def quadrature_norm_sq(spec, a, b):
    """Independent oracle: 2D quadrature of |z1^a z2^b|^2 in the moduli."""
    g = float(spec.gamma)
    val, _ = dblquad(
        lambda r1, r2: 4.0 * PI_SQ * r1 ** (2 * a + 1) * r2 ** (2 * b + 1),
        0.0,
        1.0,
        lambda r2: 0.0,
        lambda r2: r2 ** (1.0 / g),
    )
    return val


class TestAdmissibility:
    def test_classical_examples(self):
        spec = DomainSpec.classical()
        assert is_admissible(spec, 0, -1)  # 2(-1) + 2 + 2 = 2 > 0
        assert not is_admissible(spec, 0, -2)  # exactly 0: excluded by strictness
        assert not is_admissible(spec, -1, 0)

    def test_b_min_exact(self):
        assert b_min(DomainSpec.classical(), 0) == -1
        assert b_min(DomainSpec.thin(2), 0) == -2
        assert b_min(DomainSpec.thin(2), 3) == -8  # must exceed -1 - 4*2 = -9
        assert b_min(DomainSpec.fat(2), 0) == -1
        assert b_min(DomainSpec.fat(3), 4) == -2  # bound -1 - 5/3

    def test_enumeration_matches_b_min(self):
        spec = DomainSpec.fat(2)
        idx = basis_norms(spec, 3, 2)
        for a in range(4):
            smallest = min(m.b for m in idx if m.a == a)
            assert smallest == b_min(spec, a)
            assert not is_admissible(spec, a, smallest - 1)


class TestNormFormula:
    def test_frozen_examples(self):
        assert monomial_norm_sq(DomainSpec.classical(), 0, 0) == pytest.approx(PI_SQ / 2)
        assert monomial_norm_sq(DomainSpec.classical(), 0, -1) == pytest.approx(PI_SQ)
        assert monomial_norm_sq(DomainSpec.fat(2), 0, 0) == pytest.approx(2.0 * PI_SQ / 3.0)

    @pytest.mark.parametrize(
        "spec,a,b",
        [
            (DomainSpec.classical(), 0, 0),
            (DomainSpec.classical(), 0, -1),
            (DomainSpec.classical(), 2, 1),
            (DomainSpec.fat(2), 0, 0),
            (DomainSpec.fat(2), 1, -1),
            (DomainSpec.fat(3), 2, 0),
            (DomainSpec.thin(2), 0, -2),
            (DomainSpec.thin(3), 1, 2),
        ],
    )
    def test_against_quadrature(self, spec, a, b):
        assert monomial_norm_sq(spec, a, b) == pytest.approx(
            quadrature_norm_sq(spec, a, b), rel=1e-8
        )

    def test_rejects_inadmissible(self):
        with pytest.raises(ValueError):
            monomial_norm_sq(DomainSpec.classical(), 0, -2)


class TestSeries:
    def test_classical_axis_value(self):
        z = Point2C(0.0, 1.0 / math.sqrt(2.0))
        value, trunc = kernel_series(DomainSpec.classical(), z, z, a_max=200, b_max=200, tol=None)
        assert value.real == pytest.approx(8.0 / PI_SQ, abs=1e-6)
        assert trunc.terms_used > 0

    def test_fat2_matches_closed_form_tightly(self):
        spec = DomainSpec.fat(2)
        z1, z2 = sample_uniform_arrays(spec, 40, seed=17)
        checked = 0
        for i in range(20):
            z = Point2C(z1[i], z2[i])
            w = Point2C(z1[20 + i], z2[20 + i])
            s = abs(z.z1 * w.z1)
            t = abs(z.z2 * w.z2)
            if s > 0.4 or t > 0.4:
                continue
            closed = bergman_fat(2, z, w).value
            series, _ = kernel_series(spec, z, w, tol=1e-12)
            assert abs(series - closed) / abs(closed) <= 1e-8
            checked += 1
        assert checked >= 3

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_thin_matches_closed_form(self, k):
        # |z2| concentrates near 1 on the thin triangles (marginal density
        # ~ r2^(2k+1)), so the moduli cap stays loose to keep enough pairs.
        spec = DomainSpec.thin(k)
        z1, z2 = sample_uniform_arrays(spec, 600, seed=70 + k)
        checked = 0
        for i in range(300):
            z = Point2C(z1[i], z2[i])
            w = Point2C(z1[300 + i], z2[300 + i])
            if abs(z.z2 * w.z2) > 0.8 or checked == 60:
                continue
            closed = bergman_thin(k, z, w).value
            try:
                series, _ = kernel_series(spec, z, w, tol=1e-9)
            except NonconvergentTruncation:
                continue  # boundary-adjacent pair, certified unaffordable
            assert abs(series - closed) / abs(closed) <= 1e-6
            checked += 1
        assert checked >= 50

    def test_resolves_thin_denominator(self):
        # The series is the authority: it matches the (1-t)^2 variant only.
        spec = DomainSpec.thin(2)
        z, w = Point2C(0.05, 0.6), Point2C(0.1, 0.55)
        series, _ = kernel_series(spec, z, w, tol=1e-10)
        good = bergman_thin(2, z, w, variant="1-t").value
        bad = bergman_thin(2, z, w, variant="1-s").value
        assert abs(series - good) / abs(good) <= 1e-8
        assert abs(series - bad) / abs(bad) > 1e-2

    def test_conjugate_symmetry_exact(self):
        spec = DomainSpec.fat(3)
        z = Point2C(0.2 + 0.1j, 0.6 - 0.05j)
        w = Point2C(0.1 - 0.2j, 0.5 + 0.1j)
        a, _ = kernel_series(spec, z, w, a_max=64, b_max=64, tol=None)
        b, _ = kernel_series(spec, w, z, a_max=64, b_max=64, tol=None)
        assert a == b.conjugate()

    def test_diagonal_partial_sums_monotone(self):
        spec = DomainSpec.thin(2)
        z = Point2C(0.1, 0.6)
        values = [
            kernel_series(spec, z, z, a_max=n, b_max=n, tol=None)[0].real
            for n in (8, 16, 32, 64)
        ]
        assert all(b >= a for a, b in zip(values, values[1:]))

    def test_tail_bound_is_sound(self):
        spec = DomainSpec.fat(2)
        z1, z2 = sample_uniform_arrays(spec, 20, seed=19)
        for i in range(10):
            z = Point2C(z1[i], z2[i])
            w = Point2C(z1[10 + i], z2[10 + i])
            small, trunc = kernel_series(spec, z, w, a_max=24, b_max=24, tol=None)
            big, _ = kernel_series(spec, z, w, a_max=512, b_max=512, tol=None)
            assert abs(big - small) <= trunc.tail_estimate * (1.0 + 1e-9)

    def test_nonconvergent_truncation_raises(self):
        spec = DomainSpec.fat(2)
        z = Point2C(0.3, 0.8)
        with pytest.raises(NonconvergentTruncation):
            kernel_series(spec, z, z, a_max=4, b_max=4, tol=1e-10)

    def test_rejects_half_specified_rectangle(self):
        with pytest.raises(ValueError):
            kernel_series(DomainSpec.fat(2), Point2C(0.1, 0.5), Point2C(0.1, 0.5), a_max=10)


class TestFunctionParsing:
    def test_named_and_monomial_forms(self):
        assert parse_function("one") == Monomial(0, 0)
        assert parse_function("z1") == Monomial(1, 0)
        assert parse_function("z2") == Monomial(0, 1)
        assert parse_function("z2inv") == Monomial(0, -1)
        assert parse_function("z1^2*z2^-3") == Monomial(2, -3)

    def test_rejects_bad_forms(self):
        for bad in ("z3", "z1^a*z2^1", "z1^-1*z2^0", "z1*z2"):
            with pytest.raises(ValueError):
                parse_function(bad)


class TestMonteCarlo:
    def test_constant_inner_product_is_volume(self):
        est = inner_product_mc(DomainSpec.classical(), Monomial(0, 0), Monomial(0, 0), 10_000, seed=20)
        assert est.value.real == pytest.approx(PI_SQ / 2.0, rel=1e-12)
        assert est.std_error == 0.0

    def test_distinct_monomials_orthogonal(self):
        est = inner_product_mc(DomainSpec.classical(), Monomial(1, 0), Monomial(0, 1), 200_000, seed=21)
        assert abs(est.value) <= 3.0 * est.std_error

    def test_negative_power_norm(self):
        # ||z2^-1||^2 = pi^2 on the classical triangle.
        est = inner_product_mc(
            DomainSpec.classical(), Monomial(0, -1), Monomial(0, -1), 500_000, seed=22
        )
        assert abs(est.value - PI_SQ) <= 3.0 * est.std_error

    def test_normalized_monomials_orthonormal(self):
        spec = DomainSpec.fat(2)
        m1, m2 = Monomial(1, 0), Monomial(0, 1)
        n1 = monomial_norm_sq(spec, 1, 0)
        est = inner_product_mc(spec, m1, m1, 300_000, seed=23)
        assert abs(est.value / n1 - 1.0) <= 3.0 * est.std_error / n1
        cross = inner_product_mc(spec, m1, m2, 300_000, seed=24)
        assert abs(cross.value) <= 3.0 * cross.std_error

    def test_requires_minimum_samples(self):
        with pytest.raises(ValueError):
            inner_product_mc(DomainSpec.classical(), Monomial(0, 0), Monomial(0, 0), 10, seed=1)


class TestReproducing:
    def test_fat2_constant(self):
        rep = reproducing_check(DomainSpec.fat(2), Monomial(0, 0), Point2C(0.1, 0.5), 1_000_000, seed=31)
        assert rep.residual <= 0.02
        assert rep.expected == 1.0

    def test_classical_z1(self):
        rep = reproducing_check(
            DomainSpec.classical(), Monomial(1, 0), Point2C(0.2, 0.6), 1_000_000, seed=32
        )
        assert rep.residual <= 0.02

    def test_fat2_heavy_tail(self):
        rep = reproducing_check(
            DomainSpec.fat(2), Monomial(0, -1), Point2C(0.1, 0.5), 2_000_000, seed=33
        )
        assert rep.residual <= 0.05

    def test_thin2_uses_resolved_variant(self):
        rep = reproducing_check(DomainSpec.thin(2), Monomial(0, 0), Point2C(0.05, 0.6), 500_000, seed=34)
        assert rep.residual <= 0.05

    def test_rejects_inadmissible_function(self):
        with pytest.raises(ValueError):
            reproducing_check(
                DomainSpec.classical(), Monomial(0, -2), Point2C(0.1, 0.5), 10_000, seed=1
            )

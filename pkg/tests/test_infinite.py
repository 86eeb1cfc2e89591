import cmath
import math
import random

import pytest
from hypothesis import assume, given, strategies as st

from laddernet.errors import OnCut, OutOfRange
from laddernet.exhaustion import exhaust
from laddernet.infinite import (
    RegionCL,
    RegionLC,
    ab_infinite_admittance,
    cl_boundary_limit,
    cl_branch_admittance,
    cl_branch_psi1,
    cl_infinite_admittance,
    classify_cl,
    classify_lc,
    lc_boundary_limit,
    lc_branch_admittance,
    lc_branch_psi1,
    lc_infinite_admittance,
    xi_roots,
)
from laddernet.network import LadderSpec

coord = st.floats(-4, 4, allow_nan=False)
lams = st.builds(complex, coord, coord).filter(lambda z: abs(z) > 0.05 and abs(z.real) > 1e-3)


class TestXiRoots:
    @pytest.mark.parametrize(
        "gamma, xi1",
        [(1, 1), (-1, 1j), (-3 - 4j, -1 + 2j), (4j, math.sqrt(2) * (1 + 1j)), (1e-3 - 1j, None)],
    )
    def test_examples(self, gamma, xi1):
        b = xi_roots(gamma)
        if xi1 is not None:
            assert b.xi1 == pytest.approx(xi1, abs=1e-14)
        assert b.xi2 == -b.xi1
        assert b.xi1 * b.xi1 == pytest.approx(gamma, rel=1e-12)

    @pytest.mark.parametrize("gamma", [0, -1j, -5j])
    def test_cut(self, gamma):
        with pytest.raises(OnCut):
            xi_roots(gamma)

    @given(st.builds(complex, coord, coord))
    def test_image_half_plane(self, gamma):
        assume(abs(gamma) > 1e-200 and not (gamma.real == 0 and gamma.imag < 0))
        b = xi_roots(gamma)
        arg = cmath.phase(b.xi1)
        assert -math.pi / 4 - 1e-12 <= arg <= 3 * math.pi / 4 + 1e-12
        assert abs(b.xi1**2 - gamma) <= 1e-12 * abs(gamma)


class TestClassifyLC:
    @pytest.mark.parametrize(
        "lam, region",
        [
            (2, RegionLC.OMEGA1),
            (-2, RegionLC.OMEGA2),
            (1j, RegionLC.SEGMENT_INTERIOR),
            (-1.5j, RegionLC.SEGMENT_INTERIOR),
            (2j, RegionLC.SEGMENT_ENDPOINT),
            (-2j, RegionLC.SEGMENT_ENDPOINT),
            (3j, RegionLC.OMEGA1),
            (-3j, RegionLC.OMEGA2),
            (1 + 1j, RegionLC.OMEGA1),
            (-1 - 1j, RegionLC.OMEGA2),
            (0.5 - 1j, RegionLC.OMEGA1),
            (0.5 - 3j, RegionLC.OMEGA2),
            (-0.5 + 3j, RegionLC.OMEGA1),
            (-1 + math.sqrt(5) * 1j, RegionLC.LAMBDA_BAR),
            (0, RegionLC.ZERO),
        ],
    )
    def test_examples(self, lam, region):
        assert classify_lc(lam, 1, 1) is region

    def test_scales_with_lc(self):
        # segment end moves to 2/sqrt(LC) = 1
        assert classify_lc(1j, 2, 2) is RegionLC.SEGMENT_ENDPOINT
        assert classify_lc(0.9j, 2, 2) is RegionLC.SEGMENT_INTERIOR
        assert classify_lc(1.1j, 2, 2) is RegionLC.OMEGA1


class TestClassifyCL:
    @pytest.mark.parametrize(
        "lam, region",
        [
            (2, RegionCL.OMEGA1),
            (0.5j, RegionCL.RAY_ENDPOINT),
            (-0.5j, RegionCL.RAY_ENDPOINT),
            (2j, RegionCL.RAY_INTERIOR),
            (-0.7j, RegionCL.RAY_INTERIOR),
            (0.3j, RegionCL.OMEGA1),
            (1 + 2j, RegionCL.OMEGA1),
            (-0.1 + 2j, RegionCL.OMEGA2),
            (0.1 - 2j, RegionCL.OMEGA3),
            (-0.1 - 2j, RegionCL.OMEGA1),
            (0, RegionCL.ZERO),
        ],
    )
    def test_examples(self, lam, region):
        assert classify_cl(lam, 1, 1) is region

    def test_lambda1_in_omega2(self):
        lam = -cmath.sqrt(-1 - 1j)
        if lam.imag < 0:
            lam = -lam
        assert lam.real < 0 < lam.imag
        assert classify_cl(lam, 1, 1) is RegionCL.OMEGA2

    def test_curve(self):
        y = math.sqrt(0.25 + 0.25)
        assert classify_cl(complex(-0.5, y), 1, 1) is RegionCL.LAMBDA_BAR


class TestLimits:
    def test_lc_at_2(self):
        res = lc_infinite_admittance(2, 1, 1)
        assert res.value == pytest.approx(math.sqrt(2) - 1, rel=1e-14)
        assert res.psi1 == pytest.approx(3 - 2 * math.sqrt(2))
        # exhaustion oracle at n = 40
        assert abs(exhaust(LadderSpec.lc(1, 1), 2, 40).terms[-1][1] - res.value) <= 1e-8

    def test_lc_endpoint(self):
        assert lc_infinite_admittance(2j, 1, 1).value == pytest.approx(-1j)
        assert lc_infinite_admittance(-2j, 1, 1).value == pytest.approx(1j)

    def test_lc_segment(self):
        res = lc_infinite_admittance(1j, 1, 1)
        assert not res.converged and res.impedance is None
        assert abs(res.psi1) == pytest.approx(1)

    def test_cl_at_endpoint(self):
        assert cl_infinite_admittance(0.5j, 1, 1).value == pytest.approx(1j)
        assert cl_infinite_admittance(-0.5j, 1, 1).value == pytest.approx(-1j)

    def test_cl_endpoint_scaled(self):
        # L = 4, C = 1: endpoint i/(2*2) = i/4, limit i*sqrt(1/4)
        assert cl_infinite_admittance(0.25j, 4, 1).value == pytest.approx(0.5j)

    def test_cl_at_1(self):
        res = cl_infinite_admittance(1, 1, 1)
        assert res.value == pytest.approx((math.sqrt(5) - 1) / 2, rel=1e-14)
        assert abs(exhaust(LadderSpec.cl(1, 1), 1, 40).terms[-1][1] - res.value) <= 1e-8

    def test_cl_ray(self):
        assert not cl_infinite_admittance(2j, 1, 1).converged

    def test_ab(self):
        assert ab_infinite_admittance(0.5, 2).value == pytest.approx(math.sqrt(2) - 1)
        assert ab_infinite_admittance(1, -4).value == 2
        assert not ab_infinite_admittance(1, -1).converged

    @given(lams)
    def test_conjugate_symmetry(self, lam):
        for f in (lc_infinite_admittance, cl_infinite_admittance):
            a, b = f(lam, 1.3, 0.7), f(lam.conjugate(), 1.3, 0.7)
            assert a.converged == b.converged
            if a.converged:
                assert abs(a.value.conjugate() - b.value) <= 1e-12 * max(1, abs(a.value))

    @given(lams)
    def test_limit_has_positive_real_part_in_right_half_plane(self, lam):
        # passive networks: Re P > 0 when Re lam > 0
        assume(lam.real > 0)
        for f in (lc_infinite_admittance, cl_infinite_admittance):
            r = f(lam, 1, 1)
            assert r.converged and r.value.real > 0


def _random_in(rng, region, classify, L=1.0, C=1.0):
    while True:
        lam = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
        if abs(lam) > 0.05 and classify(lam, L, C) is region:
            return lam


class TestBranchConsistency:
    @pytest.mark.parametrize("region", [RegionLC.OMEGA1, RegionLC.OMEGA2])
    def test_lc(self, region):
        rng = random.Random(region.value)
        for _ in range(100):
            lam = _random_in(rng, region, classify_lc)
            direct = lc_infinite_admittance(lam, 1, 1)
            assert abs(lc_branch_psi1(lam, 1, 1) - direct.psi1) <= 1e-10
            assert abs(lc_branch_admittance(lam, 1, 1) - direct.value) <= 1e-10 * max(1, abs(direct.value))

    @pytest.mark.parametrize("region", [RegionCL.OMEGA1, RegionCL.OMEGA2, RegionCL.OMEGA3])
    def test_cl(self, region):
        rng = random.Random(region.value)
        for _ in range(100):
            lam = _random_in(rng, region, classify_cl)
            direct = cl_infinite_admittance(lam, 1, 1)
            assert abs(cl_branch_psi1(lam, 1, 1) - direct.psi1) <= 1e-10
            assert abs(cl_branch_admittance(lam, 1, 1) - direct.value) <= 1e-10 * max(1, abs(direct.value))

    def test_worked_points(self):
        assert lc_branch_psi1(2, 1, 1) == pytest.approx(3 - 2 * math.sqrt(2))
        assert lc_branch_psi1(-2, 1, 1) == pytest.approx(3 - 2 * math.sqrt(2))
        assert lc_branch_admittance(-2, 1, 1) == pytest.approx(lc_infinite_admittance(-2, 1, 1).value)

    def test_branch_outside_domains(self):
        with pytest.raises(OnCut):
            lc_branch_psi1(1j, 1, 1)
        with pytest.raises(OnCut):
            cl_branch_admittance(2j, 1, 1)


class TestBoundaryLimits:
    def test_lc_examples(self):
        assert lc_boundary_limit(1, 1, 1) == pytest.approx(math.sqrt(3) / 2 - 0.5j)
        assert lc_boundary_limit(1, 1, 1, "left") == pytest.approx(-math.sqrt(3) / 2 - 0.5j)
        assert lc_boundary_limit(1e-9, 1, 4) == pytest.approx(2, rel=1e-9)

    def test_cl_examples(self):
        assert cl_boundary_limit(1, 1, 1) == pytest.approx(math.sqrt(3) / 2 + 0.5j)
        assert cl_boundary_limit(1, 1, 1, "left") == pytest.approx(-math.sqrt(3) / 2 + 0.5j)
        assert cl_boundary_limit(1e9, 1, 1) == pytest.approx(1, rel=1e-9)
        assert cl_boundary_limit(-1, 1, 1) == pytest.approx(math.sqrt(3) / 2 - 0.5j)

    @pytest.mark.parametrize("omega", [0, 2, -2, 3])
    def test_lc_out_of_range(self, omega):
        with pytest.raises(OutOfRange):
            lc_boundary_limit(omega, 1, 1)

    @pytest.mark.parametrize("omega", [0, 0.5, -0.3])
    def test_cl_out_of_range(self, omega):
        with pytest.raises(OutOfRange):
            cl_boundary_limit(omega, 1, 1)

    def test_bad_side(self):
        with pytest.raises(ValueError):
            lc_boundary_limit(1, 1, 1, "up")

    @pytest.mark.parametrize("omega", [-1.7, -0.4, 0.3, 1.0, 1.8])
    def test_lc_matches_approach(self, omega):
        for side, sign in (("right", 1), ("left", -1)):
            got = lc_infinite_admittance(complex(sign * 1e-6, omega), 1, 1).value
            assert abs(got - lc_boundary_limit(omega, 1, 1, side)) <= 1e-5

    @pytest.mark.parametrize("omega", [-4.0, -0.8, 0.6, 1.0, 3.0])
    def test_cl_matches_approach(self, omega):
        for side, sign in (("right", 1), ("left", -1)):
            got = cl_infinite_admittance(complex(sign * 1e-6, omega), 1, 1).value
            assert abs(got - cl_boundary_limit(omega, 1, 1, side)) <= 1e-5

    def test_segment_jump(self):
        for omega in (0.2, 1.0, 1.9):
            jump = lc_boundary_limit(omega, 1, 1) - lc_boundary_limit(omega, 1, 1, "left")
            assert jump == pytest.approx(2 * math.sqrt(1 - omega**2 / 4))

"""Infinite LC and CL ladders: limits of P_n, region maps and boundary limits.

The primary evaluation picks psi1 as the root of smaller modulus. The
square-root branch formulas (through gamma and xi1/xi2) are kept as an
independent route for cross-checking on each domain.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from .errors import OnCut, OutOfRange
from .ladder import characteristic_roots
from .network import check_lambda

UNIT_MODULUS_TOL = 1e-9
LC_ENDPOINT_TOL = 1e-9
CL_ENDPOINT_RTOL = 1e-12
CURVE_TOL = 1e-9
AXIS_RTOL = 1e-9


class RegionLC(str, Enum):
    OMEGA1 = "omega1"
    OMEGA2 = "omega2"
    LAMBDA_BAR = "lambda_bar"
    SEGMENT_INTERIOR = "segment"
    SEGMENT_ENDPOINT = "endpoint"
    ZERO = "zero"


class RegionCL(str, Enum):
    OMEGA1 = "omega1"
    OMEGA2 = "omega2"
    OMEGA3 = "omega3"
    LAMBDA_BAR = "lambda_bar"
    RAY_INTERIOR = "segment"
    RAY_ENDPOINT = "endpoint"
    ZERO = "zero"


@dataclass(frozen=True)
class GammaBranch:
    gamma: complex
    xi1: complex
    xi2: complex


@dataclass(frozen=True)
class LimitResult:
    """Limit of P_n; ``value`` is None when the sequence does not converge."""

    value: complex | None
    psi1: complex
    region: RegionLC | RegionCL | None

    @property
    def converged(self) -> bool:
        return self.value is not None

    @property
    def impedance(self) -> complex | None:
        if self.value is None:
            return None
        return 1 / self.value if self.value != 0 else complex(math.inf, 0)


def xi_roots(gamma: complex) -> GammaBranch:
    """Square roots of gamma continuous off the cut (-i inf, 0].

    xi1 = sqrt(r) exp(i phi/2) with gamma = r exp(i phi), phi in (-pi/2, 3pi/2).
    """
    gamma = complex(gamma)
    if gamma == 0:
        raise OnCut("gamma = 0 is a branch point")
    phi = math.atan2(gamma.imag, gamma.real)
    if gamma.real == 0 and gamma.imag < 0:
        raise OnCut(f"gamma={gamma} lies on the negative imaginary axis")
    if phi < -math.pi / 2:
        phi += 2 * math.pi
    xi1 = cmath.rect(math.sqrt(abs(gamma)), phi / 2)
    return GammaBranch(gamma, xi1, -xi1)


def classify_lc(lam: complex, L: float, C: float) -> RegionLC:
    lam = complex(lam)
    if lam == 0:
        return RegionLC.ZERO
    x, y = lam.real, lam.imag
    lc = L * C
    if abs(lc * lam * lam + 4) <= LC_ENDPOINT_TOL:
        return RegionLC.SEGMENT_ENDPOINT
    if abs(x) <= AXIS_RTOL * abs(lam):
        if abs(y) < 2 / math.sqrt(lc):
            return RegionLC.SEGMENT_INTERIOR
        return RegionLC.OMEGA1 if y > 0 else RegionLC.OMEGA2
    s = 1 + lc * (x * x - y * y) / 4
    if x * y < 0 and abs(s) <= CURVE_TOL:
        return RegionLC.LAMBDA_BAR
    if x > 0 and y >= 0:
        return RegionLC.OMEGA1
    if x < 0 and y <= 0:
        return RegionLC.OMEGA2
    if x > 0:
        return RegionLC.OMEGA1 if s > 0 else RegionLC.OMEGA2
    return RegionLC.OMEGA2 if s > 0 else RegionLC.OMEGA1


def classify_cl(lam: complex, L: float, C: float) -> RegionCL:
    lam = complex(lam)
    if lam == 0:
        return RegionCL.ZERO
    x, y = lam.real, lam.imag
    cl = C * L
    endpoint = 1 / (2 * math.sqrt(cl))
    if min(abs(lam - 1j * endpoint), abs(lam + 1j * endpoint)) <= CL_ENDPOINT_RTOL * endpoint:
        return RegionCL.RAY_ENDPOINT
    if abs(x) <= AXIS_RTOL * abs(lam):
        return RegionCL.RAY_INTERIOR if abs(y) > endpoint else RegionCL.OMEGA1
    s = 4 * cl * (x * x - y * y) + 1
    if x * y < 0 and abs(s) <= CURVE_TOL:
        return RegionCL.LAMBDA_BAR
    if s > 0 or x * y > 0:
        return RegionCL.OMEGA1
    return RegionCL.OMEGA2 if y > 0 else RegionCL.OMEGA3


def _limit_from_roots(alpha: complex, mu: complex, region) -> LimitResult:
    psi1 = characteristic_roots(mu).psi1
    if abs(abs(psi1) - 1) <= UNIT_MODULUS_TOL:
        return LimitResult(None, psi1, region)
    return LimitResult(alpha * (1 - psi1), psi1, region)


def lc_infinite_admittance(lam: complex, L: float, C: float) -> LimitResult:
    """Admittance of the infinite LC ladder, (1 - psi1)/(L lam) with |psi1| < 1."""
    lam = check_lambda(lam)
    region = classify_lc(lam, L, C)
    mu = L * C * lam * lam
    if abs(mu + 4) <= LC_ENDPOINT_TOL:
        # limit of alpha (2n - 1)/n
        return LimitResult(2 / (L * lam), -1 + 0j, RegionLC.SEGMENT_ENDPOINT)
    return _limit_from_roots(1 / (L * lam), mu, region)


def cl_infinite_admittance(lam: complex, L: float, C: float) -> LimitResult:
    """Admittance of the infinite CL ladder, C lam (1 - psi1) with |psi1| < 1."""
    lam = check_lambda(lam)
    region = classify_cl(lam, L, C)
    if region is RegionCL.RAY_ENDPOINT:
        return LimitResult(math.copysign(1.0, lam.imag) * 1j * math.sqrt(C / L), -1 + 0j, region)
    return _limit_from_roots(C * lam, 1 / (C * L * lam * lam), region)


def ab_infinite_admittance(alpha: complex, beta: complex) -> LimitResult:
    """Limit of P_n for fixed (alpha, beta); no lambda-plane region attached."""
    alpha, beta = complex(alpha), complex(beta)
    mu = beta / alpha
    if abs(mu + 4) <= LC_ENDPOINT_TOL:
        return LimitResult(2 * alpha, -1 + 0j, None)
    return _limit_from_roots(alpha, mu, None)


# Branch-formula route


def lc_gamma(lam: complex, L: float, C: float) -> complex:
    return L * C + (L * C * lam) ** 2 / 4


def cl_gamma(lam: complex, L: float, C: float) -> complex:
    return 4 * C * L * lam * lam + 1


def _lc_xi(lam, L, C):
    region = classify_lc(lam, L, C)
    if region not in (RegionLC.OMEGA1, RegionLC.OMEGA2):
        raise OnCut(f"lambda={lam} is not inside Omega1 or Omega2 ({region.value})")
    branch = xi_roots(lc_gamma(lam, L, C))
    return branch.xi2 if region is RegionLC.OMEGA1 else branch.xi1


def _cl_xi(lam, L, C):
    region = classify_cl(lam, L, C)
    if region not in (RegionCL.OMEGA1, RegionCL.OMEGA2, RegionCL.OMEGA3):
        raise OnCut(f"lambda={lam} is not inside an Omega domain ({region.value})")
    branch = xi_roots(cl_gamma(lam, L, C))
    return branch.xi2 if region is RegionCL.OMEGA1 else branch.xi1


def lc_branch_psi1(lam: complex, L: float, C: float) -> complex:
    """1 + LC lam^2/2 + lam xi, xi = xi2 on Omega1 and xi1 on Omega2."""
    lam = complex(lam)
    return 1 + L * C * lam * lam / 2 + lam * _lc_xi(lam, L, C)


def lc_branch_admittance(lam: complex, L: float, C: float) -> complex:
    lam = complex(lam)
    return -C * lam / 2 - _lc_xi(lam, L, C) / L


def cl_branch_psi1(lam: complex, L: float, C: float) -> complex:
    """1 + (1 + xi)/(2 CL lam^2), xi = xi2 on Omega1 and xi1 on Omega2, Omega3."""
    lam = complex(lam)
    k = 1 / (2 * C * L * lam * lam)
    return 1 + k + k * _cl_xi(lam, L, C)


def cl_branch_admittance(lam: complex, L: float, C: float) -> complex:
    lam = complex(lam)
    return -(1 + _cl_xi(lam, L, C)) / (2 * L * lam)


# One-sided limits on the imaginary axis


def lc_boundary_limit(omega: float, L: float, C: float, side: str = "right") -> complex:
    """Limit of P(eps + i omega) as eps -> 0 from the right (or left) half-plane."""
    if omega == 0 or abs(omega) >= 2 / math.sqrt(L * C):
        raise OutOfRange(f"omega={omega} is outside (-2/sqrt(LC), 2/sqrt(LC)) minus 0")
    root = math.sqrt(C / L - C * C * omega * omega / 4)
    return -C * 1j * omega / 2 + _sign(side) * root


def cl_boundary_limit(omega: float, L: float, C: float, side: str = "right") -> complex:
    """Limit of P(eps + i omega) on the CL rays |omega| > 1/(2 sqrt(CL))."""
    if abs(omega) <= 1 / (2 * math.sqrt(C * L)):
        raise OutOfRange(f"|omega|={abs(omega)} must exceed 1/(2 sqrt(CL))")
    if omega < 0:
        # P(conj lam) = conj P(lam)
        return cl_boundary_limit(-omega, L, C, side).conjugate()
    root = math.sqrt(C / L - 1 / (4 * L * L * omega * omega))
    return 1j / (2 * L * omega) + _sign(side) * root


def _sign(side: str) -> int:
    side = side.lower()
    if side == "right":
        return 1
    if side == "left":
        return -1
    raise ValueError(f"side must be 'right' or 'left', got {side!r}")

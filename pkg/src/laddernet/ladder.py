"""Closed-form solution of the finite alpha-beta ladder.

With mu = beta/alpha the rung voltages v_k = v(2k) obey
v_{k+1} - (2 + mu) v_k + v_{k-1} = 0, v_0 = 1, v_n = 0, so everything is
expressed through the roots of psi^2 - (2 + mu) psi + 1 = 0.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from math import comb

from .dirichlet import effective_admittance, solve_dirichlet
from .errors import InvalidSize, MuZero, NoSolution, UnitCircleDegeneracy
from .network import LadderSpec, build_ladder

# |mu + 4| at or below this is the double root psi = -1
DEGENERATE_TOL = 1e-12
# between DEGENERATE_TOL and this, the root formula cancels badly
NEAR_DEGENERATE_TOL = 1e-6
UNIT_CIRCLE_TOL = 1e-10
BINOMIAL_MAX_N = 30


@dataclass(frozen=True)
class CharRoots:
    psi1: complex
    psi2: complex
    degenerate: bool
    mu: complex


@dataclass(frozen=True)
class LadderVoltages:
    v: list[complex]
    c1: complex
    c2: complex


def characteristic_roots(mu: complex) -> CharRoots:
    """Roots of psi^2 - (2 + mu) psi + 1, ordered so that |psi1| <= |psi2|.

    Equal moduli (both on the unit circle) are ordered by ascending argument.
    """
    mu = complex(mu)
    if mu == 0:
        raise MuZero("mu = beta/alpha must be nonzero")
    if abs(mu + 4) <= DEGENERATE_TOL:
        return CharRoots(-1 + 0j, -1 + 0j, True, mu)
    b = 2 + mu
    # discriminant (2 + mu)^2 - 4 factored to avoid cancellation
    s = cmath.sqrt(mu * (mu + 4))
    big = (b + s) / 2 if (b.conjugate() * s).real >= 0 else (b - s) / 2
    small = 1 / big
    if abs(abs(big) - abs(small)) <= 1e-12 * abs(big):
        small, big = sorted((small, big), key=cmath.phase)
    return CharRoots(small, big, False, mu)


def _check(alpha, beta):
    alpha, beta = complex(alpha), complex(beta)
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    if beta == 0:
        raise MuZero("beta must be nonzero")
    return alpha, beta


def _power_2n(psi1: complex, n: int) -> complex:
    p = psi1 ** (2 * n)
    if abs(p - 1) <= UNIT_CIRCLE_TOL:
        raise UnitCircleDegeneracy(f"psi1^(2n) = 1 for n={n}; Dirichlet problem has no solution")
    return p


def ladder_voltages(alpha: complex, beta: complex, n: int) -> LadderVoltages:
    """Rung voltages v_0..v_n and the recurrence constants c1, c2."""
    alpha, beta = _check(alpha, beta)
    if n < 1:
        raise InvalidSize("n must be >= 1")
    roots = characteristic_roots(beta / alpha)
    if roots.degenerate:
        v = [(-1) ** k * (1 - k / n) + 0j for k in range(n + 1)]
        return LadderVoltages(v, 1 + 0j, -1 / n + 0j)
    psi1 = roots.psi1
    p = _power_2n(psi1, n)
    c1 = 1 / (1 - p)
    # c2 = 1/(1 - psi2^(2n)) rewritten through psi1 so nothing overflows
    c2 = -p / (1 - p)
    if abs(roots.mu + 4) < NEAR_DEGENERATE_TOL:
        return LadderVoltages(_voltages_by_solve(alpha, beta, n), c1, c2)
    # c2 psi2^k = -psi1^(2n-k) c1
    v = [(psi1**k - psi1 ** (2 * n - k)) * c1 for k in range(n + 1)]
    v[0], v[n] = 1 + 0j, 0j
    return LadderVoltages(v, c1, c2)


def finite_ladder_admittance(alpha: complex, beta: complex, n: int) -> complex:
    """Effective admittance of the n-step alpha-beta ladder.

    alpha (2n-1)/n when mu = -4, otherwise
    alpha (psi1^(2n-1) + 1)(psi1 - 1) / (psi1^(2n) - 1).
    """
    alpha, beta = _check(alpha, beta)
    if n < 1:
        raise InvalidSize("n must be >= 1")
    roots = characteristic_roots(beta / alpha)
    if roots.degenerate:
        return alpha * (2 * n - 1) / n
    if abs(roots.mu + 4) < NEAR_DEGENERATE_TOL:
        return _admittance_by_solve(alpha, beta, n)
    return root_form(alpha, roots.psi1, n)


def root_form(alpha: complex, psi: complex, n: int) -> complex:
    """alpha (psi^(2n-1) + 1)(psi - 1)/(psi^(2n) - 1) for either root psi."""
    p = _power_2n(psi, n)
    return alpha * (psi ** (2 * n - 1) + 1) * (psi - 1) / (p - 1)


def finite_ladder_excess(alpha: complex, beta: complex, n: int) -> complex:
    """P_n - alpha (1 - psi1), evaluated without cancellation.

    Equals alpha (psi1 - 1) psi1^(2n-1) (1 + psi1) / (psi1^(2n) - 1); for
    |psi1| < 1 this is the distance of P_n from the infinite-ladder limit.
    """
    alpha, beta = _check(alpha, beta)
    roots = characteristic_roots(beta / alpha)
    if roots.degenerate:
        return alpha * (2 * n - 1) / n - 2 * alpha
    psi = roots.psi1
    p = _power_2n(psi, n)
    return alpha * (psi - 1) * psi ** (2 * n - 1) * (1 + psi) / (p - 1)


def finite_ladder_admittance_binomial(alpha: complex, beta: complex, n: int) -> complex:
    """Same admittance as a rational function of alpha and beta (no roots).

    Uses psi1^m + psi2^m = 2 sum_k C(m, 2k) a^(m-2k) b^k with
    a = 1 + mu/2 and b = mu + mu^2/4.
    """
    alpha, beta = _check(alpha, beta)
    if n < 1:
        raise InvalidSize("n must be >= 1")
    if n > BINOMIAL_MAX_N:
        raise InvalidSize(f"binomial form refuses n > {BINOMIAL_MAX_N}")
    mu = beta / alpha
    if abs(mu + 4) <= DEGENERATE_TOL:
        raise UnitCircleDegeneracy("binomial form is undefined at mu = -4")
    a = 1 + beta / (2 * alpha)
    b = beta / alpha + (beta / (2 * alpha)) ** 2
    odd = sum(comb(2 * n - 1, 2 * k) * a ** (2 * n - 2 * k - 1) * b**k for k in range(n))
    even = sum(comb(2 * n, 2 * k) * a ** (2 * n - 2 * k) * b**k for k in range(n + 1))
    num = 2 + mu - 2 * odd
    den = 2 - 2 * even
    if abs(den) <= UNIT_CIRCLE_TOL * max(1.0, abs(2 * even)):
        raise UnitCircleDegeneracy(f"psi^(2n) = 1 for n={n}")
    return alpha * (1 - num / den)


def _ab_network(alpha, beta, n):
    return build_ladder(LadderSpec.ab(alpha, beta), n)


def _admittance_by_solve(alpha, beta, n):
    res = effective_admittance(_ab_network(alpha, beta, n), 1.0)
    if not res.solvable:
        raise UnitCircleDegeneracy(f"Dirichlet problem has no solution for n={n}")
    return res.value


def _voltages_by_solve(alpha, beta, n):
    try:
        sol = solve_dirichlet(_ab_network(alpha, beta, n), 1.0)
    except NoSolution:
        raise UnitCircleDegeneracy(f"Dirichlet problem has no solution for n={n}") from None
    return [sol.values[2 * k] for k in range(n + 1)]

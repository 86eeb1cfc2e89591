"""Exhaustion sequences P_1, P_2, ... of infinite ladders and convergence diagnostics."""

from __future__ import annotations

import cmath
import math
import sys
from dataclasses import dataclass
from enum import Enum

from .dirichlet import INFINITY, effective_admittance
from .errors import NonConvergentInput, TooFewTerms, UnitCircleDegeneracy
from .infinite import (
    LimitResult,
    ab_infinite_admittance,
    cl_infinite_admittance,
    lc_infinite_admittance,
)
from .ladder import characteristic_roots, finite_ladder_admittance, finite_ladder_excess
from .network import LadderKind, LadderSpec, build_ladder, check_lambda

DEFAULT_TOL = 1e-9
# differences below this many ulps of the sequence scale are rounding noise
NOISE_ULPS = 1000


class Source(str, Enum):
    CLOSED_FORM = "closed_form"
    DIRICHLET = "dirichlet"


class Status(str, Enum):
    CONVERGED = "converged"
    OSCILLATING = "oscillating"
    SLOW = "slow"


@dataclass(frozen=True)
class AdmittanceSequence:
    """Terms (n, P_n); an unsolvable Dirichlet problem shows up as an infinite P_n."""

    lam: complex
    terms: list[tuple[int, complex]]
    source: Source

    @property
    def values(self) -> list[complex]:
        return [p for _, p in self.terms]


@dataclass(frozen=True)
class ConvergenceVerdict:
    status: Status
    estimated_limit: complex | None
    estimated_rate: float


@dataclass(frozen=True)
class RateRow:
    n: int
    error: float
    bound: float

    @property
    def within(self) -> bool:
        return self.error <= self.bound


def term(spec: LadderSpec, lam: complex, n: int, source: Source = Source.CLOSED_FORM) -> complex:
    """P_n of the n-step ladder, INFINITY when its Dirichlet problem is unsolvable."""
    if Source(source) is Source.CLOSED_FORM:
        alpha, beta = spec.admittances(lam)
        try:
            return finite_ladder_admittance(alpha, beta, n)
        except UnitCircleDegeneracy:
            return INFINITY
    return effective_admittance(build_ladder(spec, n), lam).value


def exhaust(
    spec: LadderSpec,
    lam: complex,
    n_max: int,
    source: Source = Source.CLOSED_FORM,
) -> AdmittanceSequence:
    lam = check_lambda(lam)
    if n_max < 2:
        raise TooFewTerms("n_max must be at least 2")
    source = Source(source)
    spec.admittances(lam)
    terms = [(n, term(spec, lam, n, source)) for n in range(1, n_max + 1)]
    return AdmittanceSequence(lam, terms, source)


def infinite_limit(spec: LadderSpec, lam: complex) -> LimitResult:
    if spec.kind is LadderKind.LC:
        return lc_infinite_admittance(lam, spec.L, spec.C)
    if spec.kind is LadderKind.CL:
        return cl_infinite_admittance(lam, spec.L, spec.C)
    return ab_infinite_admittance(*spec.admittances(lam))


def diagnose(seq: AdmittanceSequence, tol: float = DEFAULT_TOL) -> ConvergenceVerdict:
    """Classify the tail of an admittance sequence.

    Converged: the last difference is below ``tol``, the resolvable tail
    differences do not grow, and the geometric remainder d r/(1 - r) is below
    ``tol``. Oscillating: infinite terms in the tail, or tail differences that
    stay above ``tol`` without decreasing strictly. Slow: anything else.
    """
    values = seq.values
    if len(values) < 4:
        raise TooFewTerms("diagnose needs at least 4 terms")
    diffs = [abs(b - a) if not (_inf(a) or _inf(b)) else math.inf for a, b in zip(values, values[1:])]
    k = max(3, len(diffs) // 3)
    tail = diffs[-k:]
    finite = [abs(p) for p in values if not _inf(p)]
    floor = NOISE_ULPS * sys.float_info.epsilon * max(finite, default=1.0)

    if math.inf in tail:
        return ConvergenceVerdict(Status.OSCILLATING, None, math.nan)

    rate = _rate(diffs, floor)
    resolvable = [d for d in tail if d > floor]
    decreasing = all(b <= a for a, b in zip(resolvable, resolvable[1:]))
    last = tail[-1]
    remainder = 0.0 if last <= floor else (last * rate / (1 - rate) if rate < 1 else math.inf)
    if last <= tol and decreasing and remainder <= tol:
        return ConvergenceVerdict(Status.CONVERGED, values[-1], rate)

    smallest = min(tail)
    monotone = all(b < a for a, b in zip(tail, tail[1:]))
    # a spread test alone would flag fast geometric tails that are still above tol
    if smallest > tol and not monotone:
        return ConvergenceVerdict(Status.OSCILLATING, None, rate)
    return ConvergenceVerdict(Status.SLOW, None, rate)


def _rate(diffs: list[float], floor: float) -> float:
    """Geometric ratio from the last three differences above the noise floor."""
    usable = [d for d in diffs if d > floor]
    if not usable:
        return 0.0
    last = usable[-3:]
    if len(last) < 2:
        return 0.0
    ratios = [b / a for a, b in zip(last, last[1:])]
    return math.prod(ratios) ** (1 / len(ratios))


def verify_rate(spec: LadderSpec, lam: complex, n_range) -> list[RateRow]:
    """Compare |P_n - P_inf| with K |psi1|^(2n) over ``n_range``.

    The error is evaluated in closed form (no subtraction of nearly equal
    numbers), so it stays meaningful far below machine epsilon. K is fitted
    on the first n with a safety factor that makes the bound rigorous for
    exact arithmetic.
    """
    lam = check_lambda(lam)
    ns = list(n_range)
    if not ns:
        return []
    limit = infinite_limit(spec, lam)
    alpha, beta = spec.admittances(lam)
    roots = characteristic_roots(beta / alpha)
    if not limit.converged or roots.degenerate:
        raise NonConvergentInput(f"P_n does not converge geometrically at lambda={lam}")
    if abs(limit.value - alpha * (1 - roots.psi1)) > 1e-9 * abs(limit.value):
        raise AssertionError("infinite limit disagrees with the ladder roots")
    q = abs(roots.psi1) ** 2
    errors = [abs(finite_ladder_excess(alpha, beta, n)) for n in ns]
    n0 = ns[0]
    k = errors[0] * (1 + q**n0) / ((1 - q**n0) * q**n0)
    return [RateRow(n, err, k * q**n) for n, err in zip(ns, errors)]


def _inf(z: complex) -> bool:
    return cmath.isinf(z) or cmath.isnan(z)

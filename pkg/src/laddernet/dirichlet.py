"""Discrete Dirichlet problem on a finite network and its effective admittance.

This is the generic oracle: every closed form in the package is checked
against the linear solve implemented here.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import NoSolution
from .network import Network, check_lambda

PIVOT_RTOL = 1e-12
CONSISTENCY_RTOL = 1e-9

INFINITY = complex(float("inf"), 0.0)


@dataclass(frozen=True)
class DirichletSystem:
    """Square system ``matrix @ u = rhs`` over the interior vertices.

    Row x reads (sum_y rho_xy) u(x) - sum_{y interior} rho_xy u(y) = rho_{x a0}.
    """

    matrix: np.ndarray
    rhs: np.ndarray
    interior: list[int]
    rho: dict[tuple[int, int], complex]


@dataclass(frozen=True)
class VoltageSolution:
    values: dict[int, complex]
    lam: complex
    unique: bool


@dataclass(frozen=True)
class AdmittanceResult:
    value: complex
    solvable: bool
    solution: VoltageSolution | None = None

    @property
    def is_infinite(self) -> bool:
        return not self.solvable

    @property
    def impedance(self) -> complex:
        """Z = 1/P, with Z = 0 when P is infinite."""
        if not self.solvable:
            return 0j
        return 1.0 / self.value if self.value != 0 else INFINITY


def assemble_system(net: Network, lam: complex) -> DirichletSystem:
    lam = check_lambda(lam)
    rho = net.admittances(lam)
    interior = net.interior
    index = {x: i for i, x in enumerate(interior)}
    m = len(interior)
    matrix = np.zeros((m, m), dtype=complex)
    rhs = np.zeros(m, dtype=complex)
    for (u, v), r in rho.items():
        for x, y in ((u, v), (v, u)):
            i = index.get(x)
            if i is None:
                continue
            matrix[i, i] += r
            if y in index:
                matrix[i, index[y]] -= r
            elif y == net.a0:
                rhs[i] += r
    return DirichletSystem(matrix, rhs, interior, rho)


def gauss_solve(a, b, pivot_rtol: float = PIVOT_RTOL) -> tuple[np.ndarray, bool]:
    """Solve a x = b by scaled partial pivoting Gaussian elimination.

    A column whose best pivot is below ``pivot_rtol`` times the largest
    initial column norm is treated as free and its unknown is set to 0.
    Returns ``(x, unique)``; raises NoSolution if the reduced system is
    inconsistent.
    """
    a = np.array(a, dtype=complex)
    b = np.array(b, dtype=complex)
    m = b.shape[0]
    if m == 0:
        return np.zeros(0, dtype=complex), True
    tol = pivot_rtol * np.linalg.norm(a, axis=0).max()
    scale = np.abs(a).max(axis=1)
    scale[scale == 0] = 1.0
    cons_tol = CONSISTENCY_RTOL * max(np.abs(a).max(), np.abs(b).max(), 1e-300)

    pivot_cols = []
    r = 0
    for c in range(m):
        if r == m:
            break
        p = r + int(np.argmax(np.abs(a[r:, c]) / scale[r:]))
        if abs(a[p, c]) <= tol:
            continue
        if p != r:
            a[[r, p]] = a[[p, r]]
            b[[r, p]] = b[[p, r]]
            scale[[r, p]] = scale[[p, r]]
        factors = a[r + 1 :, c] / a[r, c]
        a[r + 1 :, c:] -= np.outer(factors, a[r, c:])
        b[r + 1 :] -= factors * b[r]
        pivot_cols.append(c)
        r += 1

    if r < m and np.abs(b[r:]).max() > cons_tol:
        raise NoSolution("Dirichlet system is singular and inconsistent")

    x = np.zeros(m, dtype=complex)
    for i in range(r - 1, -1, -1):
        c = pivot_cols[i]
        x[c] = (b[i] - a[i, c + 1 :] @ x[c + 1 :]) / a[i, c]
    return x, r == m


def solve_dirichlet(net: Network, lam: complex) -> VoltageSolution:
    system = assemble_system(net, lam)
    u, unique = gauss_solve(system.matrix, system.rhs)
    values = {x: 0j for x in net.vertices}
    values[net.a0] = 1.0 + 0j
    for x, ux in zip(system.interior, u):
        values[x] = complex(ux)
    return VoltageSolution(values, complex(lam), unique)


def laplacian(net: Network, lam: complex, f: dict[int, complex], x: int) -> complex:
    """Physical Laplacian sum_y (f(y) - f(x)) rho_xy at vertex x."""
    total = 0j
    for (u, v), r in net.admittances(lam).items():
        if u == x:
            total += (f[v] - f[x]) * r
        elif v == x:
            total += (f[u] - f[x]) * r
    return total


def admittance_from_voltages(net: Network, lam: complex, values: dict[int, complex]) -> complex:
    """Current out of a0: sum over neighbours x of (1 - v(x)) rho_{x a0}."""
    total = 0j
    for (u, v), r in net.admittances(lam).items():
        if u == net.a0:
            total += (1 - values[v]) * r
        elif v == net.a0:
            total += (1 - values[u]) * r
    return total


def effective_admittance(net: Network, lam: complex) -> AdmittanceResult:
    """Effective admittance P(lam); infinite when the Dirichlet problem has no solution."""
    lam = check_lambda(lam)
    net.admittances(lam)
    try:
        sol = solve_dirichlet(net, lam)
    except NoSolution:
        return AdmittanceResult(INFINITY, False)
    return AdmittanceResult(admittance_from_voltages(net, lam, sol.values), True, sol)


def is_infinite(z: complex) -> bool:
    return cmath.isinf(z)

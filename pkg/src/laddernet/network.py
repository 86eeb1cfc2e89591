"""Complex-weighted networks, per-edge admittances and ladder construction."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Union

from .errors import InvalidSize, NetworkFormatError, NotInLambdaSet, ZeroImpedance

ZERO_IMPEDANCE_RTOL = 1e-14


@dataclass(frozen=True)
class EdgeParams:
    """Resistance R, inductance L and inverse capacitance D = 1/C of one edge."""

    R: float = 0.0
    L: float = 0.0
    D: float = 0.0

    def __post_init__(self):
        for name in ("R", "L", "D"):
            value = getattr(self, name)
            if not value >= 0.0:
                raise NetworkFormatError(f"{name} must be nonnegative, got {value}")
        if self.R + self.L + self.D <= 0.0:
            raise NetworkFormatError("R + L + D must be positive")

    def impedance(self, lam: complex) -> complex:
        return self.R + self.L * lam + self.D / lam


# An edge is either physical (evaluated per lambda) or a fixed complex admittance.
Edge = Union[EdgeParams, complex]


def check_lambda(lam) -> complex:
    lam = complex(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    return lam


def edge_admittance(p: Edge, lam: complex) -> complex:
    """Admittance lam / (L lam^2 + R lam + D) of an edge.

    Raises ZeroImpedance when the denominator vanishes (up to rounding).
    """
    lam = check_lambda(lam)
    if not isinstance(p, EdgeParams):
        rho = complex(p)
        if rho == 0:
            raise ZeroImpedance("fixed admittance is zero")
        return rho
    denom = p.L * lam * lam + p.R * lam + p.D
    scale = max(1.0, abs(lam) ** 2 * p.L, abs(lam) * p.R, p.D)
    if abs(denom) <= ZERO_IMPEDANCE_RTOL * scale:
        raise ZeroImpedance(f"impedance vanishes at lambda={lam}")
    return lam / denom


@dataclass(frozen=True)
class Network:
    """Finite network: vertices, weighted edges, source ``a0`` and grounded ``boundary``."""

    vertices: tuple[int, ...]
    edges: dict[tuple[int, int], Edge]
    a0: int
    boundary: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "boundary", frozenset(self.boundary))
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise NetworkFormatError("duplicate vertex labels")
        if len(vset) < 2:
            raise NetworkFormatError("a network needs at least two vertices")
        if self.a0 not in vset:
            raise NetworkFormatError(f"source vertex {self.a0} is not a vertex")
        if not self.boundary:
            raise NetworkFormatError("boundary set is empty")
        if self.a0 in self.boundary:
            raise NetworkFormatError("source vertex lies in the boundary")
        if not self.boundary <= vset:
            raise NetworkFormatError("boundary contains unknown vertices")
        normalized = {}
        for (u, v), p in self.edges.items():
            if u == v:
                raise NetworkFormatError(f"self-loop at vertex {u}")
            if u not in vset or v not in vset:
                raise NetworkFormatError(f"edge ({u},{v}) has an endpoint outside V")
            key = (min(u, v), max(u, v))
            if key in normalized:
                raise NetworkFormatError(f"duplicate edge ({u},{v})")
            normalized[key] = p
        object.__setattr__(self, "edges", normalized)
        if not _is_connected(self.vertices, normalized):
            raise NetworkFormatError("graph is not connected")

    @property
    def interior(self) -> list[int]:
        return [x for x in self.vertices if x != self.a0 and x not in self.boundary]

    def neighbors(self, x: int) -> list[int]:
        return [v if u == x else u for (u, v) in self.edges if x in (u, v)]

    def admittances(self, lam: complex) -> dict[tuple[int, int], complex]:
        """Evaluate every edge admittance; NotInLambdaSet names the first failing edge."""
        out = {}
        for edge, p in self.edges.items():
            try:
                out[edge] = edge_admittance(p, lam)
            except ZeroImpedance:
                raise NotInLambdaSet(edge, lam) from None
        return out


def _is_connected(vertices, edges) -> bool:
    adj = {x: [] for x in vertices}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    start = vertices[0]
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen) == len(vertices)


def in_lambda_set(net: Network, lam: complex) -> bool:
    try:
        net.admittances(lam)
    except NotInLambdaSet:
        return False
    return True


class LadderKind(str, Enum):
    LC = "lc"
    CL = "cl"
    AB = "ab"


@dataclass(frozen=True)
class LadderSpec:
    """Admittance pattern of a ladder.

    LC: series inductors 1/(L lam), capacitor rungs C lam. CL swaps the two.
    AB: series admittance ``alpha`` and rung admittance ``beta``, each either
    EdgeParams or a fixed complex value.
    """

    kind: LadderKind
    L: float | None = None
    C: float | None = None
    alpha: Edge | None = None
    beta: Edge | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", LadderKind(self.kind))
        if self.kind in (LadderKind.LC, LadderKind.CL):
            if self.L is None or self.C is None or not (self.L > 0 and self.C > 0):
                raise NetworkFormatError("LC/CL ladders need L > 0 and C > 0")
        elif self.alpha is None or self.beta is None:
            raise NetworkFormatError("AB ladders need alpha and beta")

    @classmethod
    def lc(cls, L: float, C: float) -> LadderSpec:
        return cls(LadderKind.LC, L=L, C=C)

    @classmethod
    def cl(cls, L: float, C: float) -> LadderSpec:
        return cls(LadderKind.CL, L=L, C=C)

    @classmethod
    def ab(cls, alpha: Edge, beta: Edge) -> LadderSpec:
        return cls(LadderKind.AB, alpha=alpha, beta=beta)

    def edges(self) -> tuple[Edge, Edge]:
        """(series, rung) edge descriptors."""
        if self.kind is LadderKind.LC:
            return EdgeParams(L=self.L), EdgeParams(D=1.0 / self.C)
        if self.kind is LadderKind.CL:
            return EdgeParams(D=1.0 / self.C), EdgeParams(L=self.L)
        return self.alpha, self.beta

    def admittances(self, lam: complex) -> tuple[complex, complex]:
        """(alpha, beta) at lam. Raises NotInLambdaSet if either vanishes or blows up."""
        lam = check_lambda(lam)
        if self.kind is LadderKind.LC:
            return 1.0 / (self.L * lam), self.C * lam
        if self.kind is LadderKind.CL:
            return self.C * lam, 1.0 / (self.L * lam)
        series, rung = self.edges()
        try:
            alpha = edge_admittance(series, lam)
        except ZeroImpedance:
            raise NotInLambdaSet((0, 2), lam) from None
        try:
            beta = edge_admittance(rung, lam)
        except ZeroImpedance:
            raise NotInLambdaSet((1, 2), lam) from None
        return alpha, beta


def build_ladder(spec: LadderSpec, n: int, lam: complex | None = None) -> Network:
    """Finite ladder with n series edges and n-1 rungs.

    Vertices are {0, ..., 2n-2} and 2n; series edges (2k-2)~2k carry alpha,
    rungs (2k-1)~2k carry beta; a0 = 0 and B = {1, 3, ..., 2n-3, 2n}.
    If ``lam`` is given the ladder is checked to lie in the lambda set.
    """
    if not isinstance(n, int) or n < 1:
        raise InvalidSize(f"ladder size must be a positive integer, got {n}")
    series, rung = spec.edges()
    edges: dict[tuple[int, int], Edge] = {}
    for k in range(1, n + 1):
        edges[(2 * k - 2, 2 * k)] = series
    for k in range(1, n):
        edges[(2 * k - 1, 2 * k)] = rung
    vertices = tuple(range(2 * n - 1)) + (2 * n,)
    boundary = frozenset(range(1, 2 * n - 2, 2)) | {2 * n}
    net = Network(vertices, edges, 0, boundary)
    if lam is not None:
        net.admittances(lam)
    return net


# JSON interchange: {"vertices": count, "edges": [{"u","v","R","L","D"}], "a0", "boundary"}


def network_from_dict(data) -> Network:
    if not isinstance(data, dict):
        raise NetworkFormatError("network JSON must be an object")
    missing = {"vertices", "edges", "a0", "boundary"} - data.keys()
    if missing:
        raise NetworkFormatError(f"missing keys: {sorted(missing)}")
    count = data["vertices"]
    if not _is_int(count) or count < 2:
        raise NetworkFormatError("'vertices' must be an integer count >= 2")
    if not isinstance(data["edges"], list):
        raise NetworkFormatError("'edges' must be a list")
    edges: dict[tuple[int, int], Edge] = {}
    for i, e in enumerate(data["edges"]):
        if not isinstance(e, dict) or not {"u", "v"} <= e.keys():
            raise NetworkFormatError(f"edge #{i} needs integer 'u' and 'v'")
        u, v = e["u"], e["v"]
        if not (_is_int(u) and _is_int(v)):
            raise NetworkFormatError(f"edge #{i} needs integer 'u' and 'v'")
        extra = e.keys() - {"u", "v", "R", "L", "D"}
        if extra:
            raise NetworkFormatError(f"edge ({u},{v}) has unknown fields {sorted(extra)}")
        vals = {}
        for name in ("R", "L", "D"):
            x = e.get(name, 0.0)
            if isinstance(x, bool) or not isinstance(x, (int, float)):
                raise NetworkFormatError(f"edge ({u},{v}): {name} must be a number")
            vals[name] = float(x)
        try:
            params = EdgeParams(**vals)
        except NetworkFormatError as exc:
            raise NetworkFormatError(f"edge ({u},{v}): {exc}") from None
        key = (min(u, v), max(u, v))
        if key in edges:
            raise NetworkFormatError(f"duplicate edge ({u},{v})")
        edges[key] = params
    a0 = data["a0"]
    boundary = data["boundary"]
    if not _is_int(a0):
        raise NetworkFormatError("'a0' must be an integer")
    if not isinstance(boundary, list) or not all(_is_int(b) for b in boundary):
        raise NetworkFormatError("'boundary' must be a list of integers")
    return Network(tuple(range(count)), edges, a0, frozenset(boundary))


def network_to_dict(net: Network) -> dict:
    """Serialize; vertex labels are compacted to 0..|V|-1 in sorted order."""
    relabel = {x: i for i, x in enumerate(sorted(net.vertices))}
    edges = []
    for (u, v), p in sorted(net.edges.items()):
        if not isinstance(p, EdgeParams):
            raise NetworkFormatError("fixed-admittance edges cannot be serialized")
        edges.append({"u": relabel[u], "v": relabel[v], "R": float(p.R), "L": float(p.L), "D": float(p.D)})
    return {
        "vertices": len(net.vertices),
        "edges": edges,
        "a0": relabel[net.a0],
        "boundary": sorted(relabel[b] for b in net.boundary),
    }


def load_network(path) -> Network:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise NetworkFormatError(f"invalid JSON: {exc}") from None
    return network_from_dict(data)


def dump_network(net: Network, path) -> None:
    Path(path).write_text(json.dumps(network_to_dict(net), indent=2) + "\n")


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)

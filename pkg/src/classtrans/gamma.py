"""Finite windows of the graph Gamma(tau1, tau2) and the cycles it encodes.

Vertices come in four families. For ``tau1 = [r1(m1), r2(m2)]`` and
``tau2 = [r3(m3), r4(m4)]`` the vertex ``a_k`` stands for the integer
``r1 + m1*k``, ``b_k`` for ``r2 + m2*k``, ``c_l`` for ``r3 + m3*l`` and
``d_l`` for ``r4 + m4*l`` (the value is called ``mu``). Edges of the first
type join an {a, b} vertex to a {c, d} vertex with the same ``mu``; edges of
the second type join ``a_k - b_k`` and ``c_l - d_l``.

Every vertex has degree 1 (second-type edge only) or 2 (one edge of each
type), so components are paths or cycles. A finite cycle with ``n`` edges
carries two cycles of length ``n/4`` of the product ``tau1 * tau2``; a finite
path with ``n`` edges carries one cycle of length ``(n+3)/2``.

Only vertices with ``|mu| <= bound`` are built. A vertex is flagged as
boundary if it sits within one modulus of the bound or if its second-type
partner lies outside the window; components touching a boundary vertex are
reported as truncated and never classified.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Optional

from .residue import ClassTransposition
from .rcwa import InvariantViolation

FIRST = "first"
SECOND = "second"

TYPE1 = "Type1"
TYPE2 = "Type2"
TRUNCATED = "Truncated"


@dataclass(frozen=True, order=True)
class GammaVertex:
    family: str
    index: int
    mu: int = field(compare=False)

    @property
    def side(self) -> int:
        return 1 if self.family in "ab" else 2

    def __str__(self):
        return f"{self.family}_{self.index}"


@dataclass(frozen=True)
class GammaEdge:
    u: GammaVertex
    v: GammaVertex
    kind: str

    def __str__(self):
        return f"{self.u} -- {self.v} [{self.kind}]"


@dataclass
class GammaGraph:
    tau1: ClassTransposition
    tau2: ClassTransposition
    bound: int
    vertices: dict[tuple[str, int], GammaVertex]
    edges: list[GammaEdge]
    adjacency: dict[GammaVertex, list[tuple[GammaVertex, str]]]
    boundary: set[GammaVertex]

    def degree(self, v: GammaVertex) -> int:
        return len(self.adjacency[v])

    def dump_edges(self) -> str:
        return "\n".join(str(e) for e in self.edges)


@dataclass
class Component:
    vertices: tuple[GammaVertex, ...]
    kind: str
    length: int
    edges: tuple[GammaEdge, ...]

    @property
    def mu_values(self) -> set[int]:
        return {v.mu for v in self.vertices}

    def summary(self) -> str:
        mus = ",".join(str(m) for m in sorted(self.mu_values))
        return f"{self.kind} len={self.length} mu={{{mus}}}"


@dataclass(frozen=True)
class CycleFragment:
    entries: tuple[int, ...]
    closed: bool = True

    def __len__(self):
        return len(self.entries)


def _family_params(tau1: ClassTransposition, tau2: ClassTransposition):
    return {
        "a": (tau1.r1, tau1.m1),
        "b": (tau1.r2, tau1.m2),
        "c": (tau2.r1, tau2.m1),
        "d": (tau2.r2, tau2.m2),
    }


_PARTNER = {"a": "b", "b": "a", "c": "d", "d": "c"}


def build_window(tau1: ClassTransposition, tau2: ClassTransposition, bound: int) -> GammaGraph:
    params = _family_params(tau1, tau2)
    max_mod = max(m for _, m in params.values())
    if bound < max_mod:
        raise ValueError(f"bound {bound} is below the largest modulus {max_mod}")

    vertices: dict[tuple[str, int], GammaVertex] = {}
    by_mu = ({}, {})  # side 1 and side 2: mu -> vertex
    for fam, (r, m) in params.items():
        lo = -((bound + r) // m)  # ceil((-bound - r) / m)
        hi = (bound - r) // m
        for k in range(lo, hi + 1):
            v = GammaVertex(fam, k, r + m * k)
            vertices[(fam, k)] = v
            by_mu[v.side - 1][v.mu] = v

    adjacency: dict[GammaVertex, list[tuple[GammaVertex, str]]] = {v: [] for v in vertices.values()}
    edges: list[GammaEdge] = []

    def link(u, v, kind):
        edges.append(GammaEdge(u, v, kind))
        adjacency[u].append((v, kind))
        adjacency[v].append((u, kind))

    for mu in sorted(by_mu[0].keys() & by_mu[1].keys()):
        link(by_mu[0][mu], by_mu[1][mu], FIRST)

    boundary = set()
    for (fam, k), v in vertices.items():
        partner = vertices.get((_PARTNER[fam], k))
        if partner is None:
            boundary.add(v)
        elif fam in "ac":
            link(v, partner, SECOND)
        if abs(v.mu) > bound - max_mod:
            boundary.add(v)
    return GammaGraph(tau1, tau2, bound, vertices, edges, adjacency, boundary)


def degree_law_violations(g: GammaGraph) -> list[GammaVertex]:
    """Interior vertices breaking the degree-1/degree-2 law."""
    bad = []
    for v, nbrs in g.adjacency.items():
        if v in g.boundary:
            continue
        kinds = sorted(kind for _, kind in nbrs)
        if kinds not in ([SECOND], [FIRST, SECOND]):
            bad.append(v)
    return bad


def _walk(g: GammaGraph, start: GammaVertex, members: set[GammaVertex]) -> list[GammaVertex]:
    order, prev, cur = [start], None, start
    while True:
        nxt = sorted(w for w, _ in g.adjacency[cur] if w != prev and w in members)
        if not nxt or nxt[0] == start:
            return order
        prev, cur = cur, nxt[0]
        order.append(cur)


def components(g: GammaGraph) -> list[Component]:
    seen: set[GammaVertex] = set()
    out = []
    for root in sorted(g.adjacency):
        if root in seen:
            continue
        members = {root}
        stack = [root]
        while stack:
            v = stack.pop()
            for w, _ in g.adjacency[v]:
                if w not in members:
                    members.add(w)
                    stack.append(w)
        seen |= members
        comp_edges = tuple(_component_edges(g, members))
        if members & g.boundary:
            out.append(Component(tuple(sorted(members)), TRUNCATED, len(comp_edges), comp_edges))
            continue
        ends = [v for v in members if g.degree(v) == 1]
        if not ends:
            start = min(members)
            kind = TYPE1
        elif len(ends) == 2:
            start = min(ends, key=lambda v: v.mu)
            kind = TYPE2
        else:
            raise InvariantViolation(f"component with {len(ends)} degree-1 vertices")
        path = _walk(g, start, members)
        if len(path) != len(members):
            raise InvariantViolation("component is neither a simple path nor a simple cycle")
        out.append(Component(tuple(path), kind, len(comp_edges), comp_edges))
    return out


def _component_edges(g: GammaGraph, members: set[GammaVertex]):
    for v in sorted(members):
        for w, kind in g.adjacency[v]:
            if v < w:
                yield GammaEdge(v, w, kind)


def product_on_component(c: Component) -> dict[int, int]:
    """``x -> tau2(tau1(x))`` for every ``mu`` value of the component, read off its edges.

    The second-type edge at the {a, b} vertex of ``x`` gives ``tau1(x)``;
    the second-type edge at the {c, d} vertex of that value gives ``tau2``.
    A missing vertex means the transposition fixes the value.
    """
    step = ({}, {})
    at_mu = ({}, {})
    for v in c.vertices:
        at_mu[v.side - 1][v.mu] = v
    for e in c.edges:
        if e.kind == SECOND:
            side = e.u.side - 1
            step[side][e.u.mu] = e.v.mu
            step[side][e.v.mu] = e.u.mu
    sigma = {}
    for x in c.mu_values:
        y = step[0].get(x, x)
        sigma[x] = step[1].get(y, y)
    return sigma


def _cycles_of(sigma: dict[int, int]) -> list[CycleFragment]:
    seen, out = set(), []
    for x in sorted(sigma):
        if x in seen:
            continue
        cyc = [x]
        seen.add(x)
        y = sigma[x]
        while y != x:
            if y in seen or y not in sigma:
                raise InvariantViolation(f"product does not close into a cycle at {y}")
            cyc.append(y)
            seen.add(y)
            y = sigma[y]
        out.append(CycleFragment(tuple(cyc)))
    return out


def component_to_cycles(c: Component) -> list[CycleFragment]:
    """The cycles of ``tau1 * tau2`` supported on a finite component.

    Checks the cycle-length counts: two cycles of length ``n/4`` for a
    finite cycle of length ``n``, one cycle of ``(n+3)/2`` for a finite path.
    """
    if c.kind == TRUNCATED:
        raise ValueError("cannot read cycles off a truncated component")
    cycles = _cycles_of(product_on_component(c))
    n = c.length
    if c.kind == TYPE1:
        expected = [n // 4, n // 4] if n % 4 == 0 else None
    else:
        expected = [(n + 3) // 2] if n % 2 == 1 else None
    if expected is None or sorted(len(f) for f in cycles) != expected:
        raise InvariantViolation(
            f"{c.kind} component of length {n} gave cycles of lengths {[len(f) for f in cycles]}"
        )
    return cycles


def reconstruct_product(g: GammaGraph) -> dict[int, int]:
    """Partial table of ``tau1 * tau2`` on the values of all finite components."""
    table = {}
    for comp in components(g):
        if comp.kind == TRUNCATED:
            continue
        for frag in component_to_cycles(comp):
            e = frag.entries
            for i, x in enumerate(e):
                table[x] = e[(i + 1) % len(e)]
    return table


def _component_size_containing(tau1, tau2, bound, mu) -> Optional[int]:
    g = build_window(tau1, tau2, bound)
    for comp in components(g):
        if mu in comp.mu_values:
            return len(comp.vertices)
    return None


def truncated_growth(tau1: ClassTransposition, tau2: ClassTransposition, bound: int):
    """For each truncated component at ``bound``, its size at ``bound``, ``2*bound``, ``4*bound``.

    Returns ``(seed_mu, sizes, growing)`` triples where ``growing`` means the
    size strictly increased across both doublings. This is evidence of an
    infinite component, not a proof.
    """
    out = []
    for comp in components(build_window(tau1, tau2, bound)):
        if comp.kind != TRUNCATED:
            continue
        seed = min(comp.mu_values, key=lambda m: (abs(m), m))
        if abs(seed) > bound // 2:
            continue
        sizes = (
            len(comp.vertices),
            _component_size_containing(tau1, tau2, 2 * bound, seed),
            _component_size_containing(tau1, tau2, 4 * bound, seed),
        )
        out.append((seed, sizes, sizes[0] < sizes[1] < sizes[2]))
    return out

"""Exact order results for special pairs of class transpositions.

Covers the four pair predicates (horizontal, common vertex, equal residue,
equal modulus), the exact order rules that follow from them, and explicit
integer witnesses showing that the graph of a pair has arbitrarily long
components, which is what forces infinite order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count
from math import gcd
from typing import Optional

from .rcwa import evaluate, product_map
from .residue import (
    ClassTransposition,
    class_intersection,
    classes_disjoint,
    ct,
    is_horizontal,
)

INF = math.inf

# theorem tags carried by certificates and verdicts
COMMON_VERTEX = "common-vertex"
EQUAL_RESIDUE = "equal-residue"
EQUAL_MODULUS = "equal-modulus"
HORIZONTAL = "horizontal"
DISJOINT_SUPPORT = "disjoint-support"

HORIZONTAL_ORDERS = frozenset({1, 2, 3, 4, 6, 12})
EQUAL_MODULUS_ORDERS = frozenset({1, 2, 3, 6, INF})


@dataclass(frozen=True)
class PairClass:
    horizontal: bool = False
    common_vertex: bool = False
    equal_residue: bool = False
    equal_modulus: bool = False

    FLAGS = ("horizontal", "common_vertex", "equal_residue", "equal_modulus")

    def matches(self, mask: Optional["PairClass"]) -> bool:
        """True if every flag set in ``mask`` is also set here."""
        if mask is None:
            return True
        return all(getattr(self, f) or not getattr(mask, f) for f in self.FLAGS)

    def names(self) -> list[str]:
        return [f for f in self.FLAGS if getattr(self, f)]

    @classmethod
    def from_names(cls, names) -> "PairClass":
        names = [n.strip().replace("-", "_") for n in names if n.strip()]
        unknown = set(names) - set(cls.FLAGS)
        if unknown:
            raise ValueError(f"unknown pair flags: {sorted(unknown)}")
        return cls(**{n: True for n in names})


@dataclass(frozen=True)
class OrderCertificate:
    """``kind`` is "finite", "infinite" or "allowed".

    finite and infinite are exact claims about the order; "allowed" only
    constrains it to ``allowed`` (which may contain ``INF``).
    """

    kind: str
    source: str
    order: Optional[int] = None
    allowed: frozenset = field(default_factory=frozenset)
    witness_available: bool = False

    def admits(self, order) -> bool:
        if self.kind == "finite":
            return order == self.order
        if self.kind == "infinite":
            return order == INF
        return order in self.allowed

    def to_report(self) -> dict:
        if self.kind == "finite":
            verdict = self.order
        elif self.kind == "infinite":
            verdict = "inf"
        else:
            verdict = sorted((o for o in self.allowed if o != INF)) + (["inf"] if INF in self.allowed else [])
        return {"verdict": verdict, "source_theorem": self.source, "witness_available": self.witness_available}


def finite(n: int, source: str) -> OrderCertificate:
    return OrderCertificate("finite", source, order=n)


def infinite(source: str, witness_available: bool = False) -> OrderCertificate:
    return OrderCertificate("infinite", source, witness_available=witness_available)


def allowed(orders, source: str) -> OrderCertificate:
    return OrderCertificate("allowed", source, allowed=frozenset(orders))


# -- pair predicates ------------------------------------------------------------

def shared_vertex(tau1: ClassTransposition, tau2: ClassTransposition):
    """``(shared, other1, other2)`` for the first shared class, else None."""
    for i, u in enumerate(tau1.classes):
        for j, v in enumerate(tau2.classes):
            if u == v:
                return u, tau1.classes[1 - i], tau2.classes[1 - j]
    return None


def classify_pair(tau1: ClassTransposition, tau2: ClassTransposition) -> PairClass:
    return PairClass(
        horizontal=is_horizontal(tau1) and is_horizontal(tau2),
        common_vertex=shared_vertex(tau1, tau2) is not None,
        equal_residue=sorted((tau1.r1, tau1.r2)) == sorted((tau2.r1, tau2.r2)),
        equal_modulus=sorted((tau1.m1, tau1.m2)) == sorted((tau2.m1, tau2.m2)),
    )


def supports_disjoint(tau1: ClassTransposition, tau2: ClassTransposition) -> bool:
    return all(classes_disjoint(u, v) for u in tau1.classes for v in tau2.classes)


def disjoint_support_order(tau1: ClassTransposition, tau2: ClassTransposition) -> Optional[OrderCertificate]:
    if tau1 == tau2:
        return finite(1, DISJOINT_SUPPORT)
    if supports_disjoint(tau1, tau2):
        return finite(2, DISJOINT_SUPPORT)
    return None


# -- common vertex ----------------------------------------------------------------

def common_vertex_order(tau1: ClassTransposition, tau2: ClassTransposition) -> OrderCertificate:
    """Order 1, 3 or infinity for transpositions sharing a class.

    With shared class ``r(m)`` and remaining classes ``A`` and ``B``: order 1
    when ``A == B``, infinite when they meet but differ, 3 when disjoint.
    """
    found = shared_vertex(tau1, tau2)
    if found is None:
        raise ValueError("pair has no common vertex")
    _, other1, other2 = found
    if other1 == other2:
        return finite(1, COMMON_VERTEX)
    if class_intersection(other1, other2) is not None:
        return infinite(COMMON_VERTEX, witness_available=gcd(other1.m, other2.m) == 1)
    return finite(3, COMMON_VERTEX)


@dataclass(frozen=True)
class InfiniteWitness:
    """Integer solution of a chain ``p_i*x_i - q_i*x_(i+1) = d_i``, i = 1..n.

    ``distinct_groups`` lists index groups (0-based) whose entries must be
    pairwise distinct.
    """

    chain: tuple[int, ...]
    n: int
    kind: str
    equations: tuple[tuple[int, int, int], ...]
    distinct_groups: tuple[tuple[int, ...], ...]

    def satisfies_equations(self) -> bool:
        x = self.chain
        return len(x) == len(self.equations) + 1 and all(
            p * x[i] - q * x[i + 1] == d for i, (p, q, d) in enumerate(self.equations)
        )

    def satisfies_distinctness(self) -> bool:
        return all(len({self.chain[i] for i in grp}) == len(grp) for grp in self.distinct_groups)

    def verify(self) -> bool:
        return self.satisfies_equations() and self.satisfies_distinctness()


def _solve_linear(a: int, b: int, e: int) -> tuple[int, int]:
    """A particular ``(t, x)`` with ``a*t - b*x == e``; requires gcd(a, b) | e."""
    g = gcd(a, b)
    if e % g:
        raise ValueError(f"{a}*t - {b}*x = {e} has no integer solution")
    a, b, e = a // g, b // g, e // g
    t = (e * pow(a, -1, b)) % b if b > 1 else 0
    x = (a * t - e) // b
    return t, x


def common_vertex_chain_witness(tau1: ClassTransposition, tau2: ClassTransposition, n: int) -> InfiniteWitness:
    """Pairwise distinct ``x_1..x_(n+1)`` with ``m2*x_i - m4*x_(i+1) = r4 - r2``.

    ``r2(m2)`` and ``r4(m4)`` are the two classes not shared by the pair.
    Each solution links ``b_(x_i)`` to ``d_(x_(i+1))``, so the graph has a
    component of length at least ``n``. Built by extending a one-parameter
    family one equation at a time: the newest entry is always
    ``x~ + m2**k * t``, the older ones get their parameter rescaled by m4.
    Only the coprime case ``gcd(m2, m4) == 1`` is handled.
    """
    if n < 1:
        raise ValueError("chain length must be >= 1")
    found = shared_vertex(tau1, tau2)
    if found is None:
        raise ValueError("pair has no common vertex")
    _, c2, c4 = found
    if c2 == c4 or class_intersection(c2, c4) is None:
        raise ValueError("the non-shared classes must intersect and differ")
    m2, r2, m4, r4 = c2.m, c2.r, c4.m, c4.r
    if gcd(m2, m4) != 1:
        raise ValueError(f"witness construction needs gcd(m2, m4) == 1, got gcd({m2}, {m4}) > 1")
    d = r4 - r2

    # entries are (offset, slope) in the free parameter t
    t0, x2 = _solve_linear(m2, m4, d)
    family = [(t0, m4), (x2, m2)]
    for _ in range(1, n):
        p, q = family[-1]
        # m2*(p + q*t) - m4*x = d  ->  (m2*q)*t - m4*x = d - m2*p
        t_off, x_off = _solve_linear(m2 * q, m4, d - m2 * p)
        family = [(po + qo * t_off, qo * m4) for po, qo in family]
        family.append((x_off, m2 * q))

    equations = tuple((m2, m4, d) for _ in range(n))
    groups = (tuple(range(n + 1)),)
    for s in _small_integers():
        chain = tuple(p + q * s for p, q in family)
        w = InfiniteWitness(chain, n, COMMON_VERTEX, equations, groups)
        if w.satisfies_distinctness():
            break
    if not w.verify():
        raise RuntimeError("common-vertex witness failed substitution check")
    return w


def _small_integers():
    yield 0
    for k in count(1):
        yield k
        yield -k


# -- equal residue ------------------------------------------------------------------

def equal_residue_alignment(tau1: ClassTransposition, tau2: ClassTransposition):
    """``(l, r, m1, m2, m3, m4)`` with tau1 = [l(m1), r(m2)], tau2 = [l(m3), r(m4)]."""
    if sorted((tau1.r1, tau1.r2)) != sorted((tau2.r1, tau2.r2)):
        raise ValueError("pair is not equal-residue")
    l, m1, r, m2 = tau1.r1, tau1.m1, tau1.r2, tau1.m2
    if tau2.r1 == l:
        m3, m4 = tau2.m1, tau2.m2
    else:
        m3, m4 = tau2.m2, tau2.m1
    return l, r, m1, m2, m3, m4


def equal_residue_infinite(tau1: ClassTransposition, tau2: ClassTransposition) -> Optional[OrderCertificate]:
    """Infinite order when the modulus ratios differ, ``m1*m4 != m2*m3``."""
    _, _, m1, m2, m3, m4 = equal_residue_alignment(tau1, tau2)
    if m1 * m4 != m2 * m3:
        return infinite(EQUAL_RESIDUE, witness_available=True)
    return None


def equal_residue_chain_witness(tau1: ClassTransposition, tau2: ClassTransposition, n: int, h: int = 1) -> InfiniteWitness:
    """Solution of the alternating ``2n``-equation system.

    ``m1*x_(2k-1) = m3*x_(2k)`` and ``m4*x_(2k) = m2*x_(2k+1)``; the solution is
    the geometric progression with ratios ``m1/m3`` and ``m4/m2`` starting from
    ``x_1 = (m2*m3)**n * h``, which makes every entry integral.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    l, r, m1, m2, m3, m4 = equal_residue_alignment(tau1, tau2)
    if m1 * m4 == m2 * m3:
        raise ValueError("modulus ratios are equal; no witness exists")
    if h == 0:
        raise ValueError("h = 0 gives the degenerate all-zero chain")
    x = Fraction((m2 * m3) ** n * h)
    chain = [x]
    for i in range(2 * n):
        x = x * Fraction(m1, m3) if i % 2 == 0 else x * Fraction(m4, m2)
        chain.append(x)
    if any(v.denominator != 1 for v in chain):
        raise RuntimeError("equal-residue witness is not integral")
    equations = tuple((m1, m3, 0) if i % 2 == 0 else (m4, m2, 0) for i in range(2 * n))
    groups = (tuple(range(0, 2 * n + 1, 2)), tuple(range(1, 2 * n + 1, 2)))
    w = InfiniteWitness(tuple(int(v) for v in chain), n, EQUAL_RESIDUE, equations, groups)
    if not w.verify():
        raise RuntimeError("equal-residue witness failed substitution check")
    return w


def equal_residue_path_values(tau1: ClassTransposition, tau2: ClassTransposition, w: InfiniteWitness) -> list[int]:
    """Integers ``l + m1*x_1, r + m4*x_2, l + m1*x_3, ...`` met along the witness path."""
    l, r, m1, _, _, m4 = equal_residue_alignment(tau1, tau2)
    return [l + m1 * x if i % 2 == 0 else r + m4 * x for i, x in enumerate(w.chain[:-1])]


# -- equal modulus and horizontal -----------------------------------------------------

def equal_modulus_alignments(tau1: ClassTransposition, tau2: ClassTransposition):
    """All labelings ``(r1, r2, r3, r4, m, n)`` with tau1 = [r1(m), r2(n)], tau2 = [r3(m), r4(n)]."""
    if sorted((tau1.m1, tau1.m2)) != sorted((tau2.m1, tau2.m2)):
        raise ValueError("pair is not equal-modulus")
    out = []
    for u1, u2 in (tau1.classes, tau1.classes[::-1]):
        for v1, v2 in (tau2.classes, tau2.classes[::-1]):
            if u1.m == v1.m and u2.m == v2.m:
                out.append((u1.r, u2.r, v1.r, v2.r, u1.m, u2.m))
    return out


def equal_modulus_hypothesis(tau1: ClassTransposition, tau2: ClassTransposition) -> bool:
    return any(r1 <= r4 and r3 <= r2 for r1, r2, r3, r4, _, _ in equal_modulus_alignments(tau1, tau2))


def equal_modulus_allowed_set(tau1: ClassTransposition, tau2: ClassTransposition) -> Optional[OrderCertificate]:
    """Orders confined to {1, 2, 3, 6, inf} when some labeling has r1 <= r4 and r3 <= r2."""
    if equal_modulus_hypothesis(tau1, tau2):
        return allowed(EQUAL_MODULUS_ORDERS, EQUAL_MODULUS)
    return None


def horizontal_order_set(tau1: ClassTransposition, tau2: ClassTransposition) -> OrderCertificate:
    if not (is_horizontal(tau1) and is_horizontal(tau2)):
        raise ValueError("both transpositions must be horizontal")
    return allowed(HORIZONTAL_ORDERS, HORIZONTAL)


# -- the parity-swap family -------------------------------------------------------------

def parity_swap_cycle_prefix(k: int, m: int, t_max: int) -> list[int]:
    """Forward orbit of 2 under ``[0(2),1(2)] * [0(2),k(m)]`` in closed form.

    For odd ``k < m`` and even ``m = 2*h >= 4`` the orbit starts ``2, 3`` (or
    ``2, 0, 1`` when k == 3) and continues with the terms ``t = 1..t_max`` of

        k + (k-1) * (h**(t-1) - 1)/(h - 1) * h + 2*h**t      (k != 3)
        3 + 2 * (h**(t-1) - 1)/(h - 1) * h                  (k == 3)

    The values grow geometrically, so the product has infinite order.
    """
    if k < 1 or k % 2 == 0:
        raise ValueError("k must be a positive odd integer")
    if m < 4 or m % 2:
        raise ValueError("m must be even and >= 4")
    if k >= m:
        raise ValueError("k must be smaller than m")
    if t_max < 0:
        raise ValueError("t_max must be >= 0")
    h = m // 2

    def geometric(t):
        return (h ** (t - 1) - 1) // (h - 1)

    if k == 3:
        return [2, 0, 1] + [3 + 2 * geometric(t) * h for t in range(1, t_max + 1)]
    return [2, 3] + [k + (k - 1) * geometric(t) * h + 2 * h**t for t in range(1, t_max + 1)]


def parity_swap_orbit(k: int, m: int, length: int) -> list[int]:
    """The first ``length`` points of the orbit of 2, by direct iteration."""
    sigma = product_map(ct(0, 2, 1, 2), ct(0, 2, k, m))
    out = [2]
    while len(out) < length:
        out.append(evaluate(sigma, out[-1]))
    return out


__all__ = [
    "INF",
    "PairClass",
    "OrderCertificate",
    "InfiniteWitness",
    "classify_pair",
    "shared_vertex",
    "supports_disjoint",
    "disjoint_support_order",
    "common_vertex_order",
    "common_vertex_chain_witness",
    "equal_residue_alignment",
    "equal_residue_infinite",
    "equal_residue_chain_witness",
    "equal_residue_path_values",
    "equal_modulus_alignments",
    "equal_modulus_hypothesis",
    "equal_modulus_allowed_set",
    "horizontal_order_set",
    "parity_swap_cycle_prefix",
    "parity_swap_orbit",
]

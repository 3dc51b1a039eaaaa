"""Residue classes r(m) and class transpositions of the integers.

A class transposition swaps ``r1 + k*m1`` with ``r2 + k*m2`` for every integer
``k`` and fixes everything else. It exists exactly when the two residue
classes are disjoint, i.e. when ``gcd(m1, m2)`` does not divide ``r1 - r2``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd, lcm
from typing import Optional


class NotAClassTransposition(ValueError):
    """Raised when two residue classes intersect."""


@dataclass(frozen=True, order=True)
class ResidueClass:
    """The set ``r + m*Z`` with ``0 <= r < m``.

    Field order is (m, r) so the dataclass ordering sorts by modulus first.
    """

    m: int
    r: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"modulus must be >= 1, got {self.m}")
        if not 0 <= self.r < self.m:
            raise ValueError(f"residue {self.r} not reduced modulo {self.m}")

    def __contains__(self, x: int) -> bool:
        return x % self.m == self.r

    def __str__(self):
        return f"{self.r}({self.m})"

    def __repr__(self):
        return f"ResidueClass({self})"


def make_residue_class(r: int, m: int) -> ResidueClass:
    if m <= 0:
        raise ValueError(f"modulus must be >= 1, got {m}")
    return ResidueClass(m, r % m)


def classes_disjoint(c1: ResidueClass, c2: ResidueClass) -> bool:
    return (c1.r - c2.r) % gcd(c1.m, c2.m) != 0


def class_intersection(c1: ResidueClass, c2: ResidueClass) -> Optional[ResidueClass]:
    """Intersection of two classes as a class modulo ``lcm(m1, m2)``, or None."""
    g = gcd(c1.m, c2.m)
    diff = c2.r - c1.r
    if diff % g:
        return None
    # x = r1 + m1*t with m1*t = diff (mod m2)
    m2g = c2.m // g
    t = (diff // g) * pow(c1.m // g, -1, m2g) if m2g > 1 else 0
    return make_residue_class(c1.r + c1.m * t, lcm(c1.m, c2.m))


def class_contains(outer: ResidueClass, inner: ResidueClass) -> bool:
    """True iff ``inner`` is a subset of ``outer``."""
    return inner.m % outer.m == 0 and inner.r % outer.m == outer.r


@dataclass(frozen=True, order=True)
class ClassTransposition:
    """An involution of Z interchanging two disjoint residue classes.

    Stored canonically with ``c1 <= c2`` under (modulus, residue) order, so
    ``make_class_transposition(a, b) == make_class_transposition(b, a)``.
    Use :func:`make_class_transposition` rather than the constructor.
    """

    c1: ResidueClass
    c2: ResidueClass

    def __post_init__(self):
        if not classes_disjoint(self.c1, self.c2):
            raise NotAClassTransposition(
                f"not a class transposition: classes intersect ({self.c1}, {self.c2})"
            )
        if self.c2 < self.c1:
            raise ValueError("class transposition not in canonical order")

    @property
    def r1(self) -> int:
        return self.c1.r

    @property
    def m1(self) -> int:
        return self.c1.m

    @property
    def r2(self) -> int:
        return self.c2.r

    @property
    def m2(self) -> int:
        return self.c2.m

    @property
    def classes(self) -> tuple[ResidueClass, ResidueClass]:
        return (self.c1, self.c2)

    def __call__(self, x: int) -> int:
        return apply(self, x)

    def __str__(self):
        return f"[{self.c1},{self.c2}]"

    def __repr__(self):
        return f"ClassTransposition{self}"


def make_class_transposition(c1: ResidueClass, c2: ResidueClass) -> ClassTransposition:
    if not classes_disjoint(c1, c2):
        raise NotAClassTransposition(f"not a class transposition: classes intersect ({c1}, {c2})")
    if c2 < c1:
        c1, c2 = c2, c1
    return ClassTransposition(c1, c2)


def ct(r1: int, m1: int, r2: int, m2: int) -> ClassTransposition:
    """Shorthand: ``ct(0, 2, 3, 4)`` is the transposition of 0(2) and 3(4)."""
    return make_class_transposition(make_residue_class(r1, m1), make_residue_class(r2, m2))


def apply(tau: ClassTransposition, x: int) -> int:
    (m1, r1), (m2, r2) = (tau.m1, tau.r1), (tau.m2, tau.r2)
    k, rem = divmod(x - r1, m1)
    if rem == 0:
        return r2 + k * m2
    k, rem = divmod(x - r2, m2)
    if rem == 0:
        return r1 + k * m1
    return x


def support_contains(tau: ClassTransposition, x: int) -> bool:
    return x in tau.c1 or x in tau.c2


def is_horizontal(tau: ClassTransposition) -> bool:
    return tau.m1 == tau.m2


# -- textual forms ----------------------------------------------------------

_CLASS_RE = re.compile(r"\s*(-?\d+)\s*\(\s*(\d+)\s*\)\s*")
_CT_RE = re.compile(r"\s*\[\s*(-?\d+)\s*\(\s*(\d+)\s*\)\s*,\s*(-?\d+)\s*\(\s*(\d+)\s*\)\s*\]\s*")


def parse_residue_class(text: str) -> ResidueClass:
    """Parse ``"r(m)"``. The residue is reduced modulo m."""
    match = _CLASS_RE.fullmatch(text)
    if not match:
        raise ValueError(f"cannot parse residue class {text!r}; expected 'r(m)'")
    r, m = map(int, match.groups())
    return make_residue_class(r, m)


def parse_class_transposition(text: str) -> ClassTransposition:
    """Parse ``"[r1(m1),r2(m2)]"`` (whitespace allowed)."""
    match = _CT_RE.fullmatch(text)
    if not match:
        raise ValueError(f"cannot parse class transposition {text!r}; expected '[r1(m1),r2(m2)]'")
    r1, m1, r2, m2 = map(int, match.groups())
    return make_class_transposition(make_residue_class(r1, m1), make_residue_class(r2, m2))

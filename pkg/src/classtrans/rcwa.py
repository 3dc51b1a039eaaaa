"""Residue-class-wise affine (rcwa) permutations of Z.

An :class:`RcwaMap` with modulus ``M`` stores one affine piece per residue
class modulo ``M``; on the class of ``r`` it acts as ``x -> (a*x + b) // c``.
Products of class transpositions are exactly maps of this kind, so this
module gives an exact symbolic handle on ``tau1 * tau2`` and its powers.

Pieces are held in three parallel numpy arrays. While every intermediate
fits comfortably into int64 the arithmetic is vectorised in int64; when a
bound check says it might not, the computation silently switches to
object arrays of Python ints, which are exact. Setting the environment
variable ``CT_MAX_INT_BITS`` turns oversize coefficients into a
:class:`CoefficientOverflow` instead.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache, reduce
from math import gcd, lcm
from typing import Iterator, Optional, Union

import numpy as np

from .residue import ClassTransposition, ResidueClass

# headroom below 2**63 so that a sum of two checked products cannot wrap
_INT64_SAFE = 2**62


class CoefficientOverflow(OverflowError):
    """A coefficient exceeded the integer width allowed by CT_MAX_INT_BITS."""


class InvariantViolation(RuntimeError):
    """Internal consistency check failed (e.g. an inexact division)."""


class ModulusLimitExceeded(Exception):
    """Raised by :func:`compose` when the refined modulus exceeds ``max_modulus``."""

    def __init__(self, modulus: int):
        super().__init__(f"refined modulus {modulus} exceeds the limit")
        self.modulus = modulus


@dataclass(frozen=True)
class AffinePiece:
    cls: ResidueClass
    a: int
    b: int
    c: int

    def __call__(self, x: int) -> int:
        q, rem = divmod(self.a * x + self.b, self.c)
        if rem:
            raise InvariantViolation(f"piece {self} is not integral at {x}")
        return q

    def __str__(self):
        return f"{self.cls}: ({self.a}*x{self.b:+d})/{self.c}"


def _max_int_bits() -> Optional[int]:
    raw = os.environ.get("CT_MAX_INT_BITS")
    return int(raw) if raw else None


def _absmax(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    if arr.dtype == object:
        return int(max(abs(int(arr.max())), abs(int(arr.min()))))
    return int(np.abs(arr).max())


def _check_width(*arrays: np.ndarray) -> None:
    bits = _max_int_bits()
    if bits is None:
        return
    limit = 2**bits
    for arr in arrays:
        if _absmax(arr) >= limit:
            raise CoefficientOverflow(f"coefficient exceeds CT_MAX_INT_BITS={bits}")


def _normalize(a: np.ndarray, b: np.ndarray, c: np.ndarray):
    """Make c > 0 and gcd(a, b, c) == 1 piecewise."""
    sign = np.where(c < 0, -1, 1)
    if a.dtype == object:
        sign = sign.astype(object)
    a, b, c = a * sign, b * sign, c * sign
    g = np.gcd(a, c)
    shared = g > 1
    if not shared.any():
        return a, b, c
    g[shared] = np.gcd(g[shared], b[shared])
    return a // g, b // g, c // g


def _as_int64_if_small(*arrays: np.ndarray):
    if all(arr.dtype != object for arr in arrays):
        return arrays
    if max(_absmax(arr) for arr in arrays) < _INT64_SAFE:
        return tuple(arr.astype(np.int64) for arr in arrays)
    return arrays


class RcwaMap:
    """A permutation of Z, affine on each residue class modulo ``modulus``.

    Instances are treated as immutable. Construction normalises each piece
    but does not merge classes; call :func:`canonicalize` for the minimal
    modulus form. Equality compares canonical forms, so two maps are equal
    iff they are the same function.
    """

    __slots__ = ("modulus", "a", "b", "c", "_canonical")

    def __init__(self, modulus: int, a, b, c, *, _trusted: bool = False):
        if modulus < 1:
            raise ValueError("modulus must be >= 1")
        a, b, c = (np.asarray(v) for v in (a, b, c))
        if not (len(a) == len(b) == len(c) == modulus):
            raise ValueError("need exactly one piece per residue class")
        if not _trusted:
            a, b, c = (v.astype(object) if v.dtype == object else v.astype(np.int64) for v in (a, b, c))
            if np.any(c == 0):
                raise ValueError("piece divisor must be nonzero")
            a, b, c = _normalize(a, b, c)
            a, b, c = _as_int64_if_small(a, b, c)
            r = np.arange(modulus)
            if np.any((a * modulus) % c) or np.any((a * r + b) % c):
                raise ValueError("piece is not integral on its class")
        for v in (a, b, c):
            v.setflags(write=False)
        self.modulus = int(modulus)
        self.a, self.b, self.c = a, b, c
        self._canonical: Optional[RcwaMap] = None

    # -- views ---------------------------------------------------------------

    def piece(self, r: int) -> AffinePiece:
        r %= self.modulus
        return AffinePiece(ResidueClass(self.modulus, r), int(self.a[r]), int(self.b[r]), int(self.c[r]))

    def pieces(self) -> Iterator[AffinePiece]:
        for r in range(self.modulus):
            yield self.piece(r)

    def max_coefficient(self) -> int:
        return max(_absmax(self.a), _absmax(self.c))

    def __call__(self, x: int) -> int:
        return evaluate(self, x)

    def __mul__(self, other: "RcwaMap") -> "RcwaMap":
        # left-to-right: (f * g)(x) = g(f(x))
        return canonicalize(compose(self, other))

    def __pow__(self, n: int) -> "RcwaMap":
        return power(self, n)

    def __eq__(self, other):
        if not isinstance(other, RcwaMap):
            return NotImplemented
        f, g = canonicalize(self), canonicalize(other)
        return (
            f.modulus == g.modulus
            and np.array_equal(f.a, g.a)
            and np.array_equal(f.b, g.b)
            and np.array_equal(f.c, g.c)
        )

    def __hash__(self):
        f = canonicalize(self)
        return hash((f.modulus, tuple(int(v) for v in f.a), tuple(int(v) for v in f.b), tuple(int(v) for v in f.c)))

    def __repr__(self):
        return f"<RcwaMap modulus={self.modulus}>"

    def table(self) -> str:
        """Piece table, one ``class: (a*x+b)/c`` line per residue class."""
        return "\n".join(str(p) for p in self.pieces())


# -- construction --------------------------------------------------------------

def identity_map() -> RcwaMap:
    one = np.ones(1, dtype=np.int64)
    return RcwaMap(1, one, np.zeros(1, dtype=np.int64), one)


def from_pieces(modulus: int, pieces) -> RcwaMap:
    """Build a map from ``(a, b, c)`` triples, one per class ``0..modulus-1``."""
    a, b, c = zip(*pieces) if modulus else ((), (), ())
    return RcwaMap(modulus, np.array(a, dtype=object), np.array(b, dtype=object), np.array(c, dtype=object))


@lru_cache(maxsize=8192)
def from_class_transposition(tau: ClassTransposition) -> RcwaMap:
    """The transposition as an rcwa map modulo ``lcm(m1, m2)``.

    On ``r1(m1)`` it is ``x -> (m2*x + r2*m1 - r1*m2) / m1`` and symmetrically
    on ``r2(m2)``; identity elsewhere.
    """
    (r1, m1), (r2, m2) = (tau.r1, tau.m1), (tau.r2, tau.m2)
    modulus = lcm(m1, m2)
    pieces = []
    for r in range(modulus):
        if r % m1 == r1:
            pieces.append((m2, r2 * m1 - r1 * m2, m1))
        elif r % m2 == r2:
            pieces.append((m1, r1 * m2 - r2 * m1, m2))
        else:
            pieces.append((1, 0, 1))
    return canonicalize(from_pieces(modulus, pieces))


def product_map(tau1: ClassTransposition, tau2: ClassTransposition) -> RcwaMap:
    """``tau1 * tau2`` with ``tau1`` applied first."""
    return canonicalize(compose(from_class_transposition(tau1), from_class_transposition(tau2)))


# -- evaluation and composition ------------------------------------------------

def evaluate(f: RcwaMap, x: int) -> int:
    r = x % f.modulus
    q, rem = divmod(int(f.a[r]) * x + int(f.b[r]), int(f.c[r]))
    if rem:
        raise InvariantViolation(f"inexact division evaluating {f.piece(r)} at {x}")
    return q


def refinement_modulus(f: RcwaMap, g: RcwaMap) -> int:
    """Smallest uniform modulus on which ``g(f(x))`` is affine piecewise.

    Class ``r(M)`` of ``f`` maps onto the progression ``f(r) + s*t`` with
    ``s = a*M/c``; it must be split into ``g.modulus / gcd(s, g.modulus)``
    subclasses before every image lies in a single class of ``g``.
    """
    if g.modulus == 1:
        return f.modulus
    fa = f.a if _absmax(f.a) * f.modulus < _INT64_SAFE else f.a.astype(object)
    step = (fa * f.modulus) // f.c
    splits = {int(v) for v in np.unique(g.modulus // np.gcd(step, g.modulus))}
    return f.modulus * reduce(lcm, splits, 1)


def compose(f: RcwaMap, g: RcwaMap, *, max_modulus: Optional[int] = None) -> RcwaMap:
    """The map ``x -> g(f(x))`` (apply ``f`` first), not yet canonicalised.

    Raises :class:`ModulusLimitExceeded` before allocating anything when the
    refined modulus is larger than ``max_modulus``.
    """
    L = refinement_modulus(f, g)
    if max_modulus is not None and L > max_modulus:
        raise ModulusLimitExceeded(L)
    fa, fb, fc = f.a, f.b, f.c
    ga, gb, gc = g.a, g.b, g.c
    amax_f, bmax_f, cmax_f = _absmax(fa), _absmax(fb), _absmax(fc)
    amax_g, bmax_g, cmax_g = _absmax(ga), _absmax(gb), _absmax(gc)
    small = (
        amax_f * L + bmax_f < _INT64_SAFE
        and amax_g * amax_f < _INT64_SAFE
        and amax_g * bmax_f + bmax_g * cmax_f < _INT64_SAFE
        and cmax_g * cmax_f < _INT64_SAFE
    )
    if small:
        cast = lambda v: v.astype(np.int64)  # noqa: E731
        x0 = np.arange(L, dtype=np.int64)
    else:
        cast = lambda v: v.astype(object)  # noqa: E731
        x0 = np.arange(L, dtype=np.int64).astype(object)
    fa, fb, fc, ga, gb, gc = map(cast, (fa, fb, fc, ga, gb, gc))

    i = np.arange(L) % f.modulus if f.modulus < L else np.arange(L)
    pa, pb, pc = fa[i], fb[i], fc[i]
    num = pa * x0 + pb
    y0 = num // pc
    if np.any(num - y0 * pc):
        raise InvariantViolation("inexact division during composition")
    j = (y0 % g.modulus).astype(np.int64)
    qa, qb, qc = ga[j], gb[j], gc[j]
    a = qa * pa
    b = qa * pb + qb * pc
    c = qc * pc
    a, b, c = _normalize(a, b, c)
    _check_width(a, b, c, y0)
    a, b, c = _as_int64_if_small(a, b, c)
    return RcwaMap(L, a, b, c, _trusted=True)


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def canonicalize(f: RcwaMap) -> RcwaMap:
    """Same function on the smallest modulus; idempotent."""
    if f._canonical is not None:
        return f._canonical
    M = f.modulus
    a, b, c = f.a, f.b, f.c
    abc = np.stack((a, b, c))
    for p in _prime_factors(M):
        while M % p == 0:
            d = M // p
            if not (abc.reshape(3, p, d) == abc[:, None, :d]).all():
                break
            abc, M = abc[:, :d], d
    a, b, c = (row.astype(v.dtype) for row, v in zip(abc, (a, b, c)))
    if M == f.modulus:
        f._canonical = f
        return f
    out = RcwaMap(M, a.copy(), b.copy(), c.copy(), _trusted=True)
    out._canonical = out
    f._canonical = out
    return out


def is_identity(f: RcwaMap) -> bool:
    return bool(np.all(f.a == 1) and np.all(f.b == 0) and np.all(f.c == 1))


def inverse(f: RcwaMap) -> RcwaMap:
    """Inverse permutation. Each piece's image ``f(r) + s*t`` is a class mod ``|s|``."""
    f = canonicalize(f)
    step = (f.a.astype(object) * f.modulus) // f.c
    M = reduce(lcm, {abs(int(v)) for v in np.unique(step)}, 1)
    pieces = {}
    for r in range(f.modulus):
        y0, s = evaluate(f, r), abs(int(step[r]))
        a, b, c = int(f.a[r]), int(f.b[r]), int(f.c[r])
        for y in range(y0 % s, M, s):
            # x = (c*y - b) / a
            pieces[y] = (c, -b, a)
    if len(pieces) != M:
        raise InvariantViolation("map is not a bijection")
    return canonicalize(from_pieces(M, [pieces[y] for y in range(M)]))


def power(f: RcwaMap, n: int, *, max_modulus: Optional[int] = None) -> RcwaMap:
    """``f**n``; negative ``n`` inverts first.

    Built one factor at a time as ``f**k`` followed by ``f``. Squaring looks
    cheaper but composing two large tables refines to roughly the product of
    their moduli, while appending ``f`` multiplies by at most ``f.modulus``.
    """
    if n < 0:
        return power(inverse(f), -n, max_modulus=max_modulus)
    base = canonicalize(f)
    result = identity_map()
    for _ in range(n):
        result = canonicalize(compose(result, base, max_modulus=max_modulus))
    return result


def injective_on_window(f: RcwaMap, start: int, length: int) -> bool:
    images = [evaluate(f, x) for x in range(start, start + length)]
    return len(set(images)) == len(images)


# -- order scan -----------------------------------------------------------------

@dataclass(frozen=True)
class Finite:
    n: int


@dataclass(frozen=True)
class ModulusBlowup:
    """A power's modulus passed the limit.

    ``canonical`` is False when the scan stopped on the refined modulus of
    the next composite, which was too large to materialise.
    """

    step: int
    modulus_reached: int
    canonical: bool = True


@dataclass(frozen=True)
class Inconclusive:
    steps_done: int


OrderScanResult = Union[Finite, ModulusBlowup, Inconclusive]

DEFAULT_N_MAX = 512
DEFAULT_MOD_MAX = 10**6
# refined composites up to this multiple of mod_max are built and canonicalised
MATERIALIZE_FACTOR = 4


def power_order_scan(f: RcwaMap, n_max: int = DEFAULT_N_MAX, mod_max: int = DEFAULT_MOD_MAX) -> OrderScanResult:
    """Walk ``f, f**2, ...`` until the identity, a modulus blowup, or ``n_max``."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    f = canonicalize(f)
    if mod_max < f.modulus:
        raise ValueError(f"mod_max {mod_max} is below the modulus {f.modulus} of the map")
    current = f
    for step in range(1, n_max + 1):
        if is_identity(current):
            return Finite(step)
        if current.modulus > mod_max:
            return ModulusBlowup(step, current.modulus)
        if step == n_max:
            break
        try:
            current = canonicalize(compose(current, f, max_modulus=MATERIALIZE_FACTOR * mod_max))
        except ModulusLimitExceeded as exc:
            return ModulusBlowup(step + 1, exc.modulus, canonical=False)
    return Inconclusive(n_max)

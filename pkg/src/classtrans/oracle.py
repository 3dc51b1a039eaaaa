"""One verdict on ``ord(tau1 * tau2)``, with a record of how it was reached.

Stages, in order:

1. equal transpositions: order 1
2. disjoint supports: order 2
3. common-vertex rule (exact: 1, 3 or infinite)
4. equal-residue rule (infinite when the modulus ratios differ)
5. symbolic power scan of the product
6. heuristic infinite verdict from modulus blowup and/or an escaping orbit

A finite order is never reported without an exact check: certificate
orders must have an identity n-th power and no identity ``n/p`` power for
any prime ``p | n``; scan orders come from testing every power up to n.
Allowed-set results (horizontal pairs, equal-modulus pairs) never decide
anything; they are checked against the verdict and recorded in
``consistent``.

Stage 5 is preceded by a cheap orbit probe. When every probed orbit closes,
the lcm of the cycle lengths caps the first scan. When an orbit escapes, the
power scan only runs up to ``escape_mod_max`` as corroboration.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

from . import certificates as cert
from .rcwa import (
    MATERIALIZE_FACTOR,
    Finite,
    Inconclusive,
    ModulusBlowup,
    ModulusLimitExceeded,
    RcwaMap,
    canonicalize,
    compose,
    is_identity,
    power,
    power_order_scan,
    product_map,
)
from .residue import ClassTransposition

FINITE = "finite"
INFINITE_CERTIFIED = "infinite-certified"
INFINITE_HEURISTIC = "infinite-heuristic"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class OracleConfig:
    power_n_max: int = 512
    power_mod_max: int = 10**6
    orbit_step_max: int = 10**4
    orbit_value_bound: int = 10**9
    window_bound: int = 10**3
    # starts probed per residue class of the product
    orbit_window_factor: int = 2
    # modulus cap of the corroborating scan once an orbit has escaped
    escape_mod_max: int = 2**12

    def __post_init__(self):
        for name, value in self.__dict__.items():
            if value <= 0:
                raise ValueError(f"{name} must be positive")


# -- orbits -------------------------------------------------------------------------

@dataclass(frozen=True)
class Cycle:
    length: int


@dataclass(frozen=True)
class Escaped:
    step: int
    value: int


@dataclass(frozen=True)
class StepBudgetExhausted:
    steps: int


OrbitResult = Union[Cycle, Escaped, StepBudgetExhausted]


def _fast_eval(sigma: RcwaMap):
    M = sigma.modulus
    a, b, c = ([int(v) for v in arr] for arr in (sigma.a, sigma.b, sigma.c))

    def step(x: int) -> int:
        r = x % M
        return (a[r] * x + b[r]) // c[r]

    return step


def orbit_trace(sigma: RcwaMap, x0: int, cfg: OracleConfig = OracleConfig(), *, _step=None) -> OrbitResult:
    step = _step or _fast_eval(sigma)
    bound = cfg.orbit_value_bound
    x = x0
    for n in range(1, cfg.orbit_step_max + 1):
        x = step(x)
        if x == x0:
            return Cycle(n)
        if abs(x) > bound:
            return Escaped(n, x)
    return StepBudgetExhausted(cfg.orbit_step_max)


@dataclass(frozen=True)
class OrbitProbe:
    """Outcome of tracing the orbits of ``0 .. modulus*factor - 1``.

    ``cycle_lcm`` is set when every orbit closed. Otherwise ``start`` and
    ``result`` describe the first orbit that did not.
    """

    cycle_lcm: Optional[int] = None
    start: Optional[int] = None
    result: Optional[OrbitResult] = None


def probe_orbits(sigma: RcwaMap, cfg: OracleConfig = OracleConfig()) -> OrbitProbe:
    step = _fast_eval(sigma)
    done: set[int] = set()
    acc = 1
    for x0 in range(sigma.modulus * cfg.orbit_window_factor):
        if x0 in done:
            continue
        res = orbit_trace(sigma, x0, cfg, _step=step)
        if not isinstance(res, Cycle):
            return OrbitProbe(start=x0, result=res)
        acc = math.lcm(acc, res.length)
        x = x0
        for _ in range(res.length):
            done.add(x)
            x = step(x)
    return OrbitProbe(cycle_lcm=acc)


def finite_order_via_orbits(sigma: RcwaMap, cfg: OracleConfig = OracleConfig()) -> Optional[int]:
    """lcm of the probed cycle lengths, or None if some probed orbit did not close.

    This is only a candidate: cycles of points outside the probe window may
    be longer. :func:`verify_order` settles it.
    """
    return probe_orbits(sigma, cfg).cycle_lcm


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


def verify_order(sigma: RcwaMap, n: int, max_modulus: Optional[int] = None) -> bool:
    """True iff ``sigma**n`` is the identity and no ``sigma**(n/p)`` is."""
    checkpoints = {n // p for p in _prime_factors(n)}
    cur = canonicalize(sigma)
    try:
        for k in range(1, n + 1):
            if k > 1:
                cur = canonicalize(compose(cur, sigma, max_modulus=max_modulus))
            if k in checkpoints and is_identity(cur):
                return False
        return is_identity(cur)
    except ModulusLimitExceeded:
        return False


# -- verdicts -----------------------------------------------------------------------

@dataclass(frozen=True)
class OrderVerdict:
    kind: str
    order: Optional[int] = None
    theorem: Optional[str] = None
    evidence: tuple[str, ...] = ()
    method: tuple[str, ...] = ()
    consistent: bool = True
    checked_sets: tuple[str, ...] = field(default=())

    @property
    def value(self):
        """The order as a number: an int, ``math.inf``, or None when unknown."""
        if self.kind == FINITE:
            return self.order
        if self.kind in (INFINITE_CERTIFIED, INFINITE_HEURISTIC):
            return math.inf
        return None

    @property
    def certified(self) -> bool:
        return self.kind in (FINITE, INFINITE_CERTIFIED)

    def to_report(self) -> dict:
        if self.kind == FINITE:
            order = self.order
        elif self.kind == INCONCLUSIVE:
            order = "unknown"
        else:
            order = "inf"
        return {"order": order, "certified": self.certified, "method": list(self.method)}

    def describe(self) -> str:
        if self.kind == FINITE:
            head = f"order: {self.order}"
        elif self.kind == INCONCLUSIVE:
            head = "order: unknown"
        else:
            head = "order: inf"
        if self.kind == INFINITE_CERTIFIED or (self.kind == FINITE and self.theorem):
            tail = f"certified: {self.theorem}"
        elif self.kind == FINITE:
            tail = f"certified: {self.method[-1] if self.method else 'power-scan'}"
        elif self.kind == INFINITE_HEURISTIC:
            tail = "heuristic: " + "; ".join(self.evidence)
        else:
            tail = "undecided within budget"
        return f"{head} ({tail})"


def _scan_stage(sigma: RcwaMap, cfg: OracleConfig, method: list[str]):
    """Orbit probe, then the stepwise power scan. Returns ``(kind, order, evidence)``.

    The scan tests every power ``sigma**k`` for ``k <= n``, so a ``Finite(n)``
    result is the exact order and needs no second pass. When every probed
    orbit closes, the lcm of their lengths bounds the first scan; a wrong
    candidate only costs the steps a full scan would have taken anyway.
    """
    probe = probe_orbits(sigma, cfg)
    method.append("orbit-probe")
    escaped = isinstance(probe.result, Escaped)
    mod_max = min(cfg.power_mod_max, cfg.escape_mod_max) if escaped else cfg.power_mod_max
    mod_max = max(mod_max, sigma.modulus)
    method.append("power-scan")
    scan = None
    if probe.cycle_lcm is not None and probe.cycle_lcm <= cfg.power_n_max:
        scan = power_order_scan(sigma, probe.cycle_lcm, mod_max)
    if scan is None or isinstance(scan, Inconclusive):
        scan = power_order_scan(sigma, cfg.power_n_max, mod_max)
    if isinstance(scan, Finite):
        return FINITE, scan.n, ()
    evidence = []
    if isinstance(scan, ModulusBlowup):
        evidence.append(f"modulus {scan.modulus_reached} > {mod_max} at power {scan.step}")
    if escaped:
        r = probe.result
        evidence.append(f"orbit of {probe.start} passed |x| > {cfg.orbit_value_bound} after {r.step} steps")
    if evidence:
        return INFINITE_HEURISTIC, None, tuple(evidence)
    return INCONCLUSIVE, None, ()


def _cross_check_infinite(sigma: RcwaMap, cfg: OracleConfig, method: list[str]):
    """Look for a finite order contradicting an infinite certificate.

    Returns ``(contradicting_order_or_None, evidence)``.
    """
    probe = probe_orbits(sigma, cfg)
    method.append("orbit-probe")
    if probe.cycle_lcm is not None and probe.cycle_lcm <= cfg.power_n_max:
        method.append("power-check")
        quick_limit = MATERIALIZE_FACTOR * max(cfg.escape_mod_max, sigma.modulus)
        if verify_order(sigma, probe.cycle_lcm, max_modulus=quick_limit):
            return probe.cycle_lcm, ()
    if isinstance(probe.result, Escaped):
        return None, (f"orbit of {probe.start} passed |x| > {cfg.orbit_value_bound} after {probe.result.step} steps",)
    return None, ()


def order_of_product(
    tau1: ClassTransposition,
    tau2: ClassTransposition,
    cfg: OracleConfig = OracleConfig(),
    *,
    use_certificates: bool = True,
) -> OrderVerdict:
    """Decide or estimate the order of ``tau1 * tau2``.

    ``ord(tau1*tau2) == ord(tau2*tau1)`` (the two products are mutually
    inverse), so the pair is put into canonical order first and the verdict
    does not depend on argument order. With ``use_certificates=False`` only
    the computational stages run, which gives an independent check of the
    certificates.
    """
    tau1, tau2 = sorted((tau1, tau2))
    method: list[str] = []
    pair = cert.classify_pair(tau1, tau2)

    def finish(kind, order=None, theorem=None, evidence=(), consistent=True):
        checked = []
        value = order if kind == FINITE else (math.inf if kind != INCONCLUSIVE else None)
        postconditions = []
        if pair.horizontal:
            postconditions.append(cert.horizontal_order_set(tau1, tau2))
        if pair.equal_modulus:
            c = cert.equal_modulus_allowed_set(tau1, tau2)
            if c is not None:
                postconditions.append(c)
        for c in postconditions:
            checked.append(c.source)
            if value is not None and not c.admits(value):
                consistent = False
        return OrderVerdict(kind, order, theorem, tuple(evidence), tuple(method), consistent, tuple(checked))

    if tau1 == tau2:
        method.append("equality")
        return finish(FINITE, 1)
    if cert.supports_disjoint(tau1, tau2):
        method.append("disjoint-support")
        return finish(FINITE, 2, cert.DISJOINT_SUPPORT)

    sigma = product_map(tau1, tau2)
    consistent = True

    if use_certificates:
        decided = None
        if pair.common_vertex:
            method.append(cert.COMMON_VERTEX)
            decided = cert.common_vertex_order(tau1, tau2)
        if decided is None and pair.equal_residue:
            method.append(cert.EQUAL_RESIDUE)
            decided = cert.equal_residue_infinite(tau1, tau2)
        if decided is not None and decided.kind == "finite":
            method.append("power-check")
            if verify_order(sigma, decided.order, max_modulus=MATERIALIZE_FACTOR * cfg.power_mod_max):
                return finish(FINITE, decided.order, decided.source)
            consistent = False
        elif decided is not None and decided.kind == "infinite":
            contradiction, evidence = _cross_check_infinite(sigma, cfg, method)
            if contradiction is None:
                return finish(INFINITE_CERTIFIED, theorem=decided.source, evidence=evidence)
            # an exactly verified finite order overrides the certificate
            return finish(FINITE, contradiction, consistent=False)

    kind, order, evidence = _scan_stage(sigma, cfg, method)
    return finish(kind, order, evidence=evidence, consistent=consistent)


def order_value(tau1: ClassTransposition, tau2: ClassTransposition, cfg: OracleConfig = OracleConfig()):
    return order_of_product(tau1, tau2, cfg).value


__all__ = [
    "OracleConfig",
    "OrderVerdict",
    "OrbitProbe",
    "Cycle",
    "Escaped",
    "StepBudgetExhausted",
    "orbit_trace",
    "probe_orbits",
    "finite_order_via_orbits",
    "verify_order",
    "order_of_product",
    "order_value",
]

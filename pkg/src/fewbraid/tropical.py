"""Phase-tropical line membership and tropical solution sets of trinomials.

A trinomial 1 + c1 x^p + c2 x^d is probed through the monomial map
x -> (c1 x^p, c2 x^d): its tropical solutions are the preimage of the
phase-tropical line L, whose Log image is the three-ray tropical line and
whose fiber over each ray is a single argument condition (w = -1 over r_z,
z = -1 over r_w, z = -w over r_infty).  Over the vertex the fiber is the
closed coamoeba of 1 + z + w = 0, two triangles in the argument torus.

The combinatorics is a knife edge: whether the Log line of coefficients
passes through the vertex, and whether the argument geodesic then hits the
torus puncture, are equalities that float tests cannot settle.  Nonzero
complex numbers are therefore carried as exact polar data, log-modulus and
argument in turns, both rational.  Conversions from floats keep the exact
rational value of the float, so equalities triggered by construction stay
triggered and everything else stays generic.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

__all__ = [
    "PolarExact",
    "TrinomialSupport",
    "CoefficientPair",
    "TropicalSolutionSet",
    "SolutionComponent",
    "phi",
    "in_phase_tropical_line",
    "tropical_solutions",
    "is_tropical_condition",
    "is_nonsingular",
    "radial_rescale",
    "rescale_pair",
    "log_fraction",
]

HALF = Fraction(1, 2)


def log_fraction(x: float | int | Fraction) -> Fraction:
    """Exact rational value of log(x) as computed in floats; x > 0."""
    if x <= 0:
        raise ValueError(f"need a positive real, got {x}")
    return Fraction(math.log(x))


@dataclass(frozen=True)
class PolarExact:
    """A nonzero complex number as exact polar data.

    ``turns`` is the argument divided by 2*pi and is not normalised; paths
    built from these keep track of how often they wind.
    """

    log_modulus: Fraction
    turns: Fraction

    @classmethod
    def from_complex(cls, z: complex) -> PolarExact:
        z = complex(z)
        if z == 0:
            raise ValueError("zero has no polar form")
        return cls(Fraction(math.log(abs(z))), Fraction(cmath.phase(z) / math.tau))

    def __complex__(self) -> complex:
        return cmath.exp(complex(float(self.log_modulus), math.tau * float(self.turns)))


@dataclass(frozen=True)
class TrinomialSupport:
    """Exponent pair of 1 + c1 x^p + c2 x^d with 0 < p < d coprime."""

    p: int
    d: int

    def __post_init__(self) -> None:
        if not 0 < self.p < self.d:
            raise ValueError(f"need 0 < p < d, got p={self.p}, d={self.d}")
        if gcd(self.p, self.d) != 1:
            raise ValueError(f"p={self.p} and d={self.d} must be coprime")


@dataclass(frozen=True)
class CoefficientPair:
    c1: PolarExact
    c2: PolarExact

    @classmethod
    def from_complex(cls, c1: complex, c2: complex) -> CoefficientPair:
        return cls(PolarExact.from_complex(c1), PolarExact.from_complex(c2))

    def __complex__(self) -> complex:
        raise TypeError("a pair; convert .c1 / .c2 individually")


def phi(c: CoefficientPair, sup: TrinomialSupport, x: complex) -> tuple[complex, complex]:
    """The monomial probe (c1 x^p, c2 x^d)."""
    if x == 0:
        raise ValueError("x must be nonzero")
    return complex(c.c1) * x**sup.p, complex(c.c2) * x**sup.d


def _sin_sign(t: Fraction) -> int:
    """Sign of sin(2*pi*t), decided exactly from the fractional part."""
    f = t % 1
    if f == 0 or f == HALF:
        return 0
    return 1 if f < HALF else -1


def _coamoeba_member(a: Fraction, b: Fraction) -> bool:
    """Closed coamoeba of 1 + z + w = 0 at argument turns (a, b).

    Membership means -1 is a limit of r e(a) + s e(b) with r, s >= 0; for
    independent directions this is a sign condition on the solved (r, s),
    and for (anti)parallel directions only a few geodesic points survive.
    """
    sab = _sin_sign(a - b)
    if sab == 0:
        if (a - b) % 1 == 0:
            return a % 1 == HALF
        return a % 1 in (0, HALF)
    sa, sb = _sin_sign(a), _sin_sign(b)
    if sb != 0 and sb != sab:
        return False
    if sa != 0 and sa != -sab:
        return False
    return True


def in_phase_tropical_line(z: complex, w: complex, tol: float = 1e-9) -> bool:
    """Float membership test for the phase-tropical line, piecewise by ray."""
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    if z == 0 or w == 0:
        return False
    lz, lw = math.log(abs(z)), math.log(abs(w))
    if abs(lz) <= tol and abs(lw) <= tol:
        az, bw = cmath.phase(z), cmath.phase(w)
        det = math.sin(az - bw)
        if abs(det) <= tol:
            # (anti)parallel directions: only the real-negative geodesic points
            return abs(math.sin(az)) <= tol and (
                math.cos(az) <= tol or abs(math.sin(bw)) <= tol and math.cos(bw) <= tol
            )
        return math.sin(bw) * det >= -tol and math.sin(az) * -det >= -tol
    if lz < -tol and abs(lw) <= tol:
        return abs(w + 1) <= 2 * tol
    if lw < -tol and abs(lz) <= tol:
        return abs(z + 1) <= 2 * tol
    if lz > tol and abs(lz - lw) <= tol:
        return abs(z + w) <= 2 * tol * abs(z)
    return False


@dataclass(frozen=True)
class SolutionComponent:
    """One component of a tropical solution set: |x| = exp(log_modulus),
    argument turns in the closed interval [lo, hi] (a point when lo == hi)."""

    log_modulus: Fraction
    lo: Fraction
    hi: Fraction

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def __complex__(self) -> complex:
        mid = (self.lo + self.hi) / 2
        return cmath.exp(complex(float(self.log_modulus), math.tau * float(mid)))


@dataclass(frozen=True)
class TropicalSolutionSet:
    components: tuple[SolutionComponent, ...]

    @property
    def count(self) -> int:
        return len(self.components)


def _ray_points(log_modulus: Fraction, base: Fraction, n: int) -> list[SolutionComponent]:
    out = []
    for m in range(n):
        s = (base + m) / n % 1
        out.append(SolutionComponent(log_modulus, s, s))
    return out


def tropical_solutions(c: CoefficientPair, sup: TrinomialSupport) -> TropicalSolutionSet:
    """Exact tropical solution set of the pair.

    When the Log line of the probe misses the tropical vertex it crosses
    either r_z alone (d points) or r_w and r_infty (p and d-p points);
    through the vertex, the solution set is carved out of a single circle of
    moduli by intersecting the slope-(p, d) argument geodesic with the
    coamoeba triangles.
    """
    p, d = sup.p, sup.d
    l1, t1 = c.c1.log_modulus, c.c1.turns
    l2, t2 = c.c2.log_modulus, c.c2.turns
    vertex_offset = d * l1 - p * l2
    if vertex_offset < 0:
        # crosses r_z: c2 x^d = -1
        return TropicalSolutionSet(tuple(_ray_points(-l2 / d, HALF - t2, d)))
    if vertex_offset > 0:
        pts = _ray_points(-l1 / p, HALF - t1, p)
        pts += _ray_points((l1 - l2) / (d - p), HALF + t1 - t2, d - p)
        return TropicalSolutionSet(tuple(sorted(pts, key=lambda q: q.lo)))

    # vertex fiber: arcs of |x| = exp(-l2/d) whose argument geodesic stays
    # inside the coamoeba; events are the crossings of the three geodesics
    events = set()
    for base, n in ((HALF - t2, d), (HALF - t1, p), (HALF + t1 - t2, d - p)):
        for m in range(n):
            events.add((base + m) / n % 1)
    cyc = sorted(events)
    member = []
    for i, e in enumerate(cyc):
        nxt = cyc[(i + 1) % len(cyc)] + (1 if i + 1 == len(cyc) else 0)
        mid = (e + nxt) / 2
        member.append(_coamoeba_member(t1 + p * mid, t2 + d * mid))
    if all(member):
        return TropicalSolutionSet((SolutionComponent(-l2 / d, Fraction(0), Fraction(1)),))

    comps = []
    i = 0
    while i < len(cyc):
        if member[i] and not member[i - 1]:
            j = i
            while member[j % len(cyc)]:
                j += 1
            comps.append(SolutionComponent(-l2 / d, cyc[i], cyc[j % len(cyc)] + (j // len(cyc))))
            i = j + 1
        else:
            i += 1
    for i, e in enumerate(cyc):
        if not member[i] and not member[i - 1]:
            if _coamoeba_member(t1 + p * e, t2 + d * e):
                comps.append(SolutionComponent(-l2 / d, e, e))
    return TropicalSolutionSet(tuple(sorted(comps, key=lambda q: q.lo)))


def _on_curve(c: CoefficientPair, sup: TrinomialSupport, modulus_offset: Fraction) -> bool:
    p, d = sup.p, sup.d
    if d * c.c1.log_modulus - p * c.c2.log_modulus != modulus_offset:
        return False
    return (d * (c.c1.turns + HALF) - p * c.c2.turns) % 1 == 0


def is_tropical_condition(c: CoefficientPair, sup: TrinomialSupport) -> bool:
    """True away from the curve (-c1)^d = c2^p, where the solution count is d."""
    return not _on_curve(c, sup, Fraction(0))


def _discriminant_offset(sup: TrinomialSupport) -> Fraction:
    # moduli part of (-c1/d)^d (d-p)^(d-p) = (c2/p)^p
    p, d = sup.p, sup.d
    return d * log_fraction(d) - p * log_fraction(p) - (d - p) * log_fraction(d - p)


def is_nonsingular(c: CoefficientPair, sup: TrinomialSupport) -> bool:
    """True when 1 + c1 x^p + c2 x^d has d distinct roots."""
    return not _on_curve(c, sup, _discriminant_offset(sup))


def radial_rescale(x: PolarExact, t: float) -> PolarExact:
    """Keep the phase, raise the modulus to the power 1/log(t)."""
    lt = log_fraction(t)
    if lt == 0:
        raise ValueError("t = 1 collapses all moduli")
    return PolarExact(x.log_modulus / lt, x.turns)


def rescale_pair(c: CoefficientPair, t: float) -> CoefficientPair:
    return CoefficientPair(radial_rescale(c.c1, t), radial_rescale(c.c2, t))

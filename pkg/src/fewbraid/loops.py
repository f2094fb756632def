"""Coefficient-space loops for trinomials, exact to the last knife edge.

Every loop here is a chain of segments on which log-modulus and argument
turns of both coefficients are affine in the segment parameter.  That class
is closed under everything the toolkit does to a loop (rotation, reversal,
concatenation, the large-scale realization map), and it makes safety checks
decidable: a segment touches the tropical or honest discriminant only where
an affine function vanishes and another lands on an integer, so loops are
validated along their whole length, not at samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

from .tropical import (
    HALF,
    CoefficientPair,
    PolarExact,
    TrinomialSupport,
    _discriminant_offset,
    log_fraction,
)

__all__ = [
    "PolarSegment",
    "LoopSegment",
    "CoefficientLoop",
    "gamma_loop",
    "ell_j_loop",
    "tau_loop",
    "realize",
]


def _fraction(x: float | int | Fraction) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def warped_grid(n: int, dense_at: Fraction | None = None) -> list[Fraction]:
    """n+1 parameter values from 0 to 1, clustered toward dense_at."""
    if n < 1:
        raise ValueError(f"need at least one step, got {n}")
    if dense_at is None:
        return [Fraction(k, n) for k in range(n + 1)]
    c = dense_at
    out = []
    for k in range(n + 1):
        u = Fraction(k, n)
        if u <= c:
            out.append(c - c * (1 - u / c) ** 2 if c else u)
        else:
            out.append(c + (1 - c) * ((u - c) / (1 - c)) ** 2)
    return out


@dataclass(frozen=True)
class PolarSegment:
    """One coefficient over s in [0, 1], affine in exact polar data."""

    start: PolarExact
    end: PolarExact

    def at(self, s: Fraction) -> PolarExact:
        return PolarExact(
            self.start.log_modulus + s * (self.end.log_modulus - self.start.log_modulus),
            self.start.turns + s * (self.end.turns - self.start.turns),
        )

    def reversed(self) -> PolarSegment:
        return PolarSegment(self.end, self.start)

    def rotated(self, turns: Fraction) -> PolarSegment:
        return PolarSegment(
            PolarExact(self.start.log_modulus, self.start.turns + turns),
            PolarExact(self.end.log_modulus, self.end.turns + turns),
        )


@dataclass(frozen=True)
class LoopSegment:
    label: str
    c1: PolarSegment
    c2: PolarSegment
    dense_at: Fraction | None = None

    def at(self, s: Fraction) -> CoefficientPair:
        return CoefficientPair(self.c1.at(s), self.c2.at(s))

    def grid(self, n: int) -> list[Fraction]:
        return warped_grid(n, self.dense_at)

    def reversed(self) -> LoopSegment:
        dense = None if self.dense_at is None else 1 - self.dense_at
        return LoopSegment(self.label, self.c1.reversed(), self.c2.reversed(), dense)


@dataclass(frozen=True)
class CoefficientLoop:
    support: TrinomialSupport
    segments: tuple[LoopSegment, ...]

    def __post_init__(self) -> None:
        if not self.segments:
            raise ValueError("a loop needs at least one segment")
        prev = self.segments[-1].at(Fraction(1))
        for seg in self.segments:
            cur = seg.at(Fraction(0))
            for a, b in ((prev.c1, cur.c1), (prev.c2, cur.c2)):
                if a.log_modulus != b.log_modulus or (a.turns - b.turns) % 1 != 0:
                    raise ValueError(f"loop breaks entering segment {seg.label!r}")
            prev = seg.at(Fraction(1))

    @property
    def base_point(self) -> CoefficientPair:
        return self.segments[0].at(Fraction(0))

    def reversed(self) -> CoefficientLoop:
        segs = tuple(seg.reversed() for seg in reversed(self.segments))
        return CoefficientLoop(self.support, segs)

    def samples(self, per_segment: int = 32) -> list[CoefficientPair]:
        """Closed sample walk; the final sample repeats the first."""
        out = []
        for i, seg in enumerate(self.segments):
            grid = seg.grid(per_segment)
            if i:
                grid = grid[1:]
            out.extend(seg.at(s) for s in grid)
        return out

    def to_json(self, per_segment: int = 32) -> dict:
        def polar(ps: PolarSegment) -> dict:
            return {
                "log_modulus": [str(ps.start.log_modulus), str(ps.end.log_modulus)],
                "turns": [str(ps.start.turns), str(ps.end.turns)],
            }

        segments = []
        for seg in self.segments:
            points = [
                [complex(c.c1).real, complex(c.c1).imag, complex(c.c2).real, complex(c.c2).imag]
                for c in (seg.at(s) for s in seg.grid(per_segment))
            ]
            segments.append(
                {
                    "label": seg.label,
                    "c1": polar(seg.c1),
                    "c2": polar(seg.c2),
                    "dense_at": None if seg.dense_at is None else str(seg.dense_at),
                    "samples": points,
                }
            )
        return {
            "schema": "coefficient-loop/1",
            "p": self.support.p,
            "d": self.support.d,
            "segments": segments,
        }

    @classmethod
    def from_json(cls, data: dict) -> CoefficientLoop:
        sup = TrinomialSupport(data["p"], data["d"])

        def polar(obj: dict) -> PolarSegment:
            l0, l1 = (Fraction(v) for v in obj["log_modulus"])
            t0, t1 = (Fraction(v) for v in obj["turns"])
            return PolarSegment(PolarExact(l0, t0), PolarExact(l1, t1))

        segs = tuple(
            LoopSegment(
                s["label"],
                polar(s["c1"]),
                polar(s["c2"]),
                None if s.get("dense_at") is None else Fraction(s["dense_at"]),
            )
            for s in data["segments"]
        )
        return cls(sup, segs)


def _curve_hits(loop: CoefficientLoop, modulus_offset: Fraction) -> list[tuple[int, Fraction]]:
    """Parameters where a segment meets the curve with the given moduli offset.

    On each segment the moduli residual M and the turn residual R are affine;
    a hit needs M = 0 and R integral, so either M has an isolated root to test
    or M vanishes identically and the roots of R - k are scanned instead.
    Each segment contributes its half-open [0, 1) so junctions count once.
    """
    p, d = loop.support.p, loop.support.d
    hits = []
    for idx, seg in enumerate(loop.segments):
        c0, c1 = seg.at(Fraction(0)), seg.at(Fraction(1))
        m0 = d * c0.c1.log_modulus - p * c0.c2.log_modulus - modulus_offset
        m1 = d * c1.c1.log_modulus - p * c1.c2.log_modulus - modulus_offset
        r0 = d * (c0.c1.turns + HALF) - p * c0.c2.turns
        r1 = d * (c1.c1.turns + HALF) - p * c1.c2.turns
        if m0 == m1:
            if m0 != 0:
                continue
            if r0 == r1:
                if r0 % 1 == 0:
                    hits.append((idx, Fraction(0)))
                continue
            lo, hi = sorted((r0, r1))
            k = math.ceil(lo)
            while k <= hi:
                s = (k - r0) / (r1 - r0)
                if 0 <= s < 1:
                    hits.append((idx, s))
                k += 1
        else:
            s = m0 / (m0 - m1)
            if 0 <= s < 1 and (r0 + s * (r1 - r0)) % 1 == 0:
                hits.append((idx, s))
    return hits


def _validated(loop: CoefficientLoop) -> CoefficientLoop:
    hits = _curve_hits(loop, Fraction(0))
    if hits:
        idx, s = hits[0]
        raise ValueError(
            f"loop leaves the space of tropical conditions in segment "
            f"{loop.segments[idx].label!r} at s={s}; shrink eps"
        )
    return loop


def _eps_turns(d: int, eps: float | Fraction | None) -> Fraction:
    """Loop half-angle in turns; floats are read as radians."""
    if eps is None:
        eps = 0.1 / d
    t = _fraction(eps) if isinstance(eps, Fraction) else _fraction(eps) / _fraction(math.tau)
    if not 0 < t < Fraction(1, 4):
        raise ValueError(f"eps out of range: {t} turns")
    return t


def _const(x: PolarExact) -> PolarSegment:
    return PolarSegment(x, x)


_ONE = PolarExact(Fraction(0), Fraction(0))


def _gamma_segments(d: int, et: Fraction, rot: Fraction) -> tuple[LoopSegment, ...]:
    lo, hi = HALF - et + rot, HALF + et + rot

    def day(n: int, a: PolarExact, b: PolarExact) -> LoopSegment:
        return LoopSegment(f"day{n}", PolarSegment(a, b), _const(_ONE), HALF if n == 2 else None)

    return (
        day(1, PolarExact(Fraction(-1), lo), PolarExact(Fraction(1), lo)),
        day(2, PolarExact(Fraction(1), lo), PolarExact(Fraction(1), hi)),
        day(3, PolarExact(Fraction(1), hi), PolarExact(Fraction(-1), hi)),
        day(4, PolarExact(Fraction(-1), hi), PolarExact(Fraction(-1), lo)),
    )


def gamma_loop(sup: TrinomialSupport, eps: float | Fraction | None = None) -> CoefficientLoop:
    """The four-day loop around the discriminant, based at (e^{i(pi-eps)-1}, 1):
    out along the argument pi - eps ray, across to pi + eps at large modulus,
    back along the pi + eps ray, and home across at small modulus.
    """
    et = _eps_turns(sup.d, eps)
    return _validated(CoefficientLoop(sup, _gamma_segments(sup.d, et, Fraction(0))))


def ell_j_loop(sup: TrinomialSupport, eps: float | Fraction | None, j: int) -> CoefficientLoop:
    """The loop realizing the j-th band: ride to the rotated base point,
    run the rotated four-day loop backwards, ride home.  For j = 1 this is
    exactly the reversed four-day loop.

    Rotating c1 by rot turns puts the root collision of the four-day loop
    at the slot boundary s with (d - p) s = rot d modulo d: the double root
    sits where (d - p) arg(x) aligns with arg(-c1), and the solution slots
    themselves never move.  Hitting the boundary between slots j and j + 1
    therefore takes rot = (j - 1)(d - p)/d, not (j - 1)/d.
    """
    if not 1 <= j <= sup.d:
        raise ValueError(f"index j={j} outside 1..{sup.d}")
    if j == 1:
        return gamma_loop(sup, eps).reversed()
    et = _eps_turns(sup.d, eps)
    rot = Fraction((j - 1) * (sup.d - sup.p) % sup.d, sup.d)
    base = PolarExact(Fraction(-1), HALF - et)
    there = PolarExact(Fraction(-1), HALF - et + rot)
    ride = LoopSegment("approach", PolarSegment(base, there), _const(_ONE))
    back = tuple(s.reversed() for s in reversed(_gamma_segments(sup.d, et, rot)))
    return _validated(CoefficientLoop(sup, (ride, *back, ride.reversed())))


def tau_loop(sup: TrinomialSupport, eps: float | Fraction | None = None) -> CoefficientLoop:
    """c1 pinned at small modulus while c2 runs once clockwise around the
    unit circle; every tropical solution advances one slot counterclockwise.
    """
    et = _eps_turns(sup.d, eps)
    c1 = _const(PolarExact(Fraction(-1), HALF - et))
    c2 = PolarSegment(_ONE, PolarExact(Fraction(0), Fraction(-1)))
    return _validated(CoefficientLoop(sup, (LoopSegment("rotation", c1, c2),)))


def realize(
    loop: CoefficientLoop,
    sup: TrinomialSupport,
    t: float = math.e,
    side: str = "c2",
) -> CoefficientLoop:
    """Trade the tropical loop for a loop of honestly non-singular trinomials.

    Moduli are stretched by log(t) and one coefficient picks up a constant
    positive factor; arguments never move.  ``side`` names the preserved
    coefficient, so side="c2" keeps loops inside {c2 = 1}.  The input must
    stay among tropical conditions and the output is checked against the
    trinomial discriminant along every segment.
    """
    p, d = sup.p, sup.d
    if loop.support != sup:
        raise ValueError("loop was built for a different support")
    lt = log_fraction(t)
    if lt <= 0:
        raise ValueError(f"need t > 1, got t={t}")
    _validated(loop)
    # the tropical vertex l1 = l2 = 0 must land on the honest critical
    # moduli, which solve d*l1 - p*l2 = offset
    offset = _discriminant_offset(sup)
    if side == "c2":
        shift1, shift2 = offset / d, Fraction(0)
    elif side == "c1":
        shift1, shift2 = Fraction(0), -offset / p
    else:
        raise ValueError(f"side must be 'c1' or 'c2', got {side!r}")

    def stretch(ps: PolarSegment, shift: Fraction) -> PolarSegment:
        def one(x: PolarExact) -> PolarExact:
            return PolarExact(x.log_modulus * lt + shift, x.turns)

        return PolarSegment(one(ps.start), one(ps.end))

    segs = tuple(
        replace(seg, c1=stretch(seg.c1, shift1), c2=stretch(seg.c2, shift2))
        for seg in loop.segments
    )
    out = CoefficientLoop(sup, segs)
    bad = _curve_hits(out, _discriminant_offset(sup))
    assert not bad, f"realized loop touches the discriminant: {bad[:3]}"
    return out

"""Root continuation along coefficient loops and the annular braid readout.

A loop of fewnomials is tracked by solving for every root at a web of
rational times and matching consecutive solution sets.  The matching is
trusted only where it is provably unambiguous: each root must move by less
than half the minimal root gap and by less than a fixed fraction of its own
modulus, and any window failing a bound is bisected.  Certified
trajectories are then read off as an annular braid word in the argument
diagram: sorting roots by argument from a frame ray gives the slot order,
an exchange of neighbouring arguments is a band letter signed by which
root passes radially inside, and a root crossing the frame ray is one slot
of rotation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .annular import AnnularWord, equal_annular, gen_b, gen_tau, project_to_disk
from .artin import ArtinWord
from .loops import CoefficientLoop, PolarSegment, warped_grid
from .simple import atom_stream, b_kj, generation_witness
from .tropical import (
    HALF,
    PolarExact,
    TrinomialSupport,
    _discriminant_offset,
    log_fraction,
)
from .loops import ell_j_loop, realize, tau_loop

__all__ = [
    "FewnomialSupport",
    "PolySegment",
    "PolynomialLoop",
    "StepControl",
    "RootTrajectories",
    "AmbiguousTransition",
    "from_trinomial_loop",
    "lift_loop",
    "embed_loop",
    "concat_loops",
    "monomial_circle_loop",
    "roots",
    "is_nonsingular",
    "track",
    "braid_readout",
    "readout_report",
    "monodromy",
    "monodromy_disk",
    "WitnessEntry",
    "surjectivity_witness",
]

_UNIT = PolarExact(Fraction(0), Fraction(0))

# A matching is only accepted when every root moves by less than this
# fraction of its modulus, which keeps lifted arguments unambiguous.
_RATIO_BOUND = 0.3


@dataclass(frozen=True)
class FewnomialSupport:
    """Strictly increasing exponents starting at 0; the degree is the last."""

    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        e = self.exponents
        if len(e) < 2 or e[0] != 0:
            raise ValueError(f"support must start at 0 and have >= 2 points, got {e}")
        if any(int(x) != x for x in e) or any(a >= b for a, b in zip(e, e[1:])):
            raise ValueError(f"exponents must be strictly increasing integers, got {e}")

    @classmethod
    def from_trinomial(cls, sup: TrinomialSupport) -> FewnomialSupport:
        return cls((0, sup.p, sup.d))

    @property
    def d(self) -> int:
        return self.exponents[-1]

    @property
    def gcd(self) -> int:
        g = 0
        for e in self.exponents[1:]:
            g = gcd(g, e)
        return g

    @property
    def is_reduced(self) -> bool:
        return self.gcd == 1

    def reduced(self) -> FewnomialSupport:
        g = self.gcd
        return FewnomialSupport(tuple(e // g for e in self.exponents))


@dataclass(frozen=True)
class PolySegment:
    """One coefficient vector over s in [0, 1]; None marks a slot that is
    identically zero."""

    label: str
    coeffs: tuple[PolarSegment | None, ...]
    dense_at: Fraction | None = None

    def at(self, s: Fraction) -> tuple[complex, ...]:
        return tuple(0j if ps is None else complex(ps.at(s)) for ps in self.coeffs)

    def grid(self, n: int) -> list[Fraction]:
        return warped_grid(n, self.dense_at)

    def reversed(self) -> PolySegment:
        dense = None if self.dense_at is None else 1 - self.dense_at
        flipped = tuple(None if ps is None else ps.reversed() for ps in self.coeffs)
        return PolySegment(self.label, flipped, dense)


def _junction_ok(a: PolarExact | None, b: PolarExact | None) -> bool:
    if a is None or b is None:
        return a is None and b is None
    return a.log_modulus == b.log_modulus and (a.turns - b.turns) % 1 == 0


@dataclass(frozen=True)
class PolynomialLoop:
    """A closed path of fewnomials with the given support, one exact polar
    segment (or None) per exponent and chain segment."""

    support: FewnomialSupport
    segments: tuple[PolySegment, ...]

    def __post_init__(self) -> None:
        n = len(self.support.exponents)
        if not self.segments:
            raise ValueError("a loop needs at least one segment")
        for seg in self.segments:
            if len(seg.coeffs) != n:
                raise ValueError(f"segment {seg.label!r} has {len(seg.coeffs)} slots, support has {n}")
            if seg.coeffs[0] is None or seg.coeffs[-1] is None:
                raise ValueError(f"segment {seg.label!r} drops the constant or leading coefficient")
        prev = self.segments[-1]
        for seg in self.segments:
            for a, b in zip(prev.coeffs, seg.coeffs):
                ok = _junction_ok(
                    None if a is None else a.at(Fraction(1)),
                    None if b is None else b.at(Fraction(0)),
                )
                if not ok:
                    raise ValueError(f"loop breaks entering segment {seg.label!r}")
            prev = seg

    def at(self, t: Fraction) -> tuple[complex, ...]:
        """Coefficient vector at global time t in [0, 1]."""
        if not 0 <= t <= 1:
            raise ValueError(f"time {t} outside [0, 1]")
        u = t * len(self.segments)
        idx = min(int(u), len(self.segments) - 1)
        return self.segments[idx].at(u - idx)

    @property
    def base_coefficients(self) -> tuple[complex, ...]:
        return self.segments[0].at(Fraction(0))

    def reversed(self) -> PolynomialLoop:
        segs = tuple(seg.reversed() for seg in reversed(self.segments))
        return PolynomialLoop(self.support, segs)

    def to_json(self) -> dict:
        def polar(ps: PolarSegment | None) -> dict | None:
            if ps is None:
                return None
            return {
                "log_modulus": [str(ps.start.log_modulus), str(ps.end.log_modulus)],
                "turns": [str(ps.start.turns), str(ps.end.turns)],
            }

        return {
            "schema": "polynomial-loop/1",
            "exponents": list(self.support.exponents),
            "segments": [
                {
                    "label": seg.label,
                    "coeffs": [polar(ps) for ps in seg.coeffs],
                    "dense_at": None if seg.dense_at is None else str(seg.dense_at),
                }
                for seg in self.segments
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> PolynomialLoop:
        def polar(obj: dict | None) -> PolarSegment | None:
            if obj is None:
                return None
            l0, l1 = (Fraction(v) for v in obj["log_modulus"])
            t0, t1 = (Fraction(v) for v in obj["turns"])
            return PolarSegment(PolarExact(l0, t0), PolarExact(l1, t1))

        sup = FewnomialSupport(tuple(data["exponents"]))
        segs = tuple(
            PolySegment(
                s["label"],
                tuple(polar(obj) for obj in s["coeffs"]),
                None if s.get("dense_at") is None else Fraction(s["dense_at"]),
            )
            for s in data["segments"]
        )
        return cls(sup, segs)


def from_trinomial_loop(loop: CoefficientLoop) -> PolynomialLoop:
    """The same loop over the three-point support, constant 1 in front."""
    sup = FewnomialSupport.from_trinomial(loop.support)
    unit = PolarSegment(_UNIT, _UNIT)
    segs = tuple(
        PolySegment(seg.label, (unit, seg.c1, seg.c2), seg.dense_at)
        for seg in loop.segments
    )
    return PolynomialLoop(sup, segs)


def lift_loop(loop: PolynomialLoop, b: int) -> PolynomialLoop:
    """Precompose with the covering x -> x^b: exponents stretch, coefficients
    stay.  Roots upstairs are the b-th roots of the roots downstairs."""
    if b < 1:
        raise ValueError(f"covering degree must be >= 1, got {b}")
    sup = FewnomialSupport(tuple(e * b for e in loop.support.exponents))
    return PolynomialLoop(sup, loop.segments)


def embed_loop(loop: PolynomialLoop, support: FewnomialSupport) -> PolynomialLoop:
    """View the loop inside a larger support, absent coefficients pinned to 0."""
    old = loop.support.exponents
    if not set(old) <= set(support.exponents):
        raise ValueError(f"cannot embed support {old} into {support.exponents}")
    if old[-1] != support.d:
        raise ValueError("embedding must preserve the degree")
    slot = {e: i for i, e in enumerate(old)}
    segs = tuple(
        PolySegment(
            seg.label,
            tuple(
                seg.coeffs[slot[e]] if e in slot else None
                for e in support.exponents
            ),
            seg.dense_at,
        )
        for seg in loop.segments
    )
    return PolynomialLoop(support, segs)


def concat_loops(*loops: PolynomialLoop) -> PolynomialLoop:
    """Run the loops in order; they must share support and base point."""
    if not loops:
        raise ValueError("nothing to concatenate")
    first = loops[0]
    for other in loops[1:]:
        if other.support != first.support:
            raise ValueError("loops live over different supports")
        junction = zip(first.segments[-1].coeffs, other.segments[0].coeffs)
        for a, b in junction:
            ok = _junction_ok(
                None if a is None else a.at(Fraction(1)),
                None if b is None else b.at(Fraction(0)),
            )
            if not ok:
                raise ValueError("loops are not based at the same point")
    segs = tuple(seg for loop in loops for seg in loop.segments)
    return PolynomialLoop(first.support, segs)


def monomial_circle_loop(d: int) -> PolynomialLoop:
    """The loop x^d - e^(i theta), theta once counterclockwise around the
    circle.  Based at theta = pi, so the starting roots sit at half-slot
    offsets, clear of the default frame ray."""
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")
    sup = FewnomialSupport((0, d))
    c0 = PolarSegment(_UNIT, PolarExact(Fraction(0), Fraction(1)))
    cd = PolarSegment(_UNIT, _UNIT)
    return PolynomialLoop(sup, (PolySegment("circle", (c0, cd)),))


# ---------------------------------------------------------------------------
# root solving


def _dense(coeffs: tuple[complex, ...], support: FewnomialSupport) -> np.ndarray:
    if len(coeffs) != len(support.exponents):
        raise ValueError("one coefficient per exponent required")
    out = np.zeros(support.d + 1, dtype=complex)
    for e, c in zip(support.exponents, coeffs):
        out[e] = c
    return out


def roots(
    coeffs: tuple[complex, ...],
    support: FewnomialSupport,
    distinct_tol: float = 1e-7,
    origin_tol: float = 1e-9,
) -> tuple[complex, ...]:
    """All d roots, polished and sorted by argument; raises ValueError when
    the polynomial is singular or vanishes at the origin."""
    dense = _dense(coeffs, support)
    if dense[-1] == 0:
        raise ValueError("leading coefficient vanishes; the polynomial is singular")
    if dense[0] == 0:
        raise ValueError("constant coefficient vanishes; root at the origin")
    hi = dense[::-1]
    dhi = np.polyder(hi)
    rts = np.roots(hi)
    for _ in range(2):
        val = np.polyval(hi, rts)
        der = np.polyval(dhi, rts)
        safe = der != 0
        rts = np.where(safe, rts - np.where(safe, val, 0) / np.where(safe, der, 1), rts)
    out = sorted((complex(z) for z in rts), key=lambda z: (cmath.phase(z), abs(z)))
    if min(abs(z) for z in out) <= origin_tol:
        raise ValueError("root at the origin within tolerance")
    # a numerical multiple root splits by about sqrt(eps) times its modulus
    if _min_gap(out) <= distinct_tol * max(1.0, max(abs(z) for z in out)):
        raise ValueError("roots collide within tolerance; the polynomial is singular")
    return tuple(out)


def _min_gap(points: list[complex] | tuple[complex, ...]) -> float:
    best = math.inf
    for i, x in enumerate(points):
        for y in points[i + 1 :]:
            best = min(best, abs(x - y))
    return best


def _sylvester(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    m, n = len(f) - 1, len(g) - 1
    out = np.zeros((m + n, m + n), dtype=complex)
    for i in range(n):
        out[i, i : i + m + 1] = f
    for i in range(m):
        out[n + i, i : i + n + 1] = g
    return out


def is_nonsingular(coeffs: tuple[complex, ...], support: FewnomialSupport, tol: float = 1e-9) -> bool:
    """True when the fewnomial has d distinct roots, all away from 0.

    Binomials always qualify, trinomials are decided by the closed-form
    discriminant of the reduced pair, everything else by the resultant of
    the polynomial and its derivative.
    """
    dense = _dense(coeffs, support)
    if dense[-1] == 0 or dense[0] == 0:
        return False
    eff = [e for e in range(len(dense)) if dense[e] != 0]
    if len(eff) == 2:
        return True
    if len(eff) == 3:
        p, d = eff[1], eff[2]
        g = gcd(p, d)
        p, d = p // g, d // g
        c1 = dense[eff[1]] / dense[0]
        c2 = dense[eff[2]] / dense[0]
        offset = float(_discriminant_offset(TrinomialSupport(p, d)))
        moduli = d * math.log(abs(c1)) - p * math.log(abs(c2)) - offset
        turns = (d * (cmath.phase(c1) / math.tau + 0.5) - p * cmath.phase(c2) / math.tau) % 1
        on_curve = abs(moduli) < tol and min(turns, 1 - turns) < tol
        return not on_curve
    hi = dense[::-1]
    syl = _sylvester(hi, np.polyder(hi))
    norms = np.linalg.norm(syl, axis=1)
    det = np.linalg.det(syl / norms[:, None])
    return bool(abs(det) > tol)


# ---------------------------------------------------------------------------
# tracking


@dataclass(frozen=True)
class StepControl:
    """Sampling density and refinement limits for track()."""

    samples_per_segment: int = 16
    max_depth: int = 48
    distinct_tol: float = 1e-7
    origin_tol: float = 1e-9


class AmbiguousTransition(RuntimeError):
    """Raised when refinement cannot certify a window of the tracking or a
    crossing of the readout; the offending parameter window is attached."""

    def __init__(self, message: str, window: tuple[Fraction, Fraction]):
        super().__init__(f"{message} in t-window [{window[0]}, {window[1]}]")
        self.window = window


@dataclass(frozen=True)
class RootTrajectories:
    """Matched root paths over a closed loop of fewnomials.

    ``positions[k][i]`` is strand i at ``times[k]``; ``lifted_args`` carries
    continuous arguments, so windings are visible; strand i ends where
    strand ``closing[i]`` began.
    """

    support: FewnomialSupport
    times: tuple[Fraction, ...]
    positions: tuple[tuple[complex, ...], ...]
    lifted_args: tuple[tuple[float, ...], ...]
    closing: tuple[int, ...]

    @property
    def d(self) -> int:
        return self.support.d


def _nearest_match(xs: tuple[complex, ...], ys: tuple[complex, ...]) -> tuple[complex, ...] | None:
    """ys reordered so entry i is the unique nearest successor of xs[i];
    None when nearest-neighbour assignment is not a bijection."""
    taken = [False] * len(ys)
    out = [0j] * len(ys)
    for i, x in enumerate(xs):
        j = min(range(len(ys)), key=lambda k: abs(ys[k] - x))
        if taken[j]:
            return None
        taken[j] = True
        out[i] = ys[j]
    return tuple(out)


def _step_ok(xs: tuple[complex, ...], ys: tuple[complex, ...]) -> bool:
    move = max(abs(y - x) for x, y in zip(xs, ys))
    if move >= 0.5 * min(_min_gap(xs), _min_gap(ys)):
        return False
    return all(abs(y / x - 1) < _RATIO_BOUND for x, y in zip(xs, ys))


def track(loop: PolynomialLoop, control: StepControl = StepControl()) -> RootTrajectories:
    """Follow all roots around the loop, bisecting every uncertified window.

    Solutions at consecutive times are matched by nearest neighbour; a step
    is accepted only when each root moved less than half the minimal root
    gap and than a fixed fraction of its modulus, which makes the matching
    and the argument lift unique.  Windows still failing at max_depth raise
    AmbiguousTransition.
    """
    S = len(loop.segments)
    grid: list[Fraction] = []
    for idx, seg in enumerate(loop.segments):
        for s in seg.grid(control.samples_per_segment):
            t = Fraction(idx + s, S)
            if not grid or t != grid[-1]:
                grid.append(t)

    def solve(t: Fraction) -> tuple[complex, ...]:
        return roots(loop.at(t), loop.support, control.distinct_tol, control.origin_tol)

    times = [grid[0]]
    positions = [solve(grid[0])]
    args = [tuple(cmath.phase(z) for z in positions[0])]

    def advance(t1: Fraction, depth: int) -> None:
        t0, xs = times[-1], positions[-1]
        ys = solve(t1)
        matched = _nearest_match(xs, ys)
        if matched is not None and _step_ok(xs, matched):
            times.append(t1)
            positions.append(matched)
            args.append(tuple(w + cmath.phase(y / x) for w, x, y in zip(args[-1], xs, matched)))
            return
        if depth == 0:
            raise AmbiguousTransition("root matching stays ambiguous", (t0, t1))
        advance((t0 + t1) / 2, depth - 1)
        advance(t1, depth - 1)

    for t in grid[1:]:
        advance(t, control.max_depth)

    first, last = positions[0], positions[-1]
    closing = []
    for i, z in enumerate(last):
        j = min(range(len(first)), key=lambda k: abs(first[k] - z))
        if abs(first[j] - z) >= 0.5 * _min_gap(first):
            raise AmbiguousTransition("loop does not close on its root set", (times[-2], times[-1]))
        closing.append(j)
    if sorted(closing) != list(range(len(first))):
        raise AmbiguousTransition("closing permutation is not a bijection", (times[-2], times[-1]))
    return RootTrajectories(
        loop.support, tuple(times), tuple(positions), tuple(args), tuple(closing)
    )


# ---------------------------------------------------------------------------
# braid readout


def _crossings(v0: float, v1: float) -> list[tuple[float, int]]:
    """Interpolation parameters in (0, 1] where the affine path from v0 to
    v1 meets an integer, with the sign of the passage."""
    if v0 == v1:
        return []
    lo, hi = sorted((v0, v1))
    out = []
    k = math.ceil(lo)
    if k == lo:
        k += 1
    while k <= hi:
        out.append(((k - v0) / (v1 - v0), 1 if v1 > v0 else -1))
        k += 1
    return out


def braid_readout(traj: RootTrajectories, a: float | None = None) -> AnnularWord:
    """The annular braid word of the trajectories in the frame [a, a + 2pi).

    Roots are ordered by argument from the frame ray.  Between samples,
    arguments and moduli are interpolated affinely: an exchange of
    cyclically neighbouring arguments in slots (s, s+1) emits the band
    letter b_s, positive when the counterclockwise-passing root is the one
    radially inside (it passes in front, the outer root dives behind), and
    a root crossing the frame ray counterclockwise emits one slot of
    rotation.  Aligning the base configuration with evenly spread unit-
    modulus points needs no crossings, so no conjugation is applied; the
    slot assignment is reported by readout_report.
    """
    d = traj.d
    if a is None:
        a = -math.tau / d
    moduli = [tuple(abs(z) for z in row) for row in traj.positions]

    def order_at(k: int) -> list[int] | None:
        """Slot order at sample k, or None when an argument tie obscures it.

        Ties happen legitimately: at the closest approach to a root
        collision the pair may separate radially, with equal arguments.
        """
        u = [(traj.lifted_args[k][i] - a) % math.tau for i in range(d)]
        order = sorted(range(d), key=lambda i: u[i])
        gaps = [u[order[p + 1]] - u[order[p]] for p in range(d - 1)]
        if d > 1:
            gaps.append(u[order[0]] + math.tau - u[order[-1]])
        if min(gaps, default=math.tau) < 1e-12:
            return None
        return order

    initial = order_at(0)
    if initial is None:
        raise AmbiguousTransition(
            "argument collision at the base point", (traj.times[0], traj.times[0])
        )
    order = list(initial)
    letters: list[tuple[str, int, int]] = []
    for k in range(len(traj.times) - 1):
        w0, w1 = traj.lifted_args[k], traj.lifted_args[k + 1]
        m0, m1 = moduli[k], moduli[k + 1]
        window = (traj.times[k], traj.times[k + 1])
        events: list[tuple[float, int, tuple]] = []
        for i in range(d):
            for s, direction in _crossings((w0[i] - a) / math.tau, (w1[i] - a) / math.tau):
                events.append((s, 0, ("frame", i, direction)))
            for j in range(i + 1, d):
                for s, direction in _crossings(
                    (w0[i] - w0[j]) / math.tau, (w1[i] - w1[j]) / math.tau
                ):
                    mover = i if direction > 0 else j
                    other = j if direction > 0 else i
                    events.append((s, 1, ("swap", mover, other)))
        events.sort(key=lambda ev: (ev[0], ev[1], ev[2]))

        def apply(s: float, ev: tuple) -> bool:
            """Apply the event if the current slot order admits it.

            Near-simultaneous events (a pair exchanging across the frame
            ray is one crossing plus two ray passages) interpolate to an
            arbitrary order, so inapplicable events wait for their turn.
            """
            if ev[0] == "frame":
                _, i, direction = ev
                if direction > 0:
                    if order[-1] != i:
                        return False
                    order.insert(0, order.pop())
                    letters.append(("t", 0, 1))
                else:
                    if order[0] != i:
                        return False
                    order.append(order.pop(0))
                    letters.append(("t", 0, -1))
                return True
            _, mover, other = ev
            p = order.index(mover)
            if p == d - 1 or order[p + 1] != other:
                # a pair exchanging across the frame ray always crosses it
                # strictly between the two ray passages, so a swap in the
                # wrap position waits for its frame event
                return False
            mm = m0[mover] + s * (m1[mover] - m0[mover])
            mo = m0[other] + s * (m1[other] - m0[other])
            if abs(mm - mo) <= 1e-12 * (mm + mo):
                raise AmbiguousTransition("radial collision at a crossing", window)
            order[p], order[p + 1] = order[p + 1], order[p]
            letters.append(("b", p + 1, 1 if mm < mo else -1))
            return True

        while events:
            for idx, (s, _, ev) in enumerate(events):
                if apply(s, ev):
                    events.pop(idx)
                    break
            else:
                raise AmbiguousTransition("simultaneous argument crossings", window)
        sampled = order_at(k + 1)
        if sampled is not None and order != sampled:
            raise AmbiguousTransition("slot bookkeeping lost an event", window)
    # strand i ends where closing[i] began, so slots must agree through it
    if [traj.closing[i] for i in order] != initial:
        raise AmbiguousTransition(
            "readout disagrees with the closing permutation",
            (traj.times[0], traj.times[-1]),
        )
    return AnnularWord(d, tuple(letters))


def readout_report(traj: RootTrajectories, a: float | None = None) -> dict:
    """Readout word plus frame data: slot of every strand at the base point,
    base arguments and moduli, windings, and the (empty) alignment braid."""
    d = traj.d
    if a is None:
        a = -math.tau / d
    word = braid_readout(traj, a)
    u = [(traj.lifted_args[0][i] - a) % math.tau for i in range(d)]
    order = sorted(range(d), key=lambda i: u[i])
    slot = [0] * d
    for s, i in enumerate(order):
        slot[i] = s + 1
    winds = [
        (traj.lifted_args[-1][i] - traj.lifted_args[0][traj.closing[i]]) / math.tau
        for i in range(d)
    ]
    return {
        "schema": "readout/1",
        "d": d,
        "frame_angle": a,
        "slot_of_strand": slot,
        "base_arguments": [traj.lifted_args[0][i] for i in range(d)],
        "base_moduli": [abs(z) for z in traj.positions[0]],
        "closing": list(traj.closing),
        "windings": [round(w) for w in winds],
        "alignment": [],
        "letters": [list(letter) for letter in word.letters],
    }


def _support_of(A: FewnomialSupport | tuple[int, ...]) -> FewnomialSupport:
    if isinstance(A, FewnomialSupport):
        return A
    if isinstance(A, TrinomialSupport):
        return FewnomialSupport.from_trinomial(A)
    return FewnomialSupport(tuple(sorted(A)))


def monodromy(
    A: FewnomialSupport | tuple[int, ...],
    loop: PolynomialLoop,
    a: float | None = None,
    control: StepControl = StepControl(),
) -> AnnularWord:
    """Annular braid of the loop: track the roots, then read the diagram."""
    sup = _support_of(A)
    if sup != loop.support:
        raise ValueError(f"loop lives over {loop.support.exponents}, not {sup.exponents}")
    return braid_readout(track(loop, control), a)


def monodromy_disk(
    A: FewnomialSupport | tuple[int, ...],
    loop: PolynomialLoop,
    a: float | None = None,
    control: StepControl = StepControl(),
) -> ArtinWord:
    """The same braid with the puncture filled in."""
    return project_to_disk(monodromy(A, loop, a, control))


# ---------------------------------------------------------------------------
# surjectivity witnesses


@dataclass(frozen=True)
class WitnessEntry:
    """A verified generator: a loop, its readout word, and whether the loop
    keeps the outer coefficients pinned to 1."""

    target: str
    loop: PolynomialLoop
    word: AnnularWord
    unit_ends: bool


def _unit_ends(loop: PolynomialLoop) -> bool:
    def pinned(ps: PolarSegment | None) -> bool:
        return (
            ps is not None
            and ps.start.log_modulus == 0
            and ps.end.log_modulus == 0
            and ps.start.turns % 1 == 0
            and ps.end.turns % 1 == 0
            and ps.start.turns == ps.end.turns
        )

    return all(pinned(seg.coeffs[0]) and pinned(seg.coeffs[-1]) for seg in loop.segments)


def surjectivity_witness(
    A: FewnomialSupport | tuple[int, ...],
    a: float | None = None,
    eps: float | Fraction | None = None,
    t: float = math.e,
    control: StepControl = StepControl(),
) -> list[WitnessEntry]:
    """Loops generating the image of the monodromy of the support A.

    For every band b_1 .. b_d a loop is composed from realized trinomial
    loops: each inner exponent p contributes, through x -> x^gcd(p, d), the
    lattice braids of spacing d / gcd(p, d), and the generation word over
    those lattice braids spells out which loops to concatenate.  Each
    composed loop is tracked and its word verified against the target; the
    rotation comes from the realized rotation loop of the first inner
    exponent.  Only reduced supports with at least three points qualify.
    """
    sup = _support_of(A)
    pts = sup.exponents
    if len(pts) < 3:
        raise ValueError("support must have at least three points")
    if not sup.is_reduced:
        raise ValueError(
            f"support {pts} is not reduced (gcd {sup.gcd}); "
            "take the reduced support and pull the witness back"
        )
    d = sup.d

    def realized(p: int, build) -> PolynomialLoop:
        g = gcd(p, d)
        tri = TrinomialSupport(p // g, d // g)
        loop = realize(build(tri), tri, t)
        return embed_loop(lift_loop(from_trinomial_loop(loop), g), sup)

    spacing_to_p = {}
    for p in pts[1:-1]:
        spacing_to_p.setdefault(d // gcd(p, d), p)

    tau_src = realized(pts[1], lambda tri: tau_loop(tri, eps))
    tau_word = monodromy(sup, tau_src, a, control)
    if not equal_annular(tau_word, gen_tau(d)):
        raise RuntimeError("rotation loop does not read as one slot of rotation")

    band_loops: dict[tuple[int, int], PolynomialLoop] = {}

    def loop_for(name: str) -> PolynomialLoop:
        if name == "tau":
            return tau_src
        k, j = (int(x) for x in name[1:].split("_"))
        j = (j - 1) % k + 1
        cached = band_loops.get((k, j))
        if cached is None:
            p = spacing_to_p[k]
            cached = realized(p, lambda tri: ell_j_loop(tri, eps, j))
            word = monodromy(sup, cached, a, control)
            if not equal_annular(word, b_kj(k, j, d)):
                raise RuntimeError(f"lattice loop for {name} reads as the wrong braid")
            band_loops[(k, j)] = cached
        return cached

    entries = []
    for j in range(1, d + 1):
        gw = generation_witness(pts, j)
        rot = 0
        parts = []
        for name, sign in atom_stream(gw.expr):
            # conjugating a lattice band by tau^n shifts its residue by -n,
            # so rotation letters fold into the band index and every factor
            # is a directly realized lattice loop, keeping the composition
            # inside the unit-outer-coefficient slice
            if name == "tau":
                rot += sign
                continue
            k, i = (int(x) for x in name[1:].split("_"))
            src = loop_for(f"b{k}_{(i - rot - 1) % k + 1}")
            parts.append(src if sign > 0 else src.reversed())
        if rot:
            raise RuntimeError("rotation letters do not cancel in the witness")
        composed = concat_loops(*parts)
        word = monodromy(sup, composed, a, control)
        if not equal_annular(word, gen_b(j, d)):
            raise RuntimeError(f"composed loop for band {j} reads as the wrong braid")
        entries.append(WitnessEntry(f"b{j}", composed, word, _unit_ends(composed)))
    entries.append(WitnessEntry("tau", tau_src, tau_word, _unit_ends(tau_src)))
    return entries

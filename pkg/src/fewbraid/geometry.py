"""Certified braid readout for explicit point motions in the disk.

A motion of n points is a list of n callables ``[0, 1] -> complex`` that never
collide.  The reader projects every point onto a generic direction, watches
the left-to-right order of the projections, and emits one Artin letter per
transverse exchange of neighbours.  Quiet stretches are certified by a
displacement bound: if no point moves further than half the smallest gap
between neighbouring projections, no exchange can hide inside the interval.

Crossing signs follow the convention of :mod:`fewbraid.artin`: at an exchange,
the letter is positive when the strand coming from the left passes in front,
where "in front" means the larger depth coordinate.  Under this convention a
clockwise exchange of two nearby points reads as a positive generator.

The module also builds the reference motions used to pin down the annular
generators: d points on the unit circle around a puncture at the origin,
together with a straightening path to the collinear configuration
``0, 1, ..., d``.  All reported words live in the frame of that collinear
configuration, puncture leftmost.
"""

from __future__ import annotations

import cmath
import math
from typing import Callable, Sequence

from .artin import ArtinWord

Curve = Callable[[float], complex]

FRAME_ANGLE = 0.31  # generic projection direction, avoids axis-aligned ties
_MAX_DEPTH = 52
_SWAP_WIDTH = 1e-7
_DEPTH_MARGIN = 1e-10


def _uv(z: complex) -> tuple[float, float]:
    """Projection coordinate u and depth coordinate v of a point."""
    w = z * cmath.exp(-1j * FRAME_ANGLE)
    return w.real, w.imag


def _order_at(curves: Sequence[Curve], t: float) -> tuple[int, ...]:
    us = [_uv(c(t))[0] for c in curves]
    return tuple(sorted(range(len(curves)), key=lambda k: us[k]))


def _min_gap(curves: Sequence[Curve], t: float) -> float:
    us = sorted(_uv(c(t))[0] for c in curves)
    return min(b - a for a, b in zip(us, us[1:]))


def _max_move(curves: Sequence[Curve], t0: float, t1: float) -> float:
    return max(abs(c(t1) - c(t0)) for c in curves)


def _disjoint_adjacent_swaps(
    o0: tuple[int, ...], o1: tuple[int, ...]
) -> list[int] | None:
    """0-based left positions if o1 differs from o0 by disjoint adjacent swaps."""
    n = len(o0)
    pos: list[int] = []
    i = 0
    while i < n:
        if o0[i] == o1[i]:
            i += 1
        elif i + 1 < n and o0[i] == o1[i + 1] and o0[i + 1] == o1[i]:
            pos.append(i)
            i += 2
        else:
            return None
    return pos if pos else None


def _swap_sign(
    curves: Sequence[Curve], t0: float, t1: float, a_id: int, b_id: int
) -> int:
    """Sign of the crossing where a_id (left at t0) exchanges with b_id."""
    ua0, _ = _uv(curves[a_id](t0))
    ub0, _ = _uv(curves[b_id](t0))
    ua1, _ = _uv(curves[a_id](t1))
    ub1, _ = _uv(curves[b_id](t1))
    d0, d1 = ua0 - ub0, ua1 - ub1
    ts = t0 - d0 * (t1 - t0) / (d1 - d0)
    _, va = _uv(curves[a_id](ts))
    _, vb = _uv(curves[b_id](ts))
    if abs(va - vb) <= _DEPTH_MARGIN:
        raise RuntimeError(f"depth tie at crossing near t={ts}")
    return 1 if va > vb else -1


def _read_cell(
    curves: Sequence[Curve], t0: float, t1: float, depth: int = 0
) -> list[int]:
    if depth > _MAX_DEPTH:
        raise RuntimeError(f"refinement depth exceeded on [{t0}, {t1}]")
    tm = 0.5 * (t0 + t1)
    o0, o1 = _order_at(curves, t0), _order_at(curves, t1)
    if o0 == o1 and _order_at(curves, tm) == o0:
        move = _max_move(curves, t0, tm) + _max_move(curves, tm, t1)
        gap = min(_min_gap(curves, t) for t in (t0, tm, t1))
        if move < 0.5 * gap:
            return []
        return _read_cell(curves, t0, tm, depth + 1) + _read_cell(
            curves, tm, t1, depth + 1
        )
    swaps = _disjoint_adjacent_swaps(o0, o1)
    if swaps is not None and (t1 - t0) < _SWAP_WIDTH:
        letters = []
        for i in swaps:
            s = _swap_sign(curves, t0, t1, o0[i], o0[i + 1])
            letters.append(s * (i + 1))
        return letters
    return _read_cell(curves, t0, tm, depth + 1) + _read_cell(
        curves, tm, t1, depth + 1
    )


def read_braid(curves: Sequence[Curve], cells: int = 512) -> ArtinWord:
    """Braid word traced out by a motion of points.

    The initial uniform subdivision keeps the displacement certificate honest:
    it is an endpoint bound, so it may only be trusted on intervals too short
    for a strand to sneak out and back across a neighbour.  The default of 512
    cells is safe for motions whose speed stays below ``256 * min_gap``.
    """
    letters: list[int] = []
    for k in range(cells):
        letters += _read_cell(curves, k / cells, (k + 1) / cells)
    return ArtinWord(len(curves), tuple(letters))


# ---------------------------------------------------------------------------
# reference motions: d circle points around a central puncture


def base_angles(d: int) -> list[float]:
    """Angles of the d reference points on the unit circle.

    Near-uniform spacing with a deterministic jitter, so that no two points
    and no point-puncture pair ever project to the same coordinate at the
    same moment during the reference motions.
    """
    return [
        math.pi * (2 * k - 3) / d + (0.5 / d) * math.sin(2.3 * k + 0.7)
        for k in range(1, d + 1)
    ]


def concat_motions(*segs: Sequence[Curve]) -> list[Curve]:
    """Run several motions in sequence on a common [0, 1] clock.

    Only valid when each strand is continuous across the joints.
    """
    m = len(segs)
    n = len(segs[0])

    def make(k: int) -> Curve:
        def c(t: float) -> complex:
            x = min(t * m, m - 1e-12)
            i = int(x)
            return segs[i][k](x - i)

        return c

    return [make(k) for k in range(n)]


def straighten_path(d: int) -> list[Curve]:
    """Motion from the collinear configuration 0, 1, ..., d to the circle.

    Strand 0 is the puncture and stays at the origin; strand k sweeps from the
    real point k to the circle point with angle ``base_angles(d)[k-1]``.
    """
    angles = base_angles(d)

    def make(k: int) -> Curve:
        if k == 0:
            return lambda t: 0j
        th = angles[k - 1]
        return lambda t: (k - t * (k - 1)) * cmath.exp(1j * t * th)

    return [make(k) for k in range(d + 1)]


def rotation_loop(d: int) -> list[Curve]:
    """One-slot counterclockwise rotation of the circle points."""
    angles = base_angles(d)
    out: list[Curve] = [lambda t: 0j]
    for k in range(d):
        a0 = angles[k]
        a1 = angles[(k + 1) % d] + (2 * math.pi if k == d - 1 else 0)
        out.append(lambda t, a0=a0, a1=a1: cmath.exp(1j * ((1 - t) * a0 + t * a1)))
    return out


def swap_loop(d: int, i: int, j: int, direction: int = -1) -> list[Curve]:
    """Exchange circle points i and j by a half rotation about their midpoint.

    The rotation disk is bulged away from the origin so the puncture stays
    well outside it.  ``direction=-1`` is the clockwise half turn, which reads
    as a positive band generator; i is the lower-angle point, and ``(d, 1)``
    is the cyclic pair crossing the angle cut.
    """
    angles = base_angles(d)
    pts = [cmath.exp(1j * th) for th in angles]
    thi = angles[i - 1]
    thj = angles[j - 1] if j > i else angles[j - 1] + 2 * math.pi
    u = cmath.exp(1j * (thi + thj) / 2)
    m = (pts[i - 1] + pts[j - 1]) / 2
    r = abs(pts[i - 1] - m)
    shift = max(0.0, r + 0.25 - abs(m)) * u
    ra = pts[i - 1] - m

    def seg_shift(k: int, sgn: int) -> Curve:
        if k == 0:
            return lambda t: 0j
        if k in (i, j):
            # after the half turn the pair sits at exchanged positions
            z = pts[k - 1] if sgn > 0 else pts[(j if k == i else i) - 1]
            if sgn > 0:
                return lambda t, z=z: z + t * shift
            return lambda t, z=z: z + (1 - t) * shift
        return lambda t, z=pts[k - 1]: z

    def seg_rot(k: int) -> Curve:
        if k == 0:
            return lambda t: 0j
        if k == i:
            return lambda t: m + shift + ra * cmath.exp(1j * direction * math.pi * t)
        if k == j:
            return lambda t: m + shift - ra * cmath.exp(1j * direction * math.pi * t)
        return lambda t, z=pts[k - 1]: z

    n = d + 1
    return concat_motions(
        [seg_shift(k, +1) for k in range(n)],
        [seg_rot(k) for k in range(n)],
        [seg_shift(k, -1) for k in range(n)],
    )


def core_loop(d: int, rho: float = 0.25) -> list[Curve]:
    """Point 1 dives inside the circle and makes one ccw turn around the
    puncture, passing between the puncture and everybody else."""
    angles = base_angles(d)
    pts = [cmath.exp(1j * th) for th in angles]
    th1 = angles[0]

    def strand1(t: float) -> complex:
        if t < 1 / 3:
            s = 3 * t
            return (1 - s * (1 - rho)) * cmath.exp(1j * th1)
        if t < 2 / 3:
            s = 3 * t - 1
            return rho * cmath.exp(1j * (th1 + 2 * math.pi * s))
        s = 3 * t - 2
        return (rho + s * (1 - rho)) * cmath.exp(1j * th1)

    out: list[Curve] = [lambda t: 0j, strand1]
    for k in range(2, d + 1):
        out.append(lambda t, z=pts[k - 1]: z)
    return out


_STRAIGHTEN_CACHE: dict[int, ArtinWord] = {}


def loop_word(d: int, loop: Sequence[Curve]) -> ArtinWord:
    """Braid word of a loop of circle configurations, reported in the frame
    of the collinear configuration via the straightening path."""
    if d not in _STRAIGHTEN_CACHE:
        _STRAIGHTEN_CACHE[d] = read_braid(straighten_path(d))
    p = _STRAIGHTEN_CACHE[d]
    return p * read_braid(loop) * p.inverse()

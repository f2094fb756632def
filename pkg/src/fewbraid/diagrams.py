"""Static braid diagrams, SVG first and ASCII as a terminal fallback.

Time runs top to bottom and slots left to right.  A positive letter sends
the lower-slot strand over its neighbour, matching the sign convention of
the readout: the strand passing in front is the one that would be radially
inside, and the other one breaks.  Annular diagrams show the cut as dashed
margins; a strand leaving through one margin re-enters through the other,
marked with a wrap glyph.
"""

from __future__ import annotations

from .annular import AnnularWord
from .artin import ArtinWord

__all__ = ["render"]

_STAMP = "fewbraid-diagram/1"

_COL = 4  # ascii column pitch
_X0, _DX, _DY = 20.0, 32.0, 28.0


def _expand(w: AnnularWord) -> list[tuple[str, int, int]]:
    """Annular letters with r letters spelled out as bands plus rotation."""
    out: list[tuple[str, int, int]] = []
    d = w.d
    for kind, index, sign in w.letters:
        if kind != "r":
            out.append((kind, index, sign))
            continue
        # r_1 = b_1 ... b_{d-1} tau, shifted into place by rotation
        circuit = [("b", j, 1) for j in range(1, d)] + [("t", 0, 1)]
        if sign < 0:
            circuit = [(k, i, -s) for k, i, s in reversed(circuit)]
        shift = index - 1
        out.extend([("t", 0, -1)] * shift)
        out.extend(circuit)
        out.extend([("t", 0, 1)] * shift)
    return out


# ---------------------------------------------------------------------------
# ascii


def _ascii_rows(d: int, letters: list[tuple[str, int, int]], annular: bool) -> list[str]:
    width = _COL * (d - 1) + 1 if d > 0 else 1
    margin = ": " if annular else "  "

    def bars() -> list[str]:
        row = [" "] * width
        for i in range(d):
            row[_COL * i] = "|"
        return row

    def line(row: list[str]) -> str:
        return margin + "".join(row) + margin[::-1]

    def crossing(i: int, sign: int) -> list[str]:
        c = _COL * (i - 1)
        shapes = (
            {c + 1: "\\", c + 3: "/"},
            {c + 2: "\\" if sign > 0 else "/"},
            {c + 1: "/", c + 3: "\\"},
        )
        rows = []
        for marks in shapes:
            row = bars()
            row[c] = row[c + _COL] = " "
            for pos, ch in marks.items():
                row[pos] = ch
            rows.append(line(row))
        return rows

    def rotation(sign: int) -> list[str]:
        row = [" "] * width
        for i in range(d):
            row[_COL * i] = ">" if sign > 0 else "<"
        return ["% " + "".join(row) + " %"]

    out = [line(bars())]
    for kind, index, sign in letters:
        if kind == "t":
            out.extend(rotation(sign))
        elif index == d and d > 1:
            # the cut pair exchanges through the margins
            out.extend(rotation(1))
            out.extend(crossing(1, sign))
            out.extend(rotation(-1))
        else:
            out.extend(crossing(index, sign))
        out.append(line(bars()))
    return out


def _ascii(d: int, letters: list[tuple[str, int, int]], annular: bool) -> str:
    return "\n".join(r.rstrip() for r in _ascii_rows(d, letters, annular)) + "\n"


# ---------------------------------------------------------------------------
# svg


def _fmt(x: float) -> str:
    return f"{x:.1f}"


def _svg_line(x1: float, y1: float, x2: float, y2: float, cls: str) -> str:
    return (
        f'<line class="{cls}" x1="{_fmt(x1)}" y1="{_fmt(y1)}"'
        f' x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>'
    )


def _svg_cross(x_lo: float, x_hi: float, y0: float, sign: int, parts: list[str]) -> None:
    """Two diagonals; the strand rising in slot index goes over iff sign > 0.

    The under strand is drawn in two halves, leaving a visible break around
    the over strand.
    """
    y1 = y0 + _DY
    ym, xm = y0 + _DY / 2, (x_lo + x_hi) / 2
    over = (x_lo, x_hi) if sign > 0 else (x_hi, x_lo)
    under = (x_hi, x_lo) if sign > 0 else (x_lo, x_hi)
    gap = 0.18
    parts.append(
        _svg_line(
            under[0],
            y0,
            xm - (under[1] - under[0]) * gap,
            ym - _DY * gap,
            "strand",
        )
    )
    parts.append(
        _svg_line(
            xm + (under[1] - under[0]) * gap,
            ym + _DY * gap,
            under[1],
            y1,
            "strand",
        )
    )
    parts.append(_svg_line(over[0], y0, over[1], y1, "strand"))


def _svg(d: int, letters: list[tuple[str, int, int]], annular: bool) -> str:
    xs = [_X0 + _DX * i for i in range(d)]
    height = _DY * (len(letters) + 1)
    width = _X0 * 2 + _DX * max(d - 1, 0)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}"'
        f' height="{_fmt(height + _DY)}" data-stamp="{_STAMP}">',
        "<style>.strand{stroke:#1f3e8c;stroke-width:2;fill:none}"
        ".cut{stroke:#888;stroke-width:1;stroke-dasharray:4 3}"
        ".wrap{fill:#b02}</style>",
    ]
    if annular:
        parts.append(_svg_line(6.0, 0.0, 6.0, height + _DY, "cut"))
        parts.append(_svg_line(width - 6.0, 0.0, width - 6.0, height + _DY, "cut"))

    for x in xs:
        parts.append(_svg_line(x, 0.0, x, _DY / 2, "strand"))
    y = _DY / 2
    for kind, index, sign in letters + [("end", 0, 0)]:
        if kind == "end":
            for x in xs:
                parts.append(_svg_line(x, y, x, y + _DY / 2, "strand"))
            break
        moving: set[int] = set()
        if kind == "t":
            moving = set(range(d))
            for i, x in enumerate(xs):
                if sign > 0 and i == d - 1:
                    parts.append(_svg_line(x, y, width, y + _DY / 2, "strand"))
                    parts.append(_svg_line(0.0, y + _DY / 2, xs[0], y + _DY, "strand"))
                    parts.append(
                        f'<circle class="wrap" cx="{_fmt(width - 6.0)}"'
                        f' cy="{_fmt(y + _DY / 4)}" r="3.0"/>'
                    )
                elif sign > 0:
                    parts.append(_svg_line(x, y, xs[i + 1], y + _DY, "strand"))
                elif i == 0:
                    parts.append(_svg_line(x, y, 0.0, y + _DY / 2, "strand"))
                    parts.append(_svg_line(width, y + _DY / 2, xs[d - 1], y + _DY, "strand"))
                    parts.append(
                        f'<circle class="wrap" cx="{_fmt(6.0)}"'
                        f' cy="{_fmt(y + _DY / 4)}" r="3.0"/>'
                    )
                else:
                    parts.append(_svg_line(x, y, xs[i - 1], y + _DY, "strand"))
        elif index == d and d > 1:
            # cut pair: both strands pass through the margins
            _svg_cross(-_DX + xs[0], xs[0], y, sign, parts)
            _svg_cross(xs[d - 1], xs[d - 1] + _DX, y, sign, parts)
            parts.append(
                f'<circle class="wrap" cx="{_fmt(6.0)}" cy="{_fmt(y + _DY / 2)}" r="3.0"/>'
            )
            parts.append(
                f'<circle class="wrap" cx="{_fmt(width - 6.0)}"'
                f' cy="{_fmt(y + _DY / 2)}" r="3.0"/>'
            )
            moving = {0, d - 1}
        else:
            _svg_cross(xs[index - 1], xs[index], y, sign, parts)
            moving = {index - 1, index}
        for i, x in enumerate(xs):
            if i not in moving:
                parts.append(_svg_line(x, y, x, y + _DY, "strand"))
        y += _DY
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render(w: ArtinWord | AnnularWord, fmt: str = "svg") -> str:
    """Render a braid word as a static document.

    Artin words draw on n vertical strands; annular words add the cut
    margins, rotation rows, and wrap markers, with r letters expanded into
    bands plus rotation first.
    """
    if isinstance(w, AnnularWord):
        d, letters, annular = w.d, _expand(w), True
    elif isinstance(w, ArtinWord):
        d = w.n
        letters = [("b", abs(i), 1 if i > 0 else -1) for i in w.letters]
        annular = False
    else:
        raise TypeError(f"cannot render {type(w).__name__}")
    if fmt == "svg":
        return _svg(d, letters, annular)
    if fmt == "ascii":
        return _ascii(d, letters, annular)
    raise ValueError(f"format must be 'svg' or 'ascii', got {fmt!r}")

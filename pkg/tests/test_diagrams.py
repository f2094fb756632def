"""Tests for the static diagram renderer."""

import random
import xml.etree.ElementTree as ET

import pytest

from fewbraid.annular import AnnularWord, equal_annular, gen_b, gen_r, gen_tau
from fewbraid.artin import ArtinWord
from fewbraid.diagrams import _expand, render

_NS = "{http://www.w3.org/2000/svg}"


def svg_lines(svg: str, cls: str) -> list[dict]:
    root = ET.fromstring(svg)
    return [
        {k: float(e.get(k)) for k in ("x1", "y1", "x2", "y2")}
        for e in root.iter(_NS + "line")
        if e.get("class") == cls
    ]


def test_identity_is_straight_strands():
    for d in (1, 2, 5):
        art = render(ArtinWord(d, ()), fmt="ascii")
        rows = art.splitlines()
        assert all(row.count("|") == d for row in rows)
        assert "\\" not in art and "/" not in art

        strands = svg_lines(render(ArtinWord(d, ())), "strand")
        assert len(strands) == 2 * d
        assert all(seg["x1"] == seg["x2"] for seg in strands)


def test_single_crossing():
    art = render(ArtinWord(3, (1,)), fmt="ascii")
    assert art.count("\\") == 2 + 1  # two arms plus the over strand
    # strand 3 never moves
    col = art.splitlines()[0].rindex("|")
    assert all(row[col] == "|" for row in art.splitlines())


def test_crossing_sign_picks_the_over_strand():
    # positive: the strand rising in slot index passes in front
    over = max(svg_lines(render(ArtinWord(2, (1,))), "strand"), key=lambda s: abs(s["x2"] - s["x1"]))
    assert over["x1"] < over["x2"]
    over = max(svg_lines(render(ArtinWord(2, (-1,))), "strand"), key=lambda s: abs(s["x2"] - s["x1"]))
    assert over["x1"] > over["x2"]

    pos = render(ArtinWord(2, (1,)), fmt="ascii")
    neg = render(ArtinWord(2, (-1,)), fmt="ascii")
    assert pos.splitlines()[2].strip() == "\\"
    assert neg.splitlines()[2].strip() == "/"


def test_under_strand_breaks():
    strands = svg_lines(render(ArtinWord(2, (1,))), "strand")
    # seven segments: two half strands top and bottom, the over strand,
    # and the broken under strand in two halves
    assert len(strands) == 7
    diagonal = [s for s in strands if s["x1"] != s["x2"]]
    assert len(diagonal) == 3
    spans = sorted(abs(s["x2"] - s["x1"]) for s in diagonal)
    assert spans[0] == pytest.approx(spans[1])
    assert spans[1] < spans[2]


def test_rotation_has_wrap_marker():
    art = render(gen_tau(3), fmt="ascii")
    assert "%" in art and ">" in art

    svg = render(gen_tau(3))
    root = ET.fromstring(svg)
    wraps = [e for e in root.iter(_NS + "circle") if e.get("class") == "wrap"]
    assert len(wraps) == 1
    assert len(svg_lines(svg, "cut")) == 2


def test_cut_pair_passes_through_the_margins():
    svg = render(gen_b(3, 3))
    root = ET.fromstring(svg)
    wraps = [e for e in root.iter(_NS + "circle") if e.get("class") == "wrap"]
    assert len(wraps) == 2

    art = render(gen_b(3, 3), fmt="ascii")
    assert art.count("%") == 4


def test_artin_diagrams_have_no_annular_furniture():
    svg = render(ArtinWord(3, (1, -2)))
    assert svg_lines(svg, "cut") == []
    art = render(ArtinWord(3, (1, -2)), fmt="ascii")
    assert "%" not in art and ":" not in art


def test_expand_preserves_the_element():
    rng = random.Random(11)
    for _ in range(40):
        d = rng.randint(1, 5)
        letters = []
        for _ in range(rng.randint(0, 8)):
            kind = rng.choice(["b", "t", "r"] if d > 1 else ["t", "r"])
            index = 0 if kind == "t" else rng.randint(1, d)
            letters.append((kind, index, rng.choice([1, -1])))
        w = AnnularWord(d, tuple(letters))
        flat = AnnularWord(d, tuple(_expand(w)))
        assert all(kind != "r" for kind, _, _ in flat.letters)
        assert equal_annular(w, flat)


def test_svg_is_well_formed_and_stamped():
    rng = random.Random(23)
    for _ in range(20):
        d = rng.randint(2, 6)
        letters = tuple(
            rng.choice([1, -1]) * rng.randint(1, d - 1) for _ in range(rng.randint(0, 6))
        )
        svg = render(ArtinWord(d, letters))
        root = ET.fromstring(svg)
        assert root.get("data-stamp") == "fewbraid-diagram/1"


def test_render_is_deterministic():
    w = gen_r(2, 4) * gen_b(1, 4).inverse() * gen_tau(4)
    assert render(w) == render(w)
    assert render(w, fmt="ascii") == render(w, fmt="ascii")


def test_rejects_unknown_inputs():
    with pytest.raises(TypeError):
        render("braid")
    with pytest.raises(ValueError):
        render(ArtinWord(2, ()), fmt="png")

"""Braids of d points in the plane punctured at the origin.

Words use three letter families: ``b_j`` exchanges the neighbouring points
j, j+1 clockwise (indices cyclic, so ``b_d`` exchanges the pair straddling
the angle cut), ``tau`` rotates all points one slot counterclockwise, and
``r_j`` sends point j on one counterclockwise circuit around the puncture,
passing inside all other points.  As everywhere in this package, words are
stored in time order: ``u * v`` means "do u, then v".

Equality is decided through an injective embedding into the Artin group
B_{d+1} that adds the puncture as an extra strand: a word is mapped to a
braid of d+1 strands whose permutation fixes the puncture strand, and two
annular words are equal iff their images are.  The images of the generators
were pinned once by reading off explicit trajectory representatives with the
certified reader in :mod:`fewbraid.geometry`; the closed forms frozen here
are regression-tested against that readout.

The embedding frame has the puncture strand leftmost.  Deleting it gives the
projection to the ordinary braid group B_d with ``b_j -> sigma_j``; rotating
the frame of reference never enters because all words are reported at the
collinear basepoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .artin import (
    ArtinWord,
    GarsideNormalForm,
    equal,
    half_twist_word,
    nf_multiply,
    normal_form,
    permutation,
)
from .artin import _perm_word

Letter = tuple[str, int, int]

_KINDS = ("b", "r", "t")


def _check_letter(d: int, letter: Letter) -> None:
    kind, index, sign = letter
    if kind not in _KINDS:
        raise ValueError(f"unknown letter kind {kind!r}")
    if sign not in (1, -1):
        raise ValueError(f"letter sign must be +-1, got {sign}")
    if kind == "t":
        if index != 0:
            raise ValueError("tau carries no index")
    elif not 1 <= index <= d:
        raise ValueError(f"index {index} out of range for d={d}")
    elif kind == "b" and d == 1:
        raise ValueError("band letters need at least two points")


@dataclass(frozen=True)
class AnnularWord:
    """A word in the annular braid group on d points."""

    d: int
    letters: tuple[Letter, ...]

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError(f"need at least one point, got d={self.d}")
        for letter in self.letters:
            _check_letter(self.d, letter)

    @classmethod
    def identity(cls, d: int) -> AnnularWord:
        return cls(d, ())

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: AnnularWord) -> AnnularWord:
        if self.d != other.d:
            raise ValueError(f"point-count mismatch: {self.d} vs {other.d}")
        return AnnularWord(self.d, self.letters + other.letters)

    def inverse(self) -> AnnularWord:
        return AnnularWord(
            self.d, tuple((k, i, -s) for k, i, s in reversed(self.letters))
        )

    def __pow__(self, exponent: int) -> AnnularWord:
        base = self if exponent >= 0 else self.inverse()
        out = AnnularWord.identity(self.d)
        for _ in range(abs(exponent)):
            out = out * base
        return out

    def to_json(self) -> dict:
        symbols = []
        for kind, index, sign in self.letters:
            s = "t" if kind == "t" else f"{kind}{index}"
            symbols.append(s.upper() if sign < 0 else s)
        return {"d": self.d, "w": symbols}

    @classmethod
    def from_json(cls, data: dict) -> AnnularWord:
        letters = []
        for s in data["w"]:
            sign = -1 if s[0].isupper() else 1
            kind = s[0].lower()
            index = int(s[1:]) if kind != "t" else 0
            letters.append((kind, index, sign))
        return cls(data["d"], tuple(letters))


def gen_b(j: int, d: int) -> AnnularWord:
    """The clockwise exchange of neighbouring points j, j+1 (cyclic)."""
    return AnnularWord(d, (("b", j, 1),))


def gen_r(j: int, d: int) -> AnnularWord:
    """One ccw circuit of point j around the puncture, inside everybody."""
    return AnnularWord(d, (("r", j, 1),))


def gen_tau(d: int) -> AnnularWord:
    """One-slot ccw rotation of all points."""
    return AnnularWord(d, (("t", 0, 1),))


# ---------------------------------------------------------------------------
# embedding into B_{d+1}

_TAU_HAT_CACHE: dict[int, ArtinWord] = {}
_EMBED_CACHE: dict[tuple[int, str, int], ArtinWord] = {}


def tau_hat(d: int) -> ArtinWord:
    """Image of tau in B_{d+1}: Delta^{-2} times two permutation braids.

    The factor permutations (1-based images) are ``[d, d-1, ..., 1, d+1]``
    and ``[d+1, d, ..., 3, 1, 2]``; this is the left-greedy normal form of
    the trajectory readout of the rotation loop, stable across d.  The d-th
    power is the full twist Delta^{-2}, so one ccw slot rotation carries a
    (-2/d)-th of a twist, negative because ccw motions read as negative
    crossings under the package sign convention.
    """
    if d not in _TAU_HAT_CACHE:
        n = d + 1
        f1 = tuple(list(range(d - 1, -1, -1)) + [d])
        f2 = tuple([d - i for i in range(d - 1)] + [0, 1])
        word = (
            half_twist_word(n) ** -2
            * ArtinWord(n, tuple(_perm_word(f1)))
            * ArtinWord(n, tuple(_perm_word(f2)))
        )
        _TAU_HAT_CACHE[d] = word
    return _TAU_HAT_CACHE[d]


def _embed_letter(d: int, kind: str, index: int) -> ArtinWord:
    key = (d, kind, index)
    if key in _EMBED_CACHE:
        return _EMBED_CACHE[key]
    n = d + 1
    if kind == "t":
        word = tau_hat(d)
    elif kind == "b" and index < d:
        word = ArtinWord(n, (index + 1,))
    elif kind == "b":
        # the cut pair: b_d = tau b_1 tau^{-1}, checked geometrically
        t = tau_hat(d)
        word = t * ArtinWord(n, (2,)) * t.inverse()
    else:
        # r_1 = b_1 ... b_{d-1} tau, and r_{j+1} = tau^{-1} r_j tau
        t = tau_hat(d)
        r1 = ArtinWord(n, tuple(range(2, n))) * t
        word = t ** (1 - index) * r1 * t ** (index - 1)
    _EMBED_CACHE[key] = word
    return word


def embed(w: AnnularWord) -> ArtinWord:
    """The injective homomorphism into B_{d+1}, puncture strand leftmost."""
    letters: list[int] = []
    for kind, index, sign in w.letters:
        image = _embed_letter(w.d, kind, index)
        if sign < 0:
            image = image.inverse()
        letters.extend(image.letters)
    return ArtinWord(w.d + 1, tuple(letters))


# ---------------------------------------------------------------------------
# letter simulation: permutation of slots and winding numbers

def _simulate(w: AnnularWord) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Final slot of each strand and its signed count of cut crossings.

    Strands are labelled by starting slot 0..d-1.  tau advances every strand
    one slot, the wrapping strand crossing the cut ccw; b_d exchanges the cut
    pair, its two strands crossing the cut in opposite directions; r_j adds a
    full ccw turn to the strand currently at slot j.
    """
    d = w.d
    at = list(range(d))  # at[slot] = strand currently there
    wind = [0] * d
    for kind, index, sign in w.letters:
        if kind == "b":
            i = index - 1
            j = index % d
            if index == d and d > 1:
                wind[at[i]] += 1
                wind[at[j]] -= 1
            at[i], at[j] = at[j], at[i]
        elif kind == "t":
            if sign > 0:
                wind[at[-1]] += 1
                at.insert(0, at.pop())
            else:
                wind[at[0]] -= 1
                at.append(at.pop(0))
        else:
            wind[at[index - 1]] += sign
    final = [0] * d
    for slot, strand in enumerate(at):
        final[strand] = slot
    return tuple(final), tuple(wind)


def is_pure(w: AnnularWord) -> bool:
    """True iff every point returns to its starting slot."""
    final, _ = _simulate(w)
    return final == tuple(range(w.d))


@dataclass(frozen=True)
class WindingVector:
    """Signed number of turns around the puncture, one entry per strand,
    ordered by starting angle within the fundamental domain of angles
    ``[a, a + 2pi)``."""

    entries: tuple[int, ...]
    basepoint_angle: float


def winding(w: AnnularWord, a: float | None = None) -> WindingVector:
    """Winding numbers of a pure annular braid.

    The reference points sit at angles ``-pi/d + 2pi(j-1)/d``; entry order
    follows these angles from the cut at a, default ``a = -2pi/d``.  Additive
    on pure braids and constant on equality classes.
    """
    d = w.d
    if a is None:
        a = -2 * math.pi / d
    final, wind = _simulate(w)
    if final != tuple(range(d)):
        raise ValueError("winding requires a pure annular braid")
    angles = [-math.pi / d + 2 * math.pi * j / d for j in range(d)]
    order = sorted(range(d), key=lambda j: (angles[j] - a) % (2 * math.pi))
    return WindingVector(tuple(wind[j] for j in order), a)


# ---------------------------------------------------------------------------
# equality and projections

def _abelian_invariants(w: AnnularWord) -> tuple[int, int]:
    """Image in the rank-two abelianisation: (cut crossings, band count),
    counting each r letter as d-1 bands plus one crossing."""
    turns = 0
    bands = 0
    for kind, index, sign in w.letters:
        if kind == "b":
            bands += sign
        elif kind == "t":
            turns += sign
        else:
            turns += sign
            bands += sign * (w.d - 1)
    return turns, bands


_LETTER_NF_CACHE: dict[tuple[int, str, int, int], GarsideNormalForm] = {}


def free_reduce_annular(w: AnnularWord) -> AnnularWord:
    """Cancel adjacent inverse letter pairs; the group element is unchanged."""
    out: list[Letter] = []
    for letter in w.letters:
        if out and out[-1][:2] == letter[:2] and out[-1][2] == -letter[2]:
            out.pop()
        else:
            out.append(letter)
    return AnnularWord(w.d, tuple(out))


def annular_nf(w: AnnularWord) -> GarsideNormalForm:
    """Normal form of embed(w), accumulated letter by letter.

    Each annular letter contributes the cached normal form of its image, so
    long words never materialise as flat generator strings; the cost per
    letter scales with the running canonical length instead.
    """
    w = free_reduce_annular(w)
    acc = GarsideNormalForm(w.d + 1, 0)
    for kind, index, sign in w.letters:
        key = (w.d, kind, index, sign)
        if key not in _LETTER_NF_CACHE:
            image = _embed_letter(w.d, kind, index)
            if sign < 0:
                image = image.inverse()
            _LETTER_NF_CACHE[key] = normal_form(image)
        acc = nf_multiply(acc, _LETTER_NF_CACHE[key])
    return acc


def equal_annular(w1: AnnularWord, w2: AnnularWord) -> bool:
    """Exact equality, decided in B_{d+1} through the embedding."""
    if w1.d != w2.d:
        raise ValueError(f"point-count mismatch: {w1.d} vs {w2.d}")
    if w1.letters == w2.letters:
        return True
    if _abelian_invariants(w1) != _abelian_invariants(w2):
        return False
    if _simulate(w1)[0] != _simulate(w2)[0]:
        return False
    return annular_nf(w1) == annular_nf(w2)


def delete_strand(w: ArtinWord, start: int) -> ArtinWord:
    """Forget one strand of an Artin braid, named by its starting position
    (0-based).  Crossings involving the strand are dropped, the rest shift."""
    if not 0 <= start < w.n:
        raise ValueError(f"strand {start} out of range for n={w.n}")
    p = start
    letters: list[int] = []
    for letter in w.letters:
        i = abs(letter) - 1  # crossing acts on positions i, i+1
        if p == i:
            p = i + 1
        elif p == i + 1:
            p = i
        elif i > p:
            letters.append(letter - 1 if letter > 0 else letter + 1)
        else:
            letters.append(letter)
    return ArtinWord(w.n - 1, tuple(letters))


def project_to_disk(w: AnnularWord) -> ArtinWord:
    """Fill in the puncture: the induced homomorphism onto B_d.

    Deletes the puncture strand from the embedded image, so ``b_j -> sigma_j``
    for j <= d-1 and r_1 becomes trivial (its circuit bounds an empty disk
    once the puncture is gone).
    """
    return delete_strand(embed(w), 0)


# ---------------------------------------------------------------------------
# covering pullback and the wreath image

def pullback(w: AnnularWord, b: int) -> AnnularWord:
    """Lift through the b-fold covering of the punctured plane.

    Root trajectories of the base lift to b rotated copies: each band letter
    lifts to the b disjoint bands over it, and one slot of downstairs
    rotation is one slot upstairs.  r letters are first expanded into bands
    and rotations.
    """
    if b < 1:
        raise ValueError(f"covering degree must be >= 1, got {b}")
    if b == 1:
        return w
    d = w.d
    letters: list[Letter] = []
    for kind, index, sign in w.letters:
        if kind == "r":
            expansion = _expand_r(d, index, sign)
            for k, i, s in expansion.letters:
                _pull_letter(letters, d, b, k, i, s)
        else:
            _pull_letter(letters, d, b, kind, index, sign)
    return AnnularWord(b * d, tuple(letters))


def _expand_r(d: int, index: int, sign: int) -> AnnularWord:
    """r_j as a word in bands and rotations."""
    t = gen_tau(d)
    r1 = AnnularWord(d, tuple(("b", i, 1) for i in range(1, d))) * t
    word = t ** (1 - index) * r1 * t ** (index - 1)
    return word if sign > 0 else word.inverse()


def _pull_letter(
    out: list[Letter], d: int, b: int, kind: str, index: int, sign: int
) -> None:
    if kind == "t":
        out.append(("t", 0, sign))
    else:
        # the b bands over a band are disjoint; emit them in ascending order
        out.extend(("b", index + m * d, sign) for m in range(b))


@dataclass(frozen=True)
class WreathElement:
    """An element of the wreath product (Z/b) wr B_d: a braid on d strands
    carrying one residue modulo b per strand."""

    b: int
    base: ArtinWord
    decorations: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.b < 1:
            raise ValueError(f"need b >= 1, got {self.b}")
        if len(self.decorations) != self.base.n:
            raise ValueError("one decoration per strand required")
        if any(not 0 <= k < self.b for k in self.decorations):
            raise ValueError("decorations must be reduced modulo b")

    def __mul__(self, other: WreathElement) -> WreathElement:
        if self.b != other.b or self.base.n != other.base.n:
            raise ValueError("wreath shape mismatch")
        perm = permutation(self.base)
        dec = tuple(
            (self.decorations[j] + other.decorations[perm[j] - 1]) % self.b
            for j in range(self.base.n)
        )
        return WreathElement(self.b, self.base * other.base, dec)

    def same_element(self, other: WreathElement) -> bool:
        """Equality with the base braid compared up to braid equality."""
        return (
            self.b == other.b
            and self.decorations == other.decorations
            and equal(self.base, other.base)
        )

    def to_json(self) -> dict:
        return {
            "b": self.b,
            "base": self.base.to_json(),
            "dec": list(self.decorations),
        }

    @classmethod
    def from_json(cls, data: dict) -> WreathElement:
        return cls(
            data["b"], ArtinWord.from_json(data["base"]), tuple(data["dec"])
        )


def wreath_image(w: AnnularWord, b: int, witness: AnnularWord) -> WreathElement:
    """Image of a braid in the pullback subgroup under the decoration map.

    The witness is a downstairs word with pullback(witness, b) equal to w;
    this is verified, not trusted.  The base braid is the disk projection of
    the witness; the decoration of strand j is the number of upstairs slots
    (in units of d) by which the fibre over point j is cyclically advanced.
    """
    if w.d != b * witness.d:
        raise ValueError(f"expected {b * witness.d} points, got {w.d}")
    if not equal_annular(pullback(witness, b), w):
        raise ValueError("witness does not pull back to the given word")
    d = witness.d
    final, _ = _simulate(w)
    dec = tuple(final[j] // d % b for j in range(d))
    return WreathElement(b, project_to_disk(witness), dec)

"""Exact words and Garside normal forms in the Artin braid group B_n.

Words are stored in time order: ``letters[0]`` acts first, and the product
``u * v`` means "do u, then v".  Generators are written as signed integers,
``i`` for the positive crossing of strands i, i+1 and ``-i`` for its inverse,
with 1 <= i <= n-1.

Equality is decided through the left-greedy Delta-normal form with
permutation-braid factors, which is a complete invariant: two words represent
the same element of B_n iff their normal forms coincide.  Permutations are
handled internally as 0-based tuples ``p`` with ``p[i]`` the final position of
the strand starting at position ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


# ---------------------------------------------------------------------------
# permutation helpers (0-based image tuples, composed in time order)


def _pmul(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """Composition "first p, then q" on position tuples."""
    return tuple(q[x] for x in p)


def _pinv(p: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def _transposition(n: int, i: int) -> tuple[int, ...]:
    """Adjacent transposition of positions i, i+1 (0-based)."""
    p = list(range(n))
    p[i], p[i + 1] = p[i + 1], p[i]
    return tuple(p)


def _half_twist_perm(n: int) -> tuple[int, ...]:
    return tuple(range(n - 1, -1, -1))


def _perm_word(p: tuple[int, ...]) -> list[int]:
    """Time-ordered positive word (1-based letters) of the permutation braid p.

    Greedy: repeatedly split the lowest generator that can start p off the
    front.  Deterministic, length = inversion count.
    """
    n = len(p)
    p = list(p)
    word: list[int] = []
    i = 0
    while i < n - 1:
        if p[i] > p[i + 1]:
            word.append(i + 1)
            p[i], p[i + 1] = p[i + 1], p[i]
            i = i - 1 if i > 0 else 0
        else:
            i += 1
    return word


def _left_weight(
    x: tuple[int, ...], y: tuple[int, ...]
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Left-weight the adjacent factor pair (x, y): slide every generator that
    can start y but not finish x from the head of y to the tail of x."""
    n = len(x)
    xl, yl = list(x), list(y)
    xi = list(_pinv(x))
    i = 0
    while i < n - 1:
        # i starts y iff y has a descent at i; i finishes x iff x^{-1} does
        if yl[i] > yl[i + 1] and xi[i] < xi[i + 1]:
            a, b = xi[i], xi[i + 1]
            xl[a], xl[b] = i + 1, i
            xi[i], xi[i + 1] = b, a
            yl[i], yl[i + 1] = yl[i + 1], yl[i]
            i = i - 1 if i > 0 else 0
        else:
            i += 1
    return tuple(xl), tuple(yl)


def _push_right(
    nf: list[tuple[int, ...]],
    f: tuple[int, ...],
    iden: tuple[int, ...],
) -> None:
    """Append the simple factor f to the left-greedy list nf and renormalize.

    A single leftward cascade restores the left-greedy property when the
    prefix is already normalized; it stops at the first unchanged factor.
    """
    if f == iden:
        return
    nf.append(f)
    j = len(nf) - 1
    while j > 0:
        x, y = _left_weight(nf[j - 1], nf[j])
        if x == nf[j - 1]:
            break
        nf[j - 1] = x
        if y == iden:
            del nf[j]
        else:
            nf[j] = y
        j -= 1


# ---------------------------------------------------------------------------
# words


@dataclass(frozen=True)
class ArtinWord:
    """A word in the generators of B_n, stored in time order.

    ``n`` is the strand count and ``letters`` the signed 1-based generator
    indices.  The empty word is the identity.
    """

    n: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"strand count must be >= 1, got {self.n}")
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        for a in letters:
            if a == 0 or abs(a) > self.n - 1:
                raise ValueError(f"letter {a} out of range for B_{self.n}")

    @classmethod
    def identity(cls, n: int) -> "ArtinWord":
        return cls(n, ())

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "ArtinWord") -> "ArtinWord":
        return compose(self, other)

    def __pow__(self, k: int) -> "ArtinWord":
        base = self if k >= 0 else self.inverse()
        return ArtinWord(self.n, base.letters * abs(k))

    def inverse(self) -> "ArtinWord":
        return ArtinWord(self.n, tuple(-a for a in reversed(self.letters)))

    def to_json(self) -> dict:
        return {"n": self.n, "w": list(self.letters)}

    @classmethod
    def from_json(cls, data: dict) -> "ArtinWord":
        return cls(int(data["n"]), tuple(int(a) for a in data["w"]))


def compose(w1: ArtinWord, w2: ArtinWord) -> ArtinWord:
    """Concatenation in time order: w1 acts first."""
    if w1.n != w2.n:
        raise ValueError(f"strand count mismatch: {w1.n} != {w2.n}")
    return ArtinWord(w1.n, w1.letters + w2.letters)


def compose_all(n: int, words: Iterable[ArtinWord]) -> ArtinWord:
    out: tuple[int, ...] = ()
    for w in words:
        if w.n != n:
            raise ValueError(f"strand count mismatch: {w.n} != {n}")
        out += w.letters
    return ArtinWord(n, out)


def invert(w: ArtinWord) -> ArtinWord:
    return w.inverse()


def free_reduce(w: ArtinWord) -> ArtinWord:
    """Cancel adjacent inverse pairs until none remain."""
    stack: list[int] = []
    for a in w.letters:
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return ArtinWord(w.n, tuple(stack))


def permutation(w: ArtinWord) -> tuple[int, ...]:
    """Image in S_n: entry k-1 is the final position (1-based) of strand k."""
    p = tuple(range(w.n))
    for a in w.letters:
        p = _pmul(p, _transposition(w.n, abs(a) - 1))
    return tuple(x + 1 for x in p)


def exponent_sum(w: ArtinWord) -> int:
    return sum(1 if a > 0 else -1 for a in w.letters)


def half_twist_word(n: int) -> ArtinWord:
    """The positive half twist Delta as an explicit word."""
    return ArtinWord(n, tuple(_perm_word(_half_twist_perm(n))))


@dataclass(frozen=True)
class GarsideNormalForm:
    """Left-greedy Delta-normal form: Delta^infimum followed by simple factors.

    Factors are stored as permutations of {1..n} (1-based image tuples); no
    factor is the identity or the half twist, and each adjacent pair is
    left-weighted.  Equal normal forms iff equal group elements.
    """

    n: int
    infimum: int
    factors: tuple[tuple[int, ...], ...] = ()

    @property
    def supremum(self) -> int:
        return self.infimum + len(self.factors)

    @property
    def canonical_length(self) -> int:
        return len(self.factors)

    def is_identity(self) -> bool:
        return self.infimum == 0 and not self.factors

    def to_word(self) -> ArtinWord:
        delta = half_twist_word(self.n)
        if self.infimum < 0:
            delta = delta.inverse()
        letters = delta.letters * abs(self.infimum)
        for f in self.factors:
            letters += tuple(_perm_word(tuple(v - 1 for v in f)))
        return ArtinWord(self.n, letters)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "inf": self.infimum,
            "factors": [list(f) for f in self.factors],
        }


def normal_form(w: ArtinWord) -> GarsideNormalForm:
    """Left-greedy Delta-normal form of w.

    Each letter contributes one permutation-braid factor (sigma_i^{-1} is
    Delta^{-1} times the lift of w0*t_i); the Delta^{-1}s are moved to the
    front, flipping the factors they pass, and the factor list is then
    normalized incrementally.
    """
    w = free_reduce(w)
    n = w.n
    iden = tuple(range(n))
    w0 = _half_twist_perm(n)
    negs_after = sum(1 for a in w.letters if a < 0)
    inf = -negs_after
    nf: list[tuple[int, ...]] = []
    for a in w.letters:
        if a < 0:
            negs_after -= 1
            f = _pmul(w0, _transposition(n, -a - 1))
        else:
            f = _transposition(n, a - 1)
        if negs_after & 1:
            f = _pmul(w0, _pmul(f, w0))
        _push_right(nf, f, iden)
    lead = 0
    while lead < len(nf) and nf[lead] == w0:
        lead += 1
    factors = tuple(tuple(v + 1 for v in p) for p in nf[lead:])
    return GarsideNormalForm(n, inf + lead, factors)


def nf_multiply(a: GarsideNormalForm, b: GarsideNormalForm) -> GarsideNormalForm:
    """Normal form of the time-order product a*b, computed factorwise.

    The Delta powers add; a's factors pass through Delta^b.infimum, which
    flips them when that power is odd, and b's factors are then pushed in
    one at a time.  Cost is O(len(a) * len(b)) factor comparisons, so
    accumulating a long product left to right stays cheap while the running
    canonical length is small.
    """
    if a.n != b.n:
        raise ValueError(f"strand count mismatch: {a.n} != {b.n}")
    n = a.n
    iden = tuple(range(n))
    w0 = _half_twist_perm(n)
    nf = [tuple(v - 1 for v in f) for f in a.factors]
    if b.infimum & 1:
        nf = [_pmul(w0, _pmul(f, w0)) for f in nf]
    for f in b.factors:
        _push_right(nf, tuple(v - 1 for v in f), iden)
    lead = 0
    while lead < len(nf) and nf[lead] == w0:
        lead += 1
    factors = tuple(tuple(v + 1 for v in p) for p in nf[lead:])
    return GarsideNormalForm(n, a.infimum + b.infimum + lead, factors)


def equal(w1: ArtinWord, w2: ArtinWord) -> bool:
    """Exact word-problem test via normal forms, with cheap prefilters."""
    if w1.n != w2.n:
        raise ValueError(f"strand count mismatch: {w1.n} != {w2.n}")
    a, b = free_reduce(w1), free_reduce(w2)
    if a.letters == b.letters:
        return True
    if exponent_sum(a) != exponent_sum(b):
        return False
    if permutation(a) != permutation(b):
        return False
    return normal_form(a) == normal_form(b)


def is_identity(w: ArtinWord) -> bool:
    return normal_form(w).is_identity()

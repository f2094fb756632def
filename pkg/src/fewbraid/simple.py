"""Simple braids and the staircase that rebuilds single bands from pairs.

A *simple* braid is a product of disjoint band generators, one per index in
its support; *sparse* supports keep cyclic gaps of at least three.  Two
sparse simple braids combine through the bullet product

    x [bullet] y  =  x^{-1} y^{-1} x y x        (composition order)

into another simple braid whose support is computed combinatorially by
``bullet_support``.  Once a subgroup owns a two-band shifter (adjacent
``b_j b_{j+1}^{-1}`` or skip ``b_j b_{j+2}^{-1}``), any simple braid can be
slid index by index into the left-packed form {1, 3, ..., 2n-1}; subtracting
packed supports of coprime sizes then walks down to a single band.
``euclid_word`` drives the whole pipeline for a pair of divisors k, l of d
and emits an explicit word evaluating to the simple braid of the combined
lattice support, and ``generation_witness`` folds several divisor pairs into
a word for one band.

Words are kept symbolic: expression trees over named atoms with the
conjugation and bullet macros unexpanded.  All products in the trees use
composition order (the rightmost factor acts first, like function
composition); evaluation converts to the time order used by AnnularWord.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, lcm

from .annular import AnnularWord, annular_nf, gen_b, gen_tau
from .artin import GarsideNormalForm, nf_multiply

__all__ = [
    "Support",
    "simple_braid",
    "b_kj",
    "bullet_support",
    "Atom",
    "Inverse",
    "Compose",
    "Conj",
    "Bullet",
    "Rotate",
    "GeneratorWord",
    "evaluate",
    "evaluate_expr",
    "evaluate_nf",
    "atom_stream",
    "substitute",
    "expr_to_json",
    "expr_from_json",
    "shift_word",
    "euclid_word",
    "generation_witness",
]


def _cyc(d: int, x: int) -> int:
    """Reduce an index into {1..d}."""
    return (x - 1) % d + 1


# ---------------------------------------------------------------------------
# supports

@dataclass(frozen=True)
class Support:
    """A subset of the d marked points, stored strictly increasing."""

    d: int
    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError(f"need at least one point, got d={self.d}")
        prev = 0
        for x in self.indices:
            if not 1 <= x <= self.d:
                raise ValueError(f"index {x} outside 1..{self.d}")
            if x <= prev:
                raise ValueError("indices must be strictly increasing")
            prev = x

    @classmethod
    def lattice(cls, k: int, j: int, d: int) -> Support:
        """All indices congruent to j modulo k."""
        start = (j - 1) % k + 1
        return cls(d, tuple(range(start, d + 1, k)))

    @classmethod
    def packed(cls, n: int, d: int) -> Support:
        """The left-packed support {1, 3, ..., 2n-1}."""
        return cls(d, tuple(range(1, 2 * n, 2)))

    def __len__(self) -> int:
        return len(self.indices)

    def __contains__(self, x: int) -> bool:
        return x in self.indices

    def gaps(self) -> tuple[int, ...]:
        """Cyclic gaps between consecutive indices; a singleton has gap d."""
        idx = self.indices
        if not idx:
            return ()
        around = [idx[i + 1] - idx[i] for i in range(len(idx) - 1)]
        around.append(idx[0] + self.d - idx[-1])
        return tuple(around)

    @property
    def is_simple(self) -> bool:
        return all(g >= 2 for g in self.gaps())

    @property
    def is_sparse(self) -> bool:
        return all(g >= 3 for g in self.gaps())

    def shift(self, t: int) -> Support:
        return Support(self.d, tuple(sorted(_cyc(self.d, x + t) for x in self.indices)))


def simple_braid(J: Support) -> AnnularWord:
    """The product of the bands named by a simple support.

    All factors commute, so the ascending order chosen here is one
    representative of a single group element.
    """
    if not J.is_simple:
        raise ValueError(f"support {J.indices} is not simple in d={J.d}")
    return AnnularWord(J.d, tuple(("b", j, 1) for j in J.indices))


def b_kj(k: int, j: int, d: int) -> AnnularWord:
    """The simple braid on the lattice of indices congruent to j mod k."""
    if k < 2 or d % k != 0:
        raise ValueError(f"k={k} must be a divisor of d={d} with k >= 2")
    if not 1 <= j <= d:
        raise ValueError(f"index j={j} outside 1..{d}")
    return simple_braid(Support.lattice(k, j, d))


def _distance(d: int, x: int, S: tuple[int, ...]) -> int:
    """Cyclic distance from x to the set S; d when S is empty."""
    if not S:
        return d
    return min(min((x - y) % d, (y - x) % d) for y in S)


def bullet_support(J: Support, K: Support) -> Support:
    """Support of the bullet product of two sparse simple braids.

    Keeps the intersection, the indices of J far (distance >= 2) from K, and
    the indices of K at distance exactly one from J.  The result is always
    simple.
    """
    if J.d != K.d:
        raise ValueError(f"point-count mismatch: {J.d} vs {K.d}")
    if not (J.is_sparse and K.is_sparse):
        raise ValueError("bullet_support requires sparse supports")
    d = J.d
    js, ks = set(J.indices), set(K.indices)
    out = js & ks
    out |= {x for x in js if _distance(d, x, K.indices) >= 2}
    out |= {y for y in ks if _distance(d, y, J.indices) == 1}
    result = Support(d, tuple(sorted(out)))
    assert result.is_simple, (J.indices, K.indices, result.indices)
    return result


# ---------------------------------------------------------------------------
# symbolic words

@dataclass(frozen=True)
class Atom:
    """A named letter, bound to an AnnularWord at evaluation time."""

    name: str


@dataclass(frozen=True)
class Inverse:
    arg: object


@dataclass(frozen=True)
class Compose:
    """Product in composition order: the rightmost factor acts first."""

    factors: tuple[object, ...]

    def __init__(self, *factors: object) -> None:
        object.__setattr__(self, "factors", tuple(factors))


@dataclass(frozen=True)
class Conj:
    """outer inner outer^{-1}, in composition order."""

    outer: object
    inner: object


@dataclass(frozen=True)
class Bullet:
    """x^{-1} y^{-1} x y x, in composition order."""

    x: object
    y: object


@dataclass(frozen=True)
class Rotate:
    """Conjugate by the t-th power of the rotation: band j maps to j + t."""

    arg: object
    turns: int


def _emit(node: object, sign: int, d: int, bindings: dict, out: list, memo: dict) -> None:
    key = (id(node), sign)
    cached = memo.get(key)
    if cached is not None:
        out.extend(cached)
        return
    start = len(out)
    if isinstance(node, Atom):
        word = bindings.get(node.name)
        if word is None:
            raise ValueError(f"unbound atom {node.name!r}")
        if word.d != d:
            raise ValueError(f"atom {node.name!r} lives in d={word.d}, expected {d}")
        letters = word.letters if sign > 0 else word.inverse().letters
        out.extend(letters)
    elif isinstance(node, Inverse):
        _emit(node.arg, -sign, d, bindings, out, memo)
    elif isinstance(node, Compose):
        order = reversed(node.factors) if sign > 0 else node.factors
        for f in order:
            _emit(f, sign, d, bindings, out, memo)
    elif isinstance(node, Conj):
        _emit(node.outer, -1, d, bindings, out, memo)
        _emit(node.inner, sign, d, bindings, out, memo)
        _emit(node.outer, 1, d, bindings, out, memo)
    elif isinstance(node, Bullet):
        signs = (1, 1, 1, -1, -1) if sign > 0 else (1, 1, -1, -1, -1)
        for part, s in zip((node.x, node.y, node.x, node.y, node.x), signs):
            _emit(part, s, d, bindings, out, memo)
    elif isinstance(node, Rotate):
        t = node.turns
        out.extend((("t", 0, -1 if t > 0 else 1),) * abs(t))
        _emit(node.arg, sign, d, bindings, out, memo)
        out.extend((("t", 0, 1 if t > 0 else -1),) * abs(t))
    else:
        raise TypeError(f"not an expression node: {node!r}")
    memo[key] = tuple(out[start:])


def evaluate_expr(expr: object, d: int, bindings: dict) -> AnnularWord:
    """Expand macros, substitute atom bindings, concatenate in time order."""
    out: list = []
    _emit(expr, 1, d, bindings, out, {})
    return AnnularWord(d, tuple(out))


def _stream(node: object, sign: int, out: list, memo: dict) -> None:
    key = (id(node), sign)
    cached = memo.get(key)
    if cached is not None:
        out.extend(cached)
        return
    start = len(out)
    if isinstance(node, Atom):
        out.append((node.name, sign))
    elif isinstance(node, Inverse):
        _stream(node.arg, -sign, out, memo)
    elif isinstance(node, Compose):
        order = reversed(node.factors) if sign > 0 else node.factors
        for f in order:
            _stream(f, sign, out, memo)
    elif isinstance(node, Conj):
        _stream(node.outer, -1, out, memo)
        _stream(node.inner, sign, out, memo)
        _stream(node.outer, 1, out, memo)
    elif isinstance(node, Bullet):
        signs = (1, 1, 1, -1, -1) if sign > 0 else (1, 1, -1, -1, -1)
        for part, s in zip((node.x, node.y, node.x, node.y, node.x), signs):
            _stream(part, s, out, memo)
    elif isinstance(node, Rotate):
        t = node.turns
        out.extend((("tau", -1 if t > 0 else 1),) * abs(t))
        _stream(node.arg, sign, out, memo)
        out.extend((("tau", 1 if t > 0 else -1),) * abs(t))
    else:
        raise TypeError(f"not an expression node: {node!r}")
    memo[key] = tuple(out[start:])


def atom_stream(expr: object) -> tuple[tuple[str, int], ...]:
    """Signed atom occurrences in evaluation (time) order.

    Rotations appear under the reserved name "tau", so substituting a word
    or a loop for every name along the stream reproduces the evaluation;
    atoms must not themselves be called "tau".
    """
    out: list = []
    _stream(expr, 1, out, {})
    return tuple(out)


@dataclass(frozen=True)
class GeneratorWord:
    """A symbolic word over bound atoms, with construction provenance.

    ``branch`` records which construction produced the word; ``stages``
    holds named sub-expressions worth checking on their own (they share the
    word's bindings).
    """

    d: int
    expr: object
    bindings: dict
    branch: str | None = None
    stages: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "branch": self.branch,
            "expr": expr_to_json(self.expr),
            "atoms": {k: v.to_json() for k, v in sorted(self.bindings.items())},
            "stages": {k: expr_to_json(v) for k, v in sorted(self.stages.items())},
        }

    @classmethod
    def from_json(cls, data: dict) -> GeneratorWord:
        return cls(
            data["d"],
            expr_from_json(data["expr"]),
            {k: AnnularWord.from_json(v) for k, v in data["atoms"].items()},
            data.get("branch"),
            {k: expr_from_json(v) for k, v in data.get("stages", {}).items()},
        )


def evaluate(gw: GeneratorWord, bindings: dict | None = None) -> AnnularWord:
    """Evaluate a generator word, optionally overriding atom bindings."""
    merged = dict(gw.bindings)
    if bindings:
        merged.update(bindings)
    return evaluate_expr(gw.expr, gw.d, merged)


_TAU_NF_CACHE: dict[tuple[int, int], GarsideNormalForm] = {}


def _tau_power_nf(d: int, t: int) -> GarsideNormalForm:
    key = (d, t)
    cached = _TAU_NF_CACHE.get(key)
    if cached is None:
        if t == 0:
            cached = GarsideNormalForm(d + 1, 0)
        else:
            step = 1 if t > 0 else -1
            letter = annular_nf(AnnularWord(d, (("t", 0, step),)))
            cached = nf_multiply(_tau_power_nf(d, t - step), letter)
        _TAU_NF_CACHE[key] = cached
    return cached


def _nf_expr(node: object, sign: int, d: int, bindings: dict, memo: dict) -> GarsideNormalForm:
    key = (id(node), sign)
    cached = memo.get(key)
    if cached is not None:
        return cached
    if isinstance(node, Atom):
        word = bindings.get(node.name)
        if word is None:
            raise ValueError(f"unbound atom {node.name!r}")
        if word.d != d:
            raise ValueError(f"atom {node.name!r} lives in d={word.d}, expected {d}")
        nf = annular_nf(word if sign > 0 else word.inverse())
    elif isinstance(node, Inverse):
        nf = _nf_expr(node.arg, -sign, d, bindings, memo)
    elif isinstance(node, Compose):
        order = reversed(node.factors) if sign > 0 else node.factors
        nf = GarsideNormalForm(d + 1, 0)
        for f in order:
            nf = nf_multiply(nf, _nf_expr(f, sign, d, bindings, memo))
    elif isinstance(node, Conj):
        nf = _nf_expr(node.outer, -1, d, bindings, memo)
        nf = nf_multiply(nf, _nf_expr(node.inner, sign, d, bindings, memo))
        nf = nf_multiply(nf, _nf_expr(node.outer, 1, d, bindings, memo))
    elif isinstance(node, Bullet):
        signs = (1, 1, 1, -1, -1) if sign > 0 else (1, 1, -1, -1, -1)
        nf = GarsideNormalForm(d + 1, 0)
        for part, s in zip((node.x, node.y, node.x, node.y, node.x), signs):
            nf = nf_multiply(nf, _nf_expr(part, s, d, bindings, memo))
    elif isinstance(node, Rotate):
        t = node.turns
        nf = nf_multiply(_tau_power_nf(d, -t), _nf_expr(node.arg, sign, d, bindings, memo))
        nf = nf_multiply(nf, _tau_power_nf(d, t))
    else:
        raise TypeError(f"not an expression node: {node!r}")
    memo[key] = nf
    return nf


def evaluate_nf(gw: GeneratorWord, bindings: dict | None = None) -> GarsideNormalForm:
    """Normal form of the evaluation, combined over the expression tree.

    Shared subexpressions are normalised once each, so nested conjugation
    towers whose flat letter count grows exponentially stay cheap: every
    node's value is a conjugate of a short braid with a short normal form.
    """
    merged = dict(gw.bindings)
    if bindings:
        merged.update(bindings)
    return _nf_expr(gw.expr, 1, gw.d, merged, {})


def substitute(expr: object, table: dict) -> object:
    """Replace named atoms by expressions, rebuilding the tree."""
    if isinstance(expr, Atom):
        return table.get(expr.name, expr)
    if isinstance(expr, Inverse):
        return Inverse(substitute(expr.arg, table))
    if isinstance(expr, Compose):
        return Compose(*(substitute(f, table) for f in expr.factors))
    if isinstance(expr, Conj):
        return Conj(substitute(expr.outer, table), substitute(expr.inner, table))
    if isinstance(expr, Bullet):
        return Bullet(substitute(expr.x, table), substitute(expr.y, table))
    if isinstance(expr, Rotate):
        return Rotate(substitute(expr.arg, table), expr.turns)
    raise TypeError(f"not an expression node: {expr!r}")


def expr_to_json(expr: object) -> object:
    if isinstance(expr, Atom):
        return {"atom": expr.name}
    if isinstance(expr, Inverse):
        return {"inv": expr_to_json(expr.arg)}
    if isinstance(expr, Compose):
        return {"compose": [expr_to_json(f) for f in expr.factors]}
    if isinstance(expr, Conj):
        return {"conj": [expr_to_json(expr.outer), expr_to_json(expr.inner)]}
    if isinstance(expr, Bullet):
        return {"bullet": [expr_to_json(expr.x), expr_to_json(expr.y)]}
    if isinstance(expr, Rotate):
        return {"rotate": [expr_to_json(expr.arg), expr.turns]}
    raise TypeError(f"not an expression node: {expr!r}")


def expr_from_json(data: object) -> object:
    if not isinstance(data, dict) or len(data) != 1:
        raise ValueError(f"malformed expression node: {data!r}")
    (op, body), = data.items()
    if op == "atom":
        return Atom(body)
    if op == "inv":
        return Inverse(expr_from_json(body))
    if op == "compose":
        return Compose(*(expr_from_json(f) for f in body))
    if op == "conj":
        return Conj(expr_from_json(body[0]), expr_from_json(body[1]))
    if op == "bullet":
        return Bullet(expr_from_json(body[0]), expr_from_json(body[1]))
    if op == "rotate":
        return Rotate(expr_from_json(body[0]), body[1])
    raise ValueError(f"unknown expression op {op!r}")


# ---------------------------------------------------------------------------
# support shifting

def _pack_plan(d: int, indices: tuple[int, ...], mode: str, rot: int) -> list:
    """Moves taking the support rotated by rot down to the packed form.

    After the rotation the smallest index must land on 1.  Moves are emitted
    rank by rank: ("L1", j) slides the band at j to j-1 against the adjacent
    shifter, ("L2", j) to j-2 against the skip shifter, and ("S0", j) to j-1
    by the conjugation trick that needs a neighbour exactly three below.
    Preconditions of every move are checked against the evolving support.
    """
    pos = sorted(_cyc(d, x + rot) for x in indices)
    if pos and pos[0] != 1:
        raise ValueError("rotation must bring the smallest index to 1")
    occupied = set(pos)
    moves: list = []

    def slide(j: int, step: tuple) -> int:
        kind = step[0]
        width = 1 if kind in ("L1", "S0") else 2
        if kind == "L1":
            assert _cyc(d, j - 2) not in occupied
        elif kind == "L2":
            assert _cyc(d, j - 2) not in occupied and _cyc(d, j - 3) not in occupied
        else:
            assert _cyc(d, j - 3) in occupied and _cyc(d, j - 2) not in occupied
        occupied.remove(j)
        occupied.add(j - width)
        moves.append(step)
        return j - width

    for r in range(len(pos)):
        goal = 2 * r + 1
        j = pos[r]
        if mode == "adjacent":
            while j > goal:
                j = slide(j, ("L1", j))
        else:
            while j - goal >= 2:
                j = slide(j, ("L2", j))
            if j == goal + 1:
                j = slide(j, ("S0", j))
        pos[r] = j
    assert pos == [2 * r + 1 for r in range(len(pos))]
    return moves


def _apply_move(expr: object, move: tuple, prov) -> object:
    kind, j = move
    if kind == "L1":
        return Compose(prov(j - 1), expr)
    if kind == "L2":
        return Compose(prov(j - 2), expr)
    # conjugation step: ((X conj expr^{-1}) conj expr) with X the inverted
    # shifter three slots below, moving the band at j down one slot
    return Conj(Conj(Inverse(prov(j - 3)), Inverse(expr)), expr)


def _unapply_move(expr: object, move: tuple, prov) -> object:
    kind, j = move
    if kind == "L1":
        return Compose(Inverse(prov(j - 1)), expr)
    if kind == "L2":
        return Compose(Inverse(prov(j - 2)), expr)
    raise ValueError(
        "the one-slot conjugation step cannot be undone with the declared "
        "shifters; the target is unreachable in this mode"
    )


def _rotation_candidates(d: int, indices: tuple[int, ...], mode: str) -> list:
    """All plans bringing some element to 1, fewest conjugation steps first."""
    plans = []
    for e in indices or (1,):
        rot = 1 - e
        moves = _pack_plan(d, indices, mode, rot)
        cost = sum(1 for m in moves if m[0] == "S0")
        plans.append((cost, rot, moves))
    plans.sort(key=lambda p: (p[0], -p[1]))
    return plans


def shift_word(J: Support, mode: str, target: Support) -> GeneratorWord:
    """A word sliding the simple braid on J to the one on target.

    The word is over the atom ``bJ`` and rotated copies of the declared
    ``shift`` element (adjacent b_1 b_2^{-1} or skip b_1 b_3^{-1}); both
    supports are packed to {1, 3, ...} and the target-side moves are undone.
    In skip mode a target whose packing needs the one-slot conjugation step
    is rejected: that step has no inverse over the skip shifters alone.
    """
    if mode not in ("adjacent", "skip"):
        raise ValueError(f"unknown mode {mode!r}")
    if J.d != target.d:
        raise ValueError(f"point-count mismatch: {J.d} vs {target.d}")
    if len(J) != len(target):
        raise ValueError("supports must have equal cardinality")
    if not (J.is_simple and target.is_simple):
        raise ValueError("both supports must be simple")
    d = J.d
    gap = 2 if mode == "skip" else 1
    bindings = {
        "bJ": simple_braid(J),
        "shift": AnnularWord(d, (("b", 1 + gap, -1), ("b", 1, 1))),
    }

    def prov(m: int) -> object:
        base = Atom("shift")
        return Rotate(base, m - 1) if m != 1 else base

    if J.indices == target.indices:
        return GeneratorWord(d, Atom("bJ"), bindings, f"{mode} shift")

    _, rot_j, moves_j = _rotation_candidates(d, J.indices, mode)[0]
    expr: object = Atom("bJ")
    if rot_j:
        expr = Rotate(expr, rot_j)
    for mv in moves_j:
        expr = _apply_move(expr, mv, prov)

    for _, rot_t, moves_t in _rotation_candidates(d, target.indices, mode):
        if any(m[0] == "S0" for m in moves_t):
            continue
        for mv in reversed(moves_t):
            expr = _unapply_move(expr, mv, prov)
        if rot_t:
            expr = Rotate(expr, -rot_t)
        return GeneratorWord(d, expr, bindings, f"{mode} shift")
    raise ValueError(
        "target packing needs the one-slot conjugation step in every "
        "rotation; unreachable with invertible skip moves"
    )


# ---------------------------------------------------------------------------
# the Euclidean staircase

def _parse_atom_name(name: str) -> tuple[int, int]:
    k, j = name[1:].split("_")
    return int(k), int(j)


def _staircase(d: int, m: int, em: object, n: int, en: object) -> object:
    """From words for the packed braids of coprime sizes m and n, subtract
    supports down to a single band.

    Each step divides the larger packed braid by the smaller, leaving a
    simple braid on the difference, and rotates it back to packed position;
    the rotation amount is searched and must be unique.
    """
    assert gcd(m, n) == 1
    while 1 not in (m, n):
        if m < n:
            m, em, n, en = n, en, m, em
        diff = set(Support.packed(m, d).indices) - set(Support.packed(n, d).indices)
        want = set(Support.packed(m - n, d).indices)
        hits = [
            t for t in range(d)
            if {_cyc(d, x + t) for x in diff} == want
        ]
        assert len(hits) == 1, (m, n, hits)
        t = hits[0] if hits[0] <= d // 2 else hits[0] - d
        expr: object = Compose(em, Inverse(en))
        if t:
            expr = Rotate(expr, t)
        m, em = m - n, expr
    return em if m == 1 else en


def euclid_word(k: int, l: int, d: int) -> GeneratorWord:
    """A word over the lattice braids of two divisors that evaluates to the
    simple braid of their combined lattice, b_{lcm(k,l),1}.

    The construction follows the quotient shape of the pair: with
    a = gcd(k,l) and coprime quotients k' > l' (swapping if needed), the
    point count first drops to a*k'*l' and the result is pulled back.  Six
    shapes remain; each builds a two-band shifter from bullet products of
    the lattice braids, packs both lattices, and runs the subtraction
    staircase.  The branch taken is reported on the word, and the staged
    expressions worth independent checks are exposed under ``stages``:
    in the l=2, k=3 branch stage_2^{-1} stage_1 evaluates to the third
    band, and in the l=2, k>=5 branch stage_3 evaluates to b_2 b_{k+4}.
    """
    if d < 2 or k < 2 or l < 2 or d % k or d % l:
        raise ValueError(f"k={k} and l={l} must be divisors >= 2 of d={d}")
    if k == l:
        raise ValueError("divisors must be distinct")

    bindings: dict = {}

    def A(kk: int, j: int) -> Atom:
        name = f"b{kk}_{j}"
        if name not in bindings:
            bindings[name] = b_kj(kk, j, d)
        return Atom(name)

    if l % k == 0:
        return GeneratorWord(d, A(l, 1), bindings, "divides")
    if k % l == 0:
        return GeneratorWord(d, A(k, 1), bindings, "divides")

    a = gcd(k, l)
    K, L = (k, l) if k // a > l // a else (l, k)
    Kp, Lp = K // a, L // a
    dp = a * Kp * Lp
    if dp != d:
        inner = euclid_word(k, l, dp)
        rebound = {}
        for name in inner.bindings:
            kk, jj = _parse_atom_name(name)
            rebound[name] = b_kj(kk, jj, d)
        return GeneratorWord(
            d,
            inner.expr,
            rebound,
            f"{inner.branch}; pulled back through x^{d // dp}",
            dict(inner.stages),
        )

    Jk1 = Support.lattice(K, 1, d)
    stages: dict = {}

    if a >= 3:
        branch = "a>=3"
        blt = Bullet(A(K, 1), A(L, 2))
        pred = bullet_support(Jk1, Support.lattice(L, 2, d))
        assert set(pred.indices) == (set(Jk1.indices) - {1}) | {2}
        shifter: object = Compose(A(K, 1), Inverse(blt))  # b_1 b_2^{-1}
        base, mode = 1, "adjacent"
        stages["stage_1"] = blt
    elif a == 2 and Lp >= 3:
        branch = "a=2,l'>=3"
        Jl1 = set(Support.lattice(L, 1, d).indices)
        lo = [x for x in Jk1.indices if _cyc(d, x + 2) in Jl1]
        hi = [x for x in Jk1.indices if _cyc(d, x - 2) in Jl1]
        assert len(lo) == 1 and len(hi) == 1, (lo, hi)
        jp = hi[0]
        blt = Bullet(A(K, 1), A(L, 2))
        pred = bullet_support(Jk1, Support.lattice(L, 2, d))
        assert set(pred.indices) == (set(Jk1.indices) - {1, jp}) | {2, _cyc(d, jp - 1)}
        blt2 = Bullet(Rotate(blt, 1), A(K, 1))
        pred2 = bullet_support(pred.shift(1), Jk1)
        assert set(pred2.indices) == (set(Jk1.indices) - {1}) | {3}
        shifter = Compose(A(K, 1), Inverse(blt2))  # b_1 b_3^{-1}
        base, mode = 1, "skip"
        stages["stage_1"], stages["stage_2"] = blt, blt2
    elif a == 2:
        branch = "a=2,l'=2"
        blt = Bullet(A(K, 1), A(4, 2))
        pred = bullet_support(Jk1, Support.lattice(4, 2, d))
        assert set(pred.indices) == {2, K}
        pair = Rotate(blt, 1)  # b_3 b_{K+1}
        shifter = Compose(A(K, 1), Inverse(pair))  # b_1 b_3^{-1}
        base, mode = 1, "skip"
        stages["stage_1"] = pair
    elif Lp >= 3:
        branch = "a=1,l>=3"
        lo = [x for x in Jk1.indices if x % L == 0]
        hi = [x for x in Jk1.indices if x % L == 2 % L]
        assert len(lo) == 1 and len(hi) == 1, (lo, hi)
        jm, jp = lo[0], hi[0]
        blt = Bullet(A(K, 1), A(L, 1))
        pred = bullet_support(Jk1, Support.lattice(L, 1, d))
        assert set(pred.indices) == (
            set(Jk1.indices) - {jm, jp}
        ) | {_cyc(d, jm + 1), _cyc(d, jp - 1)}
        blt2 = Bullet(Rotate(blt, 1), A(K, 1))
        pred2 = bullet_support(pred.shift(1), Jk1)
        assert set(pred2.indices) == (set(Jk1.indices) - {jm}) | {_cyc(d, jm + 2)}
        shifter = Compose(A(K, 1), Inverse(blt2))  # b_{jm} b_{jm+2}^{-1}
        base, mode = jm, "skip"
        stages["stage_1"], stages["stage_2"] = blt, blt2
    elif Kp == 3:
        # d = 6: two staged conjugates whose quotient is the third band
        branch = "l=2,k=3"
        s1 = Compose(
            Rotate(Compose(Inverse(A(2, 2)), A(3, 1), Inverse(A(2, 1))), -1),
            A(3, 2),
            A(3, 1),
        )
        s2 = Compose(Inverse(A(2, 1)), Bullet(A(3, 1), A(2, 1)))
        stages["stage_1"], stages["stage_2"] = s1, s2
        expr = Rotate(Compose(Inverse(s2), s1), -2)
        return GeneratorWord(d, expr, bindings, branch, stages)
    else:
        branch = "l=2,k>=5"
        s3 = Conj(Compose(Inverse(A(K, 2)), Inverse(A(K, 1)), Inverse(A(2, 1))), A(K, 1))
        s4 = Compose(A(K, 1), A(K, 2), A(K, 3), A(K, 4))
        s5 = Conj(Inverse(Compose(s4, Rotate(s3, K + 1), A(K, 1))), Rotate(s3, 1))
        stages["stage_1"], stages["stage_2"], stages["stage_3"] = s3, s4, s5
        pair = Rotate(s5, -1)  # b_1 b_{K+3}
        shifter = Compose(A(K, 1), Inverse(pair))  # b_{K+1} b_{K+3}^{-1}
        base, mode = K + 1, "skip"

    def prov(m: int) -> object:
        return Rotate(shifter, m - base) if m != base else shifter

    def packed(kk: int) -> object:
        expr: object = A(kk, 1)
        for mv in _pack_plan(d, Support.lattice(kk, 1, d).indices, mode, 0):
            expr = _apply_move(expr, mv, prov)
        return expr

    expr = _staircase(d, Kp, packed(L), Lp, packed(K))
    return GeneratorWord(d, expr, bindings, branch, stages)


def generation_witness(A: tuple[int, ...], j: int) -> GeneratorWord:
    """A word for the single band b_j over the lattice braids available from
    the inner exponents of a reduced fewnomial support.

    Each inner exponent p contributes the lattice braids of k_p = d/gcd(p,d);
    the words from successive divisor pairs are folded, substituting the
    accumulated word (suitably rotated) for the atoms it replaces.
    """
    pts = tuple(sorted(set(A)))
    if len(pts) < 3 or pts[0] != 0:
        raise ValueError("support must contain 0 and at least three exponents")
    d = pts[-1]
    if not 1 <= j <= d:
        raise ValueError(f"index j={j} outside 1..{d}")
    g = 0
    for p in pts[1:]:
        g = gcd(g, p)
    if g != 1:
        raise ValueError(f"support {pts} is not reduced (gcd {g}); divide first")

    ks = sorted({d // gcd(p, d) for p in pts[1:-1]}, reverse=True)
    bindings: dict = {}
    notes: list[str] = []
    q = ks[0]
    expr: object = Atom(f"b{q}_1")
    bindings[f"b{q}_1"] = b_kj(q, 1, d)
    for kk in ks[1:]:
        if q % kk == 0:
            continue
        gw = euclid_word(q, kk, d)
        table = {}
        for name in gw.bindings:
            kname, jname = _parse_atom_name(name)
            if kname == q and q not in ks:
                table[name] = Rotate(expr, jname - 1) if jname != 1 else expr
            else:
                bindings[name] = gw.bindings[name]
        expr = substitute(gw.expr, table)
        notes.append(f"lcm({q},{kk}): {gw.branch}")
        q = lcm(q, kk)
    assert q == d, (pts, q)
    if j != 1:
        expr = Rotate(expr, j - 1)
    return GeneratorWord(d, expr, bindings, "; ".join(notes) or "single divisor")

"""Exact Lawrence-Krammer matrices: a faithful oracle for the word problem.

The representation acts on the free Z[q^{+-1}, t^{+-1}]-module with basis
v_{i,j}, 1 <= i < j <= n.  Matrices are stored row-wise: row r lists the
coordinates of the image of basis vector r, so that words in time order map
to matrix products in the same order.

Inverse generators are obtained from the cubic satisfied by every generator
matrix, (x - 1)(x + q)(x - t q^2) = 0, whose constant term is the unit
monomial -t q^3; the resulting inverse is checked against the identity once
per generator and cached.
"""

from __future__ import annotations

from .artin import ArtinWord


class Laurent2:
    """A Laurent polynomial in q, t with integer coefficients.

    Immutable by convention; ``terms`` maps (q-exponent, t-exponent) to a
    nonzero integer coefficient.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, int], int] | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def term(cls, coeff: int, qe: int = 0, te: int = 0) -> "Laurent2":
        return cls({(qe, te): coeff})

    def __add__(self, other: "Laurent2") -> "Laurent2":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Laurent2(out)

    def __sub__(self, other: "Laurent2") -> "Laurent2":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) - v
        return Laurent2(out)

    def __neg__(self) -> "Laurent2":
        return Laurent2({k: -v for k, v in self.terms.items()})

    def __mul__(self, other: "Laurent2") -> "Laurent2":
        out: dict[tuple[int, int], int] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, 0) + c1 * c2
        return Laurent2(out)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Laurent2) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for (a, b), c in sorted(self.terms.items()):
            bits.append(f"{c:+d}*q^{a}*t^{b}")
        return "".join(bits)


ZERO = Laurent2()
ONE = Laurent2.term(1)
Q = Laurent2.term(1, 1, 0)
T = Laurent2.term(1, 0, 1)


def basis(n: int) -> list[tuple[int, int]]:
    """Ordered basis (i, j), 1 <= i < j <= n, of the representation module."""
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def _action(n: int, k: int, i: int, j: int) -> dict[tuple[int, int], Laurent2]:
    """Image of v_{i,j} under sigma_k, as coordinates on the basis."""
    q, t = Q, T
    one = ONE
    if k < i - 1 or k > j:
        return {(i, j): one}
    if k == i - 1:
        return {(i - 1, j): one, (i, j): one - q}
    if k == i and i == j - 1:
        return {(i, j): t * q * q}
    if k == i:
        return {(i, i + 1): t * q * (q - one), (i + 1, j): q}
    if i < k < j - 1:
        qp = Laurent2.term(1, k - i, 1)
        return {(i, j): one, (k, k + 1): qp * (q - one) * (q - one)}
    if k == j - 1:
        qp = Laurent2.term(1, j - i, 1)
        return {(i, j - 1): one, (j - 1, j): qp * (q - one)}
    # k == j
    return {(i, j): one - q, (i, j + 1): q}


_GEN_CACHE: dict[tuple[int, int, int], list[list[Laurent2]]] = {}


def _identity_matrix(m: int) -> list[list[Laurent2]]:
    return [[ONE if r == c else ZERO for c in range(m)] for r in range(m)]


def _mat_mul(A: list[list[Laurent2]], B: list[list[Laurent2]]) -> list[list[Laurent2]]:
    m = len(A)
    out = [[ZERO] * m for _ in range(m)]
    for r in range(m):
        Ar = A[r]
        row = [ZERO] * m
        for k in range(m):
            a = Ar[k]
            if a.is_zero():
                continue
            Bk = B[k]
            for c in range(m):
                b = Bk[c]
                if not b.is_zero():
                    row[c] = row[c] + a * b
        out[r] = row
    return out


def lk_generator(n: int, letter: int) -> list[list[Laurent2]]:
    """Matrix of the signed generator ``letter`` (cached)."""
    i = abs(letter)
    if not 1 <= i <= n - 1:
        raise ValueError(f"letter {letter} out of range for B_{n}")
    key = (n, i, 1 if letter > 0 else -1)
    if key in _GEN_CACHE:
        return _GEN_CACHE[key]
    bas = basis(n)
    index = {p: r for r, p in enumerate(bas)}
    m = len(bas)
    G = [[ZERO] * m for _ in range(m)]
    for r, (a, b) in enumerate(bas):
        for p, coeff in _action(n, i, a, b).items():
            G[r][index[p]] = coeff
    if letter > 0:
        _GEN_CACHE[key] = G
        return G
    # inverse from the generator cubic; constant term is the unit -t q^3
    s1 = ONE - Q + T * Q * Q
    s2 = T * Q * Q - Q - T * Q * Q * Q
    unit = Laurent2.term(-1, -3, -1)
    G2 = _mat_mul(G, G)
    inv = [
        [
            (G2[r][c] - s1 * G[r][c] + (s2 if r == c else ZERO)) * unit
            for c in range(m)
        ]
        for r in range(m)
    ]
    check = _mat_mul(G, inv)
    if check != _identity_matrix(m):
        raise RuntimeError(f"generator cubic failed for sigma_{i} in B_{n}")
    _GEN_CACHE[key] = inv
    return inv


def _sparse_rows(G: list[list[Laurent2]]) -> list[list[tuple[int, Laurent2]]]:
    return [[(c, v) for c, v in enumerate(row) if not v.is_zero()] for row in G]


_SPARSE_CACHE: dict[tuple[int, int, int], list[list[tuple[int, Laurent2]]]] = {}


def lk_oracle(w: ArtinWord) -> list[list[Laurent2]]:
    """Exact Lawrence-Krammer matrix of a word; multiplicative in time order."""
    n = w.n
    if n < 2:
        return _identity_matrix(n * (n - 1) // 2)
    m = n * (n - 1) // 2
    M = _identity_matrix(m)
    for a in w.letters:
        key = (n, abs(a), 1 if a > 0 else -1)
        rows = _SPARSE_CACHE.get(key)
        if rows is None:
            rows = _sparse_rows(lk_generator(n, a))
            _SPARSE_CACHE[key] = rows
        out = [[ZERO] * m for _ in range(m)]
        for r in range(m):
            Mr = M[r]
            row = out[r]
            for k in range(m):
                a_rk = Mr[k]
                if a_rk.is_zero():
                    continue
                for c, v in rows[k]:
                    row[c] = row[c] + a_rk * v
        M = out
    return M


def lk_equal(w1: ArtinWord, w2: ArtinWord) -> bool:
    """Word-problem answer from the representation alone."""
    if w1.n != w2.n:
        raise ValueError(f"strand count mismatch: {w1.n} != {w2.n}")
    return lk_oracle(w1) == lk_oracle(w2)

"""Word problem in B_n: relations, normal forms, and fuzzed invariance."""

import random

import pytest

from fewbraid.artin import (
    ArtinWord,
    GarsideNormalForm,
    compose,
    equal,
    exponent_sum,
    free_reduce,
    half_twist_word,
    invert,
    is_identity,
    normal_form,
    permutation,
)


def random_word(rng, n, length):
    return ArtinWord(
        n, tuple(rng.choice([-1, 1]) * rng.randint(1, n - 1) for _ in range(length))
    )


def test_validation():
    with pytest.raises(ValueError):
        ArtinWord(0, ())
    with pytest.raises(ValueError):
        ArtinWord(3, (0,))
    with pytest.raises(ValueError):
        ArtinWord(3, (3,))
    with pytest.raises(ValueError):
        ArtinWord(1, (1,))
    ArtinWord(1, ())


def test_compose_identity_and_mismatch():
    w = ArtinWord(3, (1, 2))
    assert compose(ArtinWord.identity(3), w) == w
    assert compose(w, ArtinWord.identity(3)) == w
    with pytest.raises(ValueError):
        compose(w, ArtinWord(4, (1,)))
    with pytest.raises(ValueError):
        equal(w, ArtinWord(4, (1,)))


def test_invert():
    assert invert(ArtinWord.identity(4)) == ArtinWord.identity(4)
    assert invert(ArtinWord(3, (1, 2))) == ArtinWord(3, (-2, -1))
    w = ArtinWord(3, (1, -2, 1))
    assert free_reduce(compose(w, invert(w))) == ArtinWord.identity(3)


def test_permutation():
    assert permutation(ArtinWord(3, (1,))) == (2, 1, 3)
    # sigma1 then sigma2 sends strand 1 to position 3: a 3-cycle
    assert permutation(ArtinWord(3, (1, 2))) == (3, 1, 2)
    assert permutation(ArtinWord(3, (1, 1))) == (1, 2, 3)


def test_exponent_sum():
    assert exponent_sum(ArtinWord(3, (1, 2, 1))) == 3
    assert exponent_sum(ArtinWord(3, (1, -1))) == 0


def test_braid_relations():
    assert equal(ArtinWord(3, (1, 2, 1)), ArtinWord(3, (2, 1, 2)))
    assert equal(ArtinWord(5, (1, 3)), ArtinWord(5, (3, 1)))
    assert not equal(ArtinWord(3, (1,)), ArtinWord(3, (-1,)))
    for n in (3, 4, 5, 6):
        for i in range(1, n - 1):
            assert equal(ArtinWord(n, (i, i + 1, i)), ArtinWord(n, (i + 1, i, i + 1)))
        for i in range(1, n - 1):
            for j in range(i + 2, n):
                assert equal(ArtinWord(n, (i, j)), ArtinWord(n, (j, i)))


def test_half_twist_word():
    assert half_twist_word(3).letters == (1, 2, 1)
    assert normal_form(half_twist_word(3)) == GarsideNormalForm(3, 1, ())
    assert normal_form(half_twist_word(5)) == GarsideNormalForm(5, 1, ())
    assert len(half_twist_word(6)) == 15


def test_normal_form_frozen_cases():
    assert normal_form(ArtinWord.identity(3)) == GarsideNormalForm(3, 0, ())
    assert normal_form(ArtinWord(3, (1, 2, 1))) == GarsideNormalForm(3, 1, ())
    # Delta * sigma1^{-1} is the permutation braid sending 1,2,3 to 3,1,2
    assert normal_form(ArtinWord(3, (-1,))) == GarsideNormalForm(3, -1, ((3, 1, 2),))
    assert normal_form(ArtinWord(3, (1,))) == GarsideNormalForm(3, 0, ((2, 1, 3),))
    assert normal_form(ArtinWord(2, (1, 1, 1))) == GarsideNormalForm(2, 3, ())


def _perm_of_factor(f):
    return tuple(v - 1 for v in f)


def _inv(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def _descents(p):
    return {i for i in range(len(p) - 1) if p[i] > p[i + 1]}


def assert_left_greedy(nf):
    """Recheck the normal-form invariants from scratch."""
    n = nf.n
    iden = tuple(range(n))
    w0 = tuple(range(n - 1, -1, -1))
    perms = [_perm_of_factor(f) for f in nf.factors]
    for p in perms:
        assert sorted(p) == list(range(n))
        assert p != iden and p != w0
    for x, y in zip(perms, perms[1:]):
        # starting set of y contained in finishing set of x
        assert _descents(y) <= _descents(_inv(x))


def test_normal_form_invariants_fuzz():
    rng = random.Random(0)
    for _ in range(300):
        n = rng.randint(2, 6)
        w = random_word(rng, n, rng.randint(0, 30))
        nf = normal_form(w)
        assert_left_greedy(nf)
        # idempotent: respelling the normal form reproduces it
        assert normal_form(nf.to_word()) == nf
        # exponent sum is recoverable from the form
        ndelta = n * (n - 1) // 2
        spelled = nf.infimum * ndelta + sum(
            sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
            for p in (_perm_of_factor(f) for f in nf.factors)
        )
        assert spelled == exponent_sum(free_reduce(w))


def test_inverse_cancels_fuzz():
    rng = random.Random(1)
    for _ in range(200):
        n = rng.randint(2, 6)
        w = random_word(rng, n, rng.randint(0, 30))
        assert is_identity(compose(w, invert(w)))
        assert is_identity(compose(invert(w), w))


def _random_rewrite(rng, letters, n):
    """Apply one random free insertion/cancellation or braid-relation move."""
    letters = list(letters)
    moves = []
    for k in range(len(letters) - 1):
        a, b = letters[k], letters[k + 1]
        if abs(abs(a) - abs(b)) >= 2:
            moves.append(("swap", k))
    for k in range(len(letters) - 2):
        a, b, c = letters[k : k + 3]
        if a == c and abs(a - b) == 1 and a > 0 and b > 0:
            moves.append(("yb", k))
        if a == c and abs(a - b) == 1 and a < 0 and b < 0:
            moves.append(("yb", k))
    k = rng.randint(0, len(letters))
    g = rng.choice([-1, 1]) * rng.randint(1, n - 1)
    moves.append(("ins", (k, g)))
    kind, arg = rng.choice(moves)
    if kind == "swap":
        letters[arg], letters[arg + 1] = letters[arg + 1], letters[arg]
    elif kind == "yb":
        a, b = letters[arg], letters[arg + 1]
        letters[arg : arg + 3] = [b, a, b]
    else:
        k, g = arg
        letters[k:k] = [g, -g]
    return tuple(letters)


def test_rewrite_invariance_fuzz():
    rng = random.Random(2)
    for _ in range(150):
        n = rng.randint(3, 6)
        w = random_word(rng, n, rng.randint(2, 20))
        v = w.letters
        for _ in range(rng.randint(1, 8)):
            v = _random_rewrite(rng, v, n)
        assert normal_form(ArtinWord(n, v)) == normal_form(w)
        assert equal(ArtinWord(n, v), w)


def test_central_full_twist():
    rng = random.Random(3)
    for n in (2, 3, 4, 5):
        full = half_twist_word(n) ** 2
        for _ in range(20):
            w = random_word(rng, n, rng.randint(0, 12))
            assert equal(compose(full, w), compose(w, full))


def test_to_word_round_trip():
    rng = random.Random(4)
    for _ in range(100):
        n = rng.randint(2, 6)
        w = random_word(rng, n, rng.randint(0, 25))
        assert equal(normal_form(w).to_word(), w)


def test_unequal_words_detected():
    rng = random.Random(5)
    found_unequal = 0
    for _ in range(100):
        n = rng.randint(2, 5)
        w1 = random_word(rng, n, rng.randint(1, 15))
        w2 = random_word(rng, n, rng.randint(1, 15))
        if normal_form(w1) != normal_form(w2):
            assert not equal(w1, w2)
            found_unequal += 1
        else:
            assert equal(w1, w2)
    assert found_unequal > 50


def test_pow_and_len():
    w = ArtinWord(3, (1, 2))
    assert w**0 == ArtinWord.identity(3)
    assert w**2 == ArtinWord(3, (1, 2, 1, 2))
    assert w**-1 == w.inverse()
    assert (w**-2).letters == (-2, -1, -2, -1)
    assert len(w) == 2


def test_json_round_trip():
    w = ArtinWord(3, (1, -2, 1))
    assert w.to_json() == {"n": 3, "w": [1, -2, 1]}
    assert ArtinWord.from_json(w.to_json()) == w
    nf = normal_form(w)
    assert nf.to_json()["inf"] == nf.infimum

"""Annular braids: embedding, projections, winding, pullback, wreath image."""

import math
import random

import pytest

from fewbraid.annular import (
    AnnularWord,
    WreathElement,
    delete_strand,
    embed,
    equal_annular,
    gen_b,
    gen_r,
    gen_tau,
    is_pure,
    project_to_disk,
    pullback,
    tau_hat,
    winding,
    wreath_image,
)
from fewbraid.artin import ArtinWord, equal, half_twist_word, is_identity
from fewbraid.geometry import core_loop, loop_word, rotation_loop, swap_loop


def random_annular(rng, d, length):
    letters = []
    for _ in range(length):
        kind = rng.choice(["b", "b", "t", "r"])
        index = rng.randint(1, d) if kind != "t" else 0
        letters.append((kind, index, rng.choice([-1, 1])))
    return AnnularWord(d, tuple(letters))


def test_letter_validation():
    with pytest.raises(ValueError):
        AnnularWord(0, ())
    with pytest.raises(ValueError):
        AnnularWord(3, (("x", 1, 1),))
    with pytest.raises(ValueError):
        AnnularWord(3, (("b", 0, 1),))
    with pytest.raises(ValueError):
        AnnularWord(3, (("b", 4, 1),))
    with pytest.raises(ValueError):
        AnnularWord(3, (("b", 1, 2),))
    with pytest.raises(ValueError):
        AnnularWord(3, (("t", 1, 1),))
    with pytest.raises(ValueError):
        AnnularWord(1, (("b", 1, 1),))
    AnnularWord(3, (("b", 3, 1), ("r", 3, -1), ("t", 0, -1)))
    AnnularWord(1, (("r", 1, 1), ("t", 0, 1)))


def test_compose_inverse_pow():
    w = gen_b(1, 3) * gen_tau(3) * gen_r(2, 3).inverse()
    assert len(w) == 3
    assert w.letters == (("b", 1, 1), ("t", 0, 1), ("r", 2, -1))
    assert (w * w.inverse()).d == 3
    assert equal_annular(w * w.inverse(), AnnularWord.identity(3))
    assert equal_annular(gen_tau(3) ** -2, gen_tau(3).inverse() * gen_tau(3).inverse())
    with pytest.raises(ValueError):
        gen_b(1, 3) * gen_b(1, 4)


def test_json_round_trip():
    w = AnnularWord(
        7, (("t", 0, 1), ("b", 1, 1), ("b", 3, -1), ("r", 2, 1), ("t", 0, -1))
    )
    data = w.to_json()
    assert data == {"d": 7, "w": ["t", "b1", "B3", "r2", "T"]}
    assert AnnularWord.from_json(data) == w
    rng = random.Random(5)
    for _ in range(20):
        u = random_annular(rng, rng.randint(2, 6), rng.randint(0, 8))
        assert AnnularWord.from_json(u.to_json()) == u


def test_embed_matches_trajectory_readout():
    # the frozen closed forms must reproduce the certified geometric reader
    for d in range(2, 6):
        assert equal(tau_hat(d), loop_word(d, rotation_loop(d)))
        for j in range(1, d):
            assert equal(embed(gen_b(j, d)), loop_word(d, swap_loop(d, j, j + 1)))
        assert equal(embed(gen_b(d, d)), loop_word(d, swap_loop(d, d, 1)))
        assert equal(embed(gen_r(1, d)), loop_word(d, core_loop(d)))


def test_tau_power_is_full_twist():
    for d in range(2, 7):
        assert equal(tau_hat(d) ** d, half_twist_word(d + 1) ** -2)


def test_band_letters_embed_to_artin_generators():
    for d in range(2, 7):
        for j in range(1, d):
            assert embed(gen_b(j, d)).letters == (j + 1,)


def test_band_rotation_family():
    for d in (3, 5):
        t = gen_tau(d)
        for j in range(1, d):
            assert equal_annular(gen_b(j + 1, d), t ** -j * gen_b(1, d) * t**j)
        # the cut pair is the one-step rotation of b_1 the other way round
        assert equal_annular(gen_b(d, d), t * gen_b(1, d) * t.inverse())


def test_r_family():
    for d in (2, 3, 5):
        chain = AnnularWord(d, tuple(("b", i, 1) for i in range(1, d)))
        assert equal_annular(gen_r(1, d), chain * gen_tau(d))
        assert equal(embed(gen_r(1, d)), ArtinWord(d + 1, (-1, -1)))
        t = gen_tau(d)
        for j in range(1, d):
            assert equal_annular(gen_r(j + 1, d), t.inverse() * gen_r(j, d) * t)


def test_bullet_relation():
    # x bullet y with adjacent bands collapses to the shifted band
    d = 4
    x, y = gen_b(1, d), gen_b(2, d)
    bullet = x * y * x * y.inverse() * x.inverse()
    assert equal_annular(bullet, y)
    assert not equal_annular(gen_b(1, d), gen_b(1, d).inverse())


def test_equal_annular_on_rewrites():
    rng = random.Random(11)
    for _ in range(20):
        d = rng.randint(2, 4)
        w = random_annular(rng, d, rng.randint(0, 6))
        t = gen_tau(d)
        j = rng.randint(1, d - 1)
        relation = t.inverse() * gen_b(j, d) * t * gen_b(j + 1, d).inverse()
        k = rng.randint(0, len(w.letters))
        spliced = AnnularWord(
            d, w.letters[:k] + relation.letters + w.letters[k:]
        )
        assert equal_annular(w, spliced)


def test_embed_separates_inequivalent_words():
    rng = random.Random(12)
    unequal = 0
    for _ in range(40):
        d = rng.randint(2, 4)
        w1 = random_annular(rng, d, rng.randint(1, 5))
        w2 = random_annular(rng, d, rng.randint(1, 5))
        if not equal_annular(w1, w2):
            unequal += 1
            assert not equal(embed(w1), embed(w2))
    assert unequal > 20


def test_delete_strand():
    # in sigma_1 sigma_2 the strand starting at 0 makes both crossings
    w = ArtinWord(3, (1, 2))
    assert delete_strand(w, 0).letters == ()
    assert delete_strand(w, 1).letters == (1,)
    assert delete_strand(ArtinWord(3, (2, -2, 1)), 2).letters == (1,)
    with pytest.raises(ValueError):
        delete_strand(w, 3)


def test_project_to_disk():
    for d in range(2, 6):
        for j in range(1, d):
            assert project_to_disk(gen_b(j, d)).letters == (j,)
        assert is_identity(project_to_disk(AnnularWord.identity(d)))
        # the r circuits bound empty disks once the puncture is filled in
        for j in range(1, d + 1):
            assert is_identity(project_to_disk(gen_r(j, d)))
    rng = random.Random(13)
    for _ in range(15):
        d = rng.randint(2, 4)
        w1 = random_annular(rng, d, rng.randint(0, 5))
        w2 = random_annular(rng, d, rng.randint(0, 5))
        assert equal(
            project_to_disk(w1 * w2), project_to_disk(w1) * project_to_disk(w2)
        )


def test_project_matches_unpunctured_readout():
    # same trajectories, no puncture strand: the projection must agree
    from fewbraid.geometry import read_braid, straighten_path

    for d in (2, 3, 4):
        frame = read_braid(straighten_path(d)[1:])
        for w, loop in [
            (gen_tau(d), rotation_loop(d)),
            (gen_r(1, d), core_loop(d)),
            (gen_b(1, d), swap_loop(d, 1, 2)),
        ]:
            readout = frame * read_braid(loop[1:]) * frame.inverse()
            assert equal(project_to_disk(w), readout)


def test_is_pure():
    assert is_pure(AnnularWord.identity(3))
    assert not is_pure(gen_tau(3))
    assert not is_pure(gen_b(1, 3))
    assert is_pure(gen_tau(3) ** 3)
    assert is_pure(gen_b(2, 3) ** 2)
    assert is_pure(gen_b(3, 3) ** 2)
    assert all(is_pure(gen_r(j, 5)) for j in range(1, 6))


def test_winding_values():
    d = 4
    assert winding(AnnularWord.identity(d)).entries == (0, 0, 0, 0)
    assert winding(gen_r(1, d)).entries == (1, 0, 0, 0)
    assert winding(gen_r(1, d) ** 3).entries == (3, 0, 0, 0)
    assert winding(gen_r(3, d)).entries == (0, 0, 1, 0)
    assert winding(gen_tau(d) ** d).entries == (1, 1, 1, 1)
    assert winding(gen_b(2, d) ** 2).entries == (0, 0, 0, 0)
    assert winding(gen_b(d, d) ** 2).entries == (0, 0, 0, 0)
    with pytest.raises(ValueError):
        winding(gen_tau(d))
    with pytest.raises(ValueError):
        winding(gen_b(1, d))


def test_winding_entry_order_follows_domain():
    # moving the cut past the first point rotates the reported entries
    d = 3
    v = winding(gen_r(1, d), a=0.0)
    assert v.entries == (0, 0, 1)
    assert v.basepoint_angle == 0.0
    assert winding(gen_r(1, d), a=-2 * math.pi / d).entries == (1, 0, 0)


def test_winding_additive_and_class_invariant():
    rng = random.Random(17)
    d = 3
    atoms = [gen_r(j, d) for j in range(1, d + 1)]
    atoms += [gen_b(j, d) ** 2 for j in range(1, d + 1)]
    atoms.append(gen_tau(d) ** d)
    for _ in range(25):
        u = random_annular(rng, d, rng.randint(0, 3))
        p1 = u * rng.choice(atoms) ** rng.choice([-1, 1]) * u.inverse()
        v = random_annular(rng, d, rng.randint(0, 3))
        p2 = v * rng.choice(atoms) ** rng.choice([-1, 1]) * v.inverse()
        assert is_pure(p1) and is_pure(p2)
        w1, w2, w12 = winding(p1), winding(p2), winding(p1 * p2)
        assert w12.entries == tuple(
            a + b for a, b in zip(w1.entries, w2.entries)
        )
    chain = AnnularWord(d, tuple(("b", i, 1) for i in range(1, d))) * gen_tau(d)
    assert winding(chain).entries == winding(gen_r(1, d)).entries


def test_pullback_basics():
    w = random_annular(random.Random(3), 3, 6)
    assert pullback(w, 1) == w
    assert pullback(gen_tau(3), 2) == gen_tau(6)
    assert pullback(gen_b(2, 3), 2).letters == (("b", 2, 1), ("b", 5, 1))
    assert pullback(gen_b(3, 3), 2).letters == (("b", 3, 1), ("b", 6, 1))
    with pytest.raises(ValueError):
        pullback(w, 0)


def test_pullback_is_homomorphism_preserving_equality():
    rng = random.Random(19)
    for _ in range(10):
        d, b = rng.choice([(2, 2), (2, 3), (3, 2)])
        w1 = random_annular(rng, d, rng.randint(0, 4))
        w2 = random_annular(rng, d, rng.randint(0, 4))
        assert pullback(w1 * w2, b) == pullback(w1, b) * pullback(w2, b)
        if equal_annular(w1, w2):
            assert equal_annular(pullback(w1, b), pullback(w2, b))
        else:
            assert not equal_annular(pullback(w1, b), pullback(w2, b))
    # defining relations survive the lift
    d, b = 3, 2
    t = gen_tau(d)
    assert equal_annular(
        pullback(gen_b(2, d), b), pullback(t.inverse() * gen_b(1, d) * t, b)
    )


def test_pullback_rotation_invariance():
    rng = random.Random(23)
    for d, b in [(2, 2), (3, 2), (2, 3)]:
        t_up = gen_tau(b * d)
        for _ in range(5):
            lifted = pullback(random_annular(rng, d, rng.randint(1, 4)), b)
            rotated = t_up ** -d * lifted * t_up**d
            assert equal_annular(lifted, rotated)


def test_wreath_examples():
    b, d = 3, 2
    e = wreath_image(pullback(AnnularWord.identity(d), b), b, AnnularWord.identity(d))
    assert is_identity(e.base) and e.decorations == (0, 0)
    r1 = gen_r(1, d)
    img = wreath_image(pullback(r1, b), b, r1)
    assert img.decorations == (1, 0)
    assert is_identity(img.base)
    for j in (1, 2):
        kernel = wreath_image(pullback(gen_r(j, d) ** b, b), b, gen_r(j, d) ** b)
        assert is_identity(kernel.base)
        assert kernel.decorations == (0, 0)


def test_wreath_multiplication_law():
    rng = random.Random(29)
    for _ in range(10):
        d, b = rng.choice([(2, 2), (3, 2), (2, 3)])
        u1 = random_annular(rng, d, rng.randint(0, 4))
        u2 = random_annular(rng, d, rng.randint(0, 4))
        g1 = wreath_image(pullback(u1, b), b, u1)
        g2 = wreath_image(pullback(u2, b), b, u2)
        g12 = wreath_image(pullback(u1 * u2, b), b, u1 * u2)
        assert g12.same_element(g1 * g2)


def test_wreath_witness_verified():
    with pytest.raises(ValueError):
        wreath_image(pullback(gen_r(1, 2), 2), 2, gen_r(2, 2))
    with pytest.raises(ValueError):
        wreath_image(gen_tau(4), 2, AnnularWord.identity(3))


def test_wreath_json_and_validation():
    e = WreathElement(2, ArtinWord(3, (1, -2)), (0, 1, 1))
    data = e.to_json()
    assert data["b"] == 2 and data["dec"] == [0, 1, 1]
    assert WreathElement.from_json(data).same_element(e)
    with pytest.raises(ValueError):
        WreathElement(2, ArtinWord(3, ()), (0, 1))
    with pytest.raises(ValueError):
        WreathElement(2, ArtinWord(3, ()), (0, 1, 2))

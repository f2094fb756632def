"""Simple braids: bullet product, shift words, Euclid staircase, witnesses."""

import json
import random
from math import lcm

import pytest

from fewbraid.annular import AnnularWord, annular_nf, equal_annular, gen_b, gen_tau, pullback
from fewbraid.simple import (
    Atom,
    Bullet,
    Compose,
    Conj,
    GeneratorWord,
    Inverse,
    Rotate,
    Support,
    b_kj,
    bullet_support,
    euclid_word,
    evaluate,
    evaluate_expr,
    evaluate_nf,
    expr_from_json,
    expr_to_json,
    generation_witness,
    shift_word,
    simple_braid,
    substitute,
)


def all_supports(d):
    out = []
    for mask in range(1 << d):
        idx = tuple(i + 1 for i in range(d) if mask >> i & 1)
        out.append(Support(d, idx))
    return out


def random_sparse(rng, d):
    picked = []
    for x in rng.sample(range(1, d + 1), d):
        trial = sorted(picked + [x])
        if Support(d, tuple(trial)).is_sparse and rng.random() < 0.85:
            picked = trial
    return Support(d, tuple(picked))


def random_annular(rng, d, length):
    letters = []
    for _ in range(length):
        kind = rng.choice(["b", "b", "t"])
        index = rng.randint(1, d) if kind == "b" else 0
        letters.append((kind, index, rng.choice([-1, 1])))
    return AnnularWord(d, tuple(letters))


def random_expr(rng, depth, names):
    if depth == 0 or rng.random() < 0.3:
        return Atom(rng.choice(names))
    k = rng.randrange(5)
    if k == 0:
        return Inverse(random_expr(rng, depth - 1, names))
    if k == 1:
        parts = [random_expr(rng, depth - 1, names) for _ in range(rng.randint(1, 3))]
        return Compose(*parts)
    if k == 2:
        return Conj(random_expr(rng, depth - 1, names), random_expr(rng, depth - 1, names))
    if k == 3:
        return Bullet(random_expr(rng, depth - 1, names), random_expr(rng, depth - 1, names))
    return Rotate(random_expr(rng, depth - 1, names), rng.randint(-4, 4))


def bullet_word(x, y):
    return x * y * x * y.inverse() * x.inverse()


def test_support_construction_and_validation():
    with pytest.raises(ValueError):
        Support(0, ())
    with pytest.raises(ValueError):
        Support(4, (0,))
    with pytest.raises(ValueError):
        Support(4, (5,))
    with pytest.raises(ValueError):
        Support(4, (2, 2))
    with pytest.raises(ValueError):
        Support(4, (3, 1))
    s = Support.lattice(3, 1, 6)
    assert s.indices == (1, 4)
    assert Support.lattice(3, 5, 6).indices == (2, 5)
    assert Support.packed(3, 10).indices == (1, 3, 5)
    assert len(s) == 2 and 4 in s and 2 not in s


def test_support_gaps_and_shift():
    s = Support.lattice(3, 1, 6)
    assert s.gaps() == (3, 3)
    assert Support(5, (2,)).gaps() == (5,)
    assert Support(5, ()).gaps() == ()
    assert Support(8, (1, 4, 6)).gaps() == (3, 2, 3)
    assert s.shift(2).indices == (3, 6)
    assert s.shift(3).indices == (1, 4)
    assert s.shift(-1).indices == (3, 6)


def test_simple_and_sparse_predicates():
    assert Support(6, (1, 3, 5)).is_simple
    assert not Support(6, (1, 2)).is_simple
    assert not Support(6, (1, 6)).is_simple
    assert Support(6, (1, 4)).is_sparse
    assert not Support(6, (1, 3)).is_sparse
    assert Support(2, (1,)).is_simple
    assert not Support(2, (1,)).is_sparse


def test_simple_braid_words():
    assert simple_braid(Support(4, (1,))).letters == (("b", 1, 1),)
    assert simple_braid(Support(6, (1, 4))).letters == (("b", 1, 1), ("b", 4, 1))
    with pytest.raises(ValueError):
        simple_braid(Support(4, (1, 2)))


def test_b_kj_lattices():
    assert b_kj(3, 1, 6).letters == (("b", 1, 1), ("b", 4, 1))
    assert b_kj(2, 2, 4).letters == (("b", 2, 1), ("b", 4, 1))
    assert b_kj(6, 5, 6).letters == (("b", 5, 1),)
    assert b_kj(4, 7, 8).letters == (("b", 3, 1), ("b", 7, 1))
    with pytest.raises(ValueError):
        b_kj(4, 1, 6)
    with pytest.raises(ValueError):
        b_kj(1, 1, 6)
    with pytest.raises(ValueError):
        b_kj(3, 0, 6)


def test_disjoint_bands_commute():
    # sanity behind simple_braid's choice of ascending order
    for d, (i, j) in [(5, (1, 3)), (6, (2, 6)), (8, (3, 7))]:
        assert equal_annular(gen_b(i, d) * gen_b(j, d), gen_b(j, d) * gen_b(i, d))


def test_bullet_support_examples():
    d = 8
    assert bullet_support(Support(d, (1,)), Support(d, (2,))).indices == (2,)
    assert bullet_support(Support(d, (1, 5)), Support(d, (3,))).indices == (1, 5)
    J = Support(d, (1, 4))
    assert bullet_support(J, J).indices == J.indices
    with pytest.raises(ValueError):
        bullet_support(Support(6, (1, 3)), Support(6, (5,)))
    with pytest.raises(ValueError):
        bullet_support(Support(6, (1,)), Support(8, (1,)))


def test_bullet_product_matches_support_exhaustively():
    for d in range(3, 8):
        sparse = [s for s in all_supports(d) if s.is_sparse]
        for J in sparse:
            for K in sparse:
                got = bullet_support(J, K)
                assert got.is_simple
                word = bullet_word(simple_braid(J), simple_braid(K))
                assert equal_annular(word, simple_braid(got)), (J.indices, K.indices)


def test_bullet_product_matches_support_randomized():
    rng = random.Random(11)
    for _ in range(60):
        d = rng.randint(8, 12)
        J, K = random_sparse(rng, d), random_sparse(rng, d)
        got = bullet_support(J, K)
        word = bullet_word(simple_braid(J), simple_braid(K))
        assert equal_annular(word, simple_braid(got)), (d, J.indices, K.indices)


def test_expression_evaluation_semantics():
    d = 6
    rng = random.Random(3)
    u, v = random_annular(rng, d, 4), random_annular(rng, d, 3)
    bind = {"u": u, "v": v}
    assert evaluate_expr(Atom("u"), d, bind).letters == u.letters
    assert evaluate_expr(Inverse(Atom("u")), d, bind).letters == u.inverse().letters
    # composition order: rightmost factor acts first in time
    comp = evaluate_expr(Compose(Atom("u"), Atom("v")), d, bind)
    assert comp.letters == (v * u).letters
    conj = evaluate_expr(Conj(Atom("u"), Atom("v")), d, bind)
    assert conj.letters == (u.inverse() * v * u).letters
    blt = evaluate_expr(Bullet(Atom("u"), Atom("v")), d, bind)
    assert blt.letters == bullet_word(u, v).letters
    rot = evaluate_expr(Rotate(Atom("u"), 2), d, bind)
    tau = gen_tau(d)
    assert rot.letters == (tau.inverse() ** 2 * u * tau**2).letters


def test_rotate_shifts_band_indices():
    d = 7
    for j in range(1, d + 1):
        for t in (-3, 1, 5):
            w = evaluate_expr(Rotate(Atom("x"), t), d, {"x": gen_b(j, d)})
            assert equal_annular(w, gen_b((j + t - 1) % d + 1, d))


def test_atom_binding_errors():
    with pytest.raises(ValueError):
        evaluate_expr(Atom("nope"), 4, {})
    with pytest.raises(ValueError):
        evaluate_expr(Atom("u"), 4, {"u": gen_b(1, 5)})
    with pytest.raises(TypeError):
        evaluate_expr("not a node", 4, {})


def test_substitute_replaces_atoms():
    expr = Compose(Atom("x"), Inverse(Atom("y")))
    table = {"y": Conj(Atom("x"), Atom("z"))}
    direct = Compose(Atom("x"), Inverse(Conj(Atom("x"), Atom("z"))))
    assert substitute(expr, table) == direct
    rng = random.Random(17)
    bind = {n: random_annular(rng, 5, 3) for n in ("x", "z")}
    assert evaluate_expr(substitute(expr, table), 5, bind).letters == \
        evaluate_expr(direct, 5, bind).letters


def test_evaluate_nf_matches_flat_normal_form():
    rng = random.Random(19)
    for _ in range(40):
        d = rng.randint(2, 6)
        bind = {n: random_annular(rng, d, rng.randint(0, 4)) for n in ("x", "y", "z")}
        gw = GeneratorWord(d, random_expr(rng, 3, ["x", "y", "z"]), bind)
        assert evaluate_nf(gw) == annular_nf(evaluate(gw))


def test_shift_word_identity_case():
    J = Support(6, (2, 5))
    gw = shift_word(J, "adjacent", J)
    assert evaluate(gw).letters == simple_braid(J).letters


def test_shift_word_adjacent_example():
    gw = shift_word(Support(3, (2,)), "adjacent", Support(3, (1,)))
    assert gw.bindings["shift"].letters == (("b", 2, -1), ("b", 1, 1))
    assert set(gw.bindings) == {"bJ", "shift"}
    assert equal_annular(evaluate(gw), gen_b(1, 3))


def test_shift_word_adjacent_randomized():
    rng = random.Random(29)
    for _ in range(25):
        d = rng.randint(2, 8)
        simple = [s for s in all_supports(d) if s.is_simple and len(s) > 0]
        J = rng.choice(simple)
        T = rng.choice([s for s in simple if len(s) == len(J)])
        gw = shift_word(J, "adjacent", T)
        assert equal_annular(evaluate(gw), simple_braid(T)), (d, J.indices, T.indices)


def test_shift_word_skip_one_slot_move():
    # {1,4} packs to {1,3} through the conjugation step, no undo needed
    gw = shift_word(Support(10, (1, 4)), "skip", Support(10, (1, 3)))
    assert gw.bindings["shift"].letters == (("b", 3, -1), ("b", 1, 1))
    assert equal_annular(evaluate(gw), simple_braid(Support(10, (1, 3))))


def test_shift_word_skip_unreachable_target_raises():
    # every rotation of {1,4} needs the one-slot step, which has no inverse
    with pytest.raises(ValueError):
        shift_word(Support(10, (1, 3)), "skip", Support(10, (1, 4)))


def test_shift_word_skip_randomized():
    rng = random.Random(31)
    for _ in range(25):
        d = rng.randint(4, 12)
        J = random_sparse(rng, d)
        T = Support.packed(len(J), d)
        gw = shift_word(J, "skip", T)
        assert equal_annular(evaluate(gw), simple_braid(T)), (d, J.indices)


def test_shift_word_skip_round_trip_through_packed():
    J, T = Support(8, (2, 6)), Support(8, (1, 5))
    gw = shift_word(J, "skip", T)
    assert equal_annular(evaluate(gw), simple_braid(T))


def test_shift_word_validation():
    with pytest.raises(ValueError):
        shift_word(Support(6, (1,)), "sideways", Support(6, (2,)))
    with pytest.raises(ValueError):
        shift_word(Support(6, (1,)), "adjacent", Support(7, (2,)))
    with pytest.raises(ValueError):
        shift_word(Support(6, (1,)), "adjacent", Support(6, (2, 4)))
    with pytest.raises(ValueError):
        shift_word(Support(6, (1, 2)), "adjacent", Support(6, (1, 3)))


def test_euclid_word_validation():
    with pytest.raises(ValueError):
        euclid_word(3, 3, 6)
    with pytest.raises(ValueError):
        euclid_word(4, 2, 6)
    with pytest.raises(ValueError):
        euclid_word(2, 1, 6)


def test_euclid_word_divides_branch():
    gw = euclid_word(2, 4, 8)
    assert gw.branch == "divides"
    assert evaluate(gw).letters == b_kj(4, 1, 8).letters


def test_euclid_word_smallest_interesting_case():
    gw = euclid_word(3, 2, 6)
    assert gw.branch == "l=2,k=3"
    assert equal_annular(evaluate(gw), gen_b(1, 6))
    quot = Compose(Inverse(gw.stages["stage_2"]), gw.stages["stage_1"])
    assert equal_annular(evaluate_expr(quot, 6, gw.bindings), gen_b(3, 6))


def test_euclid_word_k5_staged_pair():
    gw = euclid_word(5, 2, 10)
    assert gw.branch == "l=2,k>=5"
    pair = evaluate_expr(gw.stages["stage_3"], 10, gw.bindings)
    assert equal_annular(pair, gen_b(2, 10) * gen_b(9, 10))
    assert equal_annular(evaluate(gw), gen_b(1, 10))


def test_euclid_word_all_pairs_small():
    seen = set()
    for d in range(2, 13):
        divs = [k for k in range(2, d + 1) if d % k == 0]
        for k in divs:
            for l in divs:
                if k == l:
                    continue
                gw = euclid_word(k, l, d)
                seen.add(gw.branch.split(";")[0])
                target = b_kj(lcm(k, l), 1, d)
                assert evaluate_nf(gw) == annular_nf(target), (k, l, d)
                assert equal_annular(evaluate(gw), target), (k, l, d)
    assert {"divides", "l=2,k=3", "l=2,k>=5", "a=1,l>=3", "a=2,l'=2"} <= seen


def test_euclid_word_remaining_branches():
    gw = euclid_word(6, 9, 18)
    assert gw.branch == "a>=3"
    assert evaluate_nf(gw) == annular_nf(b_kj(18, 1, 18))
    gw = euclid_word(6, 10, 30)
    assert gw.branch == "a=2,l'>=3"
    assert evaluate_nf(gw) == annular_nf(b_kj(30, 1, 30))


def test_euclid_word_covering_pullback_consistency():
    inner = euclid_word(2, 3, 6)
    outer = euclid_word(2, 3, 12)
    assert outer.branch == "l=2,k=3; pulled back through x^2"
    assert equal_annular(pullback(evaluate(inner), 2), evaluate(outer))


def test_generation_witness_single_divisor():
    gw = generation_witness((0, 1, 5), 2)
    assert gw.branch == "single divisor"
    assert equal_annular(evaluate(gw), gen_b(2, 5))
    gw = generation_witness((0, 2, 3), 1)
    assert equal_annular(evaluate(gw), gen_b(1, 3))


def test_generation_witness_folded():
    gw = generation_witness((0, 2, 3, 12), 4)
    assert gw.branch.startswith("lcm(6,4)")
    assert evaluate_nf(gw) == annular_nf(gen_b(4, 12))


def test_generation_witness_three_divisors():
    gw = generation_witness((0, 4, 6, 9, 36), 1)
    assert gw.branch.count("lcm(") == 2
    assert evaluate_nf(gw) == annular_nf(gen_b(1, 36))


def test_generation_witness_validation():
    with pytest.raises(ValueError):
        generation_witness((0, 2, 4), 1)
    with pytest.raises(ValueError):
        generation_witness((0, 5), 1)
    with pytest.raises(ValueError):
        generation_witness((1, 2, 5), 1)
    with pytest.raises(ValueError):
        generation_witness((0, 2, 5), 6)


def test_generator_word_json_round_trip():
    gw = euclid_word(5, 2, 10)
    back = GeneratorWord.from_json(json.loads(json.dumps(gw.to_json())))
    assert back.d == gw.d and back.branch == gw.branch
    assert back.expr == gw.expr
    assert sorted(back.stages) == sorted(gw.stages)
    assert evaluate(back).letters == evaluate(gw).letters


def test_expr_json_round_trip_randomized():
    rng = random.Random(23)
    for _ in range(30):
        expr = random_expr(rng, 3, ["x", "y"])
        assert expr_from_json(expr_to_json(expr)) == expr

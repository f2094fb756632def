"""Command-line front end.

Every subcommand prints a JSON report (or a diagram document) to stdout,
or to ``--out``.  Reports carry a versioned ``schema`` field, and identical
requests produce byte-identical output.  Exit codes: 0 success, 1
verification failure, 2 usage error, 3 numerical failure during root
tracking.  The environment variable ``FEWBRAID_PROFILE`` selects the
default step-control profile (default, fine, coarse); ``--profile``
overrides it.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
from fractions import Fraction
from math import lcm
from pathlib import Path

from .annular import (
    AnnularWord,
    annular_nf,
    equal_annular,
    gen_b,
    gen_tau,
    pullback,
    wreath_image,
)
from .artin import ArtinWord, normal_form
from .diagrams import render
from .loops import ell_j_loop, gamma_loop, realize, tau_loop
from .simple import (
    Atom,
    Bullet,
    Support,
    b_kj,
    bullet_support,
    euclid_word,
    evaluate,
    evaluate_expr,
    evaluate_nf,
    shift_word,
    simple_braid,
)
from .tracking import (
    AmbiguousTransition,
    FewnomialSupport,
    StepControl,
    from_trinomial_loop,
    lift_loop,
    monodromy,
    monomial_circle_loop,
    surjectivity_witness,
)
from .tropical import TrinomialSupport

__all__ = ["main"]

_PROFILES = {
    "default": StepControl(),
    "coarse": StepControl(samples_per_segment=8),
    "fine": StepControl(samples_per_segment=32),
}


def _control(name: str | None) -> tuple[str, StepControl]:
    resolved = name or os.environ.get("FEWBRAID_PROFILE", "default")
    if resolved not in _PROFILES:
        raise ValueError(
            f"unknown profile {resolved!r}; expected one of {sorted(_PROFILES)}"
        )
    return resolved, _PROFILES[resolved]


def _parse_support(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise ValueError(f"support must be comma-separated integers, got {text!r}")


def _parse_eps(text: str | None) -> float | Fraction | None:
    """Half-angles: a fraction string means turns, a plain number radians."""
    if text is None:
        return None
    return Fraction(text) if "/" in text else float(text)


def _parse_t(text: str) -> float:
    named = {"e": math.e, "e2": math.e**2, "e3": math.e**3}
    if text in named:
        return named[text]
    return float(text)


def _parse_artin_letters(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(",") if tok)
    except ValueError:
        raise ValueError(f"letters must be comma-separated signed indices, got {text!r}")


def _parse_annular_word(d: int, text: str) -> AnnularWord:
    symbols = [tok for tok in text.split(",") if tok]
    try:
        return AnnularWord.from_json({"d": d, "w": symbols})
    except (ValueError, IndexError):
        raise ValueError(f"bad annular word {text!r}; letters look like b1, B1, t, T, r2")


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _report(data: dict, out: str | None) -> int:
    _emit(json.dumps(data, indent=2, sort_keys=True) + "\n", out)
    return 0 if data["verdict"] == "PASS" else 1


# ---------------------------------------------------------------------------
# subcommands


def _named_loop(sup: TrinomialSupport, name: str, eps: float | Fraction | None):
    if name == "gamma":
        return gamma_loop(sup, eps), gen_b(1, sup.d).inverse()
    if name == "tau":
        return tau_loop(sup, eps), gen_tau(sup.d)
    if name.startswith("ell:"):
        j = int(name[4:])
        return ell_j_loop(sup, eps, j), gen_b(j, sup.d)
    raise ValueError(f"unknown loop {name!r}; expected gamma, tau, circle or ell:j")


def _cmd_monodromy(args: argparse.Namespace) -> int:
    profile, control = _control(args.profile)
    A = FewnomialSupport(_parse_support(args.support))
    if args.loop == "circle":
        if len(A.exponents) != 2:
            raise ValueError("the circle loop needs a binomial support 0,d")
        loop, expected = monomial_circle_loop(A.d), gen_tau(A.d)
    else:
        red = A.reduced()
        if len(red.exponents) != 3:
            raise ValueError("gamma, tau and ell loops need a trinomial support")
        sup = TrinomialSupport(red.exponents[1], red.exponents[2])
        exact, expected = _named_loop(sup, args.loop, _parse_eps(args.eps))
        loop = from_trinomial_loop(realize(exact, sup, _parse_t(args.t)))
        if A.gcd > 1:
            loop = lift_loop(loop, A.gcd)
            expected = pullback(expected, A.gcd)
    word = monodromy(A, loop, args.a, control)
    report = {
        "schema": "fewbraid-monodromy/1",
        "support": list(A.exponents),
        "loop": args.loop,
        "eps": args.eps,
        "t": args.t,
        "frame_angle": args.a,
        "profile": profile,
        "word": word.to_json(),
        "normal_form": annular_nf(word).to_json(),
        "expected": expected.to_json(),
        "verdict": "PASS" if equal_annular(word, expected) else "FAIL",
    }
    return _report(report, args.out)


def _cmd_euclid(args: argparse.Namespace) -> int:
    gw = euclid_word(args.k, args.l, args.d)
    word = evaluate(gw)
    nf = evaluate_nf(gw)
    target = b_kj(lcm(args.k, args.l), 1, args.d)
    report = {
        "schema": "fewbraid-euclid/1",
        "k": args.k,
        "l": args.l,
        "d": args.d,
        "branch": gw.branch,
        "generator_word": gw.to_json(),
        "word": word.to_json(),
        "normal_form": nf.to_json(),
        "target": target.to_json(),
        "verdict": "PASS" if nf == annular_nf(target) else "FAIL",
    }
    return _report(report, args.out)


def _sparse_supports(d: int) -> list[Support]:
    out = []
    for mask in range(1 << d):
        idx = tuple(i + 1 for i in range(d) if mask >> i & 1)
        s = Support(d, idx)
        if s.is_sparse:
            out.append(s)
    return out


def _random_sparse(rng: random.Random, d: int) -> Support:
    picked: list[int] = []
    for x in rng.sample(range(1, d + 1), d):
        trial = sorted(picked + [x])
        if Support(d, tuple(trial)).is_sparse and rng.random() < 0.85:
            picked = trial
    return Support(d, tuple(picked))


def _cmd_verify_swap(args: argparse.Namespace) -> int:
    d = args.d
    if args.exhaustive:
        if d > 12:
            raise ValueError("exhaustive enumeration is limited to d <= 12")
        sparse = _sparse_supports(d)
        pairs = [(J, K) for J in sparse for K in sparse]
    else:
        rng = random.Random(args.seed)
        pairs = [(_random_sparse(rng, d), _random_sparse(rng, d)) for _ in range(args.count)]
    failures = []
    for J, K in pairs:
        bindings = {"J": simple_braid(J), "K": simple_braid(K)}
        word = evaluate_expr(Bullet(Atom("J"), Atom("K")), d, bindings)
        if not equal_annular(word, simple_braid(bullet_support(J, K))):
            failures.append({"J": list(J.indices), "K": list(K.indices)})
    report = {
        "schema": "fewbraid-verify-swap/1",
        "d": d,
        "mode": "exhaustive" if args.exhaustive else "random",
        "seed": None if args.exhaustive else args.seed,
        "pairs": len(pairs),
        "failures": failures,
        "verdict": "PASS" if not failures else "FAIL",
    }
    return _report(report, args.out)


def _cmd_verify_shift(args: argparse.Namespace) -> int:
    d = args.d
    explicit = args.source is not None or args.target is not None
    if explicit and not (args.source and args.target):
        raise ValueError("--source and --target go together")
    checks: list[tuple[Support, Support]] = []
    if explicit:
        checks.append(
            (Support(d, _parse_support(args.source)), Support(d, _parse_support(args.target)))
        )
    else:
        rng = random.Random(args.seed)
        for _ in range(args.count):
            J = _random_sparse(rng, d)
            if args.mode == "skip":
                checks.append((J, Support.packed(len(J), d)))
            else:
                while True:
                    idx = tuple(sorted(rng.sample(range(1, d + 1), len(J))))
                    T = Support(d, idx)
                    if T.is_simple:
                        checks.append((J, T))
                        break
    failures = []
    words = []
    for J, T in checks:
        gw = shift_word(J, args.mode, T)
        words.append(gw)
        if not equal_annular(evaluate(gw), simple_braid(T)):
            failures.append({"source": list(J.indices), "target": list(T.indices)})
    report = {
        "schema": "fewbraid-verify-shift/1",
        "d": d,
        "mode": args.mode,
        "seed": None if explicit else args.seed,
        "pairs": len(checks),
        "failures": failures,
        "verdict": "PASS" if not failures else "FAIL",
    }
    if explicit:
        report["generator_word"] = words[0].to_json()
    return _report(report, args.out)


def _cmd_witness(args: argparse.Namespace) -> int:
    profile, control = _control(args.profile)
    A = FewnomialSupport(_parse_support(args.support))
    entries = surjectivity_witness(
        A, args.a, _parse_eps(args.eps), _parse_t(args.t), control
    )
    bands_pinned = all(e.unit_ends for e in entries if e.target != "tau")
    report = {
        "schema": "fewbraid-witness/1",
        "support": list(A.exponents),
        "eps": args.eps,
        "t": args.t,
        "profile": profile,
        "entries": [
            {
                "target": e.target,
                "word": e.word.to_json(),
                "unit_ends": e.unit_ends,
                "segments": len(e.loop.segments),
            }
            for e in entries
        ],
        "verdict": "PASS" if bands_pinned else "FAIL",
    }
    return _report(report, args.out)


def _cmd_wreath(args: argparse.Namespace) -> int:
    witness = _parse_annular_word(args.d, args.witness)
    if args.word is None:
        word = pullback(witness, args.b)
    else:
        word = _parse_annular_word(args.b * args.d, args.word)
    report = {
        "schema": "fewbraid-wreath/1",
        "b": args.b,
        "d": args.d,
        "word": word.to_json(),
        "witness": witness.to_json(),
    }
    if equal_annular(pullback(witness, args.b), word):
        report["element"] = wreath_image(word, args.b, witness).to_json()
        report["verdict"] = "PASS"
    else:
        report["element"] = None
        report["verdict"] = "FAIL"
    return _report(report, args.out)


def _cmd_normal_form(args: argparse.Namespace) -> int:
    w = ArtinWord(args.n, _parse_artin_letters(args.word))
    nf = normal_form(w)
    report = {
        "schema": "fewbraid-normal-form/1",
        "n": args.n,
        "word": list(w.letters),
        "delta_power": nf.infimum,
        "canonical_length": nf.canonical_length,
        "supremum": nf.supremum,
        "factors": [list(f) for f in nf.factors],
        "verdict": "PASS",
    }
    return _report(report, args.out)


def _cmd_diagram(args: argparse.Namespace) -> int:
    if (args.n is None) == (args.d is None):
        raise ValueError("give exactly one of --n (disk braid) or --d (annular braid)")
    if args.n is not None:
        w: ArtinWord | AnnularWord = ArtinWord(args.n, _parse_artin_letters(args.word))
    else:
        w = _parse_annular_word(args.d, args.word)
    _emit(render(w, args.format), args.out)
    return 0


def _cmd_trop_loop(args: argparse.Namespace) -> int:
    exps = _parse_support(args.support)
    if len(exps) != 3 or exps[0] != 0:
        raise ValueError("trop-loop needs a trinomial support 0,p,d")
    sup = TrinomialSupport(exps[1], exps[2])
    loop, _ = _named_loop(sup, args.loop, _parse_eps(args.eps))
    if args.realize:
        loop = realize(loop, sup, _parse_t(args.t), args.side)
    report = {
        "schema": "fewbraid-trop-loop/1",
        "support": list(exps),
        "loop": args.loop,
        "eps": args.eps,
        "realized": args.realize,
        "t": args.t if args.realize else None,
        "side": args.side if args.realize else None,
        "data": loop.to_json(),
        "verdict": "PASS",
    }
    return _report(report, args.out)


# ---------------------------------------------------------------------------
# argument plumbing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fewbraid",
        description="Braid monodromy of fewnomials: computations and verifications.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        p.add_argument("--out", help="write the report to this file instead of stdout")
        return p

    p = add("monodromy", _cmd_monodromy, "track a named loop and read its braid")
    p.add_argument("--support", required=True, help="exponents, e.g. 0,3,7")
    p.add_argument("--loop", default="gamma", help="gamma, tau, circle or ell:j")
    p.add_argument("--eps", help="loop half-angle: radians, or a fraction of a turn")
    p.add_argument("--t", default="e", help="realization scale: e, e2, e3 or a float > 1")
    p.add_argument("--a", type=float, help="frame ray angle in radians")
    p.add_argument("--profile", choices=sorted(_PROFILES), help="step-control profile")

    p = add("euclid", _cmd_euclid, "Euclidean staircase word for two lattice braids")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--d", type=int, required=True)

    p = add("verify-swap", _cmd_verify_swap, "bullet product against its support calculus")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--exhaustive", action="store_true", help="all sparse pairs")
    p.add_argument("--count", type=int, default=100, help="random pairs to draw")
    p.add_argument("--seed", type=int, default=0)

    p = add("verify-shift", _cmd_verify_shift, "shift words against their targets")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--mode", choices=("adjacent", "skip"), default="adjacent")
    p.add_argument("--source", help="explicit source support, e.g. 1,4")
    p.add_argument("--target", help="explicit target support, e.g. 1,3")
    p.add_argument("--count", type=int, default=25, help="random pairs to draw")
    p.add_argument("--seed", type=int, default=0)

    p = add("witness", _cmd_witness, "realized loops generating the monodromy image")
    p.add_argument("--support", required=True, help="exponents, e.g. 0,2,3")
    p.add_argument("--eps", help="loop half-angle: radians, or a fraction of a turn")
    p.add_argument("--t", default="e", help="realization scale: e, e2, e3 or a float > 1")
    p.add_argument("--a", type=float, help="frame ray angle in radians")
    p.add_argument("--profile", choices=sorted(_PROFILES), help="step-control profile")

    p = add("wreath", _cmd_wreath, "decoration image of a pulled-back braid")
    p.add_argument("--b", type=int, required=True, help="covering degree")
    p.add_argument("--d", type=int, required=True, help="downstairs point count")
    p.add_argument("--witness", required=True, help="downstairs word, e.g. b1,T,r2")
    p.add_argument("--word", help="upstairs word; defaults to the pullback of the witness")

    p = add("normal-form", _cmd_normal_form, "left-greedy normal form of a disk braid")
    p.add_argument("--n", type=int, required=True, help="strand count")
    p.add_argument("--word", default="", help="signed letters, e.g. 1,2,1")

    p = add("diagram", _cmd_diagram, "render a braid word as SVG or ASCII")
    p.add_argument("--n", type=int, help="strand count for a disk braid")
    p.add_argument("--d", type=int, help="point count for an annular braid")
    p.add_argument("--word", default="", help="1,2,-1 for disk; b1,T,r2 for annular")
    p.add_argument("--format", choices=("svg", "ascii"), default="svg")

    p = add("trop-loop", _cmd_trop_loop, "emit a coefficient loop, optionally realized")
    p.add_argument("--support", required=True, help="exponents 0,p,d")
    p.add_argument("--loop", default="gamma", help="gamma, tau or ell:j")
    p.add_argument("--eps", help="loop half-angle: radians, or a fraction of a turn")
    p.add_argument("--realize", action="store_true", help="scale onto honest coefficients")
    p.add_argument("--t", default="e", help="realization scale: e, e2, e3 or a float > 1")
    p.add_argument("--side", choices=("c1", "c2"), default="c2", help="pinned coefficient")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.handler(args)
    except AmbiguousTransition as e:
        print(f"tracking aborted: {e}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except RuntimeError as e:
        print(f"verification failed: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Braid monodromy of univariate fewnomials.

Exact annular braid words with a Garside-backed word problem, tropical
predictions for trinomial root motion, and a numerical tracker that reads
braids off coefficient loops.
"""

from .annular import (
    AnnularWord,
    WreathElement,
    annular_nf,
    embed,
    equal_annular,
    gen_b,
    gen_r,
    gen_tau,
    project_to_disk,
    pullback,
    winding,
    wreath_image,
)
from .artin import ArtinWord, GarsideNormalForm, equal, normal_form
from .diagrams import render
from .loops import CoefficientLoop, ell_j_loop, gamma_loop, realize, tau_loop
from .simple import (
    GeneratorWord,
    Support,
    b_kj,
    bullet_support,
    euclid_word,
    evaluate,
    evaluate_nf,
    generation_witness,
    shift_word,
    simple_braid,
)
from .tracking import (
    AmbiguousTransition,
    FewnomialSupport,
    PolynomialLoop,
    StepControl,
    braid_readout,
    from_trinomial_loop,
    is_nonsingular,
    lift_loop,
    monodromy,
    monodromy_disk,
    monomial_circle_loop,
    surjectivity_witness,
    track,
)
from .tropical import TrinomialSupport, tropical_solutions

__version__ = "0.1.0"

__all__ = [
    "AnnularWord",
    "WreathElement",
    "annular_nf",
    "embed",
    "equal_annular",
    "gen_b",
    "gen_r",
    "gen_tau",
    "project_to_disk",
    "pullback",
    "winding",
    "wreath_image",
    "ArtinWord",
    "GarsideNormalForm",
    "equal",
    "normal_form",
    "render",
    "CoefficientLoop",
    "ell_j_loop",
    "gamma_loop",
    "realize",
    "tau_loop",
    "GeneratorWord",
    "Support",
    "b_kj",
    "bullet_support",
    "euclid_word",
    "evaluate",
    "evaluate_nf",
    "generation_witness",
    "shift_word",
    "simple_braid",
    "AmbiguousTransition",
    "FewnomialSupport",
    "PolynomialLoop",
    "StepControl",
    "braid_readout",
    "from_trinomial_loop",
    "is_nonsingular",
    "lift_loop",
    "monodromy",
    "monodromy_disk",
    "monomial_circle_loop",
    "surjectivity_witness",
    "track",
    "TrinomialSupport",
    "tropical_solutions",
]

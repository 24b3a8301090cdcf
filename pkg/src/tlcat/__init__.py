"""Temperley-Lieb diagrams as a pivotal dagger category.

Submodules:

* :mod:`tlcat.planar` -- matchings, planarity, diagrams and their text form
* :mod:`tlcat.category` -- composition, tensor, duals, traces, factorizations
* :mod:`tlcat.laurent` and :mod:`tlcat.linear` -- exact scalars and formal sums
* :mod:`tlcat.knots` -- braids, the Kauffman bracket and the Jones polynomial
* :mod:`tlcat.lam` -- the planar lambda calculus and its compilation
* :mod:`tlcat.render` -- text and SVG pictures
"""

from .category import (
    ArityError,
    GeneratorWord,
    NotIdempotentError,
    compose,
    compose_oracle,
    conjugate,
    coname,
    cycle_count,
    dagger,
    dual,
    epi_mono_factorize,
    evaluate_word,
    factor_into_generators,
    is_epic,
    is_monic,
    left_wave,
    name,
    parse_word,
    right_wave,
    split_idempotent,
    tensor,
    trace,
    unname,
)
from .knots import BraidWord, braid_to_tl, bracket_via_tl, jones, parse_braid, state_sum_bracket
from .lam import (
    beta_step,
    compile_derivation,
    normalize,
    parse_judgement,
    parse_term,
    parse_type,
    soundness_check,
    typecheck,
)
from .laurent import A, LaurentPoly, format_in_t, parse_laurent
from .linear import (
    KAUFFMAN_TAU,
    TLMorphism,
    check_tl_relations,
    lift,
    lin_add,
    lin_compose,
    lin_tensor,
    lin_trace,
    negate,
    scalar_mul,
)
from .planar import (
    Diagram,
    Endpoint,
    Matching,
    MatchingError,
    PlanarityError,
    Row,
    counit_eps,
    diagram,
    enumerate_planar,
    format_diagram,
    generator_u,
    identity_diagram,
    is_planar,
    make_matching,
    parse_diagram,
    planarity_via_transpose,
    unit_eta,
)
from .render import render_ascii, render_svg

__version__ = "0.1.0"

"""Calculus of extended welded braids and links.

Words in the extended welded braid group (crossings, welded crossings, wen
marks) are compared through their action on a free group; closures are
encoded as Gauss data; braiding turns Gauss data back into words; Markov
moves connect words with equivalent closures.
"""

from .braid import (
    BraidWord,
    FormatError,
    FreeGroupAutomorphism,
    FreeWord,
    Letter,
    LetterKind,
    NotClosableError,
    closable,
    compose,
    format_word_file,
    parse_word,
    parse_word_file,
    permutation_cycles,
    presentation_relations,
    rho,
    sigma,
    sigma_inv,
    tau,
    to_automorphism,
    underlying_permutation,
    verify_relations,
    wen_parity,
    word,
    words_equal,
)
from .closure import ClosureTrace, StrandPath, braid_from_gauss, closure, closure_trace
from .gauss import (
    Arc,
    Endpoint,
    GaussData,
    GaussIsomorphism,
    WenElimination,
    component_arcs,
    components,
    eliminate_wens,
    format_gauss_file,
    full_loop_slide,
    is_gauss_isomorphism,
    parse_gauss_file,
    reduce_kinks,
    same_gauss_data,
    sign_reversal,
    slide_wen,
    validate,
)
from .markov import (
    MOVE_KINDS,
    MarkovMove,
    MoveWitness,
    apply_move,
    destab_applicable,
    format_witness,
    inverse_move,
    linking_invariant,
    markov_search,
    mirror_word,
    parse_witness,
    replay_witness,
    sign_profile,
    sign_reversal_word,
    verify_witness,
    wen_row,
)

__version__ = "0.1.0"

__all__ = [
    "Arc",
    "BraidWord",
    "ClosureTrace",
    "Endpoint",
    "FormatError",
    "FreeGroupAutomorphism",
    "FreeWord",
    "GaussData",
    "GaussIsomorphism",
    "Letter",
    "LetterKind",
    "MOVE_KINDS",
    "MarkovMove",
    "MoveWitness",
    "NotClosableError",
    "StrandPath",
    "WenElimination",
    "apply_move",
    "braid_from_gauss",
    "closable",
    "closure",
    "closure_trace",
    "component_arcs",
    "components",
    "compose",
    "destab_applicable",
    "eliminate_wens",
    "format_gauss_file",
    "format_witness",
    "format_word_file",
    "full_loop_slide",
    "inverse_move",
    "is_gauss_isomorphism",
    "linking_invariant",
    "markov_search",
    "mirror_word",
    "parse_gauss_file",
    "parse_witness",
    "parse_word",
    "parse_word_file",
    "permutation_cycles",
    "presentation_relations",
    "reduce_kinks",
    "replay_witness",
    "rho",
    "same_gauss_data",
    "sigma",
    "sigma_inv",
    "sign_profile",
    "sign_reversal",
    "sign_reversal_word",
    "slide_wen",
    "tau",
    "to_automorphism",
    "underlying_permutation",
    "validate",
    "verify_relations",
    "verify_witness",
    "wen_parity",
    "wen_row",
    "word",
    "words_equal",
]

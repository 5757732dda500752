"""Finite-set constructions read off the subset/partition duality.

Every limit and colimit here is built the same way: a refinement-induced
quotient onto blocks, followed by an inclusion.  ``verify_ump`` checks the
result against the universal property by enumerating candidate maps.
"""

from .constructions import (
    ConstructionResult,
    boxtimes_candidate,
    boxtimes_product,
    coequalizer,
    coequalizer_factor,
    coproduct,
    coproduct_factor,
    epi_mono_factorize,
    equalizer,
    equalizer_factor,
    factor,
    product,
    product_factor,
    pullback,
    pullback_factor,
    pushout,
    pushout_factor,
    swapped_product,
)
from .errors import CanonError
from .finset import (
    EMPTY,
    ONE,
    POINT,
    Block,
    FinSet,
    Function,
    Pair,
    Relation,
    Tagged,
    UPair,
    as_function,
    classify_relation,
    compose,
    epi_check,
    identity,
    image,
    is_injective,
    is_surjective,
    mono_check,
    opposite,
)
from .partitions import (
    DitSet,
    Partition,
    canonical_surjection,
    coimage,
    discrete,
    ditset,
    enumerate_partitions,
    indiscrete,
    join,
    logical_entropy,
    meet,
    refines,
    terminal_map,
)
from .pointed import (
    NULL,
    PointedMap,
    PointedObj,
    canonical_wedge_to_product,
    make_pointed,
    pointed_product,
    wedge_coproduct,
    zero_arrow,
)
from .subsets import Subset, canonical_injection, initial_map, is_subset, laplace_probability
from .ump import UmpReport, unique_iso_between_candidates, verify_ump

__version__ = "0.1.0"

"""layerlat: involutive FL_e-chains as bunches of layer groups.

Construct chains from bunches, decide their order and operations with exact
arithmetic, decompose finite tables back into bunches, check embeddings,
densify odd chains by skeleton insertion, and place bounded prefixes on the
rational unit interval.
"""

from .bunch import Bunch, BunchType, bunch_type, parse_bunch, serialize_bunch, transition, validate
from .chain import Chain, ChainElement, check_chain_laws, format_element, parse_element
from .decompose import decompose_table, recover_bunch_samples, roundtrip_table, table_of_chain, window_table
from .densify import densify_driver, fill_gap, insert_above, insert_below, preserves_idempotent_symmetry
from .embed import EmbeddingSpec, check_embedding, element_map, identity_embedding
from .oracle import CayleyTable, brute_residuum, check_flea_axioms, enumerate_finite_chains
from .standardize import RationalPlacement, cantor_map, extend_with_products, sup_extend

__version__ = "0.1.0"

__all__ = [
    "Bunch", "BunchType", "CayleyTable", "Chain", "ChainElement",
    "EmbeddingSpec", "RationalPlacement", "brute_residuum", "bunch_type",
    "cantor_map", "check_chain_laws", "check_embedding", "check_flea_axioms",
    "decompose_table", "densify_driver", "element_map",
    "enumerate_finite_chains", "extend_with_products", "fill_gap",
    "format_element", "identity_embedding", "insert_above", "insert_below",
    "parse_bunch", "parse_element", "preserves_idempotent_symmetry",
    "recover_bunch_samples", "roundtrip_table", "serialize_bunch",
    "sup_extend", "table_of_chain", "transition", "validate", "window_table",
]

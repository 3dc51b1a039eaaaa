"""Class transpositions of the integers and the orders of their products."""
from .certificates import (
    PairClass,
    classify_pair,
    common_vertex_order,
    equal_modulus_allowed_set,
    equal_residue_infinite,
    parity_swap_cycle_prefix,
)
from .oracle import OracleConfig, OrderVerdict, order_of_product
from .rcwa import (
    RcwaMap,
    canonicalize,
    compose,
    evaluate,
    from_class_transposition,
    identity_map,
    is_identity,
    power,
    power_order_scan,
    product_map,
)
from .residue import (
    ClassTransposition,
    ResidueClass,
    apply,
    ct,
    make_class_transposition,
    make_residue_class,
    parse_class_transposition,
)

__version__ = "0.1.0"

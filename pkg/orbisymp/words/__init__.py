from .chains import (
    canonical_relator,
    fundamental_two_chain,
    handle_word,
    signature_generators,
    torsion_relators,
)
from .fox import fox_derivative, mean_value_defect, product_rule_defect
from .models import (
    BarTwoChain,
    Generator,
    GroupRingElement,
    Word,
    augmentation,
    bar_involution,
    commutator,
    inverse,
    multiply,
    product,
)

__all__ = [
    "BarTwoChain",
    "Generator",
    "GroupRingElement",
    "Word",
    "augmentation",
    "bar_involution",
    "canonical_relator",
    "commutator",
    "fox_derivative",
    "fundamental_two_chain",
    "handle_word",
    "inverse",
    "mean_value_defect",
    "multiply",
    "product",
    "product_rule_defect",
    "signature_generators",
    "torsion_relators",
]

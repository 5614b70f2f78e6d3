from .io import load_signature, load_splitting_file, read_structured, splitting_summary
from .models import (
    BoundaryRef,
    CurveRecord,
    CurveSpec,
    FullSuborbifoldCurve,
    GraphLetter,
    InclusionMap,
    LetterWord,
    NonSeparatingCurve,
    OrbifoldSignature,
    Piece,
    SeparatingCurve,
    SplittingFile,
    SplittingSpec,
    invert_letters,
)
from .signature import (
    PieceClass,
    classify_piece,
    dimension_closed,
    euler_characteristic,
    is_elementary,
    validate,
)
from .splitting import (
    apply_splitting,
    build_splitting,
    flow_direction_count,
    identity_splitting,
    pants_decomposition,
    reduce_letters,
    split_full_suborbifold,
    split_scc,
)

__all__ = [
    "BoundaryRef",
    "CurveRecord",
    "CurveSpec",
    "FullSuborbifoldCurve",
    "GraphLetter",
    "InclusionMap",
    "LetterWord",
    "NonSeparatingCurve",
    "OrbifoldSignature",
    "Piece",
    "PieceClass",
    "SeparatingCurve",
    "SplittingFile",
    "SplittingSpec",
    "apply_splitting",
    "build_splitting",
    "classify_piece",
    "dimension_closed",
    "euler_characteristic",
    "flow_direction_count",
    "identity_splitting",
    "invert_letters",
    "is_elementary",
    "load_signature",
    "load_splitting_file",
    "pants_decomposition",
    "read_structured",
    "reduce_letters",
    "split_full_suborbifold",
    "split_scc",
    "splitting_summary",
    "validate",
]

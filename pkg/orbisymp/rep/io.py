from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict

import numpy as np

from orbisymp.errors import RelationViolation
from orbisymp.orbifold.io import read_structured
from orbisymp.words import Generator

from .evaluate import check_relations, relation_residual
from .models import GroupRep, RepFile

DET_TOL = 1e-8


def rep_to_payload(rep: GroupRep) -> Dict[str, Any]:
    """JSON payload; floats are written in shortest round-trip decimal form."""

    model = RepFile(
        signature=rep.signature,
        generators={str(g): [float(value) for value in m.ravel()] for g, m in rep.matrices.items()},
        residual=relation_residual(rep),
    )
    return model.model_dump(mode="json")


def rep_from_payload(payload: Any) -> GroupRep:
    model = RepFile.model_validate(payload)
    matrices: Dict[Generator, np.ndarray] = {}
    for name, values in model.generators.items():
        if len(values) != 9:
            raise ValueError(f"generator {name} needs 9 entries, got {len(values)}")
        matrix = np.array(values, dtype=float).reshape(3, 3)
        det = float(np.linalg.det(matrix))
        if abs(det - 1.0) > DET_TOL:
            raise ValueError(f"generator {name} has determinant {det:.12g}, expected 1")
        matrices[Generator.parse(name)] = matrix
    rep = GroupRep(model.signature, matrices)
    try:
        check_relations(rep)
    except RelationViolation as exc:
        raise ValueError(f"representation does not satisfy its relators: {exc}") from exc
    return rep


def save_rep(rep: GroupRep, path: Path) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(json.dumps(rep_to_payload(rep), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return target


def load_rep(path: Path) -> GroupRep:
    return rep_from_payload(read_structured(path))

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

from orbisymp.orbifold.io import read_structured
from orbisymp.words import Generator

from .models import Cocycle, CocycleFile

TRACE_TOL = 1e-10


def cocycle_to_payload(u: Cocycle, kind: Optional[str] = None) -> Dict[str, Any]:
    model = CocycleFile(
        signature=u.signature,
        generators={str(g): [float(x) for x in u.values[g].ravel()] for g in u.signature.generators()},
        kind=kind,
    )
    return model.model_dump(mode="json", exclude_none=True)


def cocycle_from_payload(payload: Any) -> Cocycle:
    model = CocycleFile.model_validate(payload)
    values: Dict[Generator, np.ndarray] = {}
    for name, entries in model.generators.items():
        if len(entries) != 9:
            raise ValueError(f"cocycle value at {name} needs 9 entries, got {len(entries)}")
        matrix = np.array(entries, dtype=float).reshape(3, 3)
        trace = float(np.trace(matrix))
        if abs(trace) > TRACE_TOL * max(1.0, float(np.linalg.norm(matrix))):
            raise ValueError(f"cocycle value at {name} has trace {trace:.3e}")
        values[Generator.parse(name)] = matrix
    missing = [str(g) for g in model.signature.generators() if g not in values]
    if missing:
        raise ValueError(f"cocycle file is missing generators {missing}")
    return Cocycle(model.signature, values)


def save_cocycle(u: Cocycle, path: Path, kind: Optional[str] = None) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(json.dumps(cocycle_to_payload(u, kind), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return target


def load_cocycle(path: Path) -> Cocycle:
    return cocycle_from_payload(read_structured(path))

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict

import yaml

from .models import OrbifoldSignature, SplittingFile, SplittingSpec


def read_structured(path: Path) -> Any:
    """Read a YAML document, or JSON for .json files so floats round-trip exactly."""

    source = Path(path)
    with source.open("r", encoding="utf-8") as handle:
        if source.suffix.lower() == ".json":
            return json.load(handle)
        return yaml.safe_load(handle)


def load_signature(path: Path) -> OrbifoldSignature:
    payload = read_structured(path)
    if isinstance(payload, dict) and "signature" in payload and "genus" not in payload:
        payload = payload["signature"]
    return OrbifoldSignature.model_validate(payload)


def load_splitting_file(path: Path) -> SplittingFile:
    payload = read_structured(path)
    if isinstance(payload, list):
        payload = {"curves": payload}
    return SplittingFile.model_validate(payload)


def splitting_summary(splitting: SplittingSpec) -> Dict[str, Any]:
    """JSON-ready description of pieces, inclusions and curves."""

    return {
        "signature": splitting.signature.model_dump(mode="json"),
        "pieces": [
            {
                "signature": piece.signature.model_dump(mode="json"),
                "chi": str(piece.signature.euler_characteristic()),
                "inclusion": piece.inclusion.as_strings(),
            }
            for piece in splitting.pieces
        ],
        "curves": [
            {
                "kind": curve.kind,
                "word": str(curve.word),
                "boundaries": [f"piece{ref.piece}:{ref.generator}" for ref in curve.refs],
                **({"stable": str(curve.stable)} if curve.stable is not None else {}),
                **({"factors": [str(word) for word in curve.factors]} if curve.factors is not None else {}),
            }
            for curve in splitting.curves
        ],
    }


def dump_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True)

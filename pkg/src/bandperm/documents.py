"""JSON documents for permutations and their factorizations.

Canonical field order (the order ``dumps`` writes and ``loads`` accepts):

* eventual shift: kind, s, lo, images[, name][, note]
* periodic: kind, period, displacements[, name][, note]
* block factorization: w, anchor, b_blocks, c_blocks, tail[, period]
* transposition layers: layers, N, tail[, period], strategy
"""

from __future__ import annotations

import json
from typing import Any, Dict, List, Optional, Tuple

from .errors import DocumentError
from .factorize import TAILS, TAIL_PERIODIC, BlockFactorization, TranspositionLayers
from .permutations import BandedPermutation, EventualShift, Periodic
from .utils import dump_json


KIND_EVENTUAL_SHIFT = "eventual_shift"
KIND_PERIODIC = "periodic"


def dumps(doc: Dict[str, Any]) -> str:
    return dump_json(doc)


def loads(text: str) -> Dict[str, Any]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})") from exc
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    return doc


def _integer(doc: Dict[str, Any], key: str) -> int:
    if key not in doc:
        raise DocumentError(f"missing field {key!r}")
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"field {key!r} must be an integer")
    return value


def _integers(value: Any, key: str) -> Tuple[int, ...]:
    if not isinstance(value, list) or any(isinstance(v, bool) or not isinstance(v, int) for v in value):
        raise DocumentError(f"field {key!r} must be a list of integers")
    return tuple(value)


def _optional_text(doc: Dict[str, Any], key: str) -> Optional[str]:
    value = doc.get(key)
    if value is not None and not isinstance(value, str):
        raise DocumentError(f"field {key!r} must be a string")
    return value


def _check_keys(doc: Dict[str, Any], allowed: Tuple[str, ...]) -> None:
    unknown = sorted(set(doc) - set(allowed))
    if unknown:
        raise DocumentError(f"unknown field(s): {', '.join(unknown)}")


def permutation_to_document(
    P: BandedPermutation, name: Optional[str] = None, note: Optional[str] = None
) -> Dict[str, Any]:
    if isinstance(P, EventualShift):
        doc: Dict[str, Any] = {"kind": KIND_EVENTUAL_SHIFT, "s": P.s, "lo": P.lo, "images": list(P.images)}
    elif isinstance(P, Periodic):
        doc = {"kind": KIND_PERIODIC, "period": P.period, "displacements": list(P.displacements)}
    else:
        raise DocumentError(f"no document form for {type(P).__name__}")
    if name is not None:
        doc["name"] = name
    if note is not None:
        doc["note"] = note
    return doc


def permutation_from_document(doc: Dict[str, Any]) -> BandedPermutation:
    """Validate the schema, then let the backend check its own invariants.

    Schema problems raise DocumentError; a well-formed document describing no
    permutation raises InvalidPermutation from the backend constructor.
    """

    kind = doc.get("kind")
    if kind == KIND_EVENTUAL_SHIFT:
        _check_keys(doc, ("kind", "s", "lo", "images", "name", "note"))
        _optional_text(doc, "name")
        _optional_text(doc, "note")
        s = _integer(doc, "s")
        lo = _integer(doc, "lo") if "lo" in doc else 0
        images = _integers(doc.get("images", []), "images")
        return EventualShift(s, lo, images)
    if kind == KIND_PERIODIC:
        _check_keys(doc, ("kind", "period", "displacements", "name", "note"))
        _optional_text(doc, "name")
        _optional_text(doc, "note")
        period = _integer(doc, "period")
        if "displacements" not in doc:
            raise DocumentError("missing field 'displacements'")
        return Periodic(period, _integers(doc["displacements"], "displacements"))
    raise DocumentError(f"unknown kind {kind!r}; expected {KIND_EVENTUAL_SHIFT!r} or {KIND_PERIODIC!r}")


def document_name(doc: Dict[str, Any]) -> Optional[str]:
    return _optional_text(doc, "name")


def _blocks_to_json(blocks: Dict[int, Tuple[int, ...]]) -> Dict[str, List[int]]:
    return {str(g): list(blocks[g]) for g in sorted(blocks)}


def _blocks_from_json(value: Any, key: str) -> Dict[int, Tuple[int, ...]]:
    if not isinstance(value, dict):
        raise DocumentError(f"field {key!r} must be an object")
    blocks = {}
    for g, block in value.items():
        try:
            index = int(g)
        except ValueError as exc:
            raise DocumentError(f"{key} key {g!r} is not an integer") from exc
        blocks[index] = _integers(block, f"{key}[{g}]")
    return blocks


def _tail(doc: Dict[str, Any]) -> str:
    tail = doc.get("tail")
    if tail not in TAILS:
        raise DocumentError(f"field 'tail' must be one of {', '.join(TAILS)}")
    return tail


def bc_to_document(f: BlockFactorization) -> Dict[str, Any]:
    doc: Dict[str, Any] = {
        "w": f.w,
        "anchor": f.anchor,
        "b_blocks": _blocks_to_json(f.b_blocks),
        "c_blocks": _blocks_to_json(f.c_blocks),
        "tail": f.tail,
    }
    if f.tail == TAIL_PERIODIC:
        doc["period"] = f.period
    return doc


def bc_from_document(doc: Dict[str, Any]) -> BlockFactorization:
    _check_keys(doc, ("w", "anchor", "b_blocks", "c_blocks", "tail", "period"))
    tail = _tail(doc)
    return BlockFactorization(
        w=_integer(doc, "w"),
        anchor=_integer(doc, "anchor"),
        b_blocks=_blocks_from_json(doc.get("b_blocks", {}), "b_blocks"),
        c_blocks=_blocks_from_json(doc.get("c_blocks", {}), "c_blocks"),
        tail=tail,
        period=_integer(doc, "period") if tail == TAIL_PERIODIC else 0,
    )


def layers_to_document(f: TranspositionLayers) -> Dict[str, Any]:
    doc: Dict[str, Any] = {"layers": [list(layer) for layer in f.layers], "N": f.N, "tail": f.tail}
    if f.tail == TAIL_PERIODIC:
        doc["period"] = f.period
    doc["strategy"] = f.strategy
    return doc


def layers_from_document(doc: Dict[str, Any]) -> TranspositionLayers:
    _check_keys(doc, ("layers", "N", "tail", "period", "strategy"))
    tail = _tail(doc)
    raw = doc.get("layers", [])
    if not isinstance(raw, list):
        raise DocumentError("field 'layers' must be a list")
    layers = tuple(_integers(layer, f"layers[{t}]") for t, layer in enumerate(raw))
    if "N" in doc and _integer(doc, "N") != len(layers):
        raise DocumentError(f"field 'N' is {doc['N']} but {len(layers)} layers are listed")
    strategy = doc.get("strategy", "ascending")
    if not isinstance(strategy, str):
        raise DocumentError("field 'strategy' must be a string")
    return TranspositionLayers(
        layers,
        tail=tail,
        period=_integer(doc, "period") if tail == TAIL_PERIODIC else 0,
        strategy=strategy,
    )


__all__ = [
    "KIND_EVENTUAL_SHIFT",
    "KIND_PERIODIC",
    "bc_from_document",
    "bc_to_document",
    "document_name",
    "dumps",
    "layers_from_document",
    "layers_to_document",
    "loads",
    "permutation_from_document",
    "permutation_to_document",
]

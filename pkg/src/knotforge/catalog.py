"""Knot records: named inputs (braid word and/or Seifert matrix) with pinned values."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Optional

from .braid import BraidWord
from .invariants import SeifertMatrix
from .laurent import LaurentPoly


@dataclass(frozen=True)
class KnotRecord:
    name: str
    braid: Optional[BraidWord] = None
    seifert: Optional[SeifertMatrix] = None
    pinned_alexander: Optional[LaurentPoly] = None
    pinned_det: Optional[int] = None
    pinned_sgn: Optional[int] = None

    def __post_init__(self):
        if self.braid is None and self.seifert is None:
            raise ValueError(f"record {self.name!r} has neither braid nor Seifert input")


def record_from_dict(d: dict, context: str = "") -> KnotRecord:
    try:
        name = d["name"]
        braid = None
        if "braid" in d and d["braid"] is not None:
            braid = BraidWord.parse(str(d["braid"]["word"]), int(d["braid"]["strands"]))
        seifert = None
        if "seifert" in d and d["seifert"] is not None:
            seifert = SeifertMatrix.from_rows(d["seifert"])
        pinned = d.get("pinned") or {}
        alexander = None
        if "alexander" in pinned:
            alexander = LaurentPoly.parse(pinned["alexander"])
        return KnotRecord(
            name=name,
            braid=braid,
            seifert=seifert,
            pinned_alexander=alexander,
            pinned_det=pinned.get("det"),
            pinned_sgn=pinned.get("sgn"),
        )
    except Exception as exc:
        raise ValueError(f"bad knot record{context}: {exc}") from exc


def load_records(text: str):
    """Parse a JSON array of knot records, reporting the failing array index."""
    data = json.loads(text)
    if not isinstance(data, list):
        raise ValueError("catalog must be a JSON array of records")
    return [record_from_dict(d, context=f" at index {i}") for i, d in enumerate(data)]


def bundled_catalog():
    text = resources.files("knotforge").joinpath("data/catalog.json").read_text()
    return load_records(text)


def bundled_record(name: str) -> KnotRecord:
    for rec in bundled_catalog():
        if rec.name == name:
            return rec
    raise KeyError(f"no bundled knot named {name!r}")

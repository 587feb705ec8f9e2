"""Output value types shared by the geometry modules and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional


@dataclass(frozen=True)
class IsoDescriptor:
    """Isometry group of a finite-volume quotient, as an extension.

    identity_component is a tag from a fixed vocabulary ("S1", "T2", "T3",
    "trivial", "SO3xS1", ...).  circle_factor describes the closed subgroup
    C of S1 in 1 -> C -> Iso -> F -> 1 when that sequence is the natural
    presentation ("S1", an integer k for Z_k, or None when not applicable).
    finite_part collects the data of F (order, structure label, generators).
    """

    geometry: str
    identity_component: str
    finite_part: Optional[dict] = None
    circle_factor: Optional[object] = None
    total_order: Optional[int] = None
    notes: tuple[str, ...] = ()

    def is_finite(self) -> bool:
        return self.identity_component == "trivial"

    def to_json_dict(self) -> dict:
        out = {
            "geometry": self.geometry,
            "identity_component": self.identity_component,
            "finite_part": self.finite_part,
        }
        if self.circle_factor is not None:
            out["circle_factor"] = self.circle_factor
        if self.total_order is not None:
            out["total_order"] = self.total_order
        if self.notes:
            out["notes"] = list(self.notes)
        return out


FACTORS_THROUGH_FINITE = "FactorsThroughFinite"
POSSIBLE_INFINITE_ACTION = "PossibleInfiniteIsometricAction"


@dataclass(frozen=True)
class Verdict:
    """Decision for a higher-rank lattice action, with rule citations."""

    tag: str
    reasons: tuple[dict, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.tag not in (FACTORS_THROUGH_FINITE, POSSIBLE_INFINITE_ACTION):
            raise ValueError(f"unknown verdict tag {self.tag!r}")
        if not self.reasons:
            raise ValueError("a verdict must cite at least one rule")
        for r in self.reasons:
            if not r.get("rule") or not r.get("citation"):
                raise ValueError("each reason needs a rule id and a citation")

    def to_json_dict(self) -> dict:
        return {"tag": self.tag, "reasons": list(self.reasons)}


def canonical_json(obj) -> str:
    """Deterministic JSON rendering used for golden files and CLI output."""
    return json.dumps(obj, sort_keys=True, indent=2)

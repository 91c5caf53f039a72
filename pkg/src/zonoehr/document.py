"""JSON documents describing zonotopes, and exact-number serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Optional

import jsonschema

from zonoehr.ehrhart import Poly
from zonoehr.zonotope import Zonotope, make_zonotope

RATIONAL_PATTERN = r"^-?[0-9]+(/[0-9]*[1-9][0-9]*)?$"

SCHEMA = {
    "type": "object",
    "properties": {
        "dim": {"type": "integer", "minimum": 1},
        "generators": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "integer"}},
        },
        "translate": {
            "type": "array",
            "items": {"type": "string", "pattern": RATIONAL_PATTERN},
        },
        "merge_parallel": {"type": "boolean"},
    },
    "required": ["dim", "generators"],
    "additionalProperties": False,
}


class DocumentError(ValueError):
    """Malformed zonotope document."""


def q2s(x) -> str:
    """Canonical "p/q" string (just "p" for integers)."""
    return str(Fraction(x))


def qlist(xs: Iterable) -> list[str]:
    return [q2s(x) for x in xs]


def poly2list(p: Poly) -> list[str]:
    return qlist(p.coeffs)


@dataclass
class ZonotopeDocument:
    dim: int
    generators: list[list[int]]
    translate: Optional[list[Fraction]] = None
    merge_parallel: bool = False
    # keys present in the source, so serialization round-trips exactly
    _present: tuple[str, ...] = field(default=(), repr=False, compare=False)

    @classmethod
    def from_obj(cls, obj: Any) -> "ZonotopeDocument":
        try:
            jsonschema.validate(obj, SCHEMA)
        except jsonschema.ValidationError as exc:
            raise DocumentError(f"invalid zonotope document: {exc.message}") from None
        dim = obj["dim"]
        gens = [list(v) for v in obj["generators"]]
        for v in gens:
            if len(v) != dim:
                raise DocumentError(f"generator {v} does not have dimension {dim}")
        translate = None
        if "translate" in obj:
            translate = [Fraction(s) for s in obj["translate"]]
            if len(translate) != dim:
                raise DocumentError(f"translate does not have dimension {dim}")
        return cls(dim, gens, translate, obj.get("merge_parallel", False), tuple(obj))

    @classmethod
    def from_json(cls, text: str) -> "ZonotopeDocument":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"malformed JSON: {exc}") from None
        return cls.from_obj(obj)

    @classmethod
    def from_zonotope(cls, z: Zonotope) -> "ZonotopeDocument":
        translate = list(z.translate) if any(z.translate) else None
        return cls(z.dim_ambient, [list(v) for v in z.generators], translate)

    def to_obj(self) -> dict:
        obj: dict[str, Any] = {"dim": self.dim, "generators": [list(v) for v in self.generators]}
        if self.translate is not None:
            obj["translate"] = qlist(self.translate)
        if self.merge_parallel or "merge_parallel" in self._present:
            obj["merge_parallel"] = self.merge_parallel
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_obj())

    def zonotope(self, merge_parallel: Optional[bool] = None) -> Zonotope:
        merge = self.merge_parallel if merge_parallel is None else merge_parallel
        return make_zonotope(self.generators, self.translate, dim=self.dim, merge_parallel=merge)

"""Verification reports and their JSON wire format.

The JSON schema is fixed: {"id", "params", "order_half_units", "status",
"first_mismatch": {"exponent_half_units", "lhs", "rhs"} | null,
"elapsed_ms"}.  Anything beyond those fields (which pair of sides
mismatched, free-form detail) only appears in the text rendering.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class Mismatch:
    exponent_half_units: int
    lhs: str
    rhs: str
    sides: str | None = None  # text-format only


@dataclass
class VerificationReport:
    id: str
    params: dict = field(default_factory=dict)
    order_half_units: int | None = None
    status: str = "pass"  # pass | fail | error
    first_mismatch: Mismatch | None = None
    elapsed_ms: float = 0.0
    detail: str | None = None  # text-format only

    def to_json_obj(self) -> dict:
        fm = None
        if self.first_mismatch is not None:
            fm = {
                "exponent_half_units": self.first_mismatch.exponent_half_units,
                "lhs": self.first_mismatch.lhs,
                "rhs": self.first_mismatch.rhs,
            }
        return {
            "id": self.id,
            "params": {k: str(v) for k, v in self.params.items()},
            "order_half_units": self.order_half_units,
            "status": self.status,
            "first_mismatch": fm,
            "elapsed_ms": self.elapsed_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: dict) -> "VerificationReport":
        fm = obj.get("first_mismatch")
        mismatch = None
        if fm is not None:
            mismatch = Mismatch(fm["exponent_half_units"], fm["lhs"], fm["rhs"])
        return cls(
            id=obj["id"],
            params=dict(obj.get("params", {})),
            order_half_units=obj.get("order_half_units"),
            status=obj["status"],
            first_mismatch=mismatch,
            elapsed_ms=obj.get("elapsed_ms", 0.0),
        )

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_json_obj(json.loads(text))

    def to_text(self) -> str:
        tag = {"pass": "pass", "fail": "FAIL", "error": "ERROR"}[self.status]
        params = ""
        if self.params:
            params = " [" + ", ".join(f"{k}={v}" for k, v in self.params.items()) + "]"
        order = "exact" if self.order_half_units is None else f"q^{{{self.order_half_units}/2}}"
        line = f"{tag:5s} {self.id}{params} order={order} ({self.elapsed_ms:.0f} ms)"
        if self.first_mismatch is not None:
            m = self.first_mismatch
            where = f"q^{{{m.exponent_half_units}/2}}"
            sides = f" sides {m.sides}" if m.sides else ""
            line += f"\n      first mismatch at {where}{sides}: lhs = {m.lhs}, rhs = {m.rhs}"
        if self.detail:
            line += f"\n      {self.detail}"
        return line

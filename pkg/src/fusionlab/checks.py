"""Uniform pass/fail records shared by every verification suite."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    id: str
    anchor: str
    ok: bool
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"id": self.id, "paper_anchor": self.anchor, "verdict": "pass" if self.ok else "fail", "details": self.details}

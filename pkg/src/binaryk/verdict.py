"""Result type for validators: validation failures are reported, not raised."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Verdict:
    ok: bool
    message: str = ""
    witness: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def passed(cls) -> "Verdict":
        return cls(True)

    @classmethod
    def failed(cls, message: str, **witness: Any) -> "Verdict":
        return cls(False, message, witness)

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"ok": self.ok}
        if not self.ok:
            out["message"] = self.message
            out["witness"] = self.witness
        return out


OK = Verdict(True)


def first_failure(*verdicts: Verdict) -> Verdict:
    for v in verdicts:
        if not v:
            return v
    return OK

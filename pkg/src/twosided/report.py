from __future__ import annotations

import json
import time
from dataclasses import dataclass
from typing import Any

OUTCOMES = ("pass", "fail", "skipped")
KINDS = ("theorem", "conjecture")


@dataclass
class VerificationReport:
    """Outcome of one identity or conjecture check.

    A failing report always carries a witness and a passing one never does.
    """

    check: str
    params: dict[str, Any]
    outcome: str
    witness: str | None = None
    elapsed: float = 0.0
    kind: str = "theorem"
    data: Any = None

    def __post_init__(self):
        if self.outcome not in OUTCOMES:
            raise ValueError(f"bad outcome {self.outcome!r}")
        if self.kind not in KINDS:
            raise ValueError(f"bad kind {self.kind!r}")
        if self.outcome == "fail" and not self.witness:
            raise ValueError("a failing report needs a witness")
        if self.outcome == "pass" and self.witness is not None:
            raise ValueError("a passing report carries no witness")

    @classmethod
    def make(cls, check, params, ok, witness, started, *, kind="theorem", data=None):
        return cls(check, dict(params), "pass" if ok else "fail",
                   None if ok else (witness or "unspecified mismatch"),
                   time.perf_counter() - started, kind, data)

    @property
    def passed(self) -> bool:
        return self.outcome == "pass"

    @property
    def ms(self) -> int:
        return int(round(self.elapsed * 1000))

    def to_dict(self) -> dict:
        d = {"check": self.check, "params": self.params, "outcome": self.outcome,
             "witness": self.witness, "ms": self.ms, "kind": self.kind}
        if self.data is not None:
            d["data"] = self.data
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

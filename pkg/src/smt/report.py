from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    """Outcome of a finite check. ``details`` must stay JSON-serializable."""

    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    seed: int | None = None

    def __bool__(self):
        return self.passed

    def fail(self, clause: str, message: str):
        self.passed = False
        self.violations.append({"clause": clause, "message": message})

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "details": self.details,
               "violations": self.violations}
        if self.seed is not None:
            out["seed"] = self.seed
        return out

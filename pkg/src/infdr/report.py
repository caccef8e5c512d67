"""Check reports shared by the verification harnesses and the CLI."""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field


def trial_rng(seed: int, trial: int) -> random.Random:
    """Per-trial generator; results do not depend on trial evaluation order."""
    return random.Random(f"{seed}:{trial}")


@dataclass
class Report:
    command: str
    params: dict
    seed: int | None = None
    trials: int = 0
    failures: list = field(default_factory=list)
    cases: int = 0
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, case: str, lhs, rhs) -> bool:
        self.cases += 1
        if lhs == rhs:
            return True
        self.failures.append({"case": case, "lhs": str(lhs), "rhs": str(rhs)})
        return False

    def fail(self, case: str, lhs, rhs) -> None:
        self.cases += 1
        self.failures.append({"case": case, "lhs": str(lhs), "rhs": str(rhs)})

    def merge(self, other: "Report") -> None:
        self.cases += other.cases
        self.failures.extend(other.failures)

    def to_dict(self) -> dict:
        out = {
            "command": self.command,
            "params": self.params,
            "seed": self.seed,
            "trials": self.trials,
            "cases": self.cases,
            "passed": self.passed,
            "failures": self.failures,
        }
        if self.extra:
            out["extra"] = self.extra
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_text(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        status = "PASS" if self.passed else "FAIL"
        lines = [f"{self.command}: {status} ({self.cases} cases, {len(self.failures)} failures) {params}".rstrip()]
        for key, value in sorted(self.extra.items()):
            lines.append(f"  {key}: {value}")
        for f in self.failures:
            lines.append(f"  FAILED {f['case']}: {f['lhs']} != {f['rhs']}")
        return "\n".join(lines)

"""Pass/fail reports with worst-case residuals."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    passed: bool
    residual: float = 0.0
    message: str = ""


@dataclass
class ValidationReport:
    checks: dict[str, Check] = field(default_factory=dict)
    orientation: str | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def __bool__(self) -> bool:
        return self.passed

    def add(self, name: str, passed: bool, residual: float = 0.0, message: str = "") -> None:
        self.checks[name] = Check(bool(passed), float(residual), message)

    @property
    def failures(self) -> list[str]:
        return [k for k, c in self.checks.items() if not c.passed]

    def to_dict(self) -> dict:
        out = {
            "passed": self.passed,
            "checks": {
                k: {"passed": c.passed, "residual": c.residual, "message": c.message}
                for k, c in self.checks.items()
            },
        }
        if self.orientation is not None:
            out["orientation"] = self.orientation
        return out

    def __str__(self) -> str:
        lines = []
        for k, c in self.checks.items():
            tag = "PASS" if c.passed else "FAIL"
            extra = f" ({c.message})" if c.message else ""
            lines.append(f"{tag} {k}: residual={c.residual:.3e}{extra}")
        return "\n".join(lines)

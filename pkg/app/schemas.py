from typing import Optional

from pydantic import BaseModel, NonNegativeInt, validator

# Sizes this long also report their digit count
LARGE_SIZE_DIGITS = 13


def digits(size: int) -> Optional[int]:
    count = len(str(size))
    return count if count >= LARGE_SIZE_DIGITS else None


def _sized(size: int) -> str:
    count = digits(size)
    return f"{size} ({count} digits)" if count else str(size)


class NodeInfo(BaseModel):
    name: str
    max_value: NonNegativeInt
    regulators: list[str]
    contexts: NonNegativeInt


class ModelInfo(BaseModel):
    model: Optional[str] = None
    nodes: NonNegativeInt
    influences: NonNegativeInt
    parameters: NonNegativeInt
    parametrisations: int
    admitted: int
    states: int
    per_node: list[NodeInfo]
    constraints: list[str]
    minmax: bool
    x0: str
    parametrisations_digits: Optional[int] = None
    admitted_digits: Optional[int] = None

    @validator("parametrisations_digits", always=True)
    def count_parametrisation_digits(cls, v, values):
        return digits(values.get("parametrisations", 0))

    @validator("admitted_digits", always=True)
    def count_admitted_digits(cls, v, values):
        return digits(values.get("admitted", 0))

    def render(self) -> str:
        lines = [
            f"model: {self.model or '-'}",
            f"nodes |V|: {self.nodes}",
            f"influences |I|: {self.influences}",
            f"parameters |Omega|: {self.parameters}",
            f"parametrisations |P|: {_sized(self.parametrisations)}",
            f"admitted by the constraints: {_sized(self.admitted)}",
            f"states: {self.states}",
        ]
        for node in self.per_node:
            regulators = ",".join(node.regulators) or "-"
            lines.append(
                f"  {node.name}: max={node.max_value} regulators={regulators} "
                f"|Omega_{node.name}|={node.contexts}"
            )
        lines.append("constraints: " + (" ".join(self.constraints) or "-"))
        lines.append(f"init: {self.x0}")
        return "\n".join(lines) + "\n"


class TrialResult(BaseModel):
    trial: NonNegativeInt
    check: str
    passed: bool
    detail: str = ""
    # transitions the check ran on, when it ran on a named set
    subject: str = ""

    def render(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        check = f"{self.check} [{self.subject}]" if self.subject else self.check
        line = f"trial {self.trial} {check}: {status}"
        return f"{line} ({self.detail})" if self.detail else line


class VerifySummary(BaseModel):
    trials: list[TrialResult]

    @property
    def passed(self) -> int:
        return sum(1 for t in self.trials if t.passed)

    @property
    def failed(self) -> int:
        return len(self.trials) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def render(self) -> str:
        lines = [t.render() for t in self.trials]
        lines.append(f"{self.passed} passed, {self.failed} failed")
        return "\n".join(lines) + "\n"

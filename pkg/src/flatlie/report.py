from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .exactnum import Matrix, Rational, Subspace, format_rational


@dataclass
class CheckReport:
    """Named boolean checks plus witnesses for the ones that failed.

    A check set to ``None`` did not apply to the input (for example a
    Lorentzian-only identity on a Riemannian algebra) and is ignored by
    :attr:`passed`.
    """

    checks: dict[str, bool | None] = field(default_factory=dict)
    witnesses: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def record(self, name: str, ok: bool | None, witness: Any = None) -> bool | None:
        self.checks[name] = ok
        if ok is False and witness is not None:
            self.witnesses[name] = witness
        return ok

    @property
    def passed(self) -> bool:
        return all(v is not False for v in self.checks.values())

    @property
    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if v is False]

    def first_failure(self) -> str | None:
        fails = self.failures
        return fails[0] if fails else None

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        out = {"pass": self.passed, "checks": dict(self.checks)}
        if self.witnesses:
            out["witnesses"] = {k: jsonable(v) for k, v in self.witnesses.items()}
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def jsonable(obj: Any) -> Any:
    """Convert rationals, matrices and subspaces to plain JSON values."""
    if isinstance(obj, Rational):
        return format_rational(obj)
    if isinstance(obj, Matrix):
        return [[format_rational(x) for x in r] for r in obj.tolist()]
    if isinstance(obj, Subspace):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return obj

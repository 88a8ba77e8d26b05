"""Pass/fail results for truncated checks."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Verdict:
    """Outcome of a finite-order test.

    ``ok`` means no obstruction was found up to ``order``; it is not a proof of
    membership.  On failure ``reason`` explains why and ``witness`` carries the
    offending word, minor or index; ``side`` names which of two inputs failed.
    """

    ok: bool
    order: int
    reason: str | None = None
    witness: object = None
    side: str | None = None
    details: dict = field(default_factory=dict, compare=False)

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return f"PassUpTo({self.order})"
        where = f"{self.side}: " if self.side else ""
        return f"Fail({where}{self.reason})"

    @classmethod
    def passed(cls, order, **details):
        return cls(True, order, details=details)

    @classmethod
    def failed(cls, order, reason, witness=None, side=None):
        return cls(False, order, reason, witness, side)

    def to_json(self):
        obj = {"ok": self.ok, "order": self.order, "verdict": str(self)}
        if not self.ok:
            obj["reason"] = self.reason
            if self.side:
                obj["side"] = self.side
            if self.witness is not None:
                obj["witness"] = _jsonable(self.witness)
        return obj


def _jsonable(x):
    if isinstance(x, (str, int, bool)) or x is None:
        return x
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)

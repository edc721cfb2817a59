from dataclasses import dataclass, field
from typing import Any, Optional


@dataclass(frozen=True)
class Verdict:
    """A boolean decision with an optional replayable witness."""

    value: bool
    witness: Any = None
    skipped_reason: Optional[str] = None
    notes: dict = field(default_factory=dict, compare=False)

    def __bool__(self):
        return bool(self.value)

    @property
    def skipped(self):
        return self.skipped_reason is not None

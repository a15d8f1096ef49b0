"""Run configuration shared by the CLI and JSON config files."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from typing import Any

from ..errors import DomainError

COMMANDS = ("figure", "theorem", "gof", "eval", "compare")
DEFAULT_SEED = 42


@dataclass
class RunConfig:
    command: str
    figure_id: str | None = None
    theorem_id: str | None = None
    trials: int = 200
    seed: int = DEFAULT_SEED
    grid_count: int = 512
    q_lo: float = 0.001
    q_hi: float = 0.999
    n_samples: int = 100_000
    output_path: str | None = None
    # inline distributions for eval / compare / gof, in their JSON forms
    system: dict | None = None
    system_y: dict | None = None
    x: list[float] = field(default_factory=list)

    def validate(self) -> "RunConfig":
        if self.command not in COMMANDS:
            raise DomainError(f"unknown command {self.command!r}")
        if self.command == "figure" and not self.figure_id:
            raise DomainError("figure command needs a figure id")
        if self.command == "theorem" and not self.theorem_id:
            raise DomainError("theorem command needs a theorem id")
        if self.command in ("eval", "compare") and self.system is None:
            raise DomainError(f"{self.command} needs a 'system' object in the config")
        if self.command == "compare" and self.system_y is None:
            raise DomainError("compare needs a 'system_y' object in the config")
        if self.trials < 0:
            raise DomainError("trials must be nonnegative")
        if self.seed < 0:
            raise DomainError("seed must be an unsigned integer")
        return self

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise DomainError(f"unknown config keys: {sorted(unknown)}")
        if "command" not in data:
            raise DomainError("config needs a 'command'")
        return cls(**data)

    @classmethod
    def load(cls, path) -> "RunConfig":
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise DomainError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise DomainError("config file must hold a JSON object")
        return cls.from_dict(data)

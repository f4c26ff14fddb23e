"""Run configuration: enumeration caps, search guards, seed and output paths."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path


@dataclass(frozen=True)
class Caps:
    max_points: int = 2**22
    max_hyperplanes: int = 2**20
    max_codim2: int = 2**18
    max_codewords: int = 2**12
    integrity_max_n: int = 25
    z_max_n: int = 30

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise ValueError(f"cap {f.name} must be positive")


@dataclass(frozen=True)
class RunConfig:
    caps: Caps = field(default_factory=Caps)
    seed: int = 0
    output: Path | None = None
    verbosity: int = 0
    threads: int = 1

    @classmethod
    def from_json(cls, data: dict) -> "RunConfig":
        caps = Caps(**data.get("caps", {}))
        out = data.get("output")
        return cls(
            caps=caps,
            seed=int(data.get("seed", 0)),
            output=Path(out) if out else None,
            verbosity=int(data.get("verbosity", 0)),
            threads=int(data.get("threads", default_threads())),
        )

    @classmethod
    def load(cls, path: str | os.PathLike) -> "RunConfig":
        return cls.from_json(json.loads(Path(path).read_text()))

    def to_json(self) -> dict:
        d = asdict(self)
        d["output"] = str(self.output) if self.output else None
        return d


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("BLOCKSMITH_THREADS", "1")))
    except ValueError:
        return 1

"""Run configuration and default caps."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field

from .errors import PreconditionError
from .linalg import is_prime

GROUP_ORDER_CAP = 2048
H1_ORDER_CAP = 1024
H2_ORDER_CAP = 128
COCHAIN_H2_ORDER_CAP = 32
MODULE_DIM_CAP = 64
SUBQUOTIENT_CAP = 256
PRODUCT_ORDER_BOUND = 4096
ENUMERATION_BUDGET = 10**7
DEFAULT_PRIMES = (2, 3, 5, 7, 11, 13)
CACHE_ENV = "GAMMAPRES_CACHE_DIR"


@dataclass(frozen=True)
class RunConfig:
    group_order_cap: int = GROUP_ORDER_CAP
    h2_order_cap: int = H2_ORDER_CAP
    product_order_bound: int = PRODUCT_ORDER_BOUND
    enumeration_budget: int = ENUMERATION_BUDGET
    primes: tuple[int, ...] = DEFAULT_PRIMES
    seed: int = 0
    output_format: str = "json"
    cache_dir: str | None = field(default=None)

    def __post_init__(self):
        for name in ("group_order_cap", "h2_order_cap", "product_order_bound", "enumeration_budget"):
            if getattr(self, name) <= 0:
                raise PreconditionError(f"{name} must be positive")
        if not self.primes or not all(is_prime(p) for p in self.primes):
            raise PreconditionError("prime list must be nonempty and contain only primes")
        if self.output_format not in ("json", "tsv"):
            raise PreconditionError("output_format must be json or tsv")

    @classmethod
    def load(cls, path: str | None) -> "RunConfig":
        data = {}
        if path:
            with open(path) as fh:
                data = json.load(fh)
        if "primes" in data:
            data["primes"] = tuple(data["primes"])
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise PreconditionError(f"unknown config keys: {sorted(unknown)}")
        if data.get("cache_dir") is None and os.environ.get(CACHE_ENV):
            data["cache_dir"] = os.environ[CACHE_ENV]
        return cls(**data)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["primes"] = list(self.primes)
        return d

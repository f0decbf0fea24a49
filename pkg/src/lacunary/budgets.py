"""Resource budgets with optional hard caps from the environment.

Library functions accept an explicit budget argument; ``None`` selects the
module default. If the corresponding environment variable is set it acts as
a hard cap: any resolved budget above it is rejected up front, before work
starts, so runaway requests fail fast instead of exhausting memory.
"""

from __future__ import annotations

import os

from .errors import BudgetError

# Bits of precision a single dyadic value may carry (largest series exponent).
DEFAULT_EXPONENT_BUDGET = 1 << 20

# Cells in a representation or digit-coefficient table.
DEFAULT_TABLE_BUDGET = 1 << 25

# Exhaustive-enumeration oracle caps.
BRUTEFORCE_N_CAP = 1 << 20
BRUTEFORCE_Q_CAP = 6

# Digit-isolation precision search never goes past this level.
WITNESS_P_CAP = 64

ENV_EXPONENT_CAP = "LACUNARY_EXPONENT_BUDGET"
ENV_TABLE_CAP = "LACUNARY_TABLE_BUDGET"


def _resolve(requested: int | None, default: int, env_name: str, label: str) -> int:
    value = default if requested is None else requested
    if value < 1:
        raise BudgetError(f"{label} budget must be positive, got {value}")
    cap_text = os.environ.get(env_name)
    if cap_text is not None:
        try:
            cap = int(cap_text)
        except ValueError:
            raise BudgetError(f"{env_name} must be an integer, got {cap_text!r}") from None
        if value > cap:
            raise BudgetError(f"{label} budget {value} exceeds hard cap {cap} ({env_name})")
    return value


def exponent_budget(requested: int | None = None) -> int:
    return _resolve(requested, DEFAULT_EXPONENT_BUDGET, ENV_EXPONENT_CAP, "exponent")


def table_budget(requested: int | None = None) -> int:
    return _resolve(requested, DEFAULT_TABLE_BUDGET, ENV_TABLE_CAP, "table")

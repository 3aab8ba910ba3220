"""Argument checks shared by the simulator, the search runners and the harness."""

from __future__ import annotations

import numbers

MAX_REGISTER = 1024
MAX_SINGLE = 2**20
SEED_LIMIT = 2**64


class InfeasibleSizeError(ValueError):
    """Raised when a requested dimension would exceed the dense-memory guard."""


def check_int(value, name: str, low: int | None = None, high: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise TypeError(f"{name} must be an integer, got {type(value).__name__}")
    value = int(value)
    if low is not None and value < low:
        raise ValueError(f"{name}={value} is below the minimum {low}")
    if high is not None and value > high:
        raise ValueError(f"{name}={value} exceeds the maximum {high}")
    return value


def check_dimension(dim, name: str = "L") -> int:
    return check_int(dim, name, low=2)


def check_hint_size(M, dim: int, name: str = "M") -> int:
    return check_int(M, name, low=1, high=dim)


def check_seed(seed) -> int:
    return check_int(seed, "seed", low=0, high=SEED_LIMIT - 1)


def check_feasible(dim: int, *, two_register: bool) -> None:
    limit = MAX_REGISTER if two_register else MAX_SINGLE
    if dim > limit:
        label = "L" if two_register else "N"
        raise InfeasibleSizeError(f"{label}={dim} exceeds the dense statevector guard {label} <= {limit}")


def check_same_dim(state_dim: int, inst_dim: int) -> None:
    if state_dim != inst_dim:
        raise ValueError(f"state dimension {state_dim} does not match instance dimension {inst_dim}")

"""Grover building blocks: counted phase oracles, per-register diffusions, schedules.

Each public operator returns a new state and leaves its input untouched. The
underscored kernels work in place on a flat amplitude array and are what the
composite operators in :mod:`.structured` and :mod:`.flat` chain together, so a
long operator product costs one copy rather than one per factor.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from ._validation import check_hint_size, check_int, check_same_dim
from .instances import FlatInstance, StructuredInstance
from .statevector import SingleRegisterState, TwoRegisterState


class Register(enum.Enum):
    X = "x"
    Y = "y"
    WHOLE = "whole"


class ScheduleMode(enum.Enum):
    PAPER = "paper"
    OPTIMAL = "optimal"

    @classmethod
    def coerce(cls, mode) -> "ScheduleMode":
        if isinstance(mode, cls):
            return mode
        try:
            return cls(str(mode).lower())
        except ValueError:
            raise ValueError(f"unknown schedule mode {mode!r}; expected 'paper' or 'optimal'") from None


@dataclass(frozen=True)
class IterationSchedule:
    """Iteration counts for the grid search.

    k drives the inner y-search, j prepares the hint superposition and h is the
    number of outer rounds.
    """

    k: int
    j: int
    h: int
    mode: ScheduleMode

    @property
    def degenerate(self) -> bool:
        return min(self.k, self.j, self.h) == 0


_HALF_TOL = 1e-9


def closest_integer(value: float) -> int:
    """Round half up; values within 1e-9 below a half-integer count as the half-integer.

    ``pi / (4 asin(sqrt(1/2)))`` evaluates a hair under 1, and similar
    exact-rotation cases would otherwise round the wrong way.
    """
    return math.floor(value + 0.5 + _HALF_TOL)


def iteration_count(dim: int, marked: int, mode=ScheduleMode.PAPER) -> int:
    """Number of Grover iterations for ``marked`` items among ``dim``.

    PAPER is the closest integer to ``(pi/4) sqrt(dim/marked)``. OPTIMAL picks
    the integer nearest the first peak of ``sin^2((2t+1) theta)``.
    """
    mode = ScheduleMode.coerce(mode)
    dim = check_int(dim, "dim", low=1)
    marked = check_int(marked, "marked", 1, dim)
    if mode is ScheduleMode.PAPER:
        return closest_integer(math.pi / 4 * math.sqrt(dim / marked))
    theta = math.asin(math.sqrt(marked / dim))
    return max(0, closest_integer(math.pi / (4 * theta) - 0.5))


def schedule(L: int, M: int, mode=ScheduleMode.PAPER) -> IterationSchedule:
    L = check_int(L, "L", low=1)
    M = check_hint_size(M, L)
    mode = ScheduleMode.coerce(mode)
    return IterationSchedule(
        k=iteration_count(L, 1, mode),
        j=iteration_count(L, M, mode),
        h=iteration_count(M, 1, mode),
        mode=mode,
    )


def grover_success_probability(dim: int, marked: int, t: int) -> float:
    """Mass on the marked set after ``t`` standard Grover iterations from uniform."""
    dim = check_int(dim, "dim", low=1)
    marked = check_int(marked, "marked", 1, dim)
    t = check_int(t, "t", low=0)
    theta = math.asin(math.sqrt(marked / dim))
    return math.sin((2 * t + 1) * theta) ** 2


# -- in-place kernels ---------------------------------------------------------


def _phase_F(amps: np.ndarray, inst: StructuredInstance) -> None:
    amps[(inst.x0 - 1) * inst.L + (inst.y0 - 1)] *= -1
    inst.f_counter += 1


def _phase_G(amps: np.ndarray, inst: StructuredInstance, mask: np.ndarray | None = None) -> None:
    grid = amps.reshape(inst.L, inst.L)
    grid[inst.g_mask if mask is None else mask] *= -1
    inst.g_counter += 1


def _phase_f(amps: np.ndarray, inst: FlatInstance) -> None:
    amps[inst.z0 - 1] *= -1
    inst.f_counter += 1


def _phase_g(amps: np.ndarray, inst: FlatInstance, mask: np.ndarray | None = None) -> None:
    amps[inst.g_mask if mask is None else mask] *= -1
    inst.g_counter += 1


def _reflect_about_mean(amps: np.ndarray, L: int | None, register: Register) -> None:
    # 2|s><s| - 1 on the chosen register is "amp -> 2 * mean - amp" per slice
    if register is Register.WHOLE:
        mean = amps.mean()
        np.negative(amps, out=amps)
        amps += 2 * mean
        return
    grid = amps.reshape(L, L)
    axis = 0 if register is Register.X else 1
    mean = grid.mean(axis=axis, keepdims=True)
    np.negative(grid, out=grid)
    grid += 2 * mean


# -- public operators ---------------------------------------------------------


def apply_phase_F(state: TwoRegisterState, inst: StructuredInstance) -> TwoRegisterState:
    check_same_dim(state.L, inst.L)
    out = state.copy()
    _phase_F(out.amps, inst)
    return out


def apply_phase_G(state: TwoRegisterState, inst: StructuredInstance) -> TwoRegisterState:
    check_same_dim(state.L, inst.L)
    out = state.copy()
    _phase_G(out.amps, inst)
    return out


def apply_phase_f(state: SingleRegisterState, inst: FlatInstance) -> SingleRegisterState:
    check_same_dim(state.N, inst.N)
    out = state.copy()
    _phase_f(out.amps, inst)
    return out


def apply_phase_g(state: SingleRegisterState, inst: FlatInstance) -> SingleRegisterState:
    check_same_dim(state.N, inst.N)
    out = state.copy()
    _phase_g(out.amps, inst)
    return out


def apply_diffusion(state, selector):
    """Reflect about the uniform state of one register; no oracle is charged.

    ``Register.X`` and ``Register.Y`` act on one factor of a two-register state;
    ``Register.WHOLE`` is for single-register states only.
    """
    if not isinstance(selector, Register):
        raise TypeError(f"selector must be a Register, got {selector!r}")
    if isinstance(state, TwoRegisterState):
        if selector is Register.WHOLE:
            raise ValueError("WHOLE diffusion is only defined for single-register states")
        out = state.copy()
        _reflect_about_mean(out.amps, out.L, selector)
        return out
    if isinstance(state, SingleRegisterState):
        if selector is not Register.WHOLE:
            raise ValueError(f"{selector.name} diffusion needs a two-register state")
        out = state.copy()
        _reflect_about_mean(out.amps, None, Register.WHOLE)
        return out
    raise TypeError(f"unsupported state type {type(state).__name__}")


def amplify(state: SingleRegisterState, inst: FlatInstance, t: int, oracle: str = "f") -> SingleRegisterState:
    """Apply ``[(2|sigma><sigma| - 1) (-1)^oracle]^t`` with oracle ``'f'`` or ``'g'``."""
    check_same_dim(state.N, inst.N)
    t = check_int(t, "t", low=0)
    if oracle == "f":
        phase = _phase_f
    elif oracle == "g":
        mask = inst.g_mask

        def phase(amps, inst):
            _phase_g(amps, inst, mask)
    else:
        raise ValueError(f"oracle must be 'f' or 'g', got {oracle!r}")
    out = state.copy()
    for _ in range(t):
        phase(out.amps, inst)
        _reflect_about_mean(out.amps, None, Register.WHOLE)
    return out

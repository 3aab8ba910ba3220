"""Nested amplitude amplification over an L x L grid with a size-M hint on x.

The pipeline, starting from ``|s>|s>``:

1. ``prepare_psi``: ``j`` rounds of ``U1 (-1)^G`` concentrate x on the hint set.
2. ``h`` outer rounds of ``U_psi V`` single out ``x0``. ``V = W^dag (-1)^F W``
   flips the sign of ``|x0>|s>`` and leaves every other ``|x>|s>`` alone, and
   ``W = [U2 (-1)^F]^k`` is an inner y-search.
3. After ``x`` is read out, a k-step y-search on the chosen row finds ``y0``.

With schedule counts ``(k, j, h)`` the pipeline charges exactly
``h (2k + 1) + k`` F-calls and ``j + 2jh`` G-calls.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from ._validation import check_feasible, check_int, check_same_dim
from .amplification import (
    IterationSchedule,
    Register,
    ScheduleMode,
    _phase_F,
    _phase_G,
    _reflect_about_mean,
    iteration_count,
    schedule,
)
from .instances import StructuredInstance, counter_snapshot
from .statevector import NORM_ATOL, TwoRegisterState, marginal_x, uniform_two_register


class Direction(enum.Enum):
    FORWARD = "forward"
    ADJOINT = "adjoint"


class Fallback(enum.Enum):
    # M = 1: G alone pins x0, then a y-search
    SINGLE_HINT = "single_hint"
    # M = L: G carries no information, plain Grover on F over all L^2 cells
    FULL_HINT = "full_hint"
    # M = N in the flat problem: plain Grover on f
    PLAIN_GROVER = "plain_grover"


@dataclass
class SearchResult:
    outcome_x: int
    outcome_y: int
    success_probability: float
    f_calls: int
    g_calls: int
    schedule_used: object
    exact: bool = True
    joint_success_probability: float | None = None
    fallback: Fallback | None = None
    degenerate_schedule: bool = False

    @property
    def total_calls(self) -> int:
        return self.f_calls + self.g_calls


def expected_calls(sched: IterationSchedule) -> tuple[int, int]:
    """Closed-form (F, G) call counts of the nested pipeline."""
    k, j, h = sched.k, sched.j, sched.h
    return h * (2 * k + 1) + k, j + 2 * j * h


# -- in-place building blocks -------------------------------------------------


def _W(amps, inst, k, direction):
    if direction is Direction.FORWARD:
        for _ in range(k):
            _phase_F(amps, inst)
            _reflect_about_mean(amps, inst.L, Register.Y)
    else:
        for _ in range(k):
            _reflect_about_mean(amps, inst.L, Register.Y)
            _phase_F(amps, inst)


def _V(amps, inst, k):
    _W(amps, inst, k, Direction.FORWARD)
    _phase_F(amps, inst)
    _W(amps, inst, k, Direction.ADJOINT)


def _hint_rounds(amps, inst, j, mask, *, adjoint=False):
    # forward: [U1 (-1)^G]^j ; adjoint: [(-1)^G U1]^j
    for _ in range(j):
        if adjoint:
            _reflect_about_mean(amps, inst.L, Register.X)
            _phase_G(amps, inst, mask)
        else:
            _phase_G(amps, inst, mask)
            _reflect_about_mean(amps, inst.L, Register.X)


def _U_psi(amps, inst, j, mask):
    # literal order [(-1)^G U1]^j U1 [U1 (-1)^G]^j; the rightmost factor acts first
    _hint_rounds(amps, inst, j, mask)
    _reflect_about_mean(amps, inst.L, Register.X)
    _hint_rounds(amps, inst, j, mask, adjoint=True)


def _assert_normalized(amps, stage):
    norm = float(np.vdot(amps, amps).real)
    if abs(norm - 1.0) > NORM_ATOL:
        raise RuntimeError(f"norm drifted to {norm!r} after {stage}")


# -- public operators ---------------------------------------------------------


def apply_W(state: TwoRegisterState, inst: StructuredInstance, sched: IterationSchedule,
            direction: Direction = Direction.FORWARD) -> TwoRegisterState:
    """Inner y-search ``[U2 (-1)^F]^k`` (or its adjoint); charges k F-calls."""
    check_same_dim(state.L, inst.L)
    k = check_int(sched.k, "k", low=0)
    out = state.copy()
    _W(out.amps, inst, k, Direction(direction))
    return out


def apply_V(state: TwoRegisterState, inst: StructuredInstance, sched: IterationSchedule) -> TwoRegisterState:
    """``W^dag (-1)^F W``; charges 2k + 1 F-calls."""
    check_same_dim(state.L, inst.L)
    out = state.copy()
    _V(out.amps, inst, check_int(sched.k, "k", low=0))
    return out


def prepare_psi(inst: StructuredInstance, sched: IterationSchedule) -> TwoRegisterState:
    state = uniform_two_register(inst.L)
    _hint_rounds(state.amps, inst, check_int(sched.j, "j", low=0), inst.g_mask)
    return state


def apply_U_psi(state: TwoRegisterState, inst: StructuredInstance, sched: IterationSchedule) -> TwoRegisterState:
    """Reflection built from the hint preparation and its adjoint; charges 2j G-calls.

    The factors are applied in the literal order ``A^dag U1 A`` with
    ``A = [U1 (-1)^G]^j``. This is an exact involution whose +1 axis is
    ``A^dag |s>|s>``.
    """
    check_same_dim(state.L, inst.L)
    out = state.copy()
    _U_psi(out.amps, inst, check_int(sched.j, "j", low=0), inst.g_mask)
    return out


def _read_x(state, inst, shots, rng):
    px = marginal_x(state)
    if shots is None:
        return int(np.argmax(px)) + 1, float(px[inst.x0 - 1])
    counts = rng.multinomial(shots, px / px.sum())
    return int(np.argmax(counts)) + 1, float(counts[inst.x0 - 1] / shots)


def run_structured_search(inst: StructuredInstance, mode=ScheduleMode.PAPER, *,
                          shots: int | None = None, sample_seed: int = 0) -> SearchResult:
    """Run the full nested search and return exact probabilities and call counts.

    ``success_probability`` is the probability that measuring x yields ``x0``;
    ``joint_success_probability`` is that of ``(x0, y0)`` once the y-stage has run.
    The y-stage acts on every row at once, which is equivalent to measuring x
    first and then searching row ``outcome_x`` with ``F(outcome_x, .)``.
    Passing ``shots`` replaces the exact x readout with seeded sampling.
    """
    check_feasible(inst.L, two_register=True)
    mode = ScheduleMode.coerce(mode)
    sched = schedule(inst.L, inst.M, mode)
    rng = np.random.default_rng(sample_seed) if shots is not None else None
    if shots is not None:
        shots = check_int(shots, "shots", low=1)
    f_start, g_start = counter_snapshot(inst)
    mask = inst.g_mask

    fallback = None
    state = uniform_two_register(inst.L)
    amps = state.amps
    if inst.M == 1:
        fallback = Fallback.SINGLE_HINT
        _hint_rounds(amps, inst, sched.j, mask)
    elif inst.M == inst.L:
        fallback = Fallback.FULL_HINT
        for _ in range(iteration_count(inst.L * inst.L, 1, mode)):
            _phase_F(amps, inst)
            _reflect_about_mean(amps, None, Register.WHOLE)
    else:
        _hint_rounds(amps, inst, sched.j, mask)
        _assert_normalized(amps, "hint preparation")
        for _ in range(sched.h):
            _V(amps, inst, sched.k)
            _U_psi(amps, inst, sched.j, mask)
        _assert_normalized(amps, "outer rounds")

    outcome_x, p_x0 = _read_x(state, inst, shots, rng)
    if fallback is not Fallback.FULL_HINT:
        _W(amps, inst, sched.k, Direction.FORWARD)
        _assert_normalized(amps, "y search")
    row = np.abs(state.grid[outcome_x - 1]) ** 2
    outcome_y = int(np.argmax(row)) + 1
    joint = float(abs(state.grid[inst.x0 - 1, inst.y0 - 1]) ** 2)

    f_end, g_end = counter_snapshot(inst)
    return SearchResult(
        outcome_x=outcome_x,
        outcome_y=outcome_y,
        success_probability=p_x0,
        joint_success_probability=joint,
        f_calls=f_end - f_start,
        g_calls=g_end - g_start,
        schedule_used=sched,
        exact=shots is None,
        fallback=fallback,
        degenerate_schedule=sched.degenerate,
    )

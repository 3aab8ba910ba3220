"""Nested search on a single register, where the hint buys nothing.

``|phi>`` (uniform over the hint set) is prepared by ``ell`` rounds of
``D (-1)^g`` with ``D = 2|sigma><sigma| - 1``. The reflection about it is then
used as the diffusion of an outer f-search with ``h`` rounds. Each reflection
costs ``2 ell`` g-calls, so the total is ``ell + 2 ell h`` g-calls and ``h``
f-calls, which is of order ``sqrt(N)`` for every M.

:func:`build_g1` and :func:`build_g2` turn a bare f-oracle into hint oracles.
For any ``z0`` at least one of them is 1 on exactly M points including ``z0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._validation import check_feasible, check_hint_size, check_int, check_same_dim
from .amplification import Register, ScheduleMode, _phase_f, _phase_g, _reflect_about_mean, iteration_count
from .instances import FlatInstance, counter_snapshot, query_f
from .statevector import NORM_ATOL, SingleRegisterState, uniform_single_register
from .structured import Fallback, SearchResult


@dataclass(frozen=True)
class FlatSchedule:
    ell: int
    h: int
    mode: ScheduleMode

    @property
    def degenerate(self) -> bool:
        return min(self.ell, self.h) == 0


def flat_schedule(N: int, M: int, mode=ScheduleMode.PAPER) -> FlatSchedule:
    N = check_int(N, "N", low=1)
    M = check_hint_size(M, N)
    mode = ScheduleMode.coerce(mode)
    return FlatSchedule(ell=iteration_count(N, M, mode), h=iteration_count(M, 1, mode), mode=mode)


def expected_flat_calls(sched: FlatSchedule) -> tuple[int, int]:
    """Closed-form (f, g) call counts of the nested pipeline."""
    return sched.h, sched.ell + 2 * sched.ell * sched.h


def _prepare_rounds(amps, inst, ell, mask, *, adjoint=False):
    for _ in range(ell):
        if adjoint:
            _reflect_about_mean(amps, None, Register.WHOLE)
            _phase_g(amps, inst, mask)
        else:
            _phase_g(amps, inst, mask)
            _reflect_about_mean(amps, None, Register.WHOLE)


def _reflect_phi(amps, inst, ell, mask):
    _prepare_rounds(amps, inst, ell, mask)
    _reflect_about_mean(amps, None, Register.WHOLE)
    _prepare_rounds(amps, inst, ell, mask, adjoint=True)


def prepare_phi(inst: FlatInstance, sched: FlatSchedule) -> SingleRegisterState:
    state = uniform_single_register(inst.N)
    _prepare_rounds(state.amps, inst, check_int(sched.ell, "ell", low=0), inst.g_mask)
    return state


def apply_reflection_phi(state: SingleRegisterState, inst: FlatInstance, sched: FlatSchedule) -> SingleRegisterState:
    """``[(-1)^g D]^ell D [D (-1)^g]^ell``; charges 2 ell g-calls.

    This is the adjoint-ordered conjugation, an exact involution. The
    unconjugated product ``U^ell D U^ell`` with ``U = D (-1)^g`` is no use:
    ``D U D = U^-1``, so it collapses to ``D`` and never consults g.
    """
    check_same_dim(state.N, inst.N)
    out = state.copy()
    _reflect_phi(out.amps, inst, check_int(sched.ell, "ell", low=0), inst.g_mask)
    return out


def run_flat_search(inst: FlatInstance, mode=ScheduleMode.PAPER) -> SearchResult:
    check_feasible(inst.N, two_register=False)
    mode = ScheduleMode.coerce(mode)
    sched = flat_schedule(inst.N, inst.M, mode)
    f_start, g_start = counter_snapshot(inst)
    state = uniform_single_register(inst.N)
    amps = state.amps

    fallback = None
    if inst.M in (1, inst.N):
        # a singleton hint is the answer itself and a full hint says nothing;
        # either way the honest baseline is Grover on f alone
        fallback = Fallback.PLAIN_GROVER
        for _ in range(iteration_count(inst.N, 1, mode)):
            _phase_f(amps, inst)
            _reflect_about_mean(amps, None, Register.WHOLE)
    else:
        mask = inst.g_mask
        _prepare_rounds(amps, inst, sched.ell, mask)
        for _ in range(sched.h):
            _phase_f(amps, inst)
            _reflect_phi(amps, inst, sched.ell, mask)

    norm = float(np.vdot(amps, amps).real)
    if abs(norm - 1.0) > NORM_ATOL:
        raise RuntimeError(f"norm drifted to {norm!r}")
    probs = np.abs(amps) ** 2
    f_end, g_end = counter_snapshot(inst)
    p = float(probs[inst.z0 - 1])
    return SearchResult(
        outcome_x=int(np.argmax(probs)) + 1,
        outcome_y=0,
        success_probability=p,
        joint_success_probability=p,
        f_calls=f_end - f_start,
        g_calls=g_end - g_start,
        schedule_used=sched,
        fallback=fallback,
        degenerate_schedule=sched.degenerate,
    )


def build_g1(inst: FlatInstance, M: int) -> Callable[[int], int]:
    """Hint that is 1 on ``1..M-1`` and wherever f is 1. Each evaluation costs one f-call."""
    M = check_hint_size(M, inst.N)

    def g1(z: int) -> int:
        hit = query_f(inst, z)
        return int(1 <= z <= M - 1 or hit == 1)

    return g1


def build_g2(inst: FlatInstance, M: int) -> Callable[[int], int]:
    """Hint that is 1 on ``1..M`` and wherever f is 1. Each evaluation costs one f-call."""
    M = check_hint_size(M, inst.N)

    def g2(z: int) -> int:
        hit = query_f(inst, z)
        return int(1 <= z <= M or hit == 1)

    return g2


def support(predicate: Callable[[int], int], N: int) -> frozenset[int]:
    return frozenset(z for z in range(1, N + 1) if predicate(z))


def instance_with_hint(inst: FlatInstance, predicate: Callable[[int], int]) -> FlatInstance:
    """A fresh instance sharing ``z0`` with ``inst`` whose hint set is ``predicate``'s support.

    Tabulating the predicate is charged to ``inst``; the returned instance has
    zeroed counters. Raises ``ValueError`` if the support does not contain
    ``z0`` (it always does for g1 and g2).
    """
    g_set = support(predicate, inst.N)
    return FlatInstance(inst.N, len(g_set), inst.z0, g_set, inst.seed)

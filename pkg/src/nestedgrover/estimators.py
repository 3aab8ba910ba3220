"""scikit-learn style wrappers around the search runners.

``fit`` takes a problem instance in place of a design matrix, runs the search
and stores the outcome in trailing-underscore attributes. ``predict`` returns
the located cell, and ``score`` the exact success probability. Hyperparameters
go through ``get_params``/``set_params`` as usual, so the wrappers work with
``sklearn.base.clone`` and parameter grids.
"""

from __future__ import annotations

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .amplification import ScheduleMode, schedule
from .flat import flat_schedule, run_flat_search
from .harness import classical_structured_scan
from .instances import FlatInstance, StructuredInstance
from .structured import run_structured_search


def _check_instance(inst, kind):
    if not isinstance(inst, kind):
        raise TypeError(f"expected a {kind.__name__}, got {type(inst).__name__}")
    return inst


class StructuredSearch(BaseEstimator):
    """Nested quantum search for the marked grid cell.

    Parameters
    ----------
    mode : {"paper", "optimal"}
        Rounding rule for the iteration counts.
    shots : int or None
        If set, read x out by seeded sampling instead of exactly.
    sample_seed : int
        Seed for the sampling readout.
    """

    def __init__(self, mode="paper", shots=None, sample_seed=0):
        self.mode = mode
        self.shots = shots
        self.sample_seed = sample_seed

    def fit(self, inst, y=None):
        inst = _check_instance(inst, StructuredInstance)
        mode = ScheduleMode.coerce(self.mode)
        self.result_ = run_structured_search(inst, mode, shots=self.shots, sample_seed=self.sample_seed)
        self.schedule_ = schedule(inst.L, inst.M, mode)
        self.n_calls_ = self.result_.total_calls
        return self

    def predict(self, inst=None):
        check_is_fitted(self, "result_")
        return self.result_.outcome_x, self.result_.outcome_y

    def score(self, inst=None, y=None):
        check_is_fitted(self, "result_")
        return self.result_.success_probability


class FlatSearch(BaseEstimator):
    def __init__(self, mode="paper"):
        self.mode = mode

    def fit(self, inst, y=None):
        inst = _check_instance(inst, FlatInstance)
        mode = ScheduleMode.coerce(self.mode)
        self.result_ = run_flat_search(inst, mode)
        self.schedule_ = flat_schedule(inst.N, inst.M, mode)
        self.n_calls_ = self.result_.total_calls
        return self

    def predict(self, inst=None):
        check_is_fitted(self, "result_")
        return self.result_.outcome_x

    def score(self, inst=None, y=None):
        check_is_fitted(self, "result_")
        return self.result_.success_probability


class ClassicalScan(BaseEstimator):
    """Deterministic classical baseline; always succeeds."""

    def fit(self, inst, y=None):
        inst = _check_instance(inst, StructuredInstance)
        self.row_ = classical_structured_scan(inst)
        self.n_calls_ = self.row_.total_calls
        return self

    def predict(self, inst=None):
        check_is_fitted(self, "row_")
        return self.row_.outcome_x, self.row_.outcome_y

    def score(self, inst=None, y=None):
        check_is_fitted(self, "row_")
        return 1.0

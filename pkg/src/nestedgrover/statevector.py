"""Dense complex statevectors for one register (``|z>``) and two registers (``|x>|y>``).

Public indices are 1-based to match ``1 <= x <= L``. Amplitudes are stored as a
flat ``complex128`` array; the two-register layout is x-major, so the amplitude
of ``|x>|y>`` lives at ``(x - 1) * L + (y - 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._validation import check_dimension, check_int

NORM_ATOL = 1e-9


@dataclass(eq=False)
class TwoRegisterState:
    L: int
    amps: np.ndarray

    def __post_init__(self):
        self.L = check_dimension(self.L, "L")
        self.amps = np.asarray(self.amps, dtype=np.complex128).reshape(-1)
        if self.amps.size != self.L * self.L:
            raise ValueError(f"expected {self.L * self.L} amplitudes, got {self.amps.size}")

    @property
    def grid(self) -> np.ndarray:
        """``(L, L)`` view indexed ``[x - 1, y - 1]``."""
        return self.amps.reshape(self.L, self.L)

    @property
    def dim(self) -> int:
        return self.amps.size

    def index(self, x: int, y: int) -> int:
        x = check_int(x, "x", 1, self.L)
        y = check_int(y, "y", 1, self.L)
        return (x - 1) * self.L + (y - 1)

    def amplitude(self, x: int, y: int) -> complex:
        return complex(self.amps[self.index(x, y)])

    def copy(self) -> "TwoRegisterState":
        return TwoRegisterState(self.L, self.amps.copy())


@dataclass(eq=False)
class SingleRegisterState:
    N: int
    amps: np.ndarray

    def __post_init__(self):
        self.N = check_dimension(self.N, "N")
        self.amps = np.asarray(self.amps, dtype=np.complex128).reshape(-1)
        if self.amps.size != self.N:
            raise ValueError(f"expected {self.N} amplitudes, got {self.amps.size}")

    @property
    def dim(self) -> int:
        return self.N

    def index(self, z: int) -> int:
        return check_int(z, "z", 1, self.N) - 1

    def amplitude(self, z: int) -> complex:
        return complex(self.amps[self.index(z)])

    def copy(self) -> "SingleRegisterState":
        return SingleRegisterState(self.N, self.amps.copy())


State = TwoRegisterState | SingleRegisterState


def uniform_two_register(L: int) -> TwoRegisterState:
    """Return ``|s>|s>``: every amplitude equals ``1/L``."""
    L = check_dimension(L, "L")
    return TwoRegisterState(L, np.full(L * L, 1.0 / L, dtype=np.complex128))


def uniform_single_register(N: int) -> SingleRegisterState:
    N = check_dimension(N, "N")
    return SingleRegisterState(N, np.full(N, 1.0 / np.sqrt(N), dtype=np.complex128))


def basis_two_register(L: int, x: int, y: int) -> TwoRegisterState:
    state = TwoRegisterState(L, np.zeros(L * L, dtype=np.complex128))
    state.amps[state.index(x, y)] = 1.0
    return state


def basis_single_register(N: int, z: int) -> SingleRegisterState:
    state = SingleRegisterState(N, np.zeros(N, dtype=np.complex128))
    state.amps[state.index(z)] = 1.0
    return state


def product_with_uniform_y(L: int, x: int) -> TwoRegisterState:
    """Return ``|x>|s>``."""
    state = TwoRegisterState(L, np.zeros(L * L, dtype=np.complex128))
    x = check_int(x, "x", 1, state.L)
    state.grid[x - 1, :] = 1.0 / np.sqrt(L)
    return state


def random_two_register(L: int, rng: np.random.Generator) -> TwoRegisterState:
    amps = rng.standard_normal(L * L) + 1j * rng.standard_normal(L * L)
    return TwoRegisterState(L, amps / np.linalg.norm(amps))


def random_single_register(N: int, rng: np.random.Generator) -> SingleRegisterState:
    amps = rng.standard_normal(N) + 1j * rng.standard_normal(N)
    return SingleRegisterState(N, amps / np.linalg.norm(amps))


def _check_same_shape(a: State, b: State) -> None:
    if type(a) is not type(b) or a.dim != b.dim:
        raise ValueError(
            f"cannot combine {type(a).__name__}(dim={a.dim}) with {type(b).__name__}(dim={b.dim})"
        )


def inner_product(a: State, b: State) -> complex:
    """``<a|b>``, conjugate-linear in the first argument."""
    _check_same_shape(a, b)
    return complex(np.vdot(a.amps, b.amps))


def squared_norm(state: State) -> float:
    return float(np.vdot(state.amps, state.amps).real)


def distance(a: State, b: State) -> float:
    _check_same_shape(a, b)
    return float(np.linalg.norm(a.amps - b.amps))


def is_normalized(state: State, atol: float = NORM_ATOL) -> bool:
    return abs(squared_norm(state) - 1.0) <= atol


def probabilities(state: State) -> np.ndarray:
    return np.abs(state.amps) ** 2


def marginal_x(state: TwoRegisterState) -> np.ndarray:
    """Probability of each x outcome; entry ``i`` is ``p(x = i + 1)``."""
    if not isinstance(state, TwoRegisterState):
        raise TypeError("marginal_x needs a TwoRegisterState")
    return (np.abs(state.grid) ** 2).sum(axis=1)


def probability_of(state: State, *index: int) -> float:
    """Squared modulus at a basis index: ``(x, y)`` for two registers, ``(z,)`` for one."""
    if isinstance(state, TwoRegisterState):
        if len(index) != 2:
            raise ValueError("two-register states are indexed by (x, y)")
        i = state.index(*index)
    else:
        if len(index) != 1:
            raise ValueError("single-register states are indexed by z")
        i = state.index(index[0])
    return float(abs(state.amps[i]) ** 2)


def dump_state(state: State) -> str:
    """One line per basis index, ``x,y,re,im`` (or ``z,re,im``), x-major, 17 significant digits."""
    lines = []
    if isinstance(state, TwoRegisterState):
        for i, a in enumerate(state.amps):
            x, y = divmod(i, state.L)
            lines.append(f"{x + 1},{y + 1},{a.real:.17g},{a.imag:.17g}")
    else:
        for i, a in enumerate(state.amps):
            lines.append(f"{i + 1},{a.real:.17g},{a.imag:.17g}")
    return "\n".join(lines) + "\n"


def load_state(text: str) -> State:
    rows = [line.split(",") for line in text.splitlines() if line.strip()]
    if not rows:
        raise ValueError("empty state dump")
    width = len(rows[0])
    if width not in (3, 4) or any(len(r) != width for r in rows):
        raise ValueError("state dump lines must all be 'z,re,im' or all be 'x,y,re,im'")
    amps = np.array([complex(float(r[-2]), float(r[-1])) for r in rows])
    if width == 3:
        expected = [int(r[0]) for r in rows]
        if expected != list(range(1, len(rows) + 1)):
            raise ValueError("single-register dump must list z = 1..N in order")
        return SingleRegisterState(len(rows), amps)
    L = int(round(np.sqrt(len(rows))))
    if L * L != len(rows):
        raise ValueError("two-register dump must have L^2 lines")
    for i, r in enumerate(rows):
        if (int(r[0]), int(r[1])) != (i // L + 1, i % L + 1):
            raise ValueError(f"line {i + 1} is out of x-major order")
    return TwoRegisterState(L, amps)

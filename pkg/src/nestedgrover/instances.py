"""Random problem instances with counted oracle access.

Every oracle evaluation is charged to the instance that owns it. A classical
point query costs one call; one application of a phase oracle to a whole
superposition also costs one call, since it is a single use of the quantum
subroutine. The phase-oracle side of this lives in :mod:`.amplification`.

Instances are drawn with numpy's PCG64 bit generator seeded directly by the
64-bit seed. The marked point is drawn first, then the remaining hint elements
come from a partial Fisher-Yates shuffle of ``1..L`` with the marked point
removed; the marked point is inserted afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._validation import check_dimension, check_hint_size, check_int, check_seed


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _hint_set(rng: np.random.Generator, dim: int, size: int, marked: int) -> frozenset[int]:
    pool = [v for v in range(1, dim + 1) if v != marked]
    for i in range(size - 1):
        r = i + int(rng.integers(len(pool) - i))
        pool[i], pool[r] = pool[r], pool[i]
    return frozenset(pool[: size - 1]) | {marked}


@dataclass
class StructuredInstance:
    """Grid search problem: ``F(x, y) = 1`` only at ``(x0, y0)``, ``G(x) = 1`` on ``g_set``."""

    L: int
    M: int
    x0: int
    y0: int
    g_set: frozenset[int]
    seed: int = 0
    f_counter: int = field(default=0, compare=False)
    g_counter: int = field(default=0, compare=False)

    def __post_init__(self):
        self.L = check_dimension(self.L, "L")
        self.M = check_hint_size(self.M, self.L)
        self.x0 = check_int(self.x0, "x0", 1, self.L)
        self.y0 = check_int(self.y0, "y0", 1, self.L)
        self.g_set = frozenset(int(v) for v in self.g_set)
        if len(self.g_set) != self.M:
            raise ValueError(f"g_set has {len(self.g_set)} elements, expected M={self.M}")
        if not all(1 <= v <= self.L for v in self.g_set):
            raise ValueError("g_set elements must lie in 1..L")
        if self.x0 not in self.g_set:
            raise ValueError("x0 must belong to g_set")
        self.seed = check_seed(self.seed)

    @property
    def g_mask(self) -> np.ndarray:
        """Boolean mask over x (0-based) of the hint set."""
        mask = np.zeros(self.L, dtype=bool)
        mask[[v - 1 for v in self.g_set]] = True
        return mask


@dataclass
class FlatInstance:
    """Unstructured search over ``1..N`` with a size-M hint set containing ``z0``."""

    N: int
    M: int
    z0: int
    g_set: frozenset[int]
    seed: int = 0
    f_counter: int = field(default=0, compare=False)
    g_counter: int = field(default=0, compare=False)

    def __post_init__(self):
        self.N = check_dimension(self.N, "N")
        self.M = check_hint_size(self.M, self.N)
        self.z0 = check_int(self.z0, "z0", 1, self.N)
        self.g_set = frozenset(int(v) for v in self.g_set)
        if len(self.g_set) != self.M:
            raise ValueError(f"g_set has {len(self.g_set)} elements, expected M={self.M}")
        if not all(1 <= v <= self.N for v in self.g_set):
            raise ValueError("g_set elements must lie in 1..N")
        if self.z0 not in self.g_set:
            raise ValueError("z0 must belong to g_set")
        self.seed = check_seed(self.seed)

    @property
    def g_mask(self) -> np.ndarray:
        mask = np.zeros(self.N, dtype=bool)
        mask[[v - 1 for v in self.g_set]] = True
        return mask


Instance = StructuredInstance | FlatInstance


def generate_structured(L: int, M: int, seed: int) -> StructuredInstance:
    L = check_dimension(L, "L")
    M = check_hint_size(M, L)
    seed = check_seed(seed)
    rng = _rng(seed)
    x0 = 1 + int(rng.integers(L))
    y0 = 1 + int(rng.integers(L))
    return StructuredInstance(L, M, x0, y0, _hint_set(rng, L, M, x0), seed)


def generate_flat(N: int, M: int, seed: int) -> FlatInstance:
    N = check_dimension(N, "N")
    M = check_hint_size(M, N)
    seed = check_seed(seed)
    rng = _rng(seed)
    z0 = 1 + int(rng.integers(N))
    return FlatInstance(N, M, z0, _hint_set(rng, N, M, z0), seed)


def query_F(inst: StructuredInstance, x: int, y: int) -> int:
    x = check_int(x, "x", 1, inst.L)
    y = check_int(y, "y", 1, inst.L)
    inst.f_counter += 1
    return int(x == inst.x0 and y == inst.y0)


def query_G(inst: StructuredInstance, x: int) -> int:
    x = check_int(x, "x", 1, inst.L)
    inst.g_counter += 1
    return int(x in inst.g_set)


def query_f(inst: FlatInstance, z: int) -> int:
    z = check_int(z, "z", 1, inst.N)
    inst.f_counter += 1
    return int(z == inst.z0)


def query_g(inst: FlatInstance, z: int) -> int:
    z = check_int(z, "z", 1, inst.N)
    inst.g_counter += 1
    return int(z in inst.g_set)


def counter_snapshot(inst: Instance) -> tuple[int, int]:
    return inst.f_counter, inst.g_counter


def reset_counters(inst: Instance) -> None:
    inst.f_counter = 0
    inst.g_counter = 0


def serialize_instance(inst: Instance) -> str:
    members = ",".join(str(v) for v in sorted(inst.g_set))
    if isinstance(inst, StructuredInstance):
        head = [f"L={inst.L}", f"M={inst.M}", f"x0={inst.x0}", f"y0={inst.y0}"]
    else:
        head = [f"N={inst.N}", f"M={inst.M}", f"z0={inst.z0}"]
    return "\n".join(head + [f"g_set={members}", f"seed={inst.seed}"]) + "\n"


def parse_instance(text: str) -> Instance:
    fields = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"malformed instance line: {line!r}")
        fields[key.strip()] = value.strip()
    g_set = frozenset(int(v) for v in fields["g_set"].split(",") if v)
    seed = int(fields.get("seed", 0))
    if "L" in fields:
        return StructuredInstance(
            int(fields["L"]), int(fields["M"]), int(fields["x0"]), int(fields["y0"]), g_set, seed
        )
    return FlatInstance(int(fields["N"]), int(fields["M"]), int(fields["z0"]), g_set, seed)

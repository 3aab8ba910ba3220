"""Exit criteria for the simulator and harness.

Each test records one PASS/FAIL line that is printed in the terminal summary;
run ``pytest tests/test_acceptance.py`` to see just these.
"""

import math

import numpy as np
import pytest

from nestedgrover.amplification import (
    Register,
    amplify,
    apply_diffusion,
    apply_phase_f,
    apply_phase_F,
    apply_phase_g,
    apply_phase_G,
    closest_integer,
    grover_success_probability,
    schedule,
)
from nestedgrover.flat import (
    apply_reflection_phi,
    build_g1,
    build_g2,
    expected_flat_calls,
    flat_schedule,
    run_flat_search,
    support,
)
from nestedgrover.harness import Algorithm, cell_means, fit_loglog, parse_sweep_config, rows_to_csv, run_sweep
from nestedgrover.instances import FlatInstance, generate_flat, generate_structured
from nestedgrover.statevector import (
    distance,
    inner_product,
    product_with_uniform_y,
    random_single_register,
    random_two_register,
    uniform_single_register,
)
from nestedgrover.structured import apply_U_psi, apply_V, apply_W, expected_calls, run_structured_search

SCALING_GRID = (64, 256, 1024)
SCALING_M = (4, 16)


def test_1_grover_cross_validation(criterion):
    worst = 0.0
    cases = 0
    for d in (4, 16, 64, 256):
        for m in (1, 4, 16):
            if m > d:
                continue
            inst = FlatInstance(d, m, 1, set(range(1, m + 1)))
            mask = inst.g_mask
            state = uniform_single_register(d)
            for t in range(2 * closest_integer(math.pi / 4 * math.sqrt(d)) + 1):
                mass = float((np.abs(state.amps[mask]) ** 2).sum())
                worst = max(worst, abs(mass - grover_success_probability(d, m, t)))
                cases += 1
                state = amplify(state, inst, 1, oracle="g")
    ok = criterion("1", "Grover cross-validation", worst <= 1e-9, f"max |sim - formula| = {worst:.3e} over {cases} cases (tol 1e-9)")
    assert ok


def test_2_W_identity_off_target(criterion):
    worst = 0.0
    for L in (16, 64):
        inst = generate_structured(L, 4, L + 1)
        sc = schedule(L, 4)
        for x in range(1, L + 1):
            if x != inst.x0:
                start = product_with_uniform_y(L, x)
                worst = max(worst, distance(apply_W(start, inst, sc), start))
    ok = criterion("2", "W acts as identity for x != x0", worst < 1e-10, f"max deviation = {worst:.3e} (tol 1e-10)")
    assert ok


def test_3_V_sign_structure(criterion):
    details = []
    ok = True
    for L in (16, 64, 256):
        inst = generate_structured(L, 4, 3 * L)
        sc = schedule(L, 4)
        bound = 1 - 10 / L
        diag = np.empty(L)
        for x in range(1, L + 1):
            v = product_with_uniform_y(L, x)
            diag[x - 1] = inner_product(v, apply_V(v, inst, sc)).real
        target = diag[inst.x0 - 1]
        others = np.delete(diag, inst.x0 - 1)
        ok &= bool(others.min() >= bound and target <= -bound)
        details.append(f"L={L}: min off-target {others.min():.6f}, target {target:.6f}, bound {bound:.4f}")
    ok = criterion("3", "V sign structure", ok, "; ".join(details))
    assert ok


def test_4_end_to_end_structured(criterion):
    results = []
    for seed in (0, 1, 2):
        inst = generate_structured(256, 16, seed)
        res = run_structured_search(inst, "paper")
        results.append((res.success_probability, res.joint_success_probability,
                        (res.outcome_x, res.outcome_y) == (inst.x0, inst.y0)))
    px = min(r[0] for r in results)
    pxy = min(r[1] for r in results)
    found = all(r[2] for r in results)
    ok = criterion("4", "end-to-end L=256 M=16 paper", px >= 0.8 and pxy >= 0.75 and found,
                   f"P(x0) = {px!r} (>= 0.8), P(x0,y0) = {pxy!r} (>= 0.75), outcome correct = {found}")
    assert ok


def test_5_query_count_identities(criterion):
    checked = 0
    bad = []
    for mode in ("paper", "optimal"):
        for L, M in [(16, 4), (64, 4), (64, 16), (100, 9), (256, 16), (1024, 16)]:
            res = run_structured_search(generate_structured(L, M, 7), mode)
            checked += 1
            if (res.f_calls, res.g_calls) != expected_calls(res.schedule_used):
                bad.append(("structured", L, M, mode))
        for N, M in [(16, 4), (256, 16), (1024, 16), (1024, 64), (4096, 8)]:
            res = run_flat_search(generate_flat(N, M, 7), mode)
            checked += 1
            if (res.f_calls, res.g_calls) != expected_flat_calls(res.schedule_used):
                bad.append(("flat", N, M, mode))
    ok = criterion("5", "query-count identities", not bad, f"{checked} runs, mismatches: {bad or 'none'}")
    assert ok


def _quantum_rows(mode):
    cfg = parse_sweep_config(
        f"algorithms=structured_q,flat_q\nsizes={','.join(map(str, SCALING_GRID))}\n"
        f"M={','.join(map(str, SCALING_M))}\nseeds=1\nmode={mode}\n"
    )
    return run_sweep(cfg)


@pytest.fixture(scope="module")
def classical_rows():
    cfg = parse_sweep_config(
        f"algorithms=classical\nsizes={','.join(map(str, SCALING_GRID))}\n"
        f"M={','.join(map(str, SCALING_M))}\nseeds=20\n"
    )
    return run_sweep(cfg)


def _scaling_summary(rows, classical):
    structured = [r for r in rows if r.algorithm is Algorithm.STRUCTURED_Q]
    flat = [r for r in rows if r.algorithm is Algorithm.FLAT_Q]
    out = {
        "structured": fit_loglog(*zip(*cell_means(structured, "ml"))).slope,
        "classical": fit_loglog(*zip(*cell_means(classical, "ml"))).slope,
    }
    for M in SCALING_M:
        out[f"flat M={M}"] = fit_loglog(*zip(*cell_means([r for r in flat if r.M == M], "n"))).slope
    ratios = [r.total_calls / math.sqrt(r.size * r.M) for r in structured]
    ratios += [r.total_calls / math.sqrt(r.size) for r in flat]
    return out, ratios


def test_6_scaling_slopes(criterion, classical_rows):
    # counts are schedule-determined, so one quantum seed per cell suffices
    slopes, ratios = _scaling_summary(_quantum_rows("optimal"), classical_rows)
    ok = (
        abs(slopes["structured"] - 0.5) <= 0.05
        and abs(slopes["classical"] - 1.0) <= 0.1
        and all(abs(slopes[f"flat M={M}"] - 0.5) <= 0.05 for M in SCALING_M)
        and all(1.0 <= q <= 2.5 for q in ratios)
    )
    detail = ", ".join(f"{k} slope {v:.4f}" for k, v in slopes.items())
    detail += f", quantum calls/sqrt ratio in [{min(ratios):.3f}, {max(ratios):.3f}] (optimal schedule)"
    paper_slopes, paper_ratios = _scaling_summary(_quantum_rows("paper"), classical_rows)
    detail += (f"; paper-schedule reference: structured {paper_slopes['structured']:.4f}, "
               + ", ".join(f"flat M={M} {paper_slopes[f'flat M={M}']:.4f}" for M in SCALING_M)
               + f", ratio max {max(paper_ratios):.3f}")
    ok = criterion("6", "scaling slopes", ok, detail)
    assert ok


def test_7_hint_constructors_exhaustive(criterion):
    triples = 0
    failures = []
    for N in range(2, 65):
        for M in range(1, N + 1):
            for z0 in range(1, N + 1):
                inst = FlatInstance(N, 1, z0, {z0})
                s1 = support(build_g1(inst, M), N)
                s2 = support(build_g2(inst, M), N)
                valid = [s for s in (s1, s2) if len(s) == M]
                triples += 1
                if len(valid) != 1 or z0 not in valid[0]:
                    failures.append((N, M, z0))
    on_boundary = all(z0 == M for _, M, z0 in failures)
    detail = f"{triples} (N, M, z0) triples, {len(failures)} violate 'exactly one'"
    if failures:
        detail += f"; all at z0 == M: {on_boundary} (both hints have M ones there), e.g. {failures[:3]}"
    ok = criterion("7", "g1/g2 exactly one valid", not failures, detail)
    assert ok


def test_8_involution_suite(criterion):
    rng = np.random.default_rng(2024)
    L, N = 16, 64
    inst = generate_structured(L, 4, 11)
    flat = generate_flat(N, 8, 11)
    sc = schedule(L, 4)
    fsc = flat_schedule(N, 8)
    two_ops = {
        "phase F": lambda s: apply_phase_F(s, inst),
        "phase G": lambda s: apply_phase_G(s, inst),
        "diffusion X": lambda s: apply_diffusion(s, Register.X),
        "diffusion Y": lambda s: apply_diffusion(s, Register.Y),
        "U_psi": lambda s: apply_U_psi(s, inst, sc),
    }
    one_ops = {
        "phase f": lambda s: apply_phase_f(s, flat),
        "phase g": lambda s: apply_phase_g(s, flat),
        "diffusion whole": lambda s: apply_diffusion(s, Register.WHOLE),
        "phi reflection": lambda s: apply_reflection_phi(s, flat, fsc),
    }
    worst = {}
    for name, op in two_ops.items():
        worst[name] = max(distance(op(op(s)), s) for s in (random_two_register(L, rng) for _ in range(100)))
    for name, op in one_ops.items():
        worst[name] = max(distance(op(op(s)), s) for s in (random_single_register(N, rng) for _ in range(100)))
    ok = criterion("8", "involution suite", max(worst.values()) <= 1e-10,
                   ", ".join(f"{k} {v:.1e}" for k, v in worst.items()) + " (tol 1e-10)")
    assert ok


def test_9_sweep_determinism(criterion):
    text = (
        "algorithms=structured_q,flat_q,classical\nsizes=16,64,256\nM=4,16\n"
        "seeds=2\nseeds.classical=5\nmode=paper\n"
    )
    first = rows_to_csv(run_sweep(parse_sweep_config(text))).encode()
    second = rows_to_csv(run_sweep(parse_sweep_config(text + "workers=2\n"))).encode()
    ok = criterion("9", "sweep CSV determinism", first == second, f"{len(first)} bytes, identical = {first == second}")
    assert ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))

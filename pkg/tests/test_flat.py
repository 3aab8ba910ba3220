import numpy as np
import pytest

from _oracles import reflection_about, uniform
from nestedgrover.flat import (
    FlatSchedule,
    apply_reflection_phi,
    build_g1,
    build_g2,
    expected_flat_calls,
    flat_schedule,
    instance_with_hint,
    prepare_phi,
    run_flat_search,
    support,
)
from nestedgrover.amplification import ScheduleMode
from nestedgrover.instances import FlatInstance, generate_flat
from nestedgrover.statevector import distance, random_single_register, squared_norm, uniform_single_register
from nestedgrover.structured import Fallback


def fs(ell, h=0):
    return FlatSchedule(ell, h, ScheduleMode.PAPER)


def test_flat_schedule_paper():
    assert flat_schedule(16, 4) == fs(2, 2)
    assert flat_schedule(1024, 16) == fs(6, 3)
    assert flat_schedule(256, 16) == fs(3, 3)


def test_prepare_phi_mass():
    inst = generate_flat(256, 16, 1)
    s = prepare_phi(inst, fs(3))
    assert (np.abs(s.amps[inst.g_mask]) ** 2).sum() == pytest.approx(0.9613189697265625, abs=1e-9)
    assert inst.g_counter == 3


def test_prepare_phi_edge_cases():
    inst = generate_flat(64, 8, 0)
    s = prepare_phi(inst, fs(0))
    assert (np.abs(s.amps[inst.g_mask]) ** 2).sum() == pytest.approx(8 / 64)
    full = generate_flat(16, 16, 0)
    for ell in (0, 1, 5):
        assert squared_norm(prepare_phi(full, fs(ell))) == pytest.approx(1.0)
        assert (np.abs(prepare_phi(full, fs(ell)).amps) ** 2).sum() == pytest.approx(1.0)


def test_reflection_matches_adjoint_ordered_dense_product():
    inst = FlatInstance(8, 3, 6, {2, 6, 7})
    D = reflection_about(uniform(8))
    Pg = np.diag(np.where(inst.g_mask, -1.0, 1.0)).astype(complex)
    ell = 2
    R = np.linalg.matrix_power(Pg @ D, ell) @ D @ np.linalg.matrix_power(D @ Pg, ell)
    s = random_single_register(8, np.random.default_rng(0))
    np.testing.assert_allclose(apply_reflection_phi(s, inst, fs(ell)).amps, R @ s.amps, atol=1e-13)


@pytest.mark.parametrize("ell", [1, 2, 3])
def test_unconjugated_product_collapses_to_plain_diffusion(ell):
    # D U D = U^-1 for U = D (-1)^g, so U^ell D U^ell == D and g drops out entirely
    inst = FlatInstance(32, 4, 1, {1, 2, 3, 4})
    D = reflection_about(uniform(32))
    Pg = np.diag(np.where(inst.g_mask, -1.0, 1.0)).astype(complex)
    Ul = np.linalg.matrix_power(D @ Pg, ell)
    np.testing.assert_allclose(Ul @ D @ Ul, D, atol=1e-12)
    s = random_single_register(32, np.random.default_rng(ell))
    assert distance(apply_reflection_phi(s, inst, fs(ell)), s.__class__(32, D @ s.amps)) > 0.1


def test_reflection_is_involution_and_counts():
    inst = generate_flat(128, 8, 2)
    s = random_single_register(128, np.random.default_rng(3))
    twice = apply_reflection_phi(apply_reflection_phi(s, inst, fs(6)), inst, fs(6))
    assert distance(twice, s) < 1e-10
    assert inst.g_counter == 24


def test_reflection_fixes_axis():
    inst = generate_flat(64, 4, 5)
    axis = uniform_single_register(64)
    a = axis.amps
    for _ in range(3):
        a[:] = 2 * a.mean() - a
        a[inst.g_mask] *= -1
    assert distance(apply_reflection_phi(axis, inst, fs(3)), axis) < 1e-12


@pytest.mark.parametrize("N, M", [(16, 4), (256, 16), (1024, 16), (1024, 64), (100, 3)])
def test_run_counts_match_closed_form(N, M):
    res = run_flat_search(generate_flat(N, M, 2))
    assert (res.f_calls, res.g_calls) == expected_flat_calls(res.schedule_used)


def test_run_example_counts():
    res = run_flat_search(generate_flat(16, 4, 0))
    assert (res.f_calls, res.g_calls) == (2, 10)
    res = run_flat_search(generate_flat(1024, 16, 0))
    assert (res.f_calls, res.g_calls) == (3, 42)
    assert res.g_calls / 32 == pytest.approx(1.3125)


def test_run_n256_m16_success():
    inst = generate_flat(256, 16, 8)
    res = run_flat_search(inst)
    assert res.success_probability >= 0.8
    assert res.outcome_x == inst.z0


@pytest.mark.parametrize("M", [1, 32])
def test_degenerate_hint_falls_back_to_plain_grover(M):
    inst = generate_flat(32, M, 1)
    res = run_flat_search(inst)
    assert res.fallback is Fallback.PLAIN_GROVER
    assert res.g_calls == 0
    assert res.f_calls == 4
    assert res.outcome_x == inst.z0


def test_g1_example():
    inst = FlatInstance(8, 1, 7, {7})
    g1 = build_g1(inst, 3)
    assert support(g1, 8) == {1, 2, 7}
    assert inst.f_counter == 8


def test_g2_examples():
    inst = FlatInstance(8, 1, 2, {2})
    assert support(build_g2(inst, 3), 8) == {1, 2, 3}
    inst = FlatInstance(8, 1, 7, {7})
    assert support(build_g2(inst, 3), 8) == {1, 2, 3, 7}


def test_hint_constructors_exhaustive():
    # exactly one constructor is valid except at z0 == M, where the two cases meet
    for N in range(2, 65):
        for M in range(1, N + 1):
            for z0 in range(1, N + 1):
                inst = FlatInstance(N, 1, z0, {z0})
                s1 = support(build_g1(inst, M), N)
                s2 = support(build_g2(inst, M), N)
                valid = [s for s in (s1, s2) if len(s) == M]
                assert valid and all(z0 in s for s in valid)
                assert len(valid) == (2 if z0 == M else 1)


def test_reduction_is_behaviourally_faithful():
    N, M = 256, 16
    reference = run_flat_search(generate_flat(N, M, 4)).success_probability
    for z0 in (3, 16, 200):
        base = FlatInstance(N, 1, z0, {z0})
        g = build_g1(base, M) if z0 >= M else build_g2(base, M)
        derived = instance_with_hint(base, g)
        assert derived.M == M and z0 in derived.g_set
        assert base.f_counter == N
        res = run_flat_search(derived)
        assert res.outcome_x == z0
        assert res.success_probability == pytest.approx(reference, abs=1e-12)

from fractions import Fraction

import numpy as np
import pytest

from strange_msd.distill import success_probability
from strange_msd.enumerators import dual_wenum_naive
from strange_msd.errors import InvalidInputError, ResourceLimitError
from strange_msd.oracle import (
    displacement_flat,
    heisenberg_weyl,
    phase_point,
    projector,
    random_density,
    random_stabilizer_code,
    run_oracle,
    strange_state,
    tensor_power,
    verify_phase_point_pattern,
    verify_output_wigner,
    verify_trace_identity,
    wigner,
)
from strange_msd.stabilizer import StabilizerCode, css_from_classical

OMEGA = np.exp(2j * np.pi / 3)


def z_stabilized():
    return StabilizerCode.from_strings(["0|1"], id="z1")


def test_displacement_basics():
    assert np.allclose(heisenberg_weyl(3, 0, 0), np.eye(3))
    x = heisenberg_weyl(3, 1, 0)
    assert np.allclose(x @ np.eye(3)[:, 0], np.eye(3)[:, 1])
    for u in range(3):
        for v in range(3):
            d = heisenberg_weyl(3, u, v)
            assert np.allclose(d @ d.conj().T, np.eye(3))


def test_rejects_even_modulus():
    with pytest.raises(InvalidInputError):
        heisenberg_weyl(4, 1, 0)
    with pytest.raises(InvalidInputError):
        heisenberg_weyl(9, 1, 0)


def test_composition_law():
    rng = np.random.default_rng(1)
    for _ in range(20):
        a, b = rng.integers(0, 3, size=(2, 4))
        lhs = displacement_flat(3, a) @ displacement_flat(3, b)
        # 2^-1 = 2 mod 3; [a, b] = u_b.v_a - u_a.v_b for this ordering
        bracket = int(b[:2] @ a[2:] - a[:2] @ b[2:]) % 3
        rhs = OMEGA ** ((2 * bracket) % 3) * displacement_flat(3, (a + b) % 3)
        assert np.allclose(lhs, rhs, atol=1e-12)


def test_phase_points():
    for u in range(3):
        for v in range(3):
            a = phase_point(3, u, v)
            assert abs(np.trace(a) - 1) < 1e-12
            assert np.allclose(a, a.conj().T, atol=1e-12)
            for u2 in range(3):
                for v2 in range(3):
                    expected = 3.0 if (u, v) == (u2, v2) else 0.0
                    assert abs(np.trace(a @ phase_point(3, u2, v2)) - expected) < 1e-12


def test_projector_examples(rep3):
    assert np.allclose(projector(z_stabilized()), np.diag([1, 0, 0]))
    pi = projector(css_from_classical(rep3))
    assert abs(np.trace(pi).real - 3) < 1e-10
    assert np.allclose(pi @ pi, pi, atol=1e-10)


def test_projector_idempotent_random():
    rng = np.random.default_rng(4)
    for n in (1, 2, 3):
        code = random_stabilizer_code(n, rng)
        pi = projector(code)
        assert np.allclose(pi @ pi, pi, atol=1e-10)
        assert abs(np.trace(pi).real - 3 ** code.k) < 1e-10
        for row in code.h:
            assert np.allclose(displacement_flat(3, row) @ pi, pi, atol=1e-10)


def test_projector_size_limit(golay_dual):
    with pytest.raises(ResourceLimitError):
        projector(css_from_classical(golay_dual))


def test_strange_state_wigner():
    w = wigner(strange_state(0))
    expected = np.full((3, 3), 1 / 6)
    expected[0, 0] = -1 / 3
    assert np.allclose(w, expected, atol=1e-12)
    assert np.allclose(wigner(strange_state(1)), 1 / 9, atol=1e-12)
    assert abs(wigner(strange_state(0.75)).min()) < 1e-12


def test_wigner_sums_to_one():
    rng = np.random.default_rng(2)
    for _ in range(10):
        assert abs(wigner(random_density(rng)).sum() - 1) < 1e-12


def test_trace_identity_examples(rep3):
    rng = np.random.default_rng(6)
    rho = random_density(rng)
    assert verify_trace_identity(z_stabilized(), rho) < 1e-12
    code = css_from_classical(rep3)
    assert verify_trace_identity(code, strange_state(0)) < 1e-12
    pi = projector(code)
    assert abs(np.trace(pi @ tensor_power(strange_state(0), 3))) < 1e-12


def test_randomized_trace_identity():
    summary = run_oracle((2, 3), trials=50, seed=0)
    assert summary.failures == 0 and summary.max_residual < 1e-9
    assert summary.pattern_ok


def test_phase_point_pattern_examples(rep3):
    rep = verify_phase_point_pattern(z_stabilized())
    assert rep.ok and rep.points == 9 and rep.in_dual == 3
    rep = verify_phase_point_pattern(css_from_classical(rep3))
    assert rep.ok and rep.in_dual == 81
    rep = verify_phase_point_pattern(random_stabilizer_code(2, np.random.default_rng(9), r=1))
    assert rep.ok and rep.in_dual == 27


def test_phase_point_pattern_detects_wrong_dual(rep3, monkeypatch):
    import strange_msd.oracle as oracle
    monkeypatch.setattr(oracle, "in_dual", lambda code, chi: True)
    assert not oracle.verify_phase_point_pattern(css_from_classical(rep3)).ok


def test_success_probability_matches_dense_trace():
    rng = np.random.default_rng(12)
    for trial in range(8):
        n = 1 + trial % 3
        code = random_stabilizer_code(n, rng)
        b = dual_wenum_naive(code)
        for eps in (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1)):
            exact = success_probability(b, n, code.k, eps)
            dense = np.trace(projector(code) @ tensor_power(strange_state(eps), n)).real
            assert abs(float(exact) - dense) < 1e-9


def test_output_wigner_matches_cosets(rep3):
    rng = np.random.default_rng(13)
    code = css_from_classical(rep3)
    for _ in range(3):
        assert verify_output_wigner(code, random_density(rng)) < 1e-9
    code2 = random_stabilizer_code(3, rng, r=2)
    assert verify_output_wigner(code2, strange_state(0.3)) < 1e-9

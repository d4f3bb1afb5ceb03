import numpy as np
import pytest

from conftest import series_exp
from cosrel.algebra import (AlgebraElement, basis, boost_generator, bracket, exp,
                            fundamental_vector, polarize, rotation_generator,
                            translation_generator)
from cosrel.minkowski import ETA
from cosrel.poincare import AffineFrame, act_on_frame, canonical_frame


def _random_element(rng, scale=1.0):
    coeffs = rng.uniform(-scale, scale, 10)
    gens = basis()
    return AlgebraElement(sum(c * g.v for c, g in zip(coeffs, gens)),
                          sum(c * g.w for c, g in zip(coeffs, gens)))


def test_named_bracket_examples():
    J1, J2, J3 = (rotation_generator(i) for i in (1, 2, 3))
    K1, K2 = boost_generator(1), boost_generator(2)
    d0, d1 = translation_generator(0), translation_generator(1)

    got = bracket(J1, J2)
    assert np.array_equal(got.w, J3.w) and np.array_equal(got.v, np.zeros(4))
    got = bracket(K1, K2)
    assert np.array_equal(got.w, -J3.w)
    got = bracket(d0, K1)
    assert np.array_equal(got.v, -d1.v) and np.array_equal(got.w, np.zeros((4, 4)))


def test_bracket_is_integer_exact_on_basis():
    gens = basis()
    for x in gens:
        for y in gens:
            b = bracket(x, y)
            assert np.array_equal(b.v, np.round(b.v))
            assert np.array_equal(b.w, np.round(b.w))


def test_bracket_antisymmetry(rng):
    for _ in range(50):
        x, y = _random_element(rng), _random_element(rng)
        xy, yx = bracket(x, y), bracket(y, x)
        assert np.allclose(xy.v, -yx.v, atol=1e-14)
        assert np.allclose(xy.w, -yx.w, atol=1e-14)


def test_jacobi_identity(rng):
    worst = 0.0
    for _ in range(300):
        x, y, z = (_random_element(rng) for _ in range(3))
        total = (bracket(bracket(x, y), z) + bracket(bracket(y, z), x)
                 + bracket(bracket(z, x), y))
        worst = max(worst, np.abs(total.v).max(), np.abs(total.w).max())
    assert worst <= 1e-12


def test_validated_element_antisymmetry():
    x = rotation_generator(2) + 2.0 * boost_generator(3)
    assert x.lorentz_defect() == 0.0
    bad = AlgebraElement(np.zeros(4), np.diag([1.0, 0, 0, 0]))
    assert bad.lorentz_defect() > 0.5


def test_polarize_on_generators():
    J1, K1 = rotation_generator(1), boost_generator(1)
    rot, boo = polarize(J1)
    assert np.array_equal(rot.w, J1.w) and np.abs(boo.w).max() == 0.0
    rot, boo = polarize(K1)
    assert np.abs(rot.w).max() == 0.0 and np.array_equal(boo.w, K1.w)


def test_polarize_mixed_element():
    J2, K3 = rotation_generator(2), boost_generator(3)
    x = AlgebraElement(np.zeros(4), J2.w + 3.0 * K3.w)
    rot, boo = polarize(x)
    # oracle: direct half-difference/half-sum with the transpose
    assert np.allclose(rot.w, 0.5 * (x.w - x.w.T), atol=1e-16)
    assert np.allclose(boo.w, 0.5 * (x.w + x.w.T), atol=1e-16)
    assert np.array_equal(rot.w, J2.w)
    assert np.array_equal(boo.w, 3.0 * K3.w)
    # rotation block avoids the time row/column; boost is symmetric
    assert np.abs(rot.w[0]).max() == 0.0 and np.abs(rot.w[:, 0]).max() == 0.0
    assert np.array_equal(boo.w, boo.w.T)


def test_polarize_is_projection(rng):
    for _ in range(20):
        x = _random_element(rng)
        rot, boo = polarize(x)
        assert np.allclose(rot.w + boo.w, x.w, atol=1e-15)
        rot2, boo2 = polarize(rot)
        assert np.allclose(rot2.w, rot.w, atol=1e-16) and np.abs(boo2.w).max() == 0.0


def test_exp_zero_is_identity():
    g = exp(AlgebraElement(np.zeros(4), np.zeros((4, 4))))
    assert np.allclose(g.a, 0, atol=1e-16) and np.allclose(g.L, np.eye(4), atol=1e-16)


def test_exp_quarter_turn():
    g = exp((np.pi / 2) * rotation_generator(3))
    e1, e2 = np.array([0, 1, 0, 0.0]), np.array([0, 0, 1, 0.0])
    assert np.allclose(g.L @ e1, e2, atol=1e-12)
    assert np.allclose(g.L @ e2, -e1, atol=1e-12)
    # series oracle at 30 terms
    oracle = series_exp((np.pi / 2) * rotation_generator(3).w)
    assert np.allclose(g.L, oracle, atol=1e-12)


def test_exp_boost_entries():
    phi = 0.8
    g = exp(phi * boost_generator(1))
    assert g.L[0, 0] == pytest.approx(np.cosh(phi), abs=1e-12)
    assert g.L[1, 0] == pytest.approx(np.sinh(phi), abs=1e-12)


def test_exp_matches_series_oracle_with_translations(rng):
    for _ in range(10):
        x = _random_element(rng, 0.8)
        H = np.zeros((5, 5))
        H[1:, 0] = x.v
        H[1:, 1:] = x.w
        oracle = series_exp(H, terms=40)
        g = exp(x)
        assert np.abs(g.a - oracle[1:, 0]).max() <= 1e-12
        assert np.abs(g.L - oracle[1:, 1:]).max() <= 1e-12


def test_exp_lands_in_lorentz_group(rng):
    for _ in range(50):
        g = exp(_random_element(rng))
        assert np.abs(g.L.T @ ETA @ g.L - ETA).max() <= 1e-10


def test_one_parameter_subgroup_law(rng):
    from cosrel.poincare import compose
    for _ in range(20):
        x = _random_element(rng)
        s, t = rng.uniform(-1, 1, 2)
        left = compose(exp(s * x), exp(t * x))
        right = exp((s + t) * x)
        assert np.abs(left.a - right.a).max() <= 1e-9
        assert np.abs(left.L - right.L).max() <= 1e-9


def _action_derivative(x, frame, h=1e-6):
    """Finite-difference velocity of act(exp(t x), frame) at t = 0 (oracle)."""
    fp = act_on_frame(exp(h * x), frame)
    fm = act_on_frame(exp(-h * x), frame)
    return (fp.origin - fm.origin) / (2 * h), (fp.axes - fm.axes) / (2 * h)


def test_fundamental_vector_zero():
    v, w = fundamental_vector(AlgebraElement(np.zeros(4), np.zeros((4, 4))),
                              canonical_frame())
    assert np.abs(v).max() == 0.0 and np.abs(w).max() == 0.0


def test_fundamental_vector_pure_translation_any_frame(rng):
    x = AlgebraElement([0.3, -1.0, 2.0, 0.7], np.zeros((4, 4)))
    frame = AffineFrame(rng.standard_normal(4),
                        series_exp(0.4 * rotation_generator(1).w + 0.2 * boost_generator(3).w))
    v, w = fundamental_vector(x, frame)
    assert np.allclose(v, x.v, atol=1e-15) and np.abs(w).max() == 0.0


def test_fundamental_vector_matches_action_derivative_canonical():
    x = rotation_generator(3)
    v, w = fundamental_vector(x, canonical_frame())
    dv, dw = _action_derivative(x, canonical_frame())
    assert np.abs(v - dv).max() <= 1e-8
    assert np.abs(w - dw).max() <= 1e-8


def test_fundamental_vector_is_frame_components_of_derivative(rng):
    # at a general frame the global velocity is axes @ (v, w); the returned pair
    # is its expansion in the frame basis
    x = _random_element(rng, 0.6)
    frame = AffineFrame(rng.standard_normal(4),
                        series_exp(0.5 * boost_generator(2).w + 0.3 * rotation_generator(1).w))
    v, w = fundamental_vector(x, frame)
    dv, dw = _action_derivative(x, frame)
    assert np.abs(np.linalg.solve(frame.axes, dv) - v).max() <= 1e-8
    assert np.abs(np.linalg.solve(frame.axes, dw) - w).max() <= 1e-8

import numpy as np
import pytest

from conftest import series_exp
from cosrel.minkowski import (CausalClass, ETA, classify, four_vector, is_lorentz,
                              is_proper_isochronous, lorentz_adjoint, lorentz_matrix,
                              minkowski_inner)
from cosrel.algebra import boost_matrix_generator, rotation_matrix_generator


def test_metric_square_and_symmetry():
    assert np.array_equal(ETA @ ETA, np.eye(4))
    assert np.array_equal(ETA, ETA.T)


def test_inner_product_signature_values():
    assert minkowski_inner([1, 0, 0, 0], [1, 0, 0, 0]) == 1.0
    assert minkowski_inner([0, 1, 0, 0], [0, 1, 0, 0]) == -1.0
    assert minkowski_inner([1, 1, 0, 0], [1, 1, 0, 0]) == 0.0


def test_inner_product_symmetric(rng):
    for _ in range(20):
        v, w = rng.standard_normal(4), rng.standard_normal(4)
        assert minkowski_inner(v, w) == pytest.approx(minkowski_inner(w, v), abs=1e-15)


def test_four_vector_rejects_nonfinite():
    with pytest.raises(ValueError):
        four_vector([1.0, np.nan, 0.0, 0.0])
    with pytest.raises(ValueError):
        four_vector([1.0, 2.0, 3.0])


def test_classify_examples():
    assert classify([2, 0, 0, 1]) is CausalClass.TIMELIKE
    assert classify([0, 0, 3, 0]) is CausalClass.SPACELIKE
    assert classify([1, 0, 0, 1]) is CausalClass.LIGHTLIKE


def test_classify_zero_vector_rejected():
    with pytest.raises(ValueError):
        classify([0.0, 0.0, 0.0, 0.0])


def test_adjoint_identity():
    assert np.array_equal(lorentz_adjoint(np.eye(4)), np.eye(4))


def test_adjoint_of_spatial_rotation_is_transpose(rng):
    # block diag(1, R): the adjoint must equal diag(1, R^T), checked by direct 4x4 products
    theta = 0.7
    R = np.array([[np.cos(theta), -np.sin(theta), 0],
                  [np.sin(theta), np.cos(theta), 0],
                  [0, 0, 1.0]])
    L = np.eye(4)
    L[1:, 1:] = R
    expected = np.eye(4)
    expected[1:, 1:] = R.T
    direct = ETA @ L.T @ ETA  # oracle: explicit triple product
    assert np.allclose(lorentz_adjoint(L), expected, atol=1e-15)
    assert np.allclose(lorentz_adjoint(L), direct, atol=1e-15)


def test_adjoint_inverts_boost():
    phi = 0.6
    L = series_exp(phi * boost_matrix_generator(1))
    Lminus = series_exp(-phi * boost_matrix_generator(1))
    assert np.allclose(lorentz_adjoint(L), Lminus, atol=1e-13)
    assert np.allclose(L @ lorentz_adjoint(L), np.eye(4), atol=1e-13)


def test_adjoint_is_involution(rng):
    A = rng.standard_normal((4, 4))
    assert np.array_equal(lorentz_adjoint(lorentz_adjoint(A)), A)


def _random_lorentz(rng, scale=1.0):
    W = sum(c * G for c, G in zip(rng.uniform(-scale, scale, 6),
                                  [rotation_matrix_generator(i) for i in (1, 2, 3)]
                                  + [boost_matrix_generator(i) for i in (1, 2, 3)]))
    return series_exp(W)


def test_validated_lorentz_preserves_inner(rng):
    for _ in range(50):
        L = lorentz_matrix(_random_lorentz(rng))
        v, w = rng.standard_normal(4), rng.standard_normal(4)
        assert abs(minkowski_inner(L @ v, L @ w) - minkowski_inner(v, w)) <= 1e-8


def test_classify_invariant_under_isochronous(rng):
    for _ in range(30):
        L = _random_lorentz(rng, scale=0.8)
        assert is_proper_isochronous(L, tol=1e-9)
        v = rng.standard_normal(4)
        if abs(minkowski_inner(v, v)) < 1e-6:
            continue
        assert classify(L @ v, tol=1e-7) is classify(v, tol=1e-7)


def test_lorentz_matrix_rejects_non_lorentz():
    with pytest.raises(ValueError):
        lorentz_matrix(np.diag([2.0, 1.0, 1.0, 1.0]))
    assert not is_lorentz(np.diag([2.0, 1.0, 1.0, 1.0]))


def test_proper_isochronous_examples():
    assert is_proper_isochronous(np.eye(4))
    # paired spatial reflection: det +1, positive time component
    assert is_proper_isochronous(np.diag([1.0, -1.0, -1.0, 1.0]))
    assert abs(np.linalg.det(np.diag([1.0, -1.0, -1.0, 1.0])) - 1.0) < 1e-15
    # time reversal stays Lorentz but is not isochronous
    assert not is_proper_isochronous(np.diag([-1.0, 1.0, 1.0, 1.0]))


def test_proper_isochronous_rejects_non_lorentz_input():
    with pytest.raises(ValueError):
        is_proper_isochronous(np.ones((4, 4)))

import numpy as np
import pytest

from coneforge.algebra.core import AlgebraDescriptor
from coneforge.algebra.core import InvalidInput
from coneforge.algebra.core import NotInCone
from coneforge.algebra.core import det
from coneforge.algebra.core import identity
from coneforge.algebra.core import quad_rep
from coneforge.algebra.core import sqrt
from coneforge.algebra.lorentz import LorentzFrame
from coneforge.algebra.lorentz import in_lorentz_half_space
from coneforge.algebra.lorentz import lorentz_h_u
from coneforge.algebra.lorentz import lorentz_half_space
from coneforge.algebra.lorentz import lorentz_quad_sqrt_apply
from coneforge.algebra.lorentz import lorentz_spectral
from coneforge.algebra.lorentz import lorentz_t_apply
from coneforge.algebra.lorentz import lorentz_triangular_params
from coneforge.algebra.lorentz import rotation_operator
from coneforge.lab.sampling import random_cone_element
from coneforge.lab.sampling import random_element
from coneforge.lab.sampling import random_orthogonal
from coneforge.triangular import t_apply
from coneforge.triangular import triangular_decompose
from tests.oracles import assert_elements_close
from tests.oracles import lorentz


L2 = AlgebraDescriptor.lorentz(2)
L3 = AlgebraDescriptor.lorentz(3)


def test_lorentz_spectral():
    d = lorentz_spectral(lorentz(5, 4, 0))
    np.testing.assert_allclose(d.eigenvalues, [9, 1])
    assert_elements_close(d.frame[0], lorentz(0.5, 0.5, 0))
    assert_elements_close(d.reconstruct(), lorentz(5, 4, 0))

    d = lorentz_spectral(identity(L2))
    np.testing.assert_array_equal(d.eigenvalues, [1, 1])
    np.testing.assert_array_equal(LorentzFrame.from_frame(d.frame).u, [1, 0])


def test_lorentz_frame():
    frame = LorentzFrame(np.array([0.6, 0.8]))
    assert_elements_close(frame.c_u, lorentz(0.5, 0.3, 0.4))
    assert_elements_close(frame.c_u + frame.c_u_perp, identity(L2))
    np.testing.assert_allclose(LorentzFrame.from_frame(frame.frame).u, [0.6, 0.8])

    with pytest.raises(InvalidInput):
        LorentzFrame(np.array([1.0, 1.0]))

    with pytest.raises(InvalidInput):
        LorentzFrame(np.array([1.0]))


def test_quad_sqrt_apply():
    y = lorentz(2, 0, 1)
    x = lorentz(5, 4, 0)

    assert_elements_close(lorentz_quad_sqrt_apply(identity(L2), y), y)
    assert_elements_close(lorentz_quad_sqrt_apply(x, identity(L2)), x, atol=1e-12)
    assert_elements_close(
        lorentz_quad_sqrt_apply(x, y), quad_rep(sqrt(x))(y), atol=1e-12
    )


def test_quad_sqrt_apply_outside_cone():
    with pytest.raises(NotInCone):
        lorentz_quad_sqrt_apply(lorentz(1, 2, 0), identity(L2))


def test_half_space():
    (z,) = lorentz_half_space([1, 0])
    np.testing.assert_allclose(np.abs(z.coords), [0, 0, 1], atol=1e-15)

    u = np.array([0.0, 0.6, 0.8])
    basis = lorentz_half_space(u)
    assert len(basis) == 2
    for z in basis:
        assert in_lorentz_half_space(z, u)
        assert np.linalg.norm(z.coords) == pytest.approx(1.0)

    assert not in_lorentz_half_space(lorentz(0, 0, 1, 0), u)
    assert not in_lorentz_half_space(lorentz(1, 1, 0, 0), [1, 0, 0])


def test_triangular_params():
    p = lorentz_triangular_params(identity(L2), [1, 0])
    assert (p.alpha1, p.alpha2) == (1, 1)
    assert_elements_close(p.z, lorentz(0, 0, 0))

    p = lorentz_triangular_params(lorentz(5, 4, 0), [1, 0])
    assert p.alpha1 == pytest.approx(3)
    assert p.alpha2 == pytest.approx(1)
    assert_elements_close(p.z, lorentz(0, 0, 0))

    p = lorentz_triangular_params(lorentz(5, 0, 4), [1, 0])
    assert p.alpha1**2 == pytest.approx(5)
    assert p.alpha2**2 == pytest.approx(9 / 5)
    assert_elements_close(p.z, lorentz(0, 0, 0.8), atol=1e-15)


def test_triangular_params_match_generic():
    y = lorentz(5, 0, 4)
    frame = LorentzFrame(np.array([1.0, 0.0]))
    d = triangular_decompose(y, frame.frame)
    p = lorentz_triangular_params(y, frame.u)

    np.testing.assert_allclose(d.diag, [p.alpha1**2, p.alpha2**2], atol=1e-12)
    assert_elements_close(d.offdiag[0], p.z)
    assert_elements_close(t_apply(d, identity(L2)), y, atol=1e-12)


def test_triangular_params_outside_cone():
    with pytest.raises(NotInCone):
        lorentz_triangular_params(lorentz(1, 2, 0), [1, 0])


def test_t_apply_trivial():
    rng = np.random.default_rng(21)
    x, y = random_element(L3, rng), random_cone_element(L3, rng)
    u = [1.0, 0.0, 0.0]

    assert_elements_close(lorentz_t_apply(y, identity(L3), u), y, atol=1e-12)
    assert_elements_close(lorentz_t_apply(identity(L3), x, u), x, atol=1e-12)


@pytest.mark.parametrize("seed", range(5))
def test_t_apply_matches_generic(seed):
    rng = np.random.default_rng(seed)
    u = random_orthogonal(3, rng)[:, 0]
    x, y = random_element(L3, rng), random_cone_element(L3, rng)
    frame = LorentzFrame(u).frame

    assert_elements_close(
        lorentz_t_apply(y, x, u),
        t_apply(triangular_decompose(y, frame), x),
        atol=1e-10,
    )


def test_h_u_of_identity():
    x = lorentz(2, 1, 3, 0)
    assert lorentz_h_u(x, identity(L3), [1, 0, 0]) == pytest.approx(-(2 + 1))


def test_rotation_operator():
    rng = np.random.default_rng(9)
    r = random_orthogonal(3, rng, proper=True)
    k = rotation_operator(L3, r)
    x = random_cone_element(L3, rng)

    assert_elements_close(k(identity(L3)), identity(L3))
    assert det(k(x)) == pytest.approx(det(x))

    with pytest.raises(InvalidInput):
        rotation_operator(AlgebraDescriptor.sym_real(2), np.eye(2))

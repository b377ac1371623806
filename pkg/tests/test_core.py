import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from coneforge import AlgebraKind
from coneforge.algebra.core import AlgebraDescriptor
from coneforge.algebra.core import DimensionMismatch
from coneforge.algebra.core import Element
from coneforge.algebra.core import InvalidInput
from coneforge.algebra.core import NotInCone
from coneforge.algebra.core import Operator
from coneforge.algebra.core import SingularElement
from coneforge.algebra.core import Tolerance
from coneforge.algebra.core import apply
from coneforge.algebra.core import box
from coneforge.algebra.core import compose
from coneforge.algebra.core import det
from coneforge.algebra.core import eigenvalues
from coneforge.algebra.core import identity
from coneforge.algebra.core import inner
from coneforge.algebra.core import inverse
from coneforge.algebra.core import is_in_cone
from coneforge.algebra.core import jordan_product
from coneforge.algebra.core import lmap
from coneforge.algebra.core import power
from coneforge.algebra.core import quad_rep
from coneforge.algebra.core import sqrt
from coneforge.algebra.core import square
from coneforge.algebra.core import trace
from coneforge.algebra.core import trace_inner
from coneforge.algebra.symreal import unit_element
from coneforge.lab.sampling import random_cone_element
from coneforge.lab.sampling import random_element
from tests.oracles import ALGEBRAS
from tests.oracles import assert_elements_close
from tests.oracles import diag
from tests.oracles import lorentz
from tests.oracles import matrix
from tests.oracles import random_spd
from tests.oracles import sym


SYM3 = AlgebraDescriptor.sym_real(3)
LORENTZ4 = AlgebraDescriptor.lorentz(4)

coords = st.floats(min_value=-1.0, max_value=1.0)


def test_descriptor_dimensions():
    assert SYM3.ambient_dim == 6
    assert SYM3.peirce_constant == 1
    assert LORENTZ4.rank == 2
    assert LORENTZ4.ambient_dim == 5
    assert LORENTZ4.peirce_constant == 3
    assert AlgebraDescriptor.of("lorentz", 4) == LORENTZ4
    assert str(SYM3) == "sym_real(3)"


def test_descriptor_invalid():
    with pytest.raises(InvalidInput):
        AlgebraDescriptor.lorentz(1)

    with pytest.raises(InvalidInput):
        AlgebraDescriptor.sym_real(0)

    with pytest.raises(InvalidInput):
        AlgebraDescriptor(AlgebraKind.SYM_REAL, 3, 5, 1)


def test_tolerance():
    tol = Tolerance(1e-10, 1e-9)
    assert tol.close(1e9, 1e9 + 0.5)
    assert not tol.close(0.0, 1e-9)
    assert tol.allclose([1.0, 2.0], [1.0, 2.0 + 1e-12])

    with pytest.raises(InvalidInput):
        Tolerance(-1.0)


def test_identity():
    np.testing.assert_array_equal(
        matrix(identity(AlgebraDescriptor.sym_real(2))), np.eye(2)
    )
    np.testing.assert_array_equal(
        identity(AlgebraDescriptor.lorentz(2)).coords, [1.0, 0.0, 0.0]
    )


@pytest.mark.parametrize("desc", ALGEBRAS)
def test_identity_is_neutral(desc):
    x = random_element(desc, np.random.default_rng(1))
    assert_elements_close(jordan_product(identity(desc), x), x)


def test_jordan_product():
    a, z = diag(1, 0), unit_element(2, 0, 1)
    assert_elements_close(jordan_product(a, z), 0.5 * z)

    assert_elements_close(
        jordan_product(lorentz(2, 1, 0), lorentz(3, 0, 1)), lorentz(6, 3, 2)
    )


def test_element_mismatch():
    with pytest.raises(DimensionMismatch):
        identity(SYM3) + identity(AlgebraDescriptor.sym_real(2))

    with pytest.raises(DimensionMismatch):
        jordan_product(identity(SYM3), identity(LORENTZ4))

    with pytest.raises(DimensionMismatch):
        Element(SYM3, [1.0, 2.0])

    with pytest.raises(InvalidInput):
        Element(AlgebraDescriptor.lorentz(2), [1.0, np.nan, 0.0])


def test_element_is_immutable():
    x = identity(SYM3)
    with pytest.raises(ValueError):
        x.coords[0] = 2.0


def test_scalar_products():
    rng = np.random.default_rng(7)
    x, y = random_element(LORENTZ4, rng), random_element(LORENTZ4, rng)
    assert inner(x, y) == pytest.approx(float(x.coords @ y.coords))
    assert trace_inner(x, y) == pytest.approx(2 * inner(x, y))

    x, y = random_element(SYM3, rng), random_element(SYM3, rng)
    assert trace_inner(x, y) == pytest.approx(inner(x, y))
    assert inner(x, y) == pytest.approx(np.trace(matrix(x) @ matrix(y)))


def test_quad_rep():
    assert_elements_close(quad_rep(diag(2, 1))(diag(1, 1)), diag(4, 1))
    assert_elements_close(quad_rep(diag(1, 0))(sym([[3, 1], [1, 5]])), diag(3, 0))


def test_quad_rep_is_congruence():
    rng = np.random.default_rng(3)
    x, y = random_element(SYM3, rng), random_element(SYM3, rng)
    np.testing.assert_allclose(
        matrix(quad_rep(x)(y)), matrix(x) @ matrix(y) @ matrix(x), atol=1e-12
    )


def test_box_with_identity_is_multiplication():
    x = random_element(SYM3, np.random.default_rng(5))
    np.testing.assert_allclose(
        box(x, identity(SYM3)).matrix, lmap(x).matrix, atol=1e-14
    )


@given(
    arrays(np.float64, (6,), elements=coords),
    arrays(np.float64, (6,), elements=coords),
)
def test_jordan_identity(xc, yc):
    x, y = Element(SYM3, xc), Element(SYM3, yc)
    x2 = square(x)
    assert_elements_close(
        jordan_product(x, jordan_product(x2, y)),
        jordan_product(x2, jordan_product(x, y)),
        atol=1e-12,
    )


@given(
    arrays(np.float64, (5,), elements=coords),
    arrays(np.float64, (5,), elements=coords),
    arrays(np.float64, (5,), elements=coords),
)
def test_associative_scalar_product(xc, yc, zc):
    x, y, z = Element(LORENTZ4, xc), Element(LORENTZ4, yc), Element(LORENTZ4, zc)
    assert inner(x, jordan_product(y, z)) == pytest.approx(
        inner(jordan_product(x, y), z), abs=1e-12
    )


@pytest.mark.parametrize("desc", ALGEBRAS)
def test_det_trace_from_eigenvalues(desc):
    x = random_element(desc, np.random.default_rng(11))
    values = eigenvalues(x)
    assert det(x) == pytest.approx(np.prod(values))
    assert trace(x) == pytest.approx(np.sum(values))
    assert list(values) == sorted(values, reverse=True)


@pytest.mark.parametrize("desc", ALGEBRAS)
def test_powers(desc):
    x = random_cone_element(desc, np.random.default_rng(13))
    e = identity(desc)

    assert_elements_close(jordan_product(x, inverse(x)), e, atol=1e-10)
    assert_elements_close(square(sqrt(x)), x, atol=1e-10)
    assert_elements_close(power(x, -1), inverse(x), atol=1e-10)
    assert_elements_close(power(x, 2), square(x), atol=1e-10)
    assert det(power(x, 0.5)) == pytest.approx(np.sqrt(det(x)))


def test_power_outside_cone():
    x = sym([[1, 2], [2, 1]])
    with pytest.raises(NotInCone):
        sqrt(x)

    # Integer powers do not need the cone
    assert_elements_close(power(x, 2), square(x))

    with pytest.raises(SingularElement):
        inverse(Element.zero(SYM3))


def test_is_in_cone():
    assert is_in_cone(identity(SYM3))
    assert is_in_cone(identity(LORENTZ4))
    assert not is_in_cone(sym([[1, 2], [2, 1]]))
    assert not is_in_cone(lorentz(1, 1, 0))
    assert is_in_cone(lorentz(5, 4, 0))


def test_operator_algebra():
    x = random_element(SYM3, np.random.default_rng(17))
    lx = lmap(x)
    eye = Operator.identity(SYM3)

    assert_elements_close((lx @ eye)(x), lx(x))
    assert_elements_close((2 * lx - lx)(x), square(x))
    np.testing.assert_allclose(lx.transpose().matrix, lx.matrix)
    assert eye.det() == pytest.approx(1.0)

    with pytest.raises(SingularElement):
        Operator(SYM3, np.zeros((6, 6))).inverse()

    with pytest.raises(DimensionMismatch):
        lx(identity(LORENTZ4))


@pytest.mark.parametrize("desc", ALGEBRAS)
@pytest.mark.parametrize("t", [2, 3, -1])
def test_power_round_trip(desc, t):
    x = random_cone_element(desc, np.random.default_rng(19))
    assert_elements_close(power(power(x, t), 1 / t), x, atol=1e-8)


def test_inverse_det_against_numpy():
    m = random_spd(3, np.random.default_rng(23))
    x = sym(m)

    np.testing.assert_allclose(matrix(inverse(x)), np.linalg.inv(m), atol=1e-10)
    assert det(x) == pytest.approx(np.linalg.det(m))


def test_lorentz_inverse():
    assert_elements_close(inverse(lorentz(5, 4, 0)), lorentz(5 / 9, -4 / 9, 0))


def test_multiplication_by_idempotent_spectrum():
    values = np.linalg.eigvalsh(lmap(diag(1, 0)).matrix)
    np.testing.assert_allclose(values, [0, 0.5, 1], atol=1e-15)


def test_det_example():
    assert det(sym([[4, 2], [2, 2]])) == pytest.approx(4)


def test_apply_compose():
    rng = np.random.default_rng(29)
    x, y, z = (random_element(SYM3, rng) for _ in range(3))
    lx, py, lz = lmap(x), quad_rep(y), lmap(z)

    assert_elements_close(apply(lx, z), jordan_product(x, z))
    assert_elements_close(
        apply(compose(lx, py), z), apply(lx, apply(py, z)), atol=1e-10
    )
    np.testing.assert_allclose(
        compose(compose(lx, py), lz).matrix,
        compose(lx, compose(py, lz)).matrix,
        atol=1e-10,
    )
    assert_elements_close(
        apply(compose(lx, 2 * py + lz), z),
        2 * apply(lx, apply(py, z)) + apply(lx, apply(lz, z)),
        atol=1e-10,
    )

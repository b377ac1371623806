import numpy as np
import pytest

from coneforge.algebra.core import AlgebraDescriptor
from coneforge.algebra.core import InvalidInput
from coneforge.algebra.core import is_in_cone
from coneforge.lab import Law
from coneforge.lab.witness import alpha_upper_bound
from coneforge.lab.witness import detwth_witness
from coneforge.lab.witness import witness_basis
from coneforge.lab.witness import witness_elements
from coneforge.lab.witness import witness_grid
from coneforge.lab.witness import witness_targets
from tests.oracles import assert_elements_close
from tests.oracles import diag
from tests.oracles import sym


SYM2 = AlgebraDescriptor.sym_real(2)


def test_alpha_upper_bound():
    assert alpha_upper_bound(0.5) == pytest.approx(1 / 36)
    assert alpha_upper_bound(0.25) < alpha_upper_bound(0.5)


def test_witness_basis():
    a, c, z = witness_basis(SYM2)
    assert_elements_close(a, diag(1, 0))
    assert_elements_close(c, diag(0, 1))
    assert_elements_close(z, sym([[0, 1], [1, 0]]))

    with pytest.raises(InvalidInput):
        witness_basis(AlgebraDescriptor.sym_real(1))


def test_witness_sym_real():
    a, c, z = witness_basis(SYM2)
    pair = detwth_witness(a, c, z, 0.5, 0.02)

    assert is_in_cone(pair.x)
    assert is_in_cone(pair.y)
    assert_elements_close(pair.b, sym([[0.5, 0.5], [0.5, 0.5]]), atol=1e-15)
    for lhs, rhs in witness_targets(pair, a):
        np.testing.assert_allclose(lhs.coords, rhs.coords, atol=1e-8)


def test_witness_lorentz():
    a, c, z = witness_basis(AlgebraDescriptor.lorentz(3))
    pair = detwth_witness(a, c, z, 0.25, 0.5 * alpha_upper_bound(0.25))

    assert is_in_cone(pair.x)
    assert is_in_cone(pair.y)


def test_witness_invalid_alpha():
    a, c, z = witness_basis(SYM2)

    with pytest.raises(InvalidInput):
        detwth_witness(a, c, z, 0.5, 0.0)

    with pytest.raises(InvalidInput):
        detwth_witness(a, c, z, 0.5, 1 / 36)

    with pytest.raises(InvalidInput):
        detwth_witness(a, c, z, 1.0, 0.01)


def test_witness_invalid_basis():
    a, c, z = witness_basis(SYM2)

    with pytest.raises(InvalidInput):
        detwth_witness(a, a, z, 0.5, 0.02)

    with pytest.raises(InvalidInput):
        detwth_witness(a, c, 2 * z, 0.5, 0.02)


def test_witness_elements_outside_interval():
    a, c, z = witness_basis(SYM2)
    pair = witness_elements(a, c, z, 0.5, 0.1)
    assert pair.alpha == 0.1

    with pytest.raises(InvalidInput):
        witness_elements(a, c, z, 0.5, 1.0)


@pytest.mark.parametrize(
    "desc", [SYM2, AlgebraDescriptor.sym_real(3), AlgebraDescriptor.lorentz(3)]
)
def test_witness_grid(desc):
    report = witness_grid(desc, n_alpha=5)

    assert report.law is Law.WITNESS
    assert report.passed
    assert report.samples == 25
    assert report.max_abs_residual < 1e-8


def test_witness_grid_invalid():
    with pytest.raises(InvalidInput):
        witness_grid(SYM2, n_alpha=0)

    with pytest.raises(InvalidInput):
        witness_grid(SYM2, lambda2s=[1.5])

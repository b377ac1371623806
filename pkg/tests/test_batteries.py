from itertools import combinations

import numpy as np
import pytest

from coneforge.algebra.core import AlgebraDescriptor
from coneforge.algebra.core import InvalidInput
from coneforge.algebra.core import det
from coneforge.algebra.core import lmap
from coneforge.algebra.core import quad_rep
from coneforge.algebra.core import square
from coneforge.lab import Law
from coneforge.lab.batteries import RANK_EPS
from coneforge.lab.batteries import axiom_battery
from coneforge.lab.batteries import closed_form_battery
from coneforge.lab.batteries import formula_battery
from coneforge.lab.batteries import split_battery
from coneforge.lab.batteries import triangular_battery
from coneforge.lab.sampling import random_cone_element
from coneforge.peirce import standard_frame
from tests.oracles import ALGEBRAS


SYM1 = AlgebraDescriptor.sym_real(1)
SYM3 = AlgebraDescriptor.sym_real(3)
L3 = AlgebraDescriptor.lorentz(3)


@pytest.mark.parametrize("desc", ALGEBRAS + [AlgebraDescriptor.sym_real(5)])
def test_axiom_battery(desc):
    report = axiom_battery(desc, 50)
    assert report.law is Law.AXIOMS
    assert report.passed


@pytest.mark.parametrize("desc", [SYM3, L3])
def test_split_battery(desc):
    report = split_battery(desc, 30)
    assert report.law is Law.SPLIT
    assert report.passed


@pytest.mark.parametrize(
    "desc", [SYM3, AlgebraDescriptor.sym_real(4), L3, AlgebraDescriptor.lorentz(5)]
)
def test_formula_battery(desc):
    report = formula_battery(desc, 30)
    assert report.law is Law.FORMULAS
    assert report.passed
    assert report.max_rel_residual < 0.1


@pytest.mark.parametrize(
    "desc", [SYM3, AlgebraDescriptor.sym_real(4), L3, AlgebraDescriptor.lorentz(5)]
)
def test_block_dimension(desc):
    frame = standard_frame(desc)
    for i, j in combinations(range(desc.rank), 2):
        projector = 4 * (lmap(frame[i]) @ lmap(frame[j])).matrix
        assert np.linalg.matrix_rank(projector, RANK_EPS) == desc.peirce_constant
        np.testing.assert_allclose(projector @ projector, projector, atol=1e-12)


@pytest.mark.parametrize("desc", ALGEBRAS)
def test_determinant_symmetry(desc):
    rng = np.random.default_rng(31)
    x, y = random_cone_element(desc, rng), random_cone_element(desc, rng)

    lhs = det(quad_rep(x)(square(y)))
    assert lhs == pytest.approx(det(quad_rep(y)(square(x))), rel=1e-10)
    assert lhs == pytest.approx((det(x) * det(y)) ** 2, rel=1e-10)


@pytest.mark.parametrize("desc", ALGEBRAS)
def test_triangular_battery(desc):
    report = triangular_battery(desc, 30)
    assert report.law is Law.TRIANGULAR
    assert report.passed


def test_closed_form_battery():
    report = closed_form_battery(L3, 30)
    assert report.law is Law.CLOSED_FORMS
    assert report.passed

    with pytest.raises(InvalidInput):
        closed_form_battery(SYM3, 10)


def test_batteries_need_rank_two():
    with pytest.raises(InvalidInput):
        split_battery(SYM1, 10)

    with pytest.raises(InvalidInput):
        formula_battery(SYM1, 10)


def test_battery_is_seeded():
    assert axiom_battery(SYM3, 20, seed=3) == axiom_battery(SYM3, 20, seed=3, workers=2)

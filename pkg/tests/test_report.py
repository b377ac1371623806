import numpy as np
import pytest

from coneforge.algebra.core import AlgebraDescriptor
from coneforge.algebra.core import InvalidInput
from coneforge.algebra.core import Tolerance
from coneforge.algebra.core import identity
from coneforge.algebra.core import is_in_cone
from coneforge.algebra.core import trace
from coneforge.lab import Law
from coneforge.lab.report import ResidualAccumulator
from coneforge.lab.report import ResidualReport
from coneforge.lab.report import ToleranceExceeded
from coneforge.lab.report import negative_control
from coneforge.lab.report import run_law
from coneforge.lab.report import sample_map
from coneforge.lab.sampling import random_automorphism
from coneforge.lab.sampling import random_cone_element
from coneforge.lab.sampling import random_frame
from coneforge.lab.sampling import random_k_automorphism
from coneforge.lab.sampling import random_orthogonal
from coneforge.lab.sampling import rng_for
from tests.oracles import ALGEBRAS
from tests.oracles import assert_elements_close


def test_accumulator():
    acc = ResidualAccumulator(Tolerance(1e-10, 1e-9))
    assert acc.add(1.0, 1.0)
    assert acc.add([1.0, 2.0], [1.0, 2.0 + 1e-12])
    assert acc.passed

    assert not acc.add(1.0, 1.5)
    acc.flag(True)

    report = acc.report(Law.W1, 3, 42)
    assert not report.passed
    assert report.max_abs_residual == pytest.approx(0.5)
    assert report.max_rel_residual == pytest.approx(0.5 / 1.5)
    assert (report.law, report.samples, report.seed) == (Law.W1, 3, 42)
    assert acc.checks == 4
    assert acc.failures == 1


def test_accumulator_relative_floor():
    acc = ResidualAccumulator()
    acc.add(0.0, 0.0)
    assert acc.max_rel == 0.0

    assert acc.add(1e-12, 0.0)
    assert acc.add([0.0, 2.0], [-1e-13, 2.0])
    report = acc.report(Law.FORMULAS, 2, 42)
    assert report.passed
    assert report.max_rel_residual == pytest.approx(1e-2)


def test_accumulator_non_finite():
    acc = ResidualAccumulator()
    assert not acc.add(np.inf, 1.0)
    assert acc.max_abs == np.inf
    assert not acc.passed


def test_accumulator_flag():
    acc = ResidualAccumulator()
    acc.flag(False)
    report = acc.report(Law.WITNESS, 1, 0)
    assert not report.passed
    assert report.max_abs_residual == 0.0


def test_negative_control():
    failing = ResidualReport(Law.W1, 10, 0.5, 0.1, 42, False)
    control = negative_control(failing)
    assert control.passed
    assert control.control

    barely = ResidualReport(Law.W1, 10, 1e-3, 1e-3, 42, False)
    assert not negative_control(barely).passed

    passing = ResidualReport(Law.W1, 10, 1e-12, 1e-12, 42, True)
    assert not negative_control(passing).passed


def test_tolerance_exceeded():
    report = ResidualReport(Law.PEXIDER, 10, 0.5, 0.1, 42, False)
    e = ToleranceExceeded(report)
    assert e.report is report
    assert "pexider" in str(e)


def test_rng_for_is_deterministic():
    a = rng_for(42, 7).standard_normal(5)
    b = rng_for(42, 7).standard_normal(5)
    c = rng_for(42, 8).standard_normal(5)

    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, c)

    with pytest.raises(InvalidInput):
        rng_for(-1, 0)


def test_sample_map_order_and_workers():
    def draw(rng):
        return rng.standard_normal()

    sequential = sample_map(draw, 64, 42)
    parallel = sample_map(draw, 64, 42, workers=4)

    assert sequential == parallel
    assert sequential[:8] == sample_map(draw, 8, 42)


def test_sample_map_invalid():
    with pytest.raises(InvalidInput):
        sample_map(lambda rng: 0, 0, 42)

    with pytest.raises(InvalidInput):
        sample_map(lambda rng: 0, 1, 42, workers=0)


def test_run_law_workers_agree():
    desc = AlgebraDescriptor.sym_real(3)

    def check(rng):
        x = random_cone_element(desc, rng)
        return [(trace(x), float(np.sum(x.coords[:3])))]

    assert run_law(Law.AXIOMS, check, 50, 1) == run_law(
        Law.AXIOMS, check, 50, 1, workers=3
    )


@pytest.mark.parametrize("desc", ALGEBRAS)
def test_random_cone_element(desc):
    rng = np.random.default_rng(0)
    for _ in range(20):
        assert is_in_cone(random_cone_element(desc, rng))


@pytest.mark.parametrize("desc", ALGEBRAS)
def test_random_automorphism(desc):
    rng = np.random.default_rng(1)
    k = random_automorphism(desc, rng)
    assert_elements_close(k(identity(desc)), identity(desc), atol=1e-12)
    np.testing.assert_allclose(
        k.matrix.T @ k.matrix, np.eye(desc.ambient_dim), atol=1e-12
    )
    random_frame(desc, rng).validate()


def test_random_k_automorphism_is_seeded():
    desc = AlgebraDescriptor.lorentz(3)
    np.testing.assert_array_equal(
        random_k_automorphism(desc, 5).matrix, random_k_automorphism(desc, 5).matrix
    )
    assert np.linalg.det(random_orthogonal(3, np.random.default_rng(2), True)) > 0

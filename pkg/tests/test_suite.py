from io import BytesIO

import pytest

from coneforge.algebra.core import AlgebraDescriptor
from coneforge.algebra.core import InvalidInput
from coneforge.algebra.core import Tolerance
from coneforge.lab import Law
from coneforge.lab.suite import LawRun
from coneforge.lab.suite import SuiteBuilder
from coneforge.lab.suite import SuiteBuilderError
from coneforge.lab.suite import acceptance_suite
from coneforge.peirce import standard_frame


SYM3 = AlgebraDescriptor.sym_real(3)
L3 = AlgebraDescriptor.lorentz(3)


def suite(body, namespace="urn:coneforge:suite", root="suite"):
    return SuiteBuilder.from_stream(
        BytesIO(
            f'<{root} xmlns="{namespace}" name="small">{body}</{root}>'.encode()
        )
    )


def test_build_suite():
    small = suite(
        """
        <!-- a comment -->
        <axioms algebra="sym_real" size="2" samples="20" />
        <w1 algebra="lorentz" size="3" samples="50" control="true" />
        <det_mult algebra="sym_real" size="3" samples="20" algorithm="w2" />
        <character algebra="sym_real" size="3" samples="20" s="1,0.5,2" />
        <witness algebra="sym_real" size="2" n-alpha="3" tol-abs="1e-7" />
        """
    ).build(seed=7, workers=2)

    assert small.name == "small"
    assert len(small) == 5
    assert [str(_) for _ in small.runs] == [
        "axioms[sym_real(2)]",
        "w1[lorentz(3)] control",
        "det_mult[sym_real(3)]/w2",
        "character[sym_real(3)]",
        "witness[sym_real(2)]",
    ]

    axioms, control, det_mult, character, witness = small.runs
    assert (axioms.samples, axioms.seed, axioms.workers) == (20, 7, 2)
    assert control.control
    assert det_mult.algorithm is Law.W2
    assert character.s == (1.0, 0.5, 2.0)
    assert witness.n_alpha == 3
    assert witness.tol.abs == 1e-7

    results = small.run()
    assert [_.run for _ in results] == small.runs
    assert all(_.report.passed for _ in results)


@pytest.mark.parametrize(
    "body",
    [
        '<unknown algebra="sym_real" size="2" />',
        '<axioms algebra="sym_real" />',
        '<axioms size="2" />',
        '<axioms algebra="hermitian" size="2" />',
        '<axioms algebra="sym_real" size="2" colour="red" />',
        '<axioms algebra="sym_real" size="2" samples="many" />',
        '<axioms algebra="sym_real" size="2" samples="0" />',
        '<axioms algebra="sym_real" size="2" control="true" />',
        '<w1 algebra="sym_real" size="2" control="maybe" />',
        '<det_mult algebra="sym_real" size="2" algorithm="axioms" />',
        "",
    ],
)
def test_invalid_suite(body):
    with pytest.raises(SuiteBuilderError):
        suite(body).build()


def test_invalid_namespace():
    with pytest.raises(SuiteBuilderError):
        suite('<axioms algebra="sym_real" size="2" />', namespace="urn:other")


def test_invalid_root():
    with pytest.raises(SuiteBuilderError):
        suite('<axioms algebra="sym_real" size="2" />', root="checks")


def test_malformed_suite():
    with pytest.raises(SuiteBuilderError):
        SuiteBuilder.from_stream(BytesIO(b'<suite xmlns="urn:coneforge:suite">'))


def test_law_run_validation():
    with pytest.raises(InvalidInput):
        LawRun(Law.AXIOMS, SYM3, control=True)

    with pytest.raises(InvalidInput):
        LawRun(Law.W1, SYM3, samples=0)

    with pytest.raises(InvalidInput):
        LawRun(Law.DET_MULT, SYM3, algorithm=Law.SPLIT)

    with pytest.raises(InvalidInput):
        LawRun(Law.W2, SYM3, frame=standard_frame(L3))


def test_law_run():
    report = LawRun(Law.W2, SYM3, samples=50, s=(1.0, 2.0, 0.5))()
    assert report.law is Law.W2
    assert report.samples == 50
    assert report.passed

    with pytest.raises(InvalidInput):
        LawRun(Law.W1, SYM3, samples=10, s=(1.0, 2.0))()


def test_law_run_label():
    assert str(LawRun(Law.PEXIDER, L3)) == "pexider[lorentz(3)]/w1"
    assert str(LawRun(Law.W2, SYM3, control=True)) == "w2[sym_real(3)] control"


def test_acceptance_suite():
    acceptance = acceptance_suite(tol=Tolerance(1e-10, 1e-9))
    assert acceptance.name == "acceptance"
    assert len(acceptance) == 35
    assert {_.law for _ in acceptance.runs} == set(Law)

from io import StringIO

import numpy as np
import pytest

from coneforge.algebra.core import AlgebraDescriptor
from coneforge.algebra.core import DimensionMismatch
from coneforge.algebra.core import InvalidInput
from coneforge.algebra.core import NotInCone
from coneforge.algebra.lorentz import LorentzFrame
from coneforge.codec import CodecError
from coneforge.codec import decode_decomposition
from coneforge.codec import decode_element
from coneforge.codec import decode_frame
from coneforge.codec import decode_report
from coneforge.codec import dumps
from coneforge.codec import encode_blocks
from coneforge.codec import encode_decomposition
from coneforge.codec import encode_element
from coneforge.codec import encode_frame
from coneforge.codec import encode_report
from coneforge.codec import encode_spectral
from coneforge.codec import load
from coneforge.codec import loads
from coneforge.lab import Law
from coneforge.lab.report import ResidualReport
from coneforge.lab.sampling import random_cone_element
from coneforge.lab.sampling import random_frame
from coneforge.peirce import FrameIncomplete
from coneforge.peirce import joint_peirce
from coneforge.peirce import spectral_decompose
from coneforge.peirce import standard_frame
from coneforge.triangular import triangular_decompose
from tests.oracles import ALGEBRAS
from tests.oracles import assert_elements_close
from tests.oracles import diag
from tests.oracles import lorentz
from tests.oracles import sym


def test_encode_element():
    assert encode_element(sym([[2, 1], [1, 3]])) == {
        "algebra": "sym_real",
        "r": 2,
        "matrix": [[2.0, 1.0], [1.0, 3.0]],
    }
    assert encode_element(lorentz(5, 4, 0)) == {
        "algebra": "lorentz",
        "n": 2,
        "x0": 5.0,
        "x": [4.0, 0.0],
    }


def test_decode_element():
    assert_elements_close(decode_element([[2, 1], [1, 3]]), sym([[2, 1], [1, 3]]))
    assert_elements_close(
        decode_element({"algebra": "lorentz", "x0": 1, "x": [0.5, 0.25]}),
        lorentz(1, 0.5, 0.25),
    )


@pytest.mark.parametrize("desc", ALGEBRAS)
def test_element_document(desc):
    x = random_cone_element(desc, np.random.default_rng(11))
    y = decode_element(loads(dumps(encode_element(x))))
    assert y.descriptor == desc
    assert_elements_close(y, x, atol=1e-15)


@pytest.mark.parametrize(
    "document",
    [
        {"algebra": "hermitian", "matrix": [[1]]},
        {"matrix": [[1]]},
        {"algebra": "lorentz", "x0": 1},
        {"algebra": "lorentz", "x0": "one", "x": [0, 0]},
        [[1, 2], [3, 4]],
        [[1, float("nan")], [float("nan"), 1]],
        "identity",
    ],
)
def test_decode_element_invalid(document):
    with pytest.raises(InvalidInput):
        decode_element(document)


def test_decode_element_mismatch():
    with pytest.raises(DimensionMismatch):
        decode_element({"algebra": "sym_real", "r": 3, "matrix": [[1, 0], [0, 1]]})


@pytest.mark.parametrize("desc", ALGEBRAS)
def test_frame_document(desc):
    frame = random_frame(desc, np.random.default_rng(12))
    again = decode_frame(loads(dumps(encode_frame(frame))))
    for c, d in zip(frame, again):
        assert_elements_close(c, d, atol=1e-12)


def test_lorentz_frame_document():
    frame = LorentzFrame(np.array([0.6, 0.8]))
    assert encode_frame(frame.frame) == {"u": [pytest.approx(0.6), pytest.approx(0.8)]}


def test_decode_frame_invalid():
    with pytest.raises(CodecError):
        decode_frame({"u": [1.0, 1.0]})

    with pytest.raises(CodecError):
        decode_frame({"idempotents": "e"})

    with pytest.raises(FrameIncomplete):
        decode_frame({"idempotents": [[[1, 0], [0, 0]]]})


def test_encode_spectral():
    document = encode_spectral(spectral_decompose(diag(3, 1)))
    assert document["eigenvalues"] == [3.0, 1.0]
    assert len(document["frame"]["idempotents"]) == 2


def test_encode_blocks():
    x = sym([[1, 2, 3], [2, 4, 5], [3, 5, 6]])
    document = encode_blocks(joint_peirce(x, standard_frame(x.descriptor)))

    assert sorted(document["blocks"]) == ["1,1", "1,2", "1,3", "2,2", "2,3", "3,3"]
    np.testing.assert_allclose(
        document["blocks"]["2,3"]["matrix"], [[0, 0, 0], [0, 0, 5], [0, 5, 0]]
    )


@pytest.mark.parametrize("desc", ALGEBRAS)
def test_decomposition_document(desc):
    rng = np.random.default_rng(13)
    d = triangular_decompose(random_cone_element(desc, rng), random_frame(desc, rng))
    again = decode_decomposition(loads(dumps(encode_decomposition(d))))

    np.testing.assert_array_equal(again.diag, d.diag)
    for z, w in zip(again.offdiag, d.offdiag):
        assert_elements_close(z, w, atol=1e-12)


def test_decode_decomposition_invalid():
    frame = encode_frame(standard_frame(AlgebraDescriptor.sym_real(2)))

    with pytest.raises(CodecError):
        decode_decomposition({"frame": frame, "alphas": [1, 1]})

    with pytest.raises(CodecError):
        decode_decomposition({"frame": frame, "alphas": [1, 1], "z": {}})

    with pytest.raises(NotInCone):
        decode_decomposition(
            {"frame": frame, "alphas": [1, -1], "z": [[[0, 0], [0, 0]]]}
        )


def test_report_document():
    report = ResidualReport(Law.W2, 1000, 1.5e-13, 2.25e-14, 42, True)
    document = encode_report(report)

    assert document == {
        "law": "w2",
        "samples": 1000,
        "max_abs_residual": 1.5e-13,
        "max_rel_residual": 2.25e-14,
        "seed": 42,
        "pass": True,
    }
    assert decode_report(loads(dumps(document))) == report


def test_report_document_non_finite():
    report = ResidualReport(Law.W1, 10, float("inf"), 0.5, 42, True, control=True)
    document = encode_report(report)

    assert document["max_abs_residual"] is None
    assert document["control"] is True
    assert "null" in dumps(document)
    assert decode_report(document) == report


def test_decode_report_invalid():
    with pytest.raises(CodecError):
        decode_report({"law": "w1"})

    with pytest.raises(CodecError):
        decode_report(
            {
                "law": "nope",
                "samples": 1,
                "max_abs_residual": 0,
                "max_rel_residual": 0,
                "seed": 0,
                "pass": True,
            }
        )


def test_load(tmp_path):
    path = tmp_path / "x.json"
    path.write_text("[[1, 0], [0, 1]]")

    assert load(path) == [[1, 0], [0, 1]]
    assert load(str(path)) == [[1, 0], [0, 1]]
    assert load(StringIO('{"u": [1, 0]}')) == {"u": [1, 0]}

    with pytest.raises(CodecError):
        load(tmp_path / "missing.json")

    with pytest.raises(CodecError):
        loads("[1, 2")

    with pytest.raises(CodecError):
        dumps({"x": float("nan")})

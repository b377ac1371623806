# This file is part of "coneforge" which is released under GPL.
#
# See file LICENCE or go to http://www.gnu.org/licenses/ for full license
# details.
#
# coneforge is a numerical toolkit for Euclidean Jordan algebras and their
# symmetric cones.
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.

"""JSON documents for elements, frames, decompositions and reports.

Floats are written with their shortest round-trip representation, so that
decoding an encoded document reproduces every value bit for bit.
"""

import json
import math
from pathlib import Path
from typing import Any
from typing import Dict
from typing import List
from typing import Optional
from typing import TextIO
from typing import Union

import numpy as np

from coneforge import AlgebraKind
from coneforge.algebra.core import AlgebraDescriptor
from coneforge.algebra.core import Element
from coneforge.algebra.core import InvalidInput
from coneforge.algebra.lorentz import LorentzFrame
from coneforge.lab import Law
from coneforge.lab.report import ResidualReport
from coneforge.peirce import JordanFrame
from coneforge.peirce import PeirceBlocks
from coneforge.peirce import SpectralDecomposition
from coneforge.triangular import TriangularDecomposition


Document = Dict[str, Any]


class CodecError(InvalidInput):
    """Malformed JSON document."""

    pass


def _floats(values: Any) -> List[float]:
    return [float(_) for _ in np.asarray(values, dtype=float).reshape(-1)]


def _number(value: float) -> Optional[float]:
    # JSON has no representation for non-finite residuals
    return value if math.isfinite(value) else None


def dumps(document: Any) -> str:
    """Serialize a document."""
    try:
        return json.dumps(document, indent=2, allow_nan=False)
    except (TypeError, ValueError) as e:
        raise CodecError(f"Cannot serialize document: {e}") from None


def loads(text: str) -> Any:
    """Parse a document."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise CodecError(f"Malformed JSON: {e}") from None


def load(source: Union[str, Path, TextIO]) -> Any:
    """Parse a document from a path or a stream."""
    if isinstance(source, (str, Path)):
        try:
            source = open(source, encoding="utf8")
        except OSError as e:
            raise CodecError(f"Cannot read {e.filename}: {e.strerror}") from None
        with source:
            return loads(source.read())
    return loads(source.read())


def _get(document: Any, key: str, what: str) -> Any:
    if not isinstance(document, dict):
        raise CodecError(f"Expected a JSON object for the {what}")
    try:
        return document[key]
    except KeyError:
        raise CodecError(f"Missing '{key}' in the {what}") from None


def encode_element(x: Element) -> Document:
    """Encode an element in its algebra native form."""
    return x.descriptor.algebra.encode(x.coords)


def decode_element(document: Any) -> Element:
    """Decode an element.

    A bare nested list is read as a symmetric matrix.
    """
    if isinstance(document, list):
        document = {"algebra": AlgebraKind.SYM_REAL.value, "matrix": document}

    try:
        kind = AlgebraKind(_get(document, "algebra", "element"))
    except ValueError:
        raise CodecError(f"Unknown algebra '{document['algebra']}'") from None

    try:
        if kind is AlgebraKind.SYM_REAL:
            size = document.get("r") or len(_get(document, "matrix", "element"))
        else:
            size = document.get("n") or len(_get(document, "x", "element"))
        desc = AlgebraDescriptor.of(kind, int(size))
        return Element(desc, desc.algebra.decode(document))
    except CodecError:
        raise
    except (InvalidInput, TypeError, ValueError) as e:
        raise CodecError(f"Invalid element: {e}") from None


def encode_frame(frame: JordanFrame) -> Document:
    """Encode a frame by its idempotents, or by ``u`` on the Lorentz algebra."""
    if frame.descriptor.kind is AlgebraKind.LORENTZ:
        return {"u": _floats(LorentzFrame.from_frame(frame).u)}
    return {"idempotents": [encode_element(c) for c in frame]}


def decode_frame(document: Any) -> JordanFrame:
    """Decode and validate a frame."""
    try:
        if isinstance(document, dict) and "u" in document:
            return LorentzFrame(np.asarray(document["u"], dtype=float)).frame
        idempotents = _get(document, "idempotents", "frame")
        if not isinstance(idempotents, list):
            raise CodecError("Frame idempotents must be a list")
        return JordanFrame([decode_element(_) for _ in idempotents])
    except CodecError:
        raise
    except (InvalidInput, TypeError, ValueError) as e:
        raise CodecError(f"Invalid frame: {e}") from None


def encode_spectral(decomposition: SpectralDecomposition) -> Document:
    """Encode a spectral decomposition."""
    return {
        "eigenvalues": _floats(decomposition.eigenvalues),
        "frame": encode_frame(decomposition.frame),
    }


def encode_blocks(blocks: PeirceBlocks) -> Document:
    """Encode the joint Peirce blocks, keyed by 1-based ``"i,j"``."""
    return {
        "frame": encode_frame(blocks.frame),
        "blocks": {
            f"{i + 1},{j + 1}": encode_element(b)
            for (i, j), b in sorted(blocks.blocks.items())
        },
    }


def encode_decomposition(decomposition: TriangularDecomposition) -> Document:
    """Encode a triangular decomposition."""
    return {
        "frame": encode_frame(decomposition.frame),
        "alphas": _floats(decomposition.diag),
        "z": [encode_element(z) for z in decomposition.offdiag],
    }


def decode_decomposition(document: Any) -> TriangularDecomposition:
    """Decode a triangular decomposition."""
    frame = decode_frame(_get(document, "frame", "decomposition"))
    zs = _get(document, "z", "decomposition")
    if not isinstance(zs, list):
        raise CodecError("The Peirce vectors of a decomposition must be a list")
    try:
        return TriangularDecomposition(
            frame,
            tuple(decode_element(z) for z in zs),
            np.array(_get(document, "alphas", "decomposition"), dtype=float),
        )
    except CodecError:
        raise
    except (InvalidInput, TypeError, ValueError) as e:
        raise CodecError(f"Invalid decomposition: {e}") from None


def encode_report(report: ResidualReport) -> Document:
    """Encode a residual report."""
    document = {
        "law": report.law.value,
        "samples": report.samples,
        "max_abs_residual": _number(report.max_abs_residual),
        "max_rel_residual": _number(report.max_rel_residual),
        "seed": report.seed,
        "pass": report.passed,
    }
    if report.control:
        document["control"] = True
    return document


def decode_report(document: Any) -> ResidualReport:
    """Decode a residual report."""

    def residual(key: str) -> float:
        value = _get(document, key, "report")
        return float("inf") if value is None else float(value)

    try:
        return ResidualReport(
            Law(_get(document, "law", "report")),
            int(_get(document, "samples", "report")),
            residual("max_abs_residual"),
            residual("max_rel_residual"),
            int(_get(document, "seed", "report")),
            bool(_get(document, "pass", "report")),
            bool(document.get("control", False)),
        )
    except (TypeError, ValueError) as e:
        raise CodecError(f"Invalid report: {e}") from None

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

import logging
from typing import Any
from typing import List
from typing import NamedTuple
from typing import Optional

import numpy as np

from coneforge.algebra.core import DEFAULT_TOLERANCE
from coneforge.algebra.core import AlgebraDescriptor
from coneforge.algebra.core import DimensionMismatch
from coneforge.algebra.core import Element
from coneforge.algebra.core import InvalidInput
from coneforge.algebra.core import identity
from coneforge.algebra.symreal import unit_element
from coneforge.codec import Document
from coneforge.codec import decode_decomposition
from coneforge.codec import decode_element
from coneforge.codec import decode_frame
from coneforge.codec import decode_report
from coneforge.codec import encode_blocks
from coneforge.codec import encode_decomposition
from coneforge.codec import encode_element
from coneforge.codec import encode_report
from coneforge.codec import encode_spectral
from coneforge.codec import load
from coneforge.config import CliConfig
from coneforge.lab import Law
from coneforge.lab.laws import triangular_character
from coneforge.lab.report import ResidualReport
from coneforge.lab.report import ToleranceExceeded
from coneforge.lab.suite import LawRun
from coneforge.lab.suite import SuiteBuilder
from coneforge.lab.suite import SuiteResult
from coneforge.lab.suite import acceptance_suite
from coneforge.lab.witness import WITNESS_TOLERANCE
from coneforge.lab.witness import WitnessPair
from coneforge.lab.witness import alpha_upper_bound
from coneforge.lab.witness import detwth_witness
from coneforge.lab.witness import witness_basis
from coneforge.lab.witness import witness_targets
from coneforge.peirce import JordanFrame
from coneforge.peirce import joint_peirce
from coneforge.peirce import nonorthogonal_split
from coneforge.peirce import spectral_decompose
from coneforge.peirce import standard_frame
from coneforge.triangular import TriangularDecomposition
from coneforge.triangular import delta_s
from coneforge.triangular import principal_minors
from coneforge.triangular import t_apply
from coneforge.triangular import triangular_decompose


_logger = logging.getLogger(__name__)

WITNESS_SIZE = 2


class Outcome(NamedTuple):
    """A JSON document and whether the computation it describes passed."""

    document: Document
    passed: bool = True


class Adapter:
    """Model-output adapter.

    Bridges between the numerical model and the JSON documents printed by the
    command line interface.

    An adapter is made of two steps: ``transform`` and ``update``. The former
    runs the computation described by the configuration. The latter turns the
    result into an outcome.

    An adapter is used by simply calling it.
    """

    def __init__(self, config: CliConfig) -> None:
        self._config = config

    def __call__(self) -> Outcome:
        """Invoke the adapter."""
        return self.update(self.transform())

    def transform(self) -> Any:
        """Run the computation."""
        pass

    def update(self, data: Any) -> Outcome:
        """Turn the result into an outcome."""
        pass

    def _input(self) -> str:
        if not self._config.inputs:
            raise InvalidInput(f"'{self._config.subcommand.value}' needs an input")
        return self._config.inputs[0]

    def read_document(self, source: Optional[str] = None) -> Any:
        """Load the JSON document of the input."""
        return load(source or self._input())

    def read_element(self, source: Optional[str] = None) -> Element:
        """Read an element from a JSON file or a ``unit:i,j`` matrix unit.

        Matrix unit indices are 1-based.
        """
        source = source or self._input()
        if source.startswith("unit:"):
            try:
                i, j = (int(_) for _ in source[5:].split(","))
            except ValueError:
                raise InvalidInput(f"Invalid matrix unit '{source}'") from None
            return unit_element(self._config.descriptor().rank, i - 1, j - 1)
        return decode_element(self.read_document(source))

    def read_frame(self, desc: AlgebraDescriptor) -> JordanFrame:
        """The frame of ``--frame``, or the standard frame.

        The frame may also be taken from any document with a ``frame`` entry.
        """
        if self._config.frame is None:
            return standard_frame(desc)

        document = load(self._config.frame)
        if isinstance(document, dict) and "frame" in document:
            document = document["frame"]
        frame = decode_frame(document)
        if frame.descriptor != desc:
            raise DimensionMismatch(f"Frame of {frame.descriptor} used on {desc}")
        return frame


class SpectralAdapter(Adapter):
    """Spectral decomposition."""

    def transform(self) -> Any:
        """Decompose the input element."""
        return spectral_decompose(self.read_element())

    def update(self, data: Any) -> Outcome:
        """Encode the eigenvalues and the frame."""
        return Outcome(encode_spectral(data))


class PeirceAdapter(Adapter):
    """Joint Peirce blocks, or the splitting of two idempotents."""

    def transform(self) -> Any:
        """Decompose the input element or split it against ``--split``."""
        x = self.read_element()
        if self._config.split is not None:
            return nonorthogonal_split(
                x, self.read_element(self._config.split), self._config.tol
            )
        return joint_peirce(x, self.read_frame(x.descriptor))

    def update(self, data: Any) -> Outcome:
        """Encode the blocks or the split."""
        if self._config.split is None:
            return Outcome(encode_blocks(data))
        return Outcome(
            {
                "lambda": data.lam,
                "mu": data.mu,
                "c": encode_element(data.c),
                "z": encode_element(data.z),
            }
        )


class TriangularAdapter(Adapter):
    """Triangular decomposition of an element, or of the element
    reconstructed from a decomposition.
    """

    def transform(self) -> Any:
        """Decompose."""
        document = self.read_document()
        if isinstance(document, dict) and "alphas" in document:
            d = decode_decomposition(document)
            return triangular_decompose(
                t_apply(d, identity(d.descriptor)), d.frame, self._config.tol
            )

        x = decode_element(document)
        return triangular_decompose(x, self.read_frame(x.descriptor), self._config.tol)

    def update(self, data: Any) -> Outcome:
        """Encode the decomposition."""
        return Outcome(encode_decomposition(data))


class MinorsAdapter(Adapter):
    """Principal minors and the power function."""

    def transform(self) -> Any:
        """Compute the minors, and ``D_s`` when exponents are given."""
        x = self.read_element()
        frame = self.read_frame(x.descriptor)
        minors = principal_minors(x, frame)
        if self._config.s is None:
            return minors, None
        return minors, delta_s(x, self._config.s, frame)

    def update(self, data: Any) -> Outcome:
        """Encode the minors."""
        minors, value = data
        document: Document = {"minors": [float(_) for _ in minors]}
        if value is not None:
            document["delta_s"] = value
        return Outcome(document)


def _suite_outcome(name: str, results: List[SuiteResult]) -> Outcome:
    passed = all(_.report.passed for _ in results)
    return Outcome(
        {
            "suite": name,
            "pass": passed,
            "reports": [
                {"check": str(run), **encode_report(report)} for run, report in results
            ],
        },
        passed,
    )


class BaselineComparison(NamedTuple):
    """A fresh report next to the saved report it should reproduce."""

    report: ResidualReport
    baseline: ResidualReport
    reproduced: bool


class VerifyAdapter(Adapter):
    """Verification runs of single laws and of whole suites."""

    def transform(self) -> Any:
        """Run the requested law or suite."""
        config = self._config
        if config.baseline is not None:
            return self.compare(decode_report(load(config.baseline)))
        if config.suite or config.suite_file is not None:
            if config.suite_file is not None:
                with open(config.suite_file, "rb") as stream:
                    builder = SuiteBuilder.from_stream(stream)
                suite = builder.build(config.seed, config.tol, config.workers)
            else:
                suite = acceptance_suite(config.seed, config.tol, config.workers)
            return suite.name, suite.run()

        return self.law_run()()

    def law_run(self) -> LawRun:
        """The single law run of the configuration."""
        config = self._config
        law = config.law or Law.W1
        desc = config.descriptor()
        frame = self.read_frame(desc) if config.frame is not None else None
        if config.det_property:
            if law not in (Law.W1, Law.W2):
                raise InvalidInput("The det property takes --law w1 or w2")
            return LawRun(
                Law.DET_MULT,
                desc,
                config.samples,
                config.seed,
                config.tol,
                config.workers,
                algorithm=law,
                frame=frame,
            )
        return LawRun(
            law,
            desc,
            config.samples,
            config.seed,
            config.tol,
            config.workers,
            control=config.control,
            s=config.s,
            frame=frame,
        )

    def compare(self, baseline: ResidualReport) -> BaselineComparison:
        """Run the law of a saved report and compare the residuals.

        The run must use the law, the samples and the seed of the saved report.
        Residuals are reproduced when they agree within the configured
        tolerance.
        """
        config = self._config
        if config.suite or config.suite_file is not None:
            raise InvalidInput("A baseline can only be compared with a single law")

        run = self.law_run()
        expected = (baseline.law, baseline.samples, baseline.seed, baseline.control)
        if (run.law, run.samples, run.seed, run.control) != expected:
            raise InvalidInput(
                f"The baseline was produced by {baseline.law.value} with "
                f"{baseline.samples} samples and seed {baseline.seed}"
            )

        report = run()
        reproduced = report.passed == baseline.passed and all(
            a == b or config.tol.close(a, b)
            for a, b in (
                (report.max_abs_residual, baseline.max_abs_residual),
                (report.max_rel_residual, baseline.max_rel_residual),
            )
        )
        if not reproduced:
            _logger.warning("%s does not reproduce its baseline", run)
        return BaselineComparison(report, baseline, reproduced)

    def update(self, data: Any) -> Outcome:
        """Encode the report."""
        if isinstance(data, ResidualReport):
            return Outcome(encode_report(data), data.passed)
        if isinstance(data, BaselineComparison):
            document = encode_report(data.report)
            document["baseline"] = encode_report(data.baseline)
            document["reproduced"] = data.reproduced
            return Outcome(document, data.report.passed and data.reproduced)
        return _suite_outcome(*data)


class WitnessAdapter(Adapter):
    """The witness pair for given ``lambda^2`` and alpha, or the witness grid."""

    def transform(self) -> Any:
        """Build the pair or run the grid."""
        config = self._config
        desc = config.descriptor(WITNESS_SIZE)
        tol = WITNESS_TOLERANCE if config.tol == DEFAULT_TOLERANCE else config.tol
        if config.lambda2 is None and config.alpha is None:
            return LawRun(Law.WITNESS, desc, tol=tol)()
        if config.lambda2 is None or config.alpha is None:
            raise InvalidInput("The witness needs both --lambda2 and --alpha")

        a, c, z = witness_basis(desc)
        try:
            return a, detwth_witness(a, c, z, config.lambda2, config.alpha, tol)
        except ToleranceExceeded as e:
            return e.report

    def update(self, data: Any) -> Outcome:
        """Encode the pair with its residuals."""
        if isinstance(data, ResidualReport):
            return Outcome(encode_report(data), data.passed)

        a, pair = data
        assert isinstance(pair, WitnessPair)
        residual = max(
            float(np.max(np.abs((lhs - rhs).coords)))
            for lhs, rhs in witness_targets(pair, a)
        )
        return Outcome(
            {
                "lambda2": pair.lambda2,
                "alpha": pair.alpha,
                "alpha_upper_bound": alpha_upper_bound(pair.lambda2),
                "x": encode_element(pair.x),
                "y": encode_element(pair.y),
                "b": encode_element(pair.b),
                "max_abs_residual": residual,
                "pass": True,
            }
        )


class CharacterAdapter(Adapter):
    """Triangular characters."""

    def transform(self) -> Any:
        """Evaluate the character of a decomposition, or check multiplicativity."""
        config = self._config
        if not config.inputs:
            return LawRun(
                Law.CHARACTER,
                config.descriptor(),
                config.samples,
                config.seed,
                config.tol,
                config.workers,
                s=config.s,
            )()

        document = self.read_document()
        if isinstance(document, dict) and "alphas" in document:
            d = decode_decomposition(document)
        else:
            x = decode_element(document)
            d = triangular_decompose(x, self.read_frame(x.descriptor), config.tol)
        if config.s is None:
            raise InvalidInput("Evaluating a character needs --s")
        return d, triangular_character(d, config.s)

    def update(self, data: Any) -> Outcome:
        """Encode the character value or the report."""
        if isinstance(data, ResidualReport):
            return Outcome(encode_report(data), data.passed)
        d, value = data
        assert isinstance(d, TriangularDecomposition)
        return Outcome({"s": list(self._config.s or ()), "character": value})


class PexiderAdapter(Adapter):
    """Reduction of a planted Pexider triple."""

    def transform(self) -> Any:
        """Run the planted triple check."""
        config = self._config
        law = config.law or Law.W1
        if law not in (Law.W1, Law.W2):
            raise InvalidInput("The Pexider reduction takes --law w1 or w2")
        desc = config.descriptor()
        return LawRun(
            Law.PEXIDER,
            desc,
            config.samples,
            config.seed,
            config.tol,
            config.workers,
            algorithm=law,
            frame=self.read_frame(desc) if config.frame is not None else None,
        )()

    def update(self, data: Any) -> Outcome:
        """Encode the report."""
        return Outcome(encode_report(data), data.passed)


__all__ = [
    "Adapter",
    "CharacterAdapter",
    "MinorsAdapter",
    "Outcome",
    "PeirceAdapter",
    "PexiderAdapter",
    "SpectralAdapter",
    "TriangularAdapter",
    "VerifyAdapter",
    "WitnessAdapter",
]

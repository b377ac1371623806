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
from dataclasses import dataclass
from dataclasses import replace
from typing import IO
from typing import Any
from typing import Callable
from typing import Dict
from typing import List
from typing import NamedTuple
from typing import Optional
from typing import Tuple

from importlib_resources import files
from lxml.etree import Element as XmlElement
from lxml.etree import QName
from lxml.etree import XMLSyntaxError
from lxml.etree import _Comment as Comment
from lxml.etree import fromstring as parse_xml_string
from lxml.etree import parse as parse_xml_stream

from coneforge.algebra.core import DEFAULT_TOLERANCE
from coneforge.algebra.core import AlgebraDescriptor
from coneforge.algebra.core import ConeForgeError
from coneforge.algebra.core import InvalidInput
from coneforge.algebra.core import Tolerance
from coneforge.lab import Law
from coneforge.lab import LogFamily
from coneforge.lab.batteries import axiom_battery
from coneforge.lab.batteries import closed_form_battery
from coneforge.lab.batteries import formula_battery
from coneforge.lab.batteries import split_battery
from coneforge.lab.batteries import triangular_battery
from coneforge.lab.laws import cauchy_control
from coneforge.lab.laws import cauchy_family
from coneforge.lab.laws import character_multiplicativity
from coneforge.lab.laws import check_cauchy
from coneforge.lab.laws import det_multiplicativity
from coneforge.lab.laws import k_invariance_reduction_check
from coneforge.lab.laws import planted_pexider_check
from coneforge.lab.report import ResidualReport
from coneforge.lab.witness import WITNESS_TOLERANCE
from coneforge.lab.witness import witness_grid
from coneforge.peirce import JordanFrame
from coneforge.peirce import standard_frame


_logger = logging.getLogger(__name__)

SUITE_NAMESPACE = "urn:coneforge:suite"


class SuiteBuilderError(ConeForgeError):
    """Suite builder generic error."""

    pass


@dataclass(frozen=True)
class LawRun:
    """A single parametrised check of the verification lab.

    The ``algorithm`` selects the multiplication algorithm of the laws that
    are stated for either of them, like determinant multiplicativity.
    """

    law: Law
    desc: AlgebraDescriptor
    samples: int = 1000
    seed: int = 42
    tol: Tolerance = DEFAULT_TOLERANCE
    workers: int = 1
    control: bool = False
    algorithm: Law = Law.W1
    s: Optional[Tuple[float, ...]] = None
    n_alpha: int = 10
    frame: Optional[JordanFrame] = None

    def __post_init__(self) -> None:
        """Validate the run parameters."""
        if self.samples < 1:
            raise InvalidInput(f"The number of samples must be positive: {self}")
        if self.algorithm not in (Law.W1, Law.W2):
            raise InvalidInput(f"'{self.algorithm.value}' is not an algorithm")
        if self.control and self.law not in (Law.W1, Law.W2):
            raise InvalidInput(f"No negative control for '{self.law.value}'")
        if self.frame is not None and self.frame.descriptor != self.desc:
            raise InvalidInput(f"Frame of {self.frame.descriptor} used on {self.desc}")

    def __call__(self) -> ResidualReport:
        """Run the check."""
        _logger.debug("Running %s", self)
        return _RUNNERS[self.law](self)

    def __str__(self) -> str:
        """Short label of the run."""
        label = f"{self.law.value}[{self.desc}]"
        if self.law in (Law.DET_MULT, Law.PEXIDER):
            label += f"/{self.algorithm.value}"
        return label + (" control" if self.control else "")


def _cauchy(run: LawRun) -> ResidualReport:
    if run.control:
        return cauchy_control(
            run.law, run.desc, run.samples, run.seed, run.tol, run.workers
        )

    if run.s is None:
        family = cauchy_family(run.law, run.desc, run.seed, run.frame)
    elif run.law is Law.W1:
        if len(run.s) != 1:
            raise InvalidInput("The w1 family takes a single exponent")
        family = LogFamily.log_det(run.s[0])
    else:
        family = LogFamily.log_minors(run.s, run.frame or standard_frame(run.desc))

    return check_cauchy(
        run.law,
        family,
        run.frame,
        run.samples,
        run.seed,
        run.tol,
        run.desc,
        run.workers,
    )


def _battery(fn: Callable[..., ResidualReport]) -> Callable[[LawRun], ResidualReport]:
    def runner(run: LawRun) -> ResidualReport:
        return fn(run.desc, run.samples, run.seed, run.tol, run.workers)

    return runner


def _witness(run: LawRun) -> ResidualReport:
    tol = WITNESS_TOLERANCE if run.tol == DEFAULT_TOLERANCE else run.tol
    return witness_grid(run.desc, n_alpha=run.n_alpha, tol=tol)


_RUNNERS: Dict[Law, Callable[[LawRun], ResidualReport]] = {
    Law.W1: _cauchy,
    Law.W2: _cauchy,
    Law.DET_MULT: lambda run: det_multiplicativity(
        run.algorithm,
        run.desc,
        run.samples,
        run.seed,
        run.tol,
        run.frame,
        run.workers,
    ),
    Law.PEXIDER: lambda run: planted_pexider_check(
        run.algorithm,
        run.desc,
        run.samples,
        run.seed,
        run.tol,
        run.frame,
        run.workers,
    ),
    Law.CHARACTER: lambda run: character_multiplicativity(
        run.desc, run.samples, run.seed, run.tol, run.s, run.workers
    ),
    Law.K_INVARIANCE: lambda run: k_invariance_reduction_check(
        run.desc, run.samples, run.seed, run.tol, run.frame, run.workers
    ),
    Law.AXIOMS: _battery(axiom_battery),
    Law.SPLIT: _battery(split_battery),
    Law.FORMULAS: _battery(formula_battery),
    Law.TRIANGULAR: _battery(triangular_battery),
    Law.CLOSED_FORMS: _battery(closed_form_battery),
    Law.WITNESS: _witness,
}


class SuiteResult(NamedTuple):
    """The report of a suite entry."""

    run: LawRun
    report: ResidualReport


class Suite:
    """A named sequence of checks."""

    def __init__(self, name: str, runs: List[LawRun]) -> None:
        self.name = name
        self.runs = runs

    def run(self) -> List[SuiteResult]:
        """Run every check in order."""
        results = [SuiteResult(run, run()) for run in self.runs]
        _logger.debug(
            "Suite '%s': %d of %d checks passed",
            self.name,
            sum(_.report.passed for _ in results),
            len(results),
        )
        return results

    def __len__(self) -> int:
        """The number of checks."""
        return len(self.runs)


def _validate_ns(node: XmlElement) -> None:
    if QName(node).namespace != SUITE_NAMESPACE:
        raise SuiteBuilderError(f"Node '{QName(node).localname}' has invalid namespace")


def _flag(value: str) -> bool:
    if value.lower() in ("true", "yes", "1"):
        return True
    if value.lower() in ("false", "no", "0"):
        return False
    raise ValueError(f"Invalid flag '{value}'")


_CONVERTERS: Dict[str, Tuple[str, Callable[[str], Any]]] = {
    "samples": ("samples", int),
    "seed": ("seed", int),
    "workers": ("workers", int),
    "control": ("control", _flag),
    "algorithm": ("algorithm", Law),
    "n-alpha": ("n_alpha", int),
    "s": ("s", lambda v: tuple(float(_) for _ in v.split(","))),
}


class SuiteBuilder:
    """Suite builder class.

    Suites are XML documents whose root is a ``suite`` node in the coneforge
    suite namespace. Each child node is named after a law and carries the
    ``algebra`` and ``size`` attributes, plus any run parameter overriding the
    suite defaults.
    """

    def __init__(self, suite_node: XmlElement) -> None:
        _validate_ns(suite_node)
        if QName(suite_node).localname != "suite":
            raise SuiteBuilderError(
                f"Expected a suite root node, got '{QName(suite_node).localname}'"
            )
        self._root = suite_node

    def _parse_run(self, node: XmlElement, defaults: LawRun) -> LawRun:
        _validate_ns(node)
        tag = QName(node).localname
        attrib = dict(node.attrib)
        try:
            law = Law(tag)
        except ValueError:
            raise SuiteBuilderError(f"Unknown check: {tag}") from None

        try:
            desc = AlgebraDescriptor.of(attrib.pop("algebra"), int(attrib.pop("size")))
        except KeyError as e:
            raise SuiteBuilderError(f"Check '{tag}' is missing {e}") from None
        except (ValueError, InvalidInput) as e:
            raise SuiteBuilderError(f"Check '{tag}' has an invalid algebra") from e

        params: Dict[str, Any] = {}
        tol = defaults.tol
        try:
            if "tol-abs" in attrib:
                tol = replace(tol, abs=float(attrib.pop("tol-abs")))
            if "tol-rel" in attrib:
                tol = replace(tol, rel=float(attrib.pop("tol-rel")))
            for attr, value in attrib.items():
                try:
                    name, convert = _CONVERTERS[attr]
                except KeyError:
                    raise SuiteBuilderError(
                        f"Unknown attribute '{attr}' for check '{tag}'"
                    ) from None
                params[name] = convert(value)
            return replace(defaults, law=law, desc=desc, tol=tol, **params)
        except (ValueError, InvalidInput) as e:
            raise SuiteBuilderError(f"Invalid parameters for check '{tag}'") from e

    def build(
        self,
        seed: int = 42,
        tol: Tolerance = DEFAULT_TOLERANCE,
        workers: int = 1,
    ) -> Suite:
        """Build the suite.

        The arguments are the defaults of the checks that do not override
        them.
        """
        defaults = LawRun(
            Law.W1, AlgebraDescriptor.sym_real(1), seed=seed, tol=tol, workers=workers
        )

        runs = [
            self._parse_run(node, defaults)
            for node in self._root
            if not isinstance(node, Comment)
        ]
        if not runs:
            raise SuiteBuilderError("The suite has no checks")

        return Suite(self._root.attrib.get("name", "suite"), runs)

    @classmethod
    def from_stream(cls, stream: IO) -> "SuiteBuilder":
        """Build suite from a stream."""
        try:
            return cls(parse_xml_stream(stream).getroot())
        except XMLSyntaxError as e:
            raise SuiteBuilderError(f"Malformed suite: {e}") from None

    @classmethod
    def from_resource(cls, module: str, resource: str) -> "SuiteBuilder":
        """Build suite from a resource file."""
        return cls(
            parse_xml_string(
                files(module).joinpath(resource).read_text(encoding="utf8").encode()
            )
        )


def acceptance_suite(
    seed: int = 42, tol: Tolerance = DEFAULT_TOLERANCE, workers: int = 1
) -> Suite:
    """The packaged acceptance battery."""
    return SuiteBuilder.from_resource("coneforge.lab", "acceptance.suite").build(
        seed, tol, workers
    )

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

import asyncio
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from dataclasses import replace
from typing import Any
from typing import Callable
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple
from typing import TypeVar

import numpy as np

from coneforge.algebra.core import DEFAULT_TOLERANCE
from coneforge.algebra.core import ConeForgeError
from coneforge.algebra.core import InvalidInput
from coneforge.algebra.core import Tolerance
from coneforge.lab import Law
from coneforge.lab.sampling import rng_for


_logger = logging.getLogger(__name__)

# Negative controls must miss by at least this much
CONTROL_MARGIN = 0.01
REL_FLOOR = 1e-300

T = TypeVar("T")
Pair = Tuple[Any, Any]
SampleCheck = Callable[[np.random.Generator], Sequence[Pair]]


@dataclass(frozen=True)
class ResidualReport:
    """Outcome of a residual check over a batch of samples."""

    law: Law
    samples: int
    max_abs_residual: float
    max_rel_residual: float
    seed: int
    passed: bool
    control: bool = False


class ToleranceExceeded(ConeForgeError):
    """Residuals exceed the tolerance."""

    def __init__(self, report: ResidualReport, message: Optional[str] = None) -> None:
        super().__init__(
            message
            or f"{report.law.value} residuals exceed the tolerance "
            f"(max abs {report.max_abs_residual:g}, "
            f"max rel {report.max_rel_residual:g})"
        )
        self.report = report


class ResidualAccumulator:
    """Collect the residuals of pairs of values that should coincide.

    A pair ``(a, b)`` of reals or arrays passes when every entry satisfies the
    tolerance comparison.
    """

    def __init__(self, tol: Tolerance = DEFAULT_TOLERANCE) -> None:
        self.tol = tol
        self.checks = 0
        self.failures = 0
        self.max_abs = 0.0
        self.max_rel = 0.0

    def add(self, a: Any, b: Any) -> bool:
        """Add a pair of values."""
        a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
        diff = np.abs(a - b)
        scale = np.maximum(np.abs(a), np.abs(b))

        self.checks += 1
        if not np.all(np.isfinite(diff)):
            self.failures += 1
            self.max_abs = self.max_rel = float("inf")
            return False

        self.max_abs = max(self.max_abs, float(np.max(diff, initial=0.0)))
        # Entries below the absolute tolerance are compared on the absolute scale
        floor = max(self.tol.abs, REL_FLOOR)
        self.max_rel = max(
            self.max_rel,
            float(np.max(diff / np.maximum(scale, floor), initial=0.0)),
        )

        passed = self.tol.allclose(a, b)
        if not passed:
            self.failures += 1
        return passed

    def flag(self, condition: bool) -> None:
        """Record a check without a residual."""
        self.checks += 1
        if not condition:
            self.failures += 1

    @property
    def passed(self) -> bool:
        """Whether every check passed."""
        return not self.failures

    def report(self, law: Law, samples: int, seed: int) -> ResidualReport:
        """Summarize the collected residuals."""
        report = ResidualReport(
            law, samples, self.max_abs, self.max_rel, seed, self.passed
        )
        _logger.debug(
            "%s: %d samples, %d checks, %d failures, max abs %g, max rel %g",
            law.value,
            samples,
            self.checks,
            self.failures,
            self.max_abs,
            self.max_rel,
        )
        return report


def sample_map(
    fn: Callable[[np.random.Generator], T], n_samples: int, seed: int, workers: int = 1
) -> List[T]:
    """Evaluate ``fn`` on the random stream of every sample index.

    With more than one worker the samples are spread over a thread pool. The
    results are returned in sample order in either case.
    """
    if n_samples < 1:
        raise InvalidInput(f"The number of samples must be positive, got {n_samples}")
    if workers < 1:
        raise InvalidInput(f"The number of workers must be positive, got {workers}")

    if workers == 1:
        return [fn(rng_for(seed, i)) for i in range(n_samples)]

    async def gather() -> List[T]:
        loop = asyncio.get_running_loop()
        with ThreadPoolExecutor(max_workers=workers) as executor:
            return await asyncio.gather(
                *(
                    loop.run_in_executor(executor, fn, rng_for(seed, i))
                    for i in range(n_samples)
                )
            )

    return list(asyncio.run(gather()))


def run_law(
    law: Law,
    check: SampleCheck,
    n_samples: int,
    seed: int,
    tol: Tolerance = DEFAULT_TOLERANCE,
    workers: int = 1,
) -> ResidualReport:
    """Run a per-sample check and summarize it into a report."""
    accumulator = ResidualAccumulator(tol)
    for pairs in sample_map(check, n_samples, seed, workers):
        for a, b in pairs:
            accumulator.add(a, b)
    return accumulator.report(law, n_samples, seed)


def negative_control(report: ResidualReport) -> ResidualReport:
    """Turn the report of a law that must fail into a control report.

    The control passes when the underlying report fails by more than 0.01.
    """
    passed = not report.passed and report.max_abs_residual > CONTROL_MARGIN
    if not passed:
        _logger.warning(
            "Negative control for %s did not fail (max abs %g)",
            report.law.value,
            report.max_abs_residual,
        )
    return replace(report, passed=passed, control=True)

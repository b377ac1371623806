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
from typing import Callable
from typing import List
from typing import NamedTuple
from typing import Optional
from typing import Tuple

import numpy as np

from coneforge.algebra.core import DEFAULT_TOLERANCE
from coneforge.algebra.core import AlgebraDescriptor
from coneforge.algebra.core import Element
from coneforge.algebra.core import InvalidInput
from coneforge.algebra.core import Operator
from coneforge.algebra.core import Tolerance
from coneforge.algebra.core import det
from coneforge.algebra.core import identity
from coneforge.algebra.core import power
from coneforge.algebra.core import quad_rep
from coneforge.algebra.core import sqrt
from coneforge.algebra.core import trace
from coneforge.lab import Law
from coneforge.lab import LogFamily
from coneforge.lab.report import Pair
from coneforge.lab.report import ResidualAccumulator
from coneforge.lab.report import ResidualReport
from coneforge.lab.report import ToleranceExceeded
from coneforge.lab.report import negative_control
from coneforge.lab.report import run_law
from coneforge.lab.sampling import random_automorphism
from coneforge.lab.sampling import random_cone_element
from coneforge.lab.sampling import random_exponents
from coneforge.lab.sampling import random_frame
from coneforge.lab.sampling import random_k_automorphism
from coneforge.lab.sampling import rng_for
from coneforge.peirce import JordanFrame
from coneforge.peirce import rotate_frame
from coneforge.peirce import standard_frame
from coneforge.triangular import TriangularDecomposition
from coneforge.triangular import delta_s
from coneforge.triangular import random_triangular
from coneforge.triangular import svector
from coneforge.triangular import t_apply
from coneforge.triangular import triangular_decompose
from coneforge.triangular import triangular_operator


_logger = logging.getLogger(__name__)

Algorithm = Callable[[Element], Operator]
ScalarFunction = Callable[[Element], float]


def w1_operator(x: Element) -> Operator:
    """The multiplication algorithm ``w_1(x) = P(x^(1/2))``."""
    return quad_rep(sqrt(x))


def w1_apply(x: Element, y: Element) -> Element:
    """Apply ``w_1(x)`` to ``y``."""
    return w1_operator(x)(y)


def w2_operator(x: Element, frame: JordanFrame) -> Operator:
    """The multiplication algorithm ``w_2(x) = t_x``."""
    return triangular_operator(triangular_decompose(x, frame))


def w2_apply(x: Element, y: Element, frame: JordanFrame) -> Element:
    """Apply ``w_2(x)`` to ``y``."""
    return w2_operator(x, frame)(y)


def polar_factor(x: Element, frame: JordanFrame) -> Operator:
    """The factor ``k_x = P(x^(-1/2)) t_x`` in ``t_x = P(x^(1/2)) k_x``."""
    return quad_rep(power(x, -0.5)) @ w2_operator(x, frame)


def multiplication_algorithm(
    law: Law, frame: Optional[JordanFrame] = None
) -> Algorithm:
    """The operator valued map of a multiplication algorithm."""
    if law is Law.W1:
        return w1_operator
    if law is Law.W2:
        if frame is None:
            raise InvalidInput("The w2 algorithm needs a Jordan frame")
        return lambda x: w2_operator(x, frame)
    raise InvalidInput(f"'{law.value}' is not a multiplication algorithm")


def _resolve(
    law: Law,
    desc: Optional[AlgebraDescriptor],
    frame: Optional[JordanFrame],
    family: Optional[LogFamily] = None,
) -> Tuple[AlgebraDescriptor, Optional[JordanFrame]]:
    if desc is None:
        source = frame or (family.frame if family is not None else None)
        if source is None:
            raise InvalidInput("Cannot infer the algebra without a frame")
        desc = source.descriptor
    if law is Law.W2 and frame is None:
        frame = standard_frame(desc)
    return desc, frame


def check_cauchy(
    law: Law,
    family: LogFamily,
    frame: Optional[JordanFrame] = None,
    n_samples: int = 1000,
    seed: int = 42,
    tol: Tolerance = DEFAULT_TOLERANCE,
    desc: Optional[AlgebraDescriptor] = None,
    workers: int = 1,
) -> ResidualReport:
    """Residuals of ``f(x) + f(w(e) y) = f(w(x) y)`` on random cone pairs.

    The w2 algorithm runs on the given frame, by default the standard frame.
    The family may refer to a different frame, which is how the frame
    mismatch control is built.
    """
    desc, frame = _resolve(law, desc, frame, family)
    w = multiplication_algorithm(law, frame)
    we = w(identity(desc))

    def check(rng: np.random.Generator) -> List[Pair]:
        x, y = random_cone_element(desc, rng), random_cone_element(desc, rng)
        return [(family(x) + family(we(y)), family(w(x)(y)))]

    return run_law(law, check, n_samples, seed, tol, workers)


def cauchy_family(
    law: Law, desc: AlgebraDescriptor, seed: int, frame: Optional[JordanFrame] = None
) -> LogFamily:
    """The solution family of the law.

    This is ``log det`` for w1 and ``sum_k s_k log D_k`` with exponents drawn
    from [-2, 2] for w2.
    """
    if law is Law.W1:
        return LogFamily.log_det()
    frame = frame or standard_frame(desc)
    return LogFamily.log_minors(
        random_exponents(len(frame), np.random.default_rng(seed)), frame
    )


def cauchy_control(
    law: Law,
    desc: AlgebraDescriptor,
    n_samples: int = 1000,
    seed: int = 42,
    tol: Tolerance = DEFAULT_TOLERANCE,
    workers: int = 1,
) -> ResidualReport:
    """Negative control of the Cauchy check.

    Under w1 the first principal minor of the standard frame is used; under
    w2 the first principal minor of a frame rotated by a random element of K.
    Both must violate the equation.
    """
    if desc.rank < 2:
        raise InvalidInput("Negative controls need rank at least 2")

    frame = standard_frame(desc)
    s = np.eye(desc.rank)[0]
    if law is Law.W1:
        family = LogFamily.log_minors(s, frame)
    else:
        rotated = rotate_frame(frame, random_k_automorphism(desc, seed))
        family = LogFamily.log_minors(s, rotated)

    return negative_control(
        check_cauchy(law, family, frame, n_samples, seed, tol, desc, workers)
    )


def det_multiplicativity(
    law: Law,
    desc: AlgebraDescriptor,
    n_samples: int = 1000,
    seed: int = 42,
    tol: Tolerance = DEFAULT_TOLERANCE,
    frame: Optional[JordanFrame] = None,
    workers: int = 1,
) -> ResidualReport:
    """Relative residuals of ``det(w(y) x) = det(y) det(x)``."""
    desc, frame = _resolve(law, desc, frame)
    w = multiplication_algorithm(law, frame)

    def check(rng: np.random.Generator) -> List[Pair]:
        x, y = random_cone_element(desc, rng), random_cone_element(desc, rng)
        return [(det(w(y)(x)), det(y) * det(x))]

    return run_law(Law.DET_MULT, check, n_samples, seed, tol, workers)


class PexiderReduction(NamedTuple):
    """The constants and the logarithmic function of a Pexider triple."""

    a0: float
    b0: float
    f: ScalarFunction
    report: ResidualReport


def pexider_reduce(
    a_fn: ScalarFunction,
    b_fn: ScalarFunction,
    c_fn: ScalarFunction,
    law: Law,
    desc: AlgebraDescriptor,
    n_samples: int = 1000,
    seed: int = 42,
    tol: Tolerance = DEFAULT_TOLERANCE,
    frame: Optional[JordanFrame] = None,
    workers: int = 1,
) -> PexiderReduction:
    """Reduce ``a(x) + b(y) = c(w(x) y)`` to a logarithmic Cauchy equation.

    With ``b0 = b(e)`` and ``a0 = c(e) - b0`` the function ``f = c - a0 - b0``
    must satisfy ``a = f + a0``, ``b = f w(e) + b0`` and the w-logarithmic
    equation. Raise ToleranceExceeded when the sampled triple disagrees.
    """
    desc, frame = _resolve(law, desc, frame)
    w = multiplication_algorithm(law, frame)
    e = identity(desc)
    we = w(e)

    b0 = float(b_fn(e))
    a0 = float(c_fn(e)) - b0

    def f(x: Element) -> float:
        return float(c_fn(x)) - a0 - b0

    def check(rng: np.random.Generator) -> List[Pair]:
        x, y = random_cone_element(desc, rng), random_cone_element(desc, rng)
        wxy = w(x)(y)
        fx, fy = f(x), f(y)
        return [
            (a_fn(x) + b_fn(y), c_fn(wxy)),
            (a_fn(x), fx + a0),
            (b_fn(y), f(we(y)) + b0),
            (fx + f(we(y)), f(wxy)),
        ]

    report = run_law(Law.PEXIDER, check, n_samples, seed, tol, workers)
    if not report.passed:
        raise ToleranceExceeded(report, "The Pexider triple is inconsistent")

    _logger.debug("Pexider constants a0 = %g, b0 = %g", a0, b0)

    return PexiderReduction(a0, b0, f, report)


def triangular_character(d: TriangularDecomposition, s: Any) -> float:
    """The character ``h(t) = D_s(t e)`` of the triangular group."""
    return delta_s(t_apply(d, identity(d.descriptor)), s, d.frame)


def character_multiplicativity(
    desc: AlgebraDescriptor,
    n_samples: int = 1000,
    seed: int = 42,
    tol: Tolerance = DEFAULT_TOLERANCE,
    s: Optional[Any] = None,
    workers: int = 1,
) -> ResidualReport:
    """Relative residuals of ``h(t t') = h(t) h(t')`` on random triangular pairs.

    Each sample draws its own frame and two triangular elements on it. The
    composed element is decomposed again before evaluating its character.
    """
    if s is None:
        s = random_exponents(desc.rank, np.random.default_rng(seed))
    s = svector(s, desc.rank)
    e = identity(desc)

    def check(rng: np.random.Generator) -> List[Pair]:
        frame = random_frame(desc, rng)
        d1, d2 = random_triangular(frame, rng), random_triangular(frame, rng)
        composed = triangular_operator(d1) @ triangular_operator(d2)
        d12 = triangular_decompose(composed(e), frame)
        return [
            (
                triangular_character(d12, s),
                triangular_character(d1, s) * triangular_character(d2, s),
            )
        ]

    return run_law(Law.CHARACTER, check, n_samples, seed, tol, workers)


def k_invariance_reduction_check(
    desc: AlgebraDescriptor,
    n_samples: int = 1000,
    seed: int = 42,
    tol: Tolerance = DEFAULT_TOLERANCE,
    frame: Optional[JordanFrame] = None,
    workers: int = 1,
) -> ResidualReport:
    """Check the polar reduction of the K-invariant case.

    For each sample, ``log det`` is K-invariant and solves both the w2 and the
    w1 equations, and ``k_x = P(x^(-1/2)) t_x`` is an isometry fixing e.
    """
    frame = frame or standard_frame(desc)
    f = LogFamily.log_det()
    e = identity(desc)
    eye = np.eye(desc.ambient_dim)

    def check(rng: np.random.Generator) -> List[Pair]:
        x, y = random_cone_element(desc, rng), random_cone_element(desc, rng)
        k = random_automorphism(desc, rng)
        kx = polar_factor(x, frame).matrix
        return [
            (f(k(x)), f(x)),
            (f(x) + f(y), f(w2_apply(x, y, frame))),
            (f(x) + f(y), f(w1_apply(x, y))),
            (kx @ e.coords, e.coords),
            (kx.T @ kx, eye),
        ]

    return run_law(Law.K_INVARIANCE, check, n_samples, seed, tol, workers)


def planted_pexider_check(
    law: Law,
    desc: AlgebraDescriptor,
    n_samples: int = 1000,
    seed: int = 42,
    tol: Tolerance = DEFAULT_TOLERANCE,
    frame: Optional[JordanFrame] = None,
    workers: int = 1,
) -> ResidualReport:
    """Recover a planted Pexider triple and reject a perturbed one.

    The triple ``(log det + 2, log det - 1, log det + 1)`` must reduce to
    ``a0 = 2``, ``b0 = -1`` and ``f = log det``. Adding ``0.1 tr`` to the
    third function must make the reduction fail.
    """
    f = LogFamily.log_det()

    def a_fn(x: Element) -> float:
        return f(x) + 2

    def b_fn(x: Element) -> float:
        return f(x) - 1

    def c_fn(x: Element) -> float:
        return f(x) + 1

    def c_bad(x: Element) -> float:
        return c_fn(x) + 0.1 * trace(x)

    args = (law, desc, n_samples, seed, tol, frame, workers)
    try:
        reduction = pexider_reduce(a_fn, b_fn, c_fn, *args)
    except ToleranceExceeded as exc:
        return exc.report

    accumulator = ResidualAccumulator(tol)
    accumulator.add(reduction.a0, 2.0)
    accumulator.add(reduction.b0, -1.0)
    for i in range(n_samples):
        x = random_cone_element(desc, rng_for(seed, i))
        accumulator.add(reduction.f(x), f(x))

    try:
        pexider_reduce(a_fn, b_fn, c_bad, *args)
        _logger.warning("A perturbed Pexider triple was not rejected")
        accumulator.flag(False)
    except ToleranceExceeded:
        accumulator.flag(True)

    return accumulator.report(Law.PEXIDER, n_samples, seed)

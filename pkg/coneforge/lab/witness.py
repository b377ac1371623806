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
from typing import NamedTuple
from typing import Sequence
from typing import Tuple

import numpy as np

from coneforge import AlgebraKind
from coneforge.algebra.core import AlgebraDescriptor
from coneforge.algebra.core import Element
from coneforge.algebra.core import InvalidInput
from coneforge.algebra.core import Tolerance
from coneforge.algebra.core import identity
from coneforge.algebra.core import is_in_cone
from coneforge.algebra.core import jordan_product
from coneforge.algebra.core import quad_rep
from coneforge.algebra.core import square
from coneforge.algebra.core import trace_inner
from coneforge.lab import Law
from coneforge.lab.report import ResidualAccumulator
from coneforge.lab.report import ResidualReport
from coneforge.lab.report import ToleranceExceeded
from coneforge.peirce import is_primitive_idempotent
from coneforge.peirce import standard_frame


_logger = logging.getLogger(__name__)

WITNESS_TOLERANCE = Tolerance(abs=1e-8, rel=1e-9)
DENOMINATOR_EPS = 1e-12

# Probes past the upper end of the admissible interval
OUTSIDE_FACTOR = 1.01
GRID_LAMBDA2S = (0.1, 0.25, 0.5, 0.75, 0.9)


class WitnessBasis(NamedTuple):
    """Orthogonal primitive idempotents ``a``, ``c`` and a unit ``z`` between them."""

    a: Element
    c: Element
    z: Element


@dataclass(frozen=True)
class WitnessPair:
    """A pair of cone elements separating ``H_a`` from ``H_b``.

    The pair satisfies ``P(x) y^2 = alpha a + (e - a)`` and
    ``P(y) x^2 = alpha b + (e - b)`` with ``b = l^2 a + m^2 c + l m z``.
    """

    lambda2: float
    alpha: float
    x: Element
    y: Element
    b: Element


def alpha_upper_bound(lambda2: float) -> float:
    """The upper end ``l^8 / (1 + l^2)^2`` of the admissible interval."""
    return lambda2**4 / (1 + lambda2) ** 2


def _check_lambda2(lambda2: float) -> None:
    if not 0 < lambda2 < 1:
        raise InvalidInput(f"lambda^2 must lie in (0, 1), got {lambda2}")


def _coefficients(
    lambda2: float, alpha: float
) -> Tuple[Tuple[float, float, float], Tuple[float, float, float]]:
    lam, mu2 = np.sqrt(lambda2), 1 - lambda2
    mu = np.sqrt(mu2)
    sa = np.sqrt(alpha)
    lm2 = lambda2 * mu2

    denom = alpha * (1 - lambda2**2) + 2 * sa * lambda2 - lambda2**2 * (1 - mu2**2)
    if abs(denom) <= DENOMINATOR_EPS:
        raise InvalidInput(
            f"The witness constant is singular at lambda^2 = {lambda2}, alpha = {alpha}"
        )
    const = (1 - sa) * lam**3 * (1 + lm2) / denom

    x1 = const * sa * mu2 * (lambda2 + sa * (1 + lambda2) * mu2) / (1 + lm2)
    x2 = const * ((1 - sa) / (1 + lm2) - mu2)
    x3 = const * sa * lam * mu

    y3 = -(sa + lm2) / ((1 - sa) * lam**3 * mu)

    # Both identities are even in the (a, c, z) block of x
    if x1 + x2 < 0:
        x1, x2, x3 = -x1, -x2, -x3

    return (x1, x2, x3), (1 / lm2, 1.0, y3)


def witness_elements(
    a: Element, c: Element, z: Element, lambda2: float, alpha: float
) -> WitnessPair:
    """Build the witness pair without checking cone membership or residuals.

    Values of alpha outside the admissible interval are accepted.
    """
    _check_lambda2(lambda2)
    if not 0 < alpha < 1:
        raise InvalidInput(f"alpha must lie in (0, 1), got {alpha}")

    (x1, x2, x3), (y1, y2, y3) = _coefficients(lambda2, alpha)
    rest = identity(a.descriptor) - a - c
    lam, mu = np.sqrt(lambda2), np.sqrt(1 - lambda2)

    return WitnessPair(
        lambda2,
        alpha,
        x1 * a + x2 * c + x3 * z + rest,
        y1 * a + y2 * c + y3 * z + rest,
        lambda2 * a + (1 - lambda2) * c + (lam * mu) * z,
    )


def _validate_basis(a: Element, c: Element, z: Element, tol: Tolerance) -> None:
    for name, p in (("a", a), ("c", c)):
        if not is_primitive_idempotent(p, tol):
            raise InvalidInput(f"'{name}' is not a primitive idempotent")
    if not tol.allclose(jordan_product(a, c).coords, 0.0):
        raise InvalidInput("'a' and 'c' are not orthogonal")
    for name, p in (("a", a), ("c", c)):
        if not tol.allclose(jordan_product(p, z).coords, 0.5 * z.coords):
            raise InvalidInput(f"'z' is not in the Peirce space of '{name}' for 1/2")
    if not tol.close(trace_inner(z, z), 2.0):
        raise InvalidInput("'z' must have squared trace norm 2")


def witness_targets(
    pair: WitnessPair, a: Element
) -> Sequence[Tuple[Element, Element]]:
    """The two identities of the pair as (computed, expected) elements."""
    e = identity(a.descriptor)
    alpha = pair.alpha
    return (
        (quad_rep(pair.x)(square(pair.y)), alpha * a + (e - a)),
        (quad_rep(pair.y)(square(pair.x)), alpha * pair.b + (e - pair.b)),
    )


def detwth_witness(
    a: Element,
    c: Element,
    z: Element,
    lambda2: float,
    alpha: float,
    tol: Tolerance = WITNESS_TOLERANCE,
) -> WitnessPair:
    """Build and verify the witness pair for ``H_a = H_b``.

    Here ``a`` and ``c`` are orthogonal primitive idempotents and ``z`` lies in
    both their Peirce spaces for 1/2 with squared norm 2. Alpha must lie in the
    open interval ``(0, alpha_upper_bound(lambda2))``.
    """
    _check_lambda2(lambda2)
    bound = alpha_upper_bound(lambda2)
    if not 0 < alpha < bound:
        raise InvalidInput(
            f"alpha must lie in (0, {bound:g}) for lambda^2 = {lambda2}, got {alpha}"
        )
    _validate_basis(a, c, z, tol)

    pair = witness_elements(a, c, z, lambda2, alpha)

    accumulator = ResidualAccumulator(tol)
    for lhs, rhs in witness_targets(pair, a):
        accumulator.add(lhs.coords, rhs.coords)
    accumulator.flag(is_in_cone(pair.x) and is_in_cone(pair.y))

    report = accumulator.report(Law.WITNESS, 1, 0)
    if not report.passed:
        raise ToleranceExceeded(report)

    return pair


def witness_basis(desc: AlgebraDescriptor) -> WitnessBasis:
    """The canonical witness idempotents of the algebra.

    For symmetric matrices these are the first two diagonal units with the
    symmetric off-diagonal unit between them; for the Lorentz algebra they are
    ``c_u``, ``c_u^perp`` with ``u = e_1`` and ``z = (0, e_2)``.
    """
    if desc.rank < 2:
        raise InvalidInput(f"The witness needs rank at least 2, {desc} has rank 1")
    frame = standard_frame(desc)

    if desc.kind is AlgebraKind.SYM_REAL:
        # The coordinate of the symmetric unit (1, 2) is sqrt(2) times its entry
        z = np.zeros(desc.ambient_dim)
        z[desc.rank] = np.sqrt(2)
    else:
        z = np.zeros(desc.ambient_dim)
        z[2] = 1.0

    return WitnessBasis(frame[0], frame[1], Element(desc, z))


def witness_grid(
    desc: AlgebraDescriptor,
    lambda2s: Sequence[float] = GRID_LAMBDA2S,
    n_alpha: int = 10,
    tol: Tolerance = WITNESS_TOLERANCE,
) -> ResidualReport:
    """Run the witness over a grid of interior alphas.

    For every ``lambda^2`` the alphas ``k / (n + 1)`` times the upper bound,
    ``k = 1..n``, must give residuals within tolerance and cone members. The
    report also fails if no alpha at 1.01 times the bound breaks membership.
    """
    if n_alpha < 1:
        raise InvalidInput(f"The grid needs at least one alpha, got {n_alpha}")
    a, c, z = witness_basis(desc)
    _validate_basis(a, c, z, tol)

    accumulator = ResidualAccumulator(tol)
    broken = 0
    for lambda2 in lambda2s:
        _check_lambda2(lambda2)
        bound = alpha_upper_bound(lambda2)
        for k in range(1, n_alpha + 1):
            pair = witness_elements(a, c, z, lambda2, k * bound / (n_alpha + 1))
            for lhs, rhs in witness_targets(pair, a):
                accumulator.add(lhs.coords, rhs.coords)
            accumulator.flag(is_in_cone(pair.x) and is_in_cone(pair.y))

        outside = witness_elements(a, c, z, lambda2, OUTSIDE_FACTOR * bound)
        if not (is_in_cone(outside.x) and is_in_cone(outside.y)):
            broken += 1

    _logger.debug(
        "Witness grid on %s: %d of %d points outside the interval leave the cone",
        desc,
        broken,
        len(lambda2s),
    )
    accumulator.flag(broken > 0)

    return accumulator.report(Law.WITNESS, len(lambda2s) * n_alpha, 0)

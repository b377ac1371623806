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
from typing import Any
from typing import List
from typing import Tuple

import numpy as np

from coneforge.algebra.core import DEFAULT_TOLERANCE
from coneforge.algebra.core import STRICT_CONE_EPS
from coneforge.algebra.core import AlgebraDescriptor
from coneforge.algebra.core import ConeForgeError
from coneforge.algebra.core import DimensionMismatch
from coneforge.algebra.core import Element
from coneforge.algebra.core import InvalidInput
from coneforge.algebra.core import NotInCone
from coneforge.algebra.core import Operator
from coneforge.algebra.core import Tolerance
from coneforge.algebra.core import box
from coneforge.algebra.core import det
from coneforge.algebra.core import identity
from coneforge.algebra.core import lmap
from coneforge.algebra.core import quad_rep
from coneforge.algebra.core import square
from coneforge.algebra.core import trace
from coneforge.peirce import JordanFrame
from coneforge.peirce import NotIdempotent
from coneforge.peirce import is_idempotent
from coneforge.peirce import joint_peirce
from coneforge.peirce import peirce_projectors


_logger = logging.getLogger(__name__)

SVector = np.ndarray


class IndexOutOfRange(ConeForgeError):
    """The principal minor order is out of range."""

    pass


def svector(s: Any, rank: int) -> SVector:
    """Validate a vector of exponents for the given rank."""
    v = np.array(s, dtype=float).reshape(-1)
    if v.shape != (rank,):
        raise DimensionMismatch(f"Expected {rank} exponents, got {v.size}")
    if not np.all(np.isfinite(v)):
        raise InvalidInput("Exponents must be finite")
    return v


def frobenius(c: Element, z: Element, tol: Tolerance = DEFAULT_TOLERANCE) -> Operator:
    """The Frobenius transformation ``tau_c(z) = exp(2 z[]c)``.

    The exponential is the polynomial ``I + N + N^2 / 2`` since ``N = 2 z[]c``
    is nilpotent of order 3.
    """
    if not is_idempotent(c, tol):
        raise NotIdempotent(f"{c} is not an idempotent")
    if not tol.allclose(lmap(c)(z).coords, 0.5 * z.coords):
        raise InvalidInput("z is not in the Peirce space of c for 1/2")

    n = 2 * box(z, c)
    return Operator.identity(c.descriptor) + n + 0.5 * (n @ n)


@dataclass(frozen=True)
class TriangularDecomposition:
    """The parameters of ``t_x`` in the triangular group of a frame.

    With ``tau_j = tau_{c_j}(z_j)``, the element is recovered as
    ``tau_1 ... tau_{r-1} (sum_k alpha_k c_k)``.
    """

    frame: JordanFrame
    offdiag: Tuple[Element, ...]
    diag: np.ndarray

    def __post_init__(self) -> None:
        """Check the parameter counts."""
        r = len(self.frame)
        if len(self.offdiag) != r - 1 or np.shape(self.diag) != (r,):
            raise DimensionMismatch(
                f"A rank {r} decomposition needs {r - 1} Peirce vectors and "
                f"{r} diagonal entries"
            )
        if not np.all(np.asarray(self.diag) > 0):
            raise NotInCone("Triangular diagonal entries must be positive")

    @property
    def descriptor(self) -> AlgebraDescriptor:
        """The algebra of the decomposition."""
        return self.frame.descriptor

    @property
    def minors(self) -> np.ndarray:
        """The principal minors ``D_j = alpha_1 ... alpha_j``."""
        return np.cumprod(self.diag)

    @classmethod
    def trivial(cls, frame: JordanFrame) -> "TriangularDecomposition":
        """The decomposition of the identity element."""
        zero = Element.zero(frame.descriptor)
        return cls(frame, (zero,) * (len(frame) - 1), np.ones(len(frame)))


def triangular_decompose(
    x: Element, frame: JordanFrame, tol: Tolerance = DEFAULT_TOLERANCE
) -> TriangularDecomposition:
    """Generalized Cholesky decomposition by recursive elimination.

    At step j the pivot ``alpha_j`` is the trace of the projection onto
    ``E(c_j, 1)``, ``z_j`` is the half-space component scaled by the pivot,
    and the elimination continues in ``E(c_j, 0)``.
    """
    if x.descriptor != frame.descriptor:
        raise DimensionMismatch(f"Frame of {frame.descriptor} used on {x.descriptor}")

    e = identity(x.descriptor)
    threshold = max(tol.abs, STRICT_CONE_EPS * trace(x))
    alphas: List[float] = []
    zs: List[Element] = []

    rest = x
    for j, c in enumerate(frame):
        p1, phalf, p0 = peirce_projectors(c, tol)
        alpha = trace(p1(rest))
        if alpha <= threshold:
            _logger.debug("Pivot %d is %g, below %g", j + 1, alpha, threshold)
            raise NotInCone(f"Non-positive triangular pivot {alpha:g} at {j + 1}")
        alphas.append(alpha)

        if j == len(frame) - 1:
            break

        z = phalf(rest) / alpha
        zs.append(z)
        rest = p0(rest) - alpha * lmap(e - c)(square(z))

    return TriangularDecomposition(frame, tuple(zs), np.array(alphas))


def triangular_operator(d: TriangularDecomposition) -> Operator:
    """The operator ``t = tau_1 ... tau_{r-1} P(sum_k sqrt(alpha_k) c_k)``."""
    op = quad_rep(d.frame.combine(np.sqrt(d.diag)))
    for c, z in reversed(list(zip(d.frame, d.offdiag))):
        op = frobenius(c, z) @ op
    return op


def t_apply(d: TriangularDecomposition, y: Element) -> Element:
    """Apply the triangular group element of the decomposition."""
    return triangular_operator(d)(y)


def random_triangular(
    frame: JordanFrame, rng: np.random.Generator
) -> TriangularDecomposition:
    """Draw a triangular group element on the given frame.

    Diagonal entries are uniform in [0.5, 2]; each ``z_j`` collects the joint
    Peirce blocks ``E_jk``, ``k > j``, of a standard normal element.
    """
    desc = frame.descriptor
    r = len(frame)
    zs = []
    for j in range(r - 1):
        v = Element(desc, rng.standard_normal(desc.ambient_dim))
        blocks = joint_peirce(v, frame)
        zs.append(
            Element(
                desc, np.sum([blocks[(j, k)].coords for k in range(j + 1, r)], axis=0)
            )
        )
    return TriangularDecomposition(frame, tuple(zs), rng.uniform(0.5, 2.0, r))


def principal_minor(x: Element, k: int, frame: JordanFrame) -> float:
    """The principal minor of order k (1-based) with respect to the frame.

    The determinant of the subalgebra ``E(p_k, 1)`` is computed as
    ``det(P(p_k) x + e - p_k)``, the complement contributing eigenvalues 1.
    """
    if x.descriptor != frame.descriptor:
        raise DimensionMismatch(f"Frame of {frame.descriptor} used on {x.descriptor}")
    if not 1 <= k <= len(frame):
        raise IndexOutOfRange(f"Minor order {k} not in 1..{len(frame)}")

    p = frame.partial_sum(k)
    return det(quad_rep(p)(x) + identity(x.descriptor) - p)


def principal_minors(x: Element, frame: JordanFrame) -> np.ndarray:
    """All the principal minors ``D_1, ..., D_r``."""
    return np.array([principal_minor(x, k, frame) for k in range(1, len(frame) + 1)])


def delta_s(x: Element, s: Any, frame: JordanFrame) -> float:
    """The power function ``D_1^(s_1 - s_2) ... D_r^(s_r)``."""
    exponents = svector(s, len(frame))
    minors = principal_minors(x, frame)
    if np.any(minors <= 0):
        raise NotInCone(f"Principal minors {minors} are not all positive")

    return float(np.prod(minors ** (exponents - np.append(exponents[1:], 0.0))))

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

import numpy as np

from coneforge import AlgebraKind
from coneforge.algebra.core import AlgebraDescriptor
from coneforge.algebra.core import Element
from coneforge.algebra.core import InvalidInput
from coneforge.algebra.core import Operator
from coneforge.algebra.core import identity
from coneforge.algebra.core import square
from coneforge.algebra.core import trace
from coneforge.algebra.lorentz import rotation_operator
from coneforge.algebra.symreal import congruence_operator
from coneforge.peirce import JordanFrame
from coneforge.peirce import rotate_frame
from coneforge.peirce import standard_frame


# Relative distance of cone samples from the boundary
CONE_SHIFT = 0.1


def rng_for(seed: int, index: int) -> np.random.Generator:
    """The random stream of a single sample.

    Streams depend on the seed and the sample index only, so that any
    evaluation order reproduces the same draws.
    """
    try:
        return np.random.default_rng([seed, index])
    except (TypeError, ValueError):
        raise InvalidInput(f"Invalid seed {seed!r}") from None


def random_element(desc: AlgebraDescriptor, rng: np.random.Generator) -> Element:
    """An element with standard normal coordinates."""
    return Element(desc, rng.standard_normal(desc.ambient_dim))


def random_cone_element(desc: AlgebraDescriptor, rng: np.random.Generator) -> Element:
    """The square of a random element shifted into the interior of the cone.

    The shift is ``0.1 tr(v^2) / r`` times the identity.
    """
    v2 = square(random_element(desc, rng))
    return v2 + (CONE_SHIFT * trace(v2) / desc.rank) * identity(desc)


def random_exponents(
    rank: int, rng: np.random.Generator, bound: float = 2.0
) -> np.ndarray:
    """Exponents drawn uniformly from ``[-bound, bound]``."""
    return rng.uniform(-bound, bound, rank)


def random_orthogonal(
    n: int, rng: np.random.Generator, proper: bool = False
) -> np.ndarray:
    """A Haar distributed orthogonal matrix, optionally a rotation."""
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    q = q * np.where(np.diag(r) < 0, -1.0, 1.0)
    if proper and np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def random_automorphism(desc: AlgebraDescriptor, rng: np.random.Generator) -> Operator:
    """A random automorphism of the cone fixing the identity."""
    if desc.kind is AlgebraKind.SYM_REAL:
        return congruence_operator(desc, random_orthogonal(desc.rank, rng))
    return rotation_operator(
        desc, random_orthogonal(desc.ambient_dim - 1, rng, proper=True)
    )


def random_k_automorphism(desc: AlgebraDescriptor, seed: int) -> Operator:
    """A seeded random element of K.

    For symmetric matrices this is ``x -> Q.x.Q^T``; for the Lorentz algebra
    it is ``(x_0, x) -> (x_0, R x)`` with a random rotation R.
    """
    try:
        rng = np.random.default_rng(seed)
    except (TypeError, ValueError):
        raise InvalidInput(f"Invalid seed {seed!r}") from None
    return random_automorphism(desc, rng)


def random_frame(desc: AlgebraDescriptor, rng: np.random.Generator) -> JordanFrame:
    """The standard frame moved by a random automorphism."""
    return rotate_frame(standard_frame(desc), random_automorphism(desc, rng))

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
from typing import Dict
from typing import Iterator
from typing import Sequence
from typing import Tuple

import numpy as np

from coneforge.algebra.core import DEFAULT_TOLERANCE
from coneforge.algebra.core import AlgebraDescriptor
from coneforge.algebra.core import ConeForgeError
from coneforge.algebra.core import DimensionMismatch
from coneforge.algebra.core import Element
from coneforge.algebra.core import InvalidInput
from coneforge.algebra.core import Operator
from coneforge.algebra.core import Tolerance
from coneforge.algebra.core import identity
from coneforge.algebra.core import jordan_product
from coneforge.algebra.core import lmap
from coneforge.algebra.core import quad_rep
from coneforge.algebra.core import trace
from coneforge.algebra.core import trace_inner


_logger = logging.getLogger(__name__)

# Splitting is refused this close to orthogonal or coinciding idempotents
SPLIT_EPS = 1e-8

BlockIndex = Tuple[int, int]


class FrameIncomplete(ConeForgeError):
    """The idempotents do not form a Jordan frame."""

    pass


class NotIdempotent(ConeForgeError):
    """The element is not an idempotent."""

    pass


def is_idempotent(c: Element, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """Whether ``c^2 = c``."""
    return tol.allclose(jordan_product(c, c).coords, c.coords)


def is_primitive_idempotent(c: Element, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """Whether ``c`` is an idempotent of unit trace."""
    return is_idempotent(c, tol) and tol.close(trace(c), 1.0)


class JordanFrame:
    """A complete system of primitive orthogonal idempotents.

    The frame is validated on construction unless ``check`` is ``False``,
    which is reserved for frames that are correct by construction, like those
    coming out of a spectral decomposition.
    """

    __slots__ = ("idempotents",)

    def __init__(
        self,
        idempotents: Sequence[Element],
        tol: Tolerance = DEFAULT_TOLERANCE,
        check: bool = True,
    ) -> None:
        if not idempotents:
            raise FrameIncomplete("A Jordan frame needs at least one idempotent")
        self.idempotents: Tuple[Element, ...] = tuple(idempotents)
        if check:
            self.validate(tol)

    def validate(self, tol: Tolerance = DEFAULT_TOLERANCE) -> None:
        """Check the frame axioms, raising FrameIncomplete on failure."""
        desc = self.descriptor
        if any(c.descriptor != desc for c in self.idempotents):
            raise DimensionMismatch("Frame idempotents belong to different algebras")
        if len(self.idempotents) != desc.rank:
            raise FrameIncomplete(
                f"{desc} has rank {desc.rank} but {len(self.idempotents)} "
                "idempotents were given"
            )
        if not tol.allclose(self.partial_sum(desc.rank).coords, identity(desc).coords):
            raise FrameIncomplete("The idempotents do not sum to the identity")
        for i, ci in enumerate(self.idempotents):
            if not tol.close(trace(ci), 1.0):
                raise FrameIncomplete(f"Idempotent {i + 1} is not primitive")
            for j in range(i, len(self.idempotents)):
                cj = self.idempotents[j]
                expected = ci.coords if i == j else np.zeros(desc.ambient_dim)
                if not tol.allclose(jordan_product(ci, cj).coords, expected):
                    raise FrameIncomplete(
                        f"Idempotents {i + 1} and {j + 1} violate c_i c_j = d_ij c_i"
                    )

    @property
    def descriptor(self) -> AlgebraDescriptor:
        """The algebra the frame lives in."""
        return self.idempotents[0].descriptor

    @property
    def coords(self) -> np.ndarray:
        """The idempotent coordinates, one per row."""
        return np.vstack([c.coords for c in self.idempotents])

    def partial_sum(self, k: int) -> Element:
        """The idempotent ``p_k = c_1 + ... + c_k``."""
        return Element(self.descriptor, np.sum(self.coords[:k], axis=0))

    def combine(self, weights: Sequence[float]) -> Element:
        """The element ``sum_k w_k c_k``."""
        w = np.asarray(weights, dtype=float)
        if w.shape != (len(self),):
            raise DimensionMismatch(
                f"Expected {len(self)} weights, got shape {w.shape}"
            )
        return Element(self.descriptor, w @ self.coords)

    def __len__(self) -> int:
        """The rank of the frame."""
        return len(self.idempotents)

    def __getitem__(self, i: int) -> Element:
        """The i-th idempotent (0-based)."""
        return self.idempotents[i]

    def __iter__(self) -> Iterator[Element]:
        """Iterate over the idempotents."""
        return iter(self.idempotents)

    def __repr__(self) -> str:
        """Frame representation."""
        return f"JordanFrame({self.descriptor}, rank={len(self)})"


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues with the Jordan frame they refer to."""

    frame: JordanFrame
    eigenvalues: np.ndarray

    def reconstruct(self) -> Element:
        """The element ``sum_i l_i c_i``."""
        return self.frame.combine(self.eigenvalues)


@dataclass(frozen=True)
class PeirceBlocks:
    """The components of an element in the joint Peirce decomposition.

    Blocks are keyed by 0-based index pairs ``(i, j)`` with ``i <= j``.
    """

    frame: JordanFrame
    blocks: Dict[BlockIndex, Element]

    def __getitem__(self, index: BlockIndex) -> Element:
        """Get a block, in either index order."""
        i, j = index
        return self.blocks[(min(i, j), max(i, j))]

    def total(self) -> Element:
        """The sum of all the blocks."""
        return Element(
            self.frame.descriptor,
            np.sum([b.coords for b in self.blocks.values()], axis=0),
        )


@dataclass(frozen=True)
class IdempotentSplit:
    """Splitting of a primitive idempotent against a non-orthogonal one.

    Given ``a`` and ``b``, the split satisfies ``b = l^2 a + m^2 c + l m z``
    with ``c`` a primitive idempotent orthogonal to ``a`` and ``z`` in the
    joint half space of ``a`` and ``c``.
    """

    lam: float
    mu: float
    c: Element
    z: Element


def spectral_decompose(x: Element) -> SpectralDecomposition:
    """Spectral decomposition with eigenvalues in descending order."""
    values, frame = x.descriptor.algebra.spectral(x.coords)
    return SpectralDecomposition(
        JordanFrame([Element(x.descriptor, c) for c in frame], check=False),
        np.array(values, dtype=float),
    )


def peirce_projectors(
    c: Element, tol: Tolerance = DEFAULT_TOLERANCE
) -> Tuple[Operator, Operator, Operator]:
    """The projectors onto the eigenspaces of L(c) for 1, 1/2 and 0."""
    if not is_idempotent(c, tol):
        raise NotIdempotent(f"{c} is not an idempotent")

    lc = lmap(c)
    lc2 = lc @ lc
    eye = Operator.identity(c.descriptor)

    return (
        2 * lc2 - lc,
        4 * lc - 4 * lc2,
        2 * lc2 - 3 * lc + eye,
    )


def joint_peirce(x: Element, frame: JordanFrame) -> PeirceBlocks:
    """Decompose ``x`` into the blocks ``E_ij`` of the frame."""
    if x.descriptor != frame.descriptor:
        raise DimensionMismatch(f"Frame of {frame.descriptor} used on {x.descriptor}")
    frame.validate()

    ls = [lmap(c) for c in frame]
    blocks: Dict[BlockIndex, Element] = {}
    for i, li in enumerate(ls):
        blocks[(i, i)] = quad_rep(frame[i])(x)
        for j in range(i + 1, len(ls)):
            blocks[(i, j)] = 4 * (li @ ls[j])(x)

    return PeirceBlocks(frame, blocks)


def nonorthogonal_split(
    a: Element, b: Element, tol: Tolerance = DEFAULT_TOLERANCE
) -> IdempotentSplit:
    """Split ``b`` along ``a`` for two non-orthogonal primitive idempotents."""
    if a.descriptor != b.descriptor:
        raise DimensionMismatch(f"Cannot split {b.descriptor} against {a.descriptor}")
    for name, p in (("a", a), ("b", b)):
        if not is_primitive_idempotent(p, tol):
            raise InvalidInput(f"'{name}' is not a primitive idempotent")

    lam2 = trace_inner(a, b)
    if not SPLIT_EPS < lam2 < 1 - SPLIT_EPS:
        raise InvalidInput(
            f"Splitting requires 0 < <a, b> < 1 away from the ends, got {lam2}"
        )
    mu2 = 1.0 - lam2
    lam, mu = np.sqrt(lam2), np.sqrt(mu2)

    u = jordan_product(a, b)
    c = (b + lam2 * a - 2 * u) / mu2
    z = (2 / (lam * mu)) * (u - lam2 * a)

    _logger.debug("Split with lambda^2 = %g", lam2)

    return IdempotentSplit(float(lam), float(mu), c, z)


def standard_frame(desc: AlgebraDescriptor) -> JordanFrame:
    """The standard frame of the algebra.

    Diagonal matrix units for symmetric matrices, ``u = e_1`` for the Lorentz
    algebra.
    """
    return JordanFrame(
        [Element(desc, c) for c in desc.algebra.standard_frame()], check=False
    )


def rotate_frame(frame: JordanFrame, k: Operator) -> JordanFrame:
    """The image of the frame under an automorphism."""
    return JordanFrame([k(c) for c in frame])

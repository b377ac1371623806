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
from typing import Dict
from typing import Tuple

import numpy as np

from coneforge import AlgebraKind
from coneforge.algebra.core import AlgebraDescriptor
from coneforge.algebra.core import ConeForgeError
from coneforge.algebra.core import DimensionMismatch
from coneforge.algebra.core import Element
from coneforge.algebra.core import InvalidInput
from coneforge.algebra.core import JordanAlgebra
from coneforge.algebra.core import NotInCone
from coneforge.algebra.core import Operator
from coneforge.peirce import FrameIncomplete
from coneforge.peirce import JordanFrame


_logger = logging.getLogger(__name__)

SymMatrix = np.ndarray

SQRT2 = np.sqrt(2.0)
SYMMETRY_EPS = 1e-12
ORTHONORMALITY_EPS = 1e-10
JACOBI_THRESHOLD = 1e-13
JACOBI_MAX_SWEEPS = 50
JACOBI_LARGE_TAU = 1e100


class NoConvergence(ConeForgeError):
    """The Jacobi eigensolver did not converge."""

    pass


def symmetrize(m: Any) -> SymMatrix:
    """Validate a square matrix and return its symmetric part.

    Matrices whose asymmetry exceeds a relative 1e-12 of the largest entry are
    rejected.
    """
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or not a.size:
        raise InvalidInput(f"Expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidInput("Matrix entries must be finite")
    if np.max(np.abs(a - a.T)) > SYMMETRY_EPS * np.max(np.abs(a)):
        raise InvalidInput("Matrix is not symmetric")
    return (a + a.T) / 2


class SymRealAlgebra(JordanAlgebra, kind=AlgebraKind.SYM_REAL):
    """Real symmetric matrices with ``xy = (x.y + y.x) / 2``.

    Coordinates list the diagonal entries first, followed by the scaled
    entries ``sqrt(2) m[i, j]``, ``i < j``, in row-major order. This makes the
    trace form ``Tr(x.y)`` the coordinate dot product.
    """

    def __init__(self, descriptor: AlgebraDescriptor) -> None:
        super().__init__(descriptor)

        r = descriptor.rank
        self._iu = np.triu_indices(r, 1)
        self._basis = np.stack(
            [self.to_matrix(b) for b in np.eye(descriptor.ambient_dim)]
        )

    def to_matrix(self, x: np.ndarray) -> SymMatrix:
        """The symmetric matrix with the given coordinates."""
        r = self.descriptor.rank
        m = np.zeros((r, r))
        m[np.diag_indices(r)] = x[:r]
        off = x[r:] / SQRT2
        m[self._iu] = off
        m[self._iu[1], self._iu[0]] = off
        return m

    def from_matrix(self, m: np.ndarray) -> np.ndarray:
        """The coordinates of one matrix, or of a stack of matrices."""
        i, j = self._iu
        return np.concatenate(
            [np.diagonal(m, axis1=-2, axis2=-1), SQRT2 * m[..., i, j]], axis=-1
        )

    def identity(self) -> np.ndarray:
        """The identity matrix."""
        return self.from_matrix(np.eye(self.descriptor.rank))

    def product(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """The symmetrized matrix product."""
        mx, my = self.to_matrix(x), self.to_matrix(y)
        return self.from_matrix((mx @ my + my @ mx) / 2)

    def multiplication(self, x: np.ndarray) -> np.ndarray:
        """L(x) applied to the whole basis at once."""
        mx = self.to_matrix(x)
        return self.from_matrix((mx @ self._basis + self._basis @ mx) / 2).T

    def congruence(self, t: np.ndarray) -> np.ndarray:
        """The matrix of the endomorphism ``x -> t.x.t^T``."""
        return self.from_matrix(t @ self._basis @ t.T).T

    def spectral(self, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Jacobi eigenpairs turned into rank-one idempotents."""
        values, vectors = eig_jacobi(self.to_matrix(x))
        return values, self.from_matrix(np.einsum("ik,jk->kij", vectors, vectors))

    def trace(self, x: np.ndarray) -> float:
        """The matrix trace."""
        return float(np.sum(x[: self.descriptor.rank]))

    def det(self, x: np.ndarray) -> float:
        """The matrix determinant."""
        return float(np.linalg.det(self.to_matrix(x)))

    def standard_frame(self) -> np.ndarray:
        """The diagonal matrix units."""
        return np.eye(self.descriptor.ambient_dim)[: self.descriptor.rank]

    def encode(self, x: np.ndarray) -> Dict[str, Any]:
        """Encode as a full matrix."""
        return {
            "algebra": AlgebraKind.SYM_REAL.value,
            "r": self.descriptor.rank,
            "matrix": self.to_matrix(x).tolist(),
        }

    def decode(self, payload: Dict[str, Any]) -> np.ndarray:
        """Decode a full symmetric matrix."""
        try:
            m = symmetrize(payload["matrix"])
        except KeyError:
            raise InvalidInput("Missing 'matrix' in symmetric matrix element") from None
        if m.shape != (self.descriptor.rank,) * 2:
            raise DimensionMismatch(
                f"Expected a {self.descriptor.rank}x{self.descriptor.rank} matrix, "
                f"got shape {m.shape}"
            )
        return self.from_matrix(m)


def _backend(desc: AlgebraDescriptor) -> SymRealAlgebra:
    if desc.kind is not AlgebraKind.SYM_REAL:
        raise InvalidInput(f"Expected a symmetric matrix algebra, got {desc}")
    algebra = desc.algebra
    assert isinstance(algebra, SymRealAlgebra)
    return algebra


def element_from_matrix(m: Any) -> Element:
    """The element of S_r(R) represented by the given symmetric matrix."""
    a = symmetrize(m)
    desc = AlgebraDescriptor.sym_real(a.shape[0])
    return Element(desc, _backend(desc).from_matrix(a))


def element_to_matrix(x: Element) -> SymMatrix:
    """The symmetric matrix represented by the element."""
    return _backend(x.descriptor).to_matrix(x.coords)


def unit_element(r: int, i: int, j: int) -> Element:
    """The element ``mu_ij + mu_ji`` built from matrix units (0-based).

    For ``i == j`` this is the single diagonal unit ``mu_ii``.
    """
    if not (0 <= i < r and 0 <= j < r):
        raise InvalidInput(f"Matrix unit ({i + 1},{j + 1}) out of range for r = {r}")
    m = np.zeros((r, r))
    m[i, j] = m[j, i] = 1.0
    return element_from_matrix(m)


def congruence_operator(desc: AlgebraDescriptor, t: Any) -> Operator:
    """The endomorphism ``x -> t.x.t^T``."""
    t = np.asarray(t, dtype=float)
    if t.shape != (desc.rank, desc.rank):
        raise DimensionMismatch(f"Expected a {desc.rank}x{desc.rank} matrix")
    return Operator(desc, _backend(desc).congruence(t))


def _rotation(app: float, aqq: float, apq: float) -> Tuple[float, float]:
    # Symmetric 2x2 Schur decomposition
    gap = aqq - app
    if abs(gap) > JACOBI_LARGE_TAU * abs(2 * apq):
        # tau * tau would overflow, t is 1 / (2 tau) to working precision
        t = apq / gap
    else:
        tau = gap / (2 * apq)
        t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1 + tau * tau))
    c = 1 / np.sqrt(1 + t * t)
    return c, t * c


def eig_jacobi(m: Any) -> Tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi eigensolver for symmetric matrices.

    Return the eigenvalues in descending order together with the orthonormal
    matrix whose columns are the corresponding eigenvectors.
    """
    a = symmetrize(m)
    r = a.shape[0]
    v = np.eye(r)

    threshold = JACOBI_THRESHOLD * np.linalg.norm(a)
    for sweep in range(JACOBI_MAX_SWEEPS + 1):
        off = np.sqrt(2 * np.sum(np.triu(a, 1) ** 2))
        if off <= threshold:
            break
        if sweep == JACOBI_MAX_SWEEPS:
            raise NoConvergence(
                f"Off-diagonal norm {off:g} after {sweep} sweeps "
                f"(threshold {threshold:g})"
            )
        for p in range(r - 1):
            for q in range(p + 1, r):
                if a[p, q] == 0:
                    continue
                c, s = _rotation(a[p, p], a[q, q], a[p, q])

                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p], a[:, q] = c * ap - s * aq, s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :], a[q, :] = c * ap - s * aq, s * ap + c * aq
                a[p, q] = a[q, p] = 0.0

                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p], v[:, q] = c * vp - s * vq, s * vp + c * vq

    _logger.debug("Jacobi converged after %d sweeps on a %dx%d matrix", sweep, r, r)

    values = np.diagonal(a).copy()
    order = np.argsort(-values, kind="stable")
    return values[order], v[:, order]


def frame_from_eigenvectors(v: Any) -> JordanFrame:
    """The frame of rank-one projectors ``v_i v_i^T`` on the columns of ``v``."""
    v = np.asarray(v, dtype=float)
    if v.ndim != 2 or v.shape[0] != v.shape[1]:
        raise FrameIncomplete(f"Expected a square matrix, got shape {v.shape}")
    if np.max(np.abs(v.T @ v - np.eye(v.shape[0]))) > ORTHONORMALITY_EPS:
        raise FrameIncomplete("The eigenvector matrix is not orthonormal")

    return JordanFrame(
        [element_from_matrix(np.outer(v[:, i], v[:, i])) for i in range(v.shape[1])]
    )


@dataclass(frozen=True)
class FrobeniusMatrix:
    """Identity plus a column below the diagonal entry at ``pivot`` (0-based).

    The column holds the entries ``(pivot + 1, pivot), ..., (r - 1, pivot)``.
    """

    pivot: int
    column: np.ndarray

    def __post_init__(self) -> None:
        """Validate the Frobenius matrix."""
        if self.pivot < 0 or np.ndim(self.column) != 1:
            raise InvalidInput(f"Invalid Frobenius matrix {self}")
        if not np.all(np.isfinite(self.column)):
            raise InvalidInput("Frobenius column must be finite")

    @property
    def size(self) -> int:
        """The size of the matrix."""
        return self.pivot + 1 + len(self.column)

    @property
    def matrix(self) -> np.ndarray:
        """The dense matrix."""
        f = np.eye(self.size)
        f[self.pivot + 1 :, self.pivot] = self.column
        return f


def frobenius_matrix_action(f: FrobeniusMatrix, x: Any) -> SymMatrix:
    """The congruence ``F.x.F^T``."""
    m = symmetrize(x)
    if m.shape != (f.size, f.size):
        raise DimensionMismatch(
            f"Frobenius matrix of size {f.size} cannot act on shape {m.shape}"
        )
    fm = f.matrix
    return fm @ m @ fm.T


def frobenius_element(f: FrobeniusMatrix) -> Element:
    """The Peirce vector ``z`` for which the Frobenius transformation at
    ``c_pivot`` acts as the congruence by ``f``.
    """
    m = np.zeros((f.size, f.size))
    m[f.pivot + 1 :, f.pivot] = m[f.pivot, f.pivot + 1 :] = f.column
    return element_from_matrix(m)


def cholesky_ldl(m: Any) -> Tuple[np.ndarray, np.ndarray]:
    """LDL^T factorization of a positive definite matrix.

    Return the unit lower triangular factor and the vector of the diagonal
    entries of D.
    """
    a = symmetrize(m)
    r = a.shape[0]
    lower = np.eye(r)
    d = np.zeros(r)

    for j in range(r):
        d[j] = a[j, j] - np.sum(lower[j, :j] ** 2 * d[:j])
        if d[j] <= 0:
            raise NotInCone(f"Non-positive pivot {d[j]:g} at position {j + 1}")
        lower[j + 1 :, j] = (
            a[j + 1 :, j] - lower[j + 1 :, :j] @ (lower[j, :j] * d[:j])
        ) / d[j]

    return lower, d

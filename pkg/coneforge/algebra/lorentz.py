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

from dataclasses import dataclass
from typing import Any
from typing import Dict
from typing import List
from typing import NamedTuple
from typing import Tuple

import numpy as np

from coneforge import AlgebraKind
from coneforge.algebra.core import DEFAULT_TOLERANCE
from coneforge.algebra.core import AlgebraDescriptor
from coneforge.algebra.core import DimensionMismatch
from coneforge.algebra.core import Element
from coneforge.algebra.core import InvalidInput
from coneforge.algebra.core import JordanAlgebra
from coneforge.algebra.core import NotInCone
from coneforge.algebra.core import Operator
from coneforge.algebra.core import Tolerance
from coneforge.peirce import JordanFrame
from coneforge.peirce import SpectralDecomposition


UNIT_EPS = 1e-10


def _direction(xs: np.ndarray) -> np.ndarray:
    norm = np.linalg.norm(xs)
    if norm > 0:
        return xs / norm
    # Any direction would do for multiples of the identity
    u = np.zeros_like(xs)
    u[0] = 1.0
    return u


class LorentzAlgebra(JordanAlgebra, kind=AlgebraKind.LORENTZ):
    """The algebra R x R^n with ``xy = (<x, y>, x_0 y + y_0 x)``.

    Coordinates are ``(x_0, x_1, ..., x_n)`` so that the scalar product is
    the coordinate dot product. The trace form is twice that.
    """

    def identity(self) -> np.ndarray:
        """The element ``(1, 0)``."""
        e = np.zeros(self.descriptor.ambient_dim)
        e[0] = 1.0
        return e

    def product(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """The Lorentz product."""
        return np.concatenate([[x @ y], x[0] * y[1:] + y[0] * x[1:]])

    def multiplication(self, x: np.ndarray) -> np.ndarray:
        """The arrow matrix of x."""
        m = x[0] * np.eye(self.descriptor.ambient_dim)
        m[0, 1:] = m[1:, 0] = x[1:]
        return m

    def spectral(self, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Eigenvalues ``x_0 +- |x|`` on the frame ``c_u, c_u^perp``."""
        norm = np.linalg.norm(x[1:])
        frame = LorentzFrame(_direction(x[1:]))
        return (
            np.array([x[0] + norm, x[0] - norm]),
            np.vstack([frame.c_u.coords, frame.c_u_perp.coords]),
        )

    def trace(self, x: np.ndarray) -> float:
        """``2 x_0``."""
        return float(2 * x[0])

    def det(self, x: np.ndarray) -> float:
        """``x_0^2 - |x|^2``."""
        return float(x[0] ** 2 - x[1:] @ x[1:])

    def standard_frame(self) -> np.ndarray:
        """The frame of ``u = e_1``."""
        u = np.zeros(self.descriptor.ambient_dim - 1)
        u[0] = 1.0
        return LorentzFrame(u).frame.coords

    def encode(self, x: np.ndarray) -> Dict[str, Any]:
        """Encode as the pair ``(x0, x)``."""
        return {
            "algebra": AlgebraKind.LORENTZ.value,
            "n": self.descriptor.ambient_dim - 1,
            "x0": float(x[0]),
            "x": x[1:].tolist(),
        }

    def decode(self, payload: Dict[str, Any]) -> np.ndarray:
        """Decode the pair ``(x0, x)``."""
        try:
            x0, xs = float(payload["x0"]), np.array(payload["x"], dtype=float)
        except KeyError as e:
            raise InvalidInput(f"Missing {e} in Lorentz element") from None
        except (TypeError, ValueError):
            raise InvalidInput("Lorentz coordinates must be numbers") from None
        if xs.shape != (self.descriptor.ambient_dim - 1,):
            raise DimensionMismatch(
                f"Expected {self.descriptor.ambient_dim - 1} spatial coordinates, "
                f"got shape {xs.shape}"
            )
        return np.concatenate([[x0], xs])


def lorentz_element(x0: float, x: Any) -> Element:
    """The element ``(x0, x)`` of the Lorentz algebra."""
    xs = np.asarray(x, dtype=float)
    return Element(AlgebraDescriptor.lorentz(len(xs)), np.concatenate([[x0], xs]))


def _split(x: Element) -> Tuple[float, np.ndarray]:
    if x.descriptor.kind is not AlgebraKind.LORENTZ:
        raise InvalidInput(f"Expected a Lorentz element, got {x.descriptor}")
    return float(x.coords[0]), x.coords[1:]


def _require_cone(x: Element) -> Tuple[float, np.ndarray]:
    x0, xs = _split(x)
    if not x0 - np.linalg.norm(xs) > 0:
        raise NotInCone(f"{x} is not in the Lorentz cone")
    return x0, xs


def _unit(u: Any, n: int) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    if u.shape != (n,):
        raise DimensionMismatch(f"Expected a direction in R^{n}, got shape {u.shape}")
    if abs(np.linalg.norm(u) - 1.0) > UNIT_EPS:
        raise InvalidInput(f"Direction {u} is not a unit vector")
    return u


@dataclass(frozen=True)
class LorentzFrame:
    """The Jordan frame ``c_u = (1, u) / 2``, ``c_u^perp = (1, -u) / 2``."""

    u: np.ndarray

    def __post_init__(self) -> None:
        """Validate the direction."""
        u = np.asarray(self.u, dtype=float)
        if u.ndim != 1 or len(u) < 2:
            raise InvalidInput("The Lorentz algebra requires n >= 2")
        object.__setattr__(self, "u", _unit(u, len(u)))

    @property
    def descriptor(self) -> AlgebraDescriptor:
        """The Lorentz algebra of the frame."""
        return AlgebraDescriptor.lorentz(len(self.u))

    @property
    def c_u(self) -> Element:
        """The idempotent ``(1, u) / 2``."""
        return Element(self.descriptor, np.concatenate([[0.5], 0.5 * self.u]))

    @property
    def c_u_perp(self) -> Element:
        """The idempotent ``(1, -u) / 2``."""
        return Element(self.descriptor, np.concatenate([[0.5], -0.5 * self.u]))

    @property
    def frame(self) -> JordanFrame:
        """The generic Jordan frame."""
        return JordanFrame([self.c_u, self.c_u_perp], check=False)

    @classmethod
    def from_frame(
        cls, frame: JordanFrame, tol: Tolerance = DEFAULT_TOLERANCE
    ) -> "LorentzFrame":
        """Recover the direction of a generic rank-2 frame."""
        _split(frame[0])
        lorentz_frame = cls(2 * frame[0].coords[1:])
        if not tol.allclose(lorentz_frame.frame.coords, frame.coords):
            raise InvalidInput("The frame is not of the form (c_u, c_u^perp)")
        return lorentz_frame


def lorentz_spectral(x: Element) -> SpectralDecomposition:
    """Eigenvalues ``x_0 +- |x|`` with ``u = x / |x|``.

    Multiples of the identity use ``u = e_1``.
    """
    x0, xs = _split(x)
    norm = np.linalg.norm(xs)
    return SpectralDecomposition(
        LorentzFrame(_direction(xs)).frame, np.array([x0 + norm, x0 - norm])
    )


def lorentz_quad_sqrt_apply(x: Element, y: Element) -> Element:
    """Closed form of ``P(x^(1/2)) y`` on the Lorentz cone."""
    x0, xs = _require_cone(x)
    y0, ys = _split(y)
    if x.descriptor != y.descriptor:
        raise DimensionMismatch(f"Elements of {x.descriptor} and {y.descriptor}")

    s = np.sqrt(x0**2 - xs @ xs)
    return Element(
        x.descriptor,
        np.concatenate([[x0 * y0 + xs @ ys], s * ys + (y0 + xs @ ys / (x0 + s)) * xs]),
    )


def lorentz_half_space(u: Any) -> List[Element]:
    """An orthonormal basis of the Peirce space of ``c_u`` for 1/2.

    This is the space of the elements ``(0, z)`` with ``<z, u> = 0``.
    """
    u = np.asarray(u, dtype=float)
    u = _unit(u, len(u))
    n = len(u)
    q, _ = np.linalg.qr(np.column_stack([u, np.eye(n)]))
    desc = AlgebraDescriptor.lorentz(n)
    return [Element(desc, np.concatenate([[0.0], q[:, k]])) for k in range(1, n)]


def in_lorentz_half_space(
    z: Element, u: Any, tol: Tolerance = DEFAULT_TOLERANCE
) -> bool:
    """Whether ``z = (0, z)`` with ``<z, u> = 0``."""
    z0, zs = _split(z)
    u = _unit(u, len(zs))
    return tol.close(z0, 0.0) and tol.close(zs @ u, 0.0)


class LorentzTriangularParams(NamedTuple):
    """Closed-form triangular parameters on the frame of ``u``."""

    alpha1: float
    alpha2: float
    z: Element


def lorentz_triangular_params(y: Element, u: Any) -> LorentzTriangularParams:
    """The parameters ``t_y = tau_{c_u}(z) P(a1 c_u + a2 c_u^perp)``."""
    y0, ys = _require_cone(y)
    u = _unit(u, len(ys))

    yu = ys @ u
    delta1 = y0 + yu
    det = y0**2 - ys @ ys
    z = np.concatenate([[0.0], (ys - yu * u) / delta1])

    return LorentzTriangularParams(
        float(np.sqrt(delta1)), float(np.sqrt(det / delta1)), Element(y.descriptor, z)
    )


def lorentz_h_u(x: Element, y: Element, u: Any) -> float:
    """The scalar coefficient of ``c_u^perp`` in the closed form of ``t_y x``."""
    x0, xs = _split(x)
    y0, ys = _require_cone(y)
    u = _unit(u, len(ys))

    s = np.sqrt(y0**2 - ys @ ys)
    xu, yu = xs @ u, ys @ u
    ratio = 2 * s / (y0 + yu)

    return float(ratio * (xs @ ys - xu * yu) + s * (1 - ratio) * xu - s * x0)


def lorentz_t_apply(y: Element, x: Element, u: Any) -> Element:
    """Closed form of ``t_y x`` for the frame of ``u``."""
    if x.descriptor != y.descriptor:
        raise DimensionMismatch(f"Elements of {x.descriptor} and {y.descriptor}")
    y0, ys = _require_cone(y)
    x0, xs = _split(x)
    frame = LorentzFrame(_unit(u, len(ys)))

    s = np.sqrt(y0**2 - ys @ ys)
    delta1 = x0 + xs @ frame.u

    return (
        s * x
        + delta1 * y
        - (s * delta1) * frame.c_u
        + lorentz_h_u(x, y, frame.u) * frame.c_u_perp
    )


def rotation_operator(desc: AlgebraDescriptor, rotation: Any) -> Operator:
    """The automorphism ``(x_0, x) -> (x_0, R x)``."""
    if desc.kind is not AlgebraKind.LORENTZ:
        raise InvalidInput(f"Expected a Lorentz algebra, got {desc}")
    n = desc.ambient_dim - 1
    rotation = np.asarray(rotation, dtype=float)
    if rotation.shape != (n, n):
        raise DimensionMismatch(f"Expected a {n}x{n} rotation")
    m = np.eye(n + 1)
    m[1:, 1:] = rotation
    return Operator(desc, m)

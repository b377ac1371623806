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

from abc import ABC
from abc import abstractmethod
from dataclasses import dataclass
from functools import lru_cache
from importlib import import_module
from typing import Any
from typing import Callable
from typing import ClassVar
from typing import Dict
from typing import Optional
from typing import Tuple
from typing import Type
from typing import Union

import numpy as np

from coneforge import AlgebraKind


Scalar = Union[int, float]

# Eigenvalues below this fraction of the trace are treated as the cone boundary
STRICT_CONE_EPS = 1e-12
SINGULAR_EPS = 1e-14

_BACKENDS = {
    AlgebraKind.SYM_REAL: "coneforge.algebra.symreal",
    AlgebraKind.LORENTZ: "coneforge.algebra.lorentz",
}


class ConeForgeError(Exception):
    """Generic coneforge error."""

    pass


class DimensionMismatch(ConeForgeError):
    """The operands do not belong to the same algebra."""

    pass


class SingularElement(ConeForgeError):
    """The element is not invertible."""

    pass


class NotInCone(ConeForgeError):
    """The element is not in the open symmetric cone."""

    pass


class InvalidInput(ConeForgeError):
    """Invalid input data."""

    pass


@dataclass(frozen=True)
class Tolerance:
    """Mixed absolute and relative tolerance.

    Two reals ``a`` and ``b`` compare equal when
    ``|a - b| <= abs + rel * max(|a|, |b|)``.
    """

    abs: float = 1e-10
    rel: float = 1e-9

    def __post_init__(self) -> None:
        """Validate the tolerance."""
        if not (self.abs >= 0 and self.rel >= 0):
            raise InvalidInput(f"Tolerances must be non-negative, got {self}")

    def close(self, a: float, b: float) -> bool:
        """Compare two reals."""
        return abs(a - b) <= self.abs + self.rel * max(abs(a), abs(b))

    def allclose(self, a: Any, b: Any) -> bool:
        """Compare two arrays entrywise."""
        a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
        bound = self.abs + self.rel * np.maximum(np.abs(a), np.abs(b))
        return bool(np.all(np.abs(a - b) <= bound))


DEFAULT_TOLERANCE = Tolerance()


@dataclass(frozen=True)
class AlgebraDescriptor:
    """Identification of a simple Euclidean Jordan algebra.

    The ambient dimension and the rank are tied by the Peirce constant ``d``
    through ``N = r + d r (r - 1) / 2``.
    """

    kind: AlgebraKind
    rank: int
    ambient_dim: int
    peirce_constant: int

    def __post_init__(self) -> None:
        """Check the dimension relation."""
        if self.rank < 1 or self.peirce_constant < 0:
            raise InvalidInput(f"Invalid algebra descriptor {self!r}")
        expected = self.rank + self.peirce_constant * self.rank * (self.rank - 1) // 2
        if self.ambient_dim != expected:
            raise InvalidInput(
                f"Ambient dimension {self.ambient_dim} does not match rank "
                f"{self.rank} and Peirce constant {self.peirce_constant}"
            )

    @classmethod
    def sym_real(cls, r: int) -> "AlgebraDescriptor":
        """The algebra of real symmetric r x r matrices."""
        if r < 1:
            raise InvalidInput(f"Matrix size must be positive, got {r}")
        return cls(AlgebraKind.SYM_REAL, r, r * (r + 1) // 2, 1)

    @classmethod
    def lorentz(cls, n: int) -> "AlgebraDescriptor":
        """The Lorentz algebra R x R^n."""
        if n < 2:
            raise InvalidInput(f"The Lorentz algebra requires n >= 2, got {n}")
        return cls(AlgebraKind.LORENTZ, 2, n + 1, n - 1)

    @classmethod
    def of(cls, kind: Union[AlgebraKind, str], size: int) -> "AlgebraDescriptor":
        """Build the descriptor from the algebra kind and its size parameter."""
        kind = AlgebraKind(kind)
        if kind is AlgebraKind.SYM_REAL:
            return cls.sym_real(size)
        return cls.lorentz(size)

    @property
    def size(self) -> int:
        """The size parameter (r for matrices, n for the Lorentz algebra)."""
        if self.kind is AlgebraKind.SYM_REAL:
            return self.rank
        return self.ambient_dim - 1

    @property
    def algebra(self) -> "JordanAlgebra":
        """The concrete algebra backend."""
        return algebra_of(self)

    def __str__(self) -> str:
        """Short textual representation."""
        return f"{self.kind.value}({self.size})"


class Element:
    """A point of the algebra in a fixed orthonormal basis.

    Elements are immutable and support the vector space operations. The Jordan
    product is :func:`jordan_product`.
    """

    __slots__ = ("descriptor", "coords")

    # Let numpy scalars defer to __rmul__
    __array_ufunc__ = None

    def __init__(self, descriptor: AlgebraDescriptor, coords: Any) -> None:
        values = np.array(coords, dtype=float)
        if values.shape != (descriptor.ambient_dim,):
            raise DimensionMismatch(
                f"Expected {descriptor.ambient_dim} coordinates for {descriptor}, "
                f"got shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise InvalidInput("Element coordinates must be finite")
        values.flags.writeable = False

        self.descriptor = descriptor
        self.coords = values

    @classmethod
    def zero(cls, descriptor: AlgebraDescriptor) -> "Element":
        """The zero element."""
        return cls(descriptor, np.zeros(descriptor.ambient_dim))

    def _check(self, other: "Element") -> None:
        if not isinstance(other, Element):
            raise TypeError(f"Expected an Element, got {type(other).__name__}")
        if other.descriptor != self.descriptor:
            raise DimensionMismatch(
                f"Elements of {self.descriptor} and {other.descriptor} "
                "cannot be combined"
            )

    def __add__(self, other: "Element") -> "Element":
        """Vector sum."""
        self._check(other)
        return Element(self.descriptor, self.coords + other.coords)

    def __sub__(self, other: "Element") -> "Element":
        """Vector difference."""
        self._check(other)
        return Element(self.descriptor, self.coords - other.coords)

    def __neg__(self) -> "Element":
        """Opposite element."""
        return Element(self.descriptor, -self.coords)

    def __mul__(self, scalar: Scalar) -> "Element":
        """Scalar multiple."""
        return Element(self.descriptor, float(scalar) * self.coords)

    __rmul__ = __mul__

    def __truediv__(self, scalar: Scalar) -> "Element":
        """Scalar division."""
        return Element(self.descriptor, self.coords / float(scalar))

    def __repr__(self) -> str:
        """Element representation."""
        return f"Element({self.descriptor}, {self.coords.tolist()})"


class Operator:
    """A dense linear endomorphism of the algebra.

    Operators act on elements by calling them and compose with ``@``.
    """

    __slots__ = ("descriptor", "matrix")

    __array_ufunc__ = None

    def __init__(self, descriptor: AlgebraDescriptor, matrix: Any) -> None:
        n = descriptor.ambient_dim
        values = np.array(matrix, dtype=float)
        if values.shape != (n, n):
            raise DimensionMismatch(
                f"Expected a {n}x{n} matrix for {descriptor}, got shape {values.shape}"
            )
        values.flags.writeable = False

        self.descriptor = descriptor
        self.matrix = values

    @classmethod
    def identity(cls, descriptor: AlgebraDescriptor) -> "Operator":
        """The identity endomorphism."""
        return cls(descriptor, np.eye(descriptor.ambient_dim))

    def _check(self, descriptor: AlgebraDescriptor) -> None:
        if descriptor != self.descriptor:
            raise DimensionMismatch(
                f"Operator on {self.descriptor} cannot act on {descriptor}"
            )

    def __call__(self, x: Element) -> Element:
        """Apply the operator."""
        self._check(x.descriptor)
        return Element(self.descriptor, self.matrix @ x.coords)

    def __matmul__(self, other: "Operator") -> "Operator":
        """Compose two operators, ``other`` acting first."""
        self._check(other.descriptor)
        return Operator(self.descriptor, self.matrix @ other.matrix)

    def __add__(self, other: "Operator") -> "Operator":
        """Operator sum."""
        self._check(other.descriptor)
        return Operator(self.descriptor, self.matrix + other.matrix)

    def __sub__(self, other: "Operator") -> "Operator":
        """Operator difference."""
        self._check(other.descriptor)
        return Operator(self.descriptor, self.matrix - other.matrix)

    def __neg__(self) -> "Operator":
        """Opposite operator."""
        return Operator(self.descriptor, -self.matrix)

    def __mul__(self, scalar: Scalar) -> "Operator":
        """Scalar multiple."""
        return Operator(self.descriptor, float(scalar) * self.matrix)

    __rmul__ = __mul__

    def transpose(self) -> "Operator":
        """The adjoint with respect to the algebra scalar product."""
        return Operator(self.descriptor, self.matrix.T)

    def inverse(self) -> "Operator":
        """The inverse endomorphism."""
        try:
            return Operator(self.descriptor, np.linalg.inv(self.matrix))
        except np.linalg.LinAlgError:
            raise SingularElement("The operator is not invertible") from None

    def det(self) -> float:
        """The determinant in the space of endomorphisms."""
        return float(np.linalg.det(self.matrix))

    def __repr__(self) -> str:
        """Operator representation."""
        return f"Operator({self.descriptor})"


def apply(operator: Operator, x: Element) -> Element:
    """Apply an operator to an element."""
    return operator(x)


def compose(first: Operator, second: Operator) -> Operator:
    """Compose two operators, ``second`` acting first."""
    return first @ second


class JordanAlgebra(ABC):
    """Concrete algebra backend.

    A backend knows how to multiply coordinate vectors and how to compute a
    spectral decomposition. Everything else, from the multiplication operators
    to the cone membership test, is derived here. Subclasses register
    themselves by passing the ``kind`` class argument.
    """

    kind: ClassVar[AlgebraKind]

    _catalog: ClassVar[Dict[AlgebraKind, Type["JordanAlgebra"]]] = {}

    def __init_subclass__(
        cls, kind: Optional[AlgebraKind] = None, **kwargs: Any
    ) -> None:
        """Register the concrete algebra class."""
        super().__init_subclass__(**kwargs)
        if kind is not None:
            cls.kind = kind
            JordanAlgebra._catalog[kind] = cls

    def __init__(self, descriptor: AlgebraDescriptor) -> None:
        self.descriptor = descriptor

    @classmethod
    def find(cls, kind: AlgebraKind) -> Type["JordanAlgebra"]:
        """Find the algebra class for the given kind.

        Backend modules are imported on first use, which registers them.
        """
        if kind not in cls._catalog and kind in _BACKENDS:
            import_module(_BACKENDS[kind])
        try:
            return cls._catalog[kind]
        except KeyError:
            raise InvalidInput(f"No algebra backend for '{kind.value}'") from None

    @abstractmethod
    def identity(self) -> np.ndarray:
        """The coordinates of the neutral element."""
        ...

    @abstractmethod
    def product(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """The Jordan product of two coordinate vectors."""
        ...

    @abstractmethod
    def spectral(self, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Eigenvalues in descending order and the matching frame.

        The frame is returned as an ``r x N`` array of idempotent coordinates.
        """
        ...

    @abstractmethod
    def standard_frame(self) -> np.ndarray:
        """The coordinates of the standard Jordan frame, one per row."""
        ...

    @abstractmethod
    def encode(self, x: np.ndarray) -> Dict[str, Any]:
        """Encode coordinates into the JSON-ready external representation."""
        ...

    @abstractmethod
    def decode(self, payload: Dict[str, Any]) -> np.ndarray:
        """Decode the external representation into coordinates."""
        ...

    def trace(self, x: np.ndarray) -> float:
        """The sum of the eigenvalues."""
        return float(np.sum(self.spectral(x)[0]))

    def det(self, x: np.ndarray) -> float:
        """The product of the eigenvalues."""
        return float(np.prod(self.spectral(x)[0]))

    def multiplication(self, x: np.ndarray) -> np.ndarray:
        """The matrix of the multiplication operator L(x).

        The generic implementation multiplies ``x`` by every basis vector.
        Backends are expected to override it with a closed form.
        """
        return np.column_stack(
            [self.product(x, b) for b in np.eye(self.descriptor.ambient_dim)]
        )


@lru_cache(maxsize=None)
def algebra_of(descriptor: AlgebraDescriptor) -> JordanAlgebra:
    """Get the (cached) algebra backend for the given descriptor."""
    return JordanAlgebra.find(descriptor.kind)(descriptor)


def _same(x: Element, y: Element) -> AlgebraDescriptor:
    if x.descriptor != y.descriptor:
        raise DimensionMismatch(
            f"Elements of {x.descriptor} and {y.descriptor} cannot be combined"
        )
    return x.descriptor


def identity(descriptor: AlgebraDescriptor) -> Element:
    """The neutral element of the algebra."""
    return Element(descriptor, descriptor.algebra.identity())


def jordan_product(x: Element, y: Element) -> Element:
    """The Jordan product ``xy``."""
    desc = _same(x, y)
    return Element(desc, desc.algebra.product(x.coords, y.coords))


def square(x: Element) -> Element:
    """The Jordan square ``x^2``."""
    return jordan_product(x, x)


def inner(x: Element, y: Element) -> float:
    """The algebra scalar product, i.e. the coordinate dot product."""
    _same(x, y)
    return float(x.coords @ y.coords)


def trace_inner(x: Element, y: Element) -> float:
    """The trace form ``tr(xy)``.

    Primitive idempotents have unit length in this scalar product. It agrees
    with :func:`inner` on symmetric matrices and doubles it on the Lorentz
    algebra.
    """
    return trace(jordan_product(x, y))


def lmap(x: Element) -> Operator:
    """The multiplication operator ``L(x)y = xy``."""
    return Operator(x.descriptor, x.descriptor.algebra.multiplication(x.coords))


def quad_rep(x: Element) -> Operator:
    """The quadratic representation ``P(x) = 2L(x)^2 - L(x^2)``."""
    lx = lmap(x)
    return 2 * (lx @ lx) - lmap(square(x))


def box(x: Element, y: Element) -> Operator:
    """The box operator ``x[]y = L(xy) + L(x)L(y) - L(y)L(x)``."""
    lx, ly = lmap(x), lmap(y)
    return lmap(jordan_product(x, y)) + lx @ ly - ly @ lx


def eigenvalues(x: Element) -> np.ndarray:
    """The spectral eigenvalues of the element, in descending order."""
    return x.descriptor.algebra.spectral(x.coords)[0]


def det(x: Element) -> float:
    """The Jordan determinant."""
    return x.descriptor.algebra.det(x.coords)


def trace(x: Element) -> float:
    """The Jordan trace."""
    return x.descriptor.algebra.trace(x.coords)


def spectral_map(x: Element, fn: Callable[[np.ndarray], np.ndarray]) -> Element:
    """Apply a real function to the eigenvalues of an element."""
    values, frame = x.descriptor.algebra.spectral(x.coords)
    return Element(x.descriptor, fn(values) @ frame)


def inverse(x: Element) -> Element:
    """The Jordan inverse."""
    values = eigenvalues(x)
    scale = np.max(np.abs(values))
    if scale == 0 or np.min(np.abs(values)) <= SINGULAR_EPS * scale:
        raise SingularElement(f"Element with eigenvalues {values} is not invertible")
    return spectral_map(x, lambda v: 1.0 / v)


def power(x: Element, t: Scalar) -> Element:
    """The power ``x^t`` through the spectral decomposition.

    Integer powers are defined on the whole algebra (negative ones on
    invertible elements); any other power requires strict cone membership.
    """
    t = float(t)
    values = eigenvalues(x)
    if t.is_integer():
        if t < 0:
            scale = np.max(np.abs(values))
            if scale == 0 or np.min(np.abs(values)) <= SINGULAR_EPS * scale:
                raise SingularElement(
                    f"Element with eigenvalues {values} has no power {t:g}"
                )
        k = int(t)
        return spectral_map(x, lambda v: v.astype(float) ** k)

    total = float(np.sum(values))
    if total <= 0 or np.min(values) <= STRICT_CONE_EPS * total:
        raise NotInCone(f"Element with eigenvalues {values} has no power {t:g}")
    return spectral_map(x, lambda v: v**t)


def sqrt(x: Element) -> Element:
    """The square root of a cone element."""
    return power(x, 0.5)


def is_in_cone(x: Element, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """Whether every eigenvalue is strictly above the absolute tolerance."""
    return bool(np.min(eigenvalues(x)) > tol.abs)
